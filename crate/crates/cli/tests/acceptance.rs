//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::process::Command;
use std::time::{Duration, Instant};

use bezout_bezier::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

const SWEEP_MAX: i64 = 200;

fn main() {
    let criteria: [Criterion; 8] = [
        (
            "1. Bezout coefficients match exhaustive search (200x200)",
            bezout_oracle,
        ),
        (
            "2. flip and extension identities (200x200)",
            flip_and_extend,
        ),
        (
            "3. projection and line-distance identities (200x200)",
            projection_suite,
        ),
        (
            "4. (299,21) is the only coprime pair within 1 of (300,21)",
            uniqueness_remark,
        ),
        (
            "5. deviation < eps and endpoint gaps < eps+1 (p in 5..=60)",
            theorem_sweep,
        ),
        (
            "6. figure-scale envelopes render and verify",
            figure_reproduction,
        ),
        (
            "7. endpoint distance bounds the parametrized gap",
            segment_gap_property,
        ),
        ("8. repeated runs are byte-identical", determinism),
    ];

    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("PASS  {name} [{ms} ms] {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name} [{ms} ms] {why}");
            }
        }
    }
    println!("{} of 8 criteria passed", 8 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within_time(start: Instant, limit: Duration) -> Result<(), String> {
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:?}, limit {limit:?}"))
}

fn coprime_sweep() -> Vec<CoprimePair> {
    (1..=SWEEP_MAX)
        .flat_map(|p| (1..=SWEEP_MAX).filter_map(move |q| CoprimePair::new(p, q).ok()))
        .collect()
}

/// Every `(a, b)` in `0 < a <= p`, `0 <= b < q` with `a*q - b*p = 1`. For a
/// fixed `a` the identity pins `b`, so scanning `a` covers the whole box.
fn box_solutions(p: i64, q: i64) -> Vec<(i64, i64)> {
    (1..=p)
        .filter_map(|a| {
            let num = a * q - 1;
            (num % p == 0).then(|| (a, num / p))
        })
        .filter(|&(_, b)| (0..q).contains(&b))
        .collect()
}

fn bezout_oracle() -> Check {
    let start = Instant::now();
    let pairs = coprime_sweep();
    for pair in &pairs {
        let (p, q) = (pair.r(), pair.s());
        let found = box_solutions(p, q);
        ensure(found.len() == 1, || {
            format!("({p},{q}): {} box solutions", found.len())
        })?;
        let c = bezout_coefficients(*pair).map_err(|e| e.to_string())?;
        ensure((c.a(), c.b()) == found[0], || {
            format!(
                "({p},{q}): got ({},{}), oracle {:?}",
                c.a(),
                c.b(),
                found[0]
            )
        })?;
    }
    within_time(start, Duration::from_secs(10))?;
    Ok(format!("{} pairs", pairs.len()))
}

fn flip_and_extend() -> Check {
    let pairs = coprime_sweep();
    for pair in &pairs {
        let (p, q) = (pair.r(), pair.s());
        let c = bezout_coefficients(*pair).map_err(|e| e.to_string())?;
        let direct = bezout_coefficients(pair.flipped()).map_err(|e| e.to_string())?;
        ensure((direct.a(), direct.b()) == (q - c.b(), p - c.a()), || {
            format!("B({q},{p}) != (q-b, p-a) for ({p},{q})")
        })?;
        let flipped = flip_bezout(c);
        ensure(flipped == direct, || {
            format!("flip_bezout mismatch at ({p},{q})")
        })?;

        let ext = CoprimePair::new(c.b() + q, c.a() + p).map_err(|e| e.to_string())?;
        ensure(extend_pair(c) == Ok(ext), || {
            format!("extend_pair mismatch at ({p},{q})")
        })?;
        let back = bezout_coefficients(ext).map_err(|e| e.to_string())?;
        ensure((back.a(), back.b()) == (q, p), || {
            format!("B(b+q, a+p) = ({},{}) != ({q},{p})", back.a(), back.b())
        })?;
    }
    Ok(format!("{} pairs, exact", pairs.len()))
}

fn projection_suite() -> Check {
    let pairs = coprime_sweep();
    let mut worst: f64 = 0.0;
    for pair in &pairs {
        let (p, q) = (pair.r(), pair.s());
        let c = bezout_coefficients(*pair).map_err(|e| e.to_string())?;
        let f = flip_bezout(c);
        let pq = Point2::from_ints(p, q);
        let qp = Point2::from_ints(q, p);
        let b_pq = Point2::from_ints(c.a(), c.b());
        let b_qp = Point2::from_ints(f.a(), f.b());
        let tol = tolerance(pq.norm());
        let err = |e: GeometryError| e.to_string();
        let mut check = |part: &str, lhs: f64, rhs: f64| {
            let d = (lhs - rhs).abs();
            worst = worst.max(d / tol);
            ensure(d <= tol, || {
                format!("part {part} at ({p},{q}): {lhs} vs {rhs}")
            })
        };

        check("(1)", b_pq.distance(pq), b_qp.norm())?;

        let inv_norm = 1.0 / pq.norm();
        check(
            "(2a)",
            dist_to_origin_line(b_pq, pq).map_err(err)?,
            inv_norm,
        )?;
        check(
            "(2b)",
            dist_to_origin_line(b_qp, qp).map_err(err)?,
            inv_norm,
        )?;

        let proj_pq = project_onto_ray(b_pq, pq).map_err(err)?;
        let proj_qp = project_onto_ray(b_qp, qp).map_err(err)?;
        let t0 = b_pq.dot(pq) / pq.norm_squared();
        check("(3a)", proj_pq.foot.distance(t0 * pq), 0.0)?;
        check("(3b)", proj_qp.t, 1.0 - t0)?;
        check("(3c)", proj_qp.foot.distance((1.0 - t0) * qp), 0.0)?;

        check("(4)", proj_pq.foot.distance(pq), proj_qp.foot.norm())?;
    }
    Ok(format!(
        "{} pairs, worst error/tol {:.2e}",
        pairs.len(),
        worst
    ))
}

fn uniqueness_remark() -> Check {
    let center = Center::new(300, 21).map_err(|e| e.to_string())?;
    let start = Instant::now();
    let got = coprime_neighbors(center, 1.0).map_err(|e| e.to_string())?;
    let took = start.elapsed();
    let expect = vec![CoprimePair::new(299, 21).unwrap()];
    ensure(got == expect, || format!("got {got:?}"))?;
    ensure(took < Duration::from_millis(1), || format!("took {took:?}"))?;
    Ok(format!("{took:?}"))
}

fn theorem_sweep() -> Check {
    let start = Instant::now();
    let (mut runs, mut records, mut gap_records) = (0usize, 0usize, 0usize);
    let mut worst_slack = f64::INFINITY;
    let mut worst_gap_slack = f64::INFINITY;
    for p in 5..=60i64 {
        for q in 0..p {
            let half = 0.5 * (p as f64).hypot(q as f64);
            let mut epsilons = vec![2.0, 3.0];
            if half > 1.0 {
                epsilons.push(half);
            }
            for eps in epsilons {
                let Ok(params) = EnvelopeParams::from_ints(p, q, eps) else {
                    continue;
                };
                runs += 1;
                let report = build_envelope(&params).map_err(|e| e.to_string())?;
                for rec in &report.records {
                    records += 1;
                    worst_slack = worst_slack.min(eps - rec.deviation);
                    ensure(rec.deviation < eps, || {
                        format!(
                            "({p},{q}) eps={eps} pair {}: deviation {}",
                            rec.pair, rec.deviation
                        )
                    })?;
                    ensure(rec.tangent_distance < eps, || {
                        format!(
                            "({p},{q}) eps={eps} pair {}: chord distance {}",
                            rec.pair, rec.tangent_distance
                        )
                    })?;
                }
                ensure(report.all_bounds_hold, || {
                    format!("({p},{q}) eps={eps}: report failed")
                })?;

                let center = params.center();
                for pair in coprime_neighbors(center, eps).map_err(|e| e.to_string())? {
                    gap_records += 1;
                    let (ga, gb) = endpoint_gaps(pair, &params).map_err(|e| e.to_string())?;
                    worst_gap_slack = worst_gap_slack.min(eps + 1.0 - ga.max(gb));
                    ensure(ga < eps + 1.0 && gb < eps + 1.0, || {
                        format!("({p},{q}) eps={eps} pair {pair}: gaps {ga}, {gb}")
                    })?;
                }
            }
        }
    }
    within_time(start, Duration::from_secs(60))?;
    Ok(format!(
        "{runs} runs, {records} deviation checks (min slack {worst_slack:.4}), \
         {gap_records} gap checks (min slack {worst_gap_slack:.4})"
    ))
}

fn cli(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_bezout-bezier"))
        .args(args)
        .output()
        .expect("spawn binary")
}

fn figure_reproduction() -> Check {
    let mut details = Vec::new();
    for q in ["200000", "600000"] {
        let start = Instant::now();
        let out = cli(&["envelope", "1000000", q, "10", "--format", "svg"]);
        within_time(start, Duration::from_secs(5))?;
        ensure(out.status.code() == Some(0), || {
            format!(
                "q={q}: exit {:?}: {}",
                out.status.code(),
                String::from_utf8_lossy(&out.stderr)
            )
        })?;
        let svg = String::from_utf8(out.stdout).map_err(|e| e.to_string())?;
        let doc = roxmltree::Document::parse(&svg).map_err(|e| format!("q={q}: {e}"))?;
        let segments = doc
            .descendants()
            .find(|n| n.attribute("id") == Some("segments"))
            .ok_or("no segment group")?
            .children()
            .filter(|n| n.has_tag_name("line"))
            .count();

        let params = EnvelopeParams::from_ints(1_000_000, q.parse().unwrap(), 10.0)
            .map_err(|e| e.to_string())?;
        let report = build_envelope(&params).map_err(|e| e.to_string())?;
        ensure(report.all_bounds_hold, || format!("q={q}: bound violated"))?;
        ensure(report.neighbor_count >= 1, || {
            format!("q={q}: no neighbors")
        })?;
        ensure(segments == report.neighbor_count, || {
            format!(
                "q={q}: {segments} lines for {} records",
                report.neighbor_count
            )
        })?;
        details.push(format!(
            "q={q}: {} segments, max deviation {:.3}",
            report.neighbor_count, report.max_deviation
        ));
    }
    Ok(details.join("; "))
}

fn segment_gap_property() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
    let pt = |rng: &mut ChaCha8Rng, scale: f64| {
        Point2::new(rng.gen_range(-scale..scale), rng.gen_range(-scale..scale))
    };
    let (mut accepted, mut tries) = (0, 0);
    while accepted < 10_000 {
        tries += 1;
        let l1 = Segment::new(pt(&mut rng, 100.0), pt(&mut rng, 100.0));
        let jitter = rng.gen_range(0.01..30.0);
        let l2 = Segment::new(
            l1.start + pt(&mut rng, jitter),
            l1.end + pt(&mut rng, jitter),
        );
        // matched-endpoint hypothesis: A1 pairs with A2, B1 with B2
        let a_matched = l1.start.distance(l2.start) <= l1.start.distance(l2.end);
        let b_matched = l1.end.distance(l2.end) <= l1.end.distance(l2.start);
        if !(a_matched && b_matched) {
            continue;
        }
        let dist = segment_distance(&l1, &l2);
        let eps = dist * rng.gen_range(1.0001..2.0) + 1e-12;
        accepted += 1;
        for i in 0..100 {
            let t = i as f64 / 99.0;
            let gap = l1.at(t).distance(l2.at(t));
            ensure(gap < eps, || {
                format!("{l1:?} vs {l2:?}: gap {gap} at t={t}, eps {eps}")
            })?;
        }
    }
    Ok(format!(
        "{accepted} pairs from {tries} draws, 100 samples each"
    ))
}

fn determinism() -> Check {
    let commands: [&[&str]; 4] = [
        &["envelope", "1000000", "200000", "10", "--format", "svg"],
        &["envelope", "1000000", "600000", "10", "--format", "csv"],
        &["envelope", "300", "21", "2", "--format", "csv"],
        &["verify", "10", "3", "2"],
    ];
    for args in commands {
        let a = cli(args);
        let b = cli(args);
        ensure(a.status.code() == Some(0), || format!("{args:?} failed"))?;
        ensure(a.stdout == b.stdout, || {
            format!("{args:?} differs between runs")
        })?;
    }
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let files: Vec<_> = (0..2)
        .map(|i| dir.path().join(format!("fig{i}.svg")))
        .collect();
    for f in &files {
        let out = cli(&[
            "envelope",
            "1000000",
            "200000",
            "10",
            "--format",
            "svg",
            "--show-curve",
            "-o",
            f.to_str().unwrap(),
        ]);
        ensure(out.status.code() == Some(0), || "file output failed".into())?;
    }
    let (x, y) = (
        std::fs::read(&files[0]).map_err(|e| e.to_string())?,
        std::fs::read(&files[1]).map_err(|e| e.to_string())?,
    );
    ensure(x == y, || "written SVG files differ".into())?;
    Ok(format!("{} commands + file output", commands.len()))
}
