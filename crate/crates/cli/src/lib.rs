//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 domain or hypothesis
//! violation, 3 verification failure.

use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use bezout_bezier::{
    bezout_coefficients, build_envelope, coprime_neighbors, format_real, sweep_one, to_csv, to_svg,
    Center, CoprimePair, EnvelopeError, EnvelopeParams, NumTheoryError, RenderOptions,
    SweepOutcome, VerificationReport,
};
use clap::{Args, Parser, Subcommand, ValueEnum};

pub const THREADS_ENV: &str = "BEZOUT_BEZIER_THREADS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_VERIFY_FAILED: i32 = 3;

pub const SWEEP_HEADER: &str = "p,q,epsilon,neighbor_count,max_deviation,bound_slack,all_ok";

#[derive(Debug, Parser)]
#[command(
    name = "bezout-bezier",
    version,
    about = "Approximate the quadratic Bézier curve through (p,q), (0,0), (q,p) with Bézout segments"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the normalized Bézout coefficients B(p,q).
    Bezout {
        #[arg(allow_negative_numbers = true)]
        p: i64,
        #[arg(allow_negative_numbers = true)]
        q: i64,
    },
    /// List the coprime pairs within RADIUS of (p,q).
    Neighbors {
        p: i64,
        q: i64,
        #[arg(allow_negative_numbers = true)]
        radius: f64,
    },
    /// Build the envelope of Bézout segments and write it as CSV, SVG or text.
    Envelope(EnvelopeArgs),
    /// Check the deviation bound for every neighbor and print a summary.
    Verify {
        p: i64,
        q: i64,
        #[arg(allow_negative_numbers = true)]
        epsilon: f64,
    },
    /// Run every `p q epsilon` line of a sweep file and print a summary CSV.
    AuditSweep { spec_path: PathBuf },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Svg,
    Text,
}

#[derive(Debug, Args)]
pub struct EnvelopeArgs {
    pub p: i64,
    pub q: i64,
    #[arg(allow_negative_numbers = true)]
    pub epsilon: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    #[arg(long, default_value_t = 800)]
    pub width: u32,
    /// Overlay the exact curve.
    #[arg(long)]
    pub show_curve: bool,
    /// Omit the control point markers.
    #[arg(long)]
    pub hide_controls: bool,
    #[arg(long, default_value_t = 256)]
    pub curve_samples: u32,
    #[arg(long, default_value_t = 0.0008)]
    pub stroke_width_fraction: f64,
}

impl EnvelopeArgs {
    pub fn render_options(&self) -> RenderOptions {
        RenderOptions {
            width_px: self.width,
            show_curve: self.show_curve,
            show_controls: !self.hide_controls,
            curve_samples: self.curve_samples,
            stroke_width_fraction: self.stroke_width_fraction,
        }
    }
}

/// A failed command: message for stderr plus exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn domain(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_DOMAIN,
            message: message.into(),
        }
    }
}

impl From<EnvelopeError> for Failure {
    fn from(e: EnvelopeError) -> Self {
        Failure::domain(e.to_string())
    }
}

impl From<NumTheoryError> for Failure {
    fn from(e: NumTheoryError) -> Self {
        Failure::domain(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::usage(format!("i/o error: {e}"))
    }
}

type CmdResult = Result<i32, Failure>;

/// Parses `args` (including the program name) and runs the command,
/// writing normal output to `out` and diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = err.write_all(rendered.as_bytes());
                EXIT_USAGE
            } else {
                let _ = out.write_all(rendered.as_bytes());
                EXIT_OK
            };
        }
    };
    if let Err(f) = configure_threads() {
        let _ = writeln!(err, "error: {}", f.message);
        return f.code;
    }
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

/// Caps the global rayon pool when the thread-count variable is set. The
/// global pool can only be configured once per process; later calls keep
/// the first configuration.
fn configure_threads() -> Result<(), Failure> {
    let Ok(value) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n >= 1)
        .ok_or_else(|| {
            Failure::usage(format!(
                "{THREADS_ENV} must be a positive integer, got {value:?}"
            ))
        })?;
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global();
    Ok(())
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    match command {
        Command::Bezout { p, q } => run_bezout(p, q, out),
        Command::Neighbors { p, q, radius } => run_neighbors(p, q, radius, out),
        Command::Envelope(args) => run_envelope(&args, out, err),
        Command::Verify { p, q, epsilon } => run_verify(p, q, epsilon, out),
        Command::AuditSweep { spec_path } => run_audit_sweep(&spec_path, out),
    }
}

pub fn run_bezout(p: i64, q: i64, out: &mut dyn Write) -> CmdResult {
    let coeffs = bezout_coefficients(CoprimePair::new(p, q)?)?;
    let (a, b) = (coeffs.a(), coeffs.b());
    writeln!(out, "B({p},{q}) = ({a}, {b})")?;
    writeln!(out, "{a}*{q} - {b}*{p} = {}", coeffs.identity_value())?;
    Ok(EXIT_OK)
}

pub fn run_neighbors(p: i64, q: i64, radius: f64, out: &mut dyn Write) -> CmdResult {
    let center = Center::new(p, q)?;
    let pairs = coprime_neighbors(center, radius)?;
    let mut text = String::new();
    for pair in &pairs {
        let _ = writeln!(text, "{pair}");
    }
    let _ = writeln!(text, "count: {}", pairs.len());
    out.write_all(text.as_bytes())?;
    Ok(EXIT_OK)
}

fn verified(report: &VerificationReport) -> i32 {
    if report.all_bounds_hold {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAILED
    }
}

fn envelope_report(p: i64, q: i64, epsilon: f64) -> Result<VerificationReport, Failure> {
    let params = EnvelopeParams::from_ints(p, q, epsilon)?;
    Ok(build_envelope(&params)?)
}

pub fn run_envelope(args: &EnvelopeArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let opts = args.render_options();
    opts.validate().map_err(Failure::usage)?;
    let report = envelope_report(args.p, args.q, args.epsilon)?;
    let body = match args.format {
        Format::Csv => to_csv(&report),
        Format::Svg => to_svg(&report, &opts),
        Format::Text => text_table(&report),
    };
    match &args.output {
        Some(path) => {
            std::fs::write(path, body.as_bytes())
                .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))?;
            writeln!(
                err,
                "wrote {} segments to {}",
                report.neighbor_count,
                path.display()
            )?;
        }
        None => out.write_all(body.as_bytes())?,
    }
    if !report.all_bounds_hold {
        writeln!(
            err,
            "deviation bound violated: max deviation {}",
            format_real(report.max_deviation)
        )?;
    }
    Ok(verified(&report))
}

fn summary(report: &VerificationReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "center: {}", report.params.center());
    let _ = writeln!(s, "epsilon: {}", format_real(report.params.epsilon()));
    let _ = writeln!(s, "neighbor_count: {}", report.neighbor_count);
    let _ = writeln!(s, "max_deviation: {}", format_real(report.max_deviation));
    let _ = writeln!(
        s,
        "max_endpoint_gap: {}",
        format_real(report.max_endpoint_gap)
    );
    let _ = writeln!(s, "bound_slack: {}", format_real(report.bound_slack()));
    s
}

fn text_table(report: &VerificationReport) -> String {
    let mut s = summary(report);
    let _ = writeln!(
        s,
        "{:>12} {:>12} {:>16} {:>16} {:>14} {:>14} {:>14} {:>5}",
        "r", "s", "B(r,s)", "B(s,r)", "t_contact", "max_gap", "deviation", "ok"
    );
    for rec in &report.records {
        let _ = writeln!(
            s,
            "{:>12} {:>12} {:>16} {:>16} {:>14} {:>14} {:>14} {:>5}",
            rec.pair.r(),
            rec.pair.s(),
            format!("({},{})", rec.coeffs.a(), rec.coeffs.b()),
            format!("({},{})", rec.flipped.a(), rec.flipped.b()),
            format!("{:.9}", rec.t_contact),
            format!("{:.9}", rec.max_gap()),
            format!("{:.9}", rec.deviation),
            rec.bound_ok,
        );
    }
    s
}

pub fn run_verify(p: i64, q: i64, epsilon: f64, out: &mut dyn Write) -> CmdResult {
    let report = envelope_report(p, q, epsilon)?;
    let mut text = summary(&report);
    text.push_str(if report.all_bounds_hold {
        "PASS\n"
    } else {
        "FAIL\n"
    });
    out.write_all(text.as_bytes())?;
    Ok(verified(&report))
}

/// One `p q epsilon` entry of a sweep file.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepLine {
    pub p: i64,
    pub q: i64,
    pub epsilon: f64,
}

/// Parses a sweep file: one `p q epsilon` triple per line, `#` starts a
/// comment, blank lines are ignored.
pub fn parse_sweep_spec(text: &str) -> Result<Vec<SweepLine>, String> {
    let mut lines = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<_> = content.split_whitespace().collect();
        let bad = || {
            format!(
                "line {}: expected `p q epsilon`, got {:?}",
                idx + 1,
                raw.trim()
            )
        };
        let [p, q, e] = fields[..] else {
            return Err(bad());
        };
        let epsilon: f64 = e.parse().map_err(|_| bad())?;
        lines.push(SweepLine {
            p: p.parse().map_err(|_| bad())?,
            q: q.parse().map_err(|_| bad())?,
            epsilon,
        });
    }
    Ok(lines)
}

pub fn run_audit_sweep(path: &Path, out: &mut dyn Write) -> CmdResult {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    let lines = parse_sweep_spec(&text).map_err(Failure::usage)?;

    let mut csv = String::new();
    csv.push_str(SWEEP_HEADER);
    csv.push('\n');
    let mut any_failed = false;
    for line in lines {
        let eps = format_real(line.epsilon);
        match sweep_one(line.p, line.q, line.epsilon)? {
            SweepOutcome::Report(rep) => {
                any_failed |= !rep.all_bounds_hold;
                let _ = writeln!(
                    csv,
                    "{},{},{},{},{},{},{}",
                    line.p,
                    line.q,
                    eps,
                    rep.neighbor_count,
                    format_real(rep.max_deviation),
                    format_real(rep.bound_slack()),
                    rep.all_bounds_hold
                );
            }
            SweepOutcome::Skipped { reason, .. } => {
                let _ = writeln!(csv, "{},{},{},,,,skipped: {}", line.p, line.q, eps, reason);
            }
        }
    }
    out.write_all(csv.as_bytes())?;
    Ok(if any_failed {
        EXIT_VERIFY_FAILED
    } else {
        EXIT_OK
    })
}
