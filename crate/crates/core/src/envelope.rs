//! Bézier–Bézout segments and the envelope check.
//!
//! For a coprime pair `(r, s)` near the center `(p, q)`, the segment from
//! `B(r, s)` to `B(s, r)` lies close to the tangent chord of `c_{p,q}` at the
//! contact parameter `t = 1 - B(r,s).(r,s) / |(r,s)|^2`. A report collects,
//! for every such pair, the gaps from the segment endpoints to the chord
//! endpoints and the deviation `|L(t) - c(t)|` at the contact parameter.
//!
//! Contact parameter convention: [`contact_parameter`] returns the
//! complement of the projection coordinate of `B(r, s)` onto `(r, s)`. The
//! projection coordinate itself is what
//! [`project_onto_ray`](crate::geometry::project_onto_ray) returns.

use rayon::prelude::*;
use thiserror::Error;

use crate::geometry::{
    alpha, beta, quad_point, segment_distance, tangent_segment, GeometryError, Point2, QuadBezier,
    Segment,
};
use crate::numtheory::{
    bezout_coefficients, coprime_neighbors, flip_bezout, BezoutCoeffs, Center, CoprimePair,
    NumTheoryError,
};

/// A violated precondition of the approximation bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Hypothesis {
    /// `p > 3`
    PGreaterThanThree,
    /// `0 <= q < p`
    QBelowP,
    /// `epsilon > 1`
    EpsilonAboveOne,
    /// `epsilon >= 1`, for the endpoint-gap bound
    EpsilonAtLeastOne,
    /// `epsilon <= |(p, q)| / 2`
    EpsilonAtMostHalfNorm,
    /// `|(r, s) - (p, q)| <= epsilon`
    PairWithinEpsilon,
}

impl Hypothesis {
    pub fn describe(&self) -> &'static str {
        match self {
            Hypothesis::PGreaterThanThree => "requires p>3",
            Hypothesis::QBelowP => "requires 0≤q<p",
            Hypothesis::EpsilonAboveOne => "requires ε>1",
            Hypothesis::EpsilonAtLeastOne => "requires ε≥1",
            Hypothesis::EpsilonAtMostHalfNorm => "requires ε≤½‖(p,q)‖",
            Hypothesis::PairWithinEpsilon => "requires ‖(r,s)−(p,q)‖≤ε",
        }
    }
}

impl std::fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.describe())
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EnvelopeError {
    #[error("hypothesis violated: {0}")]
    Hypothesis(Hypothesis),
    #[error(transparent)]
    NumTheory(#[from] NumTheoryError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

pub type Result<T> = std::result::Result<T, EnvelopeError>;

/// Center and tolerance of one envelope run, validated against
/// `p > 3`, `0 <= q < p` and `1 < epsilon <= |(p, q)| / 2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnvelopeParams {
    center: Center,
    epsilon: f64,
}

impl EnvelopeParams {
    pub fn new(center: Center, epsilon: f64) -> Result<Self> {
        let (p, q) = (center.p(), center.q());
        if p <= 3 {
            return Err(EnvelopeError::Hypothesis(Hypothesis::PGreaterThanThree));
        }
        if q < 0 || q >= p {
            return Err(EnvelopeError::Hypothesis(Hypothesis::QBelowP));
        }
        if epsilon.is_nan() || epsilon <= 1.0 {
            return Err(EnvelopeError::Hypothesis(Hypothesis::EpsilonAboveOne));
        }
        if epsilon > 0.5 * center.norm() {
            return Err(EnvelopeError::Hypothesis(Hypothesis::EpsilonAtMostHalfNorm));
        }
        Ok(Self { center, epsilon })
    }

    pub fn from_ints(p: i64, q: i64, epsilon: f64) -> Result<Self> {
        let center = Center::new(p, q).map_err(|_| {
            if p <= 3 {
                EnvelopeError::Hypothesis(Hypothesis::PGreaterThanThree)
            } else {
                EnvelopeError::Hypothesis(Hypothesis::QBelowP)
            }
        })?;
        Self::new(center, epsilon)
    }

    #[inline]
    pub fn center(&self) -> Center {
        self.center
    }

    #[inline]
    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn curve(&self) -> QuadBezier {
        QuadBezier::new(self.center.p(), self.center.q())
            .expect("validated center is a valid curve")
    }

    /// Neighbor radius of the deviation bound, `epsilon - 1`.
    pub fn theorem_radius(&self) -> f64 {
        self.epsilon - 1.0
    }

    /// Neighbor radius of the endpoint-gap bound, `epsilon`.
    pub fn gap_radius(&self) -> f64 {
        self.epsilon
    }
}

fn as_point(c: &BezoutCoeffs) -> Point2 {
    Point2::from_ints(c.a(), c.b())
}

/// Segment from `B(r, s)` to `B(s, r)`.
pub fn bezout_segment(pair: CoprimePair) -> Result<Segment> {
    let coeffs = bezout_coefficients(pair)?;
    Ok(Segment::new(
        as_point(&coeffs),
        as_point(&flip_bezout(coeffs)),
    ))
}

fn contact_from(coeffs: &BezoutCoeffs) -> f64 {
    let pair = coeffs.pair();
    // Numerator and denominator are exact integers.
    let dot = coeffs.a() as i128 * pair.r() as i128 + coeffs.b() as i128 * pair.s() as i128;
    let norm2 = pair.r() as i128 * pair.r() as i128 + pair.s() as i128 * pair.s() as i128;
    1.0 - dot as f64 / norm2 as f64
}

/// `1 - B(r,s).(r,s) / |(r,s)|^2`, always strictly inside `(0, 1)`.
pub fn contact_parameter(pair: CoprimePair) -> Result<f64> {
    Ok(contact_from(&bezout_coefficients(pair)?))
}

/// Distances `|B(r,s) - alpha(t0)|` and `|B(s,r) - beta(t0)|` at the contact
/// parameter, for a pair within `epsilon` of the center.
pub fn endpoint_gaps(pair: CoprimePair, params: &EnvelopeParams) -> Result<(f64, f64)> {
    endpoint_gaps_at(pair, params.center(), params.gap_radius())
}

/// [`endpoint_gaps`] under the gap bound's own hypotheses, which admit
/// `epsilon = 1`: `p > 3`, `0 <= q < p`, `1 <= epsilon <= |(p, q)| / 2`.
pub fn endpoint_gaps_at(pair: CoprimePair, center: Center, epsilon: f64) -> Result<(f64, f64)> {
    let (p, q) = (center.p(), center.q());
    if p <= 3 {
        return Err(EnvelopeError::Hypothesis(Hypothesis::PGreaterThanThree));
    }
    if q >= p {
        return Err(EnvelopeError::Hypothesis(Hypothesis::QBelowP));
    }
    if epsilon.is_nan() || epsilon < 1.0 {
        return Err(EnvelopeError::Hypothesis(Hypothesis::EpsilonAtLeastOne));
    }
    if epsilon > 0.5 * center.norm() {
        return Err(EnvelopeError::Hypothesis(Hypothesis::EpsilonAtMostHalfNorm));
    }
    if !crate::numtheory::within(pair.r() - p, pair.s() - q, epsilon) {
        return Err(EnvelopeError::Hypothesis(Hypothesis::PairWithinEpsilon));
    }
    let curve = QuadBezier::new(p, q)?;
    Ok(gaps_from(&bezout_coefficients(pair)?, &curve))
}

fn gaps_from(coeffs: &BezoutCoeffs, curve: &QuadBezier) -> (f64, f64) {
    let t0 = contact_from(coeffs);
    let start = as_point(coeffs);
    let end = as_point(&flip_bezout(*coeffs));
    (
        start.distance(alpha(curve, t0)),
        end.distance(beta(curve, t0)),
    )
}

/// One neighbor of the center with its segment and measured deviations.
#[derive(Debug, Clone, PartialEq)]
pub struct EnvelopeRecord {
    pub pair: CoprimePair,
    /// `B(r, s)`
    pub coeffs: BezoutCoeffs,
    /// `B(s, r)`
    pub flipped: BezoutCoeffs,
    /// From `B(r, s)` to `B(s, r)`.
    pub segment: Segment,
    pub t_contact: f64,
    pub gap_alpha: f64,
    pub gap_beta: f64,
    /// `|L(t_contact) - c(t_contact)|`
    pub deviation: f64,
    /// Endpoint distance from the segment to the tangent chord at
    /// `t_contact`.
    pub tangent_distance: f64,
    pub bound_ok: bool,
    /// Set for `(1, 1)`, whose segment has zero length.
    pub degenerate: bool,
}

impl EnvelopeRecord {
    pub fn build(pair: CoprimePair, params: &EnvelopeParams) -> Result<Self> {
        let curve = params.curve();
        let coeffs = bezout_coefficients(pair)?;
        let flipped = flip_bezout(coeffs);
        let segment = Segment::new(as_point(&coeffs), as_point(&flipped));
        let t_contact = contact_from(&coeffs);
        let (gap_alpha, gap_beta) = gaps_from(&coeffs, &curve);
        let deviation = segment
            .at(t_contact)
            .distance(quad_point(&curve, t_contact));
        let tangent = tangent_segment(&curve, t_contact)?;
        Ok(Self {
            pair,
            coeffs,
            flipped,
            segment,
            t_contact,
            gap_alpha,
            gap_beta,
            deviation,
            tangent_distance: segment_distance(&segment, &tangent),
            bound_ok: deviation < params.epsilon(),
            degenerate: pair.is_degenerate(),
        })
    }

    #[inline]
    pub fn max_gap(&self) -> f64 {
        self.gap_alpha.max(self.gap_beta)
    }
}

/// Aggregate outcome of one `(center, epsilon)` run.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub params: EnvelopeParams,
    /// Sorted lexicographically by `(r, s)`.
    pub records: Vec<EnvelopeRecord>,
    pub neighbor_count: usize,
    pub all_bounds_hold: bool,
    pub max_deviation: f64,
    pub max_endpoint_gap: f64,
}

impl VerificationReport {
    pub fn from_records(params: EnvelopeParams, mut records: Vec<EnvelopeRecord>) -> Self {
        records.sort_by_key(|r| r.pair);
        let fold_max = |f: fn(&EnvelopeRecord) -> f64| records.iter().map(f).fold(0.0, f64::max);
        Self {
            params,
            neighbor_count: records.len(),
            all_bounds_hold: records.iter().all(|r| r.bound_ok),
            max_deviation: fold_max(|r| r.deviation),
            max_endpoint_gap: fold_max(EnvelopeRecord::max_gap),
            records,
        }
    }

    /// `epsilon - max_deviation`; positive when every bound holds.
    pub fn bound_slack(&self) -> f64 {
        self.params.epsilon() - self.max_deviation
    }
}

fn records_within(params: &EnvelopeParams, radius: f64) -> Result<Vec<EnvelopeRecord>> {
    let neighbors = coprime_neighbors(params.center(), radius)?;
    neighbors
        .into_par_iter()
        .map(|pair| EnvelopeRecord::build(pair, params))
        .collect()
}

/// Every coprime neighbor within `epsilon - 1` of the center, with its
/// deviation checked against `epsilon`.
pub fn build_envelope(params: &EnvelopeParams) -> Result<VerificationReport> {
    let records = records_within(params, params.theorem_radius())?;
    Ok(VerificationReport::from_records(*params, records))
}

/// Same as [`build_envelope`] but over the wider radius `epsilon`, where the
/// endpoint gaps are bounded by `epsilon + 1`.
pub fn build_gap_report(params: &EnvelopeParams) -> Result<VerificationReport> {
    let records = records_within(params, params.gap_radius())?;
    Ok(VerificationReport::from_records(*params, records))
}

#[derive(Debug, Clone, PartialEq)]
pub enum SweepOutcome {
    Report(VerificationReport),
    Skipped {
        p: i64,
        q: i64,
        epsilon: f64,
        reason: Hypothesis,
    },
}

impl SweepOutcome {
    pub fn report(&self) -> Option<&VerificationReport> {
        match self {
            SweepOutcome::Report(r) => Some(r),
            SweepOutcome::Skipped { .. } => None,
        }
    }
}

/// Runs one `(p, q, epsilon)` combination; hypothesis violations become
/// skips rather than errors.
pub fn sweep_one(p: i64, q: i64, epsilon: f64) -> Result<SweepOutcome> {
    match EnvelopeParams::from_ints(p, q, epsilon) {
        Ok(params) => Ok(SweepOutcome::Report(build_envelope(&params)?)),
        Err(EnvelopeError::Hypothesis(reason)) => Ok(SweepOutcome::Skipped {
            p,
            q,
            epsilon,
            reason,
        }),
        Err(e) => Err(e),
    }
}

/// Every combination of `centers` and `epsilons`, centers outermost.
pub fn audit_sweep(centers: &[Center], epsilons: &[f64]) -> Result<Vec<SweepOutcome>> {
    centers
        .iter()
        .flat_map(|c| epsilons.iter().map(move |&e| (c.p(), c.q(), e)))
        .map(|(p, q, e)| sweep_one(p, q, e))
        .collect()
}
