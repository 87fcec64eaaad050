//! Approximating the quadratic Bézier curve with control points `(p, q)`,
//! `(0, 0)`, `(q, p)` by segments joining the Bézout coefficients of coprime
//! pairs near `(p, q)`.
//!
//! - [`numtheory`]: gcd, normalized Bézout coefficients, coprime enumeration.
//! - [`geometry`]: curve evaluation, tangent chords, projections, distances.
//! - [`envelope`]: Bézier–Bézout segments and bound verification.
//! - [`render`]: CSV and SVG output.

pub mod envelope;
pub mod geometry;
pub mod numtheory;
pub mod render;

pub use envelope::{
    audit_sweep, bezout_segment, build_envelope, build_gap_report, contact_parameter,
    endpoint_gaps, endpoint_gaps_at, sweep_one, EnvelopeError, EnvelopeParams, EnvelopeRecord,
    Hypothesis, SweepOutcome, VerificationReport,
};
pub use geometry::{
    alpha, beta, dist_to_origin_line, gamma, linear_bezier, project_onto_ray, quad_point,
    segment_distance, segment_distance_symmetric, tangent_segment, tolerance, GeometryError,
    Point2, Projection, QuadBezier, Segment,
};
pub use numtheory::{
    bezout_coefficients, coprime_neighbors, extend_pair, flip_bezout, gcd, BezoutCoeffs, Center,
    CoprimePair, NumTheoryError,
};
pub use render::{format_real, to_csv, to_svg, RenderOptions, CSV_HEADER};
