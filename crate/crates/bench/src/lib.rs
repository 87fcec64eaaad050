//! Shared fixtures for the criterion benches.

use bezout_bezier::{CoprimePair, EnvelopeParams};

/// The two figure-scale envelope runs.
pub fn figure_params() -> [EnvelopeParams; 2] {
    [
        EnvelopeParams::from_ints(1_000_000, 200_000, 10.0).expect("valid params"),
        EnvelopeParams::from_ints(1_000_000, 600_000, 10.0).expect("valid params"),
    ]
}

/// Coprime pairs `(r, s)` with `1 <= r, s <= n`.
pub fn coprime_grid(n: i64) -> Vec<CoprimePair> {
    (1..=n)
        .flat_map(|r| (1..=n).filter_map(move |s| CoprimePair::new(r, s).ok()))
        .collect()
}
