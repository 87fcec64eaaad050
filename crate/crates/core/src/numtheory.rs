//! Exact integer arithmetic: gcd, normalized Bézout coefficients and
//! coprime-pair enumeration inside a disk.
//!
//! Every quantity here is a signed 64-bit integer manipulated with checked
//! arithmetic. Inputs up to `2^31` are supported; products such as `a * q`
//! then stay well inside the `i64` range.

use std::fmt;

use thiserror::Error;

/// Largest coordinate the library promises to handle without overflow.
pub const MAX_SUPPORTED: i64 = 1 << 31;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumTheoryError {
    #[error("gcd(0, 0) is undefined")]
    GcdOfZeros,
    #[error("gcd requires nonnegative arguments, got ({0}, {1})")]
    NegativeGcdArgument(i64, i64),
    #[error("({r}, {s}) is not a pair of positive integers")]
    NotPositive { r: i64, s: i64 },
    #[error("({r}, {s}) is not coprime: gcd = {gcd}")]
    NotCoprime { r: i64, s: i64, gcd: i64 },
    #[error("invalid center ({p}, {q}): requires p ≥ 1 and q ≥ 0")]
    InvalidCenter { p: i64, q: i64 },
    #[error("radius must be finite, nonnegative and at most 2^31, got {0}")]
    InvalidRadius(f64),
    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
}

pub type Result<T> = std::result::Result<T, NumTheoryError>;

/// Greatest common divisor of two nonnegative integers.
pub fn gcd(x: i64, y: i64) -> Result<i64> {
    if x < 0 || y < 0 {
        return Err(NumTheoryError::NegativeGcdArgument(x, y));
    }
    if x == 0 && y == 0 {
        return Err(NumTheoryError::GcdOfZeros);
    }
    Ok(gcd_unchecked(x, y))
}

#[inline]
fn gcd_unchecked(mut x: i64, mut y: i64) -> i64 {
    while y != 0 {
        (x, y) = (y, x % y);
    }
    x
}

/// A pair `(r, s)` of positive coprime integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CoprimePair {
    r: i64,
    s: i64,
}

impl CoprimePair {
    pub fn new(r: i64, s: i64) -> Result<Self> {
        if r < 1 || s < 1 {
            return Err(NumTheoryError::NotPositive { r, s });
        }
        let g = gcd_unchecked(r, s);
        if g != 1 {
            return Err(NumTheoryError::NotCoprime { r, s, gcd: g });
        }
        Ok(Self { r, s })
    }

    #[inline]
    pub fn r(&self) -> i64 {
        self.r
    }

    #[inline]
    pub fn s(&self) -> i64 {
        self.s
    }

    /// The pair with its coordinates swapped, `(s, r)`.
    #[inline]
    pub fn flipped(&self) -> Self {
        Self {
            r: self.s,
            s: self.r,
        }
    }

    /// `(1, 1)` is the only coprime pair on the diagonal; its segment
    /// collapses to a point.
    #[inline]
    pub fn is_degenerate(&self) -> bool {
        self.r == self.s
    }
}

impl fmt::Display for CoprimePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.r, self.s)
    }
}

/// The normalized Bézout coefficients `(a, b)` of a coprime pair `(p, q)`:
/// the unique solution of `a*q - b*p = 1` with `0 < a <= p` and `0 <= b < q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BezoutCoeffs {
    a: i64,
    b: i64,
    pair: CoprimePair,
}

impl BezoutCoeffs {
    #[inline]
    pub fn a(&self) -> i64 {
        self.a
    }

    #[inline]
    pub fn b(&self) -> i64 {
        self.b
    }

    /// The pair these coefficients belong to.
    #[inline]
    pub fn pair(&self) -> CoprimePair {
        self.pair
    }

    /// `a*q - b*p`, which is 1 for every value this type can hold.
    pub fn identity_value(&self) -> i64 {
        self.a * self.pair.s - self.b * self.pair.r
    }
}

/// Extended Euclid: returns `(g, x, y)` with `x*m + y*n = g = gcd(m, n)`.
fn extended_euclid(m: i64, n: i64) -> (i64, i64, i64) {
    let (mut old_r, mut r) = (m, n);
    let (mut old_x, mut x) = (1i64, 0i64);
    let (mut old_y, mut y) = (0i64, 1i64);
    while r != 0 {
        let quotient = old_r / r;
        (old_r, r) = (r, old_r - quotient * r);
        (old_x, x) = (x, old_x - quotient * x);
        (old_y, y) = (y, old_y - quotient * y);
    }
    (old_r, old_x, old_y)
}

/// Normalized Bézout coefficients `B(p, q)` of a coprime pair.
pub fn bezout_coefficients(pair: CoprimePair) -> Result<BezoutCoeffs> {
    let (p, q) = (pair.r, pair.s);
    // x*q + y*p = 1, so (a0, b0) = (x, -y) solves a*q - b*p = 1.
    let (g, x, y) = extended_euclid(q, p);
    if g != 1 {
        return Err(NumTheoryError::NotCoprime { r: p, s: q, gcd: g });
    }
    let a0 = x;
    let b0 = y
        .checked_neg()
        .ok_or(NumTheoryError::Overflow("bezout shift"))?;

    // Shift along the solution line (a0, b0) + k*(p, q) into 0 < a <= p.
    let a = (a0 - 1).rem_euclid(p) + 1;
    let k = (a - a0) / p;
    let b = k
        .checked_mul(q)
        .and_then(|kq| b0.checked_add(kq))
        .ok_or(NumTheoryError::Overflow("bezout shift"))?;

    debug_assert!(
        0 <= b && b < q,
        "normalization left b = {b} outside [0, {q})"
    );
    debug_assert_eq!(a as i128 * q as i128 - b as i128 * p as i128, 1);
    Ok(BezoutCoeffs { a, b, pair })
}

/// `B(q, p)` obtained from `B(p, q) = (a, b)` as `(q - b, p - a)`.
pub fn flip_bezout(coeffs: BezoutCoeffs) -> BezoutCoeffs {
    let (p, q) = (coeffs.pair.r, coeffs.pair.s);
    BezoutCoeffs {
        a: q - coeffs.b,
        b: p - coeffs.a,
        pair: coeffs.pair.flipped(),
    }
}

/// The pair `(b + q, a + p)`, whose Bézout coefficients are `(q, p)`.
pub fn extend_pair(coeffs: BezoutCoeffs) -> Result<CoprimePair> {
    let (p, q) = (coeffs.pair.r, coeffs.pair.s);
    let r = coeffs
        .b
        .checked_add(q)
        .ok_or(NumTheoryError::Overflow("b + q"))?;
    let s = coeffs
        .a
        .checked_add(p)
        .ok_or(NumTheoryError::Overflow("a + p"))?;
    // q*(a+p) - p*(b+q) = 1 guarantees coprimality.
    Ok(CoprimePair { r, s })
}

/// Lattice point `(p, q)` with `p >= 1` and `q >= 0`. Coprimality is not
/// required.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Center {
    p: i64,
    q: i64,
}

impl Center {
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if p < 1 || q < 0 {
            return Err(NumTheoryError::InvalidCenter { p, q });
        }
        Ok(Self { p, q })
    }

    #[inline]
    pub fn p(&self) -> i64 {
        self.p
    }

    #[inline]
    pub fn q(&self) -> i64 {
        self.q
    }

    /// Euclidean norm `sqrt(p^2 + q^2)`.
    pub fn norm(&self) -> f64 {
        (self.p as f64).hypot(self.q as f64)
    }

    /// The center as a coprime pair, if it is one.
    pub fn as_coprime(&self) -> Option<CoprimePair> {
        CoprimePair::new(self.p, self.q).ok()
    }
}

impl fmt::Display for Center {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

/// All positive coprime pairs `(r, s)` with `||(r, s) - (p, q)|| <= radius`,
/// sorted lexicographically.
pub fn coprime_neighbors(center: Center, radius: f64) -> Result<Vec<CoprimePair>> {
    if !radius.is_finite() || radius < 0.0 || radius > MAX_SUPPORTED as f64 {
        return Err(NumTheoryError::InvalidRadius(radius));
    }
    let (p, q) = (center.p, center.q);
    let reach = radius.floor() as i64;
    let r_lo = (p - reach - 1).max(1);
    let r_hi = p
        .checked_add(reach + 1)
        .ok_or(NumTheoryError::Overflow("neighbor range"))?;

    let mut out = Vec::new();
    for r in r_lo..=r_hi {
        let dx = r - p;
        let rest = radius * radius - (dx * dx) as f64;
        if rest < -1.0 {
            continue;
        }
        // One lattice step of slack on each side; the exact test below decides.
        let half = rest.max(0.0).sqrt().floor() as i64 + 1;
        for s in (q - half).max(1)..=q + half {
            let dy = s - q;
            if within(dx, dy, radius) && gcd_unchecked(r, s) == 1 {
                out.push(CoprimePair { r, s });
            }
        }
    }
    Ok(out)
}

/// Disk membership `sqrt(dx^2 + dy^2) <= radius`, with the squared distance
/// formed exactly in integers.
#[inline]
pub(crate) fn within(dx: i64, dy: i64, radius: f64) -> bool {
    ((dx * dx + dy * dy) as f64).sqrt() <= radius
}
