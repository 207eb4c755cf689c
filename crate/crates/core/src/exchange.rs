//! Zero-temperature exchange kernel of the ideal Fermi gas.
//!
//! Distances are dimensionless, `x = k_F r`. The kernel is normalized so that
//! `f(0) = 1`:
//!
//! ```text
//! f(x) = 3 j1(x) / x = 3 (sin x - x cos x) / x^3
//! ```
//!
//! Writing the kernel as `j1(x)/x` without the factor 3 would give `f(0) = 1/3`,
//! which is incompatible with full exchange at coincidence and with the pair
//! entanglement threshold near `x = 1.8`.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Below this separation the closed form loses its digits to cancellation and
/// the Taylor series is used instead.
pub const SERIES_CUTOFF: f64 = 1e-2;

/// Bracket searched for the pair entanglement threshold.
pub const THRESHOLD_BRACKET: (f64, f64) = (1.0, 3.0);

/// Dimensionless separation `x = k_F r`. Always finite and non-negative.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct ScaledDistance(f64);

impl ScaledDistance {
    pub const ZERO: ScaledDistance = ScaledDistance(0.0);

    pub fn new(x: f64) -> Result<Self> {
        if !x.is_finite() || x < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "scaled distance must be finite and non-negative, got {x}"
            )));
        }
        Ok(ScaledDistance(x))
    }

    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for ScaledDistance {
    type Error = Error;
    fn try_from(x: f64) -> Result<Self> {
        ScaledDistance::new(x)
    }
}

impl From<ScaledDistance> for f64 {
    fn from(x: ScaledDistance) -> f64 {
        x.0
    }
}

/// Exchange kernel `f(x) = 3 (sin x - x cos x) / x^3`, with `f(0) = 1`.
pub fn exchange_function(x: ScaledDistance) -> f64 {
    kernel(x.0)
}

/// Unchecked kernel evaluation on a raw distance (caller guarantees `x >= 0`).
#[inline]
pub(crate) fn kernel(x: f64) -> f64 {
    if x < SERIES_CUTOFF {
        // 1 - x^2/10 + x^4/280 - x^6/15120; truncation error < 1e-21 here.
        let x2 = x * x;
        1.0 - x2 * (1.0 / 10.0 - x2 * (1.0 / 280.0 - x2 / 15120.0))
    } else {
        let (s, c) = x.sin_cos();
        3.0 * (s - x * c) / (x * x * x)
    }
}

/// Smallest `x* > 0` with `f(x*)^2 = 1/2`, by bisection on `[1, 3]`.
///
/// The returned point is the upper end of the final bracket, so
/// `f(x*)^2 <= 1/2` holds exactly at the returned value and the pair state is
/// separable there.
pub fn pair_entanglement_threshold(tolerance: f64) -> Result<ScaledDistance> {
    if tolerance.is_nan() || tolerance <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "tolerance must be positive, got {tolerance}"
        )));
    }
    let g = |x: f64| {
        let f = kernel(x);
        f * f - 0.5
    };
    let (mut lo, mut hi) = THRESHOLD_BRACKET;
    if g(lo) <= 0.0 || g(hi) > 0.0 {
        return Err(Error::NoSignChange { lo, hi });
    }
    while hi - lo > tolerance {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if g(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    ScaledDistance::new(hi)
}
