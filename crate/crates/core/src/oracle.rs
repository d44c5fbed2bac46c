//! Closed-form inertia of `K_r` for every order `n >= 1` and real `r`, and
//! the predictions derived from it.
//!
//! Stitching: negative `r` reflects to `|r|`; `0 <= r < 1` is definite; odd
//! integers `r <= n` follow the antidiagonal signature; otherwise `k` is the
//! greatest odd integer below `r` and the open band `(k, k + 2)` applies
//! while `k + 2 < n`, after which the inertia freezes at its tail value.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::domain::{Inertia, INTEGRALITY_TOL};
use crate::error::{Error, Result};

/// Exponents this close to an odd integer are treated as exactly singular
/// by the oracle-assisted float classification.
pub const SINGULAR_SNAP: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseTag {
    UnitInterval,
    OddInteger(u32),
    OpenBand(u32),
    TailOddN,
    TailEvenN,
    ZeroExponent,
    NegativeReflected,
    Order1,
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CaseTag::UnitInterval => f.write_str("UnitInterval"),
            CaseTag::OddInteger(r) => write!(f, "OddInteger({r})"),
            CaseTag::OpenBand(k) => write!(f, "OpenBand({k})"),
            CaseTag::TailOddN => f.write_str("TailOddN"),
            CaseTag::TailEvenN => f.write_str("TailEvenN"),
            CaseTag::ZeroExponent => f.write_str("ZeroExponent"),
            CaseTag::NegativeReflected => f.write_str("NegativeReflected"),
            CaseTag::Order1 => f.write_str("Order1"),
        }
    }
}

impl Serialize for CaseTag {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PredictionCase {
    pub case_tag: CaseTag,
    pub inertia: Inertia,
}

fn nearest_integer(r: f64) -> Option<i64> {
    let k = r.round();
    ((r - k).abs() < INTEGRALITY_TOL).then_some(k as i64)
}

fn odd_integer(r: f64) -> Option<usize> {
    nearest_integer(r).filter(|k| k.rem_euclid(2) == 1).map(|k| k.unsigned_abs() as usize)
}

/// Inertia at an odd integer `r <= n`: signature of the `r × r`
/// antidiagonal `(1, -1, ..., 1)` plus `n - r` zeros.
fn odd_integer_inertia(n: usize, r: usize) -> Inertia {
    let (lo, hi) = (r / 2, r.div_ceil(2));
    if r % 4 == 1 {
        Inertia::new(hi, n - r, lo)
    } else {
        Inertia::new(lo, n - r, hi)
    }
}

fn band_inertia(n: usize, k: usize) -> Inertia {
    let c = k.div_ceil(2);
    if k % 4 == 1 {
        Inertia::new(c, 0, n - c)
    } else {
        Inertia::new(n - c, 0, c)
    }
}

fn tail(n: usize) -> PredictionCase {
    if n % 2 == 1 {
        PredictionCase {
            case_tag: CaseTag::TailOddN,
            inertia: odd_integer_inertia(n, n),
        }
    } else {
        PredictionCase {
            case_tag: CaseTag::TailEvenN,
            inertia: Inertia::new(n / 2, 0, n / 2),
        }
    }
}

/// Total predictor of `In K_r` for `n × n` Kwong matrices.
pub fn predict_kwong_inertia(n: usize, r: f64) -> PredictionCase {
    assert!(n >= 1, "order must be at least 1");
    assert!(!r.is_nan(), "exponent must not be NaN");
    if n == 1 {
        return PredictionCase {
            case_tag: CaseTag::Order1,
            inertia: Inertia::new(1, 0, 0),
        };
    }
    if r < 0.0 && nearest_integer(r) != Some(0) {
        return PredictionCase {
            case_tag: CaseTag::NegativeReflected,
            inertia: predict_kwong_inertia(n, -r).inertia,
        };
    }
    if nearest_integer(r) == Some(0) {
        return PredictionCase {
            case_tag: CaseTag::ZeroExponent,
            inertia: Inertia::new(n, 0, 0),
        };
    }
    if let Some(k) = odd_integer(r).filter(|&k| k <= n) {
        return PredictionCase {
            case_tag: CaseTag::OddInteger(k as u32),
            inertia: odd_integer_inertia(n, k),
        };
    }
    if r < 1.0 {
        return PredictionCase {
            case_tag: CaseTag::UnitInterval,
            inertia: Inertia::new(n, 0, 0),
        };
    }
    // Greatest odd integer strictly below r (r is not itself an odd integer <= n here).
    let k = match odd_integer(r) {
        Some(odd) => odd - 2,
        None => {
            let f = r.floor() as usize;
            if f % 2 == 1 {
                f
            } else {
                f - 1
            }
        }
    };
    if k + 2 < n {
        PredictionCase {
            case_tag: CaseTag::OpenBand(k as u32),
            inertia: band_inertia(n, k),
        }
    } else {
        tail(n)
    }
}

/// `K_r` is singular exactly when `|r|` is an odd integer below `n`.
pub fn predict_singular(n: usize, r: f64) -> bool {
    odd_integer(r).is_some_and(|k| k < n)
}

/// Nullity to hand the float classifier: `n - k` when `r` is within
/// [`SINGULAR_SNAP`] of an odd integer `k < n`.
pub fn kwong_expected_nullity(n: usize, r: f64) -> Option<usize> {
    let k = r.abs().round();
    if (r.abs() - k).abs() < SINGULAR_SNAP && k as i64 % 2 == 1 && (k as usize) < n {
        Some(n - k as usize)
    } else {
        None
    }
}

/// `In [|p_i - p_j|^r] = In K_{r+1}` for `r > 0`.
pub fn predict_absdiff_inertia(n: usize, r: f64) -> Result<Inertia> {
    if !(r > 0.0) {
        return Err(Error::NonpositiveExponent(r));
    }
    Ok(predict_kwong_inertia(n, r + 1.0).inertia)
}

/// Exponents where the inertia of `K_r` changes: odd integers `<= n - 1`.
pub fn flip_points(n: usize) -> Vec<f64> {
    (1..n).step_by(2).map(|k| k as f64).collect()
}

/// Loewner inertia on the two ranges where it is stated here; `None` elsewhere.
pub fn predict_loewner_inertia_partial(n: usize, r: f64) -> Option<Inertia> {
    if 0.0 < r && r < 1.0 {
        Some(Inertia::new(n, 0, 0))
    } else if 1.0 < r && r < 2.0 {
        Some(Inertia::new(1, 0, n - 1))
    } else {
        None
    }
}
