//! Sign counting: Descartes bounds for the auxiliary generalized
//! polynomials, a numeric zero scan of `f`, strict sign regularity by minor
//! enumeration, and the 2×2 cross-determinant sign.

use rayon::prelude::*;
use serde::Serialize;

use crate::domain::{Exponent, Points};
use crate::error::{Error, Result};
use crate::exact_engine::minor_dense;
use crate::generators::cross_kwong;
use crate::matrix::{DenseMatrix, ScalarMode};
use crate::scalar::{Rational, Scalar};

/// Relative deadband below which binary64 coefficients count as zero.
pub const FLOAT_SIGN_DEADBAND: f64 = 1e-12;
pub const DEFAULT_SCAN_SAMPLES: usize = 4096;
/// Bisection stops at this relative bracket width.
pub const ROOT_REL_WIDTH: f64 = 1e-12;
/// Minor enumeration is limited to matrices of at most this order.
pub const SSR_MAX_ORDER: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of<T: Scalar>(v: &T) -> Self {
        if v.is_zero() {
            Sign::Zero
        } else if v.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }
}

/// Strict sign alternations after deleting zeros. Binary64 entries below
/// `1e-12 · max|seq|` are treated as zero.
pub fn sign_changes<T: Scalar>(seq: &[T]) -> usize {
    let cutoff = if T::EXACT {
        0.0
    } else {
        FLOAT_SIGN_DEADBAND * seq.iter().map(|x| x.to_f64().abs()).fold(0.0, f64::max)
    };
    alternations(seq.iter().filter(|x| x.to_f64().abs() >= cutoff))
}

fn alternations<'a, T: Scalar + 'a>(seq: impl Iterator<Item = &'a T>) -> usize {
    let signs: Vec<bool> = seq.filter(|x| !x.is_zero()).map(|x| x.is_positive()).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Coefficients of `g(x) = α_0 + ... + α_{n-1} x^{n-1} + β_0 x^r + ... + β_{n-1} x^{r+n-1}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeneralizedPolyCoeffs<T> {
    pub alpha: Vec<T>,
    pub beta: Vec<T>,
    pub r: Exponent,
}

impl<T: Scalar> GeneralizedPolyCoeffs<T> {
    /// `(α_0, ..., α_{n-1}, β_0, ..., β_{n-1})`, in increasing exponent order when `r > n - 1`.
    pub fn sequence(&self) -> Vec<T> {
        self.alpha.iter().chain(&self.beta).cloned().collect()
    }

    /// Sign changes of [`Self::sequence`], with the binary64 deadband taken
    /// per block: the two blocks can differ in scale by many orders of
    /// magnitude and each carries only its own rounding noise.
    pub fn sign_changes(&self) -> usize {
        let mut seq = deadbanded(&self.alpha);
        seq.extend(deadbanded(&self.beta));
        alternations(seq.iter())
    }
}

fn deadbanded<T: Scalar>(block: &[T]) -> Vec<T> {
    if T::EXACT {
        return block.to_vec();
    }
    let cutoff = FLOAT_SIGN_DEADBAND * block.iter().map(|x| x.to_f64().abs()).fold(0.0, f64::max);
    block
        .iter()
        .map(|x| if x.to_f64().abs() < cutoff { T::zero() } else { x.clone() })
        .collect()
}

/// Ascending coefficients of `∏_{j != skip} (x + shift · p_j)`.
fn product_except<T: Scalar>(p: &[T], skip: usize, shift: &T) -> Vec<T> {
    let mut poly = vec![T::one()];
    for (j, pj) in p.iter().enumerate() {
        if j == skip {
            continue;
        }
        let a = shift.clone() * pj.clone();
        let mut next = vec![T::zero(); poly.len() + 1];
        for (k, c) in poly.iter().enumerate() {
            next[k] = next[k].clone() + c.clone() * a.clone();
            next[k + 1] = next[k + 1].clone() + c.clone();
        }
        poly = next;
    }
    poly
}

fn weighted_lagrange_sums<T: Scalar>(
    points: &Points,
    c: &[T],
    r: &Exponent,
    shift: T,
) -> Result<(Vec<T>, Vec<T>)> {
    let p = points.to_scalars::<T>()?;
    let n = p.len();
    if c.len() != n {
        return Err(Error::LengthMismatch {
            left: n,
            right: c.len(),
        });
    }
    if c.iter().all(|x| x.is_zero()) {
        return Err(Error::AllZeroWeights);
    }
    let pr: Vec<T> = if T::EXACT {
        let k = r.integer().ok_or_else(|| {
            Error::ExactModeUnsupported(format!("non-integer exponent {r}"))
        })?;
        p.iter().map(|x| x.pow_int(k)).collect()
    } else {
        p.iter().map(|x| x.pow_real(r.value()).expect("binary64 powers are total")).collect()
    };
    let mut plain = vec![T::zero(); n];
    let mut powered = vec![T::zero(); n];
    for i in 0..n {
        let prod = product_except(&p, i, &shift);
        for (k, coef) in prod.into_iter().enumerate() {
            plain[k] = plain[k].clone() + c[i].clone() * coef.clone();
            powered[k] = powered[k].clone() + c[i].clone() * pr[i].clone() * coef;
        }
    }
    Ok((plain, powered))
}

/// `g = f · ∏(x + p_j) = x^r h_1 + h_2` with `h_1 = Σ c_i ∏_{j≠i}(x + p_j)`
/// (giving β) and `h_2 = Σ c_i p_i^r ∏_{j≠i}(x + p_j)` (giving α).
pub fn build_g_coeffs<T: Scalar>(points: &Points, c: &[T], r: &Exponent) -> Result<GeneralizedPolyCoeffs<T>> {
    let (h1, h2) = weighted_lagrange_sums(points, c, r, T::one())?;
    Ok(GeneralizedPolyCoeffs {
        alpha: h2,
        beta: h1,
        r: *r,
    })
}

/// Companion `g_0(x) = Σ c_i (x^r - p_i^r)/(x - p_i) ∏_j (x - p_j)
/// = x^r h̃_1 + h̃_2`, expanded from its definition.
pub fn build_g0_coeffs<T: Scalar>(points: &Points, c: &[T], r: &Exponent) -> Result<GeneralizedPolyCoeffs<T>> {
    let (h1, h2) = weighted_lagrange_sums(points, c, r, -T::one())?;
    Ok(GeneralizedPolyCoeffs {
        alpha: h2.into_iter().map(|x| -x).collect(),
        beta: h1,
        r: *r,
    })
}

fn check_descartes_hypothesis(n: usize, r: &Exponent) -> Result<()> {
    if n % 2 == 0 {
        return Err(Error::PreconditionViolated(format!("n = {n} must be odd")));
    }
    if !(r.value() > (n as f64) - 1.0) {
        return Err(Error::PreconditionViolated(format!("r = {r} must exceed n - 1 = {}", n - 1)));
    }
    Ok(())
}

/// `s`: sign changes of `(α, β)`; at most `n - 1` for odd `n` and `r > n - 1`.
pub fn descartes_zero_bound<T: Scalar>(points: &Points, c: &[T], r: &Exponent) -> Result<usize> {
    check_descartes_hypothesis(points.len(), r)?;
    Ok(build_g_coeffs(points, c, r)?.sign_changes())
}

/// `s_0`: sign changes of the companion `g_0`, which vanishes at every `p_i`.
pub fn companion_sign_changes<T: Scalar>(points: &Points, c: &[T], r: &Exponent) -> Result<usize> {
    check_descartes_hypothesis(points.len(), r)?;
    Ok(build_g0_coeffs(points, c, r)?.sign_changes())
}

/// `f(x) = Σ c_j (x^r + p_j^r) / (x + p_j)`.
pub fn eval_f(p: &[f64], c: &[f64], r: f64, x: f64) -> f64 {
    let xr = x.powf(r);
    p.iter()
        .zip(c)
        .map(|(&pj, &cj)| cj * (xr + pj.powf(r)) / (x + pj))
        .sum()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZeroScan {
    /// Lower bound on the number of zeros of `f` in `(0, ∞)`.
    pub count: usize,
    pub roots: Vec<f64>,
    pub x_min: f64,
    pub x_max: f64,
}

/// Counts sign changes of `f` on a logarithmic grid spanning
/// `[min p · 1e-6, max p · 1e3]`, refining each by bisection.
pub fn count_positive_zeros_f(points: &Points, c: &[f64], r: f64, samples: usize) -> Result<ZeroScan> {
    let p = points.to_f64_vec();
    if c.len() != p.len() {
        return Err(Error::LengthMismatch {
            left: p.len(),
            right: c.len(),
        });
    }
    let samples = samples.max(2);
    let x_min = p[0] * 1e-6;
    let x_max = p[p.len() - 1] * 1e3;
    let (lmin, lmax) = (x_min.ln(), x_max.ln());
    let grid: Vec<f64> = (0..samples)
        .map(|k| (lmin + (lmax - lmin) * k as f64 / (samples - 1) as f64).exp())
        .collect();
    let f = |x: f64| eval_f(&p, c, r, x);
    let values: Vec<f64> = grid.iter().map(|&x| f(x)).collect();

    let mut roots = Vec::new();
    let mut last: Option<(f64, f64)> = None;
    for (&x, &v) in grid.iter().zip(&values) {
        if v == 0.0 {
            roots.push(x);
            last = None;
            continue;
        }
        if let Some((x0, v0)) = last {
            if v0.signum() != v.signum() {
                roots.push(bisect(&f, x0, x, v0));
            }
        }
        last = Some((x, v));
    }
    Ok(ZeroScan {
        count: roots.len(),
        roots,
        x_min,
        x_max,
    })
}

fn bisect(f: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, f_lo: f64) -> f64 {
    let lo_sign = f_lo.signum();
    while hi - lo > ROOT_REL_WIDTH * hi {
        let mid = 0.5 * (lo + hi);
        let v = f(mid);
        if v == 0.0 {
            return mid;
        }
        if v.signum() == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// A `k × k` minor; indices are 0-based.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MinorWitness {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    #[serde(serialize_with = "crate::scalar::serialize_rational")]
    pub value: Rational,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "verdict")]
pub enum OrderVerdict {
    SignUniform { k: usize, sign: Sign },
    /// A zero minor, or the first minor together with the first one of opposite sign.
    Violation { k: usize, witnesses: Vec<MinorWitness> },
}

impl OrderVerdict {
    pub fn is_uniform(&self) -> bool {
        matches!(self, OrderVerdict::SignUniform { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SsrReport {
    pub max_order: usize,
    pub orders: Vec<OrderVerdict>,
    /// Every examined order is sign-uniform (`SSR_m`; full SSR when `m = n`).
    pub ssr: bool,
}

/// Lexicographically ordered `k`-subsets of `0..n`.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Strict sign regularity up to order `max_order` by enumerating every minor.
pub fn ssr_check(m: &DenseMatrix<Rational>, max_order: usize, fail_fast: bool) -> Result<SsrReport> {
    let dim = m.rows().max(m.cols());
    if dim > SSR_MAX_ORDER {
        return Err(Error::OrderTooLarge {
            n: dim,
            limit: SSR_MAX_ORDER,
        });
    }
    let limit = m.rows().min(m.cols());
    if max_order == 0 || max_order > limit {
        return Err(Error::PreconditionViolated(format!(
            "max order {max_order} must lie in 1..={limit}"
        )));
    }
    let mut orders = Vec::new();
    for k in 1..=max_order {
        let pairs: Vec<(Vec<usize>, Vec<usize>)> = combinations(m.rows(), k)
            .into_iter()
            .flat_map(|rows| {
                combinations(m.cols(), k)
                    .into_iter()
                    .map(move |cols| (rows.clone(), cols))
            })
            .collect();
        let minors: Vec<MinorWitness> = pairs
            .into_par_iter()
            .map(|(rows, cols)| {
                let value = minor_dense(m, &rows, &cols)?;
                Ok(MinorWitness { rows, cols, value })
            })
            .collect::<Result<_>>()?;
        let verdict = classify_order(k, minors);
        let violated = !verdict.is_uniform();
        orders.push(verdict);
        if violated && fail_fast {
            break;
        }
    }
    let ssr = orders.iter().all(OrderVerdict::is_uniform);
    Ok(SsrReport {
        max_order,
        orders,
        ssr,
    })
}

fn classify_order(k: usize, minors: Vec<MinorWitness>) -> OrderVerdict {
    if let Some(zero) = minors.iter().find(|w| Sign::of(&w.value) == Sign::Zero) {
        return OrderVerdict::Violation {
            k,
            witnesses: vec![zero.clone()],
        };
    }
    let first = &minors[0];
    let sign = Sign::of(&first.value);
    match minors.iter().find(|w| Sign::of(&w.value) != sign) {
        Some(other) => OrderVerdict::Violation {
            k,
            witnesses: vec![first.clone(), other.clone()],
        },
        None => OrderVerdict::SignUniform { k, sign },
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CrossDetSign {
    pub sign: Sign,
    /// `{p_1, p_2} ∩ {q_1, q_2}` is nonempty; otherwise the sign rule need not apply.
    pub hypothesis_holds: bool,
    pub mode: ScalarMode,
}

/// Sign of `det [(p_i^r + q_j^r)/(p_i + q_j)]` for two pairs of nodes.
pub fn cross_2x2_det_sign(p: &Points, q: &Points, r: &Exponent) -> Result<CrossDetSign> {
    for pts in [p, q] {
        if pts.len() != 2 {
            return Err(Error::LengthMismatch {
                left: 2,
                right: pts.len(),
            });
        }
    }
    let (pe, qe) = (p.to_exact_rationals(), q.to_exact_rationals());
    let hypothesis_holds = pe.iter().any(|x| qe.contains(x));
    let exact = p.mode() == ScalarMode::Exact && q.mode() == ScalarMode::Exact && r.is_integer();
    let (sign, mode) = if exact {
        let det = cross_kwong::<Rational>(p, q, r)?.determinant()?;
        (Sign::of(&det), ScalarMode::Exact)
    } else {
        let m = cross_kwong::<f64>(p, q, r)?;
        let det = m.get(0, 0) * m.get(1, 1) - m.get(0, 1) * m.get(1, 0);
        (Sign::of(&det), ScalarMode::Float)
    };
    Ok(CrossDetSign {
        sign,
        hypothesis_holds,
        mode,
    })
}

/// Binary64 determinant of the cross-Kwong matrix with the scale
/// `∏ p_i^{(r-1)/2} ∏ q_j^{(r-1)/2}` of its diagonal factors. Writing
/// `p = e^{2x}`, `q = e^{2y}`, the entries factor as
/// `p_i^{(r-1)/2} q_j^{(r-1)/2} · cosh r(x_i - y_j) / cosh (x_i - y_j)`, so
/// `det / scale` is the determinant of the cosh form, whose entries are at
/// least 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScaledDet {
    pub det: f64,
    pub scale: f64,
}

impl ScaledDet {
    pub fn relative(&self) -> f64 {
        self.det / self.scale
    }
}

pub fn cross_kwong_scaled_det(p: &Points, q: &Points, r: &Exponent) -> Result<ScaledDet> {
    let det = cross_kwong::<f64>(p, q, r)?.determinant()?;
    let half = (r.value() - 1.0) / 2.0;
    let scale = p.to_f64_vec().iter().chain(&q.to_f64_vec()).map(|x| x.powf(half)).product();
    Ok(ScaledDet { det, scale })
}
