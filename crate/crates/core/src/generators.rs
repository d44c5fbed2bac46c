//! Builders for every matrix family: Kwong, Cauchy, Loewner, `|p_i - p_j|^r`,
//! the cosh form, the non-symmetric cross-Kwong matrix, and the Vandermonde
//! factors of odd-exponent Kwong matrices.

use crate::domain::{Exponent, Family, FamilySpec, Points};
use crate::error::{Error, Result};
use crate::matrix::{DenseMatrix, IntoSymData, ScalarMode, SymMatrix};
use crate::scalar::{Rational, Scalar};

/// Exact when the points are rational and `r` is an integer, else binary64.
pub fn preferred_mode(points: &Points, r: &Exponent) -> ScalarMode {
    if points.mode() == ScalarMode::Exact && r.is_integer() {
        ScalarMode::Exact
    } else {
        ScalarMode::Float
    }
}

fn powers<T: Scalar>(p: &[T], r: &Exponent) -> Result<Vec<T>> {
    if T::EXACT {
        let k = r.integer().ok_or_else(|| {
            Error::ExactModeUnsupported(format!("non-integer exponent {r}"))
        })?;
        Ok(p.iter().map(|x| x.pow_int(k)).collect())
    } else {
        Ok(p.iter()
            .map(|x| x.pow_real(r.value()).expect("binary64 powers are total"))
            .collect())
    }
}

fn check_exact_request(points: &Points, r: &Exponent) -> Result<()> {
    if points.mode() == ScalarMode::Float {
        return Err(Error::ExactModeUnsupported("points were given in binary64".into()));
    }
    if !r.is_integer() {
        return Err(Error::ExactModeUnsupported(format!("non-integer exponent {r}")));
    }
    Ok(())
}

fn dispatch(
    points: &Points,
    r: &Exponent,
    mode: ScalarMode,
    exact: impl FnOnce() -> Result<SymMatrix>,
    float: impl FnOnce() -> Result<SymMatrix>,
) -> Result<SymMatrix> {
    match mode {
        ScalarMode::Exact => {
            check_exact_request(points, r)?;
            exact()
        }
        ScalarMode::Float => float(),
    }
}

/// `[(p_i^r + p_j^r) / (p_i + p_j)]` as a dense matrix over `T`.
pub fn kwong_dense<T: Scalar>(points: &Points, r: &Exponent) -> Result<DenseMatrix<T>> {
    cross_kwong(points, points, r)
}

fn kwong_sym<T: IntoSymData>(points: &Points, r: &Exponent) -> Result<SymMatrix> {
    let p = points.to_scalars::<T>()?;
    let pr = powers(&p, r)?;
    Ok(SymMatrix::from_fn(p.len(), |i, j| {
        (pr[i].clone() + pr[j].clone()) / (p[i].clone() + p[j].clone())
    }))
}

pub fn gen_kwong(points: &Points, r: Exponent, mode: ScalarMode) -> Result<SymMatrix> {
    let m = dispatch(
        points,
        &r,
        mode,
        || kwong_sym::<Rational>(points, &r),
        || kwong_sym::<f64>(points, &r),
    )?;
    Ok(m.with_provenance(FamilySpec::kwong(points.clone(), r)))
}

/// The Cauchy matrix `[2 / (p_i + p_j)]`, i.e. the Kwong matrix at `r = 0`.
pub fn gen_cauchy(points: &Points, mode: ScalarMode) -> Result<SymMatrix> {
    fn build<T: IntoSymData>(points: &Points) -> Result<SymMatrix> {
        let p = points.to_scalars::<T>()?;
        let two = T::from_i64(2);
        Ok(SymMatrix::from_fn(p.len(), |i, j| {
            two.clone() / (p[i].clone() + p[j].clone())
        }))
    }
    let r = Exponent::int(0);
    let m = dispatch(points, &r, mode, || build::<Rational>(points), || build::<f64>(points))?;
    Ok(m.with_provenance(FamilySpec::new(Family::Cauchy, points.clone(), None, r)?))
}

/// Loewner matrix `[(p_i^r - p_j^r) / (p_i - p_j)]` with diagonal `r p_i^{r-1}`.
pub fn gen_loewner(points: &Points, r: Exponent, mode: ScalarMode) -> Result<SymMatrix> {
    fn build<T: IntoSymData>(points: &Points, r: &Exponent) -> Result<SymMatrix> {
        let p = points.to_scalars::<T>()?;
        let pr = powers(&p, r)?;
        let deriv = powers(&p, &r.offset(-1))?;
        let coef = if T::EXACT {
            T::from_i64(r.integer().expect("checked by dispatch"))
        } else {
            T::from_rational(&Rational::from_float(r.value()).expect("finite exponent"))
        };
        Ok(SymMatrix::from_fn(p.len(), |i, j| {
            if i == j {
                coef.clone() * deriv[i].clone()
            } else {
                (pr[i].clone() - pr[j].clone()) / (p[i].clone() - p[j].clone())
            }
        }))
    }
    let m = dispatch(
        points,
        &r,
        mode,
        || build::<Rational>(points, &r),
        || build::<f64>(points, &r),
    )?;
    Ok(m.with_provenance(FamilySpec::new(Family::Loewner, points.clone(), None, r)?))
}

/// `B_r = [|p_i - p_j|^r]` for `r > 0`.
pub fn gen_power_absdiff(points: &Points, r: Exponent, mode: ScalarMode) -> Result<SymMatrix> {
    if !(r.value() > 0.0) {
        return Err(Error::NonpositiveExponent(r.value()));
    }
    fn build<T: IntoSymData>(points: &Points, r: &Exponent) -> Result<SymMatrix> {
        let p = points.to_scalars::<T>()?;
        let mut out = Vec::new();
        for i in 0..p.len() {
            for j in 0..=i {
                if i == j {
                    out.push(T::zero());
                } else {
                    let d = (p[i].clone() - p[j].clone()).abs();
                    out.extend(powers(&[d], r)?);
                }
            }
        }
        Ok(SymMatrix::from_fn(p.len(), {
            let mut it = out.into_iter();
            move |_, _| it.next().expect("one entry per packed slot")
        }))
    }
    let m = dispatch(
        points,
        &r,
        mode,
        || build::<Rational>(points, &r),
        || build::<f64>(points, &r),
    )?;
    Ok(m.with_provenance(FamilySpec::new(Family::PowerAbsDiff, points.clone(), None, r)?))
}

/// `cosh(a) / cosh(b)` for `a, b >= 0` without forming either cosh.
fn cosh_ratio(a: f64, b: f64) -> f64 {
    let (a, b) = (a.abs(), b.abs());
    (a - b).exp() * (1.0 + (-2.0 * a).exp()) / (1.0 + (-2.0 * b).exp())
}

/// `[cosh(r (x_i - x_j)) / cosh(x_i - x_j)]`, binary64 only.
pub fn gen_cosh_kwong(xs: &[f64], r: f64) -> Result<SymMatrix> {
    let mut sorted = xs.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite abscissae"));
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::DuplicatePoint(format!("{:?}", w[0])));
    }
    Ok(SymMatrix::from_fn(xs.len(), |i, j| {
        let d = xs[i] - xs[j];
        cosh_ratio(r * d, d)
    }))
}

/// Abscissae `x_i = ln(p_i) / 2`, so that `p_i = e^{2 x_i}`.
pub fn cosh_abscissae(points: &Points) -> Vec<f64> {
    points.to_f64_vec().iter().map(|p| p.ln() / 2.0).collect()
}

/// Cosh form of the Kwong matrix on `points`; congruent to it via
/// `diag(e^{(r-1) x_i})`.
pub fn gen_cosh_kwong_from_points(points: &Points, r: Exponent) -> Result<SymMatrix> {
    let m = gen_cosh_kwong(&cosh_abscissae(points), r.value())?;
    Ok(m.with_provenance(FamilySpec::new(Family::CoshKwong, points.clone(), None, r)?))
}

/// `[(p_i^r + q_j^r) / (p_i + q_j)]`; not symmetric unless `p = q`.
pub fn cross_kwong<T: Scalar>(p: &Points, q: &Points, r: &Exponent) -> Result<DenseMatrix<T>> {
    if p.len() != q.len() {
        return Err(Error::LengthMismatch {
            left: p.len(),
            right: q.len(),
        });
    }
    let ps = p.to_scalars::<T>()?;
    let qs = q.to_scalars::<T>()?;
    let pr = powers(&ps, r)?;
    let qr = powers(&qs, r)?;
    Ok(DenseMatrix::from_fn(ps.len(), qs.len(), |i, j| {
        (pr[i].clone() + qr[j].clone()) / (ps[i].clone() + qs[j].clone())
    }))
}

/// Builds the symmetric matrix described by `spec`.
pub fn build(spec: &FamilySpec, mode: ScalarMode) -> Result<SymMatrix> {
    match spec.family {
        Family::Kwong => gen_kwong(&spec.points, spec.r, mode),
        Family::Cauchy => gen_cauchy(&spec.points, mode),
        Family::Loewner => gen_loewner(&spec.points, spec.r, mode),
        Family::PowerAbsDiff => gen_power_absdiff(&spec.points, spec.r, mode),
        Family::CoshKwong => {
            if mode == ScalarMode::Exact {
                return Err(Error::ExactModeUnsupported("cosh form is binary64 only".into()));
            }
            gen_cosh_kwong_from_points(&spec.points, spec.r)
        }
        Family::CrossKwong => {
            let q = spec.second_points.as_ref().expect("validated by FamilySpec::new");
            let m = match mode {
                ScalarMode::Exact => {
                    check_exact_request(&spec.points, &spec.r)?;
                    check_exact_request(q, &spec.r)?;
                    SymMatrix::from_dense(&cross_kwong::<Rational>(&spec.points, q, &spec.r)?)?
                }
                ScalarMode::Float => {
                    SymMatrix::from_dense(&cross_kwong::<f64>(&spec.points, q, &spec.r)?)?
                }
            };
            Ok(m.with_provenance(spec.clone()))
        }
    }
}

/// Factors of `K_r = Wᵀ V W` for odd integer `r <= n`.
#[derive(Debug, Clone, PartialEq)]
pub struct VandermondePair<T> {
    /// `r × n`, row `i` holds `p_j^i`.
    pub w: DenseMatrix<T>,
    /// `r × r` antidiagonal with entries `1, -1, ..., -1, 1`.
    pub v: DenseMatrix<T>,
}

pub fn gen_vandermonde_pair<T: Scalar>(points: &Points, r: i64) -> Result<VandermondePair<T>> {
    let n = points.len();
    if r < 1 || r % 2 == 0 || r as usize > n {
        return Err(Error::BadExponent(format!(
            "Vandermonde factorization needs odd 1 <= r <= n = {n}, got {r}"
        )));
    }
    let r = r as usize;
    let p = points.to_scalars::<T>()?;
    let w = DenseMatrix::from_fn(r, n, |i, j| p[j].pow_int(i as i64));
    let v = DenseMatrix::from_fn(r, r, |i, j| {
        if i + j != r - 1 {
            T::zero()
        } else if i % 2 == 0 {
            T::one()
        } else {
            -T::one()
        }
    });
    Ok(VandermondePair { w, v })
}
