//! Binary64 eigenvalues by cyclic Jacobi rotations, and the policy that
//! decides which computed eigenvalues count as zero.

use serde::Serialize;

use crate::domain::{Family, FamilySpec, Inertia};
use crate::error::{Error, Result};
use crate::generators::{build, gen_cosh_kwong_from_points};
use crate::matrix::{DenseMatrix, ScalarMode, SymMatrix};

pub const DEFAULT_SWEEP_TOL: f64 = 1e-15;
pub const DEFAULT_MAX_SWEEPS: usize = 100;
/// Default zero threshold is `ZERO_THRESHOLD_FACTOR · n · ε · max|λ|`.
pub const ZERO_THRESHOLD_FACTOR: f64 = 64.0;
/// Minimum spectral gap demanded when a nullity is supplied.
pub const MIN_GAP_RATIO: f64 = 1e3;
/// Kwong matrices with `max p / min p` above this go through the cosh form under `Auto`.
pub const AUTO_RATIO_LIMIT: f64 = 1e3;
/// ... as do those with `r` above this, and every negative `r`: the
/// reflection `K_{-r} = D^{-r} K_r D^{-r}` widens the diagonal spread while
/// the cosh form is the same for `r` and `-r`.
pub const AUTO_EXPONENT_LIMIT: f64 = 20.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    Direct,
    CoshCongruence,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RoutePolicy {
    Direct,
    CoshCongruence,
    Auto,
}

impl RoutePolicy {
    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "direct" => Ok(RoutePolicy::Direct),
            "cosh" | "cosh-congruence" => Ok(RoutePolicy::CoshCongruence),
            "auto" => Ok(RoutePolicy::Auto),
            other => Err(Error::Parse(format!("unknown route policy {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SpectrumReport {
    pub eigenvalues: Vec<f64>,
    pub zero_threshold: f64,
    pub inertia: Inertia,
    /// `min |λ|` over nonzero-classified ÷ `max |λ|` over zero-classified.
    #[serde(serialize_with = "serialize_ratio")]
    pub gap_ratio: f64,
    pub conditioning_route: Route,
}

fn serialize_ratio<S: serde::Serializer>(v: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if v.is_finite() {
        s.serialize_f64(*v)
    } else {
        s.serialize_str("inf")
    }
}

pub fn eig_sym(m: &SymMatrix, sweep_tol: f64, max_sweeps: usize) -> Result<Vec<f64>> {
    if m.mode() != ScalarMode::Float {
        return Err(Error::ModeMismatch("eig_sym expects a binary64 matrix".into()));
    }
    eig_sym_dense(&m.to_dense_f64(), sweep_tol, max_sweeps)
}

/// Eigenvalues of a symmetric matrix, ascending. Stops once the
/// off-diagonal Frobenius norm is at most `sweep_tol · ‖A‖_F`.
pub fn eig_sym_dense(m: &DenseMatrix<f64>, sweep_tol: f64, max_sweeps: usize) -> Result<Vec<f64>> {
    let n = m.rows();
    if let Some(bad) = (0..n).flat_map(|i| m.row(i).iter()).find(|x| !x.is_finite()) {
        return Err(Error::Parse(format!("non-finite matrix entry {bad}")));
    }
    let mut a: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| *m.get(i.max(j), i.min(j))).collect())
        .collect();
    let fro = m.frobenius_norm();
    let off_norm = |a: &[Vec<f64>]| {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..i {
                s += 2.0 * a[i][j] * a[i][j];
            }
        }
        s.sqrt()
    };
    let sorted_diag = |a: &[Vec<f64>]| {
        let mut d: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
        d.sort_by(|x, y| x.partial_cmp(y).expect("finite"));
        d
    };

    for _ in 0..max_sweeps {
        if off_norm(&a) <= sweep_tol * fro {
            return Ok(sorted_diag(&a));
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p][q];
                if apq == 0.0 {
                    continue;
                }
                // Negligible relative to both diagonal entries: drop it.
                if apq.abs() <= f64::EPSILON * (a[p][p] * a[q][q]).abs().sqrt() {
                    a[p][q] = 0.0;
                    a[q][p] = 0.0;
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);
                a[p][p] -= t * apq;
                a[q][q] += t * apq;
                a[p][q] = 0.0;
                a[q][p] = 0.0;
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let g = a[r][p];
                    let h = a[r][q];
                    let gp = g - s * (h + g * tau);
                    let hq = h + s * (g - h * tau);
                    a[r][p] = gp;
                    a[p][r] = gp;
                    a[r][q] = hq;
                    a[q][r] = hq;
                }
            }
        }
    }
    let off = off_norm(&a);
    if off <= sweep_tol * fro {
        return Ok(sorted_diag(&a));
    }
    Err(Error::NoConvergence {
        sweeps: max_sweeps,
        off_norm: off,
        best: sorted_diag(&a),
    })
}

/// Splits sorted eigenvalues into positive, zero and negative classes.
///
/// Without `expected_nullity` the threshold is `64 n ε · norm_scale`. With
/// it, exactly that many smallest-magnitude eigenvalues are called zero and
/// the remaining ones must be at least [`MIN_GAP_RATIO`] times larger.
pub fn classify_inertia(
    eigs: &[f64],
    norm_scale: f64,
    expected_nullity: Option<usize>,
) -> Result<SpectrumReport> {
    let n = eigs.len();
    let mut mags: Vec<f64> = eigs.iter().map(|x| x.abs()).collect();
    mags.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));

    let threshold = match expected_nullity {
        None => ZERO_THRESHOLD_FACTOR * n as f64 * f64::EPSILON * norm_scale,
        Some(z) if z > n => {
            return Err(Error::AmbiguousNullity {
                expected: z,
                gap_ratio: 0.0,
            })
        }
        Some(0) => {
            if mags.first() == Some(&0.0) {
                return Err(Error::AmbiguousNullity {
                    expected: 0,
                    gap_ratio: 0.0,
                });
            }
            0.0
        }
        Some(z) => mags[z - 1],
    };

    let inertia = Inertia::new(
        eigs.iter().filter(|&&x| x > threshold).count(),
        eigs.iter().filter(|&&x| x.abs() <= threshold).count(),
        eigs.iter().filter(|&&x| x < -threshold).count(),
    );
    let largest_zero = mags.iter().take(inertia.zeta).copied().fold(0.0, f64::max);
    let smallest_nonzero = mags.get(inertia.zeta).copied();
    let gap_ratio = match smallest_nonzero {
        _ if inertia.zeta == 0 => f64::INFINITY,
        None => f64::INFINITY,
        Some(_) if largest_zero == 0.0 => f64::INFINITY,
        Some(s) => s / largest_zero,
    };

    if let Some(z) = expected_nullity {
        if inertia.zeta != z || gap_ratio < MIN_GAP_RATIO {
            return Err(Error::AmbiguousNullity {
                expected: z,
                gap_ratio,
            });
        }
    }
    Ok(SpectrumReport {
        eigenvalues: eigs.to_vec(),
        zero_threshold: threshold,
        inertia,
        gap_ratio,
        conditioning_route: Route::Direct,
    })
}

/// Eigenvalues and classified inertia of any symmetric matrix; exact
/// matrices are rounded first.
pub fn spectrum(m: &SymMatrix, expected_nullity: Option<usize>) -> Result<SpectrumReport> {
    let eigs = eig_sym_dense(&m.to_dense_f64(), DEFAULT_SWEEP_TOL, DEFAULT_MAX_SWEEPS)?;
    let scale = eigs.iter().fold(0.0f64, |s, x| s.max(x.abs()));
    classify_inertia(&eigs, scale, expected_nullity)
}

/// Route a Kwong matrix would take under `policy`.
pub fn choose_route(spec: &FamilySpec, policy: RoutePolicy) -> Route {
    match (spec.family, policy) {
        (Family::Kwong, RoutePolicy::CoshCongruence) => Route::CoshCongruence,
        (Family::Kwong, RoutePolicy::Auto)
            if spec.points.max_min_ratio() > AUTO_RATIO_LIMIT
                || spec.r.value() > AUTO_EXPONENT_LIMIT
                || spec.r.value() < 0.0 =>
        {
            Route::CoshCongruence
        }
        _ => Route::Direct,
    }
}

/// Binary64 inertia of the matrix described by `spec`. The cosh route
/// computes the spectrum of a congruent matrix, so only the inertia (not
/// the eigenvalues) refers to the original.
pub fn inertia_float(
    spec: &FamilySpec,
    policy: RoutePolicy,
    expected_nullity: Option<usize>,
) -> Result<SpectrumReport> {
    let route = choose_route(spec, policy);
    let m = match route {
        Route::Direct => build(spec, ScalarMode::Float)?,
        Route::CoshCongruence => gen_cosh_kwong_from_points(&spec.points, spec.r)?,
    };
    let mut report = spectrum(&m, expected_nullity)?;
    report.conditioning_route = route;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::{Exponent, Points};
    use crate::generators::gen_kwong;

    fn eigs(rows: Vec<Vec<f64>>) -> Vec<f64> {
        eig_sym_dense(&DenseMatrix::from_rows(rows).unwrap(), DEFAULT_SWEEP_TOL, DEFAULT_MAX_SWEEPS).unwrap()
    }

    #[test]
    fn small_spectra() {
        assert_eq!(eigs(vec![vec![3.0, 0.0], vec![0.0, -1.0]]), vec![-1.0, 3.0]);
        let h = eigs(vec![vec![0.0, 1.0], vec![1.0, 0.0]]);
        assert!((h[0] + 1.0).abs() < 1e-15 && (h[1] - 1.0).abs() < 1e-15);
        let ones = eigs(vec![vec![1.0; 5]; 5]);
        assert!(ones[..4].iter().all(|x| x.abs() < 1e-15));
        assert!((ones[4] - 5.0).abs() < 1e-14);
    }

    #[test]
    fn trace_is_preserved() {
        let k = gen_kwong(&Points::range(7), Exponent::real(4.3), ScalarMode::Float).unwrap();
        let d = k.to_dense_f64();
        let e = eig_sym(&k, DEFAULT_SWEEP_TOL, DEFAULT_MAX_SWEEPS).unwrap();
        let trace: f64 = (0..7).map(|i| d.get(i, i)).sum();
        let tol = 7.0 * 2f64.powi(-40) * d.frobenius_norm();
        assert!((e.iter().sum::<f64>() - trace).abs() <= tol);
        assert!(e.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn exhausted_sweeps_report_best_iterate() {
        let k = gen_kwong(&Points::range(6), Exponent::real(2.5), ScalarMode::Float).unwrap();
        match eig_sym(&k, 1e-300, 1) {
            Err(Error::NoConvergence { sweeps: 1, best, .. }) => assert_eq!(best.len(), 6),
            other => panic!("expected NoConvergence, got {other:?}"),
        }
    }

    #[test]
    fn classify_examples() {
        let r = classify_inertia(&[-1.0, 1e-18, 2.0], 2.0, None).unwrap();
        assert_eq!(r.inertia, Inertia::new(1, 1, 1));
        assert!(r.gap_ratio >= 1.0);
        let r = classify_inertia(&[-1.0, 1.0], 1.0, Some(0)).unwrap();
        assert_eq!(r.inertia, Inertia::new(1, 0, 1));
        assert!(r.gap_ratio.is_infinite());
    }

    #[test]
    fn classify_with_inconsistent_nullity_is_loud() {
        assert!(matches!(
            classify_inertia(&[-1.0, 0.5, 2.0], 2.0, Some(1)),
            Err(Error::AmbiguousNullity { expected: 1, .. })
        ));
        assert!(classify_inertia(&[0.0, 1.0], 1.0, Some(0)).is_err());
        assert!(classify_inertia(&[1.0], 1.0, Some(2)).is_err());
    }

    #[test]
    fn k3_with_supplied_nullity() {
        let spec = FamilySpec::kwong(Points::from_integers(&[1, 2, 5, 10]).unwrap(), Exponent::int(3));
        let r = inertia_float(&spec, RoutePolicy::Direct, Some(1)).unwrap();
        assert_eq!(r.inertia, Inertia::new(1, 1, 2));
        assert!(r.gap_ratio >= MIN_GAP_RATIO);
    }

    #[test]
    fn kwong_float_examples() {
        for (r, expect) in [(2.0, Inertia::new(1, 0, 5)), (4.0, Inertia::new(4, 0, 2)), (0.5, Inertia::new(6, 0, 0))] {
            let spec = FamilySpec::kwong(Points::range(6), Exponent::real(r));
            for policy in [RoutePolicy::Direct, RoutePolicy::CoshCongruence, RoutePolicy::Auto] {
                assert_eq!(inertia_float(&spec, policy, None).unwrap().inertia, expect, "r={r}");
            }
        }
    }

    #[test]
    fn auto_routes_wide_or_steep_specs_through_cosh() {
        let wide = FamilySpec::kwong(Points::from_integers(&[1, 10, 5000]).unwrap(), Exponent::real(2.5));
        assert_eq!(choose_route(&wide, RoutePolicy::Auto), Route::CoshCongruence);
        let steep = FamilySpec::kwong(Points::range(3), Exponent::real(25.0));
        assert_eq!(choose_route(&steep, RoutePolicy::Auto), Route::CoshCongruence);
        let tame = FamilySpec::kwong(Points::range(3), Exponent::real(2.5));
        assert_eq!(choose_route(&tame, RoutePolicy::Auto), Route::Direct);
        let reflected = FamilySpec::kwong(Points::range(3), Exponent::real(-2.5));
        assert_eq!(choose_route(&reflected, RoutePolicy::Auto), Route::CoshCongruence);
        let r = inertia_float(&steep, RoutePolicy::Auto, None).unwrap();
        assert_eq!(r.conditioning_route, Route::CoshCongruence);
        assert_eq!(r.inertia, Inertia::new(1, 0, 2));
    }

    #[test]
    fn loewner_half_power_is_positive_definite() {
        let spec = FamilySpec::new(Family::Loewner, Points::range(3), None, Exponent::real(0.5)).unwrap();
        assert_eq!(inertia_float(&spec, RoutePolicy::Auto, None).unwrap().inertia, Inertia::new(3, 0, 0));
    }
}
