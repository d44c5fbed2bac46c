use kwong::corpus::{random_rational_points, random_weights, rng};
use kwong::exact_engine::{charpoly_dense, inertia_exact, inertia_exact_dense, inertia_from_charpoly};
use kwong::float_engine::{eig_sym_dense, inertia_float, RoutePolicy, DEFAULT_MAX_SWEEPS, DEFAULT_SWEEP_TOL};
use kwong::generators::{gen_cosh_kwong_from_points, gen_kwong, gen_vandermonde_pair};
use kwong::oracle::{flip_points, kwong_expected_nullity, predict_kwong_inertia, predict_singular};
use kwong::scalar::Scalar;
use kwong::signs::{companion_sign_changes, descartes_zero_bound};
use kwong::structure::{basis_hj, conditional_inertia, verify_negative_exponent_congruence, verify_recursion_quadratic_form};
use kwong::sweep::{detect_transitions, sweep_inertia, transition_locations};
use kwong::{inertia_sum_check, DenseMatrix, Exponent, FamilySpec, Inertia, Points, Rational, ScalarMode, SymMatrix};
use nalgebra::DMatrix;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn q(v: i64) -> Rational {
    Rational::from_i64(v)
}

/// Distinct positive rationals `a / d` sharing a denominator.
fn exact_points(n: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Points> {
    (prop::collection::btree_set(1i64..200, n), 1i64..6).prop_map(|(nums, d)| {
        Points::from_exact(nums.into_iter().map(|a| Rational::new(a.into(), d.into())).collect()).unwrap()
    })
}

/// Small integer symmetric matrices, often with a vanishing diagonal.
fn sym_matrix(max_n: usize) -> impl Strategy<Value = DenseMatrix<Rational>> {
    (1..=max_n)
        .prop_flat_map(|n| (Just(n), prop::collection::vec(-3i64..=3, n * n), any::<bool>()))
        .prop_map(|(n, v, hollow)| {
            DenseMatrix::from_fn(n, n, |i, j| {
                if hollow && i == j {
                    q(0)
                } else {
                    q(v[i.min(j) * n + i.max(j)])
                }
            })
        })
}

/// `P L` with `L` unit lower triangular and `P` a cyclic shift: always invertible.
fn invertible(n: usize) -> impl Strategy<Value = DenseMatrix<Rational>> {
    (prop::collection::vec(-4i64..=4, n * n), 0..n.max(1)).prop_map(move |(v, shift)| {
        DenseMatrix::from_fn(n, n, |i, j| {
            let row = (i + shift) % n;
            match row.cmp(&j) {
                std::cmp::Ordering::Equal => q(1),
                std::cmp::Ordering::Greater => q(v[row * n + j]),
                std::cmp::Ordering::Less => q(0),
            }
        })
    })
}

fn permute(m: &DenseMatrix<Rational>, perm: &[usize]) -> DenseMatrix<Rational> {
    DenseMatrix::from_fn(m.rows(), m.cols(), |i, j| m.get(perm[i], perm[j]).clone())
}

fn separated_points(seed: u64, n: usize) -> Points {
    random_rational_points(n, &mut rng(seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn pivots_agree_with_charpoly(m in sym_matrix(6)) {
        let (inertia, log) = inertia_exact_dense(&m);
        prop_assert!(inertia_sum_check(&inertia, m.rows()));
        prop_assert_eq!(inertia, inertia_from_charpoly(&charpoly_dense(&m)));
        prop_assert_eq!(log.covered(), m.rows());
        prop_assert_eq!(log.determinant(), m.determinant().unwrap());
    }

    #[test]
    fn congruence_preserves_inertia(
        (m, x) in sym_matrix(5).prop_flat_map(|m| { let n = m.rows(); (Just(m), invertible(n)) })
    ) {
        prop_assert_eq!(inertia_exact_dense(&x.congruence(&m).unwrap()).0, inertia_exact_dense(&m).0);
    }

    #[test]
    fn permutation_preserves_inertia(
        (m, perm) in sym_matrix(6).prop_flat_map(|m| {
            let n = m.rows();
            (Just(m), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
        })
    ) {
        prop_assert_eq!(inertia_exact_dense(&permute(&m, &perm)).0, inertia_exact_dense(&m).0);
    }

    #[test]
    fn kwong_is_entrywise_positive(p in exact_points(1..=6), r in -10.0f64..10.0) {
        let m = gen_kwong(&p, Exponent::real(r), ScalarMode::Float).unwrap();
        for i in 0..p.len() {
            for j in 0..p.len() {
                prop_assert!(m.get_f64(i, j) > 0.0);
            }
        }
    }

    #[test]
    fn negative_exponent_is_a_diagonal_congruence(p in exact_points(1..=5), r in 1i64..=7) {
        prop_assert!(verify_negative_exponent_congruence(&p, r).unwrap());
        let k = inertia_exact(&gen_kwong(&p, Exponent::int(r), ScalarMode::Exact).unwrap()).unwrap().0;
        let k_neg = inertia_exact(&gen_kwong(&p, Exponent::int(-r), ScalarMode::Exact).unwrap()).unwrap().0;
        prop_assert_eq!(k, k_neg);
    }

    #[test]
    fn uniform_scaling_multiplies_by_a_power(p in exact_points(1..=5), r in -6i64..=8, a in 1i64..20, b in 1i64..7) {
        let c = Rational::new(a.into(), b.into());
        let base = gen_kwong(&p, Exponent::int(r), ScalarMode::Exact).unwrap().to_dense_exact().unwrap();
        let scaled = gen_kwong(&p.scaled(&c).unwrap(), Exponent::int(r), ScalarMode::Exact).unwrap().to_dense_exact().unwrap();
        let factor = c.pow_int(r - 1);
        prop_assert_eq!(&scaled, &base.map(|x| x * &factor));
        prop_assert_eq!(inertia_exact_dense(&scaled).0, inertia_exact_dense(&base).0);
    }

    #[test]
    fn order_two_determinant_sign(a in 1i64..100, b in 1i64..100, r in 0.01f64..10.0) {
        prop_assume!(a != b && (r - 1.0).abs() > 1e-3);
        let p = Points::from_integers(&[a, b]).unwrap();
        let det = gen_kwong(&p, Exponent::real(r), ScalarMode::Float).unwrap().to_dense_f64().determinant().unwrap();
        prop_assert_eq!(det > 0.0, r < 1.0, "det {}", det);
        let one = gen_kwong(&p, Exponent::int(1), ScalarMode::Exact).unwrap().to_dense_exact().unwrap();
        prop_assert!(one.determinant().unwrap().is_zero());
    }

    #[test]
    fn cosh_form_is_diagonally_congruent(seed in any::<u64>(), n in 1usize..=7, r in 0.05f64..9.0) {
        let p = separated_points(seed, n);
        let exp = Exponent::real(r);
        let k = gen_kwong(&p, exp, ScalarMode::Float).unwrap();
        let c = gen_cosh_kwong_from_points(&p, exp).unwrap();
        let d: Vec<f64> = p.to_f64_vec().iter().map(|x| x.powf((r - 1.0) / 2.0)).collect();
        for i in 0..n {
            for j in 0..n {
                let want = k.get_f64(i, j);
                let got = d[i] * c.get_f64(i, j) * d[j];
                prop_assert!((got - want).abs() <= 1e-12 * want.abs(), "({}, {}): {} vs {}", i, j, got, want);
            }
        }
    }

    #[test]
    fn routes_agree(seed in any::<u64>(), n in 1usize..=7, r in -9.0f64..9.0) {
        let p = separated_points(seed, n);
        let spec = FamilySpec::kwong(p, Exponent::real(r));
        let nullity = kwong_expected_nullity(n, r);
        let direct = inertia_float(&spec, RoutePolicy::Direct, nullity);
        let cosh = inertia_float(&spec, RoutePolicy::CoshCongruence, nullity).unwrap();
        prop_assert!(inertia_sum_check(&cosh.inertia, n));
        prop_assert_eq!(cosh.inertia, predict_kwong_inertia(n, r).inertia);
        // The direct route on K_{-r} can lose eigenvalues to the threshold; only
        // positive exponents are held to route independence.
        if r > 0.0 {
            prop_assert_eq!(direct.unwrap().inertia, cosh.inertia);
        }
    }

    #[test]
    fn float_engine_agrees_with_exact(seed in any::<u64>(), n in 1usize..=7, r in 1i64..=9) {
        let p = separated_points(seed, n);
        let exact = inertia_exact(&gen_kwong(&p, Exponent::int(r), ScalarMode::Exact).unwrap()).unwrap().0;
        let spec = FamilySpec::kwong(p, Exponent::int(r));
        let float = inertia_float(&spec, RoutePolicy::Auto, kwong_expected_nullity(n, r as f64)).unwrap().inertia;
        prop_assert_eq!(float, exact);
    }

    #[test]
    fn jacobi_matches_nalgebra(n in 1usize..=8, v in prop::collection::vec(-1e3f64..1e3, 64)) {
        let m = DenseMatrix::from_fn(n, n, |i, j| v[i.min(j) * 8 + i.max(j)]);
        let ours = eig_sym_dense(&m, DEFAULT_SWEEP_TOL, DEFAULT_MAX_SWEEPS).unwrap();
        let mut theirs: Vec<f64> = DMatrix::from_fn(n, n, |i, j| *m.get(i, j)).symmetric_eigenvalues().iter().copied().collect();
        theirs.sort_by(f64::total_cmp);
        let norm = m.frobenius_norm().max(1.0);
        for (a, b) in ours.iter().zip(&theirs) {
            prop_assert!((a - b).abs() <= 1e-12 * norm, "{:?} vs {:?}", ours, theirs);
        }
    }

    #[test]
    fn principal_submatrices_interlace(seed in any::<u64>(), n in 2usize..=7, r in -9.0f64..9.0, drop in 0usize..7) {
        let p = separated_points(seed, n);
        let m = gen_kwong(&p, Exponent::real(r), ScalarMode::Float).unwrap().to_dense_f64();
        let keep: Vec<usize> = (0..n).filter(|&i| i != drop % n).collect();
        let full = eig_sym_dense(&m, DEFAULT_SWEEP_TOL, DEFAULT_MAX_SWEEPS).unwrap();
        let sub = eig_sym_dense(&m.submatrix(&keep, &keep).unwrap(), DEFAULT_SWEEP_TOL, DEFAULT_MAX_SWEEPS).unwrap();
        let slack = 8.0 * n as f64 * f64::EPSILON * full.iter().fold(0.0f64, |a, x| a.max(x.abs()));
        for (k, mu) in sub.iter().enumerate() {
            prop_assert!(full[k] - slack <= *mu && *mu <= full[k + 1] + slack, "{:?} vs {:?}", full, sub);
        }
    }

    #[test]
    fn prediction_is_total_and_reflected(n in 1usize..=12, r in -12.0f64..12.0) {
        let p = predict_kwong_inertia(n, r);
        prop_assert!(inertia_sum_check(&p.inertia, n));
        prop_assert_eq!(p.inertia.zeta > 0, predict_singular(n, r));
        prop_assert_eq!(predict_kwong_inertia(n, -r).inertia, p.inertia);
    }

    #[test]
    fn odd_exponent_inertia_comes_from_v(p in exact_points(1..=8), k in 0i64..4) {
        let n = p.len() as i64;
        let r = 2 * k + 1;
        prop_assume!(r <= n);
        let v = gen_vandermonde_pair::<Rational>(&p, r).unwrap().v;
        let half = (r as usize - 1) / 2;
        let in_v = if r % 4 == 1 { Inertia::new(half + 1, 0, half) } else { Inertia::new(half, 0, half + 1) };
        prop_assert_eq!(inertia_exact_dense(&v).0, in_v);
        let k_r = inertia_exact(&gen_kwong(&p, Exponent::int(r), ScalarMode::Exact).unwrap()).unwrap().0;
        prop_assert_eq!(k_r, in_v.plus(Inertia::new(0, (n - r) as usize, 0)));
    }

    #[test]
    fn compressions_interlace(p in exact_points(2..=6), r in -4i64..=8) {
        let m = gen_kwong(&p, Exponent::int(r), ScalarMode::Exact).unwrap();
        for j in 0..p.len() - 1 {
            let a = conditional_inertia(&m, &p, j).unwrap();
            let b = conditional_inertia(&m, &p, j + 1).unwrap();
            prop_assert!(b.pi <= a.pi && b.nu <= a.nu, "j={}: {} then {}", j, a, b);
            prop_assert!(a.pi <= b.pi + 1 && a.nu <= b.nu + 1, "j={}: {} then {}", j, a, b);
        }
    }

    #[test]
    fn recursion_holds_on_random_vectors_of_h1(
        (p, coeffs) in exact_points(2..=6).prop_flat_map(|p| { let n = p.len(); (Just(p), prop::collection::vec(-9i64..=9, n - 1)) }),
        r in 2i64..=9,
    ) {
        let basis = basis_hj(&p, 1).unwrap();
        let x: Vec<Rational> = (0..p.len())
            .map(|i| (0..basis.dim()).fold(q(0), |acc, c| acc + basis.columns.get(i, c) * q(coeffs[c])))
            .collect();
        prop_assert!(verify_recursion_quadratic_form(&p, r, &x).unwrap());
    }

    #[test]
    fn descartes_counts_are_bounded(seed in any::<u64>(), half in 1usize..=3, extra in 0i64..4) {
        let n = 2 * half + 1;
        let mut g = rng(seed);
        let p = random_rational_points(n, &mut g);
        let c = random_weights(n, &mut g);
        let r = Exponent::int(n as i64 + extra);
        let s = descartes_zero_bound(&p, &c, &r).unwrap();
        let s0 = companion_sign_changes(&p, &c, &r).unwrap();
        prop_assert!(s <= n - 1 && s0 >= n && s + s0 <= 2 * n - 1, "s={} s0={}", s, s0);
    }
}

#[test]
fn sweeps_find_every_flip_and_move_continuously() {
    for n in 2..=8 {
        let p = Points::range(n);
        let steps = ((n as f64 + 1.0 - 0.2) / 0.1).round() as usize;
        let sweep = sweep_inertia(&p, 0.2, n as f64 + 1.0, steps, RoutePolicy::Auto).unwrap();
        let locations = transition_locations(&detect_transitions(&sweep, 1e-6).unwrap(), 1e-3);
        let flips = flip_points(n);
        assert_eq!(locations.len(), flips.len(), "n={n}: {locations:?}");
        for (got, want) in locations.iter().zip(&flips) {
            assert!((got - want).abs() < 1e-3, "n={n}: {got} vs {want}");
        }
        for rec in &sweep.records {
            assert_eq!(rec.inertia, predict_kwong_inertia(n, rec.r).inertia, "n={n} r={}", rec.r);
        }
        for pair in sweep.records.windows(2) {
            let h = pair[1].r - pair[0].r;
            let norm = pair
                .iter()
                .flat_map(|rec| rec.eigenvalues.iter())
                .fold(0.0f64, |a, x| a.max(x.abs()));
            let jump = pair[0]
                .eigenvalues
                .iter()
                .zip(&pair[1].eigenvalues)
                .fold(0.0f64, |a, (x, y)| a.max((x - y).abs()));
            assert!(jump < 10.0 * h * norm, "n={n} r={}: jump {jump}", pair[0].r);
        }
    }
}

#[test]
fn exact_matrix_text_round_trips() {
    let m = gen_kwong(&Points::parse("1/2,3,7/3").unwrap(), Exponent::int(-3), ScalarMode::Exact).unwrap();
    let rows: Vec<Vec<Rational>> = m
        .to_csv()
        .lines()
        .map(|l| l.split(',').map(|t| kwong::scalar::parse_rational(t).unwrap()).collect())
        .collect();
    let back = SymMatrix::from_dense(&DenseMatrix::from_rows(rows).unwrap()).unwrap();
    assert_eq!(back.to_dense_exact().unwrap(), m.to_dense_exact().unwrap());
    assert!(m.to_dense_exact().unwrap().row(0).iter().all(|x| x.is_positive()));
}
