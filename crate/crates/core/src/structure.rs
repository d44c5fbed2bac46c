//! Congruences, factorizations and subspace compressions of Kwong matrices,
//! each checked in exact arithmetic.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::domain::{Exponent, Inertia, Points};
use crate::error::{Error, Result};
use crate::exact_engine::inertia_exact_dense;
use crate::float_engine::spectrum;
use crate::generators::{gen_vandermonde_pair, kwong_dense, VandermondePair};
use crate::matrix::{DenseMatrix, SymMatrix, SymData};
use crate::scalar::{Rational, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub struct FactorizationCheck {
    pub holds: bool,
    /// Largest entrywise `|K_r - WᵀVW|`.
    pub residual: Rational,
    pub pair: VandermondePair<Rational>,
}

/// Checks `K_r = Wᵀ V W` exactly for odd `1 <= r <= n`.
pub fn verify_vandermonde_factorization(points: &Points, r: i64) -> Result<FactorizationCheck> {
    let pair = gen_vandermonde_pair::<Rational>(points, r)?;
    let k = kwong_dense::<Rational>(points, &Exponent::int(r))?;
    let product = pair.w.congruence(&pair.v)?;
    let residual = k.max_abs_diff(&product)?;
    Ok(FactorizationCheck {
        holds: residual.is_zero(),
        residual,
        pair,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SylvesterCheck {
    pub holds: bool,
    /// `In(Xᵀ A X)`.
    pub compressed: Inertia,
    /// `In(A) + (0, n - r, 0)`.
    pub predicted: Inertia,
}

/// `In(Xᵀ A X) = In(A) + (0, n - r, 0)` for symmetric `r × r` `A` and
/// rank-`r` `X` of shape `r × n`.
pub fn generalized_sylvester_check(a: &DenseMatrix<Rational>, x: &DenseMatrix<Rational>) -> Result<SylvesterCheck> {
    if !a.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let r = a.rows();
    if x.rows() != r {
        return Err(Error::LengthMismatch {
            left: r,
            right: x.rows(),
        });
    }
    let n = x.cols();
    let rank = x.rank();
    if rank < r {
        return Err(Error::RankDeficient { rank, expected: r });
    }
    let compressed = inertia_exact_dense(&x.congruence(a)?).0;
    let predicted = inertia_exact_dense(a).0.plus(Inertia::new(0, n - r, 0));
    Ok(SylvesterCheck {
        holds: compressed == predicted,
        compressed,
        predicted,
    })
}

/// Entrywise check of `K_r = D^{r-1} E - D K_{r-2} D + E D^{r-1}` for integer `r >= 2`.
pub fn verify_three_term_identity(points: &Points, r: i64) -> Result<bool> {
    if r < 2 {
        return Err(Error::BadExponent(format!("three-term identity needs r >= 2, got {r}")));
    }
    let p = points.to_scalars::<Rational>()?;
    let k = kwong_dense::<Rational>(points, &Exponent::int(r))?;
    let k2 = kwong_dense::<Rational>(points, &Exponent::int(r - 2))?;
    let n = p.len();
    Ok((0..n).all(|i| {
        (0..n).all(|j| {
            let rhs = p[i].pow_int(r - 1) - &p[i] * k2.get(i, j) * &p[j] + p[j].pow_int(r - 1);
            &rhs == k.get(i, j)
        })
    }))
}

/// Entrywise check of `K_{-r} = D^{-r} K_r D^{-r}`.
pub fn verify_negative_exponent_congruence(points: &Points, r: i64) -> Result<bool> {
    let p = points.to_scalars::<Rational>()?;
    let k = kwong_dense::<Rational>(points, &Exponent::int(r))?;
    let k_neg = kwong_dense::<Rational>(points, &Exponent::int(-r))?;
    let d: Vec<Rational> = p.iter().map(|x| x.pow_int(-r)).collect();
    let n = p.len();
    Ok((0..n).all(|i| (0..n).all(|j| k_neg.get(i, j) == &(&d[i] * k.get(i, j) * &d[j]))))
}

/// Basis of `H_j = {x : Σ p_i^t x_i = 0, t = 0..j-1}` as integer columns
/// with gcd 1 and positive leading entry.
#[derive(Debug, Clone, PartialEq)]
pub struct SubspaceBasis {
    pub j: usize,
    /// `n × (n - j)`.
    pub columns: DenseMatrix<Rational>,
}

impl SubspaceBasis {
    pub fn dim(&self) -> usize {
        self.columns.cols()
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        (0..self.columns.rows()).map(|i| self.columns.get(i, c).clone()).collect()
    }
}

fn normalize_integer(v: Vec<Rational>) -> Vec<Rational> {
    let lcm = v.iter().fold(num_bigint::BigInt::one(), |l, q| l.lcm(q.denom()));
    let ints: Vec<num_bigint::BigInt> = v.iter().map(|q| (q * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let gcd = ints.iter().fold(num_bigint::BigInt::zero(), |g, x| g.gcd(x));
    let lead_negative = ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    ints.into_iter()
        .map(|x| {
            let y = if gcd.is_zero() { x } else { x / &gcd };
            Rational::from_integer(if lead_negative { -y } else { y })
        })
        .collect()
}

pub fn basis_hj(points: &Points, j: usize) -> Result<SubspaceBasis> {
    let n = points.len();
    if j >= n {
        return Err(Error::DepthOutOfRange { j, n });
    }
    let p = points.to_exact_rationals();
    // Reduced row echelon form of the j × n moment matrix.
    let mut rows: Vec<Vec<Rational>> = (0..j)
        .map(|t| p.iter().map(|x| x.pow_int(t as i64)).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        if row == j {
            break;
        }
        let Some(sel) = (row..j).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(row, sel);
        let inv = rows[row][col].recip();
        for x in rows[row].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..j {
            if i != row && !rows[i][col].is_zero() {
                let f = rows[i][col].clone();
                for c in 0..n {
                    let t = &f * &rows[row][c];
                    rows[i][c] = &rows[i][c] - t;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let vectors: Vec<Vec<Rational>> = free
        .iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); n];
            v[f] = Rational::one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -rows[i][f].clone();
            }
            normalize_integer(v)
        })
        .collect();
    Ok(SubspaceBasis {
        j,
        columns: DenseMatrix::from_fn(n, vectors.len(), |i, c| vectors[c][i].clone()),
    })
}

/// Inertia of the compression `Pᵀ M P` of `M` onto `H_j`; exact when `M` is.
pub fn conditional_inertia(m: &SymMatrix, points: &Points, j: usize) -> Result<Inertia> {
    if m.order() != points.len() {
        return Err(Error::LengthMismatch {
            left: m.order(),
            right: points.len(),
        });
    }
    let basis = basis_hj(points, j)?;
    match m.data() {
        SymData::Exact(_) => {
            let compressed = basis.columns.congruence(&m.to_dense_exact()?)?;
            Ok(inertia_exact_dense(&compressed).0)
        }
        SymData::Float(_) => {
            let n = basis.columns.rows();
            // Scale each column to unit max-norm before rounding; a diagonal congruence.
            let scales: Vec<Rational> = (0..basis.dim())
                .map(|c| {
                    (0..n)
                        .map(|i| basis.columns.get(i, c).abs())
                        .max()
                        .expect("nonempty column")
                })
                .collect();
            let cols = DenseMatrix::from_fn(n, basis.dim(), |i, c| {
                (basis.columns.get(i, c) / &scales[c]).to_f64()
            });
            let compressed = cols.congruence(&m.to_dense_f64())?;
            Ok(spectrum(&SymMatrix::from_dense(&symmetrize(&compressed))?, None)?.inertia)
        }
    }
}

fn symmetrize(a: &DenseMatrix<f64>) -> DenseMatrix<f64> {
    DenseMatrix::from_fn(a.rows(), a.cols(), |i, j| 0.5 * (a.get(i, j) + a.get(j, i)))
}

pub fn quadratic_form<T: Scalar>(m: &DenseMatrix<T>, x: &[T]) -> T {
    let mut acc = T::zero();
    for i in 0..x.len() {
        for j in 0..x.len() {
            acc = acc + x[i].clone() * m.get(i, j).clone() * x[j].clone();
        }
    }
    acc
}

/// For `x ∈ H_1`: `⟨x, K_r x⟩ = -⟨Dx, K_{r-2} Dx⟩`, exactly.
pub fn verify_recursion_quadratic_form(points: &Points, r: i64, x: &[Rational]) -> Result<bool> {
    let p = points.to_scalars::<Rational>()?;
    if x.len() != p.len() {
        return Err(Error::LengthMismatch {
            left: p.len(),
            right: x.len(),
        });
    }
    if !x.iter().fold(Rational::zero(), |s, v| s + v).is_zero() {
        return Err(Error::PreconditionViolated("vector is not in H_1".into()));
    }
    let k = kwong_dense::<Rational>(points, &Exponent::int(r))?;
    let k2 = kwong_dense::<Rational>(points, &Exponent::int(r - 2))?;
    let dx: Vec<Rational> = x.iter().zip(&p).map(|(a, b)| a * b).collect();
    Ok(quadratic_form(&k, x) == -quadratic_form(&k2, &dx))
}
