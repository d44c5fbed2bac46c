//! Exact inertia of rational symmetric matrices.
//!
//! [`inertia_exact`] reduces the matrix to block-diagonal form by symmetric
//! Gaussian elimination, which is a congruence, so Sylvester's law reads
//! the inertia off the pivots. [`charpoly_exact`] together with
//! [`inertia_from_charpoly`] is an independent route through the
//! characteristic polynomial (Faddeev-LeVerrier) and Descartes' rule, which
//! is exact for the real-rooted polynomials of symmetric matrices.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::domain::Inertia;
use crate::error::{Error, Result};
use crate::matrix::{DenseMatrix, SymMatrix};
use crate::scalar::{serialize_rational, Rational};

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind")]
pub enum PivotEvent {
    /// A nonzero diagonal pivot; `index` is the original row.
    Diag {
        index: usize,
        #[serde(serialize_with = "serialize_rational")]
        pivot: Rational,
    },
    /// A `[[0, b], [b, 0]]` block, determinant `-b²`, contributing `(1, 0, 1)`.
    Block2x2 {
        indices: (usize, usize),
        #[serde(serialize_with = "serialize_rational")]
        det: Rational,
    },
}

/// Audit trail of the congruence reduction.
#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct PivotLog {
    pub events: Vec<PivotEvent>,
    /// Dimension of the terminal all-zero block.
    pub zero_block: usize,
}

impl PivotLog {
    /// Number of rows accounted for: diagonal pivots, twice the blocks, and the zero block.
    pub fn covered(&self) -> usize {
        self.events
            .iter()
            .map(|e| match e {
                PivotEvent::Diag { .. } => 1,
                PivotEvent::Block2x2 { .. } => 2,
            })
            .sum::<usize>()
            + self.zero_block
    }

    /// Product of pivots and block determinants; zero when a zero block remains.
    pub fn determinant(&self) -> Rational {
        if self.zero_block > 0 {
            return Rational::zero();
        }
        self.events.iter().fold(Rational::one(), |acc, e| match e {
            PivotEvent::Diag { pivot, .. } => acc * pivot,
            PivotEvent::Block2x2 { det, .. } => acc * det,
        })
    }
}

pub fn inertia_exact(m: &SymMatrix) -> Result<(Inertia, PivotLog)> {
    Ok(inertia_exact_dense(&m.to_dense_exact()?))
}

/// Congruence reduction of a symmetric rational matrix. Only the lower
/// triangle of `a` is read.
pub fn inertia_exact_dense(a: &DenseMatrix<Rational>) -> (Inertia, PivotLog) {
    let n = a.rows();
    let mut work: Vec<Vec<Rational>> = (0..n)
        .map(|i| (0..n).map(|j| a.get(i.max(j), i.min(j)).clone()).collect())
        .collect();
    let mut index: Vec<usize> = (0..n).collect();
    let mut inertia = Inertia::default();
    let mut log = PivotLog::default();

    while !work.is_empty() {
        let k = work.len();
        let diag = (0..k)
            .filter(|&i| !work[i][i].is_zero())
            .max_by(|&x, &y| work[x][x].abs().cmp(&work[y][y].abs()));
        if let Some(p) = diag {
            let pivot = work[p][p].clone();
            if pivot.is_positive() {
                inertia.pi += 1;
            } else {
                inertia.nu += 1;
            }
            let rest: Vec<usize> = (0..k).filter(|&i| i != p).collect();
            let next = rest
                .iter()
                .map(|&i| {
                    let f = &work[i][p] / &pivot;
                    rest.iter()
                        .map(|&j| &work[i][j] - &f * &work[p][j])
                        .collect()
                })
                .collect();
            log.events.push(PivotEvent::Diag {
                index: index[p],
                pivot,
            });
            index.remove(p);
            work = next;
            continue;
        }

        let off = (0..k)
            .flat_map(|i| (0..i).map(move |j| (i, j)))
            .filter(|&(i, j)| !work[i][j].is_zero())
            .max_by(|&(a, b), &(c, d)| work[a][b].abs().cmp(&work[c][d].abs()));
        let Some((p, q)) = off else {
            log.zero_block = k;
            inertia.zeta += k;
            break;
        };
        let b = work[p][q].clone();
        inertia.pi += 1;
        inertia.nu += 1;
        let rest: Vec<usize> = (0..k).filter(|&i| i != p && i != q).collect();
        let next = rest
            .iter()
            .map(|&i| {
                rest.iter()
                    .map(|&j| {
                        let t = (&work[i][p] * &work[q][j] + &work[i][q] * &work[p][j]) / &b;
                        &work[i][j] - t
                    })
                    .collect()
            })
            .collect();
        log.events.push(PivotEvent::Block2x2 {
            indices: (index[q], index[p]),
            det: -(&b * &b),
        });
        index.remove(p);
        index.remove(q);
        work = next;
    }
    (inertia, log)
}

pub fn charpoly_exact(m: &SymMatrix) -> Result<Vec<Rational>> {
    Ok(charpoly_dense(&m.to_dense_exact()?))
}

/// Coefficients of `det(λI - A)`, leading coefficient first, via the
/// Faddeev-LeVerrier recurrence.
pub fn charpoly_dense(a: &DenseMatrix<Rational>) -> Vec<Rational> {
    let n = a.rows();
    let mut coeffs = vec![Rational::one()];
    let mut m = DenseMatrix::<Rational>::zeros(n, n);
    for k in 1..=n {
        let mut next = a.matmul(&m).expect("square");
        for i in 0..n {
            let d = next.get(i, i) + &coeffs[k - 1];
            next.set(i, i, d);
        }
        let am = a.matmul(&next).expect("square");
        let trace = (0..n).fold(Rational::zero(), |t, i| t + am.get(i, i));
        coeffs.push(-trace / Rational::from_integer(k.into()));
        m = next;
    }
    coeffs
}

fn strict_sign_changes(seq: &[Rational]) -> usize {
    let signs: Vec<bool> = seq
        .iter()
        .filter(|c| !c.is_zero())
        .map(|c| c.is_positive())
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Inertia of a real-rooted characteristic polynomial (leading coefficient first).
pub fn inertia_from_charpoly(coeffs: &[Rational]) -> Inertia {
    let n = coeffs.len().saturating_sub(1);
    let zeta = coeffs.iter().rev().take_while(|c| c.is_zero()).count().min(n);
    let deflated = &coeffs[..coeffs.len() - zeta];
    let pi = strict_sign_changes(deflated);
    Inertia::new(pi, zeta, n - zeta - pi)
}

/// Determinant of the submatrix on `rows × cols` (0-based).
pub fn minor_dense(m: &DenseMatrix<Rational>, rows: &[usize], cols: &[usize]) -> Result<Rational> {
    if rows.len() != cols.len() {
        return Err(Error::LengthMismatch {
            left: rows.len(),
            right: cols.len(),
        });
    }
    m.submatrix(rows, cols)?.determinant()
}

pub fn minor_exact(m: &SymMatrix, rows: &[usize], cols: &[usize]) -> Result<Rational> {
    minor_dense(&m.to_dense_exact()?, rows, cols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::{Exponent, Points};
    use crate::generators::gen_kwong;
    use crate::matrix::ScalarMode;
    use crate::scalar::Scalar;

    fn q(v: i64) -> Rational {
        Rational::from_i64(v)
    }

    fn mat(rows: &[&[i64]]) -> DenseMatrix<Rational> {
        DenseMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect()).unwrap()
    }

    fn k3_one_two_five_ten() -> SymMatrix {
        gen_kwong(&Points::from_integers(&[1, 2, 5, 10]).unwrap(), Exponent::int(3), ScalarMode::Exact).unwrap()
    }

    #[test]
    fn kwong_three_on_one_two_five_ten() {
        let (inertia, log) = inertia_exact(&k3_one_two_five_ten()).unwrap();
        assert_eq!(inertia, Inertia::new(1, 1, 2));
        assert_eq!(log.covered(), 4);
        assert_eq!(log.zero_block, 1);
    }

    #[test]
    fn rank_one_and_hyperbolic() {
        let ones = mat(&[&[1, 1, 1], &[1, 1, 1], &[1, 1, 1]]);
        assert_eq!(inertia_exact_dense(&ones).0, Inertia::new(1, 2, 0));
        let (h, log) = inertia_exact_dense(&mat(&[&[0, 1], &[1, 0]]));
        assert_eq!(h, Inertia::new(1, 0, 1));
        assert!(matches!(log.events[0], PivotEvent::Block2x2 { .. }));
        assert_eq!(log.determinant(), q(-1));
    }

    #[test]
    fn zero_matrix_and_empty() {
        assert_eq!(inertia_exact_dense(&DenseMatrix::zeros(3, 3)).0, Inertia::new(0, 3, 0));
        assert_eq!(inertia_exact_dense(&DenseMatrix::zeros(0, 0)).0, Inertia::default());
    }

    #[test]
    fn block_pivot_after_diagonal_pivots() {
        // diag(2) ⊕ [[0,3],[3,0]] ⊕ [0], shuffled by a permutation
        let a = mat(&[&[0, 0, 3, 0], &[0, 2, 0, 0], &[3, 0, 0, 0], &[0, 0, 0, 0]]);
        let (inertia, log) = inertia_exact_dense(&a);
        assert_eq!(inertia, Inertia::new(2, 1, 1));
        assert_eq!(log.covered(), 4);
    }

    #[test]
    fn charpoly_examples() {
        let id = DenseMatrix::<Rational>::identity(2);
        assert_eq!(charpoly_dense(&id), vec![q(1), q(-2), q(1)]);
        let ones = mat(&[&[1, 1, 1], &[1, 1, 1], &[1, 1, 1]]);
        assert_eq!(charpoly_dense(&ones), vec![q(1), q(-3), q(0), q(0)]);
    }

    #[test]
    fn inertia_from_charpoly_examples() {
        assert_eq!(inertia_from_charpoly(&[q(1), q(-3), q(0), q(0)]), Inertia::new(1, 2, 0));
        assert_eq!(inertia_from_charpoly(&[q(1), q(0), q(-1)]), Inertia::new(1, 0, 1));
        assert_eq!(inertia_from_charpoly(&[q(1)]), Inertia::default());
    }

    #[test]
    fn charpoly_of_k3_by_cofactor_expansion() {
        // det(λI - K) expanded by cofactors with polynomial entries; the
        // oracle lives here so it shares nothing with Faddeev-LeVerrier.
        fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
            let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
            for (i, x) in a.iter().enumerate() {
                for (j, y) in b.iter().enumerate() {
                    out[i + j] = &out[i + j] + x * y;
                }
            }
            out
        }
        fn poly_add(a: &[Rational], b: &[Rational], sign: bool) -> Vec<Rational> {
            let n = a.len().max(b.len());
            (0..n)
                .map(|i| {
                    let x = a.get(i).cloned().unwrap_or_else(Rational::zero);
                    let y = b.get(i).cloned().unwrap_or_else(Rational::zero);
                    if sign { x + y } else { x - y }
                })
                .collect()
        }
        // entries as polynomials in λ, lowest degree first
        fn cofactor_det(m: &[Vec<Vec<Rational>>]) -> Vec<Rational> {
            let n = m.len();
            if n == 1 {
                return m[0][0].clone();
            }
            let mut acc = vec![Rational::zero()];
            for c in 0..n {
                let sub: Vec<Vec<Vec<Rational>>> = (1..n)
                    .map(|i| (0..n).filter(|&j| j != c).map(|j| m[i][j].clone()).collect())
                    .collect();
                let term = poly_mul(&m[0][c], &cofactor_det(&sub));
                acc = poly_add(&acc, &term, c % 2 == 0);
            }
            acc
        }
        let k = k3_one_two_five_ten().to_dense_exact().unwrap();
        let n = k.rows();
        let lam: Vec<Vec<Vec<Rational>>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let c = -k.get(i, j).clone();
                        if i == j { vec![c, q(1)] } else { vec![c] }
                    })
                    .collect()
            })
            .collect();
        let mut expected = cofactor_det(&lam);
        expected.reverse();
        assert_eq!(expected, vec![q(1), q(-130), q(-18644), q(-52128), q(0)]);
        let cp = charpoly_dense(&k);
        assert_eq!(cp, expected);
        assert_eq!(inertia_from_charpoly(&cp), Inertia::new(1, 1, 2));
    }

    #[test]
    fn k3_two_by_two_minors() {
        let k = k3_one_two_five_ten();
        assert_eq!(minor_exact(&k, &[0, 1], &[0, 1]).unwrap(), q(-5));
        assert_eq!(minor_exact(&k, &[0, 1], &[2, 3]).unwrap(), q(35));
        assert_eq!(minor_exact(&k, &[2], &[2]).unwrap(), k.get_exact(2, 2).unwrap().clone());
        assert!(matches!(minor_exact(&k, &[0, 4], &[0, 1]), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(minor_exact(&k, &[0], &[0, 1]), Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn pivot_log_determinant_matches_elimination() {
        let k = gen_kwong(&Points::range(5), Exponent::int(4), ScalarMode::Exact).unwrap();
        let dense = k.to_dense_exact().unwrap();
        let (_, log) = inertia_exact(&k).unwrap();
        assert_eq!(log.determinant(), dense.determinant().unwrap());
    }
}
