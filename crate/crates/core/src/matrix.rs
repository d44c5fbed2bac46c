//! Dense matrices: a generic row-major [`DenseMatrix`] and the packed
//! symmetric [`SymMatrix`] whose scalar mode is fixed at construction.

use serde_json::{json, Value};

use crate::domain::FamilySpec;
use crate::error::{Error, Result};
use crate::scalar::{format_f64, Rational, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> DenseMatrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(Error::LengthMismatch {
                left: c,
                right: bad.len(),
            });
        }
        Ok(Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn diagonal(d: &[T]) -> Self {
        let n = d.len();
        Self::from_fn(n, n, |i, j| if i == j { d[i].clone() } else { T::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::LengthMismatch {
                left: self.cols,
                right: rhs.rows,
            });
        }
        Ok(Self::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols).fold(T::zero(), |acc, k| {
                acc + self.get(i, k).clone() * rhs.get(k, j).clone()
            })
        }))
    }

    /// `selfᵀ · a · self`, the congruence transform used throughout.
    pub fn congruence(&self, a: &Self) -> Result<Self> {
        self.transpose().matmul(&a.matmul(self)?)
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> DenseMatrix<U> {
        DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn to_f64(&self) -> DenseMatrix<f64> {
        self.map(Scalar::to_f64)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Result<Self> {
        for &i in rows {
            if i >= self.rows {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    dim: self.rows,
                });
            }
        }
        for &j in cols {
            if j >= self.cols {
                return Err(Error::IndexOutOfRange {
                    index: j,
                    dim: self.cols,
                });
            }
        }
        Ok(Self::from_fn(rows.len(), cols.len(), |a, b| {
            self.get(rows[a], cols[b]).clone()
        }))
    }

    /// Largest absolute entry difference against `other`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<T> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::LengthMismatch {
                left: self.rows * self.cols,
                right: other.rows * other.cols,
            });
        }
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a.clone() - b.clone()).abs())
            .fold(T::zero(), |m, d| if d > m { d } else { m }))
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data
            .iter()
            .map(|x| {
                let v = x.to_f64();
                v * v
            })
            .sum::<f64>()
            .sqrt()
    }

    /// Gaussian elimination with largest-magnitude pivoting. Exact for rationals.
    pub fn determinant(&self) -> Result<T> {
        if !self.is_square() {
            return Err(Error::LengthMismatch {
                left: self.rows,
                right: self.cols,
            });
        }
        let n = self.rows;
        let mut a = self.data.clone();
        let mut det = T::one();
        for k in 0..n {
            let p = (k..n)
                .filter(|&i| !a[i * n + k].is_zero())
                .max_by(|&x, &y| {
                    a[x * n + k]
                        .abs()
                        .partial_cmp(&a[y * n + k].abs())
                        .unwrap_or(std::cmp::Ordering::Equal)
                });
            let Some(p) = p else {
                return Ok(T::zero());
            };
            if p != k {
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                }
                det = -det;
            }
            let pivot = a[k * n + k].clone();
            det = det * pivot.clone();
            for i in k + 1..n {
                if a[i * n + k].is_zero() {
                    continue;
                }
                let factor = a[i * n + k].clone() / pivot.clone();
                for j in k + 1..n {
                    let t = a[k * n + j].clone() * factor.clone();
                    a[i * n + j] = a[i * n + j].clone() - t;
                }
            }
        }
        Ok(det)
    }

    /// Rank by exact elimination (meaningful for rationals only).
    pub fn rank(&self) -> usize {
        let (r, c) = (self.rows, self.cols);
        let mut a = self.data.clone();
        let mut rank = 0;
        for col in 0..c {
            let Some(p) = (rank..r).find(|&i| !a[i * c + col].is_zero()) else {
                continue;
            };
            for j in 0..c {
                a.swap(rank * c + j, p * c + j);
            }
            let pivot = a[rank * c + col].clone();
            for i in rank + 1..r {
                if a[i * c + col].is_zero() {
                    continue;
                }
                let factor = a[i * c + col].clone() / pivot.clone();
                for j in col..c {
                    let t = a[rank * c + j].clone() * factor.clone();
                    a[i * c + j] = a[i * c + j].clone() - t;
                }
            }
            rank += 1;
            if rank == r {
                break;
            }
        }
        rank
    }

    pub fn to_csv(&self) -> String {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(Scalar::to_text)
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect::<Vec<_>>()
            .join("\n")
    }

    pub fn to_json_entries(&self) -> Value {
        Value::Array(
            (0..self.rows)
                .map(|i| Value::Array(self.row(i).iter().map(scalar_json).collect()))
                .collect(),
        )
    }
}

fn scalar_json<T: Scalar>(v: &T) -> Value {
    if T::EXACT {
        Value::String(v.to_text())
    } else {
        json!(v.to_f64())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScalarMode {
    Exact,
    Float,
}

impl std::fmt::Display for ScalarMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ScalarMode::Exact => "exact",
            ScalarMode::Float => "float",
        })
    }
}

/// Packed lower triangle, row by row: `(0,0), (1,0), (1,1), (2,0), ...`.
#[derive(Debug, Clone, PartialEq)]
pub enum SymData {
    Exact(Vec<Rational>),
    Float(Vec<f64>),
}

/// Lets generic code hand its packed entries to [`SymMatrix`].
pub trait IntoSymData: Scalar {
    fn into_sym_data(v: Vec<Self>) -> SymData;
}

impl IntoSymData for Rational {
    fn into_sym_data(v: Vec<Self>) -> SymData {
        SymData::Exact(v)
    }
}

impl IntoSymData for f64 {
    fn into_sym_data(v: Vec<Self>) -> SymData {
        SymData::Float(v)
    }
}

/// Real symmetric matrix; only the lower triangle is stored.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    order: usize,
    data: SymData,
    provenance: Option<FamilySpec>,
}

fn packed(i: usize, j: usize) -> usize {
    let (i, j) = if i >= j { (i, j) } else { (j, i) };
    i * (i + 1) / 2 + j
}

impl SymMatrix {
    pub fn from_fn<T: IntoSymData>(order: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut v = Vec::with_capacity(order * (order + 1) / 2);
        for i in 0..order {
            for j in 0..=i {
                v.push(f(i, j));
            }
        }
        Self {
            order,
            data: T::into_sym_data(v),
            provenance: None,
        }
    }

    /// Fails with [`Error::NotSymmetric`] unless `m` is exactly symmetric.
    pub fn from_dense<T: IntoSymData>(m: &DenseMatrix<T>) -> Result<Self> {
        if !m.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        Ok(Self::from_fn(m.rows(), |i, j| m.get(i, j).clone()))
    }

    pub fn with_provenance(mut self, spec: FamilySpec) -> Self {
        self.provenance = Some(spec);
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mode(&self) -> ScalarMode {
        match self.data {
            SymData::Exact(_) => ScalarMode::Exact,
            SymData::Float(_) => ScalarMode::Float,
        }
    }

    pub fn provenance(&self) -> Option<&FamilySpec> {
        self.provenance.as_ref()
    }

    pub fn data(&self) -> &SymData {
        &self.data
    }

    pub fn get_exact(&self, i: usize, j: usize) -> Option<&Rational> {
        match &self.data {
            SymData::Exact(v) => Some(&v[packed(i, j)]),
            SymData::Float(_) => None,
        }
    }

    pub fn get_f64(&self, i: usize, j: usize) -> f64 {
        match &self.data {
            SymData::Exact(v) => v[packed(i, j)].to_f64(),
            SymData::Float(v) => v[packed(i, j)],
        }
    }

    pub fn entry_text(&self, i: usize, j: usize) -> String {
        match &self.data {
            SymData::Exact(v) => v[packed(i, j)].to_string(),
            SymData::Float(v) => format_f64(v[packed(i, j)]),
        }
    }

    pub fn to_dense_exact(&self) -> Result<DenseMatrix<Rational>> {
        match &self.data {
            SymData::Exact(v) => Ok(DenseMatrix::from_fn(self.order, self.order, |i, j| {
                v[packed(i, j)].clone()
            })),
            SymData::Float(_) => Err(Error::ModeMismatch(
                "exact operation requested on a binary64 matrix".into(),
            )),
        }
    }

    /// Binary64 copy; exact entries are rounded.
    pub fn to_dense_f64(&self) -> DenseMatrix<f64> {
        DenseMatrix::from_fn(self.order, self.order, |i, j| self.get_f64(i, j))
    }

    /// Rounds an exact matrix to binary64; provenance is kept.
    pub fn to_float(&self) -> SymMatrix {
        let mut m = SymMatrix::from_fn(self.order, |i, j| self.get_f64(i, j));
        m.provenance = self.provenance.clone();
        m
    }

    pub fn to_csv(&self) -> String {
        (0..self.order)
            .map(|i| {
                (0..self.order)
                    .map(|j| self.entry_text(i, j))
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect::<Vec<_>>()
            .join("\n")
    }

    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = (0..self.order)
            .map(|i| {
                Value::Array(
                    (0..self.order)
                        .map(|j| match &self.data {
                            SymData::Exact(v) => Value::String(v[packed(i, j)].to_string()),
                            SymData::Float(v) => json!(v[packed(i, j)]),
                        })
                        .collect(),
                )
            })
            .collect();
        json!({
            "order": self.order,
            "mode": self.mode(),
            "entries": entries,
            "provenance": self.provenance.as_ref().map(FamilySpec::to_json),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn exact_determinant_and_rank() {
        let m = DenseMatrix::from_rows(vec![
            vec![q(1, 1), q(3, 1), q(21, 1)],
            vec![q(3, 1), q(4, 1), q(19, 1)],
            vec![q(4, 1), q(7, 1), q(40, 1)],
        ])
        .unwrap();
        assert_eq!(m.determinant().unwrap(), q(0, 1));
        assert_eq!(m.rank(), 2);
        let w = DenseMatrix::from_rows(vec![vec![q(1, 1), q(3, 1)], vec![q(3, 1), q(4, 1)]]).unwrap();
        assert_eq!(w.determinant().unwrap(), q(-5, 1));
    }

    #[test]
    fn packed_storage_is_symmetric() {
        let m = SymMatrix::from_fn(3, |i, j| (10 * i + j) as f64);
        assert_eq!(m.get_f64(0, 2), m.get_f64(2, 0));
        assert_eq!(m.get_f64(2, 1), 21.0);
        assert_eq!(m.to_csv(), "0.0,10.0,20.0\n10.0,11.0,21.0\n20.0,21.0,22.0");
    }

    #[test]
    fn from_dense_rejects_asymmetry() {
        let a = DenseMatrix::from_rows(vec![vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
        assert_eq!(SymMatrix::from_dense(&a), Err(Error::NotSymmetric));
    }

    #[test]
    fn exact_view_of_float_matrix_is_refused() {
        let m = SymMatrix::from_fn(2, |_, _| 1.0);
        assert!(matches!(m.to_dense_exact(), Err(Error::ModeMismatch(_))));
    }
}
