//! Dense and column-oriented operators over tensor products of N-level systems.
//!
//! Basis states are indexed with qudit 0 as the most significant digit.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type DenseOperator = DMatrix<C64>;

/// Largest dimension realized as a full dense matrix.
pub const MAX_DENSE_DIM: usize = 4096;
/// Largest dimension handled column by column.
pub const MAX_SPACE_DIM: usize = 1 << 24;

pub fn space_dim(levels: u32, qudits: usize) -> Result<usize> {
    let dim = (levels as u128).checked_pow(qudits as u32).unwrap_or(u128::MAX);
    if dim > MAX_SPACE_DIM as u128 {
        return Err(Error::Capacity {
            dim,
            limit: MAX_SPACE_DIM,
        });
    }
    Ok(dim as usize)
}

pub fn dense_dim(levels: u32, qudits: usize) -> Result<usize> {
    let dim = (levels as u128).checked_pow(qudits as u32).unwrap_or(u128::MAX);
    if dim > MAX_DENSE_DIM as u128 {
        return Err(Error::Capacity {
            dim,
            limit: MAX_DENSE_DIM,
        });
    }
    Ok(dim as usize)
}

pub fn digits(mut index: usize, levels: u32, qudits: usize) -> Vec<u32> {
    let mut out = vec![0u32; qudits];
    for slot in out.iter_mut().rev() {
        *slot = (index % levels as usize) as u32;
        index /= levels as usize;
    }
    out
}

pub fn index_of(digits: &[u32], levels: u32) -> usize {
    digits.iter().fold(0usize, |acc, &d| acc * levels as usize + d as usize)
}

pub fn identity(dim: usize) -> DenseOperator {
    DMatrix::identity(dim, dim)
}

pub fn kron(a: &DenseOperator, b: &DenseOperator) -> DenseOperator {
    a.kronecker(b)
}

pub fn kron_all(ops: &[DenseOperator]) -> DenseOperator {
    ops.iter().fold(identity(1), |acc, op| acc.kronecker(op))
}

/// Tensor product with each listed local operator on its qudit and identity elsewhere.
pub fn embed(local: &[(usize, &DenseOperator)], levels: u32, qudits: usize) -> Result<DenseOperator> {
    dense_dim(levels, qudits)?;
    let id = identity(levels as usize);
    let factors: Vec<DenseOperator> = (0..qudits)
        .map(|q| {
            local
                .iter()
                .filter(|(i, _)| *i == q)
                .fold(id.clone(), |acc, (_, m)| *m * acc)
        })
        .collect();
    Ok(kron_all(&factors))
}

pub fn basis_state(levels: u32, digits: &[u32]) -> DVector<C64> {
    let dim = (levels as usize).pow(digits.len() as u32);
    let mut v = DVector::zeros(dim);
    v[index_of(digits, levels)] = C64::new(1.0, 0.0);
    v
}

pub fn diag(entries: &[C64]) -> DenseOperator {
    DMatrix::from_diagonal(&DVector::from_column_slice(entries))
}

pub fn max_abs(m: &DenseOperator) -> f64 {
    m.iter().fold(0.0, |acc, v| acc.max(v.norm()))
}

pub fn max_abs_diff(a: &DenseOperator, b: &DenseOperator) -> f64 {
    assert_eq!(a.shape(), b.shape(), "shape mismatch");
    a.iter().zip(b.iter()).fold(0.0, |acc, (x, y)| acc.max((x - y).norm()))
}

pub fn commutator(a: &DenseOperator, b: &DenseOperator) -> DenseOperator {
    a * b - b * a
}

pub fn anticommutator(a: &DenseOperator, b: &DenseOperator) -> DenseOperator {
    a * b + b * a
}

pub fn unitarity_deviation(u: &DenseOperator) -> f64 {
    let id = identity(u.nrows());
    max_abs_diff(&(u.adjoint() * u), &id)
}

pub fn hermiticity_deviation(h: &DenseOperator) -> f64 {
    max_abs_diff(h, &h.adjoint())
}

/// Column access to a square operator.
pub trait Operator {
    fn dim(&self) -> usize;

    /// Nonzero entries `(row, value)` of column `col`, rows ascending.
    fn column(&self, col: usize) -> Vec<(usize, C64)>;

    fn to_dense(&self) -> Result<DenseOperator> {
        let dim = self.dim();
        if dim > MAX_DENSE_DIM {
            return Err(Error::Capacity {
                dim: dim as u128,
                limit: MAX_DENSE_DIM,
            });
        }
        let mut m = DMatrix::zeros(dim, dim);
        for c in 0..dim {
            for (r, v) in self.column(c) {
                m[(r, c)] += v;
            }
        }
        Ok(m)
    }

    fn to_sparse(&self) -> SparseOperator {
        SparseOperator {
            dim: self.dim(),
            cols: (0..self.dim()).map(|c| self.column(c)).collect(),
        }
    }
}

impl Operator for DenseOperator {
    fn dim(&self) -> usize {
        self.nrows()
    }

    fn column(&self, col: usize) -> Vec<(usize, C64)> {
        self.column(col)
            .iter()
            .enumerate()
            .filter(|(_, v)| v.norm() != 0.0)
            .map(|(r, v)| (r, *v))
            .collect()
    }

    fn to_dense(&self) -> Result<DenseOperator> {
        Ok(self.clone())
    }
}

/// Sorts by row and sums duplicates, dropping exact zeros.
pub fn merge_entries(mut entries: Vec<(usize, C64)>) -> Vec<(usize, C64)> {
    entries.sort_by_key(|e| e.0);
    let mut out: Vec<(usize, C64)> = Vec::with_capacity(entries.len());
    for (r, v) in entries {
        match out.last_mut() {
            Some(last) if last.0 == r => last.1 += v,
            _ => out.push((r, v)),
        }
    }
    out.retain(|e| e.1.norm() != 0.0);
    out
}

/// Column-compressed operator.
#[derive(Clone, Debug)]
pub struct SparseOperator {
    pub dim: usize,
    pub cols: Vec<Vec<(usize, C64)>>,
}

impl SparseOperator {
    pub fn adjoint(&self) -> SparseOperator {
        let mut cols = vec![Vec::new(); self.dim];
        for (c, col) in self.cols.iter().enumerate() {
            for &(r, v) in col {
                cols[r].push((c, v.conj()));
            }
        }
        SparseOperator { dim: self.dim, cols }
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    /// `self · other`.
    pub fn mul(&self, other: &SparseOperator) -> SparseOperator {
        let cols = other
            .cols
            .iter()
            .map(|col| {
                let mut acc = Vec::new();
                for &(k, b) in col {
                    acc.extend(self.cols[k].iter().map(|&(r, a)| (r, a * b)));
                }
                merge_entries(acc)
            })
            .collect();
        SparseOperator { dim: self.dim, cols }
    }
}

impl Operator for SparseOperator {
    fn dim(&self) -> usize {
        self.dim
    }

    fn column(&self, col: usize) -> Vec<(usize, C64)> {
        self.cols[col].clone()
    }
}

/// Diagonal operator stored by its diagonal.
#[derive(Clone, Debug, PartialEq)]
pub struct DiagonalOperator {
    pub entries: Vec<C64>,
}

impl DiagonalOperator {
    pub fn from_real(values: Vec<f64>) -> Self {
        DiagonalOperator {
            entries: values.into_iter().map(|v| C64::new(v, 0.0)).collect(),
        }
    }

    pub fn mul(&self, other: &DiagonalOperator) -> DiagonalOperator {
        DiagonalOperator {
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a * b).collect(),
        }
    }

    /// Number of entries within `tol` of 1.
    pub fn count_ones(&self, tol: f64) -> usize {
        self.entries.iter().filter(|v| (*v - 1.0).norm() < tol).count()
    }
}

impl Operator for DiagonalOperator {
    fn dim(&self) -> usize {
        self.entries.len()
    }

    fn column(&self, col: usize) -> Vec<(usize, C64)> {
        let v = self.entries[col];
        if v.norm() == 0.0 {
            Vec::new()
        } else {
            vec![(col, v)]
        }
    }
}

/// Largest entrywise difference between two operators of equal dimension,
/// computed one column at a time.
pub fn max_operator_diff(a: &dyn Operator, b: &dyn Operator) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::Dimension(format!("{} vs {}", a.dim(), b.dim())));
    }
    let mut worst = 0.0f64;
    for c in 0..a.dim() {
        let mut entries = a.column(c);
        entries.extend(b.column(c).into_iter().map(|(r, v)| (r, -v)));
        for (_, v) in merge_entries(entries) {
            worst = worst.max(v.norm());
        }
    }
    Ok(worst)
}

/// `max |A - A†|` for an operator given by columns.
pub fn operator_hermiticity_deviation(a: &dyn Operator) -> f64 {
    let mut entries: BTreeMap<(usize, usize), C64> = BTreeMap::new();
    for c in 0..a.dim() {
        for (r, v) in a.column(c) {
            *entries.entry((r, c)).or_default() += v;
            *entries.entry((c, r)).or_default() -= v.conj();
        }
    }
    entries.values().fold(0.0, |acc, v| acc.max(v.norm()))
}

/// `max |AB - BA|` computed by columns.
pub fn commutator_norm(a: &dyn Operator, b: &dyn Operator) -> f64 {
    let apply = |op: &dyn Operator, col: &[(usize, C64)]| {
        let mut acc = Vec::new();
        for &(k, x) in col {
            acc.extend(op.column(k).into_iter().map(|(r, y)| (r, x * y)));
        }
        acc
    };
    let mut worst = 0.0f64;
    for c in 0..a.dim() {
        let ab = apply(a, &b.column(c));
        let ba = apply(b, &a.column(c));
        let mut diff = ab;
        diff.extend(ba.into_iter().map(|(r, v)| (r, -v)));
        for (_, v) in merge_entries(diff) {
            worst = worst.max(v.norm());
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digit_round_trip() {
        for i in 0..81 {
            assert_eq!(index_of(&digits(i, 3, 4), 3), i);
        }
        assert_eq!(digits(5, 3, 2), vec![1, 2]);
    }

    #[test]
    fn embed_places_factor_on_requested_qudit() {
        let mut z = DMatrix::zeros(2, 2);
        z[(0, 0)] = C64::new(1.0, 0.0);
        z[(1, 1)] = C64::new(-1.0, 0.0);
        let e = embed(&[(1, &z)], 2, 2).unwrap();
        let expected = kron(&identity(2), &z);
        assert!(max_abs_diff(&e, &expected) == 0.0);
    }

    #[test]
    fn capacity_is_reported() {
        assert!(matches!(dense_dim(3, 12), Err(Error::Capacity { .. })));
        assert_eq!(dense_dim(3, 7).unwrap(), 2187);
    }

    #[test]
    fn operator_diff_sees_missing_entries() {
        let a = DiagonalOperator::from_real(vec![1.0, 2.0]);
        let b = DiagonalOperator::from_real(vec![1.0, 0.0]);
        assert_eq!(max_operator_diff(&a, &b).unwrap(), 2.0);
    }

    #[test]
    fn sparse_adjoint_and_product() {
        let m = DMatrix::from_row_slice(
            2,
            2,
            &[
                C64::new(0.0, 0.0),
                C64::new(1.0, 1.0),
                C64::new(2.0, 0.0),
                C64::new(0.0, 0.0),
            ],
        );
        let s = m.to_sparse();
        assert_eq!(s.adjoint().to_dense().unwrap(), m.adjoint());
        assert_eq!(s.mul(&s).to_dense().unwrap(), &m * &m);
        assert!(operator_hermiticity_deviation(&s) > 1.0);
    }
}
