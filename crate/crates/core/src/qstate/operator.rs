use std::ops::{Add, Mul, Sub};

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{c, cre, Amp, Real};

/// Dense square complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Operator<T> {
    dim: usize,
    entries: Vec<Amp<T>>,
}

impl<T: Real> Operator<T> {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, entries: vec![Complex::new(T::zero(), T::zero()); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = cre(T::one());
        }
        m
    }

    /// Builds from row-major entries; the length must be a perfect square.
    pub fn from_entries(entries: Vec<Amp<T>>) -> Result<Self> {
        let dim = (entries.len() as f64).sqrt().round() as usize;
        if dim * dim != entries.len() {
            return Err(Error::Dimension(format!(
                "{} entries do not form a square matrix",
                entries.len()
            )));
        }
        Ok(Self { dim, entries })
    }

    pub fn from_rows(rows: &[Vec<Amp<T>>]) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::Dimension("ragged or non-square rows".into()));
        }
        Ok(Self { dim, entries: rows.concat() })
    }

    /// Real-valued matrix from `f64` rows; used for the fixed Pauli tables.
    pub(crate) fn real(rows: &[&[f64]]) -> Self {
        let dim = rows.len();
        let entries = rows.iter().flat_map(|r| r.iter().map(|&x| c(x, 0.0))).collect();
        Self { dim, entries }
    }

    pub fn diagonal(diag: &[Amp<T>]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m.entries[i * diag.len() + i] = d;
        }
        m
    }

    /// Outer product `|a⟩⟨b|`.
    pub fn outer(a: &[Amp<T>], b: &[Amp<T>]) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::Dimension(format!("outer product of {} and {}", a.len(), b.len())));
        }
        let dim = a.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for x in a {
            for y in b {
                entries.push(x * y.conj());
            }
        }
        Ok(Self { dim, entries })
    }

    /// Rank-one projector `|a⟩⟨a|`.
    pub fn projector(a: &[Amp<T>]) -> Self {
        Self::outer(a, a).expect("equal lengths")
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Amp<T> {
        self.entries[row * self.dim + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: Amp<T>) {
        self.entries[row * self.dim + col] = value;
    }

    pub fn entries(&self) -> &[Amp<T>] {
        &self.entries
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.entries[j * n + i] = self.entries[i * n + j].conj();
            }
        }
        out
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::Dimension(format!("matmul {}x{} by {}x{}", self.dim, self.dim, other.dim, other.dim)));
        }
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a.re == T::zero() && a.im == T::zero() {
                    continue;
                }
                for j in 0..n {
                    out.entries[i * n + j] = out.entries[i * n + j] + a * other.entries[k * n + j];
                }
            }
        }
        Ok(out)
    }

    /// Kronecker product with `self` in the more significant slot.
    pub fn kron(&self, other: &Self) -> Self {
        let (n, m) = (self.dim, other.dim);
        let dim = n * m;
        let mut out = Self::zeros(dim);
        for i1 in 0..n {
            for j1 in 0..n {
                let a = self.entries[i1 * n + j1];
                for i2 in 0..m {
                    for j2 in 0..m {
                        out.entries[(i1 * m + i2) * dim + j1 * m + j2] = a * other.entries[i2 * m + j2];
                    }
                }
            }
        }
        out
    }

    pub fn scale(&self, factor: Amp<T>) -> Self {
        Self { dim: self.dim, entries: self.entries.iter().map(|&x| x * factor).collect() }
    }

    pub fn pow(&self, exponent: usize) -> Self {
        let mut out = Self::identity(self.dim);
        for _ in 0..exponent {
            out = out.matmul(self).expect("same dimension");
        }
        out
    }

    pub fn trace(&self) -> Amp<T> {
        (0..self.dim).fold(cre(T::zero()), |acc, i| acc + self.entries[i * self.dim + i])
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Amp<T>]) -> Result<Vec<Amp<T>>> {
        if v.len() != self.dim {
            return Err(Error::Dimension(format!("operator of dim {} on vector of length {}", self.dim, v.len())));
        }
        let n = self.dim;
        Ok((0..n)
            .map(|i| {
                self.entries[i * n..(i + 1) * n]
                    .iter()
                    .zip(v)
                    .fold(cre(T::zero()), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    /// Largest entrywise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(T::zero(), T::max)
    }

    pub fn hermiticity_defect(&self) -> T {
        self.max_abs_diff(&self.adjoint())
    }

    pub fn is_hermitian(&self, tol: T) -> bool {
        self.hermiticity_defect() <= tol
    }

    pub fn is_unitary(&self, tol: T) -> bool {
        let prod = self.adjoint().matmul(self).expect("square");
        prod.max_abs_diff(&Self::identity(self.dim)) <= tol
    }

    pub fn is_idempotent(&self, tol: T) -> bool {
        let sq = self.matmul(self).expect("square");
        sq.max_abs_diff(self) <= tol
    }

    /// Frobenius norm.
    pub fn norm(&self) -> T {
        self.entries.iter().map(|a| a.norm_sqr()).fold(T::zero(), |a, b| a + b).sqrt()
    }
}

impl<T: Real> Add for &Operator<T> {
    type Output = Operator<T>;
    fn add(self, rhs: Self) -> Operator<T> {
        assert_eq!(self.dim, rhs.dim, "operator dimensions differ");
        Operator { dim: self.dim, entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect() }
    }
}

impl<T: Real> Sub for &Operator<T> {
    type Output = Operator<T>;
    fn sub(self, rhs: Self) -> Operator<T> {
        assert_eq!(self.dim, rhs.dim, "operator dimensions differ");
        Operator { dim: self.dim, entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect() }
    }
}

impl<T: Real> Mul for &Operator<T> {
    type Output = Operator<T>;
    fn mul(self, rhs: Self) -> Operator<T> {
        self.matmul(rhs).expect("operator dimensions differ")
    }
}

/// Single-qubit Pauli matrices in the `(↑, ↓)` basis.
pub mod pauli {
    use super::Operator;
    use crate::scalar::{c, Real};

    pub fn id<T: Real>() -> Operator<T> {
        Operator::identity(2)
    }

    pub fn x<T: Real>() -> Operator<T> {
        Operator::real(&[&[0.0, 1.0], &[1.0, 0.0]])
    }

    pub fn y<T: Real>() -> Operator<T> {
        Operator::from_rows(&[vec![c(0.0, 0.0), c(0.0, -1.0)], vec![c(0.0, 1.0), c(0.0, 0.0)]]).expect("2x2")
    }

    pub fn z<T: Real>() -> Operator<T> {
        Operator::real(&[&[1.0, 0.0], &[0.0, -1.0]])
    }

    pub fn hadamard<T: Real>() -> Operator<T> {
        let h = T::FRAC_1_SQRT_2().as_f64();
        Operator::real(&[&[h, h], &[h, -h]])
    }

    /// Phase gate `diag(1, i)`.
    pub fn s_gate<T: Real>() -> Operator<T> {
        Operator::from_rows(&[vec![c(1.0, 0.0), c(0.0, 0.0)], vec![c(0.0, 0.0), c(0.0, 1.0)]]).expect("2x2")
    }
}
