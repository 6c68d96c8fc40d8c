use std::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Relative tolerance on `|m_ij - conj(m_ji)|` accepted by [`HermitianMatrix::new`].
pub const HERMITICITY_TOLERANCE: f64 = 1e-12;

/// Dense square complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(dim: usize) -> Self {
        CMatrix {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        CMatrix { dim, data }
    }

    /// Builds a matrix from row-major entries; `data.len()` must be a perfect square.
    pub fn from_row_major(data: Vec<Complex64>) -> Result<Self> {
        let dim = (data.len() as f64).sqrt().round() as usize;
        if dim * dim != data.len() {
            return Err(Error::InvalidInput(format!(
                "{} entries do not form a square matrix",
                data.len()
            )));
        }
        Ok(CMatrix { dim, data })
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(d, 0.0);
        }
        m
    }

    /// `|u><v|`
    pub fn outer(u: &[Complex64], v: &[Complex64]) -> Self {
        assert_eq!(u.len(), v.len(), "outer product of unequal lengths");
        let mut m = Self::zeros(u.len());
        m.add_outer(1.0, u, v);
        m
    }

    /// `self += weight * |u><v|`
    pub fn add_outer(&mut self, weight: f64, u: &[Complex64], v: &[Complex64]) {
        assert!(u.len() == self.dim && v.len() == self.dim);
        if weight == 0.0 {
            return;
        }
        for (i, ui) in u.iter().enumerate() {
            let wu = ui * weight;
            let row = &mut self.data[i * self.dim..(i + 1) * self.dim];
            for (entry, vj) in row.iter_mut().zip(v) {
                *entry += wu * vj.conj();
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn matmul(&self, rhs: &CMatrix) -> Self {
        assert_eq!(self.dim, rhs.dim, "matmul dimension mismatch");
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let out_row = &mut out.data[i * n..(i + 1) * n];
                for (o, b) in out_row.iter_mut().zip(rhs.row(k)) {
                    *o += a * b;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.dim, v.len(), "matrix-vector dimension mismatch");
        (0..self.dim)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        CMatrix {
            dim: self.dim,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    /// Largest entrywise modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest `|m_ij - conj(m_ji)|`.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            for j in i..self.dim {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// Copies `block` into the square region starting at `(row, col)`.
    pub fn set_block(&mut self, row: usize, col: usize, block: &CMatrix) {
        assert!(row + block.dim <= self.dim && col + block.dim <= self.dim);
        for i in 0..block.dim {
            let dst = (row + i) * self.dim + col;
            self.data[dst..dst + block.dim].copy_from_slice(block.row(i));
        }
    }

    /// Extracts the `size x size` block starting at `(row, col)`.
    pub fn block(&self, row: usize, col: usize, size: usize) -> CMatrix {
        assert!(row + size <= self.dim && col + size <= self.dim);
        CMatrix::from_fn(size, |i, j| self[(row + i, col + j)])
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

/// A complex matrix checked to be Hermitian and then exactly symmetrized.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianMatrix(CMatrix);

impl HermitianMatrix {
    /// Accepts `m` when its Hermiticity defect is within [`HERMITICITY_TOLERANCE`]
    /// of its largest entry, and stores `(m + m^dagger) / 2`.
    pub fn new(m: CMatrix) -> Result<Self> {
        let defect = m.hermiticity_defect();
        let scale = m.max_abs();
        if !defect.is_finite() || !scale.is_finite() {
            return Err(Error::InvalidInput("matrix has non-finite entries".into()));
        }
        if defect > HERMITICITY_TOLERANCE * scale {
            return Err(Error::InvalidInput(format!(
                "matrix is not Hermitian: defect {defect:e} exceeds {:e}",
                HERMITICITY_TOLERANCE * scale
            )));
        }
        Ok(Self::symmetrized(m))
    }

    /// Skips the tolerance check; used where Hermiticity holds by construction.
    pub(crate) fn symmetrized(mut m: CMatrix) -> Self {
        let n = m.dim();
        for i in 0..n {
            m[(i, i)] = Complex64::new(m[(i, i)].re, 0.0);
            for j in i + 1..n {
                let avg = (m[(i, j)] + m[(j, i)].conj()) * 0.5;
                m[(i, j)] = avg;
                m[(j, i)] = avg.conj();
            }
        }
        HermitianMatrix(m)
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        HermitianMatrix(CMatrix::from_real_diagonal(diag))
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> CMatrix {
        self.0
    }

    pub fn trace(&self) -> f64 {
        self.0.trace().re
    }
}

impl Index<(usize, usize)> for HermitianMatrix {
    type Output = Complex64;

    fn index(&self, idx: (usize, usize)) -> &Complex64 {
        &self.0[idx]
    }
}

impl AsRef<CMatrix> for HermitianMatrix {
    fn as_ref(&self) -> &CMatrix {
        &self.0
    }
}
