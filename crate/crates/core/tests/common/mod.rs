// Reference routines shared by the integration tests. They deliberately avoid
// the crate's eigensolver so they can serve as independent checks.
#![allow(dead_code)]

use jcm_negativity::linalg::{CMatrix, HermitianMatrix};
use num_complex::Complex64;
use rand::Rng;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn random_hermitian(rng: &mut impl Rng, dim: usize) -> HermitianMatrix {
    let mut m = CMatrix::zeros(dim);
    for i in 0..dim {
        m[(i, i)] = c(rng.gen_range(-1.0..1.0), 0.0);
        for j in i + 1..dim {
            let z = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    HermitianMatrix::new(m).unwrap()
}

/// LU factorization with partial pivoting, row-major `n x n`.
pub struct Lu {
    n: usize,
    lu: Vec<Complex64>,
    perm: Vec<usize>,
    sign: f64,
}

impl Lu {
    pub fn new(m: &CMatrix) -> Lu {
        let n = m.dim();
        let mut lu = m.as_slice().to_vec();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign = 1.0;
        for k in 0..n {
            let p = (k..n)
                .max_by(|&a, &b| lu[a * n + k].norm().total_cmp(&lu[b * n + k].norm()))
                .unwrap();
            if p != k {
                for j in 0..n {
                    lu.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
                sign = -sign;
            }
            let pivot = lu[k * n + k];
            if pivot.norm() == 0.0 {
                continue;
            }
            for i in k + 1..n {
                let f = lu[i * n + k] / pivot;
                lu[i * n + k] = f;
                for j in k + 1..n {
                    let u = lu[k * n + j];
                    lu[i * n + j] -= f * u;
                }
            }
        }
        Lu { n, lu, perm, sign }
    }

    pub fn determinant(&self) -> Complex64 {
        (0..self.n).fold(c(self.sign, 0.0), |acc, k| acc * self.lu[k * self.n + k])
    }

    pub fn solve(&self, rhs: &[Complex64]) -> Vec<Complex64> {
        let n = self.n;
        let mut x: Vec<Complex64> = self.perm.iter().map(|&p| rhs[p]).collect();
        for i in 0..n {
            for j in 0..i {
                let l = self.lu[i * n + j];
                x[i] = x[i] - l * x[j];
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                let u = self.lu[i * n + j];
                x[i] = x[i] - u * x[j];
            }
            x[i] /= self.lu[i * n + i];
        }
        x
    }

    pub fn inverse(&self) -> CMatrix {
        let n = self.n;
        let mut inv = CMatrix::zeros(n);
        let mut e = vec![c(0.0, 0.0); n];
        for j in 0..n {
            e.iter_mut().for_each(|z| *z = c(0.0, 0.0));
            e[j] = c(1.0, 0.0);
            for (i, z) in self.solve(&e).into_iter().enumerate() {
                inv[(i, j)] = z;
            }
        }
        inv
    }
}

/// `Tr |M|` for Hermitian `M` via the matrix sign function, computed by the
/// scaled Newton iteration `X <- (mu X + (mu X)^{-1}) / 2`. Then `|M| = M sign(M)`.
pub fn trace_abs_by_sign_iteration(m: &CMatrix) -> f64 {
    let n = m.dim();
    let mut x = m.clone();
    for _ in 0..100 {
        let lu = Lu::new(&x);
        let det = lu.determinant().norm();
        let mu = det.powf(-1.0 / n as f64);
        let mu = if mu.is_finite() && mu > 0.0 { mu } else { 1.0 };
        let inv = lu.inverse();
        let next = CMatrix::from_fn(n, |i, j| 0.5 * (mu * x[(i, j)] + inv[(i, j)] / mu));
        let change = next.max_abs_diff(&x);
        x = next;
        if change < 1e-14 * x.max_abs() {
            break;
        }
    }
    m.matmul(&x).trace().re
}

/// `exp(M) v` by scaling and squaring with a truncated Taylor series.
pub fn expm_taylor(m: &CMatrix) -> CMatrix {
    let n = m.dim();
    let norm = m.frobenius_norm();
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as u32
    } else {
        0
    };
    let a = m.scale(c(0.5f64.powi(squarings as i32), 0.0));
    let mut sum = CMatrix::identity(n);
    let mut term = CMatrix::identity(n);
    for k in 1..30 {
        term = term.matmul(&a).scale(c(1.0 / k as f64, 0.0));
        sum = CMatrix::from_fn(n, |i, j| sum[(i, j)] + term[(i, j)]);
    }
    for _ in 0..squarings {
        sum = sum.matmul(&sum);
    }
    sum
}
