//! Dense Hermitian eigensolver.
//!
//! The matrix is reduced to a real symmetric tridiagonal form by complex
//! Householder reflections followed by a diagonal phase similarity, and the
//! tridiagonal problem is solved by the implicit QL method with Wilkinson-style
//! shifts. Intended for the small dimensions (a few hundred at most) that occur
//! in truncated Fock-space work.

use num_complex::Complex64;

use super::matrix::{CMatrix, HermitianMatrix};
use crate::error::{Error, Result};

const MAX_QL_ITERATIONS: usize = 60;

/// Eigenvalues in ascending order, with eigenvectors stored as columns when requested.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: Option<CMatrix>,
}

impl HermitianEigen {
    /// Computes `exp(-i H t) v` from the stored decomposition of `H`.
    pub fn exp_action(&self, t: f64, v: &[Complex64]) -> Result<Vec<Complex64>> {
        let vectors = self
            .vectors
            .as_ref()
            .ok_or_else(|| Error::InvalidInput("exponential action needs eigenvectors".into()))?;
        let n = self.values.len();
        if v.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: v.len(),
            });
        }
        // coefficients in the eigenbasis: V^dagger v
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n];
        for (i, vi) in v.iter().enumerate() {
            if *vi == Complex64::new(0.0, 0.0) {
                continue;
            }
            for (k, c) in coeffs.iter_mut().enumerate() {
                *c += vectors[(i, k)].conj() * vi;
            }
        }
        for (c, &lambda) in coeffs.iter_mut().zip(&self.values) {
            *c *= Complex64::from_polar(1.0, -lambda * t);
        }
        Ok(vectors.mul_vec(&coeffs))
    }
}

/// All eigenvalues of `m`, ascending.
pub fn eigenvalues_hermitian(m: &HermitianMatrix) -> Result<Vec<f64>> {
    Ok(decompose(m.matrix(), false)?.values)
}

/// Eigenvalues (ascending) and orthonormal eigenvectors of `m`.
pub fn eigh(m: &HermitianMatrix) -> Result<HermitianEigen> {
    decompose(m.matrix(), true)
}

/// Trace norm `Tr sqrt(M^dagger M)`, which for Hermitian input is the sum of
/// absolute eigenvalues.
pub fn trace_norm(m: &HermitianMatrix) -> Result<f64> {
    Ok(eigenvalues_hermitian(m)?.iter().map(|l| l.abs()).sum())
}

/// `exp(-i H t) v` via eigendecomposition of `h`.
pub fn matrix_exponential_action(
    h: &HermitianMatrix,
    t: f64,
    v: &[Complex64],
) -> Result<Vec<Complex64>> {
    if v.len() != h.dim() {
        return Err(Error::DimensionMismatch {
            expected: h.dim(),
            found: v.len(),
        });
    }
    eigh(h)?.exp_action(t, v)
}

fn decompose(m: &CMatrix, want_vectors: bool) -> Result<HermitianEigen> {
    let n = m.dim();
    if n == 0 {
        return Ok(HermitianEigen {
            values: Vec::new(),
            vectors: want_vectors.then(|| CMatrix::zeros(0)),
        });
    }

    let mut a = m.clone();
    let mut q = want_vectors.then(|| CMatrix::identity(n));
    householder_tridiagonalize(&mut a, q.as_mut());

    let mut diag: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    let mut sub = vec![0.0; n];
    // phases[i] makes the tridiagonal real: T_real = D^dagger T D
    let mut phases = vec![Complex64::new(1.0, 0.0); n];
    for i in 0..n.saturating_sub(1) {
        let e = a[(i + 1, i)];
        let modulus = e.norm();
        sub[i] = modulus;
        phases[i + 1] = if modulus > 0.0 {
            phases[i] * (e / modulus)
        } else {
            phases[i]
        };
    }

    let mut z = want_vectors.then(|| {
        let mut z = vec![0.0; n * n];
        for i in 0..n {
            z[i * n + i] = 1.0;
        }
        z
    });
    tridiagonal_ql(&mut diag, &mut sub, z.as_deref_mut())?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| diag[i].total_cmp(&diag[j]));
    let values = order.iter().map(|&i| diag[i]).collect();

    let vectors = match (q, z) {
        (Some(q), Some(z)) => {
            // V = Q D Z, columns reordered
            let qd = CMatrix::from_fn(n, |i, j| q[(i, j)] * phases[j]);
            Some(CMatrix::from_fn(n, |i, col| {
                let k = order[col];
                qd.row(i)
                    .iter()
                    .enumerate()
                    .map(|(j, x)| x * z[j * n + k])
                    .sum()
            }))
        }
        _ => None,
    };

    Ok(HermitianEigen { values, vectors })
}

/// Reduces `a` in place so that only the diagonal and first sub/super
/// diagonals are nonzero, accumulating `q <- q H_k` when given.
fn householder_tridiagonalize(a: &mut CMatrix, mut q: Option<&mut CMatrix>) {
    let n = a.dim();
    let zero = Complex64::new(0.0, 0.0);
    let mut v = vec![zero; n];
    let mut p = vec![zero; n];

    for k in 0..n.saturating_sub(2) {
        let start = k + 1;
        let len = n - start;
        let tail_sq: f64 = (start + 1..n).map(|i| a[(i, k)].norm_sqr()).sum();
        if tail_sq == 0.0 {
            continue;
        }
        let x0 = a[(start, k)];
        let norm_x = (x0.norm_sqr() + tail_sq).sqrt();
        let phase = if x0.norm() > 0.0 {
            x0 / x0.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        let alpha = -phase * norm_x;

        let v = &mut v[..len];
        v[0] = x0 - alpha;
        for i in 1..len {
            v[i] = a[(start + i, k)];
        }
        let v_norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for vi in v.iter_mut() {
            *vi /= v_norm;
        }

        // trailing block S <- H S H with H = I - 2 v v^dagger
        let p = &mut p[..len];
        for (i, pi) in p.iter_mut().enumerate() {
            let row = &a.row(start + i)[start..];
            *pi = row.iter().zip(v.iter()).map(|(s, vj)| s * vj).sum();
        }
        let kappa: f64 = v
            .iter()
            .zip(p.iter())
            .map(|(vi, pi)| (vi.conj() * pi).re)
            .sum();
        let w: Vec<Complex64> = p
            .iter()
            .zip(v.iter())
            .map(|(pi, vi)| pi - vi * kappa)
            .collect();
        for i in 0..len {
            for j in 0..len {
                a[(start + i, start + j)] -= (v[i] * w[j].conj() + w[i] * v[j].conj()) * 2.0;
            }
        }

        a[(start, k)] = alpha;
        a[(k, start)] = alpha.conj();
        for i in start + 1..n {
            a[(i, k)] = zero;
            a[(k, i)] = zero;
        }

        if let Some(q) = q.as_deref_mut() {
            for r in 0..n {
                let s: Complex64 = (0..len).map(|j| q[(r, start + j)] * v[j]).sum();
                for j in 0..len {
                    q[(r, start + j)] -= s * v[j].conj() * 2.0;
                }
            }
        }
    }
}

/// Implicit QL on a real symmetric tridiagonal matrix. `sub[i]` couples rows
/// `i` and `i + 1`; on return `diag` holds the (unsorted) eigenvalues and the
/// row-major `z`, if given, has been right-multiplied by the eigenvector matrix.
fn tridiagonal_ql(diag: &mut [f64], sub: &mut [f64], mut z: Option<&mut [f64]>) -> Result<()> {
    let n = diag.len();
    if n > 0 {
        sub[n - 1] = 0.0;
    }
    // Householder reduction already perturbs by ~eps * ||T||, so couplings
    // below that are dropped even between tiny diagonals.
    let scale = diag
        .iter()
        .zip(sub.iter())
        .map(|(d, e)| d.abs() + e.abs())
        .fold(0.0, f64::max);
    let negligible = f64::EPSILON * scale;
    for l in 0..n {
        let mut iterations = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = diag[m].abs() + diag[m + 1].abs();
                if sub[m].abs() <= f64::EPSILON * dd || sub[m].abs() <= negligible {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iterations += 1;
            if iterations > MAX_QL_ITERATIONS {
                return Err(Error::NoConvergence { iterations });
            }

            let mut g = (diag[l + 1] - diag[l]) / (2.0 * sub[l]);
            let mut r = g.hypot(1.0);
            g = diag[m] - diag[l] + sub[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * sub[i];
                let b = c * sub[i];
                r = f.hypot(g);
                sub[i + 1] = r;
                if r == 0.0 {
                    diag[i + 1] -= p;
                    sub[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = diag[i + 1] - p;
                r = (diag[i] - g) * s + 2.0 * c * b;
                p = s * r;
                diag[i + 1] = g + p;
                g = c * r - b;
                if let Some(z) = z.as_deref_mut() {
                    for k in 0..n {
                        let zk = &mut z[k * n..(k + 1) * n];
                        let f = zk[i + 1];
                        zk[i + 1] = s * zk[i] + c * f;
                        zk[i] = c * zk[i] - s * f;
                    }
                }
            }
            if deflated {
                continue;
            }
            diag[l] -= p;
            sub[l] = g;
            sub[m] = 0.0;
        }
    }
    Ok(())
}
