//! Brute-force reference propagator.
//!
//! Builds the truncated Hamiltonian as a dense matrix and evolves the two
//! pure components of the initial mixture by eigendecomposition. Nothing
//! here uses the dressed-state formulas of [`crate::dynamics`].

use num_complex::Complex64;

use crate::dynamics::{JointDensity, SystemParams};
use crate::error::{Error, Result};
use crate::field::FieldVector;
use crate::linalg::{eigh, CMatrix, HermitianEigen, HermitianMatrix};

/// `H = omega_A sigma_z / 2 + omega_F a^dagger a + g (sigma_+ a + sigma_- a^dagger)`
/// on `{e, g} x {0..=n_max}`. The coupling out of the top Fock level is dropped.
pub fn build_hamiltonian(params: &SystemParams, n_max: usize) -> Result<HermitianMatrix> {
    if n_max < 1 {
        return Err(Error::param("n_max", "must be at least 1"));
    }
    let d = n_max + 1;
    let mut h = CMatrix::zeros(2 * d);
    for n in 0..d {
        let photons = params.omega_f() * n as f64;
        h[(n, n)] = Complex64::new(0.5 * params.omega_a() + photons, 0.0);
        h[(d + n, d + n)] = Complex64::new(-0.5 * params.omega_a() + photons, 0.0);
    }
    for n in 0..n_max {
        // <e,n| sigma_+ a |g,n+1> = sqrt(n+1)
        let coupling = Complex64::new(params.g() * ((n + 1) as f64).sqrt(), 0.0);
        h[(n, d + n + 1)] = coupling;
        h[(d + n + 1, n)] = coupling;
    }
    HermitianMatrix::new(h)
}

/// Excitation number `a^dagger a + sigma_z / 2` on the same basis.
pub fn excitation_operator(n_max: usize) -> HermitianMatrix {
    let d = n_max + 1;
    let diag: Vec<f64> = (0..2 * d)
        .map(|k| {
            if k < d {
                k as f64 + 0.5
            } else {
                (k - d) as f64 - 0.5
            }
        })
        .collect();
    HermitianMatrix::from_real_diagonal(&diag)
}

/// Cached eigendecomposition of the truncated Hamiltonian.
#[derive(Clone, Debug)]
pub struct BruteForcePropagator {
    params: SystemParams,
    n_max: usize,
    eigen: HermitianEigen,
}

impl BruteForcePropagator {
    pub fn new(params: &SystemParams, n_max: usize) -> Result<Self> {
        let h = build_hamiltonian(params, n_max)?;
        Ok(BruteForcePropagator {
            params: *params,
            n_max,
            eigen: eigh(&h)?,
        })
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// `exp(-i H t) psi` for a joint state vector.
    pub fn evolve(&self, psi: &[Complex64], t: f64) -> Result<Vec<Complex64>> {
        self.eigen.exp_action(t, psi)
    }

    /// `rho(t) = w_g U|g,eta><g,eta|U^+ + w_e U|e,eta><e,eta|U^+`.
    pub fn state(&self, field0: &FieldVector, t: f64) -> Result<JointDensity> {
        if field0.n_max() != self.n_max {
            return Err(Error::DimensionMismatch {
                expected: self.n_max + 1,
                found: field0.len(),
            });
        }
        if !(t >= 0.0 && t.is_finite()) {
            return Err(Error::param(
                "t",
                format!("must be finite and non-negative, got {t}"),
            ));
        }
        let d = self.n_max + 1;
        let zero = Complex64::new(0.0, 0.0);
        let mut ground = vec![zero; 2 * d];
        let mut excited = vec![zero; 2 * d];
        ground[d..].copy_from_slice(field0.coeffs());
        excited[..d].copy_from_slice(field0.coeffs());

        let mut rho = CMatrix::zeros(2 * d);
        let wg = self.params.atom_ground_weight();
        if wg > 0.0 {
            let psi = self.evolve(&ground, t)?;
            rho.add_outer(wg, &psi, &psi);
        }
        if wg < 1.0 {
            let psi = self.evolve(&excited, t)?;
            rho.add_outer(1.0 - wg, &psi, &psi);
        }
        JointDensity::from_matrix(&rho)
    }
}

/// Joint state at time `t` from dense propagation of the truncated Hamiltonian.
pub fn brute_force_state(
    params: &SystemParams,
    field0: &FieldVector,
    t: f64,
) -> Result<JointDensity> {
    BruteForcePropagator::new(params, field0.n_max())?.state(field0, t)
}
