//! Closed-form Jaynes-Cummings evolution in the dressed-state basis.
//!
//! With the atom initially in `w_g |g><g| + w_e |e><e|` and the field in a
//! pure state `|eta>`, the evolved state is
//! `w_g |Psi_g(t)><Psi_g(t)| + w_e |Psi_e(t)><Psi_e(t)|` where
//!
//! ```text
//! U(t)|g,eta> = |g>|chi1> + |e>|chi2>
//! U(t)|e,eta> = |g>|chi3> + |e>|chi4>
//! ```
//!
//! Basis ordering throughout is atom outer (`e` first, then `g`), photon
//! number inner. The Fock space is hard-truncated at `n_max`: the coupling
//! of `|e, n_max>` to `|g, n_max + 1>` is dropped, so `|e, n_max>` evolves as
//! a bare level. This matches [`crate::oracle::build_hamiltonian`] exactly.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::field::FieldVector;
use crate::linalg::{CMatrix, HermitianMatrix};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Physical constants of the model with `hbar = 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SystemParams {
    g: f64,
    omega_a: f64,
    omega_f: f64,
    delta: f64,
    atom_ground_weight: f64,
}

impl SystemParams {
    /// Parameters from the atomic frequency and detuning; the field frequency
    /// is `omega_a - delta`.
    pub fn new(g: f64, omega_a: f64, delta: f64, atom_ground_weight: f64) -> Result<Self> {
        let params = SystemParams {
            g,
            omega_a,
            omega_f: omega_a - delta,
            delta,
            atom_ground_weight,
        };
        params.validate()?;
        Ok(params)
    }

    /// Parameters from both frequencies; the detuning is `omega_a - omega_f`.
    pub fn with_field_frequency(
        g: f64,
        omega_a: f64,
        omega_f: f64,
        atom_ground_weight: f64,
    ) -> Result<Self> {
        let params = SystemParams {
            g,
            omega_a,
            omega_f,
            delta: omega_a - omega_f,
            atom_ground_weight,
        };
        params.validate()?;
        Ok(params)
    }

    fn validate(&self) -> Result<()> {
        if !(self.g > 0.0 && self.g.is_finite()) {
            return Err(Error::param(
                "g",
                format!("must be positive, got {}", self.g),
            ));
        }
        if !self.omega_a.is_finite() {
            return Err(Error::param("omega_a", "must be finite"));
        }
        if !self.omega_f.is_finite() || !self.delta.is_finite() {
            return Err(Error::param("delta", "must be finite"));
        }
        if !(0.0..=1.0).contains(&self.atom_ground_weight) {
            return Err(Error::param(
                "atom_ground_weight",
                format!("must lie in [0, 1], got {}", self.atom_ground_weight),
            ));
        }
        Ok(())
    }

    pub fn g(&self) -> f64 {
        self.g
    }

    pub fn omega_a(&self) -> f64 {
        self.omega_a
    }

    pub fn omega_f(&self) -> f64 {
        self.omega_f
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// Weight of `|g><g|` in the initial atomic state.
    pub fn atom_ground_weight(&self) -> f64 {
        self.atom_ground_weight
    }

    /// Weight of `|e><e|` in the initial atomic state.
    pub fn atom_excited_weight(&self) -> f64 {
        1.0 - self.atom_ground_weight
    }
}

/// `Omega_n = sqrt((delta/2)^2 + g^2 (n + 1))`.
pub fn rabi_frequency(params: &SystemParams, n: usize) -> f64 {
    (0.25 * params.delta * params.delta + params.g * params.g * (n + 1) as f64).sqrt()
}

/// Dressed-state mixing angle `theta_n` in `(0, pi/2)` with
/// `tan theta_n = 2 g sqrt(n+1) / (2 Omega_n - delta)`.
pub fn mixing_angle(params: &SystemParams, n: usize) -> f64 {
    let omega = rabi_frequency(params, n);
    let coupling = 2.0 * params.g * ((n + 1) as f64).sqrt();
    // 2 Omega - delta loses digits for large positive delta
    let denom = if params.delta > 0.0 {
        coupling * coupling / (2.0 * omega + params.delta)
    } else {
        2.0 * omega - params.delta
    };
    coupling.atan2(denom)
}

/// Dressed energies `(E_+, E_-) = omega_F (n + 1/2) +- Omega_n` of the
/// excitation sector spanned by `|e,n>` and `|g,n+1>`.
pub fn dressed_energies(params: &SystemParams, n: usize) -> (f64, f64) {
    let centre = params.omega_f * (n as f64 + 0.5);
    let omega = rabi_frequency(params, n);
    (centre + omega, centre - omega)
}

/// `sin 2 theta_n` and `cos 2 theta_n`, evaluated without forming the angle.
fn double_angle(params: &SystemParams, n: usize, omega: f64) -> (f64, f64) {
    (
        params.g * ((n + 1) as f64).sqrt() / omega,
        -params.delta / (2.0 * omega),
    )
}

/// The four unnormalized field vectors of the evolved state at time `t`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChiQuad {
    pub t: f64,
    pub chi1: FieldVector,
    pub chi2: FieldVector,
    pub chi3: FieldVector,
    pub chi4: FieldVector,
}

impl ChiQuad {
    pub fn field_dim(&self) -> usize {
        self.chi1.len()
    }
}

/// Evaluates `chi1..chi4` at time `t` from the dressed-state solution.
pub fn chi_vectors(params: &SystemParams, field0: &FieldVector, t: f64) -> Result<ChiQuad> {
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::param(
            "t",
            format!("must be finite and non-negative, got {t}"),
        ));
    }
    let b = field0.coeffs();
    let n_max = field0.n_max();
    let zero = Complex64::new(0.0, 0.0);
    let mut chi1 = vec![zero; n_max + 1];
    let mut chi2 = vec![zero; n_max + 1];
    let mut chi3 = vec![zero; n_max + 1];
    let mut chi4 = vec![zero; n_max + 1];

    // |g,0> only picks up the bare phase exp(+i omega_A t / 2)
    chi1[0] = b[0] * Complex64::from_polar(1.0, 0.5 * params.omega_a * t);

    for n in 0..n_max {
        let omega = rabi_frequency(params, n);
        let (sin2, cos2) = double_angle(params, n, omega);
        let (s, c) = (omega * t).sin_cos();
        let phase = Complex64::from_polar(1.0, -params.omega_f * (n as f64 + 0.5) * t);
        let flip = -I * phase * (sin2 * s);

        chi4[n] = b[n] * phase * Complex64::new(c, cos2 * s);
        chi3[n + 1] = b[n] * flip;
        chi2[n] = b[n + 1] * flip;
        chi1[n + 1] = b[n + 1] * phase * Complex64::new(c, -cos2 * s);
    }

    // |e, n_max> is uncoupled after truncation
    let top = n_max as f64;
    chi4[n_max] =
        b[n_max] * Complex64::from_polar(1.0, -(0.5 * params.omega_a + params.omega_f * top) * t);

    Ok(ChiQuad {
        t,
        chi1: FieldVector::new(chi1)?,
        chi2: FieldVector::new(chi2)?,
        chi3: FieldVector::new(chi3)?,
        chi4: FieldVector::new(chi4)?,
    })
}

/// Joint atom-field density matrix in block form
///
/// ```text
/// rho = | A    C |    (rows/cols: e block, then g block)
///       | C^+  B |
/// ```
#[derive(Clone, Debug, PartialEq)]
pub struct JointDensity {
    pub a: CMatrix,
    pub b: CMatrix,
    pub c: CMatrix,
}

impl JointDensity {
    pub fn field_dim(&self) -> usize {
        self.a.dim()
    }

    /// The full `2 (n_max + 1)` dimensional matrix.
    pub fn to_matrix(&self) -> HermitianMatrix {
        HermitianMatrix::symmetrized(self.full_matrix(false))
    }

    /// `[[A, C^+], [C, B]]`, the partial transpose on the atom.
    pub(crate) fn partial_transpose_matrix(&self) -> HermitianMatrix {
        HermitianMatrix::symmetrized(self.full_matrix(true))
    }

    fn full_matrix(&self, transpose_atom: bool) -> CMatrix {
        let d = self.field_dim();
        let mut m = CMatrix::zeros(2 * d);
        m.set_block(0, 0, &self.a);
        m.set_block(d, d, &self.b);
        let (upper, lower) = if transpose_atom {
            (self.c.adjoint(), self.c.clone())
        } else {
            (self.c.clone(), self.c.adjoint())
        };
        m.set_block(0, d, &upper);
        m.set_block(d, 0, &lower);
        m
    }

    /// Rebuilds the blocks from a full matrix in the same basis ordering.
    pub fn from_matrix(m: &CMatrix) -> Result<Self> {
        if !m.dim().is_multiple_of(2) || m.dim() < 4 {
            return Err(Error::InvalidInput(format!(
                "joint density needs an even dimension of at least 4, got {}",
                m.dim()
            )));
        }
        let d = m.dim() / 2;
        Ok(JointDensity {
            a: m.block(0, 0, d),
            b: m.block(d, d, d),
            c: m.block(0, d, d),
        })
    }

    pub fn trace(&self) -> f64 {
        self.a.trace().re + self.b.trace().re
    }

    /// Partial trace over the field: the 2x2 atomic state.
    pub fn partial_trace_field(&self) -> HermitianMatrix {
        let rho_ee = self.a.trace();
        let rho_gg = self.b.trace();
        let rho_eg = self.c.trace();
        HermitianMatrix::symmetrized(
            CMatrix::from_row_major(vec![rho_ee, rho_eg, rho_eg.conj(), rho_gg])
                .expect("2x2 is square"),
        )
    }

    /// Partial trace over the atom: `A + B`.
    pub fn partial_trace_atom(&self) -> HermitianMatrix {
        let d = self.field_dim();
        HermitianMatrix::symmetrized(CMatrix::from_fn(d, |i, j| self.a[(i, j)] + self.b[(i, j)]))
    }
}

fn check_dims(chi: &ChiQuad) -> Result<usize> {
    let d = chi.chi1.len();
    for v in [&chi.chi2, &chi.chi3, &chi.chi4] {
        if v.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: v.len(),
            });
        }
    }
    Ok(d)
}

/// `A = w_g |chi2><chi2| + w_e |chi4><chi4|`,
/// `B = w_g |chi1><chi1| + w_e |chi3><chi3|`,
/// `C = w_g |chi2><chi1| + w_e |chi4><chi3|`.
pub fn assemble_joint_density(params: &SystemParams, chi: &ChiQuad) -> Result<JointDensity> {
    let d = check_dims(chi)?;
    let (wg, we) = (params.atom_ground_weight(), params.atom_excited_weight());
    let (x1, x2, x3, x4) = (
        chi.chi1.coeffs(),
        chi.chi2.coeffs(),
        chi.chi3.coeffs(),
        chi.chi4.coeffs(),
    );
    let mut a = CMatrix::zeros(d);
    let mut b = CMatrix::zeros(d);
    let mut c = CMatrix::zeros(d);
    a.add_outer(wg, x2, x2);
    a.add_outer(we, x4, x4);
    b.add_outer(wg, x1, x1);
    b.add_outer(we, x3, x3);
    c.add_outer(wg, x2, x1);
    c.add_outer(we, x4, x3);
    Ok(JointDensity { a, b, c })
}

fn inner(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v).map(|(x, y)| x.conj() * y).sum()
}

/// Atomic state in the `{e, g}` basis, computed from overlaps of the
/// chi-vectors without forming the joint matrix.
pub fn reduced_atom(params: &SystemParams, chi: &ChiQuad) -> Result<HermitianMatrix> {
    check_dims(chi)?;
    let (wg, we) = (params.atom_ground_weight(), params.atom_excited_weight());
    let (x1, x2, x3, x4) = (
        chi.chi1.coeffs(),
        chi.chi2.coeffs(),
        chi.chi3.coeffs(),
        chi.chi4.coeffs(),
    );
    let rho_ee = wg * chi.chi2.norm_sqr() + we * chi.chi4.norm_sqr();
    let rho_gg = wg * chi.chi1.norm_sqr() + we * chi.chi3.norm_sqr();
    let rho_eg = inner(x1, x2) * wg + inner(x3, x4) * we;
    Ok(HermitianMatrix::symmetrized(
        CMatrix::from_row_major(vec![
            Complex64::new(rho_ee, 0.0),
            rho_eg,
            rho_eg.conj(),
            Complex64::new(rho_gg, 0.0),
        ])
        .expect("2x2 is square"),
    ))
}

/// Field state `A + B`.
pub fn reduced_field(chi: &ChiQuad, params: &SystemParams) -> Result<HermitianMatrix> {
    let d = check_dims(chi)?;
    let (wg, we) = (params.atom_ground_weight(), params.atom_excited_weight());
    let mut m = CMatrix::zeros(d);
    m.add_outer(wg, chi.chi1.coeffs(), chi.chi1.coeffs());
    m.add_outer(wg, chi.chi2.coeffs(), chi.chi2.coeffs());
    m.add_outer(we, chi.chi3.coeffs(), chi.chi3.coeffs());
    m.add_outer(we, chi.chi4.coeffs(), chi.chi4.coeffs());
    Ok(HermitianMatrix::symmetrized(m))
}
