//! Entanglement and correlation measures of the joint atom-field state.
//!
//! Entropies are in nats.

use num_complex::Complex64;

use crate::dynamics::{
    assemble_joint_density, chi_vectors, reduced_atom, reduced_field, JointDensity, SystemParams,
};
use crate::error::{Error, Result};
use crate::field::FieldVector;
use crate::linalg::{eigenvalues_hermitian, HermitianMatrix};

/// Eigenvalues below this are exact zeros for the entropy sum.
pub const ENTROPY_EIGENVALUE_FLOOR: f64 = 1e-15;

/// Eigenvalues (or negativity) of smaller magnitude are numerical dust.
pub const SPECTRAL_DUST: f64 = 1e-10;

/// Allowed trace deviation of a state passed to [`von_neumann_entropy`].
pub const ENTROPY_TRACE_TOLERANCE: f64 = 1e-6;

/// Allowed entrywise deviation between supplied marginals and the partial
/// traces of the joint state in [`mutual_entropy`].
pub const MARGINAL_TOLERANCE: f64 = 1e-8;

/// One time sample of the measures.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasureRecord {
    pub t: f64,
    pub negativity: f64,
    pub mutual_entropy: f64,
    pub s_atom: f64,
    pub s_field: f64,
    pub s_joint: f64,
    /// `min(s_atom, s_field)`, saturated by classically maximally correlated states.
    pub classical_bound: f64,
    /// Photon-number probability of the initial field lying above the cutoff.
    pub truncation_mass_lost: f64,
    /// Eigenvalues of the joint state above [`SPECTRAL_DUST`].
    pub joint_rank: usize,
    /// Eigenvalues of the partial transpose with magnitude above [`SPECTRAL_DUST`].
    pub partial_transpose_support: usize,
}

/// `rho^{T_1}`: transpose on the atomic indices, which swaps `C` and `C^+`.
pub fn partial_transpose_atom(rho: &JointDensity) -> HermitianMatrix {
    rho.partial_transpose_matrix()
}

/// Sum of the magnitudes of the negative entries of `spectrum`.
pub fn negativity_from_spectrum(spectrum: &[f64]) -> f64 {
    -spectrum.iter().filter(|&&mu| mu < 0.0).sum::<f64>()
}

/// Negativity `(||rho^{T_1}||_1 - 1) / 2`, evaluated as minus the sum of the
/// negative eigenvalues of the partial transpose. No separability threshold
/// is applied.
pub fn negativity(rho: &JointDensity) -> Result<f64> {
    let spectrum = eigenvalues_hermitian(&partial_transpose_atom(rho))?;
    Ok(negativity_from_spectrum(&spectrum))
}

/// `-sum lambda ln lambda` over the spectrum, with `0 ln 0 = 0`.
pub fn entropy_from_spectrum(spectrum: &[f64]) -> f64 {
    spectrum
        .iter()
        .filter(|&&l| l >= ENTROPY_EIGENVALUE_FLOOR)
        .map(|&l| -l * l.ln())
        .sum()
}

/// Von Neumann entropy `-Tr m ln m` of a density matrix.
pub fn von_neumann_entropy(m: &HermitianMatrix) -> Result<f64> {
    let spectrum = eigenvalues_hermitian(m)?;
    let trace: f64 = spectrum.iter().sum();
    if (trace - 1.0).abs() > ENTROPY_TRACE_TOLERANCE {
        return Err(Error::InvalidInput(format!(
            "density matrix has trace {trace}, expected 1"
        )));
    }
    Ok(entropy_from_spectrum(&spectrum))
}

/// Entropies of a joint state and its two marginals.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EntropyTriple {
    pub s_atom: f64,
    pub s_field: f64,
    pub s_joint: f64,
}

impl EntropyTriple {
    /// `S(A) + S(F) - S(AF)`, with roundoff below zero clamped.
    pub fn mutual_entropy(&self) -> f64 {
        (self.s_atom + self.s_field - self.s_joint).max(0.0)
    }

    pub fn classical_bound(&self) -> f64 {
        self.s_atom.min(self.s_field)
    }
}

fn check_marginals(
    rho: &JointDensity,
    rho_a: &HermitianMatrix,
    rho_f: &HermitianMatrix,
) -> Result<()> {
    if rho_a.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: rho_a.dim(),
        });
    }
    if rho_f.dim() != rho.field_dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.field_dim(),
            found: rho_f.dim(),
        });
    }
    let atom_gap = rho_a
        .matrix()
        .max_abs_diff(rho.partial_trace_field().matrix());
    let field_gap = rho_f
        .matrix()
        .max_abs_diff(rho.partial_trace_atom().matrix());
    if atom_gap > MARGINAL_TOLERANCE || field_gap > MARGINAL_TOLERANCE {
        return Err(Error::InvalidInput(format!(
            "marginals inconsistent with joint state (atom {atom_gap:e}, field {field_gap:e})"
        )));
    }
    Ok(())
}

/// Quantum mutual entropy `S(rho_a) + S(rho_f) - S(rho)`. The marginals must
/// be the partial traces of `rho`.
pub fn mutual_entropy(
    rho: &JointDensity,
    rho_a: &HermitianMatrix,
    rho_f: &HermitianMatrix,
) -> Result<f64> {
    check_marginals(rho, rho_a, rho_f)?;
    let triple = EntropyTriple {
        s_atom: von_neumann_entropy(rho_a)?,
        s_field: von_neumann_entropy(rho_f)?,
        s_joint: von_neumann_entropy(&rho.to_matrix())?,
    };
    Ok(triple.mutual_entropy())
}

/// All measures of a joint state, given its marginals.
pub fn measure_state(
    t: f64,
    rho: &JointDensity,
    rho_a: &HermitianMatrix,
    rho_f: &HermitianMatrix,
    truncation_mass_lost: f64,
) -> Result<MeasureRecord> {
    let joint_spectrum = eigenvalues_hermitian(&rho.to_matrix())?;
    let pt_spectrum = eigenvalues_hermitian(&partial_transpose_atom(rho))?;
    let joint_trace: f64 = joint_spectrum.iter().sum();
    if (joint_trace - 1.0).abs() > ENTROPY_TRACE_TOLERANCE {
        return Err(Error::InvalidInput(format!(
            "joint state has trace {joint_trace}, expected 1"
        )));
    }
    let triple = EntropyTriple {
        s_atom: von_neumann_entropy(rho_a)?,
        s_field: von_neumann_entropy(rho_f)?,
        s_joint: entropy_from_spectrum(&joint_spectrum),
    };
    Ok(MeasureRecord {
        t,
        negativity: negativity_from_spectrum(&pt_spectrum),
        mutual_entropy: triple.mutual_entropy(),
        s_atom: triple.s_atom,
        s_field: triple.s_field,
        s_joint: triple.s_joint,
        classical_bound: triple.classical_bound(),
        truncation_mass_lost,
        joint_rank: joint_spectrum
            .iter()
            .filter(|&&l| l > SPECTRAL_DUST)
            .count(),
        partial_transpose_support: pt_spectrum
            .iter()
            .filter(|&&l| l.abs() > SPECTRAL_DUST)
            .count(),
    })
}

/// Evolves the closed-form state to `t` and evaluates every measure.
///
/// `truncation_mass_lost` is taken as `1 - |field0|^2`; callers that know
/// the analytic tail (coherent states) can overwrite it.
pub fn measure_sweep_point(
    params: &SystemParams,
    field0: &FieldVector,
    t: f64,
) -> Result<MeasureRecord> {
    let chi = chi_vectors(params, field0, t)?;
    let rho = assemble_joint_density(params, &chi)?;
    let rho_a = reduced_atom(params, &chi)?;
    let rho_f = reduced_field(&chi, params)?;
    let record = measure_state(t, &rho, &rho_a, &rho_f, (1.0 - field0.norm_sqr()).max(0.0))?;

    debug_assert!(
        (record.mutual_entropy - (record.s_atom + record.s_field - record.s_joint)).abs() < 1e-9
    );
    debug_assert!(record.mutual_entropy <= 2.0 * record.classical_bound + 1e-8);
    debug_assert!(record.joint_rank <= 2);
    debug_assert!(record.partial_transpose_support <= 8);
    Ok(record)
}

/// `|psi><psi|` for a bipartite pure state given in the product basis.
pub fn pure_state_density(psi: &[Complex64]) -> Result<JointDensity> {
    JointDensity::from_matrix(&crate::linalg::CMatrix::outer(psi, psi))
}
