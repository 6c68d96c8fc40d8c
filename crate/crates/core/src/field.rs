//! Truncated Fock-space field states.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Normalization tolerance for user-supplied initial field states.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-12;

/// Largest mean photon number accepted for coherent states; beyond it the
/// vacuum amplitude `exp(-|alpha|^2 / 2)` underflows the forward recurrence.
pub const MAX_MEAN_PHOTON_NUMBER: f64 = 700.0;

/// Amplitudes `b_n = <n|eta>` for `n = 0..=n_max`.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldVector {
    coeffs: Vec<Complex64>,
}

impl FieldVector {
    /// Wraps raw amplitudes without a normalization check. At least two
    /// levels are required.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::param(
                "n_max",
                "field space needs at least two levels",
            ));
        }
        if coeffs
            .iter()
            .any(|b| !b.re.is_finite() || !b.im.is_finite())
        {
            return Err(Error::InvalidInput(
                "field amplitudes must be finite".into(),
            ));
        }
        Ok(FieldVector { coeffs })
    }

    /// Wraps amplitudes of an initial state, which must have unit norm within
    /// [`NORMALIZATION_TOLERANCE`].
    pub fn normalized(coeffs: Vec<Complex64>) -> Result<Self> {
        let v = Self::new(coeffs)?;
        let norm = v.norm_sqr();
        if (norm - 1.0).abs() > NORMALIZATION_TOLERANCE {
            return Err(Error::InvalidInput(format!(
                "initial field state has squared norm {norm}, expected 1"
            )));
        }
        Ok(v)
    }

    pub fn n_max(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(|b| b.norm_sqr()).sum()
    }

    /// Mean photon number `sum n |b_n|^2`.
    pub fn mean_photon_number(&self) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(n, b)| n as f64 * b.norm_sqr())
            .sum()
    }
}

impl std::ops::Index<usize> for FieldVector {
    type Output = Complex64;

    fn index(&self, n: usize) -> &Complex64 {
        &self.coeffs[n]
    }
}

/// How far to extend the Fock basis for a given coherent amplitude.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TruncationPolicy {
    /// Largest photon-number probability allowed above the cutoff.
    pub tail_tolerance: f64,
    /// Extra levels kept above the cutoff.
    pub buffer: usize,
}

impl TruncationPolicy {
    pub fn new(tail_tolerance: f64, buffer: usize) -> Result<Self> {
        let policy = TruncationPolicy {
            tail_tolerance,
            buffer,
        };
        policy.validate()?;
        Ok(policy)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tail_tolerance > 0.0 && self.tail_tolerance.is_finite()) {
            return Err(Error::param(
                "tail_tolerance",
                format!("must be positive and finite, got {}", self.tail_tolerance),
            ));
        }
        if self.buffer < 1 {
            return Err(Error::param("buffer", "must be at least 1"));
        }
        Ok(())
    }
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        TruncationPolicy {
            tail_tolerance: 1e-12,
            buffer: 5,
        }
    }
}

fn mean_photon_number(alpha: Complex64) -> Result<f64> {
    if !alpha.re.is_finite() || !alpha.im.is_finite() {
        return Err(Error::param(
            "alpha",
            format!("must be finite, got {alpha}"),
        ));
    }
    let mean = alpha.norm_sqr();
    if mean > MAX_MEAN_PHOTON_NUMBER {
        return Err(Error::param(
            "alpha",
            format!("|alpha|^2 = {mean} exceeds {MAX_MEAN_PHOTON_NUMBER}"),
        ));
    }
    Ok(mean)
}

/// Coherent-state amplitudes `b_n = exp(-|alpha|^2/2) alpha^n / sqrt(n!)` for
/// `n = 0..=n_max`, computed by the forward recurrence
/// `b_{n+1} = b_n alpha / sqrt(n + 1)`.
///
/// The truncated vector is not renormalized; its missing norm is
/// [`coherent_tail_mass`].
pub fn coherent_coefficients(alpha: Complex64, n_max: usize) -> Result<FieldVector> {
    let mean = mean_photon_number(alpha)?;
    if n_max < 1 {
        return Err(Error::param("n_max", "must be at least 1"));
    }
    let mut coeffs = Vec::with_capacity(n_max + 1);
    let mut b = Complex64::new((-0.5 * mean).exp(), 0.0);
    coeffs.push(b);
    for n in 0..n_max {
        b = b * alpha / ((n + 1) as f64).sqrt();
        coeffs.push(b);
    }
    FieldVector::new(coeffs)
}

/// Poisson probabilities `exp(-mean) mean^n / n!` from `n = 0` until the
/// remaining tail is negligible against `floor`.
fn poisson_weights(mean: f64, floor: f64) -> Vec<f64> {
    let mut weights = vec![(-mean).exp()];
    let mut p = weights[0];
    let mut n = 0usize;
    loop {
        p *= mean / (n + 1) as f64;
        n += 1;
        // past the mode the tail is bounded by p * (n + 1)
        if p == 0.0 || (n as f64 > mean + 1.0 && p * ((n + 1) as f64) < floor) {
            break;
        }
        weights.push(p);
    }
    weights
}

/// Photon-number probability carried by levels above `n_max`.
pub fn coherent_tail_mass(alpha: Complex64, n_max: usize) -> Result<f64> {
    let mean = mean_photon_number(alpha)?;
    let weights = poisson_weights(mean, 1e-30);
    Ok(weights.iter().skip(n_max + 1).rev().sum())
}

/// Smallest cutoff whose tail mass is below `policy.tail_tolerance`, plus
/// `policy.buffer` levels because the dynamics moves amplitude one photon up.
pub fn choose_truncation(alpha: Complex64, policy: &TruncationPolicy) -> Result<usize> {
    policy.validate()?;
    let mean = mean_photon_number(alpha)?;
    let weights = poisson_weights(mean, policy.tail_tolerance * 1e-6);
    // suffix sums, accumulated from the small end
    let mut tail = 0.0;
    let mut cutoff = weights.len().saturating_sub(1);
    for n in (0..weights.len()).rev() {
        // `tail` is the mass above level n
        if tail >= policy.tail_tolerance {
            break;
        }
        cutoff = n;
        tail += weights[n];
    }
    Ok(cutoff + policy.buffer)
}
