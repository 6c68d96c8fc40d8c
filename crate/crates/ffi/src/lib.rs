//! C ABI over `jcm-negativity`.
//!
//! Objects are exposed as opaque handles created by `*_new`/`*_run*`
//! functions and released with the matching `*_free`. Every fallible call
//! returns a [`JcmStatus`]; on failure a description is available from
//! [`jcm_last_error_message`] on the same thread until the next failing call.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use num_complex::Complex64;

use jcm_negativity::dynamics::{assemble_joint_density, chi_vectors, SystemParams};
use jcm_negativity::field::TruncationPolicy;
use jcm_negativity::measures::MeasureRecord;
use jcm_negativity::sweep::{
    emit_csv, resolve_config, run_sweep, ConfigOverrides, Preset, SweepConfig, SweepSetup,
};
use jcm_negativity::Error;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JcmStatus {
    JcmOk = 0,
    JcmErrNullPointer = 1,
    JcmErrInvalidParameter = 2,
    JcmErrInvalidInput = 3,
    JcmErrConfig = 4,
    JcmErrOracleMismatch = 5,
    JcmErrIo = 6,
    JcmErrNoConvergence = 7,
    JcmErrBufferTooSmall = 8,
    JcmErrPanic = 9,
}

/// Reference parameter sets.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JcmPreset {
    JcmPresetFig1 = 1,
    JcmPresetFig2 = 2,
    JcmPresetFig3 = 3,
    JcmPresetFig4 = 4,
    JcmPresetFig5 = 5,
}

impl From<JcmPreset> for Preset {
    fn from(p: JcmPreset) -> Self {
        match p {
            JcmPreset::JcmPresetFig1 => Preset::Fig1,
            JcmPreset::JcmPresetFig2 => Preset::Fig2,
            JcmPreset::JcmPresetFig3 => Preset::Fig3,
            JcmPreset::JcmPresetFig4 => Preset::Fig4,
            JcmPreset::JcmPresetFig5 => Preset::Fig5,
        }
    }
}

/// One time sample. Entropies are in nats.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct JcmMeasureRecord {
    pub t: f64,
    pub negativity: f64,
    pub mutual_entropy: f64,
    pub s_atom: f64,
    pub s_field: f64,
    pub s_joint: f64,
    pub classical_bound: f64,
    pub truncation_mass_lost: f64,
    pub joint_rank: u32,
    pub partial_transpose_support: u32,
}

impl From<&MeasureRecord> for JcmMeasureRecord {
    fn from(r: &MeasureRecord) -> Self {
        JcmMeasureRecord {
            t: r.t,
            negativity: r.negativity,
            mutual_entropy: r.mutual_entropy,
            s_atom: r.s_atom,
            s_field: r.s_field,
            s_joint: r.s_joint,
            classical_bound: r.classical_bound,
            truncation_mass_lost: r.truncation_mass_lost,
            joint_rank: r.joint_rank as u32,
            partial_transpose_support: r.partial_transpose_support as u32,
        }
    }
}

/// Model parameters, truncated coherent field and cutoff.
pub struct JcmModel {
    setup: SweepSetup,
}

/// Records of a completed sweep, in ascending time.
pub struct JcmSweep {
    records: Vec<MeasureRecord>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> JcmStatus {
    match err {
        Error::InvalidParameter { .. } => JcmStatus::JcmErrInvalidParameter,
        Error::InvalidInput(_) | Error::DimensionMismatch { .. } => JcmStatus::JcmErrInvalidInput,
        Error::NoConvergence { .. } => JcmStatus::JcmErrNoConvergence,
        Error::Config { .. } => JcmStatus::JcmErrConfig,
        Error::OracleMismatch { .. } => JcmStatus::JcmErrOracleMismatch,
        Error::Io { .. } => JcmStatus::JcmErrIo,
    }
}

enum Failure {
    Lib(Error),
    Null(&'static str),
    BufferTooSmall { needed: usize, given: usize },
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> JcmStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => JcmStatus::JcmOk,
        Ok(Err(Failure::Lib(e))) => {
            set_last_error(e.to_string());
            status_of(&e)
        }
        Ok(Err(Failure::Null(name))) => {
            set_last_error(format!("`{name}` is a null pointer"));
            JcmStatus::JcmErrNullPointer
        }
        Ok(Err(Failure::BufferTooSmall { needed, given })) => {
            set_last_error(format!("buffer holds {given} values, {needed} needed"));
            JcmStatus::JcmErrBufferTooSmall
        }
        Err(_) => {
            set_last_error("internal panic".into());
            JcmStatus::JcmErrPanic
        }
    }
}

unsafe fn borrow<'a, T>(p: *const T, name: &'static str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or(Failure::Null(name))
}

unsafe fn out_slot<'a, T>(p: *mut T, name: &'static str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or(Failure::Null(name))
}

unsafe fn path_arg<'a>(p: *const c_char, name: &'static str) -> Result<&'a Path, Failure> {
    if p.is_null() {
        return Err(Failure::Null(name));
    }
    let s = CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Error::InvalidInput(format!("`{name}` is not valid UTF-8")))?;
    Ok(Path::new(s))
}

/// Message describing the last failure on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn jcm_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Creates a model with a coherent initial field `alpha_re + i alpha_im`.
/// The Fock cutoff is the smallest one with tail mass below
/// `tail_tolerance`, plus `buffer` levels.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for a handle.
#[no_mangle]
pub unsafe extern "C" fn jcm_model_new(
    g: f64,
    omega_a: f64,
    delta: f64,
    atom_ground_weight: f64,
    alpha_re: f64,
    alpha_im: f64,
    tail_tolerance: f64,
    buffer: usize,
    out: *mut *mut JcmModel,
) -> JcmStatus {
    guard(|| {
        let out = out_slot(out, "out")?;
        *out = ptr::null_mut();
        // report bad physics as parameter errors rather than config errors
        SystemParams::new(g, omega_a, delta, atom_ground_weight)?;
        TruncationPolicy::new(tail_tolerance, buffer)?;
        let config = SweepConfig {
            alpha: Complex64::new(alpha_re, alpha_im),
            g,
            omega_a,
            delta,
            atom_ground_weight,
            tail_tolerance,
            buffer,
            ..SweepConfig::default()
        };
        let setup = SweepSetup::new(&config)?;
        *out = Box::into_raw(Box::new(JcmModel { setup }));
        Ok(())
    })
}

/// Creates a model from one of the reference parameter sets.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for a handle.
#[no_mangle]
pub unsafe extern "C" fn jcm_model_from_preset(
    preset: JcmPreset,
    out: *mut *mut JcmModel,
) -> JcmStatus {
    guard(|| {
        let out = out_slot(out, "out")?;
        *out = ptr::null_mut();
        let setup = SweepSetup::new(&SweepConfig::from_preset(preset.into()))?;
        *out = Box::into_raw(Box::new(JcmModel { setup }));
        Ok(())
    })
}

/// Releases a model. NULL is ignored.
///
/// # Safety
/// `model` must be NULL or a handle from this library not freed before.
#[no_mangle]
pub unsafe extern "C" fn jcm_model_free(model: *mut JcmModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// Highest retained photon number; the field dimension is this plus one.
/// Returns 0 for NULL.
///
/// # Safety
/// `model` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn jcm_model_n_max(model: *const JcmModel) -> usize {
    model.as_ref().map_or(0, |m| m.setup.n_max)
}

/// Evaluates every measure at time `t`.
///
/// # Safety
/// `model` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn jcm_model_measure(
    model: *const JcmModel,
    t: f64,
    out: *mut JcmMeasureRecord,
) -> JcmStatus {
    guard(|| {
        let model = borrow(model, "model")?;
        let out = out_slot(out, "out")?;
        *out = JcmMeasureRecord::from(&model.setup.record_at(t)?);
        Ok(())
    })
}

/// Writes the joint density matrix at time `t` into `buffer` as row-major
/// interleaved `(re, im)` pairs. The matrix dimension is
/// `2 * (n_max + 1)`, atom outer (excited first) and photon number inner, so
/// `buffer_len` must be at least `2 * dim * dim`.
///
/// # Safety
/// `model` must be a live handle; `buffer` must point to `buffer_len` doubles.
#[no_mangle]
pub unsafe extern "C" fn jcm_model_joint_density(
    model: *const JcmModel,
    t: f64,
    buffer: *mut f64,
    buffer_len: usize,
) -> JcmStatus {
    guard(|| {
        let model = borrow(model, "model")?;
        if buffer.is_null() {
            return Err(Failure::Null("buffer"));
        }
        let dim = 2 * (model.setup.n_max + 1);
        let needed = 2 * dim * dim;
        if buffer_len < needed {
            return Err(Failure::BufferTooSmall {
                needed,
                given: buffer_len,
            });
        }
        let setup = &model.setup;
        let chi = chi_vectors(&setup.params, &setup.field0, t)?;
        let rho = assemble_joint_density(&setup.params, &chi)?.to_matrix();
        let out = std::slice::from_raw_parts_mut(buffer, needed);
        for (k, z) in rho.matrix().as_slice().iter().enumerate() {
            out[2 * k] = z.re;
            out[2 * k + 1] = z.im;
        }
        Ok(())
    })
}

fn run(config: &SweepConfig, out: &mut *mut JcmSweep) -> Result<(), Failure> {
    let records = run_sweep(config)?;
    *out = Box::into_raw(Box::new(JcmSweep { records }));
    Ok(())
}

/// Runs a preset over `[0, t_end]` with `n_points` samples.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for a handle.
#[no_mangle]
pub unsafe extern "C" fn jcm_sweep_run_preset(
    preset: JcmPreset,
    t_end: f64,
    n_points: usize,
    oracle_check: bool,
    out: *mut *mut JcmSweep,
) -> JcmStatus {
    guard(|| {
        let out = out_slot(out, "out")?;
        *out = ptr::null_mut();
        let config = SweepConfig {
            t_end,
            n_points,
            oracle_check,
            ..SweepConfig::from_preset(preset.into())
        };
        config.validate()?;
        run(&config, out)
    })
}

/// Runs the sweep described by a `key = value` config file. The file's
/// `output` key is ignored; use [`jcm_sweep_write_csv`].
///
/// # Safety
/// `path` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn jcm_sweep_run_config_file(
    path: *const c_char,
    out: *mut *mut JcmSweep,
) -> JcmStatus {
    guard(|| {
        let out = out_slot(out, "out")?;
        *out = ptr::null_mut();
        let path = path_arg(path, "path")?;
        let file = ConfigOverrides::from_file(path)?;
        let config = resolve_config(Some(&file), &ConfigOverrides::default())?;
        run(&config, out)
    })
}

/// Number of records; 0 for NULL.
///
/// # Safety
/// `sweep` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn jcm_sweep_len(sweep: *const JcmSweep) -> usize {
    sweep.as_ref().map_or(0, |s| s.records.len())
}

/// Copies record `index` into `out`.
///
/// # Safety
/// `sweep` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn jcm_sweep_get(
    sweep: *const JcmSweep,
    index: usize,
    out: *mut JcmMeasureRecord,
) -> JcmStatus {
    guard(|| {
        let sweep = borrow(sweep, "sweep")?;
        let out = out_slot(out, "out")?;
        let record = sweep.records.get(index).ok_or_else(|| {
            Error::InvalidInput(format!(
                "index {index} out of range for {} records",
                sweep.records.len()
            ))
        })?;
        *out = record.into();
        Ok(())
    })
}

/// Writes the sweep as CSV to `path`.
///
/// # Safety
/// `sweep` must be a live handle; `path` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn jcm_sweep_write_csv(
    sweep: *const JcmSweep,
    path: *const c_char,
) -> JcmStatus {
    guard(|| {
        let sweep = borrow(sweep, "sweep")?;
        let path = path_arg(path, "path")?;
        emit_csv(&sweep.records, path)?;
        Ok(())
    })
}

/// Releases a sweep. NULL is ignored.
///
/// # Safety
/// `sweep` must be NULL or a handle from this library not freed before.
#[no_mangle]
pub unsafe extern "C" fn jcm_sweep_free(sweep: *mut JcmSweep) {
    if !sweep.is_null() {
        drop(Box::from_raw(sweep));
    }
}
