//! Time-grid sweeps, oracle cross-validation and CSV output.

mod config;

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use rayon::prelude::*;

pub use config::{resolve_config, ConfigOverrides, Preset, SweepConfig};

use crate::dynamics::{assemble_joint_density, chi_vectors, SystemParams};
use crate::error::{Error, Result};
use crate::field::{choose_truncation, coherent_coefficients, coherent_tail_mass, FieldVector};
use crate::measures::{measure_state, measure_sweep_point, MeasureRecord};
use crate::oracle::BruteForcePropagator;

/// Largest disagreement tolerated between the closed form and the oracle
/// during an `oracle_check` sweep.
pub const ORACLE_TOLERANCE: f64 = 1e-7;

pub const CSV_HEADER: &str =
    "t,negativity,mutual_entropy,s_atom,s_field,s_joint,classical_bound,truncation_mass_lost";

/// The model, initial field and truncation a sweep runs on.
#[derive(Clone, Debug)]
pub struct SweepSetup {
    pub params: SystemParams,
    pub field0: FieldVector,
    pub n_max: usize,
    pub tail_mass: f64,
}

impl SweepSetup {
    pub fn new(config: &SweepConfig) -> Result<Self> {
        config.validate()?;
        let params = config.system_params()?;
        let n_max = choose_truncation(config.alpha, &config.truncation_policy()?)?;
        Ok(SweepSetup {
            params,
            field0: coherent_coefficients(config.alpha, n_max)?,
            n_max,
            tail_mass: coherent_tail_mass(config.alpha, n_max)?,
        })
    }

    pub fn record_at(&self, t: f64) -> Result<MeasureRecord> {
        let mut record = measure_sweep_point(&self.params, &self.field0, t)?;
        record.truncation_mass_lost = self.tail_mass;
        Ok(record)
    }
}

/// Evaluates every grid point of `config`, in ascending time. With
/// `oracle_check` set, every `oracle_stride`-th point is recomputed by the
/// brute-force propagator and any disagreement above [`ORACLE_TOLERANCE`]
/// aborts the sweep.
pub fn run_sweep(config: &SweepConfig) -> Result<Vec<MeasureRecord>> {
    let setup = SweepSetup::new(config)?;
    let grid = config.time_grid();
    let records = grid
        .par_iter()
        .map(|&t| setup.record_at(t))
        .collect::<Result<Vec<_>>>()?;

    if config.oracle_check {
        let propagator = BruteForcePropagator::new(&setup.params, setup.n_max)?;
        records
            .par_iter()
            .step_by(config.oracle_stride)
            .try_for_each(|record| cross_check(&setup, &propagator, record))?;
    }
    Ok(records)
}

fn cross_check(
    setup: &SweepSetup,
    propagator: &BruteForcePropagator,
    record: &MeasureRecord,
) -> Result<()> {
    let t = record.t;
    let chi = chi_vectors(&setup.params, &setup.field0, t)?;
    let closed = assemble_joint_density(&setup.params, &chi)?;
    let oracle = propagator.state(&setup.field0, t)?;

    let rho_gap = closed
        .to_matrix()
        .matrix()
        .max_abs_diff(oracle.to_matrix().matrix());
    if rho_gap > ORACLE_TOLERANCE {
        return Err(Error::OracleMismatch {
            t,
            quantity: "max |rho entry difference|",
            closed_form: closed.to_matrix().matrix().max_abs(),
            oracle: oracle.to_matrix().matrix().max_abs(),
            delta: rho_gap,
        });
    }

    let reference = measure_state(
        t,
        &oracle,
        &oracle.partial_trace_field(),
        &oracle.partial_trace_atom(),
        setup.tail_mass,
    )?;
    let pairs = [
        ("negativity", record.negativity, reference.negativity),
        (
            "mutual_entropy",
            record.mutual_entropy,
            reference.mutual_entropy,
        ),
        ("s_atom", record.s_atom, reference.s_atom),
        ("s_field", record.s_field, reference.s_field),
        ("s_joint", record.s_joint, reference.s_joint),
    ];
    for (quantity, closed_form, oracle) in pairs {
        let delta = (closed_form - oracle).abs();
        // NaN counts as a mismatch
        if delta.is_nan() || delta > ORACLE_TOLERANCE {
            return Err(Error::OracleMismatch {
                t,
                quantity,
                closed_form,
                oracle,
                delta,
            });
        }
    }
    Ok(())
}

impl MeasureRecord {
    /// Values in [`CSV_HEADER`] order.
    pub fn csv_fields(&self) -> [f64; 8] {
        [
            self.t,
            self.negativity,
            self.mutual_entropy,
            self.s_atom,
            self.s_field,
            self.s_joint,
            self.classical_bound,
            self.truncation_mass_lost,
        ]
    }
}

fn write_value(out: &mut impl Write, v: f64) -> std::io::Result<()> {
    // shortest representation that parses back to the same bits; -0 prints as 0
    if v == 0.0 {
        out.write_all(b"0")
    } else {
        write!(out, "{v}")
    }
}

/// Writes the header and one row per record.
pub fn write_csv(records: &[MeasureRecord], out: &mut impl Write) -> std::io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for record in records {
        for (k, v) in record.csv_fields().into_iter().enumerate() {
            if k > 0 {
                out.write_all(b",")?;
            }
            write_value(out, v)?;
        }
        out.write_all(b"\n")?;
    }
    Ok(())
}

/// Writes `records` to `path` as CSV.
pub fn emit_csv(records: &[MeasureRecord], path: &Path) -> Result<()> {
    if records.is_empty() {
        return Err(Error::InvalidInput("no records to write".into()));
    }
    let io_err = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    let file = File::create(path).map_err(io_err)?;
    let mut out = BufWriter::new(file);
    write_csv(records, &mut out).map_err(io_err)?;
    out.flush().map_err(io_err)
}

/// Reads a file produced by [`emit_csv`] back into rows of [`CSV_HEADER`] fields.
pub fn read_csv(path: &Path) -> Result<Vec<[f64; 8]>> {
    let io_err = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    let reader = BufReader::new(File::open(path).map_err(io_err)?);
    let mut lines = reader.lines();
    let header = lines
        .next()
        .transpose()
        .map_err(io_err)?
        .unwrap_or_default();
    if header != CSV_HEADER {
        return Err(Error::InvalidInput(format!(
            "unexpected CSV header `{header}`"
        )));
    }
    let mut rows = Vec::new();
    for (k, line) in lines.enumerate() {
        let line = line.map_err(io_err)?;
        let mut row = [0.0; 8];
        let mut fields = line.split(',');
        for slot in row.iter_mut() {
            let field = fields
                .next()
                .ok_or_else(|| Error::InvalidInput(format!("row {} has too few fields", k + 1)))?;
            *slot = field.parse().map_err(|_| {
                Error::InvalidInput(format!("row {}: cannot parse `{field}`", k + 1))
            })?;
        }
        if fields.next().is_some() {
            return Err(Error::InvalidInput(format!(
                "row {} has too many fields",
                k + 1
            )));
        }
        rows.push(row);
    }
    Ok(rows)
}
