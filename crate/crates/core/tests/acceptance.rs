//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fail.

mod common;

use std::collections::BTreeMap;
use std::time::Instant;

use jcm_negativity::dynamics::{assemble_joint_density, chi_vectors};
use jcm_negativity::field::{coherent_coefficients, TruncationPolicy};
use jcm_negativity::linalg::{eigenvalues_hermitian, trace_norm};
use jcm_negativity::measures::{negativity, MeasureRecord};
use jcm_negativity::oracle::BruteForcePropagator;
use jcm_negativity::sweep::{run_sweep, Preset, SweepConfig, SweepSetup};
use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::SeedableRng;

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn mean(xs: impl Iterator<Item = f64>) -> f64 {
    let (sum, count) = xs.fold((0.0, 0usize), |(s, c), x| (s + x, c + 1));
    sum / count as f64
}

fn truncation_bound() -> Outcome {
    let start = Instant::now();
    let v = coherent_coefficients(Complex64::new(5f64.sqrt(), 0.0), 60).unwrap();
    let worst = v.coeffs()[26..]
        .iter()
        .map(|b| b.norm_sqr())
        .fold(0.0, f64::max);
    let elapsed = start.elapsed();
    outcome(
        worst < 1e-10 && elapsed.as_secs_f64() < 1e-3,
        format!(
            "max_(n>25) |b_n|^2 = {worst:.3e}, |b_25|^2 = {:.3e}, {:.1} us",
            v[25].norm_sqr(),
            elapsed.as_secs_f64() * 1e6
        ),
    )
}

fn product_state_zero() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for preset in Preset::ALL {
        let setup = SweepSetup::new(&SweepConfig::from_preset(preset)).unwrap();
        let r = setup.record_at(0.0).unwrap();
        worst = worst.max(r.negativity.abs()).max(r.mutual_entropy.abs());
    }
    let elapsed = start.elapsed().as_secs_f64();
    outcome(
        worst < 1e-10 && elapsed < 1.0,
        format!("max |N|,|I| at t=0 = {worst:.2e}, {elapsed:.3} s"),
    )
}

fn pure_case_identity(sweeps: &BTreeMap<Preset, Vec<MeasureRecord>>) -> Outcome {
    let records = &sweeps[&Preset::Fig1];
    let twice = records
        .iter()
        .map(|r| (r.mutual_entropy - 2.0 * r.s_atom).abs())
        .fold(0.0, f64::max);
    let marginals = records
        .iter()
        .map(|r| (r.s_atom - r.s_field).abs())
        .fold(0.0, f64::max);
    outcome(
        twice < 1e-8 && marginals < 1e-8 && records.len() == 1001,
        format!("max|I-2S_A| = {twice:.2e}, max|S_A-S_F| = {marginals:.2e}"),
    )
}

fn oracle_equivalence() -> Outcome {
    let mut worst_rho: f64 = 0.0;
    let mut worst_n: f64 = 0.0;
    for preset in [Preset::Fig1, Preset::Fig2, Preset::Fig3, Preset::Fig4] {
        let config = SweepConfig::from_preset(preset);
        let setup = SweepSetup::new(&config).unwrap();
        let oracle = BruteForcePropagator::new(&setup.params, setup.n_max).unwrap();
        for k in 0..50 {
            let t = config.t_start + (config.t_end - config.t_start) * k as f64 / 49.0;
            let chi = chi_vectors(&setup.params, &setup.field0, t).unwrap();
            let closed = assemble_joint_density(&setup.params, &chi).unwrap();
            let brute = oracle.state(&setup.field0, t).unwrap();
            worst_rho = worst_rho.max(
                closed
                    .to_matrix()
                    .matrix()
                    .max_abs_diff(brute.to_matrix().matrix()),
            );
            worst_n =
                worst_n.max((negativity(&closed).unwrap() - negativity(&brute).unwrap()).abs());
        }
    }
    outcome(
        worst_rho < 1e-8 && worst_n < 1e-7,
        format!("max entry diff = {worst_rho:.2e}, max |dN| = {worst_n:.2e}"),
    )
}

fn rank_and_support(sweeps: &BTreeMap<Preset, Vec<MeasureRecord>>) -> Outcome {
    let all = sweeps.values().flatten();
    let rank = all.clone().map(|r| r.joint_rank).max().unwrap();
    let support = all.map(|r| r.partial_transpose_support).max().unwrap();
    outcome(
        rank <= 2 && support <= 8,
        format!("max rank(rho) = {rank}, max support(rho^T1) = {support}"),
    )
}

fn mutual_entropy_bounds(sweeps: &BTreeMap<Preset, Vec<MeasureRecord>>) -> Outcome {
    let mut min_i = f64::INFINITY;
    let mut worst_slack = f64::NEG_INFINITY;
    for r in sweeps.values().flatten() {
        min_i = min_i.min(r.mutual_entropy);
        worst_slack = worst_slack.max(r.mutual_entropy - 2.0 * r.s_atom.min(r.s_field));
    }
    outcome(
        min_i >= 0.0 && worst_slack <= 1e-8,
        format!("min I = {min_i:.2e}, max I - 2 min(S_A,S_F) = {worst_slack:.3e}"),
    )
}

fn detuning_suppression(sweeps: &BTreeMap<Preset, Vec<MeasureRecord>>) -> Outcome {
    let stats: Vec<(f64, f64)> = [Preset::Fig2, Preset::Fig3, Preset::Fig4]
        .iter()
        .map(|p| {
            let rs = &sweeps[p];
            let n = mean(rs.iter().map(|r| r.negativity));
            let i = mean(rs.iter().map(|r| r.mutual_entropy));
            (n, i / n)
        })
        .collect();
    let [(n0, q0), (n5, q5), (n10, q10)] = stats[..] else {
        unreachable!()
    };
    outcome(
        n10 < n5 && n5 < n0 && q0 < q5 && q5 < q10,
        format!(
            "avg N (D=0,5,10) = {n0:.4}, {n5:.4}, {n10:.4}; avg I/avg N = {q0:.2}, {q5:.2}, {q10:.2}"
        ),
    )
}

fn classical_bound_approach(sweeps: &BTreeMap<Preset, Vec<MeasureRecord>>) -> Outcome {
    let excess = |p: Preset| {
        mean(
            sweeps[&p]
                .iter()
                .filter(|r| (5.0..=25.0).contains(&r.t))
                .map(|r| r.mutual_entropy - r.classical_bound),
        )
    };
    let (resonant, detuned) = (excess(Preset::Fig2), excess(Preset::Fig4));
    outcome(
        detuned < resonant,
        format!("avg excess on [5,25]: D=10 {detuned:.4} vs D=0 {resonant:.4}"),
    )
}

fn collapse_region_shape(sweeps: &BTreeMap<Preset, Vec<MeasureRecord>>) -> Outcome {
    let rs = &sweeps[&Preset::Fig2];
    let dt = rs[1].t - rs[0].t;
    let half = (0.5 / dt).round() as usize;
    let running: Vec<(f64, f64)> = (half..rs.len() - half)
        .map(|k| {
            let m = mean(rs[k - half..=k + half].iter().map(|r| r.negativity));
            (rs[k].t, m)
        })
        .collect();
    let min_over = |pred: &dyn Fn(f64) -> bool| {
        running
            .iter()
            .filter(|(t, _)| pred(*t))
            .map(|&(_, m)| m)
            .fold(f64::INFINITY, f64::min)
    };
    let inside = min_over(&|t| (3.0..=7.0).contains(&t));
    let before = min_over(&|t| t < 3.0);
    let after = min_over(&|t| t > 8.0);
    outcome(
        inside < before && inside < after,
        format!("min running mean of N: t in [3,7] {inside:.4}, t<3 {before:.4}, t>8 {after:.4}"),
    )
}

fn eigensolver_contract() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut worst_trace: f64 = 0.0;
    let mut worst_norm: f64 = 0.0;
    for _ in 0..100 {
        let m = common::random_hermitian(&mut rng, 52);
        let values = eigenvalues_hermitian(&m).unwrap();
        let tr = m.trace();
        let sum: f64 = values.iter().sum();
        worst_trace = worst_trace.max((sum - tr).abs() / tr.abs().max(1.0));
        let reference = common::trace_abs_by_sign_iteration(m.matrix());
        worst_norm = worst_norm.max((trace_norm(&m).unwrap() - reference).abs());
    }
    outcome(
        worst_trace < 1e-10 && worst_norm < 1e-9,
        format!("max rel |sum(l)-tr| = {worst_trace:.2e}, max |trace_norm - Tr sqrt(M^+M)| = {worst_norm:.2e}"),
    )
}

fn main() {
    // The default truncation must be the one the figures use.
    assert_eq!(
        TruncationPolicy::default(),
        TruncationPolicy::new(1e-12, 5).unwrap()
    );

    let sweeps: BTreeMap<Preset, Vec<MeasureRecord>> = Preset::ALL
        .iter()
        .map(|&p| (p, run_sweep(&SweepConfig::from_preset(p)).unwrap()))
        .collect();

    let criteria: [Criterion; 10] = [
        ("truncation bound", Box::new(truncation_bound)),
        ("product-state zero", Box::new(product_state_zero)),
        (
            "pure-case identity",
            Box::new(|| pure_case_identity(&sweeps)),
        ),
        ("oracle equivalence", Box::new(oracle_equivalence)),
        ("rank and support", Box::new(|| rank_and_support(&sweeps))),
        (
            "mutual-entropy bounds",
            Box::new(|| mutual_entropy_bounds(&sweeps)),
        ),
        (
            "detuning suppression",
            Box::new(|| detuning_suppression(&sweeps)),
        ),
        (
            "classical-bound approach",
            Box::new(|| classical_bound_approach(&sweeps)),
        ),
        (
            "collapse-region shape",
            Box::new(|| collapse_region_shape(&sweeps)),
        ),
        ("eigensolver contract", Box::new(eigensolver_contract)),
    ];

    let mut failures = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let result = check();
        let tag = if result.pass { "PASS" } else { "FAIL" };
        println!("[{tag}] {:>2}. {name}: {}", k + 1, result.detail);
        failures += usize::from(!result.pass);
    }
    println!(
        "acceptance: {} passed, {failures} failed",
        criteria.len() - failures
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
