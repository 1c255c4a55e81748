//! Command-line front end for `lurkit`.

pub mod density_file;
mod error;
pub mod output;

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use lurkit::criteria::{local_bound, StandardWitnesses};
use lurkit::experiment::{estimate_witnesses, simulate_tables, Estimate, MIN_SHOTS};
use lurkit::linalg::Mat2;
use lurkit::quantum::{BellState, DensityMatrix, NoiseKind, StateSpec};
use lurkit::study::{haar_sample, linspace, noise_sweep, HaarSummary};
use rayon::prelude::*;

pub use error::CliError;
use output::{Field, Format, Table};

#[derive(Debug, Parser)]
#[command(name = "lurkit", version, about = "Two-qubit entanglement detection with local uncertainty relations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output file (stdout when omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// L2, ML2, L3, ML3 and the PPT minimum eigenvalue of one state.
    Evaluate {
        #[arg(long)]
        state: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Tabulate a Bell-state noise mixture over a grid of p.
    Sweep {
        /// Noise family: werner or polarized.
        #[arg(long)]
        noise: Option<String>,
        /// Alternative to --noise: `werner` or `polarized`.
        #[arg(long)]
        state: Option<String>,
        /// Bell state mixed with the noise.
        #[arg(long, default_value = "singlet")]
        base: String,
        #[arg(long, default_value_t = 0.0)]
        p_start: f64,
        #[arg(long, default_value_t = 1.0)]
        p_stop: f64,
        #[arg(long, default_value_t = 11)]
        p_steps: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Detection rates of L3 and ML3 on Haar-random local rotations of a Bell state.
    HaarStudy {
        #[arg(long, default_value = "singlet")]
        state: String,
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Also write one row per sample to this file.
        #[arg(long)]
        per_sample: Option<PathBuf>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Estimate L2, ML2, L3, ML3 from simulated coincidence counts.
    Simulate {
        #[arg(long)]
        state: String,
        /// Shots per basis.
        #[arg(long, default_value_t = 10_000)]
        shots: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Also write the sampled count tables (CSV) to this file.
        #[arg(long)]
        counts: Option<PathBuf>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Minimised sum of local variances for a list of Pauli observables.
    Bound {
        /// Comma-separated list from {sx, sy, sz}.
        #[arg(long)]
        observables: String,
        #[command(flatten)]
        output: OutputArgs,
    },
}

pub fn resolve_state(spec: &str) -> Result<DensityMatrix, CliError> {
    match spec.parse::<StateSpec>()? {
        StateSpec::File(path) => density_file::load(Path::new(&path)),
        other => Ok(other.density()?),
    }
}

fn witness_fields(w: &StandardWitnesses) -> Vec<(&'static str, Field)> {
    vec![
        ("l2", w.l2.into()),
        ("ml2", w.ml2.into()),
        ("l3", w.l3.into()),
        ("ml3", w.ml3.into()),
        ("ppt_min_eig", w.ppt_min_eig.into()),
        ("verdict_l2", w.verdict_l2().name().into()),
        ("verdict_ml2", w.verdict_ml2().name().into()),
        ("verdict_l3", w.verdict_l3().name().into()),
        ("verdict_ml3", w.verdict_ml3().name().into()),
    ]
}

pub fn evaluate_table(state: &str) -> Result<Table, CliError> {
    let rho = resolve_state(state)?;
    let w = StandardWitnesses::of(&rho)?;
    let mut fields = vec![("state", state.into())];
    fields.extend(witness_fields(&w));
    Ok(Table::record(fields))
}

pub fn sweep_table(noise: NoiseKind, base: BellState, start: f64, stop: f64, steps: usize) -> Result<Table, CliError> {
    if steps < 2 {
        return Err(CliError::Usage(format!("--p-steps must be at least 2, got {steps}")));
    }
    let rows = noise_sweep(noise, base, &linspace(start, stop, steps))?;
    let mut t = Table::new(["p", "l2", "ml2", "l3", "ml3", "ppt_min_eig"]);
    for r in rows {
        let w = r.witnesses;
        t.push(vec![r.p.into(), w.l2.into(), w.ml2.into(), w.l3.into(), w.ml3.into(), w.ppt_min_eig.into()]);
    }
    Ok(t)
}

/// Summary table and per-sample table of a Haar study. Samples run in
/// parallel on per-sample streams and are collected in index order.
pub fn haar_tables(state: &str, samples: u64, seed: u64) -> Result<(Table, Table), CliError> {
    if samples == 0 {
        return Err(CliError::Usage("--samples must be at least 1".into()));
    }
    let base = state
        .parse::<StateSpec>()?
        .bell()
        .ok_or_else(|| CliError::Usage(format!("haar-study needs a Bell state, got `{state}`")))?;
    let rows = (0..samples)
        .into_par_iter()
        .map(|i| haar_sample(base, seed, i))
        .collect::<Result<Vec<_>, _>>()?;
    let s = HaarSummary::from_samples(&rows);

    let summary = Table::record(vec![
        ("state", state.into()),
        ("samples", s.samples.into()),
        ("seed", seed.into()),
        ("l3_detected", s.l3_detected.into()),
        ("ml3_detected", s.ml3_detected.into()),
        ("l3_fraction", s.l3_fraction().into()),
        ("ml3_fraction", s.ml3_fraction().into()),
        ("margin", s.margin().into()),
        ("ml3_only", s.ml3_only.into()),
        ("l3_mean", s.l3_mean.into()),
        ("ml3_mean", s.ml3_mean.into()),
    ]);
    let mut per_sample = Table::new(["sample", "l2", "ml2", "l3", "ml3", "ppt_min_eig"]);
    for r in &rows {
        let w = r.witnesses;
        per_sample.push(vec![r.index.into(), w.l2.into(), w.ml2.into(), w.l3.into(), w.ml3.into(), w.ppt_min_eig.into()]);
    }
    Ok((summary, per_sample))
}

/// Point estimates with `_se` columns, and the sampled count tables.
pub fn simulate_tables_out(state: &str, shots: u64, seed: u64) -> Result<(Table, Table), CliError> {
    if shots < MIN_SHOTS {
        return Err(CliError::Usage(format!("--shots must be at least {MIN_SHOTS}, got {shots}")));
    }
    let rho = resolve_state(state)?;
    let tables = simulate_tables(&rho, shots, seed)?;
    let est = estimate_witnesses(&tables)?;
    let missing = lurkit::Error::InvariantViolation("three-basis estimate");
    let l3 = est.l3.ok_or(missing.clone())?;
    let ml3 = est.ml3.ok_or(missing)?;

    let mut fields: Vec<(&str, Field)> = vec![("state", state.into()), ("shots", shots.into()), ("seed", seed.into())];
    let named: [(&str, &str, Estimate); 4] = [("l2", "l2_se", est.l2), ("ml2", "ml2_se", est.ml2), ("l3", "l3_se", l3), ("ml3", "ml3_se", ml3)];
    for (name, se_name, e) in named {
        fields.push((name, e.value.into()));
        fields.push((se_name, e.std_error.into()));
    }
    let summary = Table::record(fields);

    let mut counts = Table::new(["basis", "pp", "pm", "mp", "mm", "shots"]);
    for t in &tables {
        let [pp, pm, mp, mm] = t.counts;
        counts.push(vec![t.basis.label().into(), pp.into(), pm.into(), mp.into(), mm.into(), t.shots().into()]);
    }
    Ok((summary, counts))
}

pub fn parse_observables(list: &str) -> Result<Vec<Mat2>, CliError> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| match s {
            "sx" => Ok(Mat2::pauli_x()),
            "sy" => Ok(Mat2::pauli_y()),
            "sz" => Ok(Mat2::pauli_z()),
            other => Err(CliError::Usage(format!("unknown observable `{other}` (expected sx, sy or sz)"))),
        })
        .collect()
}

pub fn bound_table(list: &str) -> Result<Table, CliError> {
    let obs = parse_observables(list)?;
    let value = local_bound(&obs)?;
    Ok(Table::record(vec![("observables", list.into()), ("local_bound", value.into())]))
}

fn noise_family(noise: Option<&str>, state: Option<&str>) -> Result<NoiseKind, CliError> {
    let name = match (noise, state) {
        (Some(n), _) => n,
        (None, Some(s)) => s,
        (None, None) => return Err(CliError::Usage("sweep needs --noise werner|polarized".into())),
    };
    name.parse()
        .map_err(|_| CliError::Usage(format!("unknown noise family `{name}` (expected werner or polarized)")))
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Evaluate { state, output } => {
            evaluate_table(&state)?.emit(output.format, output.out.as_deref())?;
        }
        Command::Sweep { noise, state, base, p_start, p_stop, p_steps, output } => {
            let family = noise_family(noise.as_deref(), state.as_deref())?;
            let base: BellState = base.parse()?;
            sweep_table(family, base, p_start, p_stop, p_steps)?.emit(output.format, output.out.as_deref())?;
        }
        Command::HaarStudy { state, samples, seed, per_sample, output } => {
            let (summary, rows) = haar_tables(&state, samples, seed)?;
            if let Some(path) = per_sample {
                rows.emit(output.format, Some(&path))?;
            }
            summary.emit(output.format, output.out.as_deref())?;
        }
        Command::Simulate { state, shots, seed, counts, output } => {
            let (summary, tables) = simulate_tables_out(&state, shots, seed)?;
            if let Some(path) = counts {
                fs::write(path, tables.to_csv())?;
            }
            summary.emit(output.format, output.out.as_deref())?;
        }
        Command::Bound { observables, output } => {
            bound_table(&observables)?.emit(output.format, output.out.as_deref())?;
        }
    }
    Ok(())
}
