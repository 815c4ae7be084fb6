//! Experiment harness: observables, fidelity sweeps over Trotter steps and
//! time grids, and CSV/JSON emission.

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::compile::{trotterize_model, Architecture, CompileOptions, ScheduleStats};
use crate::dense::Propagator;
use crate::error::{DaqcError, Result};
use crate::fermion::{FermiHubbardParams, Model};
use crate::pauli::{Pauli, PauliString, PauliSum};
use crate::statevector::{random_product_state, run_schedule, StateVector};

fn check_site(i: usize, n: usize) -> Result<()> {
    if i == 0 || i > n {
        return Err(DaqcError::Index { index: i, max: n });
    }
    Ok(())
}

fn z(n_q: usize, q: usize) -> PauliString {
    PauliString::single(n_q, q, Pauli::Z).expect("qubit in range")
}

/// `1 + (Z_i + Z_{i+n}) / 2`, total density on site `i`.
pub fn density_observable(i: usize, n: usize) -> Result<PauliSum> {
    check_site(i, n)?;
    let n_q = 2 * n;
    PauliSum::from_real_terms(
        n_q,
        [
            (1.0, PauliString::identity(n_q)),
            (0.5, z(n_q, i)),
            (0.5, z(n_q, i + n)),
        ],
    )
}

/// `(Z_i Z_{i+n} + 2 n_i - 1) / 4 = n_{i,up} n_{i,down}`.
pub fn double_occupancy_observable(i: usize, n: usize) -> Result<PauliSum> {
    check_site(i, n)?;
    let n_q = 2 * n;
    let zz = PauliString::pair(n_q, i, i + n, Pauli::Z)?;
    PauliSum::from_real_terms(
        n_q,
        [
            (0.25, zz),
            (0.25, z(n_q, i)),
            (0.25, z(n_q, i + n)),
            (0.25, PauliString::identity(n_q)),
        ],
    )
}

fn site_count(psi: &StateVector, n: usize) -> Result<()> {
    if psi.n_qubits() != 2 * n {
        return Err(DaqcError::Dimension {
            expected: 2 * n,
            found: psi.n_qubits(),
        });
    }
    Ok(())
}

pub fn density(psi: &StateVector, i: usize, n: usize) -> Result<f64> {
    site_count(psi, n)?;
    psi.expectation(&density_observable(i, n)?)
}

pub fn double_occupancy(psi: &StateVector, i: usize, n: usize) -> Result<f64> {
    site_count(psi, n)?;
    psi.expectation(&double_occupancy_observable(i, n)?)
}

/// `|<exact|da>|^2`.
pub fn fidelity(psi_exact: &StateVector, psi_da: &StateVector) -> Result<f64> {
    Ok(psi_exact.inner(psi_da)?.norm_sqr())
}

/// `points` evenly spaced times from `start` to `stop` inclusive.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TimeGrid {
    pub start: f64,
    pub stop: f64,
    pub points: usize,
}

impl TimeGrid {
    pub fn new(start: f64, stop: f64, points: usize) -> Result<Self> {
        let g = TimeGrid {
            start,
            stop,
            points,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn single(t: f64) -> Self {
        TimeGrid {
            start: t,
            stop: t,
            points: 1,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.start.is_finite() || !self.stop.is_finite() {
            return Err(DaqcError::validation("time grid bounds must be finite"));
        }
        match self.points {
            0 => Err(DaqcError::validation("time grid needs at least one point")),
            1 => Ok(()),
            _ if self.stop > self.start => Ok(()),
            _ => Err(DaqcError::validation(format!(
                "time grid must be strictly increasing, got {}..{}",
                self.start, self.stop
            ))),
        }
    }

    /// A single-point grid holds `stop`.
    pub fn values(&self) -> Vec<f64> {
        if self.points == 1 {
            return vec![self.stop];
        }
        let step = (self.stop - self.start) / (self.points - 1) as f64;
        (0..self.points)
            .map(|k| {
                if k + 1 == self.points {
                    self.stop
                } else {
                    self.start + step * k as f64
                }
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

impl OutputFormat {
    /// `.json` selects JSON, anything else CSV.
    pub fn from_path(path: &Path) -> Self {
        if path
            .extension()
            .is_some_and(|e| e.eq_ignore_ascii_case("json"))
        {
            OutputFormat::Json
        } else {
            OutputFormat::Csv
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub model: Model,
    pub arch: Architecture,
    pub times: TimeGrid,
    pub steps: Vec<usize>,
    /// Random initial states; state `k` uses seed `base_seed + k`.
    pub seeds: usize,
    pub base_seed: u64,
    /// Observable site, 1-based.
    pub site: usize,
    pub options: CompileOptions,
    pub output: Option<(PathBuf, OutputFormat)>,
}

impl ExperimentConfig {
    /// λ = 1, ε = 1, μ = 0.5 on the linear chain (β = 1), `t` in `[0, 5]`
    /// with 50 points, `l` in {8, 16, 32, 64}, 20 seeds, site 1.
    pub fn fermi_hubbard_default(n: usize) -> Result<Self> {
        let model = Model::FermiHubbard(FermiHubbardParams::new(n, 1.0, 1.0, 0.5)?);
        Ok(ExperimentConfig {
            model,
            arch: Architecture::linear(2 * n, 1.0)?,
            times: TimeGrid::new(0.0, 5.0, 50)?,
            steps: vec![8, 16, 32, 64],
            seeds: 20,
            base_seed: 0,
            site: 1,
            options: CompileOptions::default(),
            output: None,
        })
    }

    pub fn validate(&self) -> Result<()> {
        self.times.validate()?;
        if self.steps.is_empty() || self.steps.contains(&0) {
            return Err(DaqcError::validation(
                "Trotter step list must be non-empty positive integers",
            ));
        }
        if self.seeds == 0 {
            return Err(DaqcError::validation("need at least one random state"));
        }
        check_site(self.site, self.model.n_sites())?;
        if self.arch.n_qubits() != self.model.n_qubits() {
            return Err(DaqcError::Dimension {
                expected: self.model.n_qubits(),
                found: self.arch.n_qubits(),
            });
        }
        Ok(())
    }
}

/// One `(t, l, seed)` point of a sweep, flat for CSV.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub t: f64,
    pub l: usize,
    pub seed: u64,
    pub fidelity: f64,
    pub density_exact: f64,
    pub density_da: f64,
    pub docc_exact: f64,
    pub docc_da: f64,
    pub analog_blocks: usize,
    pub rotation_layers: usize,
    pub swaps: usize,
}

pub const CSV_COLUMNS: [&str; 11] = [
    "t",
    "l",
    "seed",
    "fidelity",
    "density_exact",
    "density_da",
    "docc_exact",
    "docc_da",
    "analog_blocks",
    "rotation_layers",
    "swaps",
];

struct Observed {
    density: f64,
    docc: f64,
}

fn observe(psi: &StateVector, density: &PauliSum, docc: &PauliSum) -> Result<Observed> {
    Ok(Observed {
        density: psi.expectation(density)?,
        docc: psi.expectation(docc)?,
    })
}

/// Exact and digital-analog evolution for every `(t, l, seed)`, sorted by
/// `(t, l, seed)`. Points run in parallel; results do not depend on scheduling.
pub fn sweep_trotter(cfg: &ExperimentConfig) -> Result<Vec<ResultRecord>> {
    cfg.validate()?;
    let n = cfg.model.n_sites();
    let n_q = cfg.model.n_qubits();
    let h = cfg.model.hamiltonian()?;
    let propagator = Propagator::new(&h)?;
    let density_obs = density_observable(cfg.site, n)?;
    let docc_obs = double_occupancy_observable(cfg.site, n)?;
    let states: Vec<(u64, StateVector)> = (0..cfg.seeds as u64)
        .map(|k| {
            let seed = cfg.base_seed + k;
            (seed, random_product_state(seed, n_q))
        })
        .collect();

    let jobs: Vec<(f64, usize)> = cfg
        .times
        .values()
        .into_iter()
        .flat_map(|t| cfg.steps.iter().map(move |&l| (t, l)))
        .collect();

    let per_job: Vec<Vec<ResultRecord>> = jobs
        .par_iter()
        .map(|&(t, l)| -> Result<Vec<ResultRecord>> {
            let schedule = trotterize_model(&cfg.model, t, l, &cfg.arch, &cfg.options)?;
            let ScheduleStats {
                analog_blocks,
                rotation_layers,
                swaps,
                ..
            } = schedule.stats();
            states
                .iter()
                .map(|(seed, psi)| {
                    let exact =
                        StateVector::from_amplitudes(n_q, propagator.evolve(t, psi.amplitudes())?)?;
                    let da = run_schedule(psi, &schedule)?;
                    let e = observe(&exact, &density_obs, &docc_obs)?;
                    let d = observe(&da, &density_obs, &docc_obs)?;
                    Ok(ResultRecord {
                        t,
                        l,
                        seed: *seed,
                        fidelity: fidelity(&exact, &da)?,
                        density_exact: e.density,
                        density_da: d.density,
                        docc_exact: e.docc,
                        docc_da: d.docc,
                        analog_blocks,
                        rotation_layers,
                        swaps,
                    })
                })
                .collect()
        })
        .collect::<Result<_>>()?;

    let mut records: Vec<ResultRecord> = per_job.into_iter().flatten().collect();
    records.sort_by(|a, b| {
        a.t.total_cmp(&b.t)
            .then(a.l.cmp(&b.l))
            .then(a.seed.cmp(&b.seed))
    });
    Ok(records)
}

/// Run the sweep and write it to the configured output, if any.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<ResultRecord>> {
    let records = sweep_trotter(cfg)?;
    if let Some((path, format)) = &cfg.output {
        emit(&records, *format, path)?;
    }
    Ok(records)
}

/// Mean fidelity per `(t, l)`, in sweep order.
pub fn mean_fidelity(records: &[ResultRecord]) -> Vec<(f64, usize, f64)> {
    let mut out: Vec<(f64, usize, f64, usize)> = Vec::new();
    for r in records {
        match out.last_mut() {
            Some(last) if last.0 == r.t && last.1 == r.l => {
                last.2 += r.fidelity;
                last.3 += 1;
            }
            _ => out.push((r.t, r.l, r.fidelity, 1)),
        }
    }
    out.into_iter()
        .map(|(t, l, sum, count)| (t, l, sum / count as f64))
        .collect()
}

pub fn write_records<W: Write>(records: &[ResultRecord], format: OutputFormat, w: W) -> Result<()> {
    match format {
        OutputFormat::Csv => {
            let mut csv = csv::WriterBuilder::new().has_headers(false).from_writer(w);
            csv.write_record(CSV_COLUMNS)?;
            for r in records {
                csv.serialize(r)?;
            }
            csv.flush().map_err(|e| DaqcError::Serde(e.to_string()))?;
        }
        OutputFormat::Json => {
            let mut w = w;
            serde_json::to_writer_pretty(&mut w, records)?;
            writeln!(w).map_err(|e| DaqcError::Serde(e.to_string()))?;
        }
    }
    Ok(())
}

pub fn emit(records: &[ResultRecord], format: OutputFormat, path: &Path) -> Result<()> {
    let file = File::create(path).map_err(|e| DaqcError::io(path, e))?;
    let mut w = BufWriter::new(file);
    write_records(records, format, &mut w).map_err(|e| match e {
        DaqcError::Serde(msg) => DaqcError::io(path, std::io::Error::other(msg)),
        other => other,
    })?;
    w.flush().map_err(|e| DaqcError::io(path, e))
}

pub fn read_records(path: &Path) -> Result<Vec<ResultRecord>> {
    let file = File::open(path).map_err(|e| DaqcError::io(path, e))?;
    match OutputFormat::from_path(path) {
        OutputFormat::Json => Ok(serde_json::from_reader(BufReader::new(file))?),
        OutputFormat::Csv => csv::Reader::from_reader(file)
            .deserialize()
            .map(|r| r.map_err(DaqcError::from))
            .collect(),
    }
}

/// `b_i * b_{i+n}` read from the basis index bits.
pub fn occupancy_product(index: usize, i: usize, n: usize) -> f64 {
    ((index >> (i - 1)) & (index >> (i + n - 1)) & 1) as f64
}
