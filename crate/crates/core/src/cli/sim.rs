//! Random-ensemble comparison of the bounds.
//!
//! Every trial draws its generators from its own SplitMix64 stream, seeded
//! from `(seed, tuple index, trial index)`, so a report depends only on the
//! configuration and never on the number of worker threads.

use rand::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{candidate_pool, jensen_bound, optimize_over_pool};
use crate::code::{Distance, Infinite};
use crate::cyclic::{EngineCaps, Method};
use crate::error::{Error, Result};
use crate::gf::{field_of_order, Field};
use crate::poly::Poly;
use crate::qc::{qc_from_generators, QcCode};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub q: u64,
    pub n: usize,
    pub ell_min: usize,
    pub ell_max: usize,
    /// Generator counts `r_min..=min(r_max, ℓ)`.
    pub r_min: usize,
    pub r_max: usize,
    pub trials: usize,
    pub seed: u64,
    pub s_values: Vec<usize>,
    pub methods: Vec<Method>,
    pub caps: EngineCaps,
}

impl SimConfig {
    fn tuples(&self) -> Vec<(usize, usize)> {
        (self.ell_min..=self.ell_max)
            .flat_map(|ell| (self.r_min.max(1)..=self.r_max.min(ell)).map(move |r| (ell, r)))
            .collect()
    }

    fn validate(&self) -> Result<()> {
        if self.ell_min == 0 || self.ell_min > self.ell_max || self.tuples().is_empty() {
            return Err(Error::InvalidParameters("empty ell or r range".into()));
        }
        if self.trials == 0 || self.s_values.is_empty() || self.s_values.contains(&0) {
            return Err(Error::InvalidParameters("need trials >= 1 and s values >= 1".into()));
        }
        let worst = (self.q as f64).powi((self.n * self.ell_max) as i32 - 1);
        if worst > self.caps.budget as f64 {
            return Err(Error::BudgetExceeded { needed: worst as u128, budget: self.caps.budget });
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimRow {
    pub ell: usize,
    pub r: usize,
    pub trial: usize,
    pub k: usize,
    pub d: Distance,
    pub d_spec: Vec<Distance>,
    pub d_j: Distance,
    pub d_s: Distance,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub sharp: usize,
    pub best_performing: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimReport {
    pub config: SimConfig,
    pub drawn: usize,
    pub nontrivial: usize,
    pub rows: Vec<SimRow>,
    /// One entry per value of `s`, in configuration order.
    pub spectral: Vec<Counts>,
    pub jensen: Counts,
    pub prior: Counts,
    pub violations: Vec<String>,
}

fn stream(seed: u64, tuple: u64, trial: u64) -> SplitMix64 {
    let base = SplitMix64::seed_from_u64(seed).next_u64();
    SplitMix64::seed_from_u64(base ^ tuple.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ trial.wrapping_mul(0xD1B5_4A32_D192_ED03))
}

/// `r` generators of `ℓ` polynomials, each with `n` uniform coefficients.
pub fn random_code(field: &Field, n: usize, ell: usize, r: usize, rng: &mut SplitMix64) -> Result<QcCode> {
    let gens = (0..r)
        .map(|_| (0..ell).map(|_| Poly::new(field, (0..n).map(|_| field.random(rng)).collect())).collect())
        .collect();
    qc_from_generators(field, n, ell, gens)
}

fn evaluate(c: &QcCode, cfg: &SimConfig, ell: usize, r: usize, trial: usize) -> Result<SimRow> {
    let d = c.scalar_code().min_distance_exhaustive(cfg.caps.budget)?.value;
    let pool = candidate_pool(c, &cfg.methods, &cfg.caps)?;
    let d_spec = cfg
        .s_values
        .iter()
        .map(|&s| Ok(optimize_over_pool(c, s, &pool, cfg.caps.budget)?.distance()))
        .collect::<Result<Vec<_>>>()?;
    let d_s = optimize_over_pool(c, 1, &pool, cfg.caps.budget)?.distance();
    let d_j = jensen_bound(c)?.distance();
    Ok(SimRow { ell, r, trial, k: c.dimension(), d, d_spec, d_j, d_s })
}

pub fn simulate(cfg: &SimConfig) -> Result<SimReport> {
    cfg.validate()?;
    let field = field_of_order(cfg.q)?;
    let items: Vec<(usize, usize, usize, usize)> = cfg
        .tuples()
        .into_iter()
        .enumerate()
        .flat_map(|(ti, (ell, r))| (0..cfg.trials).map(move |t| (ti, ell, r, t)))
        .collect();
    let rows = items
        .par_iter()
        .map(|&(ti, ell, r, t)| {
            let mut rng = stream(cfg.seed, ti as u64, t as u64);
            let c = random_code(&field, cfg.n, ell, r, &mut rng)?;
            if c.dimension() == 0 || c.dimension() == c.length() {
                return Ok(None);
            }
            evaluate(&c, cfg, ell, r, t).map(Some)
        })
        .collect::<Result<Vec<_>>>()?;
    let rows: Vec<SimRow> = rows.into_iter().flatten().collect();
    Ok(aggregate(cfg.clone(), items.len(), rows))
}

fn tally(c: &mut Counts, value: Distance, d: Distance, others: &[Distance]) {
    if value == d {
        c.sharp += 1;
    }
    if others.iter().all(|&o| value >= o) {
        c.best_performing += 1;
    }
}

/// Sharp: equal to the distance. Best-performing: at least every other
/// bound, where `d_J` and `d_S` are compared with `d_Spec` at the last `s`.
pub fn aggregate(config: SimConfig, drawn: usize, rows: Vec<SimRow>) -> SimReport {
    let mut spectral = vec![Counts::default(); config.s_values.len()];
    let (mut jensen, mut prior) = (Counts::default(), Counts::default());
    let mut violations = Vec::new();
    for row in &rows {
        let top = *row.d_spec.last().unwrap_or(&Infinite);
        for (i, &v) in row.d_spec.iter().enumerate() {
            tally(&mut spectral[i], v, row.d, &[row.d_j, row.d_s]);
        }
        tally(&mut jensen, row.d_j, row.d, &[top, row.d_s]);
        tally(&mut prior, row.d_s, row.d, &[top, row.d_j]);
        let named = config.s_values.iter().map(|s| format!("d_Spec({s})")).chain(["d_J".into(), "d_S".into()]);
        let values = row.d_spec.iter().chain([&row.d_j, &row.d_s]);
        for (name, &v) in named.zip(values) {
            if v > row.d {
                violations.push(format!("ell={} r={} trial={}: {name} = {v} exceeds d = {}", row.ell, row.r, row.trial, row.d));
            }
        }
    }
    SimReport { nontrivial: rows.len(), config, drawn, rows, spectral, jensen, prior, violations }
}

/// Columns: `ell,r,trial,k,d,d_spec_<s>…,d_j,d_s`.
pub fn to_csv(report: &SimReport) -> String {
    let mut out = String::from("ell,r,trial,k,d");
    for s in &report.config.s_values {
        out.push_str(&format!(",d_spec_{s}"));
    }
    out.push_str(",d_j,d_s\n");
    for row in &report.rows {
        out.push_str(&format!("{},{},{},{},{}", row.ell, row.r, row.trial, row.k, row.d));
        for v in &row.d_spec {
            out.push_str(&format!(",{v}"));
        }
        out.push_str(&format!(",{},{}\n", row.d_j, row.d_s));
    }
    out
}

pub fn summary_table(report: &SimReport) -> String {
    let mut head = String::from("                ");
    let mut sharp = String::from("sharp           ");
    let mut best = String::from("best-performing ");
    let cols = report
        .config
        .s_values
        .iter()
        .map(|s| format!("d_Spec,s={s}"))
        .zip(report.spectral.iter().copied())
        .chain([("d_J".to_string(), report.jensen), ("d_S".to_string(), report.prior)]);
    for (name, c) in cols {
        head.push_str(&format!("{name:>12}"));
        sharp.push_str(&format!("{:>12}", c.sharp));
        best.push_str(&format!("{:>12}", c.best_performing));
    }
    format!("{head}\n{sharp}\n{best}\nnontrivial codes: {} of {}\n", report.nontrivial, report.drawn)
}
