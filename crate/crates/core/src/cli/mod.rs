//! Command-line interface.

pub mod registry;
pub mod sim;

use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::bounds::{candidate_pool, jensen_bound, optimize_over_pool, BoundCertificate};
use crate::code::{ExtDistance, DEFAULT_BUDGET};
use crate::construct::{
    build_design, build_lrc_c1, build_lrc_c2, build_lrc_c3, consecutive_design, design_bound, extended_grs, Design,
    DesignSpec, GrsSpec, Lift, Lrc, TABLE2,
};
use crate::cyclic::{EngineCaps, Method};
use crate::error::{Error, Result};
use crate::lrc::lrc_report;
use crate::qc::{FieldSpec, QcSpec};

#[derive(Parser, Debug)]
#[command(name = "qcbound", version, about = "Minimum-distance bounds for quasi-cyclic codes")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Distance and bounds of a quasi-cyclic code given as JSON.
    Bound(BoundArgs),
    /// Compare the bounds on random quasi-cyclic codes.
    Simulate(SimArgs),
    /// Build a code from one of the explicit constructions.
    Construct {
        #[command(subcommand)]
        what: Construct,
    },
    /// Locality report of a quasi-cyclic code given as JSON.
    Lrc(LrcArgs),
    /// Run the reproduction checks.
    Examples(ExamplesArgs),
}

#[derive(Args, Debug)]
struct EngineArgs {
    /// Comma-separated engines among bch, ht, roos, subcode.
    #[arg(long, value_delimiter = ',', default_values_t = ["bch".to_string(), "ht".into(), "roos".into(), "subcode".into()])]
    engines: Vec<String>,
    /// Message budget for exhaustive enumeration.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
}

impl EngineArgs {
    fn methods(&self) -> Result<Vec<Method>> {
        self.engines
            .iter()
            .map(|e| match e.to_ascii_lowercase().as_str() {
                "bch" => Ok(Method::Bch),
                "ht" => Ok(Method::Ht),
                "roos" => Ok(Method::Roos),
                "subcode" => Ok(Method::Subcode),
                other => Err(Error::Malformed(format!("unknown engine {other}"))),
            })
            .collect()
    }

    fn caps(&self) -> EngineCaps {
        EngineCaps { budget: self.budget, ..EngineCaps::default() }
    }
}

#[derive(Args, Debug)]
struct BoundArgs {
    input: PathBuf,
    /// Largest number of spectral picks.
    #[arg(long, default_value_t = 3)]
    s: usize,
    /// Iterations of the randomized search when the code is too large.
    #[arg(long, default_value_t = 10_000)]
    iterations: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[command(flatten)]
    engines: EngineArgs,
    #[arg(long)]
    json: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SimArgs {
    #[arg(long, default_value_t = 2)]
    q: u64,
    #[arg(long, default_value_t = 3)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    ell_min: usize,
    #[arg(long, default_value_t = 4)]
    ell_max: usize,
    #[arg(long, default_value_t = 1)]
    r_min: usize,
    #[arg(long, default_value_t = 4)]
    r_max: usize,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_delimiter = ',', default_values_t = [2usize, 3, 4])]
    s: Vec<usize>,
    #[command(flatten)]
    engines: EngineArgs,
    /// Full report as JSON.
    #[arg(long)]
    out: Option<PathBuf>,
    /// One row per code as CSV.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Construct {
    /// Codes with a designed distance.
    Design(DesignArgs),
    /// Locally repairable codes from extended GRS constituents, `n | q−1`.
    LrcC1(LrcCArgs),
    /// Locally repairable codes from extended GRS constituents, `n | q+1`.
    LrcC2(LrcCArgs),
    /// Locally repairable codes with all but one constituent zero.
    LrcC3(LrcC3Args),
    /// Extended generalized Reed–Solomon code.
    Grs(GrsArgs),
}

#[derive(Args, Debug)]
struct DesignArgs {
    /// DesignSpec JSON file.
    #[arg(long, conflicts_with_all = ["table2", "table3", "n"])]
    spec: Option<PathBuf>,
    /// Row 1..12 of the consecutive-group table.
    #[arg(long, conflicts_with_all = ["table3", "n"])]
    table2: Option<usize>,
    /// Field order of the ℓ = 3, δ = 6 comparison table.
    #[arg(long, conflicts_with = "n")]
    table3: Option<u64>,
    #[arg(long)]
    q: Option<u64>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    ell: Option<usize>,
    /// Factor indices per group, groups separated by ';' and indices by ','.
    #[arg(long)]
    groups: Option<String>,
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    gammas: Vec<i64>,
    #[arg(long, value_enum, default_value = "monomial")]
    lift: LiftArg,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(clap::ValueEnum, Clone, Copy, Debug)]
enum LiftArg {
    Monomial,
    Reduced,
}

impl From<LiftArg> for Lift {
    fn from(l: LiftArg) -> Lift {
        match l {
            LiftArg::Monomial => Lift::Monomial,
            LiftArg::Reduced => Lift::Reduced,
        }
    }
}

#[derive(Args, Debug)]
struct LrcCArgs {
    #[arg(long)]
    q: u64,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    delta: usize,
    #[arg(long, default_value_t = 1)]
    a: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct LrcC3Args {
    #[arg(long)]
    q: u64,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    ell: usize,
    #[arg(long, default_value_t = -1, allow_negative_numbers = true)]
    gamma: i64,
    #[arg(long, value_enum, default_value = "monomial")]
    lift: LiftArg,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct GrsArgs {
    #[arg(long)]
    q: u64,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct LrcArgs {
    input: PathBuf,
    /// Known minimum distance, used by the dimension bound.
    #[arg(long)]
    d: Option<u32>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ExamplesArgs {
    /// A check name, or `all`.
    #[arg(default_value = "all")]
    name: String,
    #[arg(long)]
    list: bool,
}

/// Runs the command line and returns the process exit code: 0 on success,
/// 1 on bad input, 2 when a check fails or a bound exceeds the distance.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let res = match cli.cmd {
        Command::Bound(a) => bound(a),
        Command::Simulate(a) => simulate(a),
        Command::Construct { what } => construct(what),
        Command::Lrc(a) => lrc(a),
        Command::Examples(a) => examples(a),
    };
    match res {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Verification(_) => 2,
                _ => 1,
            }
        }
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Error::Malformed(format!("{}: {e}", p.display()))),
        None => {
            println!("{}", text.trim_end());
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn witness(c: &BoundCertificate) -> String {
    let parts: Vec<String> = c.picks.iter().map(|p| format!("{:?}:{}", p.set.exponents, p.d_l)).collect();
    parts.join(" ")
}

fn show(d: &ExtDistance) -> String {
    if d.is_exact() {
        d.value.to_string()
    } else {
        format!("{} (heuristic)", d.value)
    }
}

fn bound(a: BoundArgs) -> Result<i32> {
    let spec: QcSpec = read_json(&a.input)?;
    let c = spec.build()?;
    let methods = a.engines.methods()?;
    let caps = a.engines.caps();
    let d = match c.scalar_code().min_distance_exhaustive(caps.budget) {
        Ok(d) => d,
        Err(Error::BudgetExceeded { .. }) => c.scalar_code().min_distance_heuristic(a.iterations, a.seed),
        Err(e) => return Err(e),
    };
    let pool = candidate_pool(&c, &methods, &caps)?;
    let spectral = (1..=a.s.max(1)).map(|s| optimize_over_pool(&c, s, &pool, caps.budget)).collect::<Result<Vec<_>>>()?;
    let jensen = jensen_bound(&c)?;
    let prior = &spectral[0];
    let mut violations = Vec::new();
    if d.is_exact() {
        for (name, cert) in spectral.iter().enumerate().map(|(i, s)| (format!("d_Spec({})", i + 1), s)).chain([("d_J".into(), &jensen)]) {
            if cert.distance() > d.value {
                violations.push(format!("{name} = {} exceeds d = {}", cert.distance(), d.value));
            }
        }
    }
    let text = if a.json {
        to_json(&json!({
            "n": c.n(), "ell": c.ell(), "k": c.dimension(), "d": d,
            "d_s": prior, "d_j": jensen, "d_spec": spectral, "violations": violations,
        }))
    } else {
        let mut t = format!("n = {}, ell = {}, k = {}, d = {}\n", c.n(), c.ell(), c.dimension(), show(&d));
        t.push_str(&format!("d_S          {:>6}  {}\n", prior.distance().to_string(), witness(prior)));
        t.push_str(&format!("d_J          {:>6}\n", jensen.distance().to_string()));
        for (i, s) in spectral.iter().enumerate() {
            t.push_str(&format!("{:<12} {:>6}  {}\n", format!("d_Spec({})", i + 1), s.distance().to_string(), witness(s)));
        }
        for v in &violations {
            t.push_str(&format!("violation: {v}\n"));
        }
        t
    };
    emit(&text, &a.out)?;
    Ok(if violations.is_empty() { 0 } else { 2 })
}

fn simulate(a: SimArgs) -> Result<i32> {
    let cfg = sim::SimConfig {
        q: a.q,
        n: a.n,
        ell_min: a.ell_min,
        ell_max: a.ell_max,
        r_min: a.r_min,
        r_max: a.r_max,
        trials: a.trials,
        seed: a.seed,
        s_values: a.s,
        methods: a.engines.methods()?,
        caps: a.engines.caps(),
    };
    let rep = sim::simulate(&cfg)?;
    print!("{}", sim::summary_table(&rep));
    for v in &rep.violations {
        println!("violation: {v}");
    }
    if let Some(p) = &a.out {
        emit(&to_json(&rep), &Some(p.clone()))?;
    }
    if let Some(p) = &a.csv {
        emit(&sim::to_csv(&rep), &Some(p.clone()))?;
    }
    Ok(if rep.violations.is_empty() { 0 } else { 2 })
}

fn parse_groups(s: &str) -> Result<Vec<Vec<usize>>> {
    s.split(';')
        .map(|g| {
            g.split(',')
                .filter(|t| !t.trim().is_empty())
                .map(|t| t.trim().parse().map_err(|_| Error::Malformed(format!("bad factor index {t}"))))
                .collect()
        })
        .collect()
}

fn design_output(d: &Design) -> Result<String> {
    let picks = d.group_picks();
    let bound = design_bound(d, &picks)?;
    Ok(to_json(&json!({
        "code": QcSpec::from_code(&d.code),
        "k": d.code.dimension(),
        "certificate": {
            "designed_distance": bound,
            "picks": picks,
            "g": d.g.to_indices(),
            "h": d.h.iter().map(|h| h.to_indices()).collect::<Vec<_>>(),
        },
    })))
}

fn lrc_output(l: &Lrc) -> String {
    to_json(&json!({
        "code": QcSpec::from_code(&l.code),
        "length": l.length, "dimension": l.dimension, "distance": l.distance,
        "locality": l.locality,
        "g": l.g.as_ref().map(|p| p.to_indices()),
        "h": l.h.as_ref().map(|p| p.to_indices()),
    }))
}

fn construct(what: Construct) -> Result<i32> {
    match what {
        Construct::Design(a) => {
            let d = if let Some(p) = &a.spec {
                build_design(&read_json::<DesignSpec>(p)?)?
            } else if let Some(row) = a.table2 {
                let r = TABLE2.get(row.wrapping_sub(1)).ok_or_else(|| Error::InvalidParameters(format!("no row {row}")))?;
                consecutive_design(a.q.unwrap_or(r.q), r.ell, r.delta)?
            } else if let Some(q) = a.table3 {
                consecutive_design(q, 3, 6)?
            } else {
                let missing = || Error::InvalidParameters("need --spec, --table2, --table3 or --q/--n/--ell/--groups".into());
                let spec = DesignSpec {
                    q: FieldSpec::Order(a.q.ok_or_else(missing)?),
                    n: a.n.ok_or_else(missing)?,
                    ell: a.ell.ok_or_else(missing)?,
                    groups: parse_groups(a.groups.as_deref().ok_or_else(missing)?)?,
                    gammas: a.gammas.clone(),
                    lift: a.lift.into(),
                };
                build_design(&spec)?
            };
            emit(&design_output(&d)?, &a.out)?;
        }
        Construct::LrcC1(a) => emit(&lrc_output(&build_lrc_c1(a.q, a.n, a.delta, a.a)?), &a.out)?,
        Construct::LrcC2(a) => emit(&lrc_output(&build_lrc_c2(a.q, a.n, a.delta, a.a)?), &a.out)?,
        Construct::LrcC3(a) => emit(&lrc_output(&build_lrc_c3(a.q, a.n, a.ell, a.gamma, a.lift.into())?), &a.out)?,
        Construct::Grs(a) => {
            let c = extended_grs(&GrsSpec { q: FieldSpec::Order(a.q), k: a.k, points: None, multipliers: None })?;
            let rows: Vec<Vec<u32>> = c.generator_indices();
            emit(&to_json(&json!({ "q": a.q, "length": c.length(), "dimension": c.dimension(), "generator": rows })), &a.out)?;
        }
    }
    Ok(0)
}

fn lrc(a: LrcArgs) -> Result<i32> {
    let spec: QcSpec = read_json(&a.input)?;
    let rep = lrc_report(&spec.build()?, a.d)?;
    emit(&to_json(&rep), &a.out)?;
    Ok(0)
}

fn examples(a: ExamplesArgs) -> Result<i32> {
    let checks = registry::registry();
    if a.list {
        for c in &checks {
            println!("{}", c.name);
        }
        return Ok(0);
    }
    let selected: Vec<_> = checks.iter().filter(|c| a.name == "all" || c.name == a.name).collect();
    if selected.is_empty() {
        return Err(Error::InvalidParameters(format!("unknown example {}", a.name)));
    }
    let mut failed = 0;
    for c in selected {
        match c.run() {
            Ok(msg) => println!("PASS {}: {msg}", c.name),
            Err(msg) => {
                failed += 1;
                println!("FAIL {}: {msg}", c.name);
            }
        }
    }
    Ok(if failed == 0 { 0 } else { 2 })
}
