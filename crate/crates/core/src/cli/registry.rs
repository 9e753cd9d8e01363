//! Named reproduction checks for the worked examples and tables.

use std::time::Instant;

use crate::bounds::{improved_spectral, jensen_bound, optimize_spectral, prior_spectral};
use crate::code::{Distance, Finite, DEFAULT_BUDGET};
use crate::construct::{
    bch_dimension, build_design, build_lrc_c1, build_lrc_c2, build_lrc_c3, consecutive_design, design_bound, group_sizes,
    DesignSpec, Lift, TABLE2,
};
use crate::cyclic::{DefiningSetBound, EngineCaps, Method, ZeroSet, ALL_METHODS};
use crate::lrc::lrc_report;
use crate::poly::Poly;
use crate::qc::{FieldSpec, QcCode, QcSpec};

use super::sim::{simulate, SimConfig};

type Outcome = std::result::Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn spec(q: u64, n: usize, ell: usize, gens: &[&[&[i64]]]) -> QcSpec {
    QcSpec { q: FieldSpec::Order(q), n, ell, generators: gens.iter().map(|g| g.iter().map(|p| p.to_vec()).collect()).collect() }
}

/// Inputs of the three worked bound examples.
pub fn example_spec(name: &str) -> Option<QcSpec> {
    Some(match name {
        "example-9-2-6" => spec(2, 3, 3, &[&[&[0, 1, 1], &[1, 1], &[1, 0, 1]]]),
        "example-12-3-4" => spec(2, 3, 4, &[&[&[1, 0, 1], &[1, 1, 1], &[1, 0, 1], &[1, 1, 1]]]),
        "example-8-6-2" => spec(3, 4, 2, &[&[&[2, 1, 2, 1], &[1, 2, 1]], &[&[0, 1, 2], &[1, 1, 1, 1]]]),
        _ => return None,
    })
}

fn build(name: &str) -> Result<QcCode, String> {
    example_spec(name).unwrap().build().map_err(|e| e.to_string())
}

fn exact(c: &QcCode) -> Result<Distance, String> {
    Ok(c.scalar_code().min_distance_exhaustive(DEFAULT_BUDGET).map_err(|e| e.to_string())?.value)
}

fn spectral(c: &QcCode, s: usize) -> Result<Distance, String> {
    Ok(optimize_spectral(c, s, &ALL_METHODS, &EngineCaps::default()).map_err(|e| e.to_string())?.distance())
}

fn prior(c: &QcCode) -> Result<Distance, String> {
    Ok(prior_spectral(c, &ALL_METHODS, &EngineCaps::default()).map_err(|e| e.to_string())?.distance())
}

fn jensen(c: &QcCode) -> Result<Distance, String> {
    Ok(jensen_bound(c).map_err(|e| e.to_string())?.distance())
}

fn example_9_2_6() -> Outcome {
    let t = Instant::now();
    let c = build("example-9-2-6")?;
    let (d, sp, ds) = (exact(&c)?, spectral(&c, 2)?, prior(&c)?);
    ensure!((c.length(), c.dimension()) == (9, 2), "parameters [{}, {}]", c.length(), c.dimension());
    ensure!(d == Finite(6) && sp == Finite(6) && ds == Finite(3), "d = {d}, d_Spec(2) = {sp}, d_S = {ds}");
    let secs = t.elapsed().as_secs_f64();
    ensure!(secs < 5.0, "took {secs:.2} s");
    Ok(format!("[9,2,6]_2: d_Spec(2) = 6, d_S = 3 in {secs:.3} s"))
}

fn example_12_3_4() -> Outcome {
    let c = build("example-12-3-4")?;
    let (d, sp, dj, ds) = (exact(&c)?, spectral(&c, 3)?, jensen(&c)?, prior(&c)?);
    ensure!(c.dimension() == 3, "k = {}", c.dimension());
    ensure!(d == Finite(4) && sp == Finite(4) && dj == Finite(2) && ds == Finite(2), "d = {d}, d_Spec(3) = {sp}, d_J = {dj}, d_S = {ds}");
    Ok("[12,3,4]_2: d_Spec(3) = 4, d_J = d_S = 2".into())
}

fn example_8_6_2() -> Outcome {
    let c = build("example-8-6-2")?;
    let (d, sp, dj, ds) = (exact(&c)?, spectral(&c, 2)?, jensen(&c)?, prior(&c)?);
    ensure!(c.dimension() == 6, "k = {}", c.dimension());
    ensure!(d == Finite(2) && sp == Finite(2) && dj == Finite(1) && ds == Finite(1), "d = {d}, d_Spec(2) = {sp}, d_J = {dj}, d_S = {ds}");
    let f = c.field();
    let diag = c.lally().diagonal();
    ensure!(diag == [Poly::from_ints(f, &[2, 1]), Poly::from_ints(f, &[1, 1])], "diagonal {diag:?}");
    let e = c.eigenvalues().map_err(|e| e.to_string())?;
    // α^0 = 1 and α^2 = −1 = 2 for a primitive 4th root α in GF(9)
    ensure!(e.exponents == [0, 2], "eigenvalue exponents {:?}", e.exponents);
    Ok("[8,6,2]_3: d_Spec(2) = 2, d_J = d_S = 1, E = {1, 2}".into())
}

fn qc_designed() -> Outcome {
    let spec = DesignSpec { q: FieldSpec::Order(3), n: 5, ell: 2, groups: vec![vec![0], vec![1]], gammas: vec![-1], lift: Lift::Monomial };
    let d = build_design(&spec).map_err(|e| e.to_string())?;
    let f = &d.field;
    ensure!(d.h[0] == Poly::from_ints(f, &[1, 1, 1, 1, 1, -1]), "h = {}", d.h[0]);
    let c = &d.code;
    let dist = exact(c)?;
    ensure!((c.length(), c.dimension(), dist) == (10, 5, Finite(4)), "[{}, {}, {dist}]", c.length(), c.dimension());
    let picks = [
        DefiningSetBound { set: ZeroSet::new(5, [1, 2, 3]), d: Finite(4), method: Method::Bch },
        DefiningSetBound { set: ZeroSet::new(5, [0]), d: Finite(2), method: Method::Bch },
    ];
    let b = design_bound(&d, &picks).map_err(|e| e.to_string())?.value;
    ensure!(b == Finite(4), "design bound {b}");
    let dj = jensen(c)?;
    ensure!(dj == Finite(2), "d_J = {dj}");
    let cons = c.constituents().map_err(|e| e.to_string())?;
    let e = &cons[1].field;
    ensure!(cons[0].field.order() == 3 && cons[0].code.generator() == [vec![f.one(), f.one()]], "first constituent");
    ensure!(e.order() == 81 && cons[1].code.generator() == [vec![e.one(), e.neg(e.one())]], "second constituent");
    Ok("[10,5,4]_3 with h = -x^5+x^4+x^3+x^2+x+1, design bound 4, d_J = 2".into())
}

fn qc_local() -> Outcome {
    let l = build_lrc_c3(5, 4, 3, -1, Lift::Monomial).map_err(|e| e.to_string())?;
    let f = l.code.field();
    ensure!(l.h.as_ref() == Some(&Poly::monomial(f, f.one(), 4)), "h = {:?}", l.h);
    let d = exact(&l.code)?;
    ensure!((l.code.length(), l.code.dimension(), d) == (12, 2, Finite(8)), "[{}, {}, {d}]", l.code.length(), l.code.dimension());
    let r = lrc_report(&l.code, Some(8)).map_err(|e| e.to_string())?;
    ensure!((r.rho, r.delta) == (1, 4), "locality ({}, {})", r.rho, r.delta);
    ensure!((r.bound_1, r.bound_2) == (8, 8), "bounds {} and {}", r.bound_1, r.bound_2);
    Ok("[12,2,8]_5 with h = x^4, (1,4)-locality, both bounds 8".into())
}

fn table2_row(row: usize, q: Option<u64>) -> Outcome {
    let r = TABLE2[row];
    let q = q.unwrap_or(r.q);
    let d = consecutive_design(q, r.ell, r.delta).map_err(|e| e.to_string())?;
    let c = &d.code;
    let n = q as usize - 1;
    let sum: usize = group_sizes(r.ell, r.delta).iter().sum();
    ensure!(c.length() == r.ell * n && c.dimension() == r.ell * n - sum, "[{}, {}]", c.length(), c.dimension());
    let picks = d.group_picks();
    let bound = design_bound(&d, &picks).map_err(|e| e.to_string())?.value;
    ensure!(bound == Finite(r.delta), "design bound {bound}, expected {}", r.delta);
    let isb = improved_spectral(c, &picks).map_err(|e| e.to_string())?.distance();
    ensure!(isb == bound, "improved spectral {isb} differs from design bound {bound}");
    let defect = c.length() - c.dimension() + 1 - r.delta as usize;
    ensure!(defect <= r.defect as usize, "defect {defect}");
    let dj = jensen(c)?;
    ensure!(isb >= dj, "improved spectral {isb} below d_J = {dj}");
    let exact_note = match c.scalar_code().min_distance_exhaustive(DEFAULT_BUDGET) {
        Ok(x) => {
            ensure!(x.value >= bound, "exact distance {} below the bound", x.value);
            format!(", exact d = {}", x.value)
        }
        Err(_) => ", bound only".into(),
    };
    Ok(format!("q = {q}: [{}, {}, >= {bound}], defect {defect}, d_J = {dj}{exact_note}", c.length(), c.dimension()))
}

fn table3(q: u64, bch: usize, qc: usize) -> Outcome {
    let n = 3 * (q as usize - 1);
    let b = bch_dimension(q, n, 6);
    ensure!(b == bch, "BCH dimension {b}");
    let d = consecutive_design(q, 3, 6).map_err(|e| e.to_string())?;
    ensure!(d.code.dimension() == qc, "QC dimension {}", d.code.dimension());
    let bound = design_bound(&d, &d.group_picks()).map_err(|e| e.to_string())?.value;
    ensure!(bound == Finite(6), "design bound {bound}");
    let up = d.code.scalar_code().min_distance_heuristic_until(10_000, 1, 6).value;
    ensure!(up == Finite(6), "lightest codeword found has weight {up}");
    Ok(format!("length {n}: BCH dim {b}, QC dim {qc}, d = 6"))
}

fn lrc_c1_desk() -> Outcome {
    let l = build_lrc_c1(4, 3, 2, 1).map_err(|e| e.to_string())?;
    let d = exact(&l.code)?;
    ensure!((l.code.length(), l.code.dimension(), d) == (15, 9, Finite(3)), "[{}, {}, {d}]", l.code.length(), l.code.dimension());
    let r = lrc_report(&l.code, Some(3)).map_err(|e| e.to_string())?;
    ensure!((r.bound_1, r.bound_2) == (3, 3), "bounds {} and {}", r.bound_1, r.bound_2);
    let dj = jensen(&l.code)?;
    ensure!(dj == Finite(3), "d_J = {dj}");
    Ok("[15,9,3]_4 with (2,2)-locality, both bounds 3".into())
}

fn lrc_c2_desk() -> Outcome {
    let l = build_lrc_c2(4, 5, 3, 1).map_err(|e| e.to_string())?;
    let c = &l.code;
    ensure!((c.length(), c.dimension()) == (25, 13), "[{}, {}]", c.length(), c.dimension());
    let dj = jensen(c)?;
    let up = c.scalar_code().min_distance_heuristic_until(2_000, 1, 5).value;
    ensure!(dj == Finite(5) && up == Finite(5), "d_J = {dj}, lightest word {up}");
    let r = lrc_report(c, Some(5)).map_err(|e| e.to_string())?;
    ensure!((r.bound_1, r.bound_2) == (5, 5), "bounds {} and {}", r.bound_1, r.bound_2);
    Ok("[25,13,5]_4 with (3,3)-locality, both bounds 5".into())
}

fn simulation(q: u64, n: usize, trials: usize, need: usize) -> Outcome {
    let cfg = SimConfig {
        q,
        n,
        ell_min: 2,
        ell_max: 4,
        r_min: 1,
        r_max: 4,
        trials,
        seed: 2024,
        s_values: vec![2, 3, 4],
        methods: ALL_METHODS.to_vec(),
        caps: EngineCaps::default(),
    };
    let rep = simulate(&cfg).map_err(|e| e.to_string())?;
    ensure!(rep.violations.is_empty(), "{}", rep.violations.join("; "));
    ensure!(rep.nontrivial >= need, "only {} nontrivial codes", rep.nontrivial);
    for row in &rep.rows {
        ensure!(row.d_spec.windows(2).all(|w| w[0] <= w[1]), "d_Spec not monotone in s");
        ensure!(row.d_s <= row.d_spec[0], "d_S above d_Spec");
    }
    ensure!(rep.spectral[1].sharp >= rep.jensen.sharp, "sharp d_Spec(3) = {} < sharp d_J = {}", rep.spectral[1].sharp, rep.jensen.sharp);
    Ok(format!(
        "{} nontrivial codes, sharp: d_Spec(3) {} vs d_J {} vs d_S {}",
        rep.nontrivial, rep.spectral[1].sharp, rep.jensen.sharp, rep.prior.sharp
    ))
}

pub struct Check {
    pub name: String,
    run: Box<dyn Fn() -> Outcome + Send + Sync>,
}

impl Check {
    fn new(name: impl Into<String>, run: impl Fn() -> Outcome + Send + Sync + 'static) -> Check {
        Check { name: name.into(), run: Box::new(run) }
    }

    pub fn run(&self) -> Outcome {
        (self.run)()
    }
}

pub fn registry() -> Vec<Check> {
    let mut v = vec![
        Check::new("example-9-2-6", example_9_2_6),
        Check::new("example-12-3-4", example_12_3_4),
        Check::new("example-8-6-2", example_8_6_2),
        Check::new("qc-designed", qc_designed),
        Check::new("qc-local", qc_local),
    ];
    for row in 0..TABLE2.len() {
        v.push(Check::new(format!("table2-row{}", row + 1), move || table2_row(row, None)));
    }
    // rows whose listed least q is above the least admissible one
    v.push(Check::new("table2-row4-q8", || table2_row(3, Some(8))));
    v.push(Check::new("table2-row9-q8", || table2_row(8, Some(8))));
    v.push(Check::new("table3-q11", || table3(11, 21, 22)));
    v.push(Check::new("table3-q13", || table3(13, 23, 28)));
    v.push(Check::new("lrc-c1-desk", lrc_c1_desk));
    v.push(Check::new("lrc-c2-desk", lrc_c2_desk));
    v.push(Check::new("simulation-binary", || simulation(2, 3, 30, 200)));
    v.push(Check::new("simulation-ternary", || simulation(3, 4, 12, 80)));
    v
}
