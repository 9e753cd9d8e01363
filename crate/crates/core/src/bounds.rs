//! Lower bounds on the minimum distance of quasi-cyclic codes: the Jensen
//! bound from the concatenated structure, and spectral bounds from
//! eigenvalues and eigencodes.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::code::{Distance, ExtDistance, Finite, Infinite, LinearCode, DEFAULT_BUDGET};
use crate::cyclic::{all_bounds, cyclic_distance, DefiningSetBound, EngineCaps, Method, ZeroSet};
use crate::error::{Error, Result};
use crate::qc::QcCode;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    Jensen,
    Spectral,
    ImprovedSpectral,
}

/// One pick `(L_j, d_{L_j})` of a spectral bound and what it contributed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralStep {
    #[serde(rename = "L")]
    pub set: ZeroSet,
    pub d_l: Distance,
    pub method: Method,
    /// Dimension of the eigencode of `⋂_{β ∈ L_j} V_β`.
    pub eigencode_dim: usize,
    /// `d_{L_j} · d(ℂ_1 ∩ … ∩ ℂ_{j−1})`.
    pub term: Distance,
    /// Dimension and distance of `ℂ_1 ∩ … ∩ ℂ_j`.
    pub intersection_dim: usize,
    pub intersection_d: ExtDistance,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JensenStep {
    pub factor_index: usize,
    pub factor_degree: usize,
    pub constituent_dim: usize,
    pub constituent_d: ExtDistance,
    /// Distance of `⟨θ_{i_1}⟩ ⊕ … ⊕ ⟨θ_{i_z}⟩`.
    pub partial_sum_d: ExtDistance,
    pub term: Distance,
}

/// A bound value and the data that justify it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundCertificate {
    pub kind: BoundKind,
    pub value: ExtDistance,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub picks: Vec<SpectralStep>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub constituents: Vec<JensenStep>,
    /// Number of tuples evaluated by the optimizer.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tuples_evaluated: Option<u64>,
}

impl BoundCertificate {
    pub fn distance(&self) -> Distance {
        self.value.value
    }
}

/// A valid lower bound on the distance of a code: exact when the message
/// space fits the budget, 1 otherwise.
pub fn distance_lower_bound(c: &LinearCode, budget: u64) -> ExtDistance {
    if c.is_zero() {
        return ExtDistance::exact(Infinite);
    }
    c.min_distance_exhaustive(budget).unwrap_or(ExtDistance::lower(Finite(1)))
}

fn jensen_order(c: &QcCode, reverse_ties: bool, budget: u64) -> Result<ExtDistance> {
    Ok(jensen_impl(c, reverse_ties, budget)?.value)
}

fn jensen_impl(c: &QcCode, reverse_ties: bool, budget: u64) -> Result<BoundCertificate> {
    let cons = c.constituents()?;
    let mut nz: Vec<(ExtDistance, usize)> = cons
        .iter()
        .filter(|k| !k.code.is_zero())
        .map(|k| (distance_lower_bound(&k.code, budget), k.index))
        .collect();
    nz.sort_by(|a, b| {
        a.0.value.cmp(&b.0.value).then(if reverse_ties { b.1.cmp(&a.1) } else { a.1.cmp(&b.1) })
    });
    let fz = c.factorization();
    let mut steps = Vec::new();
    let mut value = Infinite;
    let mut used: Vec<usize> = Vec::new();
    for (d, idx) in nz {
        used.push(idx);
        // check polynomial ∏ f_i: zeros are the roots of all other factors
        let zeros = ZeroSet::new(
            c.n(),
            (0..fz.cosets.len()).filter(|i| !used.contains(i)).flat_map(|i| fz.cosets[i].iter().copied()),
        );
        let ps = cyclic_distance(c.field(), &zeros, budget)?;
        let term = d.value.times(ps.value);
        value = value.min(term);
        steps.push(JensenStep {
            factor_index: idx,
            factor_degree: cons[idx].degree(),
            constituent_dim: cons[idx].code.dimension(),
            constituent_d: d,
            partial_sum_d: ps,
            term,
        });
    }
    Ok(BoundCertificate {
        kind: BoundKind::Jensen,
        value: ExtDistance::lower(value),
        picks: Vec::new(),
        constituents: steps,
        tuples_evaluated: None,
    })
}

/// `d_J = min_z d(𝒞_{i_z})·d(⟨θ_{i_1}⟩ ⊕ … ⊕ ⟨θ_{i_z}⟩)` over the nonzero
/// constituents sorted by distance.
pub fn jensen_bound(c: &QcCode) -> Result<BoundCertificate> {
    jensen_impl(c, false, DEFAULT_BUDGET)
}

/// Jensen bound with equal-distance constituents taken in reverse order.
pub fn jensen_bound_reversed_ties(c: &QcCode) -> Result<ExtDistance> {
    jensen_order(c, true, DEFAULT_BUDGET)
}

pub(crate) fn pick_order(a: &DefiningSetBound, b: &DefiningSetBound) -> std::cmp::Ordering {
    b.d.cmp(&a.d)
        .then(a.set.len().cmp(&b.set.len()))
        .then(a.set.exponents.cmp(&b.set.exponents))
}

/// Evaluates `min{d_{L_1}, d_{L_2}·d(ℂ_1), …, d(ℂ_1 ∩ … ∩ ℂ_s)}` for the
/// given picks, taken in descending order of `d_L`.
pub fn improved_spectral(c: &QcCode, picks: &[DefiningSetBound]) -> Result<BoundCertificate> {
    improved_spectral_with_budget(c, picks, DEFAULT_BUDGET)
}

pub fn improved_spectral_with_budget(c: &QcCode, picks: &[DefiningSetBound], budget: u64) -> Result<BoundCertificate> {
    if picks.is_empty() {
        return Err(Error::InvalidParameters("at least one pick is required".into()));
    }
    let mut sorted = picks.to_vec();
    sorted.sort_by(pick_order);
    let mut inter = LinearCode::full(c.field(), c.ell());
    let mut inter_d = ExtDistance::exact(Finite(1));
    let mut value = Infinite;
    let mut steps = Vec::new();
    for p in &sorted {
        let (_, code) = c.common_eigenspace(&p.set)?;
        let term = p.d.times(inter_d.value);
        value = value.min(term);
        inter = inter.intersect(&code)?;
        inter_d = distance_lower_bound(&inter, budget);
        steps.push(SpectralStep {
            set: p.set.clone(),
            d_l: p.d,
            method: p.method,
            eigencode_dim: code.dimension(),
            term,
            intersection_dim: inter.dimension(),
            intersection_d: inter_d,
        });
    }
    value = value.min(inter_d.value);
    let kind = if sorted.len() == 1 { BoundKind::Spectral } else { BoundKind::ImprovedSpectral };
    Ok(BoundCertificate { kind, value: ExtDistance::lower(value), picks: steps, constituents: Vec::new(), tuples_evaluated: None })
}

/// Candidate pool `D̂` over the eigenvalue set, in pick order.
pub fn candidate_pool(c: &QcCode, methods: &[Method], caps: &EngineCaps) -> Result<Vec<DefiningSetBound>> {
    let e = c.eigenvalues()?;
    if e.is_empty() {
        return Ok(Vec::new());
    }
    let mut pool = all_bounds(c.field(), &e, methods, caps)?;
    pool.sort_by(pick_order);
    Ok(pool)
}

struct Search<'a> {
    code: &'a QcCode,
    pool: &'a [DefiningSetBound],
    eigencodes: Vec<Option<LinearCode>>,
    inter: HashMap<Vec<usize>, (LinearCode, Distance)>,
    budget: u64,
    s: usize,
    best: Distance,
    best_tuple: Vec<usize>,
    evaluated: u64,
}

impl Search<'_> {
    fn eigencode(&mut self, i: usize) -> Result<LinearCode> {
        if let Some(c) = &self.eigencodes[i] {
            return Ok(c.clone());
        }
        let (_, code) = self.code.common_eigenspace(&self.pool[i].set)?;
        self.eigencodes[i] = Some(code.clone());
        Ok(code)
    }

    fn intersection(&mut self, tuple: &[usize]) -> Result<(LinearCode, Distance)> {
        if let Some(x) = self.inter.get(tuple) {
            return Ok(x.clone());
        }
        let last = *tuple.last().expect("nonempty");
        let prev = if tuple.len() == 1 {
            LinearCode::full(self.code.field(), self.code.ell())
        } else {
            self.intersection(&tuple[..tuple.len() - 1])?.0
        };
        let code = prev.intersect(&self.eigencode(last)?)?;
        let d = distance_lower_bound(&code, self.budget).value;
        self.inter.insert(tuple.to_vec(), (code.clone(), d));
        Ok((code, d))
    }

    /// `prefix_min` is the minimum of the terms `d_{L_j}·d(∩_{i<j} ℂ_i)` so far;
    /// `prev_d` is `d(∩ ℂ_i)` over the whole prefix.
    fn dfs(&mut self, tuple: &mut Vec<usize>, prefix_min: Distance, prev_d: Distance) -> Result<()> {
        if tuple.len() == self.s {
            return Ok(());
        }
        let start = tuple.last().map_or(0, |&i| i + 1);
        for i in start..self.pool.len() {
            let term = self.pool[i].d.times(prev_d);
            let pm = prefix_min.min(term);
            // picks are sorted by d_L, so later ones give no larger term
            if pm <= self.best {
                break;
            }
            tuple.push(i);
            let (_, d) = self.intersection(tuple)?;
            self.evaluated += 1;
            let v = pm.min(d);
            if v > self.best {
                self.best = v;
                self.best_tuple = tuple.clone();
            }
            self.dfs(tuple, pm, d)?;
            tuple.pop();
        }
        Ok(())
    }
}

/// `d_Spec(D̂, s)`: the best improved spectral bound over at most `s` distinct
/// picks from the pool built by the given engines.
pub fn optimize_spectral(c: &QcCode, s: usize, methods: &[Method], caps: &EngineCaps) -> Result<BoundCertificate> {
    if s == 0 {
        return Err(Error::InvalidParameters("s must be at least 1".into()));
    }
    let pool = candidate_pool(c, methods, caps)?;
    optimize_over_pool(c, s, &pool, caps.budget)
}

pub fn optimize_over_pool(c: &QcCode, s: usize, pool: &[DefiningSetBound], budget: u64) -> Result<BoundCertificate> {
    let kind = if s == 1 { BoundKind::Spectral } else { BoundKind::ImprovedSpectral };
    if pool.is_empty() {
        return Ok(BoundCertificate {
            kind,
            value: ExtDistance::lower(Finite(1)),
            picks: Vec::new(),
            constituents: Vec::new(),
            tuples_evaluated: Some(0),
        });
    }
    let mut search = Search {
        code: c,
        pool,
        eigencodes: vec![None; pool.len()],
        inter: HashMap::new(),
        budget,
        s,
        best: Finite(0),
        best_tuple: Vec::new(),
        evaluated: 0,
    };
    search.dfs(&mut Vec::new(), Infinite, Finite(1))?;
    let picks: Vec<DefiningSetBound> = search.best_tuple.iter().map(|&i| pool[i].clone()).collect();
    let evaluated = search.evaluated;
    let mut cert = improved_spectral_with_budget(c, &picks, budget)?;
    cert.kind = kind;
    cert.tuples_evaluated = Some(evaluated);
    Ok(cert)
}

/// The spectral bound with a single pick, `max_L min{d_L, d(ℂ_L)}`.
pub fn prior_spectral(c: &QcCode, methods: &[Method], caps: &EngineCaps) -> Result<BoundCertificate> {
    optimize_spectral(c, 1, methods, caps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclic::ALL_METHODS;
    use crate::qc::{FieldSpec, QcSpec};

    fn build(q: u64, n: usize, ell: usize, gens: &[&[&[i64]]]) -> QcCode {
        QcSpec {
            q: FieldSpec::Order(q),
            n,
            ell,
            generators: gens.iter().map(|g| g.iter().map(|p| p.to_vec()).collect()).collect(),
        }
        .build()
        .unwrap()
    }

    fn spec(c: &QcCode, s: usize) -> Distance {
        optimize_spectral(c, s, &ALL_METHODS, &EngineCaps::default()).unwrap().distance()
    }

    #[test]
    fn worked_examples() {
        let caps = EngineCaps::default();
        let c = build(2, 3, 3, &[&[&[0, 1, 1], &[1, 1], &[1, 0, 1]]]);
        assert_eq!(spec(&c, 2), Finite(6));
        assert_eq!(prior_spectral(&c, &ALL_METHODS, &caps).unwrap().distance(), Finite(3));
        let c = build(2, 3, 4, &[&[&[1, 0, 1], &[1, 1, 1], &[1, 0, 1], &[1, 1, 1]]]);
        assert_eq!(spec(&c, 3), Finite(4));
        assert_eq!(prior_spectral(&c, &ALL_METHODS, &caps).unwrap().distance(), Finite(2));
        assert_eq!(jensen_bound(&c).unwrap().distance(), Finite(2));
        let c = build(3, 4, 2, &[&[&[2, 1, 2, 1], &[1, 2, 1]], &[&[0, 1, 2], &[1, 1, 1, 1]]]);
        assert_eq!(spec(&c, 2), Finite(2));
        assert_eq!(prior_spectral(&c, &ALL_METHODS, &caps).unwrap().distance(), Finite(1));
        assert_eq!(jensen_bound(&c).unwrap().distance(), Finite(1));
    }

    #[test]
    fn degenerate() {
        let full = build(2, 3, 2, &[&[&[1], &[0]], &[&[0], &[1]]]);
        assert_eq!(spec(&full, 2), Finite(1));
        let zero = build(2, 3, 2, &[]);
        assert_eq!(jensen_bound(&zero).unwrap().distance(), Infinite);
        assert!(improved_spectral(&full, &[]).is_err());
    }

    #[test]
    fn single_pick_with_trivial_eigencode() {
        // all of Δ as L: the eigenspace intersection of a rank-deficient
        // code may still be nonzero; with (x^3 − 1)·I it is everything
        let zero = build(2, 3, 2, &[]);
        let pick = DefiningSetBound { set: ZeroSet::all(3), d: Infinite, method: Method::Bch };
        let cert = improved_spectral(&zero, &[pick]).unwrap();
        assert_eq!(cert.distance(), Infinite);
        let c = build(2, 3, 3, &[&[&[0, 1, 1], &[1, 1], &[1, 0, 1]]]);
        let pick = DefiningSetBound { set: ZeroSet::new(3, [1, 2]), d: Finite(3), method: Method::Bch };
        let cert = improved_spectral(&c, &[pick]).unwrap();
        assert!(cert.distance() <= Finite(3));
    }

    #[test]
    fn certificates_serialize() {
        let c = build(2, 3, 3, &[&[&[0, 1, 1], &[1, 1], &[1, 0, 1]]]);
        let cert = optimize_spectral(&c, 2, &ALL_METHODS, &EngineCaps::default()).unwrap();
        let json = serde_json::to_value(&cert).unwrap();
        assert_eq!(json["kind"], "improved_spectral");
        assert_eq!(json["value"]["value"], 6);
        let back: BoundCertificate = serde_json::from_value(json).unwrap();
        assert_eq!(back, cert);
    }
}
