//! Cyclic codes given by zero sets, and lower bounds on their distance from
//! the structure of the zero set (BCH, Hartmann–Tzeng, Roos, subcodes).

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::arith::gcd;
use crate::code::{Distance, ExtDistance, Finite, Infinite, LinearCode};
use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::poly::{factor_xn_minus_1, q_closure, CosetFactorization, Poly};

/// Cached factorization of `x^n − 1` over `field`.
pub fn factorization(field: &Field, n: usize) -> Result<Arc<CosetFactorization>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32, usize), Arc<CosetFactorization>>>> = OnceLock::new();
    let key = (field.characteristic(), field.degree(), n);
    let cache = CACHE.get_or_init(Default::default);
    if let Some(f) = cache.lock().unwrap().get(&key) {
        return Ok(f.clone());
    }
    let f = Arc::new(factor_xn_minus_1(field, n)?);
    cache.lock().unwrap().insert(key, f.clone());
    Ok(f)
}

/// A set of exponents `i`, standing for the roots `α^i`, with `0 ≤ i < n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ZeroSet {
    pub n: usize,
    pub exponents: Vec<usize>,
}

impl fmt::Debug for ZeroSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} mod {}", self.exponents, self.n)
    }
}

impl ZeroSet {
    pub fn new(n: usize, exps: impl IntoIterator<Item = usize>) -> ZeroSet {
        let mut exponents: Vec<usize> = exps.into_iter().map(|e| e % n).collect();
        exponents.sort_unstable();
        exponents.dedup();
        ZeroSet { n, exponents }
    }

    pub fn empty(n: usize) -> ZeroSet {
        ZeroSet { n, exponents: Vec::new() }
    }

    /// All of `Δ = {0, …, n−1}`.
    pub fn all(n: usize) -> ZeroSet {
        ZeroSet { n, exponents: (0..n).collect() }
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn is_all(&self) -> bool {
        self.exponents.len() == self.n
    }

    pub fn contains(&self, e: usize) -> bool {
        self.exponents.binary_search(&(e % self.n)).is_ok()
    }

    pub fn is_subset(&self, o: &ZeroSet) -> bool {
        self.exponents.iter().all(|&e| o.contains(e))
    }

    pub fn union(&self, o: &ZeroSet) -> ZeroSet {
        ZeroSet::new(self.n, self.exponents.iter().chain(&o.exponents).copied())
    }

    pub fn closure(&self, q: u64) -> ZeroSet {
        ZeroSet { n: self.n, exponents: q_closure(&self.exponents, self.n, q) }
    }

    pub fn is_closed(&self, q: u64) -> bool {
        self.closure(q).len() == self.len()
    }

    fn mask(&self) -> Vec<bool> {
        let mut m = vec![false; self.n];
        for &e in &self.exponents {
            m[e] = true;
        }
        m
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Method {
    #[serde(rename = "BCH")]
    Bch,
    #[serde(rename = "HT")]
    Ht,
    Roos,
    Subcode,
}

/// A pair `(L, d_L)`: every cyclic code with `α^i` as zeros for all `i ∈ L`
/// has minimum distance at least `d_L`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefiningSetBound {
    #[serde(rename = "L")]
    pub set: ZeroSet,
    pub d: Distance,
    pub method: Method,
}

impl DefiningSetBound {
    fn new(n: usize, exps: impl IntoIterator<Item = usize>, d: Distance, method: Method) -> DefiningSetBound {
        let set = ZeroSet::new(n, exps);
        let d = if set.is_all() { Infinite } else { d };
        DefiningSetBound { set, d, method }
    }
}

/// Caps on the enumeration performed by the bound engines.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EngineCaps {
    pub roos_window: usize,
    pub ht_s_max: usize,
    /// Largest number of coset unions tried by the subcode engine.
    pub subcode_subsets: usize,
    pub budget: u64,
}

impl Default for EngineCaps {
    fn default() -> Self {
        EngineCaps { roos_window: 12, ht_s_max: usize::MAX, subcode_subsets: 1 << 12, budget: crate::code::DEFAULT_BUDGET }
    }
}

/// Keeps one entry per set, the one with the largest value.
pub fn dedup_bounds(mut v: Vec<DefiningSetBound>) -> Vec<DefiningSetBound> {
    let mut best: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut out: Vec<DefiningSetBound> = Vec::new();
    for b in v.drain(..) {
        match best.get(&b.set.exponents) {
            Some(&i) if out[i].d >= b.d => {}
            Some(&i) => out[i] = b,
            None => {
                best.insert(b.set.exponents.clone(), out.len());
                out.push(b);
            }
        }
    }
    out
}

fn strides(n: usize) -> impl Iterator<Item = usize> {
    (1..n.max(2)).filter(move |&a| gcd(a as u64, n as u64) == 1)
}

/// Length of the run `start, start + a, …` inside the mask, capped at `n`.
fn run_len(mask: &[bool], start: usize, a: usize) -> usize {
    let n = mask.len();
    let mut e = start % n;
    let mut len = 0;
    while len < n && mask[e] {
        len += 1;
        e = (e + a) % n;
    }
    len
}

fn arith(n: usize, start: usize, a: usize, len: usize) -> impl Iterator<Item = usize> {
    (0..len).map(move |i| (start + i * a) % n)
}

/// Every arithmetic run (coprime stride) inside `z`, with value `|L| + 1`;
/// a run through all of `Δ` has value `∞`.
pub fn bch_bound(z: &ZeroSet) -> Vec<DefiningSetBound> {
    let n = z.n;
    let mask = z.mask();
    let mut out = Vec::new();
    for a in strides(n) {
        for j in 0..n {
            let max = run_len(&mask, j, a);
            for len in 1..=max {
                out.push(DefiningSetBound::new(n, arith(n, j, a, len), Finite(len as u32 + 1), Method::Bch));
            }
        }
    }
    dedup_bounds(out)
}

/// Largest BCH value available in `z`.
pub fn bch_value(z: &ZeroSet) -> Distance {
    let n = z.n;
    if z.is_all() {
        return Infinite;
    }
    let mask = z.mask();
    let best = strides(n)
        .flat_map(|a| (0..n).map(move |j| (a, j)))
        .map(|(a, j)| run_len(&mask, j, a))
        .max()
        .unwrap_or(0);
    Finite(best as u32 + 1)
}

/// Hartmann–Tzeng patterns `{j + i₁a + i₂b : i₁ ≤ δ−2, i₂ ≤ s}` with
/// `gcd(a, n) = 1` and `gcd(b, n) < δ`, value `δ + s`, for `s ≥ 1`.
pub fn ht_bound(z: &ZeroSet, caps: &EngineCaps) -> Vec<DefiningSetBound> {
    let n = z.n;
    let mask = z.mask();
    let mut out = Vec::new();
    for a in strides(n) {
        let runs: Vec<usize> = (0..n).map(|j| run_len(&mask, j, a)).collect();
        for j in 0..n {
            if runs[j] == 0 {
                continue;
            }
            for b in 1..n {
                let g = gcd(b as u64, n as u64) as usize;
                for delta in 2..=runs[j].min(n - 1) + 1 {
                    if g >= delta {
                        continue;
                    }
                    let mut s = 0;
                    while s < caps.ht_s_max.min(n) && runs[(j + (s + 1) * b) % n] >= delta - 1 {
                        s += 1;
                    }
                    if s == 0 {
                        continue;
                    }
                    let set = (0..=s).flat_map(|i2| arith(n, j + i2 * b, a, delta - 1));
                    out.push(DefiningSetBound::new(n, set, Finite((delta + s) as u32), Method::Ht));
                }
            }
        }
    }
    dedup_bounds(out)
}

/// Roos patterns `A + B ⊆ z` with `A` an arithmetic run of coprime stride
/// and `B` inside an arithmetic window `W` of coprime stride with
/// `|W| ≤ |A| + |B| − 1`; value `|A| + |B|`, for `|B| ≥ 2`.
pub fn roos_bound(z: &ZeroSet, caps: &EngineCaps) -> Vec<DefiningSetBound> {
    let n = z.n;
    let mask = z.mask();
    let mut out = Vec::new();
    // A + B is invariant under moving the start of A into B, so A starts at 0.
    for a in strides(n) {
        let runs: Vec<usize> = (0..n).map(|j| run_len(&mask, j, a)).collect();
        for c in strides(n) {
            for w0 in 0..n {
                for wlen in 3..=caps.roos_window.min(n) {
                    let window: Vec<usize> = arith(n, w0, c, wlen).collect();
                    let max_a = window.iter().map(|&w| runs[w]).max().unwrap_or(0).min(n - 1);
                    for la in 1..=max_a {
                        let bset: Vec<usize> = window.iter().copied().filter(|&w| runs[w] >= la).collect();
                        let lb = bset.len();
                        if lb < 2 || wlen + 1 > la + lb || bset[0] != window[0] || bset[lb - 1] != window[wlen - 1] {
                            continue;
                        }
                        let set = bset.iter().flat_map(|&b| arith(n, b, a, la));
                        out.push(DefiningSetBound::new(n, set, Finite((la + lb) as u32), Method::Roos));
                    }
                }
            }
        }
    }
    dedup_bounds(out)
}

/// The exact distance of the cyclic code whose zero set is the q-closure of
/// `p`, paired with that closure.
pub fn subcode_bound(field: &Field, p: &ZeroSet, budget: u64) -> Result<DefiningSetBound> {
    if p.is_empty() {
        return Err(Error::InvalidParameters("subcode bound needs a nonempty set".into()));
    }
    let closed = p.closure(field.order() as u64);
    let code = cyclic_from_zeroset(field, &closed)?;
    let d = code.min_distance_exhaustive(budget)?.value;
    Ok(DefiningSetBound { set: closed, d, method: Method::Subcode })
}

/// Subcode bounds for every nonempty union of q-cyclotomic cosets inside `z`.
pub fn subcode_bounds(field: &Field, z: &ZeroSet, caps: &EngineCaps) -> Result<Vec<DefiningSetBound>> {
    let fz = factorization(field, z.n)?;
    let inside: Vec<&Vec<usize>> = fz.cosets.iter().filter(|c| c.iter().all(|&e| z.contains(e))).collect();
    let count = 1usize.checked_shl(inside.len() as u32).unwrap_or(usize::MAX);
    if count - 1 > caps.subcode_subsets {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for mask in 1..count {
        let set = ZeroSet::new(
            z.n,
            inside.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).flat_map(|(_, c)| c.iter().copied()),
        );
        match subcode_bound(field, &set, caps.budget) {
            Ok(b) => out.push(b),
            Err(Error::BudgetExceeded { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

/// All four engines on `z`, deduplicated.
pub fn all_bounds(field: &Field, z: &ZeroSet, methods: &[Method], caps: &EngineCaps) -> Result<Vec<DefiningSetBound>> {
    let mut v = Vec::new();
    for m in methods {
        match m {
            Method::Bch => v.extend(bch_bound(z)),
            Method::Ht => v.extend(ht_bound(z, caps)),
            Method::Roos => v.extend(roos_bound(z, caps)),
            Method::Subcode => v.extend(subcode_bounds(field, z, caps)?),
        }
    }
    Ok(dedup_bounds(v))
}

pub const ALL_METHODS: [Method; 4] = [Method::Bch, Method::Ht, Method::Roos, Method::Subcode];

/// Generator polynomial `∏ (x − α^i)` over a q-closed zero set.
pub fn generator_polynomial(field: &Field, z: &ZeroSet) -> Result<Poly> {
    if !z.is_closed(field.order() as u64) {
        return Err(Error::NotCyclotomicClosed);
    }
    let fz = factorization(field, z.n)?;
    let idx: Vec<usize> = (0..fz.cosets.len()).filter(|&i| z.contains(fz.cosets[i][0])).collect();
    Ok(fz.product(&idx))
}

/// The cyclic code of length `n` whose generator polynomial is `g`, from the
/// shifts `x^i g(x)`.
pub fn cyclic_from_generator(g: &Poly, n: usize) -> Result<LinearCode> {
    let field = g.field();
    let dg = g.degree().ok_or(Error::DivisionByZero)?;
    if dg > n {
        return Err(Error::InvalidParameters(format!("generator of degree {dg} for length {n}")));
    }
    let rows = (0..n - dg)
        .map(|i| {
            let mut r = vec![Elem(0); n];
            for (j, &c) in g.coeffs().iter().enumerate() {
                r[i + j] = c;
            }
            r
        })
        .collect();
    LinearCode::new(field, n, rows)
}

pub fn cyclic_from_zeroset(field: &Field, z: &ZeroSet) -> Result<LinearCode> {
    cyclic_from_generator(&generator_polynomial(field, z)?, z.n)
}

/// Distance of a cyclic code: exact when the message space fits the budget,
/// otherwise the BCH bound, tightened to exact when it meets an upper bound.
pub fn cyclic_distance(field: &Field, z: &ZeroSet, budget: u64) -> Result<ExtDistance> {
    let code = cyclic_from_zeroset(field, z)?;
    if let Ok(d) = code.min_distance_exhaustive(budget) {
        return Ok(d);
    }
    let lower = bch_value(z);
    let singleton = Finite((z.n - code.dimension() + 1) as u32);
    let upper = singleton.min(code.min_distance_heuristic_until(200, 0, lower.finite().unwrap_or(0)).value);
    Ok(if lower >= upper { ExtDistance::exact(upper) } else { ExtDistance::lower(lower) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::DEFAULT_BUDGET;
    use crate::gf::make_field;

    fn zs(n: usize, e: &[usize]) -> ZeroSet {
        ZeroSet::new(n, e.iter().copied())
    }

    fn value_of(v: &[DefiningSetBound], set: &[usize]) -> Option<Distance> {
        v.iter().find(|b| b.set.exponents == set).map(|b| b.d)
    }

    #[test]
    fn cyclic_codes() {
        let f3 = make_field(3, 1).unwrap();
        let full = cyclic_from_zeroset(&f3, &ZeroSet::empty(5)).unwrap();
        assert_eq!(full.dimension(), 5);
        let zero = cyclic_from_zeroset(&f3, &ZeroSet::all(5)).unwrap();
        assert!(zero.is_zero());
        let rep = cyclic_from_zeroset(&f3, &zs(5, &[1, 2, 3, 4])).unwrap();
        assert_eq!(rep.dimension(), 1);
        assert_eq!(rep.min_distance_exhaustive(DEFAULT_BUDGET).unwrap().value, Finite(5));
        assert_eq!(cyclic_from_zeroset(&f3, &zs(5, &[1])), Err(Error::NotCyclotomicClosed));
    }

    #[test]
    fn engine_examples() {
        let b = bch_bound(&zs(5, &[0, 1, 2, 3]));
        assert_eq!(value_of(&b, &[1, 2, 3]), Some(Finite(4)));
        assert_eq!(value_of(&bch_bound(&zs(5, &[0])), &[0]), Some(Finite(2)));
        assert_eq!(value_of(&bch_bound(&ZeroSet::all(3)), &[0, 1, 2]), Some(Infinite));
        let ht = ht_bound(&ZeroSet::all(7), &EngineCaps::default());
        assert!(ht.iter().any(|b| b.d == Infinite));
        let r = roos_bound(&ZeroSet::all(7), &EngineCaps::default());
        assert!(r.iter().any(|b| b.d == Infinite));
        let f3 = make_field(3, 1).unwrap();
        assert_eq!(subcode_bound(&f3, &zs(5, &[0]), DEFAULT_BUDGET).unwrap().d, Finite(2));
        assert_eq!(subcode_bound(&f3, &zs(5, &[1, 2, 3, 4]), DEFAULT_BUDGET).unwrap().d, Finite(5));
        assert_eq!(subcode_bound(&f3, &ZeroSet::all(5), DEFAULT_BUDGET).unwrap().d, Infinite);
    }

    #[test]
    fn ht_and_roos_improve_on_bch() {
        let z = zs(7, &[1, 2, 4]);
        let bch = bch_value(&z);
        let ht = ht_bound(&z, &EngineCaps::default());
        assert!(ht.iter().all(|b| b.d >= Finite(3)));
        assert_eq!(bch, Finite(3));
        let z = zs(15, &[1, 2, 4, 8, 3, 6, 12, 9, 5, 10]);
        let best_ht = ht_bound(&z, &EngineCaps::default()).iter().map(|b| b.d).max().unwrap();
        assert!(best_ht >= bch_value(&z));
        // A = {0,1}, B ⊆ {0,1,2} with B = {0,2}: sums {0,1,2,3}
        let r = roos_bound(&zs(9, &[0, 1, 2, 3]), &EngineCaps::default());
        assert!(r.iter().any(|b| b.d >= Finite(4)));
    }

    #[test]
    fn bch_runs_reach_their_ends() {
        let z = zs(15, &[1, 2, 3, 4, 6, 8, 9, 12]);
        for b in bch_bound(&z) {
            assert!(b.set.is_subset(&z));
            assert_eq!(b.d, Finite(b.set.len() as u32 + 1));
        }
        assert_eq!(bch_value(&z), Finite(5));
    }

    /// Every emitted bound holds for every cyclic code whose zeros contain
    /// the closure of its set.
    #[test]
    fn soundness_master() {
        let caps = EngineCaps::default();
        for &q in &[2u32, 3, 5] {
            let f = make_field(q, 1).unwrap();
            for &n in &[3usize, 4, 5, 7] {
                if n as u32 % q == 0 {
                    continue;
                }
                let fz = factorization(&f, n).unwrap();
                let c = fz.cosets.len();
                let unions: Vec<ZeroSet> = (0..1usize << c)
                    .map(|m| ZeroSet::new(n, (0..c).filter(|i| m >> i & 1 == 1).flat_map(|i| fz.cosets[i].clone())))
                    .collect();
                let dist: Vec<Distance> = unions
                    .iter()
                    .map(|u| cyclic_from_zeroset(&f, u).unwrap().min_distance_exhaustive(DEFAULT_BUDGET).unwrap().value)
                    .collect();
                for z in &unions {
                    for b in all_bounds(&f, z, &ALL_METHODS, &caps).unwrap() {
                        let cl = b.set.closure(q as u64);
                        for (u, &d) in unions.iter().zip(&dist) {
                            if cl.is_subset(u) {
                                assert!(d >= b.d, "q={q} n={n} {b:?} vs {u:?} d={d}");
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn distance_cascade() {
        let f2 = make_field(2, 1).unwrap();
        let z = zs(7, &[1, 2, 4]);
        assert_eq!(cyclic_distance(&f2, &z, DEFAULT_BUDGET).unwrap(), ExtDistance::exact(Finite(3)));
        let d = cyclic_distance(&f2, &z, 1).unwrap();
        assert!(d.value <= Finite(3));
        assert_eq!(cyclic_distance(&f2, &ZeroSet::all(7), 1).unwrap().value, Infinite);
    }
}
