//! Linear codes over a finite field: row reduction, duals, intersections,
//! puncturing, and exact or heuristic minimum distance.

use std::cmp::Ordering;
use std::fmt;
use std::sync::OnceLock;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_xoshiro::Xoshiro256PlusPlus;
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};

/// Default cap on the number of messages enumerated by the exhaustive search.
pub const DEFAULT_BUDGET: u64 = 20_000_000;

/// Minimum distance value; `Infinite` belongs to the zero code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Distance {
    Finite(u32),
    Infinite,
}

pub use Distance::{Finite, Infinite};

impl Distance {
    pub fn finite(self) -> Option<u32> {
        match self {
            Finite(d) => Some(d),
            Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == Infinite
    }

    /// Product with the convention `∞·x = ∞` for `x ≥ 1`.
    pub fn times(self, o: Distance) -> Distance {
        match (self, o) {
            (Finite(a), Finite(b)) => Finite(a * b),
            (Finite(0), Infinite) | (Infinite, Finite(0)) => Finite(0),
            _ => Infinite,
        }
    }
}

impl Ord for Distance {
    fn cmp(&self, o: &Self) -> Ordering {
        match (self, o) {
            (Finite(a), Finite(b)) => a.cmp(b),
            (Finite(_), Infinite) => Ordering::Less,
            (Infinite, Finite(_)) => Ordering::Greater,
            (Infinite, Infinite) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Distance {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl PartialEq<u32> for Distance {
    fn eq(&self, o: &u32) -> bool {
        *self == Finite(*o)
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Finite(d) => write!(f, "{d}"),
            Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Distance {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Finite(d) => s.serialize_u32(*d),
            Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Distance {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u32),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(v) => Ok(Finite(v)),
            Raw::Str(s) if s == "inf" => Ok(Infinite),
            Raw::Str(s) => Err(serde::de::Error::custom(format!("bad distance {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Exactness {
    Exact,
    LowerBound,
    UpperBound,
}

/// A distance value together with how much is known about it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtDistance {
    pub value: Distance,
    pub exactness: Exactness,
}

impl ExtDistance {
    pub fn exact(value: Distance) -> ExtDistance {
        ExtDistance { value, exactness: Exactness::Exact }
    }

    pub fn lower(value: Distance) -> ExtDistance {
        ExtDistance { value, exactness: Exactness::LowerBound }
    }

    pub fn upper(value: Distance) -> ExtDistance {
        ExtDistance { value, exactness: Exactness::UpperBound }
    }

    pub fn is_exact(&self) -> bool {
        self.exactness == Exactness::Exact
    }
}

/// Reduces `rows` in place to reduced row echelon form, dropping zero rows.
/// Returns the pivot columns.
pub fn rref(field: &Field, rows: &mut Vec<Vec<Elem>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][c].0 != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = field.inv(rows[r][c]);
        if inv.0 != 1 {
            for e in rows[r].iter_mut() {
                *e = field.mul(*e, inv);
            }
        }
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            let f = row[c];
            if i == r || f.0 == 0 {
                continue;
            }
            for (e, &pv) in row.iter_mut().zip(&pivot).skip(c) {
                if pv.0 != 0 {
                    *e = field.sub(*e, field.mul(f, pv));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rank(field: &Field, rows: &[Vec<Elem>]) -> usize {
    let mut m = rows.to_vec();
    rref(field, &mut m).len()
}

/// Basis of `{x : rows·xᵀ = 0}` for vectors of length `ncols`.
pub fn null_space(field: &Field, rows: &[Vec<Elem>], ncols: usize) -> Vec<Vec<Elem>> {
    let mut m = rows.to_vec();
    let pivots = rref(field, &mut m);
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..ncols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![Elem(0); ncols];
            v[free] = Elem(1);
            for (row, &p) in m.iter().zip(&pivots) {
                v[p] = field.neg(row[free]);
            }
            v
        })
        .collect()
}

/// Inner product `Σ aᵢbᵢ`.
pub fn dot(field: &Field, a: &[Elem], b: &[Elem]) -> Elem {
    a.iter().zip(b).fold(Elem(0), |acc, (&x, &y)| field.add(acc, field.mul(x, y)))
}

pub fn weight(v: &[Elem]) -> usize {
    v.iter().filter(|e| e.0 != 0).count()
}

/// A linear code given by a reduced generator matrix.
#[derive(Clone)]
pub struct LinearCode {
    field: Field,
    length: usize,
    generator: Vec<Vec<Elem>>,
    pivots: Vec<usize>,
    distance: OnceLock<ExtDistance>,
}

impl fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]_{}", self.length, self.dimension(), self.field.order())
    }
}

impl PartialEq for LinearCode {
    fn eq(&self, o: &Self) -> bool {
        *self.field == *o.field && self.length == o.length && self.generator == o.generator
    }
}

impl Eq for LinearCode {}

impl LinearCode {
    /// Row space of `rows`; the rows need not be independent.
    pub fn new(field: &Field, length: usize, rows: Vec<Vec<Elem>>) -> Result<LinearCode> {
        if let Some(r) = rows.iter().find(|r| r.len() != length) {
            return Err(Error::DimensionMismatch(format!("row of length {} in a length-{length} code", r.len())));
        }
        if rows.iter().flatten().any(|e| e.0 >= field.order()) {
            return Err(Error::Malformed("element index outside the field".into()));
        }
        let mut generator = rows;
        let pivots = rref(field, &mut generator);
        Ok(LinearCode { field: field.clone(), length, generator, pivots, distance: OnceLock::new() })
    }

    /// Code from a JSON-style matrix of element indices.
    pub fn from_indices(field: &Field, length: usize, rows: &[Vec<u32>]) -> Result<LinearCode> {
        LinearCode::new(field, length, rows.iter().map(|r| r.iter().map(|&e| Elem(e)).collect()).collect())
    }

    pub fn full(field: &Field, length: usize) -> LinearCode {
        let rows = (0..length)
            .map(|i| (0..length).map(|j| Elem((i == j) as u32)).collect())
            .collect();
        LinearCode::new(field, length, rows).expect("identity rows")
    }

    pub fn zero(field: &Field, length: usize) -> LinearCode {
        LinearCode::new(field, length, Vec::new()).expect("empty")
    }

    /// The code `{c : H·cᵀ = 0}`.
    pub fn from_parity_check(field: &Field, length: usize, h: &[Vec<Elem>]) -> Result<LinearCode> {
        if h.iter().any(|r| r.len() != length) {
            return Err(Error::DimensionMismatch("parity-check row length".into()));
        }
        LinearCode::new(field, length, null_space(field, h, length))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn dimension(&self) -> usize {
        self.generator.len()
    }

    pub fn is_zero(&self) -> bool {
        self.generator.is_empty()
    }

    /// Reduced generator matrix.
    pub fn generator(&self) -> &[Vec<Elem>] {
        &self.generator
    }

    pub fn generator_indices(&self) -> Vec<Vec<u32>> {
        self.generator.iter().map(|r| r.iter().map(|e| e.0).collect()).collect()
    }

    /// Information set of the reduced generator.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn parity_check(&self) -> Vec<Vec<Elem>> {
        null_space(&self.field, &self.generator, self.length)
    }

    pub fn dual(&self) -> LinearCode {
        LinearCode::new(&self.field, self.length, self.parity_check()).expect("same length")
    }

    pub fn encode(&self, msg: &[Elem]) -> Result<Vec<Elem>> {
        if msg.len() != self.dimension() {
            return Err(Error::DimensionMismatch("message length".into()));
        }
        let f = &self.field;
        let mut out = vec![Elem(0); self.length];
        for (&m, row) in msg.iter().zip(&self.generator) {
            if m.0 == 0 {
                continue;
            }
            for (o, &g) in out.iter_mut().zip(row) {
                *o = f.add(*o, f.mul(m, g));
            }
        }
        Ok(out)
    }

    pub fn contains(&self, word: &[Elem]) -> bool {
        if word.len() != self.length {
            return false;
        }
        let msg: Vec<Elem> = self.pivots.iter().map(|&p| word[p]).collect();
        self.encode(&msg).map(|c| c == word).unwrap_or(false)
    }

    /// Whether every codeword of `self` lies in `o`.
    pub fn is_subcode_of(&self, o: &LinearCode) -> bool {
        self.generator.iter().all(|r| o.contains(r))
    }

    /// Sum of row spaces.
    pub fn sum(&self, o: &LinearCode) -> Result<LinearCode> {
        self.check_compatible(o)?;
        let mut rows = self.generator.clone();
        rows.extend(o.generator.iter().cloned());
        LinearCode::new(&self.field, self.length, rows)
    }

    /// Intersection of row spaces, computed as the dual of the sum of duals.
    pub fn intersect(&self, o: &LinearCode) -> Result<LinearCode> {
        self.check_compatible(o)?;
        let mut h = self.parity_check();
        h.extend(o.parity_check());
        LinearCode::from_parity_check(&self.field, self.length, &h)
    }

    /// Keeps only the listed coordinates, in the given order.
    pub fn restrict(&self, positions: &[usize]) -> Result<LinearCode> {
        if let Some(&bad) = positions.iter().find(|&&p| p >= self.length) {
            return Err(Error::IndexOutOfRange { index: bad, len: self.length });
        }
        let rows = self.generator.iter().map(|r| positions.iter().map(|&p| r[p]).collect()).collect();
        LinearCode::new(&self.field, positions.len(), rows)
    }

    fn check_compatible(&self, o: &LinearCode) -> Result<()> {
        if *self.field != *o.field {
            return Err(Error::FieldMismatch);
        }
        if self.length != o.length {
            return Err(Error::DimensionMismatch(format!("lengths {} and {}", self.length, o.length)));
        }
        Ok(())
    }

    /// Number of messages the exhaustive search would visit.
    pub fn message_count(&self) -> u128 {
        (self.field.order() as u128).saturating_pow(self.dimension() as u32)
    }

    /// Exact minimum distance by enumerating every message.
    pub fn min_distance_exhaustive(&self, budget: u64) -> Result<ExtDistance> {
        if let Some(d) = self.distance.get().filter(|d| d.is_exact()) {
            return Ok(*d);
        }
        let needed = self.message_count();
        if needed > budget as u128 {
            return Err(Error::BudgetExceeded { needed, budget });
        }
        let d = ExtDistance::exact(exhaustive(self));
        let _ = self.distance.set(d);
        Ok(d)
    }

    /// Upper bound from random information sets.
    pub fn min_distance_heuristic(&self, iterations: usize, seed: u64) -> ExtDistance {
        self.min_distance_heuristic_until(iterations, seed, 0)
    }

    /// As [`min_distance_heuristic`](Self::min_distance_heuristic), stopping
    /// early once a word of weight `≤ floor` is seen.
    pub fn min_distance_heuristic_until(&self, iterations: usize, seed: u64, floor: u32) -> ExtDistance {
        if self.is_zero() {
            return ExtDistance::exact(Infinite);
        }
        ExtDistance::upper(Finite(heuristic(self, iterations, seed, floor.max(1))))
    }

    /// Exact distance when within budget, otherwise a heuristic upper bound.
    pub fn min_distance(&self, budget: u64) -> ExtDistance {
        if let Some(d) = self.distance.get() {
            return *d;
        }
        match self.min_distance_exhaustive(budget) {
            Ok(d) => d,
            Err(_) => {
                let d = self.min_distance_heuristic(1000, 0);
                let _ = self.distance.set(d);
                d
            }
        }
    }

    /// Cached distance, if one has been computed.
    pub fn cached_distance(&self) -> Option<ExtDistance> {
        self.distance.get().copied()
    }
}

/// Addition on element indices, tabulated for small fields.
struct Adder<'a> {
    field: &'a Field,
    table: Option<Vec<u32>>,
}

impl<'a> Adder<'a> {
    fn new(field: &'a Field) -> Adder<'a> {
        let q = field.order();
        let table = (field.degree() > 1 && field.characteristic() != 2 && q <= 1024).then(|| {
            let mut t = vec![0; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    t[(a * q + b) as usize] = field.add(Elem(a), Elem(b)).0;
                }
            }
            t
        });
        Adder { field, table }
    }

    #[inline]
    fn add_into(&self, acc: &mut [u32], v: &[u32]) {
        let f = self.field;
        if let Some(t) = &self.table {
            let q = f.order();
            for (a, &b) in acc.iter_mut().zip(v) {
                *a = t[(*a * q + b) as usize];
            }
        } else if f.characteristic() == 2 {
            for (a, &b) in acc.iter_mut().zip(v) {
                *a ^= b;
            }
        } else if f.degree() == 1 {
            let p = f.characteristic();
            for (a, &b) in acc.iter_mut().zip(v) {
                let s = *a + b;
                *a = if s >= p { s - p } else { s };
            }
        } else {
            for (a, &b) in acc.iter_mut().zip(v) {
                *a = f.add(Elem(*a), Elem(b)).0;
            }
        }
    }
}

/// Minimum weight over all nonzero codewords. Only codewords whose message
/// has last nonzero symbol 1 are visited; the others are scalar multiples.
fn exhaustive(code: &LinearCode) -> Distance {
    let k = code.dimension();
    if k == 0 {
        return Infinite;
    }
    let f = code.field();
    let q = f.order() as usize;
    let m = code.length();
    // mults[j][e] = e·g_j
    let mults: Vec<Vec<Vec<u32>>> = code
        .generator()
        .iter()
        .map(|row| {
            (0..q as u32)
                .map(|e| row.iter().map(|&g| f.mul(Elem(e), g).0).collect())
                .collect()
        })
        .collect();
    let adder = Adder::new(f);

    // Split the enumeration for message lead position t into chunks over the
    // top free digit so that large searches use several workers.
    let mut tasks: Vec<(usize, Option<u32>)> = Vec::new();
    for t in 0..k {
        if t >= 2 && (q as u128).pow(t as u32) > 4096 {
            tasks.extend((0..q as u32).map(|e| (t, Some(e))));
        } else {
            tasks.push((t, None));
        }
    }
    let best = tasks
        .par_iter()
        .map(|&(t, top)| {
            let mut word = mults[t][1].clone();
            let free = match top {
                Some(e) => {
                    adder.add_into(&mut word, &mults[t - 1][e as usize]);
                    t - 1
                }
                None => t,
            };
            gray_min(&mut word, free, q, f, &mults, &adder)
        })
        .min()
        .unwrap_or(m);
    Finite(best as u32)
}

/// Minimum weight over `word + Σ_{j<free} m_j·g_j` for all digit vectors `m`,
/// stepping through a reflected mixed-radix Gray code (Knuth, Algorithm H).
fn gray_min(word: &mut [u32], free: usize, q: usize, f: &Field, mults: &[Vec<Vec<u32>>], adder: &Adder) -> usize {
    let wt = |w: &[u32]| w.iter().filter(|&&e| e != 0).count();
    let mut best = wt(word);
    if free == 0 {
        return best;
    }
    let mut digits = vec![0usize; free];
    let mut dir = vec![true; free];
    let mut focus: Vec<usize> = (0..=free).collect();
    loop {
        let j = focus[0];
        if j == free {
            break;
        }
        focus[0] = 0;
        let old = digits[j];
        let new = if dir[j] { old + 1 } else { old - 1 };
        digits[j] = new;
        let delta = f.sub(Elem(new as u32), Elem(old as u32));
        adder.add_into(word, &mults[j][delta.0 as usize]);
        if new == 0 || new == q - 1 {
            dir[j] = !dir[j];
            focus[j] = focus[j + 1];
            focus[j + 1] = j + 1;
        }
        let w = wt(word);
        if w < best {
            best = w;
            if best <= 1 {
                break;
            }
        }
    }
    best
}

fn heuristic(code: &LinearCode, iterations: usize, seed: u64, floor: u32) -> u32 {
    let f = code.field();
    let m = code.length();
    let k = code.dimension();
    let q = f.order();
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(seed);
    let mut best = code.generator().iter().map(|r| weight(r)).min().unwrap_or(m) as u32;
    let adder = Adder::new(f);
    let mut perm: Vec<usize> = (0..m).collect();
    for _ in 0..iterations {
        if best <= floor {
            break;
        }
        perm.shuffle(&mut rng);
        let mut rows: Vec<Vec<Elem>> =
            code.generator().iter().map(|r| perm.iter().map(|&p| r[p]).collect()).collect();
        rref(f, &mut rows);
        let raw: Vec<Vec<u32>> = rows.iter().map(|r| r.iter().map(|e| e.0).collect()).collect();
        for r in &raw {
            best = best.min(r.iter().filter(|&&e| e != 0).count() as u32);
        }
        // scaled[j][c − 1] = c·row_j
        let scaled: Vec<Vec<Vec<u32>>> = raw
            .iter()
            .map(|r| (1..q).map(|c| r.iter().map(|&e| f.mul(Elem(c), Elem(e)).0).collect()).collect())
            .collect();
        let mut buf = vec![0u32; m];
        for i in 0..k {
            for j in i + 1..k {
                for sc in &scaled[j] {
                    buf.copy_from_slice(&raw[i]);
                    adder.add_into(&mut buf, sc);
                    let w = buf.iter().filter(|&&e| e != 0).count() as u32;
                    best = best.min(w);
                }
            }
        }
    }
    best
}

/// Griesmer length bound `Σ_{i<k} ⌈d/q^i⌉`.
pub fn griesmer(k: u32, d: u32, q: u64) -> u64 {
    let mut total = 0u64;
    let mut qi = 1u64;
    for _ in 0..k {
        total += (d as u64).div_ceil(qi);
        qi = qi.saturating_mul(q);
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;
    use rand::Rng;

    fn code(f: &Field, rows: &[&[u32]]) -> LinearCode {
        let len = rows[0].len();
        LinearCode::from_indices(f, len, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    /// Minimum weight by listing every message, no tricks.
    fn brute(c: &LinearCode) -> Distance {
        let q = c.field().order() as u64;
        let k = c.dimension() as u32;
        let mut best = Infinite;
        for idx in 1..q.pow(k) {
            let mut x = idx;
            let msg: Vec<Elem> = (0..k)
                .map(|_| {
                    let e = Elem((x % q) as u32);
                    x /= q;
                    e
                })
                .collect();
            best = best.min(Finite(weight(&c.encode(&msg).unwrap()) as u32));
        }
        best
    }

    fn random_code(f: &Field, rng: &mut Xoshiro256PlusPlus, m: usize, k: usize) -> LinearCode {
        let rows = (0..k).map(|_| (0..m).map(|_| f.random(rng)).collect()).collect();
        LinearCode::new(f, m, rows).unwrap()
    }

    #[test]
    fn distance_arithmetic() {
        assert!(Finite(3) < Infinite);
        assert_eq!(Infinite.times(Finite(2)), Infinite);
        assert_eq!(Finite(2).times(Finite(3)), Finite(6));
        assert_eq!(Infinite.min(Finite(4)), Finite(4));
        assert_eq!(serde_json::to_string(&Infinite).unwrap(), "\"inf\"");
        assert_eq!(serde_json::from_str::<Distance>("7").unwrap(), Finite(7));
        assert_eq!(serde_json::from_str::<Distance>("\"inf\"").unwrap(), Infinite);
    }

    #[test]
    fn known_distances() {
        let f2 = make_field(2, 1).unwrap();
        let z = LinearCode::zero(&f2, 4);
        assert_eq!(z.min_distance_exhaustive(DEFAULT_BUDGET).unwrap().value, Infinite);
        let f5 = make_field(5, 1).unwrap();
        let rep = code(&f5, &[&[1, 2, 3, 4, 1, 1]]);
        assert_eq!(rep.min_distance_exhaustive(DEFAULT_BUDGET).unwrap().value, Finite(6));
        let ham = code(&f2, &[&[1, 0, 0, 0, 1, 1, 0], &[0, 1, 0, 0, 1, 0, 1], &[0, 0, 1, 0, 0, 1, 1], &[0, 0, 0, 1, 1, 1, 1]]);
        assert!(matches!(ham.min_distance_exhaustive(10), Err(Error::BudgetExceeded { .. })));
        assert_eq!(ham.min_distance_exhaustive(DEFAULT_BUDGET).unwrap().value, Finite(3));
        let w1 = code(&f2, &[&[1, 1, 1, 0], &[0, 0, 0, 1]]);
        assert_eq!(w1.min_distance_heuristic(0, 1).value, Finite(1));
    }

    #[test]
    fn exhaustive_matches_brute_force() {
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(3);
        for &(p, m) in &[(2u32, 1u32), (3, 1), (2, 2), (5, 1), (3, 2), (7, 1)] {
            let f = make_field(p, m).unwrap();
            for _ in 0..25 {
                let len = rng.gen_range(1..=9);
                let k = rng.gen_range(0..=len.min(5));
                let c = random_code(&f, &mut rng, len, k);
                if c.message_count() > 200_000 {
                    continue;
                }
                let exact = c.min_distance_exhaustive(DEFAULT_BUDGET).unwrap().value;
                assert_eq!(exact, brute(&c), "{c:?} over {f:?}");
                let h = c.min_distance_heuristic(30, 9);
                assert!(h.value >= exact);
            }
        }
    }

    #[test]
    fn heuristic_agrees_on_small_codes() {
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(4);
        let f = make_field(3, 1).unwrap();
        for _ in 0..30 {
            let c = random_code(&f, &mut rng, 10, 4);
            let exact = c.min_distance_exhaustive(DEFAULT_BUDGET).unwrap().value;
            assert_eq!(c.min_distance_heuristic(200, 1).value, exact);
        }
    }

    #[test]
    fn large_search_is_deterministic() {
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(5);
        let f = make_field(2, 1).unwrap();
        let c = random_code(&f, &mut rng, 40, 18);
        let a = exhaustive(&c);
        let b = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap().install(|| exhaustive(&c));
        assert_eq!(a, b);
    }

    #[test]
    fn subspace_operations() {
        let f2 = make_field(2, 1).unwrap();
        let a = code(&f2, &[&[0, 1]]);
        let b = code(&f2, &[&[1, 0]]);
        assert!(a.intersect(&b).unwrap().is_zero());
        assert_eq!(a.intersect(&a).unwrap(), a);
        assert_eq!(LinearCode::full(&f2, 2).intersect(&b).unwrap(), b);
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(6);
        for &p in &[2u32, 3] {
            let f = make_field(p, 1).unwrap();
            for _ in 0..40 {
                let m = rng.gen_range(1..=6);
                let ka = rng.gen_range(0..=m);
                let a = random_code(&f, &mut rng, m, ka);
                let kb = rng.gen_range(0..=m);
                let b = random_code(&f, &mut rng, m, kb);
                let c = a.intersect(&b).unwrap();
                assert!(c.is_subcode_of(&a) && c.is_subcode_of(&b));
                // brute force: count words in both spaces
                let q = p as u64;
                let mut both = 0u64;
                for idx in 0..q.pow(m as u32) {
                    let mut x = idx;
                    let w: Vec<Elem> = (0..m)
                        .map(|_| {
                            let e = Elem((x % q) as u32);
                            x /= q;
                            e
                        })
                        .collect();
                    if a.contains(&w) && b.contains(&w) {
                        both += 1;
                    }
                }
                assert_eq!(both, q.pow(c.dimension() as u32));
                let s = a.sum(&b).unwrap();
                assert_eq!(s.dimension() + c.dimension(), a.dimension() + b.dimension());
                assert_eq!(a.dual().dual(), a);
            }
        }
    }

    #[test]
    fn restriction() {
        let f3 = make_field(3, 1).unwrap();
        let c = code(&f3, &[&[1, 0, 1, 2], &[0, 1, 1, 1]]);
        assert_eq!(c.restrict(&[0, 1, 2, 3]).unwrap(), c);
        assert_eq!(c.restrict(&[2]).unwrap().dimension(), 1);
        assert!(c.restrict(&[4]).is_err());
    }

    #[test]
    fn griesmer_values() {
        assert_eq!(griesmer(1, 4, 5), 4);
        assert_eq!(griesmer(2, 8, 5), 10);
        assert_eq!(griesmer(6, 1, 3), 6);
        for k in 1..6 {
            for d in 1..12 {
                assert!(griesmer(k, d, 3) <= (k * d) as u64);
                assert!(griesmer(k + 1, d, 3) >= griesmer(k, d, 3));
                assert!(griesmer(k, d + 1, 3) >= griesmer(k, d, 3));
            }
        }
    }
}
