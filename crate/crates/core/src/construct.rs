//! Explicit constructions: quasi-cyclic codes with a designed distance,
//! extended generalized Reed–Solomon codes, and three families of
//! quasi-cyclic locally repairable codes.

use serde::{Deserialize, Serialize};

use crate::arith::{ceil_div, prime_power};
use crate::bounds::{distance_lower_bound, pick_order};
use crate::code::{ExtDistance, Finite, Infinite, LinearCode, DEFAULT_BUDGET};
use crate::cyclic::{bch_value, factorization, DefiningSetBound, Method, ZeroSet};
use crate::error::{Error, Result};
use crate::gf::{embed, field_of_order, Elem, Field};
use crate::poly::{CosetFactorization, Poly, PolyMatrix};
use crate::qc::{concatenate, parse_elem, qc_from_generators, Constituent, FieldSpec, QcCode};

/// How a residue modulo an irreducible factor is turned into a polynomial.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Lift {
    /// On a linear factor `x − β` the constant `c` becomes `c·β⁻¹·x`;
    /// other factors use the reduced residue.
    #[default]
    Monomial,
    /// Always the residue of degree below the factor's degree.
    Reduced,
}

/// Input of the designed-distance construction.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DesignSpec {
    pub q: FieldSpec,
    pub n: usize,
    pub ell: usize,
    /// For each group `i = 1..ℓ`, indices of the irreducible factors of
    /// `x^n − 1` (cosets ordered by least element) that make up `𝔤_{i,·}`.
    pub groups: Vec<Vec<usize>>,
    /// `γ_1, …, γ_{ℓ−1}`.
    pub gammas: Vec<i64>,
    #[serde(default)]
    pub lift: Lift,
}

#[derive(Debug)]
pub struct Design {
    pub field: Field,
    pub n: usize,
    pub ell: usize,
    /// `𝔤(x)`.
    pub g: Poly,
    /// `h_1, …, h_{ℓ−1}` before reduction modulo `x^n − 1`.
    pub h: Vec<Poly>,
    pub gammas: Vec<Elem>,
    pub groups: Vec<Vec<usize>>,
    /// Roots of each group as exponents of `α`.
    pub group_roots: Vec<ZeroSet>,
    pub code: QcCode,
}

fn lift_residue(fz: &CosetFactorization, idx: usize, r: Poly, lift: Lift) -> Poly {
    let f = &fz.factors[idx];
    let field = f.field();
    if lift == Lift::Monomial && f.deg0() == 1 {
        let beta = field.neg(f.coeff(0));
        return Poly::monomial(field, field.div(r.coeff(0), beta), 1);
    }
    r
}

fn check_gammas(field: &Field, raw: &[i64], count: usize) -> Result<Vec<Elem>> {
    let gammas = raw.iter().map(|&v| parse_elem(field, v)).collect::<Result<Vec<_>>>()?;
    if gammas.len() != count {
        return Err(Error::InvalidParameters(format!("expected {count} gammas, got {}", gammas.len())));
    }
    for (k, g) in gammas.iter().enumerate() {
        if *g == field.zero() || *g == field.one() || gammas[..k].contains(g) {
            return Err(Error::InvalidParameters("gammas must be distinct and outside {0, 1}".into()));
        }
    }
    Ok(gammas)
}

fn verify_inverse(h: &PolyMatrix, g: &PolyMatrix, n: usize) -> Result<()> {
    let field = g.field().clone();
    let prod = h.mul(g)?;
    let xn = Poly::xn_minus_1(&field, n);
    for i in 0..prod.rows() {
        for j in 0..prod.cols() {
            let want = if i == j { xn.clone() } else { Poly::zero(&field) };
            if *prod.get(i, j) != want {
                return Err(Error::Verification(format!("H·G' differs from (x^n - 1)I at ({i}, {j})")));
            }
        }
    }
    Ok(())
}

fn reduced(p: &Poly, n: usize) -> Result<Poly> {
    p.rem(&Poly::xn_minus_1(p.field(), n))
}

pub fn build_design(spec: &DesignSpec) -> Result<Design> {
    let field = spec.q.field()?;
    let (n, ell) = (spec.n, spec.ell);
    if ell == 0 || ell as u64 >= field.order() as u64 {
        return Err(Error::InvalidParameters(format!("need 1 <= ell < q, got ell = {ell}")));
    }
    if spec.groups.len() != ell {
        return Err(Error::InvalidParameters(format!("expected {ell} groups, got {}", spec.groups.len())));
    }
    let gammas = check_gammas(&field, &spec.gammas, ell - 1)?;
    let fz = factorization(&field, n)?;
    let t = fz.factors.len();
    let mut seen = vec![false; t];
    for &i in spec.groups.iter().flatten() {
        if i >= t {
            return Err(Error::IndexOutOfRange { index: i, len: t });
        }
        if std::mem::replace(&mut seen[i], true) {
            return Err(Error::InvalidParameters(format!("factor {i} appears in two groups")));
        }
    }
    let g = fz.product(&spec.groups.concat());
    let mut h = vec![Poly::zero(&field); ell - 1];
    for (gi, grp) in spec.groups.iter().enumerate() {
        for &j in grp {
            let gij = &fz.factors[j];
            let y = g.div_exact(gij)?;
            let y_inv = y.rem(gij)?.modular_inverse(gij)?;
            for (u, hu) in h.iter_mut().enumerate() {
                let c = field.neg(field.pow(gammas[u], gi as u64 + 1));
                let a = lift_residue(&fz, j, y_inv.scale(c).rem(gij)?, spec.lift);
                *hu = hu.add(&a.mul(&y));
            }
        }
    }

    let one = Poly::one(&field);
    let zero = Poly::zero(&field);
    let mut rows = Vec::with_capacity(ell);
    for (u, hu) in h.iter().enumerate() {
        let mut r = vec![zero.clone(); ell];
        r[u] = one.clone();
        r[ell - 1] = hu.clone();
        rows.push(r);
    }
    let mut last = vec![zero.clone(); ell];
    last[ell - 1] = g.clone();
    rows.push(last);

    let xn = Poly::xn_minus_1(&field, n);
    let f = xn.div_exact(&g)?;
    let hm = (0..ell)
        .map(|u| {
            let mut r = vec![zero.clone(); ell];
            if u + 1 < ell {
                r[u] = xn.clone();
                r[ell - 1] = f.mul(&h[u]).neg();
            } else {
                r[u] = f.clone();
            }
            r
        })
        .collect();
    let gp = PolyMatrix::from_rows(&field, rows.clone())?;
    verify_inverse(&PolyMatrix::from_rows(&field, hm)?, &gp, n)?;

    let group_roots: Vec<ZeroSet> = spec
        .groups
        .iter()
        .map(|grp| ZeroSet::new(n, grp.iter().flat_map(|&j| fz.cosets[j].iter().copied())))
        .collect();
    // G'(β)·(γ_1^i, …, γ_{ℓ−1}^i, 1)ᵀ = 0 for every root β of group i
    let sp = &fz.splitting;
    for (gi, roots) in group_roots.iter().enumerate() {
        for &e in &roots.exponents {
            let ok = h.iter().enumerate().all(|(u, hu)| {
                let gu = sp.embedding.apply(field.pow(gammas[u], gi as u64 + 1));
                sp.ext.add(gu, sp.eval(hu, e)) == sp.ext.zero()
            });
            if !ok {
                return Err(Error::Verification(format!("h(α^{e}) misses its prescribed value")));
            }
        }
    }

    let gens = rows
        .iter()
        .map(|r| r.iter().map(|p| reduced(p, n)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let code = qc_from_generators(&field, n, ell, gens)?;
    Ok(Design { field, n, ell, g, h, gammas, groups: spec.groups.clone(), group_roots, code })
}

impl Design {
    /// Group (0-based) whose roots contain `set`.
    pub fn group_of(&self, set: &ZeroSet) -> Result<usize> {
        if set.is_empty() {
            return Err(Error::InvalidParameters("empty pick".into()));
        }
        self.group_roots
            .iter()
            .position(|r| set.is_subset(r))
            .ok_or_else(|| Error::InvalidParameters(format!("pick {set:?} is not inside one group")))
    }

    /// Distance of the eigencode intersection for the given groups: the code
    /// with parity checks `(γ_1^i, …, γ_{ℓ−1}^i, 1)`.
    fn intersection_distance(&self, used: &[usize]) -> Result<ExtDistance> {
        let t = used.len();
        if (0..t).all(|i| used.contains(&i)) {
            return Ok(ExtDistance::exact(if t == self.ell { Infinite } else { Finite(t as u32 + 1) }));
        }
        let f = &self.field;
        let checks: Vec<Vec<Elem>> = used
            .iter()
            .map(|&gi| {
                let mut r: Vec<Elem> = self.gammas.iter().map(|&g| f.pow(g, gi as u64 + 1)).collect();
                r.push(f.one());
                r
            })
            .collect();
        let code = LinearCode::from_parity_check(f, self.ell, &checks)?;
        Ok(distance_lower_bound(&code, DEFAULT_BUDGET))
    }

    /// The full root set of every nonempty group with its BCH value.
    pub fn group_picks(&self) -> Vec<DefiningSetBound> {
        self.group_roots
            .iter()
            .filter(|r| !r.is_empty())
            .map(|r| DefiningSetBound { set: r.clone(), d: bch_value(r), method: Method::Bch })
            .collect()
    }
}

/// `min{d_{L_1}, 2·d_{L_2}, …}` with the picks in descending order of
/// `d_L` and the running eigencode intersections read off the `γ` powers.
pub fn design_bound(d: &Design, picks: &[DefiningSetBound]) -> Result<ExtDistance> {
    if picks.is_empty() {
        return Err(Error::InvalidParameters("at least one pick is required".into()));
    }
    let mut sorted = picks.to_vec();
    sorted.sort_by(pick_order);
    let mut used = Vec::new();
    let mut inter = Finite(1);
    let mut value = Infinite;
    for p in &sorted {
        let gi = d.group_of(&p.set)?;
        value = value.min(p.d.times(inter));
        if !used.contains(&gi) {
            used.push(gi);
        }
        inter = d.intersection_distance(&used)?.value;
    }
    Ok(ExtDistance::lower(value.min(inter)))
}

/// A row of the designed-code table: index, listed least field order,
/// target distance and the Singleton defect it is listed with.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub ell: usize,
    pub q: u64,
    pub delta: u32,
    pub defect: u32,
}

pub const TABLE2: [TableRow; 12] = [
    TableRow { ell: 2, q: 4, delta: 3, defect: 1 },
    TableRow { ell: 2, q: 5, delta: 4, defect: 1 },
    TableRow { ell: 2, q: 7, delta: 5, defect: 2 },
    TableRow { ell: 2, q: 9, delta: 6, defect: 2 },
    TableRow { ell: 2, q: 11, delta: 7, defect: 3 },
    TableRow { ell: 2, q: 11, delta: 8, defect: 3 },
    TableRow { ell: 3, q: 5, delta: 3, defect: 2 },
    TableRow { ell: 3, q: 7, delta: 4, defect: 2 },
    TableRow { ell: 3, q: 9, delta: 5, defect: 3 },
    TableRow { ell: 3, q: 9, delta: 6, defect: 3 },
    TableRow { ell: 4, q: 7, delta: 3, defect: 3 },
    TableRow { ell: 4, q: 7, delta: 4, defect: 3 },
];

/// `|L_i| = max(1, ⌈δ/i⌉ − 1)` for `i = 1..ℓ`.
pub fn group_sizes(ell: usize, delta: u32) -> Vec<usize> {
    (1..=ell as u64).map(|i| (ceil_div(delta as u64, i) as usize).saturating_sub(1).max(1)).collect()
}

/// Smallest prime power `q > ℓ` with `q − 1` at least the total group size.
pub fn smallest_q(ell: usize, delta: u32) -> u64 {
    let need = group_sizes(ell, delta).iter().sum::<usize>() as u64;
    (2..).find(|&q| prime_power(q).is_some() && q > ell as u64 && q - 1 >= need).unwrap()
}

/// Designed code of length `ℓ(q−1)`: group `i` takes the next `|L_i|`
/// factors of `x^{q−1} − 1` in ascending exponent order and `γ_u` is the
/// element with index `u + 1`.
pub fn consecutive_design(q: u64, ell: usize, delta: u32) -> Result<Design> {
    let n = q as usize - 1;
    let sizes = group_sizes(ell, delta);
    if sizes.iter().sum::<usize>() > n {
        return Err(Error::InvalidParameters(format!("q = {q} is too small for ell = {ell}, delta = {delta}")));
    }
    let mut next = 0;
    let groups = sizes
        .iter()
        .map(|&s| {
            next += s;
            (next - s..next).collect()
        })
        .collect();
    let spec = DesignSpec {
        q: FieldSpec::Order(q),
        n,
        ell,
        groups,
        gammas: (2..=ell as i64).collect(),
        lift: Lift::default(),
    };
    build_design(&spec)
}

/// `(q, BCH dimension, QC dimension)` at length `3(q−1)` and distance 6.
pub const TABLE3: [(u64, usize, usize); 9] = [
    (11, 21, 22),
    (13, 23, 28),
    (16, 32, 37),
    (17, 39, 40),
    (19, 41, 46),
    (23, 57, 58),
    (25, 59, 64),
    (29, 75, 76),
    (31, 77, 82),
];

/// Dimension of the narrow-sense BCH code of length `n` and designed
/// distance `delta` over GF(q).
pub fn bch_dimension(q: u64, n: usize, delta: usize) -> usize {
    n - ZeroSet::new(n, 1..delta).closure(q).len()
}

/// Input of the extended GRS construction; points default to all field
/// elements in index order and multipliers to 1.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GrsSpec {
    pub q: FieldSpec,
    pub k: usize,
    #[serde(default)]
    pub points: Option<Vec<i64>>,
    #[serde(default)]
    pub multipliers: Option<Vec<i64>>,
}

pub fn extended_grs(spec: &GrsSpec) -> Result<LinearCode> {
    let field = spec.q.field()?;
    let parse = |v: &Option<Vec<i64>>| -> Result<Option<Vec<Elem>>> {
        v.as_ref().map(|v| v.iter().map(|&x| parse_elem(&field, x)).collect()).transpose()
    };
    let points = parse(&spec.points)?.unwrap_or_else(|| field.elements().collect());
    let mult = parse(&spec.multipliers)?.unwrap_or_else(|| vec![field.one(); field.order() as usize]);
    grs_code(&field, spec.k, &points, &mult)
}

/// `[q+1, k, q−k+2]` code: column `j ≤ q` is `v_j·(1, γ_j, …, γ_j^{k−1})ᵀ`,
/// the last column is `(0, …, 0, 1)ᵀ`.
pub fn grs_code(field: &Field, k: usize, points: &[Elem], mult: &[Elem]) -> Result<LinearCode> {
    let q = field.order() as usize;
    if k == 0 || k > q + 1 {
        return Err(Error::InvalidParameters(format!("k = {k} outside 1..={}", q + 1)));
    }
    if points.len() != q || mult.len() != q {
        return Err(Error::InvalidParameters(format!("need {q} points and {q} multipliers")));
    }
    if (0..q).any(|i| points[..i].contains(&points[i])) {
        return Err(Error::DuplicatePoints);
    }
    if mult.contains(&field.zero()) {
        return Err(Error::InvalidParameters("multipliers must be nonzero".into()));
    }
    let rows = (0..k)
        .map(|i| {
            let mut r: Vec<Elem> = points.iter().zip(mult).map(|(&p, &v)| field.mul(v, field.pow(p, i as u64))).collect();
            r.push(if i + 1 == k { field.one() } else { field.zero() });
            r
        })
        .collect();
    LinearCode::new(field, q + 1, rows)
}

fn default_grs(field: &Field, k: usize) -> Result<LinearCode> {
    let points: Vec<Elem> = field.elements().collect();
    grs_code(field, k, &points, &vec![field.one(); points.len()])
}

/// A constructed locally repairable code with its claimed parameters.
#[derive(Debug)]
pub struct Lrc {
    pub code: QcCode,
    pub length: usize,
    pub dimension: usize,
    pub distance: u32,
    /// `(ρ, δ)`.
    pub locality: (usize, u32),
    /// `g(x)` and `h(x)` of the generator matrix, when built from one.
    pub g: Option<Poly>,
    pub h: Option<Poly>,
}

/// `⊕ ⟨θ_i⟩□𝒞_i` for codes `𝒞_i` given over the base field and extended
/// to the field of factor `i`.
fn assemble(field: &Field, n: usize, ell: usize, parts: &[(usize, LinearCode)]) -> Result<QcCode> {
    let fz = factorization(field, n)?;
    let mut rows = Vec::new();
    for (idx, c) in parts {
        let slot = Constituent::slot(field, &fz, *idx)?;
        let lifted = if *slot.field == **field {
            c.clone()
        } else {
            let e = embed(field, &slot.field)?;
            let r = c.generator().iter().map(|r| r.iter().map(|&x| e.apply(x)).collect()).collect();
            LinearCode::new(&slot.field, ell, r)?
        };
        rows.extend(concatenate(field, n, &slot, &lifted)?);
    }
    let scalar = LinearCode::new(field, n * ell, rows)?;
    QcCode::from_scalar(field, n, ell, &scalar)
}

fn lrc_params(q: usize, n: usize, delta: usize, a: usize) -> (usize, usize, u32) {
    ((q + 1) * n, (q + 1 - a) * (n - delta + 1) + 1, (a * n) as u32)
}

fn finish_lrc(code: QcCode, params: (usize, usize, u32), locality: (usize, u32)) -> Result<Lrc> {
    if code.dimension() != params.1 {
        return Err(Error::Verification(format!("dimension {} but the formula gives {}", code.dimension(), params.1)));
    }
    Ok(Lrc { code, length: params.0, dimension: params.1, distance: params.2, locality, g: None, h: None })
}

fn check_a(q: usize, n: usize, delta: usize, a: usize) -> Result<()> {
    if a == 0 || a > q || a * (n - delta) > delta {
        return Err(Error::InvalidParameters(format!("need 1 <= a <= delta/(n - delta), got a = {a}")));
    }
    Ok(())
}

/// `n | q−1`, `2 ≤ δ < n`: constituents on `x − β^i`, `i = 1..n−δ+1`.
pub fn build_lrc_c1(q: u64, n: usize, delta: usize, a: usize) -> Result<Lrc> {
    let field = field_of_order(q)?;
    let qs = q as usize;
    if n == 0 || (qs - 1) % n != 0 {
        return Err(Error::InvalidParameters(format!("n = {n} must divide q - 1")));
    }
    if delta < 2 || delta >= n {
        return Err(Error::InvalidParameters(format!("need 2 <= delta < n, got delta = {delta}")));
    }
    check_a(qs, n, delta, a)?;
    let fz = factorization(&field, n)?;
    let mut parts = vec![(fz.coset_of(1), default_grs(&field, qs - a + 2)?)];
    for i in 2..=n - delta + 1 {
        parts.push((fz.coset_of(i % n), default_grs(&field, qs - a + 1)?));
    }
    let code = assemble(&field, n, qs + 1, &parts)?;
    finish_lrc(code, lrc_params(qs, n, delta, a), (n - delta + 1, delta as u32))
}

/// `n | q+1`, `n − δ` even, `3 ≤ δ ≤ n − 2`: constituents on `x − 1` and on
/// the quadratic factors with roots `μ^{±s}`, `s = 1..(n−δ)/2`.
pub fn build_lrc_c2(q: u64, n: usize, delta: usize, a: usize) -> Result<Lrc> {
    let field = field_of_order(q)?;
    let qs = q as usize;
    if n == 0 || (qs + 1) % n != 0 {
        return Err(Error::InvalidParameters(format!("n = {n} must divide q + 1")));
    }
    if delta < 3 || delta + 2 > n || (n - delta) % 2 != 0 {
        return Err(Error::InvalidParameters(format!("need 3 <= delta <= n - 2 with n - delta even, got delta = {delta}")));
    }
    check_a(qs, n, delta, a)?;
    let fz = factorization(&field, n)?;
    let mut parts = vec![(fz.coset_of(0), default_grs(&field, qs - a + 2)?)];
    for s in 1..=(n - delta) / 2 {
        parts.push((fz.coset_of(s), default_grs(&field, qs - a + 1)?));
    }
    let code = assemble(&field, n, qs + 1, &parts)?;
    finish_lrc(code, lrc_params(qs, n, delta, a), (n - delta + 1, delta as u32))
}

/// `[ℓn, ℓ−1, 2n]` code from `g(x) = ∏_{i≥1}(x − β^i)` and `h(x)` with
/// `h(β^i) = −γ` at every `n`-th root of unity.
pub fn build_lrc_c3(q: u64, n: usize, ell: usize, gamma: i64, lift: Lift) -> Result<Lrc> {
    let field = field_of_order(q)?;
    if n == 0 || (q as usize - 1) % n != 0 {
        return Err(Error::InvalidParameters(format!("n = {n} must divide q - 1")));
    }
    if ell < 2 {
        return Err(Error::InvalidParameters("need ell >= 2".into()));
    }
    let gamma = parse_elem(&field, gamma)?;
    if gamma == field.zero() {
        return Err(Error::InvalidParameters("gamma must be nonzero".into()));
    }
    let fz = factorization(&field, n)?;
    let sp = &fz.splitting;
    let betas = (0..n)
        .map(|i| sp.embedding.preimage(sp.root(i)).ok_or_else(|| Error::Verification("root outside GF(q)".into())))
        .collect::<Result<Vec<_>>>()?;
    let xn = Poly::xn_minus_1(&field, n);
    let mut h = Poly::zero(&field);
    for (i, &b) in betas.iter().enumerate() {
        let lin = Poly::linear(&field, b);
        let prod = betas
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .fold(field.one(), |acc, (_, &bj)| field.mul(acc, field.sub(b, bj)));
        let c = field.neg(field.div(gamma, prod));
        let a = lift_residue(&fz, fz.coset_of(i), Poly::constant(&field, c), lift);
        h = h.add(&a.mul(&xn.div_exact(&lin)?));
    }
    let g = betas[1..].iter().fold(Poly::one(&field), |acc, &b| acc.mul(&Poly::linear(&field, b)));
    let gh = g.mul(&h);
    let zero = Poly::zero(&field);
    let mut rows = Vec::with_capacity(ell);
    let mut hrows = Vec::with_capacity(ell);
    let xm1 = Poly::linear(&field, field.one());
    for u in 0..ell - 1 {
        let mut r = vec![zero.clone(); ell];
        r[u] = g.clone();
        r[ell - 1] = gh.clone();
        rows.push(r);
        let mut r = vec![zero.clone(); ell];
        r[u] = xm1.clone();
        r[ell - 1] = h.neg();
        hrows.push(r);
    }
    let mut r = vec![zero.clone(); ell];
    r[ell - 1] = xn.clone();
    rows.push(r);
    let mut r = vec![zero.clone(); ell];
    r[ell - 1] = Poly::one(&field);
    hrows.push(r);
    verify_inverse(&PolyMatrix::from_rows(&field, hrows)?, &PolyMatrix::from_rows(&field, rows.clone())?, n)?;

    let gens = rows
        .iter()
        .map(|r| r.iter().map(|p| reduced(p, n)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let code = qc_from_generators(&field, n, ell, gens)?;
    if code.dimension() != ell - 1 {
        return Err(Error::Verification(format!("dimension {} but expected {}", code.dimension(), ell - 1)));
    }
    Ok(Lrc {
        code,
        length: ell * n,
        dimension: ell - 1,
        distance: 2 * n as u32,
        locality: (1, n as u32),
        g: Some(g),
        h: Some(h),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::{improved_spectral, jensen_bound};
    use crate::qc::QcSpec;

    fn example_spec(lift: Lift) -> DesignSpec {
        DesignSpec { q: FieldSpec::Order(3), n: 5, ell: 2, groups: vec![vec![0], vec![1]], gammas: vec![-1], lift }
    }

    fn pick(n: usize, e: &[usize], d: u32) -> DefiningSetBound {
        DefiningSetBound { set: ZeroSet::new(n, e.iter().copied()), d: Finite(d), method: Method::Bch }
    }

    #[test]
    fn designed_example() {
        let d = build_design(&example_spec(Lift::Monomial)).unwrap();
        let f = d.field.clone();
        assert_eq!(d.h[0], Poly::from_ints(&f, &[1, 1, 1, 1, 1, -1]));
        let r = build_design(&example_spec(Lift::Reduced)).unwrap();
        assert_eq!(r.h[0], Poly::from_ints(&f, &[0, 1, 1, 1, 1]));
        assert_eq!(d.h[0].sub(&r.h[0]).rem(&d.g).unwrap(), Poly::zero(&f));
        let c = &d.code;
        assert_eq!((c.length(), c.dimension()), (10, 5));
        assert_eq!(c.scalar_code().min_distance_exhaustive(DEFAULT_BUDGET).unwrap().value, Finite(4));
        let picks = [pick(5, &[1, 2, 3], 4), pick(5, &[0], 2)];
        assert_eq!(design_bound(&d, &picks).unwrap().value, Finite(4));
        assert_eq!(improved_spectral(c, &picks).unwrap().distance(), Finite(4));
        assert_eq!(design_bound(&d, &d.group_picks()).unwrap().value, Finite(4));
        assert_eq!(jensen_bound(c).unwrap().distance(), Finite(2));
        let cons = c.constituents().unwrap();
        assert_eq!(cons[0].field.order(), 3);
        assert_eq!(cons[1].field.order(), 81);
        let e = &cons[1].field;
        assert_eq!(cons[0].code.generator(), &[vec![Elem(1), Elem(1)]]);
        assert_eq!(cons[1].code.generator(), &[vec![e.one(), e.neg(e.one())]]);
        assert!(design_bound(&d, &[pick(5, &[0, 1], 3)]).is_err());
    }

    #[test]
    fn design_rejects_bad_specs() {
        let mut s = example_spec(Lift::Monomial);
        s.gammas = vec![1];
        assert!(build_design(&s).is_err());
        let mut s = example_spec(Lift::Monomial);
        s.groups = vec![vec![0], vec![0]];
        assert!(build_design(&s).is_err());
        let mut s = example_spec(Lift::Monomial);
        s.ell = 3;
        assert!(build_design(&s).is_err());
    }

    #[test]
    fn table_sizes_and_fields() {
        let qs: Vec<u64> = TABLE2.iter().map(|r| smallest_q(r.ell, r.delta)).collect();
        assert_eq!(qs, [4, 5, 7, 8, 11, 11, 5, 7, 8, 9, 7, 7]);
        assert!(TABLE2.iter().zip(&qs).all(|(r, &q)| q <= r.q));
        assert_eq!(group_sizes(2, 6), [5, 2]);
        assert_eq!(group_sizes(4, 4), [3, 1, 1, 1]);
        for (q, bch, qc) in TABLE3 {
            let n = 3 * (q as usize - 1);
            assert_eq!(bch_dimension(q, n, 6), bch);
            assert_eq!(n - group_sizes(3, 6).iter().sum::<usize>(), qc);
        }
    }

    #[test]
    fn small_table_rows() {
        for &row in &[0usize, 1, 6] {
            let r = TABLE2[row];
            let q = smallest_q(r.ell, r.delta);
            let d = consecutive_design(q, r.ell, r.delta).unwrap();
            let picks = d.group_picks();
            let bound = design_bound(&d, &picks).unwrap().value;
            assert_eq!(bound, Finite(r.delta));
            assert_eq!(improved_spectral(&d.code, &picks).unwrap().distance(), bound);
            let sizes: usize = group_sizes(r.ell, r.delta).iter().sum();
            assert_eq!(d.code.dimension(), d.code.length() - sizes);
            let exact = d.code.scalar_code().min_distance_exhaustive(DEFAULT_BUDGET).unwrap().value;
            assert!(exact >= bound);
        }
    }

    #[test]
    fn grs_is_mds() {
        let f = field_of_order(5).unwrap();
        let c = default_grs(&f, 5).unwrap();
        assert_eq!((c.length(), c.dimension()), (6, 5));
        assert_eq!(c.min_distance_exhaustive(DEFAULT_BUDGET).unwrap().value, Finite(2));
        assert_eq!(default_grs(&f, 1).unwrap().min_distance_exhaustive(DEFAULT_BUDGET).unwrap().value, Finite(6));
        assert_eq!(default_grs(&f, 6).unwrap().dimension(), 6);
        let g4 = extended_grs(&GrsSpec { q: FieldSpec::Order(4), k: 2, points: None, multipliers: Some(vec![1, 2, 3, 1]) });
        assert_eq!(g4.unwrap().min_distance_exhaustive(DEFAULT_BUDGET).unwrap().value, Finite(4));
        assert!(default_grs(&f, 7).is_err());
        assert!(grs_code(&f, 2, &[Elem(0), Elem(0), Elem(1), Elem(2), Elem(3)], &[Elem(1); 5]).is_err());
    }

    #[test]
    fn lrc_c3_example() {
        let l = build_lrc_c3(5, 4, 3, -1, Lift::Monomial).unwrap();
        let f = l.code.field().clone();
        assert_eq!(l.h.as_ref().unwrap(), &Poly::monomial(&f, f.one(), 4));
        assert_eq!(l.g.as_ref().unwrap(), &Poly::from_ints(&f, &[1, 1, 1, 1]));
        assert_eq!((l.code.length(), l.code.dimension()), (12, 2));
        assert_eq!(l.code.scalar_code().min_distance_exhaustive(DEFAULT_BUDGET).unwrap().value, Finite(8));
        for gamma in 1..5 {
            let c = build_lrc_c3(5, 4, 3, gamma, Lift::Reduced).unwrap();
            assert_eq!(c.code.dimension(), 2);
            assert_eq!(c.code.scalar_code().min_distance_exhaustive(DEFAULT_BUDGET).unwrap().value, Finite(8));
        }
        assert!(build_lrc_c3(5, 3, 3, 1, Lift::Monomial).is_err());
    }

    #[test]
    fn lrc_c1_desk() {
        let l = build_lrc_c1(4, 3, 2, 1).unwrap();
        assert_eq!((l.code.length(), l.code.dimension()), (15, 9));
        assert_eq!(l.locality, (2, 2));
        assert_eq!(l.code.scalar_code().min_distance_exhaustive(DEFAULT_BUDGET).unwrap().value, Finite(3));
        assert_eq!(jensen_bound(&l.code).unwrap().distance(), Finite(3));
        assert!(build_lrc_c1(4, 3, 2, 3).is_err());
        assert!(build_lrc_c1(5, 3, 2, 1).is_err());
    }

    #[test]
    fn lrc_c2_desk() {
        let l = build_lrc_c2(4, 5, 3, 1).unwrap();
        assert_eq!((l.length, l.dimension, l.distance), (25, 13, 5));
        let j = jensen_bound(&l.code).unwrap().distance();
        assert_eq!(j, Finite(5));
        let up = l.code.scalar_code().min_distance_heuristic(200, 7).value;
        assert_eq!(up, Finite(5));
        assert!(build_lrc_c2(4, 5, 4, 1).is_err());
    }

    #[test]
    fn json_round_trip_keeps_lally_form() {
        let d = build_design(&example_spec(Lift::Monomial)).unwrap();
        let spec: QcSpec = serde_json::from_str(&serde_json::to_string(&QcSpec::from_code(&d.code)).unwrap()).unwrap();
        assert_eq!(spec.build().unwrap().lally().to_rows(), d.code.lally().to_rows());
    }
}
