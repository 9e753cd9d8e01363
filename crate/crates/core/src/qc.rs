//! Quasi-cyclic codes: the reduced generator matrix, eigenvalues and
//! eigencodes, the spectral parity-check matrix, and the decomposition into
//! constituents and concatenated pieces.
//!
//! A codeword is an `n × ℓ` array `c_{i,j}`; column `j` is the polynomial
//! `c_j(x) = Σ_i c_{i,j} x^i` and the flat coordinate of `(i, j)` is `i·ℓ + j`.

use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::arith::prime_power;
use crate::code::{null_space, rank, LinearCode};
use crate::cyclic::{factorization, ZeroSet};
use crate::error::{Error, Result};
use crate::gf::{embed, make_field, trace, Elem, Embedding, Field};
use crate::poly::{reduce_to_lally_form, CosetFactorization, Poly, PolyMatrix, Splitting};

/// Field given as its order `q` or as `[p, m]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldSpec {
    Order(u64),
    PrimePower([u32; 2]),
}

impl FieldSpec {
    pub fn field(&self) -> Result<Field> {
        match *self {
            FieldSpec::Order(q) => {
                let (p, m) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
                make_field(p, m)
            }
            FieldSpec::PrimePower([p, m]) => make_field(p, m),
        }
    }
}

/// Serialized form of a quasi-cyclic code; polynomials are coefficient lists,
/// constant term first, each coefficient an element index (negative values
/// are allowed over prime fields).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QcSpec {
    pub q: FieldSpec,
    pub n: usize,
    pub ell: usize,
    pub generators: Vec<Vec<Vec<i64>>>,
}

impl QcSpec {
    pub fn build(&self) -> Result<QcCode> {
        let field = self.q.field()?;
        let gens = self
            .generators
            .iter()
            .map(|g| g.iter().map(|c| parse_poly(&field, c)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        qc_from_generators(&field, self.n, self.ell, gens)
    }

    pub fn from_code(c: &QcCode) -> QcSpec {
        let (p, m) = (c.field.characteristic(), c.field.degree());
        QcSpec {
            q: if m == 1 { FieldSpec::Order(p as u64) } else { FieldSpec::PrimePower([p, m]) },
            n: c.n,
            ell: c.ell,
            generators: c
                .generators
                .iter()
                .map(|g| g.iter().map(|p| p.coeffs().iter().map(|e| e.0 as i64).collect()).collect())
                .collect(),
        }
    }
}

/// Field element from an integer: residues over prime fields, element
/// indices otherwise.
pub fn parse_elem(field: &Field, v: i64) -> Result<Elem> {
    if field.degree() == 1 {
        return Ok(field.from_int(v));
    }
    match u32::try_from(v) {
        Ok(i) if i < field.order() => Ok(Elem(i)),
        _ => Err(Error::Malformed(format!("element {v} not in {field:?}"))),
    }
}

fn parse_poly(field: &Field, c: &[i64]) -> Result<Poly> {
    Ok(Poly::new(field, c.iter().map(|&v| parse_elem(field, v)).collect::<Result<Vec<_>>>()?))
}

/// One eigenvalue `α^i` with its eigenspace and eigencode.
#[derive(Clone, Debug)]
pub struct EigenData {
    pub exponent: usize,
    pub multiplicity: usize,
    /// Basis of the eigenspace over GF(q^r), one row per vector.
    pub basis: Vec<Vec<Elem>>,
    pub eigencode: LinearCode,
}

#[derive(Clone, Debug)]
pub struct EigenStructure {
    /// The eigenvalue set `E`.
    pub eigenvalues: ZeroSet,
    pub data: Vec<EigenData>,
}

impl EigenStructure {
    pub fn get(&self, exponent: usize) -> Option<&EigenData> {
        self.data.iter().find(|d| d.exponent == exponent)
    }
}

/// Image of the code in the CRT component belonging to one irreducible
/// factor of `x^n − 1`.
#[derive(Clone, Debug)]
pub struct Constituent {
    /// Index into the coset factorization.
    pub index: usize,
    /// The irreducible factor `f_i`, the check polynomial of `⟨θ_i⟩`.
    pub factor: Poly,
    /// Least exponent `v_i` of the coset.
    pub root_exponent: usize,
    /// `𝔼_i = GF(q^{deg f_i})`.
    pub field: Field,
    /// `𝔼_i` inside GF(q^r).
    pub embedding: Embedding,
    /// `α^{v_i}` as an element of `𝔼_i`.
    pub omega: Elem,
    pub code: LinearCode,
}

impl Constituent {
    /// The CRT component of factor `idx` with an empty code.
    pub fn slot(base: &Field, fz: &CosetFactorization, idx: usize) -> Result<Constituent> {
        let sp = &fz.splitting;
        let factor = fz.factors.get(idx).ok_or(Error::IndexOutOfRange { index: idx, len: fz.factors.len() })?;
        let v = fz.first_roots[idx];
        let field = make_field(base.characteristic(), base.degree() * factor.deg0() as u32)?;
        let embedding = embed(&field, &sp.ext)?;
        let omega = embedding.preimage(sp.root(v)).ok_or_else(|| Error::Verification("root outside its field".into()))?;
        let code = LinearCode::zero(&field, 0);
        Ok(Constituent { index: idx, factor: factor.clone(), root_exponent: v, field, embedding, omega, code })
    }

    pub fn degree(&self) -> usize {
        self.factor.deg0()
    }

    /// `ψ_i(β)`: the length-`n` vector `a_j = n^{-1}·Tr(β·ω^{-j})` over the base field.
    pub fn psi(&self, base: &Field, n: usize, beta: Elem) -> Result<Vec<Elem>> {
        let e = &self.field;
        let n_inv = base.inv(base.from_int(n as i64));
        let w_inv = e.inv(self.omega);
        let mut out = Vec::with_capacity(n);
        let mut w = Elem(1);
        for _ in 0..n {
            out.push(base.mul(n_inv, trace(e, e.mul(beta, w), base)?));
            w = e.mul(w, w_inv);
        }
        Ok(out)
    }
}

/// A quasi-cyclic code of index `ℓ` and co-index `n`.
#[derive(Debug)]
pub struct QcCode {
    field: Field,
    n: usize,
    ell: usize,
    generators: Vec<Vec<Poly>>,
    lally: PolyMatrix,
    scalar: LinearCode,
    factorization: Arc<CosetFactorization>,
    eigen: OnceLock<Arc<EigenStructure>>,
    constituents: OnceLock<Arc<Vec<Constituent>>>,
}

/// Flat vector of a polynomial vector multiplied by `x^shift` mod `x^n − 1`.
fn flatten(v: &[Poly], n: usize, shift: usize) -> Vec<Elem> {
    let ell = v.len();
    let mut out = vec![Elem(0); n * ell];
    for (j, p) in v.iter().enumerate() {
        for (i, &c) in p.coeffs().iter().enumerate() {
            out[((i + shift) % n) * ell + j] = c;
        }
    }
    out
}

pub fn qc_from_generators(field: &Field, n: usize, ell: usize, generators: Vec<Vec<Poly>>) -> Result<QcCode> {
    if n == 0 || ell == 0 {
        return Err(Error::InvalidParameters("n and ell must be positive".into()));
    }
    for g in &generators {
        if g.len() != ell {
            return Err(Error::Malformed(format!("generator with {} components, expected {ell}", g.len())));
        }
        if g.iter().any(|p| **p.field() != **field) {
            return Err(Error::FieldMismatch);
        }
        if let Some(p) = g.iter().find(|p| p.deg0() >= n) {
            return Err(Error::Malformed(format!("component {p} has degree >= {n}")));
        }
    }
    let factorization = factorization(field, n)?;
    let lally = reduce_to_lally_form(field, &generators, n, ell)?;
    let rows = generators.iter().flat_map(|g| (0..n).map(move |s| flatten(g, n, s))).collect();
    let scalar = LinearCode::new(field, n * ell, rows)?;
    let diag_deg: usize = lally.diagonal().iter().map(|d| d.deg0()).sum();
    if scalar.dimension() != n * ell - diag_deg {
        return Err(Error::Verification(format!(
            "dimension {} but the reduced matrix gives {}",
            scalar.dimension(),
            n * ell - diag_deg
        )));
    }
    Ok(QcCode {
        field: field.clone(),
        n,
        ell,
        generators,
        lally,
        scalar,
        factorization,
        eigen: OnceLock::new(),
        constituents: OnceLock::new(),
    })
}

impl QcCode {
    /// The code spanned by the rows of `c`, which must be invariant under
    /// the shift by `ℓ` positions.
    pub fn from_scalar(field: &Field, n: usize, ell: usize, c: &LinearCode) -> Result<QcCode> {
        if c.length() != n * ell {
            return Err(Error::DimensionMismatch(format!("length {} is not {n}·{ell}", c.length())));
        }
        let gens = c
            .generator()
            .iter()
            .map(|row| {
                (0..ell)
                    .map(|j| Poly::new(field, (0..n).map(|i| row[i * ell + j]).collect()))
                    .collect()
            })
            .collect();
        let q = qc_from_generators(field, n, ell, gens)?;
        if !same_row_space(&q.scalar, c) {
            return Err(Error::Verification("code is not quasi-cyclic".into()));
        }
        Ok(q)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn length(&self) -> usize {
        self.n * self.ell
    }

    pub fn dimension(&self) -> usize {
        self.scalar.dimension()
    }

    pub fn generators(&self) -> &[Vec<Poly>] {
        &self.generators
    }

    pub fn lally(&self) -> &PolyMatrix {
        &self.lally
    }

    pub fn scalar_code(&self) -> &LinearCode {
        &self.scalar
    }

    pub fn factorization(&self) -> &CosetFactorization {
        &self.factorization
    }

    pub fn splitting(&self) -> &Splitting {
        &self.factorization.splitting
    }

    /// `G̃(α^i)` over GF(q^r).
    pub fn evaluate(&self, exponent: usize) -> Vec<Vec<Elem>> {
        let sp = self.splitting();
        self.lally.eval_at(&sp.embedding, sp.root(exponent))
    }

    /// Number of diagonal entries of `G̃` vanishing at `α^i`.
    fn algebraic_multiplicity(&self, exponent: usize) -> usize {
        let sp = self.splitting();
        self.lally.diagonal().iter().filter(|d| sp.eval(d, exponent) == Elem(0)).count()
    }

    /// Eigencode of the span of `basis`: base-field vectors orthogonal to it.
    pub fn eigencode_of(&self, basis: &[Vec<Elem>]) -> Result<LinearCode> {
        let sp = self.splitting();
        let ext = &sp.ext;
        let g = ext.generator();
        let mut cons = Vec::with_capacity(basis.len() * sp.r as usize);
        for v in basis {
            let mut lambda = Elem(1);
            for _ in 0..sp.r {
                cons.push(v.iter().map(|&x| trace(ext, ext.mul(lambda, x), &self.field)).collect::<Result<Vec<_>>>()?);
                lambda = ext.mul(lambda, g);
            }
        }
        LinearCode::from_parity_check(&self.field, self.ell, &cons)
    }

    pub fn eigen_structure(&self) -> Result<Arc<EigenStructure>> {
        if let Some(e) = self.eigen.get() {
            return Ok(e.clone());
        }
        let ext = &self.splitting().ext;
        let mut data = Vec::new();
        for i in 0..self.n {
            let m = self.algebraic_multiplicity(i);
            if m == 0 {
                continue;
            }
            let basis = null_space(ext, &self.evaluate(i), self.ell);
            if basis.len() != m {
                return Err(Error::Verification(format!(
                    "eigenvalue exponent {i}: algebraic multiplicity {m}, geometric {}",
                    basis.len()
                )));
            }
            let eigencode = self.eigencode_of(&basis)?;
            data.push(EigenData { exponent: i, multiplicity: m, basis, eigencode });
        }
        let eigenvalues = ZeroSet::new(self.n, data.iter().map(|d| d.exponent));
        let s = Arc::new(EigenStructure { eigenvalues, data });
        Ok(self.eigen.get_or_init(|| s).clone())
    }

    pub fn eigenvalues(&self) -> Result<ZeroSet> {
        Ok(self.eigen_structure()?.eigenvalues.clone())
    }

    /// Intersection of the eigenspaces over `L` and its eigencode.
    pub fn common_eigenspace(&self, l: &ZeroSet) -> Result<(Vec<Vec<Elem>>, LinearCode)> {
        let e = self.eigenvalues()?;
        if !l.is_subset(&e) {
            return Err(Error::NotEigenvalues(l.exponents.iter().copied().filter(|&x| !e.contains(x)).collect()));
        }
        let stacked: Vec<Vec<Elem>> = l.exponents.iter().flat_map(|&i| self.evaluate(i)).collect();
        let basis = null_space(&self.splitting().ext, &stacked, self.ell);
        let code = self.eigencode_of(&basis)?;
        Ok((basis, code))
    }

    /// Rows `(α^{i·0}, …, α^{i(n−1)}) ⊗ v` for every eigenvalue `α^i` and
    /// eigenspace basis vector `v`, in flat column order.
    pub fn spectral_parity_check(&self) -> Result<Vec<Vec<Elem>>> {
        let es = self.eigen_structure()?;
        let sp = self.splitting();
        let ext = &sp.ext;
        let mut h = Vec::new();
        for d in &es.data {
            let a = sp.root(d.exponent);
            for v in &d.basis {
                let mut row = Vec::with_capacity(self.length());
                let mut pw = Elem(1);
                for _ in 0..self.n {
                    row.extend(v.iter().map(|&x| ext.mul(pw, x)));
                    pw = ext.mul(pw, a);
                }
                h.push(row);
            }
        }
        Ok(h)
    }

    pub fn constituents(&self) -> Result<Arc<Vec<Constituent>>> {
        if let Some(c) = self.constituents.get() {
            return Ok(c.clone());
        }
        let fz = &self.factorization;
        let sp = &fz.splitting;
        let mut out = Vec::new();
        for idx in 0..fz.factors.len() {
            let mut slot = Constituent::slot(&self.field, fz, idx)?;
            let back = |x: Elem| slot.embedding.preimage(x).ok_or_else(|| Error::Verification("value outside the subfield".into()));
            let rows = self
                .lally
                .eval_at(&sp.embedding, sp.root(slot.root_exponent))
                .into_iter()
                .map(|r| r.into_iter().map(back).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            slot.code = LinearCode::new(&slot.field, self.ell, rows)?;
            out.push(slot);
        }
        let c = Arc::new(out);
        Ok(self.constituents.get_or_init(|| c).clone())
    }

    /// Rebuilds the code as `⊕_i ⟨θ_i⟩□𝒞_i`.
    pub fn concat_reconstruct(&self) -> Result<LinearCode> {
        let mut rows = Vec::new();
        for c in self.constituents()?.iter() {
            rows.extend(concatenate(&self.field, self.n, c, &c.code)?);
        }
        LinearCode::new(&self.field, self.length(), rows)
    }
}

/// Base-field spanning rows of `⟨θ_i⟩□D` for a code `D` over `𝔼_i`:
/// symbol `b_s` of a codeword becomes array column `s` via `ψ_i`.
pub fn concatenate(base: &Field, n: usize, c: &Constituent, d: &LinearCode) -> Result<Vec<Vec<Elem>>> {
    let e = &c.field;
    let ell = d.length();
    let mut rows = Vec::new();
    for g in d.generator() {
        let mut lambda = Elem(1);
        for _ in 0..c.degree() {
            let mut flat = vec![Elem(0); n * ell];
            for (s, &b) in g.iter().enumerate() {
                let col = c.psi(base, n, e.mul(lambda, b))?;
                for (i, &x) in col.iter().enumerate() {
                    flat[i * ell + s] = x;
                }
            }
            rows.push(flat);
            lambda = e.mul(lambda, c.omega);
        }
    }
    Ok(rows)
}

/// Whether two codes over the same field have equal row spaces.
pub fn same_row_space(a: &LinearCode, b: &LinearCode) -> bool {
    let mut rows = a.generator().to_vec();
    rows.extend(b.generator().iter().cloned());
    a.dimension() == b.dimension() && rank(a.field(), &rows) == a.dimension()
}
