//! Univariate polynomials over a finite field, factorization of `x^n − 1`
//! through cyclotomic cosets, and polynomial matrices.

use std::fmt;

use crate::arith::{gcd, mult_order};
use crate::error::{Error, Result};
use crate::gf::{embed, make_field, nth_root_of_unity, Elem, Embedding, Field};

/// Dense polynomial, constant term first, without trailing zeros.
#[derive(Clone)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Elem>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        *self.field == *other.field && self.coeffs == other.coeffs
    }
}

impl Eq for Poly {}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let prime = self.field.degree() == 1;
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.0 == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let coef = if prime { format!("{}", c.0) } else { format!("[{}]", c.0) };
            match (i, c.0) {
                (0, _) => write!(f, "{coef}")?,
                (1, 1) => write!(f, "x")?,
                (1, _) => write!(f, "{coef}x")?,
                (_, 1) => write!(f, "x^{i}")?,
                _ => write!(f, "{coef}x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Poly {
    pub fn new(field: &Field, mut coeffs: Vec<Elem>) -> Poly {
        while coeffs.last() == Some(&Elem(0)) {
            coeffs.pop();
        }
        Poly { field: field.clone(), coeffs }
    }

    /// Polynomial from integer coefficients reduced into the prime subfield.
    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Poly {
        Poly::new(field, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    /// Polynomial from element indices; errors when an index is out of range.
    pub fn from_indices(field: &Field, coeffs: &[u32]) -> Result<Poly> {
        if let Some(&bad) = coeffs.iter().find(|&&c| c >= field.order()) {
            return Err(Error::Malformed(format!("element index {bad} not in {field:?}")));
        }
        Ok(Poly::new(field, coeffs.iter().map(|&c| Elem(c)).collect()))
    }

    pub fn zero(field: &Field) -> Poly {
        Poly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &Field) -> Poly {
        Poly::constant(field, Elem(1))
    }

    pub fn constant(field: &Field, c: Elem) -> Poly {
        Poly::new(field, vec![c])
    }

    /// `c·x^k`.
    pub fn monomial(field: &Field, c: Elem, k: usize) -> Poly {
        let mut v = vec![Elem(0); k + 1];
        v[k] = c;
        Poly::new(field, v)
    }

    /// `x^n − 1`.
    pub fn xn_minus_1(field: &Field, n: usize) -> Poly {
        let mut v = vec![Elem(0); n + 1];
        v[0] = field.neg(Elem(1));
        v[n] = field.add(v[n], Elem(1));
        Poly::new(field, v)
    }

    /// `x − a`.
    pub fn linear(field: &Field, a: Elem) -> Poly {
        Poly::new(field, vec![field.neg(a), Elem(1)])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn to_indices(&self) -> Vec<u32> {
        self.coeffs.iter().map(|c| c.0).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [Elem(1)]
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial counted as 0.
    pub fn deg0(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem(0))
    }

    pub fn leading(&self) -> Elem {
        self.coeffs.last().copied().unwrap_or(Elem(0))
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let f = &self.field;
        let len = self.coeffs.len().max(o.coeffs.len());
        Poly::new(f, (0..len).map(|i| f.add(self.coeff(i), o.coeff(i))).collect())
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let f = &self.field;
        let len = self.coeffs.len().max(o.coeffs.len());
        Poly::new(f, (0..len).map(|i| f.sub(self.coeff(i), o.coeff(i))).collect())
    }

    pub fn neg(&self) -> Poly {
        Poly::new(&self.field, self.coeffs.iter().map(|&c| self.field.neg(c)).collect())
    }

    pub fn scale(&self, c: Elem) -> Poly {
        Poly::new(&self.field, self.coeffs.iter().map(|&a| self.field.mul(a, c)).collect())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero(&self.field);
        }
        let f = &self.field;
        let mut out = vec![Elem(0); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.0 == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::new(f, out)
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![Elem(0); k];
        v.extend_from_slice(&self.coeffs);
        Poly::new(&self.field, v)
    }

    /// Euclidean division `(quotient, remainder)`.
    pub fn divmod(&self, d: &Poly) -> Result<(Poly, Poly)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let f = &self.field;
        let lead_inv = f.inv(d.leading());
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(f), self.clone()));
        }
        let mut quo = vec![Elem(0); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = f.mul(rem[k], lead_inv);
            if c.0 == 0 {
                continue;
            }
            quo[k - dd] = c;
            for (j, &dj) in d.coeffs.iter().enumerate() {
                rem[k - dd + j] = f.sub(rem[k - dd + j], f.mul(c, dj));
            }
        }
        rem.truncate(dd);
        Ok((Poly::new(f, quo), Poly::new(f, rem)))
    }

    pub fn rem(&self, d: &Poly) -> Result<Poly> {
        Ok(self.divmod(d)?.1)
    }

    /// Exact quotient; errors when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Result<Poly> {
        let (q, r) = self.divmod(d)?;
        if !r.is_zero() {
            return Err(Error::Verification(format!("{d} does not divide {self}")));
        }
        Ok(q)
    }

    /// Scales to leading coefficient one (zero stays zero).
    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(self.field.inv(self.leading()))
    }

    /// Monic greatest common divisor (zero when both inputs are zero).
    pub fn gcd(&self, o: &Poly) -> Poly {
        self.extended_gcd(o).0
    }

    /// Returns `(g, u, v)` with `u·self + v·o = g`, `g` monic.
    pub fn extended_gcd(&self, o: &Poly) -> (Poly, Poly, Poly) {
        let f = &self.field;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Poly::one(f), Poly::zero(f));
        let (mut t0, mut t1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (qt, r) = r0.divmod(&r1).expect("nonzero divisor");
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&qt.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&qt.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, Poly::zero(f), Poly::zero(f));
        }
        let c = f.inv(r0.leading());
        (r0.scale(c), s0.scale(c), t0.scale(c))
    }

    /// Inverse modulo `m`.
    pub fn modular_inverse(&self, m: &Poly) -> Result<Poly> {
        if m.deg0() < 1 {
            return Err(Error::InvalidParameters("modulus must have degree >= 1".into()));
        }
        let a = self.rem(m)?;
        let (g, u, _) = a.extended_gcd(m);
        if !g.is_one() {
            return Err(Error::NotCoprime);
        }
        u.rem(m)
    }

    /// Value at a point of the same field.
    pub fn eval(&self, x: Elem) -> Elem {
        let f = &self.field;
        self.coeffs.iter().rev().fold(Elem(0), |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Value at a point of an extension field, coefficients mapped by `emb`.
    pub fn eval_at(&self, emb: &Embedding, x: Elem) -> Elem {
        let f = emb.target();
        self.coeffs
            .iter()
            .rev()
            .fold(Elem(0), |acc, &c| f.add(f.mul(acc, x), emb.apply(c)))
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        Poly::new(
            f,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| f.mul(c, f.from_int(i as i64)))
                .collect(),
        )
    }

    /// Unique polynomial of degree `< points.len()` through all pairs.
    pub fn interpolate(field: &Field, points: &[Elem], values: &[Elem]) -> Result<Poly> {
        if points.len() != values.len() {
            return Err(Error::DimensionMismatch("points and values differ in length".into()));
        }
        for i in 0..points.len() {
            if points[i + 1..].contains(&points[i]) {
                return Err(Error::DuplicatePoints);
            }
        }
        let mut acc = Poly::zero(field);
        for (i, (&xi, &yi)) in points.iter().zip(values).enumerate() {
            let mut basis = Poly::one(field);
            let mut denom = Elem(1);
            for (j, &xj) in points.iter().enumerate() {
                if i != j {
                    basis = basis.mul(&Poly::linear(field, xj));
                    denom = field.mul(denom, field.sub(xi, xj));
                }
            }
            acc = acc.add(&basis.scale(field.div(yi, denom)));
        }
        Ok(acc)
    }
}

/// Sorted q-cyclotomic cosets modulo `n`, ordered by their least element.
pub fn cyclotomic_cosets(n: usize, q: u64) -> Vec<Vec<usize>> {
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for j in 0..n {
        if seen[j] {
            continue;
        }
        let mut coset = Vec::new();
        let mut e = j;
        while !seen[e] {
            seen[e] = true;
            coset.push(e);
            e = ((e as u64 * q) % n as u64) as usize;
        }
        coset.sort_unstable();
        out.push(coset);
    }
    out
}

/// Closure of a set of exponents under multiplication by `q` modulo `n`.
pub fn q_closure(exps: &[usize], n: usize, q: u64) -> Vec<usize> {
    let mut inset = vec![false; n];
    for &e in exps {
        let mut x = e % n;
        while !inset[x] {
            inset[x] = true;
            x = ((x as u64 * q) % n as u64) as usize;
        }
    }
    (0..n).filter(|&i| inset[i]).collect()
}

/// The splitting field GF(q^r) of `x^n − 1` over the base field, with a fixed
/// primitive n-th root of unity `α`.
#[derive(Clone, Debug)]
pub struct Splitting {
    pub base: Field,
    pub ext: Field,
    pub embedding: Embedding,
    pub n: usize,
    pub r: u32,
    pub alpha: Elem,
}

impl Splitting {
    pub fn new(base: &Field, n: usize) -> Result<Splitting> {
        let p = base.characteristic();
        if n == 0 || gcd(n as u64, p as u64) != 1 {
            return Err(Error::CoindexNotCoprime { n, p });
        }
        let q = base.order() as u64;
        let r = mult_order(q, n as u64);
        let ext = make_field(p, base.degree() * r)?;
        let embedding = embed(base, &ext)?;
        let alpha = nth_root_of_unity(&ext, n as u64)?;
        Ok(Splitting { base: base.clone(), ext, embedding, n, r, alpha })
    }

    /// `α^i`.
    pub fn root(&self, i: usize) -> Elem {
        self.ext.pow(self.alpha, (i % self.n) as u64)
    }

    /// `f(α^i)` in GF(q^r).
    pub fn eval(&self, f: &Poly, i: usize) -> Elem {
        f.eval_at(&self.embedding, self.root(i))
    }

    /// `∏_{i ∈ exps} (x − α^i)`, which must have base-field coefficients.
    pub fn poly_with_roots(&self, exps: &[usize]) -> Result<Poly> {
        let ext = &self.ext;
        let mut acc = Poly::one(ext);
        for &i in exps {
            acc = acc.mul(&Poly::linear(ext, self.root(i)));
        }
        let coeffs = acc
            .coeffs()
            .iter()
            .map(|&c| {
                self.embedding
                    .preimage(c)
                    .ok_or_else(|| Error::NotCyclotomicClosed)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly::new(&self.base, coeffs))
    }
}

/// Irreducible factorization of `x^n − 1` indexed by cyclotomic cosets.
#[derive(Clone, Debug)]
pub struct CosetFactorization {
    pub splitting: Splitting,
    pub cosets: Vec<Vec<usize>>,
    pub factors: Vec<Poly>,
    /// `v_i`, the least exponent of coset `i`.
    pub first_roots: Vec<usize>,
    coset_of: Vec<usize>,
}

impl CosetFactorization {
    pub fn n(&self) -> usize {
        self.splitting.n
    }

    /// Index of the coset containing exponent `e`.
    pub fn coset_of(&self, e: usize) -> usize {
        self.coset_of[e % self.n()]
    }

    /// Product of the factors whose indices are listed.
    pub fn product(&self, idx: &[usize]) -> Poly {
        idx.iter()
            .fold(Poly::one(&self.splitting.base), |acc, &i| acc.mul(&self.factors[i]))
    }
}

/// Factors `x^n − 1` over `field` into minimal polynomials of the cosets.
pub fn factor_xn_minus_1(field: &Field, n: usize) -> Result<CosetFactorization> {
    let splitting = Splitting::new(field, n)?;
    let cosets = cyclotomic_cosets(n, field.order() as u64);
    let factors = cosets
        .iter()
        .map(|c| splitting.poly_with_roots(c))
        .collect::<Result<Vec<_>>>()?;
    let first_roots = cosets.iter().map(|c| c[0]).collect();
    let mut coset_of = vec![0; n];
    for (k, c) in cosets.iter().enumerate() {
        for &e in c {
            coset_of[e] = k;
        }
    }
    Ok(CosetFactorization { splitting, cosets, factors, first_roots, coset_of })
}

/// Matrix of polynomials, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|p| p.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl PolyMatrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> PolyMatrix {
        PolyMatrix { field: field.clone(), rows, cols, entries: vec![Poly::zero(field); rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> PolyMatrix {
        let mut m = PolyMatrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Poly::one(field));
        }
        m
    }

    pub fn from_rows(field: &Field, rows: Vec<Vec<Poly>>) -> Result<PolyMatrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::DimensionMismatch("ragged polynomial matrix".into()));
        }
        Ok(PolyMatrix { field: field.clone(), rows: r, cols: c, entries: rows.into_iter().flatten().collect() })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        self.entries[i * self.cols + j] = p;
    }

    pub fn row(&self, i: usize) -> &[Poly] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Poly>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn diagonal(&self) -> Vec<Poly> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).collect()
    }

    pub fn mul(&self, o: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != o.rows {
            return Err(Error::DimensionMismatch("matrix product".into()));
        }
        let mut out = PolyMatrix::zeros(&self.field, self.rows, o.cols);
        for i in 0..self.rows {
            for j in 0..o.cols {
                let mut acc = Poly::zero(&self.field);
                for k in 0..self.cols {
                    acc = acc.add(&self.get(i, k).mul(o.get(k, j)));
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, p: &Poly) -> PolyMatrix {
        PolyMatrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e.mul(p)).collect(),
        }
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols.min(i)).all(|j| self.get(i, j).is_zero()))
    }

    /// Entrywise evaluation at a point of an extension field.
    pub fn eval_at(&self, emb: &Embedding, x: Elem) -> Vec<Vec<Elem>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|p| p.eval_at(emb, x)).collect())
            .collect()
    }
}

/// Determinant: product of the diagonal for triangular input, cofactor
/// expansion otherwise.
pub fn polymatrix_det(m: &PolyMatrix) -> Result<Poly> {
    if m.rows != m.cols {
        return Err(Error::DimensionMismatch("determinant of a non-square matrix".into()));
    }
    if m.is_upper_triangular() {
        return Ok(m.diagonal().iter().fold(Poly::one(&m.field), |a, d| a.mul(d)));
    }
    let idx: Vec<usize> = (0..m.cols).collect();
    Ok(det_rec(m, 0, &idx))
}

fn det_rec(m: &PolyMatrix, row: usize, cols: &[usize]) -> Poly {
    if cols.is_empty() {
        return Poly::one(&m.field);
    }
    let mut acc = Poly::zero(&m.field);
    for (k, &c) in cols.iter().enumerate() {
        let e = m.get(row, c);
        if e.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = e.mul(&det_rec(m, row + 1, &rest));
        acc = if k % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

/// Reduces generator vectors of a quasi-cyclic code to the upper-triangular
/// form `G̃(x)` whose rows generate the same `F_q[x]`-module together with
/// `(x^n − 1)·e_j`.
///
/// The output satisfies: upper triangular; monic diagonal entries dividing
/// `x^n − 1`; `deg g_{i,j} < deg g_{j,j}` above the diagonal; and any row whose
/// diagonal entry is `x^n − 1` equals `(x^n − 1)·e_j`.
pub fn reduce_to_lally_form(field: &Field, gens: &[Vec<Poly>], n: usize, ell: usize) -> Result<PolyMatrix> {
    let p = field.characteristic();
    if gcd(n as u64, p as u64) != 1 {
        return Err(Error::CoindexNotCoprime { n, p });
    }
    let xn1 = Poly::xn_minus_1(field, n);
    let mut rows: Vec<Vec<Poly>> = Vec::with_capacity(gens.len() + ell);
    for g in gens {
        if g.len() != ell {
            return Err(Error::Malformed(format!("generator has {} components, expected {ell}", g.len())));
        }
        rows.push(g.iter().map(|c| c.rem(&xn1)).collect::<Result<_>>()?);
    }
    for j in 0..ell {
        let mut r = vec![Poly::zero(field); ell];
        r[j] = xn1.clone();
        rows.push(r);
    }

    // Entries right of the current column are reduced mod x^n − 1; the rows
    // (x^n − 1)e_c for c > j are still present and untouched at that point.
    let reduce_tail = |row: &mut Vec<Poly>, from: usize| {
        for e in row.iter_mut().skip(from) {
            if e.deg0() >= n {
                *e = e.rem(&xn1).expect("nonzero modulus");
            }
        }
    };

    let mut out: Vec<Vec<Poly>> = Vec::with_capacity(ell);
    for j in 0..ell {
        let cand: Vec<usize> = (0..rows.len()).filter(|&i| !rows[i][j].is_zero()).collect();
        let piv = *cand
            .iter()
            .min_by_key(|&&i| (rows[i][j].deg0(), i))
            .expect("the row (x^n-1)e_j is always present");
        for &o in cand.iter().filter(|&&i| i != piv) {
            let a = rows[piv][j].clone();
            let b = rows[o][j].clone();
            let (g, u, v) = a.extended_gcd(&b);
            let bg = b.div_exact(&g)?;
            let ag = a.div_exact(&g)?;
            let mut new_p = Vec::with_capacity(ell);
            let mut new_o = Vec::with_capacity(ell);
            for c in 0..ell {
                let (pc, oc) = (&rows[piv][c], &rows[o][c]);
                new_p.push(u.mul(pc).add(&v.mul(oc)));
                new_o.push(bg.mul(pc).sub(&ag.mul(oc)));
            }
            reduce_tail(&mut new_p, j + 1);
            reduce_tail(&mut new_o, j + 1);
            rows[piv] = new_p;
            rows[o] = new_o;
        }
        let mut prow = rows.remove(piv);
        let c = field.inv(prow[j].leading());
        for e in prow.iter_mut() {
            *e = e.scale(c);
        }
        out.push(prow);
    }
    if rows.iter().any(|r| r.iter().any(|e| !e.is_zero())) {
        return Err(Error::Verification("elimination left a nonzero row".into()));
    }
    for (j, row) in out.iter_mut().enumerate() {
        if row[j] == xn1 {
            for (c, e) in row.iter_mut().enumerate() {
                *e = if c == j { xn1.clone() } else { Poly::zero(field) };
            }
        }
    }
    for j in 0..ell {
        let pivot_row = out[j].clone();
        for row in out.iter_mut().take(j) {
            let (qt, _) = row[j].divmod(&pivot_row[j])?;
            if qt.is_zero() {
                continue;
            }
            for c in j..ell {
                row[c] = row[c].sub(&qt.mul(&pivot_row[c]));
            }
        }
    }
    PolyMatrix::from_rows(field, out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;
    use rand::{Rng, SeedableRng};
    use rand_xoshiro::Xoshiro256PlusPlus;

    fn p(f: &Field, c: &[i64]) -> Poly {
        Poly::from_ints(f, c)
    }

    fn random_poly(f: &Field, rng: &mut Xoshiro256PlusPlus, max_deg: usize) -> Poly {
        let d = rng.gen_range(0..=max_deg);
        Poly::new(f, (0..=d).map(|_| f.random(rng)).collect())
    }

    #[test]
    fn factorizations() {
        let f3 = make_field(3, 1).unwrap();
        let fz = factor_xn_minus_1(&f3, 5).unwrap();
        assert_eq!(fz.factors, vec![p(&f3, &[-1, 1]), p(&f3, &[1, 1, 1, 1, 1])]);
        assert_eq!(fz.first_roots, vec![0, 1]);
        let f2 = make_field(2, 1).unwrap();
        let fz = factor_xn_minus_1(&f2, 3).unwrap();
        assert_eq!(fz.factors, vec![p(&f2, &[1, 1]), p(&f2, &[1, 1, 1])]);
        let f5 = make_field(5, 1).unwrap();
        let fz = factor_xn_minus_1(&f5, 4).unwrap();
        assert_eq!(fz.factors.len(), 4);
        assert!(fz.factors.iter().all(|f| f.degree() == Some(1)));
        assert!(factor_xn_minus_1(&f3, 6).is_err());
    }

    #[test]
    fn factorization_properties() {
        for &(pp, m, n) in &[(2u32, 1u32, 7usize), (2, 1, 15), (3, 1, 8), (2, 2, 5), (3, 2, 10), (5, 1, 12), (2, 1, 23)] {
            let f = make_field(pp, m).unwrap();
            let fz = factor_xn_minus_1(&f, n).unwrap();
            let prod = fz.factors.iter().fold(Poly::one(&f), |a, b| a.mul(b));
            assert_eq!(prod, Poly::xn_minus_1(&f, n));
            for (k, fac) in fz.factors.iter().enumerate() {
                assert_eq!(fac.degree(), Some(fz.cosets[k].len()));
                for e in 0..n {
                    let zero = fz.splitting.eval(fac, e) == Elem(0);
                    assert_eq!(zero, fz.coset_of(e) == k);
                }
            }
        }
    }

    #[test]
    fn euclid() {
        let f2 = make_field(2, 1).unwrap();
        assert_eq!(p(&f2, &[0, 1, 1]).gcd(&p(&f2, &[1, 1])), p(&f2, &[1, 1]));
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(11);
        for &(pp, m) in &[(2, 1), (3, 1), (2, 2), (5, 1)] {
            let f = make_field(pp, m).unwrap();
            for _ in 0..1000 {
                let a = random_poly(&f, &mut rng, 8);
                let b = random_poly(&f, &mut rng, 8);
                let (g, u, v) = a.extended_gcd(&b);
                assert_eq!(u.mul(&a).add(&v.mul(&b)), g);
                if !g.is_zero() {
                    assert_eq!(g.leading(), Elem(1));
                    assert!(a.rem(&g).unwrap().is_zero() && b.rem(&g).unwrap().is_zero());
                }
                if !b.is_zero() {
                    let (qt, r) = a.divmod(&b).unwrap();
                    assert_eq!(qt.mul(&b).add(&r), a);
                    assert!(r.is_zero() || r.deg0() < b.deg0());
                }
            }
        }
        assert!(p(&f2, &[1]).divmod(&Poly::zero(&f2)).is_err());
    }

    #[test]
    fn evaluation_and_interpolation() {
        let f3 = make_field(3, 1).unwrap();
        let sp = Splitting::new(&f3, 5).unwrap();
        assert_eq!(sp.eval(&Poly::xn_minus_1(&f3, 5), 1), Elem(0));
        // values of −(x − 1)^{-1} at the four primitive 5th roots
        let ext = &sp.ext;
        let pts: Vec<Elem> = (1..5).map(|j| sp.root(j)).collect();
        let vals: Vec<Elem> = pts.iter().map(|&b| ext.neg(ext.inv(ext.sub(b, Elem(1))))).collect();
        let a2 = Poly::interpolate(ext, &pts, &vals).unwrap();
        let back: Vec<Elem> = a2.coeffs().iter().map(|&c| sp.embedding.preimage(c).unwrap()).collect();
        assert_eq!(Poly::new(&f3, back), p(&f3, &[-1, 0, 1, -1]));
        assert_eq!(
            Poly::interpolate(&f3, &[Elem(1), Elem(1)], &[Elem(0), Elem(1)]),
            Err(Error::DuplicatePoints)
        );
    }

    #[test]
    fn modular_inverses() {
        let f3 = make_field(3, 1).unwrap();
        let g1 = p(&f3, &[-1, 1]);
        let g2 = p(&f3, &[1, 1, 1, 1, 1]);
        assert_eq!(Poly::one(&f3).modular_inverse(&g2).unwrap(), Poly::one(&f3));
        // a1 ≡ −γ·g2^{-1} mod g1 with γ = −1, agreeing with −x at the root 1
        let a1 = g2.modular_inverse(&g1).unwrap();
        assert_eq!(a1.eval(Elem(1)), p(&f3, &[0, -1]).eval(Elem(1)));
        // a2 ≡ −γ²·g1^{-1} mod g2
        let a2 = g1.modular_inverse(&g2).unwrap().neg();
        assert_eq!(a2, p(&f3, &[-1, 0, 1, -1]));
        assert_eq!(g1.modular_inverse(&g1.mul(&g2)), Err(Error::NotCoprime));
    }

    fn gens(f: &Field, v: &[&[&[i64]]]) -> Vec<Vec<Poly>> {
        v.iter().map(|g| g.iter().map(|c| p(f, c)).collect()).collect()
    }

    #[test]
    fn lally_example_binary() {
        let f2 = make_field(2, 1).unwrap();
        let g = gens(&f2, &[&[&[0, 1, 1], &[1, 1], &[1, 0, 1]]]);
        let m = reduce_to_lally_form(&f2, &g, 3, 3).unwrap();
        assert!(m.is_upper_triangular());
        let det = polymatrix_det(&m).unwrap();
        let x31 = Poly::xn_minus_1(&f2, 3);
        assert_eq!(det, p(&f2, &[1, 1]).mul(&x31).mul(&x31));
        assert_eq!(m.row(0).to_vec(), vec![p(&f2, &[1, 1]), p(&f2, &[1, 0, 1]), p(&f2, &[0, 1, 1])]);
        assert_eq!(m.row(1).to_vec(), vec![Poly::zero(&f2), x31.clone(), Poly::zero(&f2)]);
    }

    #[test]
    fn lally_ternary_and_trivial() {
        let f3 = make_field(3, 1).unwrap();
        let g = gens(&f3, &[&[&[2, 1, 2, 1], &[1, 2, 1]], &[&[0, 1, 2], &[1, 1, 1, 1]]]);
        let m = reduce_to_lally_form(&f3, &g, 4, 2).unwrap();
        assert_eq!(m.diagonal(), vec![p(&f3, &[2, 1]), p(&f3, &[1, 1])]);
        let z = reduce_to_lally_form(&f3, &[], 4, 2).unwrap();
        assert_eq!(z, PolyMatrix::identity(&f3, 2).scale(&Poly::xn_minus_1(&f3, 4)));
        let again = reduce_to_lally_form(&f3, &m.to_rows(), 4, 2).unwrap();
        assert_eq!(again, m);
    }

    #[test]
    fn lally_random_conditions() {
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(5);
        for &(pp, n) in &[(2u32, 3usize), (2, 7), (3, 4), (5, 4), (2, 5)] {
            let f = make_field(pp, 1).unwrap();
            let xn1 = Poly::xn_minus_1(&f, n);
            for _ in 0..60 {
                let ell = rng.gen_range(1..=4);
                let r = rng.gen_range(1..=ell);
                let g: Vec<Vec<Poly>> = (0..r)
                    .map(|_| (0..ell).map(|_| random_poly(&f, &mut rng, n - 1)).collect())
                    .collect();
                let m = reduce_to_lally_form(&f, &g, n, ell).unwrap();
                assert!(m.is_upper_triangular());
                for j in 0..ell {
                    let d = m.get(j, j);
                    assert_eq!(d.leading(), Elem(1));
                    assert!(xn1.rem(d).unwrap().is_zero());
                    for i in 0..j {
                        assert!(m.get(i, j).is_zero() || m.get(i, j).deg0() < d.deg0());
                    }
                    if *d == xn1 {
                        assert!((0..ell).all(|c| c == j || m.get(j, c).is_zero()));
                    }
                }
                // the input generators lie in the row module: H·g ≡ 0 where
                // membership is tested by triangular back-substitution
                for gv in &g {
                    let mut v: Vec<Poly> = gv.clone();
                    for j in 0..ell {
                        let (qt, rr) = v[j].divmod(m.get(j, j)).unwrap();
                        assert!(rr.is_zero());
                        for c in j..ell {
                            v[c] = v[c].sub(&qt.mul(m.get(j, c)));
                        }
                    }
                    assert!(v.iter().all(|e| e.is_zero()));
                }
            }
        }
    }

    #[test]
    fn determinant() {
        let f3 = make_field(3, 1).unwrap();
        assert_eq!(polymatrix_det(&PolyMatrix::identity(&f3, 3)).unwrap(), Poly::one(&f3));
        let m = PolyMatrix::from_rows(
            &f3,
            vec![vec![p(&f3, &[0, 1]), p(&f3, &[1])], vec![p(&f3, &[1]), p(&f3, &[0, 1])]],
        )
        .unwrap();
        assert_eq!(polymatrix_det(&m).unwrap(), p(&f3, &[-1, 0, 1]));
    }
}
