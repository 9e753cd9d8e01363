//! Arithmetic in finite fields GF(p^m).
//!
//! Elements are stored as their integer index `Σ aᵢ pⁱ` where `(a₀, …, a_{m−1})`
//! are the coordinates in the polynomial basis `1, x, …, x^{m−1}`. A field is
//! shared through [`Field`], an `Arc` around an immutable [`FieldCtx`].

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::arith::{gcd, inv_mod, is_prime, prime_divisors};
use crate::error::{Error, Result};

/// Largest supported field order.
pub const FIELD_CAP: u64 = 1 << 31;

/// Log/antilog tables are built up to this order.
const TABLE_LIMIT: u32 = 1 << 20;

/// Shared handle to a field context.
pub type Field = Arc<FieldCtx>;

/// A field element, identified by its integer index.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Elem(pub u32);

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The field GF(p^m) with a fixed primitive modulus.
pub struct FieldCtx {
    p: u32,
    m: u32,
    q: u32,
    /// Monic modulus, constant term first, length m+1; empty for prime fields.
    modulus: Vec<u32>,
    generator: Elem,
    tables: Option<Tables>,
}

struct Tables {
    /// `exp[i] = g^i` for `0 <= i < 2(q−1)`.
    exp: Vec<u32>,
    /// `log[a]` for nonzero `a`.
    log: Vec<u32>,
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m
    }
}

impl Eq for FieldCtx {}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m == 1 {
            write!(f, "GF({})", self.p)
        } else {
            write!(f, "GF({}^{})", self.p, self.m)
        }
    }
}

/// Returns the (cached) field GF(p^m).
///
/// The modulus is the lexicographically smallest monic primitive polynomial of
/// degree `m`, comparing coefficient vectors from the constant term upwards.
/// For `m = 1` the generator is the smallest primitive root modulo `p`.
pub fn make_field(p: u32, m: u32) -> Result<Field> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), Field>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(f) = cache.lock().unwrap().get(&(p, m)) {
        return Ok(f.clone());
    }
    let f = Arc::new(FieldCtx::new(p, m)?);
    Ok(cache.lock().unwrap().entry((p, m)).or_insert(f).clone())
}

/// Field of order `q`, which must be a prime power.
pub fn field_of_order(q: u64) -> Result<Field> {
    let (p, m) = crate::arith::prime_power(q).ok_or(Error::NotPrimePower(q))?;
    make_field(p, m)
}

// Dense polynomials over GF(p) as digit vectors, used while searching for the modulus.
fn pmul_mod(a: &[u32], b: &[u32], f: &[u32], p: u32) -> Vec<u32> {
    let m = f.len() - 1;
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    for d in (m..prod.len()).rev() {
        let c = prod[d];
        if c == 0 {
            continue;
        }
        for (k, &fk) in f.iter().enumerate().take(m) {
            let t = c * fk as u64 % p as u64;
            prod[d - m + k] = (prod[d - m + k] + p as u64 - t) % p as u64;
        }
        prod[d] = 0;
    }
    prod.truncate(m);
    prod.into_iter().map(|v| v as u32).collect()
}

// Requires deg f >= 2.
fn ppow_x(e: u64, f: &[u32], p: u32) -> Vec<u32> {
    let m = f.len() - 1;
    let mut result = vec![0u32; m];
    result[0] = 1;
    let mut base = vec![0u32; m];
    base[1] = 1;
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            result = pmul_mod(&result, &base, f, p);
        }
        base = pmul_mod(&base, &base, f, p);
        e >>= 1;
    }
    result
}

fn is_primitive(f: &[u32], p: u32) -> bool {
    let m = f.len() - 1;
    let order = (p as u64).pow(m as u32) - 1;
    let one = {
        let mut v = vec![0u32; m];
        v[0] = 1;
        v
    };
    if ppow_x(order, f, p) != one {
        return false;
    }
    prime_divisors(order)
        .into_iter()
        .all(|r| ppow_x(order / r, f, p) != one)
}

fn pow_mod_u64(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

impl FieldCtx {
    /// Builds GF(p^m) without consulting the cache.
    pub fn new(p: u32, m: u32) -> Result<FieldCtx> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if m == 0 {
            return Err(Error::InvalidParameters("extension degree must be >= 1".into()));
        }
        let q64 = (p as u64).checked_pow(m).unwrap_or(u64::MAX);
        if q64 > FIELD_CAP {
            return Err(Error::FieldTooLarge { p: p as u64, m: m as u64 });
        }
        let q = q64 as u32;
        let (modulus, generator) = if m == 1 {
            let g = if p == 2 {
                1
            } else {
                let divs = prime_divisors(p as u64 - 1);
                (2..p as u64)
                    .find(|&g| divs.iter().all(|&r| pow_mod_u64(g, (p as u64 - 1) / r, p as u64) != 1))
                    .expect("prime fields have primitive roots")
            };
            (Vec::new(), Elem(g as u32))
        } else {
            let mut found = None;
            for idx in 0..(q as u64) {
                // c0 is the most significant digit of idx
                let mut f = vec![0u32; m as usize + 1];
                let mut t = idx;
                for i in (0..m as usize).rev() {
                    f[i] = (t % p as u64) as u32;
                    t /= p as u64;
                }
                f[m as usize] = 1;
                if f[0] != 0 && is_primitive(&f, p) {
                    found = Some(f);
                    break;
                }
            }
            (found.expect("primitive polynomials exist"), Elem(p))
        };
        let mut ctx = FieldCtx { p, m, q, modulus, generator, tables: None };
        if q <= TABLE_LIMIT {
            let n = (q - 1) as usize;
            let mut exp = vec![0u32; 2 * n.max(1)];
            let mut log = vec![0u32; q as usize];
            let mut acc = Elem(1);
            for i in 0..n {
                exp[i] = acc.0;
                log[acc.0 as usize] = i as u32;
                acc = ctx.mul_slow(acc, generator);
            }
            for i in n..2 * n {
                exp[i] = exp[i - n];
            }
            if n == 0 {
                exp[0] = 1;
            }
            ctx.tables = Some(Tables { exp, log });
        }
        Ok(ctx)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    /// Number of elements `q = p^m`.
    pub fn order(&self) -> u32 {
        self.q
    }

    /// Monic modulus coefficients, constant term first (empty for prime fields).
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The fixed multiplicative generator.
    pub fn generator(&self) -> Elem {
        self.generator
    }

    pub fn zero(&self) -> Elem {
        Elem(0)
    }

    pub fn one(&self) -> Elem {
        Elem(1)
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, v: i64) -> Elem {
        Elem(v.rem_euclid(self.p as i64) as u32)
    }

    /// Coordinates over GF(p), constant term first.
    pub fn digits(&self, a: Elem) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.m as usize);
        let mut t = a.0;
        for _ in 0..self.m {
            out.push(t % self.p);
            t /= self.p;
        }
        out
    }

    pub fn from_digits(&self, d: &[u32]) -> Elem {
        let mut v = 0u32;
        for &x in d.iter().rev() {
            v = v * self.p + x;
        }
        Elem(v)
    }

    /// `Some(c)` when `a` lies in the prime subfield.
    pub fn as_prime(&self, a: Elem) -> Option<u32> {
        (a.0 < self.p).then_some(a.0)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.q).map(Elem)
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Elem {
        Elem(rng.gen_range(0..self.q))
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.m == 1 {
            let s = a.0 + b.0;
            return Elem(if s >= self.p { s - self.p } else { s });
        }
        if self.p == 2 {
            return Elem(a.0 ^ b.0);
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0;
        let mut place = 1;
        while x > 0 || y > 0 {
            out += ((x % self.p + y % self.p) % self.p) * place;
            x /= self.p;
            y /= self.p;
            place *= self.p;
        }
        Elem(out)
    }

    pub fn neg(&self, a: Elem) -> Elem {
        if self.p == 2 {
            return a;
        }
        if self.m == 1 {
            return Elem(if a.0 == 0 { 0 } else { self.p - a.0 });
        }
        let mut x = a.0;
        let mut out = 0;
        let mut place = 1;
        while x > 0 {
            out += ((self.p - x % self.p) % self.p) * place;
            x /= self.p;
            place *= self.p;
        }
        Elem(out)
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    fn mul_slow(&self, a: Elem, b: Elem) -> Elem {
        if self.m == 1 {
            return Elem((a.0 as u64 * b.0 as u64 % self.p as u64) as u32);
        }
        let r = pmul_mod(&self.digits(a), &self.digits(b), &self.modulus, self.p);
        self.from_digits(&r)
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem(0);
        }
        match &self.tables {
            Some(t) => Elem(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize]),
            None => self.mul_slow(a, b),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn try_inv(&self, a: Elem) -> Option<Elem> {
        if a.0 == 0 {
            return None;
        }
        match &self.tables {
            Some(t) => {
                let n = self.q - 1;
                Some(Elem(t.exp[((n - t.log[a.0 as usize]) % n) as usize]))
            }
            None if self.m == 1 => inv_mod(a.0 as u64, self.p as u64).map(|v| Elem(v as u32)),
            None => Some(self.pow(a, self.q as u64 - 2)),
        }
    }

    /// Multiplicative inverse.
    ///
    /// # Panics
    /// Panics when `a` is zero.
    pub fn inv(&self, a: Elem) -> Elem {
        self.try_inv(a).expect("inverse of zero")
    }

    pub fn div(&self, a: Elem, b: Elem) -> Elem {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return Elem(1);
        }
        if a.0 == 0 {
            return Elem(0);
        }
        if let Some(t) = &self.tables {
            let n = (self.q - 1) as u64;
            let l = t.log[a.0 as usize] as u64 * (e % n) % n;
            return Elem(t.exp[l as usize]);
        }
        let mut r = Elem(1);
        let mut b = a;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul_slow(r, b);
            }
            b = self.mul_slow(b, b);
            e >>= 1;
        }
        r
    }

    /// Discrete logarithm to the base of the generator.
    pub fn log(&self, a: Elem) -> Option<u64> {
        if a.0 == 0 {
            return None;
        }
        match &self.tables {
            Some(t) => Some(t.log[a.0 as usize] as u64),
            None => {
                let mut acc = Elem(1);
                for i in 0..(self.q as u64 - 1) {
                    if acc == a {
                        return Some(i);
                    }
                    acc = self.mul_slow(acc, self.generator);
                }
                None
            }
        }
    }

    /// `generator^e`.
    pub fn exp(&self, e: u64) -> Elem {
        self.pow(self.generator, e)
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: Elem) -> u64 {
        let n = self.q as u64 - 1;
        match self.log(a) {
            Some(l) => n / gcd(l, n),
            None => 0,
        }
    }
}

/// Returns `generator^((p^m−1)/n)`, an element of multiplicative order `n`.
pub fn nth_root_of_unity(ctx: &FieldCtx, n: u64) -> Result<Elem> {
    let order = ctx.order() as u64 - 1;
    if n == 0 || order % n != 0 {
        return Err(Error::NoRootOfUnity { n, q: ctx.order() as u64 });
    }
    Ok(ctx.exp(order / n))
}

/// A field homomorphism GF(p^a) → GF(p^b).
#[derive(Clone)]
pub struct Embedding {
    src: Field,
    dst: Field,
    /// Image of the class of x (equal to the generator when a > 1).
    x_image: Elem,
}

impl fmt::Debug for Embedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} -> {:?} (x -> {})", self.src, self.dst, self.x_image)
    }
}

/// Builds the embedding of `src` into `dst`.
///
/// The source generator is sent to `w^j` where `w = dst.generator^((p^b−1)/(p^a−1))`
/// and `j ≥ 1` is the smallest exponent making `w^j` a root of the source
/// modulus (usually `j = 1`).
pub fn embed(src: &Field, dst: &Field) -> Result<Embedding> {
    if src.p != dst.p {
        return Err(Error::CharacteristicMismatch(src.p, dst.p));
    }
    if dst.m % src.m != 0 {
        return Err(Error::NotSubfield { p: src.p, a: src.m, b: dst.m });
    }
    if src.m == 1 {
        return Ok(Embedding { src: src.clone(), dst: dst.clone(), x_image: Elem(0) });
    }
    let n_index = (dst.q as u64 - 1) / (src.q as u64 - 1);
    let w = dst.exp(n_index);
    let order = src.q as u64 - 1;
    let mut acc = w;
    for j in 1..=order {
        if gcd(j, order) == 1 && eval_digits(dst, &src.modulus, acc) == Elem(0) {
            return Ok(Embedding { src: src.clone(), dst: dst.clone(), x_image: acc });
        }
        acc = dst.mul(acc, w);
    }
    Err(Error::Verification("no root of the source modulus in the target".into()))
}

fn eval_digits(dst: &FieldCtx, coeffs: &[u32], x: Elem) -> Elem {
    let mut acc = Elem(0);
    for &c in coeffs.iter().rev() {
        acc = dst.add(dst.mul(acc, x), dst.from_int(c as i64));
    }
    acc
}

impl Embedding {
    pub fn source(&self) -> &Field {
        &self.src
    }

    pub fn target(&self) -> &Field {
        &self.dst
    }

    /// Image of the source generator.
    pub fn image_of_generator(&self) -> Elem {
        self.apply(self.src.generator())
    }

    pub fn apply(&self, a: Elem) -> Elem {
        if self.src.m == 1 {
            return Elem(a.0);
        }
        eval_digits(&self.dst, &self.src.digits(a), self.x_image)
    }

    /// The source element mapping to `y`, if `y` lies in the image.
    pub fn preimage(&self, y: Elem) -> Option<Elem> {
        if self.src.m == 1 {
            return (y.0 < self.src.p).then_some(y);
        }
        if y.0 == 0 {
            return Some(Elem(0));
        }
        if self.dst.tables.is_some() {
            let t = self.dst.log(y)?;
            let n_index = (self.dst.q as u64 - 1) / (self.src.q as u64 - 1);
            if t % n_index != 0 {
                return None;
            }
            let order = self.src.q as u64 - 1;
            let j = self.dst.log(self.x_image)? / n_index;
            let s = (t / n_index) % order * inv_mod(j % order, order)? % order;
            return Some(self.src.exp(s));
        }
        self.src.elements().find(|&a| self.apply(a) == y)
    }
}

/// Trace of `el ∈ field` down to the subfield `sub`, returned as an element of `sub`.
pub fn trace(field: &Field, el: Elem, sub: &Field) -> Result<Elem> {
    let emb = embed(sub, field)?;
    let e = field.m / sub.m;
    let mut acc = Elem(0);
    let mut x = el;
    for _ in 0..e {
        acc = field.add(acc, x);
        x = field.pow(x, sub.q as u64);
    }
    emb.preimage(acc)
        .ok_or_else(|| Error::Verification("trace left the subfield".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_xoshiro::Xoshiro256PlusPlus;

    #[test]
    fn small_fields() {
        let f2 = make_field(2, 1).unwrap();
        assert_eq!(f2.generator(), Elem(1));
        let f4 = make_field(2, 2).unwrap();
        assert_eq!(f4.modulus(), &[1, 1, 1]);
        let x = f4.generator();
        assert_eq!(f4.mul(x, x), f4.from_digits(&[1, 1]));
        let f5 = make_field(5, 1).unwrap();
        assert_eq!(f5.generator(), Elem(2));
        assert!(make_field(4, 1).is_err());
        assert!(make_field(2, 32).is_err());
    }

    #[test]
    fn modulus_is_smallest_primitive() {
        // Independent oracle: scan all monic polynomials with the same ordering
        // and test primitivity by brute-force order computation.
        for &(p, m) in &[(2u32, 3u32), (2, 4), (3, 2), (3, 3), (5, 2), (3, 4)] {
            let q = p.pow(m);
            let mut best = None;
            'outer: for idx in 0..q {
                let mut f = vec![0u32; m as usize + 1];
                let mut t = idx;
                for i in (0..m as usize).rev() {
                    f[i] = t % p;
                    t /= p;
                }
                f[m as usize] = 1;
                if f[0] == 0 {
                    continue;
                }
                // order of x modulo f by repeated multiplication
                let mut cur = vec![0u32; m as usize];
                cur[0] = 1;
                let mut x = vec![0u32; m as usize];
                x[1] = 1;
                for k in 1..q {
                    cur = pmul_mod(&cur, &x, &f, p);
                    let is_one = cur[0] == 1 && cur[1..].iter().all(|&c| c == 0);
                    if is_one {
                        if k == q - 1 {
                            best = Some(f);
                            break 'outer;
                        }
                        continue 'outer;
                    }
                }
            }
            let ctx = FieldCtx::new(p, m).unwrap();
            assert_eq!(ctx.modulus(), best.unwrap().as_slice(), "GF({p}^{m})");
        }
    }

    #[test]
    fn determinism() {
        let a = FieldCtx::new(3, 4).unwrap();
        let b = FieldCtx::new(3, 4).unwrap();
        assert_eq!(a.modulus(), b.modulus());
        assert!(Arc::ptr_eq(&make_field(3, 4).unwrap(), &make_field(3, 4).unwrap()));
    }

    fn axioms(ctx: &FieldCtx, seed: u64) {
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(seed);
        for _ in 0..10_000 {
            let (a, b, c) = (ctx.random(&mut rng), ctx.random(&mut rng), ctx.random(&mut rng));
            assert_eq!(ctx.add(ctx.add(a, b), c), ctx.add(a, ctx.add(b, c)));
            assert_eq!(ctx.mul(ctx.mul(a, b), c), ctx.mul(a, ctx.mul(b, c)));
            assert_eq!(ctx.mul(a, ctx.add(b, c)), ctx.add(ctx.mul(a, b), ctx.mul(a, c)));
            assert_eq!(ctx.add(a, ctx.neg(a)), Elem(0));
            assert_eq!(ctx.mul(a, b), ctx.mul_slow(a, b));
            if a.0 != 0 {
                assert_eq!(ctx.mul(a, ctx.inv(a)), Elem(1));
            }
        }
    }

    #[test]
    fn field_axioms() {
        for (i, &(p, m)) in [(2, 1), (2, 4), (3, 4), (5, 1), (7, 2), (13, 1)].iter().enumerate() {
            axioms(&make_field(p, m).unwrap(), i as u64);
        }
    }

    #[test]
    fn roots_of_unity() {
        let f5 = make_field(5, 1).unwrap();
        let b = nth_root_of_unity(&f5, 4).unwrap();
        assert_eq!(f5.mul(b, b), f5.from_int(-1));
        let f81 = make_field(3, 4).unwrap();
        let a = nth_root_of_unity(&f81, 5).unwrap();
        assert_eq!(f81.mult_order(a), 5);
        assert_eq!(nth_root_of_unity(&f81, 1).unwrap(), Elem(1));
        assert!(nth_root_of_unity(&f81, 7).is_err());
        for n in [1u64, 2, 4, 5, 8, 10, 16, 20, 40, 80] {
            let r = nth_root_of_unity(&f81, n).unwrap();
            assert_eq!(f81.pow(r, n), Elem(1));
            for k in 1..n {
                assert_ne!(f81.pow(r, k), Elem(1));
            }
        }
    }

    #[test]
    fn embeddings_are_homomorphisms() {
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(7);
        for &(p, a, b) in &[(2u32, 1u32, 2u32), (2, 2, 4), (3, 1, 4), (3, 2, 4), (5, 1, 2), (2, 2, 6), (2, 3, 6)] {
            let s = make_field(p, a).unwrap();
            let d = make_field(p, b).unwrap();
            let e = embed(&s, &d).unwrap();
            assert_eq!(e.apply(Elem(0)), Elem(0));
            assert_eq!(e.apply(Elem(1)), Elem(1));
            for _ in 0..1000 {
                let (x, y) = (s.random(&mut rng), s.random(&mut rng));
                assert_eq!(e.apply(s.add(x, y)), d.add(e.apply(x), e.apply(y)));
                assert_eq!(e.apply(s.mul(x, y)), d.mul(e.apply(x), e.apply(y)));
                assert_eq!(e.preimage(e.apply(x)), Some(x));
            }
        }
        let f3 = make_field(3, 1).unwrap();
        let f81 = make_field(3, 4).unwrap();
        assert_eq!(embed(&f3, &f81).unwrap().apply(Elem(2)), Elem(2));
        let f4 = make_field(2, 2).unwrap();
        let f16 = make_field(2, 4).unwrap();
        let e = embed(&f4, &f16).unwrap();
        assert_eq!(f16.mult_order(e.image_of_generator()), 3);
        assert!(embed(&f4, &make_field(2, 3).unwrap()).is_err());
        assert!(embed(&f3, &f16).is_err());
    }

    #[test]
    fn traces() {
        let f4 = make_field(2, 2).unwrap();
        let f2 = make_field(2, 1).unwrap();
        assert_eq!(trace(&f4, f4.generator(), &f2).unwrap(), Elem(1));
        let f81 = make_field(3, 4).unwrap();
        let f3 = make_field(3, 1).unwrap();
        let f9 = make_field(3, 2).unwrap();
        assert_eq!(trace(&f81, Elem(0), &f3).unwrap(), Elem(0));
        // element of the subfield: trace is [F:sub]·x
        assert_eq!(trace(&f81, Elem(2), &f3).unwrap(), f3.mul(f3.from_int(4), Elem(2)));
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(3);
        let emb = embed(&f9, &f81).unwrap();
        for _ in 0..1000 {
            let (x, y) = (f81.random(&mut rng), f81.random(&mut rng));
            let c = f9.random(&mut rng);
            let tx = trace(&f81, x, &f9).unwrap();
            let ty = trace(&f81, y, &f9).unwrap();
            assert_eq!(trace(&f81, f81.add(x, y), &f9).unwrap(), f9.add(tx, ty));
            assert_eq!(trace(&f81, f81.mul(emb.apply(c), x), &f9).unwrap(), f9.mul(c, tx));
        }
    }
}
