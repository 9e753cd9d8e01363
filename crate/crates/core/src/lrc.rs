//! Locality of quasi-cyclic codes and the three upper bounds for codes with
//! `(ρ, δ)`-locality.

use rand::SeedableRng;
use rand_xoshiro::Xoshiro256PlusPlus;
use serde::{Deserialize, Serialize};

use crate::arith::{ceil_div, gcd};
use crate::code::{griesmer, Finite, LinearCode, DEFAULT_BUDGET};
use crate::cyclic::{cyclic_distance, cyclic_from_zeroset, factorization, ZeroSet};
use crate::error::{Error, Result};
use crate::gf::field_of_order;
use crate::poly::cyclotomic_cosets;
use crate::qc::QcCode;

/// Upper bound on the dimension of a local code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Kappa {
    pub value: u32,
    /// False when the value is only the Griesmer-feasible maximum.
    pub exact: bool,
}

#[derive(Clone, Debug)]
pub struct LocalityProfile {
    pub rho: usize,
    pub delta: u32,
    /// Whether `delta` is the exact distance of the local code.
    pub delta_exact: bool,
    /// Factor indices with a nonzero constituent.
    pub support: Vec<usize>,
    /// Cyclic code of length `n` with check polynomial `∏_{i∈I} f_i`.
    pub local_code: LinearCode,
    pub kappa: Kappa,
}

/// Array-column positions `{i·ℓ + j}` of column block `j`.
pub fn column_block(n: usize, ell: usize, j: usize) -> Vec<usize> {
    (0..n).map(|i| i * ell + j).collect()
}

/// `(n − δ + 1, δ)`-locality from the nonzero constituents; every column
/// block of the code lies in the local code.
pub fn qc_locality(c: &QcCode) -> Result<LocalityProfile> {
    let n = c.n();
    let fz = c.factorization();
    let support: Vec<usize> = c.constituents()?.iter().filter(|k| !k.code.is_zero()).map(|k| k.index).collect();
    let zeros = ZeroSet::new(n, (0..fz.cosets.len()).filter(|i| !support.contains(i)).flat_map(|i| fz.cosets[i].iter().copied()));
    let local_code = cyclic_from_zeroset(c.field(), &zeros)?;
    let d = cyclic_distance(c.field(), &zeros, DEFAULT_BUDGET)?;
    // a zero code is trivially (1, n)-local
    let delta = d.value.finite().unwrap_or(n as u32).min(n as u32);
    for j in 0..c.ell() {
        let block = c.scalar_code().restrict(&column_block(n, c.ell(), j))?;
        if !block.is_subcode_of(&local_code) {
            return Err(Error::Verification(format!("column block {j} is not inside the local code")));
        }
    }
    let q = c.field().order() as u64;
    Ok(LocalityProfile {
        rho: n - delta as usize + 1,
        delta,
        delta_exact: d.is_exact() || support.is_empty(),
        support,
        local_code,
        kappa: kappa_for(q, n, delta),
    })
}

/// `m − k + 1 − (⌈k/ρ⌉ − 1)(δ − 1)`.
pub fn lrc_bound_1(m: usize, k: usize, rho: usize, delta: u32) -> i64 {
    let groups = ceil_div(k as u64, rho as u64) as i64;
    m as i64 - k as i64 + 1 - (groups - 1).max(0) * (delta as i64 - 1)
}

/// `m − ⌈k/κ⌉·𝒢(κ, δ) + 𝒢(⌈k/κ⌉κ − k + 1, δ)`.
pub fn lrc_bound_2(m: usize, k: usize, delta: u32, kappa: u32, q: u64) -> i64 {
    let t = ceil_div(k as u64, kappa as u64);
    let rest = (t * kappa as u64 + 1 - k as u64) as u32;
    m as i64 - (t * griesmer(kappa, delta, q)) as i64 + griesmer(rest, delta, q) as i64
}

/// Largest `k` with `𝒢(k, d) ≤ m`.
pub fn griesmer_max_dimension(m: u64, d: u32, q: u64) -> u32 {
    let mut k = 0;
    while (k as u64) < m && griesmer(k + 1, d, q) <= m {
        k += 1;
    }
    k
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionBound {
    pub value: u64,
    /// Minimizing `z`.
    pub z: u64,
    /// Set when the minimum uses the Griesmer stand-in for `k_opt`.
    pub approximate: bool,
}

/// `min_z { z + k_opt(m − (x+1)𝒢(κ,δ) + 𝒢(κ−y,δ), d) }` with `z = xκ + y`,
/// stopping once the inner length drops below `d`.
pub fn lrc_bound_3(m: usize, d: u32, delta: u32, kappa: u32, q: u64) -> DimensionBound {
    let gk = griesmer(kappa, delta, q) as i64;
    let mut best = DimensionBound { value: u64::MAX, z: 0, approximate: false };
    for z in 0u64.. {
        let (x, y) = (z / kappa as u64, (z % kappa as u64) as u32);
        let len = m as i64 - (x as i64 + 1) * gk + griesmer(kappa - y, delta, q) as i64;
        if len < d as i64 {
            if z < best.value {
                best = DimensionBound { value: z, z, approximate: false };
            }
            break;
        }
        let v = z + griesmer_max_dimension(len as u64, d, q) as u64;
        if v < best.value {
            best = DimensionBound { value: v, z, approximate: true };
        }
    }
    best
}

/// `k_opt(n, δ)` over GF(q): exact when an MDS code exists or a search finds
/// a code meeting the Singleton and Griesmer limits, otherwise that limit.
pub fn kappa_for(q: u64, n: usize, delta: u32) -> Kappa {
    if delta as usize > n {
        return Kappa { value: 0, exact: true };
    }
    let singleton = n as u32 + 1 - delta;
    if delta <= 1 || n as u64 <= q + 1 {
        return Kappa { value: singleton, exact: true };
    }
    let upper = griesmer_max_dimension(n as u64, delta, q).min(singleton);
    let exact = upper == 0 || search_code(q, n, upper, delta);
    Kappa { value: upper, exact }
}

/// Looks for an `[n, k, ≥δ]` code among cyclic and random codes.
fn search_code(q: u64, n: usize, k: u32, delta: u32) -> bool {
    let Ok(field) = field_of_order(q) else { return false };
    let good = |c: &LinearCode| {
        c.dimension() == k as usize && matches!(c.min_distance_exhaustive(DEFAULT_BUDGET), Ok(d) if d.value >= Finite(delta))
    };
    if (q as u128).pow(k) > 1_000_000 {
        return false;
    }
    // cyclic codes of length n, and of length n − 1 with a parity symbol
    for (len, extend) in [(n, false), (n - 1, true)] {
        if len == 0 || gcd(len as u64, q) != 1 || factorization(&field, len).is_err() {
            continue;
        }
        let cosets = cyclotomic_cosets(len, q);
        if cosets.len() > 16 {
            continue;
        }
        for mask in 0u32..1 << cosets.len() {
            let z = ZeroSet::new(len, (0..cosets.len()).filter(|i| mask >> i & 1 == 1).flat_map(|i| cosets[i].iter().copied()));
            if z.len() != len - k as usize {
                continue;
            }
            let Ok(c) = cyclic_from_zeroset(&field, &z) else { continue };
            let c = if extend {
                let rows = c
                    .generator()
                    .iter()
                    .map(|r| {
                        let s = r.iter().fold(field.zero(), |a, &b| field.add(a, b));
                        let mut r = r.clone();
                        r.push(field.neg(s));
                        r
                    })
                    .collect();
                match LinearCode::new(&field, n, rows) {
                    Ok(c) => c,
                    Err(_) => continue,
                }
            } else {
                c
            };
            if good(&c) {
                return true;
            }
        }
    }
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(n as u64 * 1_000_003 + k as u64);
    for _ in 0..200 {
        let rows = (0..k as usize)
            .map(|i| {
                (0..n)
                    .map(|j| if j < k as usize { if i == j { field.one() } else { field.zero() } } else { field.random(&mut rng) })
                    .collect()
            })
            .collect();
        if LinearCode::new(&field, n, rows).is_ok_and(|c| good(&c)) {
            return true;
        }
    }
    false
}

/// Locality and the three bounds for one code.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LrcReport {
    pub length: usize,
    pub dimension: usize,
    pub rho: usize,
    pub delta: u32,
    pub delta_exact: bool,
    pub support: Vec<usize>,
    pub kappa: Kappa,
    pub bound_1: i64,
    pub bound_2: i64,
    /// Evaluated at `d = bound_2`: the largest dimension bound 3 allows.
    pub bound_3: Option<DimensionBound>,
}

/// Bound 3 is evaluated at the distance `d` when one is given.
pub fn lrc_report(c: &QcCode, d: Option<u32>) -> Result<LrcReport> {
    let p = qc_locality(c)?;
    let (m, k) = (c.length(), c.dimension());
    let q = c.field().order() as u64;
    let (b1, b2) = if k == 0 {
        (m as i64, m as i64)
    } else {
        (lrc_bound_1(m, k, p.rho, p.delta), lrc_bound_2(m, k, p.delta, p.kappa.value.max(1), q))
    };
    Ok(LrcReport {
        length: m,
        dimension: k,
        rho: p.rho,
        delta: p.delta,
        delta_exact: p.delta_exact,
        support: p.support,
        kappa: p.kappa,
        bound_1: b1,
        bound_2: b2,
        bound_3: d.map(|d| lrc_bound_3(m, d, p.delta, p.kappa.value.max(1), q)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{build_lrc_c1, build_lrc_c3, Lift};
    use crate::qc::QcSpec;

    #[test]
    fn bound_values() {
        assert_eq!(lrc_bound_1(12, 2, 1, 4), 8);
        assert_eq!(lrc_bound_1(20, 5, 9, 3), 16);
        assert_eq!(lrc_bound_2(12, 2, 4, 1, 5), 8);
        assert_eq!(lrc_bound_2(10, 3, 4, 3, 7), 10 - griesmer(3, 4, 7) as i64 + 4);
        // C1 parameters: (q+1)n, (q+1−a)(n−δ+1)+1 with κ = n−δ+1
        for (q, n, delta, a) in [(4u64, 3usize, 2u32, 1usize), (7, 6, 4, 1), (7, 6, 5, 2), (8, 7, 5, 2)] {
            let m = (q as usize + 1) * n;
            let k = (q as usize + 1 - a) * (n - delta as usize + 1) + 1;
            let rho = n - delta as usize + 1;
            assert_eq!(lrc_bound_1(m, k, rho, delta), (a * n) as i64);
            assert_eq!(lrc_bound_2(m, k, delta, rho as u32, q), (a * n) as i64);
        }
    }

    #[test]
    fn dimension_bound() {
        let b = lrc_bound_3(12, 8, 4, 1, 5);
        assert!(b.value >= 2);
        assert_eq!(lrc_bound_3(5, 6, 2, 2, 2).value, 0);
        assert_eq!(griesmer_max_dimension(4, 4, 5), 1);
    }

    #[test]
    fn kappa_values() {
        assert_eq!(kappa_for(5, 4, 4), Kappa { value: 1, exact: true });
        assert_eq!(kappa_for(2, 7, 7).value, 1);
        assert_eq!(kappa_for(3, 6, 1), Kappa { value: 6, exact: true });
        // binary [7,4,3] Hamming code
        assert_eq!(kappa_for(2, 7, 3), Kappa { value: 4, exact: true });
        assert_eq!(kappa_for(2, 8, 4), Kappa { value: 4, exact: true });
    }

    #[test]
    fn constructed_codes() {
        let c3 = build_lrc_c3(5, 4, 3, -1, Lift::Monomial).unwrap();
        let p = qc_locality(&c3.code).unwrap();
        assert_eq!((p.rho, p.delta), (1, 4));
        let r = lrc_report(&c3.code, Some(8)).unwrap();
        assert_eq!((r.bound_1, r.bound_2), (8, 8));
        assert!(r.bound_3.unwrap().value >= 2);
        let c1 = build_lrc_c1(4, 3, 2, 1).unwrap();
        let r = lrc_report(&c1.code, Some(3)).unwrap();
        assert_eq!((r.rho, r.delta), (2, 2));
        assert_eq!((r.bound_1, r.bound_2), (3, 3));
    }

    #[test]
    fn full_support_gives_trivial_locality() {
        let spec = QcSpec { q: crate::qc::FieldSpec::Order(2), n: 3, ell: 2, generators: vec![vec![vec![1], vec![0]]] };
        let c = spec.build().unwrap();
        let p = qc_locality(&c).unwrap();
        assert_eq!((p.rho, p.delta), (3, 1));
    }
}
