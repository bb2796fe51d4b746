//! q-cyclotomic classes modulo `n` and the counting formulas around them.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::numtheory::{divisors, gcd, mobius, multiplicative_order, pow_mod};

/// Enumeration paths refuse moduli above this.
pub const ENUMERATION_CAP: u64 = 1 << 20;

/// One orbit `{c, qc, …, q^{ℓ-1}c} mod n`; `members[t] = q^t·c mod n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicClass {
    pub leader: usize,
    pub members: Vec<usize>,
}

impl CyclotomicClass {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// The partition of `Z/nZ` into q-cyclotomic classes, ordered by leader
/// (the minimal member).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicPartition {
    n: usize,
    q: u64,
    classes: Vec<CyclotomicClass>,
    /// `index_map[i] = (k, t)` with `i = q^t · leader_k mod n`.
    index_map: Vec<(usize, usize)>,
}

impl CyclotomicPartition {
    pub fn new(n: u64, q: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("n must be at least 1".into()));
        }
        if gcd(n, q) != 1 {
            return Err(Error::NotCoprime { n, q });
        }
        if n > ENUMERATION_CAP {
            return Err(Error::TooLarge {
                what: "cyclotomic modulus",
                size: n,
                cap: ENUMERATION_CAP,
            });
        }
        let nu = n as usize;
        let step = (q % n) as usize;
        let mut index_map = vec![(usize::MAX, 0usize); nu];
        let mut classes = Vec::new();
        for s in 0..nu {
            if index_map[s].0 != usize::MAX {
                continue;
            }
            let k = classes.len();
            let mut members = Vec::new();
            let mut x = s;
            loop {
                index_map[x] = (k, members.len());
                members.push(x);
                x = x * step % nu;
                if x == s {
                    break;
                }
            }
            classes.push(CyclotomicClass { leader: s, members });
        }
        Ok(CyclotomicPartition {
            n: nu,
            q,
            classes,
            index_map,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn classes(&self) -> &[CyclotomicClass] {
        &self.classes
    }

    /// `κ_q(n)`.
    pub fn kappa(&self) -> usize {
        self.classes.len()
    }

    /// `(class index, step t)` for residue `i`.
    pub fn locate(&self, i: usize) -> Option<(usize, usize)> {
        self.index_map.get(i).copied()
    }

    pub fn lengths(&self) -> impl Iterator<Item = usize> + '_ {
        self.classes.iter().map(CyclotomicClass::len)
    }

    /// Number of classes of exactly length `e`.
    pub fn count_of_length(&self, e: usize) -> usize {
        self.lengths().filter(|&l| l == e).count()
    }
}

fn check_coprime(n: u64, q: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    if gcd(n, q) != 1 {
        return Err(Error::NotCoprime { n, q });
    }
    Ok(())
}

/// `gcd(n, q^t - 1)`, with `gcd(n, 0) = n` at `t = 0`.
fn gcd_power_minus_one(n: u64, q: u64, t: u64) -> u64 {
    let r = pow_mod(q, t, n);
    gcd(n, (r + n - 1) % n)
}

/// `κ_q(n)` by Burnside: `(1/d) Σ_{t<d} gcd(n, q^t - 1)`, `d = ord_n(q)`.
pub fn kappa_burnside(n: u64, q: u64) -> Result<u64> {
    check_coprime(n, q)?;
    let d = multiplicative_order(q, n);
    let sum: u128 = (0..d).map(|t| gcd_power_minus_one(n, q, t) as u128).sum();
    Ok((sum / d as u128) as u64)
}

/// Number of residues (`A_e`) and classes (`B_e`) of exact length `e`,
/// for each divisor `e` of `ord_n(q)`, by Möbius inversion.
pub fn exact_length_counts(n: u64, q: u64) -> Result<BTreeMap<u64, (u64, u64)>> {
    check_coprime(n, q)?;
    let d = multiplicative_order(q, n);
    let mut out = BTreeMap::new();
    for e in divisors(d) {
        let a: i128 = divisors(e)
            .into_iter()
            .map(|r| mobius(e / r) as i128 * gcd_power_minus_one(n, q, r) as i128)
            .sum();
        let a = a as u64;
        out.insert(e, (a, a / e));
    }
    Ok(out)
}

/// Class counts `B_e` for `n = q^m - 1`, plus `κ_q(n)`.
pub fn full_length_counts(q: u64, m: u32) -> Result<(BTreeMap<u64, u64>, u64)> {
    if q < 2 || m == 0 {
        return Err(Error::InvalidParameter("need q >= 2 and m >= 1".into()));
    }
    q.checked_pow(m).ok_or(Error::Overflow)?;
    let mut counts = BTreeMap::new();
    for e in divisors(m as u64) {
        let s: i128 = divisors(e)
            .into_iter()
            .map(|r| mobius(e / r) as i128 * (q.pow(r as u32) as i128 - 1))
            .sum();
        counts.insert(e, (s / e as i128) as u64);
    }
    let kappa = counts.values().sum();
    Ok((counts, kappa))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompressionReport {
    pub n: u64,
    pub kappa: u64,
    pub ratio: f64,
}

/// `n = q^m - 1`, `κ_q(n)` and `n/κ_q(n)`.
pub fn compression_report(q: u64, m: u32) -> Result<CompressionReport> {
    let (_, kappa) = full_length_counts(q, m)?;
    let n = q.pow(m) - 1;
    Ok(CompressionReport {
        n,
        kappa,
        ratio: n as f64 / kappa as f64,
    })
}
