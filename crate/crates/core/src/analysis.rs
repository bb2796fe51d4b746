//! The code `F_n ⊆ L^n` of Frobenius-consistent vectors: weight
//! enumerator, covering radii, counting bounds and brute-force oracles.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;

use crate::cyclotomic::CyclotomicPartition;
use crate::error::{Error, Result};
use crate::field::{Elem, FieldTower};
use crate::spectral::OrbitSeedVector;

/// Exhaustive enumeration refuses codes with more than this many words.
pub const ENUMERATION_LIMIT: u64 = 1 << 16;

/// `coeffs[w]` = number of codewords of symbol weight `w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightEnumeratorPoly {
    pub coeffs: Vec<BigUint>,
}

impl WeightEnumeratorPoly {
    pub fn total(&self) -> BigUint {
        self.coeffs.iter().sum()
    }
}

/// `Π_k (1 + (q^{ℓ_k} - 1) z^{ℓ_k})`, expanded exactly.
pub fn weight_enumerator(partition: &CyclotomicPartition) -> WeightEnumeratorPoly {
    let q = BigUint::from(partition.q());
    let mut coeffs = vec![BigUint::one()];
    for ell in partition.lengths() {
        let factor = q.pow(ell as u32) - 1u32;
        let mut next = vec![BigUint::zero(); coeffs.len() + ell];
        for (w, c) in coeffs.iter().enumerate() {
            next[w] += c;
            next[w + ell] += c * &factor;
        }
        coeffs = next;
    }
    WeightEnumeratorPoly { coeffs }
}

/// Iterator over every codeword of `F_n`, via all seed combinations.
pub struct CodewordIter<'a> {
    tower: &'a FieldTower,
    partition: CyclotomicPartition,
    choices: Vec<Vec<Elem>>,
    cursor: Option<Vec<usize>>,
}

impl Iterator for CodewordIter<'_> {
    type Item = Vec<Elem>;

    fn next(&mut self) -> Option<Vec<Elem>> {
        let cursor = self.cursor.as_mut()?;
        let seeds: Vec<Elem> = cursor
            .iter()
            .zip(&self.choices)
            .map(|(&i, c)| c[i])
            .collect();
        // odometer step
        let mut k = 0;
        loop {
            if k == cursor.len() {
                self.cursor = None;
                break;
            }
            cursor[k] += 1;
            if cursor[k] < self.choices[k].len() {
                break;
            }
            cursor[k] = 0;
            k += 1;
        }
        let word = OrbitSeedVector::new(self.tower, self.partition.clone(), seeds)
            .expect("seeds drawn from native subfields")
            .expand(self.tower);
        Some(word)
    }
}

pub fn enumerate_code<'a>(tower: &'a FieldTower, partition: &CyclotomicPartition) -> Result<CodewordIter<'a>> {
    let size = tower
        .q()
        .checked_pow(partition.n() as u32)
        .filter(|&s| s <= ENUMERATION_LIMIT)
        .ok_or(Error::TooLarge {
            what: "code",
            size: tower.q().saturating_pow(partition.n() as u32),
            cap: ENUMERATION_LIMIT,
        })?;
    debug_assert!(size >= 1);
    let choices = partition
        .lengths()
        .map(|l| tower.subfield_elements(l))
        .collect::<Result<Vec<_>>>()?;
    Ok(CodewordIter {
        tower,
        partition: partition.clone(),
        cursor: Some(vec![0; choices.len()]),
        choices,
    })
}

pub fn symbol_weight(v: &[Elem]) -> usize {
    v.iter().filter(|x| !x.is_zero()).count()
}

pub fn hamming_distance(a: &[Elem], b: &[Elem]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

/// Distance from `g` to the nearest word of `code`, by exhaustive search.
pub fn nearest_codeword_distance(code: &[Vec<Elem>], g: &[Elem]) -> usize {
    code.iter()
        .map(|c| hamming_distance(c, g))
        .min()
        .unwrap_or(g.len())
}

/// `max_g min_f d(g, f)` over all of `L^n`; exhaustive.
pub fn exhaustive_covering_radius(tower: &FieldTower, code: &[Vec<Elem>], n: usize) -> Result<usize> {
    let cap = 1u64 << 20;
    let space = tower.order().checked_pow(n as u32).filter(|&s| s <= cap).ok_or(Error::TooLarge {
        what: "ambient space",
        size: tower.order().saturating_pow(n as u32),
        cap,
    })?;
    let q = tower.order();
    Ok((0..space)
        .map(|mut k| {
            let g: Vec<Elem> = (0..n)
                .map(|_| {
                    let x = Elem(k % q);
                    k /= q;
                    x
                })
                .collect();
            nearest_codeword_distance(code, &g)
        })
        .max()
        .unwrap_or(0))
}

/// Covering radius of a single class code: `ℓ` if `ℓ < m`, `ℓ - 1` if `ℓ = m`.
pub fn class_covering_radius(ell: usize, m: usize) -> Result<usize> {
    if ell == 0 || m % ell != 0 {
        return Err(Error::InvalidSubfieldDegree { ell, m });
    }
    Ok(if ell < m { ell } else { ell - 1 })
}

/// `n - B_m(n)`, i.e. `n` when no class has length `m`.
pub fn global_covering_radius(partition: &CyclotomicPartition, m: usize) -> usize {
    partition.n() - partition.count_of_length(m)
}

fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1))
}

#[derive(Debug, Clone, PartialEq)]
pub struct TailBound {
    /// `q^ℓ · C(ℓ, r) · q^{-mr}`.
    pub bound: BigRational,
    /// `min(bound, 1)`.
    pub clamped: BigRational,
}

/// Union bound on `Pr(M_C >= r)` for uniform independent normalized values.
pub fn tail_bound(ell: usize, m: usize, q: u64, r: usize) -> TailBound {
    let q = BigUint::from(q);
    let numer = q.pow(ell as u32) * binomial(ell as u64, r as u64);
    let denom = q.pow((m * r) as u32);
    let bound = BigRational::new(numer.into(), denom.into());
    let clamped = if bound > BigRational::one() {
        BigRational::one()
    } else {
        bound.clone()
    };
    TailBound { bound, clamped }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniversalBound {
    pub lhs: BigUint,
    pub rhs: BigUint,
    pub holds: bool,
}

/// `q^n · Σ_{j<=s} C(n,j)(Q-1)^j >= Q^n`, `Q = q^m`.  `holds = false`
/// certifies that no residual radius `s` covers all of `L^n`.
pub fn universal_bound_check(n: usize, q: u64, m: usize, s: usize) -> UniversalBound {
    let qb = BigUint::from(q);
    let big_q = qb.pow(m as u32);
    let qm1 = &big_q - 1u32;
    let sum: BigUint = (0..=s.min(n))
        .map(|j| binomial(n as u64, j as u64) * qm1.pow(j as u32))
        .sum();
    let lhs = qb.pow(n as u32) * sum;
    let rhs = big_q.pow(n as u32);
    let holds = lhs >= rhs;
    UniversalBound { lhs, rhs, holds }
}

/// Float tolerance on the entropy comparison.
pub const ENTROPY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyBound {
    /// `⌊δ n⌋`.
    pub s: usize,
    /// `1 + h₂(δ)/log₂ q + δ·log_q(Q-1)`.
    pub lhs: f64,
    /// `m`.
    pub rhs: f64,
    /// `lhs >= rhs - ENTROPY_TOLERANCE`.
    pub satisfied: bool,
}

fn binary_entropy(d: f64) -> f64 {
    let term = |x: f64| if x <= 0.0 { 0.0 } else { -x * x.log2() };
    term(d) + term(1.0 - d)
}

/// Finite reading of the necessary condition for universal residual radius
/// `⌊δn⌋`; advisory, no asymptotic terms.
pub fn entropy_bound_check(delta: f64, q: u64, m: usize, n: usize) -> Result<EntropyBound> {
    if !(0.0..=0.5).contains(&delta) {
        return Err(Error::InvalidParameter(format!("delta {delta} outside [0, 1/2]")));
    }
    let log2q = (q as f64).log2();
    let big_q = (q as f64).powi(m as i32);
    let lhs = 1.0 + binary_entropy(delta) / log2q + delta * (big_q - 1.0).log2() / log2q;
    let rhs = m as f64;
    Ok(EntropyBound {
        s: (delta * n as f64).floor() as usize,
        lhs,
        rhs,
        satisfied: lhs >= rhs - ENTROPY_TOLERANCE,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResidualCount {
    /// `C(n,s)(Q-1)^s`.
    pub count: BigUint,
    pub log2: f64,
    /// `⌈log₂ count⌉`, the enumerative fixed-length code size.
    pub bits: u64,
}

fn log2_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().unwrap_or(f64::INFINITY).log2();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().unwrap();
    top.log2() + shift as f64
}

fn ceil_log2_big(x: &BigUint) -> u64 {
    if x.is_zero() || x.is_one() {
        return 0;
    }
    let y: BigUint = x - 1u32;
    y.bits()
}

pub fn residual_count(n: usize, big_q: u64, s: usize) -> ResidualCount {
    let count = binomial(n as u64, s as u64) * BigUint::from(big_q - 1).pow(s as u32);
    ResidualCount {
        log2: log2_big(&count),
        bits: ceil_log2_big(&count),
        count,
    }
}

/// Number of trials per independently keyed shard.
const SHARD_TRIALS: u64 = 4096;

/// Empirical `Pr(M_C >= r)` for `r = 0..=ℓ`, drawing normalized values
/// uniformly from `L`.  Shards use keys derived from `seed`, so results do
/// not depend on the thread count.
pub fn tail_bound_montecarlo(tower: &FieldTower, ell: usize, trials: u64, seed: u64) -> Result<Vec<f64>> {
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be positive".into()));
    }
    if ell == 0 || tower.m() % ell != 0 {
        return Err(Error::InvalidSubfieldDegree { ell, m: tower.m() });
    }
    let shards = trials.div_ceil(SHARD_TRIALS);
    let hist = (0..shards)
        .into_par_iter()
        .map(|shard| {
            let mut rng = ChaCha20Rng::seed_from_u64(seed);
            rng.set_stream(shard);
            let count = SHARD_TRIALS.min(trials - shard * SHARD_TRIALS);
            let mut h = vec![0u64; ell + 1];
            let mut values = Vec::with_capacity(ell);
            for _ in 0..count {
                values.clear();
                for _ in 0..ell {
                    let x = Elem(rng.random_range(0..tower.order()));
                    if tower.subfield_test(x, ell).expect("ell divides m") {
                        values.push(x);
                    }
                }
                values.sort_unstable();
                let top = values
                    .chunk_by(|a, b| a == b)
                    .map(<[Elem]>::len)
                    .max()
                    .unwrap_or(0);
                h[top] += 1;
            }
            h
        })
        .reduce(
            || vec![0u64; ell + 1],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    // tail sums: Pr(M >= r)
    let mut tail = vec![0f64; ell + 1];
    let mut acc = 0u64;
    for r in (0..=ell).rev() {
        acc += hist[r];
        tail[r] = acc as f64 / trials as f64;
    }
    Ok(tail)
}
