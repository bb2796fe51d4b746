//! Class-consistent plus residual representation `g = f + h` of arbitrary
//! vectors in `L^n`, with exact per-class support minimization.
//!
//! On a class `C = {c, qc, …}` the normalized values
//! `x_t = (g_{q^t c})^{q^{m-t}}` turn "g agrees with seed `b` at position
//! `t`" into "`x_t = b`", so the best seed is the most frequent admissible
//! normalized value.  Classes do not interact.

use std::collections::HashMap;

use crate::cyclotomic::{CyclotomicClass, CyclotomicPartition};
use crate::error::{Error, Result};
use crate::field::{Basis, Elem, FieldTower};
use crate::numtheory::ceil_log;
use crate::spectral::OrbitSeedVector;

fn class_values(g: &[Elem], class: &CyclotomicClass) -> Result<Vec<Elem>> {
    class
        .members
        .iter()
        .map(|&i| {
            g.get(i).copied().ok_or(Error::IndexOutOfRange {
                index: i,
                n: g.len(),
            })
        })
        .collect()
}

/// `x_t = inverse_frobenius(g[q^t c], t)` for `t < ℓ`.
pub fn normalize_class(tower: &FieldTower, g: &[Elem], class: &CyclotomicClass) -> Result<Vec<Elem>> {
    Ok(class_values(g, class)?
        .into_iter()
        .enumerate()
        .map(|(t, v)| tower.inverse_frobenius(v, t as i64))
        .collect())
}

/// Seed minimizing the residual support on one class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeedChoice {
    pub seed: Elem,
    pub matches: usize,
    /// Whether the maximum count is attained by a single value.
    pub unique: bool,
}

/// Most frequent admissible normalized value; ties go to the smaller
/// canonical integer, and an empty admissible set yields seed 0.
pub fn best_seed(tower: &FieldTower, g: &[Elem], class: &CyclotomicClass) -> Result<SeedChoice> {
    let ell = class.len();
    let mut counts: HashMap<Elem, usize> = HashMap::new();
    for x in normalize_class(tower, g, class)? {
        if tower.subfield_test(x, ell)? {
            *counts.entry(x).or_default() += 1;
        }
    }
    let best = counts
        .iter()
        .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0)))
        .map(|(&seed, &matches)| (seed, matches));
    Ok(match best {
        Some((seed, matches)) => SeedChoice {
            seed,
            matches,
            unique: counts.values().filter(|&&c| c == matches).count() == 1,
        },
        None => SeedChoice {
            seed: Elem::ZERO,
            matches: 0,
            unique: false,
        },
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResidualMode {
    Full,
    Truncated,
}

/// Seeds of the class-consistent layer plus the residual as a sorted
/// support-value list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidualPackage {
    pub seeds: OrbitSeedVector,
    pub residual: Vec<(usize, Elem)>,
    pub mode: ResidualMode,
}

impl ResidualPackage {
    pub fn n(&self) -> usize {
        self.seeds.n()
    }

    /// Keeps the first `budget` residual entries, dropping largest indices.
    pub fn truncate(&mut self, budget: usize) {
        if self.residual.len() > budget {
            self.residual.truncate(budget);
            self.mode = ResidualMode::Truncated;
        }
    }
}

pub fn encode_residual(
    tower: &FieldTower,
    partition: &CyclotomicPartition,
    g: &[Elem],
) -> Result<ResidualPackage> {
    if g.len() != partition.n() {
        return Err(Error::LengthMismatch {
            expected: partition.n(),
            actual: g.len(),
        });
    }
    let seeds = partition
        .classes()
        .iter()
        .map(|c| best_seed(tower, g, c).map(|s| s.seed))
        .collect::<Result<Vec<_>>>()?;
    let seeds = OrbitSeedVector::new(tower, partition.clone(), seeds)?;
    let f = seeds.expand(tower);
    let residual = g
        .iter()
        .zip(&f)
        .enumerate()
        .filter_map(|(i, (&gi, &fi))| {
            let h = tower.sub(gi, fi);
            (!h.is_zero()).then_some((i, h))
        })
        .collect();
    Ok(ResidualPackage {
        seeds,
        residual,
        mode: ResidualMode::Full,
    })
}

/// `expand(seeds) + scatter(residual)`.
pub fn decode_residual(tower: &FieldTower, pkg: &ResidualPackage) -> Result<Vec<Elem>> {
    let mut g = pkg.seeds.expand(tower);
    let n = g.len();
    for &(i, h) in &pkg.residual {
        let slot = g.get_mut(i).ok_or(Error::IndexOutOfRange { index: i, n })?;
        *slot = tower.add(*slot, h);
    }
    Ok(g)
}

/// `min_{f ∈ F_n} |supp(g - f)| = Σ_C (|C| - best match count)`.
pub fn global_min_support(tower: &FieldTower, partition: &CyclotomicPartition, g: &[Elem]) -> Result<usize> {
    if g.len() != partition.n() {
        return Err(Error::LengthMismatch {
            expected: partition.n(),
            actual: g.len(),
        });
    }
    partition.classes().iter().try_fold(0usize, |acc, c| {
        Ok(acc + c.len() - best_seed(tower, g, c)?.matches)
    })
}

/// Result of forcing agreement with `g` at one anchor coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnchorSeed {
    Admissible { seed: Elem, cost: usize },
    Inadmissible,
}

/// Anchor at `j = q^u c`: seed `b_j = g_j^{q^{m-u}}`, cost
/// `Σ_t wt_K(g_{q^t c} - b_j^{q^t})` in the given basis.
pub fn anchor_seed(
    tower: &FieldTower,
    g: &[Elem],
    class: &CyclotomicClass,
    j: usize,
    basis: Basis,
) -> Result<AnchorSeed> {
    let u = class
        .members
        .iter()
        .position(|&i| i == j)
        .ok_or(Error::IndexNotInClass {
            index: j,
            leader: class.leader,
        })?;
    let gj = *g.get(j).ok_or(Error::IndexOutOfRange { index: j, n: g.len() })?;
    let seed = tower.inverse_frobenius(gj, u as i64);
    if !tower.subfield_test(seed, class.len())? {
        return Ok(AnchorSeed::Inadmissible);
    }
    let cost = direct_cost(tower, g, class, seed, basis)?;
    Ok(AnchorSeed::Admissible { seed, cost })
}

fn direct_cost(
    tower: &FieldTower,
    g: &[Elem],
    class: &CyclotomicClass,
    seed: Elem,
    basis: Basis,
) -> Result<usize> {
    let values = class_values(g, class)?;
    let mut conj = seed;
    let mut cost = 0;
    for v in values {
        cost += tower.weight_k(tower.sub(v, conj), basis)?;
        conj = tower.frobenius(conj, 1);
    }
    Ok(cost)
}

fn check_candidates(tower: &FieldTower, ell: usize, candidates: &[Elem]) -> Result<()> {
    for &b in candidates {
        if !tower.subfield_test(b, ell)? {
            return Err(Error::NotInSubfield { value: b.0, ell });
        }
    }
    Ok(())
}

/// Per-candidate cost `Σ_t wt_K(g_{q^t c} - b^{q^t})` in normal-basis
/// coordinates, summed directly.
pub fn anchor_costs_direct(
    tower: &FieldTower,
    g: &[Elem],
    class: &CyclotomicClass,
    candidates: &[Elem],
) -> Result<Vec<usize>> {
    tower.normal_basis().ok_or(Error::NormalBasisMissing)?;
    check_candidates(tower, class.len(), candidates)?;
    candidates
        .iter()
        .map(|&b| direct_cost(tower, g, class, b, Basis::Normal))
        .collect()
}

/// Same costs as [`anchor_costs_direct`] from coordinate frequency counts:
/// with `N[r][λ]` the number of normalized values whose `r`-th normal
/// coordinate is `λ`, the cost of `b` is `Σ_r (ℓ - N[r][b_r])`.
pub fn anchor_costs_fast(
    tower: &FieldTower,
    g: &[Elem],
    class: &CyclotomicClass,
    candidates: &[Elem],
) -> Result<Vec<usize>> {
    tower.normal_basis().ok_or(Error::NormalBasisMissing)?;
    let ell = class.len();
    check_candidates(tower, ell, candidates)?;
    let m = tower.m();
    let q = tower.q() as usize;
    let mut counts = vec![0usize; m * q];
    for x in normalize_class(tower, g, class)? {
        for (r, c) in tower.to_normal(x)?.into_iter().enumerate() {
            counts[r * q + c as usize] += 1;
        }
    }
    candidates
        .iter()
        .map(|&b| {
            let coords = tower.to_normal(b)?;
            Ok(coords
                .iter()
                .enumerate()
                .map(|(r, &c)| ell - counts[r * q + c as usize])
                .sum())
        })
        .collect()
}

/// Best seed plus whether a strict majority (`> ℓ/2`) backs it, in which
/// case it is the unique maximizer.
pub fn recover_seed_majority(tower: &FieldTower, g: &[Elem], class: &CyclotomicClass) -> Result<(Elem, bool)> {
    let choice = best_seed(tower, g, class)?;
    let confident = 2 * choice.matches > class.len();
    if confident {
        assert!(choice.unique, "majority value must be the unique maximizer");
    }
    Ok((choice.seed, confident))
}

/// `n + s(⌈log_q n⌉ + m)` base-field symbols.
pub fn storage_cost(n: usize, q: u64, m: usize, s: usize) -> u64 {
    n as u64 + s as u64 * (ceil_log(q, n as u64) + m as u64)
}

pub fn package_storage_cost(tower: &FieldTower, pkg: &ResidualPackage) -> u64 {
    storage_cost(pkg.n(), tower.q(), tower.m(), pkg.residual.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf4() -> FieldTower {
        FieldTower::new(2, &[1], &[1, 1, 1]).unwrap()
    }

    fn gf16() -> FieldTower {
        FieldTower::new(2, &[1], &[1, 1, 0, 0, 1]).unwrap()
    }

    fn class_5_10() -> CyclotomicClass {
        CyclotomicClass {
            leader: 5,
            members: vec![5, 10],
        }
    }

    #[test]
    fn normalize_examples() {
        let t = gf16();
        let c = class_5_10();
        let mut g = vec![Elem::ZERO; 15];
        assert_eq!(normalize_class(&t, &g, &c).unwrap(), vec![Elem::ZERO; 2]);
        g[5] = t.alpha_pow(5);
        g[10] = t.alpha_pow(10);
        let a5 = t.alpha_pow(5);
        assert_eq!(normalize_class(&t, &g, &c).unwrap(), vec![a5, a5]);
        g[5] = t.alpha();
        g[10] = Elem::ZERO;
        assert_eq!(normalize_class(&t, &g, &c).unwrap(), vec![t.alpha(), Elem::ZERO]);
    }

    #[test]
    fn best_seed_examples() {
        let t = gf16();
        let c = class_5_10();
        let mut g = vec![Elem::ZERO; 15];
        g[5] = t.alpha_pow(5);
        g[10] = t.alpha_pow(10);
        let s = best_seed(&t, &g, &c).unwrap();
        assert_eq!((s.seed, s.matches), (t.alpha_pow(5), 2));

        // normalized values α and α^2, neither in GF(4)
        g[5] = t.alpha();
        g[10] = t.frobenius(t.pow_u(t.alpha(), 2), 1);
        assert_eq!(
            normalize_class(&t, &g, &c).unwrap(),
            vec![t.alpha(), t.alpha_pow(2)]
        );
        let s = best_seed(&t, &g, &c).unwrap();
        assert_eq!((s.seed, s.matches), (Elem::ZERO, 0));

        let t4 = gf4();
        let p = CyclotomicPartition::new(3, 2).unwrap();
        let g = [Elem::ZERO, t4.alpha(), Elem::ZERO];
        let s = best_seed(&t4, &g, &p.classes()[1]).unwrap();
        assert_eq!((s.seed, s.matches, s.unique), (Elem::ZERO, 1, false));
    }

    #[test]
    fn encode_examples_gf4() {
        let t = gf4();
        let p = CyclotomicPartition::new(3, 2).unwrap();
        let a = t.alpha();
        let a2 = t.mul(a, a);

        let g = [Elem::ONE, a, a2];
        let pkg = encode_residual(&t, &p, &g).unwrap();
        assert!(pkg.residual.is_empty());
        assert_eq!(decode_residual(&t, &pkg).unwrap(), g);

        let g = [Elem::ONE, a, Elem::ZERO];
        let pkg = encode_residual(&t, &p, &g).unwrap();
        assert_eq!(pkg.seeds.seeds()[0], Elem::ONE);
        assert_eq!(pkg.residual.len(), 1);
        assert_eq!(global_min_support(&t, &p, &g).unwrap(), 1);
        assert_eq!(decode_residual(&t, &pkg).unwrap(), g);

        let g = [a, Elem::ZERO, Elem::ZERO];
        let pkg = encode_residual(&t, &p, &g).unwrap();
        assert_eq!(pkg.seeds.seeds(), &[Elem::ZERO, Elem::ZERO]);
        assert_eq!(pkg.residual, vec![(0, a)]);
        assert_eq!(decode_residual(&t, &pkg).unwrap(), g);
    }

    #[test]
    fn decode_edge_cases() {
        let t = gf4();
        let p = CyclotomicPartition::new(3, 2).unwrap();
        let empty = ResidualPackage {
            seeds: OrbitSeedVector::zero(p.clone()),
            residual: vec![],
            mode: ResidualMode::Full,
        };
        assert_eq!(decode_residual(&t, &empty).unwrap(), vec![Elem::ZERO; 3]);
        let bad = ResidualPackage {
            residual: vec![(3, Elem::ONE)],
            ..empty.clone()
        };
        assert_eq!(
            decode_residual(&t, &bad),
            Err(Error::IndexOutOfRange { index: 3, n: 3 })
        );

        let a = t.alpha();
        let g = [a, a, Elem::ONE];
        let full = encode_residual(&t, &p, &g).unwrap();
        let mut cut = full.clone();
        cut.truncate(1);
        assert_eq!(cut.mode, ResidualMode::Truncated);
        let got = decode_residual(&t, &cut).unwrap();
        let dropped: Vec<usize> = full.residual[1..].iter().map(|&(i, _)| i).collect();
        for i in 0..3 {
            assert_eq!(got[i] != g[i], dropped.contains(&i));
        }
    }

    #[test]
    fn anchor_examples() {
        let t = gf16().with_normal_basis().unwrap();
        let c = class_5_10();
        let mut g = vec![Elem::ZERO; 15];
        assert_eq!(
            anchor_seed(&t, &g, &c, 5, Basis::Polynomial).unwrap(),
            AnchorSeed::Admissible { seed: Elem::ZERO, cost: 0 }
        );
        g[5] = t.alpha_pow(5);
        g[10] = t.alpha_pow(10);
        assert_eq!(
            anchor_seed(&t, &g, &c, 10, Basis::Polynomial).unwrap(),
            AnchorSeed::Admissible { seed: t.alpha_pow(5), cost: 0 }
        );
        g[5] = t.alpha();
        assert_eq!(
            anchor_seed(&t, &g, &c, 5, Basis::Normal).unwrap(),
            AnchorSeed::Inadmissible
        );
        assert_eq!(
            anchor_seed(&t, &g, &c, 3, Basis::Normal),
            Err(Error::IndexNotInClass { index: 3, leader: 5 })
        );
    }

    #[test]
    fn fast_costs_gf4() {
        let t = gf4().with_normal_basis().unwrap();
        let p = CyclotomicPartition::new(3, 2).unwrap();
        let c = &p.classes()[1];
        let g = [Elem::ZERO, t.alpha(), Elem::ZERO];
        assert_eq!(anchor_costs_fast(&t, &g, c, &[Elem::ZERO]).unwrap(), vec![1]);
        assert_eq!(anchor_costs_direct(&t, &g, c, &[Elem::ZERO]).unwrap(), vec![1]);
        assert_eq!(
            anchor_costs_fast(&gf4(), &g, c, &[Elem::ZERO]),
            Err(Error::NormalBasisMissing)
        );
        let consistent = [Elem::ONE, t.alpha(), t.mul(t.alpha(), t.alpha())];
        assert_eq!(anchor_costs_fast(&t, &consistent, c, &[t.alpha()]).unwrap(), vec![0]);
    }

    #[test]
    fn majority_examples() {
        let t = gf16();
        let p = CyclotomicPartition::new(15, 2).unwrap();
        let c = &p.classes()[1];
        let b0 = t.alpha_pow(7);
        let mut g = vec![Elem::ZERO; 15];
        let mut x = b0;
        for &i in &c.members {
            g[i] = x;
            x = t.frobenius(x, 1);
        }
        assert_eq!(recover_seed_majority(&t, &g, c).unwrap(), (b0, true));
        g[c.members[2]] = t.add(g[c.members[2]], Elem::ONE);
        assert_eq!(recover_seed_majority(&t, &g, c).unwrap(), (b0, true));

        // two positions rewritten to agree with another seed b'
        let other = t.alpha_pow(3);
        g[c.members[2]] = t.frobenius(other, 2);
        g[c.members[3]] = t.frobenius(other, 3);
        let (_, confident) = recover_seed_majority(&t, &g, c).unwrap();
        assert!(!confident);
    }

    #[test]
    fn storage_examples() {
        assert_eq!(storage_cost(15, 2, 4, 2), 31);
        assert_eq!(storage_cost(15, 2, 4, 0), 15);
        assert_eq!(storage_cost(3, 2, 2, 1), 7);
    }
}
