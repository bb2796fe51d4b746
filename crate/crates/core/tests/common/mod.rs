#![allow(dead_code)]

use orbitcode_core::poly::first_irreducible;
use orbitcode_core::{CyclotomicPartition, Elem, FieldTower, OrbitSeedVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gf4() -> FieldTower {
    FieldTower::new(2, &[1], &[1, 1, 1]).unwrap()
}

pub fn gf16() -> FieldTower {
    FieldTower::new(2, &[1], &[1, 1, 0, 0, 1]).unwrap()
}

pub fn gf9() -> FieldTower {
    FieldTower::new(3, &[1], &[1, 0, 1]).unwrap()
}

/// GF(16) as a quadratic extension of GF(4).
pub fn gf16_over_gf4() -> FieldTower {
    FieldTower::new(2, &[1, 1, 1], &[2, 1, 1]).unwrap()
}

pub fn gf256() -> FieldTower {
    FieldTower::new(2, &[1], &[1, 0, 1, 1, 1, 0, 0, 0, 1]).unwrap()
}

pub fn gf4096() -> FieldTower {
    FieldTower::new(2, &[1], &[1, 1, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 1]).unwrap()
}

/// Tower with `K` given by `k_modulus` and the first irreducible degree-`m`
/// modulus over `K`.
pub fn searched_tower(p: u64, k_modulus: &[u64], m: usize) -> FieldTower {
    let base = FieldTower::new(p, k_modulus, &[0, 1]).unwrap();
    let l = first_irreducible(base.base_field(), m).unwrap();
    FieldTower::new(p, k_modulus, &l).unwrap()
}

/// A spread of towers used by the property suites.
pub fn tower_matrix() -> Vec<FieldTower> {
    vec![
        gf4(),
        gf16(),
        gf9(),
        gf16_over_gf4(),
        FieldTower::new(5, &[1], &[2, 0, 1]).unwrap(),
        FieldTower::new(3, &[1], &[1, 2, 0, 1]).unwrap(),
        searched_tower(2, &[1, 1, 0, 1], 2),
        searched_tower(2, &[1, 1, 1], 3),
        gf256(),
    ]
}

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

pub fn random_elem(t: &FieldTower, rng: &mut impl Rng) -> Elem {
    Elem(rng.random_range(0..t.order()))
}

pub fn random_base_vector(t: &FieldTower, n: usize, rng: &mut impl Rng) -> Vec<Elem> {
    (0..n).map(|_| Elem(rng.random_range(0..t.q()))).collect()
}

pub fn random_vector(t: &FieldTower, n: usize, rng: &mut impl Rng) -> Vec<Elem> {
    (0..n).map(|_| random_elem(t, rng)).collect()
}

/// Uniform element of `GF(q^ell)`, drawn as `0` or a power of the subfield
/// generator.
pub fn random_subfield_elem(t: &FieldTower, ell: usize, rng: &mut impl Rng) -> Elem {
    let size = t.q().pow(ell as u32);
    let k = rng.random_range(0..size);
    if k == 0 {
        Elem::ZERO
    } else {
        let gen = t.alpha_pow((t.order() - 1) / (size - 1));
        t.pow_u(gen, k - 1)
    }
}

pub fn random_seeds(t: &FieldTower, p: &CyclotomicPartition, rng: &mut impl Rng) -> OrbitSeedVector {
    let seeds = p
        .lengths()
        .map(|l| random_subfield_elem(t, l, rng))
        .collect();
    OrbitSeedVector::new(t, p.clone(), seeds).unwrap()
}
