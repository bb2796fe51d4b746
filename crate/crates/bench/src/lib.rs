//! Shared fixtures for the benchmarks.

use orbitcode_core::{CyclotomicPartition, Elem, FieldTower, OrbitSeedVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gf16() -> FieldTower {
    FieldTower::new(2, &[1], &[1, 1, 0, 0, 1]).unwrap()
}

pub fn gf256() -> FieldTower {
    FieldTower::new(2, &[1], &[1, 0, 1, 1, 1, 0, 0, 0, 1]).unwrap()
}

pub fn gf4096() -> FieldTower {
    FieldTower::new(2, &[1], &[1, 1, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 1]).unwrap()
}

pub fn base_vector(t: &FieldTower, n: usize, rng: &mut impl Rng) -> Vec<Elem> {
    (0..n).map(|_| Elem(rng.random_range(0..t.q()))).collect()
}

pub fn ambient_vector(t: &FieldTower, n: usize, rng: &mut impl Rng) -> Vec<Elem> {
    (0..n).map(|_| Elem(rng.random_range(0..t.order()))).collect()
}

/// Seeds read off the spectrum of a random `K`-vector.
pub fn seeds(t: &FieldTower, p: &CyclotomicPartition, rng: &mut impl Rng) -> OrbitSeedVector {
    let values = p
        .classes()
        .iter()
        .map(|c| {
            let ell = c.len() as u32;
            let size = t.q().pow(ell);
            let k = rng.random_range(0..size);
            if k == 0 {
                Elem::ZERO
            } else {
                t.pow_u(t.alpha_pow((t.order() - 1) / (size - 1)), k)
            }
        })
        .collect();
    OrbitSeedVector::new(t, p.clone(), values).unwrap()
}
