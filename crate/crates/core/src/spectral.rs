//! Naive DFT over `L`, Frobenius-consistency, orbit-seed encoding and the
//! factorization of `X^n - 1` into class minimal polynomials.
//!
//! A vector `v ∈ K^n` has a spectrum satisfying `V[q·s mod n] = V[s]^q`;
//! such a spectrum is fixed by one value per q-cyclotomic class, the
//! value at the class leader, and that value lies in `GF(q^ℓ)` for a
//! class of length `ℓ`.

use crate::cyclotomic::{CyclotomicClass, CyclotomicPartition};
use crate::error::{Error, Result};
use crate::field::{Elem, FieldTower};

/// A precomputed length-`n` transform for a fixed `ω` of order `n`.
#[derive(Debug, Clone)]
pub struct Dft<'a> {
    tower: &'a FieldTower,
    omega: Elem,
    /// `ω^k` for `k < n`.
    powers: Vec<Elem>,
    n_inv: Elem,
}

fn check_order(tower: &FieldTower, n: usize, omega: Elem) -> Result<()> {
    let group = tower.order() - 1;
    if n == 0 || group % n as u64 != 0 {
        return Err(Error::OrderNotDividing {
            n: n as u64,
            group_order: group,
        });
    }
    let actual = tower.multiplicative_order(omega).unwrap_or(0);
    if actual != n as u64 {
        return Err(Error::WrongOrder {
            expected: n as u64,
            actual,
        });
    }
    Ok(())
}

impl<'a> Dft<'a> {
    pub fn new(tower: &'a FieldTower, n: usize, omega: Elem) -> Result<Self> {
        check_order(tower, n, omega)?;
        let mut powers = Vec::with_capacity(n);
        let mut x = Elem::ONE;
        for _ in 0..n {
            powers.push(x);
            x = tower.mul(x, omega);
        }
        // n as an element of the prime field, embedded in L
        let n_k = Elem(n as u64 % tower.p());
        let n_inv = tower.inv(n_k)?;
        Ok(Dft {
            tower,
            omega,
            powers,
            n_inv,
        })
    }

    /// Uses the default root `α^((Q-1)/n)`.
    pub fn with_default_root(tower: &'a FieldTower, n: usize) -> Result<Self> {
        let omega = tower.element_of_order(n as u64)?;
        Self::new(tower, n, omega)
    }

    pub fn n(&self) -> usize {
        self.powers.len()
    }

    pub fn omega(&self) -> Elem {
        self.omega
    }

    /// `ω^k`, `k` taken mod `n`.
    pub fn root_power(&self, k: usize) -> Elem {
        self.powers[k % self.n()]
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.n() {
            return Err(Error::LengthMismatch {
                expected: self.n(),
                actual: len,
            });
        }
        Ok(())
    }

    /// `V_s = Σ_i v_i ω^{is}`.
    pub fn forward(&self, v: &[Elem]) -> Result<Vec<Elem>> {
        self.check_len(v.len())?;
        let n = self.n();
        Ok((0..n)
            .map(|s| {
                v.iter().enumerate().fold(Elem::ZERO, |acc, (i, &vi)| {
                    self.tower.add(acc, self.tower.mul(vi, self.powers[i * s % n]))
                })
            })
            .collect())
    }

    /// `v_j = (1/n) Σ_s V_s ω^{-js}`.
    pub fn inverse(&self, spectrum: &[Elem]) -> Result<Vec<Elem>> {
        self.check_len(spectrum.len())?;
        let n = self.n();
        Ok((0..n)
            .map(|j| {
                let sum = spectrum.iter().enumerate().fold(Elem::ZERO, |acc, (s, &vs)| {
                    let k = (n - j * s % n) % n;
                    self.tower.add(acc, self.tower.mul(vs, self.powers[k]))
                });
                self.tower.mul(sum, self.n_inv)
            })
            .collect())
    }
}

pub fn dft(tower: &FieldTower, v: &[Elem], omega: Elem) -> Result<Vec<Elem>> {
    Dft::new(tower, v.len(), omega)?.forward(v)
}

pub fn idft(tower: &FieldTower, spectrum: &[Elem], omega: Elem) -> Result<Vec<Elem>> {
    Dft::new(tower, spectrum.len(), omega)?.inverse(spectrum)
}

/// First `s` with `V[q·s mod n] ≠ V[s]^q`, if any.
pub fn first_inconsistency(tower: &FieldTower, spectrum: &[Elem]) -> Option<usize> {
    let n = spectrum.len();
    if n == 0 {
        return None;
    }
    let q = (tower.q() % n as u64) as usize;
    (0..n).find(|&s| spectrum[q * s % n] != tower.frobenius(spectrum[s], 1))
}

pub fn is_frobenius_consistent(tower: &FieldTower, spectrum: &[Elem]) -> bool {
    first_inconsistency(tower, spectrum).is_none()
}

/// One seed per cyclotomic class, each in its native subfield.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitSeedVector {
    partition: CyclotomicPartition,
    seeds: Vec<Elem>,
}

impl OrbitSeedVector {
    /// Pairs seeds with a partition and checks each seed's subfield.
    pub fn new(tower: &FieldTower, partition: CyclotomicPartition, seeds: Vec<Elem>) -> Result<Self> {
        if seeds.len() != partition.kappa() {
            return Err(Error::LengthMismatch {
                expected: partition.kappa(),
                actual: seeds.len(),
            });
        }
        for (class, &b) in partition.classes().iter().zip(&seeds) {
            if !tower.contains(b) || !tower.subfield_test(b, class.len())? {
                return Err(Error::SeedNotInSubfield {
                    leader: class.leader,
                    length: class.len(),
                });
            }
        }
        Ok(OrbitSeedVector { partition, seeds })
    }

    pub fn zero(partition: CyclotomicPartition) -> Self {
        let seeds = vec![Elem::ZERO; partition.kappa()];
        OrbitSeedVector { partition, seeds }
    }

    pub fn partition(&self) -> &CyclotomicPartition {
        &self.partition
    }

    pub fn seeds(&self) -> &[Elem] {
        &self.seeds
    }

    pub fn n(&self) -> usize {
        self.partition.n()
    }

    /// Total `K`-coordinate count `Σ ℓ_k`; equals `n`.
    pub fn coordinate_count(&self) -> usize {
        self.partition.lengths().sum()
    }

    /// Fills a length-`n` vector with `x_{q^t c} = b^{q^t}` on every class.
    pub fn expand(&self, tower: &FieldTower) -> Vec<Elem> {
        let mut out = vec![Elem::ZERO; self.n()];
        for (class, &b) in self.partition.classes().iter().zip(&self.seeds) {
            let mut x = b;
            for &i in &class.members {
                out[i] = x;
                x = tower.frobenius(x, 1);
            }
        }
        out
    }
}

/// Orbit-seed encoding of a Frobenius-consistent spectrum.
pub fn encode_seeds(
    tower: &FieldTower,
    partition: &CyclotomicPartition,
    spectrum: &[Elem],
) -> Result<OrbitSeedVector> {
    if spectrum.len() != partition.n() {
        return Err(Error::LengthMismatch {
            expected: partition.n(),
            actual: spectrum.len(),
        });
    }
    if partition.q() != tower.q() {
        return Err(Error::InvalidParameter("partition base differs from tower q".into()));
    }
    if let Some(index) = first_inconsistency(tower, spectrum) {
        return Err(Error::NotConsistent { index });
    }
    let seeds = partition
        .classes()
        .iter()
        .map(|c| spectrum[c.leader])
        .collect();
    OrbitSeedVector::new(tower, partition.clone(), seeds)
}

/// Rebuilds the full spectrum from its orbit seeds.
pub fn decode_seeds(tower: &FieldTower, seeds: &OrbitSeedVector) -> Result<Vec<Elem>> {
    for (class, &b) in seeds.partition.classes().iter().zip(&seeds.seeds) {
        if !tower.subfield_test(b, class.len())? {
            return Err(Error::SeedNotInSubfield {
                leader: class.leader,
                length: class.len(),
            });
        }
    }
    Ok(seeds.expand(tower))
}

/// Multi-dimensional DFT over `Z/d_0 × … × Z/d_{r-1}` (row-major layout,
/// at most three axes), using `ω_k = α^((Q-1)/d_k)` on axis `k`.
pub fn dft_product(tower: &FieldTower, dims: &[usize], v: &[Elem]) -> Result<Vec<Elem>> {
    if dims.is_empty() || dims.len() > 3 {
        return Err(Error::InvalidShape(format!(
            "expected 1 to 3 axes, got {}",
            dims.len()
        )));
    }
    let total: usize = dims.iter().product();
    if v.len() != total {
        return Err(Error::LengthMismatch {
            expected: total,
            actual: v.len(),
        });
    }
    let plans = dims
        .iter()
        .map(|&d| Dft::with_default_root(tower, d))
        .collect::<Result<Vec<_>>>()?;
    // Transform one axis at a time.
    let mut data = v.to_vec();
    let mut stride = total;
    for (axis, plan) in plans.iter().enumerate() {
        let d = dims[axis];
        stride /= d;
        let outer = total / (d * stride);
        for o in 0..outer {
            for inner in 0..stride {
                let base = o * d * stride + inner;
                let line: Vec<Elem> = (0..d).map(|k| data[base + k * stride]).collect();
                let out = plan.forward(&line)?;
                for (k, x) in out.into_iter().enumerate() {
                    data[base + k * stride] = x;
                }
            }
        }
    }
    Ok(data)
}

/// Checks `V(q·s) = V(s)^q` at every multi-index of the product DFT.
pub fn descent_check_product(tower: &FieldTower, dims: &[usize], v: &[Elem]) -> Result<bool> {
    let spectrum = dft_product(tower, dims, v)?;
    let q = tower.q() as usize;
    let strides: Vec<usize> = (0..dims.len())
        .map(|k| dims[k + 1..].iter().product())
        .collect();
    Ok((0..spectrum.len()).all(|flat| {
        let image: usize = (0..dims.len())
            .map(|k| {
                let s = flat / strides[k] % dims[k];
                (q % dims[k]) * s % dims[k] * strides[k]
            })
            .sum();
        spectrum[image] == tower.frobenius(spectrum[flat], 1)
    }))
}

/// Product of two polynomials over `L` (coefficients low to high).
pub fn poly_mul(tower: &FieldTower, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Elem::ZERO; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = tower.add(out[i + j], tower.mul(x, y));
        }
    }
    out
}

/// `M_C(X) = Π_{s∈C} (X - ω^s)`, monic, coefficients low to high.
pub fn class_min_poly(tower: &FieldTower, class: &CyclotomicClass, omega: Elem) -> Result<Vec<Elem>> {
    let n = tower.multiplicative_order(omega).unwrap_or(0);
    if n == 0 {
        return Err(Error::WrongOrder { expected: 1, actual: 0 });
    }
    if let Some(&bad) = class.members.iter().find(|&&s| s as u64 >= n) {
        return Err(Error::WrongOrder {
            expected: bad as u64 + 1,
            actual: n,
        });
    }
    Ok(class.members.iter().fold(vec![Elem::ONE], |acc, &s| {
        let root = tower.pow_u(omega, s as u64);
        poly_mul(tower, &acc, &[tower.neg(root), Elem::ONE])
    }))
}

/// All class minimal polynomials of the partition, in class order.
pub fn cyclotomic_factors(
    tower: &FieldTower,
    partition: &CyclotomicPartition,
    omega: Elem,
) -> Result<Vec<Vec<Elem>>> {
    check_order(tower, partition.n(), omega)?;
    partition
        .classes()
        .iter()
        .map(|c| class_min_poly(tower, c, omega))
        .collect()
}
