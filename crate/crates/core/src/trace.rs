//! Direct transform of class-consistent vectors from precomputed trace
//! tables.
//!
//! For a class `C` with leader `c` and seed `β ∈ GF(q^ℓ)`, the contribution
//! of `C` to output `j` is `Tr_{GF(q^ℓ)/K}((ω^c)^j · β)`, so each class
//! costs one table lookup and the output needs only `K`-additions.

use std::collections::HashMap;

use crate::cyclotomic::CyclotomicPartition;
use crate::error::{Error, Result};
use crate::field::{Elem, FieldTower};
use crate::spectral::{Dft, OrbitSeedVector};

/// Default ceiling on `n · Σ q^{ℓ_k}` table entries.
pub const DEFAULT_MEMORY_CAP: u64 = 1 << 26;

#[derive(Debug, Clone)]
struct ClassTable {
    leader: usize,
    length: usize,
    /// Row number of each element of `GF(q^ℓ)`.
    row_of: HashMap<Elem, usize>,
    /// `rows[r][j]`, entries in `K`.
    rows: Vec<Vec<Elem>>,
}

#[derive(Debug, Clone)]
pub struct TraceTableSet {
    n: usize,
    omega: Elem,
    classes: Vec<ClassTable>,
}

/// Work done by one [`trace_dft_counted`] call.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OpCounts {
    pub lookups: u64,
    pub additions: u64,
}

/// Entry count `n · Σ q^{ℓ_k}` a full table set would need.
pub fn table_size_estimate(partition: &CyclotomicPartition) -> u64 {
    let q = partition.q();
    let rows: u64 = partition
        .lengths()
        .map(|l| q.saturating_pow(l as u32))
        .fold(0u64, u64::saturating_add);
    rows.saturating_mul(partition.n() as u64)
}

impl TraceTableSet {
    pub fn build(tower: &FieldTower, partition: &CyclotomicPartition, omega: Elem) -> Result<Self> {
        Self::build_with_cap(tower, partition, omega, DEFAULT_MEMORY_CAP)
    }

    pub fn build_with_cap(
        tower: &FieldTower,
        partition: &CyclotomicPartition,
        omega: Elem,
        cap: u64,
    ) -> Result<Self> {
        let n = partition.n();
        let plan = Dft::new(tower, n, omega)?;
        let estimate = table_size_estimate(partition);
        if estimate > cap {
            return Err(Error::MemoryCapExceeded { estimate, cap });
        }
        let mut classes = Vec::with_capacity(partition.kappa());
        for class in partition.classes() {
            let ell = class.len();
            let elements = tower.subfield_elements(ell)?;
            let root = plan.root_power(class.leader);
            let rows: Vec<Vec<Elem>> = elements
                .iter()
                .map(|&beta| {
                    let mut point = beta;
                    (0..n)
                        .map(|_| {
                            let tr = tower.rel_trace(point, ell).expect("point lies in GF(q^ell)");
                            point = tower.mul(point, root);
                            tr
                        })
                        .collect()
                })
                .collect();
            let row_of = elements.iter().enumerate().map(|(r, &e)| (e, r)).collect();
            classes.push(ClassTable {
                leader: class.leader,
                length: ell,
                row_of,
                rows,
            });
        }
        Ok(TraceTableSet { n, omega, classes })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn omega(&self) -> Elem {
        self.omega
    }

    /// Total rows over all classes, `Σ q^{ℓ_k}`.
    pub fn row_count(&self) -> usize {
        self.classes.iter().map(|c| c.rows.len()).sum()
    }

    /// The row for seed `beta` of class `k`, if `beta` is in its subfield.
    pub fn row(&self, k: usize, beta: Elem) -> Option<&[Elem]> {
        let class = self.classes.get(k)?;
        class.row_of.get(&beta).map(|&r| class.rows[r].as_slice())
    }
}

pub fn trace_dft(tower: &FieldTower, seeds: &OrbitSeedVector, tables: &TraceTableSet) -> Result<Vec<Elem>> {
    trace_dft_counted(tower, seeds, tables).map(|(out, _)| out)
}

/// `F = Σ_k T_k(b_k)` componentwise over `K`, with lookup and addition
/// counts.
pub fn trace_dft_counted(
    tower: &FieldTower,
    seeds: &OrbitSeedVector,
    tables: &TraceTableSet,
) -> Result<(Vec<Elem>, OpCounts)> {
    let partition = seeds.partition();
    if partition.n() != tables.n
        || partition.kappa() != tables.classes.len()
        || partition
            .classes()
            .iter()
            .zip(&tables.classes)
            .any(|(c, t)| c.leader != t.leader || c.len() != t.length)
    {
        return Err(Error::TableMismatch);
    }
    let mut counts = OpCounts::default();
    let mut out: Option<Vec<Elem>> = None;
    for (k, (&b, class)) in seeds.seeds().iter().zip(partition.classes()).enumerate() {
        let row = tables.row(k, b).ok_or(Error::SeedNotInSubfield {
            leader: class.leader,
            length: class.len(),
        })?;
        counts.lookups += 1;
        match out.as_mut() {
            None => out = Some(row.to_vec()),
            Some(acc) => {
                for (a, &r) in acc.iter_mut().zip(row) {
                    *a = tower.add(*a, r);
                }
                counts.additions += row.len() as u64;
            }
        }
    }
    Ok((out.unwrap_or_else(|| vec![Elem::ZERO; tables.n]), counts))
}
