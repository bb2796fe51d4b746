//! Sparse cyclic-polynomial residual model `h_i = Σ_ν a_ν ω^{i e_ν}` and
//! its exact recovery from `2T` consecutive values.
//!
//! Recovery solves the `T×T` Hankel system for the recurrence polynomial
//! `Λ(Z) = Π (Z - ω^{e_ν})` by Gaussian elimination, finds its roots by
//! scanning all `n` powers of `ω`, then solves the Vandermonde system for
//! the coefficients.

use crate::error::{Error, Result};
use crate::field::{Elem, FieldTower};
use crate::numtheory::ceil_log;
use crate::spectral::Dft;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseResidualModel {
    n: usize,
    /// `(exponent, coefficient)`, exponents distinct and increasing,
    /// coefficients nonzero.
    terms: Vec<(usize, Elem)>,
}

impl SparseResidualModel {
    pub fn new(n: usize, mut terms: Vec<(usize, Elem)>) -> Result<Self> {
        terms.sort_by_key(|&(e, _)| e);
        if let Some(&(e, _)) = terms.iter().find(|&&(e, _)| e >= n) {
            return Err(Error::IndexOutOfRange { index: e, n });
        }
        if terms.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidParameter("repeated exponent".into()));
        }
        if terms.iter().any(|&(_, a)| a.is_zero()) {
            return Err(Error::InvalidParameter("zero coefficient".into()));
        }
        Ok(SparseResidualModel { n, terms })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[(usize, Elem)] {
        &self.terms
    }

    /// `T`.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// `h_i = Σ a_ν ω^{i e_ν}` for `i < n`.
pub fn sparse_eval(tower: &FieldTower, model: &SparseResidualModel, omega: Elem) -> Result<Vec<Elem>> {
    let plan = Dft::new(tower, model.n, omega)?;
    Ok((0..model.n)
        .map(|i| {
            model.terms.iter().fold(Elem::ZERO, |acc, &(e, a)| {
                tower.add(acc, tower.mul(a, plan.root_power(i * e)))
            })
        })
        .collect())
}

/// Solves `A x = b` over `L`; `None` if `A` is singular.
fn solve(tower: &FieldTower, mut a: Vec<Vec<Elem>>, mut b: Vec<Elem>) -> Option<Vec<Elem>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = tower.inv(a[col][col]).ok()?;
        for c in col..n {
            a[col][c] = tower.mul(a[col][c], inv);
        }
        b[col] = tower.mul(b[col], inv);
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col];
            for c in col..n {
                let t = tower.mul(f, a[col][c]);
                a[r][c] = tower.sub(a[r][c], t);
            }
            let t = tower.mul(f, b[col]);
            b[r] = tower.sub(b[r], t);
        }
    }
    Some(b)
}

fn hankel(prefix: &[Elem], t: usize) -> Vec<Vec<Elem>> {
    (0..t).map(|r| prefix[r..r + t].to_vec()).collect()
}

/// Recovers a `T`-term model from `h_0..h_{2T-1}`.
pub fn prony_recover(
    tower: &FieldTower,
    prefix: &[Elem],
    terms: usize,
    n: usize,
    omega: Elem,
) -> Result<SparseResidualModel> {
    if 2 * terms > n {
        return Err(Error::InvalidParameter(format!("2T = {} exceeds n = {n}", 2 * terms)));
    }
    if prefix.len() < 2 * terms {
        return Err(Error::LengthMismatch {
            expected: 2 * terms,
            actual: prefix.len(),
        });
    }
    let plan = Dft::new(tower, n, omega)?;
    if terms == 0 {
        return SparseResidualModel::new(n, Vec::new());
    }
    // Σ_k Λ_k h_{i+k} = -h_{i+T}, i < T
    let rhs: Vec<Elem> = (0..terms).map(|i| tower.neg(prefix[i + terms])).collect();
    let lambda = solve(tower, hankel(prefix, terms), rhs).ok_or(Error::SingularHankel)?;
    let mut recurrence = lambda;
    recurrence.push(Elem::ONE);

    let eval = |z: Elem| {
        recurrence
            .iter()
            .rev()
            .fold(Elem::ZERO, |acc, &c| tower.add(tower.mul(acc, z), c))
    };
    let exponents: Vec<usize> = (0..n).filter(|&e| eval(plan.root_power(e)).is_zero()).collect();
    if exponents.len() != terms {
        return Err(Error::RootNotInGroup);
    }

    // Vandermonde: Σ_ν a_ν λ_ν^i = h_i, i < T
    let vander: Vec<Vec<Elem>> = (0..terms)
        .map(|i| exponents.iter().map(|&e| plan.root_power(i * e)).collect())
        .collect();
    let coeffs = solve(tower, vander, prefix[..terms].to_vec()).ok_or(Error::SingularHankel)?;
    if coeffs.iter().any(|c| c.is_zero()) {
        return Err(Error::SingularHankel);
    }
    SparseResidualModel::new(n, exponents.into_iter().zip(coeffs).collect())
}

/// Advisory sparsity guess: the largest `T <= len/2` whose leading `T×T`
/// Hankel matrix is nonsingular.  Not guaranteed.
pub fn detect_sparsity(tower: &FieldTower, h: &[Elem]) -> usize {
    (0..=h.len() / 2)
        .rev()
        .find(|&t| {
            t == 0 || solve(tower, hankel(h, t), vec![Elem::ZERO; t]).is_some()
        })
        .unwrap_or(0)
}

/// `T · (m + ⌈log_q n⌉)` base-field symbols.
pub fn sparse_cost(terms: usize, q: u64, m: usize, n: usize) -> u64 {
    terms as u64 * (m as u64 + ceil_log(q, n as u64))
}

/// How a residual vector is stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ResidualBackend {
    List(Vec<(usize, Elem)>),
    Sparse(SparseResidualModel),
}

/// Picks the sparse model only when it reproduces `h` exactly with `terms`
/// terms and costs strictly less than the support-value list.
pub fn choose_backend(tower: &FieldTower, h: &[Elem], terms: usize, omega: Elem) -> ResidualBackend {
    let list: Vec<(usize, Elem)> = h
        .iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, &x)| (i, x))
        .collect();
    let n = h.len();
    let list_cost = list.len() as u64 * (ceil_log(tower.q(), n as u64) + tower.m() as u64);
    if sparse_cost(terms, tower.q(), tower.m(), n) >= list_cost {
        return ResidualBackend::List(list);
    }
    match prony_recover(tower, h, terms, n, omega) {
        Ok(model) if sparse_eval(tower, &model, omega).as_deref() == Ok(h) => ResidualBackend::Sparse(model),
        _ => ResidualBackend::List(list),
    }
}
