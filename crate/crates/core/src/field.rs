//! Exact arithmetic in a two-level tower `GF(p) ⊂ K = GF(q) ⊂ L = GF(q^m)`.
//!
//! Elements are [`Elem`] values holding the canonical integer
//! `Σ int(c_i)·q^i`, where `c_i ∈ K` are the polynomial-basis coordinates
//! over `K` and `int(c)` reads the `GF(p)` digits of `c` in base `p`.  The
//! image of `K` inside `L` is therefore exactly the integers `0..q`.
//!
//! When `Q = q^m <= 2^20` the tower carries log/antilog tables for a fixed
//! primitive element `α`; multiplication, Frobenius and the exponent-based
//! subfield test all go through them.  Larger towers fall back to
//! polynomial arithmetic and report [`Error::NoDlogTable`] where a discrete
//! log is required.

use std::fmt;

use crate::error::{Error, Result, TowerLevel};
use crate::numtheory::{factorize, is_prime, pow_mod};
use crate::poly::{is_irreducible, ExtensionField, PrimeField, Scalar};

/// Largest `Q` for which log/antilog tables are built.
pub const TABLE_CAP: u64 = 1 << 20;

/// An element of the top field `L`, by canonical integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Elem(pub u64);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The `K`-basis of `L` used for coordinate weights.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Basis {
    Polynomial,
    Normal,
}

#[derive(Debug, Clone)]
struct LogTables {
    /// `exp[k] = α^k` for `k < 2(Q-1)`, doubled to skip one reduction.
    exp: Vec<u32>,
    /// `log[x]` for `x != 0`; `log[0]` is unused.
    log: Vec<u32>,
}

/// A normal basis `{β, β^q, …, β^{q^{m-1}}}` with its change-of-basis
/// matrices over `K`.
#[derive(Debug, Clone)]
pub struct NormalBasis {
    generator: Elem,
    /// Row `i` holds the polynomial coordinates of `β^{q^i}`.
    to_poly: Vec<Vec<u64>>,
    /// Inverse of `to_poly`.
    from_poly: Vec<Vec<u64>>,
}

impl NormalBasis {
    pub fn generator(&self) -> Elem {
        self.generator
    }
}

type BaseField = ExtensionField<PrimeField>;
type TopField = ExtensionField<BaseField>;

#[derive(Debug, Clone)]
pub struct FieldTower {
    p: u64,
    a: usize,
    m: usize,
    q: u64,
    order: u64,
    k_modulus: Vec<u64>,
    l_modulus: Vec<u64>,
    base: BaseField,
    top: TopField,
    alpha: Elem,
    group_factors: Vec<(u64, u32)>,
    tables: Option<LogTables>,
    normal: Option<NormalBasis>,
}

fn validate_modulus(level: TowerLevel, coeffs: &[u64], bound: u64) -> Result<()> {
    let bad = |reason: &str| Error::InvalidModulus {
        level,
        reason: reason.to_string(),
    };
    if coeffs.len() < 2 {
        return Err(bad("degree must be at least 1"));
    }
    if *coeffs.last().unwrap() != 1 {
        return Err(bad("not monic"));
    }
    if coeffs.iter().any(|&c| c >= bound) {
        return Err(bad("coefficient out of range"));
    }
    Ok(())
}

impl FieldTower {
    /// Builds and verifies a tower.
    ///
    /// `k_modulus` lists `GF(p)` digits low to high; the degenerate `[1]`
    /// stands for `K = GF(p)`.  `l_modulus` lists `K` canonical integers low
    /// to high.  Both must be monic and irreducible.
    pub fn new(p: u64, k_modulus: &[u64], l_modulus: &[u64]) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let k_mod: Vec<u64> = if k_modulus == [1] {
            vec![0, 1]
        } else {
            k_modulus.to_vec()
        };
        validate_modulus(TowerLevel::Base, &k_mod, p)?;
        let a = k_mod.len() - 1;
        let q = p.checked_pow(a as u32).ok_or(Error::Overflow)?;
        let prime = PrimeField::new(p);
        if !is_irreducible(&prime, &k_mod) {
            return Err(Error::ReducibleModulus(TowerLevel::Base));
        }
        let base = ExtensionField::new(prime, k_mod.clone());

        validate_modulus(TowerLevel::Top, l_modulus, q)?;
        let m = l_modulus.len() - 1;
        let order = q
            .checked_pow(m as u32)
            .filter(|&v| v <= 1 << 62)
            .ok_or(Error::Overflow)?;
        if !is_irreducible(&base, l_modulus) {
            return Err(Error::ReducibleModulus(TowerLevel::Top));
        }
        let top = ExtensionField::new(base.clone(), l_modulus.to_vec());

        let group_factors = factorize(order - 1);
        let alpha = (1..order)
            .find(|&x| {
                group_factors
                    .iter()
                    .all(|&(r, _)| top.pow(x, (order - 1) / r) != 1)
            })
            .map(Elem)
            .expect("a finite field has a primitive element");

        let tables = (order <= TABLE_CAP).then(|| {
            let n = (order - 1) as usize;
            let mut exp = vec![0u32; 2 * n.max(1)];
            let mut log = vec![0u32; order as usize];
            let mut x = 1u64;
            for k in 0..n {
                exp[k] = x as u32;
                log[x as usize] = k as u32;
                x = top.mul(x, alpha.0);
            }
            for k in n..2 * n {
                exp[k] = exp[k - n];
            }
            if n == 0 {
                exp[0] = 1;
            }
            LogTables { exp, log }
        });

        Ok(FieldTower {
            p,
            a,
            m,
            q,
            order,
            k_modulus: k_mod,
            l_modulus: l_modulus.to_vec(),
            base,
            top,
            alpha,
            group_factors,
            tables,
            normal: None,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Degree of `K` over `GF(p)`.
    pub fn a(&self) -> usize {
        self.a
    }

    /// Degree of `L` over `K`.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// `Q = q^m`, the size of `L`.
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn k_modulus(&self) -> &[u64] {
        &self.k_modulus
    }

    pub fn l_modulus(&self) -> &[u64] {
        &self.l_modulus
    }

    /// The fixed primitive element: smallest canonical integer of order `Q-1`.
    pub fn alpha(&self) -> Elem {
        self.alpha
    }

    pub fn has_dlog_table(&self) -> bool {
        self.tables.is_some()
    }

    /// Arithmetic of `K` on canonical integers `0..q`.
    pub fn base_field(&self) -> &impl Scalar {
        &self.base
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.order).map(Elem)
    }

    pub fn contains(&self, x: Elem) -> bool {
        x.0 < self.order
    }

    // ---- coordinates -------------------------------------------------

    /// Polynomial-basis coordinates over `K`, each a `K` canonical integer.
    pub fn k_coords(&self, x: Elem) -> Vec<u64> {
        self.top.to_coeffs(x.0)
    }

    /// Full coordinates: `m` entries of `a` `GF(p)` digits each.
    pub fn coords(&self, x: Elem) -> Vec<Vec<u64>> {
        self.k_coords(x)
            .into_iter()
            .map(|c| self.base.to_coeffs(c))
            .collect()
    }

    pub fn from_k_coords(&self, coords: &[u64]) -> Result<Elem> {
        if coords.len() != self.m {
            return Err(Error::LengthMismatch {
                expected: self.m,
                actual: coords.len(),
            });
        }
        if coords.iter().any(|&c| c >= self.q) {
            return Err(Error::InvalidParameter("K coordinate out of range".into()));
        }
        Ok(Elem(self.top.from_coeffs(coords)))
    }

    pub fn from_coords(&self, coords: &[Vec<u64>]) -> Result<Elem> {
        let mut ks = Vec::with_capacity(coords.len());
        for c in coords {
            if c.len() != self.a || c.iter().any(|&d| d >= self.p) {
                return Err(Error::InvalidParameter("GF(p) digit vector malformed".into()));
            }
            ks.push(self.base.from_coeffs(c));
        }
        self.from_k_coords(&ks)
    }

    // ---- arithmetic --------------------------------------------------

    pub fn add(&self, x: Elem, y: Elem) -> Elem {
        Elem(self.top.add(x.0, y.0))
    }

    pub fn sub(&self, x: Elem, y: Elem) -> Elem {
        Elem(self.top.sub(x.0, y.0))
    }

    pub fn neg(&self, x: Elem) -> Elem {
        Elem(self.top.neg(x.0))
    }

    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        if x.is_zero() || y.is_zero() {
            return Elem::ZERO;
        }
        match &self.tables {
            Some(t) => {
                let k = t.log[x.0 as usize] as usize + t.log[y.0 as usize] as usize;
                Elem(t.exp[k] as u64)
            }
            None => Elem(self.top.mul(x.0, y.0)),
        }
    }

    pub fn inv(&self, x: Elem) -> Result<Elem> {
        if x.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match &self.tables {
            Some(t) => {
                let n = self.order - 1;
                let k = (n - t.log[x.0 as usize] as u64) % n.max(1);
                Ok(Elem(t.exp[k as usize] as u64))
            }
            None => Ok(Elem(self.top.inv(x.0).unwrap())),
        }
    }

    pub fn div(&self, x: Elem, y: Elem) -> Result<Elem> {
        Ok(self.mul(x, self.inv(y)?))
    }

    /// `x^e` for a nonnegative exponent.
    pub fn pow_u(&self, x: Elem, e: u64) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if x.is_zero() {
            return Elem::ZERO;
        }
        let n = self.order - 1;
        match &self.tables {
            Some(t) => {
                let k = (t.log[x.0 as usize] as u128 * (e % n.max(1)) as u128) % n.max(1) as u128;
                Elem(t.exp[k as usize] as u64)
            }
            None => Elem(self.top.pow(x.0, e % n)),
        }
    }

    /// `x^e` for any integer exponent, reduced mod `Q-1` for nonzero `x`.
    pub fn pow(&self, x: Elem, e: i64) -> Result<Elem> {
        if x.is_zero() {
            return match e.signum() {
                0 => Ok(Elem::ONE),
                1 => Ok(Elem::ZERO),
                _ => Err(Error::DivisionByZero),
            };
        }
        let n = (self.order - 1) as i128;
        let r = (e as i128).rem_euclid(n) as u64;
        Ok(self.pow_u(x, r))
    }

    /// `α^k`.
    pub fn alpha_pow(&self, k: u64) -> Elem {
        self.pow_u(self.alpha, k)
    }

    pub fn dlog(&self, x: Elem) -> Result<u64> {
        let t = self.tables.as_ref().ok_or(Error::NoDlogTable)?;
        if x.is_zero() {
            return Err(Error::LogOfZero);
        }
        Ok(t.log[x.0 as usize] as u64)
    }

    /// Multiplicative order of a nonzero element; `None` for zero.
    pub fn multiplicative_order(&self, x: Elem) -> Option<u64> {
        if x.is_zero() {
            return None;
        }
        let mut ord = self.order - 1;
        for &(r, e) in &self.group_factors {
            for _ in 0..e {
                if self.pow_u(x, ord / r) == Elem::ONE {
                    ord /= r;
                } else {
                    break;
                }
            }
        }
        Some(ord)
    }

    // ---- Frobenius, subfields, trace ---------------------------------

    /// `x^(q^t)`, with `t` taken mod `m`.
    pub fn frobenius(&self, x: Elem, t: i64) -> Elem {
        let t = t.rem_euclid(self.m as i64) as u64;
        if t == 0 || x.is_zero() {
            return x;
        }
        match &self.tables {
            Some(_) => {
                let n = self.order - 1;
                let e = pow_mod(self.q, t, n);
                self.pow_u(x, if e == 0 { n } else { e })
            }
            None => (0..t).fold(x, |acc, _| self.pow_u(acc, self.q)),
        }
    }

    /// `x^(q^(m-t))`, the inverse of `frobenius(·, t)`.
    pub fn inverse_frobenius(&self, x: Elem, t: i64) -> Elem {
        self.frobenius(x, self.m as i64 - t.rem_euclid(self.m as i64))
    }

    fn check_divides_m(&self, ell: usize) -> Result<()> {
        if ell == 0 || self.m % ell != 0 {
            return Err(Error::InvalidSubfieldDegree { ell, m: self.m });
        }
        Ok(())
    }

    /// Membership in `GF(q^ell)`.  With tables present the power test and
    /// the exponent-divisibility test are both evaluated and must agree.
    pub fn subfield_test(&self, x: Elem, ell: usize) -> Result<bool> {
        let by_power = self.subfield_test_by_power(x, ell)?;
        if self.tables.is_some() {
            debug_assert_eq!(Ok(by_power), self.subfield_test_by_dlog(x, ell));
        }
        Ok(by_power)
    }

    /// `x^(q^ell) = x`.
    pub fn subfield_test_by_power(&self, x: Elem, ell: usize) -> Result<bool> {
        self.check_divides_m(ell)?;
        Ok(self.frobenius(x, ell as i64) == x)
    }

    /// `(Q-1)/(q^ell-1)` divides `dlog(x)`, or `x = 0`.
    pub fn subfield_test_by_dlog(&self, x: Elem, ell: usize) -> Result<bool> {
        self.check_divides_m(ell)?;
        if self.tables.is_none() {
            return Err(Error::NoDlogTable);
        }
        if x.is_zero() {
            return Ok(true);
        }
        let step = (self.order - 1) / (self.q.pow(ell as u32) - 1);
        Ok(self.dlog(x)? % step == 0)
    }

    /// `Tr_{GF(q^ell)/K}(x) = Σ_{t<ell} x^(q^t)`.
    pub fn rel_trace(&self, x: Elem, ell: usize) -> Result<Elem> {
        if !self.subfield_test(x, ell)? {
            return Err(Error::NotInSubfield { value: x.0, ell });
        }
        Ok((0..ell).fold(Elem::ZERO, |acc, t| {
            self.add(acc, self.frobenius(x, t as i64))
        }))
    }

    /// Whether `x` lies in `K`, i.e. has canonical integer below `q`.
    pub fn in_base(&self, x: Elem) -> bool {
        x.0 < self.q
    }

    /// `α^((Q-1)/n)`, an element of order exactly `n`.
    pub fn element_of_order(&self, n: u64) -> Result<Elem> {
        let group = self.order - 1;
        if n == 0 || group % n != 0 {
            return Err(Error::OrderNotDividing {
                n,
                group_order: group,
            });
        }
        Ok(self.alpha_pow(group / n))
    }

    /// All elements of `GF(q^ell)` in increasing canonical order.
    pub fn subfield_elements(&self, ell: usize) -> Result<Vec<Elem>> {
        self.check_divides_m(ell)?;
        let size = self.q.pow(ell as u32);
        if size > TABLE_CAP {
            return Err(Error::TooLarge {
                what: "subfield",
                size,
                cap: TABLE_CAP,
            });
        }
        let gen = self.alpha_pow((self.order - 1) / (size - 1));
        let mut out = Vec::with_capacity(size as usize);
        out.push(Elem::ZERO);
        let mut x = Elem::ONE;
        for _ in 0..size - 1 {
            out.push(x);
            x = self.mul(x, gen);
        }
        out.sort_unstable();
        Ok(out)
    }

    // ---- weights and normal bases ------------------------------------

    /// Number of nonzero `K`-coordinates of `x` in the chosen basis.
    pub fn weight_k(&self, x: Elem, basis: Basis) -> Result<usize> {
        let coords = match basis {
            Basis::Polynomial => self.k_coords(x),
            Basis::Normal => self.to_normal(x)?,
        };
        Ok(coords.iter().filter(|&&c| c != 0).count())
    }

    /// First `β` (scanning nonzero canonical integers upward) whose
    /// conjugates are `K`-linearly independent.
    pub fn find_normal_basis(&self) -> Result<NormalBasis> {
        for b in 1..self.order {
            let beta = Elem(b);
            let rows: Vec<Vec<u64>> = (0..self.m)
                .map(|i| self.k_coords(self.frobenius(beta, i as i64)))
                .collect();
            if let Some(inv) = matrix_inverse(&self.base, &rows) {
                return Ok(NormalBasis {
                    generator: beta,
                    to_poly: rows,
                    from_poly: inv,
                });
            }
        }
        Err(Error::SearchExhausted)
    }

    pub fn install_normal_basis(&mut self) -> Result<&NormalBasis> {
        let nb = self.find_normal_basis()?;
        Ok(self.normal.insert(nb))
    }

    pub fn with_normal_basis(mut self) -> Result<Self> {
        self.install_normal_basis()?;
        Ok(self)
    }

    pub fn normal_basis(&self) -> Option<&NormalBasis> {
        self.normal.as_ref()
    }

    /// Normal-basis coordinates; Frobenius acts as a right rotation on them.
    pub fn to_normal(&self, x: Elem) -> Result<Vec<u64>> {
        let nb = self.normal.as_ref().ok_or(Error::NormalBasisMissing)?;
        Ok(vec_mat(&self.base, &self.k_coords(x), &nb.from_poly))
    }

    pub fn from_normal(&self, coords: &[u64]) -> Result<Elem> {
        let nb = self.normal.as_ref().ok_or(Error::NormalBasisMissing)?;
        if coords.len() != self.m {
            return Err(Error::LengthMismatch {
                expected: self.m,
                actual: coords.len(),
            });
        }
        self.from_k_coords(&vec_mat(&self.base, coords, &nb.to_poly))
    }
}

/// Row vector times square matrix over `f`.
fn vec_mat<F: Scalar>(f: &F, v: &[u64], mat: &[Vec<u64>]) -> Vec<u64> {
    let n = mat.len();
    (0..n)
        .map(|j| {
            v.iter()
                .zip(mat)
                .fold(0u64, |acc, (&vi, row)| f.add(acc, f.mul(vi, row[j])))
        })
        .collect()
}

/// Gauss-Jordan inverse over `f`; `None` when singular.
pub(crate) fn matrix_inverse<F: Scalar>(f: &F, mat: &[Vec<u64>]) -> Option<Vec<Vec<u64>>> {
    let n = mat.len();
    let mut aug: Vec<Vec<u64>> = mat
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| u64::from(i == j)));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| aug[r][col] != 0)?;
        aug.swap(col, pivot);
        let inv = f.inv(aug[col][col])?;
        for v in aug[col].iter_mut() {
            *v = f.mul(*v, inv);
        }
        for r in 0..n {
            if r != col && aug[r][col] != 0 {
                let factor = aug[r][col];
                for c in 0..2 * n {
                    let t = f.mul(factor, aug[col][c]);
                    aug[r][c] = f.sub(aug[r][c], t);
                }
            }
        }
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}
