//! Table-free arithmetic for the two levels of the tower.
//!
//! Elements of every field here are plain `u64` canonical integers: a prime
//! field element is its residue, and an element of `F[x]/(f)` with
//! coefficients `c_0..c_{d-1}` is `Σ c_i · |F|^i`.  Polynomials are
//! coefficient vectors, low degree first, with no trailing zeros.

/// Minimal field interface over canonical-integer elements.
pub trait Scalar {
    fn size(&self) -> u64;
    fn characteristic(&self) -> u64;
    fn add(&self, a: u64, b: u64) -> u64;
    fn neg(&self, a: u64) -> u64;
    fn mul(&self, a: u64, b: u64) -> u64;
    fn inv(&self, a: u64) -> Option<u64>;

    fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    fn pow(&self, a: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }
}

#[derive(Debug, Clone)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        PrimeField { p }
    }
}

impl Scalar for PrimeField {
    fn size(&self) -> u64 {
        self.p
    }

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn add(&self, a: u64, b: u64) -> u64 {
        if self.p == 2 {
            return a ^ b;
        }
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    fn inv(&self, a: u64) -> Option<u64> {
        if a % self.p == 0 {
            None
        } else {
            Some(self.pow(a, self.p - 2))
        }
    }
}

/// `F[x]/(f)` for a monic modulus `f` of degree `d >= 1`.
#[derive(Debug, Clone)]
pub struct ExtensionField<F> {
    base: F,
    modulus: Vec<u64>,
    degree: usize,
    size: u64,
}

impl<F: Scalar> ExtensionField<F> {
    /// Caller guarantees `modulus` is monic of degree >= 1 with
    /// coefficients in `base`, and that `|base|^degree` fits in `u64`.
    pub fn new(base: F, modulus: Vec<u64>) -> Self {
        let degree = modulus.len() - 1;
        let size = base.size().pow(degree as u32);
        ExtensionField {
            base,
            modulus,
            degree,
            size,
        }
    }

    pub fn base(&self) -> &F {
        &self.base
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn to_coeffs(&self, mut x: u64) -> Vec<u64> {
        let b = self.base.size();
        let mut out = Vec::with_capacity(self.degree);
        for _ in 0..self.degree {
            out.push(x % b);
            x /= b;
        }
        out
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> u64 {
        let b = self.base.size();
        coeffs.iter().rev().fold(0u64, |acc, &c| acc * b + c)
    }
}

impl<F: Scalar> Scalar for ExtensionField<F> {
    fn size(&self) -> u64 {
        self.size
    }

    fn characteristic(&self) -> u64 {
        self.base.characteristic()
    }

    fn add(&self, a: u64, b: u64) -> u64 {
        if self.characteristic() == 2 {
            return a ^ b;
        }
        let x = self.to_coeffs(a);
        let y = self.to_coeffs(b);
        let s: Vec<u64> = x.iter().zip(&y).map(|(&u, &v)| self.base.add(u, v)).collect();
        self.from_coeffs(&s)
    }

    fn neg(&self, a: u64) -> u64 {
        if self.characteristic() == 2 {
            return a;
        }
        let x: Vec<u64> = self.to_coeffs(a).into_iter().map(|c| self.base.neg(c)).collect();
        self.from_coeffs(&x)
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        let x = trim(self.to_coeffs(a));
        let y = trim(self.to_coeffs(b));
        let r = poly_rem(&self.base, &poly_mul(&self.base, &x, &y), &self.modulus);
        let mut r = r;
        r.resize(self.degree, 0);
        self.from_coeffs(&r)
    }

    fn inv(&self, a: u64) -> Option<u64> {
        if a == 0 {
            None
        } else {
            Some(self.pow(a, self.size - 2))
        }
    }
}

pub fn trim(mut p: Vec<u64>) -> Vec<u64> {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

pub fn poly_add<F: Scalar>(f: &F, a: &[u64], b: &[u64]) -> Vec<u64> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            f.add(x, y)
        })
        .collect();
    trim(out)
}

pub fn poly_sub<F: Scalar>(f: &F, a: &[u64], b: &[u64]) -> Vec<u64> {
    let nb: Vec<u64> = b.iter().map(|&c| f.neg(c)).collect();
    poly_add(f, a, &nb)
}

pub fn poly_mul<F: Scalar>(f: &F, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    trim(out)
}

/// Remainder of `a` modulo a nonzero polynomial `m`.
pub fn poly_rem<F: Scalar>(f: &F, a: &[u64], m: &[u64]) -> Vec<u64> {
    poly_divrem(f, a, m).1
}

pub fn poly_divrem<F: Scalar>(f: &F, a: &[u64], m: &[u64]) -> (Vec<u64>, Vec<u64>) {
    let m = trim(m.to_vec());
    let dm = m.len() - 1;
    let lead_inv = f.inv(m[dm]).expect("nonzero leading coefficient");
    let mut r = trim(a.to_vec());
    if r.len() < m.len() {
        return (Vec::new(), r);
    }
    let mut quot = vec![0u64; r.len() - dm];
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let c = f.mul(*r.last().unwrap(), lead_inv);
        quot[shift] = c;
        for (i, &mc) in m.iter().enumerate() {
            let t = f.mul(c, mc);
            r[shift + i] = f.sub(r[shift + i], t);
        }
        r = trim(r);
    }
    (trim(quot), r)
}

pub fn poly_powmod<F: Scalar>(f: &F, base: &[u64], mut e: u64, m: &[u64]) -> Vec<u64> {
    let mut acc = poly_rem(f, &[1], m);
    let mut b = poly_rem(f, base, m);
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_rem(f, &poly_mul(f, &acc, &b), m);
        }
        b = poly_rem(f, &poly_mul(f, &b, &b), m);
        e >>= 1;
    }
    acc
}

pub fn poly_gcd<F: Scalar>(f: &F, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !y.is_empty() {
        let r = poly_rem(f, &x, &y);
        x = y;
        y = r;
    }
    x
}

pub fn poly_eval<F: Scalar>(f: &F, p: &[u64], x: u64) -> u64 {
    p.iter().rev().fold(0u64, |acc, &c| f.add(f.mul(acc, x), c))
}

/// Irreducibility of a monic polynomial over `f`.
///
/// Degrees up to 3 are decided by exhaustive root search; higher degrees
/// by checking `gcd(X^{s^i} - X, p) = 1` for `i <= deg/2`, `s = |f|`.
pub fn is_irreducible<F: Scalar>(f: &F, p: &[u64]) -> bool {
    let p = trim(p.to_vec());
    if p.len() < 2 {
        return false;
    }
    let deg = p.len() - 1;
    if deg == 1 {
        return true;
    }
    if deg <= 3 {
        return (0..f.size()).all(|x| poly_eval(f, &p, x) != 0);
    }
    let x = vec![0u64, 1];
    let mut xp = x.clone();
    for _ in 1..=deg / 2 {
        xp = poly_powmod(f, &xp, f.size(), &p);
        let diff = poly_sub(f, &xp, &x);
        let g = poly_gcd(f, &diff, &p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

/// First monic irreducible polynomial of the given degree over `f`,
/// scanning lower coefficients in canonical-integer order.
pub fn first_irreducible<F: Scalar>(f: &F, degree: usize) -> Option<Vec<u64>> {
    let s = f.size();
    let count = s.checked_pow(degree as u32)?;
    (0..count).find_map(|k| {
        let mut p = Vec::with_capacity(degree + 1);
        let mut r = k;
        for _ in 0..degree {
            p.push(r % s);
            r /= s;
        }
        p.push(1);
        is_irreducible(f, &p).then_some(p)
    })
}
