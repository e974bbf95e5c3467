//! Finite fields `GF(p^e)` with table-driven arithmetic.
//!
//! Elements are integer codes `0..q`. The code of `c_0 + c_1 x + ... + c_{e-1} x^{e-1}`
//! is `c_0 + c_1 p + ... + c_{e-1} p^{e-1}`; code 0 is zero and code 1 is one.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A field element code.
pub type Elem = u16;

/// Largest supported field order.
pub const MAX_ORDER: usize = 512;

struct Tables {
    p: u32,
    degree: u32,
    q: usize,
    /// Monic modulus, coefficients low to high (length `degree + 1`). `None` for prime fields.
    modulus: Option<Vec<u32>>,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    inv: Vec<Elem>,
}

/// A finite field with precomputed addition, multiplication and inverse tables.
///
/// Cloning is cheap; all clones share the same tables.
#[derive(Clone)]
pub struct Field(Arc<Tables>);

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Writes `q = p^e`, or `None` if `q` is not a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let (mut rest, mut e) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

// Polynomials over F_p as coefficient vectors, low to high, without trailing zeros.

fn poly_trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = poly_trim(a.to_vec());
    let b = poly_trim(b.to_vec());
    let lead_inv = mod_inv(*b.last().expect("nonzero divisor"), p);
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() * lead_inv % p;
        for (i, &bi) in b.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - c * bi % p) % p;
        }
        r = poly_trim(r);
    }
    r
}

fn mod_inv(a: u32, p: u32) -> u32 {
    // p is small, Fermat is fine
    let mut result = 1u64;
    let mut base = a as u64 % p as u64;
    let mut exp = p - 2;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        exp >>= 1;
    }
    result as u32
}

/// Monic polynomial of degree `deg` whose lower coefficients are the base-`p` digits of `code`.
fn monic_from_code(code: u32, deg: u32, p: u32) -> Vec<u32> {
    let mut c = code;
    let mut out = Vec::with_capacity(deg as usize + 1);
    for _ in 0..deg {
        out.push(c % p);
        c /= p;
    }
    out.push(1);
    out
}

/// Irreducibility by trial division with every monic polynomial of degree `1..=deg/2`.
pub fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let poly = poly_trim(poly.to_vec());
    let deg = match poly.len() {
        0 | 1 => return false,
        n => (n - 1) as u32,
    };
    for d in 1..=deg / 2 {
        for code in 0..p.pow(d) {
            let divisor = monic_from_code(code, d, p);
            if poly_rem(&poly, &divisor, p).is_empty() {
                return false;
            }
        }
    }
    true
}

impl Field {
    /// `GF(p^e)` with the smallest monic irreducible modulus, ordering candidates by the
    /// integer code of their lower coefficients.
    pub fn new(p: u32, e: u32) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if e == 0 {
            return Err(Error::InvalidInput("extension degree must be at least 1".into()));
        }
        Self::check_order(p, e)?;
        if e == 1 {
            return Ok(Self::build(p, 1, None));
        }
        for code in 0..p.pow(e) {
            let candidate = monic_from_code(code, e, p);
            if is_irreducible(&candidate, p) {
                return Ok(Self::build(p, e, Some(candidate)));
            }
        }
        Err(Error::Verification(format!("no irreducible polynomial of degree {e} over F_{p}")))
    }

    /// Field of order `q`, which must be a prime power.
    pub fn with_order(q: u32) -> Result<Field> {
        let (p, e) = prime_power(q)
            .ok_or_else(|| Error::InvalidInput(format!("field order {q} is not a prime power")))?;
        Self::new(p, e)
    }

    /// `GF(p^e)` with an explicit monic irreducible modulus (coefficients low to high).
    pub fn with_modulus(p: u32, modulus: &[u32]) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let modulus = poly_trim(modulus.to_vec());
        if modulus.len() < 2 || modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidInput("modulus coefficients must lie in 0..p".into()));
        }
        if *modulus.last().unwrap() != 1 {
            return Err(Error::InvalidInput("modulus must be monic".into()));
        }
        let e = (modulus.len() - 1) as u32;
        Self::check_order(p, e)?;
        if !is_irreducible(&modulus, p) {
            return Err(Error::InvalidInput(format!("modulus {modulus:?} is reducible over F_{p}")));
        }
        if e == 1 {
            return Ok(Self::build(p, 1, None));
        }
        Ok(Self::build(p, e, Some(modulus)))
    }

    fn check_order(p: u32, e: u32) -> Result<()> {
        match p.checked_pow(e) {
            Some(q) if q as usize <= MAX_ORDER => Ok(()),
            _ => Err(Error::InvalidInput(format!("field order {p}^{e} exceeds {MAX_ORDER}"))),
        }
    }

    fn build(p: u32, degree: u32, modulus: Option<Vec<u32>>) -> Field {
        let q = p.pow(degree) as usize;
        let digits = |mut c: usize| -> Vec<u32> {
            (0..degree)
                .map(|_| {
                    let d = (c % p as usize) as u32;
                    c /= p as usize;
                    d
                })
                .collect()
        };
        let encode = |d: &[u32]| -> Elem {
            d.iter().rev().fold(0usize, |acc, &x| acc * p as usize + x as usize) as Elem
        };
        let all: Vec<Vec<u32>> = (0..q).map(digits).collect();

        let mut add = vec![0; q * q];
        let mut mul = vec![0; q * q];
        for a in 0..q {
            for b in 0..q {
                let sum: Vec<u32> =
                    all[a].iter().zip(&all[b]).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = encode(&sum);

                let mut prod = vec![0u32; 2 * degree as usize];
                for (i, x) in all[a].iter().enumerate() {
                    for (j, y) in all[b].iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                let mut reduced = match &modulus {
                    Some(m) => poly_rem(&prod, m, p),
                    None => poly_trim(prod),
                };
                reduced.resize(degree as usize, 0);
                mul[a * q + b] = encode(&reduced);
            }
        }
        let mut neg = vec![0; q];
        let mut inv = vec![0; q];
        for a in 0..q {
            neg[a] = (0..q).find(|&b| add[a * q + b] == 0).unwrap() as Elem;
            if a != 0 {
                inv[a] = (1..q).find(|&b| mul[a * q + b] == 1).unwrap() as Elem;
            }
        }
        Field(Arc::new(Tables { p, degree, q, modulus, add, mul, neg, inv }))
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.degree
    }

    pub fn order(&self) -> usize {
        self.0.q
    }

    /// Modulus coefficients, low to high, for proper extensions.
    pub fn modulus(&self) -> Option<&[u32]> {
        self.0.modulus.as_deref()
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.0.add[a as usize * self.0.q + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.0.mul[a as usize * self.0.q + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.0.neg[a as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        (a != 0).then(|| self.0.inv[a as usize])
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.0.q as Elem
    }

    pub fn nonzero(&self) -> impl Iterator<Item = Elem> {
        1..self.0.q as Elem
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.degree == other.0.degree && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.modulus {
            None => write!(f, "GF({})", self.0.p),
            Some(m) => write!(f, "GF({}^{}, modulus {:?})", self.0.p, self.0.degree, m),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_f2() {
        let f = Field::new(2, 1).unwrap();
        assert_eq!(f.order(), 2);
        assert_eq!(f.add(1, 1), 0);
        assert_eq!(f.mul(1, 1), 1);
        assert!(f.modulus().is_none());
    }

    #[test]
    fn f4_uses_x2_x_1() {
        let f = Field::new(2, 2).unwrap();
        assert_eq!(f.modulus(), Some(&[1, 1, 1][..]));
        // x * x = x + 1
        assert_eq!(f.mul(2, 2), 3);
    }

    #[test]
    fn non_prime_characteristic_rejected() {
        assert!(matches!(Field::new(4, 1), Err(Error::NotPrime(4))));
        assert!(Field::with_order(6).is_err());
    }

    #[test]
    fn reducible_modulus_rejected() {
        // x^2 + 1 = (x + 1)^2 over F_2
        assert!(Field::with_modulus(2, &[1, 0, 1]).is_err());
        assert!(Field::with_modulus(3, &[1, 0, 1]).is_ok());
    }

    #[test]
    fn irreducible_quadratics_over_f2() {
        let irreducible: Vec<u32> =
            (0..4).filter(|&c| is_irreducible(&monic_from_code(c, 2, 2), 2)).collect();
        assert_eq!(irreducible, vec![3]);
    }

    #[test]
    fn field_axioms_small_orders() {
        for q in [2, 3, 4, 5, 7, 8, 9, 16, 25, 27] {
            let f = Field::with_order(q).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                for b in f.elements() {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in f.elements().step_by(3) {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    }
                }
            }
        }
    }
}
