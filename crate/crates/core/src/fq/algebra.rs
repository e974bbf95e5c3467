//! Truncated polynomial algebras `K[t]/(t^N)`.

use serde::{Deserialize, Serialize};

use super::field::{Elem, Field};
use crate::error::{Error, Result};

/// `c_0 + c_1 t + ... + c_{N-1} t^{N-1}` in `K[t]/(t^N)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AlgElem {
    coeffs: Vec<Elem>,
}

impl AlgElem {
    pub fn from_coeffs(coeffs: Vec<Elem>) -> Self {
        AlgElem { coeffs }
    }

    pub fn zero(len: usize) -> Self {
        AlgElem { coeffs: vec![0; len] }
    }

    pub fn one(len: usize) -> Self {
        Self::monomial(len, 0, 1)
    }

    /// `c * t^k`, or zero if `k >= len`.
    pub fn monomial(len: usize, k: usize, c: Elem) -> Self {
        let mut coeffs = vec![0; len];
        if k < len {
            coeffs[k] = c;
        }
        AlgElem { coeffs }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Elem> {
        self.coeffs
    }

    /// Index of the first nonzero coefficient; `None` stands for the valuation `+inf` of zero.
    pub fn valuation(&self) -> Option<usize> {
        valuation(&self.coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.valuation().is_none()
    }

    pub fn is_unit(&self) -> bool {
        self.valuation() == Some(0)
    }
}

pub fn valuation(v: &[Elem]) -> Option<usize> {
    v.iter().position(|&c| c != 0)
}

/// Product truncated to `out_len` coefficients.
pub fn mul_truncated(field: &Field, a: &[Elem], b: &[Elem], out_len: usize) -> Vec<Elem> {
    let mut out = vec![0; out_len];
    for (i, &x) in a.iter().enumerate().take(out_len) {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate().take(out_len - i) {
            if y != 0 {
                out[i + j] = field.add(out[i + j], field.mul(x, y));
            }
        }
    }
    out
}

/// Inverse of a unit modulo `t^len`. Panics on a non-unit.
pub fn inv_truncated(field: &Field, a: &[Elem], len: usize) -> Vec<Elem> {
    let a0_inv = field.inv(a[0]).expect("inverse of a non-unit");
    let mut out = vec![0; len];
    if len == 0 {
        return out;
    }
    out[0] = a0_inv;
    // a * out = 1: out_k = -a0^{-1} * sum_{i=1..k} a_i out_{k-i}
    for k in 1..len {
        let mut acc = 0;
        for i in 1..=k.min(a.len().saturating_sub(1)) {
            acc = field.add(acc, field.mul(a[i], out[k - i]));
        }
        out[k] = field.mul(field.neg(acc), a0_inv);
    }
    out
}

/// The algebra `K[t]/(t^len)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedAlgebra {
    field: Field,
    len: usize,
}

impl TruncatedAlgebra {
    pub fn new(field: Field, len: usize) -> Self {
        TruncatedAlgebra { field, len }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    fn check(&self, a: &AlgElem) -> Result<()> {
        if a.len() != self.len {
            return Err(Error::DimensionMismatch { expected: self.len, found: a.len() });
        }
        if a.coeffs.iter().any(|&c| c as usize >= self.field.order()) {
            return Err(Error::InvalidInput("coefficient outside the field".into()));
        }
        Ok(())
    }

    pub fn element(&self, coeffs: Vec<Elem>) -> Result<AlgElem> {
        let a = AlgElem::from_coeffs(coeffs);
        self.check(&a)?;
        Ok(a)
    }

    pub fn one(&self) -> AlgElem {
        AlgElem::one(self.len)
    }

    pub fn monomial(&self, k: usize, c: Elem) -> AlgElem {
        AlgElem::monomial(self.len, k, c)
    }

    pub fn add(&self, a: &AlgElem, b: &AlgElem) -> Result<AlgElem> {
        self.check(a)?;
        self.check(b)?;
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(&x, &y)| self.field.add(x, y)).collect();
        Ok(AlgElem { coeffs })
    }

    pub fn scale(&self, c: Elem, a: &AlgElem) -> AlgElem {
        AlgElem { coeffs: a.coeffs.iter().map(|&x| self.field.mul(c, x)).collect() }
    }

    pub fn mul(&self, a: &AlgElem, b: &AlgElem) -> Result<AlgElem> {
        self.check(a)?;
        self.check(b)?;
        Ok(AlgElem { coeffs: mul_truncated(&self.field, &a.coeffs, &b.coeffs, self.len) })
    }

    pub fn inv(&self, a: &AlgElem) -> Result<AlgElem> {
        self.check(a)?;
        match a.valuation() {
            Some(0) => Ok(AlgElem { coeffs: inv_truncated(&self.field, &a.coeffs, self.len) }),
            v => Err(Error::NotUnit(v)),
        }
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, a: &AlgElem, k: usize) -> AlgElem {
        let mut coeffs = vec![0; self.len];
        let keep = self.len.saturating_sub(k);
        coeffs[self.len - keep..].copy_from_slice(&a.coeffs[..keep]);
        AlgElem { coeffs }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Field {
        Field::new(2, 1).unwrap()
    }

    #[test]
    fn geometric_series_inverse() {
        let alg = TruncatedAlgebra::new(f2(), 4);
        let a = alg.element(vec![1, 1, 0, 0]).unwrap();
        let inv = alg.inv(&a).unwrap();
        assert_eq!(inv.coeffs(), &[1, 1, 1, 1]);
        assert_eq!(alg.mul(&a, &inv).unwrap(), alg.one());
    }

    #[test]
    fn inverse_of_one() {
        let alg = TruncatedAlgebra::new(Field::new(3, 1).unwrap(), 5);
        assert_eq!(alg.inv(&alg.one()).unwrap(), alg.one());
    }

    #[test]
    fn inversion_recursion_over_f2() {
        // (e_0 + theta f)^{-1} with f = e_1, theta = 1:
        // alpha_1 = -theta l1, alpha_2 = -theta(l1 alpha_1 + l2), alpha_3 = -theta(l1 alpha_2 + l2 alpha_1 + l3)
        let f = f2();
        let (theta, l1, l2, l3) = (1, 1, 0, 0);
        let a1 = f.neg(f.mul(theta, l1));
        let a2 = f.neg(f.mul(theta, f.add(f.mul(l1, a1), l2)));
        let a3 = f.neg(f.mul(theta, f.add(f.add(f.mul(l1, a2), f.mul(l2, a1)), l3)));
        let alg = TruncatedAlgebra::new(f, 4);
        let g = alg.element(vec![1, theta, 0, 0]).unwrap();
        assert_eq!(alg.inv(&g).unwrap().coeffs(), &[1, a1, a2, a3]);
        assert_eq!(alg.inv(&g).unwrap().coeffs(), &[1, 1, 1, 1]);
    }

    #[test]
    fn non_unit_rejected() {
        let alg = TruncatedAlgebra::new(f2(), 3);
        let t = alg.monomial(1, 1);
        assert!(matches!(alg.inv(&t), Err(Error::NotUnit(Some(1)))));
        assert!(matches!(alg.inv(&AlgElem::zero(3)), Err(Error::NotUnit(None))));
    }

    #[test]
    fn length_mismatch_rejected() {
        let alg = TruncatedAlgebra::new(f2(), 3);
        assert!(alg.mul(&AlgElem::one(3), &AlgElem::one(4)).is_err());
    }

    #[test]
    fn valuation_of_zero_is_infinite() {
        assert_eq!(AlgElem::zero(4).valuation(), None);
        assert_eq!(AlgElem::monomial(4, 2, 1).valuation(), Some(2));
    }
}
