use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::RingModel;
use crate::error::{Error, Result};
use crate::fq::algebra::{mul_truncated, valuation};
use crate::fq::{AlgElem, Elem, Subspace};

/// A fractional ideal `I` with `C ⊆ I ⊆ V`, stored as `I/C ⊆ V/C` in RREF.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RingIdeal(Subspace);

impl RingIdeal {
    pub(crate) fn new_unchecked(space: Subspace) -> Self {
        RingIdeal(space)
    }

    pub fn space(&self) -> &Subspace {
        &self.0
    }

    /// `dim_K I/C`.
    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    /// `1 ∈ I`, i.e. `I ∈ F_0` (given `I ⊆ V`). In RREF this means the first row is `1`.
    pub fn contains_one(&self) -> bool {
        self.0.dim() > 0 && self.0.row(0)[0] == 1 && self.0.row(0)[1..].iter().all(|&c| c == 0)
    }

    /// Values `v(I) ∩ [0, g]`; everything above `g` is in `v(I)`.
    pub fn values(&self) -> Vec<u32> {
        self.0.pivots().into_iter().map(|p| p as u32).collect()
    }
}

/// Renders a truncated series with field codes as coefficients, e.g. `1 + 2t^3`.
pub fn format_series(v: &[Elem]) -> String {
    let mut out = String::new();
    for (i, &c) in v.iter().enumerate() {
        if c == 0 {
            continue;
        }
        if !out.is_empty() {
            out.push_str(" + ");
        }
        let coef = if c == 1 && i > 0 { String::new() } else { c.to_string() };
        match i {
            0 => write!(out, "{c}").unwrap(),
            1 => write!(out, "{coef}t").unwrap(),
            _ => write!(out, "{coef}t^{i}").unwrap(),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl RingModel {
    fn wrap(&self, s: Subspace) -> RingIdeal {
        debug_assert_eq!(s.ambient(), self.dim());
        RingIdeal(s)
    }

    fn unit_vector(&self, k: usize) -> Vec<Elem> {
        let mut v = vec![0; self.dim()];
        v[k] = 1;
        v
    }

    /// `X` is an `R`-module, i.e. `M_R X ⊆ X` (`C X ⊆ C` always holds).
    pub fn is_module(&self, x: &Subspace) -> bool {
        let f = self.field();
        x.ambient() == self.dim()
            && self.max_rows().iter().all(|m| {
                x.rows().all(|r| x.contains_vector(f, &mul_truncated(f, m, r, self.dim())))
            })
    }

    /// Validates an `R`-submodule of `V/C`.
    pub fn ideal(&self, x: &Subspace) -> Result<RingIdeal> {
        if x.ambient() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: x.ambient() });
        }
        if !self.is_module(x) {
            return Err(Error::InvalidInput("subspace is not an R-module".into()));
        }
        Ok(self.wrap(x.clone()))
    }

    /// The `R`-module generated by `vectors` and `C`.
    pub fn generate(&self, vectors: &[Vec<Elem>]) -> Result<RingIdeal> {
        let f = self.field();
        let d = self.dim();
        let mut rows = Vec::new();
        for v in vectors {
            if v.len() != d {
                return Err(Error::DimensionMismatch { expected: d, found: v.len() });
            }
            for r in self.basis().rows() {
                rows.extend(mul_truncated(f, r, v, d));
            }
        }
        Ok(self.wrap(Subspace::from_rows_unchecked(f, d, rows)))
    }

    /// `R`.
    pub fn ring_ideal(&self) -> RingIdeal {
        self.wrap(self.basis().clone())
    }

    /// `V`.
    pub fn whole(&self) -> RingIdeal {
        self.wrap(Subspace::full(self.dim()))
    }

    /// `C`.
    pub fn conductor(&self) -> RingIdeal {
        self.wrap(Subspace::zero(self.dim()))
    }

    /// `M_R`.
    pub fn maximal_ideal(&self) -> RingIdeal {
        let rows = self.max_rows().concat();
        self.wrap(Subspace::from_rows_unchecked(self.field(), self.dim(), rows))
    }

    /// `R + K t^g`, the ring `T` viewed as an `R`-module.
    pub fn t_ideal(&self) -> RingIdeal {
        let g = self.frobenius() as usize;
        let mut rows = self.basis().flat().to_vec();
        rows.extend(self.unit_vector(g));
        self.wrap(Subspace::from_rows_unchecked(self.field(), self.dim(), rows))
    }

    pub fn value_set(&self, i: &RingIdeal) -> Vec<u32> {
        i.values()
    }

    pub fn intersect(&self, a: &RingIdeal, b: &RingIdeal) -> RingIdeal {
        self.wrap(a.0.intersect(self.field(), &b.0).expect("same ambient"))
    }

    pub fn sum(&self, a: &RingIdeal, b: &RingIdeal) -> RingIdeal {
        self.wrap(a.0.sum(self.field(), &b.0).expect("same ambient"))
    }

    /// `A B + C`.
    pub fn product(&self, a: &RingIdeal, b: &RingIdeal) -> RingIdeal {
        let f = self.field();
        let d = self.dim();
        let mut rows = Vec::with_capacity(a.dim() * b.dim() * d);
        for x in a.0.rows() {
            for y in b.0.rows() {
                rows.extend(mul_truncated(f, x, y, d));
            }
        }
        self.wrap(Subspace::from_rows_unchecked(f, d, rows))
    }

    /// `B ⊆ A` as fractional ideals.
    pub fn is_subset(&self, b: &RingIdeal, a: &RingIdeal) -> bool {
        a.0.contains(self.field(), &b.0)
    }

    /// `(A : B) ∩ V`. Exact as a fractional ideal whenever `(A : B) ⊆ V`, which holds
    /// for instance when `1 ∈ B` and `A ⊆ V`.
    pub fn colon(&self, a: &RingIdeal, b: &RingIdeal) -> RingIdeal {
        let f = self.field();
        let d = self.dim();
        let brows: Vec<&[Elem]> = b.0.rows().collect();
        let k = brows.len();
        let width = k * d + d;
        let mut m = Vec::with_capacity(d * width);
        for j in 0..d {
            for br in &brows {
                // t^j * b, reduced modulo A
                let mut v = vec![0; d];
                v[j..].copy_from_slice(&br[..d - j]);
                a.0.reduce(f, &mut v);
                m.extend(v);
            }
            m.extend(self.unit_vector(j));
        }
        crate::fq::subspace::rref(f, &mut m, width);
        let mut kernel = Vec::new();
        for row in m.chunks(width) {
            if row[..k * d].iter().all(|&c| c == 0) {
                kernel.extend_from_slice(&row[k * d..]);
            }
        }
        self.wrap(Subspace::from_rows_unchecked(f, d, kernel))
    }

    /// `(R : (R : I))`.
    pub fn v_closure(&self, i: &RingIdeal) -> RingIdeal {
        let r = self.ring_ideal();
        self.colon(&r, &self.colon(&r, i))
    }

    pub fn is_divisorial(&self, i: &RingIdeal) -> bool {
        &self.v_closure(i) == i
    }

    /// `ℓ_R(J/I)` for `I ⊆ J`, computed both as a dimension difference and as
    /// `|v(J) \ v(I)|`; the two must agree.
    pub fn length(&self, j: &RingIdeal, i: &RingIdeal) -> Result<usize> {
        if !self.is_subset(i, j) {
            return Err(Error::InvalidInput("length needs I ⊆ J".into()));
        }
        let by_dim = j.dim() - i.dim();
        let vi = i.values();
        let by_values = j.values().iter().filter(|x| !vi.contains(x)).count();
        if by_dim != by_values {
            return Err(Error::Verification(format!("length {by_dim} disagrees with value count {by_values}")));
        }
        Ok(by_dim)
    }

    /// `I`'s image in `K[t]/(t^N)`, conductor block included.
    pub fn lift(&self, i: &RingIdeal) -> Subspace {
        let n = self.truncation();
        let d = self.dim();
        let mut rows = Vec::new();
        for r in i.0.rows() {
            rows.extend_from_slice(r);
            rows.extend(std::iter::repeat_n(0, n - d));
        }
        for k in d..n {
            let mut v = vec![0; n];
            v[k] = 1;
            rows.extend(v);
        }
        Subspace::from_rows_unchecked(self.field(), n, rows)
    }

    /// `t^k u I` modulo `t^N`, for `0 <= k <= g + 1` and a unit `u`.
    pub fn translate(&self, i: &RingIdeal, k: usize, u: &AlgElem) -> Result<Subspace> {
        let d = self.dim();
        let n = self.truncation();
        self.check_unit(u)?;
        if k > d {
            return Err(Error::InvalidInput(format!("shift {k} exceeds g + 1 = {d}")));
        }
        let ui = self.mul_unit_space(u, &i.0);
        let mut rows = Vec::new();
        for r in ui.rows() {
            let mut v = vec![0; n];
            v[k..k + d].copy_from_slice(r);
            rows.extend(v);
        }
        for j in k + d..n {
            let mut v = vec![0; n];
            v[j] = 1;
            rows.extend(v);
        }
        Ok(Subspace::from_rows_unchecked(self.field(), n, rows))
    }

    fn check_unit(&self, u: &AlgElem) -> Result<()> {
        if u.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: u.len() });
        }
        if !u.is_unit() {
            return Err(Error::NotUnit(u.valuation()));
        }
        Ok(())
    }

    /// `x^{-1} X` for `x ∈ X` of least valuation, where `X ⊆ K[t]/(t^M)` is the image
    /// of a module containing `t^M V` (with `M <= N`).
    pub fn normalize(&self, x: &Subspace) -> RingIdeal {
        self.wrap(self.normalize_space(x))
    }

    /// `u I`.
    pub fn mul_unit(&self, u: &AlgElem, i: &RingIdeal) -> Result<RingIdeal> {
        self.check_unit(u)?;
        Ok(self.wrap(self.mul_unit_space(u, &i.0)))
    }

    /// `normalize(I ∩ t^k u J)`, computed as `normalize((I : t^k) ∩ uJ)`; both sides
    /// of the intersection are scaled by `t^{-k}`, which normalization ignores.
    pub fn translate_intersect(&self, i: &RingIdeal, j: &RingIdeal, k: usize, u: &AlgElem) -> Result<RingIdeal> {
        self.check_unit(u)?;
        if k > self.dim() {
            return Err(Error::InvalidInput(format!("shift {k} exceeds g + 1 = {}", self.dim())));
        }
        let uj = self.mul_unit_space(u, &j.0);
        Ok(self.translate_intersect_spaces(&self.shift_down(&i.0, k), &uj))
    }

    /// `normalize(I' ∩ Y)` for precomputed `I' = (I : t^k) ∩ V` and `Y = uJ`.
    pub(crate) fn translate_intersect_spaces(&self, shifted: &Subspace, y: &Subspace) -> RingIdeal {
        let x = shifted.intersect(self.field(), y).expect("same ambient");
        self.wrap(self.normalize_space(&x))
    }

    /// `(I : t^k) ∩ V`.
    pub fn shift_down_ideal(&self, i: &RingIdeal, k: usize) -> RingIdeal {
        self.wrap(self.shift_down(&i.0, k))
    }

    /// `(I : (I : J))` as a fractional ideal, or `None` if it is not contained in `V`.
    /// Requires `1 ∈ J`.
    pub fn double_colon_exact(&self, i: &RingIdeal, j: &RingIdeal) -> Result<Option<RingIdeal>> {
        if !j.contains_one() {
            return Err(Error::InvalidInput("double colon needs 1 ∈ J".into()));
        }
        let d = self.dim();
        let x = self.colon(i, j);
        // (I : J) = x X' with x of least valuation m and X' ∈ F_0
        let (m, w) = if x.0.is_zero() {
            (d, vec![1])
        } else {
            let first = x.0.row(0);
            let m = valuation(first).unwrap();
            (m, first[m..].to_vec())
        };
        let x_norm = self.wrap(self.divide(&x.0, m, &w));
        let z = self.colon(i, &x_norm);
        let zmin = if z.0.is_zero() { d } else { valuation(z.0.row(0)).unwrap() };
        if zmin < m {
            return Ok(None);
        }
        Ok(Some(self.wrap(self.divide(&z.0, m, &w))))
    }

    /// Image of an ideal of a model with larger conductor exponent, provided it contains
    /// this model's conductor.
    pub fn from_finer(&self, finer: &RingModel, i: &RingIdeal) -> Result<RingIdeal> {
        let d = self.dim();
        if finer.dim() < d || finer.field() != self.field() {
            return Err(Error::InvalidInput("incompatible models".into()));
        }
        let f = self.field();
        for k in d..finer.dim() {
            let mut v = vec![0; finer.dim()];
            v[k] = 1;
            if !i.0.contains_vector(f, &v) {
                return Err(Error::InvalidInput(format!("ideal does not contain t^{k}")));
            }
        }
        let rows: Vec<Elem> = i.0.rows().flat_map(|r| r[..d].to_vec()).collect();
        self.ideal(&Subspace::from_rows_unchecked(f, d, rows))
    }

    pub fn format_ideal(&self, i: &RingIdeal) -> String {
        let gens: Vec<String> = i.0.rows().map(format_series).collect();
        format!("<{}> + t^{}V", gens.join(", "), self.dim())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fq::Field;
    use crate::numsgp::NumericalSemigroup;

    fn model(gens: &[u32], q: u32) -> RingModel {
        let s = NumericalSemigroup::from_generators(gens).unwrap();
        RingModel::semigroup_ring(&s, &Field::with_order(q).unwrap())
    }

    fn mono(r: &RingModel, ks: &[usize]) -> RingIdeal {
        let vs: Vec<Vec<Elem>> = ks.iter().map(|&k| AlgElem::monomial(r.dim(), k, 1).into_coeffs()).collect();
        r.generate(&vs).unwrap()
    }

    #[test]
    fn colon_of_maximal_ideal() {
        let r = model(&[4, 5, 7], 2);
        let l = r.colon(&r.ring_ideal(), &r.maximal_ideal());
        assert_eq!(l.values(), vec![0, 3, 4, 5, 6]);
        assert_eq!(r.colon(&r.whole(), &r.whole()), r.whole());
        assert_eq!(r.colon(&r.ring_ideal(), &r.whole()), r.conductor());
    }

    #[test]
    fn divisorial_basics() {
        let r = model(&[4, 5, 7], 3);
        assert!(r.is_divisorial(&r.ring_ideal()));
        assert!(r.is_divisorial(&r.whole()));
        let t = r.t_ideal();
        assert!(!r.is_divisorial(&t));
        assert_eq!(r.v_closure(&t).values(), vec![0, 3, 4, 5, 6]);
        assert_eq!(r.length(&r.whole(), &r.ring_ideal()).unwrap(), 4);
    }

    #[test]
    fn translate_then_normalize_is_identity() {
        let r = model(&[4, 5, 7], 2);
        let i = mono(&r, &[0, 3]);
        let units = r.unit_reps(&Default::default()).unwrap();
        let alg = r.algebra();
        let u = alg.element(vec![1, 1, 0, 1, 0, 0, 0]).unwrap();
        for k in 0..=r.dim() {
            assert_eq!(r.normalize(&r.translate(&i, k, &alg.one()).unwrap()), i);
            // with a unit the result is only determined up to the unit action
            let n = r.normalize(&r.translate(&i, k, &u).unwrap());
            assert!(n.contains_one());
            assert!(units.iter().any(|w| r.mul_unit(w, &i).unwrap() == n));
        }
    }

    #[test]
    fn translate_intersect_matches_wide_computation() {
        let r = model(&[4, 5, 7], 2);
        let units = r.unit_reps(&Default::default()).unwrap();
        let ideals = [r.ring_ideal(), r.whole(), r.t_ideal(), mono(&r, &[0, 1]), mono(&r, &[0, 3])];
        for i in &ideals {
            for j in &ideals {
                for u in &units {
                    for k in 0..=r.dim() {
                        let fast = r.translate_intersect(i, j, k, u).unwrap();
                        let wide = r.lift(i).intersect(r.field(), &r.translate(j, k, u).unwrap()).unwrap();
                        assert_eq!(fast, r.normalize(&wide));
                    }
                }
            }
        }
    }

    #[test]
    fn double_colon_escape() {
        let r = model(&[4, 5, 7], 2);
        let rr = r.ring_ideal();
        // (R : (R : V)) = (R : C) = V
        assert_eq!(r.double_colon_exact(&rr, &r.whole()).unwrap(), Some(r.whole()));
        assert_eq!(r.double_colon_exact(&rr, &rr).unwrap(), Some(rr.clone()));
        // (V : (V : R)) = V ≠ R, still inside V
        assert_eq!(r.double_colon_exact(&r.whole(), &rr).unwrap(), Some(r.whole()));
    }

    #[test]
    fn format() {
        assert_eq!(format_series(&[1, 0, 2, 1]), "1 + 2t^2 + t^3");
        assert_eq!(format_series(&[0, 1]), "t");
        assert_eq!(format_series(&[0, 0]), "0");
    }
}
