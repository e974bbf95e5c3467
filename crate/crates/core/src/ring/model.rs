use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::fq::algebra::{inv_truncated, mul_truncated, valuation};
use crate::fq::{AlgElem, Elem, Field, Subspace, TruncatedAlgebra};
use crate::numsgp::NumericalSemigroup;

/// A local ring `R` with `C ⊆ R ⊆ V = K[[t]]`, where `C = t^{g+1} V` is the conductor.
///
/// `R` is stored as its image in `V/C = K[t]/(t^{g+1})`. Every fractional ideal handled
/// by the engine lies between `C` and `V` and is stored the same way, so the conductor
/// block is implicit and equality is a comparison of RREF matrices.
#[derive(Clone, Debug)]
pub struct RingModel {
    field: Field,
    semigroup: NumericalSemigroup,
    dim: usize,
    basis: Subspace,
    /// Basis rows of positive valuation; they span `M_R / C`.
    max_rows: Vec<Vec<Elem>>,
}

impl RingModel {
    /// `K[[S]]`: the span of `t^s`, `s ∈ S`.
    pub fn semigroup_ring(s: &NumericalSemigroup, field: &Field) -> RingModel {
        let dim = s.frobenius() as usize + 1;
        let mut rows = Vec::new();
        for i in 0..dim {
            if s.contains(i as i64) {
                let mut r = vec![0; dim];
                r[i] = 1;
                rows.extend(r);
            }
        }
        Self::assemble(field.clone(), s.clone(), Subspace::from_rows_unchecked(field, dim, rows))
    }

    /// The subalgebra of `K[t]/(t^len)` generated by `generators`, taken as the image of
    /// a ring containing `t^len V`. The model is re-truncated at its own conductor.
    pub fn from_subalgebra(field: &Field, len: usize, generators: &[Vec<Elem>]) -> Result<RingModel> {
        let one = AlgElem::one(len).into_coeffs();
        let mut span = Subspace::span(field, len, std::iter::once(one.as_slice()).chain(generators.iter().map(|g| g.as_slice())))?;
        loop {
            let rows: Vec<Vec<Elem>> = span.rows().map(|r| r.to_vec()).collect();
            let mut all = span.flat().to_vec();
            for a in &rows {
                for b in &rows {
                    all.extend(mul_truncated(field, a, b, len));
                }
            }
            let next = Subspace::from_rows_unchecked(field, len, all);
            if next.dim() == span.dim() {
                break;
            }
            span = next;
        }
        let values = span.pivots();
        let gaps: Vec<u32> = (0..len).filter(|i| !values.contains(i)).map(|i| i as u32).collect();
        let s = NumericalSemigroup::from_gaps(&gaps)?;
        let dim = s.frobenius() as usize + 1;
        let rows: Vec<Elem> = span.rows().flat_map(|r| r[..dim].to_vec()).collect();
        let basis = Subspace::from_rows_unchecked(field, dim, rows);
        Ok(Self::assemble(field.clone(), s, basis))
    }

    fn assemble(field: Field, semigroup: NumericalSemigroup, basis: Subspace) -> RingModel {
        let dim = basis.ambient();
        let max_rows = basis.rows().filter(|r| r[0] == 0).map(|r| r.to_vec()).collect();
        RingModel { field, semigroup, dim, basis, max_rows }
    }

    /// `T = R[y]` for any `y` of valuation `g`, i.e. `R + K t^g`.
    pub fn build_t(&self) -> Result<RingModel> {
        let g = self.frobenius() as usize;
        if self.semigroup.contains(g as i64) {
            return Err(Error::InvalidInput("g already lies in v(R)".into()));
        }
        self.adjoin(&AlgElem::monomial(self.dim, g, 1))
    }

    /// `R[y]` computed in `V/C`.
    pub fn adjoin(&self, y: &AlgElem) -> Result<RingModel> {
        let mut gens: Vec<Vec<Elem>> = self.basis.rows().map(|r| r.to_vec()).collect();
        gens.push(y.coeffs().to_vec());
        Self::from_subalgebra(&self.field, self.dim, &gens)
    }

    /// Checks that `R[u t^g]` is the same ring for every unit representative `u` and
    /// every nonzero scalar.
    pub fn t_is_independent_of_generator(&self, budget: &Budget) -> Result<bool> {
        let t = self.build_t()?;
        let alg = self.algebra();
        let tg = alg.monomial(self.frobenius() as usize, 1);
        for u in self.unit_reps(budget)? {
            for c in self.field.nonzero() {
                let y = alg.scale(c, &alg.mul(&u, &tg)?);
                let other = self.adjoin(&y)?;
                if other.basis != t.basis || other.dim != t.dim {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Value semigroup `v(R)`.
    pub fn semigroup(&self) -> &NumericalSemigroup {
        &self.semigroup
    }

    pub fn frobenius(&self) -> u32 {
        self.semigroup.frobenius()
    }

    /// `dim_K V/C = g + 1`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Working truncation `N = 2(g+1)` used for translates.
    pub fn truncation(&self) -> usize {
        2 * self.dim
    }

    /// `K[t]/(t^{g+1}) = V/C`.
    pub fn algebra(&self) -> TruncatedAlgebra {
        TruncatedAlgebra::new(self.field.clone(), self.dim)
    }

    /// `R/C`.
    pub fn basis(&self) -> &Subspace {
        &self.basis
    }

    pub(crate) fn max_rows(&self) -> &[Vec<Elem>] {
        &self.max_rows
    }

    /// `R mod t^N` in `K[t]/(t^N)` with `N = 2(g+1)`, conductor block included.
    pub fn full_basis(&self) -> Subspace {
        let n = self.truncation();
        let mut rows = Vec::new();
        for r in self.basis.rows() {
            rows.extend_from_slice(r);
            rows.extend(std::iter::repeat_n(0, n - self.dim));
        }
        for k in self.dim..n {
            let mut r = vec![0; n];
            r[k] = 1;
            rows.extend(r);
        }
        Subspace::from_rows_unchecked(&self.field, n, rows)
    }

    /// Representatives `1 + Σ_{i gap} a_i t^i` of `V^* / R^*`; the order is deterministic
    /// and starts with `1`.
    pub fn unit_reps(&self, budget: &Budget) -> Result<Vec<AlgElem>> {
        let q = self.field.order();
        let gaps = self.semigroup.gaps();
        let count = (q as u128).checked_pow(gaps.len() as u32).unwrap_or(u128::MAX);
        budget.check_units(count)?;
        let mut out = Vec::with_capacity(count as usize);
        for mut code in 0..count as usize {
            let mut coeffs = vec![0; self.dim];
            coeffs[0] = 1;
            for &g in gaps {
                coeffs[g as usize] = (code % q) as Elem;
                code /= q;
            }
            out.push(AlgElem::from_coeffs(coeffs));
        }
        Ok(out)
    }

    /// `w^{-1} t^{-m} (X + t^M V)` modulo `C`, for `X ⊆ K[t]/(t^M)` whose elements all
    /// have valuation at least `m`, and `w` a unit known at least modulo `t^{min(M-m, g+1)}`.
    pub(crate) fn divide(&self, x: &Subspace, m: usize, w: &[Elem]) -> Subspace {
        let big = x.ambient();
        let keep = big.saturating_sub(m).min(self.dim);
        let winv = if keep > 0 { inv_truncated(&self.field, w, keep) } else { Vec::new() };
        let mut rows = Vec::with_capacity((x.dim() + self.dim) * self.dim);
        for r in x.rows() {
            let shifted = &r[m..m + keep];
            let mut v = mul_truncated(&self.field, shifted, &winv, keep);
            v.resize(self.dim, 0);
            rows.extend(v);
        }
        for k in keep..self.dim {
            let mut r = vec![0; self.dim];
            r[k] = 1;
            rows.extend(r);
        }
        Subspace::from_rows_unchecked(&self.field, self.dim, rows)
    }

    /// `x^{-1} X` for an element `x ∈ X` of least valuation, where `X` is given by its
    /// image in `K[t]/(t^M)` and contains `t^M V`. The element used is the first RREF row,
    /// so the result is determined up to the action of `V^*`.
    pub(crate) fn normalize_space(&self, x: &Subspace) -> Subspace {
        if x.is_zero() {
            return Subspace::full(self.dim);
        }
        let first = x.row(0);
        let m = valuation(first).unwrap();
        let w = first[m..].to_vec();
        self.divide(x, m, &w)
    }

    /// `(X : t^k) ∩ V = t^{-k}(X ∩ t^k V)` for `C ⊆ X ⊆ V`.
    pub(crate) fn shift_down(&self, x: &Subspace, k: usize) -> Subspace {
        let d = self.dim;
        if k >= d {
            return Subspace::full(d);
        }
        let mut rows = Vec::new();
        for r in x.rows() {
            if valuation(r).unwrap() >= k {
                let mut v = r[k..].to_vec();
                v.resize(d, 0);
                rows.extend(v);
            }
        }
        // RREF rows with pivot >= k stay reduced after the shift
        for j in d - k..d {
            let mut v = vec![0; d];
            v[j] = 1;
            rows.extend(v);
        }
        Subspace::from_rows_unchecked(&self.field, d, rows)
    }

    /// `u X` modulo `C`.
    pub(crate) fn mul_unit_space(&self, u: &AlgElem, x: &Subspace) -> Subspace {
        let mut rows = Vec::with_capacity(x.flat().len());
        for r in x.rows() {
            rows.extend(mul_truncated(&self.field, u.coeffs(), r, self.dim));
        }
        Subspace::from_rows_unchecked(&self.field, self.dim, rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model(gens: &[u32], q: u32) -> RingModel {
        let s = NumericalSemigroup::from_generators(gens).unwrap();
        RingModel::semigroup_ring(&s, &Field::with_order(q).unwrap())
    }

    #[test]
    fn four_five_seven_over_f2() {
        let r = model(&[4, 5, 7], 2);
        assert_eq!(r.truncation(), 14);
        assert_eq!(r.full_basis().pivots(), vec![0, 4, 5, 7, 8, 9, 10, 11, 12, 13]);
        assert_eq!(r.basis().pivots(), vec![0, 4, 5]);
    }

    #[test]
    fn two_three_over_f2() {
        let r = model(&[2, 3], 2);
        assert_eq!(r.truncation(), 4);
        assert_eq!(r.full_basis().pivots(), vec![0, 2, 3]);
    }

    #[test]
    fn t_of_four_five_seven() {
        let r = model(&[4, 5, 7], 2);
        let t = r.build_t().unwrap();
        let expected = NumericalSemigroup::from_generators(&[4, 5, 6, 7]).unwrap();
        assert_eq!(t.semigroup(), &expected);
        assert_eq!(t.dim(), 4);
        assert!(r.t_is_independent_of_generator(&Budget::default()).unwrap());
    }

    #[test]
    fn t_is_k_plus_t_n_v() {
        // for the family with n = 4, T = K + t^4 K[[t]]
        let t = model(&[4, 5, 7], 3).build_t().unwrap();
        assert_eq!(t.basis(), &Subspace::span(t.field(), 4, [&[1, 0, 0, 0][..]]).unwrap());
    }

    #[test]
    fn subalgebra_closure() {
        // K[t^2 + t^3] inside K[t]/(t^6)
        let f = Field::with_order(2).unwrap();
        let r = RingModel::from_subalgebra(&f, 6, &[vec![0, 0, 1, 1, 0, 0]]).unwrap();
        // the square is t^4 in characteristic 2, and t^5 is never reached below t^6
        assert_eq!(r.semigroup().gaps(), &[1, 3, 5]);
        assert_eq!(r.dim(), 6);
        let r = RingModel::from_subalgebra(&f, 6, &[vec![0, 0, 1, 0, 0, 0], vec![0, 0, 0, 1, 0, 0]]).unwrap();
        assert_eq!(r.semigroup().gaps(), &[1]);
    }

    #[test]
    fn unit_reps_count() {
        let r = model(&[4, 5, 7], 3);
        let units = r.unit_reps(&Budget::default()).unwrap();
        assert_eq!(units.len(), 81);
        assert_eq!(units[0], AlgElem::one(7));
        let tight = Budget { max_units: 10, ..Budget::default() };
        assert!(r.unit_reps(&tight).is_err());
    }
}
