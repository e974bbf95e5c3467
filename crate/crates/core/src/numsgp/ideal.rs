use serde::Serialize;

use super::NumericalSemigroup;
use crate::error::{Error, Result};

/// A relative ideal `E ⊆ N` of `S` containing every integer above `g(S)`.
///
/// Stored as membership of `0..=g`. Normalized ideals (`min E = 0`) are the elements of
/// the semigroup analogue of `F_0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SemigroupIdeal {
    below: Vec<bool>,
}

impl SemigroupIdeal {
    fn empty(s: &NumericalSemigroup) -> Self {
        SemigroupIdeal { below: vec![false; s.frobenius() as usize + 1] }
    }

    pub fn from_members(s: &NumericalSemigroup, members: &[u32]) -> Result<Self> {
        let mut e = Self::empty(s);
        for &m in members {
            if m <= s.frobenius() {
                e.below[m as usize] = true;
            }
        }
        if !e.is_ideal(s) {
            return Err(Error::InvalidInput(format!("{members:?} is not an ideal of {s}")));
        }
        Ok(e)
    }

    /// `S` itself.
    pub fn semigroup(s: &NumericalSemigroup) -> Self {
        let below = (0..=s.frobenius()).map(|x| s.contains(x as i64)).collect();
        SemigroupIdeal { below }
    }

    /// `N`.
    pub fn whole(s: &NumericalSemigroup) -> Self {
        SemigroupIdeal { below: vec![true; s.frobenius() as usize + 1] }
    }

    /// `M_S = S \ {0}`.
    pub fn maximal(s: &NumericalSemigroup) -> Self {
        let mut e = Self::semigroup(s);
        e.below[0] = false;
        e
    }

    /// `S ∪ {x ∈ N : g - x ∉ S}`.
    pub fn canonical(s: &NumericalSemigroup) -> Self {
        let g = s.frobenius() as i64;
        let below = (0..=g).map(|x| s.contains(x) || !s.contains(g - x)).collect();
        SemigroupIdeal { below }
    }

    pub fn contains(&self, x: i64) -> bool {
        x >= 0 && (x as usize >= self.below.len() || self.below[x as usize])
    }

    /// Members up to `g`.
    pub fn members(&self) -> Vec<u32> {
        (0..self.below.len()).filter(|&i| self.below[i]).map(|i| i as u32).collect()
    }

    /// `min E`.
    pub fn min(&self) -> u32 {
        self.below.iter().position(|&b| b).unwrap_or(self.below.len()) as u32
    }

    pub fn is_normalized(&self) -> bool {
        self.below[0]
    }

    pub fn is_ideal(&self, s: &NumericalSemigroup) -> bool {
        let g = s.frobenius() as i64;
        self.members().iter().all(|&x| (1..=g).all(|m| !s.contains(m) || self.contains(x as i64 + m)))
    }

    pub fn is_subset(&self, other: &SemigroupIdeal) -> bool {
        self.below.iter().zip(&other.below).all(|(&a, &b)| !a || b)
    }

    pub fn intersect(&self, other: &SemigroupIdeal) -> SemigroupIdeal {
        let below = self.below.iter().zip(&other.below).map(|(&a, &b)| a && b).collect();
        SemigroupIdeal { below }
    }

    /// `{z ∈ N : z + F ⊆ E}`.
    pub fn colon(&self, f: &SemigroupIdeal) -> SemigroupIdeal {
        let fm = f.members();
        let below = (0..self.below.len() as i64)
            .map(|z| fm.iter().all(|&x| self.contains(z + x as i64)))
            .collect();
        SemigroupIdeal { below }
    }

    /// `E - min E`.
    pub fn normalize(&self) -> SemigroupIdeal {
        let m = self.min() as i64;
        let below = (0..self.below.len() as i64).map(|y| self.contains(y + m)).collect();
        SemigroupIdeal { below }
    }

    /// `normalize(E ∩ (k + F))`.
    pub fn translate_intersect(&self, f: &SemigroupIdeal, k: u32) -> SemigroupIdeal {
        let k = k as i64;
        let in_both = |x: i64| self.contains(x) && f.contains(x - k);
        let m = (0..).find(|&x| in_both(x)).unwrap();
        let below = (0..self.below.len() as i64).map(|y| in_both(y + m)).collect();
        SemigroupIdeal { below }
    }

    /// `(S : (S : E))`.
    pub fn v_closure(&self, s: &NumericalSemigroup) -> SemigroupIdeal {
        let sg = Self::semigroup(s);
        sg.colon(&sg.colon(self))
    }

    pub fn is_divisorial(&self, s: &NumericalSemigroup) -> bool {
        &self.v_closure(s) == self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sgp(gens: &[u32]) -> NumericalSemigroup {
        NumericalSemigroup::from_generators(gens).unwrap()
    }

    #[test]
    fn canonical_ideals() {
        let s = sgp(&[4, 5, 7]);
        assert_eq!(SemigroupIdeal::canonical(&s).members(), vec![0, 3, 4, 5]);
        let s = sgp(&[2, 3]);
        assert_eq!(SemigroupIdeal::canonical(&s), SemigroupIdeal::semigroup(&s));
        let s = sgp(&[3, 5, 7]);
        assert_eq!(SemigroupIdeal::canonical(&s).members(), vec![0, 2, 3]);
    }

    #[test]
    fn colon_of_maximal_ideal() {
        let s = sgp(&[4, 5, 7]);
        let sg = SemigroupIdeal::semigroup(&s);
        let l = sg.colon(&SemigroupIdeal::maximal(&s));
        assert_eq!(l.members(), vec![0, 3, 4, 5, 6]);
    }

    #[test]
    fn v_closures() {
        let s = sgp(&[4, 5, 7]);
        let sg = SemigroupIdeal::semigroup(&s);
        assert_eq!(sg.v_closure(&s), sg);
        let k = SemigroupIdeal::canonical(&s);
        assert_eq!(k.v_closure(&s).members(), vec![0, 3, 4, 5, 6]);
        let n = SemigroupIdeal::whole(&s);
        assert_eq!(n.v_closure(&s), n);
    }

    #[test]
    fn colon_laws() {
        let s = sgp(&[4, 5, 7]);
        let sg = SemigroupIdeal::semigroup(&s);
        for e in super::super::enumerate_sgp_ideals(&s, &Default::default()).unwrap() {
            assert_eq!(e.colon(&sg), e);
            assert_eq!(e.translate_intersect(&e, 0), e);
            assert!(e.is_subset(&e.v_closure(&s)));
        }
    }

    #[test]
    fn non_ideal_rejected() {
        let s = sgp(&[4, 5, 7]);
        // 1 + 5 = 6 ∉ {0,1,4,5,7,..}
        assert!(SemigroupIdeal::from_members(&s, &[0, 1, 4, 5]).is_err());
        assert!(SemigroupIdeal::from_members(&s, &[0, 3, 4, 5]).is_ok());
    }
}
