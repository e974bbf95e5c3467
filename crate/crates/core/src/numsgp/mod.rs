//! Numerical semigroups, their relative ideals and semigroup star operations.

mod ideal;
mod star;

use std::fmt;

use serde::Serialize;

pub use ideal::SemigroupIdeal;
pub use star::{enumerate_sgp_ideals, enumerate_sgp_stars, SemigroupStars};

use crate::error::{Error, Result};

/// A numerical semigroup `S ⊆ N` with at least one gap.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NumericalSemigroup {
    generators: Vec<u32>,
    frobenius: u32,
    multiplicity: u32,
    gaps: Vec<u32>,
    /// Membership of `0..=2g+2`.
    member: Vec<bool>,
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Parses a comma-separated list of positive integers.
pub fn parse_generators(text: &str) -> Result<Vec<u32>> {
    text.split(',')
        .map(|s| s.trim())
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<u32>()
                .ok()
                .filter(|&v| v > 0)
                .ok_or_else(|| Error::InvalidInput(format!("not a positive integer: {s:?}")))
        })
        .collect()
}

impl NumericalSemigroup {
    pub fn from_generators(gens: &[u32]) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::InvalidInput("no generators".into()));
        }
        if gens.contains(&0) {
            return Err(Error::InvalidInput("generators must be positive".into()));
        }
        let d = gens.iter().copied().fold(0, gcd);
        if d != 1 {
            return Err(Error::GcdNotOne(d));
        }
        let smallest = *gens.iter().min().unwrap() as usize;
        if smallest == 1 {
            return Err(Error::InvalidInput("the semigroup N has no gaps".into()));
        }
        // grow membership until `smallest` consecutive members appear
        let mut member = vec![true];
        let mut run = 0;
        let mut n = 0usize;
        while run < smallest {
            n += 1;
            let m = gens.iter().any(|&a| (a as usize) <= n && member[n - a as usize]);
            member.push(m);
            run = if m { run + 1 } else { 0 };
        }
        let gaps: Vec<u32> = (0..member.len()).filter(|&i| !member[i]).map(|i| i as u32).collect();
        Self::from_gaps(&gaps)
    }

    /// The semigroup `N \ gaps`; fails if the complement is not closed under addition.
    pub fn from_gaps(gaps: &[u32]) -> Result<Self> {
        let frobenius = *gaps
            .iter()
            .max()
            .ok_or_else(|| Error::InvalidInput("the semigroup N has no gaps".into()))?;
        if gaps.contains(&0) {
            return Err(Error::InvalidInput("0 cannot be a gap".into()));
        }
        let g = frobenius as usize;
        let mut member = vec![true; 2 * g + 3];
        for &x in gaps {
            member[x as usize] = false;
        }
        for a in 1..=g {
            for b in a..=g {
                if member[a] && member[b] && a + b <= g && !member[a + b] {
                    return Err(Error::InvalidInput(format!(
                        "complement of the gap set is not closed: {a} + {b}"
                    )));
                }
            }
        }
        let mut gaps: Vec<u32> = gaps.to_vec();
        gaps.sort_unstable();
        gaps.dedup();
        let multiplicity = (1..).find(|&i| member[i]).unwrap() as u32;
        let positive: Vec<usize> = (1..=g + multiplicity as usize).filter(|&i| member[i]).collect();
        let generators = positive
            .iter()
            .copied()
            .filter(|&s| !positive.iter().any(|&a| a < s && member[s - a] && s - a > 0))
            .map(|s| s as u32)
            .collect();
        Ok(NumericalSemigroup { generators, frobenius, multiplicity, gaps, member })
    }

    /// `⟨n, n+1, ..., 2n-3, 2n-1⟩` for `n >= 3`.
    pub fn kunz_family(n: u32) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidInput(format!("family parameter n = {n} must be at least 3")));
        }
        let mut gaps: Vec<u32> = (1..n).collect();
        gaps.push(2 * n - 2);
        Self::from_gaps(&gaps)
    }

    /// Minimal generating set.
    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    /// `g(S) = max(N \ S)`.
    pub fn frobenius(&self) -> u32 {
        self.frobenius
    }

    pub fn multiplicity(&self) -> u32 {
        self.multiplicity
    }

    pub fn gaps(&self) -> &[u32] {
        &self.gaps
    }

    pub fn genus(&self) -> usize {
        self.gaps.len()
    }

    /// `g/2` when the Frobenius number is even.
    pub fn tau(&self) -> Option<u32> {
        self.frobenius.is_multiple_of(2).then_some(self.frobenius / 2)
    }

    pub fn contains(&self, x: i64) -> bool {
        if x < 0 {
            false
        } else if (x as usize) < self.member.len() {
            self.member[x as usize]
        } else {
            true
        }
    }

    pub fn is_symmetric(&self) -> bool {
        let g = self.frobenius as i64;
        self.gaps.iter().all(|&a| self.contains(g - a as i64))
    }

    /// `g` even and every gap `a ≠ g/2` has `g - a ∈ S`.
    pub fn is_pseudo_symmetric(&self) -> bool {
        let Some(tau) = self.tau() else { return false };
        let g = self.frobenius as i64;
        self.gaps.iter().filter(|&&a| a != tau).all(|&a| self.contains(g - a as i64))
    }

    /// `S ∪ {g}`.
    pub fn with_frobenius_added(&self) -> Option<NumericalSemigroup> {
        let gaps: Vec<u32> = self.gaps.iter().copied().filter(|&x| x != self.frobenius).collect();
        Self::from_gaps(&gaps).ok()
    }

    /// Witnesses `(a, b) = (τ, g - μ)` for a pseudo-symmetric `S` with at least four gaps:
    /// `a ≠ b`, both in `(S' - M_{S'}) \ S'` and `2a, 2b, a + b ∈ S'` where `S' = S ∪ {g}`.
    pub fn nongor_witnesses(&self) -> Result<(u32, u32)> {
        if !self.is_pseudo_symmetric() {
            return Err(Error::Gate(format!("{self} is not pseudo-symmetric")));
        }
        if self.genus() < 4 {
            return Err(Error::Gate(format!("{self} has only {} gaps; at least 4 required", self.genus())));
        }
        let g = self.frobenius;
        let a = g / 2;
        let b = g - self.multiplicity;
        let in_s_prime = |x: i64| x == g as i64 || self.contains(x);
        let absorbs = |z: u32| {
            (1..=2 * g as i64 + 2)
                .filter(|&m| in_s_prime(m))
                .all(|m| in_s_prime(z as i64 + m))
        };
        let checks = [
            (a != b, "a ≠ b"),
            (!in_s_prime(a as i64) && absorbs(a), "a ∈ (S'-M_S') \\ S'"),
            (!in_s_prime(b as i64) && absorbs(b), "b ∈ (S'-M_S') \\ S'"),
            (in_s_prime(2 * a as i64), "2a ∈ S'"),
            (in_s_prime(2 * b as i64), "2b ∈ S'"),
            (in_s_prime((a + b) as i64), "a + b ∈ S'"),
        ];
        for (ok, what) in checks {
            if !ok {
                return Err(Error::Verification(format!("witness check {what} fails for {self}")));
            }
        }
        Ok((a, b))
    }

    /// `n` if this is `⟨n, n+1, ..., 2n-3, 2n-1⟩`.
    pub fn family_parameter(&self) -> Option<u32> {
        let n = self.multiplicity;
        (n >= 3 && Self::kunz_family(n).ok().as_ref() == Some(self)).then_some(n)
    }

    /// Every numerical semigroup other than `N` with Frobenius number at most `max_g`,
    /// ordered by gap set.
    pub fn all_up_to_frobenius(max_g: u32) -> Vec<NumericalSemigroup> {
        let mut out = Vec::new();
        for mask in 1u64..(1 << max_g) {
            let gaps: Vec<u32> = (0..max_g).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect();
            if let Ok(s) = Self::from_gaps(&gaps) {
                out.push(s);
            }
        }
        out
    }
}

impl fmt::Display for NumericalSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        write!(f, "⟨{}⟩", gens.join(","))
    }
}

/// Summary used by reports.
#[derive(Clone, Debug, Serialize)]
pub struct SemigroupInfo {
    pub generators: Vec<u32>,
    pub gaps: Vec<u32>,
    pub frobenius: u32,
    pub multiplicity: u32,
    pub tau: Option<u32>,
    pub symmetric: bool,
    pub pseudo_symmetric: bool,
    /// Members of the canonical ideal up to `g`.
    pub canonical_ideal: Vec<u32>,
    pub nongor_witnesses: Option<(u32, u32)>,
}

impl From<&NumericalSemigroup> for SemigroupInfo {
    fn from(s: &NumericalSemigroup) -> Self {
        SemigroupInfo {
            generators: s.generators.clone(),
            gaps: s.gaps.clone(),
            frobenius: s.frobenius,
            multiplicity: s.multiplicity,
            tau: s.tau(),
            symmetric: s.is_symmetric(),
            pseudo_symmetric: s.is_pseudo_symmetric(),
            canonical_ideal: SemigroupIdeal::canonical(s).members(),
            nongor_witnesses: s.nongor_witnesses().ok(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sgp(gens: &[u32]) -> NumericalSemigroup {
        NumericalSemigroup::from_generators(gens).unwrap()
    }

    #[test]
    fn four_five_seven() {
        let s = sgp(&[4, 5, 7]);
        assert_eq!(s.gaps(), &[1, 2, 3, 6]);
        assert_eq!(s.frobenius(), 6);
        assert_eq!(s.multiplicity(), 4);
        assert_eq!(s.tau(), Some(3));
        assert_eq!(s.generators(), &[4, 5, 7]);
    }

    #[test]
    fn two_three() {
        let s = sgp(&[2, 3]);
        assert_eq!(s.gaps(), &[1]);
        assert_eq!(s.frobenius(), 1);
        assert!(s.is_symmetric());
        assert!(!s.is_pseudo_symmetric());
    }

    #[test]
    fn gcd_rejected() {
        assert!(matches!(NumericalSemigroup::from_generators(&[4, 6]), Err(Error::GcdNotOne(2))));
        assert!(NumericalSemigroup::from_generators(&[]).is_err());
        assert!(NumericalSemigroup::from_generators(&[1, 5]).is_err());
    }

    #[test]
    fn redundant_generators_dropped() {
        assert_eq!(sgp(&[3, 4, 5, 6, 8]).generators(), &[3, 4, 5]);
    }

    #[test]
    fn pseudo_symmetry_examples() {
        assert!(sgp(&[3, 4, 5]).is_pseudo_symmetric());
        assert!(sgp(&[3, 5, 7]).is_pseudo_symmetric());
        assert!(sgp(&[4, 5, 7]).is_pseudo_symmetric());
        assert!(sgp(&[5, 6, 7, 9]).is_pseudo_symmetric());
        assert!(!sgp(&[4, 5, 6, 7]).is_pseudo_symmetric());
    }

    #[test]
    fn small_semigroup_scan() {
        let all = NumericalSemigroup::all_up_to_frobenius(4);
        assert!(all.contains(&sgp(&[2, 3])));
        assert!(all.contains(&sgp(&[3, 4, 5])));
        assert!(all.contains(&sgp(&[3, 5, 7])));
        assert!(all.iter().all(|s| s.frobenius() <= 4));
        let few_gaps: Vec<_> = NumericalSemigroup::all_up_to_frobenius(6)
            .into_iter()
            .filter(|s| s.is_pseudo_symmetric() && s.genus() <= 3)
            .collect();
        assert_eq!(few_gaps, vec![sgp(&[3, 4, 5]), sgp(&[3, 5, 7])]);
    }

    #[test]
    fn family_members() {
        assert_eq!(sgp(&[4, 5, 7]).family_parameter(), Some(4));
        assert_eq!(sgp(&[3, 5, 7]).family_parameter(), Some(3));
        assert_eq!(sgp(&[4, 5, 6, 7]).family_parameter(), None);
        assert_eq!(NumericalSemigroup::kunz_family(4).unwrap(), sgp(&[4, 5, 7]));
        assert_eq!(NumericalSemigroup::kunz_family(5).unwrap(), sgp(&[5, 6, 7, 9]));
        assert_eq!(NumericalSemigroup::kunz_family(3).unwrap(), sgp(&[3, 5, 7]));
        for n in 3..9 {
            let s = NumericalSemigroup::kunz_family(n).unwrap();
            assert!(s.is_pseudo_symmetric());
            assert_eq!(s.frobenius(), 2 * n - 2);
        }
    }

    #[test]
    fn witnesses() {
        assert_eq!(sgp(&[4, 5, 7]).nongor_witnesses().unwrap(), (3, 2));
        assert_eq!(sgp(&[5, 6, 7, 9]).nongor_witnesses().unwrap(), (4, 3));
        assert!(matches!(sgp(&[3, 4, 5]).nongor_witnesses(), Err(Error::Gate(_))));
        assert!(matches!(sgp(&[2, 3]).nongor_witnesses(), Err(Error::Gate(_))));
    }

    #[test]
    fn bad_gap_sets_rejected() {
        // 2 and 3 in S force 5 ∈ S
        assert!(NumericalSemigroup::from_gaps(&[1, 5]).is_err());
        assert!(NumericalSemigroup::from_gaps(&[]).is_err());
    }

    #[test]
    fn parse() {
        assert_eq!(parse_generators("4,5, 7").unwrap(), vec![4, 5, 7]);
        assert!(parse_generators("4,x").is_err());
        assert!(parse_generators("0,3").is_err());
    }
}
