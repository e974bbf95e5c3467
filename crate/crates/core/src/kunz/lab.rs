use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::fq::algebra::mul_truncated;
use crate::fq::{Elem, Field, Subspace};

/// Two-dimensional subspaces `⟨e_0, f⟩` of `A = K[x]/(x^n)` (with `e_i = x^i`) that do
/// not contain `e_{n-1}`, up to multiplication by units of `A`.
#[derive(Clone, Debug)]
pub struct SubspaceLab {
    pub n: usize,
    pub field: Field,
    /// Sorted.
    pub x: Vec<Subspace>,
    /// Classes of `x` (indices), ordered by least member.
    pub classes: Vec<Vec<usize>>,
    /// Least member of each class.
    pub reps: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct LabChecks {
    pub x_count_formula: bool,
    pub class_size_at_most_q: bool,
    pub reps_lower_bound: bool,
    /// Only for `n = 4`.
    pub singleton_classes_are_v01: Option<bool>,
    pub size_q_classes_from_v1: Option<bool>,
    pub two_q_classes: Option<bool>,
    pub inverse_formula: Option<bool>,
    pub three_dim_single_orbit: Option<bool>,
}

impl LabChecks {
    pub fn all(&self) -> bool {
        self.x_count_formula
            && self.class_size_at_most_q
            && self.reps_lower_bound
            && [
                self.singleton_classes_are_v01,
                self.size_q_classes_from_v1,
                self.two_q_classes,
                self.inverse_formula,
                self.three_dim_single_orbit,
            ]
            .iter()
            .all(|c| c.unwrap_or(true))
    }
}

fn unit_vec(n: usize, k: usize) -> Vec<Elem> {
    let mut v = vec![0; n];
    v[k] = 1;
    v
}

/// `γ W`.
pub fn mul_subspace(field: &Field, gamma: &[Elem], w: &Subspace) -> Subspace {
    let n = w.ambient();
    let rows: Vec<Elem> = w.rows().flat_map(|r| mul_truncated(field, gamma, r, n)).collect();
    Subspace::from_rows_unchecked(field, n, rows)
}

/// Units `1 + a_1 e_1 + ... + a_{n-1} e_{n-1}`; scalars act trivially on subspaces.
fn units(field: &Field, n: usize, budget: &Budget) -> Result<Vec<Vec<Elem>>> {
    let q = field.order();
    let total = (q as u128).checked_pow(n as u32 - 1).unwrap_or(u128::MAX);
    budget.check_units(total)?;
    Ok((0..total as usize)
        .map(|mut code| {
            let mut v = vec![0; n];
            v[0] = 1;
            for x in v.iter_mut().skip(1) {
                *x = (code % q) as Elem;
                code /= q;
            }
            v
        })
        .collect())
}

/// `q^k` as `usize`.
fn qpow(q: usize, k: usize) -> usize {
    q.pow(k as u32)
}

impl SubspaceLab {
    pub fn new(n: usize, field: &Field, budget: &Budget) -> Result<SubspaceLab> {
        if n < 3 {
            return Err(Error::InvalidInput(format!("n = {n} must be at least 3")));
        }
        let q = field.order();
        let total = (q as u128).checked_pow(n as u32 - 1).unwrap_or(u128::MAX);
        budget.check_subspaces(total)?;
        let e0 = unit_vec(n, 0);
        let mut x = Vec::new();
        // f normalized to leading coefficient 1, some λ_1..λ_{n-2} nonzero
        for code in 0..total as usize {
            let mut f = vec![0; n];
            let mut c = code;
            for v in f.iter_mut().skip(1) {
                *v = (c % q) as Elem;
                c /= q;
            }
            let lead = f.iter().position(|&c| c != 0);
            match lead {
                Some(l) if l < n - 1 && f[l] == 1 => x.push(Subspace::span(field, n, [&e0[..], &f[..]])?),
                _ => {}
            }
        }
        x.sort();
        let index: BTreeMap<&Subspace, usize> = x.iter().enumerate().map(|(i, s)| (s, i)).collect();
        let us = units(field, n, budget)?;
        let mut class_of = vec![usize::MAX; x.len()];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for i in 0..x.len() {
            if class_of[i] != usize::MAX {
                continue;
            }
            budget.check_time()?;
            let mut members = BTreeSet::new();
            for u in &us {
                let w = mul_subspace(field, u, &x[i]);
                if let Some(&j) = index.get(&w) {
                    members.insert(j);
                }
            }
            for &m in &members {
                class_of[m] = classes.len();
            }
            classes.push(members.into_iter().collect());
        }
        let reps = classes.iter().map(|c| c[0]).collect();
        Ok(SubspaceLab { n, field: field.clone(), x, classes, reps })
    }

    pub fn x_count(&self) -> usize {
        self.x.len()
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// `(q^{n-1} - q) / (q - 1)`.
    pub fn x_formula(&self) -> usize {
        let q = self.field.order();
        (qpow(q, self.n - 1) - q) / (q - 1)
    }

    /// `(q^{n-2} - 1) / (q - 1)`.
    pub fn reps_formula(&self) -> usize {
        let q = self.field.order();
        (qpow(q, self.n - 2) - 1) / (q - 1)
    }

    /// `V(λ_1, λ_2, λ_3) = ⟨e_0, λ_1 e_1 + λ_2 e_2 + λ_3 e_3⟩` for `n = 4`.
    fn v_of(&self, l: [Elem; 3]) -> Subspace {
        Subspace::span(&self.field, 4, [&[1, 0, 0, 0][..], &[0, l[0], l[1], l[2]][..]]).expect("ambient 4")
    }

    pub fn checks(&self) -> LabChecks {
        let q = self.field.order();
        let mut out = LabChecks {
            x_count_formula: self.x_count() == self.x_formula(),
            class_size_at_most_q: self.classes.iter().all(|c| c.len() <= q),
            reps_lower_bound: self.reps.len() >= self.reps_formula(),
            singleton_classes_are_v01: None,
            size_q_classes_from_v1: None,
            two_q_classes: None,
            inverse_formula: None,
            three_dim_single_orbit: None,
        };
        if self.n != 4 {
            return out;
        }
        let f = &self.field;
        let elems: Vec<Elem> = f.elements().collect();
        let v01: BTreeSet<Subspace> = elems.iter().map(|&l3| self.v_of([0, 1, l3])).collect();
        let singles: Vec<&Vec<usize>> = self.classes.iter().filter(|c| c.len() == 1).collect();
        out.singleton_classes_are_v01 =
            Some(singles.len() == q && singles.iter().all(|c| v01.contains(&self.x[c[0]])));
        let sized: Vec<&Vec<usize>> = self.classes.iter().filter(|c| c.len() == q).collect();
        let from_v1 = sized.iter().all(|c| c.iter().all(|&m| self.x[m].row(1)[1] != 0));
        // for q = 1 the two kinds would coincide; q >= 2 always here
        out.size_q_classes_from_v1 = Some(sized.len() == q && from_v1);
        out.two_q_classes = Some(self.class_count() == 2 * q);

        // (e_0 + θ f)^{-1} V(1, λ_2, λ_3) = V(1, λ_2 - θ, θ^2 - 2θλ_2 + λ_3)
        let mut formula = true;
        for &theta in &elems {
            for &l2 in &elems {
                for &l3 in &elems {
                    let g = [1, theta, f.mul(theta, l2), f.mul(theta, l3)];
                    let ginv = crate::fq::algebra::inv_truncated(f, &g, 4);
                    let lhs = mul_subspace(f, &ginv, &self.v_of([1, l2, l3]));
                    let two = f.add(1, 1);
                    let a2 = f.sub(l2, theta);
                    let a3 = f.add(f.sub(f.mul(theta, theta), f.mul(two, f.mul(theta, l2))), l3);
                    formula &= lhs == self.v_of([1, a2, a3]);
                }
            }
        }
        out.inverse_formula = Some(formula);

        // W(θ_1, θ_2) = ⟨e_0, e_1 + θ_1 e_3, e_2 + θ_2 e_3⟩ and γ = e_0 - θ_2 e_1 - θ_1 e_2
        let w = |t1: Elem, t2: Elem| {
            Subspace::span(f, 4, [&[1, 0, 0, 0][..], &[0, 1, 0, t1][..], &[0, 0, 1, t2][..]]).expect("ambient 4")
        };
        let w00 = w(0, 0);
        let mut single = true;
        for &t1 in &elems {
            for &t2 in &elems {
                let gamma = [1, f.neg(t2), f.neg(t1), 0];
                single &= mul_subspace(f, &gamma, &w(t1, t2)) == w00;
            }
        }
        out.three_dim_single_orbit = Some(single);
        out
    }

    pub fn summary(&self) -> serde_json::Value {
        let fmt = |s: &Subspace| crate::ring::format_series(s.row(1));
        serde_json::json!({
            "n": self.n,
            "q": self.field.order(),
            "x_count": self.x_count(),
            "x_formula": self.x_formula(),
            "classes": self.class_count(),
            "class_sizes": self.classes.iter().map(|c| c.len()).collect::<Vec<_>>(),
            "representatives": self.reps.iter().map(|&r| fmt(&self.x[r])).collect::<Vec<_>>(),
            "representatives_formula": self.reps_formula(),
            "checks": self.checks(),
        })
    }
}
