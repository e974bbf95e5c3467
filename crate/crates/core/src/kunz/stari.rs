use serde::Serialize;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::fq::{Elem, Subspace};
use crate::ring::{format_series, RingIdeal, RingModel};
use crate::star::{StarEngine, StarOperation};

/// The operations `⋆_i : I ↦ I^{v_T} ∩ I T_i` on `T`, with `T_i = T + (x + α_i y) T`.
#[derive(Clone, Debug)]
pub struct StariFamily {
    /// Element of valuation `a` in `(T : M_T)`, in `T`'s coordinates.
    pub x: Vec<Elem>,
    /// Element of valuation `b` in `(T : M_T) \ (R : M_R)`.
    pub y: Vec<Elem>,
    /// Lattice indices of `T_i` in `F_0(T)`.
    pub t_i: Vec<usize>,
    /// `⋆_1, ..., ⋆_q`, then `v_T`.
    pub ops: Vec<StarOperation>,
    pub checks: StariChecks,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct StariChecks {
    pub axioms: bool,
    pub closes_own: bool,
    pub not_closing_others: bool,
    pub y_in_other_closures: bool,
    pub none_close_r_colon_m: bool,
    pub r_colon_m_vt_is_t_colon_mt: bool,
    pub pairwise_distinct: bool,
    pub t_i_are_rings: bool,
}

impl StariChecks {
    pub fn all(&self) -> bool {
        self.axioms
            && self.closes_own
            && self.not_closing_others
            && self.y_in_other_closures
            && self.none_close_r_colon_m
            && self.r_colon_m_vt_is_t_colon_mt
            && self.pairwise_distinct
            && self.t_i_are_rings
    }
}

/// Lexicographically least `t^val + Σ_{j > val} c_j t^j` (by coefficient codes) in `space`
/// satisfying `accept`.
fn lex_least<F: Fn(&[Elem]) -> bool>(
    model: &RingModel,
    space: &Subspace,
    val: usize,
    budget: &Budget,
    accept: F,
) -> Result<Option<Vec<Elem>>> {
    let d = model.dim();
    let q = model.field().order();
    let free = d - val - 1;
    let total = (q as u128).checked_pow(free as u32).unwrap_or(u128::MAX);
    budget.check_units(total)?;
    for code in 0..total as usize {
        let mut v = vec![0; d];
        v[val] = 1;
        let mut c = code;
        // most significant digit at the lowest free position, so codes run in lex order
        for j in (val + 1..d).rev() {
            v[j] = (c % q) as Elem;
            c /= q;
        }
        if space.contains_vector(model.field(), &v) && accept(&v) {
            return Ok(Some(v));
        }
    }
    Ok(None)
}

/// `(R : M_R)` in `R`'s model.
pub fn r_colon_m(r: &RingModel) -> RingIdeal {
    r.colon(&r.ring_ideal(), &r.maximal_ideal())
}

pub fn build_stari_family(r: &RingModel, t: &StarEngine, budget: &Budget) -> Result<StariFamily> {
    let s = r.semigroup();
    let (a, b) = s.nongor_witnesses()?;
    let tm = t.model();
    let f = tm.field();
    let dt = tm.dim();
    let t_colon = tm.colon(&tm.ring_ideal(), &tm.maximal_ideal());
    let rm = r_colon_m(r);
    let padded = |v: &[Elem]| {
        let mut w = v.to_vec();
        w.resize(r.dim(), 0);
        w
    };
    let x = lex_least(tm, t_colon.space(), a as usize, budget, |_| true)?
        .ok_or_else(|| Error::Verification(format!("(T : M_T) has no element of valuation {a}")))?;
    let y = lex_least(tm, t_colon.space(), b as usize, budget, |v| !rm.space().contains_vector(r.field(), &padded(v)))?
        .ok_or_else(|| Error::Verification(format!("no element of valuation {b} in (T : M_T) outside (R : M_R)")))?;

    let q = f.order();
    let mut t_i = Vec::with_capacity(q);
    let mut rings = true;
    let one = {
        let mut v = vec![0; dt];
        v[0] = 1;
        v
    };
    for alpha in f.elements() {
        let z: Vec<Elem> = x.iter().zip(&y).map(|(&xi, &yi)| f.add(xi, f.mul(alpha, yi))).collect();
        let ti = tm.generate(&[one.clone(), z])?;
        rings &= tm.product(&ti, &ti) == ti && tm.is_subset(&ti, &t_colon);
        t_i.push(t.index_of(&ti)?);
    }

    let lat = t.lattice();
    let mut ops = Vec::with_capacity(q + 1);
    let mut axioms = true;
    for &ti in &t_i {
        let tii = lat.get(ti);
        let map: Vec<usize> = (0..lat.len())
            .map(|j| {
                let prod = tm.product(lat.get(j), tii);
                lat.require(&tm.intersect(&prod, lat.get(t.v_of(j))))
            })
            .collect::<Result<_>>()?;
        let op = t.star_from_map(&map)?;
        axioms &= t.verify_axioms(&op).is_ok();
        ops.push(op);
    }
    ops.push(t.star_v());

    let closes_own = t_i.iter().zip(&ops).all(|(&ti, op)| op.closes(ti));
    let mut not_closing_others = true;
    let mut y_in_other_closures = true;
    for (i, &ti) in t_i.iter().enumerate() {
        for (j, op) in ops.iter().take(q).enumerate() {
            if i != j {
                not_closing_others &= !op.closes(ti);
                y_in_other_closures &= lat.get(op.apply(ti)).space().contains_vector(f, &y);
            }
        }
    }
    let rm_t = tm.from_finer(r, &rm)?;
    let rm_idx = t.index_of(&rm_t)?;
    let none_close_r_colon_m = ops.iter().all(|op| !op.closes(rm_idx));
    let r_colon_m_vt_is_t_colon_mt = lat.get(t.v_of(rm_idx)) == &t_colon;
    let mut pairwise_distinct = true;
    for i in 0..ops.len() {
        for j in i + 1..ops.len() {
            pairwise_distinct &= ops[i] != ops[j];
        }
    }
    let checks = StariChecks {
        axioms,
        closes_own,
        not_closing_others,
        y_in_other_closures,
        none_close_r_colon_m,
        r_colon_m_vt_is_t_colon_mt,
        pairwise_distinct,
        t_i_are_rings: rings,
    };
    Ok(StariFamily { x, y, t_i, ops, checks })
}

impl StariFamily {
    pub fn summary(&self, t: &StarEngine) -> serde_json::Value {
        serde_json::json!({
            "x": format_series(&self.x),
            "y": format_series(&self.y),
            "t_i": self.t_i.iter().map(|&i| t.model().format_ideal(t.lattice().get(i))).collect::<Vec<_>>(),
            "operations": self.ops.len(),
            "families": self.ops.iter().map(|o| o.family().to_vec()).collect::<Vec<_>>(),
            "checks": self.checks,
        })
    }
}
