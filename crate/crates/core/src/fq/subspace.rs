//! Subspaces of `K^n` in reduced row-echelon form.
//!
//! Two spanning sets of the same subspace produce identical `Subspace` values, so
//! equality, hashing and ordering are all structural.

use serde::{Deserialize, Serialize};

use super::field::{Elem, Field};
use crate::budget::Budget;
use crate::error::{Error, Result};

/// A subspace of `K^ambient`, stored as its RREF basis (row-major).
///
/// Ordering is by ambient dimension, then dimension, then the flattened basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Subspace {
    ambient: usize,
    dim: usize,
    rows: Vec<Elem>,
}

/// Row-reduces `rows` (row-major, `ncols` columns) in place and drops zero rows.
/// Returns the pivot columns.
pub fn rref(field: &Field, rows: &mut Vec<Elem>, ncols: usize) -> Vec<usize> {
    if ncols == 0 {
        rows.clear();
        return Vec::new();
    }
    let nrows = rows.len() / ncols;
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(sel) = (r..nrows).find(|&i| rows[i * ncols + col] != 0) else {
            continue;
        };
        if sel != r {
            for c in 0..ncols {
                rows.swap(sel * ncols + c, r * ncols + c);
            }
        }
        let inv = field.inv(rows[r * ncols + col]).unwrap();
        if inv != 1 {
            for c in col..ncols {
                rows[r * ncols + c] = field.mul(inv, rows[r * ncols + c]);
            }
        }
        for i in 0..nrows {
            if i == r {
                continue;
            }
            let factor = rows[i * ncols + col];
            if factor == 0 {
                continue;
            }
            let neg = field.neg(factor);
            for c in col..ncols {
                let v = rows[r * ncols + c];
                if v != 0 {
                    rows[i * ncols + c] = field.add(rows[i * ncols + c], field.mul(neg, v));
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r * ncols);
    pivots
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, dim: 0, rows: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        let mut rows = vec![0; ambient * ambient];
        for i in 0..ambient {
            rows[i * ambient + i] = 1;
        }
        Subspace { ambient, dim: ambient, rows }
    }

    /// Span of the given vectors.
    pub fn span<'a, I>(field: &Field, ambient: usize, vectors: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a [Elem]>,
    {
        let mut rows = Vec::new();
        for v in vectors {
            if v.len() != ambient {
                return Err(Error::DimensionMismatch { expected: ambient, found: v.len() });
            }
            if v.iter().any(|&c| c as usize >= field.order()) {
                return Err(Error::InvalidInput("coordinate outside the field".into()));
            }
            rows.extend_from_slice(v);
        }
        Ok(Self::from_rows_unchecked(field, ambient, rows))
    }

    /// Span of a row-major matrix whose entries are known to be valid.
    pub fn from_rows_unchecked(field: &Field, ambient: usize, mut rows: Vec<Elem>) -> Self {
        rref(field, &mut rows, ambient);
        let dim = rows.len().checked_div(ambient).unwrap_or(0);
        Subspace { ambient, dim, rows }
    }

    /// Wraps rows that are already in RREF with no zero rows.
    pub(crate) fn from_rref_unchecked(ambient: usize, rows: Vec<Elem>) -> Self {
        let dim = rows.len().checked_div(ambient).unwrap_or(0);
        Subspace { ambient, dim, rows }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.rows[i * self.ambient..(i + 1) * self.ambient]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Elem]> + '_ {
        (0..self.dim).map(move |i| self.row(i))
    }

    pub fn flat(&self) -> &[Elem] {
        &self.rows
    }

    /// Pivot column of each basis row; for a subspace of a truncated algebra these are
    /// exactly the valuations realised by its nonzero elements.
    pub fn pivots(&self) -> Vec<usize> {
        self.rows().map(|r| r.iter().position(|&c| c != 0).unwrap()).collect()
    }

    /// Reduces `v` modulo this subspace; the result is zero iff `v` lies in it.
    pub fn reduce(&self, field: &Field, v: &mut [Elem]) {
        for row in self.rows() {
            let p = row.iter().position(|&c| c != 0).unwrap();
            let factor = v[p];
            if factor == 0 {
                continue;
            }
            let neg = field.neg(factor);
            for (x, &r) in v.iter_mut().zip(row).skip(p) {
                if r != 0 {
                    *x = field.add(*x, field.mul(neg, r));
                }
            }
        }
    }

    pub fn contains_vector(&self, field: &Field, v: &[Elem]) -> bool {
        if v.len() != self.ambient {
            return false;
        }
        let mut w = v.to_vec();
        self.reduce(field, &mut w);
        w.iter().all(|&c| c == 0)
    }

    /// `other ⊆ self`.
    pub fn contains(&self, field: &Field, other: &Subspace) -> bool {
        other.ambient == self.ambient
            && other.dim <= self.dim
            && other.rows().all(|r| self.contains_vector(field, r))
    }

    fn check_same(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, found: other.ambient });
        }
        Ok(())
    }

    pub fn sum(&self, field: &Field, other: &Subspace) -> Result<Subspace> {
        self.check_same(other)?;
        let mut rows = self.rows.clone();
        rows.extend_from_slice(&other.rows);
        Ok(Self::from_rows_unchecked(field, self.ambient, rows))
    }

    /// Intersection by the Zassenhaus algorithm.
    pub fn intersect(&self, field: &Field, other: &Subspace) -> Result<Subspace> {
        self.check_same(other)?;
        let n = self.ambient;
        if self.dim == n {
            return Ok(other.clone());
        }
        if other.dim == n {
            return Ok(self.clone());
        }
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(n));
        }
        let w = 2 * n;
        let mut m = Vec::with_capacity((self.dim + other.dim) * w);
        for r in self.rows() {
            m.extend_from_slice(r);
            m.extend_from_slice(r);
        }
        for r in other.rows() {
            m.extend_from_slice(r);
            m.extend(std::iter::repeat_n(0, n));
        }
        let pivots = rref(field, &mut m, w);
        let mut out = Vec::new();
        for (i, &p) in pivots.iter().enumerate() {
            if p >= n {
                out.extend_from_slice(&m[i * w + n..(i + 1) * w]);
            }
        }
        Ok(Self::from_rows_unchecked(field, n, out))
    }

    /// Iterates over every vector of the subspace (all `q^dim` combinations).
    pub fn vectors<'a>(&'a self, field: &'a Field) -> impl Iterator<Item = Vec<Elem>> + 'a {
        let q = field.order();
        let total = q.pow(self.dim as u32);
        (0..total).map(move |mut code| {
            let mut v = vec![0; self.ambient];
            for row in self.rows() {
                let c = (code % q) as Elem;
                code /= q;
                if c != 0 {
                    for (x, &r) in v.iter_mut().zip(row) {
                        *x = field.add(*x, field.mul(c, r));
                    }
                }
            }
            v
        })
    }
}

/// Number of `k`-dimensional subspaces of `F_q^n`.
pub fn gaussian_binomial(n: u32, k: u32, q: u64) -> u128 {
    if k > n {
        return 0;
    }
    let q = q as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= q.pow(n - i) - 1;
        den *= q.pow(i + 1) - 1;
    }
    num / den
}

/// Total number of subspaces of `F_q^n`.
pub fn subspace_count(n: u32, q: u64) -> u128 {
    (0..=n).map(|k| gaussian_binomial(n, k, q)).sum()
}

/// Every subspace of `K^n` satisfying `predicate`, each exactly once, sorted.
pub fn enumerate_subspaces<P>(
    field: &Field,
    n: usize,
    budget: &Budget,
    mut predicate: P,
) -> Result<Vec<Subspace>>
where
    P: FnMut(&Subspace) -> bool,
{
    let total = subspace_count(n as u32, field.order() as u64);
    budget.check_subspaces(total)?;
    let mut out = Vec::new();
    for_each_subspace(field, n, |s| {
        if predicate(&s) {
            out.push(s);
        }
    });
    out.sort();
    Ok(out)
}

/// Calls `f` with every subspace of `K^n` (unsorted, no budget check).
pub fn for_each_subspace<F: FnMut(Subspace)>(field: &Field, n: usize, mut f: F) {
    let q = field.order();
    for mask in 0u64..(1u64 << n) {
        let pivots: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        // free positions: (row, col) with col > pivot(row), col not a pivot
        let free: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(r, &p)| (p + 1..n).filter(|c| mask >> c & 1 == 0).map(move |c| (r, c)))
            .collect();
        let combos = q.pow(free.len() as u32);
        for mut code in 0..combos {
            let mut rows = vec![0; pivots.len() * n];
            for (r, &p) in pivots.iter().enumerate() {
                rows[r * n + p] = 1;
            }
            for &(r, c) in &free {
                rows[r * n + c] = (code % q) as Elem;
                code /= q;
            }
            f(Subspace::from_rref_unchecked(n, rows));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Field {
        Field::new(2, 1).unwrap()
    }

    #[test]
    fn canon_full_space() {
        let f = f2();
        let s = Subspace::span(&f, 2, [&[1, 1][..], &[0, 1][..]]).unwrap();
        assert_eq!(s, Subspace::full(2));
        assert_eq!(s.row(0), &[1, 0]);
        assert_eq!(s.row(1), &[0, 1]);
    }

    #[test]
    fn intersect_coordinate_planes() {
        let f = f2();
        let a = Subspace::span(&f, 3, [&[1, 0, 0][..], &[0, 1, 0][..]]).unwrap();
        let b = Subspace::span(&f, 3, [&[0, 1, 0][..], &[0, 0, 1][..]]).unwrap();
        let i = a.intersect(&f, &b).unwrap();
        assert_eq!(i, Subspace::span(&f, 3, [&[0, 1, 0][..]]).unwrap());
        assert_eq!(a.sum(&f, &b).unwrap(), Subspace::full(3));
    }

    #[test]
    fn mismatched_ambient_rejected() {
        let f = f2();
        assert!(Subspace::full(2).intersect(&f, &Subspace::full(3)).is_err());
        assert!(Subspace::span(&f, 2, [&[1, 0, 0][..]]).is_err());
    }

    #[test]
    fn subspaces_of_f2_cubed() {
        let f = f2();
        let all = enumerate_subspaces(&f, 3, &Budget::default(), |_| true).unwrap();
        assert_eq!(all.len(), 16);
        assert_eq!(subspace_count(3, 2), 1 + 7 + 7 + 1);
        let mut dedup = all.clone();
        dedup.dedup();
        assert_eq!(dedup.len(), 16);
    }

    #[test]
    fn line_has_two_subspaces() {
        for q in [2, 3, 4, 5] {
            let f = Field::with_order(q).unwrap();
            assert_eq!(enumerate_subspaces(&f, 1, &Budget::default(), |_| true).unwrap().len(), 2);
        }
    }

    #[test]
    fn planes_through_e0_avoiding_last_axis() {
        // <e0, f> with f a line of span(e1, e2, e3) other than <e3>: (q^3 - q)/(q - 1)
        for (q, expected) in [(2, 6), (3, 12)] {
            let f = Field::with_order(q).unwrap();
            let pick = |s: &Subspace| {
                s.dim() == 2
                    && s.contains_vector(&f, &[1, 0, 0, 0])
                    && !s.contains_vector(&f, &[0, 0, 0, 1])
            };
            assert_eq!(enumerate_subspaces(&f, 4, &Budget::default(), pick).unwrap().len(), expected);
        }
        // In K^3 avoiding e2 the count is (q^2 - q)/(q - 1) = q.
        let f = f2();
        let pick = |s: &Subspace| {
            s.dim() == 2 && s.contains_vector(&f, &[1, 0, 0]) && !s.contains_vector(&f, &[0, 0, 1])
        };
        assert_eq!(enumerate_subspaces(&f, 3, &Budget::default(), pick).unwrap().len(), 2);
    }

    #[test]
    fn enumeration_budget_guard() {
        let f = Field::with_order(5).unwrap();
        let budget = Budget { max_subspaces: 10, ..Budget::default() };
        assert!(matches!(enumerate_subspaces(&f, 3, &budget, |_| true), Err(Error::Budget { .. })));
    }

    #[test]
    fn vectors_enumerates_span() {
        let f = Field::with_order(3).unwrap();
        let s = Subspace::span(&f, 3, [&[1, 2, 0][..], &[0, 0, 1][..]]).unwrap();
        let vs: Vec<_> = s.vectors(&f).collect();
        assert_eq!(vs.len(), 9);
        assert!(vs.iter().all(|v| s.contains_vector(&f, v)));
    }
}
