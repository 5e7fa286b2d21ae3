//! Covering relations and the single-cut update.
//!
//! A vertex `u` of `P` is covered by `v` when swapping `u` for `v` in the
//! vertex list still spans a superset of `P`; equivalently every row tight at
//! `u` is reached or exceeded at `v`. These checks need exact incidence and
//! are meant for the rational backend.

use num_rational::BigRational;

use crate::hrep::{index_set, HPolytope, Rel};
use crate::numerics::{dot, Scalar};
use crate::verify::{brute_force_vertices, point_in_vpolytope, VerifyError};

/// Side of a point relative to a new row `h` with tolerance `ε`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Region {
    /// `hᵀx < 1`
    Minus,
    /// `1 ≤ hᵀx ≤ 1+ε`
    Zero,
    /// `hᵀx > 1+ε`
    Plus,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CutRegions<S> {
    pub h: Vec<S>,
    pub eps: S,
}

impl<S: Scalar> CutRegions<S> {
    pub fn new(h: Vec<S>, eps: S) -> Self {
        CutRegions { h, eps }
    }

    pub fn region(&self, x: &[S]) -> Region {
        let t = dot(&self.h, x);
        if t < S::one() {
            Region::Minus
        } else if t > S::one() + self.eps.clone() {
            Region::Plus
        } else {
            Region::Zero
        }
    }

    /// `hᵀx ≤ 1`
    pub fn in_halfspace(&self, x: &[S]) -> bool {
        dot(&self.h, x) <= S::one()
    }
}

fn subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|i| b.contains(i))
}

/// `J_=(u) ⊆ J_≥(v)`.
pub fn covers<S: Scalar>(p: &HPolytope<S>, u: &[S], v: &[S]) -> bool {
    subset(&index_set(p, u, Rel::Eq), &index_set(p, v, Rel::Ge))
}

/// `u ∈ conv((vert P \ {u}) ∪ {v})`, decided by LP against the given vertex list.
pub fn covers_by_definition_with(vertices: &[Vec<BigRational>], u: &[BigRational], v: &[BigRational]) -> bool {
    let mut pts: Vec<Vec<BigRational>> = vertices.iter().filter(|w| w.as_slice() != u).cloned().collect();
    pts.push(v.to_vec());
    point_in_vpolytope(u, &pts)
}

/// As [`covers_by_definition_with`], enumerating the vertices of `P` first.
pub fn covers_by_definition(p: &HPolytope<BigRational>, u: &[BigRational], v: &[BigRational]) -> Result<bool, VerifyError> {
    Ok(covers_by_definition_with(&brute_force_vertices(p)?, u, v))
}

/// `V ⊆ (1+ε)P` and each vertex of `P` is covered by a single element of `V`.
pub fn is_strong_approx_vrep(p: &HPolytope<BigRational>, v: &[Vec<BigRational>], eps: &BigRational) -> Result<bool, VerifyError> {
    let factor = <BigRational as Scalar>::one() + eps.clone();
    if !v.iter().all(|x| p.contains_scaled(x, &factor)) {
        return Ok(false);
    }
    let verts = brute_force_vertices(p)?;
    Ok(verts.iter().all(|u| v.iter().any(|x| covers(p, u, x))))
}

/// One cut of the point set by the row `h`: every pair from the minus and
/// plus sides whose `J_≥` sets share at least `d-1` rows contributes the
/// point of their segment at level `hᵀv = 1+ε/2`; then the plus side is
/// dropped. Output order: surviving input points, then new points.
pub fn basic_cut<S: Scalar>(p: &HPolytope<S>, cut: &CutRegions<S>, v: &[Vec<S>]) -> Vec<Vec<S>> {
    let d = p.d();
    let regions: Vec<Region> = v.iter().map(|x| cut.region(x)).collect();
    let ge: Vec<Vec<usize>> = v.iter().map(|x| index_set(p, x, Rel::Ge)).collect();
    let target = S::one() + cut.eps.clone() / S::from_i64(2);
    let mut out: Vec<Vec<S>> = v.iter().zip(&regions).filter(|(_, r)| **r != Region::Plus).map(|(x, _)| x.clone()).collect();
    for (i, a) in v.iter().enumerate().filter(|(i, _)| regions[*i] == Region::Minus) {
        for (j, b) in v.iter().enumerate().filter(|(j, _)| regions[*j] == Region::Plus) {
            let shared = ge[i].iter().filter(|k| ge[j].contains(k)).count();
            if shared + 1 < d {
                continue;
            }
            let (ha, hb) = (dot(&cut.h, a), dot(&cut.h, b));
            let t = (target.clone() - ha.clone()) / (hb - ha);
            out.push(a.iter().zip(b).map(|(x, y)| x.clone() + t.clone() * (y.clone() - x.clone())).collect());
        }
    }
    out
}

/// Why a vertex has no acceptable cover.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HFailure {
    /// No element of `V` covers the vertex at all.
    Uncovered,
    /// Every cover violates `u ∈ H_+ ∪ H_0 ⇒ v ∈ H_+ ∪ H_0`.
    A1,
    /// Every cover violates `u ∈ H_- ⇒ v ∈ H_- ∪ H_0`.
    A2,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HCorrectReport {
    pub correct: bool,
    /// Offending vertices of `P` with the reason.
    pub failures: Vec<(Vec<BigRational>, HFailure)>,
}

/// Every vertex `u` of `P` has a cover `v ∈ V` that respects the side of
/// `u` with respect to the cut.
pub fn is_h_correct(p: &HPolytope<BigRational>, v: &[Vec<BigRational>], cut: &CutRegions<BigRational>) -> Result<HCorrectReport, VerifyError> {
    let verts = brute_force_vertices(p)?;
    let mut failures = Vec::new();
    for u in verts {
        let ru = cut.region(&u);
        let covering: Vec<&Vec<BigRational>> = v.iter().filter(|x| covers(p, &u, x)).collect();
        if covering.is_empty() {
            failures.push((u, HFailure::Uncovered));
            continue;
        }
        let ok = covering.iter().any(|x| {
            let rv = cut.region(x);
            match ru {
                Region::Minus => rv != Region::Plus,
                _ => rv != Region::Minus,
            }
        });
        if !ok {
            failures.push((u, if ru == Region::Minus { HFailure::A2 } else { HFailure::A1 }));
        }
    }
    Ok(HCorrectReport { correct: failures.is_empty(), failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::ratio;

    fn square() -> HPolytope<BigRational> {
        let r = |a, b| vec![ratio(a, 1), ratio(b, 1)];
        HPolytope::new(vec![r(1, 0), r(-1, 0), r(0, 1), r(0, -1)]).unwrap()
    }

    fn corners() -> Vec<Vec<BigRational>> {
        [(1, 1), (-1, 1), (-1, -1), (1, -1)].iter().map(|&(a, b)| vec![ratio(a, 1), ratio(b, 1)]).collect()
    }

    #[test]
    fn regions() {
        let c = CutRegions::new(vec![ratio(1, 1), ratio(0, 1)], ratio(1, 2));
        assert_eq!(c.region(&[ratio(1, 1), ratio(5, 1)]), Region::Zero);
        assert_eq!(c.region(&[ratio(3, 2), ratio(0, 1)]), Region::Zero);
        assert_eq!(c.region(&[ratio(2, 1), ratio(0, 1)]), Region::Plus);
        assert_eq!(c.region(&[ratio(0, 1), ratio(0, 1)]), Region::Minus);
    }

    #[test]
    fn vertices_cover_themselves() {
        let p = square();
        for u in corners() {
            assert!(covers(&p, &u, &u));
            assert!(covers_by_definition(&p, &u, &u).unwrap());
        }
        assert!(is_strong_approx_vrep(&p, &corners(), &ratio(0, 1)).unwrap());
    }

    #[test]
    fn corner_cut_off_square() {
        // x + y ≤ 1 removes the corner (1,1)
        let p = square();
        let cut = CutRegions::new(vec![ratio(1, 1), ratio(1, 1)], ratio(1, 5));
        let out = basic_cut(&p, &cut, &corners());
        assert_eq!(out.len(), 5);
        assert!(!out.contains(&vec![ratio(1, 1), ratio(1, 1)]));
        for x in &out[3..] {
            assert_eq!(dot(&cut.h, x), ratio(11, 10));
        }
    }

    #[test]
    fn redundant_cut_changes_nothing() {
        let p = square();
        let cut = CutRegions::new(vec![ratio(1, 4), ratio(0, 1)], ratio(1, 5));
        assert_eq!(basic_cut(&p, &cut, &corners()), corners());
        assert!(is_h_correct(&p, &corners(), &cut).unwrap().correct);
    }
}
