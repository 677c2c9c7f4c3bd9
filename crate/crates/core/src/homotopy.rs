//! Contracting homotopies s (gapped part), S (diagonal part), the operator θ and the composite S̃.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::hochschild::{find_first_gap, sign, HochschildChain, Tuple};
use crate::kernel::{BasisIndex, ElementaryKernel};
use crate::lincomb::LinComb;
use crate::scalar::Scalar;
use crate::simplicial::{SimplexId, SimplicialComplex};

/// The distinguished basis element `I_α` chosen on every simplex.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DistinguishedBasis {
    pub default_index: u32,
    pub overrides: BTreeMap<SimplexId, u32>,
}

impl DistinguishedBasis {
    pub fn index(&self, simplex: SimplexId) -> u32 {
        self.overrides.get(&simplex).copied().unwrap_or(self.default_index)
    }

    pub fn at(&self, simplex: SimplexId) -> BasisIndex {
        BasisIndex::new(simplex, self.index(simplex))
    }

    pub fn validate(&self, x: &SimplicialComplex, m: u32) -> Result<()> {
        for id in x.simplex_ids() {
            if self.index(id) >= m {
                return Err(Error::Validation(format!("distinguished index on simplex {id} is not below {m}")));
            }
        }
        if let Some(id) = self.overrides.keys().find(|id| !x.contains(**id)) {
            return Err(Error::UnknownSimplex(*id));
        }
        Ok(())
    }

    pub fn is_reduced(&self, b: &BasisIndex) -> bool {
        b.index == self.index(b.simplex)
    }
}

/// Every row and column index of the tuple is the distinguished one.
pub fn is_reduced_tuple(t: &[ElementaryKernel], i: &DistinguishedBasis) -> bool {
    t.iter().all(|e| i.is_reduced(&e.row) && i.is_reduced(&e.col))
}

pub fn is_reduced_chain<S: Scalar>(k: &HochschildChain<S>, i: &DistinguishedBasis) -> bool {
    k.is_diagonal() && k.iter().all(|(t, _)| is_reduced_tuple(t, i))
}

fn map_terms<S: Scalar>(
    k: &HochschildChain<S>,
    degree: usize,
    mut f: impl FnMut(&Tuple) -> Vec<(Tuple, i64)>,
) -> HochschildChain<S> {
    let mut out = LinComb::new();
    for (t, c) in k.iter() {
        for (image, s) in f(t) {
            out.add_term(image, c.clone() * S::from_i64(s));
        }
    }
    HochschildChain::from_lincomb(degree, out)
}

/// Homotopy on the gapped summand: at the first gap r (factor r's column `b`),
/// inserts `(b → b)` after factor r with sign (−1)^r.
pub fn homotopy_s<S: Scalar>(k: &HochschildChain<S>) -> Result<HochschildChain<S>> {
    if !k.is_gapped() {
        return Err(Error::NotGapped);
    }
    Ok(map_terms(k, k.degree() + 1, |t| {
        let r = find_first_gap(t).expect("gapped term");
        vec![(insert_after(t, r, ElementaryKernel::new(t[r].col, t[r].col)), sign(r))]
    }))
}

pub(crate) fn insert_after(t: &[ElementaryKernel], r: usize, e: ElementaryKernel) -> Tuple {
    let mut out = Vec::with_capacity(t.len() + 1);
    out.extend_from_slice(&t[..=r]);
    out.push(e);
    out.extend_from_slice(&t[r + 1..]);
    out
}

/// Homotopy on the diagonal summand: routes the first factor `a_0 → a_1` through `I_{α_0}`.
pub fn homotopy_big_s<S: Scalar>(k: &HochschildChain<S>, i: &DistinguishedBasis) -> Result<HochschildChain<S>> {
    if !k.is_diagonal() {
        return Err(Error::NotDiagonal);
    }
    Ok(map_terms(k, k.degree() + 1, |t| {
        let via = i.at(t[0].row.simplex);
        let mut out = Vec::with_capacity(t.len() + 1);
        out.push(ElementaryKernel::new(t[0].row, via));
        out.push(ElementaryKernel::new(via, t[0].col));
        out.extend_from_slice(&t[1..]);
        vec![(out, 1)]
    }))
}

/// θ on diagonal chains of degree p ≥ 1. For the term `(a_0→a_1)(a_1→a_2)…(a_p→a_0)`:
/// `(−1)^p [(a_p→I_{α_0})(I_{α_0}→a_1) − (a_p→I_{α_p})(I_{α_p}→a_1)] ⊗ (a_1→a_2)…(a_{p−1}→a_p)`.
pub fn operator_theta<S: Scalar>(k: &HochschildChain<S>, i: &DistinguishedBasis) -> Result<HochschildChain<S>> {
    if k.degree() == 0 {
        return Err(Error::Degree("θ is defined by its closed form only for degree ≥ 1".into()));
    }
    theta_any(k, i)
}

/// θ extended to degree 0 by `θ_0 := Id − b S_0`, which sends `(a→a)` to `(I_α→I_α)`.
pub fn theta_any<S: Scalar>(k: &HochschildChain<S>, i: &DistinguishedBasis) -> Result<HochschildChain<S>> {
    if !k.is_diagonal() {
        return Err(Error::NotDiagonal);
    }
    let p = k.degree();
    Ok(map_terms(k, p, |t| {
        if p == 0 {
            let via = i.at(t[0].row.simplex);
            return vec![(vec![ElementaryKernel::new(via, via)], 1)];
        }
        let a1 = t[0].col;
        let ap = t[p].row;
        let tail = &t[1..p];
        let mut images = Vec::with_capacity(2);
        for (via, s) in [(i.at(t[0].row.simplex), sign(p)), (i.at(ap.simplex), -sign(p))] {
            let mut out = Vec::with_capacity(p + 1);
            out.push(ElementaryKernel::new(ap, via));
            out.push(ElementaryKernel::new(via, a1));
            out.extend_from_slice(tail);
            images.push((out, s));
        }
        images
    }))
}

pub fn theta_power<S: Scalar>(
    k: &HochschildChain<S>,
    i: &DistinguishedBasis,
    power: usize,
) -> Result<HochschildChain<S>> {
    (0..power).try_fold(k.clone(), |acc, _| theta_any(&acc, i))
}

/// `(1 + θ + … + θ^top) S K`, accumulated by repeated application.
pub fn s_tilde_with_top_power<S: Scalar>(
    k: &HochschildChain<S>,
    i: &DistinguishedBasis,
    top: usize,
) -> Result<HochschildChain<S>> {
    let mut term = homotopy_big_s(k, i)?;
    let mut sum = term.clone();
    for _ in 0..top {
        term = theta_any(&term, i)?;
        sum = sum.plus(&term);
    }
    Ok(sum)
}

/// `S̃_p = (1 + θ + … + θ^{p+1}) S_p`.
pub fn operator_s_tilde<S: Scalar>(k: &HochschildChain<S>, i: &DistinguishedBasis) -> Result<HochschildChain<S>> {
    s_tilde_with_top_power(k, i, k.degree() + 1)
}

/// Splits a diagonal cycle `K` as `θ^{p+2} K + b(S̃ K)`; returns the reduced representative and the witness.
pub fn reduce_cycle_to_ci<S: Scalar>(
    k: &HochschildChain<S>,
    i: &DistinguishedBasis,
) -> Result<(HochschildChain<S>, HochschildChain<S>)> {
    if !k.is_diagonal() {
        return Err(Error::NotDiagonal);
    }
    if !k.boundary().is_zero() {
        return Err(Error::NotACycle);
    }
    let rep = theta_power(k, i, k.degree() + 2)?;
    let witness = operator_s_tilde(k, i)?;
    debug_assert!(rep.plus(&witness.boundary()) == *k);
    Ok((rep, witness))
}

/// Given a reduced cycle `K = bL` with `L` diagonal, returns `S̃ K + θ^{p+2} L`, a reduced chain bounding `K`.
pub fn lift_boundary_witness<S: Scalar>(
    k: &HochschildChain<S>,
    l: &HochschildChain<S>,
    i: &DistinguishedBasis,
) -> Result<HochschildChain<S>> {
    if !is_reduced_chain(k, i) {
        return Err(Error::Precondition("K must be a reduced diagonal chain".into()));
    }
    if !l.is_diagonal() {
        return Err(Error::NotDiagonal);
    }
    if l.boundary() != *k || (l.degree() != k.degree() + 1 && !l.is_zero()) {
        return Err(Error::Precondition("b(L) differs from K".into()));
    }
    let p = k.degree();
    let lifted = operator_s_tilde(k, i)?.plus(&theta_power(l, i, p + 2)?);
    Ok(HochschildChain::from_lincomb(p + 1, lifted.terms().clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rational, Rational};

    fn bi(s: u32, i: u32) -> BasisIndex {
        BasisIndex::new(s, i)
    }

    fn ek(a: BasisIndex, b: BasisIndex) -> ElementaryKernel {
        ElementaryKernel::new(a, b)
    }

    fn one() -> Rational {
        rational(1, 1)
    }

    #[test]
    fn s_degree_zero_appends() {
        let k = HochschildChain::single(vec![ek(bi(0, 0), bi(1, 1))], one());
        let expected = HochschildChain::single(vec![ek(bi(0, 0), bi(1, 1)), ek(bi(1, 1), bi(1, 1))], one());
        assert_eq!(homotopy_s(&k).unwrap(), expected);
    }

    #[test]
    fn s_degree_one_gap_at_zero() {
        let k = HochschildChain::single(vec![ek(bi(0, 0), bi(1, 1)), ek(bi(1, 0), bi(0, 0))], one());
        let expected = HochschildChain::single(
            vec![ek(bi(0, 0), bi(1, 1)), ek(bi(1, 1), bi(1, 1)), ek(bi(1, 0), bi(0, 0))],
            one(),
        );
        assert_eq!(homotopy_s(&k).unwrap(), expected);
    }

    #[test]
    fn s_rejects_diagonal() {
        let k = HochschildChain::single(vec![ek(bi(0, 1), bi(0, 1))], one());
        assert_eq!(homotopy_s(&k), Err(Error::NotGapped));
    }

    #[test]
    fn big_s_routes_through_distinguished() {
        let i = DistinguishedBasis::default();
        let k = HochschildChain::single(vec![ek(bi(0, 1), bi(1, 1)), ek(bi(1, 1), bi(0, 1))], one());
        let expected = HochschildChain::single(
            vec![ek(bi(0, 1), bi(0, 0)), ek(bi(0, 0), bi(1, 1)), ek(bi(1, 1), bi(0, 1))],
            one(),
        );
        assert_eq!(homotopy_big_s(&k, &i).unwrap(), expected);
        let gapped = HochschildChain::single(vec![ek(bi(0, 1), bi(1, 1))], one());
        assert_eq!(homotopy_big_s(&gapped, &i), Err(Error::NotDiagonal));
    }

    #[test]
    fn theta_degree_one_closed_form() {
        let i = DistinguishedBasis::default();
        let (a0, a1) = (bi(0, 1), bi(1, 1));
        let k = HochschildChain::single(vec![ek(a0, a1), ek(a1, a0)], one());
        let expected = HochschildChain::from_terms(
            1,
            [
                (vec![ek(a1, bi(0, 0)), ek(bi(0, 0), a1)], -one()),
                (vec![ek(a1, bi(1, 0)), ek(bi(1, 0), a1)], one()),
            ],
        )
        .unwrap();
        assert_eq!(operator_theta(&k, &i).unwrap(), expected);
        let d0 = HochschildChain::single(vec![ek(a0, a0)], one());
        assert!(matches!(operator_theta(&d0, &i), Err(Error::Degree(_))));
        assert_eq!(theta_any(&d0, &i).unwrap(), HochschildChain::single(vec![ek(bi(0, 0), bi(0, 0))], one()));
    }

    #[test]
    fn zero_inputs() {
        let i = DistinguishedBasis::default();
        let z = HochschildChain::<Rational>::zero(1);
        assert!(operator_s_tilde(&z, &i).unwrap().is_zero());
        let (rep, witness) = reduce_cycle_to_ci(&z, &i).unwrap();
        assert!(rep.is_zero() && witness.is_zero());
    }

    #[test]
    fn reduce_rejects_non_cycles() {
        let i = DistinguishedBasis::default();
        let k = HochschildChain::single(vec![ek(bi(0, 1), bi(1, 1)), ek(bi(1, 1), bi(0, 1))], one());
        assert_eq!(reduce_cycle_to_ci(&k, &i), Err(Error::NotACycle));
    }

    #[test]
    fn lift_rejects_mismatched_boundary() {
        let i = DistinguishedBasis::default();
        let k = HochschildChain::single(vec![ek(bi(0, 0), bi(0, 0))], one());
        let l = HochschildChain::<Rational>::zero(1);
        assert!(matches!(lift_boundary_witness(&k, &l, &i), Err(Error::Precondition(_))));
    }
}
