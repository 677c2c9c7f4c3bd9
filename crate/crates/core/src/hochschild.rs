//! Hochschild chains over the kernel algebra, the boundaries b and b′, and the gap splitting.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::kernel::{basis_from_json, basis_json, ElementaryKernel};
use crate::lincomb::LinComb;
use crate::scalar::{Rational, Scalar};
use crate::simplicial::SimplicialComplex;
use num_traits::Zero;

/// An elementary tensor `K_0 ⊗ … ⊗ K_p`.
pub type Tuple = Vec<ElementaryKernel>;

#[derive(Clone, Debug, PartialEq)]
pub struct HochschildChain<S = Rational> {
    degree: usize,
    terms: LinComb<Tuple, S>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChainSplit<S = Rational> {
    pub gapped: HochschildChain<S>,
    pub diagonal: HochschildChain<S>,
}

pub(crate) fn sign(k: usize) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Nonvanishing faces of one elementary tensor with their signs. The cyclic face
/// `(K_p ∘ K_0) ⊗ K_1 ⊗ … ⊗ K_{p−1}` is included only when `cyclic` is set.
pub fn tuple_faces(t: &[ElementaryKernel], cyclic: bool) -> Vec<(Tuple, i64)> {
    let p = t.len().saturating_sub(1);
    let mut out = Vec::new();
    if p == 0 {
        return out;
    }
    for k in 0..p {
        if let Some(m) = t[k].compose(&t[k + 1]) {
            let mut face = Vec::with_capacity(p);
            face.extend_from_slice(&t[..k]);
            face.push(m);
            face.extend_from_slice(&t[k + 2..]);
            out.push((face, sign(k)));
        }
    }
    if cyclic {
        if let Some(m) = cyclic_merge(t) {
            out.push((m, sign(p)));
        }
    }
    out
}

fn cyclic_merge(t: &[ElementaryKernel]) -> Option<Tuple> {
    let p = t.len() - 1;
    t[p].compose(&t[0]).map(|m| {
        let mut face = Vec::with_capacity(p);
        face.push(m);
        face.extend_from_slice(&t[1..p]);
        face
    })
}

/// Smallest `r` where factor r's column differs from the row of factor `r+1 mod p+1`.
pub fn find_first_gap(t: &[ElementaryKernel]) -> Option<usize> {
    let len = t.len();
    (0..len).find(|&r| t[r].col != t[(r + 1) % len].row)
}

pub fn is_diagonal_tuple(t: &[ElementaryKernel]) -> bool {
    find_first_gap(t).is_none()
}

/// Squared ε-support radius of one tuple: the metric gap over the cyclic slot sequence
/// `row_0, col_0, row_1, …, col_p` (wrapping `col_p` back to `row_0`).
pub fn tuple_radius(x: &SimplicialComplex, t: &[ElementaryKernel]) -> Result<Rational> {
    let mut slots = Vec::with_capacity(2 * t.len());
    for e in t {
        slots.push(x.position(e.row.simplex)?);
        slots.push(x.position(e.col.simplex)?);
    }
    Ok(cyclic_radius(x, &slots))
}

pub(crate) fn cyclic_radius(x: &SimplicialComplex, slots: &[usize]) -> Rational {
    let n = slots.len();
    let mut best = Rational::zero();
    for i in 0..n {
        let g = x.tables().metric(slots[i], slots[(i + 1) % n]);
        if *g > best {
            best = g.clone();
        }
    }
    best
}

/// Largest pairwise simplicial distance among all slots of one tuple.
pub fn tuple_diameter(x: &SimplicialComplex, t: &[ElementaryKernel]) -> Result<u32> {
    let slots: Vec<_> = t.iter().flat_map(|e| [e.row.simplex, e.col.simplex]).collect();
    let mut best = 0;
    for (i, a) in slots.iter().enumerate() {
        for b in &slots[i + 1..] {
            best = best.max(x.simplicial_distance(*a, *b)?);
        }
    }
    Ok(best)
}

impl<S: Scalar> HochschildChain<S> {
    pub fn zero(degree: usize) -> Self {
        Self { degree, terms: LinComb::new() }
    }

    pub fn from_terms(degree: usize, terms: impl IntoIterator<Item = (Tuple, S)>) -> Result<Self> {
        let terms: LinComb<Tuple, S> = terms.into_iter().collect();
        if let Some(t) = terms.keys().find(|t| t.len() != degree + 1) {
            return Err(Error::Degree(format!("tuple of length {} in a degree-{degree} chain", t.len())));
        }
        Ok(Self { degree, terms })
    }

    pub fn single(t: Tuple, coeff: S) -> Self {
        let degree = t.len() - 1;
        Self { degree, terms: LinComb::single(t, coeff) }
    }

    pub(crate) fn from_lincomb(degree: usize, terms: LinComb<Tuple, S>) -> Self {
        Self { degree, terms }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &LinComb<Tuple, S> {
        &self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Tuple, &S)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn merged_degree(&self, other: &Self) -> usize {
        debug_assert!(self.degree == other.degree || self.is_zero() || other.is_zero());
        if self.is_zero() {
            other.degree
        } else {
            self.degree
        }
    }

    pub fn plus(&self, other: &Self) -> Self {
        Self { degree: self.merged_degree(other), terms: self.terms.plus(&other.terms) }
    }

    pub fn minus(&self, other: &Self) -> Self {
        Self { degree: self.merged_degree(other), terms: self.terms.minus(&other.terms) }
    }

    pub fn scaled(&self, c: &S) -> Self {
        Self { degree: self.degree, terms: self.terms.scaled(c) }
    }

    pub fn filter(&self, keep: impl FnMut(&Tuple) -> bool) -> Self {
        Self { degree: self.degree, terms: self.terms.filter(keep) }
    }

    fn faces(&self, cyclic: bool) -> Self {
        let mut out = LinComb::new();
        for (t, c) in self.terms.iter() {
            for (face, s) in tuple_faces(t, cyclic) {
                out.add_term(face, c.clone() * S::from_i64(s));
            }
        }
        Self { degree: self.degree.saturating_sub(1), terms: out }
    }

    /// Hochschild boundary b; the zero map on degree 0.
    pub fn boundary(&self) -> Self {
        self.faces(true)
    }

    /// Like [`Self::boundary`] but rejects degree-0 input.
    pub fn boundary_strict(&self) -> Result<Self> {
        if self.degree == 0 {
            return Err(Error::Degree("b is not defined on degree 0 in strict mode".into()));
        }
        Ok(self.boundary())
    }

    /// b′: the boundary without the cyclic face.
    pub fn boundary_truncated(&self) -> Self {
        self.faces(false)
    }

    /// The unsigned cyclic face `∂_p`.
    pub fn cyclic_face(&self) -> Self {
        let mut out = LinComb::new();
        if self.degree > 0 {
            for (t, c) in self.terms.iter() {
                if let Some(face) = cyclic_merge(t) {
                    out.add_term(face, c.clone());
                }
            }
        }
        Self { degree: self.degree.saturating_sub(1), terms: out }
    }

    pub fn split(&self) -> ChainSplit<S> {
        ChainSplit {
            gapped: self.filter(|t| find_first_gap(t).is_some()),
            diagonal: self.filter(|t| is_diagonal_tuple(t)),
        }
    }

    pub fn is_gapped(&self) -> bool {
        self.terms.keys().all(|t| find_first_gap(t).is_some())
    }

    pub fn is_diagonal(&self) -> bool {
        self.terms.keys().all(|t| is_diagonal_tuple(t))
    }

    pub fn squared_norm(&self) -> Rational {
        self.terms.squared_norm()
    }

    pub fn diameter(&self, x: &SimplicialComplex) -> Result<u32> {
        self.terms.keys().try_fold(0, |acc, t| Ok(acc.max(tuple_diameter(x, t)?)))
    }

    /// Squared ε-support radius; the chain is ε-local iff this is below ε².
    pub fn epsilon_support_radius(&self, x: &SimplicialComplex) -> Result<Rational> {
        self.terms.keys().try_fold(Rational::zero(), |acc, t| {
            let r = tuple_radius(x, t)?;
            Ok(if r > acc { r } else { acc })
        })
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(t, c)| {
                let tuple: Vec<Value> =
                    t.iter().map(|e| json!({"row": basis_json(&e.row), "col": basis_json(&e.col)})).collect();
                json!({"tuple": tuple, "coeff": c.to_json()})
            })
            .collect();
        json!({"degree": self.degree, "terms": terms})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let degree = v["degree"].as_u64().ok_or_else(|| Error::Parse("chain needs a degree".into()))? as usize;
        let items = v["terms"].as_array().ok_or_else(|| Error::Parse("chain needs a term list".into()))?;
        let terms = items
            .iter()
            .map(|item| {
                let tuple = item["tuple"]
                    .as_array()
                    .ok_or_else(|| Error::Parse("term needs a tuple".into()))?
                    .iter()
                    .map(|f| Ok(ElementaryKernel::new(basis_from_json(&f["row"])?, basis_from_json(&f["col"])?)))
                    .collect::<Result<Tuple>>()?;
                Ok((tuple, S::from_json(&item["coeff"])?))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_terms(degree, terms)
    }
}

/// Exposes the map in the functional style used by the identity battery.
pub fn boundary<S: Scalar>(k: &HochschildChain<S>) -> HochschildChain<S> {
    k.boundary()
}

pub fn boundary_truncated<S: Scalar>(k: &HochschildChain<S>) -> HochschildChain<S> {
    k.boundary_truncated()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::kernel::BasisIndex;
    use crate::scalar::rational;

    fn ek(a: (u32, u32), b: (u32, u32)) -> ElementaryKernel {
        ElementaryKernel::new(BasisIndex::new(a.0, a.1), BasisIndex::new(b.0, b.1))
    }

    fn one() -> Rational {
        rational(1, 1)
    }

    #[test]
    fn degree_one_boundary_by_hand() {
        let (al, be) = (0, 1);
        let k = HochschildChain::single(vec![ek((al, 0), (be, 1)), ek((be, 1), (al, 0))], one());
        let expected = HochschildChain::from_terms(
            0,
            [(vec![ek((al, 0), (al, 0))], one()), (vec![ek((be, 1), (be, 1))], -one())],
        )
        .unwrap();
        assert_eq!(k.boundary(), expected);
        assert_eq!(k.boundary_truncated(), HochschildChain::single(vec![ek((al, 0), (al, 0))], one()));
    }

    #[test]
    fn non_composable_factors_have_zero_boundary() {
        let k = HochschildChain::single(vec![ek((0, 0), (1, 1)), ek((2, 0), (3, 0))], one());
        assert!(k.boundary().is_zero());
        assert!(HochschildChain::<Rational>::zero(1).boundary_truncated().is_zero());
    }

    #[test]
    fn degree_zero_boundary() {
        let k = HochschildChain::single(vec![ek((0, 0), (0, 0))], one());
        assert!(k.boundary().is_zero());
        assert!(matches!(k.boundary_strict(), Err(Error::Degree(_))));
    }

    #[test]
    fn first_gap_examples() {
        let (al, be) = (0, 1);
        assert_eq!(find_first_gap(&[ek((al, 0), (be, 1)), ek((be, 1), (al, 0))]), None);
        assert_eq!(find_first_gap(&[ek((al, 0), (be, 1)), ek((be, 0), (al, 0))]), Some(0));
        assert_eq!(find_first_gap(&[ek((al, 0), (al, 0))]), None);
        assert_eq!(find_first_gap(&[ek((al, 0), (al, 1))]), Some(0));
        assert_eq!(find_first_gap(&[ek((al, 0), (be, 1)), ek((be, 1), (be, 0))]), Some(1));
    }

    #[test]
    fn split_pure_parts() {
        let diag = HochschildChain::single(vec![ek((0, 0), (1, 1)), ek((1, 1), (0, 0))], one());
        let gapped = HochschildChain::single(vec![ek((0, 0), (1, 1)), ek((1, 0), (0, 0))], one());
        assert_eq!(diag.split(), ChainSplit { gapped: HochschildChain::zero(1), diagonal: diag.clone() });
        assert_eq!(gapped.split(), ChainSplit { gapped: gapped.clone(), diagonal: HochschildChain::zero(1) });
    }

    #[test]
    fn norms_diameters_radii() {
        let x = fixtures::hexagon();
        let t1 = vec![ek((0, 0), (0, 1)), ek((0, 1), (0, 0))];
        let t2 = vec![ek((0, 0), (1, 0)), ek((1, 0), (0, 0))];
        let k = HochschildChain::from_terms(1, [(t1.clone(), rational(3, 1)), (t2.clone(), rational(4, 1))]).unwrap();
        assert_eq!(k.squared_norm(), rational(25, 1));
        let on_one = HochschildChain::single(t1, one());
        assert_eq!(on_one.diameter(&x).unwrap(), 0);
        assert_eq!(on_one.epsilon_support_radius(&x).unwrap(), x.metric_gap(0, 0).unwrap());
        assert_eq!(HochschildChain::single(t2, one()).diameter(&x).unwrap(), 0);
        assert!(HochschildChain::<Rational>::zero(2).epsilon_support_radius(&x).unwrap().is_zero());
    }

    #[test]
    fn json_round_trip() {
        let k = HochschildChain::single(vec![ek((0, 0), (1, 1)), ek((1, 0), (0, 0))], rational(-2, 3));
        assert_eq!(HochschildChain::<Rational>::from_json(&k.to_json()).unwrap(), k);
    }
}
