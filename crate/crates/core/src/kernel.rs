//! The truncated kernel algebra spanned by elementary kernels `e^i_α × ē^j_β`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use crate::scalar::{Rational, Scalar};
use crate::simplicial::{SimplexId, SimplicialComplex};

/// Basis function `index` on maximal simplex `simplex`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BasisIndex {
    pub simplex: SimplexId,
    pub index: u32,
}

impl BasisIndex {
    pub const fn new(simplex: SimplexId, index: u32) -> Self {
        Self { simplex, index }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ElementaryKernel {
    pub row: BasisIndex,
    pub col: BasisIndex,
}

impl ElementaryKernel {
    pub const fn new(row: BasisIndex, col: BasisIndex) -> Self {
        Self { row, col }
    }

    /// `self ∘ other`, nonzero exactly when the inner basis elements coincide.
    pub fn compose(&self, other: &ElementaryKernel) -> Option<ElementaryKernel> {
        (self.col == other.row).then_some(ElementaryKernel { row: self.row, col: other.col })
    }

    pub fn is_diagonal(&self) -> bool {
        self.row == self.col
    }
}

pub type Kernel<S = Rational> = LinComb<ElementaryKernel, S>;

/// Coefficient vector over basis functions.
pub type CoefficientVector<S = Rational> = BTreeMap<BasisIndex, S>;

pub fn compose_elementary<S: Scalar>(a: &ElementaryKernel, b: &ElementaryKernel) -> Kernel<S> {
    a.compose(b).map(|e| Kernel::single(e, S::one())).unwrap_or_default()
}

pub fn compose<S: Scalar>(k: &Kernel<S>, l: &Kernel<S>) -> Kernel<S> {
    let mut by_row: BTreeMap<BasisIndex, Vec<(&ElementaryKernel, &S)>> = BTreeMap::new();
    for (e, c) in l.iter() {
        by_row.entry(e.row).or_default().push((e, c));
    }
    let mut out = Kernel::new();
    for (a, ca) in k.iter() {
        for (b, cb) in by_row.get(&a.col).into_iter().flatten() {
            out.add_term(ElementaryKernel::new(a.row, b.col), ca.clone() * (*cb).clone());
        }
    }
    out
}

/// `(Kφ)(i,α) = Σ K^{αβ}_{ij} φ(j,β)`.
pub fn apply<S: Scalar>(k: &Kernel<S>, phi: &CoefficientVector<S>) -> CoefficientVector<S> {
    let mut out: CoefficientVector<S> = BTreeMap::new();
    for (e, c) in k.iter() {
        if let Some(v) = phi.get(&e.col) {
            let entry = out.entry(e.row).or_insert_with(S::zero);
            *entry = entry.clone() + c.clone() * v.clone();
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

pub fn squared_norm<S: Scalar>(k: &Kernel<S>) -> Rational {
    k.squared_norm()
}

/// Largest simplicial distance between the row and column support of any term.
pub fn kernel_diameter<S: Scalar>(x: &SimplicialComplex, k: &Kernel<S>) -> Result<u32> {
    k.keys().try_fold(0, |acc, e| Ok(acc.max(x.simplicial_distance(e.row.simplex, e.col.simplex)?)))
}

/// Checks that every basis index refers to a simplex of `x` and lies below `m`.
pub fn validate_index(x: &SimplicialComplex, m: u32, b: &BasisIndex) -> Result<()> {
    if !x.contains(b.simplex) {
        return Err(Error::UnknownSimplex(b.simplex));
    }
    if b.index >= m {
        return Err(Error::Validation(format!("basis index {} not below truncation {m}", b.index)));
    }
    Ok(())
}

pub(crate) fn basis_json(b: &BasisIndex) -> Value {
    json!({"simplex": b.simplex, "index": b.index})
}

pub(crate) fn basis_from_json(v: &Value) -> Result<BasisIndex> {
    serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))
}

pub fn kernel_to_json<S: Scalar>(k: &Kernel<S>) -> Value {
    Value::Array(
        k.iter()
            .map(|(e, c)| json!({"row": basis_json(&e.row), "col": basis_json(&e.col), "coeff": c.to_json()}))
            .collect(),
    )
}

pub fn kernel_from_json<S: Scalar>(v: &Value) -> Result<Kernel<S>> {
    let items = v.as_array().ok_or_else(|| Error::Parse("kernel must be a JSON list".into()))?;
    items
        .iter()
        .map(|t| {
            let row = basis_from_json(&t["row"])?;
            let col = basis_from_json(&t["col"])?;
            Ok((ElementaryKernel::new(row, col), S::from_json(&t["coeff"])?))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::scalar::rational;

    fn ek(a: (u32, u32), b: (u32, u32)) -> ElementaryKernel {
        ElementaryKernel::new(BasisIndex::new(a.0, a.1), BasisIndex::new(b.0, b.1))
    }

    #[test]
    fn elementary_composition() {
        let (al, be, ga) = (0, 1, 2);
        let k: Kernel = compose_elementary(&ek((al, 0), (be, 1)), &ek((be, 1), (ga, 0)));
        assert_eq!(k, Kernel::single(ek((al, 0), (ga, 0)), rational(1, 1)));
        assert!(compose_elementary::<Rational>(&ek((al, 0), (be, 1)), &ek((be, 0), (ga, 0))).is_empty());
        assert!(compose_elementary::<Rational>(&ek((al, 0), (be, 1)), &ek((ga, 1), (ga, 0))).is_empty());
    }

    #[test]
    fn scaled_composition_and_zero() {
        let e = ek((0, 0), (0, 0));
        let k = Kernel::single(e, rational(2, 1));
        let l = Kernel::single(e, rational(3, 1));
        assert_eq!(compose(&k, &l), Kernel::single(e, rational(6, 1)));
        assert!(compose(&k, &Kernel::new()).is_empty());
    }

    #[test]
    fn apply_unit_vector() {
        let k: Kernel = Kernel::single(ek((0, 0), (1, 1)), rational(1, 1));
        let phi: CoefficientVector = [(BasisIndex::new(1, 1), rational(1, 1))].into();
        let out = apply(&k, &phi);
        assert_eq!(out, [(BasisIndex::new(0, 0), rational(1, 1))].into());
        assert!(apply(&k, &CoefficientVector::new()).is_empty());
    }

    #[test]
    fn norms() {
        let k: Kernel = [(ek((0, 0), (1, 0)), rational(3, 1)), (ek((1, 0), (1, 0)), rational(4, 1))].into_iter().collect();
        assert_eq!(squared_norm(&k), rational(25, 1));
        assert_eq!(squared_norm(&Kernel::single(ek((0, 0), (0, 0)), rational(1, 1))), rational(1, 1));
    }

    #[test]
    fn diameters_on_hexagon() {
        let x = fixtures::hexagon();
        let same: Kernel = Kernel::single(ek((2, 0), (2, 1)), rational(1, 1));
        assert_eq!(kernel_diameter(&x, &same).unwrap(), 0);
        let opposite: Kernel = Kernel::single(ek((0, 0), (3, 0)), rational(1, 1));
        assert_eq!(kernel_diameter(&x, &opposite).unwrap(), 2);
        assert_eq!(kernel_diameter::<Rational>(&x, &Kernel::new()).unwrap(), 0);
    }

    #[test]
    fn json_round_trip() {
        let k: Kernel = [(ek((0, 0), (1, 0)), rational(-3, 2)), (ek((1, 0), (1, 1)), rational(4, 1))].into_iter().collect();
        let v = kernel_to_json(&k);
        assert_eq!(v[0]["coeff"], "-3/2");
        assert_eq!(kernel_from_json::<Rational>(&v).unwrap(), k);
    }
}
