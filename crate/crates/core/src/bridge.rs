//! Symbol chains of column vertices, simplex-constant Alexander-Spanier chains and cochains,
//! and the maps relating them to diagonal Hochschild chains.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::hochschild::{sign, HochschildChain, Tuple};
use crate::homotopy::DistinguishedBasis;
use crate::kernel::{basis_from_json, basis_json, BasisIndex, ElementaryKernel};
use crate::lincomb::LinComb;
use crate::locality::Locality;
use crate::scalar::{Rational, Scalar};
use crate::simplicial::{SimplexId, SimplicialComplex};

/// Chain of ordered vertex tuples with the alternating deletion boundary.
#[derive(Clone, Debug, PartialEq)]
pub struct TupleChain<V: Ord, S> {
    degree: usize,
    terms: LinComb<Vec<V>, S>,
}

/// Tuples of column vertices `[i, α]`.
pub type SymbolChain<S = Rational> = TupleChain<BasisIndex, S>;
/// Tuples of maximal simplices, read as simplex-constant functions on `X^{p+1}`.
pub type AsChain<S = Rational> = TupleChain<SimplexId, S>;

/// `Σ_k (−1)^k (t without slot k)`.
pub fn deletion_faces<V: Clone>(t: &[V]) -> Vec<(Vec<V>, i64)> {
    if t.len() < 2 {
        return Vec::new();
    }
    (0..t.len())
        .map(|k| {
            let mut face = t.to_vec();
            face.remove(k);
            (face, sign(k))
        })
        .collect()
}

impl<V: Ord + Clone, S: Scalar> TupleChain<V, S> {
    pub fn zero(degree: usize) -> Self {
        Self { degree, terms: LinComb::new() }
    }

    pub fn from_terms(degree: usize, terms: impl IntoIterator<Item = (Vec<V>, S)>) -> Result<Self> {
        let terms: LinComb<Vec<V>, S> = terms.into_iter().collect();
        if let Some(t) = terms.keys().find(|t| t.len() != degree + 1) {
            return Err(Error::Degree(format!("tuple of length {} in a degree-{degree} chain", t.len())));
        }
        Ok(Self { degree, terms })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<V>, &S)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn plus(&self, other: &Self) -> Self {
        let degree = if self.is_zero() { other.degree } else { self.degree };
        Self { degree, terms: self.terms.plus(&other.terms) }
    }

    pub fn minus(&self, other: &Self) -> Self {
        let degree = if self.is_zero() { other.degree } else { self.degree };
        Self { degree, terms: self.terms.minus(&other.terms) }
    }

    pub fn filter(&self, keep: impl FnMut(&Vec<V>) -> bool) -> Self {
        Self { degree: self.degree, terms: self.terms.filter(keep) }
    }

    /// Alternating deletion boundary; errors on degree 0.
    pub fn boundary(&self) -> Result<Self> {
        if self.degree == 0 {
            return Err(Error::Degree("tuple boundary needs degree ≥ 1".into()));
        }
        let mut out = LinComb::new();
        for (t, c) in self.terms.iter() {
            for (face, s) in deletion_faces(t) {
                out.add_term(face, c.clone() * S::from_i64(s));
            }
        }
        Ok(Self { degree: self.degree - 1, terms: out })
    }
}

/// `(a_0→a_1)(a_1→a_2)…(a_p→a_0) ↦ [a_1, …, a_p, a_0]`, i.e. the list of columns.
pub fn symbol_of<S: Scalar>(k: &HochschildChain<S>) -> Result<SymbolChain<S>> {
    if !k.is_diagonal() {
        return Err(Error::NotDiagonal);
    }
    SymbolChain::from_terms(k.degree(), k.iter().map(|(t, c)| (t.iter().map(|e| e.col).collect(), c.clone())))
}

pub fn symbol_tuple_to_kernels(v: &[BasisIndex]) -> Tuple {
    let p = v.len() - 1;
    (0..=p).map(|k| ElementaryKernel::new(if k == 0 { v[p] } else { v[k - 1] }, v[k])).collect()
}

/// Inverse of [`symbol_of`].
pub fn kernel_of_symbol<S: Scalar>(s: &SymbolChain<S>) -> HochschildChain<S> {
    HochschildChain::from_terms(s.degree(), s.iter().map(|(v, c)| (symbol_tuple_to_kernels(v), c.clone())))
        .expect("symbol tuples have the chain's length")
}

pub fn symbol_boundary<S: Scalar>(s: &SymbolChain<S>) -> Result<SymbolChain<S>> {
    s.boundary()
}

/// θ transported to symbols: `[v_0, …, v_p] ↦ (−1)^{p+1} ([I_{α(v_{p−1})}] − [I_{α(v_p)}]) [v_0, …, v_{p−1}]`,
/// with the bracketed vertex prepended.
pub fn symbol_theta<S: Scalar>(s: &SymbolChain<S>, i: &DistinguishedBasis) -> Result<SymbolChain<S>> {
    let p = s.degree();
    if p == 0 {
        return Err(Error::Degree("symbol θ needs degree ≥ 1".into()));
    }
    let mut out = LinComb::new();
    for (v, c) in s.iter() {
        for (via, sg) in [(i.at(v[p - 1].simplex), -sign(p)), (i.at(v[p].simplex), sign(p))] {
            let mut t = Vec::with_capacity(p + 1);
            t.push(via);
            t.extend_from_slice(&v[..p]);
            out.add_term(t, c.clone() * S::from_i64(sg));
        }
    }
    Ok(SymbolChain { degree: p, terms: out })
}

/// Expansion of `([I_{s_0}] − [I_{s_1}])([I_{s_1}] − [I_{s_2}])…([I_{s_{p−1}}] − [I_{s_p}]) [v_0]`
/// for the tuple `[v_0, …, v_p]` with `s_j` the simplex of `v_j`.
pub fn theta_power_product<S: Scalar>(v: &[BasisIndex], i: &DistinguishedBasis) -> SymbolChain<S> {
    let p = v.len() - 1;
    let mut out = LinComb::new();
    for mask in 0u32..(1 << p) {
        let mut t = Vec::with_capacity(p + 1);
        let mut negatives = 0;
        for j in 0..p {
            let take_second = mask & (1 << j) != 0;
            negatives += take_second as usize;
            t.push(i.at(v[if take_second { j + 1 } else { j }].simplex));
        }
        t.push(v[0]);
        out.add_term(t, S::from_i64(sign(negatives)));
    }
    SymbolChain { degree: p, terms: out }
}

/// Drops the distinguished indices of a reduced symbol chain.
pub fn restrict_to_i<S: Scalar>(s: &SymbolChain<S>, i: &DistinguishedBasis) -> Result<AsChain<S>> {
    if s.iter().any(|(v, _)| v.iter().any(|b| !i.is_reduced(b))) {
        return Err(Error::NotReduced);
    }
    AsChain::from_terms(s.degree(), s.iter().map(|(v, c)| (v.iter().map(|b| b.simplex).collect(), c.clone())))
}

/// Inverse of [`restrict_to_i`].
pub fn lift_to_i<S: Scalar>(a: &AsChain<S>, i: &DistinguishedBasis) -> SymbolChain<S> {
    SymbolChain::from_terms(a.degree(), a.iter().map(|(v, c)| (v.iter().map(|&s| i.at(s)).collect(), c.clone())))
        .expect("same tuple lengths")
}

/// Integrates out each slot under unit simplex measure and alternates.
pub fn as_boundary<S: Scalar>(g: &AsChain<S>) -> Result<AsChain<S>> {
    g.boundary()
}

/// Drops tuples violating the pairwise locality bound.
pub fn as_locality_filter<S: Scalar>(x: &SimplicialComplex, g: &AsChain<S>, locality: &Locality) -> Result<AsChain<S>> {
    let mut keep = Vec::new();
    for (t, _) in g.iter() {
        let slots = t.iter().map(|&s| x.position(s)).collect::<Result<Vec<_>>>()?;
        keep.push(locality.admits(x, &slots));
    }
    let mut flags = keep.into_iter();
    Ok(g.filter(|_| flags.next().unwrap()))
}

pub fn symbol_to_json<S: Scalar>(s: &SymbolChain<S>) -> Value {
    let terms: Vec<Value> = s
        .iter()
        .map(|(v, c)| json!({"tuple": v.iter().map(basis_json).collect::<Vec<_>>(), "coeff": c.to_json()}))
        .collect();
    json!({"degree": s.degree(), "terms": terms})
}

pub fn symbol_from_json<S: Scalar>(v: &Value) -> Result<SymbolChain<S>> {
    let (degree, items) = chain_header(v)?;
    let terms = items
        .iter()
        .map(|item| {
            let t = tuple_items(item)?.iter().map(basis_from_json).collect::<Result<Vec<_>>>()?;
            Ok((t, S::from_json(&item["coeff"])?))
        })
        .collect::<Result<Vec<_>>>()?;
    SymbolChain::from_terms(degree, terms)
}

pub fn as_chain_to_json<S: Scalar>(g: &AsChain<S>) -> Value {
    let terms: Vec<Value> = g.iter().map(|(t, c)| json!({"tuple": t, "coeff": c.to_json()})).collect();
    json!({"degree": g.degree(), "terms": terms})
}

pub fn as_chain_from_json<S: Scalar>(v: &Value) -> Result<AsChain<S>> {
    let (degree, items) = chain_header(v)?;
    let terms = items
        .iter()
        .map(|item| {
            let t = tuple_items(item)?
                .iter()
                .map(|s| s.as_u64().map(|s| s as SimplexId).ok_or_else(|| Error::Parse("simplex id expected".into())))
                .collect::<Result<Vec<_>>>()?;
            Ok((t, S::from_json(&item["coeff"])?))
        })
        .collect::<Result<Vec<_>>>()?;
    AsChain::from_terms(degree, terms)
}

fn chain_header(v: &Value) -> Result<(usize, &Vec<Value>)> {
    let degree = v["degree"].as_u64().ok_or_else(|| Error::Parse("chain needs a degree".into()))? as usize;
    let items = v["terms"].as_array().ok_or_else(|| Error::Parse("chain needs a term list".into()))?;
    Ok((degree, items))
}

fn tuple_items(item: &Value) -> Result<&Vec<Value>> {
    item["tuple"].as_array().ok_or_else(|| Error::Parse("term needs a tuple".into()))
}

/// A simplex-constant function on `X^{p+1}`, stored densely in lexicographic order of positions.
#[derive(Clone, Debug, PartialEq)]
pub struct AsCochain<S = Rational> {
    degree: usize,
    ids: Vec<SimplexId>,
    values: Vec<S>,
}

impl<S: Scalar> AsCochain<S> {
    pub fn from_fn(x: &SimplicialComplex, degree: usize, mut f: impl FnMut(&[SimplexId]) -> S) -> Self {
        let ids: Vec<SimplexId> = x.simplex_ids().collect();
        let n = ids.len();
        let size = n.pow(degree as u32 + 1);
        let mut values = Vec::with_capacity(size);
        let mut tuple = vec![0; degree + 1];
        for code in 0..size {
            let mut c = code;
            for slot in (0..=degree).rev() {
                tuple[slot] = ids[c % n];
                c /= n;
            }
            values.push(f(&tuple));
        }
        Self { degree, ids, values }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    fn code(&self, t: &[SimplexId]) -> usize {
        let n = self.ids.len();
        t.iter().fold(0, |acc, s| acc * n + self.ids.iter().position(|x| x == s).expect("known simplex"))
    }

    pub fn value(&self, t: &[SimplexId]) -> S {
        assert_eq!(t.len(), self.degree + 1, "cochain evaluated on a tuple of the wrong length");
        self.values[self.code(t)].clone()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    fn with_values(&self, degree: usize, mut f: impl FnMut(&[SimplexId]) -> S) -> Self {
        let n = self.ids.len();
        let size = n.pow(degree as u32 + 1);
        let mut values = Vec::with_capacity(size);
        let mut tuple = vec![0; degree + 1];
        for code in 0..size {
            let mut c = code;
            for slot in (0..=degree).rev() {
                tuple[slot] = self.ids[c % n];
                c /= n;
            }
            values.push(f(&tuple));
        }
        Self { degree, ids: self.ids.clone(), values }
    }

    pub fn plus(&self, other: &Self) -> Self {
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a.clone() + b.clone()).collect();
        Self { degree: self.degree, ids: self.ids.clone(), values }
    }

    /// Pairing with a chain of the same degree.
    pub fn pair(&self, g: &AsChain<S>) -> S {
        g.iter().fold(S::zero(), |acc, (t, c)| acc + c.clone() * self.value(t))
    }
}

/// `df(x_0, …, x_{p+1}) = Σ_k (−1)^k f(x_0, …, x̂_k, …, x_{p+1})`.
pub fn as_coboundary<S: Scalar>(f: &AsCochain<S>) -> AsCochain<S> {
    f.with_values(f.degree + 1, |t| {
        deletion_faces(t).into_iter().fold(S::zero(), |acc, (face, s)| acc + f.value(&face) * S::from_i64(s))
    })
}

/// `(s̃f)(x_0, …, x_{p−1}) = f(P, x_0, …, x_{p−1})`.
pub fn cone_homotopy<S: Scalar>(f: &AsCochain<S>, basepoint: SimplexId) -> Result<AsCochain<S>> {
    if f.degree == 0 {
        return Err(Error::Degree("cone homotopy needs degree ≥ 1".into()));
    }
    if !f.ids.contains(&basepoint) {
        return Err(Error::UnknownSimplex(basepoint));
    }
    Ok(f.with_values(f.degree - 1, |t| {
        let mut full = Vec::with_capacity(t.len() + 1);
        full.push(basepoint);
        full.extend_from_slice(t);
        f.value(&full)
    }))
}

/// Lexicographically first maximal simplex, the default cone point.
pub fn default_basepoint(x: &SimplicialComplex) -> SimplexId {
    x.simplex_ids().min().expect("complexes are nonempty")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::scalar::rational;

    fn one() -> Rational {
        rational(1, 1)
    }

    #[test]
    fn degree_zero_symbol() {
        let k = HochschildChain::single(vec![ElementaryKernel::new(BasisIndex::new(2, 1), BasisIndex::new(2, 1))], one());
        let s = symbol_of(&k).unwrap();
        assert_eq!(s, SymbolChain::from_terms(0, [(vec![BasisIndex::new(2, 1)], one())]).unwrap());
        assert_eq!(kernel_of_symbol(&s), k);
    }

    #[test]
    fn degree_one_symbol_boundary() {
        let (v1, v0) = (BasisIndex::new(1, 0), BasisIndex::new(0, 1));
        let s = SymbolChain::from_terms(1, [(vec![v1, v0], one())]).unwrap();
        let expected = SymbolChain::from_terms(0, [(vec![v0], one()), (vec![v1], -one())]).unwrap();
        assert_eq!(symbol_boundary(&s).unwrap(), expected);
        let k = kernel_of_symbol(&s);
        assert_eq!(symbol_of(&k.boundary()).unwrap(), expected);
    }

    #[test]
    fn restriction() {
        let i = DistinguishedBasis::default();
        let s = SymbolChain::from_terms(1, [(vec![BasisIndex::new(1, 0), BasisIndex::new(0, 0)], one())]).unwrap();
        let a = restrict_to_i(&s, &i).unwrap();
        assert_eq!(a, AsChain::from_terms(1, [(vec![1, 0], one())]).unwrap());
        assert_eq!(lift_to_i(&a, &i), s);
        let mixed = SymbolChain::from_terms(0, [(vec![BasisIndex::new(1, 1)], one())]).unwrap();
        assert_eq!(restrict_to_i(&mixed, &i), Err(Error::NotReduced));
        assert!(restrict_to_i(&SymbolChain::<Rational>::zero(2), &i).unwrap().is_zero());
    }

    #[test]
    fn hexagon_fundamental_cycle() {
        let g = AsChain::from_terms(1, (0..6).map(|a| (vec![a, (a + 1) % 6], one()))).unwrap();
        assert!(as_boundary(&g).unwrap().is_zero());
    }

    #[test]
    fn constant_cochain_is_closed() {
        let x = fixtures::hexagon();
        let c = AsCochain::from_fn(&x, 0, |_| rational(5, 1));
        assert!(as_coboundary(&c).is_zero());
    }

    #[test]
    fn cone_of_degree_one() {
        let x = fixtures::hexagon();
        let f = AsCochain::from_fn(&x, 1, |t| rational(t[0] as i64 * 10 + t[1] as i64, 1));
        let g = cone_homotopy(&f, 0).unwrap();
        for s in 0..6 {
            assert_eq!(g.value(&[s]), rational(s as i64, 1));
        }
        let f0 = AsCochain::from_fn(&x, 0, |_| one());
        assert!(matches!(cone_homotopy(&f0, 0), Err(Error::Degree(_))));
    }

    #[test]
    fn locality_filter_examples() {
        let x = fixtures::hexagon();
        let g = AsChain::from_terms(1, [(vec![0, 0], one()), (vec![0, 3], one()), (vec![0, 1], one())]).unwrap();
        let kept = as_locality_filter(&x, &g, &Locality::Simplicial(1)).unwrap();
        assert_eq!(kept, AsChain::from_terms(1, [(vec![0, 0], one()), (vec![0, 1], one())]).unwrap());
        assert_eq!(as_locality_filter(&x, &kept, &Locality::Simplicial(1)).unwrap(), kept);
        let diag = AsChain::from_terms(2, [(vec![4, 4, 4], one())]).unwrap();
        assert_eq!(as_locality_filter(&x, &diag, &Locality::Simplicial(0)).unwrap(), diag);
    }

    #[test]
    fn json_round_trips() {
        let s = SymbolChain::from_terms(1, [(vec![BasisIndex::new(1, 0), BasisIndex::new(0, 1)], rational(2, 5))]).unwrap();
        assert_eq!(symbol_from_json::<Rational>(&symbol_to_json(&s)).unwrap(), s);
        let a = AsChain::from_terms(2, [(vec![1, 0, 3], rational(-1, 2))]).unwrap();
        assert_eq!(as_chain_from_json::<Rational>(&as_chain_to_json(&a)).unwrap(), a);
    }
}
