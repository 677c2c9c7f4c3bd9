//! Finite chain complexes of every family, Betti numbers, the ε-local quotient and its induced maps.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::bridge::deletion_faces;
use crate::error::{Error, Result};
use crate::hochschild::{cyclic_radius, tuple_faces, Tuple};
use crate::homotopy::DistinguishedBasis;
use crate::kernel::{BasisIndex, ElementaryKernel};
use crate::locality::Locality;
use crate::rank::{dense_rank, SparseVectors};
use crate::scalar::{format_rational, Rational};
use crate::simplicial::{SimplexId, SimplicialComplex, VertexId};

pub const DEFAULT_BASIS_CAP: usize = 2_000_000;
pub const BASIS_CAP_ENV: &str = "HSLOCAL_BASIS_CAP";

/// The enumeration cap, overridable through the environment.
pub fn basis_cap_from_env() -> usize {
    std::env::var(BASIS_CAP_ENV).ok().and_then(|v| v.parse().ok()).unwrap_or(DEFAULT_BASIS_CAP)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    HochschildFull,
    HochschildDiagonal,
    HochschildReduced,
    SymbolDelta,
    SymbolI,
    AlexanderSpanier,
    SimplicialOracle,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::HochschildFull,
        Family::HochschildDiagonal,
        Family::HochschildReduced,
        Family::SymbolDelta,
        Family::SymbolI,
        Family::AlexanderSpanier,
        Family::SimplicialOracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::HochschildFull => "hochschild-full",
            Family::HochschildDiagonal => "hochschild-diagonal",
            Family::HochschildReduced => "hochschild-reduced",
            Family::SymbolDelta => "symbol-delta",
            Family::SymbolI => "symbol-i",
            Family::AlexanderSpanier => "alexander-spanier",
            Family::SimplicialOracle => "simplicial",
        }
    }

    fn is_hochschild(self) -> bool {
        matches!(self, Family::HochschildFull | Family::HochschildDiagonal | Family::HochschildReduced)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_lowercase().replace('_', "-");
        let alias = match norm.as_str() {
            "full" => "hochschild-full",
            "diagonal" => "hochschild-diagonal",
            "reduced" => "hochschild-reduced",
            "symbol" => "symbol-delta",
            "as" => "alexander-spanier",
            "simplicial-oracle" => "simplicial",
            other => other,
        };
        Family::ALL
            .into_iter()
            .find(|f| f.name() == alias)
            .ok_or_else(|| Error::Parse(format!("unknown family {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FilteredComplexSpec {
    pub family: Family,
    pub locality: Locality,
    /// Number of basis functions per simplex.
    pub truncation: u32,
    pub max_degree: usize,
    pub distinguished: DistinguishedBasis,
    pub basis_cap: usize,
}

impl FilteredComplexSpec {
    pub fn new(family: Family, locality: Locality, truncation: u32, max_degree: usize) -> Self {
        Self {
            family,
            locality,
            truncation,
            max_degree,
            distinguished: DistinguishedBasis::default(),
            basis_cap: DEFAULT_BASIS_CAP,
        }
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.basis_cap = cap;
        self
    }

    pub fn validate(&self, x: &SimplicialComplex) -> Result<()> {
        if self.max_degree < 1 {
            return Err(Error::Validation("max_degree must be at least 1".into()));
        }
        if self.truncation < 1 {
            return Err(Error::Validation("truncation M must be at least 1".into()));
        }
        self.distinguished.validate(x, self.truncation)
    }
}

/// One basis element of a family, in its natural shape.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(untagged)]
pub enum BasisTuple {
    Kernels(Tuple),
    Vertices(Vec<BasisIndex>),
    Simplices(Vec<SimplexId>),
    Face(Vec<VertexId>),
}

/// How degree-p generators are filtered during enumeration.
#[derive(Clone, Debug)]
enum Filter {
    Pairwise(Locality),
    /// Squared ε-support radius below the bound.
    Radius(Rational),
}

type Codes = Vec<u32>;

/// Encodes generators as flat code vectors. Kernel families store `row_0, col_0, …, row_p, col_p`
/// as vertex codes `position·M + index`; vertex families store `p+1` vertex codes; the
/// Alexander-Spanier family stores simplex positions.
struct Ctx<'a> {
    x: &'a SimplicialComplex,
    family: Family,
    m: u32,
    ids: Vec<SimplexId>,
    i: &'a DistinguishedBasis,
}

impl<'a> Ctx<'a> {
    fn new(x: &'a SimplicialComplex, spec: &'a FilteredComplexSpec) -> Self {
        Self { x, family: spec.family, m: spec.truncation, ids: x.simplex_ids().collect(), i: &spec.distinguished }
    }

    fn pos(&self, code: u32) -> usize {
        match self.family {
            Family::AlexanderSpanier => code as usize,
            _ => (code / self.m) as usize,
        }
    }

    fn basis_index(&self, code: u32) -> BasisIndex {
        BasisIndex::new(self.ids[(code / self.m) as usize], code % self.m)
    }

    fn code_of(&self, b: &BasisIndex) -> u32 {
        self.x.position(b.simplex).expect("simplex of the complex") as u32 * self.m + b.index
    }

    /// Letters available to each enumeration slot.
    fn alphabet(&self) -> Vec<u32> {
        let n = self.ids.len() as u32;
        match self.family {
            Family::HochschildFull | Family::HochschildDiagonal | Family::SymbolDelta => (0..n * self.m).collect(),
            Family::HochschildReduced | Family::SymbolI => {
                self.ids.iter().enumerate().map(|(p, &id)| p as u32 * self.m + self.i.index(id)).collect()
            }
            Family::AlexanderSpanier => (0..n).collect(),
            Family::SimplicialOracle => unreachable!("the oracle is enumerated separately"),
        }
    }

    fn letters(&self, p: usize) -> usize {
        match self.family {
            Family::HochschildFull => 2 * (p + 1),
            _ => p + 1,
        }
    }

    /// Diagonal kernel families expand a vertex cycle `a_0, …, a_p` into `(a_0→a_1)…(a_p→a_0)`.
    fn expand(&self, word: &[u32]) -> Codes {
        match self.family {
            Family::HochschildDiagonal | Family::HochschildReduced => {
                let p = word.len() - 1;
                (0..=p).flat_map(|k| [word[k], word[(k + 1) % (p + 1)]]).collect()
            }
            _ => word.to_vec(),
        }
    }

    fn to_kernels(&self, codes: &[u32]) -> Tuple {
        codes.chunks(2).map(|c| ElementaryKernel::new(self.basis_index(c[0]), self.basis_index(c[1]))).collect()
    }

    fn boundary(&self, codes: &[u32]) -> Vec<(Codes, i64)> {
        match self.family {
            f if f.is_hochschild() => tuple_faces(&self.to_kernels(codes), true)
                .into_iter()
                .map(|(t, s)| (t.iter().flat_map(|e| [self.code_of(&e.row), self.code_of(&e.col)]).collect(), s))
                .collect(),
            _ => deletion_faces(codes),
        }
    }

    /// Simplex positions along the cyclic slot sequence used by the ε-support radius.
    fn radius_slots(&self, codes: &[u32]) -> Vec<usize> {
        match self.family {
            f if f.is_hochschild() => codes.iter().map(|&c| self.pos(c)).collect(),
            _ => {
                // A symbol [v_0, …, v_p] is the kernel cycle (v_p→v_0)(v_0→v_1)…(v_{p−1}→v_p).
                let p = codes.len() - 1;
                (0..=p).flat_map(|k| [self.pos(codes[(k + p) % (p + 1)]), self.pos(codes[k])]).collect()
            }
        }
    }

    fn within_radius(&self, codes: &[u32], eps2: &Rational) -> bool {
        if self.family == Family::AlexanderSpanier {
            let slots: Vec<usize> = codes.iter().map(|&c| c as usize).collect();
            return Locality::Metric(eps2.clone()).admits(self.x, &slots);
        }
        cyclic_radius(self.x, &self.radius_slots(codes)) < *eps2
    }

    fn decode(&self, codes: &[u32]) -> BasisTuple {
        match self.family {
            f if f.is_hochschild() => BasisTuple::Kernels(self.to_kernels(codes)),
            Family::AlexanderSpanier => BasisTuple::Simplices(codes.iter().map(|&c| self.ids[c as usize]).collect()),
            _ => BasisTuple::Vertices(codes.iter().map(|&c| self.basis_index(c)).collect()),
        }
    }

    fn enumerate(&self, p: usize, filter: &Filter, cap: usize) -> Result<Vec<Codes>> {
        let alphabet = self.alphabet();
        let len = self.letters(p);
        let mut out = Vec::new();
        let mut word = Vec::with_capacity(len);
        self.extend(&alphabet, len, filter, cap, &mut word, &mut out)?;
        Ok(out)
    }

    fn pair_ok(&self, filter: &Filter, a: u32, b: u32) -> bool {
        match filter {
            Filter::Pairwise(l) => l.admits_pair(self.x, self.pos(a), self.pos(b)),
            Filter::Radius(e) => self.x.tables().metric(self.pos(a), self.pos(b)) < e,
        }
    }

    /// Radius filters only constrain neighbours in the cyclic slot sequence, so a letter is
    /// checked against its predecessor (and itself for vertex words, whose expansion repeats it).
    fn letter_ok(&self, filter: &Filter, word: &[u32], c: u32) -> bool {
        match filter {
            Filter::Pairwise(_) => word.iter().all(|&w| self.pair_ok(filter, w, c)) && self.pair_ok(filter, c, c),
            Filter::Radius(_) if self.family == Family::AlexanderSpanier => {
                word.iter().all(|&w| self.pair_ok(filter, w, c)) && self.pair_ok(filter, c, c)
            }
            Filter::Radius(_) => {
                let self_ok = self.family == Family::HochschildFull || self.pair_ok(filter, c, c);
                self_ok && word.last().is_none_or(|&w| self.pair_ok(filter, w, c))
            }
        }
    }

    fn extend(
        &self,
        alphabet: &[u32],
        len: usize,
        filter: &Filter,
        cap: usize,
        word: &mut Vec<u32>,
        out: &mut Vec<Codes>,
    ) -> Result<()> {
        if word.len() == len {
            let closes = match filter {
                Filter::Radius(_) if self.family != Family::AlexanderSpanier => {
                    self.pair_ok(filter, word[len - 1], word[0])
                }
                _ => true,
            };
            if closes {
                if out.len() >= cap {
                    return Err(Error::Resource(format!(
                        "{} basis in degree {} exceeds the cap of {cap} tuples",
                        self.family,
                        self.degree_of(len)
                    )));
                }
                out.push(self.expand(word));
            }
            return Ok(());
        }
        for &c in alphabet {
            if self.letter_ok(filter, word, c) {
                word.push(c);
                self.extend(alphabet, len, filter, cap, word, out)?;
                word.pop();
            }
        }
        Ok(())
    }

    fn degree_of(&self, len: usize) -> usize {
        match self.family {
            Family::HochschildFull => len / 2 - 1,
            _ => len - 1,
        }
    }
}

/// Ranks the boundary images of `generators`, optionally dropping target coordinates.
fn boundary_rank(ctx: &Ctx<'_>, generators: &[Codes], mut drop_row: impl FnMut(&[u32]) -> bool) -> usize {
    let mut index: HashMap<Codes, u32> = HashMap::new();
    let mut vectors = Vec::with_capacity(generators.len());
    for g in generators {
        let mut v = Vec::new();
        for (face, s) in ctx.boundary(g) {
            if drop_row(&face) {
                continue;
            }
            let next = index.len() as u32;
            let id = *index.entry(face).or_insert(next);
            v.push((id, s));
        }
        vectors.push(v);
    }
    let mut m = SparseVectors::new(index.len());
    for v in vectors {
        m.push(v);
    }
    m.rank()
}

pub fn enumerate_basis(x: &SimplicialComplex, spec: &FilteredComplexSpec, p: usize) -> Result<Vec<BasisTuple>> {
    spec.validate_truncation()?;
    if spec.family == Family::SimplicialOracle {
        return Ok(simplicial_faces(x, p).into_iter().map(BasisTuple::Face).collect());
    }
    let ctx = Ctx::new(x, spec);
    let filter = Filter::Pairwise(spec.locality.clone());
    Ok(ctx.enumerate(p, &filter, spec.basis_cap)?.iter().map(|c| ctx.decode(c)).collect())
}

impl FilteredComplexSpec {
    fn validate_truncation(&self) -> Result<()> {
        if self.truncation < 1 {
            return Err(Error::Validation("truncation M must be at least 1".into()));
        }
        Ok(())
    }
}

/// Degree-p generators whose squared ε-support radius is below `eps2`.
pub fn enumerate_epsilon_basis(
    x: &SimplicialComplex,
    spec: &FilteredComplexSpec,
    p: usize,
    eps2: &Rational,
) -> Result<Vec<BasisTuple>> {
    let ctx = Ctx::new(x, spec);
    Ok(ctx.enumerate(p, &Filter::Radius(eps2.clone()), spec.basis_cap)?.iter().map(|c| ctx.decode(c)).collect())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HomologyReport {
    pub family: Family,
    pub locality: String,
    pub truncation: u32,
    pub betti: Vec<usize>,
    pub basis_sizes: Vec<usize>,
    /// True when the top-degree value is only an upper bound (degree max+1 exceeded the cap).
    pub top_degree_upper_bound: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

/// Betti numbers in degrees `0..=max_degree`, exact whenever degree `max_degree+1` fits the cap.
pub fn betti_numbers(x: &SimplicialComplex, spec: &FilteredComplexSpec) -> Result<HomologyReport> {
    spec.validate(x)?;
    let start = std::time::Instant::now();
    let top = spec.max_degree;
    let (sizes, ranks, upper) = if spec.family == Family::SimplicialOracle {
        oracle_ranks(x, top + 1)
    } else {
        let ctx = Ctx::new(x, spec);
        let filter = Filter::Pairwise(spec.locality.clone());
        let mut sizes = Vec::new();
        let mut ranks = vec![0usize];
        let mut upper = false;
        for p in 0..=top + 1 {
            let basis = match ctx.enumerate(p, &filter, spec.basis_cap) {
                Ok(b) => b,
                Err(Error::Resource(_)) if p == top + 1 => {
                    upper = true;
                    ranks.push(0);
                    break;
                }
                Err(e) => return Err(e),
            };
            sizes.push(basis.len());
            ranks.push(if p == 0 { 0 } else { boundary_rank(&ctx, &basis, |_| false) });
            // ranks[p+1] is the rank of ∂_p
        }
        (sizes, ranks, upper)
    };
    let betti = (0..=top).map(|p| sizes[p] - ranks[p + 1] - ranks[p + 2]).collect();
    Ok(HomologyReport {
        family: spec.family,
        locality: spec.locality.to_string(),
        truncation: spec.truncation,
        betti,
        basis_sizes: sizes[..=top].to_vec(),
        top_degree_upper_bound: upper,
        elapsed_ms: Some(start.elapsed().as_millis()),
    })
}

/// Oriented faces of dimension p of the downward closure, as sorted vertex lists.
pub fn simplicial_faces(x: &SimplicialComplex, p: usize) -> Vec<Vec<VertexId>> {
    let mut faces = BTreeSet::new();
    for s in x.simplices() {
        for subset in subsets(&s.vertices, p + 1) {
            faces.insert(subset);
        }
    }
    faces.into_iter().collect()
}

fn subsets(items: &[VertexId], k: usize) -> Vec<Vec<VertexId>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if items.len() < k {
        return Vec::new();
    }
    let mut with: Vec<Vec<VertexId>> = subsets(&items[1..], k - 1)
        .into_iter()
        .map(|mut s| {
            s.insert(0, items[0]);
            s
        })
        .collect();
    with.extend(subsets(&items[1..], k));
    with
}

/// Sizes and boundary ranks of the simplicial chain complex, by dense rational elimination.
fn oracle_ranks(x: &SimplicialComplex, top: usize) -> (Vec<usize>, Vec<usize>, bool) {
    let faces: Vec<Vec<Vec<VertexId>>> = (0..=top).map(|p| simplicial_faces(x, p)).collect();
    let sizes = faces.iter().map(Vec::len).collect();
    let mut ranks = vec![0, 0];
    for p in 1..=top {
        let index: HashMap<&Vec<VertexId>, usize> = faces[p - 1].iter().enumerate().map(|(i, f)| (f, i)).collect();
        let rows: Vec<Vec<Rational>> = faces[p]
            .iter()
            .map(|f| {
                let mut row = vec![Rational::zero(); faces[p - 1].len()];
                for (face, s) in deletion_faces(f) {
                    row[index[&face]] += Rational::from_integer(s.into());
                }
                row
            })
            .collect();
        ranks.push(dense_rank(&rows));
    }
    (sizes, ranks, false)
}

fn check_quotient_args(spec: &FilteredComplexSpec, k: u32) -> Result<()> {
    if k < 2 {
        return Err(Error::Validation("the boundary scale factor k must be at least 2".into()));
    }
    if spec.family == Family::SimplicialOracle {
        return Err(Error::Validation("the ε-local quotient is not defined for the simplicial oracle".into()));
    }
    spec.validate_truncation()
}

struct QuotientParts {
    cycles: usize,
    boundaries_inside: usize,
}

/// `dim Z_p(ε′)` and `dim(B_p(kε) ∩ C_p(ε′))`, where `Z` is the kernel of b on ε′-local chains
/// and `B` the image of b on kε-local chains.
fn quotient_parts(
    x: &SimplicialComplex,
    spec: &FilteredComplexSpec,
    p: usize,
    fine: &Rational,
    coarse: &Rational,
    k: u32,
) -> Result<QuotientParts> {
    let ctx = Ctx::new(x, spec);
    let local = ctx.enumerate(p, &Filter::Radius(fine.clone()), spec.basis_cap)?;
    let cycles = if p == 0 { local.len() } else { local.len() - boundary_rank(&ctx, &local, |_| false) };
    let scale = Rational::from_integer((k as i64 * k as i64).into());
    let wide = ctx.enumerate(p + 1, &Filter::Radius(coarse * scale), spec.basis_cap)?;
    let total = boundary_rank(&ctx, &wide, |_| false);
    let outside = boundary_rank(&ctx, &wide, |row| ctx.within_radius(row, fine));
    Ok(QuotientParts { cycles, boundaries_inside: total - outside })
}

/// Dimension of the ε-local quotient: cycles of ε-local chains modulo boundaries of kε-local chains.
pub fn local_homology_quotient(
    x: &SimplicialComplex,
    spec: &FilteredComplexSpec,
    p: usize,
    eps2: &Rational,
    k: u32,
) -> Result<usize> {
    check_quotient_args(spec, k)?;
    let parts = quotient_parts(x, spec, p, eps2, eps2, k)?;
    Ok(parts.cycles - parts.boundaries_inside)
}

/// Rank of the map from the ε′-quotient to the ε-quotient induced by inclusion.
pub fn induced_map_rank(
    x: &SimplicialComplex,
    spec: &FilteredComplexSpec,
    p: usize,
    fine_eps2: &Rational,
    eps2: &Rational,
    k: u32,
) -> Result<usize> {
    check_quotient_args(spec, k)?;
    if fine_eps2 > eps2 {
        return Err(Error::Validation("the source level must not exceed the target level".into()));
    }
    let parts = quotient_parts(x, spec, p, fine_eps2, eps2, k)?;
    Ok(parts.cycles - parts.boundaries_inside)
}

/// Squared-radius window in which the ε-neighbourhood graph of maximal simplices is exactly the
/// one-ring graph and ε exceeds every simplex diameter: `(low, high]`. Empty when `low ≥ high`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TubularWindow {
    #[serde(serialize_with = "ser_rational", deserialize_with = "de_rational")]
    pub low: Rational,
    #[serde(serialize_with = "ser_opt_rational", deserialize_with = "de_opt_rational")]
    pub high: Option<Rational>,
}

fn ser_rational<S: serde::Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(q))
}

fn ser_opt_rational<S: serde::Serializer>(q: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match q {
        Some(q) => s.serialize_str(&format_rational(q)),
        None => s.serialize_none(),
    }
}

fn de_rational<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
    let text = String::deserialize(d)?;
    crate::scalar::parse_rational(&text).map_err(serde::de::Error::custom)
}

fn de_opt_rational<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Option<Rational>, D::Error> {
    match Option::<String>::deserialize(d)? {
        Some(text) => crate::scalar::parse_rational(&text).map(Some).map_err(serde::de::Error::custom),
        None => Ok(None),
    }
}

impl TubularWindow {
    pub fn of(x: &SimplicialComplex) -> Self {
        let n = x.num_simplices();
        let mut low = Rational::zero();
        let mut high: Option<Rational> = None;
        for a in 0..n {
            for b in 0..n {
                let g = x.tables().metric(a, b);
                if x.tables().simplicial(a, b) == Some(0) {
                    if *g > low {
                        low = g.clone();
                    }
                } else if high.as_ref().is_none_or(|h| g < h) {
                    high = Some(g.clone());
                }
            }
        }
        Self { low, high }
    }

    pub fn contains(&self, eps2: &Rational) -> bool {
        *eps2 > self.low && self.high.as_ref().is_none_or(|h| eps2 <= h)
    }

    pub fn is_empty(&self) -> bool {
        self.high.as_ref().is_some_and(|h| *h <= self.low)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::scalar::rational;

    fn spec(family: Family, locality: Locality, m: u32, max_degree: usize) -> FilteredComplexSpec {
        FilteredComplexSpec::new(family, locality, m, max_degree)
    }

    #[test]
    fn basis_counts() {
        let hex = fixtures::hexagon();
        assert_eq!(enumerate_basis(&hex, &spec(Family::SymbolI, Locality::None, 1, 1), 0).unwrap().len(), 6);
        let tri = fixtures::triangle();
        let diag = enumerate_basis(&tri, &spec(Family::HochschildDiagonal, Locality::None, 2, 1), 1).unwrap();
        assert_eq!(diag.len(), 4);
        let n0 = enumerate_basis(&hex, &spec(Family::SymbolI, Locality::Simplicial(0), 1, 1), 1).unwrap();
        assert_eq!(n0.len(), 18);
        let n1 = enumerate_basis(&hex, &spec(Family::SymbolI, Locality::Simplicial(1), 1, 1), 1).unwrap();
        assert_eq!(n1.len(), 30);
    }

    #[test]
    fn cap_is_enforced() {
        let hex = fixtures::hexagon();
        let s = spec(Family::AlexanderSpanier, Locality::None, 1, 1).with_cap(10);
        assert!(matches!(enumerate_basis(&hex, &s, 1), Err(Error::Resource(_))));
    }

    #[test]
    fn oracle_betti() {
        let hex = fixtures::hexagon();
        let r = betti_numbers(&hex, &spec(Family::SimplicialOracle, Locality::None, 1, 1)).unwrap();
        assert_eq!(r.betti, vec![1, 1]);
        let oct = fixtures::octahedron();
        let r = betti_numbers(&oct, &spec(Family::SimplicialOracle, Locality::None, 1, 2)).unwrap();
        assert_eq!(r.betti, vec![1, 0, 1]);
    }

    #[test]
    fn contractible_simplex() {
        let tri = fixtures::triangle();
        for family in Family::ALL {
            let r = betti_numbers(&tri, &spec(family, Locality::None, 1, 2)).unwrap();
            assert_eq!(r.betti, vec![1, 0, 0], "{family}");
        }
    }

    #[test]
    fn empty_local_basis_gives_zero() {
        let hex = fixtures::hexagon();
        let s = spec(Family::HochschildReduced, Locality::None, 1, 2);
        assert_eq!(local_homology_quotient(&hex, &s, 1, &rational(1, 100), 2).unwrap(), 0);
        assert_eq!(induced_map_rank(&hex, &s, 1, &rational(1, 100), &rational(7, 2), 2).unwrap(), 0);
    }

    #[test]
    fn family_names_parse() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
        assert_eq!("reduced".parse::<Family>().unwrap(), Family::HochschildReduced);
        assert!("bogus".parse::<Family>().is_err());
    }
}
