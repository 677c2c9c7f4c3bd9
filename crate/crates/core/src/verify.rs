//! Random chain generators and the exact identity battery.
//!
//! Every check compares two exactly computed chains (or rationals) for equality; a failing
//! trial records its input in the chain JSON format so it can be replayed.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::bridge::{
    as_boundary, restrict_to_i, symbol_of, symbol_theta, symbol_tuple_to_kernels, symbol_to_json,
    theta_power_product, AsChain, SymbolChain,
};
use crate::error::{Error, Result};
use crate::hochschild::{find_first_gap, sign, HochschildChain, Tuple};
use crate::homotopy::{homotopy_big_s, insert_after, is_reduced_chain, theta_any, DistinguishedBasis};
use crate::kernel::{compose, squared_norm, BasisIndex, ElementaryKernel, Kernel};
use crate::lincomb::LinComb;
use crate::locality::Locality;
use crate::scalar::{GaussianRational, Rational, Scalar};
use crate::simplicial::{SimplexId, SimplicialComplex};

/// Largest raw basis that is enumerated outright; larger ones are sampled term by term.
const ENUMERATION_LIMIT: u128 = 4096;
/// Term cap for sampled chains.
const MAX_SAMPLED_TERMS: usize = 64;
/// Rejection attempts per sampled term before giving up on a locality filter.
const ATTEMPTS_PER_TERM: usize = 400;

/// Scalars that can be drawn as small nonzero values.
pub trait RandomScalar: Scalar {
    fn small_random(rng: &mut ChaCha8Rng) -> Self;
}

impl RandomScalar for Rational {
    fn small_random(rng: &mut ChaCha8Rng) -> Self {
        let v = rng.gen_range(1..=3);
        Self::from_i64(if rng.gen_bool(0.5) { v } else { -v })
    }
}

impl RandomScalar for GaussianRational {
    fn small_random(rng: &mut ChaCha8Rng) -> Self {
        loop {
            let (re, im) = (rng.gen_range(-2..=2), rng.gen_range(-2..=2));
            if re != 0 || im != 0 {
                return Complex::new(Rational::from_i64(re), Rational::from_i64(im));
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChainFamily {
    /// Arbitrary Hochschild tuples.
    Full,
    /// Tuples with at least one gap.
    Gapped,
    /// Tuples whose factors chain cyclically.
    Diagonal,
    /// Diagonal tuples through the distinguished basis elements only.
    Reduced,
    /// Symbol tuples of basis indices.
    Symbol,
    /// Alexander-Spanier tuples of simplices.
    AlexanderSpanier,
}

impl ChainFamily {
    pub const ALL: [ChainFamily; 6] = [
        ChainFamily::Full,
        ChainFamily::Gapped,
        ChainFamily::Diagonal,
        ChainFamily::Reduced,
        ChainFamily::Symbol,
        ChainFamily::AlexanderSpanier,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ChainFamily::Full => "full",
            ChainFamily::Gapped => "gapped",
            ChainFamily::Diagonal => "diagonal",
            ChainFamily::Reduced => "reduced",
            ChainFamily::Symbol => "symbol",
            ChainFamily::AlexanderSpanier => "alexander-spanier",
        }
    }
}

impl fmt::Display for ChainFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ChainFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_lowercase().replace('_', "-");
        let norm = if norm == "as" { "alexander-spanier".to_string() } else { norm };
        ChainFamily::ALL
            .into_iter()
            .find(|f| f.name() == norm)
            .ok_or_else(|| Error::Parse(format!("unknown chain family {s:?}")))
    }
}

/// What a random chain is drawn from.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainSpec {
    pub family: ChainFamily,
    pub truncation: u32,
    pub locality: Locality,
    pub distinguished: DistinguishedBasis,
}

impl ChainSpec {
    pub fn new(family: ChainFamily, truncation: u32) -> Self {
        Self { family, truncation, locality: Locality::None, distinguished: DistinguishedBasis::default() }
    }

    pub fn with_locality(mut self, locality: Locality) -> Self {
        self.locality = locality;
        self
    }

    fn with_family(&self, family: ChainFamily) -> Self {
        Self { family, ..self.clone() }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum RandomChain<S = Rational> {
    Hochschild(HochschildChain<S>),
    Symbol(SymbolChain<S>),
    As(AsChain<S>),
}

impl<S: Scalar> RandomChain<S> {
    pub fn to_json(&self) -> Value {
        match self {
            RandomChain::Hochschild(k) => k.to_json(),
            RandomChain::Symbol(s) => symbol_to_json(s),
            RandomChain::As(g) => crate::bridge::as_chain_to_json(g),
        }
    }

    pub fn into_hochschild(self) -> HochschildChain<S> {
        match self {
            RandomChain::Hochschild(k) => k,
            other => panic!("expected a Hochschild chain, got {other:?}"),
        }
    }
}

/// Number of unfiltered degree-p tuples in the family.
pub fn raw_basis_size(x: &SimplicialComplex, spec: &ChainSpec, p: usize) -> u128 {
    let (alphabet, len) = word_shape(x, spec, p);
    (alphabet as u128).saturating_pow(len as u32)
}

fn word_shape(x: &SimplicialComplex, spec: &ChainSpec, p: usize) -> (usize, usize) {
    let s = x.num_simplices();
    let a = s * spec.truncation as usize;
    match spec.family {
        ChainFamily::Full | ChainFamily::Gapped => (a, 2 * (p + 1)),
        ChainFamily::Diagonal | ChainFamily::Symbol => (a, p + 1),
        ChainFamily::Reduced | ChainFamily::AlexanderSpanier => (s, p + 1),
    }
}

/// Decodes letter codes into the simplices a word touches and a family-shaped term.
struct Alphabet<'a> {
    x: &'a SimplicialComplex,
    spec: &'a ChainSpec,
    ids: Vec<SimplexId>,
}

enum Term {
    Kernels(Tuple),
    Vertices(Vec<BasisIndex>),
    Simplices(Vec<SimplexId>),
}

impl<'a> Alphabet<'a> {
    fn new(x: &'a SimplicialComplex, spec: &'a ChainSpec) -> Self {
        Self { x, spec, ids: x.simplex_ids().collect() }
    }

    fn vertex(&self, code: usize) -> BasisIndex {
        let m = self.spec.truncation as usize;
        BasisIndex::new(self.ids[code / m], (code % m) as u32)
    }

    fn positions(&self, word: &[usize]) -> Vec<usize> {
        let m = self.spec.truncation as usize;
        match self.spec.family {
            ChainFamily::Reduced | ChainFamily::AlexanderSpanier => word.to_vec(),
            _ => word.iter().map(|c| c / m).collect(),
        }
    }

    /// None when the word violates the family constraint or the locality filter.
    fn term(&self, word: &[usize]) -> Option<Term> {
        if !self.spec.locality.admits(self.x, &self.positions(word)) {
            return None;
        }
        let term = match self.spec.family {
            ChainFamily::Full | ChainFamily::Gapped => {
                let t: Tuple =
                    word.chunks(2).map(|c| ElementaryKernel::new(self.vertex(c[0]), self.vertex(c[1]))).collect();
                if self.spec.family == ChainFamily::Gapped && find_first_gap(&t).is_none() {
                    return None;
                }
                Term::Kernels(t)
            }
            ChainFamily::Diagonal => {
                Term::Kernels(symbol_tuple_to_kernels(&word.iter().map(|&c| self.vertex(c)).collect::<Vec<_>>()))
            }
            ChainFamily::Reduced => Term::Kernels(symbol_tuple_to_kernels(
                &word.iter().map(|&c| self.spec.distinguished.at(self.ids[c])).collect::<Vec<_>>(),
            )),
            ChainFamily::Symbol => Term::Vertices(word.iter().map(|&c| self.vertex(c)).collect()),
            ChainFamily::AlexanderSpanier => Term::Simplices(word.iter().map(|&c| self.ids[c]).collect()),
        };
        Some(term)
    }
}

/// Draws one word; Hochschild words are biased towards composable neighbours so that
/// boundaries and homotopies see cancellations.
fn sample_word(rng: &mut ChaCha8Rng, family: ChainFamily, alphabet: usize, len: usize) -> Vec<usize> {
    let mut w: Vec<usize> = (0..len).map(|_| rng.gen_range(0..alphabet)).collect();
    if matches!(family, ChainFamily::Full | ChainFamily::Gapped) {
        for k in (2..len).step_by(2) {
            if rng.gen_bool(0.5) {
                w[k] = w[k - 1];
            }
        }
        if rng.gen_bool(0.5) {
            w[len - 1] = w[0];
        }
    }
    w
}

/// A reproducible random degree-p chain of the family, with coefficients `±1, ±2, ±3`
/// (complex: small Gaussian integers). Small bases are enumerated and each tuple is kept
/// with probability `density`; larger ones are sampled with `⌈density · size⌉` draws, at most 64.
pub fn gen_random_chain<S: RandomScalar>(
    x: &SimplicialComplex,
    spec: &ChainSpec,
    p: usize,
    density: f64,
    seed: u64,
) -> Result<RandomChain<S>> {
    if !(density > 0.0 && density <= 1.0) {
        return Err(Error::Validation(format!("density must lie in (0, 1], got {density}")));
    }
    if spec.truncation < 1 {
        return Err(Error::Validation("truncation M must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let alpha = Alphabet::new(x, spec);
    let (alphabet, len) = word_shape(x, spec, p);
    let size = raw_basis_size(x, spec, p);
    let mut terms: Vec<(Term, S)> = Vec::new();
    if size <= ENUMERATION_LIMIT {
        let mut admissible = Vec::new();
        let mut word = vec![0usize; len];
        for _ in 0..size {
            if let Some(t) = alpha.term(&word) {
                admissible.push(t);
            }
            for slot in word.iter_mut().rev() {
                *slot += 1;
                if *slot < alphabet {
                    break;
                }
                *slot = 0;
            }
        }
        if admissible.is_empty() {
            return Err(Error::EmptyBasis);
        }
        let forced = rng.gen_range(0..admissible.len());
        let mut kept = Vec::new();
        for (n, t) in admissible.into_iter().enumerate() {
            if rng.gen_bool(density) {
                kept.push((t, S::small_random(&mut rng)));
            } else if n == forced {
                kept.push((t, S::zero()));
            }
        }
        let any_nonzero = kept.iter().any(|(_, c)| !c.is_zero());
        for (t, c) in kept {
            if !c.is_zero() {
                terms.push((t, c));
            } else if !any_nonzero {
                terms.push((t, S::small_random(&mut rng)));
            }
        }
    } else {
        let draws = ((density * size as f64).ceil() as usize).clamp(1, MAX_SAMPLED_TERMS);
        let mut misses = 0;
        while terms.len() < draws {
            match alpha.term(&sample_word(&mut rng, spec.family, alphabet, len)) {
                Some(t) => terms.push((t, S::small_random(&mut rng))),
                None => {
                    misses += 1;
                    if misses > ATTEMPTS_PER_TERM * draws {
                        if terms.is_empty() {
                            return Err(Error::EmptyBasis);
                        }
                        break;
                    }
                }
            }
        }
    }
    Ok(assemble(spec.family, p, terms))
}

fn assemble<S: Scalar>(family: ChainFamily, p: usize, terms: Vec<(Term, S)>) -> RandomChain<S> {
    match family {
        ChainFamily::Symbol => {
            let mut out = LinComb::new();
            for (t, c) in terms {
                if let Term::Vertices(v) = t {
                    out.add_term(v, c);
                }
            }
            RandomChain::Symbol(SymbolChain::from_terms(p, out.iter().map(|(k, c)| (k.clone(), c.clone()))).unwrap())
        }
        ChainFamily::AlexanderSpanier => {
            let mut out = LinComb::new();
            for (t, c) in terms {
                if let Term::Simplices(v) = t {
                    out.add_term(v, c);
                }
            }
            RandomChain::As(AsChain::from_terms(p, out.iter().map(|(k, c)| (k.clone(), c.clone()))).unwrap())
        }
        _ => {
            let mut out = LinComb::new();
            for (t, c) in terms {
                if let Term::Kernels(k) = t {
                    out.add_term(k, c);
                }
            }
            RandomChain::Hochschild(HochschildChain::from_lincomb(p, out))
        }
    }
}

/// Deliberate operator defects used to check that the battery has teeth.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mutation {
    /// θ with its overall sign reversed.
    ThetaSignFlip,
    /// s inserts the identity factor before the first gap instead of after it.
    SInsertBefore,
    /// b without the cyclic face.
    BoundaryWithoutCyclicFace,
    /// s uses the slot after the first gap, cyclically.
    FirstGapOffByOne,
    /// S̃ stops at θ^p instead of θ^{p+1}.
    STildeShortSum,
}

impl Mutation {
    pub const ALL: [Mutation; 5] = [
        Mutation::ThetaSignFlip,
        Mutation::SInsertBefore,
        Mutation::BoundaryWithoutCyclicFace,
        Mutation::FirstGapOffByOne,
        Mutation::STildeShortSum,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Mutation::ThetaSignFlip => "theta-sign-flip",
            Mutation::SInsertBefore => "s-insert-before",
            Mutation::BoundaryWithoutCyclicFace => "b-without-cyclic-face",
            Mutation::FirstGapOffByOne => "first-gap-off-by-one",
            Mutation::STildeShortSum => "s-tilde-short-sum",
        }
    }
}

impl FromStr for Mutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Mutation::ALL
            .into_iter()
            .find(|m| m.name() == s.trim())
            .ok_or_else(|| Error::Parse(format!("unknown mutation {s:?}")))
    }
}

/// The operators under test, optionally with one mutation applied.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Operators {
    pub mutation: Option<Mutation>,
}

impl Operators {
    pub fn mutated(m: Mutation) -> Self {
        Self { mutation: Some(m) }
    }

    fn has(&self, m: Mutation) -> bool {
        self.mutation == Some(m)
    }

    pub fn b<S: Scalar>(&self, k: &HochschildChain<S>) -> HochschildChain<S> {
        if self.has(Mutation::BoundaryWithoutCyclicFace) {
            k.boundary_truncated()
        } else {
            k.boundary()
        }
    }

    pub fn s<S: Scalar>(&self, k: &HochschildChain<S>) -> Result<HochschildChain<S>> {
        if !k.is_gapped() {
            return Err(Error::NotGapped);
        }
        let p = k.degree();
        let mut out = LinComb::new();
        for (t, c) in k.iter() {
            let mut r = find_first_gap(t).expect("gapped term");
            if self.has(Mutation::FirstGapOffByOne) {
                r = (r + 1) % (p + 1);
            }
            let id = ElementaryKernel::new(t[r].col, t[r].col);
            let image = if self.has(Mutation::SInsertBefore) {
                let mut v = t.clone();
                v.insert(r, id);
                v
            } else {
                insert_after(t, r, id)
            };
            out.add_term(image, c.clone() * S::from_i64(sign(r)));
        }
        Ok(HochschildChain::from_lincomb(p + 1, out))
    }

    pub fn big_s<S: Scalar>(&self, k: &HochschildChain<S>, i: &DistinguishedBasis) -> Result<HochschildChain<S>> {
        homotopy_big_s(k, i)
    }

    /// θ, with the degree-0 convention.
    pub fn theta<S: Scalar>(&self, k: &HochschildChain<S>, i: &DistinguishedBasis) -> Result<HochschildChain<S>> {
        let t = theta_any(k, i)?;
        Ok(if self.has(Mutation::ThetaSignFlip) && k.degree() > 0 { t.scaled(&S::from_i64(-1)) } else { t })
    }

    pub fn theta_power<S: Scalar>(
        &self,
        k: &HochschildChain<S>,
        i: &DistinguishedBasis,
        power: usize,
    ) -> Result<HochschildChain<S>> {
        (0..power).try_fold(k.clone(), |acc, _| self.theta(&acc, i))
    }

    /// `(1 + θ + … + θ^{p+1}) S` on degree p.
    pub fn s_tilde<S: Scalar>(&self, k: &HochschildChain<S>, i: &DistinguishedBasis) -> Result<HochschildChain<S>> {
        let top = if self.has(Mutation::STildeShortSum) { k.degree() } else { k.degree() + 1 };
        let mut term = self.big_s(k, i)?;
        let mut sum = term.clone();
        for _ in 0..top {
            term = self.theta(&term, i)?;
            sum = sum.plus(&term);
        }
        Ok(sum)
    }
}

/// The identities of the battery.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Identity {
    /// `b s + s b = Id` on gapped chains.
    GappedContraction,
    /// `b′ S + S b′ = Id` on diagonal chains.
    TruncatedContraction,
    /// `b S + S b = Id − θ` on diagonal chains.
    ThetaHomotopy,
    /// `b − b′ = (−1)^p ∂_p`.
    CyclicFaceSplit,
    /// `b b = 0`.
    BoundarySquared,
    /// `[bK] = ∂[K]`.
    SymbolBoundary,
    /// `[θK]` matches θ computed on symbols.
    SymbolTheta,
    /// `[θ^p K]` matches the product expansion.
    ThetaPowerProduct,
    /// `θ^{p+1}` lands in the reduced complex.
    ThetaPowerReduced,
    /// `θ b = b θ`.
    ThetaCommutes,
    /// `b S̃_p + S̃_{p−1} b = 1 − θ^{p+2}` on chains where it holds (see [`Identity::STildeRemainder`]).
    STildeHomotopy,
    /// `b S̃_p + S̃_{p−1} b = 1 − θ^{p+2} − θ^{p+1} S_{p−1} b` on all diagonal chains.
    STildeRemainder,
    /// `K = θ^{p+2} K + b S̃ K` on cycles, with `θ^{p+2} K` reduced.
    CycleReduction,
    /// `L̃ = S̃ K + θ^{p+2} L` is reduced and bounds `K = bL`.
    BoundaryLift,
    /// `‖K∘L‖² ≤ ‖K‖² ‖L‖²`.
    NormSubmultiplicative,
    /// `‖sK‖ = ‖K‖`.
    GappedIsometry,
    /// `‖SK‖ = ‖K‖`.
    DiagonalIsometry,
    /// Alexander-Spanier boundary of the restricted symbol equals the restricted symbol boundary.
    AsBoundary,
    /// Squared ε-radius of `bK` at most four times that of `K`.
    RadiusDoubling,
    /// b, s and S never increase the simplicial diameter.
    DiameterMonotone,
}

impl Identity {
    pub const ALL: [Identity; 20] = [
        Identity::GappedContraction,
        Identity::TruncatedContraction,
        Identity::ThetaHomotopy,
        Identity::CyclicFaceSplit,
        Identity::BoundarySquared,
        Identity::SymbolBoundary,
        Identity::SymbolTheta,
        Identity::ThetaPowerProduct,
        Identity::ThetaPowerReduced,
        Identity::ThetaCommutes,
        Identity::STildeHomotopy,
        Identity::STildeRemainder,
        Identity::CycleReduction,
        Identity::BoundaryLift,
        Identity::NormSubmultiplicative,
        Identity::GappedIsometry,
        Identity::DiagonalIsometry,
        Identity::AsBoundary,
        Identity::RadiusDoubling,
        Identity::DiameterMonotone,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::GappedContraction => "gapped-contraction",
            Identity::TruncatedContraction => "truncated-contraction",
            Identity::ThetaHomotopy => "theta-homotopy",
            Identity::CyclicFaceSplit => "cyclic-face-split",
            Identity::BoundarySquared => "boundary-squared",
            Identity::SymbolBoundary => "symbol-boundary",
            Identity::SymbolTheta => "symbol-theta",
            Identity::ThetaPowerProduct => "theta-power-product",
            Identity::ThetaPowerReduced => "theta-power-reduced",
            Identity::ThetaCommutes => "theta-commutes-with-b",
            Identity::STildeHomotopy => "s-tilde-homotopy",
            Identity::STildeRemainder => "s-tilde-remainder",
            Identity::CycleReduction => "cycle-reduction",
            Identity::BoundaryLift => "boundary-lift",
            Identity::NormSubmultiplicative => "norm-submultiplicative",
            Identity::GappedIsometry => "s-isometry",
            Identity::DiagonalIsometry => "big-s-isometry",
            Identity::AsBoundary => "alexander-spanier-boundary",
            Identity::RadiusDoubling => "boundary-radius-doubling",
            Identity::DiameterMonotone => "diameter-monotone",
        }
    }

    /// Input family and degree range of the default case.
    pub fn default_shape(self) -> (ChainFamily, Vec<usize>) {
        use ChainFamily::*;
        let (family, degrees) = match self {
            Identity::GappedContraction | Identity::GappedIsometry => (Gapped, 0..=3),
            Identity::TruncatedContraction
            | Identity::ThetaHomotopy
            | Identity::ThetaPowerReduced
            | Identity::STildeHomotopy
            | Identity::STildeRemainder
            | Identity::CycleReduction
            | Identity::BoundaryLift
            | Identity::DiagonalIsometry => (Diagonal, 0..=3),
            Identity::SymbolBoundary | Identity::SymbolTheta | Identity::ThetaPowerProduct | Identity::ThetaCommutes => {
                (Diagonal, 1..=3)
            }
            Identity::CyclicFaceSplit | Identity::RadiusDoubling | Identity::DiameterMonotone => (Full, 0..=3),
            Identity::BoundarySquared => (Full, 2..=3),
            Identity::AsBoundary => (Reduced, 1..=3),
            Identity::NormSubmultiplicative => (Full, 0..=0),
        };
        (family, degrees.collect())
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Identity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Identity::ALL
            .into_iter()
            .find(|i| i.name() == s.trim())
            .ok_or_else(|| Error::Parse(format!("unknown identity {s:?}")))
    }
}

/// One battery entry. `trials` random inputs are drawn per degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCase {
    pub id: Identity,
    pub family: ChainFamily,
    pub degrees: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
}

impl IdentityCase {
    pub fn new(id: Identity, trials: usize, seed: u64) -> Self {
        let (family, degrees) = id.default_shape();
        Self { id, family, degrees, trials, seed }
    }
}

/// Every identity once per seed, in declaration order. `b b = 0` is repeated for each family.
pub fn default_battery(trials: usize, seeds: &[u64]) -> Vec<IdentityCase> {
    let mut cases = Vec::new();
    for &seed in seeds {
        for id in Identity::ALL {
            if id == Identity::BoundarySquared {
                for family in ChainFamily::ALL {
                    cases.push(IdentityCase { family, ..IdentityCase::new(id, trials, seed) });
                }
            } else {
                cases.push(IdentityCase::new(id, trials, seed));
            }
        }
    }
    cases
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CaseResult {
    pub id: Identity,
    pub family: ChainFamily,
    pub degrees: Vec<usize>,
    pub seed: u64,
    pub trials: usize,
    pub failures: usize,
    /// First failing input, with whatever was computed from it.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Ledger {
    pub complex: String,
    pub truncation: u32,
    pub field: String,
    pub mutation: Option<Mutation>,
    pub cases: Vec<CaseResult>,
}

impl Ledger {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.failures == 0)
    }

    pub fn failures(&self) -> usize {
        self.cases.iter().map(|c| c.failures).sum()
    }

    /// Failing cases' identity names, without duplicates.
    pub fn failing_identities(&self) -> Vec<Identity> {
        let mut ids: Vec<_> = self.cases.iter().filter(|c| c.failures > 0).map(|c| c.id).collect();
        ids.sort();
        ids.dedup();
        ids
    }

    pub fn to_table(&self) -> String {
        let mut out = format!("complex {}  M={}  field {}\n", self.complex, self.truncation, self.field);
        if let Some(m) = self.mutation {
            out.push_str(&format!("mutation {}\n", m.name()));
        }
        out.push_str(&format!("{:<28} {:<18} {:<9} {:>5} {:>7} {:>8}\n", "identity", "family", "degrees", "seed", "trials", "failures"));
        for c in &self.cases {
            let degrees = match (c.degrees.first(), c.degrees.last()) {
                (Some(a), Some(b)) if a != b => format!("{a}..{b}"),
                (Some(a), _) => a.to_string(),
                _ => "-".into(),
            };
            out.push_str(&format!(
                "{:<28} {:<18} {:<9} {:>5} {:>7} {:>8}\n",
                c.id.name(),
                c.family.name(),
                degrees,
                c.seed,
                c.trials,
                c.failures
            ));
        }
        out.push_str(if self.passed() { "PASS\n" } else { "FAIL\n" });
        out
    }
}

/// Runs every case; failures are recorded, never raised.
pub fn run_identities<S: RandomScalar>(
    x: &SimplicialComplex,
    truncation: u32,
    cases: &[IdentityCase],
    ops: &Operators,
) -> Vec<CaseResult> {
    cases
        .iter()
        .map(|case| {
            let spec = ChainSpec::new(case.family, truncation);
            let mut failures = 0;
            let mut counterexample = None;
            for &p in &case.degrees {
                for trial in 0..case.trials {
                    let seed = trial_seed(case, p, trial);
                    let outcome = check::<S>(x, &spec, case.id, p, seed, ops);
                    let dump = match outcome {
                        Ok(None) => continue,
                        Ok(Some(dump)) => dump,
                        Err(e) => json!({ "error": e.to_string() }),
                    };
                    failures += 1;
                    if counterexample.is_none() {
                        counterexample = Some(json!({ "degree": p, "trial": trial, "seed": seed, "detail": dump }));
                    }
                }
            }
            CaseResult {
                id: case.id,
                family: case.family,
                degrees: case.degrees.clone(),
                seed: case.seed,
                trials: case.trials,
                failures,
                counterexample,
            }
        })
        .collect()
}

/// Runs the cases on one complex and wraps the results with their context.
pub fn run_ledger<S: RandomScalar>(
    name: &str,
    x: &SimplicialComplex,
    truncation: u32,
    cases: &[IdentityCase],
    ops: &Operators,
    field: &str,
) -> Ledger {
    Ledger {
        complex: name.to_string(),
        truncation,
        field: field.to_string(),
        mutation: ops.mutation,
        cases: run_identities::<S>(x, truncation, cases, ops),
    }
}

fn trial_seed(case: &IdentityCase, p: usize, trial: usize) -> u64 {
    let id = Identity::ALL.iter().position(|i| *i == case.id).unwrap() as u64;
    let fam = ChainFamily::ALL.iter().position(|f| *f == case.family).unwrap() as u64;
    let mut h = case.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    for v in [id, fam, p as u64, trial as u64] {
        h = (h ^ v).wrapping_mul(0xBF58_476D_1CE4_E5B9).rotate_left(31);
    }
    h
}

/// Chain sizes stay in the single digits so that θ-powers remain cheap.
fn battery_density(x: &SimplicialComplex, spec: &ChainSpec, p: usize) -> f64 {
    (4.0 / raw_basis_size(x, spec, p).max(1) as f64).min(1.0)
}

fn draw<S: RandomScalar>(
    x: &SimplicialComplex,
    spec: &ChainSpec,
    family: ChainFamily,
    p: usize,
    seed: u64,
) -> Result<RandomChain<S>> {
    let spec = spec.with_family(family);
    gen_random_chain(x, &spec, p, battery_density(x, &spec, p), seed)
}

fn draw_k<S: RandomScalar>(
    x: &SimplicialComplex,
    spec: &ChainSpec,
    family: ChainFamily,
    p: usize,
    seed: u64,
) -> Result<HochschildChain<S>> {
    Ok(draw::<S>(x, spec, family, p, seed)?.into_hochschild())
}

fn mismatch<S: Scalar>(input: &HochschildChain<S>, lhs: &HochschildChain<S>, rhs: &HochschildChain<S>) -> Option<Value> {
    (lhs != rhs).then(|| json!({ "input": input.to_json(), "lhs": lhs.to_json(), "rhs": rhs.to_json() }))
}

fn check<S: RandomScalar>(
    x: &SimplicialComplex,
    spec: &ChainSpec,
    id: Identity,
    p: usize,
    seed: u64,
    ops: &Operators,
) -> Result<Option<Value>> {
    let i = &spec.distinguished;
    match id {
        Identity::GappedContraction => {
            let k = draw_k::<S>(x, spec, ChainFamily::Gapped, p, seed)?;
            let mut lhs = ops.b(&ops.s(&k)?);
            if p > 0 {
                lhs = lhs.plus(&ops.s(&ops.b(&k))?);
            }
            Ok(mismatch(&k, &lhs, &k))
        }
        Identity::TruncatedContraction => {
            let k = draw_k::<S>(x, spec, ChainFamily::Diagonal, p, seed)?;
            let mut lhs = ops.big_s(&k, i)?.boundary_truncated();
            if p > 0 {
                lhs = lhs.plus(&ops.big_s(&k.boundary_truncated(), i)?);
            }
            Ok(mismatch(&k, &lhs, &k))
        }
        Identity::ThetaHomotopy => {
            let k = draw_k::<S>(x, spec, ChainFamily::Diagonal, p, seed)?;
            let mut lhs = ops.b(&ops.big_s(&k, i)?);
            if p > 0 {
                lhs = lhs.plus(&ops.big_s(&ops.b(&k), i)?);
            }
            let rhs = k.minus(&ops.theta(&k, i)?);
            Ok(mismatch(&k, &lhs, &rhs))
        }
        Identity::CyclicFaceSplit => {
            let k = draw_k::<S>(x, spec, ChainFamily::Full, p, seed)?;
            let lhs = ops.b(&k).minus(&k.boundary_truncated());
            let rhs = k.cyclic_face().scaled(&S::from_i64(sign(p)));
            Ok(mismatch(&k, &lhs, &rhs))
        }
        Identity::BoundarySquared => {
            let chain = draw::<S>(x, spec, spec.family, p, seed)?;
            let zero = match &chain {
                RandomChain::Hochschild(k) => ops.b(&ops.b(k)).is_zero(),
                RandomChain::Symbol(s) => s.boundary()?.boundary()?.is_zero(),
                RandomChain::As(g) => g.boundary()?.boundary()?.is_zero(),
            };
            Ok((!zero).then(|| json!({ "input": chain.to_json() })))
        }
        Identity::SymbolBoundary => {
            let k = draw_k::<S>(x, spec, ChainFamily::Diagonal, p, seed)?;
            let lhs = symbol_of(&ops.b(&k))?;
            let rhs = symbol_of(&k)?.boundary()?;
            Ok(symbol_mismatch(&k, &lhs, &rhs))
        }
        Identity::SymbolTheta => {
            let k = draw_k::<S>(x, spec, ChainFamily::Diagonal, p, seed)?;
            let lhs = symbol_of(&ops.theta(&k, i)?)?;
            let rhs = symbol_theta(&symbol_of(&k)?, i)?;
            Ok(symbol_mismatch(&k, &lhs, &rhs))
        }
        Identity::ThetaPowerProduct => {
            let k = draw_k::<S>(x, spec, ChainFamily::Diagonal, p, seed)?;
            let lhs = symbol_of(&ops.theta_power(&k, i, p)?)?;
            let mut rhs = SymbolChain::zero(p);
            for (v, c) in symbol_of(&k)?.iter() {
                let expansion: SymbolChain<S> = theta_power_product(v, i);
                let scaled = SymbolChain::from_terms(p, expansion.iter().map(|(t, e)| (t.clone(), e.clone() * c.clone())))?;
                rhs = rhs.plus(&scaled);
            }
            Ok(symbol_mismatch(&k, &lhs, &rhs))
        }
        Identity::ThetaPowerReduced => {
            let k = draw_k::<S>(x, spec, ChainFamily::Diagonal, p, seed)?;
            let image = ops.theta_power(&k, i, p + 1)?;
            Ok((!is_reduced_chain(&image, i)).then(|| json!({ "input": k.to_json(), "image": image.to_json() })))
        }
        Identity::ThetaCommutes => {
            let k = draw_k::<S>(x, spec, ChainFamily::Diagonal, p, seed)?;
            let lhs = ops.theta(&ops.b(&k), i)?;
            let rhs = ops.b(&ops.theta(&k, i)?);
            Ok(mismatch(&k, &lhs, &rhs))
        }
        Identity::STildeHomotopy | Identity::STildeRemainder => {
            let k = if id == Identity::STildeHomotopy && p >= 2 {
                ops.b(&draw_k::<S>(x, spec, ChainFamily::Diagonal, p + 1, seed)?)
            } else {
                draw_k::<S>(x, spec, ChainFamily::Diagonal, p, seed)?
            };
            let bk = ops.b(&k);
            let mut lhs = ops.b(&ops.s_tilde(&k, i)?);
            let mut rhs = k.minus(&ops.theta_power(&k, i, p + 2)?);
            if p > 0 {
                lhs = lhs.plus(&ops.s_tilde(&bk, i)?);
                if id == Identity::STildeRemainder {
                    rhs = rhs.minus(&ops.theta_power(&ops.big_s(&bk, i)?, i, p + 1)?);
                }
            }
            Ok(mismatch(&k, &lhs, &rhs))
        }
        Identity::CycleReduction => {
            let k = if p == 0 {
                draw_k::<S>(x, spec, ChainFamily::Diagonal, 0, seed)?
            } else {
                ops.b(&draw_k::<S>(x, spec, ChainFamily::Diagonal, p + 1, seed)?)
            };
            let rep = ops.theta_power(&k, i, p + 2)?;
            let rhs = rep.plus(&ops.b(&ops.s_tilde(&k, i)?));
            if !is_reduced_chain(&rep, i) {
                return Ok(Some(json!({ "input": k.to_json(), "representative": rep.to_json() })));
            }
            Ok(mismatch(&k, &k, &rhs))
        }
        Identity::BoundaryLift => {
            let l = if seed % 2 == 0 {
                draw_k::<S>(x, spec, ChainFamily::Reduced, p + 1, seed)?
            } else {
                ops.theta_power(&draw_k::<S>(x, spec, ChainFamily::Diagonal, p + 1, seed)?, i, p + 2)?
            };
            let k = ops.b(&l);
            let lifted = ops.s_tilde(&k, i)?.plus(&ops.theta_power(&l, i, p + 2)?);
            let bounds = ops.b(&lifted);
            if !is_reduced_chain(&lifted, i) || bounds != k {
                return Ok(Some(json!({ "L": l.to_json(), "K": k.to_json(), "lifted": lifted.to_json() })));
            }
            Ok(None)
        }
        Identity::NormSubmultiplicative => {
            let a = kernel_of(draw_k::<S>(x, spec, ChainFamily::Full, 0, seed)?);
            let b = kernel_of(draw_k::<S>(x, spec, ChainFamily::Full, 0, seed ^ 0x5555_5555)?);
            let prod = squared_norm(&compose(&a, &b));
            let bound = squared_norm(&a) * squared_norm(&b);
            Ok((prod > bound).then(|| {
                json!({
                    "K": crate::kernel::kernel_to_json(&a),
                    "L": crate::kernel::kernel_to_json(&b),
                })
            }))
        }
        Identity::GappedIsometry => {
            let k = draw_k::<S>(x, spec, ChainFamily::Gapped, p, seed)?;
            let image = ops.s(&k)?;
            Ok((image.squared_norm() != k.squared_norm()).then(|| json!({ "input": k.to_json(), "image": image.to_json() })))
        }
        Identity::DiagonalIsometry => {
            let k = draw_k::<S>(x, spec, ChainFamily::Diagonal, p, seed)?;
            let image = ops.big_s(&k, i)?;
            Ok((image.squared_norm() != k.squared_norm()).then(|| json!({ "input": k.to_json(), "image": image.to_json() })))
        }
        Identity::AsBoundary => {
            let k = draw_k::<S>(x, spec, ChainFamily::Reduced, p, seed)?;
            let lhs = restrict_to_i(&symbol_of(&ops.b(&k))?, i)?;
            let rhs = as_boundary(&restrict_to_i(&symbol_of(&k)?, i)?)?;
            Ok((lhs != rhs).then(|| {
                json!({
                    "input": k.to_json(),
                    "lhs": crate::bridge::as_chain_to_json(&lhs),
                    "rhs": crate::bridge::as_chain_to_json(&rhs),
                })
            }))
        }
        Identity::RadiusDoubling => {
            let k = draw_k::<S>(x, spec, ChainFamily::Full, p, seed)?;
            let r = k.epsilon_support_radius(x)?;
            let rb = ops.b(&k).epsilon_support_radius(x)?;
            Ok((rb > r * Rational::from_i64(4)).then(|| json!({ "input": k.to_json() })))
        }
        Identity::DiameterMonotone => {
            let k = draw_k::<S>(x, spec, ChainFamily::Full, p, seed)?;
            let split = k.split();
            let d = k.diameter(x)?;
            let ok = ops.b(&k).diameter(x)? <= d
                && ops.s(&split.gapped)?.diameter(x)? <= split.gapped.diameter(x)?
                && ops.big_s(&split.diagonal, i)?.diameter(x)? <= split.diagonal.diameter(x)?;
            Ok((!ok).then(|| json!({ "input": k.to_json() })))
        }
    }
}

fn kernel_of<S: Scalar>(k: HochschildChain<S>) -> Kernel<S> {
    k.iter().map(|(t, c)| (t[0], c.clone())).collect()
}

fn symbol_mismatch<S: Scalar>(input: &HochschildChain<S>, lhs: &SymbolChain<S>, rhs: &SymbolChain<S>) -> Option<Value> {
    (lhs != rhs).then(|| json!({ "input": input.to_json(), "lhs": symbol_to_json(lhs), "rhs": symbol_to_json(rhs) }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::hochschild::is_diagonal_tuple;

    #[test]
    fn generation_is_reproducible() {
        let x = fixtures::hexagon();
        for family in ChainFamily::ALL {
            let spec = ChainSpec::new(family, 2);
            let a: RandomChain = gen_random_chain(&x, &spec, 2, 0.01, 7).unwrap();
            let b: RandomChain = gen_random_chain(&x, &spec, 2, 0.01, 7).unwrap();
            assert_eq!(a, b, "{family}");
        }
    }

    #[test]
    fn families_are_honoured() {
        let x = fixtures::hexagon();
        let i = DistinguishedBasis::default();
        for seed in 0..20 {
            let d = gen_random_chain::<Rational>(&x, &ChainSpec::new(ChainFamily::Diagonal, 2), 3, 0.001, seed)
                .unwrap()
                .into_hochschild();
            assert!(d.iter().all(|(t, _)| is_diagonal_tuple(t)));
            let g = gen_random_chain::<Rational>(&x, &ChainSpec::new(ChainFamily::Gapped, 2), 2, 0.001, seed)
                .unwrap()
                .into_hochschild();
            assert!(g.iter().all(|(t, _)| find_first_gap(t).is_some()));
            let r = gen_random_chain::<Rational>(&x, &ChainSpec::new(ChainFamily::Reduced, 2), 2, 0.01, seed)
                .unwrap()
                .into_hochschild();
            assert!(is_reduced_chain(&r, &i));
        }
    }

    #[test]
    fn full_density_on_tiny_basis_takes_everything() {
        let x = fixtures::triangle();
        let spec = ChainSpec::new(ChainFamily::Full, 2);
        let k = gen_random_chain::<Rational>(&x, &spec, 1, 1.0, 3).unwrap().into_hochschild();
        assert_eq!(k.len(), 16);
        let a = gen_random_chain::<Rational>(&x, &ChainSpec::new(ChainFamily::AlexanderSpanier, 1), 2, 1.0, 3).unwrap();
        assert!(matches!(a, RandomChain::As(ref g) if g.len() == 1));
    }

    #[test]
    fn locality_filters_and_empty_basis() {
        let x = fixtures::hexagon();
        let spec = ChainSpec::new(ChainFamily::AlexanderSpanier, 1).with_locality(Locality::Simplicial(1));
        let g = gen_random_chain::<Rational>(&x, &spec, 2, 0.5, 1).unwrap();
        let RandomChain::As(g) = g else { panic!() };
        for (t, _) in g.iter() {
            for a in t {
                for b in t {
                    assert!(x.simplicial_distance(*a, *b).unwrap() <= 1);
                }
            }
        }
        let two = fixtures::two_hexagons();
        let far = ChainSpec::new(ChainFamily::AlexanderSpanier, 1).with_locality(Locality::Metric(Rational::from_i64(0)));
        assert_eq!(gen_random_chain::<Rational>(&two, &far, 1, 1.0, 1), Err(Error::EmptyBasis));
        assert!(gen_random_chain::<Rational>(&x, &spec, 1, 0.0, 1).is_err());
    }

    #[test]
    fn empty_case_list_gives_empty_ledger() {
        let x = fixtures::triangle();
        assert!(run_identities::<Rational>(&x, 2, &[], &Operators::default()).is_empty());
    }

    #[test]
    fn small_battery_passes_over_both_fields() {
        let x = fixtures::hexagon();
        let cases = default_battery(8, &[11]);
        let ops = Operators::default();
        for r in run_identities::<Rational>(&x, 2, &cases, &ops) {
            assert_eq!(r.failures, 0, "{:?}", r.counterexample);
        }
        for r in run_identities::<GaussianRational>(&x, 2, &cases, &ops) {
            assert_eq!(r.failures, 0, "{:?}", r.counterexample);
        }
    }

    #[test]
    fn sign_flipped_theta_breaks_theta_homotopy() {
        let x = fixtures::hexagon();
        let cases = [IdentityCase::new(Identity::ThetaHomotopy, 20, 1)];
        let r = &run_identities::<Rational>(&x, 2, &cases, &Operators::mutated(Mutation::ThetaSignFlip))[0];
        assert!(r.failures > 0);
        let dump = r.counterexample.as_ref().unwrap();
        let replay = HochschildChain::<Rational>::from_json(&dump["detail"]["input"]).unwrap();
        assert!(replay.is_diagonal());
    }

    #[test]
    fn verbatim_s_tilde_identity_fails_off_cycles_in_degree_two() {
        // The remainder θ^{p+1} S b K is what the uniform statement misses.
        let x = fixtures::hexagon();
        let i = DistinguishedBasis::default();
        let ops = Operators::default();
        let spec = ChainSpec::new(ChainFamily::Diagonal, 2);
        let mut nonzero = 0;
        for seed in 0..40 {
            let k = draw_k::<Rational>(&x, &spec, ChainFamily::Diagonal, 2, seed).unwrap();
            let lhs = ops.b(&ops.s_tilde(&k, &i).unwrap()).plus(&ops.s_tilde(&ops.b(&k), &i).unwrap());
            let rhs = k.minus(&ops.theta_power(&k, &i, 4).unwrap());
            if lhs != rhs {
                nonzero += 1;
            }
        }
        assert!(nonzero > 0);
    }
}
