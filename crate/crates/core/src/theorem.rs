//! Side-by-side comparison of local Hochschild, N-local symbol and Alexander-Spanier, and
//! simplicial homology on one space.

use std::fmt::Write as _;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::engine::{
    betti_numbers, induced_map_rank, local_homology_quotient, Family, FilteredComplexSpec, TubularWindow,
    DEFAULT_BASIS_CAP,
};
use crate::error::{Error, Result};
use crate::locality::Locality;
use crate::scalar::{format_rational, Rational};
use crate::simplicial::SimplicialComplex;

#[derive(Clone, Debug, PartialEq)]
pub struct Theorem1Config {
    pub truncation: u32,
    pub max_degree: usize,
    /// Simplicial locality bound for the N-local columns.
    pub n_local: u32,
    /// Barycentric subdivisions applied before the N-local columns.
    pub n_subdivisions: u32,
    /// Barycentric subdivisions applied before the ε-local column.
    pub eps_subdivisions: u32,
    /// Squared radii, any order; `None` derives two levels from the tubular window.
    pub eps_ladder: Option<Vec<Rational>>,
    pub k: u32,
    pub basis_cap: usize,
}

impl Default for Theorem1Config {
    fn default() -> Self {
        Self {
            truncation: 1,
            max_degree: 2,
            n_local: 1,
            n_subdivisions: 1,
            eps_subdivisions: 2,
            eps_ladder: None,
            k: 2,
            basis_cap: DEFAULT_BASIS_CAP,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Column {
    pub name: String,
    pub complex_simplices: usize,
    pub betti: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LevelReport {
    pub eps2: String,
    pub tubular: bool,
    pub dims: Vec<usize>,
    /// Ranks of the maps from this level into the next coarser one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub induced_ranks_to_coarser: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Theorem1Report {
    pub max_degree: usize,
    pub k: u32,
    pub n_local: u32,
    pub window: TubularWindow,
    pub levels: Vec<LevelReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stabilized_eps2: Option<String>,
    pub columns: Vec<Column>,
    /// Reduced Hochschild homology without any support condition, on the unsubdivided space.
    pub nonlocal_reduced: Vec<usize>,
    pub warnings: Vec<String>,
    pub pass: bool,
}

fn default_ladder(window: &TubularWindow, x: &SimplicialComplex) -> Vec<Rational> {
    let two = Rational::from_integer(2.into());
    match &window.high {
        Some(high) if !window.is_empty() => vec![high.clone(), (&window.low + high) / &two],
        _ => {
            // No admissible window: admit every one-ring pair and nothing farther than needed.
            let n = x.num_simplices();
            let mut above: Option<Rational> = None;
            for a in 0..n {
                for b in 0..n {
                    let g = x.tables().metric(a, b);
                    if *g > window.low && above.as_ref().is_none_or(|h| g < h) {
                        above = Some(g.clone());
                    }
                }
            }
            let next = above.unwrap_or_else(|| &window.low + Rational::from_integer(1.into()));
            vec![next.clone(), (&window.low + &next) / &two]
        }
    }
}

/// Def-56-style local homology over an ε ladder, with the level at which it stabilized.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Stabilization {
    pub window: TubularWindow,
    /// Sorted from coarse to fine.
    pub levels: Vec<LevelReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stabilized_eps2: Option<String>,
    pub dims: Vec<usize>,
    pub warnings: Vec<String>,
}

/// Evaluates the ε-local reduced quotient at every ladder level (coarse to fine) and the maps
/// between consecutive levels. The finest consecutive pair with equal dimensions whose induced
/// maps are isomorphisms determines the answer; with two or more levels and no such pair the
/// result is `NotStabilized`.
pub fn stabilize(
    xe: &SimplicialComplex,
    ladder: Option<Vec<Rational>>,
    truncation: u32,
    max_degree: usize,
    k: u32,
    basis_cap: usize,
) -> Result<Stabilization> {
    if k < 2 {
        return Err(Error::Validation("k must be at least 2".into()));
    }
    let mut warnings = Vec::new();
    let window = TubularWindow::of(xe);
    if window.is_empty() {
        warnings.push("no squared radius makes the ε-neighbourhood graph equal the one-ring graph".into());
    }
    let mut ladder = ladder.unwrap_or_else(|| default_ladder(&window, xe));
    if ladder.is_empty() {
        return Err(Error::Validation("the ε ladder is empty".into()));
    }
    if ladder.iter().any(|e| e <= &Rational::zero()) {
        return Err(Error::Validation("ε² levels must be positive".into()));
    }
    ladder.sort_by(|a, b| b.cmp(a));
    ladder.dedup();
    let reduced =
        FilteredComplexSpec::new(Family::HochschildReduced, Locality::None, truncation, max_degree).with_cap(basis_cap);
    let mut levels = Vec::new();
    for eps2 in &ladder {
        let dims = (0..=max_degree)
            .map(|p| local_homology_quotient(xe, &reduced, p, eps2, k))
            .collect::<Result<Vec<_>>>()?;
        let tubular = window.contains(eps2);
        if !tubular {
            warnings.push(format!("ε²={} violates the tubular-neighbourhood condition", format_rational(eps2)));
        }
        levels.push(LevelReport { eps2: format_rational(eps2), tubular, dims, induced_ranks_to_coarser: None });
    }
    let mut stabilized = None;
    for j in 1..ladder.len() {
        let ranks = (0..=max_degree)
            .map(|p| induced_map_rank(xe, &reduced, p, &ladder[j], &ladder[j - 1], k))
            .collect::<Result<Vec<_>>>()?;
        if levels[j].dims == levels[j - 1].dims && ranks == levels[j].dims {
            stabilized = Some(j);
        }
        levels[j].induced_ranks_to_coarser = Some(ranks);
    }
    let dims = match (ladder.len(), stabilized) {
        (1, _) => {
            warnings.push("single ε level: stabilization not checked".into());
            levels[0].dims.clone()
        }
        (_, Some(j)) => levels[j].dims.clone(),
        (_, None) => {
            let seen: Vec<String> = levels.iter().map(|l| format!("ε²={} → {:?}", l.eps2, l.dims)).collect();
            return Err(Error::NotStabilized(seen.join("; ")));
        }
    };
    Ok(Stabilization {
        window,
        stabilized_eps2: stabilized.map(|j| levels[j].eps2.clone()),
        levels,
        dims,
        warnings,
    })
}

pub fn theorem1_report(x: &SimplicialComplex, cfg: &Theorem1Config) -> Result<Theorem1Report> {
    if cfg.k < 2 {
        return Err(Error::Validation("k must be at least 2".into()));
    }
    let degree = cfg.max_degree;
    let spec = |family, locality| {
        FilteredComplexSpec::new(family, locality, cfg.truncation, degree).with_cap(cfg.basis_cap)
    };
    let mut warnings = Vec::new();
    let mut columns = Vec::new();

    let oracle = betti_numbers(x, &spec(Family::SimplicialOracle, Locality::None))?;
    columns.push(Column { name: "simplicial".into(), complex_simplices: x.num_simplices(), betti: oracle.betti });

    let xn = x.subdivided(cfg.n_subdivisions);
    for family in [Family::HochschildReduced, Family::SymbolI, Family::AlexanderSpanier] {
        let r = betti_numbers(&xn, &spec(family, Locality::Simplicial(cfg.n_local)))?;
        if r.top_degree_upper_bound {
            warnings.push(format!("{family}: top degree is an upper bound"));
        }
        columns.push(Column {
            name: format!("{family} N={}", cfg.n_local),
            complex_simplices: xn.num_simplices(),
            betti: r.betti,
        });
    }

    let xe = x.subdivided(cfg.eps_subdivisions);
    let st = stabilize(&xe, cfg.eps_ladder.clone(), cfg.truncation, degree, cfg.k, cfg.basis_cap)?;
    warnings.extend(st.warnings.iter().cloned());
    let local = st.dims.clone();
    columns.push(Column {
        name: format!("local reduced k={}", cfg.k),
        complex_simplices: xe.num_simplices(),
        betti: local,
    });

    let nonlocal = betti_numbers(x, &spec(Family::HochschildReduced, Locality::None))?;
    let pass = columns.windows(2).all(|w| w[0].betti == w[1].betti);
    Ok(Theorem1Report {
        max_degree: degree,
        k: cfg.k,
        n_local: cfg.n_local,
        window: st.window,
        stabilized_eps2: st.stabilized_eps2,
        levels: st.levels,
        columns,
        nonlocal_reduced: nonlocal.betti,
        warnings,
        pass,
    })
}

impl Theorem1Report {
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let width = self.columns.iter().map(|c| c.name.len()).max().unwrap_or(0).max("nonlocal reduced".len());
        let header: Vec<String> = (0..=self.max_degree).map(|p| format!("b{p:<3}")).collect();
        let _ = writeln!(out, "{:width$}  {:>9}  {}", "column", "simplices", header.join(" "));
        let row = |name: &str, size: String, betti: &[usize]| {
            let cells: Vec<String> = betti.iter().map(|b| format!("{b:<4}")).collect();
            format!("{name:width$}  {size:>9}  {}\n", cells.join(" "))
        };
        for c in &self.columns {
            out.push_str(&row(&c.name, c.complex_simplices.to_string(), &c.betti));
        }
        out.push_str(&row("nonlocal reduced", "-".into(), &self.nonlocal_reduced));
        for l in &self.levels {
            let ranks = l.induced_ranks_to_coarser.as_ref().map(|r| format!(" induced→coarser {r:?}")).unwrap_or_default();
            let flag = if l.tubular { "" } else { " [not tubular]" };
            let _ = writeln!(out, "level ε²={}: {:?}{ranks}{flag}", l.eps2, l.dims);
        }
        for w in &self.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
        let _ = writeln!(out, "{}", if self.pass { "PASS" } else { "FAIL" });
        out
    }
}
