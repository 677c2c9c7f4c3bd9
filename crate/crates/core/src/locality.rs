//! Support filters: simplicial N-locality and metric ε-locality.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::scalar::{format_rational, parse_rational, Rational};
use crate::simplicial::SimplicialComplex;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Locality {
    None,
    /// Every pair of slots within simplicial distance N.
    Simplicial(u32),
    /// Every pair of slots at squared metric gap strictly below the given ε².
    Metric(Rational),
}

impl Locality {
    /// Pairwise test on simplex positions; disconnected pairs fail any N bound.
    pub fn admits(&self, x: &SimplicialComplex, slots: &[usize]) -> bool {
        match self {
            Locality::None => true,
            Locality::Simplicial(n) => pairwise(slots, |a, b| x.tables().simplicial(a, b).is_some_and(|d| d <= *n)),
            Locality::Metric(eps2) => pairwise(slots, |a, b| x.tables().metric(a, b) < eps2),
        }
    }

    /// Test for one new slot against the slots already chosen.
    pub fn admits_pair(&self, x: &SimplicialComplex, a: usize, b: usize) -> bool {
        match self {
            Locality::None => true,
            Locality::Simplicial(n) => x.tables().simplicial(a, b).is_some_and(|d| d <= *n),
            Locality::Metric(eps2) => x.tables().metric(a, b) < eps2,
        }
    }
}

fn pairwise(slots: &[usize], ok: impl Fn(usize, usize) -> bool) -> bool {
    slots.iter().enumerate().all(|(i, &a)| slots[i..].iter().all(|&b| ok(a, b)))
}

impl fmt::Display for Locality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Locality::None => write!(f, "none"),
            Locality::Simplicial(n) => write!(f, "N={n}"),
            Locality::Metric(e) => write!(f, "eps2={}", format_rational(e)),
        }
    }
}

/// Accepts `none`, `N=<n>`, and `eps2=<p/q>` (a squared radius).
impl FromStr for Locality {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("none") {
            return Ok(Locality::None);
        }
        if let Some(n) = s.strip_prefix("N=") {
            return n.parse().map(Locality::Simplicial).map_err(|_| Error::Parse(format!("bad N in {s:?}")));
        }
        if let Some(e) = s.strip_prefix("eps2=") {
            return Ok(Locality::Metric(parse_rational(e)?));
        }
        Err(Error::Parse(format!("locality must be none, N=<n> or eps2=<p/q>, got {s:?}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;

    #[test]
    fn parse_and_display() {
        for text in ["none", "N=2", "eps2=3/4"] {
            assert_eq!(text.parse::<Locality>().unwrap().to_string(), text);
        }
        assert_eq!("eps2=1/2".parse::<Locality>().unwrap(), Locality::Metric(rational(1, 2)));
        assert!("N=x".parse::<Locality>().is_err());
        assert!("far".parse::<Locality>().is_err());
    }
}
