use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::symbol::Symbol;

/// Integer weights on symbols.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Grading {
    weights: BTreeMap<Symbol, i64>,
}

impl Grading {
    pub fn new(weights: impl IntoIterator<Item = (Symbol, i64)>) -> Self {
        Grading {
            weights: weights.into_iter().collect(),
        }
    }

    /// The scaling `(x21, x31, x32) -> (t x21, t x31, t^2 x32)` on the D0 slice.
    pub fn d0_scaling() -> Self {
        Grading::new([(Symbol::X21, 1), (Symbol::X31, 1), (Symbol::X32, 2)])
    }

    pub fn weight(&self, s: Symbol) -> Option<i64> {
        self.weights.get(&s).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Symbol, i64)> + '_ {
        self.weights.iter().map(|(&s, &w)| (s, w))
    }
}

/// Outcome of a weighted-degree query.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightedDegree {
    Homogeneous(i64),
    Inhomogeneous,
    /// The zero polynomial is homogeneous of every degree.
    Zero,
    /// Some symbol that occurs has no weight.
    Unweighted,
}

impl WeightedDegree {
    pub fn degree(self) -> Option<i64> {
        match self {
            WeightedDegree::Homogeneous(d) => Some(d),
            _ => None,
        }
    }
}

impl fmt::Display for WeightedDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightedDegree::Homogeneous(d) => write!(f, "{d}"),
            WeightedDegree::Inhomogeneous => f.write_str("inhomogeneous"),
            WeightedDegree::Zero => f.write_str("zero"),
            WeightedDegree::Unweighted => f.write_str("unweighted symbol"),
        }
    }
}
