//! Named parameters of the coefficient field.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::setcombin::SubsetIndex;

/// A named indeterminate: `α`, `βᵢ`, `γᵢ`, `λᵢⱼ` (always `i < j`), `η_S`
/// (`S ≠ ∅`; `η_∅` is the constant 1 and never a parameter), or `μ`.
///
/// The derived ordering fixes the global variable order used by the monomial
/// order of the polynomial layer.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum ParamName {
    Alpha,
    Mu,
    Beta(u8),
    Gamma(u8),
    Lambda(u8, u8),
    Eta(SubsetIndex),
}

impl ParamName {
    /// `λᵢⱼ` normalized to `i < j`; indices written in the other order always
    /// denote the same parameter.
    pub fn lambda(i: u8, j: u8) -> ParamName {
        assert_ne!(i, j, "λ_ii is a derived quantity (2βᵢ), not a parameter");
        if i < j {
            ParamName::Lambda(i, j)
        } else {
            ParamName::Lambda(j, i)
        }
    }

    /// `η_S` for a nonempty `S ⊆ {1, …, n}`.
    pub fn eta(s: SubsetIndex) -> ParamName {
        assert!(!s.is_empty(), "η_∅ = 1 is a constant, not a parameter");
        assert!(!s.contains(0), "η is indexed by subsets of {{1, …, n}}");
        ParamName::Eta(s)
    }

    /// Stable 64-bit key used by the deterministic random specializer.
    pub(crate) fn key(&self) -> u64 {
        match *self {
            ParamName::Alpha => 1,
            ParamName::Mu => 2,
            ParamName::Beta(i) => (3 << 40) | i as u64,
            ParamName::Gamma(i) => (4 << 40) | i as u64,
            ParamName::Lambda(i, j) => (5 << 40) | ((i as u64) << 20) | j as u64,
            ParamName::Eta(s) => (6 << 40) | s.mask() as u64,
        }
    }
}

impl fmt::Display for ParamName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ParamName::Alpha => write!(f, "alpha"),
            ParamName::Mu => write!(f, "mu"),
            ParamName::Beta(i) => write!(f, "beta{i}"),
            ParamName::Gamma(i) => write!(f, "gamma{i}"),
            ParamName::Lambda(i, j) => {
                if i <= 9 && j <= 9 {
                    write!(f, "lambda{i}{j}")
                } else {
                    write!(f, "lambda_{i}_{j}")
                }
            }
            ParamName::Eta(s) => {
                if s.max().unwrap_or(0) <= 9 {
                    write!(f, "eta")?;
                    for e in s.elements() {
                        write!(f, "{e}")?;
                    }
                    Ok(())
                } else {
                    write!(f, "eta")?;
                    for e in s.elements() {
                        write!(f, "_{e}")?;
                    }
                    Ok(())
                }
            }
        }
    }
}
