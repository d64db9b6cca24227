//! Exact rational linear algebra.
//!
//! Everything downstream (ranks, kernels, cohomology quotients, subspace
//! equalities) goes through this module. Matrices are dense and all
//! arithmetic is exact, so two subspaces are equal exactly when their
//! canonical bases are equal entry for entry.

mod matrix;
mod rational;
mod subspace;

pub use matrix::{rref, Matrix};
pub use rational::{parse_rational, rat, Rational};
pub use subspace::{quotient_map, Subspace};

/// Result of [`Matrix::solve`]: either one exact solution or a definite
/// verdict that the system is inconsistent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    Unique(Vec<Rational>),
    /// A particular solution together with a basis of the homogeneous
    /// solution space.
    Family {
        particular: Vec<Rational>,
        homogeneous: Subspace,
    },
    Inconsistent,
}

impl Solution {
    pub fn particular(&self) -> Option<&[Rational]> {
        match self {
            Solution::Unique(v) => Some(v),
            Solution::Family { particular, .. } => Some(particular),
            Solution::Inconsistent => None,
        }
    }

    pub fn is_consistent(&self) -> bool {
        !matches!(self, Solution::Inconsistent)
    }
}
