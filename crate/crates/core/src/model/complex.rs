use crate::exterior::{Basis, Form};
use crate::ratlin::{Matrix, Rational};

/// A finite cochain complex: canonical monomial bases per degree and the
/// matrices of `d` between consecutive degrees.
#[derive(Clone, Debug)]
pub struct GradedComplex {
    bases: Vec<Basis>,
    /// `d[k]` maps degree `k` to degree `k + 1`; the last one has zero rows.
    d: Vec<Matrix>,
}

impl GradedComplex {
    pub(crate) fn new(bases: Vec<Basis>, d: Vec<Matrix>) -> Self {
        debug_assert_eq!(bases.len(), d.len());
        GradedComplex { bases, d }
    }

    /// Highest degree with a nonzero space.
    pub fn top(&self) -> usize {
        self.bases.len() - 1
    }

    pub fn dim(&self, k: usize) -> usize {
        self.bases.get(k).map_or(0, Basis::len)
    }

    pub fn dims(&self) -> Vec<usize> {
        self.bases.iter().map(Basis::len).collect()
    }

    pub fn basis(&self, k: usize) -> &Basis {
        &self.bases[k]
    }

    /// `d` from degree `k` to `k + 1`.
    pub fn d_out(&self, k: usize) -> &Matrix {
        &self.d[k]
    }

    /// `d` from degree `k - 1` to `k` (a `dim(k) × 0` matrix when `k = 0`).
    pub fn d_in(&self, k: usize) -> Matrix {
        if k == 0 {
            Matrix::zeros(self.dim(0), 0)
        } else {
            self.d[k - 1].clone()
        }
    }

    pub fn form(&self, k: usize, coords: &[Rational]) -> Form {
        self.bases[k].form(coords)
    }

    /// Checks `d ∘ d = 0` at every degree.
    pub fn is_complex(&self) -> bool {
        (1..self.d.len()).all(|k| (&self.d[k] * &self.d[k - 1]).is_zero())
    }
}
