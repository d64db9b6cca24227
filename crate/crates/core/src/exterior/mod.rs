//! Graded exterior algebra on finitely many degree-1 generators.
//!
//! Monomials are [`IndexSet`]s, forms are sparse maps from monomials to
//! exact rationals. [`Basis`] fixes the coordinate system that every matrix
//! in the crate is written in: for a given degree, the monomials in
//! lexicographic order.

mod form;
mod index_set;
mod text;

use std::collections::BTreeMap;

pub use form::Form;
pub use index_set::{basis_of_degree, IndexSet, MAX_GENERATORS};
pub(crate) use index_set::subsets_of;
pub use text::{parse_form, render_form};

use crate::error::{Error, Result};
use crate::ratlin::{Matrix, Rational};

/// An ordered list of same-degree monomials used as coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Basis {
    degree: usize,
    ambient: usize,
    monomials: Vec<IndexSet>,
    lookup: BTreeMap<IndexSet, usize>,
}

impl Basis {
    /// All monomials of degree `k` on `ambient` generators.
    pub fn of_degree(k: usize, ambient: usize) -> Self {
        Basis::from_monomials(k, ambient, basis_of_degree(k, ambient))
    }

    /// Degree-`k` monomials using only the generators in `allowed`.
    pub fn restricted(k: usize, ambient: usize, allowed: &[usize]) -> Self {
        Basis::from_monomials(k, ambient, subsets_of(k, allowed))
    }

    fn from_monomials(degree: usize, ambient: usize, monomials: Vec<IndexSet>) -> Self {
        let lookup = monomials.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        Basis {
            degree,
            ambient,
            monomials,
            lookup,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[IndexSet] {
        &self.monomials
    }

    pub fn position(&self, s: IndexSet) -> Option<usize> {
        self.lookup.get(&s).copied()
    }

    pub fn element(&self, i: usize) -> Form {
        Form::monomial(self.ambient, self.monomials[i], Rational::from_integer(1.into()))
    }

    pub fn form(&self, coords: &[Rational]) -> Form {
        assert_eq!(coords.len(), self.len(), "coordinate length mismatch");
        let mut f = Form::zero(self.ambient);
        for (s, c) in self.monomials.iter().zip(coords) {
            f.add_term(*s, c.clone());
        }
        f
    }
}

/// Matrix of a linear map on forms from the span of `src` to the span of
/// `dst`. Fails if some image leaves the span of `dst`, in particular when
/// the map is not homogeneous of the expected degree.
pub fn operator_matrix<F>(f: F, src: &Basis, dst: &Basis) -> Result<Matrix>
where
    F: Fn(&Form) -> Form,
{
    let cols = (0..src.len())
        .map(|i| f(&src.element(i)).coords(dst))
        .collect::<Result<Vec<_>>>()
        .map_err(|e| match e {
            Error::Degree(m) => Error::Degree(format!("image is not homogeneous: {m}")),
            other => other,
        })?;
    Ok(Matrix::from_columns(dst.len(), &cols))
}

/// [`operator_matrix`] between full degree-`k` and degree-`target` bases.
pub fn operator_matrix_degree<F>(f: F, k: usize, target: usize, ambient: usize) -> Result<Matrix>
where
    F: Fn(&Form) -> Form,
{
    operator_matrix(f, &Basis::of_degree(k, ambient), &Basis::of_degree(target, ambient))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratlin::rat;

    #[test]
    fn identity_matrix() {
        let m = operator_matrix_degree(|f| f.clone(), 1, 1, 2).unwrap();
        assert_eq!(m, Matrix::identity(2));
    }

    #[test]
    fn wedge_by_generator() {
        let e1 = Form::generator(2, 0);
        let m = operator_matrix_degree(|f| f.wedge(&e1).unwrap(), 0, 1, 2).unwrap();
        assert_eq!(m, Matrix::from_i64(&[&[1], &[0]]));
    }

    #[test]
    fn contraction_matrix() {
        // basis [e12, e13, e23] -> [e1, e2, e3]; contract(e1): e12 -> e2, e13 -> e3
        let m = operator_matrix_degree(|f| f.contract(0), 2, 1, 3).unwrap();
        assert_eq!(m, Matrix::from_i64(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0]]));
        // contract(e2): e12 -> -e1, e23 -> e3
        let m = operator_matrix_degree(|f| f.contract(1), 2, 1, 3).unwrap();
        assert_eq!(m, Matrix::from_i64(&[&[-1, 0, 0], &[0, 0, 0], &[0, 0, 1]]));
    }

    #[test]
    fn non_homogeneous_image_is_rejected() {
        let one = Form::one(2);
        let err = operator_matrix_degree(|f| f + &one, 1, 1, 2).unwrap_err();
        assert!(matches!(err, Error::Degree(_)));
    }

    #[test]
    fn basis_round_trip() {
        let b = Basis::of_degree(2, 4);
        let coords: Vec<Rational> = (0..6).map(|i| rat(i - 2, 3)).collect();
        assert_eq!(b.form(&coords).coords(&b).unwrap(), coords);
    }
}
