use num_traits::Zero;

use super::{rref, Matrix, Rational};
use crate::error::{Error, Result};

/// A linear subspace of `Q^ambient` held in canonical form: the basis is the
/// set of nonzero rows of the reduced row echelon form of any spanning set.
/// Because that form is unique, two subspaces are equal iff their stored
/// bases are equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    /// `dim × ambient`, one canonical basis vector per row.
    rows: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn span(ambient: usize, vectors: &[Vec<Rational>]) -> Self {
        let m = Matrix::from_rows(vectors.to_vec(), ambient);
        assert_eq!(m.cols(), ambient, "vector length does not match ambient");
        let (r, pivots) = rref(&m);
        let keep: Vec<usize> = (0..pivots.len()).collect();
        Subspace {
            ambient,
            rows: r.select_rows(&keep),
            pivots,
        }
    }

    /// Subspace spanned by the columns of `m`.
    pub fn column_span(m: &Matrix) -> Self {
        Subspace::span(m.rows(), &m.columns())
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace::span(ambient, &[])
    }

    pub fn full(ambient: usize) -> Self {
        Subspace::column_span(&Matrix::identity(ambient))
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis(&self) -> Vec<Vec<Rational>> {
        (0..self.dim()).map(|i| self.rows.row(i).to_vec()).collect()
    }

    /// Basis vectors as the columns of an `ambient × dim` matrix.
    pub fn basis_matrix(&self) -> Matrix {
        self.rows.transpose()
    }

    /// `v` minus its component along this subspace, taken with respect to
    /// the complement spanned by the non-pivot coordinates.
    pub fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.ambient, "vector length mismatch");
        let mut out = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            let c = out[p].clone();
            if c.is_zero() {
                continue;
            }
            for (o, b) in out.iter_mut().zip(self.rows.row(i)) {
                if !b.is_zero() {
                    *o -= &c * b;
                }
            }
        }
        out
    }

    pub fn contains_vector(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Coordinates of `v` in the canonical basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        self.contains_vector(v)
            .then(|| self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// Whether `other ⊆ self`.
    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(other.basis().iter().all(|v| self.contains_vector(v)))
    }

    pub fn equal(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(self == other)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let mut vs = self.basis();
        vs.extend(other.basis());
        Ok(Subspace::span(self.ambient, &vs))
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.ambient));
        }
        // Solve A x = B y through the kernel of [A | -B].
        let a = self.basis_matrix();
        let b = other.basis_matrix();
        let kernel = a.hstack(&-&b).kernel();
        let vs: Vec<Vec<Rational>> = kernel
            .basis()
            .iter()
            .map(|k| a.mul_vec(&k[..self.dim()]))
            .collect();
        Ok(Subspace::span(self.ambient, &vs))
    }

    /// Image of this subspace under `m` (which must have `ambient` columns).
    pub fn map(&self, m: &Matrix) -> Subspace {
        assert_eq!(m.cols(), self.ambient, "map shape mismatch");
        let vs: Vec<_> = self.basis().iter().map(|v| m.mul_vec(v)).collect();
        Subspace::span(m.rows(), &vs)
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::Dimension(format!(
                "ambient dimensions differ: {} vs {}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }
}

/// Projection onto the complement of `sub` spanned by the coordinates that
/// are not pivots of its canonical basis. The kernel of the result is
/// exactly `sub`.
pub fn quotient_map(sub: &Subspace, ambient: usize) -> Result<Matrix> {
    if sub.ambient() != ambient {
        return Err(Error::Dimension(format!(
            "subspace lives in dimension {}, not {}",
            sub.ambient(),
            ambient
        )));
    }
    let cols: Vec<Vec<Rational>> = Matrix::identity(ambient)
        .columns()
        .iter()
        .map(|e| sub.reduce(e))
        .collect();
    Ok(Matrix::from_columns(ambient, &cols))
}

impl std::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subspace(dim {} in {}, {:?})", self.dim(), self.ambient, self.rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratlin::rat;
    use proptest::prelude::*;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| rat(x, 1)).collect()
    }

    #[test]
    fn axis_intersections() {
        let x = Subspace::span(2, &[v(&[1, 0])]);
        let y = Subspace::span(2, &[v(&[0, 1])]);
        assert!(x.intersect(&y).unwrap().is_zero());
        assert_eq!(x.sum(&y).unwrap(), Subspace::full(2));
        let plane = Subspace::span(2, &[v(&[1, 0]), v(&[0, 1])]);
        let diag = Subspace::span(2, &[v(&[1, 1])]);
        assert_eq!(plane.intersect(&diag).unwrap(), diag);
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let a = Subspace::zero(2);
        let b = Subspace::zero(3);
        assert!(matches!(a.sum(&b), Err(Error::Dimension(_))));
        assert!(a.contains(&b).is_err());
    }

    #[test]
    fn quotient_map_examples() {
        let q = quotient_map(&Subspace::zero(2), 2).unwrap();
        assert_eq!(q, Matrix::identity(2));
        assert!(quotient_map(&Subspace::full(2), 2).unwrap().is_zero());
        let q = quotient_map(&Subspace::span(2, &[v(&[1, 0])]), 2).unwrap();
        assert_eq!(q.rank(), 1);
        assert_eq!(q.mul_vec(&v(&[1, 0])), v(&[0, 0]));
        assert!(quotient_map(&Subspace::zero(2), 3).is_err());
    }

    fn small_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
        proptest::collection::vec(-3i64..=3, rows * cols).prop_map(move |xs| {
            let rs: Vec<Vec<Rational>> =
                xs.chunks(cols).map(|c| c.iter().map(|&x| rat(x, 1)).collect()).collect();
            Matrix::from_rows(rs, cols)
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in small_matrix(4, 5)) {
            prop_assert_eq!(m.rank() + m.kernel().dim(), m.cols());
        }

        #[test]
        fn dimension_formula(a in small_matrix(4, 2), b in small_matrix(4, 3)) {
            let sa = Subspace::column_span(&a);
            let sb = Subspace::column_span(&b);
            let s = sa.sum(&sb).unwrap();
            let i = sa.intersect(&sb).unwrap();
            prop_assert_eq!(sa.dim() + sb.dim(), s.dim() + i.dim());
            prop_assert!(s.contains(&sa).unwrap() && sa.contains(&i).unwrap());
        }

        #[test]
        fn equality_is_mutual_containment(a in small_matrix(3, 2), b in small_matrix(3, 2)) {
            let sa = Subspace::column_span(&a);
            let sb = Subspace::column_span(&b);
            let mutual = sa.contains(&sb).unwrap() && sb.contains(&sa).unwrap();
            prop_assert_eq!(sa.equal(&sb).unwrap(), mutual);
        }

        #[test]
        fn canonical_form_is_idempotent(a in small_matrix(4, 3)) {
            let s = Subspace::column_span(&a);
            let again = Subspace::span(s.ambient(), &s.basis());
            prop_assert_eq!(s, again);
        }

        #[test]
        fn solve_is_exact(m in small_matrix(3, 4), rhs in proptest::collection::vec(-3i64..=3, 3)) {
            let rhs: Vec<Rational> = rhs.into_iter().map(|x| rat(x, 1)).collect();
            match m.solve(&rhs).particular() {
                Some(x) => prop_assert_eq!(m.mul_vec(x), rhs),
                None => prop_assert!(!m.image().contains_vector(&rhs)),
            }
        }

        #[test]
        fn quotient_kernel_is_subspace(a in small_matrix(4, 2)) {
            let s = Subspace::column_span(&a);
            let q = quotient_map(&s, 4).unwrap();
            prop_assert_eq!(q.kernel(), s);
        }
    }
}
