use crate::error::{Error, Result};
use crate::ratlin::{Matrix, Rational, Subspace};

/// `cocycles / coboundaries` in one degree of a complex.
///
/// Class representatives are the canonical basis of the cocycles reduced
/// modulo the coboundaries, so every class has exactly one representative
/// in their span and class coordinates are read off directly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologySpace {
    degree: usize,
    cocycles: Subspace,
    coboundaries: Subspace,
    representatives: Subspace,
}

impl CohomologySpace {
    pub fn new(degree: usize, cocycles: Subspace, coboundaries: Subspace) -> Result<Self> {
        if !cocycles.contains(&coboundaries)? {
            return Err(Error::Inconsistency(format!(
                "coboundaries are not cocycles in degree {degree}"
            )));
        }
        let reduced: Vec<Vec<Rational>> = cocycles.basis().iter().map(|z| coboundaries.reduce(z)).collect();
        let representatives = Subspace::span(cocycles.ambient(), &reduced);
        Ok(CohomologySpace {
            degree,
            cocycles,
            coboundaries,
            representatives,
        })
    }

    /// Cohomology of `… → C^{k−1} --d_in--> C^k --d_out--> C^{k+1} → …`.
    pub fn of(degree: usize, d_in: &Matrix, d_out: &Matrix) -> Result<Self> {
        CohomologySpace::new(degree, d_out.kernel(), d_in.image())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.representatives.dim()
    }

    pub fn ambient(&self) -> usize {
        self.cocycles.ambient()
    }

    pub fn cocycles(&self) -> &Subspace {
        &self.cocycles
    }

    pub fn coboundaries(&self) -> &Subspace {
        &self.coboundaries
    }

    /// Cocycles spanning a complement of the coboundaries, one per basis
    /// class.
    pub fn representatives(&self) -> Vec<Vec<Rational>> {
        self.representatives.basis()
    }

    pub fn is_cocycle(&self, v: &[Rational]) -> bool {
        self.cocycles.contains_vector(v)
    }

    pub fn is_coboundary(&self, v: &[Rational]) -> bool {
        self.coboundaries.contains_vector(v)
    }

    /// Class coordinates of a cocycle; `None` if `v` is not closed.
    pub fn class_of(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        if !self.is_cocycle(v) {
            return None;
        }
        let r = self.coboundaries.reduce(v);
        Some(
            self.representatives
                .coordinates(&r)
                .expect("reduced cocycles lie in the span of the representatives"),
        )
    }

    /// A cocycle representing the class with the given coordinates.
    pub fn representative(&self, class: &[Rational]) -> Vec<Rational> {
        assert_eq!(class.len(), self.dim(), "class coordinate length");
        let mut v = vec![Rational::from_integer(0.into()); self.ambient()];
        for (c, r) in class.iter().zip(self.representatives()) {
            for (vi, ri) in v.iter_mut().zip(&r) {
                *vi += c * ri;
            }
        }
        v
    }

    /// Matrix, in class coordinates, of the map induced by `op` from this
    /// space to `target`. Fails if `op` sends a cocycle to a non-cocycle.
    pub fn induced(&self, op: &Matrix, target: &CohomologySpace) -> Result<Matrix> {
        let cols = self
            .representatives()
            .iter()
            .map(|r| {
                target.class_of(&op.mul_vec(r)).ok_or_else(|| {
                    Error::Inconsistency(format!(
                        "map from degree {} does not preserve cocycles",
                        self.degree
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix::from_columns(target.dim(), &cols))
    }

    /// Class coordinates of a subspace of cocycles.
    pub fn classes_of(&self, sub: &Subspace) -> Result<Subspace> {
        let vs = sub
            .basis()
            .iter()
            .map(|v| {
                self.class_of(v)
                    .ok_or_else(|| Error::Inconsistency("subspace contains non-cocycles".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Subspace::span(self.dim(), &vs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratlin::rat;

    #[test]
    fn circle_like_complex() {
        // C^0 = Q, C^1 = Q^2, d(1) = (1, 1)
        let d0 = Matrix::from_i64(&[&[1], &[1]]);
        let h1 = CohomologySpace::of(1, &d0, &Matrix::zeros(0, 2)).unwrap();
        assert_eq!(h1.dim(), 1);
        let a = h1.class_of(&[rat(1, 1), rat(0, 1)]).unwrap();
        let b = h1.class_of(&[rat(0, 1), rat(-1, 1)]).unwrap();
        assert_eq!(a, b);
        assert!(h1.class_of(&[rat(1, 1), rat(1, 1)]).unwrap().iter().all(|c| *c == rat(0, 1)));
        let rep = h1.representative(&a);
        assert_eq!(h1.class_of(&rep).unwrap(), a);
        let h0 = CohomologySpace::of(0, &Matrix::zeros(1, 0), &d0).unwrap();
        assert_eq!(h0.dim(), 0);
    }

    #[test]
    fn induced_identity() {
        let d0 = Matrix::from_i64(&[&[1], &[1]]);
        let h1 = CohomologySpace::of(1, &d0, &Matrix::zeros(0, 2)).unwrap();
        assert_eq!(h1.induced(&Matrix::identity(2), &h1).unwrap(), Matrix::identity(1));
        let bad = CohomologySpace::of(1, &Matrix::zeros(2, 0), &Matrix::from_i64(&[&[1, 0]])).unwrap();
        assert!(h1.induced(&Matrix::from_i64(&[&[0, 1], &[1, 0]]), &bad).is_err());
    }
}
