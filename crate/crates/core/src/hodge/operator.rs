use std::fmt;

use crate::ratlin::{Matrix, Rational};

/// A graded linear map given by one matrix per source degree.
///
/// `mats[k]` maps degree `k` to degree `k + shift`; when the target degree
/// is out of range the matrix has zero rows.
/// Equality ignores the name.
#[derive(Clone)]
pub struct LinearOperator {
    name: String,
    shift: i32,
    dims: Vec<usize>,
    mats: Vec<Matrix>,
}

impl LinearOperator {
    pub fn new(name: impl Into<String>, shift: i32, dims: Vec<usize>, mats: Vec<Matrix>) -> Self {
        assert_eq!(dims.len(), mats.len());
        let op = LinearOperator {
            name: name.into(),
            shift,
            dims,
            mats,
        };
        for (k, m) in op.mats.iter().enumerate() {
            assert_eq!(m.cols(), op.dims[k], "{}: source dimension at degree {k}", op.name);
            assert_eq!(m.rows(), op.target_dim(k), "{}: target dimension at degree {k}", op.name);
        }
        op
    }

    /// Builds the operator degree by degree from `f(k)`.
    pub fn from_fn(
        name: impl Into<String>,
        shift: i32,
        dims: &[usize],
        mut f: impl FnMut(usize) -> Matrix,
    ) -> Self {
        let mats = (0..dims.len()).map(&mut f).collect();
        LinearOperator::new(name, shift, dims.to_vec(), mats)
    }

    pub fn zero(shift: i32, dims: &[usize]) -> Self {
        let mut op = LinearOperator {
            name: "0".into(),
            shift,
            dims: dims.to_vec(),
            mats: Vec::new(),
        };
        op.mats = (0..dims.len())
            .map(|k| Matrix::zeros(op.target_dim(k), dims[k]))
            .collect();
        op
    }

    pub fn identity(dims: &[usize]) -> Self {
        LinearOperator::from_fn("id", 0, dims, |k| Matrix::identity(dims[k]))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn shift(&self) -> i32 {
        self.shift
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn top(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn target(&self, k: usize) -> Option<usize> {
        let t = k as i64 + self.shift as i64;
        (0..self.dims.len() as i64).contains(&t).then_some(t as usize)
    }

    fn target_dim(&self, k: usize) -> usize {
        self.target(k).map_or(0, |t| self.dims[t])
    }

    pub fn matrix(&self, k: usize) -> &Matrix {
        &self.mats[k]
    }

    pub fn apply(&self, k: usize, v: &[Rational]) -> Vec<Rational> {
        self.mats[k].mul_vec(v)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinearOperator) -> LinearOperator {
        assert_eq!(self.dims, other.dims, "operators on different spaces");
        let shift = self.shift + other.shift;
        let mut out = LinearOperator::zero(shift, &self.dims);
        for k in 0..self.dims.len() {
            if let Some(mid) = other.target(k) {
                if self.target(mid).is_some() {
                    out.mats[k] = &self.mats[mid] * &other.mats[k];
                }
            }
        }
        out.name = format!("{}{}", self.name, other.name);
        out
    }

    pub fn scale(&self, c: &Rational) -> LinearOperator {
        LinearOperator {
            name: format!("{c}·{}", self.name),
            shift: self.shift,
            dims: self.dims.clone(),
            mats: self.mats.iter().map(|m| m.scale(c)).collect(),
        }
    }

    /// Degree-wise scaling by `f(k)` on the source degree.
    pub fn scale_by_degree(&self, f: impl Fn(usize) -> Rational) -> LinearOperator {
        LinearOperator {
            name: self.name.clone(),
            shift: self.shift,
            dims: self.dims.clone(),
            mats: self.mats.iter().enumerate().map(|(k, m)| m.scale(&f(k))).collect(),
        }
    }

    pub fn add(&self, other: &LinearOperator) -> LinearOperator {
        self.zip(other, "+", |a, b| a + b)
    }

    pub fn sub(&self, other: &LinearOperator) -> LinearOperator {
        self.zip(other, "-", |a, b| a - b)
    }

    fn zip(&self, other: &LinearOperator, op: &str, f: impl Fn(&Matrix, &Matrix) -> Matrix) -> LinearOperator {
        assert_eq!(self.shift, other.shift, "adding operators of different degree");
        assert_eq!(self.dims, other.dims, "operators on different spaces");
        LinearOperator {
            name: format!("{}{op}{}", self.name, other.name),
            shift: self.shift,
            dims: self.dims.clone(),
            mats: self.mats.iter().zip(&other.mats).map(|(a, b)| f(a, b)).collect(),
        }
    }

    /// `[self, other] = self ∘ other − other ∘ self`.
    pub fn commutator(&self, other: &LinearOperator) -> LinearOperator {
        self.compose(other)
            .sub(&other.compose(self))
            .named(format!("[{},{}]", self.name, other.name))
    }

    pub fn power(&self, exp: usize) -> LinearOperator {
        let mut out = LinearOperator::identity(&self.dims);
        for _ in 0..exp {
            out = self.compose(&out);
        }
        out.named(format!("{}^{exp}", self.name))
    }

    /// Degrees where `self` and `other` differ, as matrices.
    pub fn differing_degrees(&self, other: &LinearOperator) -> Vec<usize> {
        assert_eq!(self.shift, other.shift);
        (0..self.mats.len()).filter(|&k| self.mats[k] != other.mats[k]).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.mats.iter().all(Matrix::is_zero)
    }
}

impl PartialEq for LinearOperator {
    fn eq(&self, other: &Self) -> bool {
        self.shift == other.shift && self.dims == other.dims && self.mats == other.mats
    }
}

impl Eq for LinearOperator {}

impl fmt::Debug for LinearOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearOperator({}, shift {}, dims {:?})", self.name, self.shift, self.dims)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratlin::rat;

    fn raise(dims: &[usize]) -> LinearOperator {
        // sends the first basis vector of each degree to the first of the next
        LinearOperator::from_fn("r", 1, dims, |k| {
            let rows = dims.get(k + 1).copied().unwrap_or(0);
            let mut m = Matrix::zeros(rows, dims[k]);
            if rows > 0 && dims[k] > 0 {
                m.set(0, 0, rat(1, 1));
            }
            m
        })
    }

    #[test]
    fn composition_shapes_and_commutator() {
        let dims = [1, 2, 1];
        let r = raise(&dims);
        let rr = r.compose(&r);
        assert_eq!(rr.shift(), 2);
        assert_eq!(rr.matrix(0), &Matrix::from_i64(&[&[1]]));
        assert_eq!(rr.matrix(1).rows(), 0);
        assert!(r.power(3).is_zero());
        let id = LinearOperator::identity(&dims);
        assert!(r.commutator(&id).is_zero());
        assert_eq!(r.add(&r), r.scale(&rat(2, 1)));
        assert_eq!(r.differing_degrees(&r.scale(&rat(2, 1))), vec![0, 1]);
    }
}
