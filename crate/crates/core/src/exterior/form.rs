use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};

use super::{Basis, IndexSet, MAX_GENERATORS};
use crate::error::{Error, Result};
use crate::ratlin::Rational;

/// An element of the exterior algebra on `ambient` degree-1 generators.
///
/// Only nonzero coefficients are stored, so structural equality is equality
/// of forms.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Form {
    ambient: usize,
    terms: BTreeMap<IndexSet, Rational>,
}

impl Form {
    pub fn zero(ambient: usize) -> Self {
        assert!(ambient <= MAX_GENERATORS, "too many generators");
        Form {
            ambient,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ambient: usize, c: Rational) -> Self {
        Form::monomial(ambient, IndexSet::EMPTY, c)
    }

    pub fn one(ambient: usize) -> Self {
        Form::constant(ambient, Rational::one())
    }

    pub fn monomial(ambient: usize, set: IndexSet, c: Rational) -> Self {
        let mut f = Form::zero(ambient);
        assert!(
            set.is_subset_of(full_mask(ambient)),
            "monomial outside the generator range"
        );
        if !c.is_zero() {
            f.terms.insert(set, c);
        }
        f
    }

    /// The degree-1 generator `e_i`.
    pub fn generator(ambient: usize, i: usize) -> Self {
        assert!(i < ambient, "generator index {i} out of range");
        Form::monomial(ambient, IndexSet::singleton(i), Rational::one())
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&IndexSet, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, set: IndexSet) -> Rational {
        self.terms.get(&set).cloned().unwrap_or_else(Rational::zero)
    }

    /// The common degree of all terms, or `None` for the zero form and for
    /// inhomogeneous forms.
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|s| s.len());
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree().is_some()
    }

    /// Bitmask of every generator appearing in some term.
    pub fn support(&self) -> u32 {
        self.terms.keys().fold(0, |acc, s| acc | s.mask())
    }

    pub fn scale(&self, c: &Rational) -> Form {
        if c.is_zero() {
            return Form::zero(self.ambient);
        }
        Form {
            ambient: self.ambient,
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    pub fn add_term(&mut self, set: IndexSet, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(set).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&set);
        }
    }

    pub fn wedge(&self, other: &Form) -> Result<Form> {
        self.check_ambient(other)?;
        let mut out = Form::zero(self.ambient);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if let Some(sign) = a.merge_sign(*b) {
                    let c = ca * cb;
                    out.add_term(a.union(*b), if sign > 0 { c } else { -c });
                }
            }
        }
        Ok(out)
    }

    /// Interior product with the dual basis vector of generator `i`.
    pub fn contract(&self, i: usize) -> Form {
        let mut out = Form::zero(self.ambient);
        for (s, c) in &self.terms {
            if let Some(p) = s.position(i) {
                out.add_term(s.without(i), if p % 2 == 0 { c.clone() } else { -c.clone() });
            }
        }
        out
    }

    /// Coordinates with respect to `basis`. Fails if some term is not one of
    /// the basis monomials.
    pub fn coords(&self, basis: &Basis) -> Result<Vec<Rational>> {
        let mut v = vec![Rational::zero(); basis.len()];
        for (s, c) in &self.terms {
            let i = basis.position(*s).ok_or_else(|| {
                Error::Degree(format!("monomial {s:?} is not in the degree-{} basis", basis.degree()))
            })?;
            v[i] = c.clone();
        }
        Ok(v)
    }

    pub fn pow(&self, exp: usize) -> Form {
        let mut out = Form::one(self.ambient);
        for _ in 0..exp {
            out = out.wedge(self).expect("same ambient");
        }
        out
    }

    fn check_ambient(&self, other: &Form) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::Dimension(format!(
                "forms over {} and {} generators",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }
}

pub(crate) fn full_mask(ambient: usize) -> u32 {
    if ambient >= 32 {
        u32::MAX
    } else {
        (1u32 << ambient) - 1
    }
}

impl Add for &Form {
    type Output = Form;

    fn add(self, rhs: &Form) -> Form {
        assert_eq!(self.ambient, rhs.ambient, "ambient mismatch");
        let mut out = self.clone();
        for (s, c) in &rhs.terms {
            out.add_term(*s, c.clone());
        }
        out
    }
}

impl Sub for &Form {
    type Output = Form;

    fn sub(self, rhs: &Form) -> Form {
        self + &(-rhs)
    }
}

impl Neg for &Form {
    type Output = Form;

    fn neg(self) -> Form {
        Form {
            ambient: self.ambient,
            terms: self.terms.iter().map(|(k, v)| (*k, -v)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratlin::rat;
    use proptest::prelude::*;

    const N: usize = 5;

    fn e(idx: &[usize]) -> Form {
        // 1-based indices, to match the usual e1, e2, ... names
        let zero_based: Vec<usize> = idx.iter().map(|i| i - 1).collect();
        Form::monomial(N, IndexSet::from_indices(&zero_based), rat(1, 1))
    }

    #[test]
    fn wedge_examples() {
        assert_eq!(e(&[1]).wedge(&e(&[2])).unwrap(), e(&[1, 2]));
        assert_eq!(e(&[2]).wedge(&e(&[1])).unwrap(), -&e(&[1, 2]));
        assert!(e(&[1, 2]).wedge(&e(&[1, 2])).unwrap().is_zero());
        let w = &e(&[1, 3]) + &e(&[2, 4]);
        assert_eq!(w.wedge(&w).unwrap(), e(&[1, 2, 3, 4]).scale(&rat(-2, 1)));
    }

    #[test]
    fn contract_examples() {
        assert_eq!(e(&[1, 2]).contract(0), e(&[2]));
        assert_eq!(e(&[1, 2]).contract(1), -&e(&[1]));
        assert!(e(&[1, 2]).contract(2).is_zero());
    }

    #[test]
    fn ambient_mismatch() {
        assert!(Form::one(2).wedge(&Form::one(3)).is_err());
    }

    #[test]
    fn degree_and_homogeneity() {
        assert_eq!(e(&[1, 2]).degree(), Some(2));
        assert_eq!(Form::zero(N).degree(), None);
        assert!(Form::zero(N).is_homogeneous());
        assert!(!(&e(&[1]) + &e(&[1, 2])).is_homogeneous());
    }

    fn homogeneous(deg: usize) -> impl Strategy<Value = Form> {
        let monos = crate::exterior::basis_of_degree(deg, N);
        proptest::collection::vec(-3i64..=3, monos.len()).prop_map(move |cs| {
            let mut f = Form::zero(N);
            for (s, c) in monos.iter().zip(cs) {
                f.add_term(*s, rat(c, 1));
            }
            f
        })
    }

    fn sign(p: usize) -> Rational {
        if p.is_multiple_of(2) { rat(1, 1) } else { rat(-1, 1) }
    }

    proptest! {
        #[test]
        fn graded_commutative(
            (p, a, q, b) in (0usize..=3, 0usize..=3).prop_flat_map(|(p, q)| {
                (Just(p), homogeneous(p), Just(q), homogeneous(q))
            })
        ) {
            let ab = a.wedge(&b).unwrap();
            let ba = b.wedge(&a).unwrap();
            prop_assert_eq!(ab, ba.scale(&sign(p * q)));
        }

        #[test]
        fn associative(a in homogeneous(1), b in homogeneous(2), c in homogeneous(1)) {
            let l = a.wedge(&b).unwrap().wedge(&c).unwrap();
            let r = a.wedge(&b.wedge(&c).unwrap()).unwrap();
            prop_assert_eq!(l, r);
        }

        #[test]
        fn contraction_squares_to_zero(a in homogeneous(3), i in 0usize..N) {
            prop_assert!(a.contract(i).contract(i).is_zero());
        }

        #[test]
        fn graded_leibniz(p in 1usize..=2, a2 in homogeneous(2), a1 in homogeneous(1),
                          b in homogeneous(2), i in 0usize..N) {
            let a = if p == 1 { a1 } else { a2 };
            let lhs = a.wedge(&b).unwrap().contract(i);
            let rhs = &a.contract(i).wedge(&b).unwrap()
                + &a.wedge(&b.contract(i)).unwrap().scale(&sign(p));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
