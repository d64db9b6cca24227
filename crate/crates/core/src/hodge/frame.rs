use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exterior::{Basis, Form, IndexSet};
use crate::model::FoliatedModel;
use crate::ratlin::{Matrix, Rational};

/// Linear symplectic data on the transverse span.
///
/// Conventions: with `omega = Σ_{a<b} σ_ab t_a ∧ t_b` and `σ` antisymmetric,
/// the pairing on 1-forms is `B(t_a, t_b) = −(σ⁻¹)_ab`, extended to
/// monomials of degree `k` by the `k × k` determinant. On the Darboux plane
/// `ω = x ∧ y` this gives `B(x, y) = 1` and `⋆x = x`, which is the sign
/// that makes `⋆ L^r α = (−1)^{k(k−1)/2} r!/(n−k−r)! L^{n−k−r} α` hold for
/// primitive `α`.
#[derive(Clone, Debug)]
pub struct SymplecticFrame {
    transverse: Vec<usize>,
    ambient: usize,
    omega: Form,
    sigma: Matrix,
    /// `−σ⁻¹`: the pairing on 1-forms in transverse coordinates.
    pairing: Matrix,
    volume: Form,
}

impl SymplecticFrame {
    pub fn new(model: &FoliatedModel) -> Result<Self> {
        let transverse = model.transverse().to_vec();
        let local = |g: usize| transverse.iter().position(|&t| t == g);
        let m = transverse.len();
        let mut sigma = Matrix::zeros(m, m);
        for (s, c) in model.omega().terms() {
            let idx: Vec<usize> = s.indices().collect();
            let (a, b) = (local(idx[0]).expect("basic"), local(idx[1]).expect("basic"));
            sigma.set(a, b, c.clone());
            sigma.set(b, a, -c.clone());
        }
        let inv = sigma
            .inverse()
            .ok_or_else(|| Error::Inconsistency("omega matrix is singular although ω^n ≠ 0".into()))?;
        let n = m / 2;
        let fact: Rational = (1..=n).fold(Rational::one(), |acc, i| acc * Rational::from_integer(i.into()));
        let volume = model.omega().pow(n).scale(&(Rational::one() / fact));
        Ok(SymplecticFrame {
            ambient: model.num_generators(),
            omega: model.omega().clone(),
            pairing: -&inv,
            sigma,
            volume,
            transverse,
        })
    }

    pub fn transverse(&self) -> &[usize] {
        &self.transverse
    }

    pub fn half_dim(&self) -> usize {
        self.transverse.len() / 2
    }

    pub fn omega(&self) -> &Form {
        &self.omega
    }

    pub fn omega_matrix(&self) -> &Matrix {
        &self.sigma
    }

    /// Matrix of `♯` on 1-forms followed by the dual pairing, i.e. of
    /// `B` restricted to degree 1.
    pub fn pairing_matrix(&self) -> &Matrix {
        &self.pairing
    }

    /// `ω^n / n!`.
    pub fn volume(&self) -> &Form {
        &self.volume
    }

    /// The top transverse monomial.
    pub fn top_monomial(&self) -> IndexSet {
        IndexSet::from_indices(&self.transverse)
    }

    fn local(&self, g: usize) -> usize {
        self.transverse.iter().position(|&t| t == g).expect("transverse generator")
    }

    /// `B` on two monomials of the same degree.
    pub fn pair_monomials(&self, a: IndexSet, b: IndexSet) -> Rational {
        let ia: Vec<usize> = a.indices().map(|g| self.local(g)).collect();
        let ib: Vec<usize> = b.indices().map(|g| self.local(g)).collect();
        if ia.is_empty() {
            return Rational::one();
        }
        self.pairing.select_rows(&ia).select_columns(&ib).determinant()
    }

    /// Gram matrix of `B` on a basis.
    pub fn pairing_gram(&self, basis: &Basis) -> Matrix {
        let ms = basis.monomials();
        let rows = ms
            .iter()
            .map(|&a| ms.iter().map(|&b| self.pair_monomials(a, b)).collect())
            .collect();
        Matrix::from_rows(rows, ms.len())
    }

    /// `B(a, b)` for homogeneous basic forms of the same degree.
    pub fn pairing(&self, a: &Form, b: &Form) -> Result<Rational> {
        let top = self.top_monomial().mask();
        for f in [a, b] {
            if f.support() & !top != 0 {
                return Err(Error::Degree("pairing needs basic forms".into()));
            }
            if !f.is_homogeneous() {
                return Err(Error::Degree("pairing needs homogeneous forms".into()));
            }
        }
        match (a.degree(), b.degree()) {
            (Some(p), Some(q)) if p != q => {
                return Err(Error::Degree(format!("pairing of degrees {p} and {q}")))
            }
            _ => {}
        }
        let mut total = Rational::zero();
        for (s, c) in a.terms() {
            for (t, e) in b.terms() {
                total += c * e * self.pair_monomials(*s, *t);
            }
        }
        Ok(total)
    }

    /// Matrix of `⋆` from basic degree `k` to `2n − k`, obtained by solving
    /// `β ∧ ⋆α = B(β, α) vol` against every basis monomial `β`.
    pub fn star_matrix(&self, k: usize) -> Matrix {
        let m = self.transverse.len();
        let src = Basis::restricted(k, self.ambient, &self.transverse);
        let dst = Basis::restricted(m - k, self.ambient, &self.transverse);
        let top = self.top_monomial();
        let mut w = Matrix::zeros(src.len(), dst.len());
        for (i, &a) in src.monomials().iter().enumerate() {
            for (j, &b) in dst.monomials().iter().enumerate() {
                if a.union(b) == top {
                    if let Some(s) = a.merge_sign(b) {
                        w.set(i, j, Rational::from_integer(s.into()));
                    }
                }
            }
        }
        let v = self.volume.coefficient(top);
        let gram = self.pairing_gram(&src);
        let winv = w.inverse().expect("wedge pairing into top degree is perfect");
        (&winv * &gram).scale(&v)
    }

    /// Pairs of transverse generators `(x_i, y_i)` with `ω = Σ x_i ∧ y_i`,
    /// when `omega` has that shape.
    pub fn darboux_pairs(&self) -> Option<Vec<(usize, usize)>> {
        let mut pairs = Vec::new();
        let mut used = 0u32;
        for (s, c) in self.omega.terms() {
            let idx: Vec<usize> = s.indices().collect();
            if !s.is_disjoint(IndexSet::from_mask(used)) {
                return None;
            }
            used |= s.mask();
            if c.is_one() {
                pairs.push((idx[0], idx[1]));
            } else if (-c).is_one() {
                pairs.push((idx[1], idx[0]));
            } else {
                return None;
            }
        }
        (used == self.top_monomial().mask()).then_some(pairs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::zoo;
    use crate::ratlin::rat;

    #[test]
    fn darboux_plane_pairing() {
        let m = zoo("torus2").unwrap();
        let fr = SymplecticFrame::new(&m).unwrap();
        let (x, y) = (Form::generator(2, 0), Form::generator(2, 1));
        assert_eq!(fr.pairing(&x, &x).unwrap(), rat(0, 1));
        assert_eq!(fr.pairing(&x, &y).unwrap(), rat(1, 1));
        assert_eq!(fr.pairing(&y, &x).unwrap(), rat(-1, 1));
        assert_eq!(fr.pairing(&Form::one(2), &Form::one(2)).unwrap(), rat(1, 1));
        assert!(fr.pairing(&x, &Form::one(2)).is_err());
    }

    #[test]
    fn top_degree_pairing_matches_definition() {
        // β = vol forces ⋆vol = B(vol, vol)
        for name in ["torus2", "torus4", "kodaira_thurston"] {
            let fr = SymplecticFrame::new(&zoo(name).unwrap()).unwrap();
            let b = fr.pairing(fr.volume(), fr.volume()).unwrap();
            let s = fr.star_matrix(fr.transverse().len());
            let v = fr.volume().coefficient(fr.top_monomial());
            assert_eq!(s.get(0, 0) * &v, b, "{name}");
        }
    }

    #[test]
    fn darboux_detection() {
        let kt = SymplecticFrame::new(&zoo("kodaira_thurston").unwrap()).unwrap();
        assert_eq!(kt.darboux_pairs(), Some(vec![(0, 2), (1, 3)]));
        let t4 = SymplecticFrame::new(&zoo("torus4").unwrap()).unwrap();
        assert_eq!(t4.darboux_pairs(), Some(vec![(0, 1), (2, 3)]));
    }
}
