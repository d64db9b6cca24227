//! Symplectic Hodge theory on the basic complex.
//!
//! Every operator is a [`LinearOperator`] over the basic degrees `0..=2n`,
//! written in the canonical monomial bases of
//! [`FoliatedModel::basic_complex`]:
//!
//! - `L` is wedge with `omega`, `Λ = ⋆L⋆`, `H = (n − k)` on degree `k`;
//! - `⋆` solves `β ∧ ⋆α = B(β, α) vol` (see [`SymplecticFrame`] for the
//!   sign of `B`);
//! - `δ = (−1)^{k+1} ⋆ d ⋆` on degree `k`.

mod frame;
mod operator;
pub mod random;

use num_traits::{One, Zero};
use rand::Rng;
use serde::Serialize;

pub use frame::SymplecticFrame;
pub use operator::LinearOperator;

use crate::error::{Error, Result};
use crate::exterior::{operator_matrix, Basis, Form};
use crate::model::{CochainModel, FoliatedModel};
use crate::ratlin::{Matrix, Rational, Subspace};

fn factorial(n: usize) -> Rational {
    (1..=n).fold(Rational::one(), |acc, i| acc * Rational::from_integer(i.into()))
}

fn sign(odd: bool) -> Rational {
    if odd {
        -Rational::one()
    } else {
        Rational::one()
    }
}

/// Outcome of one operator identity, with the degrees where it fails.
///
/// `required` is false for identities recorded only for comparison: the
/// literal `[d, Λ] = δ` and `[δ, L] = d`. Once `⋆` is pinned by the Weil
/// identity with sign `(−1)^{k(k−1)/2}`, `δ = (−1)^{k+1} ⋆d⋆` satisfies
/// `[d, Λ] = −δ` and `[δ, L] = −d` instead, and those are the required
/// forms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub failing_degrees: Vec<usize>,
    pub required: bool,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.failing_degrees.is_empty()
    }
}

/// Outcome of a seeded random spot check: samples drawn and the
/// `(degree, r)` cells where some sample failed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SampleCheck {
    pub checked: usize,
    pub failing: Vec<(usize, usize)>,
}

impl SampleCheck {
    pub fn holds(&self) -> bool {
        self.failing.is_empty()
    }
}

/// The symplectic Hodge operators of one model.
#[derive(Clone, Debug)]
pub struct Hodge {
    frame: SymplecticFrame,
    base: CochainModel,
    bases: Vec<Basis>,
    dims: Vec<usize>,
    d: LinearOperator,
    star: Vec<Matrix>,
    l: LinearOperator,
    lambda: LinearOperator,
    h: LinearOperator,
    delta: LinearOperator,
}

impl Hodge {
    pub fn new(model: &FoliatedModel) -> Result<Self> {
        let frame = SymplecticFrame::new(model)?;
        let basic = model.basic_complex();
        let top = basic.top();
        let n = top / 2;
        let bases: Vec<Basis> = (0..=top).map(|k| basic.basis(k).clone()).collect();
        let dims = basic.dims();

        let d = LinearOperator::from_fn("d", 1, &dims, |k| basic.d_out(k).clone());
        // ⋆ sends degree k to 2n − k, which is not a fixed shift
        let star: Vec<Matrix> = (0..=top).map(|k| frame.star_matrix(k)).collect();
        let l = LinearOperator::from_fn("L", 2, &dims, |k| match bases.get(k + 2) {
            Some(dst) => operator_matrix(|f| f.wedge(model.omega()).expect("ambient"), &bases[k], dst)
                .expect("omega is basic"),
            None => Matrix::zeros(0, dims[k]),
        });
        let star_at = |k: usize| &star[k];
        let lambda = LinearOperator::from_fn("Λ", -2, &dims, |k| {
            if k < 2 {
                return Matrix::zeros(0, dims[k]);
            }
            // degree k → 2n−k → 2n−k+2 → k−2
            let mid = top - k;
            &(star_at(mid + 2) * l.matrix(mid)) * star_at(k)
        });
        let h = LinearOperator::from_fn("H", 0, &dims, |k| {
            Matrix::identity(dims[k]).scale(&(Rational::from_integer((n as i64 - k as i64).into())))
        });
        let delta = LinearOperator::from_fn("δ", -1, &dims, |k| {
            if k == 0 {
                return Matrix::zeros(0, dims[k]);
            }
            let mid = top - k;
            (&(star_at(mid + 1) * d.matrix(mid)) * star_at(k)).scale(&sign((k + 1) % 2 == 1))
        });
        Ok(Hodge {
            frame,
            base: model.base().clone(),
            bases,
            dims,
            d,
            star,
            l,
            lambda,
            h,
            delta,
        })
    }

    pub fn frame(&self) -> &SymplecticFrame {
        &self.frame
    }

    pub fn half_dim(&self) -> usize {
        self.frame.half_dim()
    }

    pub fn top(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn basis(&self, k: usize) -> &Basis {
        &self.bases[k]
    }

    pub fn op_d(&self) -> &LinearOperator {
        &self.d
    }

    pub fn op_l(&self) -> &LinearOperator {
        &self.l
    }

    pub fn op_lambda(&self) -> &LinearOperator {
        &self.lambda
    }

    pub fn op_h(&self) -> &LinearOperator {
        &self.h
    }

    pub fn op_delta(&self) -> &LinearOperator {
        &self.delta
    }

    /// Matrix of `⋆` from degree `k` to degree `2n − k`.
    pub fn star_matrix(&self, k: usize) -> &Matrix {
        &self.star[k]
    }

    /// Degree and coordinates of a nonzero homogeneous basic form.
    pub fn coords(&self, a: &Form) -> Result<Option<(usize, Vec<Rational>)>> {
        if a.is_zero() {
            return Ok(None);
        }
        let k = a
            .degree()
            .ok_or_else(|| Error::Degree("form is not homogeneous".into()))?;
        if k > self.top() {
            return Err(Error::Degree(format!("degree {k} exceeds the basic top degree")));
        }
        let v = a
            .coords(&self.bases[k])
            .map_err(|_| Error::Degree("form is not basic".into()))?;
        Ok(Some((k, v)))
    }

    pub fn form(&self, k: usize, v: &[Rational]) -> Form {
        self.bases[k].form(v)
    }

    fn ambient(&self) -> usize {
        self.base.len()
    }

    fn apply_form(&self, a: &Form, f: impl Fn(usize, &[Rational]) -> Option<(usize, Vec<Rational>)>) -> Result<Form> {
        Ok(match self.coords(a)? {
            None => Form::zero(self.ambient()),
            Some((k, v)) => match f(k, &v) {
                Some((t, w)) => self.form(t, &w),
                None => Form::zero(self.ambient()),
            },
        })
    }

    fn apply_op(&self, op: &LinearOperator, a: &Form) -> Result<Form> {
        self.apply_form(a, |k, v| op.target(k).map(|t| (t, op.apply(k, v))))
    }

    pub fn star(&self, a: &Form) -> Result<Form> {
        self.apply_form(a, |k, v| Some((self.top() - k, self.star[k].mul_vec(v))))
    }

    pub fn pairing_b(&self, a: &Form, b: &Form) -> Result<Rational> {
        self.frame.pairing(a, b)
    }

    pub fn d(&self, a: &Form) -> Result<Form> {
        self.apply_op(&self.d, a)
    }

    pub fn apply_l(&self, a: &Form) -> Result<Form> {
        self.apply_op(&self.l, a)
    }

    pub fn apply_lambda(&self, a: &Form) -> Result<Form> {
        self.apply_op(&self.lambda, a)
    }

    pub fn delta(&self, a: &Form) -> Result<Form> {
        self.apply_op(&self.delta, a)
    }

    /// `δ` evaluated without the operator matrices: `⋆` on forms, the model
    /// differential on forms, `⋆` again, then the sign.
    pub fn delta_pointwise(&self, a: &Form) -> Result<Form> {
        let Some((k, _)) = self.coords(a)? else {
            return Ok(Form::zero(self.ambient()));
        };
        if k == 0 {
            return Ok(Form::zero(self.ambient()));
        }
        let s = self.star(a)?;
        let ds = self.base.d(&s);
        Ok(self.star(&ds)?.scale(&sign((k + 1) % 2 == 1)))
    }

    /// `−Σ ι_{x_i} ι_{y_i}` for a Darboux `omega = Σ x_i ∧ y_i`.
    pub fn lambda_darboux(&self) -> Option<LinearOperator> {
        let pairs = self.frame.darboux_pairs()?;
        let f = |a: &Form| {
            pairs.iter().fold(Form::zero(a.ambient()), |acc, &(x, y)| &acc - &a.contract(y).contract(x))
        };
        Some(LinearOperator::from_fn("Λ_darboux", -2, &self.dims, |k| match k.checked_sub(2) {
            Some(t) => operator_matrix(f, &self.bases[k], &self.bases[t]).expect("basic"),
            None => Matrix::zeros(0, self.dims[k]),
        }))
    }

    /// Primitive degree-`k` forms, as `ker Λ`.
    pub fn primitive_subspace(&self, k: usize) -> Subspace {
        self.lambda.matrix(k).kernel()
    }

    /// `Λα = 0`, cross-checked against `L^{n−k+1} α = 0`.
    pub fn is_primitive(&self, a: &Form) -> Result<bool> {
        let n = self.half_dim();
        let Some((k, v)) = self.coords(a)? else {
            return Ok(true);
        };
        if k > n {
            return Err(Error::Degree(format!("primitivity is defined for degree ≤ {n}, got {k}")));
        }
        let by_lambda = self.lambda.apply(k, &v).iter().all(Zero::is_zero);
        let by_power = self.l.power(n - k + 1).apply(k, &v).iter().all(Zero::is_zero);
        if by_lambda != by_power {
            return Err(Error::Inconsistency(format!(
                "Λα = 0 is {by_lambda} but L^(n−k+1)α = 0 is {by_power}"
            )));
        }
        Ok(by_lambda)
    }

    /// `α = Σ_r L^r/r! β_{k−2r}` with primitive `β`. Only nonzero components
    /// are returned, in increasing `r`. The system is solved twice, with the
    /// unknowns in opposite orders, and the answers must agree.
    pub fn lefschetz_decompose(&self, a: &Form) -> Result<Vec<(usize, Form)>> {
        let Some((k, v)) = self.coords(a)? else {
            return Ok(Vec::new());
        };
        let forward = self.decompose_coords(k, &v, false)?;
        let backward = self.decompose_coords(k, &v, true)?;
        if forward != backward {
            return Err(Error::Inconsistency("Lefschetz decomposition depends on the solve order".into()));
        }
        Ok(forward)
    }

    fn decompose_coords(&self, k: usize, v: &[Rational], reverse: bool) -> Result<Vec<(usize, Form)>> {
        let n = self.half_dim();
        let mut rs: Vec<usize> = (0..=k / 2).filter(|r| k - r <= n).collect();
        if reverse {
            rs.reverse();
        }
        let mut cols = Vec::new();
        let mut owners = Vec::new();
        for &r in &rs {
            let j = k - 2 * r;
            let lr = self.l.power(r).matrix(j).scale(&(Rational::one() / factorial(r)));
            for p in self.primitive_subspace(j).basis() {
                cols.push(lr.mul_vec(&p));
                owners.push((r, p));
            }
        }
        let m = Matrix::from_columns(self.dims[k], &cols);
        if m.rank() != cols.len() || cols.len() != self.dims[k] {
            return Err(Error::Inconsistency(format!(
                "Lefschetz pieces of degree {k} do not form a basis"
            )));
        }
        let x = m
            .solve(v)
            .particular()
            .map(<[Rational]>::to_vec)
            .ok_or_else(|| Error::Inconsistency("Lefschetz system is inconsistent".into()))?;
        let mut parts: Vec<(usize, Vec<Rational>)> = Vec::new();
        for ((r, p), c) in owners.into_iter().zip(x) {
            let j = k - 2 * r;
            let entry = match parts.iter_mut().find(|(q, _)| *q == r) {
                Some(e) => e,
                None => {
                    parts.push((r, vec![Rational::zero(); self.dims[j]]));
                    parts.last_mut().expect("just pushed")
                }
            };
            for (e, pi) in entry.1.iter_mut().zip(&p) {
                *e += &c * pi;
            }
        }
        parts.sort_by_key(|(r, _)| *r);
        Ok(parts
            .into_iter()
            .map(|(r, w)| (r, self.form(k - 2 * r, &w)))
            .filter(|(_, f)| !f.is_zero())
            .collect())
    }

    /// `⋆L^r α` by the closed formula
    /// `(−1)^{k(k−1)/2} r!/(n−k−r)! L^{n−k−r} α` for primitive `α`.
    pub fn weil_star(&self, a: &Form, r: usize) -> Result<Form> {
        let n = self.half_dim();
        let Some((k, _)) = self.coords(a)? else {
            return Ok(Form::zero(self.ambient()));
        };
        if k > n || r > n - k {
            return Err(Error::Degree(format!("r = {r} out of range for a primitive {k}-form (n = {n})")));
        }
        if !self.is_primitive(a)? {
            return Err(Error::Precondition("weil_star needs a primitive form".into()));
        }
        let c = sign((k * (k.saturating_sub(1)) / 2) % 2 == 1) * factorial(r) / factorial(n - k - r);
        let mut out = a.clone();
        for _ in 0..n - k - r {
            out = self.apply_l(&out)?;
        }
        Ok(out.scale(&c))
    }

    pub fn random_form<R: Rng>(&self, k: usize, rng: &mut R) -> Form {
        self.form(k, &random::coefficients(rng, self.dims[k]))
    }

    /// Random combination of a basis of primitive degree-`k` forms.
    pub fn random_primitive<R: Rng>(&self, k: usize, rng: &mut R) -> Form {
        let basis = self.primitive_subspace(k).basis();
        let cs = random::coefficients(rng, basis.len());
        let mut v = vec![Rational::zero(); self.dims[k]];
        for (b, c) in basis.iter().zip(&cs) {
            for (e, x) in v.iter_mut().zip(b) {
                *e += c * x;
            }
        }
        self.form(k, &v)
    }

    /// Random primitive `α` of each degree `k ≤ n` and each `r ≤ n − k`:
    /// `⋆L^r α` against the closed formula.
    pub fn weil_check(&self, samples: usize, seed: u64) -> Result<SampleCheck> {
        let n = self.half_dim();
        let mut rng = random::seeded(seed);
        let mut out = SampleCheck::default();
        for k in 0..=n {
            if self.primitive_subspace(k).is_zero() {
                continue;
            }
            for r in 0..=n - k {
                let mut bad = false;
                for _ in 0..samples {
                    let a = self.random_primitive(k, &mut rng);
                    let mut lr = a.clone();
                    for _ in 0..r {
                        lr = self.apply_l(&lr)?;
                    }
                    bad |= self.star(&lr)? != self.weil_star(&a, r)?;
                    out.checked += 1;
                }
                if bad {
                    out.failing.push((k, r));
                }
            }
        }
        Ok(out)
    }

    /// Random forms of every degree: the Lefschetz components are primitive
    /// and `Σ L^r/r! β_r` gives the form back.
    pub fn decomposition_check(&self, samples: usize, seed: u64) -> Result<SampleCheck> {
        let mut rng = random::seeded(seed);
        let mut out = SampleCheck::default();
        for k in 0..=self.top() {
            let mut bad = false;
            for _ in 0..samples {
                let a = self.random_form(k, &mut rng);
                let mut sum = Form::zero(self.ambient());
                for (r, b) in self.lefschetz_decompose(&a)? {
                    bad |= !self.is_primitive(&b)?;
                    let mut t = b;
                    for _ in 0..r {
                        t = self.apply_l(&t)?;
                    }
                    sum = &sum + &t.scale(&(Rational::one() / factorial(r)));
                }
                bad |= sum != a;
                out.checked += 1;
            }
            if bad {
                out.failing.push((k, 0));
            }
        }
        Ok(out)
    }

    /// `⋆ ∘ ⋆` at degree `k`.
    fn star_squared(&self, k: usize) -> Matrix {
        &self.star[self.top() - k] * &self.star[k]
    }

    /// Every operator identity, degree by degree.
    pub fn identity_checks(&self) -> Vec<IdentityCheck> {
        let top = self.top();
        let n = self.half_dim();
        let two = Rational::from_integer(2.into());
        let check = |name: &str, a: &LinearOperator, b: &LinearOperator| IdentityCheck {
            name: name.into(),
            failing_degrees: a.differing_degrees(b),
            required: true,
        };
        let literal = |name: &str, a: &LinearOperator, b: &LinearOperator| IdentityCheck {
            required: false,
            ..check(name, a, b)
        };
        let minus = |op: &LinearOperator| op.scale(&-Rational::one());
        let zero = |s: i32| LinearOperator::zero(s, &self.dims);
        let (d, l, lam, h, del) = (&self.d, &self.l, &self.lambda, &self.h, &self.delta);
        let dd = d.compose(del);
        let mut out = vec![
            IdentityCheck {
                name: "⋆² = id".into(),
                failing_degrees: (0..=top)
                    .filter(|&k| self.star_squared(k) != Matrix::identity(self.dims[k]))
                    .collect(),
                required: true,
            },
            check("[Λ, L] = H", &lam.commutator(l), h),
            check("[H, Λ] = 2Λ", &h.commutator(lam), &lam.scale(&two)),
            check("[H, L] = −2L", &h.commutator(l), &l.scale(&-two.clone())),
            check("[d, Λ] = −δ", &d.commutator(lam), &minus(del)),
            check("[δ, L] = −d", &del.commutator(l), &minus(d)),
            literal("[d, Λ] = δ", &d.commutator(lam), del),
            literal("[δ, L] = d", &del.commutator(l), d),
            check("[dδ, L] = 0", &dd.commutator(l), &zero(2)),
            check("[dδ, Λ] = 0", &dd.commutator(lam), &zero(-2)),
            check("δ² = 0", &del.compose(del), &zero(-2)),
            check("dδ = −δd", &dd, &minus(&del.compose(d))),
            IdentityCheck {
                name: "δ matrix = pointwise (−1)^(k+1) ⋆d⋆".into(),
                failing_degrees: (0..=top)
                    .filter(|&k| {
                        (0..self.dims[k]).any(|i| {
                            let e = self.bases[k].element(i);
                            self.delta(&e).ok() != self.delta_pointwise(&e).ok()
                        })
                    })
                    .collect(),
                required: true,
            },
            IdentityCheck {
                name: "L^(n−k) iso on forms".into(),
                failing_degrees: (0..=n)
                    .filter(|&k| self.l.power(n - k).matrix(k).rank() != self.dims[k])
                    .collect(),
                required: true,
            },
            IdentityCheck {
                name: "Λα = 0 ⇔ L^(n−k+1)α = 0".into(),
                failing_degrees: (0..=n)
                    .filter(|&k| self.primitive_subspace(k) != self.l.power(n - k + 1).matrix(k).kernel())
                    .collect(),
                required: true,
            },
        ];
        if let Some(ld) = self.lambda_darboux() {
            out.push(check("Λ = −Σ ι_x ι_y (Darboux)", lam, &ld));
        }
        out
    }
}
