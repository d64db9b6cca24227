//! Foliated cochain models.
//!
//! A model is a finite presentation of an invariant de Rham complex: named
//! degree-1 generators, the value of `d` on each generator (extended to all
//! forms as a graded derivation), a subset of generators spanning the
//! foliation directions, a transverse symplectic 2-form `omega`, and
//! optionally a contact generator `eta`.
//!
//! Once validated, basic forms are exactly the forms supported on the
//! transverse generators, and they form a subcomplex.

mod complex;
mod format;
mod zoo;

use std::sync::OnceLock;

pub use complex::GradedComplex;
pub use format::{load_model, render_model};
pub use zoo::{zoo, zoo_names, zoo_source};

use crate::error::{Error, Result};
use crate::exterior::{operator_matrix, render_form, Basis, Form, IndexSet, MAX_GENERATORS};
use crate::ratlin::{Matrix, Rational};

/// Generators plus the value of `d` on each of them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainModel {
    names: Vec<String>,
    /// `diff[i] = d(e_i)`, a 2-form or zero.
    diff: Vec<Form>,
}

impl CochainModel {
    /// Builds and validates `d ∘ d = 0` on generators.
    pub fn new(names: Vec<String>, diff: Vec<Form>) -> Result<Self> {
        if names.len() > MAX_GENERATORS {
            return Err(Error::Validation(format!(
                "at most {MAX_GENERATORS} generators are supported"
            )));
        }
        assert_eq!(names.len(), diff.len());
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return Err(Error::Validation(format!("duplicate generator `{a}`")));
            }
        }
        for (name, f) in names.iter().zip(&diff) {
            if !f.is_zero() && f.degree() != Some(2) {
                return Err(Error::Validation(format!("d({name}) must be a 2-form")));
            }
        }
        let m = CochainModel { names, diff };
        for (i, name) in m.names.iter().enumerate() {
            if !m.d(&m.diff[i]).is_zero() {
                return Err(Error::Validation(format!("d²({name}) ≠ 0")));
            }
        }
        Ok(m)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn d_generator(&self, i: usize) -> &Form {
        &self.diff[i]
    }

    /// Exterior derivative, extended from generators by the graded Leibniz
    /// rule.
    pub fn d(&self, form: &Form) -> Form {
        let n = self.names.len();
        let mut out = Form::zero(n);
        for (s, c) in form.terms() {
            let idx: Vec<usize> = s.indices().collect();
            for (p, &g) in idx.iter().enumerate() {
                if self.diff[g].is_zero() {
                    continue;
                }
                let left = Form::monomial(n, IndexSet::from_indices(&idx[..p]), c.clone());
                let right = Form::monomial(n, IndexSet::from_indices(&idx[p + 1..]), Rational::from_integer(1.into()));
                let term = left
                    .wedge(&self.diff[g])
                    .and_then(|x| x.wedge(&right))
                    .expect("same ambient");
                out = if p % 2 == 0 { &out + &term } else { &out - &term };
            }
        }
        out
    }

    pub fn render(&self, form: &Form) -> String {
        render_form(form, &self.names)
    }
}

/// A validated transversely symplectic invariant model.
#[derive(Clone, Debug)]
pub struct FoliatedModel {
    name: String,
    base: CochainModel,
    foliation: Vec<usize>,
    transverse: Vec<usize>,
    omega: Form,
    eta: Option<usize>,
    full: OnceLock<GradedComplex>,
    basic: OnceLock<GradedComplex>,
}

impl FoliatedModel {
    /// Validates every structural invariant and builds the model.
    pub fn new(
        name: impl Into<String>,
        base: CochainModel,
        foliation: Vec<usize>,
        omega: Form,
        eta: Option<usize>,
    ) -> Result<Self> {
        let n_gen = base.len();
        let names = base.names().to_vec();
        let mut foliation = foliation;
        foliation.sort_unstable();
        foliation.dedup();
        if foliation.iter().any(|&i| i >= n_gen) {
            return Err(Error::Validation("foliation direction out of range".into()));
        }
        let transverse: Vec<usize> = (0..n_gen).filter(|i| !foliation.contains(i)).collect();
        let tmask = IndexSet::from_indices(&transverse).mask();

        if omega.ambient() != n_gen {
            return Err(Error::Validation("omega lives over the wrong generator set".into()));
        }
        if omega.is_zero() || omega.degree() != Some(2) {
            return Err(Error::Validation("omega must be a nonzero 2-form".into()));
        }
        for (s, _) in omega.terms() {
            if !s.is_subset_of(tmask) {
                let bad = s.indices().find(|i| foliation.contains(i)).expect("non-transverse index");
                return Err(Error::Validation(format!(
                    "omega not transverse: it involves foliation direction `{}`",
                    names[bad]
                )));
            }
        }
        if !base.d(&omega).is_zero() {
            return Err(Error::Validation("dω ≠ 0".into()));
        }
        if transverse.is_empty() {
            return Err(Error::Validation("no transverse directions (n = 0)".into()));
        }
        if !transverse.len().is_multiple_of(2) {
            return Err(Error::Validation(format!(
                "odd number of transverse generators ({})",
                transverse.len()
            )));
        }
        let n = transverse.len() / 2;
        if omega.pow(n).is_zero() {
            return Err(Error::Validation(format!("ω^n = 0 (n = {n}): omega is degenerate")));
        }
        for &g in &transverse {
            let dg = base.d_generator(g);
            if let Some(bad) = foliation.iter().find(|&&f| !dg.contract(f).is_zero()) {
                return Err(Error::Validation(format!(
                    "invariance fails: d({}) involves foliation direction `{}`",
                    names[g], names[*bad]
                )));
            }
        }
        if let Some(e) = eta {
            if foliation != [e] {
                return Err(Error::Validation(
                    "contact data requires eta to be the single foliation direction".into(),
                ));
            }
            if base.d_generator(e) != &omega {
                return Err(Error::Validation(format!("d({}) ≠ omega", names[e])));
            }
        }
        Ok(FoliatedModel {
            name: name.into(),
            base,
            foliation,
            transverse,
            omega,
            eta,
            full: OnceLock::new(),
            basic: OnceLock::new(),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn base(&self) -> &CochainModel {
        &self.base
    }

    pub fn names(&self) -> &[String] {
        self.base.names()
    }

    pub fn num_generators(&self) -> usize {
        self.base.len()
    }

    pub fn foliation(&self) -> &[usize] {
        &self.foliation
    }

    pub fn transverse(&self) -> &[usize] {
        &self.transverse
    }

    /// Half the number of transverse generators.
    pub fn half_dim(&self) -> usize {
        self.transverse.len() / 2
    }

    pub fn omega(&self) -> &Form {
        &self.omega
    }

    pub fn eta(&self) -> Option<usize> {
        self.eta
    }

    pub fn is_contact(&self) -> bool {
        self.eta.is_some()
    }

    pub fn d(&self, form: &Form) -> Form {
        self.base.d(form)
    }

    pub fn render(&self, form: &Form) -> String {
        self.base.render(form)
    }

    /// Whether `form` is basic (supported on transverse generators).
    pub fn is_basic(&self, form: &Form) -> bool {
        form.support() & !IndexSet::from_indices(&self.transverse).mask() == 0
    }

    /// The invariant de Rham complex on all generators.
    pub fn full_complex(&self) -> &GradedComplex {
        self.full.get_or_init(|| {
            let n = self.num_generators();
            let bases: Vec<Basis> = (0..=n).map(|k| Basis::of_degree(k, n)).collect();
            self.build_complex(bases)
        })
    }

    /// The basic subcomplex: forms on the transverse generators.
    pub fn basic_complex(&self) -> &GradedComplex {
        self.basic.get_or_init(|| {
            let n = self.num_generators();
            let bases: Vec<Basis> = (0..=self.transverse.len())
                .map(|k| Basis::restricted(k, n, &self.transverse))
                .collect();
            self.build_complex(bases)
        })
    }

    fn build_complex(&self, bases: Vec<Basis>) -> GradedComplex {
        let d = (0..bases.len())
            .map(|k| match bases.get(k + 1) {
                Some(next) => operator_matrix(|f| self.d(f), &bases[k], next)
                    .expect("validated model: d preserves the complex"),
                None => Matrix::zeros(0, bases[k].len()),
            })
            .collect();
        GradedComplex::new(bases, d)
    }

    /// Inclusion of basic degree-`k` forms into all degree-`k` forms.
    pub fn inclusion_matrix(&self, k: usize) -> Matrix {
        let basic = self.basic_complex().basis(k);
        let full = self.full_complex().basis(k);
        let mut m = Matrix::zeros(full.len(), basic.len());
        for (j, s) in basic.monomials().iter().enumerate() {
            let i = full.position(*s).expect("basic monomial in full basis");
            m.set(i, j, Rational::from_integer(1.into()));
        }
        m
    }

    /// Adjoins a generator `name` with `d(name) = omega`, making it the
    /// single foliation direction and the contact form.
    pub fn boothby_wang_extend(&self, name: &str) -> Result<FoliatedModel> {
        if !self.foliation.is_empty() {
            return Err(Error::Precondition(
                "Boothby–Wang extension needs a purely symplectic base (empty foliation)".into(),
            ));
        }
        if self.base.index_of(name).is_some() {
            return Err(Error::Validation(format!("generator `{name}` already exists")));
        }
        let n = self.num_generators();
        let lift = |f: &Form| {
            let mut g = Form::zero(n + 1);
            for (s, c) in f.terms() {
                g.add_term(*s, c.clone());
            }
            g
        };
        let mut names = self.names().to_vec();
        names.push(name.to_string());
        let mut diff: Vec<Form> = (0..n).map(|i| lift(self.base.d_generator(i))).collect();
        let omega = lift(&self.omega);
        diff.push(omega.clone());
        let base = CochainModel::new(names, diff)?;
        FoliatedModel::new(format!("bw({})", self.name), base, vec![n], omega, Some(n))
    }

    /// Compares generator names, differentials, foliation, omega and eta by
    /// name, ignoring generator order.
    pub fn same_structure(&self, other: &FoliatedModel) -> bool {
        let mut a = self.names().to_vec();
        let mut b = other.names().to_vec();
        a.sort();
        b.sort();
        if a != b {
            return false;
        }
        let perm: Vec<usize> = self
            .names()
            .iter()
            .map(|n| other.base.index_of(n).expect("same names"))
            .collect();
        let relabel = |f: &Form| {
            let mut g = Form::zero(f.ambient());
            for (s, c) in f.terms() {
                let idx: Vec<usize> = s.indices().map(|i| perm[i]).collect();
                let mono = idx.iter().fold(Form::one(f.ambient()), |acc, &i| {
                    acc.wedge(&Form::generator(f.ambient(), i)).expect("ambient")
                });
                g = &g + &mono.scale(c);
            }
            g
        };
        let mut fa: Vec<usize> = self.foliation.iter().map(|&i| perm[i]).collect();
        fa.sort_unstable();
        (0..self.num_generators()).all(|i| relabel(self.base.d_generator(i)) == *other.base.d_generator(perm[i]))
            && fa == other.foliation
            && relabel(&self.omega) == other.omega
            && self.eta.map(|e| perm[e]) == other.eta
    }

    /// The sign `s` with `eta ∧ t_1 ∧ … ∧ t_2n = s · e_top`, where the `t_i`
    /// are the transverse generators in file order and `e_top` is the sorted
    /// top monomial. `None` without `eta`.
    pub fn contact_orientation_sign(&self) -> Option<Rational> {
        let e = self.eta?;
        let below = self.transverse.iter().filter(|&&t| t < e).count();
        Some(if below % 2 == 0 {
            Rational::from_integer(1.into())
        } else {
            Rational::from_integer((-1).into())
        })
    }
}
