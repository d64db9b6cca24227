//! Cohomology of a model and the Lefschetz / dδ-lemma checkers.
//!
//! Basic cohomology, de Rham cohomology of the full invariant complex,
//! δ-homology of the basic complex, primitive and harmonic subspaces, and
//! the cross-checks between them. Maps on cohomology are induced from form
//! level operators applied to class representatives and reduced modulo
//! coboundaries.
//!
//! Levels `s` follow one convention everywhere: `s` ranges over
//! `0..=n−1`, a property that fails already at `s = 0` reports `-1`.

mod space;

use num_traits::{One, Zero};
use serde::Serialize;

pub use space::CohomologySpace;

use crate::error::{Error, Result};
use crate::exterior::Form;
use crate::hodge::{random, Hodge};
use crate::model::{FoliatedModel, GradedComplex};
use crate::ratlin::{Matrix, Rational, Subspace};

/// Which complex a class lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ComplexKind {
    Basic,
    DeRham,
}

/// Largest `s ≤ n − 1` with `ok(0), …, ok(s)` all true, or `-1`.
pub fn max_level(n: usize, ok: impl Fn(usize) -> bool) -> i64 {
    let mut s = -1;
    for t in 0..n {
        if !ok(t) {
            break;
        }
        s = t as i64;
    }
    s
}

#[derive(Clone, Debug, Serialize)]
pub struct LefschetzDegree {
    pub k: usize,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    pub injective: bool,
    pub surjective: bool,
    pub iso: bool,
    pub witness: Option<String>,
}

/// Transverse Lefschetz maps `L^{n−k}: H_B^k → H_B^{2n−k}` for `k ≤ n`.
#[derive(Clone, Debug, Serialize)]
pub struct LefschetzReport {
    pub per_degree: Vec<LefschetzDegree>,
    /// Level from isomorphisms (the s-Lefschetz property).
    pub max_s: i64,
    /// Level from surjectivity alone; reported separately, never merged.
    pub max_s_surjective: i64,
    /// Isomorphism for every `k ≤ n`.
    pub hard_lefschetz: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DdDegree {
    pub k: usize,
    pub im_d_ker_delta: usize,
    pub im_d_delta: usize,
    pub im_delta_ker_d: usize,
    /// `Im d ∩ ker δ = Im dδ`.
    pub left_equal: bool,
    /// `Im dδ = Im δ ∩ ker d`.
    pub right_equal: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DdLemmaReport {
    pub per_degree: Vec<DdDegree>,
    pub max_s: i64,
    /// Level from the high-degree form of the identities.
    pub mirror_max_s: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct LevelRow {
    pub s: usize,
    pub verdicts: Vec<bool>,
}

/// Three-way comparison of levels: Lefschetz isomorphisms, dδ-lemma, and
/// its mirror in degrees `≥ 2n − s`.
#[derive(Clone, Debug, Serialize)]
pub struct EquivalenceReport {
    pub columns: Vec<String>,
    pub per_s: Vec<LevelRow>,
    pub max_s: Vec<i64>,
    pub consistent: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionDegree {
    pub i: usize,
    pub dim: usize,
    /// `(r, dim L^r PH^{i−2r})`.
    pub pieces: Vec<(usize, usize)>,
    pub sum_dim: usize,
    pub direct: bool,
    pub exhaustive: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionReport {
    pub s: i64,
    pub precondition: bool,
    pub per_degree: Vec<DecompositionDegree>,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DualityDegree {
    pub k: usize,
    pub delta_homology: usize,
    pub basic_mirror: usize,
    pub star_rank: usize,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct HarmonicLefschetzDegree {
    pub k: usize,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExactnessCheck {
    pub name: String,
    pub degrees: Vec<usize>,
    pub failing_degrees: Vec<usize>,
}

impl ExactnessCheck {
    pub fn holds(&self) -> bool {
        self.failing_degrees.is_empty()
    }
}

/// Cohomology of one model, computed once.
#[derive(Clone, Debug)]
pub struct Analysis {
    model: FoliatedModel,
    hodge: Hodge,
    basic: Vec<CohomologySpace>,
    derham: Vec<CohomologySpace>,
    delta: Vec<CohomologySpace>,
    /// `ker d ∩ ker δ` on each basic degree.
    harmonic_forms: Vec<Subspace>,
}

fn spaces(c: &GradedComplex) -> Result<Vec<CohomologySpace>> {
    (0..=c.top())
        .map(|k| CohomologySpace::of(k, &c.d_in(k), c.d_out(k)))
        .collect()
}

impl Analysis {
    pub fn new(model: &FoliatedModel) -> Result<Self> {
        let hodge = Hodge::new(model)?;
        let basic = spaces(model.basic_complex())?;
        let derham = spaces(model.full_complex())?;
        let top = hodge.top();
        let del = hodge.op_delta();
        let delta = (0..=top)
            .map(|k| {
                let d_in = if k == top {
                    Matrix::zeros(hodge.dims()[k], 0)
                } else {
                    del.matrix(k + 1).clone()
                };
                CohomologySpace::of(k, &d_in, del.matrix(k))
            })
            .collect::<Result<Vec<_>>>()?;
        let harmonic_forms = (0..=top)
            .map(|k| basic[k].cocycles().intersect(&del.matrix(k).kernel()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Analysis {
            model: model.clone(),
            hodge,
            basic,
            derham,
            delta,
            harmonic_forms,
        })
    }

    pub fn model(&self) -> &FoliatedModel {
        &self.model
    }

    pub fn hodge(&self) -> &Hodge {
        &self.hodge
    }

    pub fn half_dim(&self) -> usize {
        self.hodge.half_dim()
    }

    fn top(&self) -> usize {
        self.hodge.top()
    }

    pub fn basic_cohomology(&self, k: usize) -> &CohomologySpace {
        &self.basic[k]
    }

    pub fn de_rham_cohomology(&self, k: usize) -> &CohomologySpace {
        &self.derham[k]
    }

    pub fn delta_homology(&self, k: usize) -> &CohomologySpace {
        &self.delta[k]
    }

    pub fn space(&self, kind: ComplexKind, k: usize) -> &CohomologySpace {
        match kind {
            ComplexKind::Basic => &self.basic[k],
            ComplexKind::DeRham => &self.derham[k],
        }
    }

    fn complex(&self, kind: ComplexKind) -> &GradedComplex {
        match kind {
            ComplexKind::Basic => self.model.basic_complex(),
            ComplexKind::DeRham => self.model.full_complex(),
        }
    }

    pub fn basic_betti(&self) -> Vec<usize> {
        self.basic.iter().map(CohomologySpace::dim).collect()
    }

    pub fn de_rham_betti(&self) -> Vec<usize> {
        self.derham.iter().map(CohomologySpace::dim).collect()
    }

    pub fn delta_betti(&self) -> Vec<usize> {
        self.delta.iter().map(CohomologySpace::dim).collect()
    }

    pub fn harmonic_forms(&self, k: usize) -> &Subspace {
        &self.harmonic_forms[k]
    }

    /// The form representing a class.
    pub fn class_form(&self, kind: ComplexKind, k: usize, class: &[Rational]) -> Form {
        let rep = self.space(kind, k).representative(class);
        self.complex(kind).form(k, &rep)
    }

    /// `[form]` in text, using the model's generator names.
    pub fn render_class(&self, kind: ComplexKind, k: usize, class: &[Rational]) -> String {
        format!("[{}]", self.model.render(&self.class_form(kind, k, class)))
    }

    /// Class of a closed form in the given complex.
    pub fn class_of_form(&self, kind: ComplexKind, form: &Form) -> Result<(usize, Vec<Rational>)> {
        let k = form
            .degree()
            .ok_or_else(|| Error::Degree("class of a zero or inhomogeneous form".into()))?;
        let v = form.coords(self.complex(kind).basis(k))?;
        let c = self
            .space(kind, k)
            .class_of(&v)
            .ok_or_else(|| Error::Precondition("form is not closed".into()))?;
        Ok((k, c))
    }

    /// Induced `L^p` from `H_B^k` to `H_B^{k+2p}` (zero target when out of
    /// range).
    pub fn lefschetz_power(&self, k: usize, p: usize) -> Result<Matrix> {
        let t = k + 2 * p;
        if t > self.top() {
            return Ok(Matrix::zeros(0, self.basic[k].dim()));
        }
        let m = self.hodge.op_l().power(p).matrix(k).clone();
        self.basic[k].induced(&m, &self.basic[t])
    }

    /// `PH_B^r = ker(L^{n−r+1}: H_B^r → H_B^{2n−r+2})`, in class coordinates
    /// of `H_B^r`. Zero for `r > n`.
    pub fn primitive_cohomology(&self, r: usize) -> Result<Subspace> {
        let n = self.half_dim();
        if r > n {
            return Ok(Subspace::zero(self.basic[r].dim()));
        }
        Ok(self.lefschetz_power(r, n - r + 1)?.kernel())
    }

    /// Image of `ker d ∩ ker δ` in `H_B^k`, in class coordinates.
    pub fn harmonic_cohomology(&self, k: usize) -> Result<Subspace> {
        self.basic[k].classes_of(&self.harmonic_forms[k])
    }

    pub fn transverse_lefschetz(&self) -> Result<LefschetzReport> {
        let n = self.half_dim();
        let mut per_degree = Vec::new();
        for k in 0..=n {
            let m = self.lefschetz_power(k, n - k)?;
            let (src, tgt) = (&self.basic[k], &self.basic[2 * n - k]);
            let rank = m.rank();
            let injective = rank == src.dim();
            let surjective = rank == tgt.dim();
            let witness = if !injective {
                let c = m.kernel().basis().remove(0);
                Some(format!("{} ↦ 0", self.render_class(ComplexKind::Basic, k, &c)))
            } else if !surjective {
                let image = m.image();
                let e = (0..tgt.dim())
                    .map(|i| unit(tgt.dim(), i))
                    .find(|e| !image.contains_vector(e))
                    .expect("a class outside a proper image");
                Some(format!(
                    "{} not in the image",
                    self.render_class(ComplexKind::Basic, 2 * n - k, &e)
                ))
            } else {
                None
            };
            per_degree.push(LefschetzDegree {
                k,
                source_dim: src.dim(),
                target_dim: tgt.dim(),
                rank,
                injective,
                surjective,
                iso: injective && surjective,
                witness,
            });
        }
        Ok(LefschetzReport {
            max_s: max_level(n, |s| per_degree[..=s].iter().all(|d| d.iso)),
            max_s_surjective: max_level(n, |s| per_degree[..=s].iter().all(|d| d.surjective)),
            hard_lefschetz: per_degree.iter().all(|d| d.iso),
            per_degree,
        })
    }

    pub fn dd_lemma(&self) -> Result<DdLemmaReport> {
        let n = self.half_dim();
        let h = &self.hodge;
        let dd = h.op_d().compose(h.op_delta());
        let mut per_degree = Vec::new();
        for k in 0..=self.top() {
            let im_d = self.basic[k].coboundaries();
            let ker_delta = h.op_delta().matrix(k).kernel();
            let ker_d = self.basic[k].cocycles();
            let im_delta = self.delta[k].coboundaries();
            let a = im_d.intersect(&ker_delta)?;
            let b = dd.matrix(k).image();
            let c = im_delta.intersect(ker_d)?;
            per_degree.push(DdDegree {
                k,
                im_d_ker_delta: a.dim(),
                im_d_delta: b.dim(),
                im_delta_ker_d: c.dim(),
                left_equal: a == b,
                right_equal: b == c,
            });
        }
        let both = |k: usize| per_degree[k].left_equal && per_degree[k].right_equal;
        let top = self.top();
        let max_s = max_level(n, |s| (0..=s).all(both) && per_degree[s + 1].left_equal);
        let mirror_max_s = max_level(n, |s| (top - s..=top).all(both) && per_degree[top - s - 1].right_equal);
        Ok(DdLemmaReport {
            per_degree,
            max_s,
            mirror_max_s,
        })
    }

    /// Levels from the Lefschetz, dδ-lemma and mirror checkers must agree
    /// for every `s`.
    pub fn lefschetz_dd_equivalence(&self) -> Result<EquivalenceReport> {
        let n = self.half_dim();
        let lef = self.transverse_lefschetz()?;
        let dd = self.dd_lemma()?;
        let levels = [lef.max_s, dd.max_s, dd.mirror_max_s];
        let per_s: Vec<LevelRow> = (0..n)
            .map(|s| LevelRow {
                s,
                verdicts: levels.iter().map(|&m| s as i64 <= m).collect(),
            })
            .collect();
        Ok(EquivalenceReport {
            columns: vec!["transverse_lefschetz".into(), "dd_lemma".into(), "dd_lemma_mirror".into()],
            consistent: levels.iter().all(|&m| m == levels[0]),
            max_s: levels.to_vec(),
            per_s,
        })
    }

    /// For each `s`: surjectivity of the Lefschetz maps for `k ≤ s`,
    /// statement 1 (harmonic classes fill `H_B^k` for `k ≤ s + 2` and
    /// `H_B^{2n−k}` for `k ≤ s`), statement 2 (only the second half).
    pub fn harmonic_representatives_check(&self) -> Result<EquivalenceReport> {
        let n = self.half_dim();
        let top = self.top();
        let lef = self.transverse_lefschetz()?;
        let flat = (0..=top)
            .map(|k| Ok(self.harmonic_cohomology(k)?.dim() == self.basic[k].dim()))
            .collect::<Result<Vec<bool>>>()?;
        let per_s: Vec<LevelRow> = (0..n)
            .map(|s| {
                let surj = lef.per_degree[..=s].iter().all(|d| d.surjective);
                let high = (0..=s).all(|k| flat[top - k]);
                let low = (0..=(s + 2).min(top)).all(|k| flat[k]);
                LevelRow {
                    s,
                    verdicts: vec![surj, low && high, high],
                }
            })
            .collect();
        let consistent = per_s.iter().all(|r| r.verdicts.iter().all(|&v| v == r.verdicts[0]));
        let max = |i: usize| max_level(n, |s| per_s[..=s].iter().all(|r| r.verdicts[i]));
        Ok(EquivalenceReport {
            columns: vec!["surjective".into(), "statement_1".into(), "statement_2".into()],
            max_s: (0..3).map(max).collect(),
            per_s,
            consistent,
        })
    }

    /// `H_B^i = ⊕_r L^r PH_B^{i−2r}` for `i ≤ s + 2` and `i ≥ 2n − s`.
    pub fn decomposition_in_cohomology(&self, s: i64) -> Result<DecompositionReport> {
        let n = self.half_dim();
        let top = self.top();
        let lef = self.transverse_lefschetz()?;
        if s < 0 || s >= n as i64 || s > lef.max_s {
            return Ok(DecompositionReport {
                s,
                precondition: false,
                per_degree: Vec::new(),
                holds: false,
            });
        }
        let s = s as usize;
        let mut degrees: Vec<usize> = (0..=(s + 2).min(top)).chain(top - s..=top).collect();
        degrees.sort_unstable();
        degrees.dedup();
        let mut per_degree = Vec::new();
        for i in degrees {
            let mut pieces = Vec::new();
            let mut total = Subspace::zero(self.basic[i].dim());
            let mut sum_dim = 0;
            for r in 0..=i / 2 {
                let j = i - 2 * r;
                let ph = self.primitive_cohomology(j)?;
                let piece = ph.map(&self.lefschetz_power(j, r)?);
                pieces.push((r, piece.dim()));
                sum_dim += piece.dim();
                total = total.sum(&piece)?;
            }
            per_degree.push(DecompositionDegree {
                i,
                dim: self.basic[i].dim(),
                direct: sum_dim == total.dim(),
                exhaustive: total.dim() == self.basic[i].dim(),
                pieces,
                sum_dim,
            });
        }
        Ok(DecompositionReport {
            s: s as i64,
            precondition: true,
            holds: per_degree.iter().all(|d| d.direct && d.exhaustive),
            per_degree,
        })
    }

    /// `⋆: H_δ,k ≅ H_B^{2n−k}`.
    pub fn delta_duality_check(&self) -> Result<Vec<DualityDegree>> {
        let top = self.top();
        (0..=top)
            .map(|k| {
                let src = &self.delta[k];
                let tgt = &self.basic[top - k];
                let m = src.induced(self.hodge.star_matrix(k), tgt)?;
                let rank = m.rank();
                Ok(DualityDegree {
                    k,
                    delta_homology: src.dim(),
                    basic_mirror: tgt.dim(),
                    star_rank: rank,
                    holds: src.dim() == tgt.dim() && rank == src.dim(),
                })
            })
            .collect()
    }

    /// `L^k: Ω_hr^{n−k} → Ω_hr^{n+k}` is an isomorphism.
    pub fn harmonic_lefschetz_check(&self) -> Result<Vec<HarmonicLefschetzDegree>> {
        let n = self.half_dim();
        (0..=n)
            .map(|k| {
                let src = &self.harmonic_forms[n - k];
                let tgt = &self.harmonic_forms[n + k];
                let image = src.map(self.hodge.op_l().power(k).matrix(n - k));
                let inside = tgt.contains(&image)?;
                Ok(HarmonicLefschetzDegree {
                    k,
                    source_dim: src.dim(),
                    target_dim: tgt.dim(),
                    rank: image.dim(),
                    holds: inside && image.dim() == src.dim() && image.dim() == tgt.dim(),
                })
            })
            .collect()
    }

    /// The three parts of the exactness statements that follow from the
    /// s-Lefschetz property, at the given level `s ≥ 0`:
    /// (a) exact and δ-closed ⇒ δ-exact on degrees `≤ s + 2` and `≥ 2n − s`;
    /// (b) δ-exact and closed ⇒ exact on degrees `≤ s` and `≥ 2n − s − 2`;
    /// (c) `Im d ∩ ker δ = ker d ∩ Im δ` on degrees `≤ s` and `≥ 2n − s`.
    pub fn exactness_checks(&self, s: usize) -> Result<Vec<ExactnessCheck>> {
        let top = self.top();
        let low_high = |lo: usize, hi: usize| -> Vec<usize> {
            let mut v: Vec<usize> = (0..=lo.min(top)).chain(hi.min(top)..=top).collect();
            v.sort_unstable();
            v.dedup();
            v
        };
        let a_c = |k: usize| -> Result<(Subspace, Subspace)> {
            let ker_delta = self.hodge.op_delta().matrix(k).kernel();
            let a = self.basic[k].coboundaries().intersect(&ker_delta)?;
            let c = self.delta[k].coboundaries().intersect(self.basic[k].cocycles())?;
            Ok((a, c))
        };
        let run = |name: &str, degrees: Vec<usize>, f: &dyn Fn(usize) -> Result<bool>| -> Result<ExactnessCheck> {
            let mut failing = Vec::new();
            for &k in &degrees {
                if !f(k)? {
                    failing.push(k);
                }
            }
            Ok(ExactnessCheck {
                name: name.into(),
                degrees,
                failing_degrees: failing,
            })
        };
        Ok(vec![
            run(
                "exact ∩ δ-closed ⊆ δ-exact",
                low_high(s + 2, top - s),
                &|k| {
                    let (a, _) = a_c(k)?;
                    self.delta[k].coboundaries().contains(&a)
                },
            )?,
            run(
                "δ-exact ∩ closed ⊆ exact",
                low_high(s, top.saturating_sub(s + 2)),
                &|k| {
                    let (_, c) = a_c(k)?;
                    self.basic[k].coboundaries().contains(&c)
                },
            )?,
            run("Im d ∩ ker δ = ker d ∩ Im δ", low_high(s, top - s), &|k| {
                let (a, c) = a_c(k)?;
                Ok(a == c)
            })?,
        ])
    }

    /// Random elements of `Im d ∩ ker δ` in degrees `≤ s + 2` and
    /// `≥ 2n − s`: every primitive piece of the Lefschetz decomposition must
    /// be exact. Returns the number of samples checked and the degrees where
    /// some sample failed.
    pub fn exact_pieces_check(&self, s: usize, samples: usize, seed: u64) -> Result<(usize, Vec<usize>)> {
        let top = self.top();
        let mut rng = random::seeded(seed);
        let mut degrees: Vec<usize> = (0..=(s + 2).min(top)).chain(top - s..=top).collect();
        degrees.sort_unstable();
        degrees.dedup();
        let mut checked = 0;
        let mut failing = Vec::new();
        for k in degrees {
            let ker_delta = self.hodge.op_delta().matrix(k).kernel();
            let space = self.basic[k].coboundaries().intersect(&ker_delta)?;
            if space.is_zero() {
                continue;
            }
            let basis = space.basis();
            let mut bad = false;
            for _ in 0..samples {
                let cs = random::coefficients(&mut rng, basis.len());
                let v = combine(&basis, &cs, space.ambient());
                let form = self.hodge.form(k, &v);
                for (r, piece) in self.hodge.lefschetz_decompose(&form)? {
                    let j = k - 2 * r;
                    let coords = piece.coords(self.hodge.basis(j))?;
                    if !self.basic[j].is_coboundary(&coords) {
                        bad = true;
                    }
                }
                checked += 1;
            }
            if bad {
                failing.push(k);
            }
        }
        Ok((checked, failing))
    }

    /// Class of `rep(a) ∧ rep(b)`.
    pub fn cup(
        &self,
        kind: ComplexKind,
        p: usize,
        a: &[Rational],
        q: usize,
        b: &[Rational],
    ) -> Result<Vec<Rational>> {
        let c = self.complex(kind);
        if p + q > c.top() {
            return Ok(Vec::new());
        }
        let fa = self.class_form(kind, p, a);
        let fb = self.class_form(kind, q, b);
        let w = fa.wedge(&fb)?;
        let v = w.coords(c.basis(p + q))?;
        self.space(kind, p + q)
            .class_of(&v)
            .ok_or_else(|| Error::Inconsistency("wedge of cocycles is not closed".into()))
    }

    /// Wedging a coboundary of degree `p` with a cocycle of degree `q`
    /// (either order) lands in coboundaries.
    pub fn cup_well_defined(&self, kind: ComplexKind, p: usize, q: usize) -> Result<bool> {
        let c = self.complex(kind);
        if p + q > c.top() {
            return Ok(true);
        }
        let target = self.space(kind, p + q);
        for b in self.space(kind, p).coboundaries().basis() {
            for z in self.space(kind, q).cocycles().basis() {
                let (fb, fz) = (c.form(p, &b), c.form(q, &z));
                for w in [fb.wedge(&fz)?, fz.wedge(&fb)?] {
                    if !target.is_coboundary(&w.coords(c.basis(p + q))?) {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }
}

pub(crate) fn unit(len: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); len];
    v[i] = Rational::one();
    v
}

pub(crate) fn combine(basis: &[Vec<Rational>], cs: &[Rational], len: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); len];
    for (b, c) in basis.iter().zip(cs) {
        for (e, x) in v.iter_mut().zip(b) {
            *e += c * x;
        }
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::parse_form;
    use crate::model::zoo;
    use crate::ratlin::rat;

    fn analysis(name: &str) -> Analysis {
        Analysis::new(&zoo(name).unwrap()).unwrap()
    }

    #[test]
    fn betti_numbers() {
        let h = analysis("heisenberg3");
        assert_eq!(h.basic_betti(), vec![1, 2, 1]);
        assert_eq!(h.de_rham_betti(), vec![1, 2, 2, 1]);
        assert_eq!(h.delta_betti()[0], 1);
        assert_eq!(analysis("kodaira_thurston").de_rham_betti(), vec![1, 3, 4, 3, 1]);
        assert_eq!(analysis("kt_contact5").de_rham_betti()[1], 3);
        assert_eq!(analysis("torus4").delta_betti(), vec![1, 4, 6, 4, 1]);
    }

    #[test]
    fn primitive_cohomology_dims() {
        let kt = analysis("kodaira_thurston");
        assert_eq!(kt.primitive_cohomology(0).unwrap().dim(), 1);
        assert_eq!(kt.primitive_cohomology(1).unwrap().dim(), 3);
        let rank = kt.lefschetz_power(2, 1).unwrap().rank();
        assert_eq!(kt.primitive_cohomology(2).unwrap().dim(), 4 - rank);
        let t4 = analysis("torus4");
        assert_eq!(t4.primitive_cohomology(2).unwrap().dim(), 5);
    }

    #[test]
    fn harmonic_cohomology_examples() {
        let t4 = analysis("torus4");
        for k in 0..=4 {
            assert_eq!(t4.harmonic_cohomology(k).unwrap().dim(), t4.basic_cohomology(k).dim());
        }
        let h = analysis("heisenberg3");
        for k in 0..=2 {
            assert!(h.harmonic_cohomology(k).unwrap().is_full());
        }
        let kt = analysis("kodaira_thurston");
        assert!(kt.harmonic_cohomology(3).unwrap().dim() < kt.basic_cohomology(3).dim());
    }

    #[test]
    fn lefschetz_reports() {
        let t4 = analysis("torus4").transverse_lefschetz().unwrap();
        assert!(t4.hard_lefschetz);
        assert_eq!(t4.max_s, 1);
        let kt = analysis("kodaira_thurston").transverse_lefschetz().unwrap();
        assert!(kt.per_degree[0].iso && !kt.per_degree[1].iso);
        assert_eq!(kt.max_s, 0);
        assert_eq!(kt.per_degree[1].witness.as_deref(), Some("[1 e2] ↦ 0"));
        let h = analysis("heisenberg3").transverse_lefschetz().unwrap();
        assert!(h.hard_lefschetz && h.max_s == 0);
    }

    #[test]
    fn kodaira_thurston_witness_is_exact() {
        let m = zoo("kodaira_thurston").unwrap();
        let a = Analysis::new(&m).unwrap();
        let e123 = parse_form("e1^e2^e3", m.names()).unwrap();
        let d_e34 = m.d(&parse_form("e3^e4", m.names()).unwrap());
        assert_eq!(d_e34, -&e123);
        let (_, c) = a.class_of_form(ComplexKind::Basic, &e123).unwrap();
        assert!(c.iter().all(Zero::is_zero));
    }

    #[test]
    fn dd_lemma_and_equivalences() {
        for (name, s) in [("torus4", 1), ("torus6", 2), ("heisenberg3", 0), ("kodaira_thurston", 0), ("kt_contact5", 0)] {
            let a = analysis(name);
            let eq = a.lefschetz_dd_equivalence().unwrap();
            assert!(eq.consistent, "{name}: {:?}", eq.max_s);
            assert_eq!(eq.max_s[0], s, "{name}");
            let t41 = a.harmonic_representatives_check().unwrap();
            assert!(t41.consistent, "{name}: {:?}", t41.per_s);
            let t43 = a.decomposition_in_cohomology(s).unwrap();
            assert!(t43.precondition && t43.holds, "{name}: {t43:?}");
        }
        let t4 = analysis("torus4").dd_lemma().unwrap();
        assert!(t4.per_degree.iter().all(|d| d.im_d_ker_delta == 0 && d.im_d_delta == 0 && d.im_delta_ker_d == 0));
        let kt = analysis("kodaira_thurston");
        assert!(!kt.decomposition_in_cohomology(1).unwrap().precondition);
    }

    #[test]
    fn decomposition_examples() {
        let t4 = analysis("torus4").decomposition_in_cohomology(1).unwrap();
        let two = t4.per_degree.iter().find(|d| d.i == 2).unwrap();
        assert_eq!(two.pieces, vec![(0, 5), (1, 1)]);
        let h = analysis("heisenberg3").decomposition_in_cohomology(0).unwrap();
        let two = h.per_degree.iter().find(|d| d.i == 2).unwrap();
        assert_eq!((two.dim, two.pieces.clone()), (1, vec![(0, 0), (1, 1)]));
    }

    #[test]
    fn duality_and_harmonic_lefschetz() {
        for name in ["torus4", "heisenberg3", "kodaira_thurston", "kt_contact5", "cosymplectic_t5"] {
            let a = analysis(name);
            assert!(a.delta_duality_check().unwrap().iter().all(|d| d.holds), "{name}");
            assert!(a.harmonic_lefschetz_check().unwrap().iter().all(|d| d.holds), "{name}");
            let s = a.transverse_lefschetz().unwrap().max_s;
            if s >= 0 {
                for c in a.exactness_checks(s as usize).unwrap() {
                    assert!(c.holds(), "{name}: {}", c.name);
                }
                let (n, failing) = a.exact_pieces_check(s as usize, 5, 7).unwrap();
                assert!(failing.is_empty(), "{name}: {n} samples, failing {failing:?}");
            }
        }
    }

    #[test]
    fn cup_examples() {
        let m = zoo("heisenberg3").unwrap();
        let a = Analysis::new(&m).unwrap();
        let f = |s: &str| parse_form(s, m.names()).unwrap();
        let (_, e1) = a.class_of_form(ComplexKind::DeRham, &f("e1")).unwrap();
        let (_, e2) = a.class_of_form(ComplexKind::DeRham, &f("e2")).unwrap();
        let (_, e23) = a.class_of_form(ComplexKind::DeRham, &f("e2^e3")).unwrap();
        let zero = a.cup(ComplexKind::DeRham, 1, &e1, 1, &e2).unwrap();
        assert!(zero.iter().all(Zero::is_zero));
        let top = a.cup(ComplexKind::DeRham, 1, &e1, 2, &e23).unwrap();
        assert!(top.iter().any(|c| !c.is_zero()));
        let one = vec![rat(1, 1)];
        assert_eq!(a.cup(ComplexKind::DeRham, 0, &one, 2, &e23).unwrap(), e23);
        for p in 0..=3 {
            for q in 0..=3 {
                assert!(a.cup_well_defined(ComplexKind::DeRham, p, q).unwrap());
            }
        }
    }
}
