//! Contact and K-contact computations.
//!
//! For a model with contact form `eta`, every form splits uniquely as
//! `β + η ∧ γ` with `β`, `γ` basic, and `ι_ξ` is contraction with the dual
//! of `eta`. The long exact sequence
//! `H_B^k → H^k → H_B^{k−1} → H_B^{k+1} → …` uses `i_*` (inclusion), `j_k`
//! (`ι_ξ`) and `∧[ω]`. The Gysin sequence of a Boothby–Wang extension is the
//! same sequence with the base in place of the basic complex.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::cohomology::{combine, max_level, unit, Analysis, ComplexKind, EquivalenceReport, LevelRow};
use crate::error::{Error, Result};
use crate::exterior::{operator_matrix, Form, IndexSet};
use crate::model::FoliatedModel;
use crate::ratlin::{Matrix, Rational, Subspace};
use crate::report::matrix_strings;

fn eta_of(a: &Analysis) -> Result<usize> {
    a.model()
        .eta()
        .ok_or_else(|| Error::Precondition(format!("model `{}` has no contact form eta", a.model().name())))
}

/// The three maps of the long exact sequence, with zero maps outside the
/// range of degrees.
struct Sequence<'a> {
    a: &'a Analysis,
    eta: usize,
}

impl<'a> Sequence<'a> {
    fn new(a: &'a Analysis) -> Result<Self> {
        Ok(Sequence { a, eta: eta_of(a)? })
    }

    fn top_basic(&self) -> i64 {
        2 * self.a.half_dim() as i64
    }

    fn hb(&self, k: i64) -> usize {
        if (0..=self.top_basic()).contains(&k) {
            self.a.basic_cohomology(k as usize).dim()
        } else {
            0
        }
    }

    fn h(&self, k: i64) -> usize {
        if (0..=self.top_basic() + 1).contains(&k) {
            self.a.de_rham_cohomology(k as usize).dim()
        } else {
            0
        }
    }

    /// `i_*: H_B^k → H^k`.
    fn i_map(&self, k: i64) -> Result<Matrix> {
        if !(0..=self.top_basic()).contains(&k) {
            return Ok(Matrix::zeros(self.h(k), 0));
        }
        let k = k as usize;
        let m = self.a.model().inclusion_matrix(k);
        self.a.basic_cohomology(k).induced(&m, self.a.de_rham_cohomology(k))
    }

    /// `j_k: H^k → H_B^{k−1}`.
    fn j_map(&self, k: i64) -> Result<Matrix> {
        if k < 1 || k > self.top_basic() + 1 {
            return Ok(Matrix::zeros(self.hb(k - 1), self.h(k)));
        }
        let k = k as usize;
        let model = self.a.model();
        let m = operator_matrix(
            |f| f.contract(self.eta),
            model.full_complex().basis(k),
            model.basic_complex().basis(k - 1),
        )?;
        self.a
            .de_rham_cohomology(k)
            .induced(&m, self.a.basic_cohomology(k - 1))
    }

    /// `∧[ω]: H_B^{k−1} → H_B^{k+1}`.
    fn c_map(&self, k: i64) -> Result<Matrix> {
        if k < 1 || k - 1 > self.top_basic() {
            return Ok(Matrix::zeros(self.hb(k + 1), self.hb(k - 1)));
        }
        self.a.lefschetz_power(k as usize - 1, 1)
    }

    fn stage(&self, node: String, incoming: &Matrix, outgoing: &Matrix) -> Stage {
        let image = incoming.image();
        let kernel = outgoing.kernel();
        Stage {
            node,
            dim: kernel.ambient(),
            image_dim: image.dim(),
            kernel_dim: kernel.dim(),
            exact: image == kernel,
        }
    }

    /// Nodes `H_B^k`, `H^k`, `H_B^{k−1}` in sequence order.
    fn stages_at(&self, k: i64) -> Result<[Stage; 3]> {
        let (i, j, c) = (self.i_map(k)?, self.j_map(k)?, self.c_map(k)?);
        Ok([
            self.stage(format!("H_B^{k}"), &self.c_map(k - 1)?, &i),
            self.stage(format!("H^{k}"), &i, &j),
            self.stage(format!("H_B^{}", k - 1), &j, &c),
        ])
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Stage {
    pub node: String,
    pub dim: usize,
    pub image_dim: usize,
    pub kernel_dim: usize,
    pub exact: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct NamedMap {
    pub name: String,
    pub matrix: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LongExactReport {
    pub basic_betti: Vec<usize>,
    pub de_rham_betti: Vec<usize>,
    pub stages: Vec<Stage>,
    pub maps: Vec<NamedMap>,
    pub exact: bool,
}

pub fn long_exact_sequence(a: &Analysis) -> Result<LongExactReport> {
    let seq = Sequence::new(a)?;
    let mut stages = Vec::new();
    let mut maps = Vec::new();
    for k in 0..=seq.top_basic() + 1 {
        stages.extend(seq.stages_at(k)?);
        for (name, m) in [("i", seq.i_map(k)?), ("j", seq.j_map(k)?), ("omega", seq.c_map(k)?)] {
            maps.push(NamedMap {
                name: format!("{name}_{k}"),
                matrix: matrix_strings(&m),
            });
        }
    }
    Ok(LongExactReport {
        basic_betti: a.basic_betti(),
        de_rham_betti: a.de_rham_betti(),
        exact: stages.iter().all(|s| s.exact),
        stages,
        maps,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct PairingReport {
    pub r: usize,
    pub gram: Vec<Vec<String>>,
    pub rank: usize,
    pub nondegenerate: bool,
}

/// Gram matrix of `([α], [β]) ↦ ∫ η ∧ α ∧ β` on `H_B^r × H_B^{2n−r}`. The
/// integral is the coefficient of `η ∧ t_1 ∧ … ∧ t_2n` with the transverse
/// generators in file order.
pub fn basic_poincare_pairing(a: &Analysis, r: usize) -> Result<(Matrix, PairingReport)> {
    let eta = eta_of(a)?;
    let top = 2 * a.half_dim();
    if r > top {
        return Err(Error::Degree(format!("pairing degree {r} exceeds {top}")));
    }
    let model = a.model();
    let n_gens = model.num_generators();
    let sign = model.contact_orientation_sign().expect("contact model");
    let volume = IndexSet::from_mask(if n_gens == 32 { u32::MAX } else { (1 << n_gens) - 1 });
    let e = Form::generator(n_gens, eta);
    let (p, q) = (a.basic_cohomology(r), a.basic_cohomology(top - r));
    let mut gram = Matrix::zeros(p.dim(), q.dim());
    for i in 0..p.dim() {
        let alpha = a.class_form(ComplexKind::Basic, r, &unit(p.dim(), i));
        let ea = e.wedge(&alpha)?;
        for j in 0..q.dim() {
            let beta = a.class_form(ComplexKind::Basic, top - r, &unit(q.dim(), j));
            let c = ea.wedge(&beta)?.coefficient(volume);
            gram.set(i, j, c * &sign);
        }
    }
    let rank = gram.rank();
    let report = PairingReport {
        r,
        gram: matrix_strings(&gram),
        rank,
        nondegenerate: gram.is_square() && rank == gram.rows(),
    };
    Ok((gram, report))
}

#[derive(Clone, Debug, Serialize)]
pub struct ContactLefschetzDegree {
    pub k: usize,
    pub source_dim: usize,
    pub target_dim: usize,
    pub relation_dim: usize,
    /// First projection injective on the relation.
    pub graph: bool,
    /// First projection onto `H^k`.
    pub total: bool,
    pub iso: bool,
    /// The induced map `H^k → H^{2n+1−k}` when the relation is a total graph.
    pub map: Option<Vec<Vec<String>>>,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ContactLefschetzReport {
    pub per_degree: Vec<ContactLefschetzDegree>,
    pub max_s: i64,
    pub hard_lefschetz: bool,
}

/// Closed primitive basic `k`-forms.
fn closed_primitive(a: &Analysis, k: usize) -> Result<Subspace> {
    let lambda = a.hodge().op_lambda().matrix(k).kernel();
    a.basic_cohomology(k).cocycles().intersect(&lambda)
}

/// `(i_*[β], [η ∧ L^{n−k} β])` for a closed primitive basic `β`.
fn relation_pair(a: &Analysis, eta: usize, k: usize, beta: &[Rational]) -> Result<(Vec<Rational>, Vec<Rational>)> {
    let model = a.model();
    let n = a.half_dim();
    let x = a
        .de_rham_cohomology(k)
        .class_of(&model.inclusion_matrix(k).mul_vec(beta))
        .ok_or_else(|| Error::Inconsistency(format!("closed basic {k}-form is not closed")))?;
    let form = model.basic_complex().form(k, beta);
    let image = Form::generator(model.num_generators(), eta)
        .wedge(&model.omega().pow(n - k))?
        .wedge(&form)?;
    let t = 2 * n + 1 - k;
    let coords = image.coords(model.full_complex().basis(t))?;
    let y = a
        .de_rham_cohomology(t)
        .class_of(&coords)
        .ok_or_else(|| Error::Inconsistency(format!("η ∧ L^{} β is not closed", n - k)))?;
    Ok((x, y))
}

fn block(sub: &Subspace, lo: usize, hi: usize) -> Result<Subspace> {
    let vs: Vec<Vec<Rational>> = (lo..hi).map(|i| unit(sub.ambient(), i)).collect();
    sub.intersect(&Subspace::span(sub.ambient(), &vs))
}

pub fn contact_lefschetz(a: &Analysis) -> Result<ContactLefschetzReport> {
    let eta = eta_of(a)?;
    let n = a.half_dim();
    let mut per_degree = Vec::new();
    for k in 0..=n {
        let t = 2 * n + 1 - k;
        let (hk, ht) = (a.de_rham_cohomology(k).dim(), a.de_rham_cohomology(t).dim());
        let mut pairs = Vec::new();
        for beta in closed_primitive(a, k)?.basis() {
            let (mut x, y) = relation_pair(a, eta, k, &beta)?;
            x.extend(y);
            pairs.push(x);
        }
        let rel = Subspace::span(hk + ht, &pairs);
        let over_zero = block(&rel, hk, hk + ht)?;
        let to_zero = block(&rel, 0, hk)?;
        let graph = over_zero.is_zero();
        let total = rel.dim() - over_zero.dim() == hk;
        let onto = rel.dim() - to_zero.dim() == ht;
        let iso = graph && total && to_zero.is_zero() && onto;
        let render = |deg: usize, c: &[Rational]| a.render_class(ComplexKind::DeRham, deg, c);
        let first = |v: &[Rational]| v[..hk].to_vec();
        let second = |v: &[Rational]| v[hk..].to_vec();
        let map = (graph && total).then(|| {
            let basis = rel.basis();
            let xs = Matrix::from_columns(hk, &basis.iter().map(|v| first(v)).collect::<Vec<_>>());
            let ys = Matrix::from_columns(ht, &basis.iter().map(|v| second(v)).collect::<Vec<_>>());
            let inv = xs.inverse().expect("first projection is bijective");
            matrix_strings(&(&ys * &inv))
        });
        let witness = if !graph {
            let v = over_zero.basis().remove(0);
            Some(format!("0 ↦ {}", render(t, &second(&v))))
        } else if !total {
            let firsts = Subspace::span(hk, &rel.basis().iter().map(|v| first(v)).collect::<Vec<_>>());
            let e = (0..hk).map(|i| unit(hk, i)).find(|e| !firsts.contains_vector(e)).expect("proper image");
            Some(format!("{} has no closed primitive basic representative", render(k, &e)))
        } else if !to_zero.is_zero() {
            let v = to_zero.basis().remove(0);
            Some(format!("{} ↦ 0", render(k, &first(&v))))
        } else if !onto {
            let seconds = Subspace::span(ht, &rel.basis().iter().map(|v| second(v)).collect::<Vec<_>>());
            let e = (0..ht).map(|i| unit(ht, i)).find(|e| !seconds.contains_vector(e)).expect("proper image");
            Some(format!("{} not in the image", render(t, &e)))
        } else {
            None
        };
        per_degree.push(ContactLefschetzDegree {
            k,
            source_dim: hk,
            target_dim: ht,
            relation_dim: rel.dim(),
            graph,
            total,
            iso,
            map,
            witness,
        });
    }
    Ok(ContactLefschetzReport {
        max_s: max_level(n, |s| per_degree[..=s].iter().all(|d| d.iso)),
        hard_lefschetz: per_degree.iter().all(|d| d.iso),
        per_degree,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct LefMapResult {
    pub k: usize,
    pub image: Vec<String>,
    pub rendered: String,
    /// The transverse Lefschetz level admits `k`, so the relation is a map.
    pub is_map: bool,
    /// Every closed primitive basic representative gave the same class.
    pub well_defined: bool,
    pub representatives_compared: usize,
}

/// `Lef_k[γ] = [η ∧ L^{n−k} α]` for a closed primitive basic `α` with
/// `i_*[α]_B = [γ]`. When several `α` exist, each is evaluated and compared.
pub fn lef_map(a: &Analysis, k: usize, class: &[Rational]) -> Result<(Vec<Rational>, LefMapResult)> {
    let eta = eta_of(a)?;
    let n = a.half_dim();
    if k > n {
        return Err(Error::Degree(format!("Lef_k needs k ≤ n = {n}, got {k}")));
    }
    let hk = a.de_rham_cohomology(k).dim();
    if class.len() != hk {
        return Err(Error::Dimension(format!("class has {} coordinates, H^{k} has dimension {hk}", class.len())));
    }
    let prims = closed_primitive(a, k)?.basis();
    let pairs = prims
        .iter()
        .map(|b| relation_pair(a, eta, k, b))
        .collect::<Result<Vec<_>>>()?;
    let xs = Matrix::from_columns(hk, &pairs.iter().map(|p| p.0.clone()).collect::<Vec<_>>());
    let sol = xs.solve(class);
    let particular = sol.particular().ok_or_else(|| {
        Error::Inconsistency(format!("class in H^{k} has no closed primitive basic representative"))
    })?;
    let t = 2 * n + 1 - k;
    let ht = a.de_rham_cohomology(t).dim();
    let ys: Vec<Vec<Rational>> = pairs.iter().map(|p| p.1.clone()).collect();
    let image = combine(&ys, particular, ht);
    let others = xs.kernel().basis();
    let mut well_defined = true;
    for z in &others {
        let c: Vec<Rational> = particular.iter().zip(z).map(|(p, z)| p + z).collect();
        if combine(&ys, &c, ht) != image {
            well_defined = false;
        }
    }
    let s = a.transverse_lefschetz()?.max_s;
    let result = LefMapResult {
        k,
        image: image.iter().map(ToString::to_string).collect(),
        rendered: a.render_class(ComplexKind::DeRham, t, &image),
        is_map: s >= 0 && k as i64 <= s + 1,
        well_defined,
        representatives_compared: others.len() + 1,
    };
    Ok((image, result))
}

/// The transverse and contact Lefschetz levels agree.
pub fn contact_transverse_equivalence(a: &Analysis) -> Result<EquivalenceReport> {
    let n = a.half_dim();
    let levels = [a.transverse_lefschetz()?.max_s, contact_lefschetz(a)?.max_s];
    Ok(EquivalenceReport {
        columns: vec!["transverse_lefschetz".into(), "contact_lefschetz".into()],
        per_s: (0..n)
            .map(|s| LevelRow {
                s,
                verdicts: levels.iter().map(|&m| s as i64 <= m).collect(),
            })
            .collect(),
        consistent: levels[0] == levels[1],
        max_s: levels.to_vec(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CupLengthReport {
    pub cup_length: usize,
    pub witness: Vec<String>,
}

/// Largest number of positive-degree de Rham classes with nonzero product.
///
/// Level `p` keeps, per degree, a basis of the span of all `p`-fold products
/// of basis classes, each with the product that produced it.
pub fn cup_length(a: &Analysis) -> Result<CupLengthReport> {
    let kind = ComplexKind::DeRham;
    let top = a.model().num_generators();
    let basis: Vec<(usize, Vec<Rational>)> = (1..=top)
        .flat_map(|k| {
            let dim = a.de_rham_cohomology(k).dim();
            (0..dim).map(move |i| (k, unit(dim, i)))
        })
        .collect();
    type Entry = (Vec<Rational>, Vec<usize>);
    let mut level: Vec<Vec<Entry>> = vec![Vec::new(); top + 1];
    for (i, (k, v)) in basis.iter().enumerate() {
        level[*k].push((v.clone(), vec![i]));
    }
    let mut length = 0;
    let mut witness: Vec<usize> = Vec::new();
    while level.iter().any(|l| !l.is_empty()) {
        length += 1;
        witness = level.iter().flatten().next().expect("nonempty").1.clone();
        let mut next: Vec<Vec<Entry>> = vec![Vec::new(); top + 1];
        for (d, entries) in level.iter().enumerate() {
            for (v, word) in entries {
                for (i, (q, b)) in basis.iter().enumerate() {
                    if d + q > top {
                        continue;
                    }
                    let p = a.cup(kind, d, v, *q, b)?;
                    let span = Subspace::span(p.len(), &next[d + q].iter().map(|e| e.0.clone()).collect::<Vec<_>>());
                    if !span.contains_vector(&p) {
                        let mut w = word.clone();
                        w.push(i);
                        next[d + q].push((p, w));
                    }
                }
            }
        }
        level = next;
    }
    Ok(CupLengthReport {
        cup_length: length,
        witness: witness
            .iter()
            .map(|&i| a.render_class(kind, basis[i].0, &basis[i].1))
            .collect(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ProductBoundReport {
    pub s: i64,
    pub precondition: bool,
    pub products_checked: usize,
    /// Partial products below the bound that already vanish; every
    /// extension of them vanishes too.
    pub vanishing_prefixes: usize,
    pub nonzero: Vec<String>,
    pub holds: bool,
}

/// Products of basis classes with degrees in `1..=s+1` and total degree at
/// least `2n − s` vanish. Products above the top degree vanish for degree
/// reasons and are not enumerated.
pub fn product_vanishing_check(a: &Analysis, s: i64) -> Result<ProductBoundReport> {
    eta_of(a)?;
    let n = a.half_dim() as i64;
    let level = contact_lefschetz(a)?.max_s;
    if s < 0 || s >= n || s > level {
        return Ok(ProductBoundReport {
            s,
            precondition: false,
            products_checked: 0,
            vanishing_prefixes: 0,
            nonzero: Vec::new(),
            holds: false,
        });
    }
    let top = a.model().num_generators();
    let basis: Vec<(usize, Vec<Rational>)> = (1..=(s as usize + 1).min(top))
        .flat_map(|k| {
            let dim = a.de_rham_cohomology(k).dim();
            (0..dim).map(move |i| (k, unit(dim, i)))
        })
        .collect();
    let bound = (2 * n - s) as usize;
    let mut report = ProductBoundReport {
        s,
        precondition: true,
        products_checked: 0,
        vanishing_prefixes: 0,
        nonzero: Vec::new(),
        holds: true,
    };
    // multisets of basis classes in index order; a zero partial product
    // kills every extension, and the first product reaching the bound
    // decides all of its extensions
    let mut stack: Vec<(usize, usize, Vec<Rational>, Vec<usize>)> = vec![(0, 0, unit_class(), Vec::new())];
    while let Some((start, d, v, word)) = stack.pop() {
        if d >= bound {
            report.products_checked += 1;
            if v.iter().any(|c| !c.is_zero()) {
                let names: Vec<String> = word
                    .iter()
                    .map(|&i| a.render_class(ComplexKind::DeRham, basis[i].0, &basis[i].1))
                    .collect();
                report.nonzero.push(names.join(" ∪ "));
            }
            continue;
        }
        if v.iter().all(Zero::is_zero) {
            report.vanishing_prefixes += 1;
            continue;
        }
        for (i, (q, b)) in basis.iter().enumerate().skip(start).rev() {
            if d + q > top {
                continue;
            }
            let mut w = word.clone();
            w.push(i);
            stack.push((i, d + q, a.cup(ComplexKind::DeRham, d, &v, *q, b)?, w));
        }
    }
    report.holds = report.nonzero.is_empty();
    Ok(report)
}

#[derive(Clone, Debug, Serialize)]
pub struct GysinReport {
    pub base: String,
    pub total: String,
    pub s: usize,
    pub base_betti: Vec<usize>,
    pub total_betti: Vec<usize>,
    pub stages: Vec<Stage>,
    pub exact: bool,
    /// `∧[ω]` injective on `H^{s−1}` and `H^s` of the base.
    pub injective: [bool; 2],
    pub predicted: Option<i64>,
    pub actual: usize,
    pub formula_holds: Option<bool>,
}

fn fresh_name(m: &FoliatedModel) -> String {
    let mut name = "eta".to_string();
    while m.names().contains(&name) {
        name.push('_');
    }
    name
}

/// Gysin stages around degree `s + 1` for the Boothby–Wang extension of a
/// purely symplectic base, and `b_{s+1}(total) = b_{s+1}(base) − b_{s−1}(base)`
/// when `∧[ω]` is injective on `H^{s−1}` and `H^s` of the base.
pub fn gysin_bookkeeping(base: &FoliatedModel, s: usize) -> Result<(Analysis, GysinReport)> {
    let total = base.boothby_wang_extend(&fresh_name(base))?;
    let a = Analysis::new(&total)?;
    let seq = Sequence::new(&a)?;
    let k = s as i64 + 1;
    let stages: Vec<Stage> = seq.stages_at(k)?.into();
    let injective = [seq.c_map(k - 1)?.kernel().is_zero(), seq.c_map(k)?.kernel().is_zero()];
    let applies = injective[0] && injective[1];
    let predicted = applies.then(|| seq.hb(k) as i64 - seq.hb(k - 2) as i64);
    let actual = seq.h(k);
    let report = GysinReport {
        base: base.name().to_string(),
        total: total.name().to_string(),
        s,
        base_betti: a.basic_betti(),
        total_betti: a.de_rham_betti(),
        exact: stages.iter().all(|st| st.exact),
        stages,
        injective,
        formula_holds: predicted.map(|p| p == actual as i64),
        predicted,
        actual,
    };
    Ok((a, report))
}

#[derive(Clone, Debug, Serialize)]
pub struct SasakianObstruction {
    /// Odd `p ≤ n` with `b_p` odd.
    pub odd_betti_degrees: Vec<usize>,
    pub obstructed: bool,
}

/// The odd-Betti test: a Sasakian manifold of dimension `2n + 1` has even
/// `b_p` for odd `p ≤ n`.
pub fn sasakian_obstruction(a: &Analysis) -> Result<SasakianObstruction> {
    eta_of(a)?;
    let betti = a.de_rham_betti();
    let odd: Vec<usize> = (1..=a.half_dim())
        .step_by(2)
        .filter(|&p| betti[p] % 2 == 1)
        .collect();
    Ok(SasakianObstruction {
        obstructed: !odd.is_empty(),
        odd_betti_degrees: odd,
    })
}

/// Unit class `[1]`.
pub fn unit_class() -> Vec<Rational> {
    vec![Rational::one()]
}
