use foliahodge::cohomology::Analysis;
use foliahodge::contact::long_exact_sequence;
use foliahodge::exterior::Form;
use foliahodge::hodge::Hodge;
use foliahodge::model::{load_model, zoo, FoliatedModel};
use foliahodge::ratlin::{rat, Matrix, Rational, Subspace};
use proptest::prelude::*;

fn small() -> impl Strategy<Value = i64> {
    -3i64..=3
}

fn rationals(len: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec((small(), 1i64..=3), len).prop_map(|v| v.into_iter().map(|(p, q)| rat(p, q)).collect())
}

/// Torus of dimension 4 with `ω = Σ c_ij e_i ∧ e_j`, or `None` when `ω`
/// is degenerate.
fn torus4_with(c: &[i64; 6]) -> Option<FoliatedModel> {
    let pf = c[0] * c[5] - c[1] * c[4] + c[2] * c[3];
    if pf == 0 {
        return None;
    }
    let pairs = ["e1^e2", "e1^e3", "e1^e4", "e2^e3", "e2^e4", "e3^e4"];
    let omega: Vec<String> = c
        .iter()
        .zip(pairs)
        .filter(|(x, _)| **x != 0)
        .map(|(x, p)| format!("{x} {p}"))
        .collect();
    let text = format!("generators: e1 e2 e3 e4\nomega: {}\n", omega.join(" + "));
    Some(load_model(&text).unwrap())
}

fn kt() -> Hodge {
    Hodge::new(&zoo("kodaira_thurston").unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn star_is_an_involution(k in 0usize..=4, v in rationals(6)) {
        let h = kt();
        let a = h.form(k, &v[..h.dims()[k]]);
        prop_assert_eq!(h.star(&h.star(&a).unwrap()).unwrap(), a);
    }

    #[test]
    fn sl2_bracket_on_forms(k in 0usize..=4, v in rationals(6)) {
        let h = kt();
        let a = h.form(k, &v[..h.dims()[k]]);
        let lam_l = h.apply_lambda(&h.apply_l(&a).unwrap()).unwrap();
        let l_lam = h.apply_l(&h.apply_lambda(&a).unwrap()).unwrap();
        let weight = rat(2 - k as i64, 1);
        let mut diff = lam_l;
        for (s, c) in l_lam.terms() {
            diff.add_term(*s, -c.clone());
        }
        prop_assert_eq!(diff, a.scale(&weight));
    }

    #[test]
    fn decomposition_reassembles(k in 0usize..=4, v in rationals(6)) {
        let h = kt();
        let a = h.form(k, &v[..h.dims()[k]]);
        let mut sum = Form::zero(a.ambient());
        for (r, beta) in h.lefschetz_decompose(&a).unwrap() {
            prop_assert!(h.is_primitive(&beta).unwrap());
            let mut piece = beta;
            for i in 1..=r {
                piece = h.apply_l(&piece).unwrap().scale(&rat(1, i as i64));
            }
            for (s, c) in piece.terms() {
                sum.add_term(*s, c.clone());
            }
        }
        prop_assert_eq!(sum, a);
    }

    #[test]
    fn dimension_formula(a in prop::collection::vec(small(), 12), b in prop::collection::vec(small(), 8)) {
        let rows = |v: &[i64], n: usize| -> Vec<Vec<Rational>> {
            v.chunks(n).map(|c| c.iter().map(|&x| rat(x, 1)).collect()).collect()
        };
        let u = Subspace::span(4, &rows(&a, 4));
        let w = Subspace::span(4, &rows(&b, 4));
        let sum = u.sum(&w).unwrap();
        let cap = u.intersect(&w).unwrap();
        prop_assert_eq!(sum.dim() + cap.dim(), u.dim() + w.dim());
        prop_assert!(sum.contains(&u).unwrap() && u.contains(&cap).unwrap());
    }

    #[test]
    fn rank_nullity(v in prop::collection::vec(small(), 15)) {
        let rows: Vec<&[i64]> = v.chunks(5).collect();
        let m = Matrix::from_i64(&rows);
        prop_assert_eq!(m.rank() + m.kernel().dim(), 5);
        prop_assert_eq!(m.image().dim(), m.rank());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn constant_forms_on_the_torus(c in prop::array::uniform6(small())) {
        let Some(m) = torus4_with(&c) else {
            return Err(TestCaseError::reject("degenerate ω"));
        };
        let a = Analysis::new(&m).unwrap();
        prop_assert!(a.hodge().identity_checks().iter().all(|i| !i.required || i.holds()));
        let lef = a.transverse_lefschetz().unwrap();
        prop_assert!(lef.hard_lefschetz);
        let eq = a.lefschetz_dd_equivalence().unwrap();
        prop_assert!(eq.consistent);
        prop_assert_eq!(eq.max_s.clone(), vec![1, 1, 1]);
    }

    #[test]
    fn circle_bundles_over_the_torus(c in prop::array::uniform6(small())) {
        let Some(m) = torus4_with(&c) else {
            return Err(TestCaseError::reject("degenerate ω"));
        };
        let a = Analysis::new(&m.boothby_wang_extend("e5").unwrap()).unwrap();
        let les = long_exact_sequence(&a).unwrap();
        prop_assert!(les.exact);
        prop_assert_eq!(a.de_rham_betti(), vec![1, 4, 5, 5, 4, 1]);
    }
}
