use std::sync::Arc;

use proptest::prelude::*;

use lefschetz::algebra::{induced_map, kronecker, SimplicialMapData, Variance};
use lefschetz::catalog;
use lefschetz::coincidence::{analyze_pair, cohomology_class, global_class, lefschetz_number, AnalysisOptions, Verdict};
use lefschetz::complex::{OrientedComplex, Subcomplex};
use lefschetz::duality::{subcomplex_fundamental_cycle, thom_class, Convention, DualityContext};
use lefschetz::io::{parse_complex, to_json, ComplexFile};
use lefschetz::products::{cap, cup};

fn degree(f: &SimplicialMapData) -> i64 {
    let m = f.domain().dim();
    induced_map(f, m, Variance::Homology).unwrap()[(0, 0)].to_string().parse().unwrap()
}

fn manifold() -> impl Strategy<Value = OrientedComplex> {
    prop_oneof![
        (3usize..7).prop_map(catalog::circle),
        Just(catalog::tetrahedron()),
        Just(catalog::octahedron()),
        (3usize..5, 3usize..5).prop_map(|(a, b)| catalog::torus_grid(a, b)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn circle_lefschetz_is_difference_of_degrees(a in 0usize..4, b in 1usize..4) {
        let (f, g) = catalog::circle_pair(a, b);
        prop_assert_eq!(degree(&f), a as i64);
        prop_assert_eq!(degree(&g), b as i64);
        let ctx = DualityContext::new(f.domain()).unwrap();
        let tgt = DualityContext::new(f.codomain()).unwrap();
        let lef = lefschetz_number(&ctx, &tgt, &f, &g).unwrap();
        prop_assert_eq!(lef.to_string(), (b as i64 - a as i64).to_string());
        let swapped = lefschetz_number(&ctx, &tgt, &g, &f).unwrap();
        prop_assert_eq!(swapped, -lef);
    }

    #[test]
    fn circle_classes_swap_with_sign(a in 0usize..4, b in 1usize..4) {
        let (f, g) = catalog::circle_pair(a, b);
        let ctx = DualityContext::new(f.domain()).unwrap();
        for conv in [Convention::Primary, Convention::Primed] {
            let l = cohomology_class(&ctx, &f, &g, conv).unwrap();
            let l_swapped = cohomology_class(&ctx, &g, &f, conv).unwrap();
            prop_assert_eq!(l_swapped.coordinates, l.coordinates.iter().map(|x| -x).collect::<Vec<_>>());
            let lam = global_class(&ctx, &f, &g, conv).unwrap();
            prop_assert_eq!(ctx.poincare_with(Convention::Primed, 1, &l.coordinates).unwrap(), lam.coordinates.clone());
            if conv == Convention::Primary {
                prop_assert_eq!(lam.coordinates, vec![b as i64 - a as i64]);
            }
        }
    }

    #[test]
    fn circle_indices_sum_to_lefschetz(a in 0usize..3, b in 1usize..4) {
        prop_assume!(a != b);
        let (f, g) = catalog::circle_pair(a, b);
        let r = analyze_pair(&f, &g, &catalog::circle_target(3), &AnalysisOptions::default()).unwrap();
        prop_assert_eq!(r.verdicts["thm_lefcpf"], Verdict::Pass);
        prop_assert_eq!(r.verdicts["thm_thcoincoin"], Verdict::Pass);
        let sum: i64 = r.components.iter().flat_map(|c| c.degrees.iter()).sum();
        prop_assert_eq!(sum, b as i64 - a as i64);
    }

    #[test]
    fn cap_is_adjoint_to_cup(k in manifold(), p in 0usize..3, i in 0usize..4, j in 0usize..4) {
        let ctx = DualityContext::new(&k).unwrap();
        let m = ctx.dim();
        prop_assume!(p <= m);
        let hp = &ctx.cohomology(p).unwrap().generators;
        let hq = &ctx.cohomology(m - p).unwrap().generators;
        prop_assume!(!hp.is_empty() && !hq.is_empty());
        let (c, a) = (&hp[i % hp.len()], &hq[j % hq.len()]);
        let z = k.fundamental_cycle().unwrap();
        let lhs = kronecker(&cup(&k, p, c, m - p, a), &z).unwrap();
        let rhs = kronecker(a, &cap(&k, p, c, m, &z)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn poincare_inverse_round_trips(k in manifold(), p in 0usize..3, seed in proptest::collection::vec(-3i64..4, 4)) {
        let ctx = DualityContext::new(&k).unwrap();
        let m = ctx.dim();
        prop_assume!(p <= m);
        let n = ctx.cohomology(p).unwrap().len();
        let coords: Vec<i64> = seed.iter().cycle().take(n).copied().collect();
        for conv in [Convention::Primary, Convention::Primed] {
            let dual = ctx.poincare_with(conv, p, &coords).unwrap();
            prop_assert_eq!(ctx.poincare_inverse_with(conv, m - p, &dual).unwrap(), coords.clone());
        }
    }

    #[test]
    fn complexes_survive_json(k in manifold()) {
        let text = to_json(&ComplexFile::from_complex(&k));
        let back = parse_complex(&text).unwrap();
        prop_assert_eq!(back.dim(), k.dim());
        for p in 0..=k.dim() {
            prop_assert_eq!(back.count(p), k.count(p));
        }
        prop_assert_eq!(back.fundamental_cycle().unwrap(), k.fundamental_cycle().unwrap());
    }
}

#[test]
fn functoriality_of_induced_maps() {
    let f = catalog::circle_map(12, 2);
    let g = catalog::circle_map(6, 2);
    let gf = SimplicialMapData::new("gf", Arc::new(catalog::circle(12)), Arc::new(catalog::circle(3)), f.vertex_map().iter().map(|&v| g.vertex_map()[v]).collect()).unwrap();
    assert_eq!(degree(&gf), degree(&f) * degree(&g));
}

#[test]
fn meridian_thom_class_meets_the_longitude_once() {
    let t = catalog::torus_grid(3, 3);
    let ctx = DualityContext::new(&t).unwrap();
    let row = catalog::torus_row(&t, 3, 3, 0);
    let col = catalog::torus_column(&t, 3, 3, 0);
    let thom = thom_class(&ctx, &row, Convention::Primary).unwrap();
    let (_, z) = subcomplex_fundamental_cycle(&t, &col).unwrap();
    assert_eq!(kronecker(&thom.cocycle, &z).unwrap().abs(), 1);
    let (_, parallel) = subcomplex_fundamental_cycle(&t, &catalog::torus_row(&t, 3, 3, 1)).unwrap();
    assert_eq!(kronecker(&thom.cocycle, &parallel).unwrap(), 0);
}

#[test]
fn point_thom_class_evaluates_to_one_on_the_sphere() {
    let s = catalog::octahedron();
    let ctx = DualityContext::new(&s).unwrap();
    let thom = thom_class(&ctx, &Subcomplex::full(&s, "pt", &[0]), Convention::Primary).unwrap();
    assert_eq!(kronecker(&thom.cocycle, &s.fundamental_cycle().unwrap()).unwrap(), 1);
}
