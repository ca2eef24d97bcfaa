//! Coincidences of pairs and tuples of maps between closed oriented manifolds.

mod degree;
mod global;
mod local;
mod pl;
mod report;

pub use degree::{ray_degree, Q};
pub use report::{
    analyze_multi, analyze_pair, AlgebraicRoute, AnalysisOptions, CoincidenceReport, ComponentReport,
    LocalizedProductReport, MultiReport, PairSummary, Verdict,
};
pub use local::{codimension, local_class, local_degree, LocalClassData};
pub use pl::{
    coincidence_set, multi_coincidence_set, octahedron_points, polygon_points, suspension_points, Chart, CoincidenceComponent, CoincidencePoint,
    CoincidenceSet, ComponentKind, PLMapData, PLTarget,
};
pub use global::{
    cohomology_class, cohomology_class_in, global_class, global_class_in, lefschetz_number, multi_cohomology_class,
    multi_global_class, rational_string, DiagonalSetting, GradedClass, GraphSetting,
};

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::SimplicialMapData;
    use crate::catalog;
    use crate::duality::{Convention, DualityContext};
    use crate::error::Error;
    use degree::q;

    fn pl_pair(f: &SimplicialMapData, g: &SimplicialMapData, t: &Arc<PLTarget>) -> CoincidenceSet {
        let pf = PLMapData::from_simplicial(f, t.clone()).unwrap();
        let pg = PLMapData::from_simplicial(g, t.clone()).unwrap();
        coincidence_set(&pf, &pg, 3).unwrap()
    }

    fn lef(f: &SimplicialMapData, g: &SimplicialMapData) -> String {
        let cm = DualityContext::new(f.domain()).unwrap();
        let cn = DualityContext::new(f.codomain()).unwrap();
        rational_string(&lefschetz_number(&cm, &cn, f, g).unwrap())
    }

    fn planar(pts: &[Vec<i64>], v: usize, map: impl Fn(i64, i64) -> (i64, i64)) -> Vec<Q> {
        let (x, y) = map(pts[v][0], pts[v][1]);
        vec![q(x), q(y)]
    }

    #[test]
    fn local_degree_on_a_line() {
        let c = catalog::circle(3);
        let slope = |v: usize| vec![q(v as i64 - 1)];
        let back = |v: usize| vec![q(1 - v as i64)];
        assert_eq!(local_degree(&c, (0, 1), &slope).unwrap(), 1);
        assert_eq!(local_degree(&c, (0, 1), &back).unwrap(), -1);
    }

    #[test]
    fn local_degree_of_reflection() {
        // cone over a hexagon, apex at the origin
        let cone = catalog::suspension(&catalog::circle(6));
        let apex = 6;
        let pts = suspension_points(&polygon_points(6));
        let origin = |v: usize, f: &dyn Fn(i64, i64) -> (i64, i64)| if v == apex { vec![q(0), q(0)] } else { planar(&pts, v, f) };
        assert_eq!(local_degree(&cone, (0, apex), &|v| origin(v, &|x, y| (x, y))).unwrap(), 1);
        assert_eq!(local_degree(&cone, (0, apex), &|v| origin(v, &|x, y| (x, -y))).unwrap(), -1);
    }

    #[test]
    fn z_squared_on_hexagon_cone() {
        let cone = catalog::suspension(&catalog::circle(6));
        let apex = 6;
        let rim = polygon_points(6);
        let values = |v: usize| if v == apex { vec![q(0), q(0)] } else { planar(&rim, (2 * v) % 6, |x, y| (x, y)) };
        assert_eq!(local_degree(&cone, (0, apex), &values).unwrap(), 2);
    }

    #[test]
    fn circle_pairs_sum_to_lefschetz() {
        for (a, b) in [(1, 2), (0, 3), (2, 5)] {
            let (f, g) = catalog::circle_pair(a, b);
            let r = analyze_pair(&f, &g, &catalog::circle_target(3), &AnalysisOptions::default()).unwrap();
            assert_eq!(r.lefschetz.as_deref(), Some((b as i64 - a as i64).to_string().as_str()));
            for key in ["thm_lefcpf", "thm_thlefgen", "thm_thcoincoin"] {
                assert_eq!(r.verdicts[key], Verdict::Pass, "({a},{b}) {key}");
            }
        }
    }

    #[test]
    fn sphere_isolated_pairs() {
        for (a, b, expect) in [(2, 1, "3"), (3, 2, "5")] {
            let (f, g) = catalog::sphere_pair_isolated(a, b);
            let r = analyze_pair(&f, &g, &catalog::octahedron_target(), &AnalysisOptions { algebraic_route: false, ..Default::default() }).unwrap();
            assert_eq!(r.lefschetz.as_deref(), Some(expect));
            assert_eq!(r.verdicts["thm_lefcpf"], Verdict::Pass);
            assert!(r.components.iter().all(|c| c.kind == ComponentKind::Isolated));
        }
    }

    #[test]
    fn torus_pair_circle_at_y_zero() {
        let maps = catalog::torus_maps();
        let r = analyze_pair(&maps[0], &maps[1], &catalog::circle_target(3), &AnalysisOptions::default()).unwrap();
        assert_eq!(r.components.len(), 1);
        let c = &r.components[0];
        assert_eq!(c.kind, ComponentKind::PseudoManifold);
        assert_eq!(c.dim, 1);
        let lc = c.local_class.as_ref().unwrap();
        assert_eq!(lc.coordinates.iter().map(|x| x.abs()).collect::<Vec<_>>(), vec![1]);
        assert_eq!(c.pushforward.as_ref().map(|p| &p.coordinates), r.global_class.as_ref().map(|g| &g.coordinates));
        assert_eq!(r.verdicts["thm_lefcpf"], Verdict::NotApplicable);
        for k in ["thm_thlefgen", "thm_thcoincoin", "local_route"] {
            assert_eq!(r.verdicts[k], Verdict::Pass, "{k}");
        }
        // the support is the row j = 0 of the 6 x 6 grid
        let t = catalog::torus6();
        let set = pl_pair(&maps[0], &maps[1], &catalog::circle_target(3));
        for v in set.subcomplex.vertices(set.domain()) {
            assert_eq!(v % 6, 0, "{}", t.label(v));
        }
    }

    #[test]
    fn identity_and_antipode_are_disjoint() {
        let c6 = Arc::new(catalog::circle(6));
        let id = SimplicialMapData::identity(c6.clone());
        let anti = SimplicialMapData::new("antipode", c6.clone(), c6.clone(), (0..6).map(|v| (v + 3) % 6).collect()).unwrap();
        let set = pl_pair(&id, &anti, &catalog::circle_target(6));
        assert!(set.is_empty());
        let r = analyze_pair(&id, &anti, &catalog::circle_target(6), &AnalysisOptions::default()).unwrap();
        assert_eq!(r.lefschetz.as_deref(), Some("0"));
        assert!(r.global_class.unwrap().is_zero());
        assert!(r.components.is_empty());
    }

    #[test]
    fn equal_maps_cover_everything_and_refuse_local() {
        let c6 = Arc::new(catalog::circle(6));
        let id = SimplicialMapData::identity(c6.clone());
        let set = pl_pair(&id, &id, &catalog::circle_target(6));
        assert_eq!(set.subcomplex.count(1), 6);
        let cm = DualityContext::new(&c6).unwrap();
        let comps = set.components();
        assert_eq!(comps.len(), 1);
        let err = local_class(&set, &comps[0], &cm, None).unwrap_err();
        assert!(matches!(err, Error::Unsupported { .. }));
        assert!(err.to_string().contains("perturb"));
        assert_eq!(lef(&id, &id), "0");
    }

    #[test]
    fn lefschetz_examples() {
        let (f, g) = catalog::circle_pair(1, 2);
        assert_eq!(lef(&f, &g), "1");
        let (f, g) = catalog::sphere_pair();
        assert_eq!(lef(&f, &g), "3");
    }

    #[test]
    fn cohomology_class_of_identity_on_circle_vanishes() {
        let c = Arc::new(catalog::circle(6));
        let id = SimplicialMapData::identity(c.clone());
        let cm = DualityContext::new(&c).unwrap();
        assert!(cohomology_class(&cm, &id, &id, Convention::Primary).unwrap().is_zero());
    }

    #[test]
    fn triple_point() {
        let maps = catalog::torus_maps();
        let r = analyze_multi(&maps, &catalog::circle_target(3), &AnalysisOptions::default()).unwrap();
        assert_eq!(r.global_class.coordinates, vec![-1]);
        for (k, v) in &r.verdicts {
            assert_eq!(*v, Verdict::Pass, "{k}");
        }
    }
}
