//! One line per acceptance criterion. All arithmetic is exact, so the only
//! tolerances are the wall-clock limits pinned below.

use std::sync::Arc;
use std::time::{Duration, Instant};

use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::{Config, TestRunner};

use lefschetz::algebra::{induced_map, kronecker, SimplicialMapData, Variance};
use lefschetz::catalog;
use lefschetz::coincidence::{
    analyze_multi, analyze_pair, cohomology_class, coincidence_set, global_class, lefschetz_number, local_class,
    rational_string, AnalysisOptions, ComponentKind, PLMapData, Verdict,
};
use lefschetz::complex::{OrientedComplex, Subcomplex};
use lefschetz::duality::{pentahedron_check, thom_class, Convention, DualityContext};
use lefschetz::products::{cup, intersect, intersect_with_map, intersect_with_map_localized, residue_decompose, LocalizedClass};
use lefschetz::Error;

const HOMOLOGY_LIMIT: Duration = Duration::from_secs(1);
const DUALITY_LIMIT: Duration = Duration::from_secs(10);
const POINT_FORMULA_LIMIT: Duration = Duration::from_secs(5);
const MULTI_LIMIT: Duration = Duration::from_secs(30);
const ANTICOMM_CASES: u32 = 24;

type Outcome = Result<String, String>;
type Criterion = fn() -> Outcome;
type Groups = Vec<(usize, Vec<i64>)>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e(err: Error) -> String {
    err.to_string()
}

fn groups(k: &OrientedComplex) -> Groups {
    (0..=k.dim())
        .map(|p| {
            let g = lefschetz::algebra::homology(k, p, &lefschetz::algebra::Support::Absolute).unwrap();
            (g.free_rank, g.torsion.clone())
        })
        .collect()
}

fn criterion_1() -> Outcome {
    let cases: Vec<(&str, OrientedComplex, Groups)> = vec![
        ("S1", catalog::circle(3), vec![(1, vec![]), (1, vec![])]),
        ("S2", catalog::octahedron(), vec![(1, vec![]), (0, vec![]), (1, vec![])]),
        ("T2", catalog::torus_grid(3, 3), vec![(1, vec![]), (2, vec![]), (1, vec![])]),
        ("RP2", catalog::rp2(), vec![(1, vec![]), (0, vec![2]), (0, vec![])]),
    ];
    let mut worst = Duration::ZERO;
    for (name, k, expected) in cases {
        if name == "T2" {
            ensure(k.count(2) == 18, || "torus grid should have 18 triangles".into())?;
        }
        let t = Instant::now();
        let got = groups(&k);
        let dt = t.elapsed();
        worst = worst.max(dt);
        ensure(got == expected, || format!("{name}: {got:?}"))?;
        ensure(dt < HOMOLOGY_LIMIT, || format!("{name} took {dt:?}"))?;
    }
    Ok(format!("S1, S2, T2, RP2; slowest {worst:?} < {HOMOLOGY_LIMIT:?}"))
}

fn criterion_2() -> Outcome {
    let t = Instant::now();
    let mut pairs = 0;
    for k in catalog::test_manifolds() {
        let ctx = DualityContext::new(&k).map_err(e)?;
        let m = ctx.dim();
        let z = k.fundamental_cycle().map_err(e)?;
        for p in 0..=m {
            ensure(ctx.poincare_matrix(p).map_err(e)?.is_unimodular(), || format!("{} P in degree {p}", k.name()))?;
            for c in &ctx.cohomology(p).map_err(e)?.generators {
                let pc = ctx.poincare_chain(p, c);
                for a in &ctx.cohomology(m - p).map_err(e)?.generators {
                    let lhs = kronecker(&cup(&k, p, c, m - p, a), &z).map_err(e)?;
                    let rhs = kronecker(a, &pc).map_err(e)?;
                    ensure(lhs == rhs, || format!("{} pairing in degree {p}: {lhs} vs {rhs}", k.name()))?;
                    pairs += 1;
                }
            }
        }
    }
    let s2 = catalog::octahedron();
    let t2 = catalog::torus_grid(3, 3);
    for (k, x) in [(&s2, Subcomplex::full(&s2, "pt", &[0])), (&t2, catalog::torus_row(&t2, 3, 3, 0))] {
        let r = pentahedron_check(&DualityContext::new(k).map_err(e)?, &x).map_err(e)?;
        ensure(r.commutes && r.thom_consistent && r.thom_isomorphism == Some(true), || r.failures.join("; "))?;
    }
    let dt = t.elapsed();
    ensure(dt < DUALITY_LIMIT, || format!("took {dt:?}"))?;
    Ok(format!("unimodular on S1, S2, T2, S1xS2; {pairs} pairing checks; pentahedra commute; {dt:?} < {DUALITY_LIMIT:?}"))
}

fn criterion_3() -> Outcome {
    let manifolds: Vec<DualityContext> = catalog::test_manifolds().iter().map(|k| DualityContext::new(k).unwrap()).collect();
    let mut runner = TestRunner::new_with_rng(Config::with_cases(ANTICOMM_CASES), proptest::test_runner::TestRng::deterministic_rng(proptest::test_runner::RngAlgorithm::ChaCha));
    let strategy = (0..manifolds.len(), 0usize..8, 0usize..8, 0usize..8, 0usize..8);
    let mut tested = 0;
    let mut attempts = 0;
    while tested < ANTICOMM_CASES && attempts < 10_000 {
        attempts += 1;
        let (mi, r0, s0, i0, j0) = strategy.new_tree(&mut runner).unwrap().current();
        let ctx = &manifolds[mi];
        let m = ctx.dim();
        let r = r0 % (m + 1);
        let s = m - (s0 % (r + 1));
        let (hr, hs) = (ctx.homology(r).unwrap().len(), ctx.homology(s).unwrap().len());
        if hr == 0 || hs == 0 {
            continue;
        }
        let mut a = vec![0; hr];
        a[i0 % hr] = 1;
        let mut b = vec![0; hs];
        b[j0 % hs] = 1;
        let ab = intersect(ctx, Convention::Primary, r, &a, s, &b).map_err(e)?;
        let ba = intersect(ctx, Convention::Primary, s, &b, r, &a).map_err(e)?;
        let sign = if ((m - r) * (m - s)).is_multiple_of(2) { 1 } else { -1 };
        ensure(ba == ab.iter().map(|x| sign * x).collect::<Vec<_>>(), || format!("{} r={r} s={s}", ctx.complex().name()))?;
        tested += 1;
    }
    ensure(tested >= 20, || format!("only {tested} generator pairs"))?;

    let mut pairs: Vec<(SimplicialMapData, SimplicialMapData)> = [(1, 2), (0, 3), (2, 5)].iter().map(|&(a, b)| catalog::circle_pair(a, b)).collect();
    pairs.push(catalog::sphere_pair());
    pairs.extend([(2, 1), (3, 2)].iter().map(|&(a, b)| catalog::sphere_pair_isolated(a, b)));
    for (f, g) in &pairs {
        let cm = DualityContext::new(f.domain()).map_err(e)?;
        let cn = DualityContext::new(f.codomain()).map_err(e)?;
        let fg = lefschetz_number(&cm, &cn, f, g).map_err(e)?;
        let gf = lefschetz_number(&cm, &cn, g, f).map_err(e)?;
        let expected = if cm.dim() % 2 == 0 { fg.clone() } else { -fg.clone() };
        ensure(gf == expected, || format!("{}/{}: {} vs {}", f.name(), g.name(), rational_string(&fg), rational_string(&gf)))?;
    }

    let s2 = catalog::octahedron();
    let t2 = catalog::torus_grid(3, 3);
    for (k, x) in [(&s2, Subcomplex::full(&s2, "pt", &[0])), (&t2, catalog::torus_row(&t2, 3, 3, 0)), (&t2, Subcomplex::full(&t2, "pt", &[0]))] {
        let ctx = DualityContext::new(k).map_err(e)?;
        let psi = thom_class(&ctx, &x, Convention::Primary).map_err(e)?;
        let primed = thom_class(&ctx, &x, Convention::Primed).map_err(e)?;
        let (d, m) = (psi.d, ctx.dim());
        let sign = if (d * (m - d)) % 2 == 0 { 1 } else { -1 };
        ensure(primed.cocycle == psi.cocycle.iter().map(|c| sign * c).collect::<Vec<_>>(), || format!("Thom sign on {}", x.name()))?;
    }
    Ok(format!("{tested} random generator pairs; swap law on {} pairs; primed Thom classes on 3 subcomplexes", pairs.len()))
}

fn degree(f: &SimplicialMapData) -> i64 {
    let m = f.domain().dim();
    induced_map(f, m, Variance::Homology).unwrap()[(0, 0)].to_string().parse().unwrap()
}

fn index_sum(f: &SimplicialMapData, g: &SimplicialMapData, target: &Arc<lefschetz::coincidence::PLTarget>) -> Result<(String, i64, usize), String> {
    let r = analyze_pair(f, g, target, &AnalysisOptions { algebraic_route: false, ..Default::default() }).map_err(e)?;
    ensure(r.verdicts["thm_lefcpf"] == Verdict::Pass, || format!("{}/{} verdict {:?}", f.name(), g.name(), r.verdicts))?;
    let sum = r.components.iter().map(|c| c.degrees.iter().sum::<i64>()).sum();
    Ok((r.lefschetz.unwrap(), sum, r.components.len()))
}

fn criterion_4() -> Outcome {
    let mut worst = Duration::ZERO;
    let c3 = catalog::circle_target(3);
    for (a, b) in [(1i64, 2i64), (0, 3), (2, 5)] {
        let t = Instant::now();
        let (f, g) = catalog::circle_pair(a as usize, b as usize);
        // oracle: Lef = deg g - deg f on the circle, degrees read off H_1
        let expected = degree(&g) - degree(&f);
        ensure(expected == b - a, || format!("degrees of circle pair ({a},{b})"))?;
        let (lef, sum, _) = index_sum(&f, &g, &c3)?;
        ensure(lef == expected.to_string() && sum == expected, || format!("circle ({a},{b}): Lef {lef}, indices {sum}"))?;
        let dt = t.elapsed();
        worst = worst.max(dt);
        ensure(dt < POINT_FORMULA_LIMIT, || format!("circle ({a},{b}) took {dt:?}"))?;
    }
    let oct = catalog::octahedron_target();
    for (a, b) in [(2i64, 1i64), (3, 2)] {
        let t = Instant::now();
        let (f, g) = catalog::sphere_pair_isolated(a as usize, b as usize);
        let expected = degree(&f) + degree(&g);
        ensure(expected == a + b, || format!("degrees of sphere pair ({a},{b})"))?;
        let (lef, sum, n) = index_sum(&f, &g, &oct)?;
        ensure(lef == expected.to_string() && sum == expected, || format!("sphere ({a},{b}): Lef {lef}, indices {sum}"))?;
        ensure(n as i64 == expected, || format!("sphere ({a},{b}) has {n} points"))?;
        let dt = t.elapsed();
        worst = worst.max(dt);
        ensure(dt < POINT_FORMULA_LIMIT, || format!("sphere ({a},{b}) took {dt:?}"))?;
    }
    Ok(format!("circles (1,2) (0,3) (2,5), spheres (2,1) (3,2); slowest {worst:?} < {POINT_FORMULA_LIMIT:?}"))
}

fn criterion_5() -> Outcome {
    let mut pairs: Vec<(SimplicialMapData, SimplicialMapData)> = [(1, 2), (0, 3), (2, 5)].iter().map(|&(a, b)| catalog::circle_pair(a, b)).collect();
    pairs.push(catalog::sphere_pair());
    let maps = catalog::torus_maps();
    pairs.push((maps[0].clone(), maps[1].clone()));
    for (f, g) in &pairs {
        let ctx = DualityContext::new(f.domain()).map_err(e)?;
        let l = cohomology_class(&ctx, f, g, Convention::Primary).map_err(e)?;
        let lam = global_class(&ctx, f, g, Convention::Primary).map_err(e)?;
        let pl = ctx.poincare_with(Convention::Primed, l.degree, &l.coordinates).map_err(e)?;
        ensure(pl == lam.coordinates, || format!("{}/{}: P'L = {pl:?}, Λ = {:?}", f.name(), g.name(), lam.coordinates))?;
    }
    Ok(format!("{} pairs", pairs.len()))
}

fn criterion_6() -> Outcome {
    let maps = catalog::torus_maps();
    let r = analyze_pair(&maps[0], &maps[1], &catalog::circle_target(3), &AnalysisOptions::default()).map_err(e)?;
    ensure(r.components.len() == 1, || format!("{} components", r.components.len()))?;
    let c = &r.components[0];
    ensure(c.kind == ComponentKind::PseudoManifold && c.dim == 1, || format!("{:?} of dim {}", c.kind, c.dim))?;
    let local = c.local_class.as_ref().ok_or("no local class")?;
    ensure(local.coordinates.len() == 1 && local.coordinates[0].abs() == 1, || format!("local class {:?}", local.coordinates))?;
    let pushed = &c.pushforward.as_ref().ok_or("no pushforward")?.coordinates;
    let lam = &r.global_class.as_ref().ok_or("no global class")?.coordinates;
    ensure(pushed == lam, || format!("pushforward {pushed:?} vs Λ {lam:?}"))?;
    Ok(format!("one circle, local class {:?}, pushforward {pushed:?} = Λ", local.coordinates))
}

fn criterion_7() -> Outcome {
    let pr = catalog::torus_projection();
    let (t, c) = (pr.domain(), pr.codomain());
    let (ctx_t, ctx_c) = (DualityContext::new(t).map_err(e)?, DualityContext::new(c).map_err(e)?);
    let mut z = vec![0; c.count(0)];
    z[0] = 1;
    z[3] = 1;
    let cycle = LocalizedClass::from_chain(c, Subcomplex::full(c, "two points", &[0, 3]), 0, z.clone()).map_err(e)?;
    let local = intersect_with_map_localized(&ctx_t, &ctx_c, &pr, Convention::Primary, &cycle).map_err(e)?;
    let parts = residue_decompose(&ctx_t, &local).map_err(e)?;
    ensure(parts.len() == 2, || format!("{} residues", parts.len()))?;
    let fiber = |i: usize| -> Vec<i64> {
        // oracle: the fundamental class of the fiber column i, computed directly
        let col = Subcomplex::full(t, "fiber", &(0..6).map(|j| 6 * i + j).collect::<Vec<_>>());
        let (d, zc) = lefschetz::duality::subcomplex_fundamental_cycle(t, &col).unwrap();
        ctx_t.homology(d).unwrap().coordinates(&zc).unwrap()
    };
    for p in &parts {
        let f0 = fiber(0);
        ensure(p.global == f0 || p.global == f0.iter().map(|x| -x).collect::<Vec<_>>(), || format!("residue {:?} is not ±[fiber]", p.global))?;
    }
    let global = intersect_with_map(&ctx_t, &ctx_c, &pr, Convention::Primary, 0, &ctx_c.homology(0).map_err(e)?.coordinates(&z).map_err(e)?).map_err(e)?;
    let sum: Vec<i64> = (0..global.len()).map(|i| parts.iter().map(|p| p.global[i]).sum()).collect();
    ensure(sum == global, || format!("residues sum to {sum:?}, M·_F[C] = {global:?}"))?;
    let twice: Vec<i64> = fiber(3).iter().map(|x| 2 * x).collect();
    ensure(global == twice || global == twice.iter().map(|x| -x).collect::<Vec<_>>(), || format!("{global:?} is not 2[fiber]"))?;
    Ok(format!("two fibers summing to {sum:?} = M·_F[C]"))
}

fn criterion_8() -> Outcome {
    let t = Instant::now();
    let maps = catalog::torus_maps();
    let r = analyze_multi(&maps, &catalog::circle_target(3), &AnalysisOptions::default()).map_err(e)?;
    let points: Vec<_> = r.components.iter().filter(|c| c.kind == ComponentKind::Isolated).collect();
    ensure(points.len() == 1 && r.components.len() == 1, || format!("{} common components", r.components.len()))?;
    let joint = points[0].degrees.iter().product::<i64>();
    let ctx = DualityContext::new(maps[0].domain()).map_err(e)?;
    let l = lefschetz::coincidence::multi_cohomology_class(&ctx, &maps, Convention::Primary).map_err(e)?;
    let lam = lefschetz::coincidence::multi_global_class(&ctx, &maps, Convention::Primary).map_err(e)?;
    let pl = ctx.poincare_with(Convention::Primed, l.degree, &l.coordinates).map_err(e)?;
    ensure(pl == lam.coordinates, || format!("P'L = {pl:?}, Λ = {:?}", lam.coordinates))?;
    ensure(vec![joint] == lam.coordinates, || format!("triple point class {joint} vs Λ {:?}", lam.coordinates))?;
    let product = r.localized_product.as_ref().ok_or("no localized product")?;
    ensure(product.pushforward.coordinates == lam.coordinates, || format!("localized product {:?}", product.pushforward.coordinates))?;
    for k in ["thm_multi_global", "thm_multi_local", "thm_multi_product"] {
        ensure(r.verdicts[k] == Verdict::Pass, || format!("{k} {:?}", r.verdicts[k]))?;
    }
    let dt = t.elapsed();
    ensure(dt < MULTI_LIMIT, || format!("took {dt:?}"))?;
    Ok(format!("one triple point of class {joint} = Λ = P'L; {dt:?} < {MULTI_LIMIT:?}"))
}

fn criterion_9() -> Outcome {
    let c6 = Arc::new(catalog::circle(6));
    let id = SimplicialMapData::identity(c6.clone());
    let ctx = DualityContext::new(&c6).map_err(e)?;
    let lam = global_class(&ctx, &id, &id, Convention::Primary).map_err(e)?;
    let target = catalog::circle_target(6);
    let pl = |f: &SimplicialMapData| PLMapData::from_simplicial(f, target.clone()).unwrap();
    let set = coincidence_set(&pl(&id), &pl(&id), 3).map_err(e)?;
    let comps = set.components();
    ensure(comps.len() == 1, || format!("{} components for f = g", comps.len()))?;
    match local_class(&set, &comps[0], &ctx, None) {
        Err(err @ Error::Unsupported { .. }) => ensure(err.to_string().contains("perturb"), || format!("diagnostic: {err}"))?,
        other => return Err(format!("local class for f = g: {other:?}")),
    }

    let anti = SimplicialMapData::new("antipode", c6.clone(), c6.clone(), (0..6).map(|v| (v + 3) % 6).collect()).map_err(e)?;
    let set = coincidence_set(&pl(&id), &pl(&anti), 3).map_err(e)?;
    ensure(set.is_empty(), || "antipodal pair has coincidences".into())?;
    let r = analyze_pair(&id, &anti, &target, &AnalysisOptions::default()).map_err(e)?;
    ensure(r.lefschetz.as_deref() == Some("0"), || format!("Lef {:?}", r.lefschetz))?;
    for (name, c) in [("Λ", &r.global_class), ("L", &r.cohomology_class), ("P'L", &r.dual_cohomology_class)] {
        ensure(c.as_ref().is_some_and(|c| c.is_zero()), || format!("{name} = {c:?}"))?;
    }
    ensure(r.components.is_empty(), || "components reported".into())?;
    Ok(format!("f = g gives Λ = {:?} and a refusal; empty set gives zero classes and Lef 0", lam.coordinates))
}

#[test]
fn acceptance() {
    let criteria: [(&str, Criterion); 9] = [
        ("homology", criterion_1),
        ("duality", criterion_2),
        ("sign laws", criterion_3),
        ("coincidence point formula", criterion_4),
        ("dual of the cohomology class", criterion_5),
        ("pseudo-manifold local class", criterion_6),
        ("residues", criterion_7),
        ("multi-coincidence", criterion_8),
        ("degenerate guards", criterion_9),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {} ({name}): PASS - {detail}", i + 1),
            Err(detail) => {
                println!("criterion {} ({name}): FAIL - {detail}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria {failed:?}");
}
