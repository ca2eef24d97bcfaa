//! Every theorem check on the example catalog, in a fixed order.

use std::sync::Arc;

use serde::Serialize;

use lefschetz::algebra::{homology, kronecker, SimplicialMapData, Support};
use lefschetz::catalog;
use lefschetz::coincidence::{analyze_multi, analyze_pair, lefschetz_number, rational_string, AnalysisOptions, PLTarget, Verdict};
use lefschetz::complex::{OrientedComplex, Subcomplex};
use lefschetz::duality::{pentahedron_check, primed_sign, thom_class, Convention, DualityContext};
use lefschetz::products::{cup, intersect, intersect_with_map, intersect_with_map_localized, residue_decompose, LocalizedClass};
use lefschetz::Result;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

type Outcome = Result<(bool, String)>;

fn record(out: &mut Vec<Check>, name: impl Into<String>, outcome: Outcome) {
    let (passed, detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
    out.push(Check { name: name.into(), passed, detail });
}

fn group_name(k: &OrientedComplex, p: usize) -> Result<String> {
    let g = homology(k, p, &Support::Absolute)?;
    let mut parts: Vec<String> = g.torsion.iter().map(|t| format!("Z/{t}")).collect();
    match g.free_rank {
        0 => {}
        1 => parts.insert(0, "Z".into()),
        r => parts.insert(0, format!("Z^{r}")),
    }
    Ok(if parts.is_empty() { "0".into() } else { parts.join("+") })
}

pub fn homology_string(k: &OrientedComplex) -> Result<String> {
    let groups = (0..=k.dim()).map(|p| group_name(k, p)).collect::<Result<Vec<_>>>()?;
    Ok(format!("({})", groups.join(", ")))
}

fn check_homology(k: &OrientedComplex, expected: &str) -> Outcome {
    let got = homology_string(k)?;
    Ok((got == expected, got))
}

fn check_unimodular(k: &OrientedComplex) -> Outcome {
    let ctx = DualityContext::new(k)?;
    let bad: Vec<usize> = (0..=ctx.dim()).filter(|&p| !ctx.poincare_matrix(p).is_ok_and(|m| m.is_unimodular())).collect();
    Ok((bad.is_empty(), if bad.is_empty() { "all degrees".into() } else { format!("fails in degrees {bad:?}") }))
}

/// `<c ⌣ a, [M]> = <a, P c>` on all pairs of cohomology generators.
fn check_pairing(k: &OrientedComplex) -> Outcome {
    let ctx = DualityContext::new(k)?;
    let m = ctx.dim();
    let z = k.fundamental_cycle()?;
    let mut pairs = 0;
    for p in 0..=m {
        for c in &ctx.cohomology(p)?.generators {
            let pc = ctx.poincare_chain(p, c);
            for a in &ctx.cohomology(m - p)?.generators {
                if kronecker(&cup(k, p, c, m - p, a), &z)? != kronecker(a, &pc)? {
                    return Ok((false, format!("mismatch in degree {p}")));
                }
                pairs += 1;
            }
        }
    }
    Ok((true, format!("{pairs} basis pairs")))
}

fn check_pentahedron(k: &OrientedComplex, x: &Subcomplex) -> Outcome {
    let ctx = DualityContext::new(k)?;
    let r = pentahedron_check(&ctx, x)?;
    let ok = r.commutes && r.thom_consistent && r.thom_isomorphism != Some(false);
    Ok((ok, if ok { "commutes".into() } else { r.failures.join("; ") }))
}

/// `b·a = (-1)^{(m-r)(m-s)} a·b` on every pair of homology generators.
fn check_anticommutativity(k: &OrientedComplex) -> Outcome {
    let ctx = DualityContext::new(k)?;
    let m = ctx.dim();
    let mut pairs = 0;
    for r in 0..=m {
        for s in (m - r)..=m {
            let (hr, hs) = (ctx.homology(r)?.len(), ctx.homology(s)?.len());
            for i in 0..hr {
                for j in 0..hs {
                    let mut a = vec![0; hr];
                    a[i] = 1;
                    let mut b = vec![0; hs];
                    b[j] = 1;
                    let ab = intersect(&ctx, Convention::Primary, r, &a, s, &b)?;
                    let ba = intersect(&ctx, Convention::Primary, s, &b, r, &a)?;
                    let sign = if ((m - r) * (m - s)) % 2 == 0 { 1 } else { -1 };
                    if ba != ab.iter().map(|x| sign * x).collect::<Vec<_>>() {
                        return Ok((false, format!("degrees ({r}, {s})")));
                    }
                    pairs += 1;
                }
            }
        }
    }
    Ok((true, format!("{pairs} generator pairs")))
}

fn check_swap(f: &SimplicialMapData, g: &SimplicialMapData) -> Outcome {
    let cm = DualityContext::new(f.domain())?;
    let cn = DualityContext::new(f.codomain())?;
    let fg = lefschetz_number(&cm, &cn, f, g)?;
    let gf = lefschetz_number(&cm, &cn, g, f)?;
    let ok = if cm.dim() % 2 == 0 { gf == fg } else { gf == -fg.clone() };
    Ok((ok, format!("Lef(f,g) = {}, Lef(g,f) = {}", rational_string(&fg), rational_string(&gf))))
}

fn check_thom_sign(k: &OrientedComplex, x: &Subcomplex) -> Outcome {
    let ctx = DualityContext::new(k)?;
    let psi = thom_class(&ctx, x, Convention::Primary)?;
    let primed = thom_class(&ctx, x, Convention::Primed)?;
    let sign = primed_sign(psi.k, ctx.dim());
    let ok = primed.cocycle == psi.cocycle.iter().map(|c| sign * c).collect::<Vec<_>>();
    Ok((ok, format!("sign {sign:+}")))
}

fn verdict_outcome(verdicts: &std::collections::BTreeMap<String, Verdict>, lead: String) -> Outcome {
    let failed: Vec<&str> = verdicts.iter().filter(|(_, v)| **v == Verdict::Fail).map(|(k, _)| k.as_str()).collect();
    let passed: Vec<&str> = verdicts.iter().filter(|(_, v)| **v == Verdict::Pass).map(|(k, _)| k.as_str()).collect();
    if failed.is_empty() {
        Ok((true, format!("{lead}; passed {}", passed.join(" "))))
    } else {
        Ok((false, format!("{lead}; failed {}", failed.join(" "))))
    }
}

fn check_pair(f: &SimplicialMapData, g: &SimplicialMapData, target: &Arc<PLTarget>, options: &AnalysisOptions) -> Outcome {
    let r = analyze_pair(f, g, target, options)?;
    let lead = match &r.lefschetz {
        Some(l) => format!("Lef = {l}, {} components", r.components.len()),
        None => format!("{} components", r.components.len()),
    };
    verdict_outcome(&r.verdicts, lead)
}

/// Two points downstairs pull back to two fibers whose classes add up to the global product.
fn check_residue() -> Outcome {
    let pr = catalog::torus_projection();
    let (t, c) = (pr.domain(), pr.codomain());
    let (ctx_t, ctx_c) = (DualityContext::new(t)?, DualityContext::new(c)?);
    let two = Subcomplex::full(c, "two points", &[0, 3]);
    let mut z = vec![0; c.count(0)];
    z[0] = 1;
    z[3] = 1;
    let cycle = LocalizedClass::from_chain(c, two, 0, z.clone())?;
    let local = intersect_with_map_localized(&ctx_t, &ctx_c, &pr, Convention::Primary, &cycle)?;
    let parts = residue_decompose(&ctx_t, &local)?;
    let global = intersect_with_map(&ctx_t, &ctx_c, &pr, Convention::Primary, 0, &ctx_c.homology(0)?.coordinates(&z)?)?;
    let mut sum = vec![0; global.len()];
    for p in &parts {
        sum.iter_mut().zip(&p.global).for_each(|(a, b)| *a += b);
    }
    let ok = parts.len() == 2 && sum == global && global.iter().any(|&x| x != 0);
    Ok((ok, format!("{} residues summing to {sum:?}, global {global:?}", parts.len())))
}

fn antipodal_pair() -> (SimplicialMapData, SimplicialMapData) {
    let c6 = Arc::new(catalog::circle(6));
    let anti = SimplicialMapData::new("antipode", c6.clone(), c6.clone(), (0..6).map(|v| (v + 3) % 6).collect())
        .expect("rotation is simplicial");
    (SimplicialMapData::identity(c6), anti)
}

/// Runs every check; the order and the text are fixed.
pub fn run_all(subdivision_bound: usize) -> Vec<Check> {
    let mut out = Vec::new();
    let torus18 = catalog::torus_grid(3, 3);
    record(&mut out, "homology/S1", check_homology(&catalog::circle(3), "(Z, Z)"));
    record(&mut out, "homology/S2", check_homology(&catalog::octahedron(), "(Z, 0, Z)"));
    record(&mut out, "homology/T2", check_homology(&torus18, "(Z, Z^2, Z)"));
    record(&mut out, "homology/RP2", check_homology(&catalog::rp2(), "(Z, Z/2, 0)"));

    for k in catalog::test_manifolds() {
        record(&mut out, format!("duality/unimodular/{}", k.name()), check_unimodular(&k));
        record(&mut out, format!("duality/pairing/{}", k.name()), check_pairing(&k));
    }
    let s2 = catalog::octahedron();
    record(&mut out, "duality/pentahedron/point-in-S2", check_pentahedron(&s2, &Subcomplex::full(&s2, "pt", &[0])));
    let row = catalog::torus_row(&torus18, 3, 3, 0);
    record(&mut out, "duality/pentahedron/circle-in-T2", check_pentahedron(&torus18, &row));

    for k in catalog::test_manifolds() {
        record(&mut out, format!("signs/anticommutativity/{}", k.name()), check_anticommutativity(&k));
    }
    let mut swaps: Vec<(String, SimplicialMapData, SimplicialMapData)> = Vec::new();
    for (a, b) in [(1, 2), (0, 3), (2, 5)] {
        let (f, g) = catalog::circle_pair(a, b);
        swaps.push((format!("circle({a},{b})"), f, g));
    }
    for (a, b) in [(2, 1), (3, 2)] {
        let (f, g) = catalog::sphere_pair_isolated(a, b);
        swaps.push((format!("sphere({a},{b})"), f, g));
    }
    let (f, g) = catalog::sphere_pair();
    swaps.push(("sphere-suspension".into(), f, g));
    let (f, g) = antipodal_pair();
    swaps.push(("antipodal".into(), f, g));
    for (name, f, g) in &swaps {
        record(&mut out, format!("signs/swap/{name}"), check_swap(f, g));
    }
    record(&mut out, "signs/thom/point-in-S2", check_thom_sign(&s2, &Subcomplex::full(&s2, "pt", &[0])));
    record(&mut out, "signs/thom/circle-in-T2", check_thom_sign(&torus18, &row));

    let options = AnalysisOptions { subdivision_bound, ..Default::default() };
    let c3 = catalog::circle_target(3);
    for (a, b) in [(1, 2), (0, 3), (2, 5)] {
        let (f, g) = catalog::circle_pair(a, b);
        record(&mut out, format!("coincidence/circle({a},{b})"), check_pair(&f, &g, &c3, &options));
    }
    let oct = catalog::octahedron_target();
    for (a, b) in [(2, 1), (3, 2)] {
        let (f, g) = catalog::sphere_pair_isolated(a, b);
        record(&mut out, format!("coincidence/sphere({a},{b})"), check_pair(&f, &g, &oct, &options));
    }
    let (f, g) = catalog::sphere_pair();
    record(&mut out, "coincidence/sphere-suspension", check_pair(&f, &g, &catalog::suspension_target(3), &options));
    let maps = catalog::torus_maps();
    record(&mut out, "coincidence/torus-pair", check_pair(&maps[0], &maps[1], &c3, &options));
    let (f, g) = antipodal_pair();
    record(&mut out, "coincidence/antipodal", check_pair(&f, &g, &catalog::circle_target(6), &options));
    record(&mut out, "residue/torus-projection", check_residue());
    record(
        &mut out,
        "multi/torus-triple",
        analyze_multi(&maps, &c3, &options).and_then(|r| {
            let lead = format!("class {:?}, {} triple points", r.global_class.coordinates, r.components.len());
            verdict_outcome(&r.verdicts, lead)
        }),
    );
    out
}
