//! Full analyses of a pair or tuple of maps, with every theorem check as a verdict.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use super::global::{
    cohomology_class_in, global_class_in, lefschetz_number, rational_string, DiagonalSetting, GradedClass,
    GraphSetting,
};
use super::local::{codimension, local_class, LocalClassData};
use super::pl::{coincidence_set, multi_coincidence_set, CoincidenceComponent, CoincidenceSet, ComponentKind, PLMapData, PLTarget};
use crate::algebra::{homology, SimplicialMapData, Support};
use crate::complex::DualCellComplex;
use crate::duality::{Convention, DualityContext};
use crate::error::{Error, Result};
use crate::io::ClassReport;
use crate::products::{intersect, intersect_localized, intersect_with_map_localized, LocalizedClass};

/// Serialized as `true`, `false`, or `null` when the check does not apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
}

impl Serialize for Verdict {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Verdict::Pass => s.serialize_bool(true),
            Verdict::Fail => s.serialize_bool(false),
            Verdict::NotApplicable => s.serialize_none(),
        }
    }
}

impl Verdict {
    pub fn check(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

#[derive(Clone, Debug)]
pub struct AnalysisOptions {
    pub subdivision_bound: usize,
    pub convention: Convention,
    /// Also compute the local class through the Thom class of the graph.
    pub algebraic_route: bool,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions { subdivision_bound: 3, convention: Convention::Primary, algebraic_route: true }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentReport {
    pub id: usize,
    #[serde(rename = "type")]
    pub kind: ComponentKind,
    pub dim: usize,
    pub support: Vec<String>,
    pub local_class: Option<ClassReport>,
    /// Image of the local class in the homology of the domain.
    pub pushforward: Option<ClassReport>,
    pub degrees: Vec<i64>,
    pub charts: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostic: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AlgebraicRoute {
    pub available: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub support: Vec<String>,
    pub class: ClassReport,
    pub pushforward: ClassReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct CoincidenceReport {
    pub domain: String,
    pub codomain: String,
    pub maps: Vec<String>,
    pub convention: Convention,
    /// Rational string; absent when the dimensions differ.
    pub lefschetz: Option<String>,
    pub global_class: Option<ClassReport>,
    pub cohomology_class: Option<ClassReport>,
    /// `P'_M L(f, g)`.
    pub dual_cohomology_class: Option<ClassReport>,
    pub refinement_rounds: usize,
    pub components: Vec<ComponentReport>,
    pub algebraic_local_class: Option<AlgebraicRoute>,
    pub notes: Vec<String>,
    pub verdicts: BTreeMap<String, Verdict>,
}

impl CoincidenceReport {
    pub fn failed(&self) -> Vec<&str> {
        self.verdicts.iter().filter(|(_, v)| **v == Verdict::Fail).map(|(k, _)| k.as_str()).collect()
    }
}

fn describe_support(set: &CoincidenceSet, comp: &CoincidenceComponent) -> Vec<String> {
    let k = set.domain();
    if let Some(p) = &comp.point {
        if p.carrier.0 > 0 || comp.subcomplex.is_none() {
            let w: Vec<String> = p.weights.iter().map(rational_string).collect();
            return vec![format!("{} at ({})", k.describe(p.carrier.0, p.carrier.1), w.join(", "))];
        }
    }
    let sub = comp.subcomplex.as_ref().expect("component has a support");
    sub.indices(comp.dim).into_iter().map(|i| k.describe(comp.dim, i)).collect()
}

fn homology_report(ctx: &DualityContext, q: usize, coords: &[i64]) -> Result<ClassReport> {
    Ok(ClassReport::new(ctx.complex(), ctx.homology(q)?, coords))
}

fn cohomology_report(ctx: &DualityContext, p: usize, coords: &[i64]) -> Result<ClassReport> {
    Ok(ClassReport::new(ctx.complex(), ctx.cohomology(p)?, coords))
}

fn local_report(set: &CoincidenceSet, comp: &CoincidenceComponent, l: &LocalClassData) -> Result<ClassReport> {
    let integers = (l.degree == 0).then(|| l.coordinates.clone());
    let report = match &comp.subcomplex {
        Some(sub) if comp.point.as_ref().is_none_or(|p| p.carrier.0 == 0) => {
            let group = homology(set.domain(), l.degree, &Support::Sub(sub))?;
            ClassReport::new(set.domain(), &group, &l.coordinates).with_support(sub.name())
        }
        _ => ClassReport {
            degree: 0,
            coordinates: l.coordinates.clone(),
            torsion_coordinates: Vec::new(),
            torsion_orders: Vec::new(),
            basis: describe_support(set, comp),
            support: Some(format!("point {}", comp.id)),
            localized_at: None,
            integers: None,
        },
    };
    Ok(report.localized(vec![comp.id], integers))
}

fn component_report(
    set: &CoincidenceSet,
    ctx_m: &DualityContext,
    comp: &CoincidenceComponent,
    local: &std::result::Result<LocalClassData, Error>,
) -> Result<ComponentReport> {
    let target = set.maps[0].target().complex();
    let mut report = ComponentReport {
        id: comp.id,
        kind: comp.kind.clone(),
        dim: comp.dim,
        support: describe_support(set, comp),
        local_class: None,
        pushforward: None,
        degrees: Vec::new(),
        charts: Vec::new(),
        diagnostic: comp.diagnostic.clone(),
    };
    match local {
        Ok(l) => {
            report.local_class = Some(local_report(set, comp, l)?);
            report.pushforward = Some(homology_report(ctx_m, l.degree, &l.pushforward)?);
            report.degrees = l.degrees.clone();
            report.charts = l.charts.iter().map(|&v| target.label(v).to_string()).collect();
        }
        Err(e) => report.diagnostic = Some(e.to_string()),
    }
    Ok(report)
}

fn sum_vectors<'a>(vs: impl Iterator<Item = &'a Vec<i64>>, len: usize) -> Vec<i64> {
    let mut acc = vec![0i64; len];
    for v in vs {
        acc.iter_mut().zip(v).for_each(|(a, b)| *a += b);
    }
    acc
}

fn primed(ctx: &DualityContext, c: &GradedClass) -> Result<GradedClass> {
    Ok(GradedClass { degree: ctx.dim() - c.degree, coordinates: ctx.poincare_with(Convention::Primed, c.degree, &c.coordinates)? })
}

type LocalAttempts = Vec<std::result::Result<LocalClassData, Error>>;

fn local_classes(set: &CoincidenceSet, ctx_m: &DualityContext) -> Result<(Vec<CoincidenceComponent>, LocalAttempts)> {
    let comps = set.components();
    let needs_dual = comps.iter().any(|c| c.kind == ComponentKind::PseudoManifold);
    let dual = if needs_dual { Some(DualCellComplex::new(set.domain())?) } else { None };
    let locals = comps.iter().map(|c| local_class(set, c, ctx_m, dual.as_ref())).collect();
    Ok((comps, locals))
}

/// Everything computable about the coincidences of `f` and `g`.
pub fn analyze_pair(
    f: &SimplicialMapData,
    g: &SimplicialMapData,
    target: &Arc<PLTarget>,
    options: &AnalysisOptions,
) -> Result<CoincidenceReport> {
    let m_complex = f.domain();
    let ctx_m = DualityContext::new(m_complex)?;
    let ctx_n = DualityContext::new(f.codomain())?;
    let (m, n) = (ctx_m.dim(), ctx_n.dim());
    let mut notes = Vec::new();
    let mut verdicts = BTreeMap::new();

    let lefschetz = if m == n { Some(lefschetz_number(&ctx_m, &ctx_n, f, g)?) } else { None };

    let mut global = None;
    let mut cohom = None;
    let mut dual = None;
    let mut primary_pair = None;
    let mut graph_setting = None;
    match GraphSetting::new(f, g).and_then(|gs| DiagonalSetting::new(f.codomain_arc()).map(|ds| (gs, ds))) {
        Ok((gs, ds)) => {
            let lam = global_class_in(&ctx_m, &gs, options.convention)?;
            let l = cohomology_class_in(&ctx_m, &ds, f, g, options.convention)?;
            let pl = primed(&ctx_m, &l)?;
            dual = Some(homology_report(&ctx_m, pl.degree, &pl.coordinates)?);
            let (lam0, l0) = if options.convention == Convention::Primary {
                (lam.clone(), l.clone())
            } else {
                (global_class_in(&ctx_m, &gs, Convention::Primary)?, cohomology_class_in(&ctx_m, &ds, f, g, Convention::Primary)?)
            };
            let pl0 = primed(&ctx_m, &l0)?;
            verdicts.insert("thm_thlefgen".into(), Verdict::check(pl0 == lam0));
            let unprimed = ctx_m.poincare(l0.degree, &l0.coordinates)?;
            let sign = crate::duality::primed_sign(n, m);
            verdicts.insert(
                "thm_thlefgen_unprimed".into(),
                Verdict::check(unprimed.iter().zip(&lam0.coordinates).all(|(a, b)| *a == sign * b)),
            );
            primary_pair = Some(lam0);
            global = Some(homology_report(&ctx_m, lam.degree, &lam.coordinates)?);
            cohom = Some(cohomology_report(&ctx_m, l.degree, &l.coordinates)?);
            graph_setting = Some(gs);
        }
        Err(e) => {
            notes.push(format!("global classes unavailable: {e}"));
            verdicts.insert("thm_thlefgen".into(), Verdict::NotApplicable);
            verdicts.insert("thm_thlefgen_unprimed".into(), Verdict::NotApplicable);
        }
    }

    let pf = PLMapData::from_simplicial(f, target.clone())?;
    let pg = PLMapData::from_simplicial(g, target.clone())?;
    let set = coincidence_set(&pf, &pg, options.subdivision_bound)?;
    let (comps, locals) = local_classes(&set, &ctx_m)?;
    let all_local = locals.iter().all(|l| l.is_ok());
    let components: Vec<ComponentReport> = comps.iter().zip(&locals).map(|(c, l)| component_report(&set, &ctx_m, c, l)).collect::<Result<_>>()?;
    if !all_local {
        notes.push("some components have no local class; see their diagnostics".into());
    }
    let d = m.saturating_sub(n);
    let pushed = sum_vectors(locals.iter().filter_map(|l| l.as_ref().ok()).map(|l| &l.pushforward), ctx_m.homology(d)?.len());

    match (&lefschetz, all_local) {
        (Some(lef), true) => {
            let indices: i64 = locals.iter().filter_map(|l| l.as_ref().ok()).map(|l| l.degrees.iter().sum::<i64>()).sum();
            let total = num_rational::BigRational::from_integer(indices.into());
            verdicts.insert("thm_lefcpf".into(), Verdict::check(*lef == total));
        }
        _ => {
            verdicts.insert("thm_lefcpf".into(), Verdict::NotApplicable);
        }
    }
    match (&primary_pair, all_local) {
        (Some(lam0), true) => {
            verdicts.insert("thm_thcoincoin".into(), Verdict::check(lam0.coordinates == pushed));
        }
        _ => {
            verdicts.insert("thm_thcoincoin".into(), Verdict::NotApplicable);
        }
    }

    let mut route = None;
    if options.algebraic_route {
        if let Some(gs) = &graph_setting {
            let w = gs.complex();
            let gamma = LocalizedClass::from_chain(w, gs.graph.subcomplex.clone(), m, gs.graph.cycle.clone())?;
            match intersect_with_map_localized(&ctx_m, &gs.context, &gs.lift, Convention::Primary, &gamma) {
                Ok(alg) => {
                    let same_set = set.rounds == 0
                        && set.points.is_empty()
                        && set.subcomplex.is_subset_of(&alg.support)
                        && alg.support.is_subset_of(&set.subcomplex);
                    let reason = (!same_set).then(|| {
                        "the coincidence set is not the full subcomplex on the vertices where f = g".to_string()
                    });
                    if same_set && all_local {
                        let chain = sum_vectors(locals.iter().filter_map(|l| l.as_ref().ok()).map(|l| &l.chain), m_complex.count(d));
                        let pl = homology(m_complex, d, &Support::Sub(&alg.support))?.coordinates(&chain)?;
                        verdicts.insert("local_route".into(), Verdict::check(pl == alg.coordinates));
                    } else {
                        verdicts.insert("local_route".into(), Verdict::NotApplicable);
                    }
                    let group = homology(m_complex, alg.degree, &Support::Sub(&alg.support))?;
                    route = Some(AlgebraicRoute {
                        available: same_set,
                        reason,
                        support: alg.support.indices(d).into_iter().map(|i| m_complex.describe(d, i)).collect(),
                        pushforward: homology_report(&ctx_m, alg.degree, &alg.push_forward(&ctx_m)?)?,
                        class: ClassReport::new(m_complex, &group, &alg.coordinates).with_support(alg.support.name()),
                    });
                }
                Err(e) => {
                    notes.push(format!("algebraic local class unavailable: {e}"));
                    verdicts.insert("local_route".into(), Verdict::NotApplicable);
                }
            }
        }
    }

    Ok(CoincidenceReport {
        domain: m_complex.name().to_string(),
        codomain: f.codomain().name().to_string(),
        maps: vec![f.name().to_string(), g.name().to_string()],
        convention: options.convention,
        lefschetz: lefschetz.as_ref().map(rational_string),
        global_class: global,
        cohomology_class: cohom,
        dual_cohomology_class: dual,
        refinement_rounds: set.rounds,
        components,
        algebraic_local_class: route,
        notes,
        verdicts,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct PairSummary {
    pub maps: [String; 2],
    pub components: Vec<ComponentReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LocalizedProductReport {
    pub support: Vec<String>,
    pub class: ClassReport,
    pub pushforward: ClassReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct MultiReport {
    pub domain: String,
    pub codomain: String,
    pub maps: Vec<String>,
    pub convention: Convention,
    pub global_class: ClassReport,
    pub cohomology_class: ClassReport,
    pub dual_cohomology_class: ClassReport,
    pub pairwise: Vec<PairSummary>,
    pub refinement_rounds: usize,
    /// Components of the common coincidence set with their joint indices.
    pub components: Vec<ComponentReport>,
    pub localized_product: Option<LocalizedProductReport>,
    pub notes: Vec<String>,
    pub verdicts: BTreeMap<String, Verdict>,
}

/// Pairwise local classes as one localized class on the unrefined domain.
fn pair_localized(set: &CoincidenceSet, locals: &[std::result::Result<LocalClassData, Error>], d: usize) -> Result<LocalizedClass> {
    if set.rounds > 0 || !set.points.is_empty() {
        return Err(Error::Unsupported {
            component: set.subcomplex.name().to_string(),
            reason: "coincidences off the vertices of the original domain".into(),
        });
    }
    let k = set.domain();
    let mut chain = vec![0i64; k.count(d)];
    for l in locals {
        let l = l.as_ref().map_err(Clone::clone)?;
        chain.iter_mut().zip(&l.chain).for_each(|(a, b)| *a += b);
    }
    LocalizedClass::from_chain(k, set.subcomplex.clone(), d, chain)
}

pub fn analyze_multi(maps: &[SimplicialMapData], target: &Arc<PLTarget>, options: &AnalysisOptions) -> Result<MultiReport> {
    if maps.len() < 2 {
        return Err(Error::Empty("multi-coincidence needs at least two maps".into()));
    }
    let k = maps[0].domain();
    let ctx_m = DualityContext::new(k)?;
    let m = ctx_m.dim();
    let mut notes = Vec::new();
    let mut verdicts = BTreeMap::new();
    let diag = DiagonalSetting::new(maps[0].codomain_arc())?;

    let mut pair_globals = Vec::new();
    let mut pair_cohom = Vec::new();
    let mut pairwise = Vec::new();
    let mut pair_locals: Vec<Result<LocalizedClass>> = Vec::new();
    for w in maps.windows(2) {
        let gs = GraphSetting::new(&w[0], &w[1])?;
        pair_globals.push((global_class_in(&ctx_m, &gs, Convention::Primary)?, global_class_in(&ctx_m, &gs, options.convention)?));
        pair_cohom.push((
            cohomology_class_in(&ctx_m, &diag, &w[0], &w[1], Convention::Primary)?,
            cohomology_class_in(&ctx_m, &diag, &w[0], &w[1], options.convention)?,
        ));
        let set = coincidence_set(
            &PLMapData::from_simplicial(&w[0], target.clone())?,
            &PLMapData::from_simplicial(&w[1], target.clone())?,
            options.subdivision_bound,
        )?;
        let (comps, locals) = local_classes(&set, &ctx_m)?;
        pairwise.push(PairSummary {
            maps: [w[0].name().to_string(), w[1].name().to_string()],
            components: comps.iter().zip(&locals).map(|(c, l)| component_report(&set, &ctx_m, c, l)).collect::<Result<_>>()?,
        });
        pair_locals.push(pair_localized(&set, &locals, m - codimension(&set)));
    }

    let fold_global = |pick: &dyn Fn(&(GradedClass, GradedClass)) -> GradedClass, conv: Convention| -> Result<GradedClass> {
        let mut acc = pick(&pair_globals[0]);
        for p in &pair_globals[1..] {
            let c = pick(p);
            let coords = intersect(&ctx_m, conv, acc.degree, &acc.coordinates, c.degree, &c.coordinates)?;
            acc = GradedClass { degree: acc.degree + c.degree - m, coordinates: coords };
        }
        Ok(acc)
    };
    let fold_cohom = |pick: &dyn Fn(&(GradedClass, GradedClass)) -> GradedClass| -> Result<GradedClass> {
        let mut acc = pick(&pair_cohom[0]);
        for p in &pair_cohom[1..] {
            let c = pick(p);
            if acc.degree + c.degree > m {
                return Err(Error::DegreeOutOfRange { degree: (acc.degree + c.degree) as isize, max: m });
            }
            let coords = crate::products::cup_classes(k, acc.degree, &acc.coordinates, c.degree, &c.coordinates)?;
            acc = GradedClass { degree: acc.degree + c.degree, coordinates: coords };
        }
        Ok(acc)
    };
    let lam0 = fold_global(&|p| p.0.clone(), Convention::Primary)?;
    let lam = fold_global(&|p| p.1.clone(), options.convention)?;
    let l0 = fold_cohom(&|p| p.0.clone())?;
    let l = fold_cohom(&|p| p.1.clone())?;
    verdicts.insert("thm_multi_global".into(), Verdict::check(primed(&ctx_m, &l0)? == lam0));

    let pls: Vec<PLMapData> = maps.iter().map(|f| PLMapData::from_simplicial(f, target.clone())).collect::<Result<_>>()?;
    let set = multi_coincidence_set(&pls, options.subdivision_bound)?;
    let (comps, locals) = local_classes(&set, &ctx_m)?;
    let components: Vec<ComponentReport> = comps.iter().zip(&locals).map(|(c, l)| component_report(&set, &ctx_m, c, l)).collect::<Result<_>>()?;
    if locals.iter().all(|l| l.is_ok()) {
        let pushed = sum_vectors(locals.iter().filter_map(|l| l.as_ref().ok()).map(|l| &l.pushforward), lam0.coordinates.len());
        verdicts.insert("thm_multi_local".into(), Verdict::check(pushed == lam0.coordinates));
    } else {
        notes.push("joint indices unavailable for some components".into());
        verdicts.insert("thm_multi_local".into(), Verdict::NotApplicable);
    }

    let mut product = None;
    let folded: Result<LocalizedClass> = (|| {
        let mut it = pair_locals.into_iter();
        let mut acc = it.next().expect("at least one pair")?;
        for c in it {
            acc = intersect_localized(&ctx_m, Convention::Primary, &acc, &c?)?;
        }
        Ok(acc)
    })();
    match folded {
        Ok(p) => {
            let pushed = p.push_forward(&ctx_m)?;
            verdicts.insert("thm_multi_product".into(), Verdict::check(pushed == lam0.coordinates));
            let group = homology(k, p.degree, &Support::Sub(&p.support))?;
            product = Some(LocalizedProductReport {
                support: p.support.indices(p.degree).into_iter().map(|i| k.describe(p.degree, i)).collect(),
                class: ClassReport::new(k, &group, &p.coordinates).with_support(p.support.name()),
                pushforward: homology_report(&ctx_m, p.degree, &pushed)?,
            });
        }
        Err(e) => {
            notes.push(format!("localized product unavailable: {e}"));
            verdicts.insert("thm_multi_product".into(), Verdict::NotApplicable);
        }
    }

    Ok(MultiReport {
        domain: k.name().to_string(),
        codomain: maps[0].codomain().name().to_string(),
        maps: maps.iter().map(|f| f.name().to_string()).collect(),
        convention: options.convention,
        dual_cohomology_class: {
            let pl = primed(&ctx_m, &l)?;
            homology_report(&ctx_m, pl.degree, &pl.coordinates)?
        },
        global_class: homology_report(&ctx_m, lam.degree, &lam.coordinates)?,
        cohomology_class: cohomology_report(&ctx_m, l.degree, &l.coordinates)?,
        pairwise,
        refinement_rounds: set.rounds,
        components,
        localized_product: product,
        notes,
        verdicts,
    })
}
