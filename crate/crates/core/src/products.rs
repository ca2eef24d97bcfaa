//! Cup and cap products, intersection products and their localized forms.
//!
//! Cochain products use the front-face/back-face split of each stored vertex
//! tuple, so they work for local orderings as well as total ones. Classes are
//! coordinates in the generator bases of the groups computed by `algebra`.
//!
//! A localized class lives in `H_q(S)` for a full subcomplex `S`. The localized
//! intersection cups the Alexander preimages, which vanish on `L_{S1} ∪ L_{S2}`,
//! and lifts the product to `H^*(M, L_S)` for `S = S1 ∩ S2`. When that lift is
//! not determined on `K` itself the computation moves to the first barycentric
//! subdivision, where all the subcomplexes involved are full.

use crate::algebra::{cohomology, homology, matrix_of, pull_along, GradedGroup, SimplicialMapData, Support};
use crate::complex::{OrientedComplex, Subcomplex};
use crate::duality::{overflow, Convention, DualityContext, RelativeModel};
use crate::error::{Error, Result};

/// `(u ⌣ v)(σ) = u(σ[0..=p]) · v(σ[p..])`.
pub fn cup(k: &OrientedComplex, p: usize, u: &[i64], q: usize, v: &[i64]) -> Vec<i64> {
    let n = p + q;
    if n > k.dim() {
        return Vec::new();
    }
    (0..k.count(n))
        .map(|i| {
            let s = k.simplex(n, i);
            let a = face_value(k, &s[..=p], u);
            if a == 0 {
                return 0;
            }
            a * face_value(k, &s[p..], v)
        })
        .collect()
}

/// `u ⌢ σ = u(σ[0..=p]) · σ[p..]`, extended linearly over the `n`-chain `c`.
pub fn cap(k: &OrientedComplex, p: usize, u: &[i64], n: usize, c: &[i64]) -> Vec<i64> {
    if p > n {
        return Vec::new();
    }
    let mut out = vec![0i64; k.count(n - p)];
    for (i, &ci) in c.iter().enumerate() {
        if ci == 0 {
            continue;
        }
        let s = k.simplex(n, i);
        let a = face_value(k, &s[..=p], u);
        if a != 0 {
            let (j, sign) = k.locate(&s[p..]).expect("faces of stored simplices are stored");
            out[j] += ci * a * sign;
        }
    }
    out
}

fn face_value(k: &OrientedComplex, face: &[usize], u: &[i64]) -> i64 {
    let (j, sign) = k.locate(face).expect("faces of stored simplices are stored");
    sign * u[j]
}


fn check_len(g: &GradedGroup, coords: &[i64]) -> Result<()> {
    if g.len() != coords.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} coordinates for a group with {} generators ({})",
            coords.len(),
            g.len(),
            g.support
        )));
    }
    Ok(())
}

/// Cup product of classes `a ∈ H^p(K)` and `b ∈ H^q(K)`.
pub fn cup_classes(k: &OrientedComplex, p: usize, a: &[i64], q: usize, b: &[i64]) -> Result<Vec<i64>> {
    if p + q > k.dim() {
        return Err(Error::DegreeOutOfRange { degree: (p + q) as isize, max: k.dim() });
    }
    let (gp, gq) = (cohomology(k, p, &Support::Absolute)?, cohomology(k, q, &Support::Absolute)?);
    check_len(&gp, a)?;
    check_len(&gq, b)?;
    let w = cup(k, p, &gp.combination(a), q, &gq.combination(b));
    cohomology(k, p + q, &Support::Absolute)?.coordinates(&w)
}

/// Cap product of `a ∈ H^p(K)` with `c ∈ H_n(K)`, landing in `H_{n-p}(K)`.
pub fn cap_classes(k: &OrientedComplex, p: usize, a: &[i64], n: usize, c: &[i64]) -> Result<Vec<i64>> {
    if p > n || n > k.dim() {
        return Err(Error::DegreeOutOfRange { degree: n as isize - p as isize, max: k.dim() });
    }
    let gp = cohomology(k, p, &Support::Absolute)?;
    let hn = homology(k, n, &Support::Absolute)?;
    check_len(&gp, a)?;
    check_len(&hn, c)?;
    let z = cap(k, p, &gp.combination(a), n, &hn.combination(c));
    homology(k, n - p, &Support::Absolute)?.coordinates(&z)
}

fn product_degree(m: usize, r: usize, s: usize) -> Result<usize> {
    if r > m || s > m || r + s < m {
        return Err(Error::DegreeOutOfRange { degree: r as isize + s as isize - m as isize, max: m });
    }
    Ok(r + s - m)
}

/// Intersection product `a · b = P(P^{-1}a ⌣ P^{-1}b)` of `a ∈ H_r` and `b ∈ H_s`.
pub fn intersect(ctx: &DualityContext, convention: Convention, r: usize, a: &[i64], s: usize, b: &[i64]) -> Result<Vec<i64>> {
    let m = ctx.dim();
    let q = product_degree(m, r, s)?;
    check_len(ctx.homology(r)?, a)?;
    check_len(ctx.homology(s)?, b)?;
    let (p1, p2) = (m - r, m - s);
    let u = ctx.cohomology(p1)?.combination(&ctx.poincare_inverse_with(convention, r, a)?);
    let v = ctx.cohomology(p2)?.combination(&ctx.poincare_inverse_with(convention, s, b)?);
    let w = ctx.cohomology(p1 + p2)?.coordinates(&cup(ctx.complex(), p1, &u, p2, &v))?;
    let out = ctx.poincare_with(convention, p1 + p2, &w)?;
    debug_assert_eq!(ctx.homology(q)?.len(), out.len());
    Ok(out)
}

/// A class of `H_q(S)` for a subcomplex `S`, with its dense representing cycle.
#[derive(Clone, Debug)]
pub struct LocalizedClass {
    pub support: Subcomplex,
    pub degree: usize,
    pub coordinates: Vec<i64>,
    pub chain: Vec<i64>,
}

impl LocalizedClass {
    pub fn new(k: &OrientedComplex, support: Subcomplex, degree: usize, coordinates: Vec<i64>) -> Result<Self> {
        let g = homology(k, degree, &Support::Sub(&support))?;
        check_len(&g, &coordinates)?;
        let chain = g.combination(&coordinates);
        Ok(LocalizedClass { support, degree, coordinates, chain })
    }

    pub fn from_chain(k: &OrientedComplex, support: Subcomplex, degree: usize, chain: Vec<i64>) -> Result<Self> {
        let coordinates = homology(k, degree, &Support::Sub(&support))?.coordinates(&chain)?;
        Ok(LocalizedClass { support, degree, coordinates, chain })
    }

    /// The fundamental class of an oriented pseudo-manifold subcomplex.
    pub fn fundamental(k: &OrientedComplex, support: Subcomplex) -> Result<Self> {
        let (d, z) = crate::duality::subcomplex_fundamental_cycle(k, &support)?;
        Self::from_chain(k, support, d, z)
    }

    pub fn is_zero(&self) -> bool {
        self.coordinates.iter().all(|&c| c == 0)
    }

    /// Image in `H_q(M)`.
    pub fn push_forward(&self, ctx: &DualityContext) -> Result<Vec<i64>> {
        ctx.homology(self.degree)?.coordinates(&self.chain)
    }

    fn from_model(model: &RelativeModel, degree: usize, coordinates: Vec<i64>) -> Result<Self> {
        let chain = model.homology(degree)?.combination(&coordinates);
        Ok(LocalizedClass { support: model.support().clone(), degree, coordinates, chain })
    }
}

fn same_subcomplex(a: &Subcomplex, b: &Subcomplex) -> bool {
    a.is_subset_of(b) && b.is_subset_of(a)
}

/// Lift a cocycle vanishing on `union ⊆ target` to a cocycle vanishing on
/// `target`, through the restriction `H^n(K, target) -> H^n(K, union)`.
fn lift_relative(k: &OrientedComplex, n: usize, target: &Subcomplex, union: &Subcomplex, w: &[i64]) -> Result<Option<Vec<i64>>> {
    if same_subcomplex(target, union) {
        return Ok(Some(w.to_vec()));
    }
    let gt = cohomology(k, n, &Support::RelativeTo(target))?;
    let gu = cohomology(k, n, &Support::RelativeTo(union))?;
    if !gt.is_torsion_free() || !gu.is_torsion_free() || gt.len() != gu.len() {
        return Ok(None);
    }
    let r = matrix_of(&gt, &gu, |u| u.to_vec())?;
    let Some(inv) = r.inverse_unimodular() else {
        return Ok(None);
    };
    let coords = inv.apply(&gu.coordinates(w)?).ok_or_else(overflow)?;
    Ok(Some(gt.combination(&coords)))
}

/// `sd^#`: evaluate a cochain of `K'` on subdivided simplices of `K`.
fn desubdivide(ctx: &DualityContext, n: usize, w: &[i64]) -> Vec<i64> {
    let sub = ctx.dual_cells().subdivision();
    let k = ctx.complex();
    (0..k.count(n))
        .map(|i| {
            let mut e = vec![0i64; k.count(n)];
            e[i] = 1;
            sub.subdivide_chain(n, &e).iter().zip(w).map(|(a, b)| a * b).sum()
        })
        .collect()
}

/// Localized intersection `H_r(S1) x H_s(S2) -> H_{r+s-m}(S1 ∩ S2)`.
pub fn intersect_localized(
    ctx: &DualityContext,
    convention: Convention,
    a: &LocalizedClass,
    b: &LocalizedClass,
) -> Result<LocalizedClass> {
    let k = ctx.complex();
    let m = ctx.dim();
    let q = product_degree(m, a.degree, b.degree)?;
    let (m1, m2) = (ctx.relative(&a.support)?, ctx.relative(&b.support)?);
    let s = a.support.intersection(&b.support).renamed(format!("{}∩{}", a.support.name(), b.support.name()));
    let target = ctx.relative(&s)?;
    let (p1, p2) = (m - a.degree, m - b.degree);
    let n = p1 + p2;
    let u = m1.cohomology(p1)?.combination(&m1.alexander_inverse_with(convention, a.degree, &a.coordinates)?);
    let v = m2.cohomology(p2)?.combination(&m2.alexander_inverse_with(convention, b.degree, &b.coordinates)?);
    let union = m1.complement().union(m2.complement());
    let w = match lift_relative(k, n, target.complement(), &union, &cup(k, p1, &u, p2, &v))? {
        Some(w) => w,
        None => {
            let sub = ctx.dual_cells().subdivision();
            let kp = sub.child();
            let up = pull_along(kp, k, &sub.retraction_map(&a.support)?, p1, &u);
            let vp = pull_along(kp, k, &sub.retraction_map(&b.support)?, p2, &v);
            let l1 = sub.subdivide_subcomplex(&a.support).complement_full(kp);
            let l2 = sub.subdivide_subcomplex(&b.support).complement_full(kp);
            let lt = sub.subdivide_subcomplex(&s).complement_full(kp);
            let wp = lift_relative(kp, n, &lt, &l1.union(&l2), &cup(kp, p1, &up, p2, &vp))?.ok_or_else(|| {
                Error::NoSolution(format!("cannot lift the product to H^{n}(M, M∖{}) even after subdivision", s.name()))
            })?;
            desubdivide(ctx, n, &wp)
        }
    };
    let coords = target.cohomology(n)?.coordinates(&w)?;
    LocalizedClass::from_model(&target, q, target.alexander_with(convention, n, &coords)?)
}

fn check_map(ctx_m: &DualityContext, ctx_w: &DualityContext, f: &SimplicialMapData) -> Result<()> {
    if f.domain().name() != ctx_m.complex().name() || f.codomain().name() != ctx_w.complex().name() {
        return Err(Error::DimensionMismatch(format!(
            "{} goes {} -> {}, not {} -> {}",
            f.name(),
            f.domain().name(),
            f.codomain().name(),
            ctx_m.complex().name(),
            ctx_w.complex().name()
        )));
    }
    Ok(())
}

/// `M ·_F c = P_M F^* P_W^{-1} c` for `c ∈ H_q(W)`, landing in `H_{q-(w-m)}(M)`.
pub fn intersect_with_map(
    ctx_m: &DualityContext,
    ctx_w: &DualityContext,
    f: &SimplicialMapData,
    convention: Convention,
    q: usize,
    c: &[i64],
) -> Result<Vec<i64>> {
    check_map(ctx_m, ctx_w, f)?;
    let (m, w) = (ctx_m.dim(), ctx_w.dim());
    if q > w || q + m < w {
        return Err(Error::DegreeOutOfRange { degree: q as isize + m as isize - w as isize, max: m });
    }
    let p = w - q;
    let u = ctx_w.cohomology(p)?.combination(&ctx_w.poincare_inverse_with(convention, q, c)?);
    let pulled = ctx_m.cohomology(p)?.coordinates(&f.pull_cochain(p, &u))?;
    ctx_m.poincare_with(convention, p, &pulled)
}

/// Full subcomplex of `M` on the vertices `F` sends into `S̃`.
pub fn preimage_support(f: &SimplicialMapData, s_tilde: &Subcomplex) -> Subcomplex {
    let inside: Vec<usize> = s_tilde.vertices(f.codomain());
    let verts: Vec<usize> = (0..f.domain().num_vertices()).filter(|&v| inside.contains(&f.image(v))).collect();
    Subcomplex::full(f.domain(), format!("{}^-1({})", f.name(), s_tilde.name()), &verts)
}

/// `A_S F^* A_{S̃}^{-1}` for a class on a full subcomplex `S̃` of `W`.
pub fn intersect_with_map_localized(
    ctx_m: &DualityContext,
    ctx_w: &DualityContext,
    f: &SimplicialMapData,
    convention: Convention,
    class: &LocalizedClass,
) -> Result<LocalizedClass> {
    let model_w = ctx_w.relative(&class.support)?;
    intersect_with_map_localized_in(ctx_m, ctx_w, &model_w, f, convention, class)
}

/// As [`intersect_with_map_localized`], reusing a precomputed model of `S̃ ⊆ W`.
pub fn intersect_with_map_localized_in(
    ctx_m: &DualityContext,
    ctx_w: &DualityContext,
    model_w: &RelativeModel,
    f: &SimplicialMapData,
    convention: Convention,
    class: &LocalizedClass,
) -> Result<LocalizedClass> {
    check_map(ctx_m, ctx_w, f)?;
    let (m, w) = (ctx_m.dim(), ctx_w.dim());
    let q = class.degree;
    if q > w || q + m < w {
        return Err(Error::DegreeOutOfRange { degree: q as isize + m as isize - w as isize, max: m });
    }
    let p = w - q;
    let u = model_w.cohomology(p)?.combination(&model_w.alexander_inverse_with(convention, q, &class.coordinates)?);
    let s = preimage_support(f, model_w.support());
    let model = ctx_m.relative(&s)?;
    let pulled = model.cohomology(p)?.coordinates(&f.pull_cochain(p, &u))?;
    LocalizedClass::from_model(&model, m - p, model.alexander_with(convention, p, &pulled)?)
}

/// One connected piece of a localized class.
#[derive(Clone, Debug)]
pub struct Residue {
    pub local: LocalizedClass,
    /// Image in `H_q(M)`.
    pub global: Vec<i64>,
}

/// Split a localized class over the connected components of its support.
pub fn residue_decompose(ctx: &DualityContext, class: &LocalizedClass) -> Result<Vec<Residue>> {
    let k = ctx.complex();
    let q = class.degree;
    class
        .support
        .components(k)
        .into_iter()
        .map(|c| {
            let chain: Vec<i64> =
                class.chain.iter().enumerate().map(|(i, &x)| if c.contains(q, i) { x } else { 0 }).collect();
            let local = LocalizedClass::from_chain(k, c, q, chain)?;
            let global = local.push_forward(ctx)?;
            Ok(Residue { local, global })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::kronecker;
    use crate::catalog;

    fn torus() -> (OrientedComplex, DualityContext) {
        let t = catalog::torus_grid(3, 3);
        let ctx = DualityContext::new(&t).unwrap();
        (t, ctx)
    }

    fn class_of(ctx: &DualityContext, sub: &Subcomplex) -> Vec<i64> {
        let (d, z) = crate::duality::subcomplex_fundamental_cycle(ctx.complex(), sub).unwrap();
        ctx.homology(d).unwrap().coordinates(&z).unwrap()
    }

    fn abs(v: &[i64]) -> Vec<i64> {
        v.iter().map(|x| x.abs()).collect()
    }

    #[test]
    fn cap_with_fundamental_class_is_poincare() {
        for k in catalog::test_manifolds() {
            let ctx = DualityContext::new(&k).unwrap();
            let m = k.dim();
            let fc = ctx.fundamental_class().unwrap();
            for p in 0..=m {
                for i in 0..ctx.cohomology(p).unwrap().len() {
                    let e: Vec<i64> = (0..ctx.cohomology(p).unwrap().len()).map(|j| (i == j) as i64).collect();
                    assert_eq!(cap_classes(&k, p, &e, m, &fc).unwrap(), ctx.poincare(p, &e).unwrap(), "{} p={p}", k.name());
                }
            }
        }
    }

    #[test]
    fn unit_is_neutral() {
        let (t, ctx) = torus();
        let one = ctx.cohomology(0).unwrap().coordinates(&vec![1; t.count(0)]).unwrap();
        for v in [vec![1, 0], vec![0, 1], vec![2, -3]] {
            assert_eq!(cup_classes(&t, 0, &one, 1, &v).unwrap(), v);
        }
        let c = vec![1, 2];
        assert_eq!(cap_classes(&t, 0, &one, 1, &c).unwrap(), c);
    }

    #[test]
    fn torus_cup_is_alternating_and_unimodular() {
        let (t, ctx) = torus();
        let h1 = ctx.cohomology(1).unwrap();
        let ab = cup_classes(&t, 1, &[1, 0], 1, &[0, 1]).unwrap();
        let ba = cup_classes(&t, 1, &[0, 1], 1, &[1, 0]).unwrap();
        assert_eq!(ab, ba.iter().map(|x| -x).collect::<Vec<_>>());
        let w = cup(&t, 1, &h1.generators[0], 1, &h1.generators[1]);
        assert_eq!(kronecker(&w, &t.fundamental_cycle().unwrap()).unwrap().abs(), 1);
    }

    #[test]
    fn pairing_matrix_on_torus() {
        // <M, a_i ⌣ a_j> in the cohomology generator basis
        let (t, ctx) = torus();
        let h1 = ctx.cohomology(1).unwrap();
        let z = t.fundamental_cycle().unwrap();
        let pair = |i: usize, j: usize| kronecker(&cup(&t, 1, &h1.generators[i], 1, &h1.generators[j]), &z).unwrap();
        let m = [[pair(0, 0), pair(0, 1)], [pair(1, 0), pair(1, 1)]];
        assert_eq!(m[0][0], 0);
        assert_eq!(m[1][1], 0);
        assert_eq!(m[0][1], -m[1][0]);
        assert_eq!(m[0][1].abs(), 1);
    }

    #[test]
    fn intersections_on_torus() {
        let (t, ctx) = torus();
        let fc = ctx.fundamental_class().unwrap();
        let row = class_of(&ctx, &catalog::torus_row(&t, 3, 3, 0));
        let row2 = class_of(&ctx, &catalog::torus_row(&t, 3, 3, 1));
        let col = class_of(&ctx, &catalog::torus_column(&t, 3, 3, 0));
        let p = Convention::Primary;
        assert_eq!(intersect(&ctx, p, 2, &fc, 1, &row).unwrap(), row);
        assert_eq!(abs(&intersect(&ctx, p, 1, &row, 1, &col).unwrap()), vec![1]);
        assert_eq!(intersect(&ctx, p, 1, &row, 1, &row2).unwrap(), vec![0]);
        let ab = intersect(&ctx, p, 1, &row, 1, &col).unwrap();
        let ba = intersect(&ctx, p, 1, &col, 1, &row).unwrap();
        assert_eq!(ab, vec![-ba[0]]);
        assert!(intersect(&ctx, p, 0, &[1], 1, &row).is_err());
    }

    #[test]
    fn localized_reduces_to_global_on_whole_support() {
        let (t, ctx) = torus();
        let whole = Subcomplex::whole(&t);
        let row = class_of(&ctx, &catalog::torus_row(&t, 3, 3, 0));
        let col = class_of(&ctx, &catalog::torus_column(&t, 3, 3, 0));
        let a = LocalizedClass::new(&t, whole.clone(), 1, row.clone()).unwrap();
        let b = LocalizedClass::new(&t, whole, 1, col.clone()).unwrap();
        let loc = intersect_localized(&ctx, Convention::Primary, &a, &b).unwrap();
        assert_eq!(loc.coordinates, intersect(&ctx, Convention::Primary, 1, &row, 1, &col).unwrap());
    }

    #[test]
    fn meridian_meets_longitude_once() {
        let (t, ctx) = torus();
        let a = LocalizedClass::fundamental(&t, catalog::torus_row(&t, 3, 3, 0)).unwrap();
        let b = LocalizedClass::fundamental(&t, catalog::torus_column(&t, 3, 3, 0)).unwrap();
        let loc = intersect_localized(&ctx, Convention::Primary, &a, &b).unwrap();
        assert_eq!(loc.support.vertices(&t), vec![0]);
        assert_eq!(abs(&loc.coordinates), vec![1]);
        let global = intersect(&ctx, Convention::Primary, 1, &a.push_forward(&ctx).unwrap(), 1, &b.push_forward(&ctx).unwrap()).unwrap();
        assert_eq!(loc.push_forward(&ctx).unwrap(), global);
    }

    #[test]
    fn disjoint_supports_give_zero() {
        let (t, ctx) = torus();
        let a = LocalizedClass::fundamental(&t, catalog::torus_row(&t, 3, 3, 0)).unwrap();
        let b = LocalizedClass::fundamental(&t, catalog::torus_row(&t, 3, 3, 1)).unwrap();
        let loc = intersect_localized(&ctx, Convention::Primary, &a, &b).unwrap();
        assert!(loc.support.is_empty() && loc.is_zero());
    }

    fn projection(t: &Arc<OrientedComplex>, c: &Arc<OrientedComplex>) -> SimplicialMapData {
        SimplicialMapData::new("pr", t.clone(), c.clone(), (0..9).map(|v| v / 3).collect()).unwrap()
    }

    #[test]
    fn intersections_with_maps() {
        let t = Arc::new(catalog::torus_grid(3, 3));
        let ctx = DualityContext::new(&t).unwrap();
        let id = SimplicialMapData::identity(t.clone());
        let row = class_of(&ctx, &catalog::torus_row(&t, 3, 3, 0));
        assert_eq!(intersect_with_map(&ctx, &ctx, &id, Convention::Primary, 1, &row).unwrap(), row);
        let fc = ctx.fundamental_class().unwrap();
        assert_eq!(intersect_with_map(&ctx, &ctx, &id, Convention::Primary, 2, &fc).unwrap(), fc);
        let c3 = Arc::new(catalog::circle(3));
        let ctx_c = DualityContext::new(&c3).unwrap();
        let incl = SimplicialMapData::new("i", c3.clone(), t.clone(), (0..3).map(|i| catalog::torus_vertex(3, i, 0)).collect()).unwrap();
        let col = class_of(&ctx, &catalog::torus_column(&t, 3, 3, 0));
        assert_eq!(abs(&intersect_with_map(&ctx_c, &ctx, &incl, Convention::Primary, 1, &col).unwrap()), vec![1]);
        assert_eq!(intersect_with_map(&ctx_c, &ctx, &incl, Convention::Primary, 2, &fc).unwrap(), ctx_c.fundamental_class().unwrap());
    }

    #[test]
    fn localized_map_intersections() {
        let t = Arc::new(catalog::torus_grid(3, 3));
        let c3 = Arc::new(catalog::circle(3));
        let (ctx_t, ctx_c) = (DualityContext::new(&t).unwrap(), DualityContext::new(&c3).unwrap());
        let pr = projection(&t, &c3);
        let pt = LocalizedClass::new(&c3, Subcomplex::full(&c3, "pt", &[0]), 0, vec![1]).unwrap();
        let fiber = intersect_with_map_localized(&ctx_t, &ctx_c, &pr, Convention::Primary, &pt).unwrap();
        assert_eq!(fiber.support.vertices(&t), vec![0, 1, 2]);
        assert_eq!(abs(&fiber.coordinates), vec![1]);
        assert_eq!(fiber.push_forward(&ctx_t).unwrap(), intersect_with_map(&ctx_t, &ctx_c, &pr, Convention::Primary, 0, &pt.push_forward(&ctx_c).unwrap()).unwrap());
        let whole = LocalizedClass::fundamental(&c3, Subcomplex::whole(&c3)).unwrap();
        let lifted = intersect_with_map_localized(&ctx_t, &ctx_c, &pr, Convention::Primary, &whole).unwrap();
        assert_eq!(lifted.push_forward(&ctx_t).unwrap(), ctx_t.fundamental_class().unwrap());
        let constant = SimplicialMapData::new("c", t.clone(), c3.clone(), vec![1; 9]).unwrap();
        let empty = intersect_with_map_localized(&ctx_t, &ctx_c, &constant, Convention::Primary, &pt).unwrap();
        assert!(empty.support.is_empty() && empty.is_zero());
    }

    #[test]
    fn residues() {
        let t = Arc::new(catalog::torus_grid(3, 3));
        let c3 = Arc::new(catalog::circle(3));
        let (ctx_t, ctx_c) = (DualityContext::new(&t).unwrap(), DualityContext::new(&c3).unwrap());
        let pr = projection(&t, &c3);
        let single = LocalizedClass::new(&c3, Subcomplex::full(&c3, "pt", &[0]), 0, vec![1]).unwrap();
        let one = intersect_with_map_localized(&ctx_t, &ctx_c, &pr, Convention::Primary, &single).unwrap();
        let r = residue_decompose(&ctx_t, &one).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].global, one.push_forward(&ctx_t).unwrap());
        // two antipodal fibers with opposite signs: the total is nullhomologous
        let t = Arc::new(catalog::torus_grid(6, 3));
        let c6 = Arc::new(catalog::circle(6));
        let (ctx_t, ctx_c) = (DualityContext::new(&t).unwrap(), DualityContext::new(&c6).unwrap());
        let pr = SimplicialMapData::new("pr", t.clone(), c6.clone(), (0..18).map(|v| v / 3).collect()).unwrap();
        let two = Subcomplex::full(&c6, "two", &[0, 3]);
        let mut z = vec![0; c6.count(0)];
        z[c6.find(&[0]).unwrap()] = 1;
        z[c6.find(&[3]).unwrap()] = -1;
        let dipole = LocalizedClass::from_chain(&c6, two, 0, z).unwrap();
        let loc = intersect_with_map_localized(&ctx_t, &ctx_c, &pr, Convention::Primary, &dipole).unwrap();
        let parts = residue_decompose(&ctx_t, &loc).unwrap();
        assert_eq!(parts.len(), 2);
        assert!(loc.push_forward(&ctx_t).unwrap().iter().all(|&x| x == 0));
        assert!(parts.iter().all(|p| abs(&p.local.coordinates) == vec![1]));
        assert!(parts[0].global.iter().any(|&x| x != 0));
        let sum: Vec<i64> = (0..2).map(|i| parts.iter().map(|p| p.global[i]).sum()).collect();
        assert_eq!(sum, loc.push_forward(&ctx_t).unwrap());
    }
}
