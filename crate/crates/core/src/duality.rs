//! Poincaré and Alexander duality through dual cells, Thom classes and the
//! primed sign conventions.
//!
//! All classes are coordinates in the generator bases of `K` itself. A
//! cochain `u` on `K` is pulled back to `K'` along the last-vertex map and
//! evaluated on dual cells, so `P(u)` puts `⟨s*, π^# u⟩` on each
//! `(m-p)`-simplex `s`. With the dual-cell signs used here this agrees with
//! `u ⌢ [M]` on homology, so no extra degree sign is needed.
//!
//! For a full subcomplex `S`, `H^*(M, M∖S)` is modelled by cochains vanishing on
//! the full subcomplex `L_S` spanned by the vertices outside `S`, and the
//! Alexander map uses the retraction `π_S` of `K'` that keeps `M'∖S'` inside `L_S`.

use serde::Serialize;

use crate::algebra::{cohomology, homology, matrix_of, GradedGroup, Support};
use crate::complex::{pseudo_manifold_analyze, DualCellComplex, Ordering, OrientedComplex, Subcomplex};
use crate::error::{Error, Result};
use crate::integer::IntegerMatrix;
use crate::products::cap;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    #[default]
    Primary,
    Primed,
}

impl std::str::FromStr for Convention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "primary" => Ok(Convention::Primary),
            "primed" => Ok(Convention::Primed),
            other => Err(Error::Parse(format!("unknown convention {other:?}; use primary or primed"))),
        }
    }
}

/// `(-1)^{p(m-p)}`, relating the left and right cap conventions.
pub fn primed_sign(p: usize, m: usize) -> i64 {
    if p <= m && (p * (m - p)) % 2 == 1 {
        -1
    } else {
        1
    }
}

pub(crate) fn convention_sign(convention: Convention, p: usize, m: usize) -> i64 {
    match convention {
        Convention::Primary => 1,
        Convention::Primed => primed_sign(p, m),
    }
}

pub(crate) fn overflow() -> Error {
    Error::Overflow("class coordinates exceed 64 bits".into())
}

fn apply(m: &IntegerMatrix, v: &[i64]) -> Result<Vec<i64>> {
    if m.cols() != v.len() {
        return Err(Error::DimensionMismatch(format!("{} coordinates for a group of rank {}", v.len(), m.cols())));
    }
    m.apply(v).ok_or_else(overflow)
}

fn invert(m: &IntegerMatrix, src: &GradedGroup, dst: &GradedGroup) -> Option<IntegerMatrix> {
    if src.is_torsion_free() && dst.is_torsion_free() {
        m.inverse_unimodular()
    } else {
        None
    }
}

fn torsion_error(what: &str, g: &GradedGroup) -> Error {
    Error::Torsion(vec![format!("{what} in degree {} has torsion {:?}", g.degree, g.torsion)])
}

/// Dual-cell data and the Poincaré isomorphism of a closed oriented manifold.
#[derive(Clone, Debug)]
pub struct DualityContext {
    dual: DualCellComplex,
    last_vertex: Vec<usize>,
    homology: Vec<GradedGroup>,
    cohomology: Vec<GradedGroup>,
    poincare: Vec<IntegerMatrix>,
    poincare_inv: Vec<Option<IntegerMatrix>>,
}

impl DualityContext {
    pub fn new(k: &OrientedComplex) -> Result<Self> {
        k.validate_manifold()?;
        let dual = DualCellComplex::new(k)?;
        let last_vertex = dual.subdivision().last_vertex_map();
        let m = k.dim();
        let homology = (0..=m).map(|q| homology(k, q, &Support::Absolute)).collect::<Result<Vec<_>>>()?;
        let cohomology = (0..=m).map(|p| cohomology(k, p, &Support::Absolute)).collect::<Result<Vec<_>>>()?;
        let mut ctx = DualityContext { dual, last_vertex, homology, cohomology, poincare: Vec::new(), poincare_inv: Vec::new() };
        for p in 0..=m {
            let mat = matrix_of(&ctx.cohomology[p], &ctx.homology[m - p], |u| ctx.poincare_chain(p, u))?;
            ctx.poincare_inv.push(invert(&mat, &ctx.cohomology[p], &ctx.homology[m - p]));
            ctx.poincare.push(mat);
        }
        Ok(ctx)
    }

    pub fn complex(&self) -> &OrientedComplex {
        self.dual.base()
    }

    pub fn dim(&self) -> usize {
        self.complex().dim()
    }

    pub fn dual_cells(&self) -> &DualCellComplex {
        &self.dual
    }

    pub fn homology(&self, q: usize) -> Result<&GradedGroup> {
        self.homology.get(q).ok_or(Error::DegreeOutOfRange { degree: q as isize, max: self.dim() })
    }

    pub fn cohomology(&self, p: usize) -> Result<&GradedGroup> {
        self.cohomology.get(p).ok_or(Error::DegreeOutOfRange { degree: p as isize, max: self.dim() })
    }

    /// Coordinates of `[M]` in `H_m`.
    pub fn fundamental_class(&self) -> Result<Vec<i64>> {
        let z = self.complex().fundamental_cycle()?;
        self.homology[self.dim()].coordinates(&z)
    }

    /// `⟨s*, r^# u⟩` on every `(m-p)`-simplex `s`, via the retraction `r` of `K'`.
    fn dual_evaluation(&self, p: usize, u: &[i64], r: &[usize], keep: impl Fn(usize) -> bool) -> Vec<i64> {
        let k = self.complex();
        let m = k.dim();
        let kp = self.dual.subdivision().child();
        let pulled = crate::algebra::pull_along(kp, k, r, p, u);
        (0..k.count(m - p))
            .map(|s| {
                if !keep(s) {
                    return 0;
                }
                self.dual.dual_cell(m - p, s).iter().map(|&(j, c)| c * pulled[j]).sum::<i64>()
            })
            .collect()
    }

    /// The Poincaré chain map `C^p(K) -> C_{m-p}(K)`.
    pub fn poincare_chain(&self, p: usize, u: &[i64]) -> Vec<i64> {
        self.dual_evaluation(p, u, &self.last_vertex, |_| true)
    }

    /// Matrix of `P_M : H^p -> H_{m-p}` in generator coordinates.
    pub fn poincare_matrix(&self, p: usize) -> Result<&IntegerMatrix> {
        self.poincare.get(p).ok_or(Error::DegreeOutOfRange { degree: p as isize, max: self.dim() })
    }

    pub fn poincare(&self, p: usize, coords: &[i64]) -> Result<Vec<i64>> {
        apply(self.poincare_matrix(p)?, coords)
    }

    /// `P_M^{-1} : H_q -> H^{m-q}`.
    pub fn poincare_inverse(&self, q: usize, coords: &[i64]) -> Result<Vec<i64>> {
        let m = self.dim();
        if q > m {
            return Err(Error::DegreeOutOfRange { degree: q as isize, max: m });
        }
        match &self.poincare_inv[m - q] {
            Some(inv) => apply(inv, coords),
            None => Err(torsion_error("H^*(M)", &self.cohomology[m - q])),
        }
    }

    /// `P` or `P' = (-1)^{p(m-p)} P` on `H^p`.
    pub fn poincare_with(&self, convention: Convention, p: usize, coords: &[i64]) -> Result<Vec<i64>> {
        let sign = convention_sign(convention, p, self.dim());
        Ok(self.poincare(p, coords)?.into_iter().map(|x| sign * x).collect())
    }

    pub fn poincare_inverse_with(&self, convention: Convention, q: usize, coords: &[i64]) -> Result<Vec<i64>> {
        let m = self.dim();
        let sign = convention_sign(convention, m.saturating_sub(q), m);
        Ok(self.poincare_inverse(q, coords)?.into_iter().map(|x| sign * x).collect())
    }

    /// Relative cochain model and Alexander isomorphism for a full subcomplex `S`.
    pub fn relative(&self, s: &Subcomplex) -> Result<RelativeModel> {
        RelativeModel::new(self, s)
    }
}

/// `H^*(M, M∖S)`, `H_*(S)` and the Alexander isomorphism between them.
#[derive(Clone, Debug)]
pub struct RelativeModel {
    support: Subcomplex,
    complement: Subcomplex,
    retraction: Vec<usize>,
    cohomology: Vec<GradedGroup>,
    homology: Vec<GradedGroup>,
    alexander: Vec<IntegerMatrix>,
    alexander_inv: Vec<Option<IntegerMatrix>>,
    dim: usize,
}

impl RelativeModel {
    fn new(ctx: &DualityContext, s: &Subcomplex) -> Result<Self> {
        let k = ctx.complex();
        let m = k.dim();
        if !s.is_full(k) {
            return Err(Error::NotFull(s.name().to_string()));
        }
        let complement = s.complement_full(k);
        let retraction = ctx.dual.subdivision().retraction_map(s)?;
        let cohomology = (0..=m)
            .map(|p| cohomology(k, p, &Support::RelativeTo(&complement)))
            .collect::<Result<Vec<_>>>()?;
        let homology = (0..=m).map(|q| homology(k, q, &Support::Sub(s))).collect::<Result<Vec<_>>>()?;
        let mut model = RelativeModel {
            support: s.clone(),
            complement,
            retraction,
            cohomology,
            homology,
            alexander: Vec::new(),
            alexander_inv: Vec::new(),
            dim: m,
        };
        for p in 0..=m {
            let mat = matrix_of(&model.cohomology[p], &model.homology[m - p], |u| model.alexander_chain(ctx, p, u))?;
            model.alexander_inv.push(invert(&mat, &model.cohomology[p], &model.homology[m - p]));
            model.alexander.push(mat);
        }
        Ok(model)
    }

    pub fn support(&self) -> &Subcomplex {
        &self.support
    }

    /// `L_S`, the full subcomplex on the vertices outside `S`.
    pub fn complement(&self) -> &Subcomplex {
        &self.complement
    }

    pub fn cohomology(&self, p: usize) -> Result<&GradedGroup> {
        self.cohomology.get(p).ok_or(Error::DegreeOutOfRange { degree: p as isize, max: self.dim })
    }

    pub fn homology(&self, q: usize) -> Result<&GradedGroup> {
        self.homology.get(q).ok_or(Error::DegreeOutOfRange { degree: q as isize, max: self.dim })
    }

    /// `A(u)` on `(m-p)`-simplices of `S`.
    pub fn alexander_chain(&self, ctx: &DualityContext, p: usize, u: &[i64]) -> Vec<i64> {
        let m = ctx.dim();
        ctx.dual_evaluation(p, u, &self.retraction, |s| self.support.contains(m - p, s))
    }

    pub fn alexander_matrix(&self, p: usize) -> Result<&IntegerMatrix> {
        self.alexander.get(p).ok_or(Error::DegreeOutOfRange { degree: p as isize, max: self.dim })
    }

    pub fn alexander(&self, p: usize, coords: &[i64]) -> Result<Vec<i64>> {
        apply(self.alexander_matrix(p)?, coords)
    }

    /// `A^{-1} : H_q(S) -> H^{m-q}(M, M∖S)`.
    pub fn alexander_inverse(&self, q: usize, coords: &[i64]) -> Result<Vec<i64>> {
        if q > self.dim {
            return Err(Error::DegreeOutOfRange { degree: q as isize, max: self.dim });
        }
        match &self.alexander_inv[self.dim - q] {
            Some(inv) => apply(inv, coords),
            None => Err(torsion_error("H^*(M, M∖S)", &self.cohomology[self.dim - q])),
        }
    }

    pub fn alexander_with(&self, convention: Convention, p: usize, coords: &[i64]) -> Result<Vec<i64>> {
        let sign = convention_sign(convention, p, self.dim);
        Ok(self.alexander(p, coords)?.into_iter().map(|x| sign * x).collect())
    }

    pub fn alexander_inverse_with(&self, convention: Convention, q: usize, coords: &[i64]) -> Result<Vec<i64>> {
        let sign = convention_sign(convention, self.dim.saturating_sub(q), self.dim);
        Ok(self.alexander_inverse(q, coords)?.into_iter().map(|x| sign * x).collect())
    }

    /// `j^*`: relative classes viewed as absolute ones.
    pub fn forget_support(&self, ctx: &DualityContext, p: usize, coords: &[i64]) -> Result<Vec<i64>> {
        let u = self.cohomology(p)?.combination(coords);
        ctx.cohomology(p)?.coordinates(&u)
    }

    /// `i_*`: classes of `S` pushed into `M`.
    pub fn push_into(&self, ctx: &DualityContext, q: usize, coords: &[i64]) -> Result<Vec<i64>> {
        let z = self.homology(q)?.combination(coords);
        ctx.homology(q)?.coordinates(&z)
    }
}

/// The Thom class `Ψ_X = A^{-1}[X]`, or its primed variant.
#[derive(Clone, Debug, Serialize)]
pub struct ThomClassData {
    pub subject: String,
    pub d: usize,
    pub k: usize,
    pub convention: Convention,
    /// Relative `k`-cocycle on `K`, vanishing on `L_X`.
    pub cocycle: Vec<i64>,
    /// Coordinates in `H^k(M, M∖X)`.
    pub coordinates: Vec<i64>,
}

/// Dense fundamental cycle of an oriented pseudo-manifold subcomplex, summed over components.
pub fn subcomplex_fundamental_cycle(k: &OrientedComplex, x: &Subcomplex) -> Result<(usize, Vec<i64>)> {
    let d = x.dim().ok_or_else(|| Error::Empty(format!("{} is empty", x.name())))?;
    let report = pseudo_manifold_analyze(k, x, d);
    if !report.is_pseudo_manifold {
        let reason = report.failures.first().cloned().unwrap_or_default();
        return Err(if report.pure && report.two_cofaces {
            Error::NonOrientable(format!("{}: {reason}", x.name()))
        } else {
            Error::NotManifold(format!("{} is not a {d}-pseudo-manifold: {reason}", x.name()))
        });
    }
    let mut z = vec![0i64; k.count(d)];
    for c in &report.fundamental_cycles {
        for (a, b) in z.iter_mut().zip(c) {
            *a += b;
        }
    }
    Ok((d, z))
}

pub fn thom_class_in(
    ctx: &DualityContext,
    model: &RelativeModel,
    convention: Convention,
) -> Result<ThomClassData> {
    let x = model.support();
    let (d, z) = subcomplex_fundamental_cycle(ctx.complex(), x)?;
    let m = ctx.dim();
    let k = m - d;
    let fx = model.homology(d)?.coordinates(&z)?;
    let mut coords = model.alexander_inverse(d, &fx)?;
    if convention == Convention::Primed {
        let s = primed_sign(d, m);
        coords.iter_mut().for_each(|c| *c *= s);
    }
    let cocycle = model.cohomology(k)?.combination(&coords);
    Ok(ThomClassData { subject: x.name().to_string(), d, k, convention, cocycle, coordinates: coords })
}

pub fn thom_class(ctx: &DualityContext, x: &Subcomplex, convention: Convention) -> Result<ThomClassData> {
    let model = ctx.relative(x)?;
    thom_class_in(ctx, &model, convention)
}

#[derive(Clone, Debug, Serialize)]
pub struct PentahedronReport {
    pub subject: String,
    /// `P_M ∘ j^* = i_* ∘ A` on every generator of `H^*(M, M∖X)`.
    pub commutes: bool,
    /// `j^* Ψ_X = P_M^{-1} i_*[X]`.
    pub thom_consistent: bool,
    /// `P_X` and `T_{M,X}` are isomorphisms; only evaluated when `X` passes the manifold check.
    pub thom_isomorphism: Option<bool>,
    pub failures: Vec<String>,
}

fn restrict_as_complex(k: &OrientedComplex, x: &Subcomplex, d: usize, z: &[i64]) -> Result<OrientedComplex> {
    let mut verts = x.vertices(k);
    verts.sort_unstable();
    let index = |v: usize| verts.binary_search(&v).expect("vertex of the subcomplex");
    let tops: Vec<Vec<usize>> =
        x.indices(d).into_iter().map(|i| k.simplex(d, i).iter().map(|&v| index(v)).collect()).collect();
    let signs: Vec<i8> = x.indices(d).into_iter().map(|i| z[i] as i8).collect();
    let labels = verts.iter().map(|&v| k.label(v).to_string()).collect();
    OrientedComplex::new(x.name(), labels, tops, Some(signs), Ordering::Local)
}

/// `P_X = · ⌢ [X] : H^p(X) -> H_{d-p}(X)`.
pub fn cap_with_subcomplex(k: &OrientedComplex, x: &Subcomplex, p: usize) -> Result<IntegerMatrix> {
    let (d, z) = subcomplex_fundamental_cycle(k, x)?;
    if p > d {
        return Err(Error::DegreeOutOfRange { degree: p as isize, max: d });
    }
    let src = cohomology(k, p, &Support::Sub(x))?;
    let dst = homology(k, d - p, &Support::Sub(x))?;
    matrix_of(&src, &dst, |u| cap(k, p, u, d, &z))
}

pub fn pentahedron_check(ctx: &DualityContext, x: &Subcomplex) -> Result<PentahedronReport> {
    let model = ctx.relative(x)?;
    let m = ctx.dim();
    let (d, z) = subcomplex_fundamental_cycle(ctx.complex(), x)?;
    let k = m - d;
    let mut failures = Vec::new();
    let mut commutes = true;
    for q in 0..=m {
        let g = model.cohomology(q)?;
        for i in 0..g.len() {
            let e: Vec<i64> = (0..g.len()).map(|j| (i == j) as i64).collect();
            let left = ctx.poincare(q, &model.forget_support(ctx, q, &e)?)?;
            let right = model.push_into(ctx, m - q, &model.alexander(q, &e)?)?;
            if left != right {
                commutes = false;
                failures.push(format!("degree {q}, generator {i}: P j* = {left:?} but i* A = {right:?}"));
            }
        }
    }
    let psi = thom_class_in(ctx, &model, Convention::Primary)?;
    let lhs = model.forget_support(ctx, k, &psi.coordinates)?;
    let ix = ctx.homology(d)?.coordinates(&z)?;
    let rhs = ctx.poincare_inverse(d, &ix)?;
    let thom_consistent = lhs == rhs;
    if !thom_consistent {
        failures.push(format!("j* Ψ = {lhs:?} but P^-1 i*[X] = {rhs:?}"));
    }
    let is_manifold = d == 0
        || restrict_as_complex(ctx.complex(), x, d, &z).and_then(|c| c.validate_manifold()).is_ok();
    let thom_isomorphism = if is_manifold {
        let mut ok = true;
        for p in 0..=d {
            let px = cap_with_subcomplex(ctx.complex(), x, p)?;
            let a = model.alexander_matrix(p + k)?;
            if !px.is_unimodular() || !a.is_unimodular() {
                ok = false;
                failures.push(format!("degree {p}: P_X or A is not invertible"));
            }
        }
        Some(ok)
    } else {
        None
    };
    Ok(PentahedronReport { subject: x.name().to_string(), commutes, thom_consistent, thom_isomorphism, failures })
}
