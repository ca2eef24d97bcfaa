//! Global coincidence invariants: the Lefschetz number, the cohomology class
//! `L(f, g)` and the homology class `Λ(f, g)`, and their multi-map versions.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{induced_map, GradedGroup, SimplicialMapData, Variance};
use crate::complex::{graph_subcomplex, staircase_product, GraphCycle, OrientedComplex, ProductComplex};
use crate::duality::{Convention, DualityContext};
use crate::error::{Error, Result};
use crate::integer::IntegerMatrix;
use crate::products::{cup, intersect, intersect_with_map};

type Matrix = Vec<Vec<BigRational>>;

fn free_block(m: &IntegerMatrix, src: &GradedGroup, dst: &GradedGroup) -> Matrix {
    let (ts, td) = (src.torsion.len(), dst.torsion.len());
    (td..m.rows()).map(|r| (ts..m.cols()).map(|c| BigRational::from_integer(m[(r, c)].clone())).collect()).collect()
}

fn mat_mul(a: &Matrix, b: &Matrix, inner: usize) -> Matrix {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(BigRational::zero(), |acc, k| acc + &row[k] * &b[k][j]))
                .collect()
        })
        .collect()
}

fn rational_inverse(a: &Matrix) -> Option<Matrix> {
    let n = a.len();
    let mut m: Matrix = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !m[r][c].is_zero())?;
        m.swap(c, p);
        let inv = m[c][c].recip();
        m[c].iter_mut().for_each(|x| *x *= &inv);
        for r in 0..n {
            if r != c && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                let pivot = m[c].clone();
                m[r].iter_mut().zip(&pivot).for_each(|(x, y)| *x -= &f * y);
            }
        }
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

fn same_dimension(f: &SimplicialMapData, g: &SimplicialMapData) -> Result<()> {
    if f.domain().name() != g.domain().name() || f.codomain().name() != g.codomain().name() {
        return Err(Error::DimensionMismatch(format!("{} and {} have different domains or codomains", f.name(), g.name())));
    }
    Ok(())
}

/// `Σ_p (-1)^p tr(f^* P_N^{-1} g_* P_M)` on `H^p(M; ℚ)`, defined when `dim M = dim N`.
pub fn lefschetz_number(ctx_m: &DualityContext, ctx_n: &DualityContext, f: &SimplicialMapData, g: &SimplicialMapData) -> Result<BigRational> {
    same_dimension(f, g)?;
    let m = ctx_m.dim();
    if ctx_n.dim() != m {
        return Err(Error::DimensionMismatch(format!(
            "the Lefschetz number needs equal dimensions, got {m} and {}",
            ctx_n.dim()
        )));
    }
    let mut total = BigRational::zero();
    for p in 0..=m {
        let q = m - p;
        let (hm, hn) = (ctx_m.cohomology(p)?, ctx_n.cohomology(p)?);
        let (km, kn) = (ctx_m.homology(q)?, ctx_n.homology(q)?);
        let fp = free_block(&induced_map(f, p, Variance::Cohomology)?, hn, hm);
        let gq = free_block(&induced_map(g, q, Variance::Homology)?, km, kn);
        let pm = free_block(ctx_m.poincare_matrix(p)?, hm, km);
        let pn = free_block(ctx_n.poincare_matrix(p)?, hn, kn);
        let pn_inv = rational_inverse(&pn)
            .ok_or_else(|| Error::NoSolution(format!("Poincaré map of {} is singular in degree {p}", ctx_n.complex().name())))?;
        let (rm, rn) = (hm.free_rank, hn.free_rank);
        let chain = mat_mul(&fp, &mat_mul(&pn_inv, &mat_mul(&gq, &pm, rm), kn.free_rank), rn);
        let trace = (0..rm).fold(BigRational::zero(), |acc, i| acc + &chain[i][i]);
        if p % 2 == 0 {
            total += trace;
        } else {
            total -= trace;
        }
    }
    Ok(total)
}

/// Decimal rendering of a rational, `a` or `a/b`.
pub fn rational_string(q: &BigRational) -> String {
    if q.denom() == &BigInt::one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// A class with its degree and generator coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedClass {
    pub degree: usize,
    pub coordinates: Vec<i64>,
}

impl GradedClass {
    pub fn is_zero(&self) -> bool {
        self.coordinates.iter().all(|&c| c == 0)
    }
}

/// `M x N`, its duality data and the graph of `g` inside it.
pub struct GraphSetting {
    pub product: ProductComplex,
    pub context: DualityContext,
    pub graph: GraphCycle,
    /// `x -> (x, f x)`.
    pub lift: SimplicialMapData,
}

impl GraphSetting {
    pub fn new(f: &SimplicialMapData, g: &SimplicialMapData) -> Result<Self> {
        same_dimension(f, g)?;
        f.check_order_compatible()?;
        g.check_order_compatible()?;
        let product = staircase_product(f.domain(), f.codomain());
        let graph = graph_subcomplex(g, &product)?;
        let id = SimplicialMapData::identity(f.domain_arc().clone());
        let lift = SimplicialMapData::pair(&id, f, &product)?.renamed(format!("(1,{})", f.name()));
        let context = DualityContext::new(product.complex())?;
        Ok(GraphSetting { product, context, graph, lift })
    }

    pub fn complex(&self) -> &OrientedComplex {
        self.product.complex()
    }
}

/// `Λ(f, g) = M ·_{(1,f)} [Γ_g]` in `H_{m-n}(M)`.
pub fn global_class_in(ctx_m: &DualityContext, setting: &GraphSetting, convention: Convention) -> Result<GradedClass> {
    let m = ctx_m.dim();
    let n = setting.context.dim() - m;
    let gamma = setting.context.homology(m)?.coordinates(&setting.graph.cycle)?;
    let coords = intersect_with_map(ctx_m, &setting.context, &setting.lift, convention, m, &gamma)?;
    Ok(GradedClass { degree: m - n, coordinates: coords })
}

pub fn global_class(ctx_m: &DualityContext, f: &SimplicialMapData, g: &SimplicialMapData, convention: Convention) -> Result<GradedClass> {
    let setting = GraphSetting::new(f, g)?;
    global_class_in(ctx_m, &setting, convention)
}

/// `N x N` with the diagonal, for the cohomology class.
pub struct DiagonalSetting {
    pub product: ProductComplex,
    pub context: DualityContext,
    pub diagonal: GraphCycle,
}

impl DiagonalSetting {
    pub fn new(n: &Arc<OrientedComplex>) -> Result<Self> {
        let product = staircase_product(n, n);
        let diagonal = graph_subcomplex(&SimplicialMapData::identity(n.clone()), &product)?;
        let context = DualityContext::new(product.complex())?;
        Ok(DiagonalSetting { product, context, diagonal })
    }
}

/// `L(f, g) = (-1)^n (f, g)^* P_{NxN}^{-1} [Δ_N]` in `H^n(M)`.
pub fn cohomology_class_in(
    ctx_m: &DualityContext,
    setting: &DiagonalSetting,
    f: &SimplicialMapData,
    g: &SimplicialMapData,
    convention: Convention,
) -> Result<GradedClass> {
    same_dimension(f, g)?;
    f.check_order_compatible()?;
    g.check_order_compatible()?;
    let nn = &setting.context;
    let n = nn.dim() / 2;
    let delta = nn.homology(n)?.coordinates(&setting.diagonal.cycle)?;
    let u = nn.cohomology(n)?.combination(&nn.poincare_inverse_with(convention, n, &delta)?);
    let fg = SimplicialMapData::pair(f, g, &setting.product)?;
    let sign = if n.is_multiple_of(2) { 1 } else { -1 };
    let coords = ctx_m.cohomology(n)?.coordinates(&fg.pull_cochain(n, &u))?;
    Ok(GradedClass { degree: n, coordinates: coords.into_iter().map(|c| sign * c).collect() })
}

pub fn cohomology_class(ctx_m: &DualityContext, f: &SimplicialMapData, g: &SimplicialMapData, convention: Convention) -> Result<GradedClass> {
    let setting = DiagonalSetting::new(f.codomain_arc())?;
    cohomology_class_in(ctx_m, &setting, f, g, convention)
}

fn need_two(maps: &[SimplicialMapData]) -> Result<()> {
    if maps.len() < 2 {
        return Err(Error::Empty("multi-coincidence classes need at least two maps".into()));
    }
    Ok(())
}

/// `L(f_1, ..., f_k) = L(f_1, f_2) ⌣ ... ⌣ L(f_{k-1}, f_k)`.
pub fn multi_cohomology_class(ctx_m: &DualityContext, maps: &[SimplicialMapData], convention: Convention) -> Result<GradedClass> {
    need_two(maps)?;
    let setting = DiagonalSetting::new(maps[0].codomain_arc())?;
    let k = ctx_m.complex();
    let mut acc: Option<(usize, Vec<i64>)> = None;
    for w in maps.windows(2) {
        let c = cohomology_class_in(ctx_m, &setting, &w[0], &w[1], convention)?;
        let cocycle = ctx_m.cohomology(c.degree)?.combination(&c.coordinates);
        acc = Some(match acc {
            None => (c.degree, cocycle),
            Some((d, u)) => {
                if d + c.degree > k.dim() {
                    return Err(Error::DegreeOutOfRange { degree: (d + c.degree) as isize, max: k.dim() });
                }
                (d + c.degree, cup(k, d, &u, c.degree, &cocycle))
            }
        });
    }
    let (d, u) = acc.expect("at least one pair");
    Ok(GradedClass { degree: d, coordinates: ctx_m.cohomology(d)?.coordinates(&u)? })
}

/// `Λ(f_1, ..., f_k) = Λ(f_1, f_2) · ... · Λ(f_{k-1}, f_k)`.
pub fn multi_global_class(ctx_m: &DualityContext, maps: &[SimplicialMapData], convention: Convention) -> Result<GradedClass> {
    need_two(maps)?;
    let mut acc: Option<GradedClass> = None;
    for w in maps.windows(2) {
        let c = global_class(ctx_m, &w[0], &w[1], convention)?;
        acc = Some(match acc {
            None => c,
            Some(a) => {
                let coords = intersect(ctx_m, convention, a.degree, &a.coordinates, c.degree, &c.coordinates)?;
                GradedClass { degree: a.degree + c.degree - ctx_m.dim(), coordinates: coords }
            }
        });
    }
    Ok(acc.expect("at least one pair"))
}
