//! Piecewise-linear maps into a realized codomain and their coincidence sets.
//!
//! The codomain `N` is realized by integer points in `R^{n+1}`. A PL map is
//! affine on every domain simplex and sends it into one simplex of `N`, so two
//! maps agree at `Σ λ_i v_i` exactly when `Σ λ_i (g(v_i) - f(v_i)) = 0`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::degree::{determinant, q, solve, Solution, Q};
use crate::algebra::SimplicialMapData;
use crate::complex::{barycentric_subdivide, OrientedComplex, Subcomplex, Subdivision};
use crate::error::{Error, Result};

/// Linear map `R^{n+1} -> R^n` used near one codomain vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chart {
    pub vertex: usize,
    pub matrix: Vec<Vec<i64>>,
}

impl Chart {
    pub fn apply(&self, x: &[Q]) -> Vec<Q> {
        self.matrix.iter().map(|row| row.iter().zip(x).map(|(&a, b)| q(a) * b).sum()).collect()
    }
}

/// A realized, chart-covered closed oriented manifold.
#[derive(Clone, Debug)]
pub struct PLTarget {
    complex: Arc<OrientedComplex>,
    realization: Vec<Vec<i64>>,
    atlas: Vec<Chart>,
}

fn int_point(p: &[i64]) -> Vec<Q> {
    p.iter().map(|&x| q(x)).collect()
}

impl PLTarget {
    pub fn new(complex: Arc<OrientedComplex>, realization: Vec<Vec<i64>>, atlas: Vec<Chart>) -> Result<Self> {
        let n = complex.dim();
        if realization.len() != complex.num_vertices() || realization.iter().any(|p| p.len() != n + 1) {
            return Err(Error::DimensionMismatch(format!(
                "{} needs one point in R^{} per vertex",
                complex.name(),
                n + 1
            )));
        }
        if complex.orientation().is_none() {
            return Err(Error::NonOrientable(complex.name().to_string()));
        }
        let target = PLTarget { complex, realization, atlas };
        for v in 0..target.complex.num_vertices() {
            let chart = target.chart(v)?;
            target.validate(chart)?;
        }
        Ok(target)
    }

    /// Atlas of projections along each vertex, oriented to agree with `N`.
    pub fn with_standard_atlas(complex: Arc<OrientedComplex>, realization: Vec<Vec<i64>>) -> Result<Self> {
        let mut target = PLTarget { complex, realization, atlas: Vec::new() };
        let atlas = (0..target.complex.num_vertices()).map(|v| target.standard_chart(v)).collect::<Result<Vec<_>>>()?;
        target.atlas = atlas;
        PLTarget::new(target.complex, target.realization, target.atlas)
    }

    fn standard_chart(&self, v: usize) -> Result<Chart> {
        let p = &self.realization[v];
        let c = (0..p.len()).max_by_key(|&i| (p[i].abs(), std::cmp::Reverse(i))).unwrap();
        if p[c] == 0 {
            return Err(Error::NoChart(format!("vertex {} is realized at the origin", self.complex.label(v))));
        }
        let mut matrix: Vec<Vec<i64>> = (0..p.len())
            .filter(|&j| j != c)
            .map(|j| {
                let mut row = vec![0i64; p.len()];
                row[j] = p[c].abs();
                row[c] = -p[j] * p[c].signum();
                row
            })
            .collect();
        let chart = Chart { vertex: v, matrix: matrix.clone() };
        if let Some(sign) = self.star_signs(&chart).first() {
            if *sign < 0 {
                matrix[0].iter_mut().for_each(|x| *x = -*x);
            }
        }
        Ok(Chart { vertex: v, matrix })
    }

    /// Sign of `orient(τ)·det` for every top simplex `τ` at the chart vertex.
    fn star_signs(&self, chart: &Chart) -> Vec<i64> {
        let n = self.complex.dim();
        let orient = self.complex.orientation().expect("oriented");
        self.complex
            .simplices(n)
            .iter()
            .enumerate()
            .filter(|(_, s)| s.contains(&chart.vertex))
            .map(|(i, s)| {
                let pts: Vec<Vec<Q>> = s.iter().map(|&w| chart.apply(&int_point(&self.realization[w]))).collect();
                let cols: Vec<Vec<Q>> =
                    pts[1..].iter().map(|x| x.iter().zip(&pts[0]).map(|(a, b)| a - b).collect()).collect();
                let d = determinant(&cols);
                if d.is_zero() {
                    0
                } else if d.is_positive() == (orient[i] > 0) {
                    1
                } else {
                    -1
                }
            })
            .collect()
    }

    fn validate(&self, chart: &Chart) -> Result<()> {
        let n = self.complex.dim();
        if chart.matrix.len() != n || chart.matrix.iter().any(|r| r.len() != n + 1) {
            return Err(Error::DimensionMismatch(format!("chart at {} must be {n} x {}", chart.vertex, n + 1)));
        }
        if self.star_signs(chart).iter().any(|&s| s != 1) {
            return Err(Error::NoChart(format!(
                "chart at {} does not map the star of the vertex with its orientation",
                self.complex.label(chart.vertex)
            )));
        }
        Ok(())
    }

    pub fn complex(&self) -> &OrientedComplex {
        &self.complex
    }

    pub fn complex_arc(&self) -> &Arc<OrientedComplex> {
        &self.complex
    }

    pub fn realization(&self) -> &[Vec<i64>] {
        &self.realization
    }

    pub fn atlas(&self) -> &[Chart] {
        &self.atlas
    }

    pub fn chart(&self, v: usize) -> Result<&Chart> {
        self.atlas
            .iter()
            .find(|c| c.vertex == v)
            .ok_or_else(|| Error::NoChart(format!("no chart at vertex {}", self.complex.label(v))))
    }

    pub fn point(&self, v: usize) -> Vec<Q> {
        int_point(&self.realization[v])
    }

    /// Vertex of the carrier of `y ∈ |ρ|` with the largest barycentric weight.
    pub(crate) fn nearest_vertex(&self, rho: &[usize], y: &[Q]) -> Result<usize> {
        let dim = y.len();
        let mut rows: Vec<Vec<Q>> = (0..dim).map(|r| rho.iter().map(|&w| q(self.realization[w][r])).collect()).collect();
        rows.push(vec![q(1); rho.len()]);
        let mut rhs = y.to_vec();
        rhs.push(q(1));
        match solve(&rows, &rhs, rho.len()) {
            Solution::Unique(mu) => {
                let mut best = 0;
                for i in 1..rho.len() {
                    if mu[i] > mu[best] || (mu[i] == mu[best] && rho[i] < rho[best]) {
                        best = i;
                    }
                }
                Ok(rho[best])
            }
            _ => Err(Error::NoChart(format!("point {y:?} is not in the simplex {rho:?}"))),
        }
    }
}

/// Integer points of a convex polygon, counterclockwise, realizing `C_n`.
pub fn polygon_points(n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|k| {
            let a = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
            vec![(1000.0 * a.cos()).round() as i64, (1000.0 * a.sin()).round() as i64]
        })
        .collect()
}

/// Realization of the suspension: the base at height 0, `N` above, `S` below.
pub fn suspension_points(base: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let d = base.first().map_or(0, Vec::len);
    let mut out: Vec<Vec<i64>> = base.iter().map(|p| p.iter().copied().chain([0]).collect()).collect();
    for h in [1000, -1000] {
        let mut apex = vec![0; d + 1];
        apex[d] = h;
        out.push(apex);
    }
    out
}

/// Octahedron vertices `±1000 e_i` in the order `+x, -x, +y, -y, +z, -z`.
pub fn octahedron_points() -> Vec<Vec<i64>> {
    (0..6)
        .map(|v| {
            let mut p = vec![0; 3];
            p[v / 2] = if v % 2 == 0 { 1000 } else { -1000 };
            p
        })
        .collect()
}

/// A map affine on each simplex, each simplex landing in one codomain simplex.
#[derive(Clone, Debug)]
pub struct PLMapData {
    name: String,
    domain: Arc<OrientedComplex>,
    target: Arc<PLTarget>,
    points: Vec<Vec<Q>>,
    /// Codomain vertices spanning a simplex that contains the image of each top simplex.
    carriers: Vec<Vec<usize>>,
}

impl PLMapData {
    pub fn from_simplicial(f: &SimplicialMapData, target: Arc<PLTarget>) -> Result<Self> {
        if f.codomain().name() != target.complex().name() {
            return Err(Error::DimensionMismatch(format!(
                "{} lands in {}, not {}",
                f.name(),
                f.codomain().name(),
                target.complex().name()
            )));
        }
        let k = f.domain();
        let points = (0..k.num_vertices()).map(|v| target.point(f.image(v))).collect();
        let carriers = k
            .simplices(k.dim())
            .iter()
            .map(|s| {
                let mut img: Vec<usize> = s.iter().map(|&v| f.image(v)).collect();
                img.sort_unstable();
                img.dedup();
                img
            })
            .collect();
        Ok(PLMapData { name: f.name().to_string(), domain: f.domain_arc().clone(), target, points, carriers })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn domain(&self) -> &OrientedComplex {
        &self.domain
    }

    pub fn domain_arc(&self) -> &Arc<OrientedComplex> {
        &self.domain
    }

    pub fn target(&self) -> &PLTarget {
        &self.target
    }

    pub fn target_arc(&self) -> &Arc<PLTarget> {
        &self.target
    }

    pub fn point(&self, v: usize) -> &[Q] {
        &self.points[v]
    }

    pub fn carrier(&self, top: usize) -> &[usize] {
        &self.carriers[top]
    }

    /// The same map on the barycentric subdivision of the domain.
    pub fn refine(&self, sub: &Subdivision) -> PLMapData {
        let child = sub.child();
        let parent = sub.parent();
        let m = parent.dim();
        let points = (0..child.num_vertices())
            .map(|v| {
                let (p, i) = sub.vertex_carrier(v);
                let s = parent.simplex(p, i);
                average(s.iter().map(|&w| &self.points[w]), s.len())
            })
            .collect();
        let carriers = (0..child.count(m))
            .map(|j| {
                let (p, i) = sub.carrier(m, j);
                debug_assert_eq!(p, m);
                self.carriers[i].clone()
            })
            .collect();
        PLMapData {
            name: self.name.clone(),
            domain: Arc::new(child.clone()),
            target: self.target.clone(),
            points,
            carriers,
        }
    }
}

pub(crate) fn average<'a>(pts: impl Iterator<Item = &'a Vec<Q>>, n: usize) -> Vec<Q> {
    let mut acc: Vec<Q> = Vec::new();
    for p in pts {
        if acc.is_empty() {
            acc = vec![Q::zero(); p.len()];
        }
        acc.iter_mut().zip(p).for_each(|(a, b)| *a += b);
    }
    let n = q(n as i64);
    acc.into_iter().map(|x| x / &n).collect()
}

/// A coincidence in the open simplex `carrier` of dimension at least one.
#[derive(Clone, Debug, PartialEq)]
pub struct CoincidencePoint {
    pub carrier: (usize, usize),
    /// Barycentric weights on the vertices of the carrier, in stored order.
    pub weights: Vec<Q>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum ComponentKind {
    Isolated,
    PseudoManifold,
    Other,
}

#[derive(Clone, Debug)]
pub struct CoincidenceComponent {
    pub id: usize,
    pub kind: ComponentKind,
    /// Present for components made of domain simplices.
    pub subcomplex: Option<Subcomplex>,
    /// Present for isolated points, including isolated vertices.
    pub point: Option<CoincidencePoint>,
    pub dim: usize,
    pub diagnostic: Option<String>,
}

/// `C(f_1, ..., f_k)` on a domain refined until it is a subcomplex plus isolated points.
#[derive(Clone, Debug)]
pub struct CoincidenceSet {
    /// The maps on the refined domain.
    pub maps: Vec<PLMapData>,
    pub rounds: usize,
    pub refinements: Vec<Subdivision>,
    pub subcomplex: Subcomplex,
    pub points: Vec<CoincidencePoint>,
}

enum Piece {
    Face(Vec<usize>),
    Point(Vec<usize>, Vec<Q>),
}

/// `C ∩ σ` for one top simplex: a face, one isolated point, nothing, or `Err` with the simplex.
fn classify(maps: &[PLMapData], top: usize) -> std::result::Result<Option<Piece>, ()> {
    let k = maps[0].domain();
    let m = k.dim();
    let s = k.simplex(m, top);
    let diff: Vec<Vec<Q>> = s.iter().map(|&v| stacked_difference(maps, v)).collect();
    let amb = diff[0].len();
    let mut vertices: Vec<(Vec<usize>, Vec<Q>)> = Vec::new();
    for mask in 1u32..(1 << s.len()) {
        let idx: Vec<usize> = (0..s.len()).filter(|&i| mask & (1 << i) != 0).collect();
        let mut rows: Vec<Vec<Q>> = (0..amb).map(|r| idx.iter().map(|&i| diff[i][r].clone()).collect()).collect();
        rows.push(vec![q(1); idx.len()]);
        let mut rhs = vec![Q::zero(); amb];
        rhs.push(q(1));
        if let Solution::Unique(lambda) = solve(&rows, &rhs, idx.len()) {
            if lambda.iter().all(Signed::is_positive) {
                vertices.push((idx.iter().map(|&i| s[i]).collect(), lambda));
            }
        }
    }
    match vertices.len() {
        0 => Ok(None),
        _ if vertices.iter().all(|(v, _)| v.len() == 1) => {
            let mut face: Vec<usize> = vertices.into_iter().map(|(v, _)| v[0]).collect();
            face.sort_unstable();
            Ok(Some(Piece::Face(face)))
        }
        1 => {
            let (v, l) = vertices.pop().unwrap();
            Ok(Some(Piece::Point(v, l)))
        }
        _ => Err(()),
    }
}

/// `(f_2 - f_1, f_3 - f_2, ...)` at a domain vertex, in ambient coordinates.
fn stacked_difference(maps: &[PLMapData], v: usize) -> Vec<Q> {
    maps.windows(2).flat_map(|w| w[1].point(v).iter().zip(w[0].point(v)).map(|(a, b)| a - b).collect::<Vec<_>>()).collect()
}

pub fn coincidence_set(f: &PLMapData, g: &PLMapData, bound: usize) -> Result<CoincidenceSet> {
    multi_coincidence_set(&[f.clone(), g.clone()], bound)
}

/// Common coincidences of all the maps.
pub fn multi_coincidence_set(maps: &[PLMapData], bound: usize) -> Result<CoincidenceSet> {
    if maps.len() < 2 {
        return Err(Error::Empty("coincidences need at least two maps".into()));
    }
    let first = &maps[0];
    if let Some(h) = maps
        .iter()
        .find(|h| h.domain().name() != first.domain().name() || h.target().complex().name() != first.target().complex().name())
    {
        return Err(Error::DimensionMismatch(format!("{} and {} do not share domain and codomain", first.name(), h.name())));
    }
    let mut maps = maps.to_vec();
    let mut refinements = Vec::new();
    let name = maps.iter().map(PLMapData::name).collect::<Vec<_>>().join(",");
    loop {
        let k = maps[0].domain_arc().clone();
        let m = k.dim();
        let mut cells = Vec::new();
        let mut points: BTreeMap<usize, (usize, CoincidencePoint)> = BTreeMap::new();
        let mut offending = None;
        for top in 0..k.count(m) {
            match classify(&maps, top) {
                Ok(None) => {}
                Ok(Some(Piece::Face(face))) => {
                    let i = k.find(&face).expect("faces of simplices are simplices");
                    cells.push((face.len() - 1, i));
                }
                Ok(Some(Piece::Point(verts, lambda))) => {
                    let mut sorted = verts.clone();
                    sorted.sort_unstable();
                    let dim = verts.len() - 1;
                    let i = k.find(&sorted).expect("faces of simplices are simplices");
                    let stored = k.simplex(dim, i);
                    let weights = stored.iter().map(|v| lambda[verts.iter().position(|w| w == v).unwrap()].clone()).collect();
                    let key = (dim << 40) | i;
                    points.entry(key).or_insert((dim, CoincidencePoint { carrier: (dim, i), weights }));
                }
                Err(()) => {
                    offending.get_or_insert(top);
                }
            }
        }
        if let Some(top) = offending {
            if refinements.len() >= bound {
                return Err(Error::SubdivisionBound { rounds: refinements.len(), simplex: k.describe(m, top) });
            }
            let sub = barycentric_subdivide(&k);
            maps = maps.iter().map(|h| h.refine(&sub)).collect();
            refinements.push(sub);
            continue;
        }
        let subcomplex = Subcomplex::from_indices(&k, format!("C({name})"), &cells);
        return Ok(CoincidenceSet {
            rounds: refinements.len(),
            refinements,
            subcomplex,
            points: points.into_values().map(|(_, p)| p).collect(),
            maps,
        });
    }
}

impl CoincidenceSet {
    pub fn domain(&self) -> &OrientedComplex {
        self.maps[0].domain()
    }

    pub fn is_empty(&self) -> bool {
        self.subcomplex.is_empty() && self.points.is_empty()
    }

    /// Connected components: subcomplex pieces first, then interior points.
    pub fn components(&self) -> Vec<CoincidenceComponent> {
        let k = self.domain();
        let mut out = Vec::new();
        for c in self.subcomplex.components(k) {
            let dim = c.dim().unwrap_or(0);
            let id = out.len();
            if dim == 0 {
                let i = c.indices(0)[0];
                out.push(CoincidenceComponent {
                    id,
                    kind: ComponentKind::Isolated,
                    point: Some(CoincidencePoint { carrier: (0, i), weights: vec![q(1)] }),
                    subcomplex: Some(c),
                    dim,
                    diagnostic: None,
                });
                continue;
            }
            let report = crate::complex::pseudo_manifold_analyze(k, &c, dim);
            let (kind, diagnostic) = if report.is_pseudo_manifold {
                (ComponentKind::PseudoManifold, None)
            } else {
                (ComponentKind::Other, Some(report.failures.join("; ")))
            };
            out.push(CoincidenceComponent { id, kind, subcomplex: Some(c), point: None, dim, diagnostic });
        }
        for p in &self.points {
            out.push(CoincidenceComponent {
                id: out.len(),
                kind: ComponentKind::Isolated,
                subcomplex: None,
                point: Some(p.clone()),
                dim: 0,
                diagnostic: None,
            });
        }
        out
    }

    /// Consecutive differences `f_{i+1} - f_i` at a domain vertex, stacked.
    pub fn difference(&self, v: usize) -> Vec<Q> {
        stacked_difference(&self.maps, v)
    }

    /// Ambient dimension of one codomain point.
    pub fn ambient(&self) -> usize {
        self.maps[0].target().complex().dim() + 1
    }

    /// Push a chain on the refined domain back to the original one.
    pub fn push_to_original(&self, p: usize, chain: &[i64]) -> Vec<i64> {
        let mut c = chain.to_vec();
        for sub in self.refinements.iter().rev() {
            c = crate::algebra::push_along(sub.child(), sub.parent(), &sub.last_vertex_map(), p, &c);
        }
        c
    }
}
