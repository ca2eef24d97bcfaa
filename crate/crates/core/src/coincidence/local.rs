//! Local coincidence indices and local classes.
//!
//! On each simplex around an isolated zero `p` of `D = g - f` the difference is
//! affine with `D(p) = 0`, so `D(p + t(x - p)) = t D(x)`. The index is therefore
//! the degree of `D` on the boundary of the closed star of the carrier of `p`,
//! read through a chart at a vertex whose open star contains `f(p)`. For a
//! pseudo-manifold component the same count runs over the boundary of each
//! dual cell `s*`, with `D` at a barycenter taken as the vertex average, and
//! the sign `(-1)^{dn}` orients `s` followed by its normal cell.

use serde::Serialize;

use super::degree::{ray_degree, Q};
use super::pl::{average, Chart, CoincidenceComponent, CoincidenceSet, ComponentKind};
use crate::algebra::{homology, Support};
use crate::complex::{DualCellComplex, OrientedComplex};
use crate::duality::DualityContext;
use crate::error::{Error, Result};

fn contains_all(s: &[usize], t: &[usize]) -> bool {
    t.iter().all(|v| s.contains(v))
}

/// Degree of `values` on the boundary of the closed star of `carrier`.
pub fn local_degree(k: &OrientedComplex, carrier: (usize, usize), values: &dyn Fn(usize) -> Vec<Q>) -> Result<i64> {
    let m = k.dim();
    let orient = k.orientation().ok_or_else(|| Error::NonOrientable(k.name().to_string()))?;
    let tau = k.simplex(carrier.0, carrier.1).to_vec();
    let mut boundary = std::collections::BTreeMap::<usize, i64>::new();
    for (i, s) in k.simplices(m).iter().enumerate() {
        if contains_all(s, &tau) {
            for (f, sign) in k.faces(m, i) {
                *boundary.entry(f).or_default() += sign * orient[i] as i64;
            }
        }
    }
    let mut faces = Vec::new();
    for (f, c) in boundary {
        if c == 0 {
            continue;
        }
        let face = k.simplex(m - 1, f);
        if contains_all(face, &tau) {
            return Err(Error::NotManifold(format!("the star of {} is not a ball", k.describe(carrier.0, carrier.1))));
        }
        faces.push((c, face.iter().map(|&w| values(w)).collect::<Vec<_>>()));
    }
    let n = faces.first().map_or(m, |(_, h)| h[0].len());
    if n != m {
        return Err(Error::DimensionMismatch(format!("an isolated index needs a map {m} -> {m}, got target dimension {n}")));
    }
    ray_degree(&faces, n)
}

/// Local data attached to one component.
#[derive(Clone, Debug, Serialize)]
pub struct LocalClassData {
    pub component: usize,
    pub kind: ComponentKind,
    /// Homology degree of the class.
    pub degree: usize,
    /// Representing cycle on the (possibly refined) domain.
    #[serde(skip)]
    pub chain: Vec<i64>,
    /// Coordinates in `H_*(component)`; `[index]` for isolated points.
    pub coordinates: Vec<i64>,
    /// Index at the point, or the degree across each top simplex of the component.
    pub degrees: Vec<i64>,
    /// Image in `H_*(M)` of the original domain.
    pub pushforward: Vec<i64>,
    /// Codomain vertices of the charts used, one per consecutive pair of maps.
    pub charts: Vec<usize>,
}

fn tops_containing(k: &OrientedComplex, t: &[usize]) -> Option<usize> {
    k.simplices(k.dim()).iter().position(|s| contains_all(s, t))
}

/// One chart per consecutive pair, centred at `f_i(x)` for `x = Σ w_v v`.
fn charts_at<'a>(set: &'a CoincidenceSet, top: usize, weights: &[(usize, Q)]) -> Result<Vec<&'a Chart>> {
    set.maps[..set.maps.len() - 1]
        .iter()
        .map(|h| {
            let dim = set.ambient();
            let mut y = vec![Q::default(); dim];
            for (v, w) in weights {
                y.iter_mut().zip(h.point(*v)).for_each(|(a, b)| *a += w * b);
            }
            let v = h.target().nearest_vertex(h.carrier(top), &y)?;
            h.target().chart(v)
        })
        .collect()
}

fn project(charts: &[&Chart], amb: usize, diff: &[Q]) -> Vec<Q> {
    charts.iter().enumerate().flat_map(|(i, c)| c.apply(&diff[i * amb..(i + 1) * amb])).collect()
}

fn refuse(comp: &CoincidenceComponent, reason: String) -> Error {
    Error::Unsupported { component: format!("component {}", comp.id), reason }
}

/// Target dimension `n(k-1)` of the stacked differences.
pub fn codimension(set: &CoincidenceSet) -> usize {
    (set.ambient() - 1) * (set.maps.len() - 1)
}

/// The local class of a component, pushed forward with `ctx_m` of the original domain.
pub fn local_class(
    set: &CoincidenceSet,
    comp: &CoincidenceComponent,
    ctx_m: &DualityContext,
    dual: Option<&DualCellComplex>,
) -> Result<LocalClassData> {
    let k = set.domain();
    let m = k.dim();
    let n = codimension(set);
    if n > m {
        return Err(refuse(comp, format!("codimension {n} exceeds the domain dimension {m}")));
    }
    let d = m - n;
    let amb = set.ambient();
    match comp.kind {
        ComponentKind::Isolated if d == 0 => {
            let p = comp.point.as_ref().expect("isolated components carry a point");
            let tau = k.simplex(p.carrier.0, p.carrier.1).to_vec();
            let top = tops_containing(k, &tau).expect("pure domain");
            let weights: Vec<(usize, Q)> = tau.iter().copied().zip(p.weights.iter().cloned()).collect();
            let charts = charts_at(set, top, &weights)?;
            let index = local_degree(k, p.carrier, &|w| project(&charts, amb, &set.difference(w)))?;
            let mut chain = vec![0i64; k.count(0)];
            chain[k.find(&[tau[0]]).unwrap()] = index;
            let pushed = set.push_to_original(0, &chain);
            Ok(LocalClassData {
                component: comp.id,
                kind: comp.kind.clone(),
                degree: 0,
                pushforward: ctx_m.homology(0)?.coordinates(&pushed)?,
                chain,
                coordinates: vec![index],
                degrees: vec![index],
                charts: charts.iter().map(|c| c.vertex).collect(),
            })
        }
        ComponentKind::PseudoManifold if comp.dim == d => {
            let sub = comp.subcomplex.as_ref().expect("pseudo-manifold components are subcomplexes");
            let owned;
            let dc = match dual {
                Some(dc) => dc,
                None => {
                    owned = DualCellComplex::new(k)?;
                    &owned
                }
            };
            let sd = dc.subdivision();
            let kp = sd.child();
            let mut chain = vec![0i64; k.count(d)];
            let mut degrees = Vec::new();
            let mut used = Vec::new();
            for s in sub.indices(d) {
                let verts = k.simplex(d, s).to_vec();
                let top = tops_containing(k, &verts).expect("pure domain");
                let w = Q::new(1.into(), (verts.len() as i64).into());
                let weights: Vec<(usize, Q)> = verts.iter().map(|&v| (v, w.clone())).collect();
                let charts = charts_at(set, top, &weights)?;
                let mut cell = vec![0i64; kp.count(n)];
                for &(j, c) in dc.dual_cell(d, s) {
                    cell[j] += c;
                }
                let bd = kp.boundary(n, &cell);
                let faces: Vec<(i64, Vec<Vec<Q>>)> = bd
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .map(|(j, &c)| {
                        let pts = kp
                            .simplex(n - 1, j)
                            .iter()
                            .map(|&b| {
                                let (p, i) = sd.vertex_carrier(b);
                                let t = k.simplex(p, i);
                                let diffs: Vec<Vec<Q>> = t.iter().map(|&v| set.difference(v)).collect();
                                project(&charts, amb, &average(diffs.iter(), t.len()))
                            })
                            .collect();
                        (c, pts)
                    })
                    .collect();
                // tangent directions first: s then s* rather than s* then s
                let deg = ray_degree(&faces, n)? * if (d * n) % 2 == 1 { -1 } else { 1 };
                chain[s] = deg;
                degrees.push(deg);
                used = charts.iter().map(|c| c.vertex).collect();
            }
            let coordinates = homology(k, d, &Support::Sub(sub))?.coordinates(&chain).map_err(|e| {
                refuse(comp, format!("transverse degrees do not form a cycle ({e}); refine the domain"))
            })?;
            let pushed = set.push_to_original(d, &chain);
            Ok(LocalClassData {
                component: comp.id,
                kind: comp.kind.clone(),
                degree: d,
                pushforward: ctx_m.homology(d)?.coordinates(&pushed)?,
                chain,
                coordinates,
                degrees,
                charts: used,
            })
        }
        _ => {
            let what = match comp.kind {
                ComponentKind::Other => "is not a pseudo-manifold",
                _ => "has the wrong dimension",
            };
            let detail = comp.diagnostic.clone().map(|s| format!(" ({s})")).unwrap_or_default();
            Err(refuse(
                comp,
                format!(
                    "{what}: it has dimension {}, but local classes need isolated points (m = n) or oriented \
                     pseudo-manifolds of dimension {d}{detail}; perturb one map to make the coincidences generic",
                    comp.dim
                ),
            ))
        }
    }
}
