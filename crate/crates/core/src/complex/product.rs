//! Staircase triangulation of products and graphs of simplicial maps.

use super::{pseudo_manifold_analyze, Ordering, OrientedComplex, PseudoManifoldReport, Simplex, Subcomplex};
use crate::algebra::SimplicialMapData;
use crate::error::{Error, Result};

/// `|K| x |L|` triangulated by monotone lattice paths in `sigma x tau`.
/// Vertex `(a, b)` has index `a * |V(L)| + b`.
#[derive(Clone, Debug)]
pub struct ProductComplex {
    complex: OrientedComplex,
    left_vertices: usize,
    right_vertices: usize,
}

impl ProductComplex {
    pub fn complex(&self) -> &OrientedComplex {
        &self.complex
    }

    pub fn into_complex(self) -> OrientedComplex {
        self.complex
    }

    pub fn vertex(&self, a: usize, b: usize) -> usize {
        a * self.right_vertices + b
    }

    pub fn split(&self, v: usize) -> (usize, usize) {
        (v / self.right_vertices, v % self.right_vertices)
    }

    pub fn projection_left(&self) -> Vec<usize> {
        (0..self.left_vertices * self.right_vertices).map(|v| self.split(v).0).collect()
    }

    pub fn projection_right(&self) -> Vec<usize> {
        (0..self.left_vertices * self.right_vertices).map(|v| self.split(v).1).collect()
    }
}

/// Lattice paths from `(0,0)` to `(p,q)`: `true` marks a step in the first factor.
fn lattice_paths(p: usize, q: usize) -> Vec<Vec<bool>> {
    if p == 0 && q == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    if p > 0 {
        for mut rest in lattice_paths(p - 1, q) {
            rest.insert(0, true);
            out.push(rest);
        }
    }
    if q > 0 {
        for mut rest in lattice_paths(p, q - 1) {
            rest.insert(0, false);
            out.push(rest);
        }
    }
    out
}

/// Sign of the shuffle putting first-factor steps before second-factor steps.
fn shuffle_sign(path: &[bool]) -> i64 {
    let mut seconds = 0;
    let mut inv = 0;
    for &step in path {
        if step {
            inv += seconds;
        } else {
            seconds += 1;
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

fn top_simplices(k: &OrientedComplex) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for p in 0..=k.dim() {
        let mut is_face = vec![false; k.count(p)];
        if p < k.dim() {
            for j in 0..k.count(p + 1) {
                for (f, _) in k.faces(p + 1, j) {
                    is_face[f] = true;
                }
            }
        }
        out.extend((0..k.count(p)).filter(|&i| !is_face[i]).map(|i| (p, i)));
    }
    out
}

pub fn staircase_product(k: &OrientedComplex, l: &OrientedComplex) -> ProductComplex {
    let nl = l.num_vertices();
    let labels: Vec<String> = (0..k.num_vertices() * nl)
        .map(|v| format!("({},{})", k.label(v / nl), l.label(v % nl)))
        .collect();
    let oriented = k.orientation().is_some() && l.orientation().is_some();
    let mut tops: Vec<Simplex> = Vec::new();
    let mut signs: Vec<i8> = Vec::new();
    for &(p, i) in &top_simplices(k) {
        let sigma = k.simplex(p, i);
        for &(q, j) in &top_simplices(l) {
            let tau = l.simplex(q, j);
            for path in lattice_paths(p, q) {
                let (mut a, mut b) = (0, 0);
                let mut simplex = vec![sigma[0] * nl + tau[0]];
                for &step in &path {
                    if step {
                        a += 1;
                    } else {
                        b += 1;
                    }
                    simplex.push(sigma[a] * nl + tau[b]);
                }
                tops.push(simplex);
                if oriented {
                    let s = shuffle_sign(&path) * k.orientation().unwrap()[i] as i64 * l.orientation().unwrap()[j] as i64;
                    signs.push(s as i8);
                }
            }
        }
    }
    let mut complex = OrientedComplex::new(
        format!("{}x{}", k.name(), l.name()),
        labels,
        tops,
        oriented.then_some(signs),
        Ordering::Local,
    )
    .expect("staircase of valid complexes is valid");
    if k.is_manifold() && l.is_manifold() {
        complex.set_manifold(true);
    }
    ProductComplex { complex, left_vertices: k.num_vertices(), right_vertices: nl }
}

/// The graph of a map as a subcomplex of the product, with its fundamental cycle.
#[derive(Clone, Debug)]
pub struct GraphCycle {
    pub subcomplex: Subcomplex,
    /// Dense `m`-chain on the product, pushed forward from the domain orientation.
    pub cycle: Vec<i64>,
    pub report: PseudoManifoldReport,
}

pub fn graph_subcomplex(f: &SimplicialMapData, product: &ProductComplex) -> Result<GraphCycle> {
    f.check_order_compatible()?;
    let k = f.domain();
    let w = product.complex();
    if w.num_vertices() != k.num_vertices() * f.codomain().num_vertices() {
        return Err(Error::DimensionMismatch(format!(
            "{} is not the product of {} and {}",
            w.name(),
            k.name(),
            f.codomain().name()
        )));
    }
    let image = |s: &[usize]| -> Vec<usize> { s.iter().map(|&v| product.vertex(v, f.image(v))).collect() };
    let mut cells = Vec::new();
    for p in 0..=k.dim() {
        for s in k.simplices(p) {
            let t = image(s);
            let idx = w.find(&t).ok_or_else(|| Error::OrderIncompatible { simplex: format!("{:?}", s) })?;
            cells.push((p, idx));
        }
    }
    let subcomplex = Subcomplex::from_indices(w, format!("graph({})", f.name()), &cells);
    let m = k.dim();
    let mut cycle = vec![0i64; w.count(m)];
    let base = k.fundamental_cycle()?;
    for (i, s) in k.simplices(m).iter().enumerate() {
        let (idx, sign) = w.locate(&image(s)).unwrap();
        cycle[idx] += sign * base[i];
    }
    let report = pseudo_manifold_analyze(w, &subcomplex, m);
    Ok(GraphCycle { subcomplex, cycle, report })
}
