//! Barycentric subdivision and dual cells.
//!
//! Child vertices are the barycenters `b_t`, numbered by `(dim t, index t)`,
//! so every child simplex is a flag `t_0 < t_1 < ... < t_q` listed in
//! increasing dimension. Child orientation: the flag built from the vertex
//! sequence `(w_0, ..., w_m)` of a top simplex `T` carries
//! `orient(T) * sgn(w -> T)`.
//!
//! The dual cell of a `p`-simplex `s` in an oriented `m`-manifold is the
//! signed sum of flags from `s` to the top simplices `T > s`. A flag adding
//! vertices `w_1, ..., w_q` (`q = m - p`) gets the sign
//! `(-1)^{pq} * orient(T) * sgn((s, w) -> T)`, which makes `s*` followed by
//! `s` positively oriented.

use std::collections::BTreeMap;

use super::{permutation_sign, Ordering, OrientedComplex, SparseChain, Subcomplex};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct Subdivision {
    parent: OrientedComplex,
    child: OrientedComplex,
    vertex_carrier: Vec<(usize, usize)>,
    barycenter: Vec<Vec<usize>>,
}

/// Child simplices meeting a subcomplex, as open cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpenStar {
    pub simplices: Vec<Vec<bool>>,
}

impl OpenStar {
    pub fn contains(&self, p: usize, i: usize) -> bool {
        self.simplices.get(p).and_then(|m| m.get(i)).copied().unwrap_or(false)
    }

    pub fn count(&self, p: usize) -> usize {
        self.simplices.get(p).map_or(0, |m| m.iter().filter(|&&b| b).count())
    }
}

pub(crate) fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

fn maximal_simplices(k: &OrientedComplex) -> Vec<(usize, usize)> {
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

pub fn barycentric_subdivide(k: &OrientedComplex) -> Subdivision {
    let mut barycenter: Vec<Vec<usize>> = Vec::new();
    let mut vertex_carrier = Vec::new();
    let mut labels = Vec::new();
    for p in 0..=k.dim() {
        let mut row = Vec::with_capacity(k.count(p));
        for i in 0..k.count(p) {
            row.push(vertex_carrier.len());
            vertex_carrier.push((p, i));
            let names: Vec<&str> = k.simplex(p, i).iter().map(|&v| k.label(v)).collect();
            labels.push(format!("b{{{}}}", names.join(",")));
        }
        barycenter.push(row);
    }
    let pure = k.orientation().is_some();
    let mut tops = Vec::new();
    let mut signs = Vec::new();
    for (p, i) in maximal_simplices(k) {
        let t = k.simplex(p, i).to_vec();
        for w in permutations(&t) {
            tops.push(flag_vertices(k, &barycenter, &w));
            if pure {
                signs.push((k.orientation().unwrap()[i] as i64 * permutation_sign(&w, &t)) as i8);
            }
        }
    }
    let child = OrientedComplex::new(
        format!("sd({})", k.name()),
        labels,
        tops,
        pure.then_some(signs),
        Ordering::Total,
    )
    .expect("subdivision of a valid complex is valid");
    let mut child = child;
    child.set_manifold(k.is_manifold());
    Subdivision { parent: k.clone(), child, vertex_carrier, barycenter }
}

/// Child vertices `b_{w0}, b_{w0 w1}, ...` of the flag generated by `w`.
fn flag_vertices(k: &OrientedComplex, barycenter: &[Vec<usize>], w: &[usize]) -> Vec<usize> {
    (1..=w.len())
        .map(|n| {
            let idx = k.find(&w[..n]).expect("prefix of a simplex is a simplex");
            barycenter[n - 1][idx]
        })
        .collect()
}

impl Subdivision {
    pub fn parent(&self) -> &OrientedComplex {
        &self.parent
    }

    pub fn child(&self) -> &OrientedComplex {
        &self.child
    }

    pub fn barycenter(&self, p: usize, i: usize) -> usize {
        self.barycenter[p][i]
    }

    /// Parent simplex `(dim, index)` whose barycenter is child vertex `v`.
    pub fn vertex_carrier(&self, v: usize) -> (usize, usize) {
        self.vertex_carrier[v]
    }

    /// Smallest parent simplex containing the child simplex `(q, j)`.
    pub fn carrier(&self, q: usize, j: usize) -> (usize, usize) {
        let last = *self.child.simplex(q, j).last().unwrap();
        self.vertex_carrier[last]
    }

    /// The subdivision chain map `C_p(K) -> C_p(K')`.
    pub fn subdivide_chain(&self, p: usize, chain: &[i64]) -> Vec<i64> {
        let mut out = vec![0i64; self.child.count(p)];
        for (i, &c) in chain.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let s = self.parent.simplex(p, i).to_vec();
            for w in permutations(&s) {
                let flag = flag_vertices(&self.parent, &self.barycenter, &w);
                let j = self.child.find(&flag).unwrap();
                out[j] += c * permutation_sign(&w, &s);
            }
        }
        out
    }

    /// Child simplices lying in `|S|`.
    pub fn subdivide_subcomplex(&self, s: &Subcomplex) -> Subcomplex {
        let flags = (0..=self.child.dim())
            .map(|q| {
                (0..self.child.count(q))
                    .map(|j| {
                        let (p, i) = self.carrier(q, j);
                        s.contains(p, i)
                    })
                    .collect()
            })
            .collect();
        Subcomplex::from_flags(&self.child, format!("sd({})", s.name()), flags).expect("closed")
    }

    /// Child simplices meeting `|S|`; a flag meets `|S|` exactly when its first
    /// simplex lies in `S`.
    pub fn open_star(&self, s: &Subcomplex) -> OpenStar {
        OpenStar {
            simplices: (0..=self.child.dim())
                .map(|q| {
                    (0..self.child.count(q))
                        .map(|j| {
                            let first = self.child.simplex(q, j)[0];
                            let (p, i) = self.vertex_carrier[first];
                            s.contains(p, i)
                        })
                        .collect()
                })
                .collect(),
        }
    }

    /// Closure of the open star.
    pub fn star(&self, s: &Subcomplex) -> Subcomplex {
        let open = self.open_star(s);
        let cells: Vec<(usize, usize)> = (0..=self.child.dim())
            .flat_map(|q| (0..self.child.count(q)).map(move |j| (q, j)))
            .filter(|&(q, j)| open.contains(q, j))
            .collect();
        Subcomplex::from_indices(&self.child, format!("star({})", s.name()), &cells)
    }

    /// Vertex map `b_t -> last vertex of t`, a simplicial approximation of the identity.
    pub fn last_vertex_map(&self) -> Vec<usize> {
        self.vertex_carrier.iter().map(|&(p, i)| *self.parent.simplex(p, i).last().unwrap()).collect()
    }

    /// Vertex map `b_t -> last vertex of t` for `t` in `S`, and otherwise the
    /// last vertex of `t` outside `S`; it sends the part of `K'` away from `S`
    /// into the full subcomplex on the vertices outside `S`.
    pub fn retraction_map(&self, s: &Subcomplex) -> Result<Vec<usize>> {
        let inside: Vec<bool> = {
            let mut v = vec![false; self.parent.num_vertices()];
            for x in s.vertices(&self.parent) {
                v[x] = true;
            }
            v
        };
        self.vertex_carrier
            .iter()
            .map(|&(p, i)| {
                let t = self.parent.simplex(p, i);
                if s.contains(p, i) {
                    Ok(*t.last().unwrap())
                } else {
                    t.iter()
                        .rev()
                        .find(|&&v| !inside[v])
                        .copied()
                        .ok_or_else(|| Error::NotFull(s.name().to_string()))
                }
            })
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct DualCellComplex {
    sub: Subdivision,
    cells: Vec<Vec<SparseChain>>,
}

impl DualCellComplex {
    pub fn new(k: &OrientedComplex) -> Result<Self> {
        if !k.is_manifold() {
            return Err(Error::NotManifold(format!("{} is not flagged as a closed manifold", k.name())));
        }
        let sub = barycentric_subdivide(k);
        let m = k.dim();
        let orient = k.orientation().expect("manifolds are oriented");
        let mut acc: Vec<Vec<BTreeMap<usize, i64>>> =
            (0..=m).map(|p| vec![BTreeMap::new(); k.count(p)]).collect();
        for (ti, t) in k.simplices(m).iter().enumerate() {
            for mask in 1u32..(1 << (m + 1)) {
                let s: Vec<usize> = (0..=m).filter(|b| mask >> b & 1 == 1).map(|b| t[b]).collect();
                let rest: Vec<usize> = (0..=m).filter(|b| mask >> b & 1 == 0).map(|b| t[b]).collect();
                let p = s.len() - 1;
                let q = m - p;
                let si = k.find(&s).unwrap();
                for w in permutations(&rest) {
                    let mut seq = s.clone();
                    seq.extend_from_slice(&w);
                    let mut sign = orient[ti] as i64 * permutation_sign(&seq, t);
                    if (p * q) % 2 == 1 {
                        sign = -sign;
                    }
                    let mut flag = vec![sub.barycenter(p, si)];
                    let mut cur = s.clone();
                    for &x in &w {
                        cur.push(x);
                        let idx = k.find(&cur).unwrap();
                        flag.push(sub.barycenter(cur.len() - 1, idx));
                    }
                    let j = sub.child.find(&flag).unwrap();
                    *acc[p][si].entry(j).or_insert(0) += sign;
                }
            }
        }
        let cells = acc
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|m| m.into_iter().filter(|&(_, c)| c != 0).collect())
                    .collect()
            })
            .collect();
        Ok(DualCellComplex { sub, cells })
    }

    pub fn base(&self) -> &OrientedComplex {
        self.sub.parent()
    }

    pub fn subdivision(&self) -> &Subdivision {
        &self.sub
    }

    /// `s*` for the `p`-simplex `i`, an `(m - p)`-chain of `K'`.
    pub fn dual_cell(&self, p: usize, i: usize) -> &SparseChain {
        &self.cells[p][i]
    }

    /// Looks up a simplex by vertex set.
    pub fn dual_cell_of(&self, vertices: &[usize]) -> Result<&SparseChain> {
        let i = self
            .base()
            .find(vertices)
            .ok_or_else(|| Error::NotSubcomplex(format!("{:?} is not a simplex of {}", vertices, self.base().name())))?;
        Ok(self.dual_cell(vertices.len() - 1, i))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn dense(n: usize, c: &SparseChain) -> Vec<i64> {
        let mut v = vec![0; n];
        for &(i, x) in c {
            v[i] += x;
        }
        v
    }

    #[test]
    fn edge_and_triangle_counts() {
        let e = crate::complex::build_complex("e", &[vec!["0", "1"]], &["0", "1"]).unwrap();
        let sd = barycentric_subdivide(&e);
        assert_eq!(sd.child().f_vector(), vec![3, 2]);
        let t = crate::complex::build_complex("t", &[vec!["0", "1", "2"]], &["0", "1", "2"]).unwrap();
        let sd = barycentric_subdivide(&t);
        // oracle: chains of faces of a triangle, counted directly
        let faces: Vec<Vec<usize>> = vec![vec![0], vec![1], vec![2], vec![0, 1], vec![0, 2], vec![1, 2], vec![0, 1, 2]];
        let sub = |a: &Vec<usize>, b: &Vec<usize>| a.len() < b.len() && a.iter().all(|x| b.contains(x));
        let mut edges = 0;
        let mut tris = 0;
        for a in &faces {
            for b in &faces {
                if sub(a, b) {
                    edges += 1;
                    for c in &faces {
                        if sub(b, c) {
                            tris += 1;
                        }
                    }
                }
            }
        }
        assert_eq!(sd.child().f_vector(), vec![7, edges, tris]);
        assert_eq!(sd.child().f_vector(), vec![7, 12, 6]);
    }

    #[test]
    fn circle_subdivides_to_circle() {
        let sd = barycentric_subdivide(&catalog::circle(3));
        assert_eq!(sd.child().f_vector(), vec![6, 6]);
        let z = catalog::circle(3).fundamental_cycle().unwrap();
        let zz = sd.subdivide_chain(1, &z);
        assert_eq!(zz, sd.child().fundamental_cycle().unwrap());
    }

    #[test]
    fn subdivision_is_a_chain_map() {
        for k in catalog::test_manifolds() {
            let sd = barycentric_subdivide(&k);
            for p in 1..=k.dim() {
                for i in 0..k.count(p) {
                    let mut e = vec![0; k.count(p)];
                    e[i] = 1;
                    let lhs = sd.child().boundary(p, &sd.subdivide_chain(p, &e));
                    let rhs = sd.subdivide_chain(p - 1, &k.boundary(p, &e));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn top_dual_cell_is_positive_barycenter() {
        let k = catalog::octahedron();
        let d = DualCellComplex::new(&k).unwrap();
        for i in 0..k.count(2) {
            let o = k.orientation().unwrap()[i] as i64;
            assert_eq!(d.dual_cell(2, i), &vec![(d.subdivision().barycenter(2, i), o)]);
        }
    }

    /// Oracle: K'-simplices given by flags starting at `s`, enumerated from
    /// the child complex itself rather than from the parent's top simplices.
    fn meeting_only_at_barycenter(d: &DualCellComplex, p: usize, i: usize) -> Vec<usize> {
        let child = d.subdivision().child();
        let q = d.base().dim() - p;
        let bs = d.subdivision().barycenter(p, i);
        (0..child.count(q))
            .filter(|&j| {
                let s = child.simplex(q, j);
                s[0] == bs
            })
            .collect()
    }

    #[test]
    fn dual_cells_of_circle_vertex_and_octahedron_edge() {
        let k = catalog::circle(3);
        let d = DualCellComplex::new(&k).unwrap();
        let cell = d.dual_cell(0, 0);
        assert_eq!(cell.len(), 2);
        let support: Vec<usize> = cell.iter().map(|&(j, _)| j).collect();
        assert_eq!(support, meeting_only_at_barycenter(&d, 0, 0));

        let k = catalog::octahedron();
        let d = DualCellComplex::new(&k).unwrap();
        for e in 0..k.count(1) {
            let cell = d.dual_cell(1, e);
            assert_eq!(cell.len(), 2);
            let support: Vec<usize> = cell.iter().map(|&(j, _)| j).collect();
            assert_eq!(support, meeting_only_at_barycenter(&d, 1, e));
        }
    }

    #[test]
    fn dual_boundary_is_signed_coboundary() {
        for k in [catalog::octahedron(), catalog::torus_grid(3, 3), catalog::tetrahedron(), catalog::circle(4), catalog::s1_times_s2()] {
            let d = DualCellComplex::new(&k).unwrap();
            let child = d.subdivision().child();
            let m = k.dim();
            for p in 0..m {
                let cof = k.cofaces(p);
                let mut global: Option<i64> = None;
                for (i, cof_i) in cof.iter().enumerate() {
                    let q = m - p;
                    let lhs = child.boundary(q, &dense(child.count(q), d.dual_cell(p, i)));
                    let mut rhs = vec![0; child.count(q - 1)];
                    for &(t, s) in cof_i {
                        for &(j, c) in d.dual_cell(p + 1, t) {
                            rhs[j] += s * c;
                        }
                    }
                    let sign = if lhs == rhs {
                        1
                    } else {
                        assert_eq!(lhs, rhs.iter().map(|x| -x).collect::<Vec<_>>());
                        -1
                    };
                    assert_eq!(*global.get_or_insert(sign), sign, "{} p={}", k.name(), p);
                    // the sign is (-1)^{m-p} = (-1)^{dim s*}
                    assert_eq!(sign, if (m - p) % 2 == 0 { 1 } else { -1 }, "{} p={}", k.name(), p);
                }
            }
        }
    }

    #[test]
    fn open_star_of_vertex_in_circle() {
        let k = catalog::circle(3);
        let sd = barycentric_subdivide(&k);
        let s = Subcomplex::full(&k, "v", &[0]);
        let star = sd.star(&s);
        assert_eq!(star.count(1), 2);
        assert_eq!(star.count(0), 3);
        let whole = sd.star(&Subcomplex::whole(&k));
        assert_eq!(whole, Subcomplex::whole(sd.child()).renamed(whole.name()));
    }

    #[test]
    fn star_of_equator_is_annulus() {
        let k = catalog::octahedron();
        let sd = barycentric_subdivide(&k);
        let eq = catalog::octahedron_equator(&k);
        let star = sd.star(&eq);
        // oracle: child triangles whose flag starts in the equator
        let child = sd.child();
        let expected = (0..child.count(2))
            .filter(|&j| {
                let (p, i) = sd.vertex_carrier(child.simplex(2, j)[0]);
                eq.contains(p, i)
            })
            .count();
        assert_eq!(star.count(2), expected);
        assert_eq!(expected, 8 * 4);
        let band = crate::algebra::homology(child, 1, &crate::algebra::Support::Sub(&star)).unwrap();
        assert_eq!(band.free_rank, 1);
    }
}
