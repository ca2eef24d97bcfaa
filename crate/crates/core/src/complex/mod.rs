//! Finite simplicial complexes with locally ordered simplices.
//!
//! Every simplex is stored as an ordered vertex tuple and every face is the
//! corresponding ordered subsequence. A total vertex order is the special case
//! where each tuple is sorted by vertex index; cyclic orderings on circles are
//! the reason the general case exists.

mod orders;
mod product;
mod pseudo;
mod subcomplex;
mod subdivision;

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::integer::IntegerMatrix;

pub use orders::{find_compatible_orders, CompatibleOrders};
pub use product::{graph_subcomplex, staircase_product, GraphCycle, ProductComplex};
pub use pseudo::{pseudo_manifold_analyze, PseudoManifoldReport};
pub use subcomplex::Subcomplex;
pub use subdivision::{barycentric_subdivide, DualCellComplex, OpenStar, Subdivision};

pub type Simplex = Vec<usize>;

/// Sparse integer chain: `(simplex index, coefficient)` pairs, sorted by index.
pub type SparseChain = Vec<(usize, i64)>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ordering {
    /// Sort every tuple by vertex index.
    Total,
    /// Keep tuples as given; faces must agree wherever they are shared.
    Local,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientedComplex {
    name: String,
    labels: Vec<String>,
    simplices: Vec<Vec<Simplex>>,
    index: Vec<HashMap<Simplex, usize>>,
    orientation: Option<Vec<i8>>,
    manifold: bool,
}

/// Sign of the permutation taking `from` to `to` (same entries, no repeats).
pub fn permutation_sign(from: &[usize], to: &[usize]) -> i64 {
    let pos: HashMap<usize, usize> = to.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut perm: Vec<usize> = from.iter().map(|v| pos[v]).collect();
    let mut sign = 1;
    for i in 0..perm.len() {
        while perm[i] != i {
            let j = perm[i];
            perm.swap(i, j);
            sign = -sign;
        }
    }
    sign
}

fn sorted(s: &[usize]) -> Simplex {
    let mut k = s.to_vec();
    k.sort_unstable();
    k
}

/// Ordered subsequences of `s` of every length >= 1.
fn ordered_faces(s: &[usize]) -> Vec<Simplex> {
    let n = s.len();
    (1u64..(1u64 << n))
        .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).map(|i| s[i]).collect())
        .collect()
}

impl OrientedComplex {
    /// Builds the face closure of `tops`. `orientation`, when present, aligns
    /// with `tops` as written and is converted to the stored vertex order.
    pub fn new(
        name: impl Into<String>,
        labels: Vec<String>,
        tops: Vec<Simplex>,
        orientation: Option<Vec<i8>>,
        ordering: Ordering,
    ) -> Result<Self> {
        let name = name.into();
        if tops.is_empty() {
            return Err(Error::Empty(format!("complex {name} has no simplices")));
        }
        if let Some(o) = &orientation {
            if o.len() != tops.len() {
                return Err(Error::InvalidComplex(format!(
                    "{} orientation signs for {} top simplices",
                    o.len(),
                    tops.len()
                )));
            }
            if o.iter().any(|&x| x != 1 && x != -1) {
                return Err(Error::InvalidComplex("orientation signs must be +1 or -1".into()));
            }
        }
        let mut seen = vec![false; labels.len()];
        let mut stored_tops = Vec::with_capacity(tops.len());
        for t in &tops {
            if t.is_empty() {
                return Err(Error::InvalidComplex("empty vertex tuple".into()));
            }
            for &v in t {
                if v >= labels.len() {
                    return Err(Error::InvalidComplex(format!("vertex index {v} out of range")));
                }
            }
            let key = sorted(t);
            if key.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidComplex(format!("repeated vertex in {:?}", t)));
            }
            for &v in t {
                seen[v] = true;
            }
            stored_tops.push(match ordering {
                Ordering::Total => key,
                Ordering::Local => t.clone(),
            });
        }
        if let Some(v) = seen.iter().position(|&s| !s) {
            return Err(Error::InvalidComplex(format!("vertex {} lies in no simplex", labels[v])));
        }
        let dim = stored_tops.iter().map(|t| t.len() - 1).max().unwrap();

        let mut by_key: Vec<HashMap<Simplex, Simplex>> = vec![HashMap::new(); dim + 1];
        for t in &stored_tops {
            for face in ordered_faces(t) {
                let key = sorted(&face);
                let slot = &mut by_key[face.len() - 1];
                match slot.get(&key) {
                    Some(existing) if *existing != face => {
                        return Err(Error::InvalidComplex(format!(
                            "inconsistent local order on {:?}: {:?} vs {:?}",
                            key, existing, face
                        )))
                    }
                    Some(_) => {}
                    None => {
                        slot.insert(key, face);
                    }
                }
            }
        }
        let mut simplices: Vec<Vec<Simplex>> = Vec::with_capacity(dim + 1);
        let mut index: Vec<HashMap<Simplex, usize>> = Vec::with_capacity(dim + 1);
        for slot in by_key {
            let mut entries: Vec<(Simplex, Simplex)> = slot.into_iter().collect();
            entries.sort();
            index.push(entries.iter().enumerate().map(|(i, (k, _))| (k.clone(), i)).collect());
            simplices.push(entries.into_iter().map(|(_, s)| s).collect());
        }

        let orientation = match orientation {
            None => None,
            Some(o) => {
                let mut signs: Vec<Option<i8>> = vec![None; simplices[dim].len()];
                for ((t, stored), &sign) in tops.iter().zip(&stored_tops).zip(&o) {
                    if t.len() != dim + 1 {
                        return Err(Error::InvalidComplex(
                            "orientation given but top simplices have mixed dimensions".into(),
                        ));
                    }
                    let idx = index[dim][&sorted(t)];
                    let s = (sign as i64 * permutation_sign(t, stored)) as i8;
                    match signs[idx] {
                        Some(prev) if prev != s => {
                            return Err(Error::ConflictingOrientation {
                                simplex: t.iter().map(|&v| labels[v].clone()).collect::<Vec<_>>().join(","),
                            })
                        }
                        _ => signs[idx] = Some(s),
                    }
                }
                Some(signs.into_iter().map(|s| s.unwrap()).collect())
            }
        };

        Ok(OrientedComplex { name, labels, simplices, index, orientation, manifold: false })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.simplices.len() - 1
    }

    pub fn num_vertices(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Number of `p`-simplices (zero outside `0..=dim`).
    pub fn count(&self, p: usize) -> usize {
        self.simplices.get(p).map_or(0, Vec::len)
    }

    pub fn simplices(&self, p: usize) -> &[Simplex] {
        self.simplices.get(p).map_or(&[], |v| v.as_slice())
    }

    pub fn simplex(&self, p: usize, i: usize) -> &[usize] {
        &self.simplices[p][i]
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.simplices.iter().map(Vec::len).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.simplices
            .iter()
            .enumerate()
            .map(|(p, s)| if p % 2 == 0 { s.len() as i64 } else { -(s.len() as i64) })
            .sum()
    }

    /// Index of the simplex with this vertex set.
    pub fn find(&self, vertices: &[usize]) -> Option<usize> {
        let p = vertices.len().checked_sub(1)?;
        self.index.get(p)?.get(&sorted(vertices)).copied()
    }

    /// Index and sign of an ordered tuple relative to the stored order.
    pub fn locate(&self, tuple: &[usize]) -> Option<(usize, i64)> {
        let i = self.find(tuple)?;
        let p = tuple.len() - 1;
        Some((i, permutation_sign(tuple, &self.simplices[p][i])))
    }

    pub fn describe(&self, p: usize, i: usize) -> String {
        let s: Vec<&str> = self.simplices[p][i].iter().map(|&v| self.labels[v].as_str()).collect();
        format!("[{}]", s.join(","))
    }

    /// Signed codimension-one faces `(face index, sign)` of simplex `(p, i)`.
    pub fn faces(&self, p: usize, i: usize) -> Vec<(usize, i64)> {
        if p == 0 {
            return Vec::new();
        }
        let s = &self.simplices[p][i];
        (0..=p)
            .map(|k| {
                let mut f = s.clone();
                f.remove(k);
                let idx = self.index[p - 1][&sorted(&f)];
                (idx, if k % 2 == 0 { 1 } else { -1 })
            })
            .collect()
    }

    /// Columns of the boundary map `C_p -> C_{p-1}`.
    pub fn boundary_columns(&self, p: usize) -> Vec<SparseChain> {
        (0..self.count(p)).map(|i| self.faces(p, i)).collect()
    }

    pub fn boundary_matrix(&self, p: usize) -> IntegerMatrix {
        let rows = if p == 0 { 0 } else { self.count(p - 1) };
        let mut m = IntegerMatrix::zeros(rows, self.count(p));
        for (j, col) in self.boundary_columns(p).into_iter().enumerate() {
            for (i, s) in col {
                m[(i, j)] += s;
            }
        }
        m
    }

    /// Boundary of a dense `p`-chain.
    pub fn boundary(&self, p: usize, chain: &[i64]) -> Vec<i64> {
        let mut out = vec![0i64; if p == 0 { 0 } else { self.count(p - 1) }];
        for (j, &c) in chain.iter().enumerate() {
            if c != 0 && p > 0 {
                for (i, s) in self.faces(p, j) {
                    out[i] += s * c;
                }
            }
        }
        out
    }

    /// `(top index, codim-one face index)` incidence: for each (dim-1)-simplex its cofaces with sign.
    pub fn cofaces(&self, p: usize) -> Vec<Vec<(usize, i64)>> {
        let mut out = vec![Vec::new(); self.count(p)];
        if p < self.dim() {
            for j in 0..self.count(p + 1) {
                for (i, s) in self.faces(p + 1, j) {
                    out[i].push((j, s));
                }
            }
        }
        out
    }

    pub fn orientation(&self) -> Option<&[i8]> {
        self.orientation.as_deref()
    }

    pub fn is_manifold(&self) -> bool {
        self.manifold
    }

    /// Replaces the orientation; signs align with the stored top simplices.
    pub fn with_orientation(mut self, signs: Vec<i8>) -> Result<Self> {
        if signs.len() != self.count(self.dim()) || signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::InvalidComplex("orientation must give one sign per top simplex".into()));
        }
        self.orientation = Some(signs);
        Ok(self)
    }

    /// Orders every component consistently by propagation across shared
    /// codimension-one faces, starting with `+1` on its first top simplex.
    pub fn orient(mut self) -> Result<Self> {
        let signs = self.propagate_orientation()?;
        self.orientation = Some(signs);
        Ok(self)
    }

    fn propagate_orientation(&self) -> Result<Vec<i8>> {
        let m = self.dim();
        let n = self.count(m);
        if m == 0 {
            return Ok(vec![1; n]);
        }
        let cof = self.cofaces(m - 1);
        let mut sign = vec![0i8; n];
        for start in 0..n {
            if sign[start] != 0 {
                continue;
            }
            sign[start] = 1;
            let mut queue = VecDeque::from([start]);
            while let Some(t) = queue.pop_front() {
                for (f, s) in self.faces(m, t) {
                    let induced = sign[t] as i64 * s;
                    for &(u, su) in &cof[f] {
                        if u == t {
                            continue;
                        }
                        let want = (-induced * su) as i8;
                        if sign[u] == 0 {
                            sign[u] = want;
                            queue.push_back(u);
                        } else if sign[u] != want {
                            return Err(Error::NonOrientable(format!(
                                "{}: no consistent orientation across {}",
                                self.name,
                                self.describe(m - 1, f)
                            )));
                        }
                    }
                }
            }
        }
        Ok(sign)
    }

    /// Signed sum of the top simplices; an error if no integral top cycle exists.
    pub fn fundamental_cycle(&self) -> Result<Vec<i64>> {
        let m = self.dim();
        let signs = match &self.orientation {
            Some(o) => o.clone(),
            None => self.propagate_orientation()?,
        };
        let chain: Vec<i64> = signs.iter().map(|&s| s as i64).collect();
        if self.boundary(m, &chain).iter().any(|&x| x != 0) {
            return Err(Error::NonOrientable(format!(
                "{}: signed sum of top simplices is not a cycle",
                self.name
            )));
        }
        Ok(chain)
    }

    /// Combinatorial closed-manifold check: pure, each codimension-one simplex
    /// in exactly two top simplices, connected links for `dim >= 2`, and
    /// opposite induced orientations when oriented.
    pub fn validate_manifold(&self) -> Result<()> {
        let m = self.dim();
        let pure_tops = self.count(m);
        let covered: usize = {
            let mut hit = vec![false; self.num_vertices()];
            for s in self.simplices(m) {
                for &v in s {
                    hit[v] = true;
                }
            }
            hit.iter().filter(|&&h| h).count()
        };
        if covered != self.num_vertices() || pure_tops == 0 {
            return Err(Error::NotManifold(format!("{} is not pure", self.name)));
        }
        for p in 0..m {
            for (i, cf) in self.cofaces(p).iter().enumerate() {
                if cf.is_empty() {
                    return Err(Error::NotManifold(format!(
                        "{} is not pure at {}",
                        self.name,
                        self.describe(p, i)
                    )));
                }
            }
        }
        if m == 0 {
            return Ok(());
        }
        for (i, cf) in self.cofaces(m - 1).iter().enumerate() {
            if cf.len() != 2 {
                return Err(Error::NotManifold(format!(
                    "{}: {} has {} cofaces",
                    self.name,
                    self.describe(m - 1, i),
                    cf.len()
                )));
            }
            if let Some(o) = &self.orientation {
                let a = o[cf[0].0] as i64 * cf[0].1;
                let b = o[cf[1].0] as i64 * cf[1].1;
                if a + b != 0 {
                    return Err(Error::NotManifold(format!(
                        "{}: orientation does not cancel on {}",
                        self.name,
                        self.describe(m - 1, i)
                    )));
                }
            }
        }
        if m >= 2 {
            for v in 0..self.num_vertices() {
                if !self.link_connected(v) {
                    return Err(Error::NotManifold(format!(
                        "{}: link of vertex {} is disconnected",
                        self.name, self.labels[v]
                    )));
                }
            }
        }
        Ok(())
    }

    /// Connectivity of the link of `v`, through its top simplices sharing a
    /// codimension-one face that contains `v`.
    fn link_connected(&self, v: usize) -> bool {
        let m = self.dim();
        let tops: Vec<usize> = (0..self.count(m)).filter(|&i| self.simplices[m][i].contains(&v)).collect();
        if tops.is_empty() {
            return false;
        }
        let mut by_face: HashMap<usize, Vec<usize>> = HashMap::new();
        for (k, &t) in tops.iter().enumerate() {
            for (f, _) in self.faces(m, t) {
                if self.simplices[m - 1][f].contains(&v) {
                    by_face.entry(f).or_default().push(k);
                }
            }
        }
        let mut seen = vec![false; tops.len()];
        let mut stack = vec![0];
        seen[0] = true;
        let faces_of: Vec<Vec<usize>> = tops
            .iter()
            .map(|&t| {
                self.faces(m, t)
                    .into_iter()
                    .map(|(f, _)| f)
                    .filter(|&f| self.simplices[m - 1][f].contains(&v))
                    .collect()
            })
            .collect();
        while let Some(k) = stack.pop() {
            for f in &faces_of[k] {
                for &k2 in &by_face[f] {
                    if !seen[k2] {
                        seen[k2] = true;
                        stack.push(k2);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Validates and flags this complex as a closed oriented manifold,
    /// propagating an orientation first when none is stored.
    pub fn into_manifold(self) -> Result<Self> {
        let mut k = if self.orientation.is_some() { self } else { self.orient()? };
        k.validate_manifold()?;
        k.fundamental_cycle()?;
        k.manifold = true;
        Ok(k)
    }

    /// Same complex with every simplex re-sorted by rank in `order`
    /// (vertex indices and labels are unchanged).
    pub fn with_vertex_order(&self, order: &[usize]) -> Result<Self> {
        if sorted(order) != (0..self.num_vertices()).collect::<Vec<_>>() {
            return Err(Error::InvalidComplex("order must list every vertex once".into()));
        }
        let mut rank = vec![0; order.len()];
        for (r, &v) in order.iter().enumerate() {
            rank[v] = r;
        }
        let resort = |s: &Simplex| {
            let mut t = s.clone();
            t.sort_by_key(|&v| rank[v]);
            t
        };
        let mut tops = Vec::new();
        let mut signs = Vec::new();
        for p in 0..=self.dim() {
            let cof = self.cofaces(p);
            for (i, s) in self.simplices(p).iter().enumerate() {
                if !cof[i].is_empty() {
                    continue;
                }
                let t = resort(s);
                if let Some(o) = &self.orientation {
                    signs.push((o[i] as i64 * permutation_sign(&t, s)) as i8);
                }
                tops.push(t);
            }
        }
        let orientation = self.orientation.as_ref().map(|_| signs);
        let mut k = OrientedComplex::new(self.name.clone(), self.labels.clone(), tops, orientation, Ordering::Local)?;
        k.manifold = self.manifold;
        Ok(k)
    }

    /// Re-sorts every simplex by vertex index.
    pub fn with_total_order(&self) -> Self {
        let order: Vec<usize> = (0..self.num_vertices()).collect();
        self.with_vertex_order(&order).expect("identity order is valid")
    }

    /// Flag setter for manifold status after validation by the caller.
    pub(crate) fn set_manifold(&mut self, flag: bool) {
        self.manifold = flag;
    }
}

/// Builds a complex from labelled top simplices with a total vertex order.
pub fn build_complex<L: AsRef<str>>(
    name: &str,
    top_simplices: &[Vec<L>],
    vertex_order: &[L],
) -> Result<OrientedComplex> {
    let labels: Vec<String> = vertex_order.iter().map(|l| l.as_ref().to_string()).collect();
    let pos: HashMap<&str, usize> = labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
    if pos.len() != labels.len() {
        return Err(Error::InvalidComplex("vertex order lists a vertex twice".into()));
    }
    let tops = top_simplices
        .iter()
        .map(|t| {
            t.iter()
                .map(|l| {
                    pos.get(l.as_ref())
                        .copied()
                        .ok_or_else(|| Error::InvalidComplex(format!("vertex {} not in vertex order", l.as_ref())))
                })
                .collect::<Result<Vec<usize>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    OrientedComplex::new(name, labels, tops, None, Ordering::Total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn triangle_boundary_is_c3() {
        let k = build_complex("c3", &[vec!["0", "1"], vec!["1", "2"], vec!["0", "2"]], &["0", "1", "2"]).unwrap();
        assert_eq!(k.f_vector(), vec![3, 3]);
        assert_eq!(k.euler_characteristic(), 0);
        let z = k.fundamental_cycle().unwrap();
        assert!(k.boundary(1, &z).iter().all(|&x| x == 0));
    }

    #[test]
    fn tetrahedron_f_vector() {
        let k = catalog::tetrahedron();
        assert_eq!(k.f_vector(), vec![4, 6, 4]);
        k.validate_manifold().unwrap();
    }

    #[test]
    fn single_vertex() {
        let k = build_complex("pt", &[vec!["a"]], &["a"]).unwrap();
        assert_eq!(k.dim(), 0);
        assert_eq!(k.euler_characteristic(), 1);
    }

    #[test]
    fn empty_input_rejected() {
        let tops: Vec<Vec<&str>> = vec![];
        assert!(matches!(build_complex("e", &tops, &["a"]), Err(Error::Empty(_))));
    }

    #[test]
    fn conflicting_duplicate_orientation() {
        let labels = vec!["0".to_string(), "1".to_string()];
        let r = OrientedComplex::new("x", labels, vec![vec![0, 1], vec![1, 0]], Some(vec![1, 1]), Ordering::Total);
        assert!(matches!(r, Err(Error::ConflictingOrientation { .. })));
    }

    #[test]
    fn consistent_duplicate_merged() {
        let labels = vec!["0".to_string(), "1".to_string(), "2".to_string()];
        let k = OrientedComplex::new(
            "x",
            labels,
            vec![vec![0, 1, 2], vec![1, 0, 2]],
            Some(vec![1, -1]),
            Ordering::Total,
        )
        .unwrap();
        assert_eq!(k.count(2), 1);
        assert_eq!(k.orientation().unwrap(), &[1]);
    }

    #[test]
    fn boundary_squared_vanishes_on_catalog() {
        for k in catalog::test_manifolds() {
            for p in 1..k.dim() {
                let prod = k.boundary_matrix(p).mul(&k.boundary_matrix(p + 1));
                assert!(prod.is_zero(), "{} at p={}", k.name(), p);
            }
        }
    }

    #[test]
    fn rp2_has_no_fundamental_cycle() {
        let k = catalog::rp2();
        assert!(matches!(k.fundamental_cycle(), Err(Error::NonOrientable(_))));
    }

    #[test]
    fn cyclic_local_order_on_circle() {
        let k = catalog::circle(5);
        assert_eq!(k.simplex(1, k.find(&[0, 4]).unwrap()), &[4, 0]);
        k.validate_manifold().unwrap();
    }

    #[test]
    fn inconsistent_local_order_rejected() {
        let labels: Vec<String> = (0..3).map(|i| i.to_string()).collect();
        let r = OrientedComplex::new("x", labels, vec![vec![0, 1, 2], vec![1, 0]], None, Ordering::Local);
        assert!(r.is_err());
    }

    #[test]
    fn wedge_is_not_a_manifold() {
        let k = build_complex(
            "wedge",
            &[vec!["0", "1"], vec!["1", "2"], vec!["0", "2"], vec!["0", "3"], vec!["3", "4"], vec!["0", "4"]],
            &["0", "1", "2", "3", "4"],
        )
        .unwrap();
        assert!(matches!(k.validate_manifold(), Err(Error::NotManifold(_))));
        let pinched = catalog::pinched_sphere_pair();
        assert!(matches!(pinched.validate_manifold(), Err(Error::NotManifold(_))));
    }
}
