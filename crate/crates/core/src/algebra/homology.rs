//! Homology and cohomology as subquotients `ker A / im B` with explicit bases.
//!
//! With `A` the outgoing map and `B` the incoming one, `SNF(A)` gives
//! `L A R = D` of rank `r`; the columns `R[:, r..]` span `ker A` and
//! `V[r.., :]` (with `V = R^{-1}`) reads off kernel coordinates. Boundaries
//! become `Y = V[r.., :] B`, and `SNF(Y) = U2 D2 V2` splits the quotient into
//! torsion summands (`d_i > 1`) followed by a free part.

use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::complex::{OrientedComplex, SparseChain, Subcomplex};
use crate::error::{Error, Result};
use crate::integer::{snf_tracked, Int, IntegerMatrix, Track};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Variance {
    Homology,
    Cohomology,
}

/// Which simplices carry (co)chains.
#[derive(Clone, Copy, Debug)]
pub enum Support<'a> {
    Absolute,
    /// Chains or cochains on a subcomplex.
    Sub(&'a Subcomplex),
    /// Relative to a subcomplex: simplices outside it.
    RelativeTo(&'a Subcomplex),
}

impl Support<'_> {
    fn includes(&self, p: usize, i: usize) -> bool {
        match self {
            Support::Absolute => true,
            Support::Sub(s) => s.contains(p, i),
            Support::RelativeTo(l) => !l.contains(p, i),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Support::Absolute => "absolute".into(),
            Support::Sub(s) => format!("on {}", s.name()),
            Support::RelativeTo(l) => format!("relative to {}", l.name()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct GradedGroup {
    pub degree: usize,
    pub variance: Variance,
    pub free_rank: usize,
    /// Invariant factors `> 1`, matching the first `torsion.len()` generators.
    pub torsion: Vec<i64>,
    /// Dense (co)chains over all `degree`-simplices of the complex; torsion first.
    pub generators: Vec<Vec<i64>>,
    /// Support description, e.g. `relative to L`.
    pub support: String,
    cells: Vec<usize>,
    position: Vec<Option<usize>>,
    functionals: IntegerMatrix,
    outgoing: Vec<SparseChain>,
}

fn to_i64(x: &Int) -> Result<i64> {
    x.to_i64().ok_or_else(|| Error::Overflow(format!("{x} does not fit in 64 bits")))
}

impl GradedGroup {
    /// Number of generators (torsion plus free).
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion.is_empty()
    }

    pub fn ambient_len(&self) -> usize {
        self.position.len()
    }

    /// Coordinates of a (co)cycle; torsion entries are reduced into `0..d`.
    pub fn coordinates(&self, z: &[i64]) -> Result<Vec<i64>> {
        if z.len() != self.position.len() {
            return Err(Error::DimensionMismatch(format!(
                "chain of length {} in a group over {} simplices",
                z.len(),
                self.position.len()
            )));
        }
        let mut restricted = vec![0i64; self.cells.len()];
        for (i, &x) in z.iter().enumerate() {
            if x == 0 {
                continue;
            }
            match self.position[i] {
                Some(k) => restricted[k] = x,
                None => {
                    return Err(Error::NotSubcomplex(format!(
                        "(co)chain has support outside {}",
                        self.support
                    )))
                }
            }
        }
        let mut image: std::collections::BTreeMap<usize, i64> = Default::default();
        for (k, &x) in restricted.iter().enumerate() {
            if x != 0 {
                for &(r, s) in &self.outgoing[k] {
                    *image.entry(r).or_insert(0) += s * x;
                }
            }
        }
        if image.values().any(|&v| v != 0) {
            return Err(Error::NoSolution(format!(
                "not a {} in degree {}",
                match self.variance {
                    Variance::Homology => "cycle",
                    Variance::Cohomology => "cocycle",
                },
                self.degree
            )));
        }
        let rb: Vec<Int> = restricted.iter().map(|&x| Int::from(x)).collect();
        let raw = self.functionals.mul_vec(&rb);
        raw.iter()
            .enumerate()
            .map(|(i, c)| {
                if i < self.torsion.len() {
                    let d = Int::from(self.torsion[i]);
                    to_i64(&(((c % &d) + &d) % &d))
                } else {
                    to_i64(c)
                }
            })
            .collect()
    }

    pub fn free_coordinates(&self, z: &[i64]) -> Result<Vec<i64>> {
        Ok(self.coordinates(z)?.split_off(self.torsion.len()))
    }

    /// `sum_i c_i g_i` as a dense (co)chain.
    pub fn combination(&self, coords: &[i64]) -> Vec<i64> {
        let mut out = vec![0i64; self.position.len()];
        for (c, g) in coords.iter().zip(&self.generators) {
            if *c != 0 {
                for (o, x) in out.iter_mut().zip(g) {
                    *o += c * x;
                }
            }
        }
        out
    }

    /// Simplex indices carrying the (co)chains.
    pub fn cells(&self) -> &[usize] {
        &self.cells
    }
}

fn cells_for(k: &OrientedComplex, p: usize, support: &Support) -> Vec<usize> {
    (0..k.count(p)).filter(|&i| support.includes(p, i)).collect()
}

fn positions(n: usize, cells: &[usize]) -> Vec<Option<usize>> {
    let mut pos = vec![None; n];
    for (k, &i) in cells.iter().enumerate() {
        pos[i] = Some(k);
    }
    pos
}

/// Restricted columns of `C_p -> C_{p-1}` (homology) or `C^p -> C^{p+1}` (cohomology).
fn restricted_map(k: &OrientedComplex, p: usize, variance: Variance, support: &Support) -> (Vec<SparseChain>, usize) {
    let src = cells_for(k, p, support);
    match variance {
        Variance::Homology => {
            if p == 0 {
                return (vec![Vec::new(); src.len()], 0);
            }
            let dst = cells_for(k, p - 1, support);
            let pos = positions(k.count(p - 1), &dst);
            let cols = src
                .iter()
                .map(|&i| k.faces(p, i).into_iter().filter_map(|(f, s)| pos[f].map(|r| (r, s))).collect())
                .collect();
            (cols, dst.len())
        }
        Variance::Cohomology => {
            if p >= k.dim() {
                return (vec![Vec::new(); src.len()], 0);
            }
            let dst = cells_for(k, p + 1, support);
            let pos = positions(k.count(p + 1), &dst);
            let cof = k.cofaces(p);
            let cols = src
                .iter()
                .map(|&i| cof[i].iter().filter_map(|&(t, s)| pos[t].map(|r| (r, s))).collect())
                .collect();
            (cols, dst.len())
        }
    }
}

pub fn homology(k: &OrientedComplex, p: usize, support: &Support) -> Result<GradedGroup> {
    graded(k, p, Variance::Homology, support)
}

pub fn cohomology(k: &OrientedComplex, p: usize, support: &Support) -> Result<GradedGroup> {
    graded(k, p, Variance::Cohomology, support)
}

fn graded(k: &OrientedComplex, p: usize, variance: Variance, support: &Support) -> Result<GradedGroup> {
    if p > k.dim() {
        return Err(Error::DegreeOutOfRange { degree: p as isize, max: k.dim() });
    }
    let cells = cells_for(k, p, support);
    let n = cells.len();
    let (outgoing, out_rows) = restricted_map(k, p, variance, support);
    // incoming map: images of the neighbouring degree, expressed in our cells
    let incoming: Vec<SparseChain> = match variance {
        Variance::Homology if p < k.dim() => restricted_map(k, p + 1, variance, support).0,
        Variance::Cohomology if p > 0 => restricted_map(k, p - 1, variance, support).0,
        _ => Vec::new(),
    };

    let mut a = IntegerMatrix::zeros(out_rows, n);
    for (j, col) in outgoing.iter().enumerate() {
        for &(r, s) in col {
            a[(r, j)] += s;
        }
    }
    let snf_a = snf_tracked(&a, Track { left: false, right: true });
    let r = snf_a.diag.len();
    let v = snf_a.v.expect("tracked");
    let r_mat = snf_a.v_inv.expect("tracked");
    let kdim = n - r;

    let inc_big: Vec<Vec<(usize, Int)>> =
        incoming.iter().map(|c| c.iter().map(|&(i, s)| (i, Int::from(s))).collect()).collect();
    let y = v.mul_sparse_rows(r..n, &inc_big);
    let snf_y = snf_tracked(&y, Track { left: true, right: false });
    let u2 = snf_y.u.expect("tracked");
    let l2 = snf_y.u_inv.expect("tracked");
    let rank_y = snf_y.diag.len();

    let mut torsion = Vec::new();
    let mut chosen = Vec::new();
    for (i, d) in snf_y.diag.iter().enumerate() {
        if *d != Int::from(1) {
            torsion.push(to_i64(d)?);
            chosen.push(i);
        }
    }
    chosen.extend(rank_y..kdim);

    let mut generators = Vec::with_capacity(chosen.len());
    let mut functionals = IntegerMatrix::zeros(chosen.len(), n);
    for (g, &i) in chosen.iter().enumerate() {
        let mut dense = vec![0i64; k.count(p)];
        for (row, &cell) in cells.iter().enumerate() {
            let mut acc = Int::zero();
            for t in 0..kdim {
                let c = &u2[(t, i)];
                if !c.is_zero() {
                    acc += &r_mat[(row, r + t)] * c;
                }
            }
            dense[cell] = to_i64(&acc)?;
        }
        generators.push(dense);
        for col in 0..n {
            let mut acc = Int::zero();
            for t in 0..kdim {
                let c = &l2[(i, t)];
                if !c.is_zero() {
                    acc += c * &v[(r + t, col)];
                }
            }
            functionals[(g, col)] = acc;
        }
    }

    Ok(GradedGroup {
        degree: p,
        variance,
        free_rank: kdim - rank_y,
        torsion,
        generators,
        support: support.describe(),
        position: positions(k.count(p), &cells),
        cells,
        functionals,
        outgoing,
    })
}

/// Matrix of a (co)chain map in generator coordinates: column `j` holds the
/// coordinates of the image of generator `j` of `src`.
pub fn matrix_of(src: &GradedGroup, dst: &GradedGroup, map: impl Fn(&[i64]) -> Vec<i64>) -> Result<IntegerMatrix> {
    let mut m = IntegerMatrix::zeros(dst.len(), src.len());
    for (j, g) in src.generators.iter().enumerate() {
        let c = dst.coordinates(&map(g))?;
        for (i, x) in c.into_iter().enumerate() {
            m[(i, j)] = Int::from(x);
        }
    }
    Ok(m)
}
