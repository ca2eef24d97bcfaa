use std::collections::VecDeque;

use super::{OrientedComplex, Subcomplex};

#[derive(Clone, Debug)]
pub struct PseudoManifoldReport {
    pub subject: String,
    pub d: usize,
    /// Every simplex lies in a `d`-simplex, and nothing exceeds dimension `d`.
    pub pure: bool,
    /// Every `(d-1)`-simplex has exactly two `d`-cofaces.
    pub two_cofaces: bool,
    pub orientable: bool,
    pub is_pseudo_manifold: bool,
    /// Connected through `(d-1)`-faces; partitions the `d`-simplices.
    pub irreducible_components: Vec<Subcomplex>,
    /// One dense `d`-cycle per component when orientable.
    pub fundamental_cycles: Vec<Vec<i64>>,
    pub failures: Vec<String>,
}

pub fn pseudo_manifold_analyze(k: &OrientedComplex, x: &Subcomplex, d: usize) -> PseudoManifoldReport {
    let mut failures = Vec::new();
    let top = x.indices(d);
    let mut in_top = vec![false; k.count(d)];
    for &i in &top {
        in_top[i] = true;
    }

    let mut pure = x.dim().is_none_or(|dx| dx <= d);
    if !pure {
        failures.push(format!("{} has simplices above dimension {}", x.name(), d));
    }
    let cofaces: Vec<Vec<Vec<(usize, i64)>>> = (0..d.min(k.dim() + 1)).map(|p| k.cofaces(p)).collect();
    for p in 0..d.min(k.dim() + 1) {
        for i in x.indices(p) {
            // walk up: is (p, i) below some d-simplex of X?
            let mut frontier = vec![i];
            let mut level = p;
            while level < d && !frontier.is_empty() {
                let mut next: Vec<usize> = frontier
                    .iter()
                    .flat_map(|&f| cofaces[level][f].iter().map(|&(t, _)| t))
                    .filter(|&t| x.contains(level + 1, t))
                    .collect();
                next.sort_unstable();
                next.dedup();
                frontier = next;
                level += 1;
            }
            if frontier.is_empty() {
                pure = false;
                failures.push(format!("not pure: {} is not a face of a {}-simplex", k.describe(p, i), d));
            }
        }
    }

    let mut two_cofaces = true;
    let neighbors: Vec<Vec<(usize, usize, i64, i64)>> = if d == 0 || d > k.dim() {
        vec![Vec::new(); k.count(d)]
    } else {
        let cof = &cofaces[d - 1];
        let mut nb = vec![Vec::new(); k.count(d)];
        for f in x.indices(d - 1) {
            let inside: Vec<(usize, i64)> = cof[f].iter().copied().filter(|&(t, _)| in_top[t]).collect();
            if inside.len() != 2 {
                two_cofaces = false;
                failures.push(format!(
                    "branching or boundary: {} has {} cofaces of dimension {}",
                    k.describe(d - 1, f),
                    inside.len(),
                    d
                ));
            }
            for a in 0..inside.len() {
                for b in 0..inside.len() {
                    if a != b {
                        nb[inside[a].0].push((inside[b].0, f, inside[a].1, inside[b].1));
                    }
                }
            }
        }
        nb
    };

    let mut comp = vec![usize::MAX; k.count(d)];
    let mut sign = vec![0i64; k.count(d)];
    let mut orientable = true;
    let mut n_comp = 0;
    for &start in &top {
        if comp[start] != usize::MAX {
            continue;
        }
        comp[start] = n_comp;
        sign[start] = 1;
        let mut queue = VecDeque::from([start]);
        while let Some(t) = queue.pop_front() {
            for &(u, _f, st, su) in &neighbors[t] {
                // opposite induced orientations on the shared face
                let want = -sign[t] * st * su;
                if comp[u] == usize::MAX {
                    comp[u] = n_comp;
                    sign[u] = want;
                    queue.push_back(u);
                } else if sign[u] != want && orientable {
                    orientable = false;
                    failures.push(format!("not orientable: orientation clash at {}", k.describe(d, u)));
                }
            }
        }
        n_comp += 1;
    }

    let mut irreducible_components = Vec::with_capacity(n_comp);
    let mut fundamental_cycles = Vec::with_capacity(n_comp);
    for c in 0..n_comp {
        let cells: Vec<(usize, usize)> = top.iter().filter(|&&t| comp[t] == c).map(|&t| (d, t)).collect();
        irreducible_components.push(Subcomplex::from_indices(k, format!("{}/{}", x.name(), c), &cells));
        if orientable {
            let mut z = vec![0i64; k.count(d)];
            for &(_, t) in &cells {
                z[t] = sign[t];
            }
            fundamental_cycles.push(z);
        }
    }
    if !orientable {
        fundamental_cycles.clear();
    }
    PseudoManifoldReport {
        subject: x.name().to_string(),
        d,
        pure,
        two_cofaces,
        orientable,
        is_pseudo_manifold: pure && two_cofaces && orientable && !top.is_empty(),
        irreducible_components,
        fundamental_cycles,
        failures,
    }
}
