//! Total vertex orders making a family of maps weakly monotone.

use std::collections::BTreeMap;

use super::subdivision::permutations;
use crate::algebra::SimplicialMapData;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompatibleOrders {
    /// Domain vertices from first to last.
    pub domain_order: Vec<usize>,
    /// One order per distinct codomain, keyed by complex name.
    pub codomain_orders: BTreeMap<String, Vec<usize>>,
}

/// Largest shared codomain for which every total order is tried.
const EXHAUSTIVE_LIMIT: usize = 6;

/// All maps must share a domain. Codomain orders start from the stored
/// vertex order; for a single shared small codomain every order is tried.
/// Within each domain simplex, `u < v` is forced exactly when `f(u) < f(v)`
/// for some map `f`, and the domain order is a topological sort of those
/// constraints.
pub fn find_compatible_orders(maps: &[&SimplicialMapData]) -> Result<CompatibleOrders> {
    let Some(first) = maps.first() else {
        return Err(Error::Empty("no maps given".into()));
    };
    let domain = first.domain();
    if maps.iter().any(|f| f.domain().name() != domain.name() || f.domain().num_vertices() != domain.num_vertices()) {
        return Err(Error::DimensionMismatch("maps must share a domain".into()));
    }
    let mut codomains: BTreeMap<String, usize> = BTreeMap::new();
    for f in maps {
        codomains.insert(f.codomain().name().to_string(), f.codomain().num_vertices());
    }
    let identity = |n: usize| (0..n).collect::<Vec<usize>>();
    let start: BTreeMap<String, Vec<usize>> = codomains.iter().map(|(k, &n)| (k.clone(), identity(n))).collect();
    let first_try = solve(maps, &start);
    match first_try {
        Ok(domain_order) => Ok(CompatibleOrders { domain_order, codomain_orders: start }),
        Err(cycle) if codomains.len() == 1 => {
            let (name, &n) = codomains.iter().next().unwrap();
            if n <= EXHAUSTIVE_LIMIT {
                for order in permutations(&identity(n)) {
                    let orders = BTreeMap::from([(name.clone(), order)]);
                    if let Ok(domain_order) = solve(maps, &orders) {
                        return Ok(CompatibleOrders { domain_order, codomain_orders: orders });
                    }
                }
            }
            Err(describe_cycle(domain, &cycle))
        }
        Err(cycle) => Err(describe_cycle(domain, &cycle)),
    }
}

fn describe_cycle(domain: &super::OrientedComplex, cycle: &[usize]) -> Error {
    let names: Vec<&str> = cycle.iter().map(|&v| domain.label(v)).collect();
    Error::OrderCycle(names.join(" < "))
}

/// Domain order, or a directed constraint cycle.
fn solve(maps: &[&SimplicialMapData], orders: &BTreeMap<String, Vec<usize>>) -> std::result::Result<Vec<usize>, Vec<usize>> {
    let domain = maps[0].domain();
    let n = domain.num_vertices();
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n];
    for f in maps {
        let order = &orders[f.codomain().name()];
        let mut rank = vec![0; order.len()];
        for (r, &v) in order.iter().enumerate() {
            rank[v] = r;
        }
        for e in domain.simplices(1) {
            let (a, b) = (e[0], e[1]);
            let (ra, rb) = (rank[f.image(a)], rank[f.image(b)]);
            if ra < rb {
                succ[a].push(b);
            } else if rb < ra {
                succ[b].push(a);
            }
        }
    }
    for s in succ.iter_mut() {
        s.sort_unstable();
        s.dedup();
    }
    // Kahn's algorithm, smallest index first for determinism.
    let mut indeg = vec![0; n];
    for s in &succ {
        for &t in s {
            indeg[t] += 1;
        }
    }
    let mut ready: std::collections::BTreeSet<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut out = Vec::with_capacity(n);
    while let Some(&v) = ready.iter().next() {
        ready.remove(&v);
        out.push(v);
        for &t in &succ[v] {
            indeg[t] -= 1;
            if indeg[t] == 0 {
                ready.insert(t);
            }
        }
    }
    if out.len() == n {
        return Ok(out);
    }
    // Extract a cycle among the remaining vertices.
    let remaining: Vec<bool> = (0..n).map(|v| indeg[v] > 0).collect();
    let start = (0..n).find(|&v| remaining[v]).unwrap();
    let mut seen = vec![usize::MAX; n];
    let mut path = Vec::new();
    let mut v = start;
    loop {
        if seen[v] != usize::MAX {
            let mut cycle = path[seen[v]..].to_vec();
            cycle.push(v);
            return Err(cycle);
        }
        seen[v] = path.len();
        path.push(v);
        v = *succ[v].iter().find(|&&t| remaining[t]).unwrap();
    }
}
