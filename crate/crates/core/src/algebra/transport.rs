//! Moving (co)chains between `K`, its subdivision `K'` and the dual cells `K*`.
//!
//! `K -> K'` on chains is subdivision; `K' -> K` is the last-vertex map `π`.
//! Cochains go the other way: `π^#` up and `sd^#` down. A chain on `K*` in
//! degree `q` lists coefficients of the dual cells `s*` with `dim s = m - q`.

use serde::Serialize;

use crate::complex::{DualCellComplex, OrientedComplex};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Level {
    K,
    KPrime,
    KStar,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Chain,
    Cochain,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Transported {
    pub level: Level,
    pub kind: Kind,
    pub degree: usize,
    pub values: Vec<i64>,
}

/// `<u, c>` for a cochain and chain of the same degree.
pub fn kronecker(u: &[i64], c: &[i64]) -> Result<i64> {
    if u.len() != c.len() {
        return Err(Error::DimensionMismatch(format!("pairing {} values with {}", u.len(), c.len())));
    }
    Ok(u.iter().zip(c).map(|(a, b)| a * b).sum())
}

/// Push a chain along a vertex map, dropping degenerate images.
pub(crate) fn push_along(src: &OrientedComplex, dst: &OrientedComplex, vmap: &[usize], p: usize, chain: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; dst.count(p)];
    for (i, &c) in chain.iter().enumerate() {
        if c != 0 {
            if let Some((j, s)) = image(src, dst, vmap, p, i) {
                out[j] += s * c;
            }
        }
    }
    out
}

pub(crate) fn pull_along(src: &OrientedComplex, dst: &OrientedComplex, vmap: &[usize], p: usize, cochain: &[i64]) -> Vec<i64> {
    (0..src.count(p)).map(|i| image(src, dst, vmap, p, i).map_or(0, |(j, s)| s * cochain[j])).collect()
}

fn image(src: &OrientedComplex, dst: &OrientedComplex, vmap: &[usize], p: usize, i: usize) -> Option<(usize, i64)> {
    let img: Vec<usize> = src.simplex(p, i).iter().map(|&v| vmap[v]).collect();
    let mut check = img.clone();
    check.sort_unstable();
    check.dedup();
    if check.len() != img.len() {
        return None;
    }
    dst.locate(&img)
}

fn expect_len(x: &Transported, n: usize) -> Result<()> {
    if x.values.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "{:?} {:?} of degree {} has {} values, expected {}",
            x.level,
            x.kind,
            x.degree,
            x.values.len(),
            n
        )));
    }
    Ok(())
}

pub fn cochain_transport(dc: &DualCellComplex, x: &Transported, target: Level) -> Result<Transported> {
    let sub = dc.subdivision();
    let (k, kp) = (sub.parent(), sub.child());
    let m = k.dim();
    let q = x.degree;
    if q > m {
        return Err(Error::DegreeOutOfRange { degree: q as isize, max: m });
    }
    let out = |level, values| Ok(Transported { level, kind: x.kind, degree: q, values });
    match (x.kind, x.level, target) {
        (_, a, b) if a == b => Ok(x.clone()),
        (Kind::Chain, Level::K, Level::KPrime) => {
            expect_len(x, k.count(q))?;
            out(Level::KPrime, sub.subdivide_chain(q, &x.values))
        }
        (Kind::Chain, Level::KPrime, Level::K) => {
            expect_len(x, kp.count(q))?;
            out(Level::K, push_along(kp, k, &sub.last_vertex_map(), q, &x.values))
        }
        (Kind::Chain, Level::KStar, Level::KPrime) => {
            expect_len(x, k.count(m - q))?;
            let mut v = vec![0i64; kp.count(q)];
            for (s, &c) in x.values.iter().enumerate() {
                if c != 0 {
                    for &(j, e) in dc.dual_cell(m - q, s) {
                        v[j] += c * e;
                    }
                }
            }
            out(Level::KPrime, v)
        }
        (Kind::Cochain, Level::K, Level::KPrime) => {
            expect_len(x, k.count(q))?;
            out(Level::KPrime, pull_along(kp, k, &sub.last_vertex_map(), q, &x.values))
        }
        (Kind::Cochain, Level::KPrime, Level::KStar) => {
            expect_len(x, kp.count(q))?;
            let v = (0..k.count(m - q))
                .map(|s| dc.dual_cell(m - q, s).iter().map(|&(j, e)| e * x.values[j]).sum())
                .collect();
            out(Level::KStar, v)
        }
        (Kind::Cochain, Level::KPrime, Level::K) => {
            expect_len(x, kp.count(q))?;
            let v = (0..k.count(q))
                .map(|i| {
                    let mut e = vec![0i64; k.count(q)];
                    e[i] = 1;
                    sub.subdivide_chain(q, &e).iter().zip(&x.values).map(|(a, b)| a * b).sum()
                })
                .collect();
            out(Level::K, v)
        }
        (Kind::Cochain, Level::K, Level::KStar) => {
            let up = cochain_transport(dc, x, Level::KPrime)?;
            cochain_transport(dc, &up, Level::KStar)
        }
        (kind, from, to) => Err(Error::Unsupported {
            component: format!("{kind:?} transport"),
            reason: format!("{from:?} -> {to:?} has no cellular model here"),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn chain(level: Level, degree: usize, values: Vec<i64>) -> Transported {
        Transported { level, kind: Kind::Chain, degree, values }
    }

    #[test]
    fn subdivision_then_last_vertex_is_identity() {
        for k in catalog::test_manifolds() {
            let dc = DualCellComplex::new(&k).unwrap();
            for p in 0..=k.dim() {
                for i in 0..k.count(p) {
                    let mut e = vec![0; k.count(p)];
                    e[i] = 1;
                    let up = cochain_transport(&dc, &chain(Level::K, p, e.clone()), Level::KPrime).unwrap();
                    let back = cochain_transport(&dc, &up, Level::K).unwrap();
                    assert_eq!(back.values, e, "{} p={p}", k.name());
                }
            }
        }
    }

    #[test]
    fn kronecker_adjunction() {
        // <pi^# u, c'> = <u, pi_# c'>
        let k = catalog::octahedron();
        let dc = DualCellComplex::new(&k).unwrap();
        let kp = dc.subdivision().child();
        let u: Vec<i64> = (0..k.count(1)).map(|i| (i as i64 * 7) % 5 - 2).collect();
        let c: Vec<i64> = (0..kp.count(1)).map(|i| (i as i64 * 3) % 4 - 1).collect();
        let pu = cochain_transport(&dc, &Transported { level: Level::K, kind: Kind::Cochain, degree: 1, values: u.clone() }, Level::KPrime).unwrap();
        let pc = cochain_transport(&dc, &chain(Level::KPrime, 1, c.clone()), Level::K).unwrap();
        assert_eq!(kronecker(&pu.values, &c).unwrap(), kronecker(&u, &pc.values).unwrap());
    }

    #[test]
    fn unsupported_direction() {
        let k = catalog::circle(3);
        let dc = DualCellComplex::new(&k).unwrap();
        let x = chain(Level::K, 0, vec![1, 0, 0]);
        assert!(matches!(cochain_transport(&dc, &x, Level::KStar), Err(Error::Unsupported { .. })));
    }

    #[test]
    fn length_checked() {
        let k = catalog::circle(3);
        let dc = DualCellComplex::new(&k).unwrap();
        assert!(cochain_transport(&dc, &chain(Level::K, 0, vec![1]), Level::KPrime).is_err());
        assert!(kronecker(&[1], &[1, 2]).is_err());
    }
}
