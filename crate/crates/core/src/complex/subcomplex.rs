use std::collections::BTreeSet;

use super::OrientedComplex;
use crate::error::{Error, Result};

/// A face-closed set of simplices of a fixed complex, stored as per-dimension membership flags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subcomplex {
    name: String,
    member: Vec<Vec<bool>>,
}

impl Subcomplex {
    pub fn empty(k: &OrientedComplex, name: impl Into<String>) -> Self {
        Subcomplex { name: name.into(), member: (0..=k.dim()).map(|p| vec![false; k.count(p)]).collect() }
    }

    pub fn whole(k: &OrientedComplex) -> Self {
        Subcomplex { name: k.name().to_string(), member: (0..=k.dim()).map(|p| vec![true; k.count(p)]).collect() }
    }

    /// Face closure of the given vertex sets; each must be a simplex of `k`.
    pub fn from_simplices(k: &OrientedComplex, name: impl Into<String>, simplices: &[Vec<usize>]) -> Result<Self> {
        let mut s = Self::empty(k, name);
        for t in simplices {
            let i = k.find(t).ok_or_else(|| {
                Error::NotSubcomplex(format!("{:?} is not a simplex of {}", t, k.name()))
            })?;
            s.insert_closed(k, t.len() - 1, i);
        }
        Ok(s)
    }

    /// Face closure of simplices given by `(dimension, index)`.
    pub fn from_indices(k: &OrientedComplex, name: impl Into<String>, cells: &[(usize, usize)]) -> Self {
        let mut s = Self::empty(k, name);
        for &(p, i) in cells {
            s.insert_closed(k, p, i);
        }
        s
    }

    /// Full subcomplex: every simplex all of whose vertices lie in `vertices`.
    pub fn full(k: &OrientedComplex, name: impl Into<String>, vertices: &[usize]) -> Self {
        let mut inside = vec![false; k.num_vertices()];
        for &v in vertices {
            inside[v] = true;
        }
        Subcomplex {
            name: name.into(),
            member: (0..=k.dim())
                .map(|p| k.simplices(p).iter().map(|s| s.iter().all(|&v| inside[v])).collect())
                .collect(),
        }
    }

    /// Builds from raw flags, checking face closure.
    pub fn from_flags(k: &OrientedComplex, name: impl Into<String>, member: Vec<Vec<bool>>) -> Result<Self> {
        let s = Subcomplex { name: name.into(), member };
        if s.member.len() != k.dim() + 1 || (0..=k.dim()).any(|p| s.member[p].len() != k.count(p)) {
            return Err(Error::NotSubcomplex(format!("{}: shape does not match {}", s.name, k.name())));
        }
        for p in 1..=k.dim() {
            for i in 0..k.count(p) {
                if s.member[p][i] && k.faces(p, i).iter().any(|&(f, _)| !s.member[p - 1][f]) {
                    return Err(Error::NotSubcomplex(format!(
                        "{}: {} is present without all of its faces",
                        s.name,
                        k.describe(p, i)
                    )));
                }
            }
        }
        Ok(s)
    }

    fn insert_closed(&mut self, k: &OrientedComplex, p: usize, i: usize) {
        if self.member[p][i] {
            return;
        }
        self.member[p][i] = true;
        for (f, _) in k.faces(p, i) {
            self.insert_closed(k, p - 1, f);
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn contains(&self, p: usize, i: usize) -> bool {
        self.member.get(p).and_then(|m| m.get(i)).copied().unwrap_or(false)
    }

    pub fn flags(&self, p: usize) -> &[bool] {
        self.member.get(p).map_or(&[], |m| m.as_slice())
    }

    /// Indices of member `p`-simplices, ascending.
    pub fn indices(&self, p: usize) -> Vec<usize> {
        self.flags(p).iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect()
    }

    pub fn count(&self, p: usize) -> usize {
        self.flags(p).iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        self.count(0) == 0
    }

    pub fn dim(&self) -> Option<usize> {
        (0..self.member.len()).rev().find(|&p| self.count(p) > 0)
    }

    pub fn vertices(&self, k: &OrientedComplex) -> Vec<usize> {
        self.indices(0).into_iter().map(|i| k.simplex(0, i)[0]).collect()
    }

    pub fn is_full(&self, k: &OrientedComplex) -> bool {
        let full = Self::full(k, "", &self.vertices(k));
        full.member == self.member
    }

    /// Full subcomplex on the vertices outside this one.
    pub fn complement_full(&self, k: &OrientedComplex) -> Subcomplex {
        let inside: BTreeSet<usize> = self.vertices(k).into_iter().collect();
        let outside: Vec<usize> = (0..k.num_vertices()).filter(|v| !inside.contains(v)).collect();
        Self::full(k, format!("{}^c", self.name), &outside)
    }

    pub fn union(&self, other: &Subcomplex) -> Subcomplex {
        self.zip(other, |a, b| a || b, format!("{}+{}", self.name, other.name))
    }

    pub fn intersection(&self, other: &Subcomplex) -> Subcomplex {
        self.zip(other, |a, b| a && b, format!("{}*{}", self.name, other.name))
    }

    fn zip(&self, other: &Subcomplex, f: impl Fn(bool, bool) -> bool, name: String) -> Subcomplex {
        Subcomplex {
            name,
            member: self
                .member
                .iter()
                .zip(&other.member)
                .map(|(a, b)| a.iter().zip(b).map(|(&x, &y)| f(x, y)).collect())
                .collect(),
        }
    }

    pub fn is_subset_of(&self, other: &Subcomplex) -> bool {
        self.member.iter().zip(&other.member).all(|(a, b)| a.iter().zip(b).all(|(&x, &y)| !x || y))
    }

    /// Connected components, ordered by smallest vertex index.
    pub fn components(&self, k: &OrientedComplex) -> Vec<Subcomplex> {
        let verts = self.vertices(k);
        let mut comp_of = vec![usize::MAX; k.num_vertices()];
        let mut parent: Vec<usize> = (0..k.num_vertices()).collect();
        fn root(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for i in self.indices(1) {
            let e = k.simplex(1, i);
            let (a, b) = (root(&mut parent, e[0]), root(&mut parent, e[1]));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut roots: Vec<usize> = Vec::new();
        for &v in &verts {
            let r = root(&mut parent, v);
            if !roots.contains(&r) {
                roots.push(r);
            }
            comp_of[v] = roots.iter().position(|&x| x == r).unwrap();
        }
        let mut out: Vec<Subcomplex> = (0..roots.len())
            .map(|c| Self::empty(k, format!("{}#{}", self.name, c)))
            .collect();
        for p in 0..self.member.len() {
            for i in self.indices(p) {
                let c = comp_of[k.simplex(p, i)[0]];
                out[c].member[p][i] = true;
            }
        }
        out
    }
}
