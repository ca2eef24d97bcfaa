use std::sync::Arc;

use super::homology::{cohomology, homology, matrix_of, Support, Variance};
use super::transport::{pull_along, push_along};
use crate::complex::{OrientedComplex, ProductComplex};
use crate::error::{Error, Result};
use crate::integer::IntegerMatrix;

/// A vertex map that sends simplices to simplices.
#[derive(Clone, Debug)]
pub struct SimplicialMapData {
    name: String,
    domain: Arc<OrientedComplex>,
    codomain: Arc<OrientedComplex>,
    vertex_map: Vec<usize>,
}

impl SimplicialMapData {
    pub fn new(
        name: impl Into<String>,
        domain: Arc<OrientedComplex>,
        codomain: Arc<OrientedComplex>,
        vertex_map: Vec<usize>,
    ) -> Result<Self> {
        let name = name.into();
        if vertex_map.len() != domain.num_vertices() {
            return Err(Error::DimensionMismatch(format!(
                "{name}: vertex map has {} entries for {} vertices",
                vertex_map.len(),
                domain.num_vertices()
            )));
        }
        if let Some(&w) = vertex_map.iter().find(|&&w| w >= codomain.num_vertices()) {
            return Err(Error::InvalidComplex(format!("{name}: vertex {w} is not in {}", codomain.name())));
        }
        for p in 1..=domain.dim() {
            for (i, s) in domain.simplices(p).iter().enumerate() {
                let mut img: Vec<usize> = s.iter().map(|&v| vertex_map[v]).collect();
                img.sort_unstable();
                img.dedup();
                if codomain.find(&img).is_none() {
                    return Err(Error::NonSimplicial { simplex: domain.describe(p, i) });
                }
            }
        }
        Ok(SimplicialMapData { name, domain, codomain, vertex_map })
    }

    pub fn identity(k: Arc<OrientedComplex>) -> Self {
        let n = k.num_vertices();
        SimplicialMapData { name: "id".into(), domain: k.clone(), codomain: k, vertex_map: (0..n).collect() }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn domain(&self) -> &OrientedComplex {
        &self.domain
    }

    pub fn codomain(&self) -> &OrientedComplex {
        &self.codomain
    }

    pub fn domain_arc(&self) -> &Arc<OrientedComplex> {
        &self.domain
    }

    pub fn codomain_arc(&self) -> &Arc<OrientedComplex> {
        &self.codomain
    }

    pub fn image(&self, v: usize) -> usize {
        self.vertex_map[v]
    }

    pub fn vertex_map(&self) -> &[usize] {
        &self.vertex_map
    }

    /// `f(s)` with repeats collapsed, or an error naming `s` when that
    /// sequence is not the stored vertex order of the image simplex.
    pub fn check_order_compatible(&self) -> Result<()> {
        for p in 1..=self.domain.dim() {
            for (i, s) in self.domain.simplices(p).iter().enumerate() {
                let mut img: Vec<usize> = s.iter().map(|&v| self.vertex_map[v]).collect();
                img.dedup();
                let q = img.len() - 1;
                let stored = self.codomain.find(&img).map(|j| self.codomain.simplex(q, j));
                if stored != Some(img.as_slice()) {
                    return Err(Error::OrderIncompatible { simplex: self.domain.describe(p, i) });
                }
            }
        }
        Ok(())
    }

    pub fn push_chain(&self, p: usize, chain: &[i64]) -> Vec<i64> {
        push_along(&self.domain, &self.codomain, &self.vertex_map, p, chain)
    }

    pub fn pull_cochain(&self, p: usize, cochain: &[i64]) -> Vec<i64> {
        pull_along(&self.domain, &self.codomain, &self.vertex_map, p, cochain)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &SimplicialMapData) -> Result<SimplicialMapData> {
        if other.domain.name() != self.codomain.name() || other.domain.num_vertices() != self.codomain.num_vertices() {
            return Err(Error::DimensionMismatch(format!("cannot compose {} after {}", other.name, self.name)));
        }
        SimplicialMapData::new(
            format!("{}∘{}", other.name, self.name),
            self.domain.clone(),
            other.codomain.clone(),
            self.vertex_map.iter().map(|&v| other.vertex_map[v]).collect(),
        )
    }

    /// `v -> (f v, g v)` into a product of the codomains.
    pub fn pair(f: &SimplicialMapData, g: &SimplicialMapData, product: &ProductComplex) -> Result<SimplicialMapData> {
        if f.domain.name() != g.domain.name() {
            return Err(Error::DimensionMismatch("paired maps must share a domain".into()));
        }
        SimplicialMapData::new(
            format!("({},{})", f.name, g.name),
            f.domain.clone(),
            Arc::new(product.complex().clone()),
            (0..f.domain.num_vertices()).map(|v| product.vertex(f.image(v), g.image(v))).collect(),
        )
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }
}

/// Matrix of `f_*` on `H_p` or `f^*` on `H^p` in generator coordinates.
pub fn induced_map(f: &SimplicialMapData, p: usize, variance: Variance) -> Result<IntegerMatrix> {
    match variance {
        Variance::Homology => {
            let src = homology(f.domain(), p, &Support::Absolute)?;
            let dst = homology(f.codomain(), p, &Support::Absolute)?;
            matrix_of(&src, &dst, |z| f.push_chain(p, z))
        }
        Variance::Cohomology => {
            let src = cohomology(f.codomain(), p, &Support::Absolute)?;
            let dst = cohomology(f.domain(), p, &Support::Absolute)?;
            matrix_of(&src, &dst, |u| f.pull_cochain(p, u))
        }
    }
}
