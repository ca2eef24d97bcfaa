//! Reading complexes and maps from the files named on the command line.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::Arc;

use lefschetz::algebra::SimplicialMapData;
use lefschetz::coincidence::PLTarget;
use lefschetz::complex::OrientedComplex;
use lefschetz::io::{parse_input, InputFile, MapFile};
use lefschetz::Error;

use crate::CliError;

pub struct Inputs {
    complexes: BTreeMap<String, Arc<OrientedComplex>>,
    order: Vec<String>,
    maps: Vec<MapFile>,
}

pub struct LoadedMap {
    pub map: SimplicialMapData,
    pub target: Option<Arc<PLTarget>>,
}

impl Inputs {
    pub fn read(paths: &[PathBuf]) -> Result<Self, CliError> {
        let mut inputs = Inputs { complexes: BTreeMap::new(), order: Vec::new(), maps: Vec::new() };
        for path in paths {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))?;
            match parse_input(&text).map_err(|e| CliError::from_core(e, path))? {
                InputFile::Complex(c) => {
                    let k = c.to_complex().map_err(|e| CliError::from_core(e, path))?;
                    if inputs.complexes.contains_key(k.name()) {
                        return Err(CliError::Parse(format!("complex {} given twice", k.name())));
                    }
                    inputs.order.push(k.name().to_string());
                    inputs.complexes.insert(k.name().to_string(), Arc::new(k));
                }
                InputFile::Map(m) => inputs.maps.push(m),
            }
        }
        Ok(inputs)
    }

    pub fn complex(&self, name: &str) -> Result<Arc<OrientedComplex>, CliError> {
        self.complexes
            .get(name)
            .cloned()
            .ok_or_else(|| CliError::Parse(format!("no complex named {name} among the inputs")))
    }

    /// Complexes in command-line order.
    pub fn complexes(&self) -> Vec<Arc<OrientedComplex>> {
        self.order.iter().map(|n| self.complexes[n].clone()).collect()
    }

    pub fn single_complex(&self) -> Result<Arc<OrientedComplex>, CliError> {
        match self.order.as_slice() {
            [name] => self.complex(name),
            _ => Err(CliError::Parse(format!("expected exactly one complex, got {}", self.order.len()))),
        }
    }

    /// Maps in command-line order; realizations attach to a shared codomain.
    pub fn maps(&self) -> Result<Vec<LoadedMap>, CliError> {
        let mut targets: BTreeMap<String, Arc<PLTarget>> = BTreeMap::new();
        let mut out = Vec::new();
        for m in &self.maps {
            let (dom, cod) = (self.complex(&m.domain)?, self.complex(&m.codomain)?);
            let map = m.to_map(dom, cod.clone()).map_err(CliError::core)?;
            if let Some(t) = m.to_target(cod).map_err(CliError::core)? {
                targets.entry(m.codomain.clone()).or_insert_with(|| Arc::new(t));
            }
            out.push((m.codomain.clone(), map));
        }
        Ok(out
            .into_iter()
            .map(|(cod, map)| LoadedMap { target: targets.get(&cod).cloned(), map })
            .collect())
    }
}

/// The realized codomain shared by `maps`, required for geometric computations.
pub fn shared_target(maps: &[LoadedMap]) -> Result<Arc<PLTarget>, CliError> {
    maps.iter().find_map(|m| m.target.clone()).ok_or_else(|| {
        CliError::Core(Error::NoChart(
            "no map file carries a realization of the codomain; generate one with `examples`".into(),
        ))
    })
}
