//! JSON file formats for complexes, maps and class reports, and the example catalog.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{GradedGroup, SimplicialMapData};
use crate::catalog;
use crate::coincidence::{Chart, PLTarget};
use crate::complex::{OrientedComplex, Ordering};
use crate::error::{Error, Result};

/// A vertex name as written in a file: a string or an integer.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VertexLabel {
    Int(i64),
    Str(String),
}

impl VertexLabel {
    fn text(&self) -> String {
        match self {
            VertexLabel::Int(i) => i.to_string(),
            VertexLabel::Str(s) => s.clone(),
        }
    }

    fn of(label: &str) -> Self {
        match label.parse::<i64>() {
            Ok(i) if i.to_string() == label => VertexLabel::Int(i),
            _ => VertexLabel::Str(label.to_string()),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flags {
    #[serde(default)]
    pub manifold: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderingFlag {
    Total,
    Local,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexFile {
    pub name: String,
    pub dim: usize,
    pub vertex_order: Vec<VertexLabel>,
    pub top_simplices: Vec<Vec<VertexLabel>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orientation: Option<Vec<i8>>,
    #[serde(default)]
    pub flags: Flags,
    /// `local` keeps each tuple as written; the default sorts by `vertex_order`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ordering: Option<OrderingFlag>,
}

impl ComplexFile {
    pub fn from_complex(k: &OrientedComplex) -> Self {
        let d = k.dim();
        let mut tops = Vec::new();
        let mut local = false;
        for p in 0..=d {
            let cof = k.cofaces(p);
            for (i, s) in k.simplices(p).iter().enumerate() {
                if p == d || cof[i].is_empty() {
                    local |= s.windows(2).any(|w| w[0] > w[1]);
                    tops.push(s.iter().map(|&v| VertexLabel::of(k.label(v))).collect());
                }
            }
        }
        ComplexFile {
            name: k.name().to_string(),
            dim: d,
            vertex_order: k.labels().iter().map(|l| VertexLabel::of(l)).collect(),
            top_simplices: tops,
            orientation: k.orientation().map(<[i8]>::to_vec),
            flags: Flags { manifold: k.is_manifold() },
            ordering: local.then_some(OrderingFlag::Local),
        }
    }

    pub fn to_complex(&self) -> Result<OrientedComplex> {
        let labels: Vec<String> = self.vertex_order.iter().map(VertexLabel::text).collect();
        let mut pos = BTreeMap::new();
        for (i, l) in labels.iter().enumerate() {
            if pos.insert(l.clone(), i).is_some() {
                return Err(Error::Parse(format!("vertex {l} listed twice in vertex_order")));
            }
        }
        let tops = self
            .top_simplices
            .iter()
            .map(|t| {
                t.iter()
                    .map(|l| pos.get(&l.text()).copied().ok_or_else(|| Error::Parse(format!("vertex {} not in vertex_order", l.text()))))
                    .collect::<Result<Vec<usize>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let ordering = match self.ordering {
            Some(OrderingFlag::Local) => Ordering::Local,
            _ => Ordering::Total,
        };
        let k = OrientedComplex::new(self.name.clone(), labels, tops, self.orientation.clone(), ordering)?;
        if k.dim() != self.dim {
            return Err(Error::Parse(format!("{} declares dim {} but has dimension {}", self.name, self.dim, k.dim())));
        }
        if self.flags.manifold {
            k.into_manifold()
        } else {
            Ok(k)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChartFile {
    pub vertex: VertexLabel,
    pub matrix: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub domain: String,
    pub codomain: String,
    pub vertex_map: BTreeMap<String, VertexLabel>,
    /// Integer points of the codomain vertices, for PL computations.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub realization: Option<BTreeMap<String, Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub atlas: Option<Vec<ChartFile>>,
}

fn lookup(k: &OrientedComplex, label: &str) -> Result<usize> {
    k.vertex_index(label).ok_or_else(|| Error::Parse(format!("vertex {label} is not in {}", k.name())))
}

impl MapFile {
    pub fn from_map(f: &SimplicialMapData, target: Option<&PLTarget>) -> Self {
        let (dom, cod) = (f.domain(), f.codomain());
        let label = |v: usize| cod.label(v).to_string();
        MapFile {
            name: Some(f.name().to_string()),
            domain: dom.name().to_string(),
            codomain: cod.name().to_string(),
            vertex_map: (0..dom.num_vertices()).map(|v| (dom.label(v).to_string(), VertexLabel::of(&label(f.image(v))))).collect(),
            realization: target.map(|t| (0..cod.num_vertices()).map(|w| (label(w), t.realization()[w].clone())).collect()),
            atlas: target.map(|t| {
                t.atlas().iter().map(|c| ChartFile { vertex: VertexLabel::of(&label(c.vertex)), matrix: c.matrix.clone() }).collect()
            }),
        }
    }

    fn check_name(&self, expected: &str, k: &OrientedComplex) -> Result<()> {
        if expected != k.name() {
            return Err(Error::Parse(format!("map refers to {expected} but the complex is {}", k.name())));
        }
        Ok(())
    }

    pub fn to_map(&self, domain: Arc<OrientedComplex>, codomain: Arc<OrientedComplex>) -> Result<SimplicialMapData> {
        self.check_name(&self.domain, &domain)?;
        self.check_name(&self.codomain, &codomain)?;
        let mut vm = vec![None; domain.num_vertices()];
        for (v, w) in &self.vertex_map {
            vm[lookup(&domain, v)?] = Some(lookup(&codomain, &w.text())?);
        }
        let vm = vm
            .into_iter()
            .enumerate()
            .map(|(v, w)| w.ok_or_else(|| Error::Parse(format!("vertex {} has no image", domain.label(v)))))
            .collect::<Result<Vec<_>>>()?;
        let name = self.name.clone().unwrap_or_else(|| "f".into());
        SimplicialMapData::new(name, domain, codomain, vm)
    }

    /// The realized codomain, when the file carries one.
    pub fn to_target(&self, codomain: Arc<OrientedComplex>) -> Result<Option<PLTarget>> {
        self.check_name(&self.codomain, &codomain)?;
        let Some(real) = &self.realization else {
            if self.atlas.is_some() {
                return Err(Error::Parse("an atlas needs a realization".into()));
            }
            return Ok(None);
        };
        let mut points = vec![None; codomain.num_vertices()];
        for (w, p) in real {
            points[lookup(&codomain, w)?] = Some(p.clone());
        }
        let points = points
            .into_iter()
            .enumerate()
            .map(|(w, p)| p.ok_or_else(|| Error::Parse(format!("vertex {} has no point", codomain.label(w)))))
            .collect::<Result<Vec<_>>>()?;
        let target = match &self.atlas {
            None => PLTarget::with_standard_atlas(codomain, points)?,
            Some(charts) => {
                let atlas = charts
                    .iter()
                    .map(|c| Ok(Chart { vertex: lookup(&codomain, &c.vertex.text())?, matrix: c.matrix.clone() }))
                    .collect::<Result<Vec<_>>>()?;
                PLTarget::new(codomain, points, atlas)?
            }
        };
        Ok(Some(target))
    }
}

/// Either kind of input file.
#[derive(Clone, Debug)]
pub enum InputFile {
    Complex(ComplexFile),
    Map(MapFile),
}

pub fn parse_input(text: &str) -> Result<InputFile> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let parsed = if value.get("vertex_map").is_some() {
        serde_json::from_value(value).map(InputFile::Map)
    } else if value.get("top_simplices").is_some() {
        serde_json::from_value(value).map(InputFile::Complex)
    } else {
        return Err(Error::Parse("expected a complex (top_simplices) or a map (vertex_map)".into()));
    };
    parsed.map_err(|e| Error::Parse(e.to_string()))
}

pub fn parse_complex(text: &str) -> Result<OrientedComplex> {
    let file: ComplexFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    file.to_complex()
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

/// `+2[a,b] -[b,c]` for a dense chain.
pub fn describe_chain(k: &OrientedComplex, p: usize, chain: &[i64]) -> String {
    let terms: Vec<String> = chain
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| {
            let coeff = match c {
                1 => "+".to_string(),
                -1 => "-".to_string(),
                c if c > 0 => format!("+{c}"),
                c => c.to_string(),
            };
            format!("{coeff}{}", k.describe(p, i))
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" ")
    }
}

/// A class in generator coordinates together with the generators themselves.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassReport {
    pub degree: usize,
    pub coordinates: Vec<i64>,
    pub torsion_coordinates: Vec<i64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub torsion_orders: Vec<i64>,
    pub basis: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub support: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub localized_at: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub integers: Option<Vec<i64>>,
}

impl ClassReport {
    /// `coordinates` lists torsion entries first, as the group does.
    pub fn new(k: &OrientedComplex, group: &GradedGroup, coordinates: &[i64]) -> Self {
        let t = group.torsion.len();
        ClassReport {
            degree: group.degree,
            coordinates: coordinates[t..].to_vec(),
            torsion_coordinates: coordinates[..t].to_vec(),
            torsion_orders: group.torsion.clone(),
            basis: group.generators.iter().map(|g| describe_chain(k, group.degree, g)).collect(),
            support: None,
            localized_at: None,
            integers: None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coordinates.iter().chain(&self.torsion_coordinates).all(|&c| c == 0)
    }

    pub fn with_support(mut self, name: impl Into<String>) -> Self {
        self.support = Some(name.into());
        self
    }

    /// Marks a class localized at the given components; degree 0 also lists the integers.
    pub fn localized(mut self, components: Vec<usize>, integers: Option<Vec<i64>>) -> Self {
        self.localized_at = Some(components);
        if self.degree == 0 {
            self.integers = integers;
        }
        self
    }
}

/// One generated file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExampleFile {
    pub file_name: String,
    pub contents: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExampleInfo {
    pub name: &'static str,
    pub params: &'static str,
    pub description: &'static str,
}

pub fn examples() -> Vec<ExampleInfo> {
    let e = |name, params, description| ExampleInfo { name, params, description };
    vec![
        e("circle", "n >= 3 (default 6)", "boundary of an n-gon, C_n"),
        e("tetrahedron", "", "boundary of the 3-simplex, a 2-sphere"),
        e("octahedron", "", "octahedral 2-sphere"),
        e("torus", "a, b >= 3 (default 3, 3)", "T^2 as an a x b grid, 2ab triangles"),
        e("rp2", "", "six-vertex real projective plane"),
        e("s1xs2", "", "S^1 x S^2 as a triangulated product"),
        e("circle_map", "n, d with d | n (default 6, 2)", "degree-d map C_n -> C_{n/d} with its realization"),
        e("circle_pair", "a, b (default 1, 2)", "maps C_{3(a+b)} -> C_3 of degrees a and b"),
        e("sphere_pair", "a, b in 1..=3 (default 2, 1)", "maps of degrees a, b from S(C_12) to the octahedron"),
        e("torus_pair", "", "f(x,y) = x and g(x,y) = x + y from T^2 to S^1"),
        e("torus_projection", "", "projection T^2 -> C_6 onto the first coordinate"),
        e("torus_triple", "", "x, x + y, 2x + y from T^2 to S^1, one triple point"),
    ]
}

fn complex_file(k: &OrientedComplex) -> ExampleFile {
    ExampleFile { file_name: format!("{}.json", file_stem(k.name())), contents: to_json(&ComplexFile::from_complex(k)) }
}

fn map_file(f: &SimplicialMapData, target: Option<&PLTarget>) -> ExampleFile {
    ExampleFile { file_name: format!("{}.json", file_stem(f.name())), contents: to_json(&MapFile::from_map(f, target)) }
}

fn file_stem(name: &str) -> String {
    name.chars().map(|c| if c.is_ascii_alphanumeric() || c == '_' || c == '-' { c } else { '_' }).collect()
}

fn param(params: &[usize], i: usize, default: usize) -> usize {
    params.get(i).copied().unwrap_or(default)
}

fn precondition(ok: bool, msg: impl Into<String>) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidComplex(msg.into()))
    }
}

fn maps_with_target(maps: &[SimplicialMapData], target: &PLTarget) -> Vec<ExampleFile> {
    let mut out = vec![complex_file(maps[0].domain())];
    if maps[0].codomain().name() != maps[0].domain().name() {
        out.push(complex_file(maps[0].codomain()));
    }
    out.extend(maps.iter().map(|f| map_file(f, Some(target))));
    out
}

/// Files for a named catalog entry; `params` are positional integers.
pub fn generate_example(name: &str, params: &[usize]) -> Result<Vec<ExampleFile>> {
    let files = match name {
        "circle" => {
            let n = param(params, 0, 6);
            precondition(n >= 3, "a circle needs n >= 3")?;
            vec![complex_file(&catalog::circle(n).into_manifold()?)]
        }
        "tetrahedron" => vec![complex_file(&catalog::tetrahedron().into_manifold()?)],
        "octahedron" => vec![complex_file(&catalog::octahedron().into_manifold()?)],
        "torus" => {
            let (a, b) = (param(params, 0, 3), param(params, 1, 3));
            precondition(a >= 3 && b >= 3, "a torus grid needs a, b >= 3")?;
            vec![complex_file(&catalog::torus_grid(a, b).into_manifold()?)]
        }
        "rp2" => vec![complex_file(&catalog::rp2())],
        "s1xs2" => vec![complex_file(&catalog::s1_times_s2().into_manifold()?)],
        "circle_map" => {
            let (n, d) = (param(params, 0, 6), param(params, 1, 2));
            precondition(d > 0 && n % d == 0 && n / d >= 3, format!("degree {d} must divide {n} leaving at least 3 vertices"))?;
            let f = catalog::circle_map(n, d);
            maps_with_target(&[f], &catalog::circle_target(n / d))
        }
        "circle_pair" => {
            let (a, b) = (param(params, 0, 1), param(params, 1, 2));
            precondition(a + b > 0, "a circle pair needs a + b > 0")?;
            let (f, g) = catalog::circle_pair(a, b);
            maps_with_target(&[f, g], &catalog::circle_target(3))
        }
        "sphere_pair" => {
            let (a, b) = (param(params, 0, 2), param(params, 1, 1));
            precondition((1..=3).contains(&a) && (1..=3).contains(&b), "sphere pair degrees lie in 1..=3")?;
            let (f, g) = catalog::sphere_pair_isolated(a, b);
            maps_with_target(&[f, g], &catalog::octahedron_target())
        }
        "torus_pair" => {
            let maps = catalog::torus_maps();
            maps_with_target(&maps[..2], &catalog::circle_target(3))
        }
        "torus_projection" => maps_with_target(&[catalog::torus_projection()], &catalog::circle_target(6)),
        "torus_triple" => maps_with_target(&catalog::torus_maps(), &catalog::circle_target(3)),
        other => return Err(Error::UnknownExample(other.to_string())),
    };
    Ok(files)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{induced_map, Variance};
    use crate::integer::Int;

    fn round_trip(k: &OrientedComplex) {
        let text = to_json(&ComplexFile::from_complex(k));
        assert_eq!(&parse_complex(&text).unwrap(), k, "{}", k.name());
    }

    #[test]
    fn complexes_round_trip() {
        for k in catalog::test_manifolds() {
            round_trip(&k.into_manifold().unwrap());
        }
        round_trip(&catalog::rp2());
        round_trip(&catalog::circle(5).with_vertex_order(&[2, 0, 1, 4, 3]).unwrap());
    }

    #[test]
    fn string_and_integer_vertices() {
        let text = r#"{"name":"c","dim":1,"vertex_order":["a",1,"b"],"top_simplices":[["a",1],[1,"b"],["b","a"]],"flags":{"manifold":true}}"#;
        let k = parse_complex(text).unwrap();
        assert!(k.is_manifold());
        assert_eq!(k.labels(), &["a", "1", "b"]);
        assert_eq!(k.simplex(1, k.find(&[0, 2]).unwrap()), &[0, 2]);
    }

    #[test]
    fn malformed_files_are_parse_errors() {
        assert!(parse_complex("{").unwrap_err().is_parse());
        assert!(parse_complex(r#"{"name":"c","dim":1,"vertex_order":[0],"top_simplices":[[0,1]]}"#).unwrap_err().is_parse());
        assert!(parse_input(r#"{"something":1}"#).unwrap_err().is_parse());
        let wrong_dim = r#"{"name":"c","dim":2,"vertex_order":[0,1,2],"top_simplices":[[0,1],[1,2],[0,2]]}"#;
        assert!(parse_complex(wrong_dim).unwrap_err().is_parse());
    }

    #[test]
    fn maps_round_trip_with_targets() {
        let maps = catalog::torus_maps();
        let target = catalog::circle_target(3);
        let file = MapFile::from_map(&maps[1], Some(&target));
        let text = to_json(&file);
        let back = match parse_input(&text).unwrap() {
            InputFile::Map(m) => m,
            _ => panic!("expected a map"),
        };
        assert_eq!(back, file);
        let f = back.to_map(maps[1].domain_arc().clone(), maps[1].codomain_arc().clone()).unwrap();
        assert_eq!(f.vertex_map(), maps[1].vertex_map());
        assert_eq!(f.name(), "x+y");
        let t = back.to_target(maps[1].codomain_arc().clone()).unwrap().unwrap();
        assert_eq!(t.atlas(), target.atlas());
        assert_eq!(t.realization(), target.realization());
    }

    #[test]
    fn map_names_must_match() {
        let f = catalog::circle_map(6, 2);
        let file = MapFile::from_map(&f, None);
        let wrong = Arc::new(catalog::circle(6));
        assert!(file.to_map(wrong.clone(), wrong).unwrap_err().is_parse());
    }

    #[test]
    fn generated_examples_parse_back_identically() {
        for info in examples() {
            let files = generate_example(info.name, &[]).unwrap();
            assert!(!files.is_empty());
            for f in &files {
                let again = match parse_input(&f.contents).unwrap() {
                    InputFile::Complex(c) => to_json(&ComplexFile::from_complex(&c.to_complex().unwrap())),
                    InputFile::Map(m) => to_json(&m),
                };
                assert_eq!(again, f.contents, "{}", f.file_name);
            }
            assert_eq!(generate_example(info.name, &[]).unwrap(), files);
        }
        assert!(matches!(generate_example("klein", &[]), Err(Error::UnknownExample(_))));
    }

    #[test]
    fn generated_circle_map_has_degree_two() {
        let files = generate_example("circle_map", &[6, 2]).unwrap();
        let names: Vec<&str> = files.iter().map(|f| f.file_name.as_str()).collect();
        assert_eq!(names, ["C6.json", "C3.json", "z_2.json"]);
        let c6 = Arc::new(parse_complex(&files[0].contents).unwrap());
        let c3 = Arc::new(parse_complex(&files[1].contents).unwrap());
        let InputFile::Map(m) = parse_input(&files[2].contents).unwrap() else { panic!() };
        let f = m.to_map(c6, c3).unwrap();
        let deg = induced_map(&f, 1, Variance::Homology).unwrap()[(0, 0)].clone();
        assert_eq!(deg.clone() * deg, Int::from(4));
    }

    #[test]
    fn class_report_of_torus_cycle() {
        let k = catalog::torus_grid(3, 3);
        let h = crate::algebra::homology(&k, 1, &crate::algebra::Support::Absolute).unwrap();
        let r = ClassReport::new(&k, &h, &[1, 0]);
        assert_eq!(r.coordinates, vec![1, 0]);
        assert!(r.torsion_coordinates.is_empty());
        assert_eq!(r.basis.len(), 2);
        let rp = catalog::rp2();
        let h = crate::algebra::homology(&rp, 1, &crate::algebra::Support::Absolute).unwrap();
        let r = ClassReport::new(&rp, &h, &[1]);
        assert_eq!((r.torsion_coordinates, r.torsion_orders), (vec![1], vec![2]));
    }
}
