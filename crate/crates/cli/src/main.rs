mod load;
mod verify;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use lefschetz::algebra::{homology, Support};
use lefschetz::coincidence::{analyze_multi, analyze_pair, lefschetz_number, rational_string, AnalysisOptions, CoincidenceReport, ComponentKind, MultiReport, Verdict};
use lefschetz::complex::{OrientedComplex, Subcomplex};
use lefschetz::duality::{pentahedron_check, thom_class, Convention, DualityContext};
use lefschetz::io::{examples, generate_example, to_json, ClassReport};
use lefschetz::products::intersect;
use lefschetz::Error;

use load::{shared_target, Inputs};

#[derive(Debug)]
pub enum CliError {
    Parse(String),
    Core(Error),
    Verification(String),
}

impl CliError {
    fn core(e: Error) -> Self {
        if e.is_parse() {
            CliError::Parse(e.to_string())
        } else {
            CliError::Core(e)
        }
    }

    fn from_core(e: Error, path: &Path) -> Self {
        match CliError::core(e) {
            CliError::Parse(m) => CliError::Parse(format!("{}: {m}", path.display())),
            CliError::Core(e) => CliError::Parse(format!("{}: {e}", path.display())),
            other => other,
        }
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Verification(_) => 1,
            CliError::Parse(_) => 2,
            CliError::Core(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Parse(m) => write!(f, "parse error: {m}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Verification(m) => write!(f, "verification failed: {m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::core(e)
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Parser)]
#[command(name = "lefschetz", version, about = "Exact Lefschetz coincidence classes on triangulated manifolds")]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct GlobalOpts {
    /// Barycentric refinement rounds allowed when locating coincidences.
    #[arg(long, default_value_t = 3, global = true)]
    subdiv_bound: usize,
    /// Sign convention for every duality isomorphism in the output.
    #[arg(long, default_value = "primary", global = true, value_parser = parse_convention)]
    convention: Convention,
    /// Write the report here instead of standard output (a directory for `examples`).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
}

fn parse_convention(s: &str) -> Result<Convention, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Subcommand)]
enum Command {
    /// Homology groups of each complex, with generators.
    Homology { files: Vec<PathBuf> },
    /// Poincaré duality matrices, or the dual of one cohomology class.
    Dualize {
        file: PathBuf,
        /// Cohomology degree of `--class`.
        #[arg(long, requires = "class")]
        degree: Option<usize>,
        /// Coordinates of a cohomology class, comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        class: Option<Vec<i64>>,
    },
    /// Thom class of the full subcomplex on the given vertices, with the pentahedron check.
    Thom {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        vertices: Vec<String>,
    },
    /// Intersection product of two homology classes, written `degree:c1,c2,...`.
    Intersect {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Lefschetz coincidence number of two maps, with the coincidence points when realized.
    Lefschetz { files: Vec<PathBuf> },
    /// Full coincidence report for two maps.
    Coincidence {
        files: Vec<PathBuf>,
        /// Skip the local class computed through the graph's Thom class.
        #[arg(long)]
        no_algebraic_route: bool,
    },
    /// Multi-coincidence report for two or more maps.
    Multi { files: Vec<PathBuf> },
    /// Every theorem check on the example catalog.
    Verify,
    /// List or generate catalog examples.
    Examples {
        /// Print the catalog.
        #[arg(long)]
        list: bool,
        name: Option<String>,
        /// Integer parameters of the example, in order.
        #[arg(long = "param")]
        params: Vec<usize>,
    },
}

fn emit(opts: &GlobalOpts, text: &str) -> CliResult<()> {
    match &opts.out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Core(Error::InvalidComplex(format!("cannot write {}: {e}", path.display())))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn render<T: Serialize>(opts: &GlobalOpts, value: &T, text: impl FnOnce() -> String) -> CliResult<()> {
    if opts.json {
        emit(opts, &to_json(value))
    } else {
        emit(opts, &text())
    }
}

#[derive(Serialize)]
struct GroupReport {
    degree: usize,
    free_rank: usize,
    torsion: Vec<i64>,
    basis: Vec<String>,
}

#[derive(Serialize)]
struct HomologyReport {
    complex: String,
    groups: Vec<GroupReport>,
    summary: String,
}

fn homology_report(k: &OrientedComplex) -> CliResult<HomologyReport> {
    let groups = (0..=k.dim())
        .map(|p| {
            let g = homology(k, p, &Support::Absolute)?;
            Ok(GroupReport {
                degree: p,
                free_rank: g.free_rank,
                torsion: g.torsion.clone(),
                basis: g.generators.iter().map(|z| lefschetz::io::describe_chain(k, p, z)).collect(),
            })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    Ok(HomologyReport { complex: k.name().to_string(), groups, summary: verify::homology_string(k)? })
}

fn group_text(g: &GroupReport) -> String {
    let mut parts: Vec<String> = Vec::new();
    match g.free_rank {
        0 => {}
        1 => parts.push("Z".into()),
        r => parts.push(format!("Z^{r}")),
    }
    parts.extend(g.torsion.iter().map(|t| format!("Z/{t}")));
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn cmd_homology(opts: &GlobalOpts, files: &[PathBuf]) -> CliResult<()> {
    let inputs = Inputs::read(files)?;
    let reports = inputs.complexes().iter().map(|k| homology_report(k)).collect::<CliResult<Vec<_>>>()?;
    render(opts, &reports, || {
        let mut s = String::new();
        for r in &reports {
            writeln!(s, "{}", r.complex).unwrap();
            for g in &r.groups {
                writeln!(s, "  H_{} = {}", g.degree, group_text(g)).unwrap();
            }
        }
        s
    })
}

#[derive(Serialize)]
struct DualityMatrix {
    degree: usize,
    matrix: Vec<Vec<String>>,
    unimodular: bool,
}

fn cmd_dualize(opts: &GlobalOpts, file: &Path, degree: Option<usize>, class: Option<Vec<i64>>) -> CliResult<()> {
    let k = Inputs::read(&[file.to_path_buf()])?.single_complex()?;
    let ctx = DualityContext::new(&k)?;
    if let (Some(p), Some(c)) = (degree, class) {
        let image = ctx.poincare_with(opts.convention, p, &c)?;
        let report = ClassReport::new(&k, ctx.homology(ctx.dim() - p)?, &image);
        return render(opts, &report, || format!("P{}(class) = {:?} in H_{}\n", prime(opts.convention), report.coordinates, report.degree));
    }
    let m = ctx.dim();
    let mats = (0..=m)
        .map(|p| {
            let mat = ctx.poincare_matrix(p)?;
            let sign = lefschetz::duality::primed_sign(p, m);
            let flip = opts.convention == Convention::Primed && sign < 0;
            let matrix = (0..mat.rows())
                .map(|r| mat.row(r).iter().map(|x| if flip { (-x).to_string() } else { x.to_string() }).collect())
                .collect();
            Ok(DualityMatrix { degree: p, matrix, unimodular: mat.is_unimodular() })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    render(opts, &mats, || {
        let mut s = String::new();
        for d in &mats {
            let rows: Vec<String> = d.matrix.iter().map(|r| format!("[{}]", r.join(" "))).collect();
            writeln!(s, "P{}: H^{} -> H_{}  {}  unimodular: {}", prime(opts.convention), d.degree, m - d.degree, rows.join(" "), d.unimodular).unwrap();
        }
        s
    })
}

fn prime(c: Convention) -> &'static str {
    match c {
        Convention::Primary => "",
        Convention::Primed => "'",
    }
}

fn vertex_subcomplex(k: &OrientedComplex, labels: &[String]) -> CliResult<Subcomplex> {
    let vs = labels
        .iter()
        .map(|l| k.vertex_index(l).ok_or_else(|| CliError::Parse(format!("vertex {l} is not in {}", k.name()))))
        .collect::<CliResult<Vec<_>>>()?;
    Ok(Subcomplex::full(k, labels.join(","), &vs))
}

#[derive(Serialize)]
struct ThomReport {
    thom_class: lefschetz::duality::ThomClassData,
    pentahedron: lefschetz::duality::PentahedronReport,
}

fn cmd_thom(opts: &GlobalOpts, file: &Path, vertices: &[String]) -> CliResult<()> {
    let k = Inputs::read(&[file.to_path_buf()])?.single_complex()?;
    let ctx = DualityContext::new(&k)?;
    let x = vertex_subcomplex(&k, vertices)?;
    let report = ThomReport { thom_class: thom_class(&ctx, &x, opts.convention)?, pentahedron: pentahedron_check(&ctx, &x)? };
    render(opts, &report, || {
        let t = &report.thom_class;
        format!(
            "Thom class of {} (dim {}) in H^{}(M, M - X): {:?}\npentahedron commutes: {}, Thom class consistent: {}\n",
            t.subject, t.d, t.k, t.coordinates, report.pentahedron.commutes, report.pentahedron.thom_consistent
        )
    })
}

fn parse_class(s: &str) -> CliResult<(usize, Vec<i64>)> {
    let bad = || CliError::Parse(format!("expected degree:c1,c2,... but got {s}"));
    let (d, c) = s.split_once(':').ok_or_else(bad)?;
    let degree = d.trim().parse().map_err(|_| bad())?;
    let coords = if c.trim().is_empty() {
        Vec::new()
    } else {
        c.split(',').map(|x| x.trim().parse().map_err(|_| bad())).collect::<CliResult<Vec<i64>>>()?
    };
    Ok((degree, coords))
}

fn cmd_intersect(opts: &GlobalOpts, file: &Path, a: &str, b: &str) -> CliResult<()> {
    let k = Inputs::read(&[file.to_path_buf()])?.single_complex()?;
    let ctx = DualityContext::new(&k)?;
    let ((r, ca), (s, cb)) = (parse_class(a)?, parse_class(b)?);
    if r + s < ctx.dim() {
        return Err(CliError::Core(Error::DegreeOutOfRange { degree: r as isize + s as isize - ctx.dim() as isize, max: ctx.dim() }));
    }
    let coords = intersect(&ctx, opts.convention, r, &ca, s, &cb)?;
    let report = ClassReport::new(&k, ctx.homology(r + s - ctx.dim())?, &coords);
    render(opts, &report, || format!("a . b = {:?} in H_{}\n", report.coordinates, report.degree))
}

fn two_maps(files: &[PathBuf]) -> CliResult<Vec<load::LoadedMap>> {
    let maps = Inputs::read(files)?.maps()?;
    if maps.len() != 2 {
        return Err(CliError::Parse(format!("expected two map files, got {}", maps.len())));
    }
    Ok(maps)
}

fn verdict_text(v: &Verdict) -> &'static str {
    match v {
        Verdict::Pass => "pass",
        Verdict::Fail => "FAIL",
        Verdict::NotApplicable => "n/a",
    }
}

fn kind_text(k: &ComponentKind) -> &'static str {
    match k {
        ComponentKind::Isolated => "isolated",
        ComponentKind::PseudoManifold => "pseudo-manifold",
        ComponentKind::Other => "other",
    }
}

fn pair_text(r: &CoincidenceReport) -> String {
    let mut s = String::new();
    if let Some(l) = &r.lefschetz {
        writeln!(s, "Lef = {l}").unwrap();
    }
    if let Some(g) = &r.global_class {
        writeln!(s, "global class in H_{}: {:?}", g.degree, g.coordinates).unwrap();
    }
    if let Some(c) = &r.cohomology_class {
        writeln!(s, "cohomology class in H^{}: {:?}", c.degree, c.coordinates).unwrap();
    }
    writeln!(s, "refinement rounds: {}", r.refinement_rounds).unwrap();
    writeln!(s, "coincidence components: {}", r.components.len()).unwrap();
    for c in &r.components {
        let class = c.local_class.as_ref().map_or("none".to_string(), |l| format!("{:?}", l.coordinates));
        writeln!(s, "  {} {} dim {} local class {} degrees {:?}", c.id, kind_text(&c.kind), c.dim, class, c.degrees).unwrap();
        writeln!(s, "    support {}", c.support.join(" ")).unwrap();
        if let Some(d) = &c.diagnostic {
            writeln!(s, "    note: {d}").unwrap();
        }
    }
    for (k, v) in &r.verdicts {
        writeln!(s, "{k}: {}", verdict_text(v)).unwrap();
    }
    for n in &r.notes {
        writeln!(s, "note: {n}").unwrap();
    }
    s
}

fn failures(verdicts: &std::collections::BTreeMap<String, Verdict>) -> CliResult<()> {
    let failed: Vec<&str> = verdicts.iter().filter(|(_, v)| **v == Verdict::Fail).map(|(k, _)| k.as_str()).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Verification(failed.join(", ")))
    }
}

fn options(opts: &GlobalOpts, algebraic_route: bool) -> AnalysisOptions {
    AnalysisOptions { subdivision_bound: opts.subdiv_bound, convention: opts.convention, algebraic_route }
}

#[derive(Serialize)]
struct LefschetzOnly {
    lefschetz: String,
}

fn cmd_lefschetz(opts: &GlobalOpts, files: &[PathBuf]) -> CliResult<()> {
    let maps = two_maps(files)?;
    let (f, g) = (&maps[0].map, &maps[1].map);
    if maps.iter().all(|m| m.target.is_none()) {
        let lef = lefschetz_number(&DualityContext::new(f.domain())?, &DualityContext::new(f.codomain())?, f, g)?;
        let report = LefschetzOnly { lefschetz: rational_string(&lef) };
        return render(opts, &report, || format!("Lef = {}\n", report.lefschetz));
    }
    let r = analyze_pair(f, g, &shared_target(&maps)?, &options(opts, false))?;
    render(opts, &r, || pair_text(&r))?;
    failures(&r.verdicts)
}

fn cmd_coincidence(opts: &GlobalOpts, files: &[PathBuf], no_route: bool) -> CliResult<()> {
    let maps = two_maps(files)?;
    let r = analyze_pair(&maps[0].map, &maps[1].map, &shared_target(&maps)?, &options(opts, !no_route))?;
    render(opts, &r, || pair_text(&r))?;
    failures(&r.verdicts)
}

fn multi_text(r: &MultiReport) -> String {
    let mut s = String::new();
    writeln!(s, "maps: {}", r.maps.join(", ")).unwrap();
    writeln!(s, "global class in H_{}: {:?}", r.global_class.degree, r.global_class.coordinates).unwrap();
    writeln!(s, "dual of the cohomology class: {:?}", r.dual_cohomology_class.coordinates).unwrap();
    for p in &r.pairwise {
        writeln!(s, "pair {}/{}: {} components", p.maps[0], p.maps[1], p.components.len()).unwrap();
    }
    for c in &r.components {
        writeln!(s, "  common {} {} at {} index {:?}", c.id, kind_text(&c.kind), c.support.join(" "), c.degrees).unwrap();
    }
    if let Some(p) = &r.localized_product {
        writeln!(s, "localized product: {:?} pushed to {:?}", p.class.coordinates, p.pushforward.coordinates).unwrap();
    }
    for (k, v) in &r.verdicts {
        writeln!(s, "{k}: {}", verdict_text(v)).unwrap();
    }
    for n in &r.notes {
        writeln!(s, "note: {n}").unwrap();
    }
    s
}

fn cmd_multi(opts: &GlobalOpts, files: &[PathBuf]) -> CliResult<()> {
    let maps = Inputs::read(files)?.maps()?;
    if maps.len() < 2 {
        return Err(CliError::Parse(format!("expected at least two map files, got {}", maps.len())));
    }
    let target = shared_target(&maps)?;
    let plain: Vec<_> = maps.into_iter().map(|m| m.map).collect();
    let r = analyze_multi(&plain, &target, &options(opts, true))?;
    render(opts, &r, || multi_text(&r))?;
    failures(&r.verdicts)
}

fn cmd_verify(opts: &GlobalOpts) -> CliResult<()> {
    let checks = verify::run_all(opts.subdiv_bound);
    render(opts, &checks, || {
        let mut s = String::new();
        for c in &checks {
            writeln!(s, "{} {}: {}", if c.passed { "pass" } else { "FAIL" }, c.name, c.detail).unwrap();
        }
        let failed = checks.iter().filter(|c| !c.passed).count();
        writeln!(s, "{} checks, {} failed", checks.len(), failed).unwrap();
        s
    })?;
    let failed: Vec<&str> = checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Verification(failed.join(", ")))
    }
}

fn cmd_examples(opts: &GlobalOpts, list: bool, name: Option<&str>, params: &[usize]) -> CliResult<()> {
    let Some(name) = name.filter(|_| !list) else {
        let catalog = examples();
        return render(opts, &catalog, || {
            catalog.iter().map(|e| format!("{:<18} {:<32} {}\n", e.name, e.params, e.description)).collect()
        });
    };
    let files = generate_example(name, params)?;
    let dir = opts.out.clone().unwrap_or_else(|| PathBuf::from("."));
    std::fs::create_dir_all(&dir).map_err(|e| CliError::Core(Error::InvalidComplex(format!("cannot create {}: {e}", dir.display()))))?;
    for f in &files {
        let path = dir.join(&f.file_name);
        std::fs::write(&path, &f.contents).map_err(|e| CliError::Core(Error::InvalidComplex(format!("cannot write {}: {e}", path.display()))))?;
        println!("{}", path.display());
    }
    Ok(())
}

fn run(cli: Cli) -> CliResult<()> {
    let opts = &cli.global;
    match &cli.command {
        Command::Homology { files } => cmd_homology(opts, files),
        Command::Dualize { file, degree, class } => cmd_dualize(opts, file, *degree, class.clone()),
        Command::Thom { file, vertices } => cmd_thom(opts, file, vertices),
        Command::Intersect { file, a, b } => cmd_intersect(opts, file, a, b),
        Command::Lefschetz { files } => cmd_lefschetz(opts, files),
        Command::Coincidence { files, no_algebraic_route } => cmd_coincidence(opts, files, *no_algebraic_route),
        Command::Multi { files } => cmd_multi(opts, files),
        Command::Verify => cmd_verify(opts),
        Command::Examples { list, name, params } => cmd_examples(opts, *list, name.as_deref(), params),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
