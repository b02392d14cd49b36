use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::atomic::{AtomicBool, Ordering};
use std::time::Instant;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use cobarlab::cobar::{cobar, h0_presentation, theorem71_iso, PresentedDga};
use cobarlab::cubical::{chains_cubical, CubicalSetFG, CUBICAL_FORMAT};
use cobarlab::hochschild::{cohochschild, hochschild, TruncatedComplexReport};
use cobarlab::linalg::{homology, HomologyReport, Matrix, Ring};
use cobarlab::rigidify::{mapping_complex, MappingComplex};
use cobarlab::simplicial::{aw_coalgebra, normalized_chains, SimplicialSet, SIMPLICIAL_FORMAT};
use cobarlab::verify::{run_suite, Suite};
use cobarlab::Error;

/// Set when the JSON report goes to stdout; human-readable output then moves
/// to stderr so stdout stays parseable.
static TEXT_TO_STDERR: AtomicBool = AtomicBool::new(false);

macro_rules! say {
    ($($arg:tt)*) => {
        {
            use std::io::Write;
            // A closed pipe (`| head`) is not an error worth reporting.
            let _ = if TEXT_TO_STDERR.load(Ordering::Relaxed) {
                writeln!(std::io::stderr(), $($arg)*)
            } else {
                writeln!(std::io::stdout(), $($arg)*)
            };
        }
    };
}

/// Loop-space models of finite simplicial sets.
#[derive(Parser)]
#[command(name = "cobarlab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Coefficient ring: Z, Q, or a prime field written Fp, GF(p) or Z/p.
    #[arg(long, default_value = "Z")]
    ring: String,
    /// Highest homological degree reported.
    #[arg(long, default_value_t = 6)]
    max_degree: usize,
    /// Word-length cutoff, applied only when degrees are otherwise infinite.
    #[arg(long, default_value_t = 8)]
    max_length: usize,
    /// Also write the report as JSON to this path (`-` for stdout).
    #[arg(long)]
    json: Option<PathBuf>,
    /// Include wall-clock time in reports. Reports are otherwise
    /// byte-identical across runs.
    #[arg(long)]
    timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Homology of normalized chains of a simplicial or cubical set.
    Homology {
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Loop-space homology from both the cobar construction and the
    /// rigidification, with the isomorphism check between them.
    Loop {
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Generators and differentials of the cobar construction.
    Cobar {
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// The rigidified mapping complex between two vertices.
    Rigidify {
        input: PathBuf,
        /// Source vertex name (default: basepoint or first vertex).
        #[arg(long)]
        source: Option<String>,
        /// Target vertex name (default: the source for one-vertex sets,
        /// otherwise the last vertex).
        #[arg(long)]
        target: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Presentation of the degree-0 loop homology algebra.
    #[command(name = "pi1-algebra")]
    Pi1Algebra {
        input: PathBuf,
        /// Word length for the dimension probe.
        #[arg(long, default_value_t = 4)]
        probe_bound: usize,
        #[command(flatten)]
        common: Common,
    },
    /// coHochschild chains of the chains and Hochschild chains of the cobar
    /// construction, with their homology compared.
    Hochschild {
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Run verification suites.
    Verify {
        /// necklace, cubical, adjunction, iso, hochschild, structure or all.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        timing: bool,
    },
}

/// Failures are split by exit code: bad input (2) versus a check that ran
/// and failed (1).
enum Failure {
    Input(anyhow::Error),
    Verification,
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.into())
    }
}

#[derive(Serialize)]
struct RunReport {
    command: String,
    input: Option<InputDigest>,
    parameters: Value,
    results: Value,
    passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    wall_time_seconds: Option<f64>,
}

#[derive(Serialize)]
struct InputDigest {
    path: String,
    sha256: String,
}

enum Loaded {
    Simplicial(SimplicialSet),
    Cubical(CubicalSetFG),
}

fn read_input(path: &Path) -> anyhow::Result<(String, InputDigest)> {
    let bytes = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    let digest = InputDigest { path: path.display().to_string(), sha256: format!("{:x}", Sha256::digest(&bytes)) };
    let text = String::from_utf8(bytes).with_context(|| format!("{} is not UTF-8", path.display()))?;
    Ok((text, digest))
}

fn load(path: &Path) -> anyhow::Result<(Loaded, InputDigest)> {
    let (text, digest) = read_input(path)?;
    let value: Value =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    let format = value.get("format").and_then(Value::as_str).unwrap_or(SIMPLICIAL_FORMAT);
    let loaded = match format {
        f if f == SIMPLICIAL_FORMAT => Loaded::Simplicial(
            SimplicialSet::from_json(&text).with_context(|| format!("loading {}", path.display()))?,
        ),
        f if f == CUBICAL_FORMAT => Loaded::Cubical(
            CubicalSetFG::from_json(&text).with_context(|| format!("loading {}", path.display()))?,
        ),
        other => bail!("{}: unsupported format {other:?}", path.display()),
    };
    Ok((loaded, digest))
}

fn load_simplicial(path: &Path) -> anyhow::Result<(SimplicialSet, InputDigest)> {
    match load(path)? {
        (Loaded::Simplicial(s), d) => {
            s.validate(s.max_dim()).with_context(|| format!("validating {}", path.display()))?;
            Ok((s, d))
        }
        (Loaded::Cubical(_), _) => bail!("{}: expected a simplicial set, found a cubical set", path.display()),
    }
}

fn one_vertex(s: &SimplicialSet) -> anyhow::Result<()> {
    let n = s.of_dim(0).len();
    if n != 1 {
        bail!("`{}` has {n} vertices; loop-space commands need one vertex (collapse a spanning tree or the 0-skeleton with a quotient first)", s.name());
    }
    Ok(())
}

/// Runs `f` without a length cutoff, retrying with `max_length` only when
/// the construction reports that one is needed.
fn with_cutoff<T>(max_length: usize, f: impl Fn(Option<usize>) -> cobarlab::Result<T>) -> cobarlab::Result<(T, Option<usize>)> {
    match f(None) {
        Err(Error::CutoffRequired(_)) => f(Some(max_length)).map(|t| (t, Some(max_length))),
        other => other.map(|t| (t, None)),
    }
}

fn parameters(common: &Common, ring: Ring, applied: Option<Option<usize>>) -> Value {
    let mut p = json!({
        "ring": ring.to_string(),
        "max_degree": common.max_degree,
        "max_length": common.max_length,
    });
    if let Some(a) = applied {
        p["max_length_applied"] = json!(a.is_some());
    }
    p
}

fn print_homology(title: &str, h: &HomologyReport, truncated: bool) {
    say!("{title} over {}{}", h.ring, if truncated { " (truncated: ranks not final)" } else { "" });
    say!("  degree  betti  torsion");
    for d in &h.degrees {
        let torsion: Vec<String> = d.torsion.iter().map(|t| format!("Z/{t}")).collect();
        say!("  {:>6}  {:>5}  {}", d.degree, d.betti, if torsion.is_empty() { "-".into() } else { torsion.join(" ") });
    }
}

fn homology_json(h: &HomologyReport, truncated: bool) -> Value {
    json!({ "degrees": h.degrees, "betti": h.betti(), "truncated": truncated })
}

fn cmd_homology(input: &Path, common: &Common, ring: Ring) -> Result<RunReport, Failure> {
    let (loaded, digest) = load(input)?;
    let n = common.max_degree;
    let (name, complex) = match &loaded {
        Loaded::Simplicial(s) => {
            s.validate(s.max_dim()).context("validating input")?;
            (s.name().to_string(), normalized_chains(s, ring, n + 1)?)
        }
        Loaded::Cubical(k) => {
            k.validate(k.max_dim()).context("validating input")?;
            (k.name().to_string(), chains_cubical(k, ring, n + 1)?)
        }
    };
    let h = homology(&complex).truncated(n);
    print_homology(&format!("H_*({name})"), &h, false);
    Ok(RunReport {
        command: "homology".into(),
        input: Some(digest),
        parameters: parameters(common, ring, None),
        results: json!({ "name": name, "homology": homology_json(&h, false) }),
        passed: true,
        wall_time_seconds: None,
    })
}

fn cobar_of(s: &SimplicialSet, n: usize, max_length: usize) -> cobarlab::Result<(PresentedDga, Option<usize>)> {
    let c = aw_coalgebra(s, n + 2)?;
    with_cutoff(max_length, |l| {
        let a = cobar(&c, n, l)?;
        // Basis enumeration is where a missing cutoff surfaces.
        a.basis()?;
        Ok(a)
    })
}

/// Word-basis size above which Pontryagin products are not computed; they
/// need Smith forms with transforms, which are dense.
const ALGEBRA_BASIS_LIMIT: usize = 400;

/// Integral homology algebra through the largest degree `≤ n` whose cobar
/// basis stays within [`ALGEBRA_BASIS_LIMIT`] words per degree.
fn small_homology_algebra(
    s: &SimplicialSet,
    n: usize,
    cutoff: Option<usize>,
) -> cobarlab::Result<(usize, cobarlab::cobar::HomologyAlgebra)> {
    let c = aw_coalgebra(s, n + 2)?;
    let mut d = n;
    loop {
        let omega = cobar(&c, d, cutoff)?;
        let (cc, _) = omega.homology_complex(Ring::Integers)?;
        if d == 0 || cc.ranks().iter().all(|&r| r <= ALGEBRA_BASIS_LIMIT) {
            return Ok((d, omega.homology_algebra(Ring::Integers)?));
        }
        d -= 1;
    }
}

fn cmd_loop(input: &Path, common: &Common, ring: Ring) -> Result<RunReport, Failure> {
    let (s, digest) = load_simplicial(input)?;
    one_vertex(&s)?;
    let n = common.max_degree;
    let (omega, cutoff) = cobar_of(&s, n, common.max_length)?;
    let (cc, _) = omega.homology_complex(ring)?;
    let cobar_h = homology(&cc).truncated(n);
    let truncated = cutoff.is_some();
    print_homology("loop homology from the cobar construction", &cobar_h, truncated);

    let lambda = mapping_complex(&s, s.of_dim(0)[0], s.of_dim(0)[0], n, cutoff)?;
    let (lambda_h, _) = lambda.homology(ring)?;
    print_homology("loop homology from the rigidification", &lambda_h, truncated);

    let iso = theorem71_iso(&s, n, cutoff)?;
    let verdict = if iso.passed() { "PASS" } else { "FAIL" };
    say!(
        "isomorphism check: {verdict} (inverse {}, algebra {}, chain map {}; {} words)",
        iso.inverse_ok, iso.algebra_ok, iso.chain_ok, iso.mapping_words
    );
    for v in &iso.violations {
        say!("  {v}");
    }

    let (algebra_degree, algebra) = small_homology_algebra(&s, n, cutoff)?;
    if algebra_degree < n {
        say!("products computed through degree {algebra_degree} (larger bases are left to the rank computation)");
    }
    let nonzero: Vec<_> = algebra.products.iter().filter(|p| p.coordinates.iter().any(|c| c != "0")).collect();
    say!("nonzero products of homology generators over Z: {}", nonzero.len());
    for p in &nonzero {
        say!("  {:?} · {:?} = ({}) in degree {}", p.left, p.right, p.coordinates.join(", "), p.degree);
    }

    let presentation = if s.of_dim(1).is_empty() { None } else { Some(h0_presentation(&s)?) };
    if let Some(p) = &presentation {
        say!("degree-0 algebra: {p}");
    }
    let agree = cobar_h == lambda_h;
    if !agree {
        say!("the two homology computations disagree");
    }
    Ok(RunReport {
        command: "loop".into(),
        input: Some(digest),
        parameters: parameters(common, ring, Some(cutoff)),
        results: json!({
            "cobar_homology": homology_json(&cobar_h, truncated),
            "rigidification_homology": homology_json(&lambda_h, truncated),
            "isomorphism": iso,
            "homology_algebra": { "max_degree": algebra_degree, "algebra": algebra },
            "h0_presentation": presentation.as_ref().map(|p| json!({ "text": p.to_string(), "presentation": p })),
        }),
        passed: iso.passed() && agree,
        wall_time_seconds: None,
    })
}

fn cmd_cobar(input: &Path, common: &Common, ring: Ring) -> Result<RunReport, Failure> {
    let (s, digest) = load_simplicial(input)?;
    let n = common.max_degree;
    let (omega, cutoff) = cobar_of(&s, n, common.max_length)?;
    say!("cobar construction of {}: {} generators through degree {}", s.name(), omega.generator_count(), n + 1);
    let mut generators = Vec::new();
    for g in 0..omega.generator_count() {
        let d = omega.render(omega.generator_differential(g));
        say!("  D {} = {}    (degree {})", omega.label(g), d, omega.degree(g));
        generators.push(json!({ "label": omega.label(g), "degree": omega.degree(g), "differential": d }));
    }
    let (cc, _) = omega.homology_complex(ring)?;
    let h = homology(&cc).truncated(n);
    print_homology("homology", &h, cutoff.is_some());
    Ok(RunReport {
        command: "cobar".into(),
        input: Some(digest),
        parameters: parameters(common, ring, Some(cutoff)),
        results: json!({
            "generators": generators,
            "basis_ranks": cc.ranks(),
            "homology": homology_json(&h, cutoff.is_some()),
        }),
        passed: true,
        wall_time_seconds: None,
    })
}

fn matrix_json(m: &Matrix) -> Value {
    let rows: Vec<Vec<String>> =
        (0..m.rows()).map(|i| (0..m.cols()).map(|j| m.get(i, j).to_string()).collect()).collect();
    json!(rows)
}

/// Matrices larger than this many entries are summarized by their shape.
const MATRIX_PRINT_LIMIT: usize = 144;

fn cmd_rigidify(
    input: &Path,
    source: Option<&str>,
    target: Option<&str>,
    common: &Common,
    ring: Ring,
) -> Result<RunReport, Failure> {
    let (s, digest) = load_simplicial(input)?;
    let vertices = s.of_dim(0);
    let x = match source {
        Some(name) => s.id(name)?,
        None => s.basepoint().unwrap_or(vertices[0]),
    };
    let y = match target {
        Some(name) => s.id(name)?,
        None if vertices.len() == 1 => x,
        None => *vertices.last().unwrap(),
    };
    let n = common.max_degree;
    let (lambda, cutoff): (MappingComplex, _) = with_cutoff(common.max_length, |l| mapping_complex(&s, x, y, n, l))?;
    say!("rigidified mapping complex {} → {} of {}", s.name_of(x), s.name_of(y), s.name());
    say!("  basis ranks by degree: {:?}", lambda.ranks());
    let mut differentials = Vec::new();
    for k in 1..=n.min(lambda.ranks().len().saturating_sub(1)) {
        let m = lambda.differential_matrix(k);
        let small = m.rows() * m.cols() <= MATRIX_PRINT_LIMIT;
        if small && m.rows() * m.cols() > 0 {
            say!("  ∂ in degree {k}:");
            for i in 0..m.rows() {
                let row: Vec<String> = (0..m.cols()).map(|j| format!("{:>3}", m.get(i, j))).collect();
                say!("    {}", row.join(""));
            }
        } else if !small {
            say!("  ∂ in degree {k}: {} × {} matrix", m.rows(), m.cols());
        }
        differentials.push(json!({
            "degree": k,
            "rows": m.rows(),
            "cols": m.cols(),
            "entries": if small { matrix_json(&m) } else { Value::Null },
        }));
    }
    let (h, truncated) = lambda.homology(ring)?;
    print_homology("homology", &h, truncated);
    let basis: Vec<Vec<String>> =
        (0..lambda.ranks().len()).map(|k| lambda.basis(k).iter().map(|w| lambda.label(w)).collect()).collect();
    Ok(RunReport {
        command: "rigidify".into(),
        input: Some(digest),
        parameters: {
            let mut p = parameters(common, ring, Some(cutoff));
            p["source"] = json!(s.name_of(x));
            p["target"] = json!(s.name_of(y));
            p
        },
        results: json!({
            "basis_ranks": lambda.ranks(),
            "basis": basis,
            "differentials": differentials,
            "homology": homology_json(&h, truncated),
        }),
        passed: true,
        wall_time_seconds: None,
    })
}

fn cmd_pi1(input: &Path, probe_bound: usize, common: &Common, ring: Ring) -> Result<RunReport, Failure> {
    let (s, digest) = load_simplicial(input)?;
    one_vertex(&s)?;
    let p = h0_presentation(&s)?;
    say!("{p}");
    let probe = p.probe_dimension(probe_bound)?;
    match probe.dimension() {
        Some(d) => say!("dimension over Q: {d} (stable at word length {probe_bound})"),
        None => say!(
            "dimension probe did not stabilize at word length {probe_bound}: {} classes, {} reachable from shorter words",
            probe.classes, probe.shorter_classes
        ),
    }
    Ok(RunReport {
        command: "pi1-algebra".into(),
        input: Some(digest),
        parameters: {
            let mut p = parameters(common, ring, None);
            p["probe_bound"] = json!(probe_bound);
            p
        },
        results: json!({
            "text": p.to_string(),
            "presentation": p,
            "probe": probe,
            "dimension": probe.dimension(),
        }),
        passed: true,
        wall_time_seconds: None,
    })
}

fn report_json(r: &TruncatedComplexReport) -> Value {
    json!({
        "kind": r.kind,
        "max_degree": r.max_degree,
        "max_length": r.max_length,
        "truncated": r.truncated,
        "basis_ranks": r.ranks(),
        "homology": homology_json(&r.homology(), r.truncated),
    })
}

fn cmd_hochschild(input: &Path, common: &Common, ring: Ring) -> Result<RunReport, Failure> {
    let (s, digest) = load_simplicial(input)?;
    one_vertex(&s)?;
    let n = common.max_degree;
    let c = aw_coalgebra(&s, n + 2)?;
    let (co, cutoff) = with_cutoff(common.max_length, |l| cohochschild(&c, ring, n, l))?;
    let omega = cobar(&c, n + 1, cutoff)?;
    let ch = hochschild(&omega, ring, n, cutoff)?;
    let (hco, hch) = (co.homology(), ch.homology());
    print_homology("coHochschild homology of the chains", &hco, co.truncated);
    print_homology("Hochschild homology of the cobar construction", &hch, ch.truncated);
    let agree = hco.betti() == hch.betti();
    say!("ranks agree: {}", if agree { "yes" } else { "no" });
    Ok(RunReport {
        command: "hochschild".into(),
        input: Some(digest),
        parameters: parameters(common, ring, Some(cutoff)),
        results: json!({
            "cohochschild": report_json(&co),
            "hochschild": report_json(&ch),
            "ranks_agree": agree,
        }),
        passed: agree,
        wall_time_seconds: None,
    })
}

fn cmd_verify(suite: &str, seed: u64) -> Result<RunReport, Failure> {
    let suites: Vec<Suite> = if suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![suite.parse::<Suite>().map_err(|e| anyhow!(e))?]
    };
    let mut reports = Vec::new();
    for s in suites {
        let r = run_suite(s, seed)?;
        for c in &r.checks {
            let verdict = if c.passed { "PASS" } else { "FAIL" };
            say!("{verdict} [{s}] {} ({} instances)", c.name, c.instances);
            if let Some(x) = &c.counterexample {
                say!("     first counterexample: {x}");
            }
        }
        reports.push(r);
    }
    let passed = reports.iter().all(|r| r.passed());
    Ok(RunReport {
        command: "verify".into(),
        input: None,
        parameters: json!({ "suite": suite, "seed": seed }),
        results: json!(reports),
        passed,
        wall_time_seconds: None,
    })
}

fn write_json(path: &Path, report: &RunReport) -> anyhow::Result<()> {
    let text = serde_json::to_string_pretty(report)? + "\n";
    if path.as_os_str() == "-" {
        use std::io::Write;
        let _ = std::io::stdout().write_all(text.as_bytes());
        Ok(())
    } else {
        std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let start = Instant::now();
    let json_target = match &cli.command {
        Command::Verify { json, .. } => json,
        Command::Homology { common, .. }
        | Command::Loop { common, .. }
        | Command::Cobar { common, .. }
        | Command::Rigidify { common, .. }
        | Command::Pi1Algebra { common, .. }
        | Command::Hochschild { common, .. } => &common.json,
    };
    TEXT_TO_STDERR.store(json_target.as_ref().is_some_and(|p| p.as_os_str() == "-"), Ordering::Relaxed);
    let parse_ring = |c: &Common| -> Result<Ring, Failure> { Ok(c.ring.parse::<Ring>()?) };
    let (report, json_path, timing) = match &cli.command {
        Command::Homology { input, common } => (cmd_homology(input, common, parse_ring(common)?)?, &common.json, common.timing),
        Command::Loop { input, common } => (cmd_loop(input, common, parse_ring(common)?)?, &common.json, common.timing),
        Command::Cobar { input, common } => (cmd_cobar(input, common, parse_ring(common)?)?, &common.json, common.timing),
        Command::Rigidify { input, source, target, common } => (
            cmd_rigidify(input, source.as_deref(), target.as_deref(), common, parse_ring(common)?)?,
            &common.json,
            common.timing,
        ),
        Command::Pi1Algebra { input, probe_bound, common } => {
            (cmd_pi1(input, *probe_bound, common, parse_ring(common)?)?, &common.json, common.timing)
        }
        Command::Hochschild { input, common } => (cmd_hochschild(input, common, parse_ring(common)?)?, &common.json, common.timing),
        Command::Verify { suite, seed, json, timing } => (cmd_verify(suite, *seed)?, json, *timing),
    };
    let mut report = report;
    if timing {
        let t = start.elapsed().as_secs_f64();
        say!("wall time: {t:.3} s");
        report.wall_time_seconds = Some(t);
    }
    if let Some(path) = json_path {
        write_json(path, &report)?;
    }
    if report.passed {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
