//! `sepsys` command-line front end.
//!
//! Exit codes: 0 passed/done, 1 check failed, 2 usage, 3 parse, 4 timeout.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use sepsys::bounds::{eval_bounds, probabilistic_bound};
use sepsys::construct::{greedy_construct, random_repair_construct, ScanOrder};
use sepsys::euclidean::{
    bridge_check, embed_cube, is_eps_21_separating, parse_point_csv, EuclideanPointSet,
    DEFAULT_TOLERANCE,
};
use sepsys::hamming::{hull_by_projections, parse_words, segment, Guard, ProjectionHull};
use sepsys::l1::{box_hull, l1_check_21, L1PointSet};
use sepsys::metric::{load_graph_metric, parse_edge_list, PointSet};
use sepsys::rational::{format_rational, is_unit_interval, parse_rational};
use sepsys::search::{b_file, exact_kappa, SearchOptions, SearchStatus};
use sepsys::separation::{
    check_21_fast, min_separating_count, parse_set_system, set_system_check, Code,
    SeparationReport,
};

#[derive(Parser)]
#[command(name = "sepsys", version, about = "Discrete convexity and separating codes")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Projection hull of a word file and its cardinality.
    Hull {
        file: PathBuf,
        #[arg(long)]
        q: Option<u8>,
        /// Also list the hull members.
        #[arg(long)]
        list: bool,
    },
    /// Segment between two words.
    Segment {
        x: String,
        y: String,
        #[arg(long)]
        q: Option<u8>,
        #[arg(long)]
        list: bool,
    },
    /// Hamming ε-(s,t) separation check of a word file.
    Check {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        s: usize,
        #[arg(long, default_value_t = 1)]
        t: usize,
        #[arg(long, default_value = "0", value_parser = parse_epsilon)]
        epsilon: BigRational,
        #[arg(long)]
        q: Option<u8>,
    },
    /// Euclidean ε-(2,1) check of a CSV point file (angles below (1-ε)π).
    CheckAcute {
        file: PathBuf,
        #[arg(long, default_value = "1/2", value_parser = parse_epsilon)]
        epsilon: BigRational,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tolerance: f64,
    },
    /// (2,1) check of a CSV point file in L¹ (no point in the box of two others).
    CheckL1 { file: PathBuf },
    /// Audits inner product = separating count over every triple of a binary code.
    Bridge { file: PathBuf },
    /// Checks that no member satisfies A∩B ⊆ C ⊆ A∪B for two others.
    SetSystem {
        file: PathBuf,
        /// Require both inclusions to be proper.
        #[arg(long)]
        strict: bool,
    },
    /// Builds a binary (2,1)-separating code.
    Construct {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Method::Random)]
        method: Method,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        restarts: usize,
        /// Sample size for `repair` (default 2·max(eq1(n), 2)).
        #[arg(long)]
        m: Option<usize>,
    },
    /// Exact κ(n) by symmetry-reduced search.
    Search {
        /// Search this single length.
        #[arg(long, conflicts_with = "n_max", required_unless_present = "n_max")]
        n: Option<usize>,
        /// Search every length 1..=N.
        #[arg(long)]
        n_max: Option<usize>,
        /// Overall budget in seconds.
        #[arg(long)]
        time_limit: Option<f64>,
        #[arg(long, default_value_t = 1)]
        parallel: usize,
        /// Write `n kappa` lines for exact results here.
        #[arg(long)]
        b_file: Option<PathBuf>,
    },
    /// Closed-form lower bounds on κ(n).
    Bounds {
        #[arg(long, default_value_t = 20)]
        n_max: u32,
    },
    /// Segment and hull of two vertices in a graph metric.
    GraphHull {
        file: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Lex,
    Gray,
    Random,
    Repair,
}

fn parse_epsilon(text: &str) -> Result<BigRational, String> {
    let eps = parse_rational(text).ok_or_else(|| format!("`{text}` is not a rational number"))?;
    if !is_unit_interval(&eps) {
        return Err(format!("epsilon must lie in [0, 1), got {}", format_rational(&eps)));
    }
    Ok(eps)
}

enum Failure {
    Usage(String),
    Parse(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Parse(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Parse(m) => m,
        }
    }
}

impl From<sepsys::Error> for Failure {
    fn from(e: sepsys::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

/// Outcome of a successful run: the report text and the exit status.
struct Outcome {
    output: String,
    status: u8,
}

impl Outcome {
    fn new(output: String, passed: bool) -> Self {
        Self { output, status: if passed { 0 } else { 1 } }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

/// Reports a library error about the contents of `path` as a parse failure.
fn in_file<T>(path: &Path, result: sepsys::Result<T>) -> Result<T, Failure> {
    result.map_err(|e| match e {
        sepsys::Error::Parse { line, message } => {
            Failure::Parse(format!("{}:{line}: {message}", path.display()))
        }
        other => Failure::Parse(format!("{}: {other}", path.display())),
    })
}

fn load<T>(path: &Path, parse: impl FnOnce(&str) -> sepsys::Result<T>) -> Result<T, Failure> {
    let text = read(path)?;
    in_file(path, parse(&text))
}

fn load_code(path: &Path, q: Option<u8>) -> Result<Code, Failure> {
    load(path, |text| {
        let (space, words) = parse_words(text, q)?;
        Code::new(space, words)
    })
}

fn load_points(path: &Path) -> Result<(usize, Vec<Vec<BigRational>>), Failure> {
    load(path, parse_point_csv)
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("report serialises");
    s.push('\n');
    s
}

fn braces<I: IntoIterator<Item = String>>(items: I) -> String {
    format!("{{{}}}", items.into_iter().collect::<Vec<_>>().join(","))
}

fn words_of(code: &Code) -> Vec<String> {
    code.words().iter().map(|w| w.to_string()).collect()
}

#[derive(Serialize)]
struct HullReport {
    q: u8,
    n: usize,
    profile: Vec<Vec<u8>>,
    cardinality: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    members: Option<Vec<String>>,
}

fn hull_report(hull: &ProjectionHull, list: bool) -> Result<HullReport, Failure> {
    let members = if list {
        Some(hull.members(Guard::default())?.iter().map(|w| w.to_string()).collect())
    } else {
        None
    };
    Ok(HullReport {
        q: hull.space().q(),
        n: hull.space().n(),
        profile: hull.profile(),
        cardinality: hull.cardinality().to_string(),
        members,
    })
}

fn hull_text(out: &mut String, r: &HullReport) {
    for (i, allowed) in r.profile.iter().enumerate() {
        let syms = allowed.iter().map(|s| char::from_digit(*s as u32, 36).unwrap().to_string());
        writeln!(out, "coordinate {}: {}", i + 1, braces(syms)).unwrap();
    }
    writeln!(out, "cardinality: {}", r.cardinality).unwrap();
    if let Some(members) = &r.members {
        for m in members {
            writeln!(out, "{m}").unwrap();
        }
    }
}

fn run_hull(json_mode: bool, file: &Path, q: Option<u8>, list: bool) -> Result<Outcome, Failure> {
    let code = load_code(file, q)?;
    let hull = hull_by_projections(code.space(), code.words())?;
    let report = hull_report(&hull, list)?;
    if json_mode {
        return Ok(Outcome::new(json(&report), true));
    }
    let mut out = String::new();
    writeln!(out, "words: {}, q = {}, n = {}", code.len(), report.q, report.n).unwrap();
    hull_text(&mut out, &report);
    Ok(Outcome::new(out, true))
}

fn run_segment(json_mode: bool, x: &str, y: &str, q: Option<u8>, list: bool) -> Result<Outcome, Failure> {
    let (space, words) = parse_words(&format!("{x}\n{y}\n"), q).map_err(|e| match e {
        sepsys::Error::Parse { message, .. } => Failure::Usage(message),
        other => Failure::Usage(other.to_string()),
    })?;
    let seg = segment(space, &words[0], &words[1])?;
    let report = hull_report(&seg, list)?;
    let distance = words[0].distance(&words[1]);
    if json_mode {
        #[derive(Serialize)]
        struct SegmentReport<'a> {
            x: &'a str,
            y: &'a str,
            distance: usize,
            #[serde(flatten)]
            hull: HullReport,
        }
        return Ok(Outcome::new(json(&SegmentReport { x, y, distance, hull: report }), true));
    }
    let mut out = String::new();
    writeln!(out, "[{x}, {y}]: q = {}, n = {}, distance = {distance}", report.q, report.n).unwrap();
    hull_text(&mut out, &report);
    Ok(Outcome::new(out, true))
}

fn separation_text(out: &mut String, code: &Code, r: &SeparationReport) {
    writeln!(out, "words: {}, q = {}, n = {}", code.len(), code.space().q(), r.n).unwrap();
    writeln!(out, "({},{})-separation at epsilon = {}", r.s, r.t, format_rational(&r.epsilon)).unwrap();
    match r.min_lambda {
        Some(l) => writeln!(out, "min_lambda: {l}").unwrap(),
        None => writeln!(out, "min_lambda: none (no admissible pair)").unwrap(),
    }
    writeln!(out, "separating: {}", if r.separating { "yes" } else { "no" }).unwrap();
    if let Some(v) = &r.violation {
        let s = v.s.iter().map(|w| w.to_string());
        let t = v.t.iter().map(|w| w.to_string());
        writeln!(out, "violation: S = {} T = {}", braces(s), braces(t)).unwrap();
    }
}

fn run_check(
    json_mode: bool,
    file: &Path,
    s: usize,
    t: usize,
    epsilon: &BigRational,
    q: Option<u8>,
) -> Result<Outcome, Failure> {
    let code = load_code(file, q)?;
    let report = if (s, t) == (2, 1) && code.space().q() == 2 {
        check_21_fast(&code, epsilon)?
    } else {
        min_separating_count(&code, s, t, epsilon)?
    };
    let out = if json_mode {
        json(&report)
    } else {
        let mut out = String::new();
        separation_text(&mut out, &code, &report);
        out
    };
    Ok(Outcome::new(out, report.separating))
}

#[derive(Serialize)]
struct WorstAngle {
    apex: usize,
    arms: (usize, usize),
    cos: f64,
    degrees: f64,
}

fn run_check_acute(json_mode: bool, file: &Path, epsilon: &BigRational, tolerance: f64) -> Result<Outcome, Failure> {
    let (dim, points) = load_points(file)?;
    let set = in_file(file, EuclideanPointSet::new(dim, points))?.with_tolerance(tolerance);
    let report = is_eps_21_separating(&set, epsilon)?;
    let worst = report.worst.as_ref().map(|a| WorstAngle {
        apex: a.apex + 1,
        arms: (a.arms.0 + 1, a.arms.1 + 1),
        cos: a.cos(),
        degrees: a.radians().to_degrees(),
    });
    let limit = (1.0 - epsilon.to_f64().unwrap_or(0.0)) * 180.0;
    if json_mode {
        #[derive(Serialize)]
        struct AcuteReport {
            points: usize,
            dim: usize,
            #[serde(serialize_with = "ser_eps")]
            epsilon: BigRational,
            separating: bool,
            worst: Option<WorstAngle>,
        }
        let r = AcuteReport { points: set.len(), dim, epsilon: epsilon.clone(), separating: report.separating, worst };
        return Ok(Outcome::new(json(&r), report.separating));
    }
    let mut out = String::new();
    writeln!(out, "points: {}, dim = {dim}", set.len()).unwrap();
    writeln!(out, "angle limit: {limit:.6} degrees (epsilon = {})", format_rational(epsilon)).unwrap();
    if let Some(w) = &worst {
        writeln!(out, "largest angle: {:.6} degrees at point {} between {} and {}", w.degrees, w.apex, w.arms.0, w.arms.1)
            .unwrap();
    }
    writeln!(out, "separating: {}", if report.separating { "yes" } else { "no" }).unwrap();
    Ok(Outcome::new(out, report.separating))
}

fn ser_eps<S: serde::Serializer>(v: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(v))
}

fn run_check_l1(json_mode: bool, file: &Path) -> Result<Outcome, Failure> {
    let (dim, points) = load_points(file)?;
    let set = in_file(file, L1PointSet::new(dim, points))?;
    let report = l1_check_21(&set)?;
    let hull = if set.is_empty() { None } else { Some(box_hull(&set)?) };
    let violation = report.violation.map(|(x, y, z)| [x + 1, y + 1, z + 1]);
    if json_mode {
        #[derive(Serialize)]
        struct L1Json {
            points: usize,
            dim: usize,
            separating: bool,
            violation: Option<[usize; 3]>,
            hull: Option<Vec<[String; 2]>>,
        }
        let hull = hull.map(|h| {
            h.intervals.iter().map(|(lo, hi)| [format_rational(lo), format_rational(hi)]).collect()
        });
        let r = L1Json { points: set.len(), dim, separating: report.separating, violation, hull };
        return Ok(Outcome::new(json(&r), report.separating));
    }
    let mut out = String::new();
    writeln!(out, "points: {}, dim = {dim}", set.len()).unwrap();
    if let Some(h) = &hull {
        let ivs = h.intervals.iter().map(|(lo, hi)| format!("[{}, {}]", format_rational(lo), format_rational(hi)));
        writeln!(out, "hull: {}", ivs.collect::<Vec<_>>().join(" x ")).unwrap();
    }
    writeln!(out, "separating: {}", if report.separating { "yes" } else { "no" }).unwrap();
    if let Some([x, y, z]) = violation {
        writeln!(out, "violation: point {z} lies in the box of points {x} and {y}").unwrap();
    }
    Ok(Outcome::new(out, report.separating))
}

fn run_bridge(json_mode: bool, file: &Path) -> Result<Outcome, Failure> {
    let code = load_code(file, Some(2))?;
    let words = code.words();
    let mut triples = 0u64;
    let mut first_mismatch = None;
    let mut mismatches = 0u64;
    for (i, x) in words.iter().enumerate() {
        for y in &words[i + 1..] {
            for z in words.iter().filter(|&z| z != x && z != y) {
                let audit = bridge_check(x, y, z)?;
                triples += 1;
                if !audit.equal {
                    mismatches += 1;
                    first_mismatch.get_or_insert([x.to_string(), y.to_string(), z.to_string()]);
                }
            }
        }
    }
    let acute = is_eps_21_separating(&embed_cube(&code)?, &BigRational::new(1.into(), 2.into()))?.separating;
    let hamming = check_21_fast(&code, &BigRational::zero())?.separating;
    let passed = mismatches == 0 && acute == hamming;
    if json_mode {
        #[derive(Serialize)]
        struct BridgeReport {
            words: usize,
            triples: u64,
            mismatches: u64,
            first_mismatch: Option<[String; 3]>,
            acute: bool,
            hamming_separating: bool,
            agree: bool,
        }
        let r = BridgeReport {
            words: code.len(),
            triples,
            mismatches,
            first_mismatch,
            acute,
            hamming_separating: hamming,
            agree: acute == hamming,
        };
        return Ok(Outcome::new(json(&r), passed));
    }
    let mut out = String::new();
    writeln!(out, "words: {}, n = {}", code.len(), code.space().n()).unwrap();
    writeln!(out, "triples audited: {triples}, mismatches: {mismatches}").unwrap();
    if let Some([x, y, z]) = &first_mismatch {
        writeln!(out, "first mismatch: x = {x}, y = {y}, z = {z}").unwrap();
    }
    let yn = |b: bool| if b { "yes" } else { "no" };
    writeln!(out, "acute on the cube: {}", yn(acute)).unwrap();
    writeln!(out, "(2,1)-separating: {}", yn(hamming)).unwrap();
    writeln!(out, "verdicts agree: {}", yn(acute == hamming)).unwrap();
    Ok(Outcome::new(out, passed))
}

fn run_set_system(json_mode: bool, file: &Path, strict: bool) -> Result<Outcome, Failure> {
    let family = load(file, parse_set_system)?;
    let report = in_file(file, set_system_check(&family, strict))?;
    let show = |i: usize| braces(family[i].iter().cloned());
    let violation = report.violation.map(|(a, b, c)| [show(a), show(b), show(c)]);
    if json_mode {
        #[derive(Serialize)]
        struct SetReport {
            sets: usize,
            strict: bool,
            ok: bool,
            violation: Option<[String; 3]>,
        }
        let r = SetReport { sets: family.len(), strict, ok: report.ok, violation };
        return Ok(Outcome::new(json(&r), report.ok));
    }
    let mut out = String::new();
    writeln!(out, "sets: {}{}", family.len(), if strict { " (strict)" } else { "" }).unwrap();
    writeln!(out, "ok: {}", if report.ok { "yes" } else { "no" }).unwrap();
    if let Some([a, b, c]) = violation {
        writeln!(out, "violation: A = {a}, B = {b}, C = {c}").unwrap();
    }
    Ok(Outcome::new(out, report.ok))
}

fn run_construct(
    json_mode: bool,
    n: usize,
    method: Method,
    seed: u64,
    restarts: usize,
    m: Option<usize>,
) -> Result<Outcome, Failure> {
    let (code, name, sample) = match method {
        Method::Lex => (greedy_construct(n, ScanOrder::Lex, 1)?, "greedy-lex", None),
        Method::Gray => (greedy_construct(n, ScanOrder::Gray, 1)?, "greedy-gray", None),
        Method::Random => (greedy_construct(n, ScanOrder::Random { seed }, restarts)?, "greedy-random", None),
        Method::Repair => {
            let eq1 = probabilistic_bound(n as u32).to_usize().unwrap_or(usize::MAX / 2);
            let m = m.unwrap_or(2 * eq1.max(2));
            (random_repair_construct(n, m, seed)?, "repair", Some(m))
        }
    };
    let verified = check_21_fast(&code, &BigRational::zero())?.separating;
    if json_mode {
        #[derive(Serialize)]
        struct ConstructReport {
            n: usize,
            method: &'static str,
            seed: u64,
            #[serde(skip_serializing_if = "Option::is_none")]
            m: Option<usize>,
            size: usize,
            verified: bool,
            code: Vec<String>,
        }
        let r = ConstructReport { n, method: name, seed, m: sample, size: code.len(), verified, code: words_of(&code) };
        return Ok(Outcome::new(json(&r), verified));
    }
    let mut out = String::new();
    writeln!(out, "method: {name}, n = {n}, seed = {seed}").unwrap();
    if let Some(m) = sample {
        writeln!(out, "sample size: {m}").unwrap();
    }
    writeln!(out, "size: {}, verified: {}", code.len(), if verified { "yes" } else { "no" }).unwrap();
    for w in code.words() {
        writeln!(out, "{w}").unwrap();
    }
    Ok(Outcome::new(out, verified))
}

fn run_search(
    json_mode: bool,
    lengths: Vec<usize>,
    time_limit: Option<f64>,
    parallel: usize,
    b_path: Option<&Path>,
) -> Result<Outcome, Failure> {
    let budget = match time_limit {
        Some(t) if t.is_finite() && t >= 0.0 => Some(Duration::from_secs_f64(t)),
        Some(t) => return Err(Failure::Usage(format!("invalid time limit {t}"))),
        None => None,
    };
    let start = Instant::now();
    let mut results = Vec::new();
    for n in lengths {
        let remaining = budget.map(|b| b.saturating_sub(start.elapsed()));
        let result = exact_kappa(n, SearchOptions { time_limit: remaining, parallel })?;
        let timed_out = result.status == SearchStatus::Timeout;
        results.push(result);
        if timed_out {
            break;
        }
    }
    if let Some(path) = b_path {
        std::fs::write(path, b_file(&results))
            .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    }
    let timed_out = results.iter().any(|r| r.status == SearchStatus::Timeout);
    let out = if json_mode {
        json(&results)
    } else {
        let mut out = String::new();
        for r in &results {
            let status = match r.status {
                SearchStatus::Exact => "exact",
                SearchStatus::Timeout => "timeout (best so far)",
            };
            writeln!(out, "n = {}: kappa = {} [{status}], nodes = {}", r.n, r.kappa, r.stats.nodes).unwrap();
            writeln!(out, "  witness: {}", braces(words_of(&r.witness))).unwrap();
        }
        out
    };
    Ok(Outcome { output: out, status: if timed_out { 4 } else { 0 } })
}

fn run_bounds(json_mode: bool, n_max: u32) -> Result<Outcome, Failure> {
    if n_max == 0 {
        return Err(Failure::Usage("--n-max must be at least 1".into()));
    }
    let table = eval_bounds(n_max);
    if json_mode {
        return Ok(Outcome::new(json(&table), true));
    }
    let mut out = String::new();
    writeln!(out, "rate (probabilistic): {:.9}", table.rate_probabilistic).unwrap();
    writeln!(out, "rate (algebraic):     {:.9}", table.rate_algebraic).unwrap();
    writeln!(out, "{:>4} {:>12} {:>12} {:>14}", "n", "eq1", "bevan", "11^(3n/50)").unwrap();
    for row in &table.rows {
        writeln!(out, "{:>4} {:>12} {:>12} {:>14.6}", row.n, row.eq1, row.bevan, row.envelope).unwrap();
    }
    writeln!(out, "(11^(3n/50) is a reference envelope; its o(1) term is not evaluated)").unwrap();
    Ok(Outcome::new(out, true))
}

fn run_graph_hull(json_mode: bool, file: &Path, from: &str, to: &str) -> Result<Outcome, Failure> {
    let space = load(file, |text| load_graph_metric(&parse_edge_list(text)?))?;
    let x = space.index_of(from)?;
    let y = space.index_of(to)?;
    let seg = space.segment(x, y)?;
    let pair: PointSet = [x, y].into_iter().collect();
    let (hull, depth) = space.hull_fixpoint(&pair)?;
    let labels = |set: &PointSet| set.iter().map(|p| space.label(p).to_string()).collect::<Vec<_>>();
    let strict = seg.len() < hull.len();
    if json_mode {
        #[derive(Serialize)]
        struct GraphReport<'a> {
            from: &'a str,
            to: &'a str,
            distance: String,
            segment: Vec<String>,
            hull: Vec<String>,
            depth: usize,
            strict: bool,
        }
        let r = GraphReport {
            from,
            to,
            distance: space.distance(x, y).to_string(),
            segment: labels(&seg),
            hull: labels(&hull),
            depth,
            strict,
        };
        return Ok(Outcome::new(json(&r), true));
    }
    let mut out = String::new();
    writeln!(out, "d({from}, {to}) = {}", space.distance(x, y)).unwrap();
    writeln!(out, "segment ({}): {}", seg.len(), braces(labels(&seg))).unwrap();
    writeln!(out, "hull ({}): {}", hull.len(), braces(labels(&hull))).unwrap();
    writeln!(out, "saturation depth: {depth}").unwrap();
    if strict {
        writeln!(out, "segment is strictly contained in the hull").unwrap();
    } else {
        writeln!(out, "segment equals the hull").unwrap();
    }
    Ok(Outcome::new(out, true))
}

fn run(cli: Cli) -> Result<Outcome, Failure> {
    let j = cli.json;
    match cli.command {
        Command::Hull { file, q, list } => run_hull(j, &file, q, list),
        Command::Segment { x, y, q, list } => run_segment(j, &x, &y, q, list),
        Command::Check { file, s, t, epsilon, q } => run_check(j, &file, s, t, &epsilon, q),
        Command::CheckAcute { file, epsilon, tolerance } => run_check_acute(j, &file, &epsilon, tolerance),
        Command::CheckL1 { file } => run_check_l1(j, &file),
        Command::Bridge { file } => run_bridge(j, &file),
        Command::SetSystem { file, strict } => run_set_system(j, &file, strict),
        Command::Construct { n, method, seed, restarts, m } => run_construct(j, n, method, seed, restarts, m),
        Command::Search { n, n_max, time_limit, parallel, b_file } => {
            let lengths = match (n, n_max) {
                (Some(n), _) => vec![n],
                (None, Some(max)) => (1..=max).collect(),
                (None, None) => unreachable!("clap requires one of --n, --n-max"),
            };
            run_search(j, lengths, time_limit, parallel, b_file.as_deref())
        }
        Command::Bounds { n_max } => run_bounds(j, n_max),
        Command::GraphHull { file, from, to } => run_graph_hull(j, &file, &from, &to),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(outcome) => {
            print!("{}", outcome.output);
            ExitCode::from(outcome.status)
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}
