//! Command-line front end for the `shadowdeg` library.
//!
//! Exit codes: 0 success or pass, 1 counterexample / infeasible / unproven,
//! 2 usage, parse or domain error.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use shadowdeg::bounds::{self, BoundValue};
use shadowdeg::constructions::ConstructionSpec;
use shadowdeg::proofcheck::{self, sample, BranchChoice, CheckReport, SeparationInstance};
use shadowdeg::search::{enumerate_extremal, max_family_size, SearchProblem, SearchReport};
use shadowdeg::{parse_family, write_family, KSet, SetFamily};

const SCHEMA: u32 = 1;
const DEFAULT_SEED: u64 = 0x5EED;

#[derive(Parser)]
#[command(name = "shadowdeg", version, about = "Intersecting uniform families with prescribed shadow degree")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a named family and print it in the family text format.
    Construct(ConstructArgs),
    /// Summarize a family file.
    Stats(InputArgs),
    /// Exact maximum family size for given (n, k, r).
    Search(SearchArgs),
    /// Run one of the named proof-step checks.
    Verify(VerifyArgs),
    /// Reduce an intersecting family to a critical one.
    ReduceCritical(RawInputArgs),
    /// Minimum-size support of an intersecting family.
    Support(InputArgs),
    /// Evaluate a closed-form bound or threshold exactly.
    Threshold(ThresholdArgs),
    /// Audit the closing inequality chain at (n, k, r).
    AuditChain(ChainArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Family file; standard input when omitted or `-`.
    input: Option<PathBuf>,
}

#[derive(Args)]
struct RawInputArgs {
    input: Option<PathBuf>,
    /// Print the result in the family text format instead of JSON.
    #[arg(long)]
    raw: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyKind {
    Star,
    HiltonMilner,
    Ell,
    EllOn,
    Complete,
    Design,
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(long, value_enum)]
    family: FamilyKind,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    /// Center of a star.
    #[arg(long, default_value_t = 1)]
    x: usize,
    /// Base set for `ell-on` and `complete`, comma separated.
    #[arg(long, value_delimiter = ',')]
    y: Option<Vec<usize>>,
    /// Print JSON instead of the family text format.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    r: usize,
    /// List every optimal family up to isomorphism.
    #[arg(long)]
    enumerate: bool,
    /// Node cap per top-level branch.
    #[arg(long)]
    node_budget: Option<u64>,
    /// Wall-clock cap in seconds.
    #[arg(long)]
    time_budget: Option<f64>,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    #[arg(long)]
    raw: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckName {
    TauGeDelta,
    LinkDegree,
    NoSunflower,
    Branching,
    Separation,
    DoubleSeparation,
    CriticalBounds,
    Classification,
    Support,
}

impl CheckName {
    fn about(self) -> &'static str {
        match self {
            CheckName::TauGeDelta => "transversal number >= shadow degree (family file or --random)",
            CheckName::LinkDegree => "links at points keep shadow degree >= r (family file or --random; --r)",
            CheckName::NoSunflower => "no 3-petal sunflower with a 1-point kernel when shadow degree >= 2",
            CheckName::Branching => "branching process from the minimum level covers the family (--r)",
            CheckName::Separation => "enumerated separating permutations match the closed form (--n --g --h, or the grid)",
            CheckName::DoubleSeparation => "no permutation separates two recorded pairs (family file)",
            CheckName::CriticalBounds => "union-size bounds for a critical family (family file or --random)",
            CheckName::Classification => "shadow degree k forces all k-subsets of a (2k-1)-set (--n --k)",
            CheckName::Support => "minimum support and its witness pairs (family file or --random)",
        }
    }

    fn name(self) -> String {
        self.to_possible_value().expect("no skipped variants").get_name().to_string()
    }
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_enum, required_unless_present = "list")]
    check: Option<CheckName>,
    input: Option<PathBuf>,
    /// List the available checks.
    #[arg(long)]
    list: bool,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    g: Option<usize>,
    #[arg(long)]
    h: Option<usize>,
    /// Check this many seeded random families instead of an input file.
    #[arg(long)]
    random: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Formula {
    Binomial,
    Ekr,
    Hm,
    Ell,
    Blp,
    Main,
    Tuza,
    Katona,
    Separation,
    Prior,
}

#[derive(Args)]
struct ThresholdArgs {
    #[arg(long, value_enum)]
    formula: Formula,
    #[arg(long)]
    n: Option<i64>,
    #[arg(long)]
    k: Option<i64>,
    #[arg(long)]
    r: Option<i64>,
    #[arg(long)]
    g: Option<i64>,
    #[arg(long)]
    h: Option<i64>,
}

#[derive(Args)]
struct ChainArgs {
    #[arg(long)]
    n: u64,
    #[arg(long)]
    k: u64,
    #[arg(long)]
    r: u64,
    /// Print only failing steps.
    #[arg(long)]
    failures_only: bool,
}

/// Errors that end the run with exit code 2.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Lib(shadowdeg::Error),
    Io(String),
}

impl From<shadowdeg::Error> for Failure {
    fn from(e: shadowdeg::Error) -> Self {
        Failure::Lib(e)
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(m) | Failure::Io(m) => write!(f, "{m}"),
            Failure::Lib(e) => write!(f, "{e}"),
        }
    }
}

type CliResult = Result<Outcome, Failure>;

/// What to print and whether the run counts as a success.
struct Outcome {
    text: String,
    ok: bool,
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn need<T>(v: Option<T>, flag: &str) -> Result<T, Failure> {
    v.ok_or_else(|| usage(format!("missing --{flag}")))
}

fn json_outcome(mut value: Value, ok: bool) -> Outcome {
    if let Value::Object(map) = &mut value {
        map.insert("schema".into(), json!(SCHEMA));
    }
    let text = serde_json::to_string_pretty(&value).expect("values serialize") + "\n";
    Outcome { text, ok }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn read_family(path: &Option<PathBuf>) -> Result<SetFamily, Failure> {
    let bytes = match path {
        Some(p) if p.as_os_str() != "-" => {
            fs::read(p).map_err(|e| Failure::Io(format!("cannot read {}: {e}", p.display())))?
        }
        _ => {
            let mut buf = Vec::new();
            io::stdin().read_to_end(&mut buf).map_err(|e| Failure::Io(format!("cannot read standard input: {e}")))?;
            buf
        }
    };
    let text = String::from_utf8(bytes).map_err(|e| Failure::Io(format!("input is not UTF-8: {e}")))?;
    Ok(parse_family(&text)?)
}

fn family_value(fam: &SetFamily) -> Value {
    json!({
        "n": fam.n(),
        "k": fam.declared_k().unwrap_or(0),
        "members": to_value(fam),
        "text": write_family(fam),
    })
}

fn check_value(rep: &CheckReport) -> Value {
    let mut v = to_value(rep);
    if let (Value::Object(map), Some(cx)) = (&mut v, &rep.counterexample) {
        map.insert("counterexample".into(), family_value(cx));
    }
    v
}

fn construct(a: ConstructArgs) -> CliResult {
    let base_set = |y: &Option<Vec<usize>>| -> Result<Option<KSet>, Failure> {
        y.as_ref().map(|v| KSet::from_elements(v.iter().copied()).map_err(Failure::from)).transpose()
    };
    let spec = match a.family {
        FamilyKind::Star => ConstructionSpec::Star { n: need(a.n, "n")?, k: need(a.k, "k")?, x: a.x },
        FamilyKind::HiltonMilner => ConstructionSpec::HiltonMilner { n: need(a.n, "n")?, k: need(a.k, "k")? },
        FamilyKind::Ell => ConstructionSpec::Ell { n: need(a.n, "n")?, k: need(a.k, "k")?, r: need(a.r, "r")? },
        FamilyKind::EllOn => {
            let y = need(base_set(&a.y)?, "y")?;
            ConstructionSpec::EllOnY { n: need(a.n, "n")?, k: need(a.k, "k")?, y }
        }
        FamilyKind::Complete => {
            let k = need(a.k, "k")?;
            let y = match base_set(&a.y)? {
                Some(y) => y,
                None if k >= 1 => KSet::initial(2 * k - 1),
                None => return Err(usage("--k must be positive")),
            };
            ConstructionSpec::CompleteOnY { n: a.n.unwrap_or(y.max_element().max(1)), k, y }
        }
        FamilyKind::Design => ConstructionSpec::Design2632,
    };
    let fam = spec.build()?;
    if a.json {
        return Ok(json_outcome(json!({ "construction": to_value(&spec), "family": family_value(&fam) }), true));
    }
    Ok(Outcome { text: write_family(&fam), ok: true })
}

fn stats(a: InputArgs) -> CliResult {
    let fam = read_family(&a.input)?;
    let uniform = fam.uniformity();
    let shadow_degree = match uniform {
        Some(k) if k >= 1 && !fam.is_empty() => Some(fam.shadow_degree()?),
        _ => None,
    };
    let shadow_size = match uniform {
        Some(k) if k >= 1 => Some(fam.shadow()?.len()),
        _ => None,
    };
    let value = json!({
        "n": fam.n(),
        "k": fam.declared_k(),
        "size": fam.len(),
        "uniformity": uniform,
        "rank": fam.rank(),
        "union_size": fam.union().len(),
        "intersecting": fam.is_intersecting(),
        "shadow_size": shadow_size,
        "shadow_degree": shadow_degree,
        "matching_number": fam.matching_number(),
        "transversal_number": fam.transversal_number().ok(),
    });
    Ok(json_outcome(value, true))
}

fn search_value(rep: &SearchReport) -> Value {
    json!({
        "n": rep.n,
        "k": rep.k,
        "r": rep.r,
        "optimum": rep.optimum,
        "proven": rep.proven,
        "witness": rep.witness.as_ref().map(family_value),
        "classes": rep.extremal_classes.iter().map(family_value).collect::<Vec<_>>(),
        "nodes_expanded": rep.nodes_expanded,
    })
}

fn search(a: SearchArgs) -> CliResult {
    let mut p = SearchProblem::new(a.n, a.k, a.r).with_workers(a.workers);
    if let Some(b) = a.node_budget {
        p = p.with_node_budget(b);
    }
    if let Some(t) = a.time_budget {
        let d = Duration::try_from_secs_f64(t).map_err(|_| usage("--time-budget must be a non-negative number of seconds"))?;
        p = p.with_time_budget(d);
    }
    let rep = if a.enumerate { enumerate_extremal(&p)? } else { max_family_size(&p)? };
    let ok = rep.proven && rep.optimum.is_some();
    if a.raw {
        let text = match &rep.witness {
            Some(w) => write_family(w),
            None => String::new(),
        };
        return Ok(Outcome { text, ok });
    }
    Ok(json_outcome(search_value(&rep), ok))
}

fn reduce_critical(a: RawInputArgs) -> CliResult {
    let fam = read_family(&a.input)?;
    let c = proofcheck::reduce_to_critical(&fam)?;
    if a.raw {
        return Ok(Outcome { text: write_family(&c), ok: true });
    }
    let value = json!({
        "input_size": fam.len(),
        "critical": proofcheck::is_critical(&c)?,
        "rank": c.rank(),
        "union_size": c.union().len(),
        "family": family_value(&c),
    });
    Ok(json_outcome(value, true))
}

fn support(a: InputArgs) -> CliResult {
    let fam = read_family(&a.input)?;
    let rep = proofcheck::minimal_support(&fam)?;
    let value = json!({
        "support": to_value(&rep.support),
        "size": rep.support.len(),
        "witnesses": to_value(&rep.witnesses),
    });
    Ok(json_outcome(value, true))
}

fn bound_value(b: &BoundValue) -> Value {
    json!({ "formula_id": b.formula_id, "params": b.params, "decimal_value": b.decimal() })
}

fn threshold(a: ThresholdArgs) -> CliResult {
    let u = |v: Option<i64>, flag: &str| -> Result<u64, Failure> {
        let v = need(v, flag)?;
        u64::try_from(v).map_err(|_| usage(format!("--{flag} must be non-negative")))
    };
    let b = match a.formula {
        Formula::Binomial => bounds::binomial(need(a.n, "n")?, need(a.k, "k")?),
        Formula::Ekr => bounds::ekr_bound(u(a.n, "n")?, u(a.k, "k")?)?,
        Formula::Hm => bounds::hm_bound(u(a.n, "n")?, u(a.k, "k")?)?,
        Formula::Ell => bounds::ell_size(u(a.n, "n")?, u(a.k, "k")?, u(a.r, "r")?)?,
        Formula::Blp => bounds::blp_threshold(u(a.k, "k")?, u(a.r, "r")?)?,
        Formula::Main => bounds::main_threshold(u(a.k, "k")?, u(a.r, "r")?)?,
        Formula::Tuza => bounds::tuza_bound(u(a.k, "k")?),
        Formula::Katona => bounds::katona_style_bound(u(a.k, "k")?),
        Formula::Separation => bounds::separation_count(u(a.n, "n")?, u(a.g, "g")?, u(a.h, "h")?)?,
        Formula::Prior => {
            return Ok(json_outcome(json!({ "formula_id": "prior_threshold", "symbolic": bounds::PRIOR_THRESHOLD_FORMULA }), true));
        }
    };
    Ok(json_outcome(bound_value(&b), true))
}

fn audit_chain(a: ChainArgs) -> CliResult {
    let rep = bounds::audit_inequality_chain(a.n, a.k, a.r)?;
    let steps: Vec<Value> = rep.steps.iter().filter(|s| !a.failures_only || !s.holds).map(to_value).collect();
    let value = json!({
        "n": rep.n,
        "k": rep.k,
        "r": rep.r,
        "passed": rep.passed,
        "step_count": rep.steps.len(),
        "failure_count": rep.failures().count(),
        "steps": steps,
    });
    Ok(json_outcome(value, rep.passed))
}

fn single_check(check: CheckName, a: &VerifyArgs) -> Result<CheckReport, Failure> {
    let file_family = || read_family(&a.input);
    Ok(match check {
        CheckName::TauGeDelta => proofcheck::verify_tau_ge_delta(&file_family()?)?,
        CheckName::LinkDegree => {
            let fam = file_family()?;
            let r = match a.r {
                Some(r) => r,
                None => fam.shadow_degree()?,
            };
            proofcheck::verify_link_degree(&fam, r)?
        }
        CheckName::NoSunflower => proofcheck::verify_no_sunflower_3_1(&file_family()?)?,
        CheckName::Branching => {
            let fam = file_family()?;
            let r = need(a.r, "r")?;
            branching_check(&fam, r, a.seed)?
        }
        CheckName::Separation => match (a.n, a.g, a.h) {
            (Some(n), Some(g), Some(h)) => proofcheck::verify_separation_count(n, g, h)?,
            (None, None, None) => separation_grid()?,
            _ => return Err(usage("separation takes all of --n --g --h, or none for the full grid")),
        },
        CheckName::DoubleSeparation => {
            let fam = file_family()?;
            if !fam.is_intersecting() {
                return Err(usage("double-separation needs an intersecting family"));
            }
            proofcheck::verify_no_double_separation(&SeparationInstance::from_family(&fam)?)?
        }
        CheckName::CriticalBounds => proofcheck::audit_union_bounds(&file_family()?)?,
        CheckName::Classification => proofcheck::verify_delta_k_classification(need(a.n, "n")?, need(a.k, "k")?)?,
        CheckName::Support => proofcheck::verify_minimal_support(&file_family()?)?,
    })
}

fn branching_check(fam: &SetFamily, r: usize, seed: u64) -> Result<CheckReport, Failure> {
    let base = fam.level(fam.min_member_size()?);
    let run = proofcheck::run_branching(&base, r)?;
    let rep = proofcheck::verify_branching_cover(&run, fam);
    if !rep.passed {
        return Ok(rep);
    }
    let seeded = proofcheck::run_branching_with(&base, r, BranchChoice::Seeded(seed))?;
    Ok(proofcheck::verify_branching_cover(&seeded, fam))
}

fn separation_grid() -> Result<CheckReport, Failure> {
    let mut last = None;
    for n in 3..=7 {
        for g in 2..=4 {
            for h in 2..=4 {
                if g + h - 1 <= n {
                    let rep = proofcheck::verify_separation_count(n, g, h)?;
                    if !rep.passed {
                        return Ok(rep);
                    }
                    last = Some(rep);
                }
            }
        }
    }
    let mut rep = last.expect("grid is non-empty");
    rep.summary = "every grid point n <= 7, 2 <= g,h <= 4 matches the closed form".into();
    Ok(rep)
}

fn random_checks(check: CheckName, a: &VerifyArgs, runs: usize) -> CliResult {
    let n = a.n.unwrap_or(7);
    let k = a.k.unwrap_or(3);
    if n == 0 || n > 12 || k == 0 || k > n {
        return Err(usage("--random needs 1 <= k <= n <= 12"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let mut skipped = 0usize;
    let mut failure: Option<(SetFamily, CheckReport)> = None;
    for _ in 0..runs {
        let (fam, rep) = match check {
            CheckName::TauGeDelta => {
                let fam = sample::intersecting_uniform(&mut rng, n, k);
                let rep = proofcheck::verify_tau_ge_delta(&fam)?;
                (fam, rep)
            }
            CheckName::LinkDegree => {
                let fam = sample::intersecting_uniform(&mut rng, n, k.max(2).min(n));
                let r = a.r.unwrap_or(fam.shadow_degree()?);
                if fam.shadow_degree()? < r {
                    skipped += 1;
                    continue;
                }
                let rep = proofcheck::verify_link_degree(&fam, r)?;
                (fam, rep)
            }
            CheckName::NoSunflower => {
                let fam = sample::intersecting_uniform(&mut rng, n, k);
                if fam.shadow_degree()? < 2 {
                    skipped += 1;
                    continue;
                }
                let rep = proofcheck::verify_no_sunflower_3_1(&fam)?;
                (fam, rep)
            }
            CheckName::Branching => {
                let r = need(a.r, "r")?;
                if n > 7 {
                    return Err(usage("random branching instances need --n <= 7"));
                }
                let Some(fam) = sample::branching_instance(&mut rng, n, r) else {
                    skipped += 1;
                    continue;
                };
                let rep = branching_check(&fam, r, a.seed)?;
                (fam, rep)
            }
            CheckName::CriticalBounds => {
                let fam = sample::intersecting_mixed(&mut rng, n, k);
                let c = proofcheck::reduce_to_critical(&fam)?;
                let rep = proofcheck::audit_union_bounds(&c)?;
                (c, rep)
            }
            CheckName::Support => {
                let fam = sample::intersecting_mixed(&mut rng, n, k);
                let rep = proofcheck::verify_minimal_support(&fam)?;
                (fam, rep)
            }
            CheckName::Separation | CheckName::DoubleSeparation | CheckName::Classification => {
                return Err(usage(format!("{} has no random mode", check.name())));
            }
        };
        if !rep.passed {
            failure = Some((fam, rep));
            break;
        }
    }
    let passed = failure.is_none();
    let value = json!({
        "check": check.name(),
        "passed": passed,
        "runs": runs,
        "skipped": skipped,
        "seed": a.seed,
        "n": n,
        "k": k,
        "failure": failure.map(|(fam, rep)| json!({ "family": family_value(&fam), "report": check_value(&rep) })),
    });
    Ok(json_outcome(value, passed))
}

fn verify(a: VerifyArgs) -> CliResult {
    if a.list {
        let checks: Vec<Value> = CheckName::value_variants()
            .iter()
            .map(|c| json!({ "name": c.name(), "description": c.about() }))
            .collect();
        return Ok(json_outcome(json!({ "checks": checks }), true));
    }
    let check = need(a.check, "check")?;
    if let Some(runs) = a.random {
        return random_checks(check, &a, runs);
    }
    let rep = single_check(check, &a)?;
    Ok(json_outcome(check_value(&rep), rep.passed))
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Construct(a) => construct(a),
        Command::Stats(a) => stats(a),
        Command::Search(a) => search(a),
        Command::Verify(a) => verify(a),
        Command::ReduceCritical(a) => reduce_critical(a),
        Command::Support(a) => support(a),
        Command::Threshold(a) => threshold(a),
        Command::AuditChain(a) => audit_chain(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            let mut stdout = io::stdout().lock();
            if stdout.write_all(out.text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(2);
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
