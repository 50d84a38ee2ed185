//! Command-line front end. Every command prints one JSON report; exit codes are
//! 0 pass, 1 fail, 2 inconclusive, 3 usage or input error.

use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{Algebra, Element, LinearMap};
use crate::charfn::{berezinian, char_function, character, infinity_expansion, BerezinianMethod};
use crate::error::{Error, Result};
use crate::finitespace::{enumerate_sym_pq, open_question_probe, verify_ev_well_defined, verify_variety_equations, FiniteSpace};
use crate::frobenius::{check_symmetry, frobenius_map, MemoMode};
use crate::homclass::{component_series, detect_degrees, is_n_hom, is_pq_hom, random_elements, Strategy, Verdict};
use crate::io;
use crate::suite::{self, Level, Mutation, SuiteConfig};
use crate::sympower::{br_F_from_f, br_f_from_F, key_formula_with, multiplicativity_defect, sym_power_algebra};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

#[derive(Debug, Parser, Serialize)]
#[command(name = "frobkit", version, about = "Exact checks for n-homomorphisms and p|q-homomorphisms")]
pub struct Cli {
    /// Write the report to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case", tag = "command")]
pub enum Command {
    /// Check commutativity, associativity and the unit law of an algebra.
    CheckAlgebra(CheckAlgebraArgs),
    /// Expand R(f, a, z) and related invariants.
    Charfn(CharfnArgs),
    /// Evaluate the Frobenius map Φ_k(f, a_1, …, a_k).
    Frobenius(FrobeniusArgs),
    /// Decide n-homomorphism or p|q-homomorphism claims, or detect degrees.
    Classify(ClassifyArgs),
    /// Build S^n(A) and check the correspondence with n-homomorphisms.
    Sympower(SympowerArgs),
    /// Enumerate and check Sym^{p|q}(X) for a finite set X.
    Sympq(SympqArgs),
    /// Run the full verification suite.
    VerifyAll(VerifyAllArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct CheckAlgebraArgs {
    #[arg(long)]
    pub algebra: PathBuf,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MethodArg {
    Nilpotent,
    Reconstruction,
}

impl From<MethodArg> for BerezinianMethod {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Nilpotent => BerezinianMethod::Nilpotent,
            MethodArg::Reconstruction => BerezinianMethod::Reconstruction,
        }
    }
}

#[derive(Debug, Args, Serialize)]
pub struct CharfnArgs {
    #[arg(long)]
    pub map: PathBuf,
    #[arg(long)]
    pub elem: PathBuf,
    #[arg(long, default_value_t = 12)]
    pub order: usize,
    /// Also report the expansion at infinity.
    #[arg(long)]
    pub at_infinity: bool,
    #[arg(long, value_enum)]
    pub berezinian: Option<MethodArg>,
}

#[derive(Debug, Args, Serialize)]
pub struct FrobeniusArgs {
    #[arg(long)]
    pub map: PathBuf,
    #[arg(long, num_args = 1.., required = true)]
    pub elems: Vec<PathBuf>,
    /// Disable memoisation of sub-evaluations.
    #[arg(long)]
    pub no_memo: bool,
    /// Also compare all orderings of the arguments.
    #[arg(long)]
    pub check_symmetry: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StrategyArg {
    Basis,
    Random,
}

#[derive(Debug, Args, Serialize)]
#[command(group(clap::ArgGroup::new("claim").required(true).args(["n", "pq", "detect"])))]
pub struct ClassifyArgs {
    #[arg(long)]
    pub map: PathBuf,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, num_args = 2, value_names = ["P", "Q"])]
    pub pq: Option<Vec<usize>>,
    #[arg(long, num_args = 2, value_names = ["MAXP", "MAXQ"])]
    pub detect: Option<Vec<usize>>,
    #[arg(long, default_value_t = 12)]
    pub bound: usize,
    #[arg(long, value_enum, default_value_t = StrategyArg::Basis)]
    pub strategy: StrategyArg,
    #[arg(long, default_value_t = 32)]
    pub samples: usize,
    #[arg(long, default_value_t = suite::DEFAULT_SEED)]
    pub seed: u64,
    /// With the random strategy, report inconclusive instead of pass.
    #[arg(long)]
    pub require_certainty: bool,
}

#[derive(Debug, Args, Serialize)]
pub struct SympowerArgs {
    #[arg(long)]
    pub algebra: PathBuf,
    #[arg(long)]
    pub n: usize,
    /// Check F(det(1 + Λ(a) z)) = R(f, a, z); needs --map and --elem.
    #[arg(long, requires_all = ["map", "elem"])]
    pub verify_key: bool,
    /// Check f → F → f and F → f → F; needs --map.
    #[arg(long, requires = "map")]
    pub roundtrip: bool,
    #[arg(long)]
    pub map: Option<PathBuf>,
    #[arg(long)]
    pub elem: Option<PathBuf>,
    #[arg(long, default_value_t = 12)]
    pub bound: usize,
}

#[derive(Debug, Args, Serialize)]
#[command(group(clap::ArgGroup::new("mode").args(["list", "verify", "probe"])))]
pub struct SympqArgs {
    /// Comma-separated point labels.
    #[arg(long, value_delimiter = ',', required = true)]
    pub points: Vec<String>,
    #[arg(long)]
    pub p: usize,
    #[arg(long)]
    pub q: usize,
    #[arg(long)]
    pub list: bool,
    #[arg(long)]
    pub verify: bool,
    #[arg(long)]
    pub probe: bool,
    #[arg(long, default_value_t = 12)]
    pub bound: usize,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[arg(long, default_value_t = suite::DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SuiteArg {
    Desk,
    Extended,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MutationArg {
    PsiSign,
}

#[derive(Debug, Args, Serialize)]
pub struct VerifyAllArgs {
    #[arg(long, value_enum, default_value_t = SuiteArg::Desk)]
    pub suite: SuiteArg,
    #[arg(long, default_value_t = suite::DEFAULT_SEED)]
    pub seed: u64,
    /// Inject a deliberate defect to confirm the suite detects it.
    #[arg(long, value_enum)]
    pub mutation: Option<MutationArg>,
}

/// What `run` produced; `main` prints it and exits.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Produced {
    verdict: Verdict,
    seed: Option<u64>,
    result: Value,
}

fn exit_code(verdict: Verdict) -> i32 {
    match verdict {
        Verdict::Pass => EXIT_PASS,
        Verdict::Fail => EXIT_FAIL,
        Verdict::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

fn verdict_of(ok: bool) -> Verdict {
    if ok {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

fn to_value<T: Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("reports serialize")
}

fn command_name(command: &Command) -> &'static str {
    match command {
        Command::CheckAlgebra(_) => "check-algebra",
        Command::Charfn(_) => "charfn",
        Command::Frobenius(_) => "frobenius",
        Command::Classify(_) => "classify",
        Command::Sympower(_) => "sympower",
        Command::Sympq(_) => "sympq",
        Command::VerifyAll(_) => "verify-all",
    }
}

fn gate(algebra: &Arc<Algebra>, what: &str) -> Result<()> {
    let report = algebra.check_axioms();
    match report.violations.first() {
        None => Ok(()),
        Some(first) => Err(Error::InvalidAlgebra(format!(
            "{what} violates {} axiom(s), first {first:?}",
            report.violations.len()
        ))),
    }
}

fn load_checked_map(path: &Path) -> Result<LinearMap> {
    let f = io::load_map(path)?;
    gate(f.domain(), "domain")?;
    gate(f.codomain(), "codomain")?;
    Ok(f)
}

fn check_algebra(args: &CheckAlgebraArgs) -> Result<Produced> {
    let algebra = io::load_algebra(&args.algebra)?;
    let report = algebra.check_axioms();
    Ok(Produced {
        verdict: verdict_of(report.is_valid()),
        seed: None,
        result: json!({
            "dim": algebra.dim(),
            "basis": algebra.labels(),
            "split": algebra.is_split(),
            "violations": report.violations,
        }),
    })
}

fn charfn(args: &CharfnArgs) -> Result<Produced> {
    let f = load_checked_map(&args.map)?;
    let a = io::load_element(&args.elem, f.domain())?;
    let expansion = char_function(&f, &a, args.order)?;
    let chi = character(&f)?;
    let mut result = json!({
        "series": expansion.series.render(),
        "psis": expansion.psis(),
        "character": {"value": chi.value, "integral": chi.integer},
    });
    if let Some(method) = args.berezinian {
        result["berezinian"] = to_value(&berezinian(&f, &a, method.into())?);
    }
    if args.at_infinity {
        let method = args.berezinian.map(Into::into).unwrap_or(BerezinianMethod::Reconstruction);
        result["infinity"] = to_value(&infinity_expansion(&f, &a, args.order, method)?);
    }
    Ok(Produced { verdict: Verdict::Pass, seed: None, result })
}

fn frobenius(args: &FrobeniusArgs) -> Result<Produced> {
    let f = load_checked_map(&args.map)?;
    let elems: Vec<Element> = args.elems.iter().map(|p| io::load_element(p, f.domain())).collect::<Result<_>>()?;
    let mode = if args.no_memo { MemoMode::Off } else { MemoMode::Sorted };
    let value = frobenius_map(&f, &elems, mode)?;
    let mut result = json!({"k": elems.len(), "memo": format!("{mode:?}").to_lowercase(), "value": value});
    let mut verdict = Verdict::Pass;
    if args.check_symmetry {
        let symmetric = check_symmetry(&f, &elems, false)?;
        result["symmetric"] = json!(symmetric);
        verdict = verdict_of(symmetric);
    }
    Ok(Produced { verdict, seed: None, result })
}

fn strategy_of(args: &ClassifyArgs) -> Strategy {
    match args.strategy {
        StrategyArg::Basis => Strategy::BasisExhaustive,
        StrategyArg::Random => Strategy::Randomized {
            samples: args.samples,
            seed: args.seed,
            require_certainty: args.require_certainty,
        },
    }
}

fn classify(args: &ClassifyArgs) -> Result<Produced> {
    let f = load_checked_map(&args.map)?;
    let strategy = strategy_of(args);
    let seed = matches!(strategy, Strategy::Randomized { .. }).then_some(args.seed);
    if let Some(n) = args.n {
        let report = is_n_hom(&f, n, args.bound, strategy)?;
        return Ok(Produced { verdict: report.verdict, seed, result: to_value(&report) });
    }
    if let Some(pq) = &args.pq {
        let report = is_pq_hom(&f, pq[0], pq[1], args.bound, strategy)?;
        return Ok(Produced { verdict: report.verdict, seed, result: to_value(&report) });
    }
    let limits = args.detect.as_ref().expect("clap requires one claim");
    detect(&f, limits[0], limits[1], args, seed)
}

/// Detects `(p, q)` from the characteristic functions at sample elements, then
/// confirms the largest detected pair with the p|q test.
fn detect(f: &LinearMap, max_p: usize, max_q: usize, args: &ClassifyArgs, seed: Option<u64>) -> Result<Produced> {
    if !f.codomain().is_split() {
        return Err(Error::NotSplit);
    }
    let samples = random_elements(f.domain(), args.samples.max(1), args.seed);
    let mut found = (0usize, 0usize);
    let mut undetected = Vec::new();
    for a in &samples {
        let series = char_function(f, a, args.bound)?.series;
        for c in 0..f.codomain().dim() {
            match detect_degrees(&component_series(&series, c), max_p, max_q) {
                Some((p, q)) => found = (found.0.max(p), found.1.max(q)),
                None => undetected.push(json!({"element": a, "component": c})),
            }
        }
    }
    if !undetected.is_empty() {
        let result = json!({"detected": null, "undetected": undetected, "samples": samples.len()});
        return Ok(Produced { verdict: Verdict::Fail, seed: Some(args.seed), result });
    }
    let (p, q) = found;
    let bound = args.bound.max(p + q + 2);
    let report = is_pq_hom(f, p, q, bound, strategy_of(args))?;
    let result = json!({"detected": {"p": p, "q": q}, "samples": samples.len(), "confirmation": report});
    Ok(Produced { verdict: report.verdict, seed: seed.or(Some(args.seed)), result })
}

#[allow(non_snake_case)]
fn sympower(args: &SympowerArgs) -> Result<Produced> {
    let algebra = io::load_algebra(&args.algebra)?;
    gate(&algebra, "algebra")?;
    if args.n == 0 {
        return Err(Error::Input("--n must be at least 1".into()));
    }
    let power = sym_power_algebra(&algebra, args.n)?;
    let mut result = json!({
        "n": args.n,
        "dim": power.dim(),
        "algebra": io::AlgebraJson::from_algebra(&power.algebra),
    });
    let mut ok = true;
    if args.verify_key || args.roundtrip {
        let f = load_checked_map(args.map.as_ref().expect("clap requires --map"))?;
        if !f.domain().same_as(&algebra) {
            return Err(Error::Input("map domain differs from --algebra".into()));
        }
        let F = match br_F_from_f(&power, &f, args.bound) {
            Ok(F) => F,
            Err(Error::NotNHomomorphism(n)) => {
                result["error"] = json!(format!("map is not a {n}-homomorphism"));
                return Ok(Produced { verdict: Verdict::Fail, seed: None, result });
            }
            Err(e) => return Err(e),
        };
        result["F"] = to_value(&F);
        if args.roundtrip {
            let defect = multiplicativity_defect(&F)?;
            let back = br_f_from_F(&power, &F)?;
            let again = br_F_from_f(&power, &back, args.bound)?;
            let (f_ok, F_ok) = (back == f, again == F);
            ok &= defect.is_none() && f_ok && F_ok;
            result["roundtrip"] = json!({
                "multiplicative": defect.is_none(),
                "f_to_F_to_f": f_ok,
                "F_to_f_to_F": F_ok,
            });
        }
        if args.verify_key {
            let a = io::load_element(args.elem.as_ref().expect("clap requires --elem"), &algebra)?;
            let report = key_formula_with(&power, &F, &f, &a)?;
            ok &= report.holds;
            result["key_formula"] = to_value(&report);
        }
    }
    Ok(Produced { verdict: verdict_of(ok), seed: None, result })
}

fn sympq(args: &SympqArgs) -> Result<Produced> {
    let space = FiniteSpace::new(&args.points)?;
    if args.probe {
        let report = open_question_probe(&space, args.p, args.q, args.trials, args.seed, args.bound)?;
        return Ok(Produced { verdict: report.verdict, seed: Some(args.seed), result: to_value(&report) });
    }
    let sym = enumerate_sym_pq(&space, args.p, args.q)?;
    let mut result = json!({
        "points": space.points(),
        "p": args.p,
        "q": args.q,
        "class_count": sym.classes.len(),
        "classes": sym.classes,
    });
    if !args.verify {
        return Ok(Produced { verdict: Verdict::Pass, seed: None, result });
    }
    let well_defined = verify_ev_well_defined(&sym)?;
    let mut all_pass = well_defined;
    let mut reports = Vec::with_capacity(sym.classes.len());
    for class in &sym.classes {
        let report = verify_variety_equations(&class.representative, &space, args.bound, Strategy::BasisExhaustive)?;
        all_pass &= report.passed();
        reports.push(json!({"class": class.rendered, "report": report}));
    }
    result["ev_well_defined"] = json!(well_defined);
    result["variety_equations"] = Value::Array(reports);
    Ok(Produced { verdict: verdict_of(all_pass), seed: None, result })
}

fn verify_all(args: &VerifyAllArgs) -> Produced {
    let config = SuiteConfig {
        level: match args.suite {
            SuiteArg::Desk => Level::Desk,
            SuiteArg::Extended => Level::Extended,
        },
        seed: args.seed,
        mutation: args.mutation.map(|MutationArg::PsiSign| Mutation::PsiSign),
    };
    let report = suite::verify_all(config);
    Produced { verdict: verdict_of(report.passed), seed: Some(args.seed), result: to_value(&report) }
}

fn dispatch(command: &Command) -> Result<Produced> {
    match command {
        Command::CheckAlgebra(a) => check_algebra(a),
        Command::Charfn(a) => charfn(a),
        Command::Frobenius(a) => frobenius(a),
        Command::Classify(a) => classify(a),
        Command::Sympower(a) => sympower(a),
        Command::Sympq(a) => sympq(a),
        Command::VerifyAll(a) => Ok(verify_all(a)),
    }
}

fn failing_criteria(result: &Value) -> Option<String> {
    let ids = result.get("failing")?.as_array()?;
    if ids.is_empty() {
        return None;
    }
    let names: Vec<String> = ids.iter().map(|id| format!("C{id}")).collect();
    Some(format!("failing criteria: {}", names.join(", ")))
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code, stdout: String::new(), stderr: text }
            } else {
                Outcome { code, stdout: text, stderr: String::new() }
            };
        }
    };
    let start = Instant::now();
    let produced = match dispatch(&cli.command) {
        Ok(p) => p,
        Err(e) => return Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {e}\n") },
    };
    let mut stderr = failing_criteria(&produced.result).map(|s| s + "\n").unwrap_or_default();
    let report = json!({
        "tool": "frobkit",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command_name(&cli.command),
        "config": to_value(&cli.command),
        "seed": produced.seed,
        "verdict": produced.verdict,
        "elapsed_ms": start.elapsed().as_millis() as u64,
        "result": produced.result,
    });
    let text = serde_json::to_string_pretty(&report).expect("reports serialize") + "\n";
    let code = exit_code(produced.verdict);
    match &cli.out {
        Some(path) => match std::fs::write(path, &text) {
            Ok(()) => Outcome { code, stdout: String::new(), stderr },
            Err(e) => {
                stderr.push_str(&format!("error: cannot write {}: {e}\n", path.display()));
                Outcome { code: EXIT_USAGE, stdout: String::new(), stderr }
            }
        },
        None => Outcome { code, stdout: text, stderr },
    }
}
