//! Subcommands, session configuration and JSON report emission.

use std::fs;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};

use torvanish_core::algebra::{MonomialOrder, RingDescriptor, DEFAULT_CHAR};
use torvanish_core::groebner::{groebner, Ideal};
use torvanish_core::homology::{
    depth, ext, grade, module_dim_codim, rank, resolve, tor, ModulePresentation, TorProfile,
};
use torvanish_core::lab::{burch_check, complexity_estimate, rigidity_probe, serre_check, serre_oracle_monomial};
use torvanish_core::Error;
use torvanish_harness::{run_harness, HarnessConfig};

use crate::grammar::{parse_input_with, parse_ring, ParseError, Scope};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VIOLATION: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const SCHEMA: u32 = 1;
pub const DEFAULT_BOUND: usize = 10;
pub const DEFAULT_QUARANTINE: &str = "quarantine.json";
pub const DEFAULT_RUN_REPORT: &str = "run-report.json";

#[derive(Parser, Debug, Clone)]
#[command(name = "torvanish", version, about = "Homological invariants over graded quotient rings of F_p[x_1..x_v]")]
pub struct Cli {
    /// Characteristic of the coefficient field [default: 32003]
    #[arg(long = "char", global = true)]
    pub characteristic: Option<u32>,
    /// Truncation bound B for resolutions, Tor and Ext [default: 10, harness 8]
    #[arg(long, global = true)]
    pub bound: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Input file with `ring`, `ideal` and `module` lines; repeatable
    #[arg(long, global = true)]
    pub input: Vec<PathBuf>,
    /// Write the JSON report here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Ring text such as `F32003[x,y]/(x*y)` or a ring declared in an input file
    #[arg(long, global = true)]
    pub ring: Option<String>,
    /// Where violation records go [default: quarantine.json]
    #[arg(long, global = true)]
    pub quarantine: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Reduced Groebner basis of an ideal together with the defining ideal
    Gb(GbArgs),
    /// Minimal free resolution to the bound
    Res(ModuleArg),
    /// Tor_i(M, N) for 0 <= i <= B
    Tor(PairArgs),
    /// Ext^i(M, N) for 0 <= i <= B
    Ext(PairArgs),
    /// Depth via Koszul homology, optionally the grade of an ideal
    Depth(DepthArgs),
    /// Krull dimension, codimension, length and rank
    Dim(ModuleArg),
    /// Serre's condition (S_n)
    Serre(SerreArgs),
    /// Whether m*I != m*(I : m)
    Burch(IdealArg),
    /// Graded Betti table to the bound
    Betti(ModuleArg),
    /// Complexity estimate from the Betti numbers
    Cx(ModuleArg),
    /// Tor-rigidity windows against partner modules
    Rigidity(RigidityArgs),
    /// Run every validator on the seeded corpus
    Harness(HarnessArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Gb(_) => "gb",
            Command::Res(_) => "res",
            Command::Tor(_) => "tor",
            Command::Ext(_) => "ext",
            Command::Depth(_) => "depth",
            Command::Dim(_) => "dim",
            Command::Serre(_) => "serre",
            Command::Burch(_) => "burch",
            Command::Betti(_) => "betti",
            Command::Cx(_) => "cx",
            Command::Rigidity(_) => "rigidity",
            Command::Harness(_) => "harness",
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum OrderArg {
    Grevlex,
    Lex,
}

#[derive(Args, Debug, Clone)]
pub struct ModuleArg {
    /// Module: `R/(..)`, `R`, `R^r`, `k`, `m`, `gens [..] rels [[..]]` or a declared name
    #[arg(long = "M")]
    pub m: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct PairArgs {
    #[arg(long = "M")]
    pub m: Option<String>,
    #[arg(long = "N")]
    pub n: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct IdealArg {
    /// Ideal: `(g1, ..., gm)`, `m` or a declared name
    #[arg(long)]
    pub ideal: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct GbArgs {
    #[arg(long)]
    pub ideal: Option<String>,
    #[arg(long, value_enum, default_value_t = OrderArg::Grevlex)]
    pub order: OrderArg,
}

#[derive(Args, Debug, Clone)]
pub struct DepthArgs {
    #[arg(long = "M")]
    pub m: Option<String>,
    /// Also report grade(I, M)
    #[arg(long)]
    pub ideal: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct SerreArgs {
    #[arg(long = "M")]
    pub m: Option<String>,
    #[arg(long)]
    pub n: usize,
    /// Use the associated-prime oracle for monomial modules over S
    #[arg(long)]
    pub oracle: bool,
}

#[derive(Args, Debug, Clone)]
pub struct RigidityArgs {
    #[arg(long = "M")]
    pub m: Option<String>,
    /// Partner module; repeatable
    #[arg(long = "N", required = true)]
    pub partners: Vec<String>,
    #[arg(long)]
    pub n: usize,
}

#[derive(Args, Debug, Clone)]
pub struct HarnessArgs {
    /// Worker threads; overrides TORVANISH_THREADS
    #[arg(long)]
    pub threads: Option<usize>,
    /// Record wall-clock times (reports are then not reproducible)
    #[arg(long)]
    pub timing: bool,
    /// Full run report path [default: run-report.json]
    #[arg(long)]
    pub report: Option<PathBuf>,
}

/// Resolved session settings, echoed into every report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SessionConfig {
    pub characteristic: u32,
    pub bound: usize,
    pub seed: u64,
    pub inputs: Vec<String>,
    pub out: Option<String>,
    pub command: String,
}

impl SessionConfig {
    pub fn from_cli(cli: &Cli) -> Self {
        let default_bound = match cli.command {
            Command::Harness(_) => torvanish_harness::DEFAULT_BOUND,
            _ => DEFAULT_BOUND,
        };
        Self {
            characteristic: cli.characteristic.unwrap_or(DEFAULT_CHAR),
            bound: cli.bound.unwrap_or(default_bound),
            seed: cli.seed,
            inputs: cli.input.iter().map(|p| p.display().to_string()).collect(),
            out: cli.out.as_ref().map(|p| p.display().to_string()),
            command: cli.command.name().into(),
        }
    }
}

/// What a run produced: the JSON document, extra files and the exit status.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub exit: u8,
    pub json: String,
    pub files: Vec<(PathBuf, String)>,
    pub message: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
struct InputError {
    kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    source: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    line: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    column: Option<usize>,
    message: String,
}

impl InputError {
    fn parse(source: &str, e: ParseError) -> Self {
        Self {
            kind: "parse",
            source: Some(source.into()),
            line: Some(e.line),
            column: Some(e.column),
            message: e.message,
        }
    }

    fn input(msg: impl Into<String>) -> Self {
        Self {
            kind: "input",
            source: None,
            line: None,
            column: None,
            message: msg.into(),
        }
    }

    fn describe(&self) -> String {
        match (&self.source, self.line, self.column) {
            (Some(s), Some(l), Some(c)) => format!("{s}:{l}:{c}: {}", self.message),
            _ => self.message.clone(),
        }
    }
}

impl From<Error> for InputError {
    fn from(e: Error) -> Self {
        Self {
            kind: "algebra",
            source: None,
            line: None,
            column: None,
            message: e.to_string(),
        }
    }
}

type CResult<T> = Result<T, InputError>;

fn pretty(v: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

fn ext_value(v: Option<u64>) -> Value {
    match v {
        Some(l) => json!(l),
        None => json!("inf"),
    }
}

struct Session<'a> {
    cli: &'a Cli,
    config: SessionConfig,
    scope: Scope,
}

impl<'a> Session<'a> {
    fn open(cli: &'a Cli) -> CResult<Self> {
        let mut config = SessionConfig::from_cli(cli);
        let mut scope = Scope::new();
        scope.default_char = cli.characteristic;
        for path in &cli.input {
            let name = path.display().to_string();
            let text = fs::read_to_string(path).map_err(|e| InputError::input(format!("{name}: {e}")))?;
            scope = parse_input_with(scope, &text).map_err(|e| InputError::parse(&name, e))?.0;
        }
        if let Some(r) = &cli.ring {
            let ring = match scope.ring(r.trim()) {
                Some(found) => found.clone(),
                None => parse_ring(r, cli.characteristic).map_err(|e| InputError::parse("--ring", e))?,
            };
            scope.add_ring("R", ring);
        }
        if let Some((_, ring)) = scope.current_ring() {
            let p = ring.field().characteristic();
            if let Some(q) = cli.characteristic {
                if p != q {
                    return Err(InputError::input(format!(
                        "ring has characteristic {p} but --char is {q}"
                    )));
                }
            }
            config.characteristic = p;
        }
        Ok(Self { cli, config, scope })
    }

    fn ring(&self) -> CResult<Arc<RingDescriptor>> {
        self.scope
            .current_ring()
            .map(|(_, r)| r.clone())
            .ok_or_else(|| InputError::input("no ring in scope; pass --ring or an input file"))
    }

    fn module(&self, flag: &str, text: &Option<String>) -> CResult<ModulePresentation> {
        match text {
            Some(t) => self.scope.module_expr(t).map_err(|e| InputError::parse(flag, e)),
            None => {
                let default = &flag[2..];
                self.scope
                    .module(default)
                    .cloned()
                    .ok_or_else(|| InputError::input(format!("missing {flag}")))
            }
        }
    }

    fn ideal(&self, text: &Option<String>) -> CResult<Ideal> {
        match text {
            Some(t) => self.scope.ideal_expr(t).map_err(|e| InputError::parse("--ideal", e)),
            None => self
                .scope
                .ideal("I")
                .cloned()
                .ok_or_else(|| InputError::input("missing --ideal")),
        }
    }

    fn header(&self) -> Map<String, Value> {
        let mut m = Map::new();
        m.insert("schema".into(), json!(SCHEMA));
        m.insert("command".into(), json!(self.config.command));
        m.insert("config".into(), serde_json::to_value(&self.config).unwrap());
        if let Some((_, r)) = self.scope.current_ring() {
            m.insert("ring".into(), json!(r.to_string()));
        }
        m
    }

    fn quarantine_path(&self) -> PathBuf {
        self.cli.quarantine.clone().unwrap_or_else(|| PathBuf::from(DEFAULT_QUARANTINE))
    }
}

fn merge(doc: &mut Map<String, Value>, v: impl Serialize) {
    if let Value::Object(o) = serde_json::to_value(v).unwrap() {
        doc.extend(o);
    }
}

fn profile_json(p: &TorProfile, key: &str, doc: &mut Map<String, Value>) {
    let dims: Vec<Value> = p.lengths().into_iter().map(ext_value).collect();
    doc.insert(key.into(), Value::Array(dims));
    doc.insert("entries".into(), serde_json::to_value(p.summaries()).unwrap());
}

fn dispatch(s: &Session) -> CResult<(Map<String, Value>, u8, Vec<(PathBuf, String)>)> {
    let bound = s.config.bound;
    let mut files = Vec::new();
    let mut exit = EXIT_OK;
    if let Command::Harness(h) = &s.cli.command {
        let cfg = HarnessConfig {
            seed: s.config.seed,
            bound,
            characteristic: s.config.characteristic,
            threads: h.threads,
            timing: h.timing,
        };
        let rep = run_harness(&cfg)?;
        let report_path = h.report.clone().unwrap_or_else(|| PathBuf::from(DEFAULT_RUN_REPORT));
        files.push((report_path.clone(), rep.to_json()));
        let mut doc = s.header();
        doc.insert("corpus".into(), serde_json::to_value(&rep.corpus).unwrap());
        doc.insert("summary".into(), serde_json::to_value(&rep.summary).unwrap());
        doc.insert("totals".into(), serde_json::to_value(&rep.totals).unwrap());
        doc.insert("run_report".into(), json!(report_path.display().to_string()));
        let violations = rep.violations().len();
        doc.insert("violations".into(), json!(violations));
        if let Some(q) = rep.quarantine_json() {
            let qp = s.quarantine_path();
            doc.insert("quarantine".into(), json!(qp.display().to_string()));
            files.push((qp, q));
            exit = EXIT_VIOLATION;
        }
        return Ok((doc, exit, files));
    }

    let ring = s.ring()?;
    let mut doc = s.header();
    match &s.cli.command {
        Command::Gb(a) => {
            let i = s.ideal(&a.ideal)?;
            let order = match a.order {
                OrderArg::Grevlex => MonomialOrder::Grevlex,
                OrderArg::Lex => MonomialOrder::Lex,
            };
            let gb = groebner(i.generators(), &ring, order)?;
            let basis: Vec<String> = gb
                .elements()
                .iter()
                .map(|v| v.component(0, ring.base()).to_string())
                .collect();
            doc.insert("ideal".into(), json!(i.to_string()));
            doc.insert("order".into(), json!(order));
            doc.insert("basis".into(), json!(basis));
            doc.insert("reduced".into(), json!(gb.is_reduced()));
            doc.insert("s_pairs_reduce_to_zero".into(), json!(gb.spairs_reduce_to_zero()));
            doc.insert("dimension".into(), json!(i.dimension()));
        }
        Command::Res(a) => {
            let m = s.module("--M", &a.m)?;
            let res = resolve(&m, bound)?;
            let diffs: Vec<Vec<Vec<String>>> = (1..=bound)
                .map(|i| {
                    let rank = res.shifts(i - 1).len();
                    res.differential(i)
                        .iter()
                        .map(|c| c.components(rank, ring.base()).iter().map(|p| p.to_string()).collect())
                        .collect()
                })
                .collect();
            doc.insert("M".into(), json!(m.to_string()));
            doc.insert("betti".into(), json!(res.betti_numbers()));
            doc.insert("betti_table".into(), serde_json::to_value(res.betti_table()).unwrap());
            doc.insert("finite".into(), json!(res.is_finite()));
            doc.insert("length".into(), json!(res.length()));
            doc.insert("minimal".into(), json!(res.is_minimal()));
            doc.insert("d_squared_zero".into(), json!(res.composition_vanishes()));
            doc.insert("exact".into(), json!(res.is_exact()));
            doc.insert("shifts".into(), json!((0..=bound).map(|i| res.shifts(i).to_vec()).collect::<Vec<_>>()));
            doc.insert("differentials".into(), json!(diffs));
        }
        Command::Betti(a) => {
            let m = s.module("--M", &a.m)?;
            let res = resolve(&m, bound)?;
            doc.insert("M".into(), json!(m.to_string()));
            doc.insert("betti".into(), json!(res.betti_numbers()));
            doc.insert("betti_table".into(), serde_json::to_value(res.betti_table()).unwrap());
            doc.insert("finite".into(), json!(res.is_finite()));
        }
        Command::Tor(a) | Command::Ext(a) => {
            let m = s.module("--M", &a.m)?;
            let n = s.module("--N", &a.n)?;
            doc.insert("M".into(), json!(m.to_string()));
            doc.insert("N".into(), json!(n.to_string()));
            if matches!(s.cli.command, Command::Tor(_)) {
                profile_json(&tor(&m, &n, bound)?, "tor_dims", &mut doc);
            } else {
                profile_json(&ext(&m, &n, bound)?, "ext_dims", &mut doc);
            }
        }
        Command::Depth(a) => {
            let m = s.module("--M", &a.m)?;
            doc.insert("M".into(), json!(m.to_string()));
            doc.insert("depth".into(), json!(depth(&m)?));
            if a.ideal.is_some() {
                let i = s.ideal(&a.ideal)?;
                doc.insert("ideal".into(), json!(i.to_string()));
                doc.insert("grade".into(), json!(grade(&i, &m)?));
            }
        }
        Command::Dim(a) => {
            let m = s.module("--M", &a.m)?;
            doc.insert("M".into(), json!(m.to_string()));
            match module_dim_codim(&m) {
                Ok((d, c)) => {
                    doc.insert("dim".into(), json!(d));
                    doc.insert("codim".into(), json!(c));
                }
                Err(Error::NotEquidimensional) => {
                    doc.insert("dim".into(), json!(m.dim()));
                    doc.insert("codim".into(), Value::Null);
                    doc.insert("codim_note".into(), json!(Error::NotEquidimensional.to_string()));
                }
                Err(e) => return Err(e.into()),
            }
            doc.insert("length".into(), ext_value(m.length()));
            doc.insert("rank".into(), json!(rank(&m)));
        }
        Command::Serre(a) => {
            let m = s.module("--M", &a.m)?;
            doc.insert("M".into(), json!(m.to_string()));
            let rep = if a.oracle { serre_oracle_monomial(&m, a.n)? } else { serre_check(&m, a.n)? };
            merge(&mut doc, &rep);
        }
        Command::Burch(a) => {
            let i = s.ideal(&a.ideal)?;
            let mx = Ideal::maximal(&ring);
            let colon = i.quotient(&mx)?;
            doc.insert("ideal".into(), json!(i.to_string()));
            doc.insert("burch".into(), json!(burch_check(&i)?));
            doc.insert("colon".into(), json!(colon.simplified().to_string()));
            doc.insert("m_times_ideal".into(), json!(mx.product(&i)?.simplified().to_string()));
            doc.insert("m_times_colon".into(), json!(mx.product(&colon)?.simplified().to_string()));
        }
        Command::Cx(a) => {
            let m = s.module("--M", &a.m)?;
            doc.insert("M".into(), json!(m.to_string()));
            merge(&mut doc, complexity_estimate(&m, bound)?);
        }
        Command::Rigidity(a) => {
            let m = s.module("--M", &a.m)?;
            let partners = a
                .partners
                .iter()
                .map(|t| s.module("--N", &Some(t.clone())))
                .collect::<CResult<Vec<_>>>()?;
            let rep = rigidity_probe(&m, &partners, a.n, bound)?;
            doc.insert("M".into(), json!(m.to_string()));
            doc.insert(
                "partners".into(),
                json!(partners.iter().map(|p| p.to_string()).collect::<Vec<_>>()),
            );
            merge(&mut doc, &rep);
            if !rep.consistent() {
                let qp = s.quarantine_path();
                doc.insert("quarantine".into(), json!(qp.display().to_string()));
                let mut q = doc.clone();
                q.remove("quarantine");
                files.push((qp, pretty(&q)));
                exit = EXIT_VIOLATION;
            }
        }
        Command::Harness(_) => unreachable!(),
    }
    Ok((doc, exit, files))
}

/// Runs one invocation without touching the filesystem beyond reading inputs.
pub fn run(cli: &Cli) -> Outcome {
    let result = Session::open(cli).and_then(|s| dispatch(&s).map(|r| (r, s.config)));
    match result {
        Ok(((doc, exit, files), _)) => Outcome {
            exit,
            json: pretty(&doc),
            files,
            message: None,
        },
        Err(e) => {
            let config = SessionConfig::from_cli(cli);
            let doc = json!({
                "schema": SCHEMA,
                "command": config.command,
                "config": config,
                "error": e,
            });
            Outcome {
                exit: EXIT_INPUT,
                json: pretty(&doc),
                files: Vec::new(),
                message: Some(e.describe()),
            }
        }
    }
}

/// [`run`], then writes artifacts and the report; returns the exit status.
pub fn execute(cli: &Cli) -> u8 {
    let out = run(cli);
    let mut exit = out.exit;
    for (path, body) in &out.files {
        if let Err(e) = fs::write(path, body) {
            eprintln!("error: cannot write {}: {e}", path.display());
            exit = EXIT_INPUT;
        }
    }
    if let Some(m) = &out.message {
        eprintln!("error: {m}");
    }
    match &cli.out {
        Some(p) => {
            if let Err(e) = fs::write(p, &out.json) {
                eprintln!("error: cannot write {}: {e}", p.display());
                exit = EXIT_INPUT;
            }
        }
        None => print!("{}", out.json),
    }
    exit
}
