//! Command-line driver. [`run`] parses arguments, performs one subcommand and
//! writes a JSON (or text) summary; the return value is the exit code:
//! 0 on success, 1 when a verification fails, 2 on bad input.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::exactmath::{QParam, Rational, Sign};
use crate::gen::{evaluation_module, fixture_file_name, trivial_module, GenError};
use crate::io::{
    emit_module, emit_pair, matrix_to_json, parse_module, parse_pair, q_to_string, PairData, PairKind,
};
use crate::modrep::{
    check_flag_intersection, four_flags, normalize_type, shape, verify_action_tables, verify_module, ModuleRep,
};
use crate::pairs::{
    check_assignment, check_induced_flags_opposite, extract_qinverting, extract_qtridiagonal,
    generalized_conditions_check, isomorphism_pattern, pairs_isomorphic, tdpairs_isomorphic, verify_qinverting,
    verify_qtridiagonal, z4_orbit,
};
use crate::report::Report;
use crate::split::reconstruct_module;
use crate::tetra::GenAssignment;

#[derive(Parser, Debug)]
#[command(name = "qtet", version, about = "Exact checks for q-tetrahedron algebra modules and q-inverting pairs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Deformation parameter; overrides the value stored in input files.
    #[arg(long, global = true)]
    q: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args, Debug)]
struct InOut {
    #[arg(long = "in")]
    input: PathBuf,
    /// Where to write the produced module or pair; printed inline otherwise.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Certify a module file.
    VerifyModule(InOut),
    /// Certify a q-inverting pair file.
    VerifyPair(InOut),
    /// Certify a q-tridiagonal pair file.
    VerifyTdpair(InOut),
    /// Extract the q-inverting pair (x02, x13) of a module.
    ExtractPair(InOut),
    /// Extract the q-tridiagonal pair (x01, x23) of a module.
    ExtractTdpair(InOut),
    /// Build the module of a q-inverting pair.
    Reconstruct(InOut),
    /// Extract then reconstruct, and compare with the input module.
    Roundtrip(InOut),
    /// The four pairs in the orbit of a q-inverting pair, with their isomorphism pattern.
    Z4Orbit(InOut),
    /// Test two pair files for isomorphism.
    Isomorphic {
        #[arg(long = "in", required = true)]
        inputs: Vec<PathBuf>,
    },
    /// Write the example module of diameter d (0 gives the trivial module).
    GenExample {
        #[arg(long)]
        d: usize,
        /// A file, or an existing directory to receive a fixture-named file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Shapes, flags, flag intersections and action tables of a module.
    CheckTables(InOut),
    /// Generalized generator and irreducibility conditions of a pair.
    CheckGen9(InOut),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::VerifyModule(_) => "verify-module",
            Command::VerifyPair(_) => "verify-pair",
            Command::VerifyTdpair(_) => "verify-tdpair",
            Command::ExtractPair(_) => "extract-pair",
            Command::ExtractTdpair(_) => "extract-tdpair",
            Command::Reconstruct(_) => "reconstruct",
            Command::Roundtrip(_) => "roundtrip",
            Command::Z4Orbit(_) => "z4-orbit",
            Command::Isomorphic { .. } => "isomorphic",
            Command::GenExample { .. } => "gen-example",
            Command::CheckTables(_) => "check-tables",
            Command::CheckGen9(_) => "check-gen9",
        }
    }
}

/// Result of a subcommand that ran to completion.
struct Outcome {
    passed: bool,
    fields: Map<String, Value>,
    report: Option<Report>,
}

impl Outcome {
    fn pass() -> Self {
        Outcome {
            passed: true,
            fields: Map::new(),
            report: None,
        }
    }

    fn failed(report: Report) -> Self {
        Outcome {
            passed: false,
            fields: Map::new(),
            report: Some(report),
        }
    }

    fn from_report(report: Report) -> Self {
        Outcome {
            passed: report.passed(),
            fields: Map::new(),
            report: Some(report),
        }
    }

    fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.fields.insert(key.to_string(), value.into());
        self
    }
}

type CliResult = Result<Outcome, String>;

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(out, "{}", e.render());
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let name = cli.command.name();
    let (code, doc) = match execute(&cli) {
        Ok(o) => {
            let mut doc = Map::new();
            doc.insert("command".into(), name.into());
            doc.insert("status".into(), if o.passed { "pass" } else { "fail" }.into());
            doc.extend(o.fields);
            if let Some(r) = &o.report {
                doc.insert("report".into(), r.to_json());
            }
            (if o.passed { 0 } else { 1 }, doc)
        }
        Err(message) => {
            let mut doc = Map::new();
            doc.insert("command".into(), name.into());
            doc.insert("status".into(), "error".into());
            doc.insert("message".into(), message.into());
            (2, doc)
        }
    };
    let _ = match cli.format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&Value::Object(doc)).expect("serializes")),
        Format::Text => write_text(out, &doc),
    };
    code
}

fn write_text(out: &mut dyn Write, doc: &Map<String, Value>) -> std::io::Result<()> {
    writeln!(out, "{}: {}", doc["command"].as_str().unwrap_or(""), doc["status"].as_str().unwrap_or(""))?;
    for (k, v) in doc {
        match k.as_str() {
            "command" | "status" => {}
            "report" => {
                let report: Report = serde_json::from_value(v.clone()).expect("report roundtrips");
                writeln!(out, "{report}")?;
            }
            _ => match v {
                Value::String(s) => writeln!(out, "{k}: {s}")?,
                other => writeln!(out, "{k}: {other}")?,
            },
        }
    }
    Ok(())
}

fn execute(cli: &Cli) -> CliResult {
    let q_override = cli
        .q
        .as_deref()
        .map(|s| QParam::parse(s).map_err(|e| format!("--q: {e}")))
        .transpose()?;
    let q_for = |file_q: QParam<Rational>| q_override.clone().unwrap_or(file_q);
    match &cli.command {
        Command::VerifyModule(io) => {
            let (q, gens) = load_module(&io.input, &q_for)?;
            Ok(match verify_module(gens, &q) {
                Ok(m) => module_summary(Outcome::pass(), &m),
                Err(r) => Outcome::failed(r),
            })
        }
        Command::VerifyPair(io) => {
            let p = load_pair(&io.input, PairKind::Inverting, &q_for)?;
            Ok(match verify_qinverting(&p.first, &p.second, &p.q) {
                Ok(pair) => Outcome::pass().with("dim", pair.dim()).with("d", pair.diameter()),
                Err(r) => Outcome::failed(r),
            })
        }
        Command::VerifyTdpair(io) => {
            let p = load_pair(&io.input, PairKind::Tridiagonal, &q_for)?;
            Ok(match verify_qtridiagonal(&p.first, &p.second, &p.q) {
                Ok(pair) => Outcome::pass().with("dim", pair.dim()).with("d", pair.diameter()),
                Err(r) => Outcome::failed(r),
            })
        }
        Command::ExtractPair(io) | Command::ExtractTdpair(io) => {
            let inverting = matches!(cli.command, Command::ExtractPair(_));
            let (q, gens) = load_module(&io.input, &q_for)?;
            let m = match verify_module(gens, &q) {
                Ok(m) => m,
                Err(r) => return Ok(Outcome::failed(r)),
            };
            let normalized = m.sign() == Sign::Minus;
            let m = normalize_type(&m);
            let data = if inverting {
                extract_qinverting(&m).map(|p| pair_data(PairKind::Inverting, &q, p.k(), p.kstar()))
            } else {
                extract_qtridiagonal(&m).map(|p| pair_data(PairKind::Tridiagonal, &q, p.a(), p.astar()))
            };
            match data {
                Ok(data) => {
                    let o = Outcome::pass().with("normalized", normalized).with("d", m.diameter());
                    deliver(o, "pair", &emit_pair(&data), io.out.as_deref())
                }
                Err(r) => Ok(Outcome::failed(r)),
            }
        }
        Command::Reconstruct(io) => {
            let p = load_pair(&io.input, PairKind::Inverting, &q_for)?;
            let pair = match verify_qinverting(&p.first, &p.second, &p.q) {
                Ok(pair) => pair,
                Err(r) => return Ok(Outcome::failed(r)),
            };
            match reconstruct_module(&pair) {
                Ok(m) => {
                    let o = module_summary(Outcome::pass(), &m);
                    deliver(o, "module", &emit_module(m.generators(), m.q()), io.out.as_deref())
                }
                Err(r) => Ok(Outcome::failed(r)),
            }
        }
        Command::Roundtrip(io) => {
            let (q, gens) = load_module(&io.input, &q_for)?;
            let m = match verify_module(gens, &q) {
                Ok(m) => m,
                Err(r) => return Ok(Outcome::failed(r)),
            };
            let m = normalize_type(&m);
            let rebuilt = match extract_qinverting(&m).and_then(|p| reconstruct_module(&p)) {
                Ok(r) => r,
                Err(r) => return Ok(Outcome::failed(r)),
            };
            Ok(Outcome::from_report(compare_modules(m.generators(), rebuilt.generators())).with("d", m.diameter()))
        }
        Command::Z4Orbit(io) => {
            let p = load_pair(&io.input, PairKind::Inverting, &q_for)?;
            let orbit = match verify_qinverting(&p.first, &p.second, &p.q).and_then(|pair| z4_orbit(&pair)) {
                Ok(o) => o,
                Err(r) => return Ok(Outcome::failed(r)),
            };
            let members: Vec<Value> = orbit
                .iter()
                .map(|m| json!({ "K": matrix_to_json(m.k()), "Kstar": matrix_to_json(m.kstar()) }))
                .collect();
            let pattern = isomorphism_pattern(&orbit);
            let mut report = Report::new();
            let fourth = verify_qinverting(orbit[3].kstar(), &orbit[3].k_inverse(), &p.q);
            report.check(
                fourth.is_ok_and(|back| back.k() == &p.first && back.kstar() == &p.second),
                "orbit-closes",
                "fourth application",
            );
            Ok(Outcome::from_report(report)
                .with("members", members)
                .with("isomorphism_pattern", json!(pattern)))
        }
        Command::Isomorphic { inputs } => {
            if inputs.len() != 2 {
                return Err(format!("isomorphic takes exactly two --in files, got {}", inputs.len()));
            }
            let a = load_any_pair(&inputs[0], &q_for)?;
            let b = load_any_pair(&inputs[1], &q_for)?;
            if a.kind != b.kind {
                return Err("the two files hold pairs of different kinds".into());
            }
            let witness = match a.kind {
                PairKind::Inverting => {
                    let (pa, pb) = match (
                        verify_qinverting(&a.first, &a.second, &a.q),
                        verify_qinverting(&b.first, &b.second, &b.q),
                    ) {
                        (Ok(pa), Ok(pb)) => (pa, pb),
                        (Err(r), _) | (_, Err(r)) => return Ok(Outcome::failed(r)),
                    };
                    pairs_isomorphic(&pa, &pb)
                }
                PairKind::Tridiagonal => {
                    let (pa, pb) = match (
                        verify_qtridiagonal(&a.first, &a.second, &a.q),
                        verify_qtridiagonal(&b.first, &b.second, &b.q),
                    ) {
                        (Ok(pa), Ok(pb)) => (pa, pb),
                        (Err(r), _) | (_, Err(r)) => return Ok(Outcome::failed(r)),
                    };
                    tdpairs_isomorphic(&pa, &pb)
                }
            };
            let mut report = Report::new();
            report.check(witness.is_some(), "isomorphic", "first to second");
            let mut o = Outcome::from_report(report).with("isomorphic", witness.is_some());
            if let Some(w) = witness {
                o = o.with("witness", json!(matrix_to_json(&w)));
            }
            Ok(o)
        }
        Command::GenExample { d, out } => {
            let q = q_override.clone().unwrap_or_default();
            let m = if *d == 0 {
                trivial_module(Sign::Plus, &q)
            } else {
                match evaluation_module(*d, &q) {
                    Ok(m) => m,
                    Err(e @ GenError::DiameterOutOfRange(_)) => return Err(e.to_string()),
                    Err(e) => {
                        let mut r = Report::new();
                        r.fail("generate", format!("d={d}"), e.to_string());
                        return Ok(Outcome::failed(r));
                    }
                }
            };
            let target = out.as_ref().map(|p| {
                if p.is_dir() {
                    p.join(fixture_file_name(*d, &q_to_string(&q)))
                } else {
                    p.clone()
                }
            });
            let o = module_summary(Outcome::pass(), &m);
            deliver(o, "module", &emit_module(m.generators(), &q), target.as_deref())
        }
        Command::CheckTables(io) => {
            let (q, gens) = load_module(&io.input, &q_for)?;
            let m = match verify_module(gens, &q) {
                Ok(m) => normalize_type(&m),
                Err(r) => return Ok(Outcome::failed(r)),
            };
            let mut report = Report::new();
            let sh = match shape(&m) {
                Ok(s) => Some(s),
                Err(r) => {
                    report.merge(r);
                    None
                }
            };
            if let Err(r) = four_flags(&m) {
                report.merge(r);
            }
            report.merge(check_flag_intersection(&m));
            report.merge(verify_action_tables(&m));
            let mut o = Outcome::from_report(report).with("d", m.diameter());
            if let Some(s) = sh {
                o = o.with("shape", json!(s));
            }
            Ok(o)
        }
        Command::CheckGen9(io) => {
            let p = load_any_pair(&io.input, &q_for)?;
            let (v, vstar, ops) = match p.kind {
                PairKind::Inverting => match verify_qinverting(&p.first, &p.second, &p.q) {
                    Ok(pair) => (
                        pair.v().clone(),
                        pair.vstar().clone(),
                        [pair.k_inverse(), pair.k().clone(), pair.kstar().clone(), pair.kstar_inverse()],
                    ),
                    Err(r) => return Ok(Outcome::failed(r)),
                },
                PairKind::Tridiagonal => match verify_qtridiagonal(&p.first, &p.second, &p.q) {
                    Ok(pair) => (
                        pair.v().clone(),
                        pair.vstar().clone(),
                        [pair.a().clone(), pair.a().clone(), pair.astar().clone(), pair.astar().clone()],
                    ),
                    Err(r) => return Ok(Outcome::failed(r)),
                },
            };
            let conditions = generalized_conditions_check(&v, &vstar).map_err(|e| e.to_string())?;
            let mut report = conditions.to_report();
            report.merge(check_assignment(&v, &vstar, &ops[0], &ops[1], &ops[2], &ops[3]));
            report.merge(check_induced_flags_opposite(&v, &vstar));
            Ok(Outcome::from_report(report))
        }
    }
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_module(
    path: &Path,
    q_for: &dyn Fn(QParam<Rational>) -> QParam<Rational>,
) -> Result<(QParam<Rational>, GenAssignment<Rational>), String> {
    let (q, gens) = parse_module(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok((q_for(q), gens))
}

fn load_any_pair(path: &Path, q_for: &dyn Fn(QParam<Rational>) -> QParam<Rational>) -> Result<PairData, String> {
    let mut p = parse_pair(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))?;
    p.q = q_for(p.q);
    Ok(p)
}

fn load_pair(
    path: &Path,
    kind: PairKind,
    q_for: &dyn Fn(QParam<Rational>) -> QParam<Rational>,
) -> Result<PairData, String> {
    let p = load_any_pair(path, q_for)?;
    if p.kind != kind {
        let want = match kind {
            PairKind::Inverting => "K and Kstar",
            PairKind::Tridiagonal => "A and Astar",
        };
        return Err(format!("{}: expected a pair with {want}", path.display()));
    }
    Ok(p)
}

fn pair_data(
    kind: PairKind,
    q: &QParam<Rational>,
    first: &crate::linalg::Matrix<Rational>,
    second: &crate::linalg::Matrix<Rational>,
) -> PairData {
    PairData {
        kind,
        q: q.clone(),
        first: first.clone(),
        second: second.clone(),
    }
}

fn module_summary(o: Outcome, m: &ModuleRep<Rational>) -> Outcome {
    o.with("dim", m.dim()).with("d", m.diameter()).with("sign", m.sign().as_i64())
}

/// Writes `text` to `out` if given, otherwise embeds it under `key`.
fn deliver(o: Outcome, key: &str, text: &str, out: Option<&Path>) -> CliResult {
    match out {
        Some(path) => {
            fs::write(path, format!("{text}\n")).map_err(|e| format!("{}: {e}", path.display()))?;
            Ok(o.with("written", path.display().to_string()))
        }
        None => Ok(o.with(key, serde_json::from_str::<Value>(text).expect("emitted JSON parses"))),
    }
}

fn compare_modules(original: &GenAssignment<Rational>, rebuilt: &GenAssignment<Rational>) -> Report {
    let mut report = Report::new();
    for (g, m) in original.iter() {
        report.check_zero(&(rebuilt.get(g) - m), "roundtrip-equal", g.name());
    }
    report
}

