//! The `weightcx` command line.
//!
//! Exit codes: 0 success, 1 a mathematical negative (not acyclic, not
//! `n`-connected, a failing verification), 2 malformed input, 3 an internal
//! invariant violation.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::cell::{connectivity, factor_connected_map, skeletal_filtration};
use crate::chain::{homology, minimize, split_acyclic, ChainComplex, HomologyProfile};
use crate::document::{parse_ring, ComplexDocument, MapDocument};
use crate::error::Error;
use crate::fuzz::{run_suite, GenParams, SUITES};
use crate::kzero::{check_bondarko_k0, k0_via_filtration};
use crate::linalg::Ring;
use crate::weight::{in_heart, weight_bounds, weight_decompose, WeightBounds};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_MALFORMED: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "weightcx", version, about = "Weight structures on chain complexes of free modules")]
struct Cli {
    /// Complex document; standard input when absent.
    #[arg(short = 'i', long, global = true)]
    input: Option<PathBuf>,
    /// Base ring: Z or F<p>, e.g. F2. Overrides the document's ring.
    #[arg(long, global = true)]
    ring: Option<String>,
    /// Print JSON instead of key-value lines.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Homology groups in every degree of the complex.
    Homology,
    /// Weight bounds and heart membership.
    Weights,
    /// Weight decomposition A -> X -> B at n.
    Decompose {
        #[arg(allow_negative_numbers = true)]
        n: i64,
    },
    /// Skeletal cell filtration and its level quotients.
    Filtrate,
    /// Factors an n-connected map through cells of weight above n.
    Factorize {
        #[arg(allow_negative_numbers = true)]
        n: i64,
        /// Target complex document.
        #[arg(long)]
        target: PathBuf,
        /// Map document from the input complex to the target.
        #[arg(long)]
        map: PathBuf,
    },
    /// Class in K_0, computed three ways.
    K0,
    /// Minimal complex homotopy equivalent to the input.
    Minimize,
    /// Decomposition of an acyclic complex into elementary pieces.
    SplitAcyclic,
    /// Runs a property suite.
    Verify {
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: u64,
    },
    /// Lists the property suites.
    Suites,
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Invariant(_) | Error::InvalidHomotopy { .. } => EXIT_INTERNAL,
            Error::Precondition(_) | Error::NotAcyclic { .. } => EXIT_NEGATIVE,
            _ => EXIT_MALFORMED,
        };
        Failure { code, message: e.to_string() }
    }
}

fn malformed(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_MALFORMED, message: message.into() }
}

struct Output {
    json: bool,
    lines: Vec<(String, String)>,
    object: serde_json::Map<String, Value>,
}

impl Output {
    fn put(&mut self, key: &str, human: impl ToString, machine: Value) {
        self.lines.push((key.to_string(), human.to_string()));
        self.object.insert(key.to_string(), machine);
    }

    fn text(&self) -> String {
        if self.json {
            return format!("{}\n", Value::Object(self.object.clone()));
        }
        self.lines.iter().map(|(k, v)| if k.is_empty() { format!("{v}\n") } else { format!("{k}: {v}\n") }).collect()
    }
}

fn parse_ring_flag(s: &str) -> Result<Ring, Failure> {
    match s {
        "Z" => Ok(Ring::Integers),
        _ => {
            let p = s
                .strip_prefix('F')
                .and_then(|p| p.parse::<u64>().ok())
                .ok_or_else(|| malformed(format!("invalid ring {s:?}, expected Z or F<p>")))?;
            Ok(Ring::prime_field(p)?)
        }
    }
}

fn ring_fields(ring: Ring) -> (String, Option<u64>) {
    match ring {
        Ring::Integers => ("Z".into(), None),
        Ring::PrimeField(p) => ("Fp".into(), Some(p)),
    }
}

fn read_text(path: Option<&Path>, stdin: &mut dyn Read) -> Result<String, Failure> {
    let mut text = String::new();
    match path {
        Some(p) if p != Path::new("-") => {
            text = std::fs::read_to_string(p).map_err(|e| malformed(format!("cannot read {}: {e}", p.display())))?
        }
        _ => {
            stdin.read_to_string(&mut text).map_err(|e| malformed(format!("cannot read standard input: {e}")))?;
        }
    }
    Ok(text)
}

fn load_complex(text: &str, ring: Option<Ring>) -> Result<ChainComplex, Failure> {
    let mut doc: ComplexDocument =
        serde_json::from_str(text).map_err(|e| malformed(format!("bad complex document: {e}")))?;
    if let Some(r) = ring {
        parse_ring(&doc.ring, doc.p)?;
        (doc.ring, doc.p) = ring_fields(r);
    }
    Ok(doc.to_complex()?)
}

/// `H_i` for every degree of the complex, zeros included.
fn homology_line(x: &ChainComplex, h: &HomologyProfile) -> (String, Value) {
    if x.is_zero() {
        return ("0".into(), json!({}));
    }
    let mut parts = Vec::new();
    let mut obj = serde_json::Map::new();
    for i in x.degrees() {
        let g = h.get(i);
        parts.push(format!("H_{i}: {g}"));
        obj.insert(i.to_string(), json!(g.to_string()));
    }
    (parts.join("; "), Value::Object(obj))
}

fn bounds_value(b: WeightBounds) -> Value {
    match b {
        WeightBounds::Zero => json!("zero"),
        WeightBounds::Bounded { lo, hi } => json!([lo, hi]),
    }
}

fn doc_value(x: &ChainComplex) -> Value {
    serde_json::to_value(ComplexDocument::from_complex(x)).expect("serializable")
}

fn execute(cli: &Cli, stdin: &mut dyn Read, out: &mut Output) -> Result<i32, Failure> {
    let ring = cli.ring.as_deref().map(parse_ring_flag).transpose()?;
    let input = |stdin: &mut dyn Read| -> Result<ChainComplex, Failure> {
        load_complex(&read_text(cli.input.as_deref(), stdin)?, ring)
    };
    match &cli.command {
        Command::Homology => {
            let x = input(stdin)?;
            let (line, value) = homology_line(&x, &homology(&x));
            out.put("", line, json!(null));
            out.object.remove("");
            out.object.insert("homology".into(), value);
        }
        Command::Weights => {
            let x = input(stdin)?;
            let b = weight_bounds(&x);
            out.put("weights", b, bounds_value(b));
            out.put("heart", in_heart(&x), json!(in_heart(&x)));
            let pure = match b {
                WeightBounds::Bounded { lo, hi } if lo == hi => Some(lo),
                _ => None,
            };
            out.put("pure", pure.map_or("no".to_string(), |k| k.to_string()), json!(pure));
        }
        Command::Decompose { n } => {
            let x = input(stdin)?;
            let d = weight_decompose(&x, *n)?;
            d.verify()?;
            out.put("n", n, json!(n));
            let (ha, va) = homology_line(&d.a, &homology(&d.a));
            let (hb, vb) = homology_line(&d.b, &homology(&d.b));
            out.put("a_homology", ha, va);
            out.put("b_homology", hb, vb);
            out.put("a", doc_value(&d.a), doc_value(&d.a));
            out.put("b", doc_value(&d.b), doc_value(&d.b));
            out.put("verified", true, json!(true));
        }
        Command::Filtrate => {
            let x = input(stdin)?;
            let f = skeletal_filtration(&x);
            f.verify().map_err(Error::from)?;
            let mut levels = Vec::new();
            for l in f.levels() {
                let (h, _) = homology_line(&l.quotient, &homology(&l.quotient));
                out.lines.push((format!("level_{}", l.degree), format!("weights {} quotient {h}", l.bounds)));
                levels.push(json!({"degree": l.degree, "weights": bounds_value(l.bounds), "rank": l.quotient.total_rank()}));
            }
            out.object.insert("levels".into(), json!(levels));
            let k0 = k0_via_filtration(&f)?;
            out.put("k0", k0, json!(k0.0));
        }
        Command::Factorize { n, target, map } => {
            let x = input(stdin)?;
            let y = load_complex(&read_text(Some(target), stdin)?, ring)?;
            let mut doc: MapDocument =
                serde_json::from_str(&read_text(Some(map), stdin)?).map_err(|e| malformed(format!("bad map document: {e}")))?;
            if let Some(r) = ring {
                (doc.ring, doc.p) = ring_fields(r);
            }
            let f = doc.to_map(&x, &y)?;
            let c = connectivity(&f);
            out.put("connectivity", c, json!(c.to_string()));
            if !c.at_least(*n) {
                out.put("status", format!("not {n}-connected"), json!("not connected"));
                return Ok(EXIT_NEGATIVE);
            }
            let fac = factor_connected_map(&f, *n)?;
            let mut cells = Vec::new();
            for l in fac.cells.levels() {
                out.lines.push((format!("cells_{}", l.degree), l.quotient.total_rank().to_string()));
                cells.push(json!({"weight": l.degree, "rank": l.quotient.total_rank()}));
            }
            out.object.insert("cells".into(), json!(cells));
            fac.witness.verify()?;
            fac.equivalence.verify()?;
            out.put("final_map", "homotopy equivalence", json!("homotopy equivalence"));
            out.put("status", "factored", json!("factored"));
        }
        Command::K0 => {
            let x = input(stdin)?;
            let report = check_bondarko_k0(&x, 2, 0)?;
            out.put("k0", report.euler_char, json!(report.euler_char.0));
            out.put("euler_char_homology", report.euler_char_homology, json!(report.euler_char_homology.0));
            let via: Vec<i64> = report.via_filtrations.iter().map(|v| v.0).collect();
            out.put("via_filtrations", format!("{via:?}"), json!(via));
        }
        Command::Minimize => {
            let x = input(stdin)?;
            let m = minimize(&x)?;
            m.equivalence.verify()?;
            out.put("rank_before", x.total_rank(), json!(x.total_rank()));
            out.put("rank_after", m.complex.total_rank(), json!(m.complex.total_rank()));
            out.put("complex", doc_value(&m.complex), doc_value(&m.complex));
        }
        Command::SplitAcyclic => {
            let x = input(stdin)?;
            let s = match split_acyclic(&x) {
                Ok(s) => s,
                Err(Error::NotAcyclic { degree, group }) => {
                    out.put("status", format!("not acyclic: H_{degree} = {group}"), json!("not acyclic"));
                    out.object.insert("degree".into(), json!(degree));
                    return Ok(EXIT_NEGATIVE);
                }
                Err(e) => return Err(e.into()),
            };
            let mut pieces = Vec::new();
            for p in &s.pieces {
                out.lines.push(("piece".into(), format!("degrees {}..{} rank {}", p.top - 1, p.top, p.rank)));
                pieces.push(json!({"top": p.top, "rank": p.rank}));
            }
            out.object.insert("pieces".into(), json!(pieces));
            out.put("status", "split", json!("split"));
        }
        Command::Verify { suite, seed, trials } => {
            let params = GenParams { seed: *seed, ring: ring.unwrap_or(Ring::Integers), ..GenParams::default() };
            let report = run_suite(suite, &params, *trials)?;
            if cli.json {
                out.object = serde_json::to_value(&report)
                    .expect("serializable")
                    .as_object()
                    .cloned()
                    .unwrap_or_default();
            } else {
                out.lines.push((String::new(), report.render().trim_end().to_string()));
            }
            return Ok(if report.passed() { EXIT_OK } else { EXIT_NEGATIVE });
        }
        Command::Suites => {
            for s in SUITES {
                out.put(s.name, s.summary, json!(s.summary));
            }
        }
    }
    Ok(EXIT_OK)
}

/// Runs the command line on explicit streams and returns the exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_MALFORMED } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(stderr, "{e}") } else { write!(stdout, "{e}") };
            return code;
        }
    };
    let mut out = Output { json: cli.json, lines: Vec::new(), object: serde_json::Map::new() };
    let code = match execute(&cli, stdin, &mut out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            return f.code;
        }
    };
    let _ = stdout.write_all(out.text().as_bytes());
    code
}
