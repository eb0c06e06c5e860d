//! Command-line front end: `troptoric <fan|h0|rr|sections|sweep> …`.
//!
//! Every command reads JSON (files, inline JSON, or builtin fan names) and
//! produces JSON. Exit codes: 0 success, 1 parse error, 2 precondition
//! violation, 3 Riemann-Roch inequality violated.

use std::fs;
use std::path::Path;

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::divisor::{LatticePoints, ToricDivisor};
use crate::error::Error;
use crate::fan::Fan;
use crate::intersect::{rr_check_with, IntersectionMatrix};
use crate::json::{divisor_from_json, fan_from_json, points_from_json, DivisorJson, Q};
use crate::sections::{
    global_sections, h0_a_with, h0_b_with, is_generic_configuration, passes_through,
    vandermonde_section, GENERIC_BRUTE_FORCE_LIMIT,
};
use crate::{divisor_of_section, is_balanced, DEFAULT_SEED};

/// Sweeps with at most this many divisors are exhaustive.
pub const SWEEP_EXHAUSTIVE_LIMIT: u128 = 100_000;
/// Number of seeded random divisors drawn by larger sweeps.
pub const SWEEP_SAMPLES: usize = 10_000;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 1;
pub const EXIT_PRECONDITION: i32 = 2;
pub const EXIT_VIOLATION: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "troptoric", version, about = "Exact computations on tropical toric surfaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Write the output to this file instead of stdout.
    #[arg(long, global = true)]
    pub json_out: Option<String>,

    /// Seed for every random choice.
    #[arg(long, global = true, env = "TROPTORIC_SEED")]
    pub seed: Option<u64>,

    /// Echo inputs and notes to stderr.
    #[arg(long, short, global = true)]
    pub verbose: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Builtin fans, blow-ups and validation.
    #[command(subcommand)]
    Fan(FanCommand),
    /// h⁰(X, D) as the number of lattice points of P(D).
    H0(FanDivisor),
    /// Check h⁰(D) + h⁰(K − D) ≥ χ + ½·D·(D − K).
    Rr(FanDivisor),
    /// Generators of Γ(X, O(D)) and, optionally, a Vandermonde section.
    Sections {
        #[command(flatten)]
        inputs: FanDivisor,
        /// JSON list of l − 1 points the section must pass through.
        #[arg(long)]
        vandermonde: Option<String>,
    },
    /// Run the Riemann-Roch check over every divisor with coefficients in a range.
    Sweep {
        fan: String,
        /// Inclusive coefficient range `a..b`.
        #[arg(long, allow_hyphen_values = true)]
        range: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum FanCommand {
    /// `p2`, `p1xp1` or `hirzebruch:<a>` (also `f<a>`).
    Builtin { name: String },
    /// Blow up the cone with the given index.
    Blowup { fan: String, cone: usize },
    /// Report smoothness and completeness.
    Validate { fan: String },
}

#[derive(Debug, Args)]
pub struct FanDivisor {
    /// Fan JSON: a file, inline JSON, or a builtin name.
    pub fan: String,
    /// Divisor JSON: a file or inline JSON.
    pub divisor: String,
}

/// What a command produced.
#[derive(Debug, Clone, PartialEq)]
pub struct CommandResult {
    pub command: String,
    /// The inputs as read, for `--verbose`.
    pub input: Value,
    /// JSON text, one document per line for `sweep`.
    pub output: String,
    pub status: i32,
    /// Notes for stderr.
    pub notes: Vec<String>,
}

#[derive(Debug)]
struct Failure {
    status: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse(_) | Error::InfiniteCoordinate => EXIT_PARSE,
            _ => EXIT_PRECONDITION,
        };
        Failure {
            status,
            message: e.to_string(),
        }
    }
}

fn parse_failure(message: String) -> Failure {
    Failure {
        status: EXIT_PARSE,
        message,
    }
}

/// Reads `arg` as inline JSON (leading `{` or `[`) or as a file path.
fn read_source(arg: &str) -> Result<String, Failure> {
    let trimmed = arg.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        return Ok(arg.to_string());
    }
    fs::read_to_string(arg).map_err(|e| parse_failure(format!("cannot read {arg}: {e}")))
}

/// Resolves a builtin fan name.
pub fn builtin_fan(name: &str) -> Option<Fan> {
    let lower = name.to_ascii_lowercase();
    match lower.as_str() {
        "p2" | "projective_plane" => return Some(Fan::projective_plane()),
        "p1xp1" | "p1p1" | "product_p1_p1" => return Some(Fan::product_p1_p1()),
        _ => {}
    }
    let a = lower
        .strip_prefix("hirzebruch:")
        .or_else(|| lower.strip_prefix("hirzebruch"))
        .or_else(|| lower.strip_prefix('f'))?;
    a.parse().ok().map(Fan::hirzebruch)
}

fn load_fan(arg: &str) -> Result<Fan, Failure> {
    if !Path::new(arg).exists() {
        if let Some(f) = builtin_fan(arg) {
            return Ok(f);
        }
    }
    Ok(fan_from_json(&read_source(arg)?)?)
}

fn load_divisor<'f>(arg: &str, fan: &'f Fan) -> Result<ToricDivisor<'f>, Failure> {
    Ok(divisor_from_json(&read_source(arg)?, fan)?)
}

/// Parses an inclusive range `a..b` (also `a..=b`).
pub fn parse_range(text: &str) -> Result<(i64, i64), Error> {
    let bad = || Error::Parse(format!("expected a range a..b, got {text:?}"));
    let (a, b) = text.split_once("..").ok_or_else(bad)?;
    let b = b.strip_prefix('=').unwrap_or(b);
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

fn to_line(v: &Value) -> String {
    serde_json::to_string(v).expect("JSON values serialize")
}

fn fan_command(cmd: &FanCommand, notes: &mut Vec<String>) -> Result<(Value, i32), Failure> {
    match cmd {
        FanCommand::Builtin { name } => {
            let fan = builtin_fan(name)
                .ok_or_else(|| parse_failure(format!("unknown builtin fan {name:?}")))?;
            Ok((serde_json::to_value(&fan).expect("fan serializes"), EXIT_OK))
        }
        FanCommand::Blowup { fan, cone } => {
            let fan = load_fan(fan)?;
            let blown = fan.blow_up_index(*cone)?;
            notes.push(format!("new ray {} has index {}", blown.rays()[fan.num_rays()], fan.num_rays()));
            Ok((serde_json::to_value(&blown).expect("fan serializes"), EXIT_OK))
        }
        FanCommand::Validate { fan } => {
            let text = if Path::new(fan).exists() {
                read_source(fan)?
            } else if let Some(f) = builtin_fan(fan) {
                crate::json::fan_to_json(&f)
            } else {
                read_source(fan)?
            };
            let raw: crate::json::FanJson =
                serde_json::from_str(&text).map_err(|e| parse_failure(e.to_string()))?;
            match Fan::try_from(raw) {
                Ok(f) => {
                    let bad = f.non_smooth_cones();
                    Ok((
                        json!({
                            "valid": true,
                            "smooth": bad.is_empty(),
                            "complete": f.is_complete(),
                            "non_smooth_cones": bad,
                            "num_rays": f.num_rays(),
                        }),
                        EXIT_OK,
                    ))
                }
                Err(e) => Ok((
                    json!({ "valid": false, "error": e.to_string() }),
                    EXIT_PRECONDITION,
                )),
            }
        }
    }
}

fn h0_command(inputs: &FanDivisor) -> Result<(Value, i32), Failure> {
    let fan = load_fan(&inputs.fan)?;
    let d = load_divisor(&inputs.divisor, &fan)?;
    let h0 = d.h0()?;
    let polytope = d.polytope();
    let points = match polytope.lattice_points() {
        LatticePoints::Finite(pts) => json!(pts),
        LatticePoints::Unbounded => Value::Null,
    };
    let vertices: Vec<[Q; 2]> = polytope.vertices().iter().map(|v| [Q(v[0]), Q(v[1])]).collect();
    Ok((
        json!({
            "h0": h0,
            "lattice_points": points,
            "polytope_vertices": vertices,
            "bounded": polytope.is_bounded(),
        }),
        EXIT_OK,
    ))
}

fn rr_command(inputs: &FanDivisor) -> Result<(Value, i32), Failure> {
    let fan = load_fan(&inputs.fan)?;
    let d = load_divisor(&inputs.divisor, &fan)?;
    let matrix = IntersectionMatrix::new(&fan)?;
    let report = rr_check_with(&matrix, &fan, &d)?;
    let status = if report.holds { EXIT_OK } else { EXIT_VIOLATION };
    Ok((serde_json::to_value(&report).expect("report serializes"), status))
}

fn sections_command(
    inputs: &FanDivisor,
    vandermonde: Option<&str>,
    seed: u64,
    notes: &mut Vec<String>,
) -> Result<(Value, i32), Failure> {
    let fan = load_fan(&inputs.fan)?;
    let d = load_divisor(&inputs.divisor, &fan)?;
    let module = global_sections(&fan, &d)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = json!({
        "generators": module.generators(),
        "h0_a": h0_a_with(&module, &mut rng)?,
        "h0_b": h0_b_with(&module, &mut rng)?,
    });
    if let Some(arg) = vandermonde {
        let points = points_from_json(&read_source(arg)?)?;
        let section = vandermonde_section(&module, &points)?;
        let coefficients: Vec<Value> = module
            .generators()
            .iter()
            .map(|m| serde_json::to_value(crate::json::TropRepr(section.coefficient(&m.to_vec()))))
            .collect::<Result<_, _>>()
            .expect("values serialize");
        let pass: Vec<bool> = points
            .iter()
            .map(|p| passes_through(&section, p))
            .collect::<Result<_, _>>()?;
        let generic = if module.len() <= GENERIC_BRUTE_FORCE_LIMIT
            && points.len() <= GENERIC_BRUTE_FORCE_LIMIT
        {
            json!(is_generic_configuration(&module, &points)?)
        } else {
            Value::Null
        };
        let (inner, ray_part) = divisor_of_section(&fan, &section)?;
        let balanced = is_balanced(&inner);
        notes.push(
            "balancing is tested as: weighted primitive edge directions sum to zero at each vertex"
                .to_string(),
        );
        let pts: Vec<Vec<Q>> = points.iter().map(|p| p.iter().copied().map(Q).collect()).collect();
        out["vandermonde"] = json!({
            "points": pts,
            "coefficients": coefficients,
            "pass_through": pass,
            "generic": generic,
            "divisor": {
                "inner": inner,
                "ray_part": DivisorJson::from(&ray_part),
                "balanced": balanced,
            },
        });
    }
    Ok((out, EXIT_OK))
}

fn sweep_command(fan_arg: &str, range: &str, seed: u64) -> Result<(String, i32), Failure> {
    let fan = load_fan(fan_arg)?;
    let (lo, hi) = parse_range(range)?;
    let matrix = IntersectionMatrix::new(&fan)?;
    let n = fan.num_rays();
    let width = if hi >= lo { (hi - lo + 1) as u128 } else { 0 };
    let total = width.checked_pow(n as u32).unwrap_or(u128::MAX);
    let exhaustive = total <= SWEEP_EXHAUSTIVE_LIMIT;

    let coeffs_at = |index: u128| -> Vec<i64> {
        let mut rest = index;
        let mut c = vec![0; n];
        for slot in c.iter_mut().rev() {
            *slot = lo + (rest % width) as i64;
            rest /= width;
        }
        c
    };
    let indices: Vec<u128> = if exhaustive {
        (0..total).collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..SWEEP_SAMPLES).map(|_| rng.gen_range(0..total)).collect()
    };

    let mut lines = Vec::with_capacity(indices.len() + 1);
    let mut violations = Vec::new();
    let mut min_defect: Option<crate::Rational> = None;
    for (k, &index) in indices.iter().enumerate() {
        let d = ToricDivisor::new(&fan, coeffs_at(index))?;
        let report = rr_check_with(&matrix, &fan, &d)?;
        if !report.holds {
            violations.push(k);
        }
        min_defect = Some(min_defect.map_or(report.defect, |m| m.min(report.defect)));
        let mut line = serde_json::to_value(&report).expect("report serializes");
        line["index"] = json!(k);
        line["coeffs"] = json!(d.coeffs());
        lines.push(to_line(&line));
    }
    let summary = json!({
        "summary": {
            "reports": indices.len(),
            "mode": if exhaustive { "exhaustive" } else { "sampled" },
            "range": [lo, hi],
            "seed": seed,
            "min_defect": min_defect.map(Q),
            "violations": violations,
        }
    });
    lines.push(to_line(&summary));
    let status = if violations.is_empty() { EXIT_OK } else { EXIT_VIOLATION };
    Ok((lines.join("\n"), status))
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Fan(_) => "fan",
        Command::H0(_) => "h0",
        Command::Rr(_) => "rr",
        Command::Sections { .. } => "sections",
        Command::Sweep { .. } => "sweep",
    }
}

fn echo(c: &Command) -> Value {
    match c {
        Command::Fan(FanCommand::Builtin { name }) => json!({ "builtin": name }),
        Command::Fan(FanCommand::Blowup { fan, cone }) => json!({ "fan": fan, "cone": cone }),
        Command::Fan(FanCommand::Validate { fan }) => json!({ "fan": fan }),
        Command::H0(i) | Command::Rr(i) => json!({ "fan": i.fan, "divisor": i.divisor }),
        Command::Sections { inputs, vandermonde } => {
            json!({ "fan": inputs.fan, "divisor": inputs.divisor, "vandermonde": vandermonde })
        }
        Command::Sweep { fan, range } => json!({ "fan": fan, "range": range }),
    }
}

/// Runs a parsed command line.
pub fn execute(cli: &Cli) -> CommandResult {
    let seed = cli.seed.unwrap_or(DEFAULT_SEED);
    let mut notes = Vec::new();
    let outcome: Result<(String, i32), Failure> = match &cli.command {
        Command::Fan(cmd) => fan_command(cmd, &mut notes).map(|(v, s)| (to_line(&v), s)),
        Command::H0(inputs) => h0_command(inputs).map(|(v, s)| (to_line(&v), s)),
        Command::Rr(inputs) => rr_command(inputs).map(|(v, s)| (to_line(&v), s)),
        Command::Sections {
            inputs,
            vandermonde,
        } => sections_command(inputs, vandermonde.as_deref(), seed, &mut notes)
            .map(|(v, s)| (to_line(&v), s)),
        Command::Sweep { fan, range } => sweep_command(fan, range, seed),
    };
    let (output, status) = match outcome {
        Ok(ok) => ok,
        Err(f) => {
            notes.push(format!("error: {}", f.message));
            (to_line(&json!({ "error": f.message })), f.status)
        }
    };
    CommandResult {
        command: command_name(&cli.command).to_string(),
        input: echo(&cli.command),
        output,
        status,
        notes,
    }
}

/// Parses `args` (including the program name) and runs the command.
/// Argument errors yield status 1 with clap's message as a note.
pub fn run<I, T>(args: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => CommandResult {
            command: String::new(),
            input: Value::Null,
            output: String::new(),
            status: if e.use_stderr() { EXIT_PARSE } else { EXIT_OK },
            notes: vec![e.to_string()],
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("-3..3").unwrap(), (-3, 3));
        assert_eq!(parse_range("0..=2").unwrap(), (0, 2));
        assert!(parse_range("3").is_err());
    }

    #[test]
    fn builtin_names() {
        assert_eq!(builtin_fan("p2"), Some(Fan::projective_plane()));
        assert_eq!(builtin_fan("P1xP1"), Some(Fan::product_p1_p1()));
        assert_eq!(builtin_fan("hirzebruch:3"), Some(Fan::hirzebruch(3)));
        assert_eq!(builtin_fan("f2"), Some(Fan::hirzebruch(2)));
        assert_eq!(builtin_fan("nope"), None);
    }
}
