//! Command-line front end: fundamental solutions, counts by three methods,
//! enumeration, and the analytic g evaluations, with optional JSON output.
//!
//! Exit codes: 0 success, 2 invalid input, 3 formula requested below the
//! shifted threshold K, 4 internal disagreement or precision failure.

use clap::{Parser, Subcommand, ValueEnum};
use pell::num_bigint::BigInt;
use pell::num_traits::ToPrimitive;
use pell::{
    brute_force, brute_force_parallel, count_region, count_shifted, enumerate_region,
    enumerate_shifted, rational::parse_decimal, AnalyticContext, CountMethod, CountReport,
    OracleResult, PellError, PellInstance, RegionQuery, ShiftedInstance, Solution,
    DEFAULT_SCAN_CAP,
};
use serde_json::{json, Value};
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "pell",
    version,
    about = "Counts and enumerates Pell-equation solutions in L1 balls"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the fundamental solution (alpha, beta) for D
    Fundamental {
        d: String,
        /// Emit a JSON record instead of text
        #[arg(long)]
        json: bool,
    },
    /// Count solutions with |x| + |y| <= lambda
    Count {
        d: String,
        /// Region radius; parsed exactly, decimals or p/q fractions
        lambda: String,
        /// Count the shifted equation (x-a)^2 - D(y-b)^2 = 1
        #[arg(long, num_args = 2, value_names = ["A", "B"], allow_negative_numbers = true)]
        shift: Option<Vec<String>>,
        #[arg(long, value_enum, default_value_t = MethodArg::Exact)]
        method: MethodArg,
        /// Run every applicable method and verify they agree
        #[arg(long)]
        check: bool,
        /// Emit a JSON record instead of text
        #[arg(long)]
        json: bool,
        /// Stripe the brute-force scan across CPU cores
        #[arg(long)]
        parallel: bool,
    },
    /// List solutions with |x| + |y| <= lambda in deterministic order
    Enumerate {
        d: String,
        /// Region radius; parsed exactly, decimals or p/q fractions
        lambda: String,
        /// Enumerate the shifted equation (x-a)^2 - D(y-b)^2 = 1
        #[arg(long, num_args = 2, value_names = ["A", "B"], allow_negative_numbers = true)]
        shift: Option<Vec<String>>,
        /// Emit a JSON record instead of text
        #[arg(long)]
        json: bool,
        /// Emit CSV with an x,y header
        #[arg(long, conflicts_with = "json")]
        csv: bool,
    },
    /// Evaluate g(x), the inverse of the solution growth function
    G {
        d: String,
        x: String,
        #[arg(long, value_enum, default_value_t = FormArg::Arccosh)]
        form: FormArg,
        /// Emit a JSON record instead of text
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum MethodArg {
    /// Walk the integer recurrence
    Exact,
    /// Closed-form floor with exact correction
    Formula,
    /// Exhaustive lattice scan
    Brute,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum FormArg {
    /// Inverse cosh form
    Arccosh,
    /// Logarithmic form
    Log,
    /// Integer floor with correction telemetry
    Floor,
}

struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

impl From<PellError> for CliError {
    fn from(e: PellError) -> Self {
        let code = match e {
            PellError::BelowThreshold { .. } => 3,
            PellError::PrecisionFailure { .. } => 4,
            _ => 2,
        };
        Self::new(code, e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Fundamental { d, json } => cmd_fundamental(&d, json),
        Command::Count {
            d,
            lambda,
            shift,
            method,
            check,
            json,
            parallel,
        } => cmd_count(&d, &lambda, shift.as_deref(), method, check, json, parallel),
        Command::Enumerate {
            d,
            lambda,
            shift,
            json,
            csv,
        } => cmd_enumerate(&d, &lambda, shift.as_deref(), json, csv),
        Command::G { d, x, form, json } => cmd_g(&d, &x, form, json),
    }
}

fn parse_instance(d: &str) -> Result<PellInstance, CliError> {
    let v: BigInt = d
        .parse()
        .map_err(|_| CliError::new(2, format!("invalid D {d:?}: expected an integer")))?;
    Ok(PellInstance::new(v)?)
}

fn parse_shift(shift: Option<&[String]>) -> Result<Option<(BigInt, BigInt)>, CliError> {
    let Some(parts) = shift else {
        return Ok(None);
    };
    let parse = |s: &String| -> Result<BigInt, CliError> {
        s.parse()
            .map_err(|_| CliError::new(2, format!("invalid shift component {s:?}")))
    };
    Ok(Some((parse(&parts[0])?, parse(&parts[1])?)))
}

fn scan_cap() -> Result<u64, CliError> {
    match std::env::var("PELL_SCAN_CAP") {
        Ok(v) => v
            .parse()
            .map_err(|_| CliError::new(2, format!("invalid PELL_SCAN_CAP {v:?}"))),
        Err(_) => Ok(DEFAULT_SCAN_CAP),
    }
}

fn record(command: &str, inputs: Value, result: Value, started: Instant) -> Value {
    json!({
        "schema_version": "1",
        "command": command,
        "inputs": inputs,
        "result": result,
        "timing_ms": started.elapsed().as_secs_f64() * 1000.0,
    })
}

fn emit(json_out: bool, rec: Value, human: &str) {
    if json_out {
        println!("{}", serde_json::to_string_pretty(&rec).expect("serializable record"));
    } else if !human.is_empty() {
        println!("{human}");
    }
}

fn cmd_fundamental(d: &str, json_out: bool) -> Result<(), CliError> {
    let started = Instant::now();
    let inst = parse_instance(d)?;
    let f = inst.fundamental();
    let rec = record(
        "fundamental",
        json!({"d": d}),
        json!({
            "alpha": f.alpha().to_string(),
            "beta": f.beta().to_string(),
            "unit": f.unit_value(),
        }),
        started,
    );
    let human = format!(
        "alpha = {}\nbeta = {}\nunit = {}",
        f.alpha(),
        f.beta(),
        f.unit_value()
    );
    emit(json_out, rec, &human);
    Ok(())
}

fn method_of(arg: MethodArg) -> CountMethod {
    match arg {
        MethodArg::Exact => CountMethod::ExactRecurrence,
        MethodArg::Formula => CountMethod::ClosedForm,
        MethodArg::Brute => CountMethod::BruteForce,
    }
}

fn report_json(r: &CountReport) -> Value {
    json!({
        "method": r.method.name(),
        "count": r.count,
        "max_index": r.max_index,
        "corrections_applied": r.corrections_applied,
        "branch_indices": r.branch_indices,
        "branch_corrections": r.branch_corrections,
    })
}

fn scan_json(r: &OracleResult) -> Value {
    json!({
        "method": "brute_force",
        "count": r.count,
        "points_scanned": r.points_scanned,
    })
}

fn threads() -> usize {
    std::thread::available_parallelism().map_or(4, |n| n.get())
}

fn run_scan(
    inst: &PellInstance,
    shift: Option<&(BigInt, BigInt)>,
    q: &RegionQuery,
    cap: u64,
    parallel: bool,
) -> Result<OracleResult, CliError> {
    let zero = BigInt::from(0);
    let (a, b) = shift.map_or((&zero, &zero), |(a, b)| (a, b));
    let res = if parallel {
        brute_force_parallel(inst.d(), a, b, q.lambda(), cap, threads())?
    } else {
        brute_force(inst.d(), a, b, q.lambda(), cap)?
    };
    Ok(res)
}

fn region_inputs(
    d: &str,
    lambda: &str,
    shift: Option<&(BigInt, BigInt)>,
    method: Option<&str>,
) -> Value {
    let mut inputs = json!({"d": d, "lambda": lambda});
    if let Some(m) = method {
        inputs["method"] = Value::String(m.to_string());
    }
    if let Some((a, b)) = shift {
        inputs["a"] = Value::String(a.to_string());
        inputs["b"] = Value::String(b.to_string());
    }
    inputs
}

fn cmd_count(
    d: &str,
    lambda: &str,
    shift: Option<&[String]>,
    method: MethodArg,
    check: bool,
    json_out: bool,
    parallel: bool,
) -> Result<(), CliError> {
    let started = Instant::now();
    let inst = parse_instance(d)?;
    let q = RegionQuery::parse(lambda)?;
    let cap = scan_cap()?;
    let shift = parse_shift(shift)?;
    let shifted = shift
        .as_ref()
        .map(|(a, b)| ShiftedInstance::new(inst.clone(), a.clone(), b.clone()));

    if check {
        return cmd_count_check(d, lambda, &inst, shifted.as_ref(), &q, cap, json_out, started);
    }

    let (result, count) = match method {
        MethodArg::Brute => {
            let res = run_scan(&inst, shift.as_ref(), &q, cap, parallel)?;
            (scan_json(&res), res.count)
        }
        _ => {
            let m = method_of(method);
            let r = match &shifted {
                Some(s) => count_shifted(s, &q, m)?,
                None => count_region(&inst, &q, m)?,
            };
            (report_json(&r), r.count)
        }
    };
    let method_name = match method {
        MethodArg::Exact => "exact_recurrence",
        MethodArg::Formula => "closed_form",
        MethodArg::Brute => "brute_force",
    };
    let rec = record(
        "count",
        region_inputs(d, lambda, shift.as_ref(), Some(method_name)),
        result,
        started,
    );
    emit(json_out, rec, &format!("count = {count}"));
    Ok(())
}

/// Runs every method that applies to the inputs and insists they agree.
/// Formula methods drop out below the shifted threshold; the scan drops
/// out beyond the cap; enumeration always participates.
#[allow(clippy::too_many_arguments)]
fn cmd_count_check(
    d: &str,
    lambda: &str,
    inst: &PellInstance,
    shifted: Option<&ShiftedInstance>,
    q: &RegionQuery,
    cap: u64,
    json_out: bool,
    started: Instant,
) -> Result<(), CliError> {
    let mut counts: Vec<(String, u64)> = Vec::new();
    let formula_applies = match shifted {
        Some(s) => s.threshold_k().lambda_at_least(q.lambda()),
        None => true,
    };
    if formula_applies {
        for m in [CountMethod::ExactRecurrence, CountMethod::ClosedForm] {
            let r = match shifted {
                Some(s) => count_shifted(s, q, m)?,
                None => count_region(inst, q, m)?,
            };
            counts.push((r.method.name().to_string(), r.count));
        }
    }
    let listed = match shifted {
        Some(s) => enumerate_shifted(s, q).len() as u64,
        None => enumerate_region(inst, q).len() as u64,
    };
    counts.push(("enumeration".to_string(), listed));
    let in_cap = BigInt::from(q.floor()).to_u64().is_some_and(|fl| fl <= cap);
    if in_cap {
        let res = run_scan(inst, shifted.map(|s| (s.a().clone(), s.b().clone())).as_ref(), q, cap, false)?;
        counts.push(("brute_force".to_string(), res.count));
    }
    let reference = counts[0].1;
    if counts.iter().any(|(_, c)| *c != reference) {
        let detail = counts
            .iter()
            .map(|(m, c)| format!("{m}={c}"))
            .collect::<Vec<_>>()
            .join(" ");
        return Err(CliError::new(4, format!("methods disagree: {detail}")));
    }
    let shift_pair = shifted.map(|s| (s.a().clone(), s.b().clone()));
    let rec = record(
        "count",
        region_inputs(d, lambda, shift_pair.as_ref(), Some("check")),
        json!({
            "count": reference,
            "methods": counts.iter().map(|(m, _)| m.clone()).collect::<Vec<_>>(),
            "agree": true,
        }),
        started,
    );
    let human = format!(
        "count = {reference}\nmethods = {}\nagree = true",
        counts
            .iter()
            .map(|(m, _)| m.as_str())
            .collect::<Vec<_>>()
            .join(", ")
    );
    emit(json_out, rec, &human);
    Ok(())
}

fn solutions_json(solutions: &[Solution]) -> Value {
    Value::Array(
        solutions
            .iter()
            .map(|s| json!({"x": s.x.to_string(), "y": s.y.to_string()}))
            .collect(),
    )
}

fn cmd_enumerate(
    d: &str,
    lambda: &str,
    shift: Option<&[String]>,
    json_out: bool,
    csv: bool,
) -> Result<(), CliError> {
    let started = Instant::now();
    let inst = parse_instance(d)?;
    let q = RegionQuery::parse(lambda)?;
    let shift = parse_shift(shift)?;
    let solutions = match &shift {
        Some((a, b)) => {
            let s = ShiftedInstance::new(inst, a.clone(), b.clone());
            enumerate_shifted(&s, &q)
        }
        None => enumerate_region(&inst, &q),
    };
    if json_out {
        let rec = record(
            "enumerate",
            region_inputs(d, lambda, shift.as_ref(), None),
            json!({
                "count": solutions.len() as u64,
                "solutions": solutions_json(&solutions),
            }),
            started,
        );
        println!("{}", serde_json::to_string_pretty(&rec).expect("serializable record"));
        return Ok(());
    }
    if csv {
        println!("x,y");
        for s in &solutions {
            println!("{},{}", s.x, s.y);
        }
        return Ok(());
    }
    for s in &solutions {
        println!("{} {}", s.x, s.y);
    }
    Ok(())
}

fn cmd_g(d: &str, x: &str, form: FormArg, json_out: bool) -> Result<(), CliError> {
    let started = Instant::now();
    let inst = parse_instance(d)?;
    let xr = parse_decimal(x).map_err(|e| CliError::new(2, format!("invalid x {x:?}: {e}")))?;
    let ctx = AnalyticContext::new(inst.fundamental());
    let inputs = |form: &str| json!({"d": d, "x": x, "form": form});
    match form {
        FormArg::Arccosh | FormArg::Log => {
            let xf = xr.to_f64().ok_or_else(|| {
                CliError::new(2, format!("x {x:?} does not fit a double"))
            })?;
            let (name, g) = match form {
                FormArg::Arccosh => ("arccosh", ctx.g_arccosh(xf)?),
                FormArg::Log => ("log", ctx.g_log(xf)?),
                FormArg::Floor => unreachable!(),
            };
            let rec = record("g", inputs(name), json!({"form": name, "g": g}), started);
            emit(json_out, rec, &format!("g = {g}"));
        }
        FormArg::Floor => {
            let fg = ctx.floor_g_rational(&xr)?;
            let rec = record(
                "g",
                inputs("floor"),
                json!({
                    "form": "floor",
                    "n": fg.n,
                    "candidate": fg.candidate,
                    "correction": fg.correction,
                    "corrected": fg.corrected(),
                }),
                started,
            );
            emit(
                json_out,
                rec,
                &format!("floor_g = {}\ncorrected = {}", fg.n, fg.corrected()),
            );
        }
    }
    Ok(())
}
