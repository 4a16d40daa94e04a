//! `sincov` — command-line driver for the matrix law toolkit.
//!
//! One subcommand per operation; every run prints a single JSON report.
//! Artifact-producing commands (tilde, extremal, represent, reconstruct,
//! invert, bridge, quotient, closure, generate) write their artifact to
//! `--out` when given and always embed it in the report; report-only
//! commands write the report itself to `--out`. Exit codes: 0 pass,
//! 1 failed outcome (law violated, oracle VIOLATED, no solution),
//! 2 usage or input error.

mod error;
mod format;
mod report;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use sincov_core::analysis::{audit, extremal_solution, tilde};
use sincov_core::bench::bench_closure;
use sincov_core::gen::{generate, generate_exact, GenKind, GenSpec};
use sincov_core::instance::{Error as CoreError, Instance, Mode, Tolerance};
use sincov_core::metric::{exp_bridge, ln_bridge, quotient};
use sincov_core::oracle::{oracle_check, Claim, Verdict};
use sincov_core::represent::{
    canonical_family, reconstruct, solve_equation, Direction, PotentialFamily, SolveOutcome,
};
use sincov_core::reverse::{invert, zero_structure};
use sincov_core::tropical::{closure, closure_with_kernel, Kernel};
use sincov_core::validate::{validate_capped, Law};

use error::CliError;
use format::{
    load_family, load_instance, render_family, render_instance, CliEntry, Loaded, LoadedFamily,
    OutFormat,
};
use report::{
    audit_json, envelope, instance_json, to_text, violations_json, zeros_json, VIOLATION_CAP,
};

#[derive(Parser)]
#[command(
    name = "sincov",
    version,
    about = "Matrix toolkit for product and triangle laws: validation, extremal \
             solutions, potential representations, zero structure, quotients, \
             tropical closures, generators, oracles and benchmarks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InArg {
    /// Input file (.json or .csv).
    #[arg(long = "in", value_name = "FILE")]
    input: String,
}

#[derive(Args)]
struct OutArg {
    /// Output file: the artifact for artifact commands, the report otherwise.
    #[arg(long, value_name = "FILE")]
    out: Option<String>,
}

#[derive(Args)]
struct TolArgs {
    /// Relative slack (default 1e-9).
    #[arg(long, value_name = "REL")]
    tol: Option<f64>,
    /// Absolute zero threshold (default 1e-12).
    #[arg(long = "zero-tol", value_name = "ABS")]
    zero_tol: Option<f64>,
    /// Exact rational arithmetic; slacks become zero and entries may be "p/q".
    #[arg(long)]
    exact: bool,
}

impl TolArgs {
    fn tolerance(&self) -> Result<Tolerance, CliError> {
        if self.exact {
            return Ok(Tolerance::exact());
        }
        let d = Tolerance::default();
        Tolerance::new(self.tol.unwrap_or(d.rel), self.zero_tol.unwrap_or(d.zero_tol))
            .map_err(CliError::from)
    }
}

#[derive(Args)]
struct ModeArg {
    /// Matrix mode, "multiplicative" or "additive": supplies the mode for
    /// CSV input (default multiplicative) and must match JSON input.
    #[arg(long, value_name = "MODE")]
    mode: Option<String>,
}

impl ModeArg {
    fn parse(&self) -> Result<Option<Mode>, CliError> {
        self.mode
            .as_deref()
            .map(|s| s.parse::<Mode>().map_err(CliError::from))
            .transpose()
    }
}

#[derive(Args)]
struct FormatArg {
    /// Artifact format: "json" (default) or "csv".
    #[arg(long, value_name = "FMT", default_value = "json")]
    format: String,
}

impl FormatArg {
    fn parse(&self) -> Result<OutFormat, CliError> {
        self.format.parse()
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check a law over all ordered triples of an instance.
    Validate {
        #[command(flatten)]
        input: InArg,
        /// Law: mult-eq | mult-ineq | reverse-ineq | triangle.
        #[arg(long, value_name = "LAW")]
        law: String,
        #[command(flatten)]
        mode: ModeArg,
        #[command(flatten)]
        tol: TolArgs,
        #[command(flatten)]
        out: OutArg,
    },
    /// Structure audit of a multiplicative upper-law candidate.
    Audit {
        #[command(flatten)]
        input: InArg,
        #[command(flatten)]
        mode: ModeArg,
        #[command(flatten)]
        tol: TolArgs,
        #[command(flatten)]
        out: OutArg,
    },
    /// Column-ratio tightening of a positive multiplicative instance.
    Tilde {
        #[command(flatten)]
        input: InArg,
        #[command(flatten)]
        mode: ModeArg,
        #[command(flatten)]
        tol: TolArgs,
        #[command(flatten)]
        out: OutArg,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Exact product-equation solution anchored at a label pair.
    Extremal {
        #[command(flatten)]
        input: InArg,
        /// Anchor row label.
        #[arg(long, value_name = "LABEL")]
        x0: String,
        /// Anchor column label.
        #[arg(long, value_name = "LABEL")]
        y0: String,
        #[command(flatten)]
        mode: ModeArg,
        #[command(flatten)]
        tol: TolArgs,
        #[command(flatten)]
        out: OutArg,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Canonical potential family (the instance's columns).
    Represent {
        #[command(flatten)]
        input: InArg,
        #[command(flatten)]
        mode: ModeArg,
        #[command(flatten)]
        tol: TolArgs,
        #[command(flatten)]
        out: OutArg,
    },
    /// Envelope instance rebuilt from a potential family file.
    Reconstruct {
        #[command(flatten)]
        input: InArg,
        /// Target law steering the envelope: mult-ineq or triangle (upper,
        /// default) or reverse-ineq (lower).
        #[arg(long, value_name = "LAW")]
        law: Option<String>,
        #[command(flatten)]
        tol: TolArgs,
        #[command(flatten)]
        out: OutArg,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Recover the generating potential of a product-equation solution.
    SolveEq {
        #[command(flatten)]
        input: InArg,
        #[command(flatten)]
        mode: ModeArg,
        #[command(flatten)]
        tol: TolArgs,
        #[command(flatten)]
        out: OutArg,
    },
    /// Entrywise reciprocal (swaps the two one-sided product laws).
    Invert {
        #[command(flatten)]
        input: InArg,
        #[command(flatten)]
        mode: ModeArg,
        #[command(flatten)]
        tol: TolArgs,
        #[command(flatten)]
        out: OutArg,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Zero-set structure of a non-negative multiplicative instance.
    Zeros {
        #[command(flatten)]
        input: InArg,
        #[command(flatten)]
        mode: ModeArg,
        #[command(flatten)]
        tol: TolArgs,
        #[command(flatten)]
        out: OutArg,
    },
    /// Exp/ln transport between additive and multiplicative instances;
    /// --mode names the target mode.
    Bridge {
        #[command(flatten)]
        input: InArg,
        /// Target mode: "multiplicative" (exp) or "additive" (ln).
        #[arg(long, value_name = "MODE")]
        mode: String,
        #[command(flatten)]
        tol: TolArgs,
        #[command(flatten)]
        out: OutArg,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Quotient of a triangle-law instance by mutual zero distance.
    Quotient {
        #[command(flatten)]
        input: InArg,
        #[command(flatten)]
        mode: ModeArg,
        #[command(flatten)]
        tol: TolArgs,
        #[command(flatten)]
        out: OutArg,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Transitive path closure (min-plus / min-times).
    Closure {
        #[command(flatten)]
        input: InArg,
        /// Kernel: plain | blocked | parallel (default: size-based choice).
        #[arg(long, value_name = "KERNEL")]
        kernel: Option<String>,
        #[command(flatten)]
        mode: ModeArg,
        #[command(flatten)]
        tol: TolArgs,
        #[command(flatten)]
        out: OutArg,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Deterministic seeded instance generation.
    Generate {
        /// Kind: ratio | bounded[:c=C] | component[:blocks=K] | via-closure
        /// | reverse-f3 | additive-potential.
        #[arg(long, value_name = "KIND")]
        kind: String,
        /// Instance size.
        #[arg(long, value_name = "N")]
        n: usize,
        /// Generator seed.
        #[arg(long, value_name = "SEED", default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        tol: TolArgs,
        #[command(flatten)]
        out: OutArg,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Independent brute-force check of a registered claim.
    Oracle {
        #[command(flatten)]
        input: InArg,
        /// Claim identifier (p0, b, t1-Z, sup-i..sup-iv, t2, SG, repG, repF,
        /// repH, Fsp, FZ-alt, remark1, cT2-a, cT2-merge-zero).
        #[arg(long, value_name = "CLAIM")]
        claim: String,
        #[command(flatten)]
        mode: ModeArg,
        #[command(flatten)]
        tol: TolArgs,
        #[command(flatten)]
        out: OutArg,
    },
    /// Time the plain vs blocked closure kernels and check bit identity.
    Bench {
        /// Instance size (at least 2).
        #[arg(long, value_name = "N")]
        n: usize,
        /// Repetitions per kernel.
        #[arg(long, value_name = "REPS", default_value_t = 3)]
        reps: usize,
        /// Generator seed for the timed input.
        #[arg(long, value_name = "SEED", default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutArg,
    },
}

/// Result triple of a command body: report result, pass flag, rendered
/// artifact (for artifact commands).
type Body = (Value, bool, Option<String>);

macro_rules! with_loaded {
    ($loaded:expr, |$inst:ident| $body:expr) => {
        match $loaded {
            Loaded::Float($inst) => $body,
            Loaded::Exact($inst) => $body,
        }
    };
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    match run(&cli.command) {
        Ok(pass) => {
            if pass {
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

/// Cap the rayon pool from `SINCOV_THREADS` (0 or unset = automatic).
fn configure_threads() -> Result<(), CliError> {
    match std::env::var("SINCOV_THREADS") {
        Err(std::env::VarError::NotPresent) => Ok(()),
        Err(e) => Err(CliError::new(format!("SINCOV_THREADS: {e}"))),
        Ok(s) => {
            let k: usize = s.trim().parse().map_err(|_| {
                CliError::new(format!(
                    "SINCOV_THREADS must be a non-negative integer, got {s:?}"
                ))
            })?;
            if k > 0 {
                rayon::ThreadPoolBuilder::new()
                    .num_threads(k)
                    .build_global()
                    .map_err(|e| CliError::new(e.to_string()))?;
            }
            Ok(())
        }
    }
}

/// Print/write the report (and artifact), returning the pass flag.
fn finish(
    command: &str,
    input: Option<&str>,
    tol: &Tolerance,
    body: Body,
    out: &OutArg,
) -> Result<bool, CliError> {
    let (result, pass, artifact) = body;
    let text = to_text(&envelope(command, input, tol, result));
    match (&artifact, &out.out) {
        (Some(a), Some(path)) => {
            std::fs::write(path, a)
                .map_err(|e| CliError::new(format!("cannot write {path}: {e}")))?;
            print!("{text}");
        }
        (None, Some(path)) => {
            std::fs::write(path, &text)
                .map_err(|e| CliError::new(format!("cannot write {path}: {e}")))?;
        }
        _ => print!("{text}"),
    }
    Ok(pass)
}

fn run(command: &Command) -> Result<bool, CliError> {
    match command {
        Command::Validate {
            input,
            law,
            mode,
            tol,
            out,
        } => {
            let tolerance = tol.tolerance()?;
            let law: Law = law.parse()?;
            let loaded = load_instance(&input.input, mode.parse()?, tolerance.exact)?;
            let body = with_loaded!(loaded, |inst| cmd_validate(&inst, law, &tolerance))?;
            finish("validate", Some(&input.input), &tolerance, body, out)
        }
        Command::Audit {
            input,
            mode,
            tol,
            out,
        } => {
            let tolerance = tol.tolerance()?;
            let loaded = load_instance(&input.input, mode.parse()?, tolerance.exact)?;
            let body = with_loaded!(loaded, |inst| cmd_audit(&inst, &tolerance))?;
            finish("audit", Some(&input.input), &tolerance, body, out)
        }
        Command::Tilde {
            input,
            mode,
            tol,
            out,
            format,
        } => {
            let tolerance = tol.tolerance()?;
            let format = format.parse()?;
            let loaded = load_instance(&input.input, mode.parse()?, tolerance.exact)?;
            let body = with_loaded!(loaded, |inst| cmd_tilde(&inst, format))?;
            finish("tilde", Some(&input.input), &tolerance, body, out)
        }
        Command::Extremal {
            input,
            x0,
            y0,
            mode,
            tol,
            out,
            format,
        } => {
            let tolerance = tol.tolerance()?;
            let format = format.parse()?;
            let loaded = load_instance(&input.input, mode.parse()?, tolerance.exact)?;
            let body =
                with_loaded!(loaded, |inst| cmd_extremal(&inst, x0, y0, &tolerance, format))?;
            finish("extremal", Some(&input.input), &tolerance, body, out)
        }
        Command::Represent {
            input,
            mode,
            tol,
            out,
        } => {
            let tolerance = tol.tolerance()?;
            let loaded = load_instance(&input.input, mode.parse()?, tolerance.exact)?;
            let body = with_loaded!(loaded, |inst| cmd_represent(&inst, &tolerance))?;
            finish("represent", Some(&input.input), &tolerance, body, out)
        }
        Command::Reconstruct {
            input,
            law,
            tol,
            out,
            format,
        } => {
            let tolerance = tol.tolerance()?;
            let format = format.parse()?;
            let direction = match law.as_deref() {
                None => Direction::Sup,
                Some(s) => match s.parse::<Law>()? {
                    Law::MultIneq | Law::Triangle => Direction::Sup,
                    Law::ReverseIneq => Direction::Inf,
                    Law::MultEq => {
                        return Err(CliError::new(
                            "reconstruct targets a one-sided law; pass mult-ineq, \
                             reverse-ineq or triangle",
                        ))
                    }
                },
            };
            let body = match load_family(&input.input, tolerance.exact)? {
                LoadedFamily::Float(f) => cmd_reconstruct(&f, direction, format)?,
                LoadedFamily::Exact(f) => cmd_reconstruct(&f, direction, format)?,
            };
            finish("reconstruct", Some(&input.input), &tolerance, body, out)
        }
        Command::SolveEq {
            input,
            mode,
            tol,
            out,
        } => {
            let tolerance = tol.tolerance()?;
            let loaded = load_instance(&input.input, mode.parse()?, tolerance.exact)?;
            let body = with_loaded!(loaded, |inst| cmd_solve_eq(&inst, &tolerance))?;
            finish("solve-eq", Some(&input.input), &tolerance, body, out)
        }
        Command::Invert {
            input,
            mode,
            tol,
            out,
            format,
        } => {
            let tolerance = tol.tolerance()?;
            let format = format.parse()?;
            let loaded = load_instance(&input.input, mode.parse()?, tolerance.exact)?;
            let body = with_loaded!(loaded, |inst| cmd_invert(&inst, &tolerance, format))?;
            finish("invert", Some(&input.input), &tolerance, body, out)
        }
        Command::Zeros {
            input,
            mode,
            tol,
            out,
        } => {
            let tolerance = tol.tolerance()?;
            let loaded = load_instance(&input.input, mode.parse()?, tolerance.exact)?;
            let body = with_loaded!(loaded, |inst| cmd_zeros(&inst, &tolerance))?;
            finish("zeros", Some(&input.input), &tolerance, body, out)
        }
        Command::Bridge {
            input,
            mode,
            tol,
            out,
            format,
        } => {
            let tolerance = tol.tolerance()?;
            if tolerance.exact {
                return Err(CliError::new("bridge operates on float instances"));
            }
            let format = format.parse()?;
            let target: Mode = mode.parse::<Mode>()?;
            let source = match target {
                Mode::Multiplicative => Mode::Additive,
                Mode::Additive => Mode::Multiplicative,
            };
            let Loaded::Float(inst) = load_instance(&input.input, Some(source), false)? else {
                unreachable!("float pipeline requested");
            };
            let bridged = match target {
                Mode::Multiplicative => exp_bridge(&inst)?,
                Mode::Additive => ln_bridge(&inst)?,
            };
            let result = json!({
                "target_mode": target.as_str(),
                "instance": instance_json(&bridged),
            });
            let artifact = render_instance(&bridged, format);
            finish(
                "bridge",
                Some(&input.input),
                &tolerance,
                (result, true, Some(artifact)),
                out,
            )
        }
        Command::Quotient {
            input,
            mode,
            tol,
            out,
            format,
        } => {
            let tolerance = tol.tolerance()?;
            let format = format.parse()?;
            let loaded = load_instance(&input.input, mode.parse()?, tolerance.exact)?;
            let body = with_loaded!(loaded, |inst| cmd_quotient(&inst, &tolerance, format))?;
            finish("quotient", Some(&input.input), &tolerance, body, out)
        }
        Command::Closure {
            input,
            kernel,
            mode,
            tol,
            out,
            format,
        } => {
            let tolerance = tol.tolerance()?;
            let format = format.parse()?;
            let kernel = kernel
                .as_deref()
                .map(|s| s.parse::<Kernel>().map_err(CliError::from))
                .transpose()?;
            let loaded = load_instance(&input.input, mode.parse()?, tolerance.exact)?;
            let body = with_loaded!(loaded, |inst| cmd_closure(&inst, kernel, format))?;
            finish("closure", Some(&input.input), &tolerance, body, out)
        }
        Command::Generate {
            kind,
            n,
            seed,
            tol,
            out,
            format,
        } => {
            let tolerance = tol.tolerance()?;
            let format = format.parse()?;
            let parsed = parse_kind(kind)?;
            let spec = GenSpec {
                kind: parsed,
                n: *n,
                seed: *seed,
            };
            let body = if tolerance.exact {
                let inst = generate_exact(&spec)?;
                generate_body(&spec, &inst, format)
            } else {
                let inst = generate(&spec)?;
                generate_body(&spec, &inst, format)
            };
            finish("generate", None, &tolerance, body, out)
        }
        Command::Oracle {
            input,
            claim,
            mode,
            tol,
            out,
        } => {
            let tolerance = tol.tolerance()?;
            let claim: Claim = claim.parse()?;
            let loaded = load_instance(&input.input, mode.parse()?, tolerance.exact)?;
            let body = with_loaded!(loaded, |inst| cmd_oracle(&inst, claim, &tolerance))?;
            finish("oracle", Some(&input.input), &tolerance, body, out)
        }
        Command::Bench { n, reps, seed, out } => {
            let tolerance = Tolerance::default();
            let rep = bench_closure(*n, *reps, *seed)?;
            let result = json!({
                "n": rep.n,
                "reps": rep.reps,
                "seed": rep.seed,
                "plain_median_s": rep.plain_median_s,
                "plain_min_s": rep.plain_min_s,
                "blocked_median_s": rep.blocked_median_s,
                "blocked_min_s": rep.blocked_min_s,
                "plain_gops": rep.plain_gops,
                "blocked_gops": rep.blocked_gops,
                "identical": rep.identical,
            });
            finish("bench", None, &tolerance, (result, rep.identical, None), out)
        }
    }
}

// ---- generic command bodies ------------------------------------------------

fn cmd_validate<T: CliEntry>(
    inst: &Instance<T>,
    law: Law,
    tol: &Tolerance,
) -> Result<Body, CliError> {
    let report = validate_capped(inst, law, tol, Some(VIOLATION_CAP))?;
    let pass = report.pass;
    Ok((violations_json(inst.labels(), &report), pass, None))
}

fn cmd_audit<T: CliEntry>(inst: &Instance<T>, tol: &Tolerance) -> Result<Body, CliError> {
    let report = audit(inst, tol)?;
    Ok((audit_json(&report), true, None))
}

fn cmd_tilde<T: CliEntry>(inst: &Instance<T>, format: OutFormat) -> Result<Body, CliError> {
    let tightened = tilde(inst)?;
    let result = json!({ "instance": instance_json(&tightened) });
    let artifact = render_instance(&tightened, format);
    Ok((result, true, Some(artifact)))
}

fn cmd_extremal<T: CliEntry>(
    inst: &Instance<T>,
    x0: &str,
    y0: &str,
    tol: &Tolerance,
    format: OutFormat,
) -> Result<Body, CliError> {
    let outcome = extremal_solution(inst, x0, y0, tol)?;
    let result = json!({
        "x0": x0,
        "y0": y0,
        "witness": outcome.witness,
        "instance": instance_json(&outcome.solution),
    });
    let artifact = render_instance(&outcome.solution, format);
    Ok((result, true, Some(artifact)))
}

fn cmd_represent<T: CliEntry>(inst: &Instance<T>, tol: &Tolerance) -> Result<Body, CliError> {
    let family = canonical_family(inst, tol)?;
    let result = json!({
        "mode": family.mode().as_str(),
        "members": family.members().len(),
        "family": format::family_to_json(&family),
    });
    let artifact = render_family(&family);
    Ok((result, true, Some(artifact)))
}

fn cmd_reconstruct<T: CliEntry>(
    family: &PotentialFamily<T>,
    direction: Direction,
    format: OutFormat,
) -> Result<Body, CliError> {
    let inst = reconstruct(family, direction)?;
    let result = json!({
        "direction": direction.as_str(),
        "instance": instance_json(&inst),
    });
    let artifact = render_instance(&inst, format);
    Ok((result, true, Some(artifact)))
}

fn cmd_solve_eq<T: CliEntry>(inst: &Instance<T>, tol: &Tolerance) -> Result<Body, CliError> {
    let outcome = solve_equation(inst, tol)?;
    let (result, pass) = match outcome {
        SolveOutcome::Zero => (json!({ "kind": "zero", "potential": Value::Null }), true),
        SolveOutcome::Ratio(p) => {
            let values: Vec<Value> = p.values().iter().map(CliEntry::json_value).collect();
            (
                json!({ "kind": "ratio", "potential": values, "labels": inst.labels() }),
                true,
            )
        }
        SolveOutcome::None => (json!({ "kind": "none", "potential": Value::Null }), false),
    };
    Ok((result, pass, None))
}

fn cmd_oracle<T: CliEntry>(
    inst: &Instance<T>,
    claim: Claim,
    tol: &Tolerance,
) -> Result<Body, CliError> {
    let verdict = oracle_check(inst, claim, tol);
    let witness = match &verdict {
        Verdict::Violated { witness } => Some(witness.clone()),
        _ => None,
    };
    let pass = !verdict.is_violated();
    Ok((
        json!({
            "claim": claim.as_str(),
            "verdict": verdict.as_str(),
            "witness": witness,
        }),
        pass,
        None,
    ))
}

fn cmd_invert<T: CliEntry>(
    inst: &Instance<T>,
    tol: &Tolerance,
    format: OutFormat,
) -> Result<Body, CliError> {
    let inverted = invert(inst, tol)?;
    let result = json!({ "instance": instance_json(&inverted) });
    let artifact = render_instance(&inverted, format);
    Ok((result, true, Some(artifact)))
}

fn cmd_zeros<T: CliEntry>(inst: &Instance<T>, tol: &Tolerance) -> Result<Body, CliError> {
    let report = zero_structure(inst, tol)?;
    let pass = report.violated == 0;
    Ok((zeros_json(inst.labels(), &report), pass, None))
}

fn cmd_quotient<T: CliEntry>(
    inst: &Instance<T>,
    tol: &Tolerance,
    format: OutFormat,
) -> Result<Body, CliError> {
    let map = quotient(inst, tol)?;
    let classes: Vec<Vec<&str>> = map
        .classes()
        .iter()
        .map(|class| {
            class
                .iter()
                .map(|&i| inst.labels()[i].as_str())
                .collect()
        })
        .collect();
    let result = json!({
        "class_count": classes.len(),
        "classes": classes,
        "reduced": instance_json(map.reduced()),
    });
    let artifact = render_instance(map.reduced(), format);
    Ok((result, true, Some(artifact)))
}

fn cmd_closure<T: CliEntry>(
    inst: &Instance<T>,
    kernel: Option<Kernel>,
    format: OutFormat,
) -> Result<Body, CliError> {
    let (closed, kernel_name) = match kernel {
        None => (closure(inst).map_err(|e| closure_err(inst, e))?, "auto"),
        Some(k) => (
            closure_with_kernel(inst, k).map_err(|e| closure_err(inst, e))?,
            k.as_str(),
        ),
    };
    let result = json!({
        "kernel": kernel_name,
        "instance": instance_json(&closed),
    });
    let artifact = render_instance(&closed, format);
    Ok((result, true, Some(artifact)))
}

/// Rewrite an unbounded-closure error with the cycle spelled in labels.
fn closure_err<T: CliEntry>(inst: &Instance<T>, e: CoreError) -> CliError {
    if let CoreError::UnboundedClosure { mode, cycle } = &e {
        let names: Vec<&str> = cycle.iter().map(|&i| inst.labels()[i].as_str()).collect();
        let what = match mode {
            Mode::Additive => "negative total weight",
            Mode::Multiplicative => "weight product below one",
        };
        CliError::new(format!(
            "closure unbounded: cycle [{}] has {what}",
            names.join(" -> ")
        ))
    } else {
        e.into()
    }
}

fn generate_body<T: CliEntry>(spec: &GenSpec, inst: &Instance<T>, format: OutFormat) -> Body {
    let mut result = json!({
        "kind": spec.kind.as_str(),
        "n": spec.n,
        "seed": spec.seed,
        "instance": instance_json(inst),
    });
    let map = result.as_object_mut().expect("object literal");
    match spec.kind {
        GenKind::Bounded { c } => {
            map.insert("c".into(), json!(c));
        }
        GenKind::Component { blocks } => {
            map.insert("blocks".into(), json!(blocks));
        }
        _ => {}
    }
    let artifact = render_instance(inst, format);
    (result, true, Some(artifact))
}

/// Parse `--kind` with an optional parameter suffix:
/// `bounded:c=2.5`, `component:blocks=3`.
fn parse_kind(s: &str) -> Result<GenKind, CliError> {
    let (name, params) = match s.split_once(':') {
        Some((a, b)) => (a, Some(b)),
        None => (s, None),
    };
    let no_params = |kind: GenKind| -> Result<GenKind, CliError> {
        if params.is_some() {
            return Err(CliError::new(format!(
                "generator kind {name:?} takes no parameters"
            )));
        }
        Ok(kind)
    };
    match name {
        "ratio" => no_params(GenKind::Ratio),
        "via-closure" => no_params(GenKind::ViaClosure),
        "reverse-f3" => no_params(GenKind::ReverseF3),
        "additive-potential" => no_params(GenKind::AdditivePotential),
        "bounded" => {
            let c = match params {
                None => 2.0,
                Some(p) => param_value(p, "c")?.parse::<f64>().map_err(|_| {
                    CliError::new(format!("cannot parse {p:?}: c must be a number"))
                })?,
            };
            Ok(GenKind::Bounded { c })
        }
        "component" => {
            let blocks = match params {
                None => 2,
                Some(p) => param_value(p, "blocks")?.parse::<usize>().map_err(|_| {
                    CliError::new(format!("cannot parse {p:?}: blocks must be an integer"))
                })?,
            };
            Ok(GenKind::Component { blocks })
        }
        other => Err(CliError::new(format!(
            "unknown generator kind {other:?} (expected ratio, bounded[:c=C], \
             component[:blocks=K], via-closure, reverse-f3, additive-potential)"
        ))),
    }
}

fn param_value<'a>(params: &'a str, key: &str) -> Result<&'a str, CliError> {
    match params.split_once('=') {
        Some((k, v)) if k == key => Ok(v),
        _ => Err(CliError::new(format!(
            "expected parameter {key}=<value>, got {params:?}"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kind_grammar_accepts_all_kinds() {
        assert_eq!(parse_kind("ratio").unwrap(), GenKind::Ratio);
        assert_eq!(parse_kind("via-closure").unwrap(), GenKind::ViaClosure);
        assert_eq!(parse_kind("reverse-f3").unwrap(), GenKind::ReverseF3);
        assert_eq!(
            parse_kind("additive-potential").unwrap(),
            GenKind::AdditivePotential
        );
        assert_eq!(parse_kind("bounded").unwrap(), GenKind::Bounded { c: 2.0 });
        assert_eq!(
            parse_kind("bounded:c=3.5").unwrap(),
            GenKind::Bounded { c: 3.5 }
        );
        assert_eq!(
            parse_kind("component").unwrap(),
            GenKind::Component { blocks: 2 }
        );
        assert_eq!(
            parse_kind("component:blocks=3").unwrap(),
            GenKind::Component { blocks: 3 }
        );
    }

    #[test]
    fn kind_grammar_rejects_malformed_input() {
        assert!(parse_kind("ratio:c=2").is_err());
        assert!(parse_kind("bounded:q=2").is_err());
        assert!(parse_kind("bounded:c=abc").is_err());
        assert!(parse_kind("component:blocks=-1").is_err());
        assert!(parse_kind("nonsense").is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
