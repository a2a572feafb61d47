mod request;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use flatcrys::oracle::{
    check_dimension_instance, dimension_instances, uniqueness_cases, verify_normal_form_uniqueness, Budget, Status,
    SweepSpec,
};
use flatcrys::wire::{poly_from_wire, poly_to_wire, CharWire, ExtWire, JDeltaWire, PolyWire};
use flatcrys::{
    big_payload, irreducible_in_wexplicit, is_exceptional, lcrys_dimension, lflat_dimension, make_extension, projective_representative,
    reducible_inertial_params, to_extremal_normal_form, GlobalContext, InertialChar2, ReducibleShape, SerreWeight,
};

use request::{parse_char, parse_contexts, ContextList, parse_lambda, require, usage, Command, Request, UsageError};

/// Serre weights, Breuil-module normal forms and flat/crystalline extension dimensions.
#[derive(Parser, Debug)]
#[command(name = "flatcrys", version)]
struct Cli {
    #[command(subcommand)]
    command: Option<Sub>,
    /// Read the request from a JSON file; flags given on the command line take precedence.
    #[arg(long = "in", global = true, value_name = "PATH")]
    input: Option<PathBuf>,
    /// Write the response to a file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Default)]
struct ContextArgs {
    #[arg(long)]
    p: Option<u32>,
    /// Ramification index.
    #[arg(long)]
    e: Option<u32>,
    /// Degree of the coefficient field over F_p [default: 1].
    #[arg(long)]
    f: Option<u32>,
    /// Value of the mod p cyclotomic character on Frobenius [default: 1].
    #[arg(long)]
    cyclotomic_scalar: Option<String>,
}

#[derive(Args, Debug, Default)]
struct WeightArgs {
    #[arg(long, allow_hyphen_values = true)]
    a1: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    a2: Option<i64>,
    /// Sub character as EXP,FROB.
    #[arg(long, value_parser = parse_char)]
    chi1: Option<CharWire>,
    /// Quotient character as EXP,FROB.
    #[arg(long, value_parser = parse_char)]
    chi2: Option<CharWire>,
}

#[derive(Subcommand, Debug)]
enum Sub {
    /// Explicit weight data for a reducible or (with --niveau2-exp) irreducible representation.
    Wexplicit {
        #[command(flatten)]
        ctx: ContextArgs,
        #[command(flatten)]
        weight: WeightArgs,
        /// Exponent mod p^2 - 1 of a niveau-2 character on inertia.
        #[arg(long, allow_hyphen_values = true)]
        niveau2_exp: Option<i64>,
    },
    /// Normal form at the extremal pair of P(x, y, lambda).
    NormalForm {
        #[command(flatten)]
        ctx: ContextArgs,
        #[command(flatten)]
        weight: WeightArgs,
        #[arg(long)]
        x: Option<u32>,
        #[arg(long)]
        y: Option<u32>,
        /// Terms as DEG:COEFF,DEG:COEFF,...
        #[arg(long, value_parser = parse_lambda, allow_hyphen_values = true)]
        lambda: Option<PolyWire>,
    },
    /// Dimension cross-check and normal-form oracle over a sweep; JSON lines.
    Verify {
        /// Contexts as p,e,f;p,e,f;...
        #[arg(long, value_parser = parse_contexts)]
        contexts: Option<ContextList>,
        #[arg(long)]
        budget_secs: Option<f64>,
        #[arg(long)]
        max_extensions: Option<u64>,
        /// Only run the dimension cross-check.
        #[arg(long)]
        skip_normal_forms: bool,
    },
}

fn context_request(ctx: ContextArgs) -> Request {
    Request { p: ctx.p, e: ctx.e, f: ctx.f, cyclotomic_scalar: ctx.cyclotomic_scalar, ..Request::default() }
}

fn weight_request(w: WeightArgs, base: Request) -> Request {
    Request { a1: w.a1, a2: w.a2, chi1: w.chi1, chi2: w.chi2, ..base }
}

fn request_from_flags(sub: Sub) -> Request {
    match sub {
        Sub::Wexplicit { ctx, weight, niveau2_exp } => Request {
            command: Some(Command::Wexplicit),
            niveau2_exp,
            ..weight_request(weight, context_request(ctx))
        },
        Sub::NormalForm { ctx, weight, x, y, lambda } => Request {
            command: Some(Command::NormalForm),
            x,
            y,
            lambda,
            ..weight_request(weight, context_request(ctx))
        },
        Sub::Verify { contexts, budget_secs, max_extensions, skip_normal_forms } => Request {
            command: Some(Command::Verify),
            contexts: contexts.map(|c| c.0),
            budget_secs,
            max_extensions,
            skip_normal_forms: skip_normal_forms.then_some(true),
            ..Request::default()
        },
    }
}

fn build_context(req: &Request) -> Result<GlobalContext> {
    let p = require(&req.p, "p")?;
    let e = require(&req.e, "e")?;
    let ctx = GlobalContext::new(p, e, req.f.unwrap_or(1))?;
    match &req.cyclotomic_scalar {
        None => Ok(ctx),
        Some(s) => {
            let scalar = ctx.field().parse(s).map_err(|err| usage(format!("cyclotomic_scalar: {}", err)))?;
            Ok(ctx.with_cyclotomic_scalar(scalar).map_err(|err| usage(format!("cyclotomic_scalar: {}", err)))?)
        }
    }
}

fn weight(req: &Request, ctx: &GlobalContext) -> Result<SerreWeight> {
    let a = SerreWeight::new(require(&req.a1, "a1")?, require(&req.a2, "a2")?);
    Ok(a.validate(ctx.p())?)
}

fn character(wire: &Option<CharWire>, field: &str, ctx: &GlobalContext) -> Result<flatcrys::FullChar> {
    require(wire, field)?.to_char(ctx).map_err(|err| usage(format!("{}.frob: {}", field, err)))
}

#[derive(Serialize)]
struct ReducibleResponse {
    jdelta: Vec<JDeltaWire>,
    lcrys: Option<u32>,
    lflat: Option<u32>,
    exceptional: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    notes: Vec<String>,
}

fn cmd_wexplicit(req: &Request) -> Result<serde_json::Value> {
    let ctx = build_context(req)?;
    let a = weight(req, &ctx)?;
    if let Some(exp) = req.niveau2_exp {
        let member = irreducible_in_wexplicit(InertialChar2::new(exp, &ctx), a, &ctx)?;
        return Ok(json!({ "member": member }));
    }
    let chi1 = character(&req.chi1, "chi1", &ctx)?;
    let chi2 = character(&req.chi2, "chi2", &ctx)?;
    let shape = ReducibleShape { chi1, chi2 };
    let mut notes = Vec::new();
    let jdelta = reducible_inertial_params(shape, a, &ctx)?.into_iter().map(JDeltaWire::from).collect();
    let exceptional = is_exceptional(shape, a, &ctx);
    let lcrys = match lcrys_dimension(shape, a, &ctx) {
        Ok(d) => Some(d.dim),
        Err(err) => {
            notes.push(format!("lcrys: {}", err));
            None
        }
    };
    let lflat = match lflat_dimension(chi1, chi2, a, &ctx) {
        Ok(d) => Some(d),
        Err(err) => {
            notes.push(format!("lflat: {}", err));
            None
        }
    };
    Ok(serde_json::to_value(ReducibleResponse { jdelta, lcrys, lflat, exceptional, notes })?)
}

#[derive(Serialize)]
struct NormalFormResponse {
    #[serde(flatten)]
    normal_form: ExtWire,
    big_payload: PolyWire,
    projective_lambda: PolyWire,
}

fn cmd_normal_form(req: &Request) -> Result<serde_json::Value> {
    let ctx = build_context(req)?;
    let a = weight(req, &ctx)?;
    let chi1 = character(&req.chi1, "chi1", &ctx)?;
    let chi2 = character(&req.chi2, "chi2", &ctx)?;
    let lambda = poly_from_wire(&req.lambda.clone().unwrap_or_default(), &ctx).map_err(|err| usage(format!("lambda: {}", err)))?;
    let p = make_extension(require(&req.x, "x")?, require(&req.y, "y")?, lambda, chi1, chi2, a, &ctx)?;
    let nf = to_extremal_normal_form(&p, &ctx)?;
    Ok(serde_json::to_value(NormalFormResponse {
        normal_form: ExtWire::from_ext(&nf, &ctx),
        big_payload: poly_to_wire(&big_payload(&p, &ctx), &ctx),
        projective_lambda: poly_to_wire(&projective_representative(&nf.lambda, &ctx), &ctx),
    })?)
}

/// Streams the report; returns whether every instance passed.
fn cmd_verify(req: &Request, out: &mut dyn Write) -> Result<bool> {
    let defaults = SweepSpec::default();
    let budget = match req.budget_secs {
        Some(s) => Some(Duration::try_from_secs_f64(s).map_err(|err| usage(format!("budget_secs: {}", err)))?),
        None => None,
    };
    let spec = SweepSpec {
        contexts: req.contexts.clone().unwrap_or(defaults.contexts),
        budget,
        max_extensions: req.max_extensions.unwrap_or(defaults.max_extensions),
    };
    spec.validate().map_err(|err| usage(format!("contexts: {}", err)))?;
    let skip_normal_forms = req.skip_normal_forms.unwrap_or(false);
    writeln!(
        out,
        "{}",
        json!({
            "kind": "header",
            "contexts": spec.contexts,
            "isomorphism_search": "triangular basis changes v -> s v, w -> t w + h v only",
            "normal_forms": !skip_normal_forms,
        })
    )?;
    let mut budget = Budget::for_sweep(&spec);
    let (mut failures, mut skipped, mut total) = (0usize, 0usize, 0usize);
    let mut tally = |status: Status| {
        total += 1;
        match status {
            Status::Ok => {}
            Status::Fail => failures += 1,
            _ => skipped += 1,
        }
    };
    for &(p, e, f) in &spec.contexts {
        let ctx = GlobalContext::new(p, e, f)?;
        for (chi1, chi2, a) in dimension_instances(&ctx) {
            let report = check_dimension_instance(chi1, chi2, a, &ctx)?;
            tally(report.status);
            let mut line = serde_json::to_value(&report)?;
            line["kind"] = json!("dimension");
            writeln!(out, "{}", line)?;
        }
        if skip_normal_forms {
            continue;
        }
        for (m, n) in uniqueness_cases(&ctx) {
            let report = verify_normal_form_uniqueness(m, n, &ctx, &mut budget)?;
            tally(report.status);
            let mut line = serde_json::to_value(&report)?;
            line["kind"] = json!("normal_form");
            writeln!(out, "{}", line)?;
        }
    }
    writeln!(out, "{}", json!({ "kind": "summary", "instances": total, "failures": failures, "skipped": skipped }))?;
    Ok(failures == 0)
}

fn run(cli: Cli) -> Result<ExitCode> {
    let mut req = cli.command.map(request_from_flags).unwrap_or_default();
    if let Some(path) = &cli.input {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        req = req.merge(Request::from_json(&text)?);
    }
    let command = req.command.ok_or_else(|| usage("command: missing (give a subcommand or \"command\" in --in)"))?;
    let mut out: Box<dyn Write> = match &cli.out {
        Some(path) => Box::new(BufWriter::new(File::create(path).with_context(|| format!("creating {}", path.display()))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    let ok = match command {
        Command::Wexplicit => {
            writeln!(out, "{}", cmd_wexplicit(&req)?)?;
            true
        }
        Command::NormalForm => {
            writeln!(out, "{}", cmd_normal_form(&req)?)?;
            true
        }
        Command::Verify => cmd_verify(&req, &mut out)?,
    };
    out.flush()?;
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<UsageError>().is_some() {
        return 2;
    }
    match err.downcast_ref::<flatcrys::Error>() {
        Some(flatcrys::Error::BudgetExceeded(_)) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {:#}", err);
            ExitCode::from(exit_code(&err))
        }
    }
}
