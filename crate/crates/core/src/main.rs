//! Command-line surface: load JSON workspace documents, run validity
//! checks, compute invariants, compose butterflies, manipulate torsors
//! and cocycles, and enumerate small structures. All output is JSON on
//! standard output; exit code 0 means ok, 1 a failed check, 2 an input
//! error (reported as {"code", "message", "path"}).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use xbim::butterfly;
use xbim::cocycle::{self, Cocycle};
use xbim::crossed::find_crossed_isos;
use xbim::json::{parse_document, to_canonical_json, Document, Workspace};
use xbim::torsor::{self, Torsor};
use xbim::{Error, Report, DEFAULT_BOUND};

#[derive(Parser)]
#[command(name = "xbim", version, about = "Checks and computations for crossed bimodules")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// JSON workspace document; repeat to merge several files.
    #[arg(long, global = true)]
    input: Vec<PathBuf>,
    /// Write the JSON result here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Enumeration bound for searches.
    #[arg(long, global = true, default_value_t = DEFAULT_BOUND)]
    bound: u64,
    /// Seed for randomized procedures; accepted for reproducibility,
    /// every implemented command is deterministic.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Check laws on all elements instead of generators where available.
    #[arg(long, global = true)]
    exhaustive: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the validity check of a named object.
    Check { name: String },
    /// Compute pi0 and pi1 of a crossed bimodule.
    Pi { name: String },
    /// Compose two butterflies (left: T -> S, right: S -> R) into `out`.
    Compose { left: String, right: String, out: String },
    /// Complete a butterfly to its span of strict morphisms.
    Fraction { name: String },
    /// Search a butterfly for a strong splitting.
    Split { name: String },
    /// List isomorphisms between two butterflies or crossed bimodules.
    Isos { a: String, b: String },
    /// Torsor operations: check t | sum t t' out | product t t' out |
    /// apply b t out | isos t t' | trivial x coords out
    Torsor { op: String, args: Vec<String> },
    /// Cocycle operations: check z | sum z z' out | mul z z' out |
    /// isos z z' | classes x n
    Cocycle { op: String, args: Vec<String> },
    /// Census of small structures up to the given order (default 8).
    Enumerate { max_order: Option<u64> },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err((err, path)) => {
            let obj = json!({
                "code": error_code(&err),
                "message": err.to_string(),
                "path": path,
            });
            println!("{}", serde_json::to_string_pretty(&obj).expect("error object"));
            ExitCode::from(2)
        }
    }
}

type CmdError = (Error, String);

fn fail(err: Error, path: impl Into<String>) -> CmdError {
    (err, path.into())
}

fn error_code(err: &Error) -> &'static str {
    match err {
        Error::ShapeMismatch(_) => "shape-mismatch",
        Error::BoundExceeded { .. } => "bound-exceeded",
        Error::IllDefined(_) => "ill-defined",
        Error::EndpointMismatch(_) => "endpoint-mismatch",
        Error::NotComposable(_) => "not-composable",
        Error::MiddleMismatch(_) => "middle-mismatch",
        Error::MismatchedParent(_) => "mismatched-parent",
        Error::MismatchedCover(_) => "mismatched-cover",
        Error::InvalidDga(_) => "invalid-complex",
        Error::InvalidSimplicial(_) => "invalid-simplicial",
        Error::InvalidInput(_) => "invalid-input",
    }
}

fn load(cli: &Cli) -> Result<Workspace, CmdError> {
    let mut docs = Vec::new();
    for path in &cli.input {
        let text = std::fs::read_to_string(path)
            .map_err(|e| fail(Error::InvalidInput(format!("cannot read file: {e}")), path.display().to_string()))?;
        docs.push(parse_document(&text).map_err(|e| fail(e, path.display().to_string()))?);
    }
    Workspace::from_documents(docs).map_err(|e| fail(e, "<workspace>"))
}

fn emit(cli: &Cli, value: &Value) -> Result<(), CmdError> {
    let mut text = serde_json::to_string_pretty(value).expect("serialization");
    text.push('\n');
    write_out(cli, &text)
}

fn emit_document(cli: &Cli, doc: &Document) -> Result<(), CmdError> {
    write_out(cli, &to_canonical_json(doc))
}

fn write_out(cli: &Cli, text: &str) -> Result<(), CmdError> {
    match &cli.output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| fail(Error::InvalidInput(format!("cannot write file: {e}")), path.display().to_string())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn report_value(report: &Report) -> Value {
    json!({
        "ok": report.ok(),
        "violations": report.violations,
        "derived": report.derived,
    })
}

fn report_exit(cli: &Cli, report: &Report) -> Result<ExitCode, CmdError> {
    emit(cli, &report_value(report))?;
    Ok(if report.ok() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn get<'a, T>(
    map: &'a std::collections::BTreeMap<String, T>,
    name: &str,
    kind: &str,
) -> Result<&'a T, CmdError> {
    map.get(name)
        .ok_or_else(|| fail(Error::InvalidInput(format!("no {kind} named '{name}'")), name))
}

fn arity(args: &[String], n: usize, usage: &str) -> Result<(), CmdError> {
    if args.len() != n {
        return Err(fail(Error::InvalidInput(format!("expected {n} arguments: {usage}")), "<args>"));
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<ExitCode, CmdError> {
    let ws = load(cli)?;
    match &cli.cmd {
        Cmd::Check { name } => cmd_check(cli, &ws, name),
        Cmd::Pi { name } => cmd_pi(cli, &ws, name),
        Cmd::Compose { left, right, out } => cmd_compose(cli, &ws, left, right, out),
        Cmd::Fraction { name } => cmd_fraction(cli, &ws, name),
        Cmd::Split { name } => cmd_split(cli, &ws, name),
        Cmd::Isos { a, b } => cmd_isos(cli, &ws, a, b),
        Cmd::Torsor { op, args } => cmd_torsor(cli, &ws, op, args),
        Cmd::Cocycle { op, args } => cmd_cocycle(cli, &ws, op, args),
        Cmd::Enumerate { max_order } => cmd_enumerate(cli, max_order.unwrap_or(8)),
    }
}

fn cmd_check(cli: &Cli, ws: &Workspace, name: &str) -> Result<ExitCode, CmdError> {
    let report = if let Some(x) = ws.crossed.get(name) {
        if cli.exhaustive { x.check_exhaustive() } else { x.check() }
    } else if let Some(b) = ws.butterflies.get(name) {
        b.check()
    } else if let Some(r) = ws.rings.get(name) {
        if cli.exhaustive { r.check_exhaustive() } else { r.check() }
    } else if let Some(b) = ws.bimodules.get(name) {
        b.check()
    } else if let Some(f) = ws.morphisms.get(name) {
        f.check()
    } else if let Some(t) = ws.torsors.get(name) {
        t.check()
    } else if let Some(z) = ws.cocycles.get(name) {
        z.check()
    } else {
        return Err(fail(Error::InvalidInput(format!("no object named '{name}'")), name));
    };
    report_exit(cli, &report)
}

fn cmd_pi(cli: &Cli, ws: &Workspace, name: &str) -> Result<ExitCode, CmdError> {
    let x = get(&ws.crossed, name, "crossed bimodule")?;
    let (p0, _) = x.pi0();
    let (p1, _) = x.pi1();
    let mut report = Report::new();
    report.note("pi0.order", p0.order());
    report.note("pi0.moduli", format!("{:?}", p0.additive().moduli()));
    report.note("pi1.order", p1.additive().order());
    report.note("pi1.moduli", format!("{:?}", p1.additive().moduli()));
    report_exit(cli, &report)
}

fn cmd_compose(
    cli: &Cli,
    ws: &Workspace,
    left: &str,
    right: &str,
    out: &str,
) -> Result<ExitCode, CmdError> {
    let f = get(&ws.butterflies, left, "butterfly")?;
    let b = get(&ws.butterflies, right, "butterfly")?;
    let composed = butterfly::compose(f, b).map_err(|e| fail(e, left))?;
    let mut result = Workspace::default();
    result.add_butterfly(out, &composed);
    emit_document(cli, &result.to_document())?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_fraction(cli: &Cli, ws: &Workspace, name: &str) -> Result<ExitCode, CmdError> {
    let b = get(&ws.butterflies, name, "butterfly")?;
    let f = butterfly::fraction(b).map_err(|e| fail(e, name))?;
    let mut report = Report::new();
    report.absorb("efrac", f.efrac.check());
    report.absorb("left", f.left.check());
    report.absorb("right", f.right.check());
    report.note("qiso", f.qiso);
    let (p0, _) = f.efrac.pi0();
    report.note("efrac.pi0.order", p0.order());
    if !f.qiso {
        report.violate("quasi-isomorphism", "the left wing is not invertible on pi0/pi1", "left");
    }
    report_exit(cli, &report)
}

fn cmd_split(cli: &Cli, ws: &Workspace, name: &str) -> Result<ExitCode, CmdError> {
    let b = get(&ws.butterflies, name, "butterfly")?;
    let found = butterfly::detect_strong_splitting(b, cli.bound).map_err(|e| fail(e, name))?;
    let mut report = Report::new();
    match found {
        Some((section, morphism, _iso)) => {
            report.note("split", true);
            report.note("section", format!("{:?}", section.hom().matrix()));
            report.note("alpha", format!("{:?}", morphism.alpha().hom().matrix()));
            report.note("beta", format!("{:?}", morphism.beta().matrix()));
        }
        None => report.note("split", false),
    }
    report_exit(cli, &report)
}

fn matrix_value(m: &[Vec<i64>]) -> Value {
    json!(m)
}

fn cmd_isos(cli: &Cli, ws: &Workspace, a: &str, b: &str) -> Result<ExitCode, CmdError> {
    let list: Vec<Value> = if ws.butterflies.contains_key(a) {
        let x = get(&ws.butterflies, a, "butterfly")?;
        let y = get(&ws.butterflies, b, "butterfly")?;
        butterfly::find_isomorphisms(x, y, cli.bound)
            .map_err(|e| fail(e, a))?
            .iter()
            .map(|i| json!({"a": matrix_value(i.a.hom().matrix())}))
            .collect()
    } else if ws.crossed.contains_key(a) {
        let x = get(&ws.crossed, a, "crossed bimodule")?;
        let y = get(&ws.crossed, b, "crossed bimodule")?;
        find_crossed_isos(x, y, cli.bound)
            .map_err(|e| fail(e, a))?
            .iter()
            .map(|f| {
                json!({
                    "alpha": matrix_value(f.alpha().hom().matrix()),
                    "beta": matrix_value(f.beta().matrix()),
                })
            })
            .collect()
    } else {
        return Err(fail(Error::InvalidInput(format!("no butterfly or crossed bimodule named '{a}'")), a));
    };
    emit(cli, &json!({ "isomorphisms": list }))?;
    Ok(ExitCode::SUCCESS)
}

fn torsor_result(cli: &Cli, ws: &Workspace, out: &str, t: &Torsor) -> Result<ExitCode, CmdError> {
    let mut result = Workspace::default();
    let name = ws
        .crossed
        .iter()
        .find(|(_, x)| *x == t.x())
        .map(|(n, _)| n.clone())
        .unwrap_or_else(|| format!("{out}/xbm"));
    result.add_crossed(&name, t.x());
    result.torsors.insert(out.to_string(), t.clone());
    emit_document(cli, &result.to_document())?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_torsor(cli: &Cli, ws: &Workspace, op: &str, args: &[String]) -> Result<ExitCode, CmdError> {
    match op {
        "check" => {
            arity(args, 1, "torsor check <t>")?;
            let t = get(&ws.torsors, &args[0], "torsor")?;
            report_exit(cli, &t.check())
        }
        "sum" | "product" => {
            arity(args, 3, "torsor sum|product <t> <t'> <out>")?;
            let t = get(&ws.torsors, &args[0], "torsor")?;
            let t2 = get(&ws.torsors, &args[1], "torsor")?;
            let result = if op == "sum" { torsor::sum(t, t2) } else { torsor::product(t, t2) }
                .map_err(|e| fail(e, &args[0]))?;
            torsor_result(cli, ws, &args[2], &result)
        }
        "apply" => {
            arity(args, 3, "torsor apply <butterfly> <t> <out>")?;
            let b = get(&ws.butterflies, &args[0], "butterfly")?;
            let t = get(&ws.torsors, &args[1], "torsor")?;
            let result = torsor::apply_butterfly(b, t).map_err(|e| fail(e, &args[1]))?;
            torsor_result(cli, ws, &args[2], &result)
        }
        "isos" => {
            arity(args, 2, "torsor isos <t> <t'>")?;
            let t = get(&ws.torsors, &args[0], "torsor")?;
            let t2 = get(&ws.torsors, &args[1], "torsor")?;
            let isos = torsor::find_torsor_isos(t, t2).map_err(|e| fail(e, &args[0]))?;
            let list: Vec<Value> = isos.iter().map(|i| json!(i.map)).collect();
            emit(cli, &json!({ "isomorphisms": list }))?;
            Ok(ExitCode::SUCCESS)
        }
        "trivial" => {
            arity(args, 3, "torsor trivial <xbm> <coords> <out>")?;
            let x = get(&ws.crossed, &args[0], "crossed bimodule")?;
            let coords: Vec<i64> = args[1]
                .split(',')
                .map(|s| s.trim().parse::<i64>())
                .collect::<Result<_, _>>()
                .map_err(|e| fail(Error::InvalidInput(format!("bad coordinates: {e}")), &args[1]))?;
            if coords.len() != x.ring().additive().rank() {
                return Err(fail(Error::ShapeMismatch("coordinate count".into()), &args[1]));
            }
            let r = x.ring().additive().reduce(&coords);
            torsor_result(cli, ws, &args[2], &torsor::trivial_torsor(x, &r))
        }
        other => Err(fail(Error::InvalidInput(format!("unknown torsor operation '{other}'")), other)),
    }
}

fn cocycle_result(cli: &Cli, ws: &Workspace, out: &str, z: &Cocycle) -> Result<ExitCode, CmdError> {
    let mut result = Workspace::default();
    let name = ws
        .crossed
        .iter()
        .find(|(_, x)| *x == z.x())
        .map(|(n, _)| n.clone())
        .unwrap_or_else(|| format!("{out}/xbm"));
    result.add_crossed(&name, z.x());
    result.cocycles.insert(out.to_string(), z.clone());
    emit_document(cli, &result.to_document())?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_cocycle(cli: &Cli, ws: &Workspace, op: &str, args: &[String]) -> Result<ExitCode, CmdError> {
    match op {
        "check" => {
            arity(args, 1, "cocycle check <z>")?;
            let z = get(&ws.cocycles, &args[0], "cocycle")?;
            report_exit(cli, &z.check())
        }
        "sum" | "mul" => {
            arity(args, 3, "cocycle sum|mul <z> <z'> <out>")?;
            let z = get(&ws.cocycles, &args[0], "cocycle")?;
            let z2 = get(&ws.cocycles, &args[1], "cocycle")?;
            let result = if op == "sum" { z.sum(z2) } else { z.mul(z2) }
                .map_err(|e| fail(e, &args[0]))?;
            cocycle_result(cli, ws, &args[2], &result)
        }
        "isos" => {
            arity(args, 2, "cocycle isos <z> <z'>")?;
            let z = get(&ws.cocycles, &args[0], "cocycle")?;
            let z2 = get(&ws.cocycles, &args[1], "cocycle")?;
            let found = cocycle::are_isomorphic(z, z2, cli.bound).map_err(|e| fail(e, &args[0]))?;
            let value = match found {
                Some(c) => json!(c.c.iter().map(|e| e.coords.clone()).collect::<Vec<_>>()),
                None => Value::Null,
            };
            emit(cli, &json!({ "descent": value }))?;
            Ok(ExitCode::SUCCESS)
        }
        "classes" => {
            arity(args, 2, "cocycle classes <xbm> <n>")?;
            let x = get(&ws.crossed, &args[0], "crossed bimodule")?;
            let n: usize = args[1]
                .parse()
                .map_err(|e| fail(Error::InvalidInput(format!("bad cover size: {e}")), &args[1]))?;
            let cs = cocycle::classes(x, n, cli.bound).map_err(|e| fail(e, &args[0]))?;
            emit(
                cli,
                &json!({
                    "order": cs.ring.order(),
                    "moduli": cs.ring.additive().moduli(),
                    "representatives": cs
                        .representatives
                        .iter()
                        .map(|z| json!({
                            "r": z.r().iter().map(|e| e.coords.clone()).collect::<Vec<_>>(),
                        }))
                        .collect::<Vec<_>>(),
                }),
            )?;
            Ok(ExitCode::SUCCESS)
        }
        other => Err(fail(Error::InvalidInput(format!("unknown cocycle operation '{other}'")), other)),
    }
}

fn cmd_enumerate(cli: &Cli, max_order: u64) -> Result<ExitCode, CmdError> {
    let groups = xbim::census::small_groups(max_order);
    let rings = xbim::census::small_rings(max_order);
    let crossed = xbim::census::small_crossed(max_order).map_err(|e| fail(e, "<census>"))?;
    let extensions = xbim::census::small_extensions(max_order);
    let mut by_shape: std::collections::BTreeMap<String, u64> = Default::default();
    for x in &crossed {
        let key = format!(
            "R{:?} M{:?}",
            x.ring().additive().moduli(),
            x.module().additive().moduli()
        );
        *by_shape.entry(key).or_default() += 1;
    }
    emit(
        cli,
        &json!({
            "max_order": max_order,
            "counts": {
                "groups": groups.len(),
                "rings": rings.len(),
                "crossed": crossed.len(),
                "extensions": extensions.len(),
            },
            "crossed_by_shape": by_shape,
        }),
    )?;
    Ok(ExitCode::SUCCESS)
}
