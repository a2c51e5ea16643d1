//! Command-line front end: `moritakit <command> <document> [flags]`.
//!
//! Exit codes: 0 when every computed property is decided and holds, 2 when
//! something is undecided within the cutoff, 1 on a violated property or an error.

pub mod commands;
pub mod document;
pub mod fixtures;
pub mod report;

use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use commands::Settings;
use document::Loaded;
use report::{render_json, render_text, Status};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Check,
    Gldim,
    Resolve,
    Simples,
    Projectives,
    Injectives,
    Selfinjective,
    Torsion,
    Approx,
    Tight,
    Bounds,
    Gorenstein,
    Gproj,
    TorCheck,
    DeltaGorenstein,
    DeltaGproj,
    /// Runs the bundled example corpus and its acceptance checks.
    Examples,
}

impl Command {
    pub fn name(self) -> String {
        self.to_possible_value().expect("no skipped variants").get_name().to_string()
    }
}

#[derive(Clone, Debug, Parser)]
#[command(name = "moritakit", version, about = "Exact computations with Morita rings over finite-dimensional algebras")]
pub struct Args {
    pub command: Command,
    /// Path to a JSON document, or `fixture:<name>` for a bundled one.
    pub document: Option<String>,
    /// Maximal resolution length before a question is reported undecided.
    #[arg(long)]
    pub cutoff: Option<usize>,
    #[arg(long)]
    pub depth: Option<usize>,
    /// Ext window for Gorenstein-projective tests.
    #[arg(long)]
    pub window: Option<usize>,
    #[arg(long, conflicts_with = "text")]
    pub json: bool,
    #[arg(long)]
    pub text: bool,
    /// Never use randomized shortcuts (the only mode; accepted for scripts).
    #[arg(long)]
    pub seedless: bool,
    /// Restrict to one named module of the document.
    #[arg(long)]
    pub module: Option<String>,
    /// `A`/`B` for `tight`, `left`/`right` for `approx`.
    #[arg(long)]
    pub side: Option<String>,
    /// Torsion pair: XY, YZ, XpYp or YpZp.
    #[arg(long)]
    pub pair: Option<String>,
    /// Approximation target: modA, modB, lowerTri or upperTri.
    #[arg(long)]
    pub target: Option<String>,
    /// sum-plus-one, tensor-power:<variant>:<s>, corner-lower, nilpotency or trivext.
    #[arg(long)]
    pub bound: Option<String>,
}

pub const DEFAULT_CUTOFF: usize = 64;

pub fn read_document(arg: &str) -> Result<(String, String)> {
    if let Some(name) = arg.strip_prefix("fixture:") {
        let text = fixtures::get(name).ok_or_else(|| Error::Io(format!("no bundled fixture {name}")))?;
        return Ok((name.to_string(), text.to_string()));
    }
    let text = std::fs::read_to_string(PathBuf::from(arg)).map_err(|e| Error::Io(format!("{arg}: {e}")))?;
    Ok((arg.to_string(), text))
}

/// Runs a command on an already loaded document (or none, for `examples`).
pub fn execute(cmd: Command, doc: Option<&Loaded>, s: &Settings) -> Result<commands::Outcomes> {
    if cmd == Command::Examples {
        return Ok(crate::acceptance::examples_report(s.cutoff));
    }
    let l = doc.ok_or_else(|| Error::Precondition(format!("{} needs a document", cmd.name())))?;
    match cmd {
        Command::Check => commands::check(l),
        Command::Gldim => commands::gldim_cmd(l, s),
        Command::Resolve => commands::resolve(l, s),
        Command::Simples => commands::simples_cmd(l),
        Command::Projectives => commands::projectives_cmd(l),
        Command::Injectives => commands::injectives_cmd(l),
        Command::Selfinjective => commands::selfinjective(l),
        Command::Torsion => commands::torsion(l, s),
        Command::Approx => commands::approx(l, s),
        Command::Tight => commands::tight(l, s),
        Command::Bounds => commands::bounds(l, s),
        Command::Gorenstein => commands::gorenstein(l, s),
        Command::Gproj => commands::gproj(l, s),
        Command::TorCheck => commands::tor_check(l, s),
        Command::DeltaGorenstein => commands::delta_gorenstein(l, s),
        Command::DeltaGproj => commands::delta_gproj(l, s),
        Command::Examples => unreachable!("handled above"),
    }
}

/// Full report for a command, including the envelope.
pub fn report(cmd: Command, doc: Option<&Loaded>, s: &Settings) -> (Value, Status) {
    let field = doc.map_or_else(|| "rational".to_string(), |l| l.field.name());
    let mut out = json!({
        "command": cmd.name(),
        "tool": {"name": env!("CARGO_PKG_NAME"), "version": env!("CARGO_PKG_VERSION")},
        "input": {"digest": doc.map(|l| l.digest.clone()), "description": doc.and_then(|l| l.doc.description.clone())},
        "field": field,
        "settings": {"cutoff": s.cutoff, "depth": s.depth, "window": s.window},
    });
    let status = match execute(cmd, doc, s) {
        Ok((results, status)) => {
            out["results"] = results;
            status
        }
        Err(e) => {
            out["error"] = json!(e.to_string());
            Status::Error
        }
    };
    out["status"] = json!(status.name());
    (out, status)
}

/// Parses arguments, runs, and returns the rendered report and exit code.
pub fn run(args: &Args) -> (String, i32) {
    let text_mode = args.text && !args.json;
    let render = |v: &Value| if text_mode { render_text(v) } else { render_json(v) };
    let fail = |msg: String| {
        let v = json!({"command": args.command.name(), "status": "error", "error": msg});
        (render(&v), Status::Error.exit_code())
    };
    let loaded = match (&args.document, args.command) {
        (None, _) => None,
        (Some(path), _) => {
            let parsed = read_document(path).and_then(|(_, text)| document::load(&text));
            match parsed {
                Ok(l) => Some(l),
                Err(e) => return fail(e.to_string()),
            }
        }
    };
    let opts = loaded.as_ref().map(|l| l.doc.options.clone()).unwrap_or_default();
    let settings = Settings {
        cutoff: args.cutoff.or(opts.cutoff).unwrap_or(DEFAULT_CUTOFF),
        depth: args.depth.or(opts.depth),
        window: args.window.or(opts.window),
        module: args.module.clone(),
        side: args.side.clone(),
        pair: args.pair.clone(),
        target: args.target.clone(),
        bound: args.bound.clone(),
    };
    let (v, status) = report(args.command, loaded.as_ref(), &settings);
    (render(&v), status.exit_code())
}
