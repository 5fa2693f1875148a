//! Command-line front end. [`dispatch`] is the whole program; the binary
//! only wires it to the process streams.
//!
//! Exit codes: 0 on success, 1 on input or domain errors, 2 when `verify`
//! finds a property violation.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::braid::Braid;
use crate::error::Error;
use crate::freegroup::Word;
use crate::knotgrp::{
    abelianize, alexander_polynomial, sphere_closure_presentation, tietze_simplify, Presentation,
};
use crate::satellite::{
    build_filtration, export_filtration, h1_transitions, satellite_presentation,
};
use crate::solenoid::{profile, solenoids_equivalent, validate_sequence, WindingSeq};
use crate::torusgrp::{
    budget_from_env, solid_torus_presentation, TorusContext, DEFAULT_MAX_WORD_LEN,
};
use crate::verify::{run_all, Corpus, VerifyReport};

pub const DEFAULT_SEED: u64 = 0x5EED;

#[derive(Parser, Debug)]
#[command(
    name = "soleknot",
    version,
    about = "Braids, knot groups, satellites and solenoids"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Compact, global = true)]
    format: Format,
    /// Enumeration cap; overrides SOLEKNOT_BUDGET.
    #[arg(long, global = true)]
    budget: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Compact,
    Structured,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Ambient {
    Sphere,
    Torus,
}

/// A knot given as a braid (`n: s1 ..`) or a presentation.
#[derive(Args, Debug)]
struct KnotArg {
    /// Braid or presentation, inline or `@file`.
    knot: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Closure components, winding number and exponent sum.
    Closure { braid: String },
    /// Apply the Artin action of a braid to a free-group word.
    Act {
        braid: String,
        word: String,
        /// Apply the braid this many times; negative uses the inverse.
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        power: i64,
        /// Abort once an intermediate word grows past this length.
        #[arg(long, default_value_t = DEFAULT_MAX_WORD_LEN)]
        max_word_len: usize,
    },
    /// Meridian conjugator and centralizer generators of `x1` in the
    /// mapping torus group.
    Centralizer {
        braid: String,
        /// Also check the power identity for every |k| up to this bound.
        #[arg(long)]
        powers: Option<u32>,
        /// Exhaustively enumerate the centralizer in a box.
        #[arg(long)]
        enumerate: bool,
        #[arg(long, default_value_t = 2)]
        max_texp: u32,
        #[arg(long, default_value_t = 3)]
        max_len: u32,
        #[arg(long, default_value_t = DEFAULT_MAX_WORD_LEN)]
        max_word_len: usize,
    },
    /// Presentation of the closure complement.
    Present {
        braid: String,
        #[arg(long, value_enum, default_value_t = Ambient::Sphere)]
        ambient: Ambient,
        /// Run the Tietze simplifier on the result.
        #[arg(long)]
        simplify: bool,
    },
    /// Satellite of a companion knot with a braid pattern.
    Satellite { companion: String, pattern: String },
    /// Iterated satellites starting from a seed knot.
    Filtration {
        seed: String,
        #[arg(required = true)]
        patterns: Vec<String>,
        #[arg(long)]
        depth: usize,
        /// Cycle through the patterns when depth exceeds their number.
        #[arg(long)]
        repeat: bool,
    },
    /// First homology of a knot group.
    Abelianize(KnotArg),
    /// Alexander polynomial of a knot group.
    Alexander(KnotArg),
    /// Compare the solenoids of two winding sequences.
    Classify { first: String, second: String },
    /// Run the property suites.
    Verify {
        #[arg(long, default_value = "default")]
        corpus: String,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

/// What a command produced: compact text and a structured document.
struct Output {
    text: String,
    doc: Value,
    code: i32,
}

impl Output {
    fn ok(text: impl Into<String>, doc: Value) -> Self {
        Output {
            text: text.into(),
            doc,
            code: 0,
        }
    }
}

#[derive(Debug)]
struct Failure(String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

/// Runs one command line (`argv[0]` is the program name) and returns the
/// exit code.
pub fn dispatch<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    1
                }
            };
        }
    };
    let format = cli.format;
    let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| run(cli)));
    match outcome {
        Ok(Ok(o)) => {
            let written = match format {
                Format::Compact => writeln!(out, "{}", o.text.trim_end_matches('\n')),
                Format::Structured => writeln!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&o.doc).unwrap_or_default()
                ),
            };
            if written.is_err() {
                return 1;
            }
            o.code
        }
        Ok(Err(Failure(msg))) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
        Err(_) => {
            let _ = writeln!(err, "error: internal failure");
            1
        }
    }
}

/// Inline text, or the contents of the file named after a leading `@`.
fn resolve(arg: &str) -> CliResult<String> {
    match arg.strip_prefix('@') {
        Some(path) => {
            std::fs::read_to_string(path).map_err(|e| Failure(format!("cannot read {path}: {e}")))
        }
        None => Ok(arg.to_string()),
    }
}

fn braid_arg(arg: &str) -> CliResult<Braid> {
    Ok(resolve(arg)?.trim().parse()?)
}

/// Braids start with their strand count; anything else is read as a
/// presentation.
fn knot_arg(arg: &str) -> CliResult<Presentation> {
    let text = resolve(arg)?;
    if text.trim_start().starts_with(|c: char| c.is_ascii_digit()) {
        Ok(sphere_closure_presentation(&text.trim().parse()?)?)
    } else {
        Ok(text.parse()?)
    }
}

fn seq_arg(arg: &str) -> CliResult<WindingSeq> {
    let seq: WindingSeq = resolve(arg)?.trim().parse()?;
    let problems = validate_sequence(&seq);
    if !problems.is_empty() {
        let msgs: Vec<String> = problems.iter().map(ToString::to_string).collect();
        return Err(Failure(msgs.join("; ")));
    }
    Ok(seq)
}

fn run(cli: Cli) -> CliResult<Output> {
    let budget = cli.budget.unwrap_or_else(budget_from_env);
    match cli.command {
        Command::Closure { braid } => {
            let b = braid_arg(&braid)?;
            let info = b.closure_info();
            Ok(Output::ok(
                info.to_string(),
                json!({"command": "closure", "braid": b.to_string(), "closure": info}),
            ))
        }
        Command::Act {
            braid,
            word,
            power,
            max_word_len,
        } => {
            let b = braid_arg(&braid)?;
            let w: Word = resolve(&word)?.trim().parse()?;
            let image = TorusContext::with_limit(&b, max_word_len).apply_power(power, &w)?;
            Ok(Output::ok(
                image.to_string(),
                json!({"command": "act", "braid": b.to_string(), "word": w, "power": power, "image": image}),
            ))
        }
        Command::Centralizer {
            braid,
            powers,
            enumerate,
            max_texp,
            max_len,
            max_word_len,
        } => {
            let ctx = TorusContext::with_limit(&braid_arg(&braid)?, max_word_len);
            centralizer(
                &ctx,
                powers,
                enumerate.then_some((max_texp, max_len)),
                budget,
            )
        }
        Command::Present {
            braid,
            ambient,
            simplify,
        } => {
            let b = braid_arg(&braid)?;
            let (mut p, closure_meridian) = match ambient {
                Ambient::Sphere => (sphere_closure_presentation(&b)?, None),
                Ambient::Torus => {
                    let tp = solid_torus_presentation(&b);
                    let m = tp.presentation.word_to_names(&tp.closure_meridian);
                    (tp.presentation, Some(m))
                }
            };
            if simplify {
                p = tietze_simplify(&p);
            }
            let mut text = p.to_string();
            if let Some(m) = &closure_meridian {
                text.push_str(&format!("# closure meridian: {m}\n"));
            }
            Ok(Output::ok(
                text,
                json!({
                    "command": "present",
                    "ambient": if closure_meridian.is_some() { "torus" } else { "sphere" },
                    "braid": b.to_string(),
                    "presentation": p,
                    "closure_meridian": closure_meridian,
                }),
            ))
        }
        Command::Satellite { companion, pattern } => {
            let c = knot_arg(&companion)?;
            let b = braid_arg(&pattern)?;
            let p = satellite_presentation(&c, &b)?;
            Ok(Output::ok(
                p.to_string(),
                json!({"command": "satellite", "pattern": b.to_string(), "presentation": p}),
            ))
        }
        Command::Filtration {
            seed,
            patterns,
            depth,
            repeat,
        } => {
            let s = knot_arg(&seed)?;
            let pats = patterns
                .iter()
                .map(|p| braid_arg(p))
                .collect::<CliResult<Vec<_>>>()?;
            let stages = build_filtration(&s, &pats, depth, repeat)?;
            let transitions = h1_transitions(&stages)?;
            let export = export_filtration(&stages);
            let mut text = String::new();
            for st in &export {
                text.push_str(&format!("# stage {}", st.index));
                if let Some(b) = &st.braid {
                    text.push_str(&format!(" pattern {b}"));
                }
                text.push('\n');
                if !st.inclusion.is_empty() {
                    let pairs: Vec<String> = st
                        .inclusion
                        .iter()
                        .map(|(a, b)| format!("{a}->{b}"))
                        .collect();
                    text.push_str(&format!("# inclusion {}\n", pairs.join(" ")));
                }
                text.push_str(&st.presentation);
            }
            let ts: Vec<String> = transitions.iter().map(ToString::to_string).collect();
            text.push_str(&format!("# h1 transitions: {}\n", ts.join(" ")));
            Ok(Output::ok(
                text,
                json!({"command": "filtration", "stages": export, "h1_transitions": transitions}),
            ))
        }
        Command::Abelianize(k) => {
            let a = abelianize(&knot_arg(&k.knot)?);
            Ok(Output::ok(
                a.to_string(),
                json!({"command": "abelianize", "text": a.to_string(), "abelianization": a}),
            ))
        }
        Command::Alexander(k) => {
            let d = alexander_polynomial(&knot_arg(&k.knot)?)?;
            Ok(Output::ok(
                d.to_string(),
                json!({"command": "alexander", "text": d.to_string(), "polynomial": d}),
            ))
        }
        Command::Classify { first, second } => {
            let a = seq_arg(&first)?;
            let b = seq_arg(&second)?;
            let eq = solenoids_equivalent(&a, &b)?;
            let (pa, pb) = (profile(&a)?, profile(&b)?);
            let verdict = if eq { "equivalent" } else { "inequivalent" };
            Ok(Output::ok(
                format!("{verdict}\nfirst: {pa}\nsecond: {pb}"),
                json!({
                    "command": "classify",
                    "first": a,
                    "second": b,
                    "equivalent": eq,
                    "first_profile": pa.to_string(),
                    "second_profile": pb.to_string(),
                }),
            ))
        }
        Command::Verify { corpus, seed } => {
            let corpus: Corpus = corpus.parse()?;
            Ok(verify_output(&run_all(corpus, seed)))
        }
    }
}

fn verify_output(report: &VerifyReport) -> Output {
    Output {
        text: report.to_string(),
        doc: json!({"command": "verify", "passed": report.passed(), "report": report}),
        code: if report.passed() { 0 } else { 2 },
    }
}

fn centralizer(
    ctx: &TorusContext,
    powers: Option<u32>,
    enumerate: Option<(u32, u32)>,
    budget: u64,
) -> CliResult<Output> {
    let gens = ctx.centralizer_generators()?;
    let commute = ctx.commute(&gens.a, &gens.b)?;
    let conjugator = gens.a.tail.clone();
    let mut text = format!(
        "conjugator: {conjugator}\na: {}\nb: {}\ncommute: {commute}\n",
        gens.a, gens.b
    );
    let mut doc = json!({
        "command": "centralizer",
        "braid": ctx.braid().to_string(),
        "conjugator": conjugator,
        "a": gens.a,
        "b": gens.b,
        "commute": commute,
    });
    if let Some(kmax) = powers {
        let k = kmax as i64;
        let mut checks = Vec::new();
        for k in -k..=k {
            let holds = ctx.power_identity_check(k)?;
            text.push_str(&format!("power_identity {k}: {holds}\n"));
            checks.push(json!({"k": k, "holds": holds}));
        }
        doc["power_identity"] = Value::Array(checks);
    }
    if let Some((max_texp, max_len)) = enumerate {
        let found = ctx.centralizer_enumeration(max_texp, max_len, budget)?;
        let predicted = ctx.predicted_in_box(max_texp, max_len)?;
        let matches = found == predicted;
        text.push_str(&format!(
            "enumerated: {} matches_prediction: {matches}\n",
            found.len()
        ));
        for e in &found {
            text.push_str(&format!("element: {e}\n"));
        }
        doc["enumeration"] = json!({
            "max_texp": max_texp,
            "max_len": max_len,
            "budget": budget,
            "elements": found,
            "matches_prediction": matches,
        });
    }
    Ok(Output::ok(text, doc))
}
