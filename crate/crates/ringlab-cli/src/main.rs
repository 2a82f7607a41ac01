//! `ringlab` — finite-ring property checking from the command line.
//!
//! Exit codes follow one contract everywhere: 0 when the asked-for thing
//! holds or is found, 1 when it fails or comes up empty (with a witness
//! printed when one exists), 2 for errors — unparseable expressions,
//! unbuildable rings, bad files, unknown properties.

use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use ringlab::catalog::Catalog;
use ringlab::construct::{build_str, BuildCaps};
use ringlab::hunt::{hunt, HuntConfig};
use ringlab::ideal::DEFAULT_IDEAL_CAP;
use ringlab::predicates::Scanner;
use ringlab::report::{matrix_report, SCHEMA_VERSION};
use ringlab::ring::{FiniteRing, DEFAULT_ORDER_CAP};
use ringlab::suites::{run_all_suites, run_implications};
use ringlab::table_io::{parse_table_file, TableIoError};
use ringlab::verdict::{PropertyName, PropertyVerdict};
use ringlab::wordalg::{check_orthogonality, PatternIdeal};
use ringlab::{polybox, predicates};

#[derive(Parser)]
#[command(
    name = "ringlab",
    version,
    about = "Decide zero-product style properties of finite rings, with witnesses"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalFlags,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalFlags {
    /// Emit JSON reports instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Largest ring order any construction may produce.
    #[arg(long, global = true, default_value_t = DEFAULT_ORDER_CAP)]
    order_cap: usize,
    /// Degree cap for polynomial properties.
    #[arg(long, global = true, default_value_t = 1)]
    degree: usize,
    /// Degree of the middle polynomial in the quasi-Armendariz scan.
    #[arg(long, global = true, default_value_t = 1)]
    middle_degree: usize,
    /// Longest middle word in word-algebra scans (also the basis length cap).
    #[arg(long, global = true, default_value_t = 8)]
    max_middle: usize,
    /// Seed for the randomized hunt phase.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Wall-clock budget for searches, in seconds.
    #[arg(long, global = true)]
    timeout_secs: Option<u64>,
}

impl GlobalFlags {
    fn caps(&self) -> BuildCaps {
        BuildCaps {
            order_cap: self.order_cap,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Decide one property on one ring.
    Check(CheckArgs),
    /// Full property-by-ring verdict matrix over a catalog.
    Matrix(MatrixArgs),
    /// Re-prove the implication graph and the theorem suites over a catalog.
    Implications(ImplicationsArgs),
    /// Search for a ring where one property holds and another fails.
    Hunt(HuntArgs),
    /// Scans over a free algebra modulo a pattern ideal.
    Wordalg(WordalgArgs),
    /// Validate operation tables and summarize the ring they define.
    Axioms(AxiomsArgs),
}

#[derive(Args)]
struct CheckArgs {
    /// Ring expression, e.g. "U(2, Zmod(2))".
    #[arg(long, required_unless_present = "table", conflicts_with = "table")]
    ring: Option<String>,
    /// Ring table file (format: see `ringlab axioms --help`).
    #[arg(long)]
    table: Option<PathBuf>,
    /// One of the scan properties (reduced, reflexive, left_n_reflexive, ...)
    /// or an extended check: quasi_armendariz_bounded,
    /// nilpotent_coeffs_condition, left_n_reflexive_poly,
    /// annihilator_characterization, ideal_characterization.
    #[arg(long)]
    property: String,
}

#[derive(Args)]
struct MatrixArgs {
    /// Catalog file, one `name = expression` per line, `#` comments;
    /// defaults to the embedded catalog.
    #[arg(long)]
    catalog: Option<PathBuf>,
    /// Attach per-verdict timings (makes the JSON non-reproducible).
    #[arg(long)]
    timings: bool,
}

#[derive(Args)]
struct ImplicationsArgs {
    /// Catalog file; defaults to the embedded catalog.
    #[arg(long)]
    catalog: Option<PathBuf>,
    /// Check the implication edges only, skipping the theorem suites.
    #[arg(long)]
    edges_only: bool,
}

#[derive(Args)]
struct HuntArgs {
    /// Property that must hold on the ring we are looking for.
    #[arg(long)]
    holds: String,
    /// Property that must fail on it.
    #[arg(long)]
    fails: String,
    /// Catalog searched before the extra constructor pool.
    #[arg(long)]
    catalog: Option<PathBuf>,
    /// Random tables to try after the constructor pool.
    #[arg(long, default_value_t = 64)]
    random_tries: usize,
}

#[derive(Args)]
struct WordalgArgs {
    /// Pattern file with statements like `letters x y`, `kill yx`,
    /// `gap x y`, `collapse x`, `prime 2`.
    #[arg(long, required_unless_present = "rules", conflicts_with = "rules")]
    ideal: Option<PathBuf>,
    /// Inline pattern source, as an alternative to --ideal.
    #[arg(long)]
    rules: Option<String>,
    /// Orthogonality scan "u * ? * v": does u·m·v vanish for every
    /// middle word m up to --max-middle?
    #[arg(long)]
    check: Option<String>,
    /// Is this word nilpotent? Powers probed up to --power-cap.
    #[arg(long)]
    nilpotent: Option<String>,
    /// Power bound for --nilpotent.
    #[arg(long, default_value_t = 16)]
    power_cap: usize,
    /// Print the normal-word basis if the sweep stops by --max-middle.
    #[arg(long)]
    basis: bool,
    /// Build the finite quotient ring and decide this property on it.
    #[arg(long)]
    quotient_property: Option<String>,
}

#[derive(Args)]
struct AxiomsArgs {
    /// Ring expression to build and summarize.
    #[arg(long, required_unless_present = "table", conflicts_with = "table")]
    ring: Option<String>,
    /// Table file to validate: `ring <name> order <n>`, an `add` block,
    /// a `mul` block, then `zero <i>` and `one <i>`.
    #[arg(long)]
    table: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<u8> {
    let g = &cli.global;
    match &cli.command {
        Command::Check(args) => cmd_check(g, args),
        Command::Matrix(args) => cmd_matrix(g, args),
        Command::Implications(args) => cmd_implications(g, args),
        Command::Hunt(args) => cmd_hunt(g, args),
        Command::Wordalg(args) => cmd_wordalg(g, args),
        Command::Axioms(args) => cmd_axioms(g, args),
    }
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_ring(
    expr: Option<&str>,
    table: Option<&PathBuf>,
    caps: &BuildCaps,
) -> Result<FiniteRing> {
    match (expr, table) {
        (Some(src), None) => Ok(build_str(src, caps)?),
        (None, Some(path)) => Ok(parse_table_file(&read_file(path)?)?),
        _ => bail!("exactly one of --ring and --table is required"),
    }
}

fn load_catalog(path: Option<&PathBuf>) -> Result<Catalog> {
    match path {
        None => Ok(Catalog::default_catalog()),
        Some(p) => Ok(Catalog::parse(&read_file(p)?)?),
    }
}

fn parse_property(name: &str) -> Result<PropertyName> {
    name.parse::<PropertyName>().map_err(|e| anyhow!("{e}"))
}

/// The scan properties plus the bounded polynomial and characterization
/// checks reachable from `check --property`.
fn decide_extended(ring: &FiniteRing, property: &str, g: &GlobalFlags) -> Result<PropertyVerdict> {
    if let Ok(p) = property.parse::<PropertyName>() {
        return Ok(predicates::decide(ring, p));
    }
    // Nilpotency of bounded polynomials is probed up to this power; the
    // verdict label records the bound.
    let power_cap = 16;
    match property {
        "quasi_armendariz_bounded" => Ok(polybox::is_quasi_armendariz_bounded(
            ring,
            g.degree,
            g.middle_degree,
        )?),
        "nilpotent_coeffs_condition" => Ok(polybox::nilpotent_coeffs_condition(
            ring, g.degree, power_cap,
        )?),
        "left_n_reflexive_poly" => Ok(polybox::is_left_n_reflexive_poly_bounded(
            ring, g.degree, power_cap,
        )?),
        "annihilator_characterization" => {
            Ok(Scanner::new(ring).check_annihilator_characterization())
        }
        "ideal_characterization" => {
            Ok(Scanner::new(ring).check_ideal_characterization(DEFAULT_IDEAL_CAP)?)
        }
        other => bail!(
            "unknown property `{other}`; known: {}, plus quasi_armendariz_bounded, \
             nilpotent_coeffs_condition, left_n_reflexive_poly, \
             annihilator_characterization, ideal_characterization",
            PropertyName::ALL.map(|p| p.as_str()).join(", ")
        ),
    }
}

fn emit(json: bool, value: serde_json::Value, text: impl Display) {
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&value).expect("reports serialize")
        );
    } else {
        print!("{text}");
    }
}

fn cmd_check(g: &GlobalFlags, args: &CheckArgs) -> Result<u8> {
    let ring = load_ring(args.ring.as_deref(), args.table.as_ref(), &g.caps())?;
    let verdict = decide_extended(&ring, &args.property, g)?;
    let holds = verdict.holds;
    emit(
        g.json,
        json!({"schema": SCHEMA_VERSION, "kind": "check", "verdict": verdict}),
        format!("{verdict}\n"),
    );
    Ok(if holds { 0 } else { 1 })
}

fn cmd_matrix(g: &GlobalFlags, args: &MatrixArgs) -> Result<u8> {
    let catalog = load_catalog(args.catalog.as_ref())?;
    let report = matrix_report(&catalog, &g.caps(), args.timings);
    if g.json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
    }
    Ok(0)
}

fn cmd_implications(g: &GlobalFlags, args: &ImplicationsArgs) -> Result<u8> {
    let catalog = load_catalog(args.catalog.as_ref())?;
    let caps = g.caps();
    let rings = catalog.build_all_strict(&caps)?;
    let implications = run_implications(&rings);
    let suites = if args.edges_only {
        Vec::new()
    } else {
        run_all_suites(&catalog, &caps)?
    };
    let clean = implications.anchored_clean() && suites.iter().all(|s| s.all_passed());

    if g.json {
        let value = json!({
            "schema": SCHEMA_VERSION,
            "kind": "implications",
            "rings": implications.rings,
            "edges": implications.edges,
            "suites": suites,
            "clean": clean,
        });
        println!(
            "{}",
            serde_json::to_string_pretty(&value).expect("reports serialize")
        );
    } else {
        print!("{}", implications.to_text());
        for s in &suites {
            print!("{}", s.to_text());
        }
        println!(
            "{}",
            if clean {
                "anchored edges and suites: clean"
            } else {
                "VIOLATIONS in anchored edges or suites"
            }
        );
    }
    Ok(if clean { 0 } else { 1 })
}

fn cmd_hunt(g: &GlobalFlags, args: &HuntArgs) -> Result<u8> {
    let holds = parse_property(&args.holds)?;
    let fails = parse_property(&args.fails)?;
    let catalog = load_catalog(args.catalog.as_ref())?;
    let config = HuntConfig {
        caps: g.caps(),
        seed: g.seed,
        random_tries: args.random_tries,
        timeout: g.timeout_secs.map(Duration::from_secs),
    };
    let report = hunt(holds, fails, &catalog, &config);
    let found = report.found.is_some();
    if g.json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
    }
    Ok(if found { 0 } else { 1 })
}

fn cmd_wordalg(g: &GlobalFlags, args: &WordalgArgs) -> Result<u8> {
    let src = match (&args.ideal, &args.rules) {
        (Some(path), None) => read_file(path)?,
        (None, Some(inline)) => inline.clone(),
        _ => bail!("exactly one of --ideal and --rules is required"),
    };
    let pattern = PatternIdeal::parse(&src)?;

    let actions = [
        args.check.is_some(),
        args.nilpotent.is_some(),
        args.basis,
        args.quotient_property.is_some(),
    ]
    .iter()
    .filter(|&&b| b)
    .count();
    if actions != 1 {
        bail!("pick exactly one of --check, --nilpotent, --basis, --quotient-property");
    }

    if let Some(spec) = &args.check {
        let parts: Vec<&str> = spec.split('*').map(str::trim).collect();
        let (u, v) = match parts.as_slice() {
            [u, "?", v] => (*u, *v),
            _ => bail!("--check wants the shape \"u * ? * v\", got `{spec}`"),
        };
        let ue = pattern.word(u)?;
        let ve = pattern.word(v)?;
        let report = check_orthogonality(&ue, &ve, g.max_middle)?;
        let all_zero = report.all_zero();
        let witness = report
            .witness
            .as_ref()
            .map(|w| json!({"middle": w.middle, "product": w.product}));
        let text = match &report.witness {
            None => format!(
                "{u} * m * {v} = 0 for every middle word up to length {}\n",
                report.middle_bound
            ),
            Some(w) => format!("{u} * {} * {v} = {}\n", w.middle, w.product),
        };
        emit(
            g.json,
            json!({
                "schema": SCHEMA_VERSION,
                "kind": "wordalg",
                "action": "check",
                "u": u,
                "v": v,
                "middle_bound": report.middle_bound,
                "all_zero": all_zero,
                "witness": witness,
            }),
            text,
        );
        return Ok(if all_zero { 0 } else { 1 });
    }

    if let Some(word) = &args.nilpotent {
        pattern.word(word)?; // validate letters before probing powers
        let nilpotent = pattern.nilpotency_of_word(word, args.power_cap);
        emit(
            g.json,
            json!({
                "schema": SCHEMA_VERSION,
                "kind": "wordalg",
                "action": "nilpotent",
                "word": word,
                "power_cap": args.power_cap,
                "nilpotent": nilpotent,
            }),
            format!(
                "{word} is {}nilpotent (powers up to {})\n",
                if nilpotent { "" } else { "not " },
                args.power_cap
            ),
        );
        return Ok(if nilpotent { 0 } else { 1 });
    }

    if args.basis {
        let basis = pattern.finite_basis(g.max_middle);
        let text = match &basis {
            Some(words) => {
                let shown: Vec<&str> = words
                    .iter()
                    .map(|w| if w.is_empty() { "1" } else { w.as_str() })
                    .collect();
                format!("{} normal words: {}\n", words.len(), shown.join(" "))
            }
            None => format!("no finite basis up to length {}\n", g.max_middle),
        };
        let found = basis.is_some();
        emit(
            g.json,
            json!({
                "schema": SCHEMA_VERSION,
                "kind": "wordalg",
                "action": "basis",
                "length_cap": g.max_middle,
                "basis": basis,
            }),
            text,
        );
        return Ok(if found { 0 } else { 1 });
    }

    let property = args
        .quotient_property
        .as_deref()
        .expect("action counting left only this branch");
    let ring = pattern.quotient_ring(g.max_middle, g.order_cap)?;
    let verdict = decide_extended(&ring, property, g)?;
    let holds = verdict.holds;
    emit(
        g.json,
        json!({
            "schema": SCHEMA_VERSION,
            "kind": "wordalg",
            "action": "quotient_property",
            "ring": ring.name(),
            "order": ring.order(),
            "verdict": verdict,
        }),
        format!("{verdict}\n"),
    );
    Ok(if holds { 0 } else { 1 })
}

fn cmd_axioms(g: &GlobalFlags, args: &AxiomsArgs) -> Result<u8> {
    let ring = match (&args.ring, &args.table) {
        (Some(src), None) => build_str(src, &g.caps())?,
        (None, Some(path)) => {
            match parse_table_file(&read_file(path)?) {
                Ok(r) => r,
                // A table that parses but violates a ring law is the
                // "fails" outcome of this command, not an error.
                Err(TableIoError::Ring(e)) => {
                    emit(
                        g.json,
                        json!({
                            "schema": SCHEMA_VERSION,
                            "kind": "axioms",
                            "valid": false,
                            "violation": e.to_string(),
                        }),
                        format!("not a ring: {e}\n"),
                    );
                    return Ok(1);
                }
                Err(e) => return Err(e.into()),
            }
        }
        _ => bail!("exactly one of --ring and --table is required"),
    };

    let summary = json!({
        "schema": SCHEMA_VERSION,
        "kind": "axioms",
        "valid": true,
        "name": ring.name(),
        "order": ring.order(),
        "zero": ring.elem_name(ring.zero()),
        "one": ring.elem_name(ring.one()),
        "characteristic": ring.characteristic(),
        "commutative": ring.is_commutative(),
        "nilpotents": ring.nilpotents().len(),
        "idempotents": ring.idempotents().len(),
        "units": ring.units().len(),
    });
    let text = format!(
        "{}: order {}, zero {}, one {}, characteristic {}\n{}; {} nilpotents, {} idempotents, {} units\n",
        ring.name(),
        ring.order(),
        ring.elem_name(ring.zero()),
        ring.elem_name(ring.one()),
        ring.characteristic(),
        if ring.is_commutative() {
            "commutative"
        } else {
            "noncommutative"
        },
        ring.nilpotents().len(),
        ring.idempotents().len(),
        ring.units().len(),
    );
    emit(g.json, summary, text);
    Ok(0)
}
