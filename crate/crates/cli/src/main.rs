// SPDX-License-Identifier: Apache-2.0

//! `lieprime`: primitive divisors, torus catalogs, prime graphs and the claim
//! verifier from the command line.
//!
//! Exit status: 0 on success, 1 when `verify` reports a failed claim, 2 on
//! usage or domain errors. With `--json` exactly one JSON document goes to
//! stdout; diagnostics always go to stderr. Big integers are written as
//! decimal strings unless `--raw-numbers` is given.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lieprime_core::catalog::{eval_torus, torus_catalog, validate, FieldParam, Group, PiMembership};
use lieprime_core::cyclo::{
    cyclotomic, greatest_primitive_divisor, primitive_divisors, zsigmondy_exceptional,
};
use lieprime_core::gkgraph::{build_graph, independence_number, local_coclique, CocliqueResult, GraphJson, GraphMode, PrimeGraph};
use lieprime_core::numtheory::{factorize, mult_order, SignChoice};
use lieprime_core::verifier::{emit_report, exit_code, Registry, Report, ReportFormat, VerifyConfig};
use lieprime_core::Exec;
use num_bigint::BigInt;
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "lieprime", version, about = "Prime graphs and torus orders of E7(q) and E8(q)")]
struct Cli {
    /// Emit one JSON document on stdout.
    #[arg(long, global = true)]
    json: bool,
    /// In JSON output, write big integers as JSON numbers instead of strings.
    #[arg(long, global = true)]
    raw_numbers: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Multiplicative order e(r, a).
    #[command(allow_negative_numbers = true)]
    Order { r: BigInt, a: BigInt },
    /// Prime factorization.
    #[command(allow_negative_numbers = true)]
    Factor { n: BigInt },
    /// Cyclotomic polynomial Φ_m, or its value at a.
    #[command(allow_negative_numbers = true)]
    Cyclo { m: u64, a: Option<BigInt> },
    /// Greatest primitive divisor k_i(a).
    #[command(allow_negative_numbers = true)]
    Kprim { a: BigInt, i: u64 },
    /// Primitive prime divisors R_i(a).
    #[command(allow_negative_numbers = true)]
    Rset { a: BigInt, i: u64 },
    /// Whether a^i − 1 has a primitive prime divisor.
    #[command(allow_negative_numbers = true)]
    Zsig { a: BigInt, i: u64 },
    /// Maximal torus orders, or the catalog validation report.
    Tori(ToriArgs),
    /// Whether r divides |G(q)|.
    Pi { group: Group, q: BigInt, r: BigInt },
    /// The prime graph.
    Graph {
        group: Group,
        q: BigInt,
        #[arg(long, default_value = "with-two")]
        mode: GraphMode,
        /// Graphviz output.
        #[arg(long)]
        dot: bool,
    },
    /// Exact maximum coclique, optionally through a given vertex.
    Coclique {
        group: Group,
        q: BigInt,
        #[arg(long)]
        anchor: Option<BigInt>,
        #[arg(long, default_value = "with-two")]
        mode: GraphMode,
    },
    /// Run the claim registry.
    Verify {
        /// Claim id or leading id segments, e.g. L10.prod or LE8.
        #[arg(long, default_value = "")]
        filter: String,
    },
    /// Claim registry queries.
    Claims {
        #[command(subcommand)]
        what: ClaimsCommand,
    },
    /// Re-read a graph written by `graph --json` and compute its cocliques.
    CheckGraph {
        file: PathBuf,
        #[arg(long)]
        anchor: Option<BigInt>,
    },
}

#[derive(Args, Debug)]
struct ToriArgs {
    group: Group,
    #[arg(required_unless_present = "validate")]
    q: Option<BigInt>,
    /// Sign; defaults to the ε with q ≡ −ε (mod 4) for odd q.
    #[arg(long, allow_hyphen_values = true)]
    eps: Option<SignChoice>,
    /// Print the validation report instead of orders.
    #[arg(long)]
    validate: bool,
}

#[derive(Subcommand, Debug)]
enum ClaimsCommand {
    /// Every claim id with its description.
    List,
}

struct Out {
    json: bool,
    raw: bool,
}

impl Out {
    fn emit(&self, doc: Value, text: impl FnOnce() -> String) {
        if self.json {
            let doc = if self.raw { raw_numbers(doc) } else { doc };
            put(&format!("{}\n", serde_json::to_string_pretty(&doc).expect("value serializes")));
        } else {
            let mut t = text();
            if !t.ends_with('\n') {
                t.push('\n');
            }
            put(&t);
        }
    }
}

/// Writes to stdout; a closed pipe is not an error.
fn put(s: &str) {
    let _ = io::stdout().lock().write_all(s.as_bytes());
}

/// Turns every decimal-integer string into a JSON number.
fn raw_numbers(v: Value) -> Value {
    match v {
        Value::String(s) if is_integer(&s) => s.parse::<serde_json::Number>().map(Value::Number).unwrap_or(Value::String(s)),
        Value::Array(a) => Value::Array(a.into_iter().map(raw_numbers).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, raw_numbers(v))).collect()),
        other => other,
    }
}

fn is_integer(s: &str) -> bool {
    let digits = s.strip_prefix('-').unwrap_or(s);
    !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
}

fn s(n: &BigInt) -> Value {
    Value::String(n.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = Out {
        json: cli.json,
        raw: cli.raw_numbers,
    };
    match run(cli.command, &out) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn sign_for(q: &BigInt, eps: Option<SignChoice>) -> Result<SignChoice, String> {
    eps.or_else(|| SignChoice::canonical_for(q))
        .ok_or_else(|| format!("q = {q} is even; pass --eps + or --eps -"))
}

fn run(command: Command, out: &Out) -> Result<u8, String> {
    match command {
        Command::Order { r, a } => {
            let e = mult_order(&r, &a).map_err(|e| e.to_string())?;
            out.emit(json!({ "r": s(&r), "a": s(&a), "order": s(&e) }), || e.to_string());
        }
        Command::Factor { n } => {
            let f = factorize(&n).map_err(|e| e.to_string())?;
            let factors: Vec<Value> = f
                .factors()
                .iter()
                .map(|(p, e)| json!({ "prime": s(p), "exponent": e }))
                .collect();
            out.emit(json!({ "n": s(&n), "factors": factors }), || {
                let parts: Vec<String> = f
                    .factors()
                    .iter()
                    .map(|(p, &e)| if e == 1 { p.to_string() } else { format!("{p}^{e}") })
                    .collect();
                let sign = if n.sign() == num_bigint::Sign::Minus { "-1 · " } else { "" };
                format!("{n} = {sign}{}", if parts.is_empty() { "1".into() } else { parts.join(" · ") })
            });
        }
        Command::Cyclo { m, a } => {
            if m == 0 {
                return Err("index must be positive".into());
            }
            let phi = cyclotomic(m);
            let value = a.as_ref().map(|a| phi.eval(a));
            let doc = json!({
                "m": m,
                "degree": phi.degree(),
                "coefficients": phi.coefficients().iter().map(s).collect::<Vec<_>>(),
                "a": a.as_ref().map(s),
                "value": value.as_ref().map(s),
            });
            out.emit(doc, || match &value {
                Some(v) => v.to_string(),
                None => phi.poly().to_string(),
            });
        }
        Command::Kprim { a, i } => {
            let k = greatest_primitive_divisor(&a, i).map_err(|e| e.to_string())?;
            out.emit(json!({ "a": s(&a), "i": i, "k": s(&k) }), || k.to_string());
        }
        Command::Rset { a, i } => {
            let r = primitive_divisors(&a, i).map_err(|e| e.to_string())?;
            let primes: Vec<String> = r.iter().map(|p| p.to_string()).collect();
            out.emit(json!({ "a": s(&a), "i": i, "primes": primes }), || {
                if primes.is_empty() {
                    "(empty)".into()
                } else {
                    primes.join(" ")
                }
            });
        }
        Command::Zsig { a, i } => {
            let r = primitive_divisors(&a, i).map_err(|e| e.to_string())?;
            let listed = zsigmondy_exceptional(&a, i);
            let witness = r.iter().next().cloned();
            out.emit(
                json!({ "a": s(&a), "i": i, "exists": witness.is_some(), "witness": witness.as_ref().map(s), "listed_exception": listed }),
                || match &witness {
                    Some(w) => format!("yes: {w}"),
                    None => format!("no{}", if listed { " (listed exception)" } else { "" }),
                },
            );
        }
        Command::Tori(args) => tori(args, out)?,
        Command::Pi { group, q, r } => {
            let field = FieldParam::new(&q).map_err(|e| e.to_string())?;
            let m = PiMembership::new(group, field);
            let inside = m.contains(&r).map_err(|e| e.to_string())?;
            let e = if r == m.field().p { None } else { mult_order(&r, &q).ok() };
            out.emit(
                json!({ "group": group, "q": s(&q), "r": s(&r), "in_pi": inside, "order": e.as_ref().map(s) }),
                || inside.to_string(),
            );
        }
        Command::Graph { group, q, mode, dot } => {
            if dot && out.json {
                return Err("--dot and --json are exclusive".into());
            }
            let g = build_graph(group, &q, mode).map_err(|e| e.to_string())?;
            for w in g.warnings() {
                eprintln!("warning: {w}");
            }
            if dot {
                put(&g.to_dot());
            } else {
                let doc = serde_json::to_value(g.to_json()).map_err(|e| e.to_string())?;
                out.emit(doc, || graph_text(&g));
            }
        }
        Command::Coclique { group, q, anchor, mode } => {
            let g = build_graph(group, &q, mode).map_err(|e| e.to_string())?;
            cocliques(&g, anchor, out)?;
        }
        Command::CheckGraph { file, anchor } => {
            let text = fs::read_to_string(&file).map_err(|e| format!("{}: {e}", file.display()))?;
            let doc: GraphJson = serde_json::from_str(&text).map_err(|e| format!("{}: {e}", file.display()))?;
            let g = PrimeGraph::from_json(&doc).map_err(|e| e.to_string())?;
            cocliques(&g, anchor, out)?;
        }
        Command::Verify { filter } => {
            let registry = Registry::standard(VerifyConfig::default());
            let records = registry.run(&filter, Exec::default());
            let timestamp = chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true);
            if out.json {
                let doc = serde_json::to_value(Report::new(records.clone(), timestamp.clone())).map_err(|e| e.to_string())?;
                out.emit(doc, String::new);
            } else {
                put(&emit_report(&records, ReportFormat::Text, &timestamp));
            }
            return Ok(exit_code(&records) as u8);
        }
        Command::Claims { what: ClaimsCommand::List } => {
            let registry = Registry::standard(VerifyConfig::default());
            let items: Vec<Value> = registry
                .claims()
                .iter()
                .map(|c| json!({ "id": c.id, "paper_ref": c.paper_ref, "quote": c.quote, "description": c.description }))
                .collect();
            out.emit(Value::Array(items), || {
                let width = registry.claims().iter().map(|c| c.id.len()).max().unwrap_or(0);
                registry
                    .claims()
                    .iter()
                    .map(|c| format!("{:<width$}  {}\n", c.id, c.description))
                    .collect()
            });
        }
    }
    Ok(0)
}

fn tori(args: ToriArgs, out: &Out) -> Result<(), String> {
    if args.validate {
        let report = validate(args.group);
        let doc = serde_json::to_value(&report).map_err(|e| e.to_string())?;
        out.emit(doc, || {
            let mut t = format!(
                "{}: {} rows, {} valid, {} flagged, {} display mismatches over {} samples\n",
                report.group,
                report.total,
                report.valid,
                report.flagged.len(),
                report.display_mismatches.len(),
                report.samples
            );
            for f in &report.flagged {
                t.push_str(&format!("flagged {}: {}\n", f.row_id, f.reasons.join("; ")));
            }
            t
        });
        return Ok(());
    }
    let q = args.q.expect("required unless --validate");
    FieldParam::new(&q).map_err(|e| e.to_string())?;
    let eps = sign_for(&q, args.eps)?;
    let mut rows = Vec::new();
    let mut text = String::new();
    for shape in torus_catalog(args.group) {
        if !shape.is_valid() {
            rows.push(json!({ "row_id": shape.row_id, "display": shape.display, "status": "flagged" }));
            text.push_str(&format!("{:<16} flagged\n", shape.row_id));
            continue;
        }
        let orders = eval_torus(shape, &q, eps).map_err(|e| e.to_string())?;
        let order: BigInt = orders.iter().product();
        rows.push(json!({
            "row_id": shape.row_id,
            "display": shape.display,
            "status": "valid",
            "factor_orders": orders.iter().map(s).collect::<Vec<_>>(),
            "order": s(&order),
        }));
        let parts: Vec<String> = orders.iter().map(|o| o.to_string()).collect();
        text.push_str(&format!("{:<16} {} = {order}\n", shape.row_id, parts.join(" × ")));
    }
    out.emit(
        json!({ "group": args.group, "q": s(&q), "eps": eps.to_string(), "rows": rows }),
        || text,
    );
    Ok(())
}

fn cocliques(g: &PrimeGraph, anchor: Option<BigInt>, out: &Out) -> Result<(), String> {
    let res: CocliqueResult = match &anchor {
        Some(r) => local_coclique(g, r).map_err(|e| e.to_string())?,
        None => independence_number(g),
    };
    let doc = serde_json::to_value(&res).map_err(|e| e.to_string())?;
    out.emit(doc, || {
        let w: Vec<String> = res
            .witness
            .iter()
            .zip(&res.classes)
            .map(|(p, c)| format!("{p} (e={c})"))
            .collect();
        format!("size {}\nwitness: {}\n", res.size, w.join(", "))
    });
    Ok(())
}

fn graph_text(g: &PrimeGraph) -> String {
    let edges = g.edges();
    let mut t = format!("{}({}) {}: {} vertices, {} edges\n", g.group, g.q, g.mode, g.len(), edges.len());
    for (i, v) in g.vertices().iter().enumerate() {
        let nbrs: Vec<String> = edges
            .iter()
            .filter_map(|&(a, b)| match (a == i, b == i) {
                (true, _) => Some(g.vertices()[b].prime.to_string()),
                (_, true) => Some(g.vertices()[a].prime.to_string()),
                _ => None,
            })
            .collect();
        t.push_str(&format!("{} (e={}): {}\n", v.prime, v.class, nbrs.join(" ")));
    }
    t
}
