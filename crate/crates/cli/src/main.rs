use std::path::Path;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use serde_json::json;

use hallbound_core::corpus::{parse_group, standard_corpus};
use hallbound_core::groupfile::parse_group_file;
use hallbound_core::hall::{find_hall_subgroup, HallStatus};
use hallbound_core::length::kernel_series;
use hallbound_core::limits::DEFAULT_ENUMERATION_CAP;
use hallbound_core::radicals::{fitting_height, generalized_fitting_height, p_length};
use hallbound_core::structure::{is_p_soluble, is_soluble};
use hallbound_core::verify::{build_report, run_suite, InvariantReport, ReportOptions};
use hallbound_core::{PermGroup, PrimeSet};

const OK: u8 = 0;
const CHECK_FAILED: u8 = 1;
const ERROR: u8 = 2;
const SKIPPED: u8 = 3;

/// Non-p-soluble length and Hall subgroup checks on permutation groups.
#[derive(Parser)]
#[command(name = "hallbound", version)]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Order of a group.
    Order { spec: String },
    /// λ_p, kernel series and Fitting-type heights.
    Invariants {
        spec: String,
        #[arg(long)]
        p: u64,
    },
    /// Search for a Hall π-subgroup.
    Hall {
        spec: String,
        #[arg(long)]
        pi: PrimeSet,
        /// Run the exhaustive phase even for insoluble groups.
        #[arg(long)]
        exhaustive: bool,
    },
    /// Check λ_p(G) <= h*(H) for a Hall π-subgroup H.
    Verify {
        spec: String,
        #[arg(long)]
        pi: PrimeSet,
        #[arg(long)]
        p: u64,
        /// Also check λ_p(G) <= 2 l_2(H) + 1.
        #[arg(long)]
        corollary: bool,
        /// Also check F(H) <= K_p(G) and F*(H) <= K_p(G).
        #[arg(long)]
        chain: bool,
    },
    /// Run every check on every valid instance of the standard corpus.
    Suite {
        /// Skip groups larger than this.
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        scale: u128,
    },
}

/// A corpus name, or a path to a group file.
fn load(spec: &str) -> Result<PermGroup> {
    let path = Path::new(spec);
    if path.is_file() {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {spec}"))?;
        return parse_group_file(&text).with_context(|| format!("parsing {spec}"));
    }
    parse_group(spec).with_context(|| format!("`{spec}` is neither a group file nor a group name"))
}

fn emit(json: bool, value: &impl serde::Serialize, text: impl FnOnce() -> String) {
    if json {
        println!("{}", serde_json::to_string_pretty(value).expect("json values serialize"));
    } else {
        println!("{}", text());
    }
}

fn order(spec: &str, json: bool) -> Result<u8> {
    let g = load(spec)?;
    emit(json, &json!({ "group": spec, "order": g.order(), "degree": g.degree() }), || {
        g.order().to_string()
    });
    Ok(OK)
}

fn invariants(spec: &str, p: u64, json: bool) -> Result<u8> {
    let g = load(spec)?;
    let ks = kernel_series(&g, p)?;
    let p_sol = is_p_soluble(&g, p)?;
    let h_star = generalized_fitting_height(&g)?.height;
    let fit = if is_soluble(&g) { Some(fitting_height(&g)?.height) } else { None };
    let lp = if p_sol { Some(p_length(&g, p)?.height) } else { None };
    let value = json!({
        "group": { "name": spec, "order": g.order(), "degree": g.degree() },
        "p": p,
        "lambda_p": ks.lambda,
        "kernel_orders": ks.kernel_orders(),
        "socle_factor_counts": ks.socle_factor_counts,
        "p_soluble": p_sol,
        "h_star": h_star,
        "fitting_height": fit,
        "p_length": lp,
    });
    emit(json, &value, || {
        let mut out = format!("{spec}: order {}, degree {}\n", g.order(), g.degree());
        out += &format!("λ_{p} = {}\n", ks.lambda);
        out += &format!("kernel orders: {:?}\n", ks.kernel_orders());
        out += &format!("{p}-soluble: {p_sol}\n");
        out += &format!("h* = {h_star}");
        if let Some(h) = fit {
            out += &format!("\nfitting height = {h}");
        }
        if let Some(l) = lp {
            out += &format!("\nl_{p} = {l}");
        }
        out
    });
    Ok(OK)
}

fn hall(spec: &str, pi: &PrimeSet, exhaustive: bool, json: bool) -> Result<u8> {
    let g = load(spec)?;
    let r = find_hall_subgroup(&g, pi, exhaustive)?;
    let order = r.witness.as_ref().map(|h| h.order());
    let value = json!({
        "group": { "name": spec, "order": g.order(), "degree": g.degree() },
        "pi": pi,
        "status": r.status,
        "order": order,
        "budget": r.budget,
        "note": r.note,
    });
    emit(json, &value, || {
        let mut out = format!("{spec}, π = {pi}: ");
        out += match r.status {
            HallStatus::Found => "found",
            HallStatus::ProvenAbsent => "proven absent",
            HallStatus::Unknown => "unknown",
        };
        if let Some(o) = order {
            out += &format!(", |H| = {o}");
        }
        if let Some(n) = &r.note {
            out += &format!(" ({n})");
        }
        out
    });
    Ok(if r.status == HallStatus::Unknown { SKIPPED } else { OK })
}

fn flag(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "holds",
        Some(false) => "FAILS",
        None => "skipped",
    }
}

fn report_text(r: &InvariantReport) -> String {
    let mut out = format!(
        "{} (order {}), π = {}, p = {}\n",
        r.group.name, r.group.order, r.pi, r.p
    );
    out += &format!("λ_p(G) = {}, kernel orders {:?}\n", r.lambda_p, r.kernel_orders);
    match r.hall.order {
        Some(o) => out += &format!("Hall subgroup H of order {o}\n"),
        None => out += &format!("Hall subgroup: {:?}\n", r.hall.status),
    }
    if let Some(h) = r.h_star_h {
        out += &format!("theorem: {} <= h*(H) = {h}: {}\n", r.lambda_p, flag(r.checks.theorem));
    } else {
        out += &format!("theorem: {}\n", flag(r.checks.theorem));
    }
    if let Some(l2) = r.l2_h {
        out += &format!(
            "corollary: {} <= 2 l_2(H) + 1 = {}: {}\n",
            r.lambda_p,
            2 * l2 + 1,
            flag(r.checks.corollary)
        );
    }
    if r.checks.lemma_f.is_some() || r.checks.proposition.is_some() {
        out += &format!("F(H) <= K_p(G): {}\n", flag(r.checks.lemma_f));
        out += &format!("F*(H) <= K_p(G): {}\n", flag(r.checks.proposition));
    }
    out += &format!(
        "λ_p(K_p(G)) = {} <= 1: {}",
        r.kernel.lambda,
        flag(r.checks.kernel_lemma)
    );
    if let Some(why) = &r.skipped_reason {
        out += &format!("\nskipped: {why}");
    }
    out
}

fn report_code(r: &InvariantReport) -> u8 {
    if r.checks.any_failed() {
        CHECK_FAILED
    } else if r.checks.theorem.is_none() {
        SKIPPED
    } else {
        OK
    }
}

fn verify(spec: &str, pi: &PrimeSet, p: u64, opts: ReportOptions, json: bool) -> Result<u8> {
    let g = load(spec)?;
    let r = build_report(spec, &g, pi, p, opts)?;
    emit(json, &r, || report_text(&r));
    Ok(report_code(&r))
}

fn suite(scale: u128, json: bool) -> Result<u8> {
    let entries = run_suite(&standard_corpus(), scale)?;
    let (mut held, mut failed, mut errors) = (0, 0, 0);
    let mut rows = Vec::new();
    for e in &entries {
        let (code, row) = match &e.outcome {
            Ok(r) => (report_code(r), serde_json::to_value(r)?),
            Err(msg) => (ERROR, json!({ "group": { "name": e.name }, "pi": e.pi, "p": e.p, "error": msg })),
        };
        match code {
            OK => held += 1,
            CHECK_FAILED => failed += 1,
            ERROR => errors += 1,
            _ => {}
        }
        if !json {
            let status = match (&e.outcome, code) {
                (Err(msg), _) => format!("error: {msg}"),
                (Ok(_), CHECK_FAILED) => "FAIL".into(),
                (Ok(r), SKIPPED) => format!("skipped ({})", r.skipped_reason.as_deref().unwrap_or("no Hall subgroup")),
                (Ok(r), _) => format!("ok (λ = {}, h*(H) = {})", r.lambda_p, r.h_star_h.unwrap_or(0)),
            };
            println!("{:<12} π = {:<9} p = {:<3} {status}", e.name, e.pi.to_string(), e.p);
        }
        rows.push(row);
    }
    let skipped = entries.len() - held - failed - errors;
    if json {
        let value = json!({ "instances": rows, "held": held, "failed": failed, "skipped": skipped, "errors": errors });
        println!("{}", serde_json::to_string_pretty(&value)?);
    } else {
        println!("{held} held, {failed} failed, {skipped} skipped, {errors} errors");
    }
    Ok(if failed > 0 {
        CHECK_FAILED
    } else if errors > 0 {
        ERROR
    } else if held == 0 {
        SKIPPED
    } else {
        OK
    })
}

fn run(cli: Cli) -> Result<u8> {
    let json = cli.json;
    match cli.command {
        Command::Order { spec } => order(&spec, json),
        Command::Invariants { spec, p } => invariants(&spec, p, json),
        Command::Hall { spec, pi, exhaustive } => hall(&spec, &pi, exhaustive, json),
        Command::Verify { spec, pi, p, corollary, chain } => {
            verify(&spec, &pi, p, ReportOptions { corollary, chain }, json)
        }
        Command::Suite { scale } => suite(scale, json),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(ERROR)
        }
    }
}
