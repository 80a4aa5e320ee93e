//! Command-line front end: GIM/diagram generation and relation verification.
//!
//! Exit codes: 0 success, 1 at least one counterexample, 2 invalid
//! configuration (including non-simply-laced families for Fock-backed
//! verification), 3 GIM axiom failure on user-supplied input, 4 verification
//! budget exceeded.

use clap::{Args, Parser, Subcommand};
use ntoroidal::gim::{check_gim_axioms, dynkin_diagram, nfold_gim, render_dot, GimMatrix};
use ntoroidal::relcheck::catalog::{catalog_simplified, catalog_toroidal};
use ntoroidal::relcheck::expr::{EvalCtx, RelationSpec};
use ntoroidal::relcheck::gimcat::catalog_gim;
use ntoroidal::relcheck::tower::tower_specs;
use ntoroidal::relcheck::verify::{verify_catalog, VerifyOptions, VerifyReport};
use ntoroidal::rootdata::{affinize, cartan, AffineDatum, Family};
use ntoroidal::vertex::Backend;
use serde::Deserialize;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "ntoroidal", version, about = "Exact relation checking for quantum N-toroidal algebras: GIM generation and level-one Fock verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a GIM of N-fold affinization (or validate a user-supplied one)
    Gim(GimArgs),
    /// Verify relation catalogs exactly on a truncated Fock basis
    Verify(VerifyArgs),
    /// Run the simplified-generator tower three-way agreement checks
    Tower(TowerArgs),
}

#[derive(Args, Clone, Default)]
struct CommonArgs {
    /// Cartan family: A, B, C, D, E, F or G
    #[arg(long)]
    family: Option<String>,
    /// rank of the finite part
    #[arg(long)]
    rank: Option<usize>,
    /// N of the N-fold affinization (N − 1 toroidal directions)
    #[arg(long)]
    nfold: Option<usize>,
    /// JSON config file; explicit flags win over its values
    #[arg(long)]
    config: Option<String>,
}

#[derive(Args)]
struct GimArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// output format: json, dot or text
    #[arg(long, default_value = "json")]
    format: String,
    /// validate a GIM from this JSON file instead of generating one
    #[arg(long)]
    input: Option<String>,
    /// write to this file instead of stdout
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// catalogs to run: toroidal, simplified, gim, or all
    #[arg(long, default_value = "toroidal")]
    catalog: String,
    /// comma-separated relation tags or ids, or "all"
    #[arg(long, default_value = "all")]
    relations: String,
    /// energy bound D of the truncated basis
    #[arg(long)]
    degree: Option<u32>,
    /// |β_i| bound B of the truncated basis
    #[arg(long)]
    beta: Option<i32>,
    /// mode window "lo,hi"
    #[arg(long)]
    window: Option<String>,
    /// rayon worker threads (0 = default)
    #[arg(long)]
    parallelism: Option<usize>,
    /// maximum admissible basis size
    #[arg(long)]
    budget_cap: Option<usize>,
    /// output format: json or text
    #[arg(long, default_value = "text")]
    format: String,
    /// write to this file instead of stdout
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct TowerArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// maximal reconstructed mode k (0–3)
    #[arg(long, default_value_t = 3)]
    degree: i64,
    /// energy bound D of the truncated basis
    #[arg(long)]
    degree_bound: Option<u32>,
    /// output format: json or text
    #[arg(long, default_value = "text")]
    format: String,
}

/// File-backed defaults; any explicit flag wins.
#[derive(Deserialize, Default)]
#[serde(rename_all = "camelCase", default)]
struct RunConfig {
    family: Option<String>,
    rank: Option<usize>,
    nfold: Option<usize>,
    degree_bound: Option<u32>,
    beta_bound: Option<i32>,
    mode_window: Option<(i64, i64)>,
    relation_filter: Option<String>,
    output_format: Option<String>,
    parallelism: Option<usize>,
    budget_cap: Option<usize>,
}

fn fail2(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn load_config(path: &Option<String>) -> Result<RunConfig, String> {
    match path {
        None => Ok(RunConfig::default()),
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| format!("cannot read {p}: {e}"))?;
            serde_json::from_str(&text).map_err(|e| format!("bad config {p}: {e}"))
        }
    }
}

fn resolve_datum(common: &CommonArgs, cfg: &RunConfig) -> Result<(AffineDatum, usize), String> {
    let family = common
        .family
        .clone()
        .or_else(|| cfg.family.clone())
        .ok_or("missing --family")?;
    let rank = common.rank.or(cfg.rank).ok_or("missing --rank")?;
    let nfold = common.nfold.or(cfg.nfold).unwrap_or(2);
    if nfold < 2 {
        return Err(format!("nfold must be >= 2, got {nfold}"));
    }
    let family: Family = family.parse().map_err(|e| format!("{e:?}"))?;
    let c = cartan(family, rank).map_err(|e| format!("{e:?}"))?;
    Ok((affinize(&c), nfold))
}

fn emit(out: &Option<String>, text: &str) -> Result<(), String> {
    match out {
        None => {
            println!("{text}");
            Ok(())
        }
        Some(p) => std::fs::write(p, format!("{text}\n")).map_err(|e| format!("write {p}: {e}")),
    }
}

fn cmd_gim(args: &GimArgs) -> ExitCode {
    let cfg = match load_config(&args.common.config) {
        Ok(c) => c,
        Err(e) => return fail2(&e),
    };
    let matrix: GimMatrix = if let Some(input) = &args.input {
        let text = match std::fs::read_to_string(input) {
            Ok(t) => t,
            Err(e) => return fail2(&format!("cannot read {input}: {e}")),
        };
        let m: GimMatrix = match serde_json::from_str(&text) {
            Ok(m) => m,
            Err(e) => return fail2(&format!("bad GIM JSON: {e}")),
        };
        let report = check_gim_axioms(&m);
        if !report.is_valid() {
            for v in &report.violations {
                eprintln!("axiom {} violated at (i={}, j={}): {}", v.axiom, v.i, v.j, v.detail);
            }
            return ExitCode::from(3);
        }
        m
    } else {
        let (ad, nfold) = match resolve_datum(&args.common, &cfg) {
            Ok(x) => x,
            Err(e) => return fail2(&e),
        };
        match nfold_gim(&ad, nfold) {
            Ok(m) => m,
            Err(e) => return fail2(&format!("{e}")),
        }
    };
    let format = if args.format == "json" {
        cfg.output_format.clone().unwrap_or_else(|| "json".into())
    } else {
        args.format.clone()
    };
    let rendered = match format.as_str() {
        "json" => serde_json::to_string_pretty(&matrix).unwrap(),
        "dot" => match dynkin_diagram(&matrix) {
            Ok(g) => render_dot(&g),
            Err(e) => return fail2(&format!("{e}")),
        },
        "text" => {
            let mut s = format!("index set: {:?}\n", matrix.index_set);
            for row in &matrix.entries {
                s.push_str(&format!("{row:>3?}\n"));
            }
            s.push_str(&format!("symmetrizer: {:?}", matrix.symmetrizer));
            s
        }
        other => return fail2(&format!("unknown format {other}")),
    };
    match emit(&args.out, &rendered) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail2(&e),
    }
}

fn filter_specs(specs: Vec<RelationSpec>, filter: &str) -> Vec<RelationSpec> {
    if filter == "all" {
        return specs;
    }
    let wanted: Vec<&str> = filter.split(',').map(str::trim).collect();
    specs
        .into_iter()
        .filter(|s| wanted.iter().any(|w| *w == s.tag || *w == s.id))
        .collect()
}

fn report_outcome(
    reports: &[VerifyReport],
    format: &str,
    out: &Option<String>,
) -> ExitCode {
    let rendered = if format == "json" {
        serde_json::to_string_pretty(reports).unwrap()
    } else {
        let mut s = String::new();
        for r in reports {
            s.push_str(&r.one_line());
            s.push('\n');
        }
        let passed = reports.iter().filter(|r| r.pass).count();
        s.push_str(&format!("{passed}/{} passed", reports.len()));
        s
    };
    if let Err(e) = emit(out, &rendered) {
        return fail2(&e);
    }
    if reports.iter().any(|r| r.budget_exceeded) {
        ExitCode::from(4)
    } else if reports.iter().any(|r| !r.pass) {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn with_pool<T: Send>(parallelism: usize, f: impl FnOnce() -> T + Send) -> T {
    if parallelism == 0 {
        f()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(parallelism)
            .build()
            .expect("thread pool")
            .install(f)
    }
}

fn cmd_verify(args: &VerifyArgs) -> ExitCode {
    let cfg = match load_config(&args.common.config) {
        Ok(c) => c,
        Err(e) => return fail2(&e),
    };
    let (ad, nfold) = match resolve_datum(&args.common, &cfg) {
        Ok(x) => x,
        Err(e) => return fail2(&e),
    };
    let window = match args
        .window
        .clone()
        .or_else(|| cfg.mode_window.map(|(a, b)| format!("{a},{b}")))
    {
        None => (-2, 2),
        Some(w) => {
            let parts: Vec<_> = w.split(',').collect();
            match (parts.first().and_then(|p| p.trim().parse().ok()), parts.get(1).and_then(|p| p.trim().parse().ok())) {
                (Some(lo), Some(hi)) if parts.len() == 2 && lo <= hi => (lo, hi),
                _ => return fail2(&format!("bad window '{w}', expected 'lo,hi'")),
            }
        }
    };
    let opts = VerifyOptions {
        degree_bound: args.degree.or(cfg.degree_bound).unwrap_or(2),
        beta_bound: args.beta.or(cfg.beta_bound).unwrap_or(1),
        budget_cap: args.budget_cap.or(cfg.budget_cap).unwrap_or(2_000_000),
    };
    let mut specs: Vec<RelationSpec> = Vec::new();
    let wanted = args.catalog.as_str();
    if !["toroidal", "simplified", "gim", "all"].contains(&wanted) {
        return fail2(&format!("unknown catalog {wanted}"));
    }
    let collect = |r: Result<Vec<RelationSpec>, _>| -> Result<Vec<RelationSpec>, ExitCode> {
        r.map_err(|e: ntoroidal::relcheck::catalog::CatalogError| fail2(&format!("{e}")))
    };
    if wanted == "toroidal" || wanted == "all" {
        match collect(catalog_toroidal(&ad, nfold, window)) {
            Ok(s) => specs.extend(s),
            Err(c) => return c,
        }
    }
    if wanted == "simplified" || wanted == "all" {
        match collect(catalog_simplified(&ad, nfold)) {
            Ok(s) => specs.extend(s),
            Err(c) => return c,
        }
    }
    if wanted == "gim" || wanted == "all" {
        match collect(catalog_gim(&ad, nfold)) {
            Ok(s) => specs.extend(s),
            Err(c) => return c,
        }
    }
    let filter = if args.relations == "all" {
        cfg.relation_filter.clone().unwrap_or_else(|| "all".into())
    } else {
        args.relations.clone()
    };
    let specs = filter_specs(specs, &filter);
    if specs.is_empty() {
        return fail2("relation filter matched nothing");
    }
    let parallelism = args.parallelism.or(cfg.parallelism).unwrap_or(0);
    let backend = Backend::new(ad, nfold);
    let reports = with_pool(parallelism, || {
        let ctx = EvalCtx::new();
        verify_catalog(&backend, &ctx, &specs, &opts)
    });
    let format = if args.format == "text" {
        cfg.output_format.unwrap_or_else(|| "text".into())
    } else {
        args.format.clone()
    };
    report_outcome(&reports, &format, &args.out)
}

fn cmd_tower(args: &TowerArgs) -> ExitCode {
    let cfg = match load_config(&args.common.config) {
        Ok(c) => c,
        Err(e) => return fail2(&e),
    };
    let (ad, nfold) = match resolve_datum(&args.common, &cfg) {
        Ok(x) => x,
        Err(e) => return fail2(&e),
    };
    if !(0..=3).contains(&args.degree) {
        return fail2("tower degree must be between 0 and 3");
    }
    let specs = if args.degree == 0 {
        Vec::new()
    } else {
        match tower_specs(&ad, nfold, args.degree) {
            Ok(s) => s,
            Err(e) => return fail2(&format!("{e}")),
        }
    };
    if specs.is_empty() {
        println!("trivial pass (no tower identities at degree {})", args.degree);
        return ExitCode::SUCCESS;
    }
    let opts = VerifyOptions {
        degree_bound: args.degree_bound.or(cfg.degree_bound).unwrap_or(2),
        ..VerifyOptions::default()
    };
    let backend = Backend::new(ad, nfold);
    let ctx = EvalCtx::new();
    let reports = verify_catalog(&backend, &ctx, &specs, &opts);
    report_outcome(&reports, &args.format, &None)
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Gim(args) => cmd_gim(&args),
        Command::Verify(args) => cmd_verify(&args),
        Command::Tower(args) => cmd_tower(&args),
    }
}
