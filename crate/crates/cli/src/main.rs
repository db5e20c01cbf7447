use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;
use serde_json::json;

use symred_core::atlas::{CatalogRecord, Family, Out4Bounds};
use symred_core::design::{
    is_symmetric_admissible, k_lambda_ratio_exceeds_sqrt, max_fixed_points,
    satisfies_focus_condition,
};
use symred_core::diagonal::diagonal_scan;
use symred_core::imprimitive::{imprimitive_family, imprimitive_sweep};
use symred_core::product::{
    enumerate_cases_for_m, enumerate_product_cases, group_triples, m4_special_case,
};
use symred_core::report::{
    emit, expected_product_triples, run_reduce, to_canonical_json, EXPECTED_M4,
};
use symred_core::{ReduceConfig, ReportFormat, SimpleGroupId};

/// Exact-arithmetic reduction checks for flag-transitive symmetric designs.
#[derive(Debug, Parser)]
#[command(name = "symred", version)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalOpts {
    /// Largest group order in the catalog.
    #[arg(
        long,
        global = true,
        env = "SYMRED_CATALOG_BOUND",
        default_value = "10000000"
    )]
    catalog_bound: BigUint,

    /// Largest degree / dimension in the |T| < |Out(T)|^4 scan.
    #[arg(
        long = "out4-nmax",
        global = true,
        env = "SYMRED_OUT4_NMAX",
        default_value_t = 12
    )]
    out4_nmax: u32,

    /// Largest field size in the |T| < |Out(T)|^4 scan.
    #[arg(
        long = "out4-qmax",
        global = true,
        env = "SYMRED_OUT4_QMAX",
        default_value_t = 1024
    )]
    out4_qmax: u64,

    /// Smallest component size in the product enumeration (2 or 5).
    #[arg(long, global = true, env = "SYMRED_V0_MIN", default_value_t = 2, value_parser = parse_v0_min)]
    v0_min: u64,

    /// Output format: json or md.
    #[arg(long, global = true, env = "SYMRED_FORMAT", default_value = "json")]
    format: String,

    /// Sporadic group table replacing the embedded one.
    #[arg(long, global = true, env = "SYMRED_SPORADIC_TABLE")]
    sporadic_table: Option<PathBuf>,
}

impl GlobalOpts {
    fn config(&self) -> ReduceConfig {
        ReduceConfig {
            catalog_bound: self.catalog_bound.clone(),
            out4_n_max: self.out4_nmax,
            out4_q_max: self.out4_qmax,
            v0_min: self.v0_min,
            sporadic_table: self.sporadic_table.clone(),
            ..ReduceConfig::default()
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a symmetric design parameter triple.
    Check { v: u64, k: u64, lambda: u64 },
    /// Simple group orders, outer automorphisms and scans.
    #[command(subcommand)]
    Atlas(AtlasCmd),
    /// Simple diagonal type.
    #[command(subcommand)]
    Diagonal(DiagonalCmd),
    /// Product type.
    #[command(subcommand)]
    Product(ProductCmd),
    /// Point-imprimitive parameter family.
    #[command(subcommand)]
    Imprimitive(ImprimitiveCmd),
    /// Run the whole pipeline and print the report.
    Reduce,
}

#[derive(Debug, Subcommand)]
enum AtlasCmd {
    /// |T| for a group such as A7, L3(4), U4(3), O8+(2), 2F4(2)' or M11.
    Order { group: SimpleGroupId },
    /// |Out(T)|.
    Out { group: SimpleGroupId },
    /// Groups with |T| < |Out(T)|^4 within the scan bounds.
    Scan {
        /// Restrict to these families (e.g. linear, unitary, alternating).
        #[arg(long, value_delimiter = ',')]
        family: Vec<Family>,
        /// Leave out the sporadic groups and the Tits group.
        #[arg(long)]
        no_sporadic: bool,
    },
    /// Every simple group up to the catalog bound.
    Catalog,
}

#[derive(Debug, Subcommand)]
enum DiagonalCmd {
    /// Odd-part test over the catalog for m = 2..6.
    Scan,
}

#[derive(Debug, Subcommand)]
enum ProductCmd {
    /// The five-step enumeration over m in {2,3}.
    Enumerate {
        /// Only this number of factors.
        #[arg(long)]
        m: Option<u32>,
    },
    /// The m = 4 branch for v0 = 5 or 6.
    M4 { v0: u64 },
}

#[derive(Debug, Subcommand)]
enum ImprimitiveCmd {
    /// (λ²(λ+2), λ(λ+1), λ) with its class options.
    Family { lambda: u64 },
    /// Check the family for all 2 ≤ λ ≤ LAMBDA_MAX.
    Sweep {
        #[arg(default_value_t = 10_000)]
        lambda_max: u64,
    },
}

enum Format {
    Json,
    Markdown,
}

struct Output {
    body: String,
    agrees: bool,
}

impl Output {
    fn json(value: &impl serde::Serialize, agrees: bool) -> Result<Self> {
        Ok(Output {
            body: to_canonical_json(value)?,
            agrees,
        })
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match run(&cli) {
        Ok(out) => {
            let mut stdout = io::stdout().lock();
            if stdout
                .write_all(out.body.as_bytes())
                .and_then(|_| stdout.flush())
                .is_err()
            {
                return ExitCode::from(1);
            }
            if out.agrees {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli) -> Result<Output> {
    let format = match cli.global.format.parse::<ReportFormat>()? {
        ReportFormat::Json => Format::Json,
        ReportFormat::Markdown => Format::Markdown,
    };
    let config = cli.global.config();
    let atlas = config.atlas().context("loading the sporadic table")?;

    match &cli.command {
        Command::Check { v, k, lambda } => {
            let adm = is_symmetric_admissible(*v, *k, *lambda);
            let value = json!({
                "v": v, "k": k, "lambda": lambda,
                "admissible": adm.is_admissible(),
                "violations": adm.violations,
                "focus_condition": satisfies_focus_condition(*k, *lambda),
                "ratio_bound": k_lambda_ratio_exceeds_sqrt(*k, *lambda),
                "max_fixed_points": max_fixed_points(*k, *lambda).ok(),
            });
            match format {
                Format::Json => Output::json(&value, true),
                Format::Markdown => {
                    let mut s = format!("# ({v},{k},{lambda})\n\n");
                    writeln!(s, "- admissible: {}", adm.is_admissible())?;
                    for viol in &adm.violations {
                        writeln!(s, "- violation: {viol:?}")?;
                    }
                    writeln!(
                        s,
                        "- k > λ(λ−2): {}",
                        satisfies_focus_condition(*k, *lambda)
                    )?;
                    Ok(Output {
                        body: s,
                        agrees: true,
                    })
                }
            }
        }

        Command::Atlas(AtlasCmd::Order { group }) => {
            let order = atlas.order(group)?;
            simple_value(
                format,
                json!({ "group": group, "order": order.to_string() }),
                || format!("|{group}| = {order}\n"),
            )
        }
        Command::Atlas(AtlasCmd::Out { group }) => {
            let out = atlas.out_order(group)?;
            simple_value(format, json!({ "group": group, "out_order": out }), || {
                format!("|Out({group})| = {out}\n")
            })
        }
        Command::Atlas(AtlasCmd::Catalog) => {
            let records: Vec<CatalogRecord> = atlas
                .enumerate_catalog(&config.catalog_bound)
                .map(|(id, facts)| CatalogRecord::new(&id, &facts))
                .collect();
            match format {
                Format::Json => Output::json(&records, true),
                Format::Markdown => {
                    let mut s = format!(
                        "# Simple groups of order at most {}\n\n",
                        config.catalog_bound
                    );
                    writeln!(s, "| group | order | out |\n|---|---|---|")?;
                    for r in &records {
                        writeln!(s, "| {} | {} | {} |", r.name, r.order, r.out_order)?;
                    }
                    Ok(Output {
                        body: s,
                        agrees: true,
                    })
                }
            }
        }
        Command::Atlas(AtlasCmd::Scan {
            family,
            no_sporadic,
        }) => {
            let mut bounds = Out4Bounds::new(config.out4_n_max, config.out4_q_max, !no_sporadic);
            if !family.is_empty() {
                bounds = bounds.only(family);
            }
            let scan = atlas.out4_scan(&bounds)?;
            let expected: Vec<SimpleGroupId> = if bounds
                .families
                .as_ref()
                .is_none_or(|f| f.contains(&Family::Linear))
            {
                vec!["L3(4)".parse()?]
            } else {
                vec![]
            };
            let agrees = scan.candidate_ids() == expected;
            let mut out = match format {
                Format::Json => Output::json(&scan, agrees)?,
                Format::Markdown => {
                    let mut s = format!(
                        "# |T| < |Out(T)|^4, verified within bounds [n_max={}, q_max={}]\n\n",
                        config.out4_n_max, config.out4_q_max
                    );
                    for c in &scan.candidates {
                        writeln!(
                            s,
                            "- {}: |T| = {}, |Out| = {}",
                            c.group, c.facts.order, c.facts.out_order
                        )?;
                    }
                    writeln!(
                        s,
                        "\n{} groups checked, {} tail checks",
                        scan.groups_checked, scan.tail_checks
                    )?;
                    Output { body: s, agrees }
                }
            };
            if !scan.tail_ok() {
                eprint!("{}", out.body);
                out.body.clear();
                return Err(symred_core::Error::TailCheckFailed(scan.tail_failures).into());
            }
            Ok(out)
        }

        Command::Diagonal(DiagonalCmd::Scan) => {
            let scan = diagonal_scan(&atlas, &config.catalog_bound);
            let agrees = scan.survivors.is_empty() && scan.implication_failures.is_empty();
            if scan.catalog_empty() {
                eprintln!("warning: bounds too small, the catalog is empty");
            }
            match format {
                Format::Json => Output::json(&scan, agrees),
                Format::Markdown => {
                    let mut s = format!(
                        "# Simple diagonal, verified within bounds |T| ≤ {} (assuming λ > 100)\n\n",
                        scan.catalog_bound
                    );
                    writeln!(
                        s,
                        "- groups: {}, pairs (T, m): {}",
                        scan.catalog_size, scan.pairs_checked
                    )?;
                    writeln!(s, "- survivors: {}", scan.survivors.len())?;
                    for c in &scan.survivors {
                        writeln!(s, "  - {} at m={}", c.group, c.m)?;
                    }
                    for n in &scan.near_misses {
                        writeln!(
                            s,
                            "- near miss: {} ({} ≥ {})",
                            n.group, n.order, n.odd_out_fourth
                        )?;
                    }
                    Ok(Output { body: s, agrees })
                }
            }
        }

        Command::Product(ProductCmd::Enumerate { m }) => {
            let triples = match m {
                None => enumerate_product_cases(config.v0_min)?,
                Some(m) if *m >= 2 => group_triples(enumerate_cases_for_m(*m, config.v0_min)),
                Some(m) => anyhow::bail!("m must be at least 2 (got {m})"),
            };
            let found: Vec<_> = triples.iter().map(|t| t.as_tuple()).collect();
            let expected: Vec<_> = match m {
                None => expected_product_triples(config.v0_min),
                Some(2) => expected_product_triples(config.v0_min),
                Some(_) => vec![],
            };
            let agrees = found == expected;
            match format {
                Format::Json => Output::json(&triples, agrees),
                Format::Markdown => {
                    let mut s = format!("# Product type, v0 ≥ {}\n\n", config.v0_min);
                    for t in &triples {
                        writeln!(s, "- ({},{},{})", t.v, t.k, t.lambda)?;
                        for w in &t.witnesses {
                            writeln!(s, "  - m={}, a={}, v0={}", w.m, w.a, w.v0)?;
                        }
                    }
                    Ok(Output { body: s, agrees })
                }
            }
        }
        Command::Product(ProductCmd::M4 { v0 }) => {
            let report = m4_special_case(*v0)?;
            let expected = EXPECTED_M4
                .iter()
                .find(|(x, _)| x == v0)
                .map(|(_, c)| *c)
                .unwrap_or(&[]);
            let agrees = report.candidates == expected && report.all_rejected();
            match format {
                Format::Json => Output::json(&report, agrees),
                Format::Markdown => {
                    let mut s = format!(
                        "# m = 4, v0 = {}\n\n{} < k < {}, k | {}\n\n",
                        report.v0, report.k_lower, report.k_upper, report.stabilizer_order
                    );
                    for r in &report.rejections {
                        writeln!(
                            s,
                            "- k = {}: {} / {} ({})",
                            r.k, r.numerator, r.denominator, r.reason
                        )?;
                    }
                    Ok(Output { body: s, agrees })
                }
            }
        }

        Command::Imprimitive(ImprimitiveCmd::Family { lambda }) => {
            let fam = imprimitive_family(*lambda)?;
            let agrees = fam.is_valid();
            match format {
                Format::Json => Output::json(&fam, agrees),
                Format::Markdown => {
                    let mut s = format!("# ({},{},{})\n\n", fam.v, fam.k, fam.lambda);
                    for o in &fam.options {
                        writeln!(s, "- (c, d, ℓ) = ({}, {}, {})", o.c, o.d, o.l)?;
                    }
                    Ok(Output { body: s, agrees })
                }
            }
        }
        Command::Imprimitive(ImprimitiveCmd::Sweep { lambda_max }) => {
            let sweep = imprimitive_sweep(*lambda_max);
            let agrees = sweep.passed();
            simple_value(format, serde_json::to_value(&sweep)?, || {
                format!(
                    "2 ≤ λ ≤ {}: {} failures\n",
                    sweep.lambda_max,
                    sweep.failures.len()
                )
            })
            .map(|o| Output { agrees, ..o })
        }

        Command::Reduce => {
            let report = run_reduce(&config)?;
            for w in &report.evidence.warnings {
                eprintln!("warning: {w}");
            }
            for d in &report.evidence.discrepancies {
                eprintln!("discrepancy: {d}");
            }
            let fmt = match format {
                Format::Json => ReportFormat::Json,
                Format::Markdown => ReportFormat::Markdown,
            };
            Ok(Output {
                body: emit(&report, fmt)?,
                agrees: report.agrees(),
            })
        }
    }
}

fn parse_v0_min(s: &str) -> std::result::Result<u64, String> {
    match s.parse::<u64>() {
        Ok(v @ (2 | 5)) => Ok(v),
        _ => Err(format!("expected 2 or 5, got {s:?}")),
    }
}

fn simple_value(
    format: Format,
    value: serde_json::Value,
    md: impl FnOnce() -> String,
) -> Result<Output> {
    match format {
        Format::Json => Output::json(&value, true),
        Format::Markdown => Ok(Output {
            body: md(),
            agrees: true,
        }),
    }
}
