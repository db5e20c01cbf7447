//! The full reduction pipeline and its serialized report.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Serialize, Serializer};

use crate::atlas::{Atlas, Out4Bounds, Out4Scan, SimpleGroupId, SporadicTable};
use crate::diagonal::{diagonal_scan, DiagonalScan};
use crate::error::{Error, Result};
use crate::imprimitive::{
    imprimitive_family, imprimitive_sweep, ImprimitiveFamily, ImprimitiveSweep,
};
use crate::product::{
    enumerate_product_cases, m4_special_case, M4Report, ProductTriple, RadicalPattern,
};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Serializes a big integer as a decimal string.
pub fn decimal<S: Serializer>(x: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(x)
}

/// Published survivors of the product-type enumeration.
pub const EXPECTED_PRODUCT_TRIPLES: [(u64, u64, u64); 3] = [(16, 6, 2), (121, 25, 5), (441, 56, 7)];

/// Published `m = 4` candidate sets for `v₀ = 5` and `v₀ = 6`.
pub const EXPECTED_M4: [(u64, &[u64]); 2] = [(5, &[243, 256]), (6, &[400, 405, 432])];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReduceConfig {
    #[serde(serialize_with = "decimal")]
    pub catalog_bound: BigUint,
    pub out4_n_max: u32,
    pub out4_q_max: u64,
    pub v0_min: u64,
    pub imprimitive_lambda_max: u64,
    pub radical_v0_max: u64,
    pub sporadic_table: Option<PathBuf>,
}

impl Default for ReduceConfig {
    fn default() -> Self {
        ReduceConfig {
            catalog_bound: BigUint::from(10_000_000u32),
            out4_n_max: 12,
            out4_q_max: 1024,
            v0_min: 2,
            imprimitive_lambda_max: 10_000,
            radical_v0_max: 10_000,
            sporadic_table: None,
        }
    }
}

impl ReduceConfig {
    pub fn atlas(&self) -> Result<Atlas> {
        Ok(match &self.sporadic_table {
            Some(path) => Atlas::new(SporadicTable::load(path)?),
            None => Atlas::default(),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum OnanScottType {
    Affine,
    AlmostSimple,
    SimpleDiagonal,
    Product,
    TwistedWreath,
}

impl OnanScottType {
    pub const ALL: [OnanScottType; 5] = [
        OnanScottType::Affine,
        OnanScottType::AlmostSimple,
        OnanScottType::SimpleDiagonal,
        OnanScottType::Product,
        OnanScottType::TwistedWreath,
    ];

    pub fn title(self) -> &'static str {
        match self {
            OnanScottType::Affine => "Affine",
            OnanScottType::AlmostSimple => "Almost simple",
            OnanScottType::SimpleDiagonal => "Simple diagonal",
            OnanScottType::Product => "Product",
            OnanScottType::TwistedWreath => "Twisted wreath",
        }
    }
}

impl fmt::Display for OnanScottType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.title())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Open,
    EliminatedByComputation,
    EliminatedByCitation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TypeVerdict {
    pub verdict: Verdict,
    pub summary: String,
    /// Keys into the report's `evidence` object.
    pub evidence: Vec<&'static str>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Hypothesis {
    pub statement: &'static str,
    pub used_by: Vec<OnanScottType>,
    pub note: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct Out4Evidence {
    pub label: String,
    pub scan: Out4Scan,
}

#[derive(Debug, Clone, Serialize)]
pub struct ProductEvidence {
    pub v0_min: u64,
    pub triples: Vec<ProductTriple>,
    pub m4: Vec<M4Report>,
    pub radical_bound: RadicalPattern,
}

#[derive(Debug, Clone, Serialize)]
pub struct ImprimitiveEvidence {
    pub sweep: ImprimitiveSweep,
    pub spot_values: Vec<ImprimitiveFamily>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Evidence {
    pub out4: Option<Out4Evidence>,
    pub diagonal: DiagonalScan,
    pub product: ProductEvidence,
    pub imprimitive: ImprimitiveEvidence,
    pub warnings: Vec<String>,
    /// Places where the computation disagrees with the published outcome.
    pub discrepancies: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReductionReport {
    pub verdicts: BTreeMap<OnanScottType, TypeVerdict>,
    pub evidence: Evidence,
    pub hypotheses: Vec<Hypothesis>,
    pub config: ReduceConfig,
    pub version: &'static str,
}

impl ReductionReport {
    pub fn agrees(&self) -> bool {
        self.evidence.discrepancies.is_empty()
    }

    /// 0 when everything matches the published outcome, 2 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.agrees() {
            0
        } else {
            2
        }
    }
}

fn fmt_triples(ts: &[(u64, u64, u64)]) -> String {
    let parts: Vec<String> = ts
        .iter()
        .map(|(v, k, l)| format!("({v},{k},{l})"))
        .collect();
    format!("[{}]", parts.join(", "))
}

/// Product triples the published list leads us to expect for `v0_min`.
pub fn expected_product_triples(v0_min: u64) -> Vec<(u64, u64, u64)> {
    // (16,6,2) only arises from v0 = 4
    EXPECTED_PRODUCT_TRIPLES
        .iter()
        .copied()
        .filter(|t| v0_min <= 4 || t.0 != 16)
        .collect()
}

pub fn run_reduce(config: &ReduceConfig) -> Result<ReductionReport> {
    let atlas = config.atlas()?;
    let mut warnings = Vec::new();
    let mut discrepancies = Vec::new();

    // |T| < |Out(T)|⁴
    let l34: SimpleGroupId = "L3(4)".parse()?;
    let bounds = Out4Bounds::new(config.out4_n_max, config.out4_q_max, true);
    let out4 = match atlas.out4_scan(&bounds) {
        Ok(scan) => {
            if !scan.tail_ok() {
                warnings.push(Error::TailCheckFailed(scan.tail_failures.clone()).to_string());
            }
            let ids = scan.candidate_ids();
            if ids != [l34.clone()] {
                discrepancies.push(format!("out4 candidates are {ids:?}, expected [L3(4)]"));
            }
            Some(Out4Evidence {
                label: format!(
                    "verified within bounds [n_max={}, q_max={}]",
                    config.out4_n_max, config.out4_q_max
                ),
                scan,
            })
        }
        Err(e) => {
            warnings.push(format!("out4 scan skipped: {e}"));
            None
        }
    };

    // simple diagonal
    let diagonal = diagonal_scan(&atlas, &config.catalog_bound);
    if diagonal.catalog_empty() {
        warnings.push(format!(
            "bounds too small: the catalog up to {} is empty, the diagonal scan checked nothing",
            config.catalog_bound
        ));
    }
    for s in &diagonal.survivors {
        discrepancies.push(format!("simple diagonal survivor {} at m={}", s.group, s.m));
    }
    for s in &diagonal.implication_failures {
        discrepancies.push(format!(
            "odd-part implication fails for {} at m={}",
            s.group, s.m
        ));
    }
    let near: Vec<&SimpleGroupId> = diagonal.near_misses.iter().map(|n| &n.group).collect();
    let l34_order = BigUint::from(20160u32);
    let expect_near = config.catalog_bound >= l34_order;
    if near != (if expect_near { vec![&l34] } else { vec![] }) {
        warnings.push(format!("diagonal near-miss channel reports {near:?}"));
    }

    // product
    let triples = enumerate_product_cases(config.v0_min)?;
    let found: Vec<(u64, u64, u64)> = triples.iter().map(ProductTriple::as_tuple).collect();
    let expected = expected_product_triples(config.v0_min);
    if found != expected {
        discrepancies.push(format!(
            "product enumeration (v0_min={}) gives {}, published list {}",
            config.v0_min,
            fmt_triples(&found),
            fmt_triples(&expected)
        ));
    }
    for t in &triples {
        if t.witnesses.iter().all(|w| w.v0_below_setup_min) {
            warnings.push(format!(
                "product triple ({},{},{}) only arises with v0 < 5",
                t.v, t.k, t.lambda
            ));
        }
    }
    let mut m4 = Vec::new();
    for (v0, expected) in EXPECTED_M4 {
        let r = m4_special_case(v0)?;
        if r.candidates != expected || !r.all_rejected() {
            discrepancies.push(format!(
                "m=4, v0={v0}: candidates {:?}, {} rejected",
                r.candidates,
                r.rejections.len()
            ));
        }
        m4.push(r);
    }
    let radical_bound = RadicalPattern::compute(2..=10, 5, config.radical_v0_max.max(5));
    let pattern_ok = radical_bound.all_satisfied == [2, 3]
        && radical_bound.solutions_for(4) == Some(&[5, 6][..])
        && (5..=10).all(|m| radical_bound.solutions_for(m).is_some_and(|s| s.is_empty()));
    if !pattern_ok {
        discrepancies
            .push("radical bound satisfiability pattern differs from m ∈ {2,3} only".into());
    }

    // imprimitive
    let sweep = imprimitive_sweep(config.imprimitive_lambda_max);
    if !sweep.passed() {
        discrepancies.push(format!(
            "imprimitive family fails at λ ∈ {:?}",
            sweep.failures
        ));
    }
    let spot_values = [2, 3, 4]
        .iter()
        .map(|&l| imprimitive_family(l))
        .collect::<Result<_>>()?;

    let mut verdicts = BTreeMap::new();
    verdicts.insert(
        OnanScottType::Affine,
        TypeVerdict {
            verdict: Verdict::Open,
            summary: "remains possible".into(),
            evidence: vec![],
        },
    );
    verdicts.insert(
        OnanScottType::AlmostSimple,
        TypeVerdict {
            verdict: Verdict::Open,
            summary: "remains possible".into(),
            evidence: vec![],
        },
    );
    let diag_clean = !diagonal.catalog_empty()
        && diagonal.survivors.is_empty()
        && diagonal.implication_failures.is_empty();
    verdicts.insert(
        OnanScottType::SimpleDiagonal,
        TypeVerdict {
            verdict: if diag_clean { Verdict::EliminatedByComputation } else { Verdict::Open },
            summary: format!(
                "{} survivors among {} (T, m) pairs, verified within bounds |T| ≤ {}, assuming λ > 100",
                diagonal.survivors.len(),
                diagonal.pairs_checked,
                config.catalog_bound
            ),
            evidence: vec!["diagonal", "out4"],
        },
    );
    let product_clean = pattern_ok && m4.iter().all(M4Report::all_rejected);
    verdicts.insert(
        OnanScottType::Product,
        TypeVerdict {
            verdict: if product_clean {
                Verdict::EliminatedByComputation
            } else {
                Verdict::Open
            },
            summary: format!(
                "m ≥ 4 excluded; residual triples {} with λ ≤ 100 are handled by citation",
                fmt_triples(&found)
            ),
            evidence: vec!["product"],
        },
    );
    verdicts.insert(
        OnanScottType::TwistedWreath,
        TypeVerdict {
            verdict: Verdict::EliminatedByCitation,
            summary: "the socle would be a point-regular normal subgroup, which is soluble; \
                      a non-abelian socle rules this out"
                .into(),
            evidence: vec![],
        },
    );

    Ok(ReductionReport {
        verdicts,
        evidence: Evidence {
            out4,
            diagonal,
            product: ProductEvidence {
                v0_min: config.v0_min,
                triples,
                m4,
                radical_bound,
            },
            imprimitive: ImprimitiveEvidence { sweep, spot_values },
            warnings,
            discrepancies,
        },
        hypotheses: vec![Hypothesis {
            statement: "lambda > 100",
            used_by: vec![OnanScottType::SimpleDiagonal, OnanScottType::Product],
            note:
                "designs with lambda <= 100 are classified separately and are not re-derived here",
        }],
        config: config.clone(),
        version: VERSION,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Markdown,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" | "machine-json" => Ok(ReportFormat::Json),
            "md" | "markdown" => Ok(ReportFormat::Markdown),
            other => Err(Error::UnsupportedFormat(other.to_string())),
        }
    }
}

/// JSON with keys in sorted order and big integers as decimal strings.
pub fn to_canonical_json<T: Serialize>(value: &T) -> Result<String> {
    let v = serde_json::to_value(value).map_err(|e| Error::domain(e.to_string()))?;
    let mut s = serde_json::to_string_pretty(&v).map_err(|e| Error::domain(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub fn emit(report: &ReductionReport, format: ReportFormat) -> Result<String> {
    match format {
        ReportFormat::Json => to_canonical_json(report),
        ReportFormat::Markdown => Ok(markdown(report)),
    }
}

pub fn write_report(
    report: &ReductionReport,
    format: ReportFormat,
    mut out: impl Write,
) -> Result<()> {
    out.write_all(emit(report, format)?.as_bytes())?;
    out.flush()?;
    Ok(())
}

fn markdown(r: &ReductionReport) -> String {
    let mut s = String::new();
    let ev = &r.evidence;
    let _ = writeln!(s, "# Reduction report\n");
    let _ = writeln!(
        s,
        "Version {}. Hypothesis: {} ({}).\n",
        r.version, r.hypotheses[0].statement, r.hypotheses[0].note
    );

    for t in OnanScottType::ALL {
        let v = &r.verdicts[&t];
        let _ = writeln!(s, "## {t}\n");
        let _ = writeln!(s, "Verdict: **{:?}**. {}\n", v.verdict, v.summary);
        match t {
            OnanScottType::SimpleDiagonal => {
                let d = &ev.diagonal;
                let _ = writeln!(
                    s,
                    "- catalog size: {} (|T| ≤ {})",
                    d.catalog_size, d.catalog_bound
                );
                let _ = writeln!(s, "- survivors: {}", d.survivors.len());
                for n in &d.near_misses {
                    let _ = writeln!(
                        s,
                        "- near miss: {} with |T| = {} ≥ {} = odd part of |Out|^4",
                        n.group, n.order, n.odd_out_fourth
                    );
                }
                if let Some(m) = d.max_admissible_m {
                    let _ = writeln!(s, "- largest admissible m: {m}");
                }
                if let Some(o) = &ev.out4 {
                    let names: Vec<String> = o
                        .scan
                        .candidates
                        .iter()
                        .map(|c| c.group.to_string())
                        .collect();
                    let _ = writeln!(s, "- |T| < |Out(T)|^4: [{}], {}", names.join(", "), o.label);
                }
            }
            OnanScottType::Product => {
                let p = &ev.product;
                for tr in &p.triples {
                    let w: Vec<String> = tr
                        .witnesses
                        .iter()
                        .map(|w| format!("m={}, a={}, v0={}", w.m, w.a, w.v0))
                        .collect();
                    let _ = writeln!(
                        s,
                        "- ({},{},{}) from {}",
                        tr.v,
                        tr.k,
                        tr.lambda,
                        w.join("; ")
                    );
                }
                for m in &p.m4 {
                    let _ = writeln!(
                        s,
                        "- m=4, v0={}: {} < k < {}, candidates {:?}, {} rejected",
                        m.v0,
                        m.k_lower,
                        m.k_upper,
                        m.candidates,
                        m.rejections.len()
                    );
                }
                let _ = writeln!(
                    s,
                    "- radical bound over {} ≤ v0 ≤ {}: always true for m ∈ {:?}; m=4 only at {:?}",
                    p.radical_bound.v0_lo,
                    p.radical_bound.v0_hi,
                    p.radical_bound.all_satisfied,
                    p.radical_bound.solutions_for(4).unwrap_or(&[])
                );
            }
            OnanScottType::AlmostSimple => {
                let im = &ev.imprimitive;
                let _ = writeln!(
                    s,
                    "- point-imprimitive family (λ²(λ+2), λ(λ+1), λ) checked for 2 ≤ λ ≤ {}: {} failures",
                    im.sweep.lambda_max,
                    im.sweep.failures.len()
                );
            }
            _ => {}
        }
        let _ = writeln!(s);
    }

    if !ev.warnings.is_empty() {
        let _ = writeln!(s, "## Warnings\n");
        for w in &ev.warnings {
            let _ = writeln!(s, "- {w}");
        }
        let _ = writeln!(s);
    }
    if !ev.discrepancies.is_empty() {
        let _ = writeln!(s, "## Discrepancies\n");
        for d in &ev.discrepancies {
            let _ = writeln!(s, "- {d}");
        }
        let _ = writeln!(s);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_config() -> ReduceConfig {
        ReduceConfig {
            catalog_bound: BigUint::from(100_000u32),
            out4_n_max: 8,
            out4_q_max: 64,
            imprimitive_lambda_max: 100,
            radical_v0_max: 200,
            ..ReduceConfig::default()
        }
    }

    #[test]
    fn format_parsing() {
        assert_eq!("json".parse::<ReportFormat>().unwrap(), ReportFormat::Json);
        assert_eq!(
            "md".parse::<ReportFormat>().unwrap(),
            ReportFormat::Markdown
        );
        assert!(matches!(
            "xml".parse::<ReportFormat>(),
            Err(Error::UnsupportedFormat(_))
        ));
    }

    #[test]
    fn report_shape() {
        let r = run_reduce(&small_config()).unwrap();
        assert_eq!(r.verdicts.len(), 5);
        assert_eq!(r.verdicts[&OnanScottType::Affine].verdict, Verdict::Open);
        assert_eq!(
            r.verdicts[&OnanScottType::TwistedWreath].verdict,
            Verdict::EliminatedByCitation
        );
        assert_eq!(
            r.verdicts[&OnanScottType::SimpleDiagonal].verdict,
            Verdict::EliminatedByComputation
        );
        let json: serde_json::Value =
            serde_json::from_str(&emit(&r, ReportFormat::Json).unwrap()).unwrap();
        let keys: Vec<&str> = json
            .as_object()
            .unwrap()
            .keys()
            .map(String::as_str)
            .collect();
        assert_eq!(
            keys,
            ["config", "evidence", "hypotheses", "verdicts", "version"]
        );
        let md = emit(&r, ReportFormat::Markdown).unwrap();
        for t in OnanScottType::ALL {
            assert!(md.contains(&format!("## {t}")), "{t}");
        }
    }

    #[test]
    fn tiny_catalog_warns() {
        let cfg = ReduceConfig {
            catalog_bound: BigUint::from(59u32),
            ..small_config()
        };
        let r = run_reduce(&cfg).unwrap();
        assert!(r.evidence.diagonal.catalog_empty());
        assert!(r
            .evidence
            .warnings
            .iter()
            .any(|w| w.contains("bounds too small")));
    }

    #[test]
    fn expected_list_respects_v0_min() {
        assert_eq!(expected_product_triples(2).len(), 3);
        assert_eq!(
            expected_product_triples(5),
            vec![(121, 25, 5), (441, 56, 7)]
        );
    }
}
