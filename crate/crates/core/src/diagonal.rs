//! Arithmetic elimination of the simple diagonal type.
//!
//! With socle `T^m` acting on `v = |T|^(m−1)` points, the divisibility
//! `k/gcd(k,λ) ∣ m(|T|−1)` forces `|T|^(m−5) < m⁴`, so `m ≤ 6`. Combined
//! with `k ∣ m!·|Aut(T)|` and the standing hypothesis `λ > 100` this leaves
//! `|T|^(m−1) < (m!⁴·|Out(T)|⁴)_{2'}`, which no simple group satisfies.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{factorial, odd_part};
use crate::atlas::{Atlas, GroupFacts, SimpleGroupId};
use crate::error::{Error, Result};

/// Hypothesis under which the odd-part chain is derived.
pub const LAMBDA_HYPOTHESIS: &str = "lambda > 100 (the range lambda <= 100 is treated separately)";

/// Range of `m` covered by the odd-part scan.
pub const M_RANGE: std::ops::RangeInclusive<u32> = 2..=6;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiagonalCase {
    pub group: SimpleGroupId,
    pub m: u32,
}

impl DiagonalCase {
    pub fn new(group: SimpleGroupId, m: u32) -> Result<Self> {
        if m < 2 {
            return Err(Error::domain(format!(
                "diagonal type needs m ≥ 2 (got {m})"
            )));
        }
        Ok(DiagonalCase { group, m })
    }

    /// `v = |T|^(m−1)`.
    pub fn points(&self, atlas: &Atlas) -> Result<BigUint> {
        Ok(atlas.order(&self.group)?.pow(self.m - 1))
    }
}

/// `|T|^(m−5) < m⁴`; always true for `m ≤ 5`.
pub fn diag_m_admissible(order_t: &BigUint, m: u32) -> bool {
    if m <= 5 {
        return true;
    }
    order_t.pow(m - 5) < BigUint::from(m).pow(4)
}

/// `k/gcd(k,λ) ∣ m(|T|−1)`, the consequence of `r ∣ λm(|T|−1)` with `r = k`.
pub fn diag_divisibility_gate(
    k: &BigUint,
    lambda: &BigUint,
    m: u32,
    order_t: &BigUint,
) -> Result<bool> {
    if m < 3 {
        return Err(Error::domain(format!(
            "the suborbit gate needs m ≥ 3 (got {m})"
        )));
    }
    if k.is_zero() || lambda.is_zero() || order_t.is_zero() {
        return Err(Error::domain("k, λ and |T| must be positive"));
    }
    let reduced = k / k.gcd(lambda);
    let target = BigUint::from(m) * (order_t - 1u32);
    Ok((target % reduced).is_zero())
}

fn check_m(m: u32) -> Result<()> {
    if M_RANGE.contains(&m) {
        Ok(())
    } else {
        Err(Error::domain(format!("m must lie in [2,6] (got {m})")))
    }
}

/// `odd_part(m!)⁴`: 1, 81, 81, 15⁴, 45⁴ for m = 2..6.
pub fn factorial_odd_constant(m: u32) -> BigUint {
    odd_part(&factorial(m as u64)).pow(4)
}

/// `|T|^(m−1) < odd_part(m!⁴·|Out(T)|⁴)`.
pub fn oddpart_test(facts: &GroupFacts, m: u32) -> Result<bool> {
    check_m(m)?;
    let rhs = odd_part(&(factorial(m as u64).pow(4) * facts.out_fourth()));
    Ok(facts.order.pow(m - 1) < rhs)
}

pub fn diag_oddpart_test(g: &SimpleGroupId, m: u32) -> Result<bool> {
    oddpart_test(&Atlas::embedded().facts(g)?, m)
}

/// One instance of the step from the odd-part inequality at `m` to
/// `|T| < odd_part(|Out(T)|⁴)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiagImplication {
    pub group: SimpleGroupId,
    pub m: u32,
    /// `|T|^(m−1) < C·O` with `C = odd_part(m!)⁴`, `O = odd_part(|Out|⁴)`.
    pub premise: bool,
    /// `|T| < O`.
    pub conclusion: bool,
    /// `C < |T|^(m−2)`, which turns the premise into the conclusion.
    /// Vacuous for `m = 2` where `C = 1`.
    pub constant_step_valid: bool,
    /// The constant step fails (only A5 at m = 3) so the premise was decided directly.
    pub decided_directly: bool,
}

impl DiagImplication {
    /// Whether `premise ⇒ conclusion` holds for this instance.
    pub fn holds(&self) -> bool {
        !self.premise || self.conclusion
    }
}

pub fn implication_for(
    group: &SimpleGroupId,
    facts: &GroupFacts,
    m: u32,
) -> Result<DiagImplication> {
    let premise = oddpart_test(facts, m)?;
    let odd_out = odd_part(&facts.out_fourth());
    let conclusion = facts.order < odd_out;
    let constant_step_valid = m == 2 || factorial_odd_constant(m) < facts.order.pow(m - 2);
    Ok(DiagImplication {
        group: group.clone(),
        m,
        premise,
        conclusion,
        constant_step_valid,
        decided_directly: !constant_step_valid,
    })
}

pub fn diag_implies_out4(g: &SimpleGroupId, m: u32) -> Result<DiagImplication> {
    check_m(m)?;
    implication_for(g, &Atlas::embedded().facts(g)?, m)
}

/// A group passing `|T| < |Out(T)|⁴` but failing the odd-part form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NearMiss {
    pub group: SimpleGroupId,
    #[serde(serialize_with = "crate::report::decimal")]
    pub order: BigUint,
    pub out_order: u64,
    #[serde(serialize_with = "crate::report::decimal")]
    pub odd_out_fourth: BigUint,
}

#[derive(Debug, Clone, Serialize)]
pub struct DiagonalScan {
    #[serde(serialize_with = "crate::report::decimal")]
    pub catalog_bound: BigUint,
    pub catalog_size: usize,
    pub pairs_checked: usize,
    /// Largest m with `|T|^(m−5) < m⁴` over the catalog (checked up to m = 20).
    pub max_admissible_m: Option<u32>,
    pub survivors: Vec<DiagonalCase>,
    pub near_misses: Vec<NearMiss>,
    /// Instances where the odd-part premise holds but the conclusion fails.
    pub implication_failures: Vec<DiagonalCase>,
    pub hypothesis: &'static str,
}

impl DiagonalScan {
    pub fn catalog_empty(&self) -> bool {
        self.catalog_size == 0
    }
}

struct GroupOutcome {
    survivors: Vec<DiagonalCase>,
    near_miss: Option<NearMiss>,
    implication_failures: Vec<DiagonalCase>,
    max_m: u32,
}

fn examine(id: &SimpleGroupId, facts: &GroupFacts) -> GroupOutcome {
    let mut out = GroupOutcome {
        survivors: Vec::new(),
        near_miss: None,
        implication_failures: Vec::new(),
        max_m: (2..=20)
            .filter(|&m| diag_m_admissible(&facts.order, m))
            .max()
            .unwrap_or(0),
    };
    for m in M_RANGE {
        let imp = implication_for(id, facts, m).expect("m in range");
        if imp.premise {
            out.survivors.push(DiagonalCase {
                group: id.clone(),
                m,
            });
        }
        if !imp.holds() {
            out.implication_failures.push(DiagonalCase {
                group: id.clone(),
                m,
            });
        }
    }
    if facts.order_below_out_fourth() {
        let odd = odd_part(&facts.out_fourth());
        if facts.order >= odd {
            out.near_miss = Some(NearMiss {
                group: id.clone(),
                order: facts.order.clone(),
                out_order: facts.out_order,
                odd_out_fourth: odd,
            });
        }
    }
    out
}

/// Runs the odd-part test for every catalog group up to `catalog_bound` and `m ∈ [2,6]`.
pub fn diagonal_scan(atlas: &Atlas, catalog_bound: &BigUint) -> DiagonalScan {
    diagonal_scan_with(atlas, catalog_bound, true)
}

pub fn diagonal_scan_with(atlas: &Atlas, catalog_bound: &BigUint, parallel: bool) -> DiagonalScan {
    let catalog: Vec<(SimpleGroupId, GroupFacts)> =
        atlas.enumerate_catalog(catalog_bound).collect();
    let outcomes: Vec<GroupOutcome> = if parallel {
        catalog.par_iter().map(|(id, f)| examine(id, f)).collect()
    } else {
        catalog.iter().map(|(id, f)| examine(id, f)).collect()
    };
    let mut scan = DiagonalScan {
        catalog_bound: catalog_bound.clone(),
        catalog_size: catalog.len(),
        pairs_checked: catalog.len() * M_RANGE.count(),
        max_admissible_m: None,
        survivors: Vec::new(),
        near_misses: Vec::new(),
        implication_failures: Vec::new(),
        hypothesis: LAMBDA_HYPOTHESIS,
    };
    for o in outcomes {
        scan.survivors.extend(o.survivors);
        scan.near_misses.extend(o.near_miss);
        scan.implication_failures.extend(o.implication_failures);
        scan.max_admissible_m = scan.max_admissible_m.max(Some(o.max_m));
    }
    if scan.catalog_empty() {
        scan.max_admissible_m = None;
    }
    scan
}

/// `odd_part(x⁴)` equals `odd_part(x)⁴`; exposed for the constant-extraction checks.
pub fn odd_part_of_fourth_power(x: &BigUint) -> BigUint {
    odd_part(&x.pow(4))
}
