//! Parameter arithmetic for 2-designs and symmetric designs.
//!
//! Every predicate here is decided with exact integers. Inequalities that
//! involve square roots are squared out after a sign check; no value is ever
//! rounded through a float.

use std::fmt;

use num_integer::Roots;
use serde::Serialize;

use crate::error::{Error, Result};

/// Parameters `(v, b, r, k, λ)` of a 2-design.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct DesignParams {
    pub v: u64,
    pub k: u64,
    pub lambda: u64,
    pub r: u64,
    pub b: u64,
}

impl DesignParams {
    /// Derives `r` and `b` from `(v, k, λ)`; both must come out integral.
    pub fn new(v: u64, k: u64, lambda: u64) -> Result<Self> {
        let r = derive_replication(v, k, lambda)?;
        let vr = v as u128 * r as u128;
        let b = vr
            .checked_div(k as u128)
            .filter(|_| vr % k as u128 == 0)
            .ok_or_else(|| Error::non_integral("block count b = vr/k", vr, k))?;
        let b = u64::try_from(b).map_err(|_| Error::domain("block count exceeds u64"))?;
        Ok(DesignParams { v, k, lambda, r, b })
    }

    /// Fisher's inequality `b ≥ v` and `r ≥ k`.
    pub fn satisfies_fisher(&self) -> bool {
        self.b >= self.v && self.r >= self.k
    }

    /// The general bound `r² > λv`.
    pub fn replication_exceeds_lambda_v(&self) -> bool {
        let r = self.r as u128;
        r * r > self.lambda as u128 * self.v as u128
    }

    pub fn is_symmetric(&self) -> bool {
        self.b == self.v
    }
}

/// `r = λ(v−1)/(k−1)`.
pub fn derive_replication(v: u64, k: u64, lambda: u64) -> Result<u64> {
    if v < 3 || k < 2 || k >= v || lambda < 1 {
        return Err(Error::domain(format!(
            "need v ≥ 3, 2 ≤ k < v, λ ≥ 1 (got v={v}, k={k}, λ={lambda})"
        )));
    }
    let num = lambda as u128 * (v as u128 - 1);
    let den = k as u128 - 1;
    if num % den != 0 {
        return Err(Error::non_integral(
            "replication r = λ(v−1)/(k−1)",
            num,
            den,
        ));
    }
    u64::try_from(num / den).map_err(|_| Error::domain("replication number exceeds u64"))
}

/// A validated symmetric design parameter triple; `b = v` and `r = k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SymmetricParams {
    pub v: u64,
    pub k: u64,
    pub lambda: u64,
}

impl SymmetricParams {
    pub fn new(v: u64, k: u64, lambda: u64) -> Result<Self> {
        let report = is_symmetric_admissible(v, k, lambda);
        if report.is_admissible() {
            Ok(SymmetricParams { v, k, lambda })
        } else {
            Err(Error::domain(format!(
                "({v},{k},{lambda}) is not admissible: {report}"
            )))
        }
    }

    pub fn r(&self) -> u64 {
        self.k
    }

    pub fn b(&self) -> u64 {
        self.v
    }
}

impl fmt::Display for SymmetricParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.v, self.k, self.lambda)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    NonPositive,
    DegenerateBlockSize {
        k: u64,
    },
    BlockNotProper {
        k: u64,
        v: u64,
    },
    /// `λ(v−1) ≠ k(k−1)`.
    IdentityFails {
        lambda_v_minus_1: String,
        k_k_minus_1: String,
    },
    /// `k² ≤ λv`.
    SquareBoundFails {
        k_squared: String,
        lambda_v: String,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NonPositive => write!(f, "parameters must be positive"),
            Violation::DegenerateBlockSize { k } => write!(f, "k = {k} < 2"),
            Violation::BlockNotProper { k, v } => write!(f, "k = {k} ≥ v = {v}"),
            Violation::IdentityFails {
                lambda_v_minus_1,
                k_k_minus_1,
            } => {
                write!(f, "λ(v−1) = {lambda_v_minus_1} ≠ k(k−1) = {k_k_minus_1}")
            }
            Violation::SquareBoundFails {
                k_squared,
                lambda_v,
            } => {
                write!(f, "k² = {k_squared} ≤ λv = {lambda_v}")
            }
        }
    }
}

/// Outcome of [`is_symmetric_admissible`], carrying every violated condition.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct Admissibility {
    pub violations: Vec<Violation>,
}

impl Admissibility {
    pub fn is_admissible(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for Admissibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "admissible");
        }
        let parts: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join("; "))
    }
}

/// Checks `λ(v−1) = k(k−1)`, `k² > λv` and `2 ≤ k < v`, collecting all failures.
pub fn is_symmetric_admissible(v: u64, k: u64, lambda: u64) -> Admissibility {
    let mut violations = Vec::new();
    if v == 0 || k == 0 || lambda == 0 {
        violations.push(Violation::NonPositive);
        return Admissibility { violations };
    }
    if k < 2 {
        violations.push(Violation::DegenerateBlockSize { k });
    }
    if k >= v {
        violations.push(Violation::BlockNotProper { k, v });
    }
    let (v, k, lambda) = (v as u128, k as u128, lambda as u128);
    let lhs = lambda * (v - 1);
    let rhs = k * (k - 1);
    if lhs != rhs {
        violations.push(Violation::IdentityFails {
            lambda_v_minus_1: lhs.to_string(),
            k_k_minus_1: rhs.to_string(),
        });
    }
    if k * k <= lambda * v {
        violations.push(Violation::SquareBoundFails {
            k_squared: (k * k).to_string(),
            lambda_v: (lambda * v).to_string(),
        });
    }
    Admissibility { violations }
}

/// The λ forced by `λ(v−1) = k(k−1)`, if integral.
pub fn symmetric_lambda(v: u64, k: u64) -> Result<u64> {
    if v < 3 || k < 2 || k >= v {
        return Err(Error::domain(format!(
            "need v ≥ 3 and 2 ≤ k < v (got v={v}, k={k})"
        )));
    }
    let num = k as u128 * (k as u128 - 1);
    let den = v as u128 - 1;
    if num % den != 0 {
        return Err(Error::non_integral("λ = k(k−1)/(v−1)", num, den));
    }
    Ok((num / den) as u64)
}

/// `r ∣ λ·|Γ|` for a nontrivial suborbit of length `suborbit_len`.
pub fn davies_divides(r: u64, lambda: u64, suborbit_len: u64) -> bool {
    r != 0 && (lambda as u128 * suborbit_len as u128) % r as u128 == 0
}

/// `k > λ(λ−2)`.
pub fn satisfies_focus_condition(k: u64, lambda: u64) -> bool {
    let l = lambda as i128;
    k as i128 > l * (l - 2)
}

/// `k/λ > √(k+1) − 1`, decided as `(k+λ)² > λ²(k+1)`.
pub fn k_lambda_ratio_exceeds_sqrt(k: u64, lambda: u64) -> bool {
    // u128 overflows only past 2^63 for both inputs; widen through BigUint then.
    let (k, l) = (k as u128, lambda as u128);
    match (
        (k + l).checked_mul(k + l),
        l.checked_mul(l).and_then(|l2| l2.checked_mul(k + 1)),
    ) {
        (Some(lhs), Some(rhs)) => lhs > rhs,
        _ => {
            use num_bigint::BigUint;
            let (k, l) = (BigUint::from(k), BigUint::from(l));
            let s = &k + &l;
            &s * &s > &l * &l * (k + 1u32)
        }
    }
}

/// `⌊k + √(k−λ)⌋`: the most points a nontrivial automorphism can fix.
pub fn max_fixed_points(k: u64, lambda: u64) -> Result<u64> {
    if k <= lambda {
        return Err(Error::domain(format!("need k > λ (got k={k}, λ={lambda})")));
    }
    Ok(k + (k - lambda).sqrt())
}
