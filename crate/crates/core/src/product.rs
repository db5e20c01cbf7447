//! Arithmetic elimination of the product type.
//!
//! The socle acts on `v = v₀^m` points. Writing `ka = λm(v₀−1)` the
//! symmetric identity pins `λ` down as a function of `(m, a, v₀)`, the
//! bounds on `a` and `v₀ − 1 ∣ ma(a+1)` make the search finite, and only
//! `m ∈ {2,3}` survive the size inequality outside two `m = 4` cases.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{ceil_sqrt, divisors, factorial};
use crate::design::satisfies_focus_condition;
use crate::error::{Error, Result};

/// Factor counts the five-step enumeration runs over.
pub const ENUMERATED_M: [u32; 2] = [2, 3];

/// Smallest component size assumed by the product-type setup.
pub const SETUP_V0_MIN: u64 = 5;

/// One witness `(m, a, v₀, λ, k)` with `ka = λm(v₀−1)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct ProductCase {
    pub m: u32,
    pub a: u64,
    pub v0: u64,
    pub lambda: u64,
    pub k: u64,
    #[serde(serialize_with = "crate::report::decimal")]
    pub v: BigUint,
    /// `v₀ < 5`, outside the setup's standing assumption.
    pub v0_below_setup_min: bool,
}

impl ProductCase {
    /// `ka = λm(v₀−1)`.
    pub fn satisfies_eq1(&self) -> bool {
        self.k as u128 * self.a as u128
            == self.lambda as u128 * self.m as u128 * (self.v0 as u128 - 1)
    }

    /// `v₀ − 1 ∣ ma(a+1)`.
    pub fn satisfies_divisibility(&self) -> bool {
        (self.m as u128 * self.a as u128 * (self.a as u128 + 1)) % (self.v0 as u128 - 1) == 0
    }

    pub fn satisfies_identity(&self) -> bool {
        BigUint::from(self.lambda) * (&self.v - 1u32) == BigUint::from(self.k) * (self.k - 1)
    }

    /// `k² > λv`.
    pub fn satisfies_square_bound(&self) -> bool {
        BigUint::from(self.k).pow(2) > BigUint::from(self.lambda) * &self.v
    }
}

/// A surviving `(v, k, λ)` with every witness that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProductTriple {
    #[serde(serialize_with = "crate::report::decimal")]
    pub v: BigUint,
    pub k: u64,
    pub lambda: u64,
    pub witnesses: Vec<ProductCase>,
}

impl ProductTriple {
    pub fn as_tuple(&self) -> (u64, u64, u64) {
        (
            self.v.to_u64().expect("product v fits in u64"),
            self.k,
            self.lambda,
        )
    }
}

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

/// `2v₀^(m−1) < k + √k`: with `t = 2v₀^(m−1) − k`, true if `t ≤ 0`, else iff `t² < k`.
pub fn size_bound_holds(v0: u64, m: u32, k: &BigUint) -> bool {
    let y = big(2) * big(v0).pow(m - 1);
    if &y <= k {
        return true;
    }
    let t = y - k;
    &t * &t < *k
}

/// Largest `a` strictly below `(m⁴ + m√(m⁶ + (20m−36)(m²+2))) / (10m−18)`.
pub fn a_upper_bound(m: u32) -> u64 {
    assert!(m >= 2, "a_upper_bound needs m ≥ 2");
    let mut a = 1u64;
    while below_a_bound(m, a + 1) {
        a += 1;
    }
    a
}

/// `a < (m⁴ + m√D)/(10m−18)` decided exactly.
pub fn below_a_bound(m: u32, a: u64) -> bool {
    let m = m as i128;
    let u = (10 * m - 18) * a as i128 - m.pow(4);
    if u < 0 {
        return true;
    }
    let d = m.pow(6) + (20 * m - 36) * (m * m + 2);
    u * u < m * m * d
}

/// Every `v₀ ≥ 2` with `v₀ − 1 ∣ ma(a+1)`, ascending.
pub fn v0_candidates(m: u32, a: u64) -> Vec<u64> {
    divisors(m as u64 * a * (a + 1))
        .into_iter()
        .map(|d| d + 1)
        .collect()
}

/// `1 + v₀ + … + v₀^(m−1)`.
fn geometric_sum(v0: u64, m: u32) -> BigUint {
    (big(v0).pow(m) - 1u32) / (v0 - 1)
}

/// `λ = (a²(v₀^(m−1)+…+1) + ma) / (m²(v₀−1))` when integral.
///
/// # Panics
/// If the integral value does not fit in `u64`.
pub fn lambda_from(m: u32, a: u64, v0: u64) -> Option<u64> {
    if m < 2 || a == 0 || v0 < 2 {
        return None;
    }
    let num = big(a).pow(2) * geometric_sum(v0, m) + big(m as u64 * a);
    let den = big(m as u64).pow(2) * (v0 - 1);
    let (q, r) = num.div_rem(&den);
    (r.is_zero() && !q.is_zero()).then(|| q.to_u64().expect("λ exceeds u64"))
}

/// `k = λm(v₀−1)/a` when integral.
pub fn k_from(m: u32, a: u64, v0: u64, lambda: u64) -> Option<u64> {
    if a == 0 || v0 < 2 || lambda == 0 {
        return None;
    }
    let num = lambda as u128 * m as u128 * (v0 as u128 - 1);
    (num % a as u128 == 0).then(|| (num / a as u128) as u64)
}

/// `a²(5m−9) < m²λ`.
pub fn lambda_bound_holds(m: u32, a: u64, lambda: u64) -> bool {
    (a as u128).pow(2) * (5 * m as u128 - 9) < (m as u128).pow(2) * lambda as u128
}

/// `λ`, `k` and the consistency filters for one `(m, a, v₀)`.
pub fn case_for(m: u32, a: u64, v0: u64) -> Option<ProductCase> {
    let lambda = lambda_from(m, a, v0)?;
    let k = k_from(m, a, v0, lambda)?;
    if !satisfies_focus_condition(k, lambda) || !lambda_bound_holds(m, a, lambda) {
        return None;
    }
    let case = ProductCase {
        m,
        a,
        v0,
        lambda,
        k,
        v: big(v0).pow(m),
        v0_below_setup_min: v0 < SETUP_V0_MIN,
    };
    case.satisfies_identity().then_some(case)
}

/// All witnesses at a fixed `m`, in step order (a, then v₀).
pub fn enumerate_cases_for_m(m: u32, v0_min: u64) -> Vec<ProductCase> {
    let a_max = a_upper_bound(m);
    let per_a: Vec<Vec<ProductCase>> = (1..=a_max)
        .into_par_iter()
        .map(|a| {
            v0_candidates(m, a)
                .into_iter()
                .filter(|&v0| v0 >= v0_min)
                .filter_map(|v0| case_for(m, a, v0))
                .collect()
        })
        .collect();
    per_a.into_iter().flatten().collect()
}

/// Groups witnesses into distinct `(v, k, λ)`, ascending by `(v, k, λ)`.
pub fn group_triples(cases: impl IntoIterator<Item = ProductCase>) -> Vec<ProductTriple> {
    let mut by_triple: BTreeMap<(BigUint, u64, u64), Vec<ProductCase>> = BTreeMap::new();
    for c in cases {
        by_triple
            .entry((c.v.clone(), c.k, c.lambda))
            .or_default()
            .push(c);
    }
    by_triple
        .into_iter()
        .map(|((v, k, lambda), mut witnesses)| {
            witnesses.sort();
            ProductTriple {
                v,
                k,
                lambda,
                witnesses,
            }
        })
        .collect()
}

/// The five-step enumeration over `m ∈ {2,3}` with `v₀ ≥ v0_min`.
pub fn enumerate_product_cases(v0_min: u64) -> Result<Vec<ProductTriple>> {
    if v0_min != 2 && v0_min != SETUP_V0_MIN {
        return Err(Error::domain(format!(
            "v0_min must be 2 or 5 (got {v0_min})"
        )));
    }
    Ok(group_triples(
        ENUMERATED_M
            .iter()
            .flat_map(|&m| enumerate_cases_for_m(m, v0_min)),
    ))
}

/// `√(y − 2√y + 2) − 1 < m(v₀−1)` with `y = 2v₀^(m−1)`.
///
/// With `R = m(v₀−1) + 1` and `w = y + 2 − R²` this holds iff `w < 0` or `w² < 4y`.
pub fn radical_bound_holds(m: u32, v0: u64) -> bool {
    let y = big(2) * big(v0).pow(m - 1);
    let r = big(m as u64 * (v0 - 1) + 1);
    let lhs = &y + 2u32;
    let r2 = &r * &r;
    if lhs < r2 {
        return true;
    }
    let w = lhs - r2;
    &w * &w < y * 4u32
}

/// The `v₀` in `[v0_lo, v0_hi]` satisfying [`radical_bound_holds`] at `m`.
pub fn radical_bound_solutions(m: u32, v0_lo: u64, v0_hi: u64) -> Vec<u64> {
    (v0_lo..=v0_hi)
        .into_par_iter()
        .filter(|&v0| radical_bound_holds(m, v0))
        .collect()
}

/// Satisfying `v₀` for every `m` in `ms`, over `v0_lo..=v0_hi`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RadicalPattern {
    pub v0_lo: u64,
    pub v0_hi: u64,
    /// `m` → satisfying `v₀` (listed only when not the full range).
    pub solutions: BTreeMap<u32, Vec<u64>>,
    pub all_satisfied: Vec<u32>,
}

impl RadicalPattern {
    pub fn compute(ms: impl IntoIterator<Item = u32>, v0_lo: u64, v0_hi: u64) -> Self {
        let mut pattern = RadicalPattern {
            v0_lo,
            v0_hi,
            solutions: BTreeMap::new(),
            all_satisfied: Vec::new(),
        };
        for m in ms {
            let sols = radical_bound_solutions(m, v0_lo, v0_hi);
            if sols.len() as u64 == v0_hi - v0_lo + 1 {
                pattern.all_satisfied.push(m);
            } else {
                pattern.solutions.insert(m, sols);
            }
        }
        pattern
    }

    pub fn solutions_for(&self, m: u32) -> Option<&[u64]> {
        self.solutions.get(&m).map(Vec::as_slice)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct M4Rejection {
    pub k: u64,
    /// `k(k−1)` and `v₀⁴ − 1`.
    pub numerator: u64,
    pub denominator: u64,
    pub reason: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct M4Report {
    pub v0: u64,
    /// Open interval `(k_lower, k_upper)` with the inner radical truncated to one decimal.
    pub k_lower: u64,
    pub k_upper: u64,
    /// Lower end computed without truncation: `k > y + 1 − 2√y`.
    pub k_lower_exact: u64,
    #[serde(serialize_with = "crate::report::decimal")]
    pub stabilizer_order: BigUint,
    pub candidates: Vec<u64>,
    pub rejections: Vec<M4Rejection>,
}

impl M4Report {
    pub fn all_rejected(&self) -> bool {
        self.rejections.len() == self.candidates.len()
    }
}

/// Largest `t` with `t ≤ 10·√(y − 2√y + 2)`, i.e. the radical truncated to one decimal (times 10).
fn truncated_radical_tenths(y: &BigUint) -> BigUint {
    // t² ≤ 100y − 200√y + 200  ⟺  200√y ≤ 100y + 200 − t²
    let fits = |t: &BigUint| -> bool {
        let rhs = y * 100u32 + 200u32;
        let t2 = t * t;
        if t2 > rhs {
            return false;
        }
        let s = rhs - t2;
        BigUint::from(40_000u32) * y <= &s * &s
    };
    let mut t = (y * 100u32).sqrt();
    while !fits(&t) {
        t -= 1u32;
    }
    while fits(&(&t + 1u32)) {
        t += 1u32;
    }
    t
}

/// The `m = 4` branch for `v₀ ∈ {5, 6}`.
pub fn m4_special_case(v0: u64) -> Result<M4Report> {
    if v0 != 5 && v0 != 6 {
        return Err(Error::domain(format!(
            "the m = 4 case split covers v0 ∈ {{5,6}} only (got {v0})"
        )));
    }
    let y = big(2) * big(v0).pow(3);
    let r = 4 * (v0 - 1) + 1;
    let k_upper = r * r - 1;

    let t = truncated_radical_tenths(&y);
    let k_lower = ((&t * &t - 100u32) / 100u32).to_u64().expect("small");
    let k_lower_exact = (&y + 1u32 - ceil_sqrt(&(&y * 4u32)))
        .to_u64()
        .expect("small");

    let stabilizer_order = factorial(v0 - 1).pow(4) * factorial(4);
    let candidates: Vec<u64> = (k_lower + 1..k_upper)
        .filter(|&k| (&stabilizer_order % k).is_zero())
        .collect();
    let denominator = v0.pow(4) - 1;
    let rejections = candidates
        .iter()
        .filter_map(|&k| {
            let numerator = k * (k - 1);
            (numerator % denominator != 0).then_some(M4Rejection {
                k,
                numerator,
                denominator,
                reason: "lambda = k(k-1)/(v0^4-1) is not an integer",
            })
        })
        .collect();
    Ok(M4Report {
        v0,
        k_lower,
        k_upper,
        k_lower_exact,
        stabilizer_order,
        candidates,
        rejections,
    })
}
