//! The point-imprimitive parameter family `(λ²(λ+2), λ(λ+1), λ)`.

use rayon::prelude::*;
use serde::Serialize;

use crate::design::{is_symmetric_admissible, satisfies_focus_condition};
use crate::error::{Error, Result};

/// `d` classes of size `c`; a block meets each class in 0 or `ℓ` points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ClassOption {
    pub c: u64,
    pub d: u64,
    pub l: u64,
}

impl ClassOption {
    /// `c·d = v`, `ℓ ≤ c`, `ℓ ∣ k` and `k/ℓ ≤ d`.
    pub fn is_consistent(&self, v: u64, k: u64) -> bool {
        self.c.checked_mul(self.d) == Some(v)
            && self.l <= self.c
            && self.l != 0
            && k % self.l == 0
            && k / self.l <= self.d
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ImprimitiveFamily {
    pub lambda: u64,
    pub v: u64,
    pub k: u64,
    pub options: [ClassOption; 2],
    pub focus_condition: bool,
}

impl ImprimitiveFamily {
    pub fn triple(&self) -> (u64, u64, u64) {
        (self.v, self.k, self.lambda)
    }

    /// Every invariant of the family, as `(name, holds)` pairs.
    pub fn checks(&self) -> Vec<(&'static str, bool)> {
        let adm = is_symmetric_admissible(self.v, self.k, self.lambda);
        vec![
            ("symmetric admissible", adm.is_admissible()),
            ("focus condition", self.focus_condition),
            (
                "option (λ², λ+2, λ) consistent",
                self.options[0].is_consistent(self.v, self.k),
            ),
            (
                "option (λ+2, λ², 2) consistent",
                self.options[1].is_consistent(self.v, self.k),
            ),
        ]
    }

    pub fn is_valid(&self) -> bool {
        self.checks().iter().all(|(_, ok)| *ok)
    }
}

pub fn imprimitive_family(lambda: u64) -> Result<ImprimitiveFamily> {
    if lambda < 2 {
        return Err(Error::domain(format!(
            "the imprimitive family needs λ ≥ 2 (got {lambda})"
        )));
    }
    let l2 = lambda
        .checked_mul(lambda)
        .filter(|l2| l2.checked_mul(lambda + 2).is_some())
        .ok_or_else(|| Error::domain(format!("λ = {lambda} overflows u64")))?;
    let v = l2 * (lambda + 2);
    let k = lambda * (lambda + 1);
    Ok(ImprimitiveFamily {
        lambda,
        v,
        k,
        options: [
            ClassOption {
                c: l2,
                d: lambda + 2,
                l: lambda,
            },
            ClassOption {
                c: lambda + 2,
                d: l2,
                l: 2,
            },
        ],
        focus_condition: satisfies_focus_condition(k, lambda),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ImprimitiveSweep {
    pub lambda_max: u64,
    pub checked: u64,
    /// `λ` values whose family fails any invariant.
    pub failures: Vec<u64>,
}

impl ImprimitiveSweep {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks the family for every `2 ≤ λ ≤ lambda_max`.
pub fn imprimitive_sweep(lambda_max: u64) -> ImprimitiveSweep {
    let failures = (2..=lambda_max)
        .into_par_iter()
        .filter(|&l| !imprimitive_family(l).map(|f| f.is_valid()).unwrap_or(false))
        .collect();
    ImprimitiveSweep {
        lambda_max,
        checked: lambda_max.saturating_sub(1),
        failures,
    }
}
