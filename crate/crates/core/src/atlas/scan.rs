//! Bounded scan for simple groups with `|T| < |Out(T)|⁴`.
//!
//! Alongside the candidates, every family is probed at the edge of the scanned
//! region: the exact ratio `|Out(T)|⁴ / |T|` at the boundary must be below 1
//! and below every ratio seen earlier on the same axis. A new maximum at the
//! boundary means the bounds are too small to say anything about the tail.

use std::cmp::Ordering;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use super::{formulas, Atlas, Family, GroupFacts, PrimePower, SimpleGroupId};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Out4Bounds {
    /// Largest alternating degree and largest classical dimension scanned.
    pub n_max: u32,
    pub q_max: u64,
    pub sporadic: bool,
    /// Restrict the scan to these families (all families when `None`).
    pub families: Option<Vec<Family>>,
}

impl Out4Bounds {
    pub fn new(n_max: u32, q_max: u64, sporadic: bool) -> Self {
        Out4Bounds {
            n_max,
            q_max,
            sporadic,
            families: None,
        }
    }

    pub fn only(mut self, families: &[Family]) -> Self {
        self.families = Some(families.to_vec());
        self
    }

    fn includes(&self, family: Family) -> bool {
        self.families.as_ref().is_none_or(|fs| fs.contains(&family))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "axis", rename_all = "snake_case")]
pub enum TailAxis {
    /// Varying dimension (or degree) at a fixed field size.
    Rank { q: Option<u64> },
    /// Varying field size at a fixed dimension.
    Field { n: Option<u32> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TailFailure {
    pub family: Family,
    pub axis: TailAxis,
    pub boundary: SimpleGroupId,
    pub reason: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Out4Candidate {
    pub group: SimpleGroupId,
    #[serde(flatten)]
    pub facts: GroupFacts,
}

#[derive(Debug, Clone, Serialize)]
pub struct Out4Scan {
    pub bounds: Out4Bounds,
    pub groups_checked: usize,
    pub tail_checks: usize,
    pub candidates: Vec<Out4Candidate>,
    pub tail_failures: Vec<TailFailure>,
}

impl Out4Scan {
    pub fn candidate_ids(&self) -> Vec<SimpleGroupId> {
        self.candidates.iter().map(|c| c.group.clone()).collect()
    }

    pub fn tail_ok(&self) -> bool {
        self.tail_failures.is_empty()
    }

    pub fn into_candidates(self) -> Result<Vec<SimpleGroupId>> {
        if self.tail_failures.is_empty() {
            Ok(self.candidate_ids())
        } else {
            Err(Error::TailCheckFailed(self.tail_failures))
        }
    }
}

/// `|Out|⁴ / |T|` kept as an exact fraction.
#[derive(Debug, Clone)]
struct Ratio {
    num: BigUint,
    den: BigUint,
}

impl Ratio {
    fn of(facts: &GroupFacts) -> Self {
        Ratio {
            num: facts.out_fourth(),
            den: facts.order.clone(),
        }
    }

    fn below_one(&self) -> bool {
        self.num < self.den
    }

    fn cmp(&self, other: &Ratio) -> Ordering {
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }
}

struct Point {
    n: Option<u32>,
    q: Option<u64>,
    id: SimpleGroupId,
    facts: GroupFacts,
}

#[derive(Default)]
struct FamilyResult {
    checked: usize,
    tail_checks: usize,
    candidates: Vec<Out4Candidate>,
    failures: Vec<TailFailure>,
}

impl Atlas {
    pub fn out4_scan(&self, bounds: &Out4Bounds) -> Result<Out4Scan> {
        if bounds.n_max < 5 || bounds.q_max < 4 {
            return Err(Error::domain(format!(
                "out4 scan needs n_max ≥ 5 and q_max ≥ 4 (got {}, {})",
                bounds.n_max, bounds.q_max
            )));
        }
        Ok(self.out4_scan_unchecked(bounds))
    }

    /// Same as [`Atlas::out4_scan`] without the lower limits on the bounds.
    pub fn out4_scan_unchecked(&self, bounds: &Out4Bounds) -> Out4Scan {
        let mut jobs: Vec<Family> = vec![Family::Alternating];
        jobs.extend(Family::LIE);
        if bounds.sporadic {
            jobs.extend([Family::Sporadic, Family::Tits]);
        }
        jobs.retain(|f| bounds.includes(*f));

        let field_sizes: Vec<PrimePower> = (2..=bounds.q_max)
            .filter_map(|q| PrimePower::from_q(q).ok())
            .collect();

        let results: Vec<FamilyResult> = jobs
            .par_iter()
            .map(|&family| self.scan_family(family, bounds, &field_sizes))
            .collect();

        let mut scan = Out4Scan {
            bounds: bounds.clone(),
            groups_checked: 0,
            tail_checks: 0,
            candidates: Vec::new(),
            tail_failures: Vec::new(),
        };
        for r in results {
            scan.groups_checked += r.checked;
            scan.tail_checks += r.tail_checks;
            scan.candidates.extend(r.candidates);
            scan.tail_failures.extend(r.failures);
        }
        scan.candidates.sort_by(|a, b| {
            a.facts
                .order
                .cmp(&b.facts.order)
                .then_with(|| a.group.cmp(&b.group))
        });
        scan
    }

    fn scan_family(
        &self,
        family: Family,
        bounds: &Out4Bounds,
        fields: &[PrimePower],
    ) -> FamilyResult {
        let points = match family {
            Family::Sporadic => self
                .sporadic_table()
                .records()
                .iter()
                .map(|r| {
                    let id = SimpleGroupId::Sporadic(r.name.clone());
                    let facts = GroupFacts {
                        order: r.order.clone(),
                        out_order: r.out_order,
                    };
                    Point {
                        n: None,
                        q: None,
                        id,
                        facts,
                    }
                })
                .collect(),
            Family::Tits => {
                let facts = self.facts(&SimpleGroupId::Tits).expect("Tits group");
                vec![Point {
                    n: None,
                    q: None,
                    id: SimpleGroupId::Tits,
                    facts,
                }]
            }
            Family::Alternating => (5..=bounds.n_max)
                .map(|n| {
                    let id = SimpleGroupId::Alternating(n);
                    let facts = self.facts(&id).expect("alternating degree ≥ 5");
                    Point {
                        n: Some(n),
                        q: None,
                        id,
                        facts,
                    }
                })
                .collect(),
            lie => lie_points(lie, bounds.n_max, fields),
        };

        let mut result = FamilyResult {
            checked: points.len(),
            ..Default::default()
        };
        for p in &points {
            if p.id.is_canonical() && p.facts.order_below_out_fourth() {
                result.candidates.push(Out4Candidate {
                    group: p.id.clone(),
                    facts: p.facts.clone(),
                });
            }
        }
        if matches!(family, Family::Sporadic | Family::Tits) {
            return result;
        }

        // rank axis: one line per field size (a single line for alternating groups)
        let mut qs: Vec<Option<u64>> = points.iter().map(|p| p.q).collect();
        qs.sort_unstable();
        qs.dedup();
        for q in qs {
            let line: Vec<&Point> = points.iter().filter(|p| p.q == q).collect();
            if family == Family::Alternating || family.is_classical() {
                check_tail(family, TailAxis::Rank { q }, &line, &mut result);
            }
        }
        // field axis: one line per dimension
        if family.is_lie_type() {
            let mut ns: Vec<Option<u32>> = points.iter().map(|p| p.n).collect();
            ns.sort_unstable();
            ns.dedup();
            for n in ns {
                let line: Vec<&Point> = points.iter().filter(|p| p.n == n).collect();
                check_tail(family, TailAxis::Field { n }, &line, &mut result);
            }
        }
        result
    }
}

fn lie_points(family: Family, n_max: u32, fields: &[PrimePower]) -> Vec<Point> {
    let dims: Vec<u32> = match family.dimension_range() {
        Some((n0, step)) => (n0..=n_max).step_by(step as usize).collect(),
        None => vec![0],
    };
    let classical = family.is_classical();
    let mut points = Vec::new();
    for &n in &dims {
        for &q in fields {
            if !family.in_domain(n, q) {
                continue;
            }
            let id = SimpleGroupId::lie(family, n, q).expect("Lie family");
            let facts = GroupFacts {
                order: formulas::lie_order_parts(family, n, q.q()).order(),
                out_order: formulas::lie_out_order(family, n, q),
            };
            points.push(Point {
                n: classical.then_some(n),
                q: Some(q.q()),
                id,
                facts,
            });
        }
    }
    points
}

/// `line` is ordered by the varying parameter; its last point is the boundary.
fn check_tail(family: Family, axis: TailAxis, line: &[&Point], result: &mut FamilyResult) {
    let Some((boundary, preceding)) = line.split_last() else {
        return;
    };
    result.tail_checks += 1;
    let ratio = Ratio::of(&boundary.facts);
    let mut reasons = Vec::new();
    if !ratio.below_one() {
        reasons.push("|Out|^4/|T| ≥ 1 at the boundary".to_string());
    }
    let peak = preceding
        .iter()
        .map(|p| (Ratio::of(&p.facts), &p.id))
        .max_by(|a, b| a.0.cmp(&b.0));
    if let Some((peak, peak_id)) = peak {
        if ratio.cmp(&peak) != Ordering::Less {
            reasons.push(format!(
                "boundary ratio is not below the earlier maximum at {peak_id}"
            ));
        }
    }
    if !reasons.is_empty() {
        result.failures.push(TailFailure {
            family,
            axis,
            boundary: boundary.id.clone(),
            reason: reasons.join("; "),
        });
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_tiny_bounds() {
        assert!(Atlas::embedded()
            .out4_scan(&Out4Bounds::new(4, 16, false))
            .is_err());
        assert!(Atlas::embedded()
            .out4_scan(&Out4Bounds::new(6, 3, false))
            .is_err());
    }

    #[test]
    fn small_scan_has_no_candidates() {
        let scan = Atlas::embedded().out4_scan_unchecked(&Out4Bounds::new(6, 3, false));
        assert!(scan.candidates.is_empty());
        for fam in [Family::Suzuki, Family::Ree2G2, Family::Ree2F4] {
            assert!(scan.tail_failures.iter().all(|f| f.family != fam), "{fam}");
        }
        // A6 has a larger ratio than A5, so the alternating boundary is flagged
        assert!(scan
            .tail_failures
            .iter()
            .any(|f| f.family == Family::Alternating));
    }

    #[test]
    fn moderate_scan_finds_l34() {
        let scan = Atlas::embedded()
            .out4_scan(&Out4Bounds::new(8, 64, true))
            .unwrap();
        assert_eq!(
            scan.candidate_ids(),
            vec!["L3(4)".parse::<SimpleGroupId>().unwrap()]
        );
        assert!(scan.tail_ok(), "{:?}", scan.tail_failures);
    }

    #[test]
    fn ratio_ordering() {
        let a = Ratio {
            num: 1u32.into(),
            den: 3u32.into(),
        };
        let b = Ratio {
            num: 2u32.into(),
            den: 5u32.into(),
        };
        assert_eq!(a.cmp(&b), Ordering::Less);
        assert!(a.below_one());
    }
}
