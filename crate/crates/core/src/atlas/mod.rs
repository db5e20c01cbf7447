//! Orders and outer automorphism group orders of the finite simple groups.
//!
//! [`Atlas`] evaluates exact formulas for the alternating and Lie-type
//! families and looks sporadic groups up in a [`SporadicTable`]. On top of
//! that it offers a bounded catalog and the scan for `|T| < |Out(T)|⁴`.

mod formulas;
mod id;
mod scan;
mod sporadic;

use std::sync::OnceLock;

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};

pub use crate::arith::odd_part;
pub use id::{Family, PrimePower, SimpleGroupId};
pub use scan::{Out4Bounds, Out4Scan, TailAxis, TailFailure};
pub use sporadic::{SporadicRecord, SporadicTable, EMBEDDED_TABLE};

pub(crate) use formulas::{lie_order_parts, max_center};

const TITS_ORDER: u64 = 17_971_200;
const TITS_OUT: u64 = 2;

/// `|T|` and `|Out(T)|`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupFacts {
    #[serde(serialize_with = "crate::report::decimal")]
    pub order: BigUint,
    pub out_order: u64,
}

impl GroupFacts {
    /// `|Out(T)|⁴`.
    pub fn out_fourth(&self) -> BigUint {
        BigUint::from(self.out_order).pow(4)
    }

    /// `|T| < |Out(T)|⁴`.
    pub fn order_below_out_fourth(&self) -> bool {
        self.order < self.out_fourth()
    }

    /// `|Aut(T)| = |T|·|Out(T)|`.
    pub fn aut_order(&self) -> BigUint {
        &self.order * self.out_order
    }
}

/// One catalog entry in export form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CatalogRecord {
    pub name: String,
    pub family: Family,
    pub n: Option<u32>,
    pub p: Option<u64>,
    pub f: Option<u32>,
    #[serde(serialize_with = "crate::report::decimal")]
    pub order: BigUint,
    pub out_order: u64,
}

impl CatalogRecord {
    pub fn new(id: &SimpleGroupId, facts: &GroupFacts) -> Self {
        let q = id.field();
        CatalogRecord {
            name: id.to_string(),
            family: id.family(),
            n: id.rank_param(),
            p: q.map(|q| q.p()),
            f: q.map(|q| q.f()),
            order: facts.order.clone(),
            out_order: facts.out_order,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Atlas {
    sporadics: SporadicTable,
}

impl Default for Atlas {
    fn default() -> Self {
        Atlas::new(SporadicTable::embedded())
    }
}

impl Atlas {
    pub fn new(sporadics: SporadicTable) -> Self {
        Atlas { sporadics }
    }

    /// Shared instance backed by the embedded sporadic table.
    pub fn embedded() -> &'static Atlas {
        static ATLAS: OnceLock<Atlas> = OnceLock::new();
        ATLAS.get_or_init(Atlas::default)
    }

    pub fn sporadic_table(&self) -> &SporadicTable {
        &self.sporadics
    }

    pub fn facts(&self, g: &SimpleGroupId) -> Result<GroupFacts> {
        g.check_domain()?;
        let facts = match g {
            SimpleGroupId::Alternating(n) => GroupFacts {
                order: formulas::alternating_order(*n),
                out_order: formulas::alternating_out(*n),
            },
            SimpleGroupId::Tits => GroupFacts {
                order: TITS_ORDER.into(),
                out_order: TITS_OUT,
            },
            SimpleGroupId::Sporadic(name) => {
                let rec = self
                    .sporadics
                    .get(name)
                    .ok_or_else(|| Error::domain(format!("{name} is not in the sporadic table")))?;
                GroupFacts {
                    order: rec.order.clone(),
                    out_order: rec.out_order,
                }
            }
            lie => {
                let fam = lie.family();
                let n = lie.rank_param().unwrap_or(0);
                let q = lie.field().expect("Lie type has a field");
                GroupFacts {
                    order: lie_order_parts(fam, n, q.q()).order(),
                    out_order: formulas::lie_out_order(fam, n, q),
                }
            }
        };
        Ok(facts)
    }

    pub fn order(&self, g: &SimpleGroupId) -> Result<BigUint> {
        self.facts(g).map(|f| f.order)
    }

    pub fn out_order(&self, g: &SimpleGroupId) -> Result<u64> {
        self.facts(g).map(|f| f.out_order)
    }

    /// Every simple group of order at most `max_order`, once per isomorphism
    /// class, sorted by `(order, identifier)`.
    pub fn enumerate_catalog(
        &self,
        max_order: &BigUint,
    ) -> impl Iterator<Item = (SimpleGroupId, GroupFacts)> {
        let mut entries = Vec::new();

        let mut n = 5;
        loop {
            let g = SimpleGroupId::Alternating(n);
            let facts = self.facts(&g).expect("alternating degree ≥ 5");
            if &facts.order > max_order {
                break;
            }
            entries.push((g, facts));
            n += 1;
        }

        for rec in self.sporadics.records() {
            if &rec.order <= max_order {
                let facts = GroupFacts {
                    order: rec.order.clone(),
                    out_order: rec.out_order,
                };
                entries.push((SimpleGroupId::Sporadic(rec.name.clone()), facts));
            }
        }
        if BigUint::from(TITS_ORDER) <= *max_order {
            entries.push((
                SimpleGroupId::Tits,
                GroupFacts {
                    order: TITS_ORDER.into(),
                    out_order: TITS_OUT,
                },
            ));
        }

        for family in Family::LIE {
            match family.dimension_range() {
                Some((n0, step)) => {
                    let mut n = n0;
                    loop {
                        let floor = lie_order_parts(family, n, family.min_field());
                        if floor.numerator > max_order * max_center(family, n) {
                            break;
                        }
                        self.catalog_field_sweep(family, n, max_order, &mut entries);
                        n += step;
                    }
                }
                None => self.catalog_field_sweep(family, 0, max_order, &mut entries),
            }
        }

        entries.sort_by(|a, b| a.1.order.cmp(&b.1.order).then_with(|| a.0.cmp(&b.0)));
        entries.into_iter()
    }

    fn catalog_field_sweep(
        &self,
        family: Family,
        n: u32,
        max_order: &BigUint,
        out: &mut Vec<(SimpleGroupId, GroupFacts)>,
    ) {
        let bound = max_order * max_center(family, n);
        for q in 2u64.. {
            let Ok(pp) = PrimePower::from_q(q) else {
                continue;
            };
            let parts = lie_order_parts(family, n, q);
            // the unreduced order grows with q, so past this point nothing fits
            if parts.numerator > bound {
                break;
            }
            if !family.in_domain(n, pp) {
                continue;
            }
            let id = SimpleGroupId::lie(family, n, pp).expect("Lie family");
            if !id.is_canonical() {
                continue;
            }
            let order = parts.order();
            if &order <= max_order {
                let out_order = formulas::lie_out_order(family, n, pp);
                out.push((id, GroupFacts { order, out_order }));
            }
        }
    }
}

pub fn order(g: &SimpleGroupId) -> Result<BigUint> {
    Atlas::embedded().order(g)
}

pub fn out_order(g: &SimpleGroupId) -> Result<u64> {
    Atlas::embedded().out_order(g)
}

pub fn enumerate_catalog(max_order: &BigUint) -> Vec<(SimpleGroupId, GroupFacts)> {
    Atlas::embedded().enumerate_catalog(max_order).collect()
}

/// All groups with `|T| < |Out(T)|⁴` within the bounds; fails if any tail check fails.
pub fn out4_candidates(n_max: u32, q_max: u64, sporadic: bool) -> Result<Vec<SimpleGroupId>> {
    Atlas::embedded()
        .out4_scan(&Out4Bounds::new(n_max, q_max, sporadic))?
        .into_candidates()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> SimpleGroupId {
        s.parse().unwrap()
    }

    #[test]
    fn order_examples() {
        assert_eq!(order(&g("A5")).unwrap(), BigUint::from(60u32));
        assert_eq!(order(&g("L2(7)")).unwrap(), BigUint::from(168u32));
        assert_eq!(order(&g("L3(4)")).unwrap(), BigUint::from(20160u32));
        assert!(matches!(
            order(&SimpleGroupId::Alternating(4)),
            Err(Error::Domain(_))
        ));
        assert!(matches!(order(&g("Xyz")), Err(Error::Domain(_))));
    }

    #[test]
    fn out_examples() {
        assert_eq!(out_order(&g("L3(4)")).unwrap(), 12);
        assert_eq!(out_order(&g("A6")).unwrap(), 4);
        assert_eq!(out_order(&g("A7")).unwrap(), 2);
        assert_eq!(out_order(&g("2F4(2)'")).unwrap(), 2);
        assert_eq!(out_order(&g("M12")).unwrap(), 2);
    }

    #[test]
    fn catalog_examples() {
        let names = |max: u64| -> Vec<String> {
            enumerate_catalog(&BigUint::from(max))
                .iter()
                .map(|(id, _)| id.to_string())
                .collect()
        };
        assert_eq!(names(200), vec!["A5", "L2(7)"]);
        assert!(names(59).is_empty());
        let upto400 = names(400);
        assert_eq!(upto400.iter().filter(|n| *n == "A6").count(), 1);
        assert!(!upto400.iter().any(|n| n == "L2(9)"));
        assert_eq!(upto400, vec!["A5", "L2(7)", "A6"]);
    }

    #[test]
    fn catalog_filters_sporadics_by_order() {
        // M11 through He have order at most 10^10; Ru is the next one up
        let cat = enumerate_catalog(&BigUint::from(10_000_000_000u64));
        let sporadics = cat
            .iter()
            .filter(|(id, _)| id.family() == Family::Sporadic)
            .count();
        assert_eq!(sporadics, 11);
        assert!(cat.iter().any(|(id, _)| *id == SimpleGroupId::Tits));
        assert!(cat.windows(2).all(|w| w[0].1.order <= w[1].1.order));
    }

    #[test]
    fn facts_helpers() {
        let f = Atlas::embedded().facts(&g("L3(4)")).unwrap();
        assert_eq!(f.out_fourth(), BigUint::from(20736u32));
        assert!(f.order_below_out_fourth());
        assert_eq!(f.aut_order(), BigUint::from(241920u32));
        assert_eq!(odd_part(&f.out_fourth()), BigUint::from(81u32));
    }
}
