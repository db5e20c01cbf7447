//! Exact-integer checks behind the reduction of flag-transitive symmetric
//! designs with `k > λ(λ−2)` to the affine and almost simple cases.
//!
//! - [`design`]: parameter identities, admissibility and the ratio bounds.
//! - [`atlas`]: orders and `|Out|` of finite simple groups, the bounded catalog
//!   and the `|T| < |Out(T)|⁴` scan.
//! - [`diagonal`], [`product`]: eliminations of the simple diagonal and product types.
//! - [`imprimitive`]: the point-imprimitive parameter family.
//! - [`report`]: the full pipeline and its JSON / Markdown report.

pub mod arith;
pub mod atlas;
pub mod design;
pub mod diagonal;
pub mod error;
pub mod imprimitive;
pub mod product;
pub mod report;

pub use atlas::{
    Atlas, Family, GroupFacts, Out4Bounds, Out4Scan, PrimePower, SimpleGroupId, SporadicTable,
};
pub use design::{DesignParams, SymmetricParams};
pub use diagonal::{DiagonalCase, DiagonalScan};
pub use error::{Error, Result};
pub use imprimitive::ImprimitiveFamily;
pub use product::{M4Report, ProductCase, ProductTriple};
pub use report::{OnanScottType, ReduceConfig, ReductionReport, ReportFormat, Verdict};
