//! Curves in Lorentz-Minkowski space: Frenet frames, g-position vector fields,
//! and numerical audits of their characterizations.
// NaN-rejecting comparisons and index loops over several parallel columns are deliberate.
#![allow(
    clippy::neg_cmp_op_on_partial_ord,
    clippy::needless_range_loop,
    clippy::type_complexity
)]

pub mod characterize;
pub mod error;
pub mod expr;
pub mod frenet;
pub mod gfield;
pub mod metric;
pub mod numeric;
pub mod report;
