//! Exact linear algebra: integer Smith form, systems mod `d`, rational row reduction.

pub mod gauss;
pub mod snf;
pub mod zmod;
