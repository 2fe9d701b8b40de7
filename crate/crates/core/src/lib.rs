//! Alternant and Goppa codes with affine-induced automorphism groups, and
//! the folding operator that maps their duals onto duals of smaller codes
//! of the same family.

pub mod code;
pub mod field;
pub mod folding;
pub mod harness;
pub mod invariant;
pub mod matrix;
pub mod poly;
pub mod symmetry;
