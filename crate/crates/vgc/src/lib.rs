//! Exact-arithmetic verification suites for monomial group actions on
//! del Pezzo surfaces.
//!
//! Everything is computed over exact cyclotomic numbers; no floating point
//! appears anywhere. The `report` module wires the individual verification
//! suites into a deterministic machine-readable report consumed by the `vgc`
//! binary.

pub mod cyclo;
pub mod exec;
pub mod fixtures;
pub mod funfield;
pub mod matgroup;
pub mod noether;
pub mod perm;
pub mod picard;
pub mod report;
pub mod surface;

pub(crate) mod closure;
