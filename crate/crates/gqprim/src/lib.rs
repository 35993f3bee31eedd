//! Exact-arithmetic toolkit for point-primitive generalised quadrangles:
//! group-order catalogues, centraliser witnesses, parameter sieving, and
//! brute-force verification on small quadrangles.
//!
//! Everything numerical is exact: big integers throughout, comparisons of
//! fractional powers done by cross-powering, never floating point.

pub mod analyses;
pub mod catalog;
pub mod centralisers;
pub mod config;
pub mod data;
pub mod geometry;
pub mod nat;
pub mod par;
pub mod perm;
pub mod solver;

pub use catalog::GroupId;
pub use nat::Nat;
