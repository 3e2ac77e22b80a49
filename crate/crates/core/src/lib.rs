//! Reciprocal maps and the graded rings they define.
//!
//! For `A = F_q[t]` and `N = (t^n)`, an `A`-reciprocal map on
//! `V = (t^{-n}A/A)^r` is the reciprocal of a level structure of a Drinfeld
//! module, allowed to degenerate. This crate provides exact arithmetic for
//! such maps, the Drinfeld modules they produce, and a rank engine for the
//! graded pieces of the rings `R_V` and `R_n` presented by the universal
//! relations.

pub mod cli;
pub mod drinfeld;
pub mod fields;
pub mod levelmod;
pub mod presentation;
pub mod recipmap;
pub mod symalg;
