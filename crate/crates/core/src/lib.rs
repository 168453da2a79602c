//! Nonadaptive multi-group testing.
//!
//! A test is a multiset of items: measurement `i` takes `a_ij` copies of
//! item `j`, with `a_ij` in `0..q`, and reports `v_i = sum_j a_ij x_j`. The
//! unknown `x` has at most `d` nonzero entries drawn from a finite level set
//! `D`. This crate builds q-ary additive `(w, d)`-disjunct matrices, encodes
//! status vectors, and decodes them exactly, with brute-force oracles for
//! every claim at desk scale.
//!
//! All arithmetic is exact ([`Rational`]).

pub mod alphabet;
pub mod budget;
pub mod construct;
pub mod decode;
pub mod disjunct;
pub mod error;
pub mod exec;
pub mod io;
pub mod matrix;
pub mod rational;
pub mod simulate;
pub mod subsets;
pub mod transform;
pub mod vector;

pub use alphabet::{Alphabet, Sidedness};
pub use budget::Budget;
pub use error::{Error, Result};
pub use exec::Execution;
pub use matrix::QaryMatrix;
pub use rational::Rational;
pub use transform::AffineMap;
pub use vector::{dominates, encode, threshold_indicator, OutcomeVector, SparseVector, ThresholdMode};
