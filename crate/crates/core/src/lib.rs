//! Exact normal forms, PBW checks, re-filtration certificates and growth
//! counts for bounded extensions of commutative Laurent rings.
//!
//! The pipeline: build a [`algebra::Presentation`], compute standard
//! representations with [`algebra::Presentation::normal_form`], check
//! confluence with [`graded::pbw_check`], synthesize an ℕ-filtration with
//! [`refilter::refilter`] and count basis monomials with [`growth`].

pub mod algebra;
pub mod base;
pub mod cli;
pub mod field;
pub mod graded;
pub mod growth;
pub mod order;
pub mod presets;
pub mod refilter;
pub mod sample;
