//! Exact computations with compound Du Val threefold germs.
//!
//! Polynomials carry rational coefficients and stand for analytic germs at
//! the origin through their jets. On top of that arithmetic the crate
//! provides:
//!
//! - Milnor algebras and finite determinacy ([`local_algebra`]),
//! - jet substitutions, their inverses and weight checks ([`weight_maps`]),
//! - splitting-lemma and weighted normal forms with witnesses ([`normal_form`]),
//! - ADE and `cA_n` recognition ([`classifier`]),
//! - divisorial contractions given by weighted blowups ([`atlas`], [`blowup`]).
//!
//! ```
//! use cadiv::atlas::enumerate_contractions;
//! use cadiv::parse::parse_polynomial;
//!
//! let f = parse_polynomial("x*y + z^4 + t^4").unwrap();
//! let census = enumerate_contractions(&f).unwrap();
//! assert_eq!(census.classes.len(), 2);
//! assert_eq!(census.count_over_base.to_string(), "3");
//! ```

pub mod atlas;
pub mod blowup;
pub mod classifier;
pub mod cli;
pub mod error;
pub mod linalg;
pub mod local_algebra;
pub mod normal_form;
pub mod parse;
pub mod poly;
pub mod weight_maps;

pub use error::{Error, Result};
pub use poly::{Degree, Monomial, Polynomial, WeightVector};
