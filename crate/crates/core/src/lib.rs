//! Certified bounds for kissing numbers and spherical codes.
//!
//! Upper bounds on `A(n, s)`, the largest spherical code in dimension `n`
//! with all pairwise inner products at most `s`, come from the Delsarte
//! linear-programming family (Levenshtein closed forms, LP search over
//! Gegenbauer expansions, the cap-refined variant) and from the geometric
//! Fejes Tóth and Coxeter–Böröczky bounds. Lower bounds come from explicit
//! configurations: Constructions A and B on binary codes and a registry of
//! classical spherical codes whose parameters are checked on load.
//!
//! The kissing number is `tau_n = A(n, 1/2)`.

pub mod analysis;
pub mod cli;
pub mod constructions;
pub mod error;
pub mod geometric;
pub mod levenshtein;
pub mod lp;
pub mod musin;
pub mod polynomials;
pub mod report;
pub mod tables;

pub use error::{Error, Result};
pub use polynomials::{GegenbauerExpansion, Polynomial};
pub use report::{BoundReport, Certificate, Method};
