//! Truncation-level computations for extending a valuation of a local
//! domain to its formal completion: valuation ideals, implicit ideals,
//! graded pieces and their behaviour under a local blowing up.

// Errors carry exact witnesses by design.
#![allow(clippy::result_large_err)]

pub mod blowup;
pub mod catalog;
pub mod exactring;
pub mod implicit;
pub mod jets;
pub mod properties;
pub mod rational;
pub mod report;
pub mod runner;
pub mod scenario;
pub mod valgroup;
pub mod valideal;
pub mod valuation;
