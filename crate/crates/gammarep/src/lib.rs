//! Representations of the digamma, polygamma and log-Gamma functions and of
//! Euler's constant, together with closed-form summations of the cosine
//! integral over arithmetic progressions.
//!
//! Every representation is evaluated as written and cross-checked against
//! an independent reference oracle (`psi_ref`, `polygamma_ref`,
//! `lngamma_ref`) or against the other side of an identity.

pub mod asymsums;
pub mod cisums;
pub mod cli;
pub mod digamma;
pub mod euler;
pub mod loggamma;
pub mod polygamma;
pub mod report;
pub mod suites;
pub mod error;
pub mod numkernel;

pub use error::{Error, Result};
pub use numkernel::{Ctrl, EvalResult};
