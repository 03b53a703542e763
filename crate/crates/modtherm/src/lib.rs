//! Eisenstein q-series, exact period polynomials, Epstein zeta functions and
//! the thermal free energies built from them.
//!
//! Conventions used throughout: `b = -i tau = beta / 2 pi = 1 / xi`,
//! `q = exp(-pi b)`, so the Eisenstein q-expansions run over `q^(2m)`.

pub mod dirichlet;
pub mod epstein;
pub mod error;
pub mod exactnum;
pub mod periodpoly;
pub mod qseries;
pub mod quad;
mod tail;
pub mod thermal;

pub use error::{Error, Result};
pub use num_complex::Complex64;
