//! Exact-arithmetic laboratory for multiplicity estimates of Mahler and
//! differential systems: truncated power series over Q and F_p with certified
//! vanishing orders, bigraded polynomial rings with bi-homogenization, series
//! solvers, Groebner-based ideal computations, zero-cycle transference checks,
//! stability analysis for linear Mahler systems, and a numerical audit of the
//! multiplicity bounds.

// Index loops mirror the matrix/series notation throughout.
#![allow(clippy::needless_range_loop)]

pub mod audit;
pub mod bipoly;
pub mod cli;
pub mod config;
pub mod constants;
pub mod error;
pub mod exactnum;
pub mod fixtures;
pub mod idealkit;
pub mod linalg;
pub mod mpoly;
pub mod parser;
pub mod projgeo;
pub mod stabledyn;
pub mod systems;

pub use error::{Error, Result};
