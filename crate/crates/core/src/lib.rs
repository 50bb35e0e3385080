//! Exact earth mover's coefficients of integer histograms.
//!
//! A histogram with `n` bins and `s` data points is a composition in
//! `C(s, n)`, and each composition corresponds to a Young diagram inside an
//! `s x (n-1)` box. The earth mover's coefficient of a tuple of compositions
//! equals the unimodal symmetric difference of their diagrams, which this
//! crate computes directly and cross-checks against the word-matrix route
//! and brute-force transport search.
//!
//! Beyond single values the crate tabulates EMC against weighted
//! differences, evaluates the plane-partition proportion formula, expands
//! the two-histogram generating function, and encodes weighted-difference
//! distributions as `sl_d` characters.
//!
//! Exhaustive enumerations run on rayon when the default `parallel` feature
//! is enabled and sequentially otherwise.

pub mod characters;
pub mod compositions;
pub mod emc;
pub mod error;
pub mod par;
pub mod qseries;
pub mod statistics;

pub use compositions::{enumerate, parse_tuple, Composition, Word, YoungDiagram};
pub use emc::{emc, emc_with, Method};
pub use error::{Error, Result};
pub use par::{Enumeration, Strategy};
pub use qseries::{LaurentPolynomial, PowerSeriesTruncated};
pub use statistics::{DValue, DistributionTable};
