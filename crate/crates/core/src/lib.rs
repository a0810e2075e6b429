//! Exact symbolic computation of twisted Demazure-Lusztig operators and the
//! classes they generate: motivic Chern classes of Schubert cells in flag
//! varieties and of matrix Schubert varieties, and K-theoretic stable
//! envelopes. All arithmetic is exact over the rationals; every pipeline is
//! backed by an independent localization oracle.
//!
//! Module layout:
//! - [`exactalg`]: sparse Laurent polynomials and factored rational functions
//! - [`rootsys`]: root systems, Weyl groups, weights, reduced words
//! - [`dloper`]: twisted operators in the group algebra, quadratic and braid
//!   relations
//! - [`flagk`]: localized classes on flag varieties, operator recursions,
//!   stable envelopes, wall-crossing, parabolic pushforwards
//! - [`bosa`]: fixed-point localization oracle over binary sequences
//! - [`matschub`]: matrix Schubert classes and the Kirwan restriction

pub mod bosa;
pub mod dloper;
pub mod exactalg;
pub mod flagk;
pub mod matschub;
pub mod rootsys;
