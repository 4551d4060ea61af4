//! Exact arithmetic: rationals, truncated series, commutative polynomials,
//! Bernoulli numbers and small linear algebra.

pub mod bernoulli;
pub mod coeff;
pub mod hpoly;
pub mod linalg;
pub mod mseries;
pub mod poly;
pub mod rational;
pub mod series;

pub use bernoulli::{bernoulli, bernoulli_table, coth_half_series};
pub use coeff::Coeff;
pub use hpoly::{bernoulli_h_identity, h_generating_residual, h_poly};
pub use linalg::{linear_solve, Solution};
pub use mseries::{MSeries, MWindow};
pub use poly::CommPoly;
pub use rational::{binomial, factorial, Rational};
pub use series::{LaurentSeries, QSeries, Series, Window};
