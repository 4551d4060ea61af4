//! Exact-arithmetic verification engine for the elliptic KZB connection on the
//! universal elliptic curve, in the rational gauge, with numerical cross-checks.

pub mod exactcore;
pub mod freelie;
pub mod kzbform;
pub mod modforms;
pub mod numeric;
pub mod report;

pub use exactcore::{CommPoly, MSeries, QSeries, Rational, Series};
pub use report::{CheckReport, Status, Verdict};
