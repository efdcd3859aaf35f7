//! Exact algebra of closed-string monodromy variables.

pub mod algebra;
pub mod basis;
pub mod cache;
pub mod clifford;
pub mod enveloping;
pub mod error;
pub mod hpoly;
pub mod invariants;
pub mod lie;
pub mod linalg;
pub mod metric;
pub mod poisson;
pub mod poly;
pub mod rational;
pub mod report;
pub mod sector;
pub mod word;

pub use algebra::Algebra;
pub use basis::{BlockBasis, ShuffleBasis};
pub use clifford::{CliffordElement, LogPhi, PrSeries};
pub use error::{Error, Result};
pub use hpoly::HPoly;
pub use metric::Metric;
pub use lie::{CElement, TensorElement};
pub use poly::{CommPoly, Monomial, NcPoly};
pub use rational::Rational;
pub use report::{SectorReport, Verdict};
pub use sector::SectorSpec;
pub use word::{Gen, GenKind, Word};
