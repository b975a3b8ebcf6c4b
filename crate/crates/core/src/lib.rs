//! Exact workbench for complexity measures of small Boolean functions, centred on
//! rational and nondeterministic degree.

pub mod boolfn;
pub mod error;
pub mod experiments;
pub mod fnspec;
pub mod linalg;
pub mod measures;
pub mod formula;
pub mod paperlab;
pub mod poly;
pub mod postsim;

pub use boolfn::{family, BooleanFunction, Restriction};
pub use error::{Error, Result};
pub use formula::ReadOnceFormula;
pub use poly::{Basis, MultilinearPolynomial};
