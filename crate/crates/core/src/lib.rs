//! Sublinear property testing of 2-clusterability for bounded-degree graphs.
//!
//! The crate has two halves. The query-efficient tester ([`tester`]) only
//! touches the graph through its neighbor oracle and counts every probe.
//! The exact oracles ([`spectral`], [`geometry`], [`walks`] with exact
//! distributions, brute-force conductance) work offline on small graphs and
//! are used to certify generated instances and to check the analysis.
//!
//! Numerical code is generic over [`Scalar`] (`f32` or `f64`); the aliases
//! below fix the common `f64` instantiations.

pub mod corpus;
pub mod error;
pub mod estimators;
pub mod experiment;
pub mod generators;
pub mod geometry;
pub mod graph;
pub mod linalg;
pub mod scalar;
pub mod spectral;
pub mod tester;
pub mod verifier;
pub mod walks;

pub use error::{Error, Result};
pub use graph::{Graph, Vertex, VertexSet};
pub use scalar::Scalar;
pub use tester::{cluster_test, Constants, Mode, PracticalConfig, TestParams, TestReport, Verdict};

pub type Spectrum64 = spectral::Spectrum<f64>;
pub type Gram2F64 = spectral::Gram2<f64>;
pub type Distribution64 = walks::Distribution<f64>;
pub type CenteredVector64 = walks::CenteredVector<f64>;
pub type SymMatrix64 = linalg::SymMatrix<f64>;
pub type Certificate64 = geometry::CollinearityCertificate<f64>;
