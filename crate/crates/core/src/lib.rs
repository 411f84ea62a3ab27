//! Exact jet calculus for covariant tensors on the half-line `[0, ∞[` and the
//! quadrant `[0, ∞[²`, where smoothness is tested plot by plot.
//!
//! The engine is generic over a [`Scalar`] coefficient field. The aliases
//! below fix it to arbitrary precision rationals, which is what every verdict
//! in this crate is meant to be computed with.

pub mod capacity;
pub mod cli;
pub mod decompose;
pub mod error;
pub mod jets;
pub mod metric;
pub mod numeric;
pub mod plots;
pub mod pullback;
pub mod scalar;
pub mod tensors;

pub use capacity::{capacity, capacity_table, scaling_margin, verify_capacity, CapacityReport};
pub use decompose::{
    check_gamma_parity, decompose_halfline, decompose_quadrant, Decomposition, GammaParityReport, ParityWitness,
    QuadrantDecomposition, Sq2Component,
};
pub use error::{Error, Result};
pub use jets::{
    compose, differentiate, laurent_divide, parity_decompose2, whitney_descend, Jet1, Jet2, LaurentJet, LaurentJet2,
    Parity, DEFAULT_ORDER,
};
pub use metric::{check_metric, MetricClause, MetricVerdict, MetricWitness, TestPlotFamily};
pub use numeric::{
    glaeser_landau_check, glaeser_landau_check_with, numeric_pullback_probe, Enlargement, GlaeserLandauReport,
    ProbeReport, Representation, SampledFunction,
};
pub use plots::{make_boundary_plot, make_interior_plot, realize_jet, PlotGerm, QuadrantPlotGerm};
pub use pullback::{
    pullback_form, pullback_halfline, pullback_quadrant, pullback_sq2, QuadrantPullback, SmoothnessStatus,
    SmoothnessVerdict, Sq2Pullback,
};
pub use scalar::Scalar;
pub use tensors::{make_halfline_tensor, make_quadrant_tensor, tau_sing, HalfLineTensor, QuadrantTensor};

pub type Rational = num_rational::BigRational;
pub type Jet1Q = Jet1<Rational>;
pub type Jet2Q = Jet2<Rational>;
pub type LaurentJetQ = LaurentJet<Rational>;
pub type LaurentJet2Q = LaurentJet2<Rational>;
pub type PlotGermQ = PlotGerm<Rational>;
pub type HalfLineTensorQ = HalfLineTensor<Rational>;
pub type QuadrantTensorQ = QuadrantTensor<Rational>;
pub type DecompositionQ = Decomposition<Rational>;
pub type QuadrantDecompositionQ = QuadrantDecomposition<Rational>;
pub type SmoothnessVerdictQ = SmoothnessVerdict<Rational>;
pub type MetricVerdictQ = MetricVerdict<Rational>;

/// The integer `n` as a rational.
pub fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// `n/d` as a rational. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}
