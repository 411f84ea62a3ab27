//! Riemannian-metric admissibility of half-line 2-tensors over a finite family
//! of test germs.
//!
//! At a boundary-touching germ every pointed 1-form `f(x)dx` evaluates to
//! `f(0)·P'(0) = 0`, so definiteness forces `g(P)₀(1,1) = 0` there. At an
//! interior germ with nonzero velocity `dx` evaluates to the velocity, so
//! `g(P)₀(1,1)` must be strictly positive.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::decompose::ensure_smooth_on_halfline;
use crate::error::{Error, Result};
use crate::jets::DEFAULT_ORDER;
use crate::plots::PlotGerm;
use crate::pullback::pullback_halfline;
use crate::scalar::Scalar;
use crate::tensors::HalfLineTensor;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MetricClause {
    Positivity,
    DefinitenessZeroRequired,
    DefinitenessNonzeroRequired,
}

impl fmt::Display for MetricClause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MetricClause::Positivity => "positivity",
            MetricClause::DefinitenessZeroRequired => "definiteness-zero-required",
            MetricClause::DefinitenessNonzeroRequired => "definiteness-nonzero-required",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MetricWitness<T> {
    pub plot: PlotGerm<T>,
    /// `g(P)₀(1,1)`, or for a sign violation along the germ the leading
    /// coefficient of the pullback.
    pub value: T,
    /// Degree of `t` at which `value` was read (0 for pointwise checks).
    pub degree: i64,
    pub clause: MetricClause,
}

/// Outcome of [`check_metric`]. A rejection comes with a genuine
/// counterexample; an acceptance only speaks for the tested family.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricVerdict<T> {
    pub accepted: bool,
    pub witness: Option<MetricWitness<T>>,
}

impl<T> MetricVerdict<T> {
    pub const NOTE: &'static str = "rejections are certain; acceptance covers only the tested plot family";
}

#[derive(Clone, Debug, PartialEq)]
pub struct TestPlotFamily<T> {
    /// Boundary germs `t^{2m}`, checked in this order.
    pub boundary_ms: Vec<u32>,
    /// Interior germs `x₀ + velocity·t`, checked after the boundary germs.
    pub interior_points: Vec<T>,
    pub interior_velocity: T,
    /// Truncation used for the pullbacks.
    pub order: usize,
}

impl<T: Scalar> Default for TestPlotFamily<T> {
    fn default() -> Self {
        TestPlotFamily {
            boundary_ms: vec![1, 2, 3],
            interior_points: vec![T::one() / T::from_int(2), T::one(), T::from_int(2)],
            interior_velocity: T::one(),
            order: DEFAULT_ORDER,
        }
    }
}

impl<T: Scalar> TestPlotFamily<T> {
    fn validate(&self) -> Result<()> {
        if self.boundary_ms.contains(&0) {
            return Err(Error::InvalidArgument("boundary germs need m ≥ 1".into()));
        }
        if let Some(x) = self.interior_points.iter().find(|x| !x.is_positive()) {
            return Err(Error::InvalidArgument(format!("interior point {x} is not positive")));
        }
        if self.interior_velocity.is_zero() {
            return Err(Error::InvalidArgument("interior velocity must be nonzero".into()));
        }
        Ok(())
    }
}

pub fn check_metric<T: Scalar>(g: &HalfLineTensor<T>, fam: &TestPlotFamily<T>) -> Result<MetricVerdict<T>> {
    if g.degree() != 2 {
        return Err(Error::WrongDegree {
            expected: 2,
            got: g.degree(),
        });
    }
    ensure_smooth_on_halfline(g)?;
    fam.validate()?;
    let order = fam.order.max(2);
    let reject = |plot: PlotGerm<T>, value: T, degree: i64, clause| {
        Ok(MetricVerdict {
            accepted: false,
            witness: Some(MetricWitness {
                plot,
                value,
                degree,
                clause,
            }),
        })
    };

    let boundary: Vec<PlotGerm<T>> = fam.boundary_ms.iter().map(|&m| PlotGerm::power(m)).collect();
    let mut boundary_witnesses = Vec::with_capacity(boundary.len());
    for plot in &boundary {
        let v = pullback_halfline(g, plot, order)?;
        let value = v.value_at_zero().expect("order ≥ 0 is known");
        if value.is_negative() {
            return reject(plot.clone(), value, 0, MetricClause::Positivity);
        }
        if !value.is_zero() {
            return reject(plot.clone(), value, 0, MetricClause::DefinitenessZeroRequired);
        }
        boundary_witnesses.push(v.witness.expect("boundary germs carry a jet"));
    }
    for x0 in &fam.interior_points {
        let plot = PlotGerm::line(x0.clone(), fam.interior_velocity.clone())?;
        let value = pullback_halfline(g, &plot, order)?.value_at_zero().expect("known");
        if value.is_negative() {
            return reject(plot, value, 0, MetricClause::Positivity);
        }
        if value.is_zero() {
            return reject(plot, value, 0, MetricClause::DefinitenessNonzeroRequired);
        }
    }
    // sign of the pullback along each boundary germ near, not at, t = 0
    for (plot, w) in boundary.into_iter().zip(boundary_witnesses) {
        if let Some(lead) = w.leading_coeff().filter(|c| c.is_negative()) {
            return reject(plot, lead.clone(), w.valuation(), MetricClause::Positivity);
        }
    }
    Ok(MetricVerdict {
        accepted: true,
        witness: None,
    })
}
