//! Pullback of tensors along plot germs, with an exact smoothness verdict.
//!
//! Along a germ `P`, the tensor `f(x)·dx^⊗k` pulls back to
//! `f(P(t))·P'(t)^k · dt^⊗k`. Only the scalar coefficient is computed; its
//! valuation decides smoothness.

use std::fmt;

use crate::capacity::capacity;
use crate::error::{Error, Result};
use crate::jets::{Jet1, LaurentJet, LaurentJet2};
use crate::plots::{realize_jet, PlotGerm, QuadrantPlotGerm};
use crate::scalar::Scalar;
use crate::tensors::{HalfLineTensor, QuadrantTensor};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SmoothnessStatus {
    /// The pullback coefficient has no pole.
    Smooth { valuation: i64 },
    /// The pullback coefficient has a pole of this order at `t = 0`.
    Pole { order: u32 },
    /// Flat germ and a pole within the tensor's capacity.
    FlatSmooth,
    /// Flat germ with a pole beyond capacity: not decided.
    FlatIndeterminate,
}

impl fmt::Display for SmoothnessStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SmoothnessStatus::Smooth { valuation } => write!(f, "Smooth(valuation {valuation})"),
            SmoothnessStatus::Pole { order } => write!(f, "Pole({order})"),
            SmoothnessStatus::FlatSmooth => f.write_str("FlatSmooth"),
            SmoothnessStatus::FlatIndeterminate => f.write_str("FlatIndeterminate"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SmoothnessVerdict<T> {
    pub status: SmoothnessStatus,
    /// Pullback coefficient; absent for flat germs.
    pub witness: Option<LaurentJet<T>>,
}

impl<T: Scalar> SmoothnessVerdict<T> {
    fn from_witness(w: LaurentJet<T>) -> Result<Self> {
        let status = match w.known_valuation() {
            Some(v) if v >= 0 => SmoothnessStatus::Smooth { valuation: v },
            Some(v) => SmoothnessStatus::Pole { order: (-v) as u32 },
            // vanishes to degree ≥ order + 1 ≥ 0: no pole possible
            None if w.order() >= -1 => SmoothnessStatus::Smooth { valuation: 0 },
            None => {
                return Err(Error::InsufficientTruncation(format!(
                    "pullback known only to degree {} and vanishes there",
                    w.order()
                )))
            }
        };
        Ok(SmoothnessVerdict {
            status,
            witness: Some(w),
        })
    }

    pub fn is_smooth(&self) -> bool {
        matches!(
            self.status,
            SmoothnessStatus::Smooth { .. } | SmoothnessStatus::FlatSmooth
        )
    }

    /// Order to which the pullback vanishes at 0, for smooth jet verdicts.
    pub fn vanishing_order(&self) -> Option<i64> {
        match (&self.status, &self.witness) {
            (SmoothnessStatus::Smooth { .. }, Some(w)) => Some(w.valuation_bound()),
            _ => None,
        }
    }

    /// Coefficient of `t^0` of the witness: `τ(P)₀(1, …, 1)`.
    pub fn value_at_zero(&self) -> Option<T> {
        self.witness.as_ref().and_then(|w| w.coeff(0))
    }
}

/// `coeff(P(t))·P'(t)^k` for half-line tensors; `order` is the truncation of
/// the plot jet.
pub fn pullback_halfline<T: Scalar>(
    tau: &HalfLineTensor<T>,
    plot: &PlotGerm<T>,
    order: usize,
) -> Result<SmoothnessVerdict<T>> {
    if order < 2 {
        return Err(Error::OrderTooSmall { min: 2, got: order });
    }
    let k = tau.degree();
    match plot {
        PlotGerm::Flat => {
            let status = if tau.pole_order() <= capacity(k as i64)? {
                SmoothnessStatus::FlatSmooth
            } else {
                SmoothnessStatus::FlatIndeterminate
            };
            Ok(SmoothnessVerdict { status, witness: None })
        }
        PlotGerm::Interior { .. } => {
            let p = plot.jet(order)?;
            let value = eval_at_interior(tau.coeff(), &p)?;
            let dp = p.differentiate()?;
            let w = &value * &dp.pow(k);
            SmoothnessVerdict::from_witness(LaurentJet::from_jet1(&w))
        }
        PlotGerm::Boundary { .. } => {
            let x = realize_jet(plot, order)?;
            let composed = tau.coeff().compose_positive(&x)?;
            let dp = LaurentJet::from_jet1(&plot.jet(order)?.differentiate()?);
            let w = if k == 0 {
                composed
            } else {
                &composed * &dp.powi(k as i64)?
            };
            SmoothnessVerdict::from_witness(w)
        }
    }
}

/// `f(P(t))` for a germ through `x₀ > 0`, reading the known coefficients of
/// `f` as a Laurent polynomial.
fn eval_at_interior<T: Scalar>(f: &LaurentJet<T>, p: &Jet1<T>) -> Result<Jet1<T>> {
    let order = p.order();
    let Some(unit) = f.unit_part() else {
        return Ok(Jet1::zero(order));
    };
    let mut acc = Jet1::zero(order);
    for c in unit.coeffs().iter().rev() {
        acc = &acc * p;
        acc = &acc + &Jet1::constant(c.clone(), order);
    }
    let v = f.valuation();
    let pv = if v >= 0 {
        p.pow(v as u32)
    } else {
        p.reciprocal()?.pow((-v) as u32)
    };
    Ok(&acc * &pv)
}

/// Pullback of a 1-form `f(x)dx`; see [`SmoothnessVerdict::vanishing_order`].
pub fn pullback_form<T: Scalar>(
    alpha: &HalfLineTensor<T>,
    plot: &PlotGerm<T>,
    order: usize,
) -> Result<SmoothnessVerdict<T>> {
    if alpha.degree() != 1 {
        return Err(Error::WrongDegree {
            expected: 1,
            got: alpha.degree(),
        });
    }
    pullback_halfline(alpha, plot, order)
}

/// Coefficients of `sq*(τ)` for `sq(u, v) = (u², v²)`:
/// `4u²α(u²,v²) du² + 4v²β(u²,v²) dv² + 8uvγ(u²,v²) du·dv`.
///
/// `dudv` is the coefficient of the symmetric monomial `du·dv`, i.e. twice
/// the off-diagonal entry.
#[derive(Clone, Debug, PartialEq)]
pub struct Sq2Pullback<T> {
    pub du2: LaurentJet2<T>,
    pub dv2: LaurentJet2<T>,
    pub dudv: LaurentJet2<T>,
}

/// Errors when the result would be known to total degree less than `order`.
pub fn pullback_sq2<T: Scalar>(tau: &QuadrantTensor<T>, order: usize) -> Result<Sq2Pullback<T>> {
    if order < 2 {
        return Err(Error::OrderTooSmall { min: 2, got: order });
    }
    let out = sq2_components(tau);
    let known = out.du2.order().min(out.dv2.order()).min(out.dudv.order());
    if known < order as i64 {
        return Err(Error::InsufficientTruncation(format!(
            "square-map pullback known to total degree {known}, {order} requested"
        )));
    }
    Ok(out)
}

pub(crate) fn sq2_components<T: Scalar>(tau: &QuadrantTensor<T>) -> Sq2Pullback<T> {
    Sq2Pullback {
        du2: tau.a().substitute_squares().mul_monomial(&T::from_int(4), (2, 0)),
        dv2: tau.b().substitute_squares().mul_monomial(&T::from_int(4), (0, 2)),
        dudv: tau.c().substitute_squares().mul_monomial(&T::from_int(8), (1, 1)),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum QuadrantPullback<T> {
    Path(SmoothnessVerdict<T>),
    Square(Sq2Pullback<T>),
}

/// Pullback along a quadrant germ: either the square map or a path
/// `t ↦ (px(t), py(t))`, whose coefficient is
/// `α(P)·px'² + β(P)·py'² + 2γ(P)·px'·py'`.
pub fn pullback_quadrant<T: Scalar>(
    tau: &QuadrantTensor<T>,
    plot: &QuadrantPlotGerm<T>,
    order: usize,
) -> Result<QuadrantPullback<T>> {
    match plot {
        QuadrantPlotGerm::SqMap2 => pullback_sq2(tau, order).map(QuadrantPullback::Square),
        QuadrantPlotGerm::Pair(px, py) => {
            if order < 2 {
                return Err(Error::OrderTooSmall { min: 2, got: order });
            }
            let x = realize_jet(px, order)?;
            let y = realize_jet(py, order)?;
            let dx = LaurentJet::from_jet1(&px.jet(order)?.differentiate()?);
            let dy = LaurentJet::from_jet1(&py.jet(order)?.differentiate()?);
            let lo = tau.min_valuation();
            let a = eval_along(tau.a(), &x, &y, lo)?;
            let b = eval_along(tau.b(), &x, &y, lo)?;
            let c = eval_along(tau.c(), &x, &y, lo)?;
            let two = T::from_int(2);
            let w = &(&(&a * &(&dx * &dx)) + &(&b * &(&dy * &dy))) + &(&c * &(&dx * &dy)).scale(&two);
            SmoothnessVerdict::from_witness(w).map(QuadrantPullback::Path)
        }
    }
}

/// `F(x(t), y(t))` for a truncated two-variable Laurent jet.
///
/// Unknown terms have `i + j > order` and both exponents at least `lo`; the
/// smallest `t`-valuation they can reach bounds the result's truncation.
fn eval_along<T: Scalar>(f: &LaurentJet2<T>, x: &LaurentJet<T>, y: &LaurentJet<T>, lo: i64) -> Result<LaurentJet<T>> {
    let (a, b) = (x.valuation_bound(), y.valuation_bound());
    let n = f.order() + 1;
    let tail = ((n - lo) * a + lo * b).min(lo * a + (n - lo) * b);
    let mut acc = LaurentJet::zero(tail - 1);
    for ((i, j), c) in f.terms() {
        let term = (&x.powi(i)? * &y.powi(j)?).scale(c);
        acc = &acc + &term;
    }
    Ok(acc)
}
