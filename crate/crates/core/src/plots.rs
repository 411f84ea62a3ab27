//! Normal-form germs of plots into the half-line and the quadrant.
//!
//! A germ is recentered at `t = 0`. Boundary contact is only representable as
//! `t^{2m}·unit(t)` with a positive unit, so nonnegativity holds by
//! construction and odd contact orders cannot be written down.

use std::fmt;

use crate::error::{Error, Result};
use crate::jets::{Jet1, LaurentJet};
use crate::scalar::Scalar;

/// Units and interior jets are polynomial germs; realizing them at a higher
/// order pads with exact zeros.
#[derive(Clone, Debug, PartialEq)]
pub enum PlotGerm<T> {
    /// Germ through an interior point `x₀ > 0`; `jet` has constant term `x₀`.
    Interior { base: T, jet: Jet1<T> },
    /// `t^{2m}·unit(t)` with `unit(0) > 0`.
    Boundary { m: u32, unit: Jet1<T> },
    /// All derivatives vanish at 0.
    Flat,
}

pub fn make_boundary_plot<T: Scalar>(m: i64, unit: Jet1<T>) -> Result<PlotGerm<T>> {
    if m < 1 {
        return Err(Error::NotNonnegative(format!("contact exponent 2m with m = {m} < 1")));
    }
    if !unit.constant_term().is_positive() {
        return Err(Error::NotNonnegative(format!(
            "unit constant term {} is not positive",
            unit.constant_term()
        )));
    }
    Ok(PlotGerm::Boundary { m: m as u32, unit })
}

pub fn make_interior_plot<T: Scalar>(jet: Jet1<T>) -> Result<PlotGerm<T>> {
    let base = jet.constant_term().clone();
    if !base.is_positive() {
        return Err(Error::InvalidInterior(format!("base point {base} is not positive")));
    }
    Ok(PlotGerm::Interior { base, jet })
}

impl<T: Scalar> PlotGerm<T> {
    /// The square map `t ↦ t²`.
    pub fn square() -> Self {
        Self::power(1)
    }

    /// `t ↦ t^{2m}`.
    pub fn power(m: u32) -> Self {
        PlotGerm::Boundary {
            m,
            unit: Jet1::constant(T::one(), 0),
        }
    }

    /// `t ↦ x₀ + v·t`.
    pub fn line(base: T, velocity: T) -> Result<Self> {
        make_interior_plot(Jet1::from_poly(vec![base, velocity]))
    }

    pub fn is_boundary(&self) -> bool {
        matches!(self, PlotGerm::Boundary { .. })
    }

    /// Jet of the plot to `order` as a power series (valuation 0 or `2m`).
    pub fn jet(&self, order: usize) -> Result<Jet1<T>> {
        match self {
            PlotGerm::Flat => Err(Error::FlatGerm),
            PlotGerm::Interior { jet, .. } => Ok(Jet1::new(order, jet.coeffs().to_vec())),
            PlotGerm::Boundary { m, unit } => {
                let shift = 2 * *m as usize;
                let mut c = vec![T::zero(); shift];
                c.extend(unit.coeffs().iter().cloned());
                Ok(Jet1::new(order, c))
            }
        }
    }
}

/// The plot's jet to `order` as a Laurent jet.
pub fn realize_jet<T: Scalar>(p: &PlotGerm<T>, order: usize) -> Result<LaurentJet<T>> {
    if order < 1 {
        return Err(Error::OrderTooSmall { min: 1, got: order });
    }
    Ok(LaurentJet::from_jet1(&p.jet(order)?))
}

impl<T: Scalar> fmt::Display for PlotGerm<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlotGerm::Flat => f.write_str("flat"),
            PlotGerm::Interior { base, jet } => {
                write!(f, "interior({base}; ")?;
                write_poly(f, jet)?;
                f.write_str(")")
            }
            PlotGerm::Boundary { m, unit } => {
                write!(f, "t^{}", 2 * m)?;
                let trivial = unit.coeffs().iter().skip(1).all(|c| c.is_zero()) && unit.constant_term().is_one();
                if !trivial {
                    f.write_str("*(")?;
                    write_poly(f, unit)?;
                    f.write_str(")")?;
                }
                Ok(())
            }
        }
    }
}

fn write_poly<T: Scalar>(f: &mut fmt::Formatter<'_>, j: &Jet1<T>) -> fmt::Result {
    let mut first = true;
    for (d, c) in j.coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        let neg = c.is_negative();
        match (first, neg) {
            (true, true) => f.write_str("-")?,
            (false, true) => f.write_str(" - ")?,
            (false, false) => f.write_str(" + ")?,
            (true, false) => {}
        }
        first = false;
        let a = c.abs();
        match d {
            0 => write!(f, "{a}")?,
            _ => {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                if d == 1 {
                    f.write_str("t")?;
                } else {
                    write!(f, "t^{d}")?;
                }
            }
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

/// Germ of a plot into the quadrant.
#[derive(Clone, Debug, PartialEq)]
pub enum QuadrantPlotGerm<T> {
    /// Path `t ↦ (px(t), py(t))`.
    Pair(PlotGerm<T>, PlotGerm<T>),
    /// The two-parameter square map `(u, v) ↦ (u², v²)`.
    SqMap2,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{q, Rational};

    fn poly(c: &[i64]) -> Jet1<Rational> {
        Jet1::from_poly(c.iter().map(|&x| q(x)).collect())
    }

    #[test]
    fn boundary_examples() {
        let sq = make_boundary_plot(1, poly(&[1])).unwrap();
        assert_eq!(sq, PlotGerm::square());
        assert_eq!(realize_jet(&sq, 4).unwrap(), LaurentJet::monomial(q(1), 2, 4));
        let t4 = make_boundary_plot(2, poly(&[1])).unwrap();
        assert_eq!(realize_jet(&t4, 6).unwrap(), LaurentJet::monomial(q(1), 4, 6));
        let p = make_boundary_plot(1, poly(&[1, 1])).unwrap();
        assert_eq!(
            realize_jet(&p, 4).unwrap(),
            LaurentJet::from_terms([(2, q(1)), (3, q(1))], 4)
        );
    }

    #[test]
    fn rejects_uncertified() {
        for (m, u) in [(0, poly(&[1])), (1, poly(&[0, 1])), (2, poly(&[-1]))] {
            let e = make_boundary_plot(m, u).unwrap_err();
            assert!(e.to_string().starts_with("not certified nonnegative"), "{e}");
        }
    }

    #[test]
    fn interior_and_flat() {
        let p = make_interior_plot(poly(&[1, 1])).unwrap();
        let j = realize_jet(&p, 2).unwrap();
        assert_eq!(j, LaurentJet::from_terms([(0, q(1)), (1, q(1))], 2));
        assert_eq!(j.valuation(), 0);
        assert!(make_interior_plot(poly(&[0, 1])).is_err());
        let e = realize_jet(&PlotGerm::<Rational>::Flat, 4).unwrap_err();
        assert_eq!(e.to_string(), "flat germ has no finite jet representation");
    }

    #[test]
    fn display() {
        assert_eq!(PlotGerm::<Rational>::square().to_string(), "t^2");
        assert_eq!(make_boundary_plot(2, poly(&[1, 1])).unwrap().to_string(), "t^4*(1 + t)");
        assert_eq!(
            make_interior_plot(poly(&[1, 1])).unwrap().to_string(),
            "interior(1; 1 + t)"
        );
    }
}
