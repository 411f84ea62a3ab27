//! Covariant tensors on the half-line and symmetric 2-tensors on the quadrant.

use crate::error::{Error, Result};
use crate::jets::{LaurentJet, LaurentJet2, DEFAULT_ORDER};
use crate::scalar::Scalar;

/// Lowest exponent accepted in tensor coefficients unless configured otherwise.
pub const DEFAULT_MIN_VALUATION: i64 = -4;

/// `coeff(x)·dx^⊗k` on `[0, ∞[`.
#[derive(Clone, Debug, PartialEq)]
pub struct HalfLineTensor<T> {
    degree: u32,
    coeff: LaurentJet<T>,
}

pub fn make_halfline_tensor<T: Scalar>(k: i64, coeff: LaurentJet<T>) -> Result<HalfLineTensor<T>> {
    if k < 0 {
        return Err(Error::NegativeDegree(k));
    }
    Ok(HalfLineTensor {
        degree: k as u32,
        coeff,
    })
}

/// `dx⊗dx / x` at the given working order.
pub fn tau_sing_with_order<T: Scalar>(order: usize) -> HalfLineTensor<T> {
    HalfLineTensor {
        degree: 2,
        coeff: LaurentJet::monomial(T::one(), -1, order as i64),
    }
}

/// `dx⊗dx / x` at [`DEFAULT_ORDER`].
pub fn tau_sing<T: Scalar>() -> HalfLineTensor<T> {
    tau_sing_with_order(DEFAULT_ORDER)
}

impl<T: Scalar> HalfLineTensor<T> {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coeff(&self) -> &LaurentJet<T> {
        &self.coeff
    }

    pub fn pole_order(&self) -> u32 {
        self.coeff.pole_order()
    }

    pub fn scale(&self, c: &T) -> Self {
        HalfLineTensor {
            degree: self.degree,
            coeff: self.coeff.scale(c),
        }
    }

    /// Sum of two tensors of the same degree.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.degree != other.degree {
            return Err(Error::WrongDegree {
                expected: self.degree,
                got: other.degree,
            });
        }
        Ok(HalfLineTensor {
            degree: self.degree,
            coeff: &self.coeff + &other.coeff,
        })
    }
}

/// `a dx² + b dy² + c (dx⊗dy + dy⊗dx)` on `[0, ∞[²`.
///
/// `c` is the off-diagonal entry γ of the symmetric coefficient matrix, so in
/// the notation `α dx² + β dy² + 2γ dx dy` the stored components are
/// `(α, β, γ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadrantTensor<T> {
    a: LaurentJet2<T>,
    b: LaurentJet2<T>,
    c: LaurentJet2<T>,
    min_valuation: i64,
}

pub fn make_quadrant_tensor<T: Scalar>(
    a: LaurentJet2<T>,
    b: LaurentJet2<T>,
    c: LaurentJet2<T>,
) -> Result<QuadrantTensor<T>> {
    make_quadrant_tensor_bounded(a, b, c, DEFAULT_MIN_VALUATION)
}

pub fn make_quadrant_tensor_bounded<T: Scalar>(
    a: LaurentJet2<T>,
    b: LaurentJet2<T>,
    c: LaurentJet2<T>,
    min_valuation: i64,
) -> Result<QuadrantTensor<T>> {
    for comp in [&a, &b, &c] {
        if let Some((vx, vy)) = comp.valuations() {
            let v = vx.min(vy);
            if v < min_valuation {
                return Err(Error::ValuationBelowMinimum {
                    valuation: v,
                    min: min_valuation,
                });
            }
        }
    }
    Ok(QuadrantTensor { a, b, c, min_valuation })
}

impl<T: Scalar> QuadrantTensor<T> {
    /// Coefficient of `dx²`.
    pub fn a(&self) -> &LaurentJet2<T> {
        &self.a
    }

    /// Coefficient of `dy²`.
    pub fn b(&self) -> &LaurentJet2<T> {
        &self.b
    }

    /// Off-diagonal entry γ.
    pub fn c(&self) -> &LaurentJet2<T> {
        &self.c
    }

    /// Lower bound on every exponent, known or beyond the truncation.
    pub fn min_valuation(&self) -> i64 {
        self.min_valuation
    }

    /// Common truncation order of the three components.
    pub fn order(&self) -> i64 {
        self.a.order().min(self.b.order()).min(self.c.order())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{q, Rational};

    #[test]
    fn tau_sing_shape() {
        let t: HalfLineTensor<Rational> = tau_sing();
        assert_eq!(t.degree(), 2);
        assert_eq!(t.coeff().known_valuation(), Some(-1));
        assert_eq!(t.coeff().leading_coeff(), Some(&q(1)));
        assert_eq!(t.pole_order(), 1);
        let t3 = t.scale(&q(3));
        assert_eq!(t3.coeff(), &LaurentJet::monomial(q(3), -1, 16));
    }

    #[test]
    fn halfline_constructor() {
        let c = LaurentJet::from_terms([(-1, q(1)), (0, q(3)), (1, q(1))], 16);
        assert_eq!(make_halfline_tensor(2, c).unwrap().pole_order(), 1);
        let dx = make_halfline_tensor(1, LaurentJet::monomial(q(1), 0, 16)).unwrap();
        assert_eq!((dx.degree(), dx.pole_order()), (1, 0));
        let f = make_halfline_tensor(0, LaurentJet::monomial(q(1), 2, 16)).unwrap();
        assert_eq!(f.degree(), 0);
        assert_eq!(
            make_halfline_tensor(-1, LaurentJet::<Rational>::zero(4)),
            Err(Error::NegativeDegree(-1))
        );
    }

    #[test]
    fn quadrant_constructor_bounds() {
        let m = |c: i64, e: (i64, i64)| LaurentJet2::monomial(q(c), e, 16);
        let t = make_quadrant_tensor(m(1, (-1, 2)), m(1, (0, -1)), m(1, (1, 1))).unwrap();
        assert_eq!(t.a().valuations(), Some((-1, 2)));
        assert!(make_quadrant_tensor(m(1, (0, 0)), m(1, (0, 0)), LaurentJet2::zero(16)).is_ok());
        assert!(make_quadrant_tensor(LaurentJet2::zero(16), LaurentJet2::zero(16), m(1, (-1, 0))).is_ok());
        assert_eq!(
            make_quadrant_tensor(m(1, (-5, 0)), m(1, (0, 0)), m(0, (0, 0))),
            Err(Error::ValuationBelowMinimum { valuation: -5, min: -4 })
        );
    }
}
