use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::Jet1;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Truncated Laurent series `Σ_{d=v}^{order} c_d t^d`.
///
/// Canonical form: when nonzero, the coefficient at `valuation` is nonzero and
/// `coeffs` covers exactly the degrees `valuation..=order`. The zero jet has
/// no coefficients and valuation 0; its `order` still records up to which
/// degree it is known to vanish.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentJet<T> {
    valuation: i64,
    coeffs: Vec<T>,
    order: i64,
}

impl<T: Scalar> LaurentJet<T> {
    /// Coefficients start at degree `start`; everything past `order` is
    /// dropped and missing degrees up to `order` are zero.
    pub fn new(start: i64, coeffs: Vec<T>, order: i64) -> Self {
        let mut j = LaurentJet {
            valuation: start,
            coeffs,
            order,
        };
        j.normalize();
        j
    }

    pub fn zero(order: i64) -> Self {
        LaurentJet {
            valuation: 0,
            coeffs: Vec::new(),
            order,
        }
    }

    pub fn monomial(c: T, degree: i64, order: i64) -> Self {
        Self::new(degree, vec![c], order)
    }

    /// From `(degree, coefficient)` pairs; repeated degrees accumulate.
    pub fn from_terms<I: IntoIterator<Item = (i64, T)>>(terms: I, order: i64) -> Self {
        let terms: Vec<(i64, T)> = terms.into_iter().filter(|(d, _)| *d <= order).collect();
        let Some(start) = terms.iter().map(|(d, _)| *d).min() else {
            return Self::zero(order);
        };
        let mut coeffs = vec![T::zero(); (order - start + 1) as usize];
        for (d, c) in terms {
            let i = (d - start) as usize;
            coeffs[i] = coeffs[i].clone() + c;
        }
        Self::new(start, coeffs, order)
    }

    pub fn from_jet1(j: &Jet1<T>) -> Self {
        Self::new(0, j.coeffs().to_vec(), j.order() as i64)
    }

    fn normalize(&mut self) {
        let keep = (self.order - self.valuation + 1).max(0) as usize;
        self.coeffs.truncate(keep);
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None => {
                self.coeffs.clear();
                self.valuation = 0;
            }
            Some(k) => {
                self.coeffs.drain(..k);
                self.valuation += k as i64;
                let len = (self.order - self.valuation + 1) as usize;
                self.coeffs.resize(len, T::zero());
            }
        }
    }

    /// Stored valuation; 0 for the zero jet by convention.
    pub fn valuation(&self) -> i64 {
        self.valuation
    }

    /// Highest degree whose coefficient is known.
    pub fn order(&self) -> i64 {
        self.order
    }

    /// Coefficients for degrees `valuation..=order`.
    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Exact valuation if it is determined by the known coefficients.
    pub fn known_valuation(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.valuation)
    }

    /// Lower bound on the true valuation.
    pub fn valuation_bound(&self) -> i64 {
        if self.is_zero() {
            self.order + 1
        } else {
            self.valuation
        }
    }

    /// `max(0, -valuation)` for nonzero jets; 0 for zero.
    pub fn pole_order(&self) -> u32 {
        if self.is_zero() {
            0
        } else {
            (-self.valuation).max(0) as u32
        }
    }

    pub fn leading_coeff(&self) -> Option<&T> {
        self.coeffs.first()
    }

    /// Coefficient of `t^d`; `None` past the truncation.
    pub fn coeff(&self, d: i64) -> Option<T> {
        if d > self.order {
            None
        } else if self.is_zero() || d < self.valuation {
            Some(T::zero())
        } else {
            Some(self.coeffs[(d - self.valuation) as usize].clone())
        }
    }

    /// Nonzero `(degree, coefficient)` pairs in increasing degree.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &T)> + '_ {
        let v = self.valuation;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (v + i as i64, c))
    }

    pub fn truncate(&self, order: i64) -> Self {
        assert!(order <= self.order, "cannot extend a jet's truncation");
        Self::new(self.valuation, self.coeffs.clone(), order)
    }

    pub fn scale(&self, c: &T) -> Self {
        let coeffs = self.coeffs.iter().map(|a| a.clone() * c.clone()).collect();
        Self::new(self.valuation, coeffs, self.order)
    }

    /// Multiplication by `t^shift`.
    pub fn shift(&self, shift: i64) -> Self {
        LaurentJet {
            valuation: if self.is_zero() { 0 } else { self.valuation + shift },
            coeffs: self.coeffs.clone(),
            order: self.order + shift,
        }
    }

    /// Exact substitution `x ↦ t²`. Odd degree `2·order + 1` cannot occur, so
    /// it is known as well.
    pub fn substitute_square(&self) -> Self {
        Self::from_terms(self.terms().map(|(d, c)| (2 * d, c.clone())), 2 * self.order + 1)
    }

    /// `t^{-v}·self` as a power series; `None` for the zero jet.
    pub fn unit_part(&self) -> Option<Jet1<T>> {
        if self.is_zero() {
            return None;
        }
        Some(Jet1::from_poly(self.coeffs.clone()))
    }

    /// Reinterprets a jet with no pole as an ordinary power series.
    pub fn to_jet1(&self) -> Result<Jet1<T>> {
        if self.order < 0 {
            return Err(Error::InsufficientTruncation(format!(
                "jet known only to degree {}",
                self.order
            )));
        }
        if !self.is_zero() && self.valuation < 0 {
            return Err(Error::InvalidArgument(format!(
                "jet has a pole of order {}",
                -self.valuation
            )));
        }
        let mut c = vec![T::zero(); self.valuation.max(0) as usize];
        c.extend(self.coeffs.iter().cloned());
        Ok(Jet1::new(self.order as usize, c))
    }

    /// Splits into the part of negative degree and the part of degree ≥ 0.
    pub fn split_at_zero(&self) -> (Self, Self) {
        let neg = self.terms().filter(|(d, _)| *d < 0).map(|(d, c)| (d, c.clone()));
        let pos = self.terms().filter(|(d, _)| *d >= 0).map(|(d, c)| (d, c.clone()));
        (Self::from_terms(neg, self.order), Self::from_terms(pos, self.order))
    }

    /// `1/self`, known to degree `order − 2·valuation`.
    pub fn reciprocal(&self) -> Result<Self> {
        let unit = self.unit_part().ok_or(Error::DivisionByZero)?;
        let inv = unit.reciprocal()?;
        let v = self.valuation;
        Ok(Self::new(-v, inv.coeffs().to_vec(), self.order - 2 * v))
    }

    /// Integer power, negative exponents through [`Self::reciprocal`].
    ///
    /// `powi(0)` is the constant 1 at the relative precision of `self`.
    pub fn powi(&self, n: i64) -> Result<Self> {
        let base = if n < 0 { self.reciprocal()? } else { self.clone() };
        if n == 0 {
            return Ok(Self::monomial(
                T::one(),
                0,
                (self.order - self.valuation_bound()).max(0),
            ));
        }
        let mut acc = base.clone();
        for _ in 1..n.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Composition `self(x(t))` with `x(t)` a jet of positive valuation.
    ///
    /// The unknown tail of `self` starts at degree `order + 1`, which in
    /// `t` sits at valuation `(order + 1)·val(x)`.
    pub fn compose_positive(&self, x: &LaurentJet<T>) -> Result<Self> {
        let xv = x
            .known_valuation()
            .ok_or_else(|| Error::InsufficientTruncation("plot jet vanishes to its truncation".into()))?;
        if xv <= 0 {
            return Err(Error::CompositionConstantTerm);
        }
        let tail = (self.order + 1).saturating_mul(xv) - 1;
        if self.is_zero() {
            return Ok(Self::zero(tail));
        }
        let xj = x.to_jet1()?;
        let unit = self.unit_part().expect("nonzero");
        let outer = Jet1::new((self.order - self.valuation) as usize, unit.coeffs().to_vec());
        let composed = Self::from_jet1(&xj.compose_into(&outer)?);
        let r = if self.valuation == 0 {
            composed
        } else {
            &x.powi(self.valuation)? * &composed
        };
        Ok(r.truncate(r.order.min(tail)))
    }
}

/// `num / den`: valuation `v_num − v_den`, known to degree
/// `min(order_num − v_den, order_den − 2·v_den + v_num)`.
pub fn laurent_divide<T: Scalar>(num: &LaurentJet<T>, den: &LaurentJet<T>) -> Result<LaurentJet<T>> {
    Ok(num * &den.reciprocal()?)
}

impl<T: Scalar> Add for &LaurentJet<T> {
    type Output = LaurentJet<T>;
    fn add(self, rhs: Self) -> LaurentJet<T> {
        let order = self.order.min(rhs.order);
        LaurentJet::from_terms(self.terms().chain(rhs.terms()).map(|(d, c)| (d, c.clone())), order)
    }
}

impl<T: Scalar> Neg for &LaurentJet<T> {
    type Output = LaurentJet<T>;
    fn neg(self) -> LaurentJet<T> {
        LaurentJet {
            valuation: self.valuation,
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
            order: self.order,
        }
    }
}

impl<T: Scalar> Sub for &LaurentJet<T> {
    type Output = LaurentJet<T>;
    fn sub(self, rhs: Self) -> LaurentJet<T> {
        self + &(-rhs)
    }
}

impl<T: Scalar> Mul for &LaurentJet<T> {
    type Output = LaurentJet<T>;
    fn mul(self, rhs: Self) -> LaurentJet<T> {
        let order = (self.order + rhs.valuation_bound()).min(rhs.order + self.valuation_bound());
        if self.is_zero() || rhs.is_zero() {
            return LaurentJet::zero(order);
        }
        let start = self.valuation + rhs.valuation;
        let len = (order - start + 1).max(0) as usize;
        let mut coeffs = vec![T::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(len - i) {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        LaurentJet::new(start, coeffs, order)
    }
}

super::jet1::forward_owned!(LaurentJet, Add::add, Sub::sub, Mul::mul);

impl<T: Scalar> fmt::Display for LaurentJet<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        super::write_series(f, "x", self.terms())?;
        write!(f, " + O(x^{})", self.order + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{q, Rational};

    fn mono(c: i64, d: i64, order: i64) -> LaurentJet<Rational> {
        LaurentJet::monomial(q(c), d, order)
    }

    #[test]
    fn canonical_forms() {
        let j = LaurentJet::new(-2, vec![q(0), q(0), q(3)], 4);
        assert_eq!(j.valuation(), 0);
        assert_eq!(j.coeffs().len(), 5);
        let z = LaurentJet::new(-3, vec![q(0), q(0)], 4);
        assert!(z.is_zero());
        assert_eq!(z.valuation(), 0);
        assert_eq!(z, LaurentJet::zero(4));
        assert_eq!(j.coeff(-5), Some(q(0)));
        assert_eq!(j.coeff(5), None);
    }

    #[test]
    fn divide_examples() {
        let r = laurent_divide(&mono(4, 2, 16), &mono(1, 2, 16)).unwrap();
        assert_eq!(r.known_valuation(), Some(0));
        assert_eq!(r.leading_coeff(), Some(&q(4)));
        assert_eq!(r.terms().count(), 1);

        let r = laurent_divide(&mono(16, 6, 16), &mono(1, 4, 16)).unwrap();
        assert_eq!(r.known_valuation(), Some(2));
        assert_eq!(r.leading_coeff(), Some(&q(16)));
        assert_eq!(r.terms().count(), 1);

        let r = laurent_divide(&mono(4, 2, 16), &mono(1, 4, 16)).unwrap();
        assert_eq!(r.known_valuation(), Some(-2));
        assert_eq!(r.leading_coeff(), Some(&q(4)));
        assert_eq!(r.terms().count(), 1);
    }

    #[test]
    fn divide_order_bookkeeping() {
        // unit parts known to 14 and 12; quotient unit known to 12
        let r = laurent_divide(&mono(4, 2, 16), &mono(1, 4, 16)).unwrap();
        assert_eq!(r.order(), 10);
        assert_eq!(
            laurent_divide(&mono(1, 0, 5), &LaurentJet::zero(5)),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn multiplication_tracks_truncation() {
        let a = LaurentJet::new(-1, vec![q(1), q(2)], 3);
        let b = LaurentJet::new(2, vec![q(1)], 5);
        let p = &a * &b;
        // a known to 3 with b starting at 2, b known to 5 with a starting at -1
        assert_eq!(p.order(), 4);
        assert_eq!(p.coeff(1), Some(q(1)));
        assert_eq!(p.coeff(2), Some(q(2)));
    }

    #[test]
    fn compose_with_square() {
        // (1/x + 3 + x) ∘ t^2
        let f = LaurentJet::from_terms([(-1, q(1)), (0, q(3)), (1, q(1))], 6);
        let sq = mono(1, 2, 20);
        let g = f.compose_positive(&sq).unwrap();
        let expected = LaurentJet::from_terms([(-2, q(1)), (0, q(3)), (2, q(1))], g.order());
        assert_eq!(g, expected);
        assert_eq!(g.order(), 13);
    }
}
