use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Truncated power series `c_0 + c_1 t + ... + c_N t^N` in one variable.
///
/// Coefficients above `order` are unknown, never implicitly zero: binary
/// operations truncate to the smaller order.
#[derive(Clone, Debug, PartialEq)]
pub struct Jet1<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Jet1<T> {
    /// Builds a jet of the given order, padding missing coefficients with zero
    /// and dropping those above `order`.
    pub fn new(order: usize, mut coeffs: Vec<T>) -> Self {
        coeffs.resize(order + 1, T::zero());
        Jet1 { coeffs }
    }

    /// A polynomial read as a jet of order `deg` (at least 0).
    pub fn from_poly(coeffs: Vec<T>) -> Self {
        let order = coeffs.len().saturating_sub(1);
        Self::new(order, coeffs)
    }

    pub fn zero(order: usize) -> Self {
        Self::new(order, Vec::new())
    }

    pub fn constant(c: T, order: usize) -> Self {
        Self::new(order, vec![c])
    }

    /// `c·t^deg` at the given order.
    pub fn monomial(c: T, deg: usize, order: usize) -> Self {
        let mut coeffs = vec![T::zero(); order + 1];
        if deg <= order {
            coeffs[deg] = c;
        }
        Jet1 { coeffs }
    }

    /// The identity germ `t`.
    pub fn variable(order: usize) -> Self {
        Self::monomial(T::one(), 1, order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Coefficient of `t^i`, or `None` beyond the truncation.
    pub fn coeff(&self, i: usize) -> Option<&T> {
        self.coeffs.get(i)
    }

    pub fn constant_term(&self) -> &T {
        &self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Lowest degree with a nonzero coefficient; `None` if the jet vanishes
    /// to its order.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot extend a jet's truncation");
        Jet1 {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        Jet1 {
            coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(),
        }
    }

    /// Multiplication by `t^shift`; known order grows by `shift`.
    pub fn shift(&self, shift: usize) -> Self {
        let mut coeffs = vec![T::zero(); shift];
        coeffs.extend(self.coeffs.iter().cloned());
        Jet1 { coeffs }
    }

    /// `d/dt`, one order lower.
    pub fn differentiate(&self) -> Result<Self> {
        if self.order() == 0 {
            return Err(Error::DifferentiateOrderZero);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.clone() * T::from_int(i as i64))
            .collect();
        Ok(Jet1 { coeffs })
    }

    /// `outer ∘ self`, where `self` must vanish at 0.
    ///
    /// The result is known to `min(self.order, (outer.order + 1)·v − 1)` with
    /// `v` the valuation of `self`: beyond that the unknown tail of `outer`
    /// contributes.
    pub fn compose_into(&self, outer: &Jet1<T>) -> Result<Self> {
        if !self.constant_term().is_zero() {
            return Err(Error::CompositionConstantTerm);
        }
        let v = self.valuation().unwrap_or(self.order() + 1);
        let order = self
            .order()
            .min((outer.order() + 1).saturating_mul(v).saturating_sub(1));
        let inner = self.truncate(order);
        // Horner: (((c_N) t + c_{N-1}) t + ...)
        let mut acc = Jet1::zero(order);
        for c in outer.coeffs.iter().rev() {
            acc = &acc * &inner;
            acc.coeffs[0] = acc.coeffs[0].clone() + c.clone();
        }
        Ok(acc)
    }

    /// Multiplicative inverse of a jet with nonzero constant term.
    pub fn reciprocal(&self) -> Result<Self> {
        let c0 = self.constant_term();
        if c0.is_zero() {
            return Err(Error::NotAUnit);
        }
        let inv0 = T::one() / c0.clone();
        let mut out: Vec<T> = Vec::with_capacity(self.coeffs.len());
        out.push(inv0.clone());
        for n in 1..self.coeffs.len() {
            let mut s = T::zero();
            for i in 1..=n {
                s = s + self.coeffs[i].clone() * out[n - i].clone();
            }
            out.push(-(s * inv0.clone()));
        }
        Ok(Jet1 { coeffs: out })
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Jet1::constant(T::one(), self.order());
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Horner evaluation of the known part, read as a polynomial.
    pub fn eval_poly(&self, t: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * t.clone() + c.clone())
    }
}

/// Free-function form of [`Jet1::compose_into`].
pub fn compose<T: Scalar>(outer: &Jet1<T>, inner: &Jet1<T>) -> Result<Jet1<T>> {
    inner.compose_into(outer)
}

/// Free-function form of [`Jet1::differentiate`].
pub fn differentiate<T: Scalar>(j: &Jet1<T>) -> Result<Jet1<T>> {
    j.differentiate()
}

/// Recovers `h` with `g(t) = h(t²)` from an even jet: `h_j = g_{2j}`.
pub fn whitney_descend<T: Scalar>(g: &Jet1<T>) -> Result<Jet1<T>> {
    if let Some((degree, _)) = g.coeffs.iter().enumerate().find(|(i, c)| i % 2 == 1 && !c.is_zero()) {
        return Err(Error::NotEven { degree });
    }
    let coeffs = g.coeffs.iter().step_by(2).cloned().collect();
    Ok(Jet1 { coeffs })
}

impl<T: Scalar> Add for &Jet1<T> {
    type Output = Jet1<T>;
    fn add(self, rhs: Self) -> Jet1<T> {
        let n = self.coeffs.len().min(rhs.coeffs.len());
        Jet1 {
            coeffs: (0..n).map(|i| self.coeffs[i].clone() + rhs.coeffs[i].clone()).collect(),
        }
    }
}

impl<T: Scalar> Sub for &Jet1<T> {
    type Output = Jet1<T>;
    fn sub(self, rhs: Self) -> Jet1<T> {
        let n = self.coeffs.len().min(rhs.coeffs.len());
        Jet1 {
            coeffs: (0..n).map(|i| self.coeffs[i].clone() - rhs.coeffs[i].clone()).collect(),
        }
    }
}

impl<T: Scalar> Mul for &Jet1<T> {
    type Output = Jet1<T>;
    fn mul(self, rhs: Self) -> Jet1<T> {
        let n = self.coeffs.len().min(rhs.coeffs.len());
        let mut coeffs = vec![T::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate().take(n) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(n - i) {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        Jet1 { coeffs }
    }
}

impl<T: Scalar> Neg for &Jet1<T> {
    type Output = Jet1<T>;
    fn neg(self) -> Jet1<T> {
        Jet1 {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($ty:ident, $($tr:ident :: $m:ident),*) => {$(
        impl<T: Scalar> $tr for $ty<T> {
            type Output = $ty<T>;
            fn $m(self, rhs: Self) -> $ty<T> {
                (&self).$m(&rhs)
            }
        }
    )*};
}
pub(crate) use forward_owned;

forward_owned!(Jet1, Add::add, Sub::sub, Mul::mul);

impl<T: Scalar> fmt::Display for Jet1<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        super::write_series(f, "t", self.coeffs.iter().enumerate().map(|(i, c)| (i as i64, c)))?;
        write!(f, " + O(t^{})", self.order() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{q, Rational};

    fn jet(c: &[Rational]) -> Jet1<Rational> {
        Jet1::from_poly(c.to_vec())
    }

    #[test]
    fn compose_linear_outer() {
        let outer = Jet1::new(4, vec![q(1), q(1)]);
        let inner = Jet1::monomial(q(1), 2, 4);
        let r = compose(&outer, &inner).unwrap();
        assert_eq!(r, Jet1::new(4, vec![q(1), q(0), q(1)]));
    }

    #[test]
    fn compose_monomial() {
        let outer = Jet1::monomial(q(1), 2, 3);
        let inner = Jet1::monomial(q(2), 1, 3);
        assert_eq!(compose(&outer, &inner).unwrap(), Jet1::monomial(q(4), 2, 3));
    }

    #[test]
    fn compose_exponential_into_square() {
        // term-by-term substitution: sum c_i t^{2i}
        let outer_c = vec![
            q(1),
            q(1),
            Rational::new(1.into(), 2.into()),
            Rational::new(1.into(), 6.into()),
        ];
        let outer = Jet1::new(6, outer_c.clone());
        let inner = Jet1::monomial(q(1), 2, 6);
        let mut expected = vec![q(0); 7];
        for (i, c) in outer_c.iter().enumerate() {
            expected[2 * i] = c.clone();
        }
        assert_eq!(compose(&outer, &inner).unwrap(), Jet1::new(6, expected));
    }

    #[test]
    fn compose_order_limited_by_outer_truncation() {
        // outer known to degree 1 only; t^2 inner gives knowledge through t^3
        let outer = jet(&[q(1), q(1)]);
        let inner = Jet1::monomial(q(1), 2, 8);
        assert_eq!(compose(&outer, &inner).unwrap().order(), 3);
    }

    #[test]
    fn compose_rejects_constant_term() {
        let e = compose(&jet(&[q(1)]), &jet(&[q(1), q(1)])).unwrap_err();
        assert_eq!(e.to_string(), "composition requires vanishing constant term");
    }

    #[test]
    fn differentiate_examples() {
        assert_eq!(jet(&[q(0), q(0), q(1)]).differentiate().unwrap(), jet(&[q(0), q(2)]));
        assert_eq!(jet(&[q(1), q(3), q(5)]).differentiate().unwrap(), jet(&[q(3), q(10)]));
        let sin = jet(&[
            q(0),
            q(1),
            q(0),
            Rational::new((-1).into(), 6.into()),
            q(0),
            Rational::new(1.into(), 120.into()),
        ]);
        // coefficient shift: (i+1) c_{i+1}
        let expected: Vec<Rational> = (0..5).map(|i| sin.coeffs()[i + 1].clone() * q(i as i64 + 1)).collect();
        let d = sin.differentiate().unwrap();
        assert_eq!(d, jet(&expected));
        assert_eq!(
            d,
            jet(&[
                q(1),
                q(0),
                Rational::new((-1).into(), 2.into()),
                q(0),
                Rational::new(1.into(), 24.into())
            ])
        );
        assert_eq!(
            jet(&[q(7)]).differentiate().unwrap_err().to_string(),
            "cannot differentiate order-0 jet"
        );
    }

    #[test]
    fn descend_examples() {
        assert_eq!(whitney_descend(&jet(&[q(0), q(0), q(4)])).unwrap(), jet(&[q(0), q(4)]));
        assert_eq!(
            whitney_descend(&jet(&[q(0), q(0), q(2), q(0), q(1)])).unwrap(),
            jet(&[q(0), q(2), q(1)])
        );
        let e = whitney_descend(&jet(&[q(0), q(0), q(0), q(1)])).unwrap_err();
        assert_eq!(e, Error::NotEven { degree: 3 });
        assert!(e.to_string().starts_with("jet is not even"));
    }

    #[test]
    fn reciprocal_of_geometric() {
        let one_minus_t = Jet1::new(5, vec![q(1), q(-1)]);
        let r = one_minus_t.reciprocal().unwrap();
        assert_eq!(r, Jet1::new(5, vec![q(1); 6]));
        assert!(Jet1::new(3, vec![q(0), q(1)]).reciprocal().is_err());
    }

    #[test]
    fn works_over_floats() {
        let a = Jet1::<f64>::new(3, vec![1.0, 2.0]);
        let b = &a * &a;
        assert_eq!(b.coeffs(), &[1.0, 4.0, 4.0, 0.0]);
    }
}
