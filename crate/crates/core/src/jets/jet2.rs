use std::ops::{Add, Mul, Sub};

use super::Parity;
use crate::scalar::Scalar;

/// Truncated power series in `(u, v)`; coefficients with `i + j ≤ order`.
///
/// Storage is triangular, ordered by total degree and then by `j`.
#[derive(Clone, Debug, PartialEq)]
pub struct Jet2<T> {
    order: usize,
    coeffs: Vec<T>,
}

fn index(i: usize, j: usize) -> usize {
    let d = i + j;
    d * (d + 1) / 2 + j
}

impl<T: Scalar> Jet2<T> {
    pub fn zero(order: usize) -> Self {
        Jet2 {
            order,
            coeffs: vec![T::zero(); (order + 1) * (order + 2) / 2],
        }
    }

    /// From `((i, j), c)` terms; terms past the truncation are dropped and
    /// repeated exponents accumulate.
    pub fn from_terms<I: IntoIterator<Item = ((usize, usize), T)>>(order: usize, terms: I) -> Self {
        let mut j = Self::zero(order);
        for ((a, b), c) in terms {
            if a + b <= order {
                let k = index(a, b);
                j.coeffs[k] = j.coeffs[k].clone() + c;
            }
        }
        j
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Number of stored coefficients, `(N+1)(N+2)/2`.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, i: usize, j: usize) -> Option<&T> {
        (i + j <= self.order).then(|| &self.coeffs[index(i, j)])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Nonzero coefficients as `((i, j), c)`, by total degree.
    pub fn terms(&self) -> impl Iterator<Item = ((usize, usize), &T)> + '_ {
        (0..=self.order)
            .flat_map(|d| (0..=d).map(move |j| (d - j, j)))
            .zip(self.coeffs.iter())
            .filter(|(_, c)| !c.is_zero())
    }

    pub fn scale(&self, c: &T) -> Self {
        Jet2 {
            order: self.order,
            coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(),
        }
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order, "cannot extend a jet's truncation");
        Jet2 {
            order,
            coeffs: self.coeffs[..(order + 1) * (order + 2) / 2].to_vec(),
        }
    }

    /// Keeps the coefficients whose exponent parities are `(pu, pv)`.
    pub fn parity_part(&self, pu: Parity, pv: Parity) -> Self {
        let terms = self
            .terms()
            .filter(|((i, j), _)| Parity::of(*i as i64) == pu && Parity::of(*j as i64) == pv)
            .map(|(e, c)| (e, c.clone()));
        Self::from_terms(self.order, terms)
    }
}

/// The four `Z₂×Z₂` sign-change sectors of a two-variable series.
#[derive(Clone, Debug, PartialEq)]
pub struct ParityParts<J> {
    pub even_even: J,
    pub even_odd: J,
    pub odd_even: J,
    pub odd_odd: J,
}

impl<J> ParityParts<J> {
    pub fn get(&self, pu: Parity, pv: Parity) -> &J {
        match (pu, pv) {
            (Parity::Even, Parity::Even) => &self.even_even,
            (Parity::Even, Parity::Odd) => &self.even_odd,
            (Parity::Odd, Parity::Even) => &self.odd_even,
            (Parity::Odd, Parity::Odd) => &self.odd_odd,
        }
    }
}

/// Splits `j` by behavior under `(u, v) ↦ (±u, ±v)`; part `(p, q)` holds the
/// coefficients `c_{i,j}` with `i ≡ p`, `j ≡ q (mod 2)`.
pub fn parity_decompose2<T: Scalar>(j: &Jet2<T>) -> ParityParts<Jet2<T>> {
    ParityParts {
        even_even: j.parity_part(Parity::Even, Parity::Even),
        even_odd: j.parity_part(Parity::Even, Parity::Odd),
        odd_even: j.parity_part(Parity::Odd, Parity::Even),
        odd_odd: j.parity_part(Parity::Odd, Parity::Odd),
    }
}

impl<T: Scalar> Add for &Jet2<T> {
    type Output = Jet2<T>;
    fn add(self, rhs: Self) -> Jet2<T> {
        let order = self.order.min(rhs.order);
        let n = (order + 1) * (order + 2) / 2;
        Jet2 {
            order,
            coeffs: (0..n).map(|k| self.coeffs[k].clone() + rhs.coeffs[k].clone()).collect(),
        }
    }
}

impl<T: Scalar> Sub for &Jet2<T> {
    type Output = Jet2<T>;
    fn sub(self, rhs: Self) -> Jet2<T> {
        let order = self.order.min(rhs.order);
        let n = (order + 1) * (order + 2) / 2;
        Jet2 {
            order,
            coeffs: (0..n).map(|k| self.coeffs[k].clone() - rhs.coeffs[k].clone()).collect(),
        }
    }
}

impl<T: Scalar> Mul for &Jet2<T> {
    type Output = Jet2<T>;
    fn mul(self, rhs: Self) -> Jet2<T> {
        let order = self.order.min(rhs.order);
        let mut out = Jet2::<T>::zero(order);
        for ((a, b), x) in self.terms() {
            for ((c, d), y) in rhs.terms() {
                if a + b + c + d <= order {
                    let k = index(a + c, b + d);
                    out.coeffs[k] = out.coeffs[k].clone() + x.clone() * y.clone();
                }
            }
        }
        out
    }
}

super::jet1::forward_owned!(Jet2, Add::add, Sub::sub, Mul::mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{q, Rational};

    fn j(terms: &[((usize, usize), i64)]) -> Jet2<Rational> {
        Jet2::from_terms(6, terms.iter().map(|(e, c)| (*e, q(*c))))
    }

    #[test]
    fn storage_size() {
        for n in 0..8 {
            assert_eq!(Jet2::<Rational>::zero(n).len(), (n + 1) * (n + 2) / 2);
        }
    }

    #[test]
    fn parity_examples() {
        let p = parity_decompose2(&j(&[((2, 2), 1)]));
        assert_eq!(p.even_even, j(&[((2, 2), 1)]));
        assert!(p.even_odd.is_zero() && p.odd_even.is_zero() && p.odd_odd.is_zero());

        let p = parity_decompose2(&j(&[((1, 1), 1)]));
        assert_eq!(p.odd_odd, j(&[((1, 1), 1)]));
        assert!(p.even_even.is_zero() && p.even_odd.is_zero() && p.odd_even.is_zero());

        let p = parity_decompose2(&j(&[((2, 0), 1), ((1, 1), 1), ((0, 3), 1)]));
        assert_eq!(p.even_even, j(&[((2, 0), 1)]));
        assert_eq!(p.odd_odd, j(&[((1, 1), 1)]));
        assert_eq!(p.even_odd, j(&[((0, 3), 1)]));
        assert!(p.odd_even.is_zero());
    }

    #[test]
    fn product_truncates_total_degree() {
        let a = j(&[((1, 0), 1), ((0, 1), 1)]);
        let sq = &a * &a;
        assert_eq!(sq, j(&[((2, 0), 1), ((1, 1), 2), ((0, 2), 1)]));
        let high = Jet2::from_terms(3, [((3, 0), q(1))]);
        assert!((&high * &Jet2::from_terms(3, [((1, 0), q(1))])).is_zero());
    }
}
