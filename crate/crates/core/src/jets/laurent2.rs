use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use super::{Jet1, Jet2, Parity, ParityParts};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Two-variable Laurent jet: finitely many nonzero terms `c·x^i y^j`, known for
/// total degree `i + j ≤ order`.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentJet2<T> {
    terms: BTreeMap<(i64, i64), T>,
    order: i64,
}

impl<T: Scalar> LaurentJet2<T> {
    pub fn zero(order: i64) -> Self {
        LaurentJet2 {
            terms: BTreeMap::new(),
            order,
        }
    }

    pub fn from_terms<I: IntoIterator<Item = ((i64, i64), T)>>(order: i64, terms: I) -> Self {
        let mut map: BTreeMap<(i64, i64), T> = BTreeMap::new();
        for ((i, j), c) in terms {
            if i + j > order {
                continue;
            }
            let e = map.entry((i, j)).or_insert_with(T::zero);
            *e = e.clone() + c;
        }
        map.retain(|_, c| !c.is_zero());
        LaurentJet2 { terms: map, order }
    }

    pub fn monomial(c: T, exps: (i64, i64), order: i64) -> Self {
        Self::from_terms(order, [(exps, c)])
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero terms in lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = ((i64, i64), &T)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, i: i64, j: i64) -> Option<T> {
        (i + j <= self.order).then(|| self.terms.get(&(i, j)).cloned().unwrap_or_else(T::zero))
    }

    /// Tight lower bounds `(v_x, v_y)` on the exponents; `None` when zero.
    pub fn valuations(&self) -> Option<(i64, i64)> {
        let vx = self.terms.keys().map(|e| e.0).min()?;
        let vy = self.terms.keys().map(|e| e.1).min()?;
        Some((vx, vy))
    }

    /// First term (lexicographically) with a negative exponent.
    pub fn first_pole(&self) -> Option<(i64, i64)> {
        self.terms.keys().copied().find(|(i, j)| *i < 0 || *j < 0)
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::from_terms(self.order, self.terms().map(|(e, a)| (e, a.clone() * c.clone())))
    }

    /// Multiplication by `c·x^a y^b`.
    pub fn mul_monomial(&self, c: &T, (a, b): (i64, i64)) -> Self {
        Self::from_terms(
            self.order + a + b,
            self.terms().map(|((i, j), x)| ((i + a, j + b), x.clone() * c.clone())),
        )
    }

    pub fn truncate(&self, order: i64) -> Self {
        assert!(order <= self.order, "cannot extend a jet's truncation");
        Self::from_terms(order, self.terms().map(|(e, c)| (e, c.clone())))
    }

    /// Substitution `(x, y) ↦ (u², v²)`: exponent doubling. Odd total degree
    /// `2·order + 1` cannot occur, so it is known too.
    pub fn substitute_squares(&self) -> Self {
        Self::from_terms(
            2 * self.order + 1,
            self.terms().map(|((i, j), c)| ((2 * i, 2 * j), c.clone())),
        )
    }

    /// Inverse of [`Self::substitute_squares`]; every exponent must be even.
    pub fn descend_squares(&self) -> Result<Self> {
        if let Some(((i, j), _)) = self.terms().find(|((i, j), _)| i % 2 != 0 || j % 2 != 0) {
            return Err(Error::InvalidArgument(format!(
                "two-variable jet is not even-even: term u^{i} v^{j}"
            )));
        }
        Ok(Self::from_terms(
            self.order.div_euclid(2),
            self.terms().map(|((i, j), c)| ((i / 2, j / 2), c.clone())),
        ))
    }

    /// Keeps the terms with exponent parities `(px, py)`.
    pub fn parity_part(&self, px: Parity, py: Parity) -> Self {
        Self::from_terms(
            self.order,
            self.terms()
                .filter(|((i, j), _)| Parity::of(*i) == px && Parity::of(*j) == py)
                .map(|(e, c)| (e, c.clone())),
        )
    }

    pub fn parity_decompose(&self) -> ParityParts<Self> {
        ParityParts {
            even_even: self.parity_part(Parity::Even, Parity::Even),
            even_odd: self.parity_part(Parity::Even, Parity::Odd),
            odd_even: self.parity_part(Parity::Odd, Parity::Even),
            odd_odd: self.parity_part(Parity::Odd, Parity::Odd),
        }
    }

    /// Terms with `x`-exponent `i`, as a series in `y` (exponents must be ≥ 0).
    pub fn x_slice(&self, i: i64) -> Result<Jet1<T>> {
        let order = self.order - i;
        if order < 0 {
            return Err(Error::InsufficientTruncation(format!("no known terms with x^{i}")));
        }
        let mut c = vec![T::zero(); order as usize + 1];
        for ((a, b), x) in self.terms() {
            if a == i {
                if b < 0 {
                    return Err(Error::InvalidArgument(format!("pole y^{b} in slice x^{i}")));
                }
                c[b as usize] = x.clone();
            }
        }
        Ok(Jet1::new(order as usize, c))
    }

    /// Swaps the roles of the two variables.
    pub fn transpose(&self) -> Self {
        Self::from_terms(self.order, self.terms().map(|((i, j), c)| ((j, i), c.clone())))
    }

    /// `f(y)·x^i` for a one-variable series in `y`.
    pub fn from_y_series(f: &Jet1<T>, x_exp: i64) -> Self {
        Self::from_terms(
            f.order() as i64 + x_exp,
            f.coeffs()
                .iter()
                .enumerate()
                .map(|(j, c)| ((x_exp, j as i64), c.clone())),
        )
    }

    /// Converts a pole-free jet to dense storage.
    pub fn to_jet2(&self) -> Result<Jet2<T>> {
        if let Some((i, j)) = self.first_pole() {
            return Err(Error::InvalidArgument(format!("term x^{i} y^{j} is not regular")));
        }
        if self.order < 0 {
            return Err(Error::InsufficientTruncation("negative total order".into()));
        }
        Ok(Jet2::from_terms(
            self.order as usize,
            self.terms().map(|((i, j), c)| ((i as usize, j as usize), c.clone())),
        ))
    }

    pub fn from_jet2(j: &Jet2<T>) -> Self {
        Self::from_terms(
            j.order() as i64,
            j.terms().map(|((a, b), c)| ((a as i64, b as i64), c.clone())),
        )
    }

    /// Sum of `|c|` over the terms.
    pub fn mass(&self) -> T {
        self.terms.values().fold(T::zero(), |acc, c| acc + c.abs())
    }
}

impl<T: Scalar> Add for &LaurentJet2<T> {
    type Output = LaurentJet2<T>;
    fn add(self, rhs: Self) -> LaurentJet2<T> {
        LaurentJet2::from_terms(
            self.order.min(rhs.order),
            self.terms().chain(rhs.terms()).map(|(e, c)| (e, c.clone())),
        )
    }
}

impl<T: Scalar> Neg for &LaurentJet2<T> {
    type Output = LaurentJet2<T>;
    fn neg(self) -> LaurentJet2<T> {
        self.scale(&-T::one())
    }
}

impl<T: Scalar> Sub for &LaurentJet2<T> {
    type Output = LaurentJet2<T>;
    fn sub(self, rhs: Self) -> LaurentJet2<T> {
        self + &(-rhs)
    }
}
