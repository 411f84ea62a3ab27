//! Floating-point oracle: grid checks of the Glaeser–Landau inequality
//! `f'(t)² ≤ 2C·f(t)` and boundedness probes of half-line pullbacks along
//! sampled polynomial plots.
//!
//! Functions are polynomials with rational coefficients, so `f'` and `f''`
//! are exact; only the final evaluation happens in floating point.
//!
//! `sup|f''|` is read off a grid and can underestimate the true supremum by
//! the interpolation error between grid points. The tolerance absorbs that.

use num_rational::BigRational;
use num_traits::{Float, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tensors::HalfLineTensor;

pub const DEFAULT_GRID_N: usize = 1024;
pub const DEFAULT_TOL: f64 = 1e-9;
pub const MIN_GRID_N: usize = 16;
/// Number of successive grid doublings used by [`numeric_pullback_probe`].
pub const PROBE_REFINEMENTS: u32 = 4;
/// Growth factor between refinements above which a sup counts as diverging.
pub const PROBE_GROWTH: f64 = 1.5;

/// Coefficients in increasing degree.
pub type Poly = Vec<BigRational>;

#[derive(Clone, Debug, PartialEq)]
pub enum Representation {
    Polynomial(Poly),
    /// `Σ pᵢ²`, nonnegative everywhere.
    SumOfSquares(Vec<Poly>),
}

impl Representation {
    pub fn expand(&self) -> Poly {
        match self {
            Representation::Polynomial(p) => trim(p.clone()),
            Representation::SumOfSquares(ps) => ps.iter().fold(Vec::new(), |acc, p| poly_add(&acc, &poly_mul(p, p))),
        }
    }

    pub fn is_certified_nonnegative(&self) -> bool {
        matches!(self, Representation::SumOfSquares(_))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SampledFunction {
    representation: Representation,
    a: BigRational,
    b: BigRational,
    grid_n: usize,
}

impl SampledFunction {
    pub fn new(representation: Representation, a: BigRational, b: BigRational, grid_n: usize) -> Result<Self> {
        if grid_n < MIN_GRID_N {
            return Err(Error::InvalidArgument(format!(
                "grid_n must be at least {MIN_GRID_N}, got {grid_n}"
            )));
        }
        if a >= b {
            return Err(Error::InvalidArgument(format!("empty interval [{a}, {b}]")));
        }
        Ok(SampledFunction {
            representation,
            a,
            b,
            grid_n,
        })
    }

    pub fn representation(&self) -> &Representation {
        &self.representation
    }

    pub fn interval(&self) -> (&BigRational, &BigRational) {
        (&self.a, &self.b)
    }

    pub fn grid_n(&self) -> usize {
        self.grid_n
    }

    pub fn with_grid(&self, grid_n: usize) -> Result<Self> {
        Self::new(self.representation.clone(), self.a.clone(), self.b.clone(), grid_n)
    }
}

/// Interval over which `C = sup|f''|` is taken.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "by", rename_all = "kebab-case")]
#[derive(Default)]
pub enum Enlargement {
    /// `I` itself.
    None,
    /// `[a − δ, b + δ]`.
    Fixed(f64),
    /// `[a − L, b + L]` with `L = sup_I|f'| / sup_I|f''|`, the farthest the
    /// Taylor step `h = −f'(t)/C` can leave `I`.
    #[default]
    TaylorExcursion,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GlaeserLandauReport<F> {
    #[serde(rename = "C")]
    pub c: F,
    pub max_violation: F,
    /// Grid point where `max_violation` is attained.
    pub argmax: F,
    pub pass: bool,
    pub tol: F,
    pub enlargement: Enlargement,
    /// Interval `C` was taken over.
    pub c_interval: (F, F),
}

impl<F> GlaeserLandauReport<F> {
    pub const CAVEAT: &'static str =
        "C is a grid supremum of |f''|; with enlargement none it ignores the Taylor step leaving the interval";
}

pub fn glaeser_landau_check<F: Float>(f: &SampledFunction, tol: F) -> Result<GlaeserLandauReport<F>> {
    glaeser_landau_check_with(f, tol, Enlargement::default())
}

pub fn glaeser_landau_check_with<F: Float>(
    f: &SampledFunction,
    tol: F,
    enlargement: Enlargement,
) -> Result<GlaeserLandauReport<F>> {
    let p = f.representation.expand();
    let (d1, d2) = (derivative(&p), derivative(&derivative(&p)));
    let (p, d1, d2) = (to_float::<F>(&p), to_float::<F>(&d1), to_float::<F>(&d2));
    let (a, b) = (rat_to::<F>(&f.a)?, rat_to::<F>(&f.b)?);
    let grid = linspace(a, b, f.grid_n);
    if !f.representation.is_certified_nonnegative() {
        ensure_nonnegative(&p, &grid, tol)?;
    }
    let sup_abs = |q: &[F], pts: &[F]| pts.iter().map(|&t| horner(q, t).abs()).fold(F::zero(), F::max);
    let c0 = sup_abs(&d2, &grid);
    let (lo, hi) = match enlargement {
        Enlargement::None => (a, b),
        Enlargement::Fixed(delta) => {
            let delta = F::from(delta.abs()).ok_or_else(|| bad_float(delta))?;
            (a - delta, b + delta)
        }
        Enlargement::TaylorExcursion => {
            let s1 = sup_abs(&d1, &grid);
            let l = if c0 > F::zero() { s1 / c0 } else { F::zero() };
            (a - l, b + l)
        }
    };
    let c = if (lo, hi) == (a, b) {
        c0
    } else {
        c0.max(sup_abs(&d2, &linspace(lo, hi, f.grid_n)))
    };
    let two = F::one() + F::one();
    let (argmax, max_violation) = grid
        .iter()
        .map(|&t| {
            let d = horner(&d1, t);
            (t, d * d - two * c * horner(&p, t))
        })
        .fold(
            (a, F::neg_infinity()),
            |best, cur| if cur.1 > best.1 { cur } else { best },
        );
    Ok(GlaeserLandauReport {
        c,
        max_violation,
        argmax,
        pass: max_violation <= tol,
        tol,
        enlargement,
        c_interval: (lo, hi),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbeReport<F> {
    pub grid_sizes: Vec<usize>,
    /// `sup |coeff(P(t))·P'(t)^k|` over each grid, skipping zeros of `P`.
    pub sups: Vec<F>,
    pub bounded: bool,
    /// `2|c|·sup|P''|` when the tensor is `c·dx²/x`.
    pub bound: Option<F>,
    pub within_bound: Option<bool>,
}

impl<F: Float> ProbeReport<F> {
    pub fn sup(&self) -> F {
        *self.sups.last().expect("at least one grid")
    }

    pub fn passes(&self) -> bool {
        self.bounded && self.within_bound.unwrap_or(true)
    }
}

/// Evaluates the pullback of `tau` along the plot `P = f` on grids of
/// `grid_n·2^r` points, `r < PROBE_REFINEMENTS`. The sup is reported
/// unbounded when it keeps growing by at least [`PROBE_GROWTH`] per doubling
/// or stops being finite.
pub fn numeric_pullback_probe<F: Float>(
    tau: &HalfLineTensor<BigRational>,
    f: &SampledFunction,
    tol: F,
) -> Result<ProbeReport<F>> {
    let p = f.representation.expand();
    let (d1, d2) = (derivative(&p), derivative(&derivative(&p)));
    let (p, d1, d2) = (to_float::<F>(&p), to_float::<F>(&d1), to_float::<F>(&d2));
    let (a, b) = (rat_to::<F>(&f.a)?, rat_to::<F>(&f.b)?);
    let coeff: Vec<(i32, F)> = tau
        .coeff()
        .terms()
        .map(|(d, c)| Ok((d as i32, rat_to::<F>(c)?)))
        .collect::<Result<_>>()?;
    let k = tau.degree() as i32;

    let mut grid_sizes = Vec::new();
    let mut sups = Vec::new();
    let mut sup_dd = F::zero();
    for r in 0..PROBE_REFINEMENTS {
        let n = f.grid_n << r;
        let grid = linspace(a, b, n);
        if r == 0 && !f.representation.is_certified_nonnegative() {
            ensure_nonnegative(&p, &grid, tol)?;
        }
        let mut sup = F::zero();
        for &t in &grid {
            sup_dd = sup_dd.max(horner(&d2, t).abs());
            let x = horner(&p, t);
            if x.is_zero() {
                continue;
            }
            let g = coeff.iter().fold(F::zero(), |s, &(d, c)| s + c * x.powi(d)) * horner(&d1, t).powi(k);
            sup = sup.max(g.abs());
            if !g.is_finite() {
                sup = F::infinity();
            }
        }
        grid_sizes.push(n);
        sups.push(sup);
    }
    let growth = F::from(PROBE_GROWTH).expect("representable");
    let diverging = sups.iter().any(|s| !s.is_finite())
        || sups.windows(2).all(|w| {
            if w[0].is_zero() {
                !w[1].is_zero()
            } else {
                w[1] / w[0] >= growth
            }
        });

    let singular = match tau.coeff().terms().collect::<Vec<_>>().as_slice() {
        [(-1, c)] if k == 2 => Some(rat_to::<F>(c)?.abs()),
        _ => None,
    };
    let two = F::one() + F::one();
    let bound = singular.map(|c| two * c * sup_dd);
    let within_bound = bound.map(|bd| sups.iter().all(|&s| s <= bd + tol));
    Ok(ProbeReport {
        grid_sizes,
        sups,
        bounded: !diverging,
        bound,
        within_bound,
    })
}

fn ensure_nonnegative<F: Float>(p: &[F], grid: &[F], tol: F) -> Result<()> {
    for &t in grid {
        let v = horner(p, t);
        if v < -tol {
            return Err(Error::FunctionNegative {
                at: t.to_f64().unwrap_or(f64::NAN),
                value: v.to_f64().unwrap_or(f64::NAN),
            });
        }
    }
    Ok(())
}

fn bad_float(x: f64) -> Error {
    Error::InvalidArgument(format!("{x} is not representable"))
}

fn rat_to<F: Float>(r: &BigRational) -> Result<F> {
    r.to_f64()
        .and_then(F::from)
        .filter(|x| x.is_finite())
        .ok_or_else(|| Error::InvalidArgument(format!("{r} is not representable as a float")))
}

fn to_float<F: Float>(p: &[BigRational]) -> Vec<F> {
    p.iter().map(|c| rat_to(c).unwrap_or_else(|_| F::nan())).collect()
}

fn linspace<F: Float>(a: F, b: F, n: usize) -> Vec<F> {
    let last = F::from(n - 1).expect("grid size fits");
    (0..n)
        .map(|i| {
            if i == n - 1 {
                b
            } else {
                a + (b - a) * F::from(i).expect("index fits") / last
            }
        })
        .collect()
}

fn horner<F: Float>(p: &[F], t: F) -> F {
    p.iter().rev().fold(F::zero(), |acc, &c| acc * t + c)
}

fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

pub fn derivative(p: &[BigRational]) -> Poly {
    trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigRational::from_integer((i as i64).into()))
            .collect(),
    )
}

fn poly_add(p: &[BigRational], q: &[BigRational]) -> Poly {
    let n = p.len().max(q.len());
    let zero = BigRational::zero();
    trim(
        (0..n)
            .map(|i| p.get(i).unwrap_or(&zero) + q.get(i).unwrap_or(&zero))
            .collect(),
    )
}

fn poly_mul(p: &[BigRational], q: &[BigRational]) -> Poly {
    if p.is_empty() || q.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); p.len() + q.len() - 1];
    for (i, a) in p.iter().enumerate() {
        for (j, b) in q.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    trim(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jets::LaurentJet;
    use crate::tensors::{make_halfline_tensor, tau_sing};
    use crate::{q, ratio};

    fn poly(cs: &[i64]) -> Poly {
        cs.iter().map(|&c| q(c)).collect()
    }

    fn sampled(rep: Representation, a: i64, b: i64) -> SampledFunction {
        SampledFunction::new(rep, q(a), q(b), DEFAULT_GRID_N).unwrap()
    }

    #[test]
    fn square_is_the_equality_case() {
        let f = sampled(Representation::Polynomial(poly(&[0, 0, 1])), -1, 1);
        for e in [Enlargement::None, Enlargement::TaylorExcursion] {
            let r = glaeser_landau_check_with(&f, 1e-9, e).unwrap();
            assert_eq!(r.c, 2.0);
            assert!(r.max_violation.abs() <= 1e-12);
            assert!(r.pass);
        }
    }

    #[test]
    fn quartic_passes() {
        let f = sampled(Representation::SumOfSquares(vec![poly(&[-1, 0, 1])]), -2, 2);
        assert!(glaeser_landau_check(&f, 1e-9).unwrap().pass);
    }

    #[test]
    fn identity_is_not_nonnegative() {
        let f = sampled(Representation::Polynomial(poly(&[0, 1])), -1, 1);
        assert!(matches!(
            glaeser_landau_check(&f, 1e-9),
            Err(Error::FunctionNegative { .. })
        ));
    }

    #[test]
    fn sup_over_interval_alone_can_fail() {
        // (u - u²)² near its inflection point 1/2 - √3/6
        let f = SampledFunction::new(
            Representation::SumOfSquares(vec![poly(&[0, 1, -1])]),
            ratio(2110, 10000),
            ratio(2115, 10000),
            DEFAULT_GRID_N,
        )
        .unwrap();
        assert!(
            !glaeser_landau_check_with::<f64>(&f, 1e-9, Enlargement::None)
                .unwrap()
                .pass
        );
        assert!(glaeser_landau_check::<f64>(&f, 1e-9).unwrap().pass);
    }

    #[test]
    fn sampled_function_preconditions() {
        let p = Representation::Polynomial(poly(&[1]));
        assert!(SampledFunction::new(p.clone(), q(0), q(1), 15).is_err());
        assert!(SampledFunction::new(p, q(1), q(1), 16).is_err());
    }

    #[test]
    fn probe_tau_sing_along_square() {
        let f = sampled(Representation::Polynomial(poly(&[0, 0, 1])), -1, 1);
        let r = numeric_pullback_probe::<f64>(&tau_sing(), &f, 1e-9).unwrap();
        assert!(r.bounded);
        assert!((r.sup() - 4.0).abs() < 1e-12);
        assert_eq!(r.bound, Some(4.0));
        assert_eq!(r.within_bound, Some(true));
    }

    #[test]
    fn probe_double_pole_diverges() {
        let tau = make_halfline_tensor(2, LaurentJet::monomial(q(1), -2, 16)).unwrap();
        let f = sampled(Representation::Polynomial(poly(&[0, 0, 1])), -1, 1);
        let r = numeric_pullback_probe::<f64>(&tau, &f, 1e-9).unwrap();
        assert!(!r.bounded);
        assert!(r.sups.windows(2).all(|w| w[1] > 3.0 * w[0]));
    }

    #[test]
    fn probe_near_double_root() {
        let f = SampledFunction::new(
            Representation::SumOfSquares(vec![poly(&[-1, 0, 1])]),
            ratio(1, 2),
            ratio(3, 2),
            DEFAULT_GRID_N,
        )
        .unwrap();
        let r = numeric_pullback_probe::<f64>(&tau_sing(), &f, 1e-9).unwrap();
        assert!(r.passes());
    }
}
