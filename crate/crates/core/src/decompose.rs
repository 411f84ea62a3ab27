//! Singular/regular decomposition of symmetric 2-tensors.
//!
//! Both algorithms go through the square map rather than reading poles off
//! the coefficients directly:
//!
//! * half-line: `g(t) = 4t²f(t²)` is even, descends to `h` with
//!   `g(t) = h(t²)`, and `h(x) = h(0) + x·k(x)` gives
//!   `f = h(0)/(4x) + k(x)/4`;
//! * quadrant: the `du²`, `dv²` coefficients of `sq*(τ)` must be even-even
//!   and the `du·dv` coefficient odd-odd; descending and splitting off the
//!   axis slice yields `A(y)/x dx² + B(x)/y dy²` plus a regular remainder.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jets::{whitney_descend, Jet1, Jet2, LaurentJet, LaurentJet2, Parity};
use crate::plots::PlotGerm;
use crate::pullback::{pullback_halfline, sq2_components, SmoothnessStatus, Sq2Pullback};
use crate::scalar::Scalar;
use crate::tensors::{HalfLineTensor, QuadrantTensor};

/// Intermediate series of the half-line algorithm.
#[derive(Clone, Debug, PartialEq)]
pub struct DecompositionTrace<T> {
    /// `4t²f(t²)`, in `t`.
    pub g: Jet1<T>,
    /// `g(t) = h(t²)`, in `x`.
    pub h: Jet1<T>,
}

/// `f(x) = c/x + regular(x)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition<T> {
    pub c: T,
    pub regular: Jet1<T>,
    pub trace: DecompositionTrace<T>,
}

impl<T: Scalar> Decomposition<T> {
    /// `c·x⁻¹ + regular` as a Laurent jet.
    pub fn reconstruct(&self) -> LaurentJet<T> {
        &LaurentJet::monomial(self.c.clone(), -1, self.regular.order() as i64) + &LaurentJet::from_jet1(&self.regular)
    }
}

/// Rejects half-line 2-tensors whose pullback by `t²` has a pole.
pub(crate) fn ensure_smooth_on_halfline<T: Scalar>(tau: &HalfLineTensor<T>) -> Result<()> {
    let pole_order = tau.pole_order();
    if pole_order <= 1 {
        return Ok(());
    }
    let order = (tau.coeff().order().max(0) as usize).max(2);
    let verdict = pullback_halfline(tau, &PlotGerm::square(), order)?;
    match verdict.status {
        SmoothnessStatus::Pole { order } => Err(Error::CapacityExceeded {
            pole_order,
            witness_valuation: -(order as i64),
        }),
        other => Err(Error::Inconsistent(format!(
            "pole of order {pole_order} but square-map pullback is {other}"
        ))),
    }
}

/// Input truncated at order `N` yields `g` to `2N + 3`, `h` to `N + 1` and the
/// regular part to `N`.
pub fn decompose_halfline<T: Scalar>(tau: &HalfLineTensor<T>) -> Result<Decomposition<T>> {
    if tau.degree() != 2 {
        return Err(Error::WrongDegree {
            expected: 2,
            got: tau.degree(),
        });
    }
    ensure_smooth_on_halfline(tau)?;
    let four = T::from_int(4);
    let g = tau.coeff().substitute_square().shift(2).scale(&four).to_jet1()?;
    let h = whitney_descend(&g)?;
    let h0 = h.constant_term().clone();
    let k = Jet1::new(h.order() - 1, h.coeffs()[1..].to_vec());
    Ok(Decomposition {
        c: h0 / four.clone(),
        regular: k.scale(&(T::one() / four)),
        trace: DecompositionTrace { g, h },
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sq2Component {
    Du2,
    Dv2,
    Dudv,
}

impl Sq2Component {
    /// Sector the component must occupy for a smooth tensor.
    pub fn expected_sector(self) -> (Parity, Parity) {
        match self {
            Sq2Component::Du2 | Sq2Component::Dv2 => (Parity::Even, Parity::Even),
            Sq2Component::Dudv => (Parity::Odd, Parity::Odd),
        }
    }
}

impl fmt::Display for Sq2Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sq2Component::Du2 => "du^2",
            Sq2Component::Dv2 => "dv^2",
            Sq2Component::Dudv => "du*dv",
        })
    }
}

/// A term of `sq*(τ)` that breaks smoothness or the sector rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParityWitness {
    pub component: Sq2Component,
    /// Exponents `(i, j)` of the offending `u^i v^j`.
    pub exponents: (i64, i64),
    pub sector: (Parity, Parity),
}

impl ParityWitness {
    fn at(component: Sq2Component, (i, j): (i64, i64)) -> Self {
        ParityWitness {
            component,
            exponents: (i, j),
            sector: (Parity::of(i), Parity::of(j)),
        }
    }
}

impl fmt::Display for ParityWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (i, j) = self.exponents;
        let (pu, pv) = self.sector;
        write!(f, "{} term u^{i} v^{j} in sector ({pu}, {pv})", self.component)?;
        if i < 0 || j < 0 {
            f.write_str(" has negative valuation")?;
        }
        Ok(())
    }
}

/// Sum of `|c|` per sign-change sector.
#[derive(Clone, Debug, PartialEq)]
pub struct ParityMasses<T> {
    pub even_even: T,
    pub even_odd: T,
    pub odd_even: T,
    pub odd_odd: T,
}

impl<T: Scalar> ParityMasses<T> {
    pub fn get(&self, sector: (Parity, Parity)) -> &T {
        match sector {
            (Parity::Even, Parity::Even) => &self.even_even,
            (Parity::Even, Parity::Odd) => &self.even_odd,
            (Parity::Odd, Parity::Even) => &self.odd_even,
            (Parity::Odd, Parity::Odd) => &self.odd_odd,
        }
    }
}

pub const SECTORS: [(Parity, Parity); 4] = [
    (Parity::Even, Parity::Even),
    (Parity::Even, Parity::Odd),
    (Parity::Odd, Parity::Even),
    (Parity::Odd, Parity::Odd),
];

#[derive(Clone, Debug, PartialEq)]
pub struct ComponentParity<T> {
    pub component: Sq2Component,
    pub masses: ParityMasses<T>,
    pub valuations: Option<(i64, i64)>,
    /// Only the expected sector is occupied.
    pub parity_ok: bool,
    /// No negative exponent in either variable.
    pub pole_free: bool,
}

impl<T: Scalar> ComponentParity<T> {
    fn of(component: Sq2Component, j: &LaurentJet2<T>) -> Self {
        let parts = j.parity_decompose();
        let masses = ParityMasses {
            even_even: parts.even_even.mass(),
            even_odd: parts.even_odd.mass(),
            odd_even: parts.odd_even.mass(),
            odd_odd: parts.odd_odd.mass(),
        };
        let expected = component.expected_sector();
        let parity_ok = SECTORS.iter().all(|s| *s == expected || masses.get(*s).is_zero());
        ComponentParity {
            component,
            masses,
            valuations: j.valuations(),
            parity_ok,
            pole_free: j.first_pole().is_none(),
        }
    }

    pub fn occupied(&self) -> Vec<(Parity, Parity)> {
        SECTORS
            .iter()
            .copied()
            .filter(|s| !self.masses.get(*s).is_zero())
            .collect()
    }

    pub fn holds(&self) -> bool {
        self.parity_ok && self.pole_free
    }
}

/// Sector report for the three components of `sq*(τ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GammaParityReport<T> {
    pub du2: ComponentParity<T>,
    pub dv2: ComponentParity<T>,
    pub dudv: ComponentParity<T>,
}

impl<T: Scalar> GammaParityReport<T> {
    fn of(pb: &Sq2Pullback<T>) -> Self {
        GammaParityReport {
            du2: ComponentParity::of(Sq2Component::Du2, &pb.du2),
            dv2: ComponentParity::of(Sq2Component::Dv2, &pb.dv2),
            dudv: ComponentParity::of(Sq2Component::Dudv, &pb.dudv),
        }
    }

    pub fn components(&self) -> [&ComponentParity<T>; 3] {
        [&self.du2, &self.dv2, &self.dudv]
    }

    /// Every component is pole-free and confined to its expected sector.
    pub fn holds(&self) -> bool {
        self.components().iter().all(|c| c.holds())
    }
}

pub fn check_gamma_parity<T: Scalar>(tau: &QuadrantTensor<T>) -> GammaParityReport<T> {
    GammaParityReport::of(&sq2_components(tau))
}

/// Regular remainder: components of a smooth symmetric tensor on `R²`.
#[derive(Clone, Debug, PartialEq)]
pub struct RegularPart<T> {
    pub dx2: Jet2<T>,
    pub dy2: Jet2<T>,
    /// Off-diagonal entry, same convention as [`QuadrantTensor::c`].
    pub dxdy: Jet2<T>,
}

/// `τ = regular + A(y)/x dx² + B(x)/y dy²`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadrantDecomposition<T> {
    /// `A`, a series in `y`.
    pub a_sing: Jet1<T>,
    /// `B`, a series in `x`.
    pub b_sing: Jet1<T>,
    pub regular: RegularPart<T>,
    pub parity_report: GammaParityReport<T>,
}

impl<T: Scalar> QuadrantDecomposition<T> {
    /// The three tensor components `(a, b, c)` rebuilt from the parts.
    pub fn reconstruct(&self) -> (LaurentJet2<T>, LaurentJet2<T>, LaurentJet2<T>) {
        let a = &LaurentJet2::from_y_series(&self.a_sing, -1) + &LaurentJet2::from_jet2(&self.regular.dx2);
        let b = &LaurentJet2::from_y_series(&self.b_sing, -1).transpose() + &LaurentJet2::from_jet2(&self.regular.dy2);
        (a, b, LaurentJet2::from_jet2(&self.regular.dxdy))
    }
}

fn ensure_sector<T: Scalar>(component: Sq2Component, j: &LaurentJet2<T>) -> Result<()> {
    let expected = component.expected_sector();
    match j
        .terms()
        .find(|((i, k), _)| (Parity::of(*i), Parity::of(*k)) != expected)
    {
        Some((e, _)) => Err(Error::NotSmoothQuadrant(ParityWitness::at(component, e))),
        None => Ok(()),
    }
}

/// Descends an even-even axial component and splits off its slice on the
/// axis: returns `(K(0, ·)/4, (K − K(0, ·))/(4x))`.
fn split_axial<T: Scalar>(pulled: &LaurentJet2<T>) -> Result<(Jet1<T>, Jet2<T>)> {
    let quarter = T::one() / T::from_int(4);
    let k = pulled.descend_squares()?;
    let slice = k.x_slice(0)?;
    let rest = (&k - &LaurentJet2::from_y_series(&slice, 0)).mul_monomial(&quarter, (-1, 0));
    Ok((slice.scale(&quarter), rest.to_jet2()?))
}

/// Input truncated at total degree `N` gives `A`, `B` to order `N + 1` and
/// regular components to total degree `N`.
pub fn decompose_quadrant<T: Scalar>(tau: &QuadrantTensor<T>) -> Result<QuadrantDecomposition<T>> {
    let pb = sq2_components(tau);
    let parity_report = GammaParityReport::of(&pb);

    if let Some(e) = pb.dudv.first_pole() {
        return Err(Error::SingularCrossTerm(ParityWitness::at(Sq2Component::Dudv, e)));
    }
    ensure_sector(Sq2Component::Dudv, &pb.dudv)?;
    // γ̃ = 4uvγ(u², v²) = uv·K_γ(u², v²), and γ = K_γ/4
    let k_gamma = pb
        .dudv
        .mul_monomial(&(T::one() / T::from_int(2)), (-1, -1))
        .descend_squares()?;
    let dxdy = k_gamma.scale(&(T::one() / T::from_int(4))).to_jet2()?;

    for (component, j) in [(Sq2Component::Du2, &pb.du2), (Sq2Component::Dv2, &pb.dv2)] {
        if let Some(e) = j.first_pole() {
            return Err(Error::NotSmoothQuadrant(ParityWitness::at(component, e)));
        }
        ensure_sector(component, j)?;
    }
    let (a_sing, dx2) = split_axial(&pb.du2)?;
    let (b_sing, dy2_t) = split_axial(&pb.dv2.transpose())?;
    let dy2 = LaurentJet2::from_jet2(&dy2_t).transpose().to_jet2()?;

    Ok(QuadrantDecomposition {
        a_sing,
        b_sing,
        regular: RegularPart { dx2, dy2, dxdy },
        parity_report,
    })
}
