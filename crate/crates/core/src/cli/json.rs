//! JSON records emitted by `--format json`. Rationals are always strings
//! `"num/den"` with a positive denominator, integers included (`"3/1"`).

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::capacity::CapacityReport;
use crate::decompose::{ComponentParity, Decomposition, GammaParityReport, QuadrantDecomposition, Sq2Component};
use crate::error::Error;
use crate::jets::{Jet1, Jet2, LaurentJet, LaurentJet2, Parity};
use crate::metric::{MetricClause, MetricVerdict};
use crate::numeric::{GlaeserLandauReport, ProbeReport};
use crate::pullback::{SmoothnessStatus, SmoothnessVerdict, Sq2Pullback};
use crate::Rational;

pub fn rat(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_rat(s: &str) -> Option<Rational> {
    let (n, d) = s.split_once('/')?;
    let d: num_bigint::BigInt = d.parse().ok()?;
    if d.sign() != num_bigint::Sign::Plus {
        return None;
    }
    Some(Rational::new(n.parse().ok()?, d))
}

/// Top-level record: exactly one of `result` and `error` is present.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Envelope<T> {
    pub command: String,
    pub exit_code: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<T>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorDto>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorDto {
    pub kind: String,
    pub message: String,
}

impl ErrorDto {
    pub fn from_error(e: &Error) -> Self {
        let kind = match e {
            Error::CapacityExceeded { .. } => "capacity-exceeded",
            Error::SingularCrossTerm(_) => "singular-cross-term",
            Error::NotSmoothQuadrant(_) => "not-smooth-quadrant",
            Error::FunctionNegative { .. } => "function-not-nonnegative",
            Error::InsufficientTruncation(_) => "insufficient-truncation",
            Error::NotNonnegative(_) => "not-nonnegative",
            _ => "error",
        };
        ErrorDto {
            kind: kind.into(),
            message: e.to_string(),
        }
    }
}

/// Univariate series: `[degree, "n/d"]` pairs for the nonzero known terms,
/// known up to degree `order`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesDto {
    pub order: i64,
    pub terms: Vec<(i64, String)>,
}

impl SeriesDto {
    pub fn laurent(j: &LaurentJet<Rational>) -> Self {
        SeriesDto {
            order: j.order(),
            terms: j
                .terms()
                .filter(|(_, c)| !c.is_zero())
                .map(|(d, c)| (d, rat(c)))
                .collect(),
        }
    }

    pub fn jet1(j: &Jet1<Rational>) -> Self {
        SeriesDto {
            order: j.order() as i64,
            terms: j
                .coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(d, c)| (d as i64, rat(c)))
                .collect(),
        }
    }

    pub fn to_laurent(&self) -> Option<LaurentJet<Rational>> {
        let terms = self
            .terms
            .iter()
            .map(|(d, c)| Some((*d, parse_rat(c)?)))
            .collect::<Option<Vec<_>>>()?;
        Some(LaurentJet::from_terms(terms, self.order))
    }
}

/// Bivariate series: `[[i, j], "n/d"]` pairs, known up to total degree `order`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Series2Dto {
    pub order: i64,
    pub terms: Vec<((i64, i64), String)>,
}

impl Series2Dto {
    pub fn laurent2(j: &LaurentJet2<Rational>) -> Self {
        Series2Dto {
            order: j.order(),
            terms: j.terms().map(|(e, c)| (e, rat(c))).collect(),
        }
    }

    pub fn jet2(j: &Jet2<Rational>) -> Self {
        Series2Dto {
            order: j.order() as i64,
            terms: j
                .terms()
                .filter(|(_, c)| !c.is_zero())
                .map(|((a, b), c)| ((a as i64, b as i64), rat(c)))
                .collect(),
        }
    }

    pub fn to_laurent2(&self) -> Option<LaurentJet2<Rational>> {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| Some((*e, parse_rat(c)?)))
            .collect::<Option<Vec<_>>>()?;
        Some(LaurentJet2::from_terms(self.order, terms))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorDto {
    pub space: String,
    /// The tensor in the input grammar.
    pub text: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalflineDecompositionDto {
    pub input: TensorDto,
    pub c: String,
    /// Regular part, a power series in `x`.
    pub regular: SeriesDto,
}

impl HalflineDecompositionDto {
    pub fn new(input: TensorDto, d: &Decomposition<Rational>) -> Self {
        HalflineDecompositionDto {
            input,
            c: rat(&d.c),
            regular: SeriesDto::jet1(&d.regular),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadrantDecompositionDto {
    pub input: TensorDto,
    /// `A(y)` in `A(y)/x·dx²`.
    pub a_sing: SeriesDto,
    /// `B(x)` in `B(x)/y·dy²`.
    pub b_sing: SeriesDto,
    pub regular_dx2: Series2Dto,
    pub regular_dy2: Series2Dto,
    pub regular_dxdy: Series2Dto,
    pub parity: ParityDto,
}

impl QuadrantDecompositionDto {
    pub fn new(input: TensorDto, d: &QuadrantDecomposition<Rational>) -> Self {
        QuadrantDecompositionDto {
            input,
            a_sing: SeriesDto::jet1(&d.a_sing),
            b_sing: SeriesDto::jet1(&d.b_sing),
            regular_dx2: Series2Dto::jet2(&d.regular.dx2),
            regular_dy2: Series2Dto::jet2(&d.regular.dy2),
            regular_dxdy: Series2Dto::jet2(&d.regular.dxdy),
            parity: ParityDto::new(&d.parity_report),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum StatusDto {
    Smooth { valuation: i64 },
    Pole { order: u32 },
    FlatSmooth,
    FlatIndeterminate,
}

impl From<SmoothnessStatus> for StatusDto {
    fn from(s: SmoothnessStatus) -> Self {
        match s {
            SmoothnessStatus::Smooth { valuation } => StatusDto::Smooth { valuation },
            SmoothnessStatus::Pole { order } => StatusDto::Pole { order },
            SmoothnessStatus::FlatSmooth => StatusDto::FlatSmooth,
            SmoothnessStatus::FlatIndeterminate => StatusDto::FlatIndeterminate,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PullbackDto {
    pub plot: String,
    pub status: StatusDto,
    /// Pullback coefficient as a series in `t`; absent for flat germs.
    pub witness: Option<SeriesDto>,
}

impl PullbackDto {
    pub fn new(plot: String, v: &SmoothnessVerdict<Rational>) -> Self {
        PullbackDto {
            plot,
            status: v.status.into(),
            witness: v.witness.as_ref().map(SeriesDto::laurent),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sq2PullbackDto {
    pub du2: Series2Dto,
    pub dv2: Series2Dto,
    pub dudv: Series2Dto,
}

impl Sq2PullbackDto {
    pub fn new(p: &Sq2Pullback<Rational>) -> Self {
        Sq2PullbackDto {
            du2: Series2Dto::laurent2(&p.du2),
            dv2: Series2Dto::laurent2(&p.dv2),
            dudv: Series2Dto::laurent2(&p.dudv),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CapacityDto {
    pub k: u32,
    pub capacity: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CapacityTableDto {
    pub rows: Vec<CapacityDto>,
}

pub type VerifyCapacityDto = CapacityReport;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetricWitnessDto {
    pub plot: String,
    pub value: String,
    pub degree: i64,
    pub clause: MetricClause,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetricDto {
    pub accepted: bool,
    pub witness: Option<MetricWitnessDto>,
    pub note: String,
}

impl MetricDto {
    pub fn new(v: &MetricVerdict<Rational>) -> Self {
        MetricDto {
            accepted: v.accepted,
            witness: v.witness.as_ref().map(|w| MetricWitnessDto {
                plot: w.plot.to_string(),
                value: rat(&w.value),
                degree: w.degree,
                clause: w.clause,
            }),
            note: MetricVerdict::<Rational>::NOTE.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GlCheckDto {
    pub report: GlaeserLandauReport<f64>,
    pub caveat: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub probe: Option<ProbeReport<f64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MassesDto {
    pub even_even: String,
    pub even_odd: String,
    pub odd_even: String,
    pub odd_odd: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentParityDto {
    pub component: Sq2Component,
    pub occupied: Vec<(Parity, Parity)>,
    pub masses: MassesDto,
    pub valuations: Option<(i64, i64)>,
    pub parity_ok: bool,
    pub pole_free: bool,
}

impl ComponentParityDto {
    fn new(c: &ComponentParity<Rational>) -> Self {
        ComponentParityDto {
            component: c.component,
            occupied: c.occupied(),
            masses: MassesDto {
                even_even: rat(&c.masses.even_even),
                even_odd: rat(&c.masses.even_odd),
                odd_even: rat(&c.masses.odd_even),
                odd_odd: rat(&c.masses.odd_odd),
            },
            valuations: c.valuations,
            parity_ok: c.parity_ok,
            pole_free: c.pole_free,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParityDto {
    pub holds: bool,
    pub components: Vec<ComponentParityDto>,
}

impl ParityDto {
    pub fn new(r: &GammaParityReport<Rational>) -> Self {
        ParityDto {
            holds: r.holds(),
            components: r.components().iter().map(|c| ComponentParityDto::new(c)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{q, ratio};

    #[test]
    fn rationals() {
        assert_eq!(rat(&q(3)), "3/1");
        assert_eq!(rat(&ratio(-2, 4)), "-1/2");
        assert_eq!(parse_rat("-1/2"), Some(ratio(-1, 2)));
        assert_eq!(parse_rat("3"), None);
        assert_eq!(parse_rat("1/-2"), None);
    }

    #[test]
    fn series_round_trip() {
        let j = LaurentJet::from_terms([(-1, q(1)), (2, ratio(1, 3))], 9);
        let d = SeriesDto::laurent(&j);
        let back: SeriesDto = serde_json::from_str(&serde_json::to_string(&d).unwrap()).unwrap();
        assert_eq!(back.to_laurent().unwrap(), j);
    }
}
