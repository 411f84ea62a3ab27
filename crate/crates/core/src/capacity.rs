//! Singular capacity: the largest pole order `p` for which `x^{-p}·dx^⊗k`
//! still pulls back smoothly along every boundary-touching plot.
//!
//! Along `t^{2m}·unit`, the coefficient `x^{-p}` contributes valuation
//! `−2mp` and `P'(t)^k` contributes `k(2m − 1)`, so the scaling margin is
//! `k(2m − 1) − 2mp`. [`verify_capacity`] evaluates the margins and checks
//! each against the exact pullback engine.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jets::{LaurentJet, DEFAULT_ORDER};
use crate::plots::PlotGerm;
use crate::pullback::{pullback_halfline, SmoothnessStatus};
use crate::tensors::make_halfline_tensor;
use crate::Rational;

/// Largest `m` checked unless told otherwise.
pub const DEFAULT_M_MAX: u32 = 6;

/// `⌊k/2⌋`.
pub fn capacity(k: i64) -> Result<u32> {
    if k < 0 {
        return Err(Error::NegativeDegree(k));
    }
    Ok((k / 2) as u32)
}

/// `k(2m − 1) − 2mp`.
pub fn scaling_margin(k: u32, p: u32, m: u32) -> i64 {
    let (k, p, m) = (k as i64, p as i64, m as i64);
    k * (2 * m - 1) - 2 * m * p
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CapacityReport {
    pub k: u32,
    pub p: u32,
    /// Margin for `m = 1..=m_max`.
    pub margins: Vec<i64>,
    /// Valuation of the pullback of `x^{-p}·dx^⊗k` along `t^{2m}`, same indexing.
    pub oracle_valuations: Vec<i64>,
    pub admissible: bool,
    /// First `m` attaining the minimum margin.
    pub binding_m: u32,
}

pub fn verify_capacity(k: i64, p: i64, m_max: i64) -> Result<CapacityReport> {
    if k < 0 {
        return Err(Error::NegativeDegree(k));
    }
    if p < 0 {
        return Err(Error::InvalidArgument(format!(
            "pole order must be nonnegative, got {p}"
        )));
    }
    if m_max < 1 {
        return Err(Error::InvalidArgument(format!("m_max must be at least 1, got {m_max}")));
    }
    let (k, p, m_max) = (k as u32, p as u32, m_max as u32);
    let tensor = make_halfline_tensor(
        k as i64,
        LaurentJet::monomial(Rational::from_integer(1.into()), -(p as i64), DEFAULT_ORDER as i64),
    )?;
    let mut margins = Vec::with_capacity(m_max as usize);
    let mut oracle_valuations = Vec::with_capacity(m_max as usize);
    for m in 1..=m_max {
        let margin = scaling_margin(k, p, m);
        let order = DEFAULT_ORDER.max(4 * m as usize);
        let verdict = pullback_halfline(&tensor, &PlotGerm::power(m), order)?;
        let valuation = match verdict.status {
            SmoothnessStatus::Smooth { valuation } => valuation,
            SmoothnessStatus::Pole { order } => -(order as i64),
            other => return Err(Error::Inconsistent(format!("unexpected verdict {other}"))),
        };
        if valuation != margin {
            return Err(Error::Inconsistent(format!(
                "k={k}, p={p}, m={m}: margin {margin} but pullback valuation {valuation}"
            )));
        }
        margins.push(margin);
        oracle_valuations.push(valuation);
    }
    let min = *margins.iter().min().expect("m_max ≥ 1");
    let binding_m = margins.iter().position(|&x| x == min).expect("minimum exists") as u32 + 1;
    Ok(CapacityReport {
        k,
        p,
        margins,
        oracle_valuations,
        admissible: min >= 0,
        binding_m,
    })
}

/// `(k, largest admissible p)` for `k = 0..=k_max`, found by search over
/// `p ≤ k` with `m ≤` [`DEFAULT_M_MAX`].
pub fn capacity_table(k_max: i64) -> Result<Vec<(u32, u32)>> {
    if k_max < 0 {
        return Err(Error::NegativeDegree(k_max));
    }
    (0..=k_max)
        .map(|k| {
            let mut frontier = 0;
            for p in 0..=k {
                if verify_capacity(k, p, DEFAULT_M_MAX as i64)?.admissible {
                    frontier = p as u32;
                }
            }
            Ok((k as u32, frontier))
        })
        .collect()
}
