//! Exact truncated power series and Laurent series in one and two variables.
//!
//! Truncation is explicit everywhere: a jet knows the highest degree it is
//! sure about, and every operation reports the order it can vouch for.

mod jet1;
mod jet2;
mod laurent;
mod laurent2;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use jet1::{compose, differentiate, whitney_descend, Jet1};
pub use jet2::{parity_decompose2, Jet2, ParityParts};
pub use laurent::{laurent_divide, LaurentJet};
pub use laurent2::LaurentJet2;

use crate::scalar::Scalar;

/// Working truncation order used when none is given.
pub const DEFAULT_ORDER: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: i64) -> Parity {
        if n.rem_euclid(2) == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

pub(crate) fn write_series<'a, T: Scalar>(
    f: &mut fmt::Formatter<'_>,
    var: &str,
    terms: impl Iterator<Item = (i64, &'a T)>,
) -> fmt::Result {
    let mut first = true;
    for (d, c) in terms {
        if c.is_zero() {
            continue;
        }
        if !first {
            f.write_str(" + ")?;
        }
        first = false;
        match d {
            0 => write!(f, "{c}")?,
            1 => write!(f, "{c}*{var}")?,
            _ => write!(f, "{c}*{var}^{d}")?,
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}
