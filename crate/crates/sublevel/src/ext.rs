//! Extended real numbers with the conventions `inf ∅ = +∞` and `sup ∅ = −∞`.
//!
//! Infinities are tagged values, never sentinel floats fed into arithmetic.

use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum ExtReal {
    NegInf,
    Finite(f64),
    PosInf,
}

impl ExtReal {
    pub fn finite(self) -> Option<f64> {
        match self {
            ExtReal::Finite(x) => Some(x),
            _ => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, ExtReal::Finite(_))
    }

    /// Total order on extended reals. Panics on NaN payloads, which the
    /// constructors reject.
    pub fn cmp_ext(self, other: ExtReal) -> Ordering {
        use ExtReal::*;
        match (self, other) {
            (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
            (NegInf, _) | (_, PosInf) => Ordering::Less,
            (_, NegInf) | (PosInf, _) => Ordering::Greater,
            (Finite(a), Finite(b)) => a.partial_cmp(&b).expect("NaN in ExtReal"),
        }
    }

    pub fn min_ext(self, other: ExtReal) -> ExtReal {
        if self.cmp_ext(other) == Ordering::Greater {
            other
        } else {
            self
        }
    }

    pub fn max_ext(self, other: ExtReal) -> ExtReal {
        if self.cmp_ext(other) == Ordering::Less {
            other
        } else {
            self
        }
    }
}

impl From<f64> for ExtReal {
    fn from(x: f64) -> Self {
        assert!(!x.is_nan(), "NaN cannot be an extended real");
        if x == f64::INFINITY {
            ExtReal::PosInf
        } else if x == f64::NEG_INFINITY {
            ExtReal::NegInf
        } else {
            ExtReal::Finite(x)
        }
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtReal::NegInf => write!(f, "-inf"),
            ExtReal::PosInf => write!(f, "+inf"),
            ExtReal::Finite(x) => write!(f, "{x}"),
        }
    }
}

/// Infimum over an iterator of finite values, `+∞` when empty.
pub fn inf_over<I: IntoIterator<Item = f64>>(values: I) -> ExtReal {
    values
        .into_iter()
        .map(ExtReal::from)
        .fold(ExtReal::PosInf, ExtReal::min_ext)
}

/// Supremum over an iterator of finite values, `−∞` when empty.
pub fn sup_over<I: IntoIterator<Item = f64>>(values: I) -> ExtReal {
    values
        .into_iter()
        .map(ExtReal::from)
        .fold(ExtReal::NegInf, ExtReal::max_ext)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_conventions() {
        assert_eq!(inf_over(std::iter::empty()), ExtReal::PosInf);
        assert_eq!(sup_over(std::iter::empty()), ExtReal::NegInf);
    }

    #[test]
    fn ordering() {
        assert!(ExtReal::NegInf.cmp_ext(ExtReal::Finite(-1e300)) == Ordering::Less);
        assert!(ExtReal::PosInf.cmp_ext(ExtReal::Finite(1e300)) == Ordering::Greater);
        assert_eq!(
            ExtReal::Finite(2.0).min_ext(ExtReal::Finite(1.0)),
            ExtReal::Finite(1.0)
        );
    }

    #[test]
    fn from_float_infinities() {
        assert_eq!(ExtReal::from(f64::INFINITY), ExtReal::PosInf);
        assert_eq!(ExtReal::from(f64::NEG_INFINITY), ExtReal::NegInf);
    }
}
