use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

/// Integers extended by the sentinels used for zero modules and unit ideals:
/// `dim 0 = -inf`, `codim 0 = depth 0 = +inf`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Extended {
    NegInf,
    Finite(i64),
    PosInf,
}

impl Extended {
    pub fn finite(self) -> Option<i64> {
        match self {
            Extended::Finite(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Extended::Finite(_))
    }

    /// `a - self` with `a` finite.
    pub fn subtracted_from(self, a: i64) -> Extended {
        match self {
            Extended::NegInf => Extended::PosInf,
            Extended::PosInf => Extended::NegInf,
            Extended::Finite(v) => Extended::Finite(a - v),
        }
    }

    pub fn at_least(self, v: i64) -> bool {
        self >= Extended::Finite(v)
    }
}

impl From<i64> for Extended {
    fn from(v: i64) -> Self {
        Extended::Finite(v)
    }
}

impl PartialOrd for Extended {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Extended {
    fn cmp(&self, other: &Self) -> Ordering {
        use Extended::*;
        match (self, other) {
            (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
            (NegInf, _) | (_, PosInf) => Ordering::Less,
            (_, NegInf) | (PosInf, _) => Ordering::Greater,
            (Finite(a), Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for Extended {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::NegInf => write!(f, "-inf"),
            Extended::PosInf => write!(f, "inf"),
            Extended::Finite(v) => write!(f, "{v}"),
        }
    }
}

impl Serialize for Extended {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Extended::Finite(v) => s.serialize_i64(*v),
            Extended::NegInf => s.serialize_str("-inf"),
            Extended::PosInf => s.serialize_str("inf"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_and_arithmetic() {
        assert!(Extended::NegInf < Extended::Finite(-5));
        assert!(Extended::PosInf > Extended::Finite(1 << 40));
        assert_eq!(Extended::NegInf.subtracted_from(3), Extended::PosInf);
        assert_eq!(Extended::Finite(1).subtracted_from(3), Extended::Finite(2));
        assert!(Extended::PosInf.at_least(7));
        assert!(!Extended::Finite(1).at_least(2));
    }
}
