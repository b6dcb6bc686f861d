use std::fmt;
use std::ops::Add;

/// An integer extended by `-∞` and `+∞`.
///
/// Addition saturates, and `+∞` absorbs `-∞`: a sum involving an empty
/// graded space is vacuous no matter what the other terms are.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtInt {
    NegInf,
    Fin(i64),
    PosInf,
}

impl ExtInt {
    pub fn finite(self) -> Option<i64> {
        match self {
            ExtInt::Fin(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, ExtInt::Fin(_))
    }
}

impl From<i64> for ExtInt {
    fn from(v: i64) -> Self {
        ExtInt::Fin(v)
    }
}

impl Add for ExtInt {
    type Output = ExtInt;

    fn add(self, rhs: ExtInt) -> ExtInt {
        use ExtInt::*;
        match (self, rhs) {
            (PosInf, _) | (_, PosInf) => PosInf,
            (NegInf, _) | (_, NegInf) => NegInf,
            (Fin(a), Fin(b)) => Fin(a + b),
        }
    }
}

impl Add<i64> for ExtInt {
    type Output = ExtInt;

    fn add(self, rhs: i64) -> ExtInt {
        self + ExtInt::Fin(rhs)
    }
}

impl fmt::Display for ExtInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtInt::NegInf => write!(f, "-inf"),
            ExtInt::Fin(v) => write!(f, "{v}"),
            ExtInt::PosInf => write!(f, "+inf"),
        }
    }
}

impl ExtInt {
    pub fn to_json(self) -> serde_json::Value {
        match self {
            ExtInt::Fin(v) => v.into(),
            other => other.to_string().into(),
        }
    }
}
