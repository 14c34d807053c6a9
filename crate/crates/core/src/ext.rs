//! Nonnegative integers extended with a symbolic infinity.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign};
use std::str::FromStr;

/// A nonnegative integer or `Inf`.
///
/// The derived ordering places every finite value below `Inf`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtNat {
    Fin(u64),
    Inf,
}

pub use ExtNat::{Fin, Inf};

impl ExtNat {
    pub const ZERO: ExtNat = Fin(0);

    pub fn is_inf(self) -> bool {
        matches!(self, Inf)
    }

    pub fn is_zero(self) -> bool {
        self == Fin(0)
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            Fin(v) => Some(v),
            Inf => None,
        }
    }

    /// Subtraction of a finite amount. `Inf - x` stays `Inf`.
    ///
    /// Panics on `Inf - Inf` and on finite underflow; both are caller bugs.
    pub fn sub_finite(self, rhs: ExtNat) -> ExtNat {
        match (self, rhs) {
            (_, Inf) => panic!("ExtNat: subtraction of infinity"),
            (Inf, Fin(_)) => Inf,
            (Fin(a), Fin(b)) => Fin(a.checked_sub(b).expect("ExtNat: negative result")),
        }
    }

    /// Saturating on overflow of the finite range: sums that overflow `u64`
    /// are reported as `Inf`.
    pub fn saturating_add(self, rhs: ExtNat) -> ExtNat {
        match (self, rhs) {
            (Fin(a), Fin(b)) => a.checked_add(b).map_or(Inf, Fin),
            _ => Inf,
        }
    }
}

impl Default for ExtNat {
    fn default() -> Self {
        ExtNat::ZERO
    }
}

impl From<u64> for ExtNat {
    fn from(v: u64) -> Self {
        Fin(v)
    }
}

impl Add for ExtNat {
    type Output = ExtNat;

    fn add(self, rhs: ExtNat) -> ExtNat {
        match (self, rhs) {
            (Fin(a), Fin(b)) => Fin(a.checked_add(b).expect("ExtNat: finite overflow")),
            _ => Inf,
        }
    }
}

impl AddAssign for ExtNat {
    fn add_assign(&mut self, rhs: ExtNat) {
        *self = *self + rhs;
    }
}

impl Sum for ExtNat {
    fn sum<I: Iterator<Item = ExtNat>>(iter: I) -> ExtNat {
        iter.fold(ExtNat::ZERO, Add::add)
    }
}

impl<'a> Sum<&'a ExtNat> for ExtNat {
    fn sum<I: Iterator<Item = &'a ExtNat>>(iter: I) -> ExtNat {
        iter.copied().sum()
    }
}

impl fmt::Display for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fin(v) => write!(f, "{v}"),
            Inf => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseExtNatError(pub String);

impl fmt::Display for ParseExtNatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "expected a nonnegative integer or `inf`, got `{}`", self.0)
    }
}

impl std::error::Error for ParseExtNatError {}

impl FromStr for ExtNat {
    type Err = ParseExtNatError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "inf" {
            return Ok(Inf);
        }
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(ParseExtNatError(s.to_string()));
        }
        s.parse::<u64>()
            .map(Fin)
            .map_err(|_| ParseExtNatError(s.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn infinity_absorbs_and_dominates() {
        assert_eq!(Inf + Fin(3), Inf);
        assert_eq!(Fin(3) + Inf, Inf);
        assert!(Inf > Fin(u64::MAX));
        assert_eq!(Inf, Inf);
        assert_eq!([Fin(1), Fin(2), Fin(4)].iter().sum::<ExtNat>(), Fin(7));
        assert_eq!([Fin(1), Inf].iter().sum::<ExtNat>(), Inf);
    }

    #[test]
    #[should_panic(expected = "subtraction of infinity")]
    fn inf_minus_inf_is_a_defect() {
        let _ = Inf.sub_finite(Inf);
    }

    #[test]
    fn parse_rejects_signs_and_garbage() {
        assert!("-1".parse::<ExtNat>().is_err());
        assert!("+1".parse::<ExtNat>().is_err());
        assert!("INF".parse::<ExtNat>().is_err());
        assert!("".parse::<ExtNat>().is_err());
        assert_eq!("inf".parse::<ExtNat>(), Ok(Inf));
        assert_eq!("0".parse::<ExtNat>(), Ok(Fin(0)));
    }

    proptest! {
        #[test]
        fn display_parse_roundtrip(v in proptest::option::of(any::<u64>())) {
            let x = v.map_or(Inf, Fin);
            prop_assert_eq!(x.to_string().parse::<ExtNat>().unwrap(), x);
        }

        #[test]
        fn order_matches_u64(a in any::<u32>(), b in any::<u32>()) {
            prop_assert_eq!(Fin(a as u64).cmp(&Fin(b as u64)), a.cmp(&b));
            prop_assert_eq!(Fin(a as u64) + Fin(b as u64), Fin(a as u64 + b as u64));
        }
    }
}
