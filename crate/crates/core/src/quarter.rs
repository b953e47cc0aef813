//! Exact scalars valued in (1/4)ℤ.
//!
//! Point measures, Euler measures, the chain pairing and both index formulas
//! all land in quarter-integers, so they are carried as an integer count of
//! quarter units and never touch floating point.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

/// A number of the form `n/4` with `n` an integer.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Quarter(i64);

impl Quarter {
    pub const ZERO: Quarter = Quarter(0);

    /// Builds the value `quarters / 4`.
    pub const fn from_quarters(quarters: i64) -> Self {
        Quarter(quarters)
    }

    pub const fn from_int(value: i64) -> Self {
        Quarter(value * 4)
    }

    /// The numerator over 4.
    pub const fn quarters(self) -> i64 {
        self.0
    }

    /// Returns the integer value when the quantity is integral.
    pub fn to_int(self) -> Option<i64> {
        (self.0 % 4 == 0).then_some(self.0 / 4)
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn is_negative(self) -> bool {
        self.0 < 0
    }

    /// Parses `3`, `-1/4`, `1/2` and similar exact fractions.
    pub fn parse(text: &str) -> Option<Self> {
        let text = text.trim();
        match text.split_once('/') {
            None => text.parse::<i64>().ok().map(Quarter::from_int),
            Some((num, den)) => {
                let num: i64 = num.trim().parse().ok()?;
                let den: i64 = den.trim().parse().ok()?;
                match den {
                    1 => Some(Quarter(num * 4)),
                    2 => Some(Quarter(num * 2)),
                    4 => Some(Quarter(num)),
                    _ => None,
                }
            }
        }
    }
}

impl fmt::Display for Quarter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.0;
        if n % 4 == 0 {
            write!(f, "{}", n / 4)
        } else if n % 2 == 0 {
            write!(f, "{}/2", n / 2)
        } else {
            write!(f, "{}/4", n)
        }
    }
}

impl Add for Quarter {
    type Output = Quarter;
    fn add(self, rhs: Quarter) -> Quarter {
        Quarter(self.0 + rhs.0)
    }
}

impl Sub for Quarter {
    type Output = Quarter;
    fn sub(self, rhs: Quarter) -> Quarter {
        Quarter(self.0 - rhs.0)
    }
}

impl Neg for Quarter {
    type Output = Quarter;
    fn neg(self) -> Quarter {
        Quarter(-self.0)
    }
}

impl Mul<i64> for Quarter {
    type Output = Quarter;
    fn mul(self, rhs: i64) -> Quarter {
        Quarter(self.0 * rhs)
    }
}

impl AddAssign for Quarter {
    fn add_assign(&mut self, rhs: Quarter) {
        self.0 += rhs.0;
    }
}

impl SubAssign for Quarter {
    fn sub_assign(&mut self, rhs: Quarter) {
        self.0 -= rhs.0;
    }
}

impl Sum for Quarter {
    fn sum<I: Iterator<Item = Quarter>>(iter: I) -> Quarter {
        Quarter(iter.map(|q| q.0).sum())
    }
}

/// Intermediate scalar exact on (1/12)ℤ, used where a formula carries
/// coefficients of one third.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub(crate) struct Twelfths(i64);

impl Twelfths {
    pub(crate) fn from_quarter(q: Quarter) -> Self {
        Twelfths(q.0 * 3)
    }

    /// `q * num / den` for `den` in {1, 3}.
    pub(crate) fn scaled(q: Quarter, num: i64, den: i64) -> Self {
        debug_assert!(den == 1 || den == 3);
        Twelfths(q.0 * 3 * num / den)
    }

    pub(crate) fn to_quarter(self) -> Option<Quarter> {
        (self.0 % 3 == 0).then_some(Quarter(self.0 / 3))
    }
}

impl Add for Twelfths {
    type Output = Twelfths;
    fn add(self, rhs: Twelfths) -> Twelfths {
        Twelfths(self.0 + rhs.0)
    }
}

impl Sub for Twelfths {
    type Output = Twelfths;
    fn sub(self, rhs: Twelfths) -> Twelfths {
        Twelfths(self.0 - rhs.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn display_reduces() {
        assert_eq!(Quarter::from_quarters(-1).to_string(), "-1/4");
        assert_eq!(Quarter::from_quarters(2).to_string(), "1/2");
        assert_eq!(Quarter::from_quarters(-6).to_string(), "-3/2");
        assert_eq!(Quarter::from_quarters(8).to_string(), "2");
        assert_eq!(Quarter::ZERO.to_string(), "0");
    }

    #[test]
    fn integer_conversion_needs_divisibility() {
        assert_eq!(Quarter::from_quarters(12).to_int(), Some(3));
        assert_eq!(Quarter::from_quarters(-4).to_int(), Some(-1));
        assert_eq!(Quarter::from_quarters(6).to_int(), None);
    }

    #[test]
    fn twelfths_only_convert_back_on_quarters() {
        let third = Twelfths::scaled(Quarter::from_quarters(1), 1, 3);
        assert_eq!(third.to_quarter(), None);
        let sum = third + third + third;
        assert_eq!(sum.to_quarter(), Some(Quarter::from_quarters(1)));
    }

    proptest! {
        #[test]
        fn display_parse_roundtrip(n in -1000i64..1000) {
            let q = Quarter::from_quarters(n);
            prop_assert_eq!(Quarter::parse(&q.to_string()), Some(q));
        }

        #[test]
        fn group_laws(a in -500i64..500, b in -500i64..500, m in -20i64..20) {
            let (x, y) = (Quarter::from_quarters(a), Quarter::from_quarters(b));
            prop_assert_eq!(x + y, y + x);
            prop_assert_eq!(x - y, -(y - x));
            prop_assert_eq!((x + y) * m, x * m + y * m);
        }
    }
}
