//! Exact half-integer arithmetic for spins and spin components.
//!
//! Values are stored as twice their physical value in a signed integer, so
//! integral and half-odd-integral spins are represented without any floating
//! error and `(-1)^{2m}` is just a parity check on the stored integer.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An exact integer or half-odd-integer, stored as `twice = 2 * value`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct HalfInt {
    twice: i32,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { twice: 0 };

    pub fn from_twice(twice: i32) -> Self {
        HalfInt { twice }
    }

    pub fn twice(self) -> i32 {
        self.twice
    }

    pub fn value(self) -> f64 {
        f64::from(self.twice) / 2.0
    }

    /// True when the value is a plain integer (even `twice`).
    pub fn is_integral(self) -> bool {
        self.twice % 2 == 0
    }

    /// `(-1)^{2v}` as an exact integer sign.
    pub fn exchange_sign(self) -> i32 {
        if self.twice % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

impl std::fmt::Display for HalfInt {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.twice % 2 == 0 {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

/// Total spin `s` together with a component `m` along the quantization axis.
///
/// `s` and `m` are either both integral or both half-integral, and `|m| <= s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SpinLabel {
    two_s: i32,
    two_m: i32,
}

impl SpinLabel {
    pub fn new(two_s: i32, two_m: i32) -> Result<Self> {
        if two_s < 0 || two_m.abs() > two_s || (two_s - two_m) % 2 != 0 {
            return Err(Error::InvalidSpin { two_s, two_m });
        }
        Ok(SpinLabel { two_s, two_m })
    }

    pub fn two_s(self) -> i32 {
        self.two_s
    }

    pub fn two_m(self) -> i32 {
        self.two_m
    }

    pub fn s(self) -> HalfInt {
        HalfInt::from_twice(self.two_s)
    }

    pub fn m(self) -> HalfInt {
        HalfInt::from_twice(self.two_m)
    }

    /// All valid components for a given total spin, from `-s` to `+s`.
    pub fn components(two_s: i32) -> impl Iterator<Item = i32> {
        (-two_s..=two_s).step_by(2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn halfint_integral_parity() {
        assert!(HalfInt::from_twice(0).is_integral());
        assert!(HalfInt::from_twice(4).is_integral());
        assert!(!HalfInt::from_twice(1).is_integral());
        assert!(!HalfInt::from_twice(-3).is_integral());
    }

    #[test]
    fn exchange_sign_is_parity_of_twice() {
        assert_eq!(HalfInt::from_twice(0).exchange_sign(), 1);
        assert_eq!(HalfInt::from_twice(1).exchange_sign(), -1);
        assert_eq!(HalfInt::from_twice(2).exchange_sign(), 1);
        assert_eq!(HalfInt::from_twice(-3).exchange_sign(), -1);
    }

    #[test]
    fn spin_label_rejects_mismatched_parity() {
        assert!(SpinLabel::new(1, 0).is_err());
        assert!(SpinLabel::new(2, 1).is_err());
        assert!(SpinLabel::new(1, 3).is_err());
        assert!(SpinLabel::new(-1, 1).is_err());
    }

    #[test]
    fn spin_label_accepts_valid_components() {
        for two_s in 0..=4 {
            for two_m in SpinLabel::components(two_s) {
                assert!(SpinLabel::new(two_s, two_m).is_ok());
            }
        }
        assert_eq!(SpinLabel::components(3).collect::<Vec<_>>(), vec![-3, -1, 1, 3]);
    }
}
