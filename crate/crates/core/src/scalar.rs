//! Exact arithmetic on the monoid `{0} ∪ {roots of unity}`.
//!
//! A nonzero value is stored as a reduced exponent `a/b ∈ [0, 1)` standing for
//! `e^{2πi·a/b}`. Multiplication adds exponents mod 1, so equality and products
//! are exact and cheap.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Div, Mul};

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum TorsionScalar {
    Zero,
    /// `e^{2πi·num/den}` with `0 ≤ num < den`, `gcd(num, den) = 1`.
    Unity { num: u64, den: u64 },
}

impl TorsionScalar {
    pub const ONE: TorsionScalar = TorsionScalar::Unity { num: 0, den: 1 };
    pub const MINUS_ONE: TorsionScalar = TorsionScalar::Unity { num: 1, den: 2 };
    pub const I: TorsionScalar = TorsionScalar::Unity { num: 1, den: 4 };

    /// `e^{2πi·num/den}` for any integer `num` and `den ≥ 1`, reduced.
    pub fn root_of_unity(num: i64, den: i64) -> Result<Self> {
        if den < 1 {
            return Err(Error::InvalidExponent { num, den });
        }
        Ok(Self::reduced(num as i128, den as i128))
    }

    /// The primitive root `ζ_n = e^{2πi/n}`.
    pub fn zeta(n: u64) -> Self {
        assert!(n >= 1, "ζ_n needs n ≥ 1");
        Self::reduced(1, n as i128)
    }

    /// `ζ_n^k`.
    pub fn zeta_pow(n: u64, k: i64) -> Self {
        assert!(n >= 1, "ζ_n needs n ≥ 1");
        Self::reduced(k as i128, n as i128)
    }

    fn reduced(num: i128, den: i128) -> Self {
        let num = num.rem_euclid(den);
        let g = num.gcd(&den);
        TorsionScalar::Unity {
            num: (num / g) as u64,
            den: (den / g) as u64,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, TorsionScalar::Zero)
    }

    pub fn is_one(&self) -> bool {
        *self == Self::ONE
    }

    /// Reduced exponent `(a, b)` of a nonzero value.
    pub fn exponent(&self) -> Option<(u64, u64)> {
        match *self {
            TorsionScalar::Zero => None,
            TorsionScalar::Unity { num, den } => Some((num, den)),
        }
    }

    /// Multiplicative order of a nonzero value.
    pub fn order(&self) -> Option<u64> {
        self.exponent().map(|(_, den)| den)
    }

    pub fn mul(self, other: Self) -> Self {
        match (self, other) {
            (TorsionScalar::Unity { num: a, den: b }, TorsionScalar::Unity { num: c, den: d }) => {
                let l = b.lcm(&d) as i128;
                let n = a as i128 * (l / b as i128) + c as i128 * (l / d as i128);
                Self::reduced(n, l)
            }
            _ => TorsionScalar::Zero,
        }
    }

    pub fn inv(self) -> Result<Self> {
        self.pow(-1)
    }

    pub fn pow(self, k: i64) -> Result<Self> {
        match self {
            TorsionScalar::Zero if k > 0 => Ok(TorsionScalar::Zero),
            TorsionScalar::Zero => Err(Error::ZeroToNonpositivePower(k)),
            TorsionScalar::Unity { num, den } => Ok(Self::reduced(num as i128 * k as i128, den as i128)),
        }
    }

    pub fn div(self, other: Self) -> Result<Self> {
        Ok(self.mul(other.inv()?))
    }

    /// All `q` with `q^n = self`, in ascending exponent order.
    pub fn nth_roots(self, n: u64) -> Result<Vec<Self>> {
        assert!(n >= 1, "root index must be positive");
        let (a, b) = self.exponent().ok_or(Error::ZeroHasNoRoots)?;
        // (a/b + j) / n for j = 0..n is increasing and stays in [0, 1).
        Ok((0..n)
            .map(|j| Self::reduced(a as i128 + j as i128 * b as i128, b as i128 * n as i128))
            .collect())
    }

    /// The subgroup `μ_n` of n-th roots of unity, ascending.
    pub fn roots_of_unity(n: u64) -> Vec<Self> {
        (0..n).map(|k| Self::zeta_pow(n, k as i64)).collect()
    }
}

impl Default for TorsionScalar {
    fn default() -> Self {
        Self::ONE
    }
}

impl Ord for TorsionScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (TorsionScalar::Zero, TorsionScalar::Zero) => Ordering::Equal,
            (TorsionScalar::Zero, _) => Ordering::Less,
            (_, TorsionScalar::Zero) => Ordering::Greater,
            (TorsionScalar::Unity { num: a, den: b }, TorsionScalar::Unity { num: c, den: d }) => {
                (*a as u128 * *d as u128).cmp(&(*c as u128 * *b as u128))
            }
        }
    }
}

impl PartialOrd for TorsionScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Mul for TorsionScalar {
    type Output = TorsionScalar;
    fn mul(self, rhs: Self) -> Self {
        TorsionScalar::mul(self, rhs)
    }
}

impl Div for TorsionScalar {
    type Output = TorsionScalar;
    /// Panics on division by zero.
    fn div(self, rhs: Self) -> Self {
        TorsionScalar::div(self, rhs).expect("division by zero scalar")
    }
}

impl fmt::Display for TorsionScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            TorsionScalar::Zero => write!(f, "0"),
            TorsionScalar::Unity { num: 0, .. } => write!(f, "1"),
            TorsionScalar::Unity { num: 1, den: 2 } => write!(f, "-1"),
            TorsionScalar::Unity { num: 1, den: 4 } => write!(f, "i"),
            TorsionScalar::Unity { num: 3, den: 4 } => write!(f, "-i"),
            TorsionScalar::Unity { num: 1, den } => write!(f, "ζ_{den}"),
            TorsionScalar::Unity { num, den } => write!(f, "ζ_{den}^{num}"),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum ScalarRepr {
    Zero,
    Unity { num: i64, den: i64 },
}

impl Serialize for TorsionScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match *self {
            TorsionScalar::Zero => ScalarRepr::Zero,
            TorsionScalar::Unity { num, den } => ScalarRepr::Unity {
                num: num as i64,
                den: den as i64,
            },
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TorsionScalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        match ScalarRepr::deserialize(deserializer)? {
            ScalarRepr::Zero => Ok(TorsionScalar::Zero),
            ScalarRepr::Unity { num, den } => {
                TorsionScalar::root_of_unity(num, den).map_err(serde::de::Error::custom)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(num: i64, den: i64) -> TorsionScalar {
        TorsionScalar::root_of_unity(num, den).unwrap()
    }

    #[test]
    fn mul_examples() {
        assert_eq!(e(1, 3) * e(1, 3), e(2, 3));
        assert_eq!(TorsionScalar::Zero * e(1, 4), TorsionScalar::Zero);
        assert_eq!(e(1, 2) * e(1, 2), TorsionScalar::ONE);
        assert_eq!(e(1, 2) * e(1, 2), TorsionScalar::Unity { num: 0, den: 1 });
    }

    #[test]
    fn pow_examples() {
        assert_eq!(e(1, 8).pow(4).unwrap(), TorsionScalar::MINUS_ONE);
        assert_eq!(e(1, 3).pow(-1).unwrap(), e(2, 3));
        assert_eq!(e(1, 6).pow(6).unwrap(), TorsionScalar::ONE);
        assert_eq!(TorsionScalar::Zero.pow(3).unwrap(), TorsionScalar::Zero);
        assert!(matches!(
            TorsionScalar::Zero.pow(0),
            Err(Error::ZeroToNonpositivePower(0))
        ));
        assert!(TorsionScalar::Zero.pow(-2).is_err());
    }

    #[test]
    fn nth_roots_examples() {
        assert_eq!(
            TorsionScalar::MINUS_ONE.nth_roots(2).unwrap(),
            vec![e(1, 4), e(3, 4)]
        );
        assert_eq!(
            TorsionScalar::ONE.nth_roots(3).unwrap(),
            vec![TorsionScalar::ONE, e(1, 3), e(2, 3)]
        );
        assert!(matches!(
            TorsionScalar::Zero.nth_roots(3),
            Err(Error::ZeroHasNoRoots)
        ));
    }

    #[test]
    fn cube_roots_of_minus_one_match_filtered_mu6() {
        // Oracle: keep the elements of μ₆ whose cube is −1.
        let oracle: Vec<_> = TorsionScalar::roots_of_unity(6)
            .into_iter()
            .filter(|q| q.pow(3).unwrap() == TorsionScalar::MINUS_ONE)
            .collect();
        assert_eq!(oracle, vec![e(1, 6), e(1, 2), e(5, 6)]);
        assert_eq!(TorsionScalar::MINUS_ONE.nth_roots(3).unwrap(), oracle);
    }

    #[test]
    fn reduced_form_is_canonical() {
        assert_eq!(e(2, 4), e(1, 2));
        assert_eq!(e(-1, 3), e(2, 3));
        assert_eq!(e(9, 6), e(1, 2));
        assert_eq!(e(5, 5), TorsionScalar::ONE);
        assert!(TorsionScalar::root_of_unity(1, 0).is_err());
    }

    #[test]
    fn json_shape() {
        let s = serde_json::to_string(&e(2, 6)).unwrap();
        assert_eq!(s, r#"{"kind":"unity","num":1,"den":3}"#);
        assert_eq!(
            serde_json::to_string(&TorsionScalar::Zero).unwrap(),
            r#"{"kind":"zero"}"#
        );
        let back: TorsionScalar = serde_json::from_str(r#"{"kind":"unity","num":4,"den":8}"#).unwrap();
        assert_eq!(back, TorsionScalar::MINUS_ONE);
    }

    #[test]
    fn display() {
        assert_eq!(e(1, 4).to_string(), "i");
        assert_eq!(e(2, 3).to_string(), "ζ_3^2");
        assert_eq!(TorsionScalar::ONE.to_string(), "1");
    }
}
