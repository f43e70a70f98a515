use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

/// Exact element of ℚ/ℤ. The value `t` stands for the scalar `e^{2πi t}`.
///
/// Stored reduced with `0 ≤ num < den`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Phase {
    num: i64,
    den: i64,
}

impl Phase {
    pub const ZERO: Phase = Phase { num: 0, den: 1 };

    /// `num/den mod 1`.
    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidPhase(format!("{num}/0")));
        }
        Ok(Self::reduce(num as i128, den as i128))
    }

    /// `num/den mod 1`; panics on a zero denominator.
    pub fn frac(num: i64, den: i64) -> Self {
        Self::new(num, den).expect("nonzero denominator")
    }

    fn reduce(num: i128, den: i128) -> Self {
        let (num, den) = if den < 0 { (-num, -den) } else { (num, den) };
        let num = num.rem_euclid(den);
        let g = num.gcd(&den);
        let (num, den) = (num / g, den / g);
        Phase {
            num: i64::try_from(num).expect("phase numerator overflow"),
            den: i64::try_from(den).expect("phase denominator overflow"),
        }
    }

    /// Class of an exact rational in ℚ/ℤ.
    pub fn from_rational(r: &BigRational) -> Result<Self> {
        let den = r.denom();
        let num = r.numer().mod_floor(den);
        match (num.to_i64(), den.to_i64()) {
            (Some(n), Some(d)) => Ok(Phase::reduce(n as i128, d as i128)),
            _ => Err(Error::Overflow("phase denominator exceeds i64")),
        }
    }

    /// The representative in `[0, 1)` as an exact rational.
    pub fn to_rational(self) -> BigRational {
        BigRational::new(BigInt::from(self.num), BigInt::from(self.den))
    }

    pub fn numer(self) -> i64 {
        self.num
    }

    pub fn denom(self) -> i64 {
        self.den
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }

    /// `n · self`.
    pub fn scale(self, n: i64) -> Self {
        Self::reduce(self.num as i128 * n as i128, self.den as i128)
    }

    /// The representative in `[0, 1)` divided by `d`: a canonical solution of
    /// `d · x = self`. Panics if `d = 0`.
    pub fn div_int(self, d: i64) -> Self {
        assert!(d != 0, "division of a phase by zero");
        Self::reduce(self.num as i128, self.den as i128 * d as i128)
    }

    /// Additive order; equals the reduced denominator.
    pub fn order(self) -> i64 {
        self.den
    }
}

impl Default for Phase {
    fn default() -> Self {
        Phase::ZERO
    }
}

impl Add for Phase {
    type Output = Phase;
    fn add(self, rhs: Phase) -> Phase {
        let l = (self.den as i128).lcm(&(rhs.den as i128));
        let n = self.num as i128 * (l / self.den as i128) + rhs.num as i128 * (l / rhs.den as i128);
        Phase::reduce(n, l)
    }
}

impl Neg for Phase {
    type Output = Phase;
    fn neg(self) -> Phase {
        Phase::reduce(-(self.num as i128), self.den as i128)
    }
}

impl Sub for Phase {
    type Output = Phase;
    fn sub(self, rhs: Phase) -> Phase {
        self + (-rhs)
    }
}

impl AddAssign for Phase {
    fn add_assign(&mut self, rhs: Phase) {
        *self = *self + rhs;
    }
}

impl SubAssign for Phase {
    fn sub_assign(&mut self, rhs: Phase) {
        *self = *self - rhs;
    }
}

impl std::iter::Sum for Phase {
    fn sum<I: Iterator<Item = Phase>>(iter: I) -> Phase {
        iter.fold(Phase::ZERO, |a, b| a + b)
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Debug for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Accepts `"a/b"` or an integer `"a"` (which is `0` in ℚ/ℤ).
impl FromStr for Phase {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidPhase(format!("cannot parse {s:?} as a phase"));
        let t = s.trim();
        let (n, d) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let n: i64 = n.parse().map_err(|_| bad())?;
        let d: i64 = d.parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(Error::InvalidPhase(format!("zero denominator in {s:?}")));
        }
        Phase::new(n, d)
    }
}

impl Serialize for Phase {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Phase {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Exact rational `r` as a phase of `q^r` where `q = e^{2πi/m}`, i.e. `r/m mod 1`.
pub fn phase_of_power(r: &BigRational, m: i64) -> Result<Phase> {
    if m == 0 {
        return Err(Error::InvalidPhase("root of unity of order 0".into()));
    }
    Phase::from_rational(&(r / BigRational::from_integer(BigInt::from(m))))
}

/// True if the exact rational `r` is an integer multiple of `m`.
pub fn in_multiple_of(r: &BigRational, m: &BigRational) -> bool {
    if m.is_zero() {
        return r.is_zero();
    }
    (r / m).is_integer()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let h = Phase::frac(1, 2);
        assert_eq!(h + h, Phase::ZERO);
        assert_eq!(Phase::frac(1, 4).scale(3), Phase::frac(3, 4));
        assert_eq!(Phase::frac(-1, 3), Phase::frac(2, 3));
        assert_eq!(Phase::frac(6, -8), Phase::frac(1, 4));
        assert_eq!(Phase::frac(1, 6) - Phase::frac(1, 3), Phase::frac(5, 6));
        assert_eq!(Phase::frac(1, 2).div_int(2), Phase::frac(1, 4));
        assert_eq!(Phase::frac(3, 4).div_int(3).scale(3), Phase::frac(3, 4));
    }

    #[test]
    fn order_matches_search() {
        let p = Phase::frac(5, 8);
        let n = (1..100).find(|&n| p.scale(n).is_zero()).unwrap();
        assert_eq!(p.order(), n);
        assert_eq!(n, 8);
        assert_eq!(Phase::ZERO.order(), 1);
    }

    #[test]
    fn parsing() {
        assert_eq!("3/4".parse::<Phase>().unwrap(), Phase::frac(3, 4));
        assert_eq!(" -1 / 4 ".parse::<Phase>().unwrap(), Phase::frac(3, 4));
        assert_eq!("5".parse::<Phase>().unwrap(), Phase::ZERO);
        assert!("3/0".parse::<Phase>().is_err());
        assert!("x/2".parse::<Phase>().is_err());
        assert_eq!(Phase::frac(2, 4).to_string(), "1/2");
        assert_eq!(Phase::ZERO.to_string(), "0/1");
    }

    #[test]
    fn rational_conversion() {
        let r = BigRational::new(BigInt::from(-7), BigInt::from(3));
        assert_eq!(Phase::from_rational(&r).unwrap(), Phase::frac(2, 3));
        assert_eq!(
            phase_of_power(&BigRational::from_integer(8.into()), 4).unwrap(),
            Phase::ZERO
        );
        let two = BigRational::from_integer(2.into());
        assert!(in_multiple_of(
            &BigRational::from_integer((-4).into()),
            &two
        ));
        assert!(!in_multiple_of(&BigRational::from_integer(3.into()), &two));
    }
}
