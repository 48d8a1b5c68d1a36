//! Exact rationals.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// An arbitrary-precision rational number, always in lowest terms with a
/// positive denominator.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rat(BigRational);

impl Rat {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self, Error> {
        let d = denom.into();
        if d.is_zero() {
            return Err(Error::Parse("zero denominator".into()));
        }
        Ok(Rat(BigRational::new(numer.into(), d)))
    }

    pub fn int(v: i64) -> Self {
        Rat(BigRational::from_integer(v.into()))
    }

    /// `numer / denom`; panics on a zero denominator.
    pub fn frac(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Rat(BigRational::new(numer.into(), denom.into()))
    }

    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Rat(BigRational::one())
    }

    pub fn from_bigint(v: BigInt) -> Self {
        Rat(BigRational::from_integer(v))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rat(self.0.abs())
    }

    pub fn half(&self) -> Self {
        Rat(&self.0 / BigInt::from(2))
    }

    pub fn double(&self) -> Self {
        Rat(&self.0 * BigInt::from(2))
    }

    pub fn recip(&self) -> Self {
        Rat(self.0.recip())
    }

    /// Integer power; negative exponents invert. Panics on `0^negative`.
    pub fn pow(&self, exp: i64) -> Self {
        let mag = exp.unsigned_abs();
        let mut base = self.0.clone();
        let mut acc = BigRational::one();
        let mut e = mag;
        while e > 0 {
            if e & 1 == 1 {
                acc *= &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        if exp < 0 {
            Rat(acc.recip())
        } else {
            Rat(acc)
        }
    }

    /// Integer value when this rational is an integer that fits in `i64`.
    pub fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.numer().to_i64()
        } else {
            None
        }
    }
}

/// Least common multiple of all denominators.
fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

/// Scales every value by the lcm of the denominators, returning the integer
/// numerators and the scale.
pub(crate) fn to_common_integers(values: &[Rat]) -> (Vec<BigInt>, BigInt) {
    let d = common_denominator(values);
    let ints = values
        .iter()
        .map(|r| r.numer() * (&d / r.denom()))
        .collect();
    (ints, d)
}

impl From<i64> for Rat {
    fn from(v: i64) -> Self {
        Rat::int(v)
    }
}

impl From<BigInt> for Rat {
    fn from(v: BigInt) -> Self {
        Rat::from_bigint(v)
    }
}

impl FromStr for Rat {
    type Err = Error;

    /// Accepts `p` or `p/q` with optional sign on `p`; the result is reduced.
    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::Parse(format!("invalid rational {s:?}"));
        let t = s.trim();
        let int = |x: &str| -> Result<BigInt, Error> {
            let digits = x.strip_prefix(['-', '+']).unwrap_or(x);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            x.parse::<BigInt>().map_err(|_| bad())
        };
        match t.split_once('/') {
            None => Ok(Rat::from_bigint(int(t)?)),
            Some((p, q)) => {
                if q.starts_with(['-', '+']) {
                    return Err(bad());
                }
                Rat::new(int(p)?, int(q)?)
            }
        }
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Rat> for Rat {
            type Output = Rat;
            fn $m(self, rhs: Rat) -> Rat {
                Rat(self.0.$m(rhs.0))
            }
        }
        impl $tr<&Rat> for Rat {
            type Output = Rat;
            fn $m(self, rhs: &Rat) -> Rat {
                Rat(self.0.$m(&rhs.0))
            }
        }
        impl $tr<Rat> for &Rat {
            type Output = Rat;
            fn $m(self, rhs: Rat) -> Rat {
                Rat((&self.0).$m(rhs.0))
            }
        }
        impl $tr<&Rat> for &Rat {
            type Output = Rat;
            fn $m(self, rhs: &Rat) -> Rat {
                Rat((&self.0).$m(&rhs.0))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl AddAssign<&Rat> for Rat {
    fn add_assign(&mut self, rhs: &Rat) {
        self.0 += &rhs.0;
    }
}

impl AddAssign<Rat> for Rat {
    fn add_assign(&mut self, rhs: Rat) {
        self.0 += rhs.0;
    }
}

impl SubAssign<&Rat> for Rat {
    fn sub_assign(&mut self, rhs: &Rat) {
        self.0 -= &rhs.0;
    }
}

impl Sum for Rat {
    fn sum<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |a, b| a + b)
    }
}

impl<'a> Sum<&'a Rat> for Rat {
    fn sum<I: Iterator<Item = &'a Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |a, b| a + b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display_canonical() {
        assert_eq!("2/4".parse::<Rat>().unwrap().to_string(), "1/2");
        assert_eq!("-6/3".parse::<Rat>().unwrap().to_string(), "-2");
        assert_eq!("0/5".parse::<Rat>().unwrap(), Rat::zero());
        assert_eq!(" 7 ".parse::<Rat>().unwrap(), Rat::int(7));
        for bad in ["", "1/0", "a", "1/", "/2", "1/-2", "1.5", "--1", "1/2/3"] {
            assert!(bad.parse::<Rat>().is_err(), "{bad:?} should fail");
        }
    }

    #[test]
    fn arithmetic() {
        let a = Rat::frac(1, 2);
        let b = Rat::frac(-1, 3);
        assert_eq!(&a + &b, Rat::frac(1, 6));
        assert_eq!(&a * &b, Rat::frac(-1, 6));
        assert_eq!(&a / &b, Rat::frac(-3, 2));
        assert_eq!(a.pow(-3), Rat::int(8));
        assert_eq!(Rat::frac(2, 3).pow(0), Rat::one());
        assert!(b < a);
    }

    #[test]
    fn common_integers() {
        let v = [Rat::frac(1, 2), Rat::frac(-2, 3), Rat::int(4)];
        let (ints, d) = to_common_integers(&v);
        assert_eq!(d, BigInt::from(6));
        assert_eq!(ints, vec![3.into(), (-4).into(), 24.into()]);
    }
}
