//! Finite Puiseux polynomials `Σ c_k t^{e_k}` with rational exponents.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::tropical::Rat;

/// A finite sum of monomials `c·t^e`, exponents strictly increasing, no zero
/// coefficients. The empty sum is 0.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PuiseuxPoly {
    terms: Vec<(Rat, Rat)>,
}

impl PuiseuxPoly {
    pub fn zero() -> Self {
        PuiseuxPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        PuiseuxPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        PuiseuxPoly::monomial(c, Rat::zero())
    }

    /// `coeff · t^exponent`.
    pub fn monomial(coeff: Rat, exponent: Rat) -> Self {
        if coeff.is_zero() {
            PuiseuxPoly::zero()
        } else {
            PuiseuxPoly {
                terms: vec![(exponent, coeff)],
            }
        }
    }

    /// Collects `(exponent, coefficient)` pairs in any order, merging equal
    /// exponents and dropping zeros.
    pub fn from_terms(terms: impl IntoIterator<Item = (Rat, Rat)>) -> Self {
        let mut acc: BTreeMap<Rat, Rat> = BTreeMap::new();
        for (e, c) in terms {
            *acc.entry(e).or_insert_with(Rat::zero) += c;
        }
        PuiseuxPoly {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    /// `(exponent, coefficient)` pairs by increasing exponent.
    pub fn terms(&self) -> &[(Rat, Rat)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Result<Rat> {
        self.terms
            .first()
            .map(|(e, _)| e.clone())
            .ok_or(Error::UndefinedValuation)
    }

    pub fn leading_coefficient(&self) -> Option<&Rat> {
        self.terms.first().map(|(_, c)| c)
    }

    /// The lowest-order monomial, or 0.
    pub fn leading_term(&self) -> PuiseuxPoly {
        PuiseuxPoly {
            terms: self.terms.iter().take(1).cloned().collect(),
        }
    }

    /// Sign in the ordered field: positive iff the leading coefficient is.
    pub fn is_positive(&self) -> bool {
        self.leading_coefficient().is_some_and(Rat::is_positive)
    }

    pub fn signum(&self) -> Ordering {
        match self.leading_coefficient() {
            None => Ordering::Equal,
            Some(c) if c.is_positive() => Ordering::Greater,
            Some(_) => Ordering::Less,
        }
    }

    pub fn scale(&self, c: &Rat) -> PuiseuxPoly {
        if c.is_zero() {
            return PuiseuxPoly::zero();
        }
        PuiseuxPoly {
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    /// Substitutes `t = u^root`, where `root · e` must be an integer for every
    /// exponent `e`.
    pub fn eval_at_power(&self, u: &Rat, root: i64) -> Result<Rat> {
        let r = Rat::int(root);
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let k = (e * &r).to_i64().ok_or_else(|| {
                crate::error::rejected(format!("exponent {e} is not a multiple of 1/{root}"))
            })?;
            acc += c * &u.pow(k);
        }
        Ok(acc)
    }

    fn merge(&self, other: &PuiseuxPoly, negate_other: bool) -> PuiseuxPoly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut a, mut b) = (self.terms.iter().peekable(), other.terms.iter().peekable());
        let flip = |c: &Rat| if negate_other { -c } else { c.clone() };
        loop {
            match (a.peek(), b.peek()) {
                (Some((ea, ca)), Some((eb, cb))) => match ea.cmp(eb) {
                    Ordering::Less => {
                        out.push((ea.clone(), ca.clone()));
                        a.next();
                    }
                    Ordering::Greater => {
                        out.push((eb.clone(), flip(cb)));
                        b.next();
                    }
                    Ordering::Equal => {
                        let c = ca + &flip(cb);
                        if !c.is_zero() {
                            out.push((ea.clone(), c));
                        }
                        a.next();
                        b.next();
                    }
                },
                (Some((ea, ca)), None) => {
                    out.push((ea.clone(), ca.clone()));
                    a.next();
                }
                (None, Some((eb, cb))) => {
                    out.push((eb.clone(), flip(cb)));
                    b.next();
                }
                (None, None) => break,
            }
        }
        PuiseuxPoly { terms: out }
    }
}

impl Add for &PuiseuxPoly {
    type Output = PuiseuxPoly;
    fn add(self, rhs: &PuiseuxPoly) -> PuiseuxPoly {
        self.merge(rhs, false)
    }
}

impl Sub for &PuiseuxPoly {
    type Output = PuiseuxPoly;
    fn sub(self, rhs: &PuiseuxPoly) -> PuiseuxPoly {
        self.merge(rhs, true)
    }
}

impl Mul for &PuiseuxPoly {
    type Output = PuiseuxPoly;
    fn mul(self, rhs: &PuiseuxPoly) -> PuiseuxPoly {
        if self.is_zero() || rhs.is_zero() {
            return PuiseuxPoly::zero();
        }
        if rhs.terms.len() == 1 {
            let (e, c) = &rhs.terms[0];
            return PuiseuxPoly {
                terms: self.terms.iter().map(|(x, k)| (x + e, k * c)).collect(),
            };
        }
        PuiseuxPoly::from_terms(
            self.terms
                .iter()
                .flat_map(|(ea, ca)| rhs.terms.iter().map(move |(eb, cb)| (ea + eb, ca * cb))),
        )
    }
}

impl Neg for &PuiseuxPoly {
    type Output = PuiseuxPoly;
    fn neg(self) -> PuiseuxPoly {
        PuiseuxPoly {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for PuiseuxPoly {
            type Output = PuiseuxPoly;
            fn $m(self, rhs: PuiseuxPoly) -> PuiseuxPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for PuiseuxPoly {
    type Output = PuiseuxPoly;
    fn neg(self) -> PuiseuxPoly {
        -&self
    }
}

/// Renders as `c*t^(e)` terms, e.g. `4*t^(0) - 1*t^(2)`; zero is `0`.
impl fmt::Display for PuiseuxPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            if k == 0 {
                write!(f, "{c}*t^({e})")?;
            } else if c.is_negative() {
                write!(f, " - {}*t^({e})", c.abs())?;
            } else {
                write!(f, " + {c}*t^({e})")?;
            }
        }
        Ok(())
    }
}

impl FromStr for PuiseuxPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact == "0" {
            return Ok(PuiseuxPoly::zero());
        }
        let bad = || Error::Parse(format!("invalid Puiseux polynomial {s:?}"));
        let mut rest = compact.as_str();
        let mut terms = Vec::new();
        let mut first = true;
        while !rest.is_empty() {
            let mut negate = false;
            if !first {
                match rest.as_bytes()[0] {
                    b'+' => {}
                    b'-' => negate = true,
                    _ => return Err(bad()),
                }
                rest = &rest[1..];
            }
            first = false;
            let (coeff, tail) = rest.split_once("*t^(").ok_or_else(bad)?;
            let (exp, tail) = tail.split_once(')').ok_or_else(bad)?;
            let c: Rat = coeff.parse()?;
            terms.push((exp.parse::<Rat>()?, if negate { -c } else { c }));
            rest = tail;
        }
        Ok(PuiseuxPoly::from_terms(terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PuiseuxPoly {
        s.parse().unwrap()
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(PuiseuxPoly::one().valuation().unwrap(), Rat::zero());
        let q = p("4*t^(0) - 1*t^(2)");
        assert_eq!(q.valuation().unwrap(), Rat::zero());
        assert_eq!(q.leading_coefficient(), Some(&Rat::int(4)));
        assert_eq!(
            p("2*t^(1/2) + 3*t^(5/3)").valuation().unwrap(),
            Rat::frac(1, 2)
        );
        assert_eq!(
            PuiseuxPoly::zero().valuation(),
            Err(Error::UndefinedValuation)
        );
    }

    #[test]
    fn ring_examples() {
        let x = p("3*t^(1/2) - 1*t^(4)");
        assert_eq!(&x + &PuiseuxPoly::zero(), x);
        let t = PuiseuxPoly::monomial(Rat::one(), Rat::one());
        assert_eq!(&t * &t, PuiseuxPoly::monomial(Rat::one(), Rat::int(2)));
        let a = p("2*t^(0) - 1*t^(1)");
        let b = p("2*t^(0) + 1*t^(1)");
        assert_eq!(&a * &b, p("4*t^(0) - 1*t^(2)"));
        assert!((&x - &x).is_zero());
        assert_eq!(-(-x.clone()), x);
    }

    #[test]
    fn positivity_examples() {
        assert!(!PuiseuxPoly::zero().is_positive());
        assert!(p("4*t^(0) - 1*t^(2)").is_positive());
        assert!(!p("-1*t^(1/3) + 100*t^(1)").is_positive());
    }

    #[test]
    fn rendering() {
        assert_eq!(PuiseuxPoly::zero().to_string(), "0");
        assert_eq!(
            p("-1*t^(1/3)+100*t^(1)").to_string(),
            "-1*t^(1/3) + 100*t^(1)"
        );
        assert_eq!(
            p("2*t^(-1/2) - 3/4*t^(0)").to_string(),
            "2*t^(-1/2) - 3/4*t^(0)"
        );
        assert!("2*t^(1".parse::<PuiseuxPoly>().is_err());
        assert!("2*t^(1)3*t^(2)".parse::<PuiseuxPoly>().is_err());
    }

    #[test]
    fn canonical_form_merges_and_drops() {
        let q = PuiseuxPoly::from_terms([
            (Rat::int(2), Rat::int(1)),
            (Rat::zero(), Rat::int(5)),
            (Rat::int(2), Rat::int(-1)),
        ]);
        assert_eq!(q.terms(), &[(Rat::zero(), Rat::int(5))]);
    }

    #[test]
    fn specialization() {
        let q = p("4*t^(0) - 1*t^(2)");
        assert_eq!(
            q.eval_at_power(&Rat::frac(1, 1000), 1).unwrap(),
            Rat::int(4) - Rat::frac(1, 1_000_000)
        );
        let h = p("1*t^(1/2)");
        assert_eq!(
            h.eval_at_power(&Rat::frac(1, 3), 2).unwrap(),
            Rat::frac(1, 3)
        );
        assert!(h.eval_at_power(&Rat::frac(1, 3), 1).is_err());
    }
}
