//! Exact univariate rational functions in the variable `p`.
//!
//! A [`RationalFunction`] is always stored in canonical form:
//!
//! * numerator and denominator have integer coefficients whose combined gcd
//!   is 1,
//! * they share no nonconstant common factor,
//! * the denominator's leading coefficient is positive,
//! * zero is `0/1`.
//!
//! Two rational functions are equal as functions exactly when their
//! representations are equal, so derived `PartialEq` is value equality.

mod parse;
mod poly;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use poly::Polynomial;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    /// Brings `num/den` into canonical form.
    pub fn normalize(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = poly::poly_gcd(&num, &den);
        let (mut num, r1) = num.div_rem(&g);
        let (mut den, r2) = den.div_rem(&g);
        debug_assert!(r1.is_zero() && r2.is_zero());

        let lcm = num.denominator_lcm().lcm(&den.denominator_lcm());
        let lcm = BigRational::from_integer(lcm);
        num = num.scale(&lcm);
        den = den.scale(&lcm);

        let mut content = num.integer_content().gcd(&den.integer_content());
        if den.leading().is_some_and(|c| c.is_negative()) {
            content = -content;
        }
        if !content.is_one() {
            let inv = BigRational::new(BigInt::one(), content);
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Ok(RationalFunction { num, den })
    }

    pub fn zero() -> Self {
        RationalFunction {
            num: Polynomial::zero(),
            den: Polynomial::one(),
        }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::from_rational(BigRational::from_integer(c.into()))
    }

    pub fn from_rational(c: BigRational) -> Self {
        Self::from_polynomial(Polynomial::constant(c))
    }

    pub fn from_polynomial(p: Polynomial) -> Self {
        Self::normalize(p, Polynomial::one()).expect("denominator is one")
    }

    /// The identity function `p`.
    pub fn var() -> Self {
        Self::from_polynomial(Polynomial::var())
    }

    /// `c0 + c1 * p`.
    pub fn linear(c0: i64, c1: i64) -> Self {
        Self::from_polynomial(Polynomial::linear(c0, c1))
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The value when the function is constant.
    pub fn as_constant(&self) -> Option<BigRational> {
        match (self.num.degree(), self.den.degree()) {
            (None, _) => Some(BigRational::zero()),
            (Some(0), Some(0)) => Some(&self.num.coeffs()[0] / &self.den.coeffs()[0]),
            _ => None,
        }
    }

    pub fn checked_div(&self, rhs: &RationalFunction) -> Result<RationalFunction> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::normalize(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    pub fn recip(&self) -> Result<RationalFunction> {
        Self::one().checked_div(self)
    }

    pub fn scale(&self, s: &BigRational) -> RationalFunction {
        Self::normalize(self.num.scale(s), self.den.clone()).expect("denominator unchanged")
    }

    pub fn pow(&self, e: u32) -> RationalFunction {
        Self::normalize(self.num.pow(e), self.den.pow(e)).expect("nonzero denominator")
    }

    /// Exact value at `p = x`.
    pub fn eval(&self, x: &BigRational) -> Result<BigRational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::Pole(x.to_string()));
        }
        Ok(self.num.eval(x) / d)
    }

    pub fn eval_int(&self, x: i64) -> Result<BigRational> {
        self.eval(&BigRational::from_integer(x.into()))
    }

    /// `q(p) = self(p + k)`.
    pub fn shift(&self, k: i64) -> RationalFunction {
        let k = BigRational::from_integer(k.into());
        Self::normalize(self.num.shift(&k), self.den.shift(&k)).expect("shift keeps den nonzero")
    }
}

impl Default for RationalFunction {
    fn default() -> Self {
        Self::zero()
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return RationalFunction::normalize(&self.num + &rhs.num, self.den.clone())
                .expect("nonzero denominator");
        }
        RationalFunction::normalize(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
        .expect("nonzero denominator")
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::normalize(&self.num * &rhs.num, &self.den * &rhs.den)
            .expect("nonzero denominator")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$method(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

impl fmt::Display for RationalFunction {
    /// `(<num>)/(<den>)`, or `(<num>)` when the denominator is 1.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one_poly() {
            write!(f, "({})", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl FromStr for RationalFunction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse::parse(s)
    }
}

impl Polynomial {
    fn is_one_poly(&self) -> bool {
        self.degree() == Some(0) && self.coeffs()[0].is_one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(s: &str) -> RationalFunction {
        s.parse().unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn common_factor_cancels() {
        let r = RationalFunction::normalize(
            Polynomial::from_ints([2, 2]),
            Polynomial::from_ints([1, 1]),
        )
        .unwrap();
        assert_eq!(r, RationalFunction::constant(2));
        assert_eq!(r.to_string(), "(2)");
    }

    #[test]
    fn squared_factor_example_expands() {
        let num = &Polynomial::from_ints([-4]) * &Polynomial::from_ints([1, 2]).pow(2);
        let den = Polynomial::from_ints([1, 1]).pow(2);
        let r = RationalFunction::normalize(num, den).unwrap();
        assert_eq!(r.numerator(), &Polynomial::from_ints([-4, -16, -16]));
        assert_eq!(r.denominator(), &Polynomial::from_ints([1, 2, 1]));
    }

    #[test]
    fn zero_numerator_is_zero_over_one() {
        let r = RationalFunction::normalize(Polynomial::zero(), Polynomial::from_ints([-3, 1]))
            .unwrap();
        assert_eq!(r, RationalFunction::zero());
        assert_eq!(r.denominator(), &Polynomial::one());
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(
            RationalFunction::normalize(Polynomial::one(), Polynomial::zero()),
            Err(Error::ZeroDenominator)
        );
    }

    #[test]
    fn rational_coefficients_are_cleared() {
        // (p/2) / (p/3 + 1/3) = 3p / (2p + 2)
        let num = Polynomial::new(vec![q(0, 1), q(1, 2)]);
        let den = Polynomial::new(vec![q(1, 3), q(1, 3)]);
        let r = RationalFunction::normalize(num, den).unwrap();
        assert_eq!(r.to_string(), "(3*p)/(2 + 2*p)");
    }

    #[test]
    fn negative_leading_denominator_flips() {
        assert_eq!(rf("1/(1-p)").to_string(), "(-1)/(-1 + p)");
    }

    #[test]
    fn arithmetic_examples() {
        let two = RationalFunction::constant(2);
        assert!((&two + &RationalFunction::constant(-2)).is_zero());
        let inv = rf("1/(p+1)");
        assert_eq!(
            &inv * &RationalFunction::linear(1, 1),
            RationalFunction::one()
        );
        let f = RationalFunction::constant(2);
        let g = RationalFunction::constant(4);
        assert_eq!(&(&two * &f) + &g, RationalFunction::constant(8));
        assert_eq!(
            two.checked_div(&RationalFunction::zero()),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn eval_examples() {
        assert_eq!(rf("(3-2*p)/(-1+2*p)").eval_int(1).unwrap(), q(1, 1));
        assert_eq!(RationalFunction::zero().eval_int(17).unwrap(), q(0, 1));
        assert_eq!(rf("2/(p+1)").eval_int(3).unwrap(), q(1, 2));
        assert!(matches!(rf("1/(p-3)").eval_int(3), Err(Error::Pole(_))));
    }

    #[test]
    fn shift_examples() {
        assert_eq!(
            RationalFunction::var().shift(1),
            RationalFunction::linear(1, 1)
        );
        assert_eq!(
            RationalFunction::constant(2).shift(-5),
            RationalFunction::constant(2)
        );
        assert_eq!(rf("1/(p+1)").shift(-1), rf("1/p"));
    }

    #[test]
    fn parse_factored_denominator() {
        let s = "(-90 + 441*p + 756*p^2 - 497*p^3 - 462*p^4 + 84*p^5 + 56*p^6)/((1+p)*(2+p)*(3+p)*(-5+2*p)*(-3+2*p)*(-1+2*p))";
        let r = rf(s);
        assert_eq!(
            r.to_string(),
            "(-90 + 441*p + 756*p^2 - 497*p^3 - 462*p^4 + 84*p^5 + 56*p^6)/\
             (-90 + 111*p + 200*p^2 - 87*p^3 - 82*p^4 + 12*p^5 + 8*p^6)"
        );
        assert_eq!(rf(&r.to_string()), r);
    }

    #[test]
    fn parse_constant_and_errors() {
        assert_eq!(rf("2"), RationalFunction::constant(2));
        assert_eq!(rf(" - p ^ 2 "), rf("(-p^2)"));
        match "p^2/(p".parse::<RationalFunction>() {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 6),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(matches!(
            "p/(p-p)".parse::<RationalFunction>(),
            Err(Error::ZeroDenominator)
        ));
        assert!(matches!(
            "1/2/3".parse::<RationalFunction>(),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            "2*x".parse::<RationalFunction>(),
            Err(Error::Parse { pos: 2, .. })
        ));
    }
}
