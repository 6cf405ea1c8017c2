use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Dense univariate polynomial in `p` over the rationals.
///
/// `coeffs[k]` is the coefficient of `p^k`. The highest stored coefficient is
/// never zero, so the zero polynomial is the empty vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<BigRational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_ints<I: IntoIterator<Item = i64>>(coeffs: I) -> Self {
        Self::new(
            coeffs
                .into_iter()
                .map(|c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `p`.
    pub fn var() -> Self {
        Self::from_ints([0, 1])
    }

    /// `c0 + c1 * p`.
    pub fn linear(c0: i64, c1: i64) -> Self {
        Self::from_ints([c0, c1])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// `q(p) = self(p + k)`, by Horner's scheme in the shifted variable.
    pub fn shift(&self, k: &BigRational) -> Self {
        let lin = Polynomial::new(vec![k.clone(), BigRational::one()]);
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| {
            &(&acc * &lin) + &Polynomial::constant(c.clone())
        })
    }

    /// Euclidean division over the rationals: `self = q * d + r`, `deg r < deg d`.
    ///
    /// Panics when `d` is zero.
    pub fn div_rem(&self, d: &Polynomial) -> (Polynomial, Polynomial) {
        let dd = d.degree().expect("polynomial division by zero");
        let lead = d.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRational::zero(); rem.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let top = rem.len() - 1;
            let c = &rem[top] / &lead;
            let shift = top - dd;
            for (k, dc) in d.coeffs.iter().enumerate() {
                rem[shift + k] -= &c * dc;
            }
            quot[shift] = c;
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        (Polynomial::new(quot), Polynomial::new(rem))
    }

    /// Least common multiple of the coefficient denominators.
    pub(crate) fn denominator_lcm(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Gcd of the numerators, assuming integral coefficients.
    pub(crate) fn integer_content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c.numer()))
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = BigRational::zero();
        Polynomial::new(
            (0..n)
                .map(|k| self.coeffs.get(k).unwrap_or(&zero) + rhs.coeffs.get(k).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

/// Gcd of two nonzero polynomials via the primitive polynomial remainder
/// sequence over the integers. The result is primitive with positive leading
/// coefficient.
pub(crate) fn poly_gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    let mut x = IntPoly::primitive_of(a);
    let mut y = IntPoly::primitive_of(b);
    if x.0.len() < y.0.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.0.is_empty() {
        let r = x.pseudo_rem(&y);
        x = y;
        y = r.primitive();
    }
    if x.0.last().is_some_and(|c| c.is_negative()) {
        x = IntPoly(x.0.into_iter().map(|c| -c).collect());
    }
    x.into_poly()
}

/// Integer-coefficient polynomial used only inside the gcd computation.
struct IntPoly(Vec<BigInt>);

impl IntPoly {
    fn primitive_of(p: &Polynomial) -> IntPoly {
        let l = p.denominator_lcm();
        let ints = p
            .coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(l.clone())).to_integer())
            .collect();
        IntPoly(ints).primitive()
    }

    fn primitive(self) -> IntPoly {
        let g = self.0.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if g.is_zero() || g.is_one() {
            return self;
        }
        IntPoly(self.0.into_iter().map(|c| c / &g).collect())
    }

    /// Pseudo-remainder of `self` by `d` (`lc(d)^k * self = q*d + r`).
    fn pseudo_rem(&self, d: &IntPoly) -> IntPoly {
        let dd = d.0.len() - 1;
        let lead = &d.0[dd];
        let mut rem = self.0.clone();
        while rem.len() > dd {
            let top = rem.len() - 1;
            let c = rem[top].clone();
            let shift = top - dd;
            for r in rem.iter_mut() {
                *r *= lead;
            }
            for (k, dc) in d.0.iter().enumerate() {
                rem[shift + k] -= &c * dc;
            }
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        IntPoly(rem)
    }

    fn into_poly(self) -> Polynomial {
        Polynomial::new(self.0.into_iter().map(BigRational::from_integer).collect())
    }
}

impl fmt::Display for Polynomial {
    /// Terms in increasing degree: `-10 - 12*p - 6*p^2`, `1 + p`, `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if k == 1 {
                        f.write_str("p")?;
                    } else {
                        write!(f, "p^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn trailing_zeros_are_trimmed() {
        let p = Polynomial::from_ints([1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert!(Polynomial::from_ints([0, 0]).is_zero());
    }

    #[test]
    fn division_with_remainder() {
        // p^2 + 3p + 5 = (p + 1)(p + 2) + 3
        let a = Polynomial::from_ints([5, 3, 1]);
        let d = Polynomial::from_ints([1, 1]);
        let (quo, rem) = a.div_rem(&d);
        assert_eq!(quo, Polynomial::from_ints([2, 1]));
        assert_eq!(rem, Polynomial::from_ints([3]));
    }

    #[test]
    fn gcd_of_products() {
        let a = &Polynomial::from_ints([1, 2]) * &Polynomial::from_ints([-3, 1]);
        let b = &Polynomial::from_ints([2, 4]) * &Polynomial::from_ints([5, 1]);
        assert_eq!(poly_gcd(&a, &b), Polynomial::from_ints([1, 2]));
        let c = Polynomial::from_ints([7]);
        assert_eq!(poly_gcd(&a, &c), Polynomial::one());
    }

    #[test]
    fn shift_and_eval() {
        let a = Polynomial::from_ints([1, 0, 1]);
        let s = a.shift(&q(2));
        assert_eq!(s, Polynomial::from_ints([5, 4, 1]));
        assert_eq!(a.eval(&q(3)), q(10));
    }

    #[test]
    fn display_terms() {
        assert_eq!(
            Polynomial::from_ints([-10, -12, -6]).to_string(),
            "-10 - 12*p - 6*p^2"
        );
        assert_eq!(Polynomial::from_ints([0, -1, 1]).to_string(), "-p + p^2");
        assert_eq!(Polynomial::zero().to_string(), "0");
    }
}
