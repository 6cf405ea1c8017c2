//! Tiling counts for Aztec diamonds with a 2×2 hole.
//!
//! Label the hole cells `a = (l−1, m)`, `b = (l, m)`, `c = (l, m−1)`,
//! `d = (l−1, m−1)`. Because `a` and `c` share a colour, Kuo condensation
//! reduces to
//!
//! ```text
//! M(A) M(A − abcd) = M(A − ab) M(A − cd) + M(A − ad) M(A − bc)
//! ```
//!
//! and each `M(A − xy) / M(A)` is the probability of the domino `{x, y}`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::kravchuk::binomial;
use crate::placement::{canonical_position, f_symbolic, prob_general, Alpha, Position};
use crate::ratfunc::RationalFunction;
use crate::region::Cell;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HoleSpec {
    pub center: Position,
    pub order: u32,
}

impl HoleSpec {
    pub fn new(l: i64, m: i64, order: u32) -> Result<HoleSpec> {
        let spec = HoleSpec {
            center: Position::new(l, m),
            order,
        };
        if spec.cells().iter().any(|c| !c.in_diamond(order)) {
            return Err(Error::HoleOutside(l, m, order));
        }
        Ok(spec)
    }

    /// `[a, b, c, d]`: top-left, top-right, bottom-right, bottom-left.
    pub fn cells(&self) -> [Cell; 4] {
        let Position { l, m } = self.center;
        [
            Cell::new(l - 1, m),
            Cell::new(l, m),
            Cell::new(l, m - 1),
            Cell::new(l - 1, m - 1),
        ]
    }
}

fn aztec_count(n: u32) -> BigUint {
    BigUint::one() << (n * (n + 1) / 2)
}

/// Number of tilings of the diamond with the hole removed, from exact
/// placement probabilities of the block's four dominoes.
pub fn hole_count(spec: &HoleSpec) -> Result<BigUint> {
    let [a, b, c, d] = spec.cells();
    let n = spec.order;
    let p = |x, y| prob_general(x, y, n).map(|pr| pr.into_inner());
    let ratio = p(a, b)? * p(c, d)? + p(a, d)? * p(b, c)?;
    let total = BigRational::from_integer(BigInt::from(aztec_count(n))) * ratio;
    assert!(total.is_integer(), "hole count {total} is not an integer");
    Ok(total
        .to_integer()
        .to_biguint()
        .expect("hole count is nonnegative"))
}

/// `g` and `h` with
///
/// ```text
/// count = 2^((n+1)n/2) · (1/8 + 2^(−n−2) C(2p−1,p)² g(p) + 2^(−2n) C(2p−1,p)⁴ h(p))
/// ```
///
/// for `n = 4p + α`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HoleSymbolic {
    pub center: Position,
    pub alpha: Alpha,
    pub g: RationalFunction,
    pub h: RationalFunction,
}

impl HoleSymbolic {
    /// Smallest `p` for which all four constituent formulas are asserted.
    pub fn p_min(&self) -> u32 {
        let spec_cells = HoleSpec {
            center: self.center,
            order: 0,
        }
        .cells();
        let reach = spec_cells
            .iter()
            .map(|c| (2 * c.i + 1).abs() + (2 * c.j + 1).abs())
            .max()
            .unwrap();
        // every constituent domino lies strictly inside once n ≥ reach/2 + 2
        let need = (reach + 1) / 2 + 2 - self.alpha.as_i64();
        let p = if need <= 0 { 0 } else { (need + 3) / 4 };
        p.max(1) as u32
    }

    /// The closed form evaluated at `p`.
    pub fn count_at(&self, p: u32) -> Result<BigRational> {
        let n = 4 * p + u32::from(self.alpha.get());
        let c2 = {
            let c = binomial(2 * i64::from(p) - 1, i64::from(p));
            BigRational::from_integer(&c * &c)
        };
        let two = |e: u32| BigRational::from_integer(BigInt::one() << e);
        let pp = i64::from(p);
        let bracket = BigRational::new(1.into(), 8.into())
            + &c2 * self.g.eval_int(pp)? / two(n + 2)
            + &c2 * &c2 * self.h.eval_int(pp)? / two(2 * n);
        Ok(BigRational::from_integer(BigInt::from(aztec_count(n))) * bracket)
    }
}

/// Symbolic hole count for a hole centred at `(l, m)` in diamonds of size
/// `4p + α`.
pub fn hole_symbolic(l: i64, m: i64, alpha: Alpha) -> Result<HoleSymbolic> {
    let spec = HoleSpec {
        center: Position::new(l, m),
        order: 0,
    };
    let [a, b, c, d] = spec.cells();
    let parity = u32::from(alpha.get());
    let f = |x: Cell, y: Cell| -> Result<RationalFunction> {
        let pos = canonical_position(x, y, parity)?;
        f_symbolic(pos.l, pos.m, alpha).f.ok_or_else(|| {
            Error::DegenerateHole(format!(
                "domino {x}-{y} maps to {pos}, which vanishes by parity for alpha = {alpha}"
            ))
        })
    };
    let (top, bottom, left, right) = (f(a, b)?, f(c, d)?, f(a, d)?, f(b, c)?);
    let g = &(&top + &bottom) + &(&left + &right);
    let h = &(&top * &bottom) + &(&left * &right);
    Ok(HoleSymbolic {
        center: spec.center,
        alpha,
        g,
        h,
    })
}

/// Tilings of the order-`n` diamond with a central 2×2 hole for
/// `n ≡ 2, 3 (mod 4)`: `2^(8p²+10p)` and `2^(8p²+14p+3)`.
pub fn ciucu_count(n: u32) -> Result<BigUint> {
    let p = n / 4;
    let e = match n % 4 {
        2 => 8 * p * p + 10 * p,
        3 => 8 * p * p + 14 * p + 3,
        _ => return Err(Error::NotCiucu(n)),
    };
    Ok(BigUint::one() << e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn al(v: i64) -> Alpha {
        Alpha::new(v).unwrap()
    }

    #[test]
    fn central_counts() {
        let cases = [(5u32, 6400u64), (6, 1 << 18), (7, 1 << 25)];
        for (n, expected) in cases {
            let spec = HoleSpec::new(0, 0, n).unwrap();
            assert_eq!(
                hole_count(&spec).unwrap(),
                BigUint::from(expected),
                "n = {n}"
            );
        }
    }

    #[test]
    fn hole_must_fit() {
        assert_eq!(HoleSpec::new(3, 0, 3), Err(Error::HoleOutside(3, 0, 3)));
        assert!(HoleSpec::new(0, 0, 1).is_ok());
    }

    #[test]
    fn ciucu_examples() {
        assert_eq!(ciucu_count(6).unwrap(), BigUint::one() << 18u32);
        assert_eq!(ciucu_count(7).unwrap(), BigUint::one() << 25u32);
        assert_eq!(ciucu_count(10).unwrap(), BigUint::one() << 52u32);
        assert_eq!(ciucu_count(8), Err(Error::NotCiucu(8)));
    }

    #[test]
    fn symbolic_origin() {
        let s = hole_symbolic(0, 0, al(1)).unwrap();
        assert_eq!(s.g, RationalFunction::constant(8));
        assert_eq!(s.h, RationalFunction::constant(8));
        let s = hole_symbolic(0, 0, al(3)).unwrap();
        assert!(s.g.is_zero() && s.h.is_zero());
        assert_eq!(
            s.count_at(1).unwrap(),
            BigRational::from_integer(BigInt::one() << 25)
        );
        assert!(BigRational::zero() < hole_symbolic(0, 0, al(0)).unwrap().count_at(1).unwrap());
    }
}
