//! Placement probabilities of horizontal dominoes with a black left cell.
//!
//! Conventions: cells are unit squares named by their lower-left corner
//! `(i, j)`. The order-`n` diamond contains `(i, j)` iff
//! `|i + 1/2| + |j + 1/2| ≤ n`, and `(i, j)` is black iff `i + j ≡ n (mod 2)`.
//! Position `(l, m)` denotes the horizontal domino on cells `(l−1, m)` and
//! `(l, m)`; it has a black left cell iff `l + m ≡ n + 1 (mod 2)`.
//!
//! With `n = 4p + α`, every nonzero probability has the shape
//!
//! ```text
//! P(l, m; n) = 1/4 + 2^(−n) · C(2p−1, p)² · f_{l,m,α}(p)
//! ```
//!
//! and creation rates `Cr(l, m; n) = 2·(P(l, m; n) − P(l, m−1; n−1))` have
//! the shape `2^(1−n) · C(2p−1, p)² · h_{l,m,α}(p)`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{LazyLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kravchuk::{binomial, factorial_quotient, growth_g, krav_eval, GrowthKey};
use crate::ratfunc::RationalFunction;
use crate::region::Cell;

/// Residue `α = n mod 4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "i64", into = "i64")]
pub struct Alpha(u8);

impl Alpha {
    pub const ALL: [Alpha; 4] = [Alpha(0), Alpha(1), Alpha(2), Alpha(3)];

    pub fn new(v: i64) -> Result<Alpha> {
        match v {
            0..=3 => Ok(Alpha(v as u8)),
            _ => Err(Error::InvalidAlpha(v)),
        }
    }

    pub fn of_order(n: u32) -> Alpha {
        Alpha((n % 4) as u8)
    }

    pub fn get(self) -> u8 {
        self.0
    }

    pub fn as_i64(self) -> i64 {
        i64::from(self.0)
    }
}

impl TryFrom<i64> for Alpha {
    type Error = Error;
    fn try_from(v: i64) -> Result<Alpha> {
        Alpha::new(v)
    }
}

impl From<Alpha> for i64 {
    fn from(a: Alpha) -> i64 {
        a.as_i64()
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `n = 4p + α`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SizeSplit {
    pub n: u32,
    pub p: u32,
    pub alpha: Alpha,
}

impl SizeSplit {
    pub fn new(n: u32) -> SizeSplit {
        SizeSplit {
            n,
            p: n / 4,
            alpha: Alpha::of_order(n),
        }
    }

    pub fn from_parts(p: u32, alpha: Alpha) -> SizeSplit {
        SizeSplit {
            n: 4 * p + u32::from(alpha.get()),
            p,
            alpha,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Position {
    pub l: i64,
    pub m: i64,
}

impl Position {
    pub fn new(l: i64, m: i64) -> Position {
        Position { l, m }
    }

    /// The two cells covered by the horizontal domino at this position.
    pub fn cells(self) -> (Cell, Cell) {
        (Cell::new(self.l - 1, self.m), Cell::new(self.l, self.m))
    }

    /// Whether the domino's left cell is black in the order-`n` colouring.
    pub fn black_left(self, n: u32) -> bool {
        (self.l + self.m - i64::from(n) - 1).rem_euclid(2) == 0
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.l, self.m)
    }
}

/// A rational number in `[0, 1]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactProbability(BigRational);

impl ExactProbability {
    pub fn new(value: BigRational) -> Result<Self> {
        if value.is_negative() || value > BigRational::one() {
            return Err(Error::Invalid(format!("{value} is not a probability")));
        }
        Ok(ExactProbability(value))
    }

    pub fn zero() -> Self {
        ExactProbability(BigRational::zero())
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn into_inner(self) -> BigRational {
        self.0
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for ExactProbability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn parity_ok(l: i64, m: i64, n: i64) -> bool {
    (l + m - n + 1).rem_euclid(2) == 0
}

fn pow2(e: u32) -> BigInt {
    BigInt::one() << e
}

/// `Cr(l, m; n)`, from the product of two Kravchuk values of order `n − 1`.
pub fn creation_rate(l: i64, m: i64, n: u32) -> BigRational {
    if n == 0 {
        return BigRational::zero();
    }
    let big_n = i64::from(n) - 1;
    if (l + m - big_n).rem_euclid(2) != 0 || l.abs() + m.abs() > big_n {
        return BigRational::zero();
    }
    let a = (l + m + big_n) / 2;
    let b = (l - m + big_n) / 2;
    let prod = krav_eval(a, b, n - 1) * krav_eval(b, a, n - 1);
    BigRational::new(prod, pow2(n - 1))
}

/// `P(l, m; n)` by telescoping creation rates down to the empty diamond.
pub fn prob_numeric(l: i64, m: i64, n: u32) -> ExactProbability {
    let total = (0..n).fold(BigRational::zero(), |acc, k| {
        acc + creation_rate(l, m - i64::from(k), n - k)
    });
    ExactProbability::new(total / BigInt::from(2)).expect("telescoped sum is a probability")
}

/// Smallest `p ≥ 1` with `4p + α ≥ |l| + |m| + 2`, i.e. the domino sits
/// strictly inside the diamond. Symbolic formulas are asserted from here on.
pub fn p_min(l: i64, m: i64, alpha: Alpha) -> u32 {
    let need = l.abs() + m.abs() + 2 - alpha.as_i64();
    let p = if need <= 0 { 0 } else { (need + 3) / 4 };
    p.max(1) as u32
}

/// `C(2p−1, p)² / 2^(4p+α)`.
pub fn prefactor(p: u32, alpha: Alpha) -> BigRational {
    let c = binomial(2 * i64::from(p) - 1, i64::from(p));
    BigRational::new(&c * &c, pow2(4 * p + u32::from(alpha.get())))
}

/// `h` with `Cr(l, m; 4p+α) = 2^(1−4p−α) C(2p−1, p)² h(p)`, or `None` when the
/// parity rule forces the creation rate to vanish.
pub fn cr_symbolic(l: i64, m: i64, alpha: Alpha) -> Option<RationalFunction> {
    let al = alpha.as_i64();
    if (l + m - al + 1).rem_euclid(2) != 0 {
        return None;
    }
    let a = (l + m + al - 1) / 2;
    let b = (l - m + al - 1) / 2;
    // K(B, A) = sym·K(A, B); both factors come out as growth functions.
    let g_ab = growth_g(GrowthKey::new(a, b, alpha));
    let g_ba = growth_g(GrowthKey::new(b, a, alpha));
    Some(&g_ab * &g_ba)
}

/// `C(2p+2k−1, p+k) / C(2p−1, p)` as a rational function of `p`.
fn binomial_shift_ratio(k: i64) -> RationalFunction {
    &(&factorial_quotient(2, 2 * k - 1, -1) * &factorial_quotient(1, 0, k))
        * &factorial_quotient(1, -1, k - 1)
}

/// Re-expresses `2^(−n') C(2p'−1, p')² f(p')` with `n' = n + delta`,
/// `p' = p + k` in units of `2^(−n) C(2p−1, p)²`.
fn rescale(f: &RationalFunction, delta: i64, k: i64) -> RationalFunction {
    let ratio = binomial_shift_ratio(k).pow(2);
    let two = BigRational::from_integer(2.into());
    let power = if delta >= 0 {
        BigRational::one() / num_traits::pow(two, delta as usize)
    } else {
        num_traits::pow(two, (-delta) as usize)
    };
    (&ratio * &f.shift(k)).scale(&power)
}

/// The symbolic form of `P(l, m; 4p + α)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicPlacement {
    pub position: Position,
    pub alpha: Alpha,
    /// `None` exactly in the zero-by-parity case.
    pub f: Option<RationalFunction>,
}

impl SymbolicPlacement {
    /// `1/4 + 2^(−4p−α) C(2p−1, p)² f(p)`, or 0 for the parity-zero case.
    pub fn probability_at(&self, p: u32) -> Result<BigRational> {
        match &self.f {
            None => Ok(BigRational::zero()),
            Some(f) => {
                let quarter = BigRational::new(1.into(), 4.into());
                Ok(quarter + prefactor(p, self.alpha) * f.eval_int(i64::from(p))?)
            }
        }
    }

    pub fn p_min(&self) -> u32 {
        p_min(self.position.l, self.position.m, self.alpha)
    }
}

type FKey = (i64, i64, Alpha);
static F_CACHE: LazyLock<RwLock<HashMap<FKey, Option<RationalFunction>>>> =
    LazyLock::new(Default::default);

/// `f_{l,m,α}` from the recursive reduction to the origin.
pub fn f_symbolic(l: i64, m: i64, alpha: Alpha) -> SymbolicPlacement {
    SymbolicPlacement {
        position: Position::new(l, m),
        alpha,
        f: f_cached(l, m, alpha),
    }
}

fn f_cached(l: i64, m: i64, alpha: Alpha) -> Option<RationalFunction> {
    if let Some(hit) = F_CACHE.read().unwrap().get(&(l, m, alpha)) {
        return hit.clone();
    }
    let value = f_compute(l, m, alpha);
    F_CACHE
        .write()
        .unwrap()
        .insert((l, m, alpha), value.clone());
    value
}

fn f_required(l: i64, m: i64, alpha: Alpha) -> RationalFunction {
    f_cached(l, m, alpha).expect("parity is preserved by the reduction")
}

fn f_compute(l: i64, m: i64, alpha: Alpha) -> Option<RationalFunction> {
    let al = alpha.as_i64();
    if !parity_ok(l, m, al) {
        return None;
    }
    if l < 0 {
        return f_cached(-l, m, alpha);
    }
    if m > 0 {
        // P(l, m; n) = P(l, m−1; n−1) + Cr(l, m; n)/2
        let below = if al >= 1 {
            rescale(&f_required(l, m - 1, Alpha(alpha.0 - 1)), -1, 0)
        } else {
            rescale(&f_required(l, m - 1, Alpha(3)), -1, -1)
        };
        let cr = cr_symbolic(l, m, alpha).expect("same parity class");
        return Some(&below + &cr);
    }
    if m < 0 {
        // P(l, m; n) = P(l, m+1; n+1) − Cr(l, m+1; n+1)/2
        let (next, k) = if al <= 2 {
            (Alpha(alpha.0 + 1), 0)
        } else {
            (Alpha(0), 1)
        };
        let above = rescale(&f_required(l, m + 1, next), 1, k);
        let cr = rescale(
            &cr_symbolic(l, m + 1, next).expect("same parity class"),
            1,
            k,
        );
        return Some(&above - &cr);
    }
    Some(match l {
        0 if al == 1 => RationalFunction::constant(2),
        0 => RationalFunction::zero(),
        // 1 = 2 P(1, 0) + 2 P(0, −1)
        1 => -f_required(0, -1, alpha),
        // the four neighbours of a cell share its covering domino
        _ => {
            let west = f_required(l - 1, -1, alpha);
            let north = f_required(1, l - 1, alpha);
            let south = f_required(0, -l, alpha);
            -(&(&west + &north) + &south)
        }
    })
}

/// Maps the domino `{a, b}` to the position of an equivalent horizontal domino
/// with black left cell, using reflection and rotations of the diamond.
/// Only the parity of `n` matters.
pub fn canonical_position(a: Cell, b: Cell, n: u32) -> Result<Position> {
    if !a.is_adjacent(b) {
        return Err(Error::NotAdjacent(a.i, a.j, b.i, b.j));
    }
    let (mut a, mut b) = (a, b);
    if a.i == b.i {
        a = a.rotate90();
        b = b.rotate90();
    }
    let left = if a.i < b.i { a } else { b };
    if left.is_black(n) {
        return Ok(Position::new(left.i + 1, left.j));
    }
    let (a, b) = (a.rotate180(), b.rotate180());
    let left = if a.i < b.i { a } else { b };
    debug_assert!(left.is_black(n));
    Ok(Position::new(left.i + 1, left.j))
}

/// Probability that a uniform tiling of the order-`n` diamond contains the
/// domino `{a, b}` in any orientation.
pub fn prob_general(a: Cell, b: Cell, n: u32) -> Result<ExactProbability> {
    for c in [a, b] {
        if !c.in_diamond(n) {
            return Err(Error::OutsideDiamond(c.i, c.j, n));
        }
    }
    let pos = canonical_position(a, b, n)?;
    Ok(prob_numeric(pos.l, pos.m, n))
}

/// Limiting placement probability at normalised position `(x, y)`.
///
/// Outside the circle `x² + y² = 1/2` the value is 0 below `y = 1/2` and 1
/// above it; points on the circle take the outside branch.
pub fn asymptotic_prob(x: f64, y: f64) -> f64 {
    let r2 = x * x + y * y;
    if r2 >= 0.5 {
        if y < 0.5 {
            0.0
        } else {
            1.0
        }
    } else {
        0.5 + ((2.0 * y - 1.0) / (1.0 - 2.0 * r2).sqrt()).atan() / std::f64::consts::PI
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn al(v: i64) -> Alpha {
        Alpha::new(v).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn rf(s: &str) -> RationalFunction {
        s.parse().unwrap()
    }

    #[test]
    fn creation_rate_examples() {
        assert_eq!(creation_rate(0, -1, 2), q(1, 2));
        assert_eq!(creation_rate(0, 0, 3), q(0, 1));
        assert_eq!(creation_rate(0, 0, 2), q(0, 1));
        for p in 1..=5u32 {
            let c = binomial(2 * i64::from(p) - 1, i64::from(p));
            let scaled = creation_rate(0, 0, 4 * p + 1) * BigRational::from_integer(pow2(4 * p));
            assert_eq!(scaled, BigRational::from_integer(4 * &c * &c));
        }
    }

    #[test]
    fn numeric_examples() {
        assert_eq!(prob_numeric(0, 0, 1).value(), &q(1, 2));
        assert_eq!(prob_numeric(0, 0, 3).value(), &q(1, 4));
        assert_eq!(prob_numeric(0, 0, 5).value(), &q(5, 16));
        assert_eq!(prob_numeric(0, -1, 4).value(), &q(3, 16));
        assert_eq!(prob_numeric(2, 0, 4).value(), &q(0, 1));
        assert_eq!(prob_numeric(9, 0, 4).value(), &q(0, 1));
    }

    #[test]
    fn symbolic_creation_rate() {
        assert_eq!(
            cr_symbolic(0, 0, al(1)),
            Some(RationalFunction::constant(4))
        );
        assert_eq!(cr_symbolic(0, 0, al(0)), None);
        let h = cr_symbolic(1, 0, al(2)).unwrap();
        // Cr(1, 0; 6) · 2^5 / C(1, 1)^2 at p = 1
        let expected = creation_rate(1, 0, 6) * BigRational::from_integer(32.into());
        assert_eq!(h.eval_int(1).unwrap(), expected);
    }

    #[test]
    fn symbolic_examples() {
        assert_eq!(
            f_symbolic(0, 0, al(1)).f,
            Some(RationalFunction::constant(2))
        );
        assert_eq!(
            f_symbolic(0, -4, al(1)).f,
            Some(rf("-2*(5+6*p+3*p^2)/(1+p)^2"))
        );
        assert_eq!(f_symbolic(0, 0, al(0)).f, None);
        assert_eq!(f_symbolic(1, 0, al(0)).f, Some(RationalFunction::one()));
    }

    #[test]
    fn binomial_ratios() {
        assert_eq!(binomial_shift_ratio(-1), rf("p/(2*(2*p-1))"));
        assert_eq!(binomial_shift_ratio(1), rf("2*(2*p+1)/(p+1)"));
        assert_eq!(binomial_shift_ratio(0), RationalFunction::one());
        for p in 2..8i64 {
            for k in [-1i64, 1, 2] {
                let lhs =
                    BigRational::new(binomial(2 * (p + k) - 1, p + k), binomial(2 * p - 1, p));
                assert_eq!(binomial_shift_ratio(k).eval_int(p).unwrap(), lhs);
            }
        }
    }

    #[test]
    fn p_min_is_strictly_inside() {
        assert_eq!(p_min(0, 0, al(1)), 1);
        assert_eq!(p_min(7, 6, al(0)), 4);
        assert_eq!(p_min(0, -1, al(3)), 1);
    }

    #[test]
    fn general_examples() {
        let c = Cell::new;
        assert_eq!(
            prob_general(c(0, -1), c(0, 0), 6).unwrap().value(),
            &q(1, 4)
        );
        assert_eq!(
            prob_general(c(-1, 0), c(0, 0), 5).unwrap().value(),
            &q(5, 16)
        );
        assert_eq!(
            prob_general(c(-1, -1), c(0, -1), 5).unwrap().value(),
            &q(5, 16)
        );
        assert!(matches!(
            prob_general(c(0, 0), c(1, 1), 5),
            Err(Error::NotAdjacent(..))
        ));
        assert!(matches!(
            prob_general(c(4, 0), c(5, 0), 5),
            Err(Error::OutsideDiamond(..))
        ));
    }

    #[test]
    fn asymptotic_branches() {
        assert!((asymptotic_prob(0.0, 0.0) - 0.25).abs() < 1e-15);
        assert_eq!(asymptotic_prob(0.8, 0.0), 0.0);
        assert_eq!(asymptotic_prob(0.0, 0.8), 1.0);
    }

    #[test]
    fn alpha_rejects_out_of_range() {
        assert_eq!(Alpha::new(4), Err(Error::InvalidAlpha(4)));
        assert_eq!(SizeSplit::new(11).alpha, al(3));
        assert_eq!(SizeSplit::new(11).p, 2);
    }
}
