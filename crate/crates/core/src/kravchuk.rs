//! Kravchuk polynomial values `K(a, b; n)` and the growth functions
//! `g_{a,b,α}(p)` with
//!
//! ```text
//! K(a + 2p, b + 2p; 4p + α − 1) = (−1)^p · C(2p−1, p) · g_{a,b,α}(p).
//! ```
//!
//! The growth functions are obtained from twelve base entries by the
//! three-term recurrence in `a` and the factorial symmetry that swaps `a`
//! and `b`.

use std::collections::HashMap;
use std::sync::{LazyLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::placement::Alpha;
use crate::ratfunc::RationalFunction;

/// Binomial coefficient with `C(x, k) = 0` for `k < 0`, `x < 0` or `k > x`.
pub fn binomial(x: i64, k: i64) -> BigInt {
    if k < 0 || x < 0 || k > x {
        return BigInt::zero();
    }
    let k = k.min(x - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= x - i;
        acc /= i + 1;
    }
    acc
}

/// `K(a, b; n)`: the coefficient of `z^a` in `(1+z)^(n−b) (1−z)^b`, computed
/// as the alternating sum `Σ_j (−1)^j C(b, j) C(n−b, a−j)`.
///
/// Returns 0 when `a` lies outside `0..=n`, and also when `b` does, since
/// the generating product is then not a polynomial.
pub fn krav_eval(a: i64, b: i64, n: u32) -> BigInt {
    let n = i64::from(n);
    if a < 0 || a > n || b < 0 || b > n {
        return BigInt::zero();
    }
    (0..=a).fold(BigInt::zero(), |acc, j| {
        let term = binomial(b, j) * binomial(n - b, a - j);
        if j % 2 == 0 {
            acc + term
        } else {
            acc - term
        }
    })
}

/// `K(a, b; n)` read off the expanded product `(1+z)^(n−b) (1−z)^b`.
///
/// An independent route to the same numbers as [`krav_eval`].
pub fn krav_by_expansion(a: i64, b: i64, n: u32) -> BigInt {
    let n = i64::from(n);
    if a < 0 || a > n || b < 0 || b > n {
        return BigInt::zero();
    }
    let mut coeffs = vec![BigInt::one()];
    let mut times = |sign: i64| {
        let mut next = vec![BigInt::zero(); coeffs.len() + 1];
        for (k, c) in coeffs.iter().enumerate() {
            next[k] += c;
            next[k + 1] += c * sign;
        }
        coeffs = next;
    };
    for _ in 0..(n - b) {
        times(1);
    }
    for _ in 0..b {
        times(-1);
    }
    coeffs[a as usize].clone()
}

/// `(c·p + d)! / (c·p + e)!` as a product or quotient of linear factors.
pub(crate) fn factorial_quotient(c: i64, d: i64, e: i64) -> RationalFunction {
    let mut acc = RationalFunction::one();
    if d >= e {
        for x in (e + 1)..=d {
            acc = &acc * &RationalFunction::linear(x, c);
        }
        acc
    } else {
        for x in (d + 1)..=e {
            acc = &acc * &RationalFunction::linear(x, c);
        }
        acc.recip().expect("product of linear factors is nonzero")
    }
}

/// The symmetry ratio `K(b+2p, a+2p; n) / K(a+2p, b+2p; n)` with `n = 4p+α−1`:
///
/// ```text
/// (a+2p)! (2p+α−1−a)!  /  ((b+2p)! (2p+α−1−b)!)
/// ```
pub fn krav_symmetry_factor(a: i64, b: i64, alpha: Alpha) -> RationalFunction {
    let al = alpha.as_i64();
    &factorial_quotient(2, a, b) * &factorial_quotient(2, al - 1 - a, al - 1 - b)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GrowthKey {
    pub a: i64,
    pub b: i64,
    pub alpha: Alpha,
}

impl GrowthKey {
    pub fn new(a: i64, b: i64, alpha: Alpha) -> Self {
        GrowthKey { a, b, alpha }
    }

    /// Smallest `p` at which the growth identity is asserted: `p ≥ 1` and both
    /// `a + 2p` and `b + 2p` lie in `0..=4p+α−1`.
    pub fn min_p(&self) -> i64 {
        let al = self.alpha.as_i64();
        let lower = |x: i64| (-x).div_euclid(2) + i64::from((-x).rem_euclid(2) != 0);
        let upper = |x: i64| {
            let t = x - al + 1;
            t.div_euclid(2) + i64::from(t.rem_euclid(2) != 0)
        };
        [
            1,
            lower(self.a),
            lower(self.b),
            upper(self.a),
            upper(self.b),
        ]
        .into_iter()
        .max()
        .unwrap()
    }
}

/// The twelve base entries for `(a, b) ∈ {(0,0), (1,0), (1,1)}`.
fn base_entry(a: i64, b: i64, alpha: Alpha) -> Option<RationalFunction> {
    let c = RationalFunction::constant;
    let entry = match (a, b, alpha.get()) {
        (0, 0, 0) => c(1),
        (0, 0, 1) | (0, 0, 2) => c(2),
        (0, 0, 3) => RationalFunction::constant(2)
            .checked_div(&RationalFunction::linear(1, 1))
            .unwrap(),
        (1, 0, 0) => c(-1),
        (1, 0, 1) => c(0),
        (1, 0, 2) => c(2),
        (1, 0, 3) => c(4),
        (1, 1, 0) => RationalFunction::linear(3, -2)
            .checked_div(&RationalFunction::linear(-1, 2))
            .unwrap(),
        (1, 1, 1) | (1, 1, 2) => c(-2),
        (1, 1, 3) => c(0),
        _ => return None,
    };
    Some(entry)
}

static GROWTH_CACHE: LazyLock<RwLock<HashMap<GrowthKey, RationalFunction>>> =
    LazyLock::new(Default::default);

/// `g_{a,b,α}(p)`.
///
/// The identity with `K` holds for every integer `p ≥ key.min_p()`.
pub fn growth_g(key: GrowthKey) -> RationalFunction {
    if let Some(hit) = GROWTH_CACHE.read().unwrap().get(&key) {
        return hit.clone();
    }
    let value = compute_growth(key);
    GROWTH_CACHE.write().unwrap().insert(key, value.clone());
    value
}

fn compute_growth(key: GrowthKey) -> RationalFunction {
    let GrowthKey { a, b, alpha } = key;
    if let Some(base) = base_entry(a, b, alpha) {
        return base;
    }
    let al = alpha.as_i64();
    let g = |a, b| growth_g(GrowthKey::new(a, b, alpha));
    if a >= 2 {
        // A·K(A) = (n − 2B)·K(A−1) − (n − A + 2)·K(A−2), A = a+2p, B = b+2p
        let c1 = RationalFunction::constant(al - 2 * b - 1);
        let c2 = RationalFunction::linear(al - a + 1, 2);
        let top = &(&c1 * &g(a - 1, b)) - &(&c2 * &g(a - 2, b));
        return top
            .checked_div(&RationalFunction::linear(a, 2))
            .expect("a + 2p is not the zero function");
    }
    if a < 0 {
        // (n − A)·K(A) = (n − 2B)·K(A+1) − (A+2)·K(A+2), A = a+2p
        let c1 = RationalFunction::constant(al - 2 * b - 1);
        let c2 = RationalFunction::linear(a + 2, 2);
        let top = &(&c1 * &g(a + 1, b)) - &(&c2 * &g(a + 2, b));
        return top
            .checked_div(&RationalFunction::linear(al - 1 - a, 2))
            .expect("n − A is not the zero function");
    }
    // a ∈ {0, 1}: obtain (a, b) from (b, a) by symmetry
    &krav_symmetry_factor(b, a, alpha) * &g(b, a)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn al(v: i64) -> Alpha {
        Alpha::new(v).unwrap()
    }

    fn rf(s: &str) -> RationalFunction {
        s.parse().unwrap()
    }

    #[test]
    fn krav_examples() {
        assert_eq!(krav_eval(0, 5, 9), BigInt::from(1));
        assert_eq!(krav_eval(2, 2, 3), BigInt::from(-1));
        assert_eq!(krav_eval(2, 2, 4), BigInt::from(-2));
        // (1+z)^2 (1−z) = 1 + z − z^2 − z^3
        assert_eq!(krav_eval(2, 1, 3), BigInt::from(-1));
        assert_eq!(krav_eval(-1, 0, 3), BigInt::zero());
        assert_eq!(krav_eval(4, 0, 3), BigInt::zero());
    }

    #[test]
    fn sum_matches_expansion() {
        for n in 0..=12u32 {
            for a in 0..=i64::from(n) {
                for b in 0..=i64::from(n) {
                    assert_eq!(
                        krav_eval(a, b, n),
                        krav_by_expansion(a, b, n),
                        "{a} {b} {n}"
                    );
                }
            }
        }
    }

    #[test]
    fn binomial_conventions() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(3, 4), BigInt::zero());
        assert_eq!(binomial(3, -1), BigInt::zero());
        assert_eq!(binomial(-1, 0), BigInt::zero());
    }

    #[test]
    fn symmetry_factor_examples() {
        assert_eq!(krav_symmetry_factor(3, 3, al(2)), RationalFunction::one());
        assert_eq!(krav_symmetry_factor(1, 0, al(0)), rf("(1+2*p)/(-1+2*p)"));
        assert_eq!(krav_symmetry_factor(0, -1, al(1)), rf("(2*p)/(1+2*p)"));
    }

    #[test]
    fn growth_examples() {
        assert_eq!(
            growth_g(GrowthKey::new(0, 0, al(1))),
            RationalFunction::constant(2)
        );
        assert_eq!(
            growth_g(GrowthKey::new(1, 1, al(0))),
            rf("(3-2*p)/(-1+2*p)")
        );
        assert_eq!(
            growth_g(GrowthKey::new(0, -1, al(0))),
            RationalFunction::one()
        );
        assert_eq!(
            growth_g(GrowthKey::new(0, 1, al(0))),
            rf("-(2*p+1)/(2*p-1)")
        );
    }

    #[test]
    fn min_p_bounds() {
        assert_eq!(GrowthKey::new(0, 0, al(0)).min_p(), 1);
        assert_eq!(GrowthKey::new(-5, 0, al(0)).min_p(), 3);
        // b + 2p ≤ 4p + α − 1  ⇔  p ≥ (b − α + 1)/2
        assert_eq!(GrowthKey::new(0, 6, al(0)).min_p(), 4);
        assert_eq!(GrowthKey::new(0, 6, al(3)).min_p(), 2);
    }
}
