use aztec::kravchuk::{binomial, krav_by_expansion};
use aztec::{growth_g, krav_eval, Alpha, GrowthKey};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn factorial(x: i64) -> BigInt {
    (1..=x).product()
}

proptest! {
    #[test]
    fn sum_equals_expansion(n in 0u32..=16, a in 0i64..=16, b in 0i64..=16) {
        prop_assume!(a <= i64::from(n) && b <= i64::from(n));
        prop_assert_eq!(krav_eval(a, b, n), krav_by_expansion(a, b, n));
    }

    #[test]
    fn factorial_symmetry(n in 0u32..=16, a in 0i64..=16, b in 0i64..=16) {
        let nn = i64::from(n);
        prop_assume!(a <= nn && b <= nn);
        prop_assert_eq!(
            factorial(b) * factorial(nn - b) * krav_eval(b, a, n),
            factorial(a) * factorial(nn - a) * krav_eval(a, b, n)
        );
    }

    #[test]
    fn growth_identity(a in -6i64..=6, b in -6i64..=6, alpha in 0i64..4, p in 2i64..=8) {
        let key = GrowthKey::new(a, b, Alpha::new(alpha).unwrap());
        prop_assume!(p >= key.min_p());
        let n = (4 * p + alpha - 1) as u32;
        let lhs = BigRational::from_integer(krav_eval(a + 2 * p, b + 2 * p, n));
        let sign = if p % 2 == 0 { 1 } else { -1 };
        let rhs = BigRational::from_integer(binomial(2 * p - 1, p) * sign)
            * growth_g(key).eval_int(p).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn outside_the_domain_the_growth_form_is_not_kravchuk() {
    // b + 2p exceeds the order, so K is 0 while g keeps its polynomial value
    let key = GrowthKey::new(0, 6, Alpha::new(0).unwrap());
    assert_eq!(key.min_p(), 4);
    assert_eq!(krav_eval(4, 10, 7), BigInt::from(0));
    assert_ne!(
        growth_g(key).eval_int(2).unwrap(),
        BigRational::from_integer(0.into())
    );
}
