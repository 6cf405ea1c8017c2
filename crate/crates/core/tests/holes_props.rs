use aztec::region::count_tilings;
use aztec::*;
use num_bigint::BigUint;
use num_rational::BigRational;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closed_form_matches_oracle(n in 1u32..=8, l in -8i64..=8, m in -8i64..=8) {
        let Ok(spec) = HoleSpec::new(l, m, n) else { return Ok(()); };
        let oracle = count_tilings(&Region::full(n).without(spec.cells()).unwrap()).unwrap();
        prop_assert_eq!(hole_count(&spec).unwrap(), oracle);
    }

    #[test]
    fn symbolic_matches_exact(l in -2i64..=2, m in -2i64..=2, alpha in 0i64..4, p in 1u32..=3) {
        let alpha = Alpha::new(alpha).unwrap();
        let Ok(sym) = hole_symbolic(l, m, alpha) else { return Ok(()); };
        prop_assume!(p >= sym.p_min());
        let spec = HoleSpec::new(l, m, 4 * p + u32::from(alpha.get())).unwrap();
        let exact: BigUint = hole_count(&spec).unwrap();
        prop_assert_eq!(sym.count_at(p).unwrap(), BigRational::from_integer(exact.into()));
    }
}

#[test]
fn central_holes_match_ciucu() {
    for n in [2u32, 3, 6, 7] {
        let spec = HoleSpec::new(0, 0, n).unwrap();
        assert_eq!(
            hole_count(&spec).unwrap(),
            ciucu_count(n).unwrap(),
            "n = {n}"
        );
    }
}
