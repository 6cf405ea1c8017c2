use aztec::region::diamond_cells;
use aztec::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

proptest! {
    #[test]
    fn telescoping(l in -6i64..=6, m in -6i64..=6, n in 2u32..=12) {
        let lhs = prob_numeric(l, m, n).into_inner() - prob_numeric(l, m - 1, n - 1).into_inner();
        prop_assert_eq!(lhs, creation_rate(l, m, n) / BigInt::from(2));
    }

    #[test]
    fn mirror(l in -6i64..=6, m in -6i64..=6, n in 1u32..=12) {
        prop_assert_eq!(prob_numeric(l, m, n), prob_numeric(-l, m, n));
    }

    #[test]
    fn white_left_is_zero(l in -6i64..=6, m in -6i64..=6, n in 1u32..=12) {
        prop_assume!((l + m - i64::from(n)).rem_euclid(2) == 0);
        prop_assert!(prob_numeric(l, m, n).value().is_zero());
    }

    #[test]
    fn symbolic_matches_numeric(l in -5i64..=5, m in -5i64..=5, alpha in 0i64..4, p in 2u32..=6) {
        let alpha = Alpha::new(alpha).unwrap();
        let n = 4 * p + u32::from(alpha.get());
        prop_assume!(i64::from(n) >= l.abs() + m.abs() + 2);
        let sym = f_symbolic(l, m, alpha);
        prop_assert_eq!(sym.probability_at(p).unwrap(), prob_numeric(l, m, n).into_inner());
    }

    #[test]
    fn the_four_covers_of_a_cell_partition(n in 1u32..=8, k in 0usize..1000) {
        let cells = diamond_cells(n);
        let c = cells[k % cells.len()];
        let mut total = BigRational::zero();
        for (di, dj) in [(1, 0), (-1, 0), (0, 1), (0, -1)] {
            let o = c.offset(di, dj);
            if o.in_diamond(n) {
                total += prob_general(c, o, n).unwrap().into_inner();
            }
        }
        prop_assert!(total.is_one());
    }

    #[test]
    fn canonical_position_is_black_left(n in 1u32..=9, k in 0usize..1000, vertical in any::<bool>()) {
        let cells = diamond_cells(n);
        let c = cells[k % cells.len()];
        let o = if vertical { c.offset(0, 1) } else { c.offset(1, 0) };
        prop_assume!(o.in_diamond(n));
        let pos = placement::canonical_position(c, o, n).unwrap();
        prop_assert!(pos.black_left(n));
    }
}

#[test]
fn origin_approaches_a_quarter() {
    for alpha in [1u32, 3] {
        let gap = |p: u32| {
            let d = prob_numeric(0, 0, 4 * p + alpha).into_inner()
                - BigRational::new(1.into(), 4.into());
            if d < BigRational::zero() {
                -d
            } else {
                d
            }
        };
        for p in 4..=8 {
            assert!(gap(p) <= gap(p - 1), "alpha = {alpha}, p = {p}");
        }
    }
}
