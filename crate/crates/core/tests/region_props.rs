use aztec::region::{count_tilings_capped, diamond_cells};
use aztec::*;
use num_traits::Zero;
use proptest::prelude::*;

fn region(max_n: u32) -> impl Strategy<Value = Region> {
    (1..=max_n).prop_flat_map(|n| {
        let cells = diamond_cells(n);
        let len = cells.len();
        prop::collection::btree_set(0..len, 0..4)
            .prop_map(move |idx| Region::new(n, idx.into_iter().map(|k| cells[k])).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn count_is_symmetric(r in region(6)) {
        let base = count_tilings(&r).unwrap();
        prop_assert_eq!(count_tilings(&r.map(Cell::reflect)).unwrap(), base.clone());
        prop_assert_eq!(count_tilings(&r.map(Cell::rotate90)).unwrap(), base.clone());
        prop_assert_eq!(count_tilings(&r.map(Cell::rotate180)).unwrap(), base);
    }

    #[test]
    fn unbalanced_regions_have_no_tilings(r in region(6)) {
        prop_assume!(r.balance() != 0);
        prop_assert!(count_tilings(&r).unwrap().is_zero());
    }

    #[test]
    fn enumeration_agrees_with_count(r in region(4)) {
        let listed = enumerate_tilings(&r, 1 << 12).unwrap();
        prop_assert_eq!(num_bigint::BigUint::from(listed.len()), count_tilings(&r).unwrap());
        for t in &listed {
            t.validate(&r).unwrap();
        }
    }

    #[test]
    fn kuo_holds(r in region(6), k in 0usize..1000) {
        let n = r.order();
        let cells = diamond_cells(n);
        let base = cells[k % cells.len()];
        let block = [base.offset(0, 1), base.offset(1, 1), base.offset(1, 0), base];
        prop_assume!(block.iter().all(|&c| r.contains(c)));
        prop_assert!(kuo_check(&r, block[0], block[1], block[2], block[3]).unwrap());
    }

    #[test]
    fn region_json_round_trips(r in region(6)) {
        prop_assert_eq!(Region::from_json(&r.to_json()).unwrap(), r);
    }
}

#[test]
fn oracle_respects_its_cap() {
    assert!(matches!(
        count_tilings_capped(&Region::full(5), 4),
        Err(Error::OracleTooLarge { .. })
    ));
    assert!(count_tilings_capped(&Region::full(4), 4).is_ok());
}
