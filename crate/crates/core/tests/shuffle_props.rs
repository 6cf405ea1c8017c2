use aztec::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn every_step_is_a_tiling(seed in any::<u64>()) {
        let mut coins = CoinSource::new(seed);
        let mut state = ShuffleState::empty();
        for _ in 0..10 {
            state = shuffle_step(&state, &mut coins).unwrap();
            state.tiling().validate(&Region::full(state.order())).unwrap();
        }
    }

    #[test]
    fn same_seed_same_tiling(seed in any::<u64>(), n in 0u32..=12) {
        prop_assert_eq!(sample(n, &mut CoinSource::new(seed)), sample(n, &mut CoinSource::new(seed)));
    }

    #[test]
    fn tiling_json_round_trips(seed in any::<u64>(), n in 0u32..=8) {
        let t = sample(n, &mut CoinSource::new(seed));
        prop_assert_eq!(Tiling::from_json(&t.to_json()).unwrap(), t);
    }
}

#[test]
fn small_orders_are_uniform() {
    for (n, samples) in [(2u32, 8_000u64), (3, 64_000)] {
        aztec::verify::uniformity(n, samples, 77).unwrap();
    }
}

#[test]
fn estimates_are_reproducible() {
    let a = Cell::new(0, 0);
    let b = Cell::new(1, 0);
    let x = mc_estimate(6, a, b, 2_000, 5).unwrap();
    let y = mc_estimate(6, a, b, 2_000, 5).unwrap();
    assert_eq!(x, y);
}
