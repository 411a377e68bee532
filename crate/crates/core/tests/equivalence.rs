use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rtmm_core::oracle::{embed_turn_based, minimax, EmbeddedEval, ExplicitTree};
use rtmm_core::toy::{ToyGame, ToyState};
use rtmm_core::{rrtmm, rtmm, rtmm_alphabeta, GameClock, Player, Score};

fn toy_eval(s: &ToyState) -> i64 {
    s.score
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn embedded_value_is_minimax_at_every_depth(seed in any::<u64>(), depth in 0u32..=5) {
        let t = ExplicitTree::random(seed, 4, 5);
        let m = embed_turn_based(t.clone());
        let eval = t.value_eval::<f64>();
        let want = minimax(&t, &eval, &0, depth, Player::Max);
        let got = rtmm(&m, &EmbeddedEval(&eval), &m.initial(0), GameClock(depth as u64)).unwrap();
        prop_assert_eq!(got.value, want);
    }

    #[test]
    fn alphabeta_is_exact_and_no_larger(seed in any::<u64>(), per_side in 1usize..=2, horizon in 1u64..=8) {
        let g = ToyGame::random(seed, per_side, 3, 4);
        let s = g.initial();
        let plain = rtmm(&g, &toy_eval, &s, GameClock(horizon)).unwrap();
        let ab = rtmm_alphabeta(&g, &toy_eval, &s, GameClock(horizon), i64::lowest(), i64::highest()).unwrap();
        prop_assert_eq!(ab.value, plain.value);
        prop_assert!(ab.stats.nodes <= plain.stats.nodes);
    }

    #[test]
    fn randomized_is_alphabeta_on_turn_based_games(
        seed in any::<u64>(),
        coin in any::<u64>(),
        p in 0.0f64..=1.0,
    ) {
        let t = ExplicitTree::random(seed, 4, 5);
        let m = embed_turn_based(t.clone());
        let eval = EmbeddedEval(t.value_eval::<f64>());
        let s = m.initial(0);
        let ab = rtmm_alphabeta(&m, &eval, &s, GameClock(5), f64::lowest(), f64::highest()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(coin);
        let r = rrtmm(&m, &eval, &s, GameClock(5), f64::lowest(), f64::highest(), &mut rng, p).unwrap();
        prop_assert_eq!(r.value, ab.value);
        prop_assert_eq!(r.best_index, ab.best_index);
        prop_assert_eq!(r.stats.nodes, ab.stats.nodes);
    }
}

#[test]
fn f32_and_f64_agree_on_small_integers() {
    for seed in 0..20 {
        let t = ExplicitTree::random(seed, 3, 4);
        let m = embed_turn_based(t.clone());
        let a = rtmm(
            &m,
            &EmbeddedEval(t.value_eval::<f32>()),
            &m.initial(0),
            GameClock(4),
        )
        .unwrap();
        let b = rtmm(
            &m,
            &EmbeddedEval(t.value_eval::<f64>()),
            &m.initial(0),
            GameClock(4),
        )
        .unwrap();
        assert_eq!(a.value as f64, b.value);
        assert_eq!(a.best_index, b.best_index);
    }
}
