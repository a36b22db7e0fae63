mod common;

use common::{random_instance, Oracle};
use distance_games::generate::{gen_complete_bipartite, gen_cycle, gen_path};
use distance_games::rules::apply_move;
use distance_games::solver::{best_move, outcome, wins_moving_first};
use distance_games::{BestMove, Graph, Outcome, Player, Position, Ruleset};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn oracle_outcome(g: &Graph, rs: &Ruleset, pos: &Position) -> Outcome {
    let oracle = Oracle::new(g, rs);
    let mut cells = pos.cells().to_vec();
    let l = oracle.wins(&mut cells, Player::Left);
    let r = oracle.wins(&mut cells, Player::Right);
    Outcome::from_first_player_wins(l, r)
}

#[test]
fn small_named_games_match_oracle() {
    let k2 = gen_path(2);
    let p3 = gen_path(3);
    let c4 = gen_cycle(4);
    for g in [&k2, &p3, &c4] {
        for rs in [Ruleset::snort(), Ruleset::col(), Ruleset::node_kayles()] {
            let e = Position::empty(g.vertex_count());
            assert_eq!(outcome(g, &rs, &e).unwrap(), oracle_outcome(g, &rs, &e), "{rs}");
        }
    }
    assert_eq!(oracle_outcome(&k2, &Ruleset::snort(), &Position::empty(2)), Outcome::FirstWins);
    assert_eq!(outcome(&k2, &Ruleset::snort(), &Position::empty(2)).unwrap(), Outcome::FirstWins);
    let col = oracle_outcome(&k2, &Ruleset::col(), &Position::empty(2));
    assert_eq!(outcome(&k2, &Ruleset::col(), &Position::empty(2)).unwrap(), col);
}

#[test]
fn bigraph_matches_oracle() {
    for (p, q) in [(1, 1), (1, 2), (2, 2), (2, 3), (3, 3)] {
        let (g, part) = gen_complete_bipartite(p, q);
        let rs = Ruleset::bigraph_node_kayles(part);
        let e = Position::empty(g.vertex_count());
        assert_eq!(outcome(&g, &rs, &e).unwrap(), oracle_outcome(&g, &rs, &e), "K{p},{q}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn memoized_matches_naive(seed in any::<u64>()) {
        let (g, rs, pos) = random_instance(&mut ChaCha8Rng::seed_from_u64(seed), 6, 3);
        prop_assert_eq!(outcome(&g, &rs, &pos).unwrap(), oracle_outcome(&g, &rs, &pos));
    }

    #[test]
    fn win_iff_some_move_reaches_a_loss(seed in any::<u64>()) {
        let (g, rs, pos) = random_instance(&mut ChaCha8Rng::seed_from_u64(seed), 6, 3);
        for p in Player::BOTH {
            let (wins, _) = wins_moving_first(&g, &rs, &pos, p).unwrap();
            let mut exists = false;
            for v in distance_games::rules::legal_moves(&g, &rs, &pos, p).unwrap() {
                let next = apply_move(&g, &rs, &pos, v, p).unwrap();
                if !wins_moving_first(&g, &rs, &next, p.opponent()).unwrap().0 {
                    exists = true;
                }
            }
            prop_assert_eq!(wins, exists);
        }
    }

    #[test]
    fn best_move_is_winning(seed in any::<u64>()) {
        let (g, rs, pos) = random_instance(&mut ChaCha8Rng::seed_from_u64(seed), 6, 3);
        for p in Player::BOTH {
            match best_move(&g, &rs, &pos, p).unwrap() {
                BestMove::Winning(v) => {
                    let next = apply_move(&g, &rs, &pos, v, p).unwrap();
                    prop_assert!(!wins_moving_first(&g, &rs, &next, p.opponent()).unwrap().0);
                }
                BestMove::NoWinningMove => {
                    prop_assert!(!wins_moving_first(&g, &rs, &pos, p).unwrap().0);
                    prop_assert!(!distance_games::rules::legal_moves(&g, &rs, &pos, p).unwrap().is_empty());
                }
                BestMove::NoMove => {
                    prop_assert!(distance_games::rules::legal_moves(&g, &rs, &pos, p).unwrap().is_empty());
                }
            }
        }
    }

    #[test]
    fn colour_swap_duality(seed in any::<u64>()) {
        let (g, rs, pos) = random_instance(&mut ChaCha8Rng::seed_from_u64(seed), 6, 3);
        let direct = outcome(&g, &rs, &pos).unwrap();
        let mirrored = outcome(&g, &rs.swapped(), &pos.swapped_colours()).unwrap();
        prop_assert_eq!(direct.swapped(), mirrored);
    }

    #[test]
    fn repeated_solves_agree(seed in any::<u64>()) {
        let (g, rs, pos) = random_instance(&mut ChaCha8Rng::seed_from_u64(seed), 6, 3);
        let a = wins_moving_first(&g, &rs, &pos, Player::Left).unwrap();
        let b = wins_moving_first(&g, &rs, &pos, Player::Left).unwrap();
        prop_assert_eq!(a, b);
    }
}
