mod common;

use common::*;
use cwgame::{
    best_response_path, best_responses, is_nash, nash_equilibria, potential_argmax, profile_index,
    solve_potential, Game, PathRecord, DEFAULT_TOL,
};
use proptest::prelude::*;

fn check_steps(g: &Game, path: &PathRecord) {
    assert_eq!(path.states.len(), path.deviators.len() + 1);
    for (pair, &dev) in path.states.windows(2).zip(&path.deviators) {
        let (a, b) = (&pair[0], &pair[1]);
        let changed: Vec<usize> = (0..a.choices().len())
            .filter(|&j| a.choices()[j] != b.choices()[j])
            .map(|j| j + 1)
            .collect();
        assert_eq!(changed, vec![dev]);
        assert!(g.payoff(dev, b).unwrap() > g.payoff(dev, a).unwrap());
        assert!(best_responses(g, dev, a).unwrap().contains(&b.choices()[dev - 1]));
    }
}

#[test]
fn potential_games_converge_from_every_start() {
    let mut r = rng(31);
    for cards in [&[2, 2][..], &[2, 3], &[3, 3], &[2, 2, 2], &[3, 3, 3], &[9, 9], &[3, 3, 3, 3]] {
        let s = shape(cards);
        let bound = s.profile_count() * s.cards().iter().sum::<usize>();
        for _ in 0..3 {
            let w = random_weights(&mut r, &s);
            let (g, _) = potential_game(&mut r, &w);
            let found = solve_potential(&g, &w, DEFAULT_TOL).unwrap().expect("constructed potential game");
            let p = found.potential();
            let ne = nash_equilibria(&g);
            for q in potential_argmax(p, &s).unwrap() {
                assert!(ne.contains(&q), "{cards:?}: argmax {q} is not an equilibrium");
            }
            for start in s.profiles() {
                let path = best_response_path(&g, &start, bound).unwrap();
                assert!(path.terminated && !path.cycle_detected, "{cards:?} from {start}");
                assert!(is_nash(&g, path.last()).unwrap());
                check_steps(&g, &path);
                for pair in path.states.windows(2) {
                    let a = p[profile_index(&pair[0], &s).unwrap() - 1];
                    let b = p[profile_index(&pair[1], &s).unwrap() - 1];
                    assert!(b > a, "{cards:?}: potential must increase along the path");
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn paths_on_arbitrary_games_are_well_formed(seed in any::<u64>(), cards in prop::collection::vec(2usize..4, 1..4)) {
        let mut r = rng(seed);
        let s = shape(&cards);
        let g = random_game(&mut r, &s);
        let ne = nash_equilibria(&g);
        for start in s.profiles() {
            let path = best_response_path(&g, &start, 50).unwrap();
            check_steps(&g, &path);
            if path.terminated {
                prop_assert!(ne.contains(path.last()));
            }
            if path.cycle_detected {
                let last = path.last();
                prop_assert!(path.states[..path.states.len() - 1].contains(last));
            }
        }
    }
}
