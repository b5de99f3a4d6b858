mod common;

use common::*;
use cwgame::decomposition::{
    pure_potential_residual, subspace_dimensions, weighted_harmonic_residuals, coset_sum_residual,
};
use cwgame::linalg::rank;
use cwgame::{
    assemble_basis, basis_nonstrategic, basis_potential_span, basis_pure_harmonic, basis_pure_potential,
    solve_potential, CosetWeights, Game, GameShape, Matrix, DEFAULT_TOL,
};

const SUITE: [&[usize]; 5] = [&[2, 2], &[2, 3], &[3, 3], &[2, 2, 2], &[2, 3, 4]];

fn all_shapes_up_to(max_k: usize) -> Vec<GameShape> {
    fn extend(prefix: &mut Vec<usize>, k: usize, max_k: usize, out: &mut Vec<GameShape>) {
        if !prefix.is_empty() {
            out.push(GameShape::new(prefix.clone()).unwrap());
        }
        for c in 2..=max_k / k {
            prefix.push(c);
            extend(prefix, k * c, max_k, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), 1, max_k, &mut out);
    out
}

#[test]
fn bases_are_mutually_orthogonal_for_every_small_shape() {
    let shapes = all_shapes_up_to(81);
    assert!(shapes.len() > 100);
    let mut r = rng(21);
    for s in &shapes {
        let w = random_weights(&mut r, s);
        let (full, reduced) = basis_pure_potential(&w);
        let n = basis_nonstrategic(s);
        let h = basis_pure_harmonic(&w).unwrap();
        let (d1, d2, d3) = subspace_dimensions(s);
        assert_eq!((reduced.cols(), n.cols(), h.cols()), (d1, d2, d3), "{s}");
        assert_eq!(d1 + d2 + d3, s.players() * s.profile_count());
        assert!((&full.transpose() * &n).max_abs() <= 1e-10, "{s}");
        if h.cols() > 0 {
            assert!((&reduced.transpose() * &h).max_abs() <= 1e-10, "{s}");
            assert!((&n.transpose() * &h).max_abs() <= 1e-10, "{s}");
        }
    }
}

#[test]
fn potential_span_matches_basis_span() {
    let mut r = rng(22);
    for cards in SUITE.iter().copied().chain([&[3][..], &[2, 2, 3]]) {
        let s = shape(cards);
        let w = random_weights(&mut r, &s);
        let (full, _) = basis_pure_potential(&w);
        let pn = Matrix::hstack(&[&full, &basis_nonstrategic(&s)]).unwrap();
        let e = basis_potential_span(&w);
        let expected = s.profile_count() + s.total_coset_count() - 1;
        assert_eq!(rank(&e), expected, "{cards:?}");
        assert!(same_span(&pn, &e), "{cards:?}");
        assert_eq!(e.cols(), s.profile_count() + s.total_coset_count());
    }
    // single player: [Λ_1, Λ_1 E_1] has rank k
    let s = shape(&[4]);
    let w = random_weights(&mut r, &s);
    assert_eq!(rank(&basis_potential_span(&w)), 4);
}

#[test]
fn reconstruction_and_idempotence() {
    let mut r = rng(23);
    for cards in SUITE {
        let s = shape(cards);
        let w = random_weights(&mut r, &s);
        let basis = assemble_basis(&w).unwrap();
        for _ in 0..100 {
            let g = random_game(&mut r, &s);
            let d = basis.decompose(&g).unwrap();
            assert!(d.reconstruction_error() <= 1e-8, "{cards:?}");
            let pot = d.potential();
            let har = d.harmonic();
            let sum: Vec<f64> = d
                .pure_potential()
                .iter()
                .zip(d.nonstrategic())
                .zip(d.pure_harmonic())
                .map(|((a, b), c)| a + b + c)
                .collect();
            assert!(max_abs_diff(&sum, &g.structure_vector()) <= 1e-8);
            assert!(max_abs_diff(&pot, &sum.iter().zip(d.pure_harmonic()).map(|(a, b)| a - b).collect::<Vec<_>>()) <= 1e-12);
            assert!(max_abs_diff(&har, &sum.iter().zip(d.pure_potential()).map(|(a, b)| a - b).collect::<Vec<_>>()) <= 1e-12);
            for (part, keep) in [(d.pure_potential(), 0), (d.nonstrategic(), 1), (d.pure_harmonic(), 2)] {
                let again = basis.decompose(&Game::from_structure_vector(s.clone(), part).unwrap()).unwrap();
                let blocks = [&again.x_pure_potential, &again.x_nonstrategic, &again.x_pure_harmonic];
                for (b, block) in blocks.iter().enumerate() {
                    if b != keep {
                        assert!(max_abs(block) <= 1e-8, "{cards:?} part {keep} leaks into {b}");
                    }
                }
                let projected = [again.pure_potential(), again.nonstrategic(), again.pure_harmonic()][keep];
                assert!(max_abs_diff(projected, part) <= 1e-8);
            }
        }
    }
}

#[test]
fn harmonic_coordinates_vanish_exactly_on_potential_games() {
    let mut r = rng(24);
    for cards in [&[2, 2][..], &[2, 3], &[3, 3], &[2, 2, 2]] {
        let s = shape(cards);
        for trial in 0..200 {
            let w = random_weights(&mut r, &s);
            let g = if trial % 2 == 0 { potential_game(&mut r, &w).0 } else { random_game(&mut r, &s) };
            let basis = assemble_basis(&w).unwrap();
            let d = basis.decompose(&g).unwrap();
            let scale = max_abs(&g.structure_vector()).max(1.0);
            let harmonic_zero = max_abs(d.pure_harmonic()) <= 1e-8 * scale;
            let solved = solve_potential(&g, &w, DEFAULT_TOL).unwrap().is_some();
            assert_eq!(harmonic_zero, solved, "{cards:?} trial {trial}");
            assert_eq!(solved, trial % 2 == 0, "{cards:?} trial {trial}");
        }
    }
}

#[test]
fn basis_generated_games_satisfy_the_characterizations() {
    let mut r = rng(25);
    for cards in SUITE {
        let s = shape(cards);
        let w = random_weights(&mut r, &s);
        let (full, _) = basis_pure_potential(&w);
        let h = basis_pure_harmonic(&w).unwrap();
        for _ in 0..20 {
            let gamma = random_vec(&mut r, s.profile_count(), -3.0, 3.0);
            let g = Game::from_structure_vector(s.clone(), &full.mul_vec(&gamma)).unwrap();
            assert!(pure_potential_residual(&g, &w, &gamma).unwrap() <= 1e-8);
            assert!(coset_sum_residual(&g) <= 1e-8);
            let y = random_vec(&mut r, h.cols(), -3.0, 3.0);
            let g = Game::from_structure_vector(s.clone(), &h.mul_vec(&y)).unwrap();
            let (e34, e35) = weighted_harmonic_residuals(&g, &w).unwrap();
            assert!(e34 <= 1e-8 && e35 <= 1e-8, "{cards:?}: {e34} {e35}");
        }
    }
}

#[test]
fn uniform_weights_reproduce_the_unweighted_decomposition() {
    for cards in SUITE {
        let s = shape(cards);
        let basis = assemble_basis(&CosetWeights::uniform(&s)).unwrap();
        let u = unweighted_subspaces(&s);
        assert!(same_span(basis.b_pure_potential(), &u.pure_potential), "{cards:?}");
        assert!(same_span(basis.b_nonstrategic(), &u.nonstrategic), "{cards:?}");
        assert!(same_span(basis.b_pure_harmonic(), &u.pure_harmonic), "{cards:?}");
    }
}

#[test]
fn basis_can_be_shared_across_threads() {
    let s = shape(&[2, 3]);
    let mut r = rng(26);
    let w = random_weights(&mut r, &s);
    let basis = assemble_basis(&w).unwrap();
    let games: Vec<Game> = (0..8).map(|_| random_game(&mut r, &s)).collect();
    let serial: Vec<_> = games.iter().map(|g| basis.decompose(g).unwrap()).collect();
    let parallel: Vec<_> = std::thread::scope(|scope| {
        let handles: Vec<_> = games.iter().map(|g| scope.spawn(|| basis.decompose(g).unwrap())).collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    assert_eq!(serial, parallel);
}

#[test]
fn example_weights_give_well_conditioned_bases() {
    let s = shape(&[2, 2]);
    let w = CosetWeights::new(s, vec![vec![1.0, 2.0], vec![4.0, 2.0]]).unwrap();
    let b = assemble_basis(&w).unwrap();
    assert!(!b.is_ill_conditioned());
    assert_eq!(b.assembled().shape(), (8, 8));
    let extreme = CosetWeights::new(shape(&[2, 2]), vec![vec![1e-6, 1.0], vec![1e6, 1e-6]]).unwrap();
    let b = assemble_basis(&extreme).unwrap();
    assert!(b.is_ill_conditioned(), "{}", b.condition_number());
}
