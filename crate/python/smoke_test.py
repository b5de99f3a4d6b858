"""Smoke test for the pycwgame extension module.

Build and install first, e.g.
    maturin develop --release -m crates/python/Cargo.toml
then run
    python python/smoke_test.py
"""

import math
import pathlib

import pycwgame

PAYOFFS = [[-1, 2, 0, 3], [3, 3, 5, 4]]
ROOT = pathlib.Path(__file__).resolve().parent.parent


def close(a, b, tol=1e-9):
    return len(a) == len(b) and all(abs(x - y) <= tol for x, y in zip(a, b))


def main():
    game = pycwgame.Game([2, 2], PAYOFFS)
    assert game.players == 2 and game.cardinalities == [2, 2]
    assert game.payoff(1, [2, 1]) == 0.0

    w1 = pycwgame.CosetWeights([2, 2], [[1, 2], [3, 2]])
    check = pycwgame.check_potential(game, w1, recenter=True)
    assert check.solvable
    assert close(check.potential, [0.0, 0.0, 1.0, 0.5]), check.potential
    assert pycwgame.verify_potential(game, w1, check.potential)

    plain = pycwgame.check_potential(game, pycwgame.CosetWeights.uniform([2, 2]))
    assert not plain.solvable and plain.residual > 1e-4 and plain.potential is None

    w2 = pycwgame.CosetWeights([2, 2], [[1, 2], [4, 2]])
    d = pycwgame.decompose(game, w2)
    assert close(d.x_pure_potential, [-0.5, -0.5, 0.5])
    assert close(d.x_nonstrategic, [-0.5, 2.5, 3, 4.5])
    assert close(d.potential, [-1, 2, 0, 3, 3, 3, 5, 4])
    assert max(abs(x) for x in d.pure_harmonic) <= 1e-9
    assert d.reconstruction_error <= 1e-8 and math.isfinite(d.condition_number)
    m = pycwgame.membership(game, w2)
    assert m.potential and not m.pure_harmonic and m.disagreements == []

    assert pycwgame.nash_equilibria(game) == [[2, 1]]
    path = pycwgame.best_response_path(game, [1, 1])
    assert path.states == [[1, 1], [2, 1]] and path.deviators == [1] and path.terminated
    pennies = pycwgame.Game([2, 2], [[1, -1, -1, 1], [-1, 1, 1, -1]])
    assert pycwgame.best_response_path(pennies, [1, 1]).cycle_detected
    assert pycwgame.potential_argmax(game, check.potential) == [[2, 1]]

    c = pycwgame.classify(game)
    assert not c.exact and c.method == "closed-form 2x2"

    g2, w = pycwgame.Game.from_json((ROOT / "games" / "weighted_2x2.json").read_text())
    assert w is not None and pycwgame.check_potential(g2, w).solvable
    again, _ = pycwgame.Game.from_json(g2.to_json(w))
    assert again.payoffs == g2.payoffs

    try:
        pycwgame.CosetWeights([2, 2], [[1, 2], [-3, 2]])
    except ValueError as e:
        assert "weights" in str(e)
    else:
        raise AssertionError("negative weight accepted")

    print("pycwgame smoke test: ok")


if __name__ == "__main__":
    main()
