import os
from fractions import Fraction
from pathlib import Path

import pytest

import eqcheck

FIXTURES = Path(os.environ.get("EQCHECK_FIXTURES", Path(__file__).resolve().parents[1] / "fixtures"))


def load(game, *transducers):
    return eqcheck.load((FIXTURES / game).read_text(), *((FIXTURES / t).read_text() for t in transducers))


def test_coin_payoffs():
    game, profile = load("coin.game", "coin_a.tr")
    assert eqcheck.payoff(game, profile, 1) == Fraction(3, 4)
    assert eqcheck.verify_nash(game, profile)["kind"] == "NE_YES"


def test_coin_deviation():
    game, profile = load("coin.game", "coin_b.tr")
    verdict = eqcheck.verify_nash(game, profile)
    assert verdict["kind"] == "NE_NO"
    assert verdict["witnesses"][0]["deviation"] == Fraction(3, 4)
    assert verdict["report"] == "VERDICT NOT_NE agent=1 payoff=1/4 best=3/4\n"


def test_spe_witness():
    game, profile = load("detour.game", "detour.tr")
    verdict = eqcheck.verify_spe(game, profile)
    assert verdict["kind"] == "SPE_NO"
    assert verdict["witnesses"][0]["history"] == ["v0", "y"]
    assert verdict["witnesses"][0]["action"] == "win"


def test_round_trip_and_errors():
    text = (FIXTURES / "coin.game").read_text()
    game = eqcheck.Game.parse(text)
    assert eqcheck.Game.parse(game.serialize()).serialize() == game.serialize()
    with pytest.raises(eqcheck.ParseError):
        eqcheck.Game.parse(text.replace("g:3", "g:9"))


def test_random_instances_match_oracle():
    for seed in range(1, 11):
        game, profile = eqcheck.random_instance(seed)
        for agent in range(1, game.num_agents + 1):
            assert eqcheck.payoff(game, profile, agent) == Fraction(
                *map(int, eqcheck._eqcheck.oracle_payoff(game, profile, agent).split("/"))
            )


def test_reduction():
    accept = (FIXTURES / "accept.atm").read_text()
    reject = (FIXTURES / "reject.atm").read_text()
    assert eqcheck.atm_accepts(accept, 1)
    game, profile = eqcheck.compile_atm(accept, 1, horizon=8)
    assert eqcheck.verify_nash(game, profile)["kind"] == "NE_NO"
    game, profile = eqcheck.compile_atm(reject, 1, horizon=8)
    assert eqcheck.verify_nash(game, profile)["kind"] == "NE_YES"


def test_bad_arguments_raise():
    game, profile = load("coin.game", "coin_b.tr")
    with pytest.raises(IndexError):
        eqcheck.payoff(game, profile, 0)
    with pytest.raises(IndexError):
        eqcheck.payoff(game, profile, 2)
    with pytest.raises(ValueError):
        eqcheck.verify_nash(game, [])
