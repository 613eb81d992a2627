"""Exact Nash and subgame-perfect equilibrium checking."""

from fractions import Fraction

from . import _eqcheck
from ._eqcheck import Game, ParseError, Transducer, atm_accepts, bit_bound

__all__ = [
    "Game",
    "ParseError",
    "Transducer",
    "atm_accepts",
    "bit_bound",
    "best_response",
    "compile_atm",
    "load",
    "payoff",
    "random_instance",
    "verify_nash",
    "verify_spe",
]


def _frac(text):
    num, den = text.split("/")
    return Fraction(int(num), int(den))


def _verdict(raw):
    for w in raw["witnesses"]:
        w["payoff"] = _frac(w["payoff"])
        w["deviation"] = _frac(w["deviation"])
    return raw


def load(game_text, *transducer_texts):
    """Parse a game and its transducers; the profile is ordered by agent."""
    game = Game.parse(game_text)
    profile = sorted((Transducer.parse(t, game) for t in transducer_texts), key=lambda t: t.agent)
    return game, profile


def payoff(game, profile, agent):
    return _frac(_eqcheck.payoff(game, profile, agent))


def best_response(game, profile, agent):
    return _frac(_eqcheck.oracle_best_response(game, profile, agent))


def verify_nash(game, profile, cap=10_000_000):
    return _verdict(_eqcheck.verify_nash(game, profile, cap))


def verify_spe(game, profile, cap=10_000_000):
    return _verdict(_eqcheck.verify_spe(game, profile, cap))


def random_instance(seed):
    return _eqcheck.random_instance(seed)


def compile_atm(text, cells, horizon=None):
    return _eqcheck.compile_atm(text, cells, None if horizon is None else str(horizon))
