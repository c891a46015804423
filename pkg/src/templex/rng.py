"""Deterministic counter-based randomness.

Every random decision in this package is a pure function of (seed, index):
there is no generator state to advance, so results are independent of
evaluation order, platform, and thread count. The mixer is the splitmix64
finaliser, which passes the usual avalanche tests and is cheap in pure
Python.

WARNING: the constants below are part of the reproducibility contract.
Changing any of them silently changes every seeded artifact (sparsified
hypergraphs, sampled templates, transference instances). Snapshot tests
pin them down.
"""

from __future__ import annotations

from fractions import Fraction

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_INDEX_SALT = 0xD6E8FEB86659FD93


def _mix(x: int) -> int:
    x &= _MASK64
    x ^= x >> 30
    x = (x * 0xBF58476D1CE4E5B9) & _MASK64
    x ^= x >> 27
    x = (x * 0x94D049BB133111EB) & _MASK64
    x ^= x >> 31
    return x


def uniform64(seed: int, index: int) -> int:
    """The 64-bit word assigned to counter position `index` under `seed`."""
    x = _mix((seed & _MASK64) ^ _GAMMA)
    return _mix(x ^ ((index & _MASK64) * _INDEX_SALT & _MASK64))


def bernoulli(seed: int, index: int, probability: Fraction) -> bool:
    """Seeded coin flip, exact up to the 2^-64 grid.

    True iff uniform64(seed, index) < probability * 2^64, compared in
    exact integer arithmetic (no float round-off for rational p).
    """
    num, den = probability.numerator, probability.denominator
    if num <= 0:
        return False
    if num >= den:
        return True
    return uniform64(seed, index) * den < num << 64


def uniform_below(seed: int, index: int, bound: int) -> int:
    """Integer in [0, bound) from the (seed, index) word, by rejection.

    Rejection steps re-mix with an offset salt so the result stays a pure
    function of the arguments.
    """
    if bound <= 0:
        raise ValueError("bound must be positive")
    limit = (1 << 64) - ((1 << 64) % bound)
    x = uniform64(seed, index)
    hop = 0
    while x >= limit:
        hop += 1
        x = _mix(x ^ (hop * _GAMMA))
    return x % bound
