# Copyright (c) 2026 The meanking developers
#
# Permission is hereby granted, free of charge, to any person obtaining a copy
# of this software and associated documentation files (the "Software"), to deal
# in the Software without restriction, including without limitation the rights
# to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
# copies of the Software, and to permit persons to whom the Software is
# furnished to do so, subject to the following conditions:
#
# The above copyright notice and this permission notice shall be included in
# all copies or substantial portions of the Software.
#
# THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
# IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
# FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
# AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
# LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
# OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN THE
# SOFTWARE.

"""The two published counterexamples to the conventional bound.

Both are pure input states with a measurement basis for which the optimal
decision function beats ``aravind_bound(d)``.
"""
import cmath
import math
import typing
from typing import Iterator, List, Tuple

import numpy as np

from .game import (
    DensityOperator,
    optimal_decision,
    success_probability,
)
from .linalg import Basis, Ket, MeanKingError
from .mub import MubFamily, d4_table, is_prime, mub_family
from .serialization import Strategy

SQRT2 = math.sqrt(2)
SQRT3 = math.sqrt(3)
SQRT6 = math.sqrt(6)

# The d=3 value is printed to four decimals. The printed closed form with
# 6*sqrt(6) exceeds 1; the one below matches the decimal.
D3_EXPECTED = 0.8212
D3_TOLERANCE = 5e-5
D4_EXPECTED = (6493 + 1065 * SQRT3) / 10240
D4_TOLERANCE = 1e-9

# Zero-overlap pairs (j, mu) as printed for d=3. They label bases 1..4 with
# the standard basis last and order vectors differently from mub_family(3).
D3_PRINTED_ZERO_OVERLAPS = ((2, 1), (1, 2), (1, 3), (1, 4))


class UnknownFixtureError(MeanKingError, ValueError):
    pass


class CounterexampleFixture(typing.NamedTuple):
    name: str
    d: int
    phi: Ket
    chi: Basis
    expected: float
    tolerance: float
    # (j, mu), 1-based j, 0-based mu, under the family returned by mubs().
    zero_overlaps: Tuple[Tuple[int, int], ...]

    def mubs(self) -> MubFamily:
        return d4_table() if self.d == 4 else mub_family(self.d)

    def state(self) -> DensityOperator:
        return DensityOperator.pure(self.phi)

    def evaluate(self, mubs: typing.Optional[MubFamily] = None) -> float:
        """``P_d(phi, chi, s_max)``."""
        family = self.mubs() if mubs is None else mubs
        rho = self.state()
        decision = optimal_decision(rho, self.chi, family)
        return success_probability(rho, self.chi, decision, family).total

    def to_strategy(self, with_decision: bool = False) -> Strategy:
        """Export as a :class:`meanking.serialization.Strategy`.

        The d=4 table is the built-in family, the d=3 family is the default
        Gauss-sum one, so both are written as ``"builtin"``.
        """
        rho = self.state()
        mubs = self.mubs()
        decision = optimal_decision(rho, self.chi, mubs) if with_decision \
            else None
        return Strategy(rho, self.chi, mubs, decision, builtin_mub=True)


def d3_closed_form() -> float:
    return (21 + 2 * SQRT2 + SQRT6) / 32


def counterexample_d3() -> CounterexampleFixture:
    phi = Ket([0, 1j / SQRT2, (3 + SQRT3 * 1j) / (2 * SQRT6)])
    # The third vector is printed under the label chi_2 a second time.
    chi = Basis([
        [1 / SQRT2, SQRT3 * 1j / (2 * SQRT2),
         -cmath.exp(3j * math.pi / 4) / (2 * SQRT2)],
        [1j / SQRT2, SQRT3 / (2 * SQRT2),
         -cmath.exp(1j * math.pi / 4) / (2 * SQRT2)],
        [0, cmath.exp(-1j * math.pi / 4) / 2, SQRT3 / 2],
    ])
    return CounterexampleFixture(
        "d3", 3, phi, chi, D3_EXPECTED, D3_TOLERANCE,
        ((1, 0), (2, 1), (2, 2), (2, 3)))


def counterexample_d4() -> CounterexampleFixture:
    phi = Ket(np.array([1, 0, -1, 0]) / SQRT2)
    chi = Basis([
        [SQRT3 * 1j / 2, (9 + 3 * SQRT3 * 1j) / 32, (-SQRT3 + 1j) / 32,
         (3 - 3 * SQRT3 * 1j) / 16],
        [(SQRT3 + 1j) / 4, (-9 * SQRT3 + 9j) / 32, -SQRT3 * 1j / 16,
         (3 * SQRT3 + 9j) / 16],
        [0, (5 - 5 * SQRT3 * 1j) / 16, (-3 * SQRT3 - 9j) / 16,
         (3 + SQRT3 * 1j) / 8],
        [0, (-3 + SQRT3 * 1j) / 8, -3j / 4, (-1 - SQRT3 * 1j) / 4],
    ])
    return CounterexampleFixture(
        "d4", 4, phi, chi, D4_EXPECTED, D4_TOLERANCE,
        ((2, 0), (4, 0), (1, 1), (2, 1), (2, 4), (3, 4)))


FIXTURES = {
    "d3": counterexample_d3,
    "d4": counterexample_d4,
}


def fixture(name: str) -> CounterexampleFixture:
    try:
        return FIXTURES[name]()
    except KeyError:
        raise UnknownFixtureError(
            f"Unknown fixture {name!r}, choose from {sorted(FIXTURES)}.") \
            from None


class ConventionMatch(typing.NamedTuple):
    label: str
    probability: float
    matches: bool


def convention_variants(d: int) -> Iterator[Tuple[str, MubFamily]]:
    """Relabelings of the default family that a printed example might assume."""
    default = d4_table() if d == 4 else mub_family(d)
    yield "default", default
    if d > 2 and d != 4 and is_prime(d):
        yield "conjugate", mub_family(d, conjugate=True)
    vectors = default.vectors
    yield "reversed-vectors", MubFamily(vectors[:, ::-1])
    yield "reversed-bases", MubFamily(
        np.concatenate([vectors[:1], vectors[:0:-1]]))


def match_convention(fx: CounterexampleFixture) -> List[ConventionMatch]:
    """Evaluate ``fx`` under every convention variant."""
    results = []
    for label, family in convention_variants(fx.d):
        probability = fx.evaluate(family)
        results.append(ConventionMatch(
            label, probability, abs(probability - fx.expected) <= fx.tolerance))
    return results
