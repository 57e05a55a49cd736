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

import cmath
import math

from meanking.fixtures import (
    D3_PRINTED_ZERO_OVERLAPS,
    FIXTURES,
    UnknownFixtureError,
    convention_variants,
    counterexample_d3,
    counterexample_d4,
    d3_closed_form,
    fixture,
    match_convention,
)
from meanking.game import aravind_bound, zero_overlap_pairs
from meanking.mub import verify_mub
from meanking.serialization import dump_strategy, load_strategy

import numpy as np
from numpy.testing import assert_allclose

import pytest


@pytest.fixture(params=sorted(FIXTURES))
def fx(request):
    return fixture(request.param)


def test_d3_third_measurement_vector():
    chi = counterexample_d3().chi
    assert_allclose(chi.vectors[2],
                    [0, cmath.exp(-1j * math.pi / 4) / 2, math.sqrt(3) / 2])


def test_fixture_state_and_basis_are_exact(fx):
    assert np.linalg.norm(fx.phi.amplitudes) == pytest.approx(1.0, abs=1e-12)
    assert_allclose(fx.chi.gram(), np.eye(fx.d), atol=1e-12)


def test_d4_chi_norms():
    chi = counterexample_d4().chi
    assert_allclose(np.sum(np.abs(chi.vectors) ** 2, axis=1), np.ones(4),
                    atol=1e-12)


def test_d4_value():
    fx = counterexample_d4()
    assert fx.evaluate() == pytest.approx(fx.expected, abs=1e-9)
    assert fx.evaluate() == pytest.approx(0.814222, abs=1e-6)


def test_d3_value():
    fx = counterexample_d3()
    value = fx.evaluate()
    assert value == pytest.approx(0.8212, abs=5e-5)
    assert value > 0.788675
    assert value == pytest.approx(d3_closed_form(), abs=fx.tolerance)


def test_d3_closed_form_matches_decimal():
    assert d3_closed_form() == pytest.approx(0.8212, abs=5e-5)
    # The variant with 6*sqrt(6) is not a probability.
    assert (21 + 2 * math.sqrt(2) + 6 * math.sqrt(6)) / 32 > 1


def test_fixtures_beat_the_conventional_bound(fx):
    assert fx.evaluate() - aravind_bound(fx.d) >= 0.02


def test_fixture_mubs_are_certified(fx):
    assert verify_mub(fx.mubs()).passed


def test_zero_overlaps(fx):
    assert zero_overlap_pairs(fx.phi, fx.mubs()) == list(fx.zero_overlaps)


def test_d4_zero_overlaps_as_printed():
    assert counterexample_d4().zero_overlaps == \
        ((2, 0), (4, 0), (1, 1), (2, 1), (2, 4), (3, 4))


def test_d3_zero_overlaps_one_per_basis():
    fx = counterexample_d3()
    assert sorted(mu for _, mu in fx.zero_overlaps) == [0, 1, 2, 3]
    assert len(D3_PRINTED_ZERO_OVERLAPS) == len(fx.zero_overlaps)


def test_unknown_fixture():
    with pytest.raises(UnknownFixtureError) as error:
        fixture("d5")
    error.match("d3")


def test_convention_variants_labels():
    assert [label for label, _ in convention_variants(3)] == \
        ["default", "conjugate", "reversed-vectors", "reversed-bases"]
    assert [label for label, _ in convention_variants(4)] == \
        ["default", "reversed-vectors", "reversed-bases"]


def test_convention_variants_are_mub_families():
    for _, family in convention_variants(3):
        assert verify_mub(family).passed


def test_match_convention_d3_default_matches():
    matches = {match.label: match for match in
               match_convention(counterexample_d3())}
    assert matches["default"].matches
    # Relabeling bases or vectors does not change the optimal value.
    assert matches["reversed-bases"].probability == \
        pytest.approx(matches["default"].probability, abs=1e-12)


def test_to_strategy_round_trip(fx):
    strategy = load_strategy(dump_strategy(fx.to_strategy()))
    assert strategy.decision is None
    assert strategy.rho.witness == fx.phi
    assert strategy.chi.vectors.tolist() == fx.chi.vectors.tolist()
    assert strategy.mubs == fx.mubs()


def test_to_strategy_with_decision():
    strategy = counterexample_d4().to_strategy(with_decision=True)
    assert strategy.decision is not None
    assert dump_strategy(strategy)["decision"] == \
        strategy.decision.to_one_based()
