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

import json
from pathlib import Path

from meanking.bounds import VectorSet
from meanking.fixtures import counterexample_d4
from meanking.game import (
    DecisionTable,
    DensityOperator,
    optimal_decision,
    success_probability,
)
from meanking.linalg import NotNormalizedError
from meanking.mub import mub_family, verify_mub
from meanking.serialization import (
    Strategy,
    StrategyFormatError,
    dump_family,
    dump_strategy,
    dump_vector_set,
    encode_array,
    load_family,
    load_strategy,
    load_vector_set,
    read_json,
    report_to_json,
    write_json,
)

import numpy as np

import pytest


def d4_strategy_json() -> dict:
    return dump_strategy(counterexample_d4().to_strategy())


def test_encode_array_pairs():
    assert encode_array(np.array([1 + 2j, -0.5j])) == [[1.0, 2.0], [0.0, -0.5]]


def test_family_round_trip():
    family = mub_family(3)
    loaded = load_family(json.loads(json.dumps(dump_family(family))))
    assert loaded == family


def test_vector_set_round_trip():
    vs = VectorSet([[1, 0], [0, 1j]])
    loaded = load_vector_set(dump_vector_set(vs))
    assert loaded.vectors.tolist() == vs.vectors.tolist()


def test_vector_set_length_mismatch():
    data = {"d": 3, "vectors": [[[1, 0], [0, 0]]]}
    with pytest.raises(StrategyFormatError) as error:
        load_vector_set(data)
    error.match(r"\$\.vectors: vectors have length 2, expected 3")


def test_strategy_round_trip_through_file(tmp_path):
    path = tmp_path / "d4.json"
    write_json(d4_strategy_json(), path)
    strategy = load_strategy(read_json(path))
    fx = counterexample_d4()
    report = success_probability(
        strategy.rho, strategy.chi,
        optimal_decision(strategy.rho, strategy.chi, strategy.mubs),
        strategy.mubs)
    assert report.total == pytest.approx(fx.expected, abs=1e-9)
    assert path.read_bytes().endswith(b"}\n")


def test_strategy_with_mixed_state_and_inline_family():
    family = mub_family(3)
    strategy = Strategy(DensityOperator.maximally_mixed(3), family.basis(1),
                        family, DecisionTable.identity(3), builtin_mub=False)
    data = json.loads(json.dumps(dump_strategy(strategy)))
    assert "matrix" in data["rho"]
    assert data["decision"][0] == [1, 1, 1, 1]
    loaded = load_strategy(data)
    assert loaded.mubs == family
    assert loaded.decision == DecisionTable.identity(3)
    assert not loaded.builtin_mub
    assert verify_mub(loaded.mubs).passed


def test_missing_field_names_path():
    data = d4_strategy_json()
    del data["chi"]
    with pytest.raises(StrategyFormatError) as error:
        load_strategy(data)
    error.match(r"\$: missing field 'chi'")


def test_bad_complex_pair_names_path():
    data = d4_strategy_json()
    data["chi"][0][1] = [1.0]
    with pytest.raises(StrategyFormatError) as error:
        load_strategy(data)
    error.match(r"\$\.chi\[0\]\[1\]: expected a \[re, im\] pair")


def test_boolean_is_not_a_number():
    data = d4_strategy_json()
    data["rho"]["pure"][0] = [True, 0]
    with pytest.raises(StrategyFormatError):
        load_strategy(data)


def test_wrong_shape():
    data = d4_strategy_json()
    data["chi"] = data["chi"][:3]
    with pytest.raises(StrategyFormatError) as error:
        load_strategy(data)
    error.match(r"\$\.chi: expected shape \(4, 4\)")


def test_bad_dimension_and_rho():
    data = d4_strategy_json()
    data["d"] = "four"
    with pytest.raises(StrategyFormatError) as error:
        load_strategy(data)
    error.match(r"\$\.d")
    data = d4_strategy_json()
    data["rho"] = {"mixed": []}
    with pytest.raises(StrategyFormatError) as error:
        load_strategy(data)
    error.match("'pure' or a 'matrix'")


def test_bad_mub_and_decision():
    data = d4_strategy_json()
    data["mub"] = "ivanovic"
    with pytest.raises(StrategyFormatError):
        load_strategy(data)
    data = d4_strategy_json()
    data["decision"] = [["1"]]
    with pytest.raises(StrategyFormatError) as error:
        load_strategy(data)
    error.match(r"\$\.decision")


def test_non_unit_state_is_an_invariant_error():
    data = d4_strategy_json()
    data["rho"]["pure"][0] = [2.0, 0.0]
    with pytest.raises(NotNormalizedError):
        load_strategy(data)


def test_non_orthonormal_chi_is_an_invariant_error():
    data = d4_strategy_json()
    data["chi"][1] = data["chi"][0]
    with pytest.raises(NotNormalizedError):
        load_strategy(data)


def test_nan_amplitude_is_an_invariant_error(tmp_path):
    data = d4_strategy_json()
    data["rho"]["pure"][0] = [float("nan"), 0.0]
    path = tmp_path / "nan.json"
    write_json(data, path)
    assert "NaN" in path.read_text()
    with pytest.raises(NotNormalizedError) as error:
        load_strategy(read_json(path))
    error.match("non-finite")


def test_nan_in_inline_family_is_an_invariant_error():
    data = d4_strategy_json()
    data["mub"] = dump_family(mub_family(4))
    data["mub"]["bases"][0][0][0] = [float("nan"), 0.0]
    with pytest.raises(NotNormalizedError) as error:
        load_strategy(data)
    error.match(r"\$\.mub has non-finite")


def test_invalid_json(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{")
    with pytest.raises(StrategyFormatError) as error:
        read_json(path)
    error.match("not valid JSON")


def test_game_report_json():
    fx = counterexample_d4()
    rho, mubs = fx.state(), fx.mubs()
    report = success_probability(rho, fx.chi,
                                 optimal_decision(rho, fx.chi, mubs), mubs)
    data = json.loads(json.dumps(report_to_json(report)))
    assert data["total"] == report.total
    assert len(data["per_mu"]) == 5
    assert data["decision"] == report.decision.to_one_based()
    assert all(1 <= j <= 4 for row in data["decision"] for j in row)


def test_report_json_handles_numpy_scalars_and_paths():
    data = report_to_json({"value": np.float64(0.5), "items": (1, 2),
                           "out": Path("scan.csv"), "z": 1j})
    assert data == {"value": 0.5, "items": [1, 2], "out": "scan.csv",
                    "z": [0.0, 1.0]}
