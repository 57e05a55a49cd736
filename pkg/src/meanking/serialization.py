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

"""JSON forms of families, strategies, vector sets and reports.

Complex numbers are ``[re, im]`` pairs; kets are lists of pairs and bases
are lists of kets (one row per vector). Loading checks the shape of the
document and raises :class:`StrategyFormatError` with the JSON path of the
first offending field. Physical invariants (unit norm, orthonormality) are
left to the constructors of the domain types.
"""
import json
import numbers
import typing
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import numpy as np

from .bounds import VectorSet
from .game import DecisionTable, DensityOperator
from .linalg import Basis, Ket, MeanKingError, check_finite
from .mub import MubFamily, mub_family


class StrategyFormatError(MeanKingError, ValueError):
    pass


class Strategy(typing.NamedTuple):
    rho: DensityOperator
    chi: Basis
    mubs: MubFamily
    decision: Optional[DecisionTable] = None
    builtin_mub: bool = True


def encode_complex(z: complex) -> List[float]:
    return [float(z.real), float(z.imag)]


def encode_array(array: np.ndarray) -> Any:
    """Nested lists of ``[re, im]`` pairs with the shape of ``array``."""
    stacked = np.stack([np.real(array), np.imag(array)], axis=-1)
    return stacked.tolist()


def _is_number(value) -> bool:
    return isinstance(value, numbers.Real) and not isinstance(value, bool)


def _decode_array(value, path: str, ndim: int) -> np.ndarray:
    """Decode ``ndim`` levels of nested lists ending in ``[re, im]`` pairs."""
    if ndim == 0:
        if not (isinstance(value, list) and len(value) == 2 and
                all(_is_number(x) for x in value)):
            raise StrategyFormatError(
                f"{path}: expected a [re, im] pair, got {value!r}.")
        return np.array(complex(value[0], value[1]))
    if not isinstance(value, list) or not value:
        raise StrategyFormatError(
            f"{path}: expected a non-empty list, got {value!r}.")
    items = [_decode_array(item, f"{path}[{i}]", ndim - 1)
             for i, item in enumerate(value)]
    shapes = {item.shape for item in items}
    if len(shapes) != 1:
        raise StrategyFormatError(f"{path}: rows have differing lengths.")
    return np.stack(items)


def _field(data: Dict[str, Any], key: str, path: str):
    if not isinstance(data, dict):
        raise StrategyFormatError(f"{path}: expected an object.")
    if key not in data:
        raise StrategyFormatError(f"{path}: missing field {key!r}.")
    return data[key]


def _dimension(data: Dict[str, Any], path: str) -> int:
    d = _field(data, "d", path)
    if not isinstance(d, int) or isinstance(d, bool) or d < 1:
        raise StrategyFormatError(f"{path}.d: expected a positive integer.")
    return d


def _check_shape(array: np.ndarray, shape, path: str):
    if array.shape != shape:
        raise StrategyFormatError(
            f"{path}: expected shape {shape}, got {array.shape}.")


def dump_family(family: MubFamily) -> Dict[str, Any]:
    return {"d": family.dim, "bases": encode_array(family.vectors)}


def load_family(data: Dict[str, Any], path: str = "$") -> MubFamily:
    d = _dimension(data, path)
    vectors = _decode_array(_field(data, "bases", path), f"{path}.bases", 3)
    _check_shape(vectors, (d + 1, d, d), f"{path}.bases")
    return MubFamily(vectors)


def dump_vector_set(vs: VectorSet) -> Dict[str, Any]:
    return {"d": vs.dim, "vectors": encode_array(vs.vectors)}


def load_vector_set(data: Dict[str, Any], path: str = "$") -> VectorSet:
    d = _dimension(data, path)
    vectors = _decode_array(_field(data, "vectors", path), f"{path}.vectors", 2)
    if vectors.shape[1] != d:
        raise StrategyFormatError(
            f"{path}.vectors: vectors have length {vectors.shape[1]}, "
            f"expected {d}.")
    return VectorSet(vectors)


def dump_strategy(strategy: Strategy) -> Dict[str, Any]:
    rho = strategy.rho
    data: Dict[str, Any] = {"d": rho.dim}
    if rho.witness is not None:
        data["rho"] = {"pure": encode_array(rho.witness.amplitudes)}
    else:
        data["rho"] = {"matrix": encode_array(rho.matrix)}
    data["chi"] = encode_array(strategy.chi.vectors)
    data["mub"] = "builtin" if strategy.builtin_mub else \
        dump_family(strategy.mubs)
    if strategy.decision is not None:
        data["decision"] = strategy.decision.to_one_based()
    return data


def load_strategy(data: Dict[str, Any]) -> Strategy:
    d = _dimension(data, "$")
    rho_data = _field(data, "rho", "$")
    if isinstance(rho_data, dict) and "pure" in rho_data:
        amplitudes = _decode_array(rho_data["pure"], "$.rho.pure", 1)
        _check_shape(amplitudes, (d,), "$.rho.pure")
        rho = DensityOperator.pure(Ket(amplitudes))
    elif isinstance(rho_data, dict) and "matrix" in rho_data:
        matrix = _decode_array(rho_data["matrix"], "$.rho.matrix", 2)
        _check_shape(matrix, (d, d), "$.rho.matrix")
        rho = DensityOperator(matrix)
    else:
        raise StrategyFormatError(
            "$.rho: expected an object with a 'pure' or a 'matrix' field.")
    chi_vectors = _decode_array(_field(data, "chi", "$"), "$.chi", 2)
    _check_shape(chi_vectors, (d, d), "$.chi")
    chi = Basis(chi_vectors)
    mub_data = data.get("mub", "builtin")
    if mub_data == "builtin":
        mubs, builtin = mub_family(d), True
    elif isinstance(mub_data, dict):
        mubs, builtin = load_family(mub_data, "$.mub"), False
        check_finite(mubs.vectors, "$.mub")
        if mubs.dim != d:
            raise StrategyFormatError(f"$.mub.d: expected {d}, got {mubs.dim}.")
    else:
        raise StrategyFormatError(
            f"$.mub: expected 'builtin' or a family object, got {mub_data!r}.")
    decision = None
    if data.get("decision") is not None:
        rows = data["decision"]
        if not (isinstance(rows, list) and
                all(isinstance(row, list) and
                    all(isinstance(x, int) and not isinstance(x, bool)
                        for x in row) for row in rows)):
            raise StrategyFormatError(
                "$.decision: expected a list of rows of integers.")
        decision = DecisionTable.from_one_based(rows)
    return Strategy(rho, chi, mubs, decision, builtin)


def _jsonable(value):
    if isinstance(value, DecisionTable):
        return value.to_one_based()
    if hasattr(value, "_asdict"):
        return {key: _jsonable(item) for key, item in value._asdict().items()}
    if isinstance(value, dict):
        return {str(key): _jsonable(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(item) for item in value]
    if isinstance(value, np.ndarray):
        return _jsonable(value.tolist())
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, Path):
        return str(value)
    if isinstance(value, complex):
        return encode_complex(value)
    return value


def report_to_json(report) -> Dict[str, Any]:
    """Plain JSON form of any report record (``GameReport``, certificates...)."""
    return _jsonable(report)


def read_json(path: Union[str, Path]) -> Any:
    with open(path, "rt", encoding="utf-8") as json_file:
        try:
            return json.load(json_file)
        except json.JSONDecodeError as error:
            raise StrategyFormatError(f"{path}: not valid JSON: {error}") \
                from error


def write_json(data: Any, path: Union[str, Path]):
    with open(path, "wt", encoding="utf-8", newline="\n") as json_file:
        json.dump(data, json_file, indent=2)
        json_file.write("\n")
