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

"""The conventional Mean King game: payoff and decision functions.

Throughout, ``weights[mu, j, k] = <Psi^mu_j|rho|Psi^mu_j> |<Psi^mu_j|chi_k>|^2``
is the joint probability that the king measured basis ``mu``, obtained
``j`` and the physicist then observed ``k`` (up to the uniform prior
``1 / (d + 1)``). Every quantity in this module is computed from it.
Indices are 0-based in code and 1-based for ``j``/``k`` when serialized.
"""
import logging
import math
import typing
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .linalg import (
    Basis,
    ConfigurationError,
    DimensionError,
    HERMITIAN_TOLERANCE,
    Ket,
    MeanKingError,
    NotHermitianError,
    NotNormalizedError,
    NotPositiveError,
    check_finite,
    hermitian_deviation,
    hermitian_eigenvalues,
)
from .mub import MubFamily

logger = logging.getLogger(__name__)

DENSITY_TOLERANCE = 1e-10
TIE_TOLERANCE = 1e-12
ZERO_OVERLAP_TOLERANCE = 1e-12
MAX_ENUMERATION = 1_000_000


class InvalidDecisionError(MeanKingError, ValueError):
    pass


class OutcomeIndexError(MeanKingError, IndexError):
    pass


class EnumerationTooLargeError(MeanKingError, ValueError):
    pass


class NotBijectiveError(MeanKingError, ValueError):
    def __init__(self, message: str, failing_bases: List[int]):
        super().__init__(message)
        self.failing_bases = failing_bases


class DensityOperator:
    """Input state ``rho``: Hermitian, positive semidefinite, trace one.

    Pure states keep the ket they were built from as ``witness`` but are
    evaluated through the matrix like any other state.
    """

    __slots__ = ("_matrix", "witness")

    def __init__(self, matrix, *, witness: Optional[Ket] = None,
                 tol: float = DENSITY_TOLERANCE):
        array = np.array(matrix, dtype=complex)
        if array.ndim != 2 or array.shape[0] != array.shape[1] or \
                array.shape[0] == 0:
            raise DimensionError(
                f"A density operator needs a square matrix, got shape "
                f"{array.shape}.")
        check_finite(array, "Density matrix")
        deviation = hermitian_deviation(array)
        if deviation > HERMITIAN_TOLERANCE:
            raise NotHermitianError(
                f"Density matrix is not Hermitian: deviation {deviation!r}.")
        trace = complex(np.trace(array))
        if abs(trace - 1.0) > tol:
            raise NotNormalizedError(
                f"Density matrix has trace {trace!r}, expected 1.")
        smallest = hermitian_eigenvalues(array)[0]
        if smallest < -tol:
            raise NotPositiveError(
                f"Density matrix has negative eigenvalue {smallest!r}.")
        array.setflags(write=False)
        self._matrix = array
        self.witness = witness

    @classmethod
    def pure(cls, ket: Ket) -> "DensityOperator":
        psi = ket.amplitudes
        return cls(np.outer(psi, psi.conj()), witness=ket)

    @classmethod
    def maximally_mixed(cls, d: int) -> "DensityOperator":
        return cls(np.eye(d, dtype=complex) / d)

    @classmethod
    def mixture(cls, t: float, first: "DensityOperator",
                second: "DensityOperator") -> "DensityOperator":
        """``t * first + (1 - t) * second`` for ``0 <= t <= 1``."""
        if not 0.0 <= t <= 1.0:
            raise ConfigurationError(f"Mixing weight must lie in [0, 1], got {t}.")
        if first.dim != second.dim:
            raise DimensionError(
                f"Dimension mismatch: {first.dim} != {second.dim}.")
        return cls(t * first.matrix + (1.0 - t) * second.matrix)

    @property
    def dim(self) -> int:
        return self._matrix.shape[0]

    @property
    def matrix(self) -> np.ndarray:
        return self._matrix

    @property
    def is_pure(self) -> bool:
        return self.witness is not None

    def __repr__(self) -> str:
        kind = "pure" if self.is_pure else "mixed"
        return f"DensityOperator(dim={self.dim}, {kind})"


class DecisionTable:
    """The decision function ``s``: ``entries[k, mu]`` is the guessed ``j``.

    Entries are 0-based; :meth:`from_one_based` and :meth:`to_one_based`
    convert from and to the 1-based guesses used in reports.
    """

    __slots__ = ("_entries",)

    def __init__(self, entries):
        raw = np.asarray(entries)
        if raw.dtype.kind not in "iu":
            raise InvalidDecisionError(
                f"Decision entries must be integers, got dtype {raw.dtype}.")
        if raw.ndim != 2 or raw.shape[1] != raw.shape[0] + 1:
            raise InvalidDecisionError(
                f"A decision table for C^d has shape (d, d+1), got "
                f"{raw.shape}.")
        d = raw.shape[0]
        bad = np.argwhere((raw < 0) | (raw >= d))
        if bad.size:
            k, mu = bad[0]
            raise InvalidDecisionError(
                f"Decision s[{k + 1},{mu}] = {raw[k, mu] + 1} is outside "
                f"1..{d}.")
        array = np.array(raw, dtype=np.intp)
        array.setflags(write=False)
        self._entries = array

    @classmethod
    def identity(cls, d: int) -> "DecisionTable":
        return cls(np.repeat(np.arange(d)[:, None], d + 1, axis=1))

    @classmethod
    def from_one_based(cls, rows: Sequence[Sequence[int]]) -> "DecisionTable":
        return cls(np.asarray(rows) - 1)

    def to_one_based(self) -> List[List[int]]:
        return (self._entries + 1).tolist()

    @property
    def dim(self) -> int:
        return self._entries.shape[0]

    @property
    def entries(self) -> np.ndarray:
        return self._entries

    def __getitem__(self, key: Tuple[int, int]) -> int:
        return int(self._entries[key])

    def is_injective(self, mu: int) -> bool:
        column = self._entries[:, mu]
        return len(set(column.tolist())) == column.size

    def __eq__(self, other) -> bool:
        if not isinstance(other, DecisionTable):
            return NotImplemented
        return np.array_equal(self._entries, other._entries)

    def __repr__(self) -> str:
        return f"DecisionTable({self.to_one_based()!r})"


class GameReport(typing.NamedTuple):
    total: float
    # Conditional success probability for each revealed basis mu = 0..d.
    per_mu: Tuple[float, ...]
    decision: DecisionTable


def _check_game_dims(rho: DensityOperator, chi: Basis, mubs: MubFamily):
    if not rho.dim == chi.dim == mubs.dim:
        raise DimensionError(
            f"Dimension mismatch: rho is {rho.dim}, chi is {chi.dim}, the MUB "
            f"family is {mubs.dim}.")


def guess_weights(rho: DensityOperator, chi: Basis, mubs: MubFamily
                  ) -> np.ndarray:
    """``weights[mu, j, k]``, see the module docstring."""
    _check_game_dims(rho, chi, mubs)
    psi = mubs.vectors
    populations = np.einsum("mji,il,mjl->mj", psi.conj(), rho.matrix, psi).real
    amplitudes = np.einsum("mji,ki->mjk", psi.conj(), chi.vectors)
    return populations[:, :, None] * np.abs(amplitudes) ** 2


def evaluate_weights(weights: np.ndarray, entries: np.ndarray) -> np.ndarray:
    """Conditional success probabilities per ``mu`` of a decision table."""
    bases, d, _ = weights.shape
    chosen = weights[np.arange(bases)[None, :], entries, np.arange(d)[:, None]]
    return chosen.sum(axis=0)


def _first_maximum(values: np.ndarray, axis: int,
                   tol: float = TIE_TOLERANCE) -> np.ndarray:
    """Index of the maximum along ``axis``; near-ties go to the smallest index."""
    near = values >= values.max(axis=axis, keepdims=True) - tol
    return np.argmax(near, axis=axis)


def outcome_probability(mubs: MubFamily, mu: int, j: int, chi: Basis, k: int
                        ) -> float:
    """``P(k|mu, j, chi) = |<Psi^mu_j|chi_k>|^2``."""
    d = mubs.dim
    if chi.dim != d:
        raise DimensionError(f"Dimension mismatch: {chi.dim} != {d}.")
    for name, value, upper in (("mu", mu, d), ("j", j, d - 1), ("k", k, d - 1)):
        if not 0 <= value <= upper:
            raise OutcomeIndexError(
                f"Index {name}={value} is outside 0..{upper}.")
    overlap = np.vdot(mubs.vectors[mu, j], chi.vectors[k])
    return float(abs(overlap) ** 2)


def success_probability(rho: DensityOperator, chi: Basis, s: DecisionTable,
                        mubs: MubFamily) -> GameReport:
    """Success probability ``P_d(rho, chi, s)`` under the uniform prior."""
    weights = guess_weights(rho, chi, mubs)
    if s.dim != mubs.dim:
        raise InvalidDecisionError(
            f"Decision table is for d={s.dim}, the game has d={mubs.dim}.")
    per_mu = evaluate_weights(weights, s.entries)
    return GameReport(float(np.mean(per_mu)), tuple(per_mu.tolist()), s)


def optimal_decision(rho: DensityOperator, chi: Basis, mubs: MubFamily
                     ) -> DecisionTable:
    """``s_max(k, mu) = argmax_j weights[mu, j, k]``, ties to the smallest ``j``."""
    weights = guess_weights(rho, chi, mubs)
    return DecisionTable(_first_maximum(weights, axis=1).T)


def decision_table_count(d: int) -> int:
    return d ** (d * (d + 1))


def brute_force_decision(rho: DensityOperator, chi: Basis, mubs: MubFamily
                         ) -> Tuple[DecisionTable, float]:
    """Exhaustively search all decision tables.

    Tables are enumerated in lexicographic order of ``entries`` read
    row-major, and the first one within ``TIE_TOLERANCE`` of the best value
    is returned.
    """
    d = mubs.dim
    count = decision_table_count(d)
    if count > MAX_ENUMERATION:
        raise EnumerationTooLargeError(
            f"Enumerating {count} decision tables for d={d} exceeds the limit "
            f"of {MAX_ENUMERATION}.")
    weights = guess_weights(rho, chi, mubs)
    totals = np.zeros(1)
    for k in range(d):
        for mu in range(d + 1):
            totals = (totals[:, None] + weights[mu, :, k][None, :]).ravel()
    logger.debug(f"Enumerated {totals.size} decision tables for d={d}.")
    best = int(np.argmax(totals >= totals.max() - TIE_TOLERANCE))
    digits = np.unravel_index(best, (d,) * (d * (d + 1)))
    table = DecisionTable(np.array(digits).reshape(d, d + 1))
    return table, float(np.mean(evaluate_weights(weights, table.entries)))


def bijective_decision(rho: DensityOperator, chi: Basis, mubs: MubFamily
                       ) -> DecisionTable:
    """The restricted rule ``s(k, mu) = f_mu^-1(k)``.

    ``f_mu(j) = argmax_k weights[mu, j, k]``; among near-ties ``k = j`` is
    preferred, then the smallest ``k``. Raises :class:`NotBijectiveError`
    naming every ``mu`` for which ``f_mu`` is not a bijection.
    """
    weights = guess_weights(rho, chi, mubs)
    d = mubs.dim
    entries = np.zeros((d, d + 1), dtype=np.intp)
    failing = []
    for mu in range(d + 1):
        scores = weights[mu]
        near = scores >= scores.max(axis=1, keepdims=True) - TIE_TOLERANCE
        f = np.where(near[np.arange(d), np.arange(d)],
                     np.arange(d), np.argmax(near, axis=1))
        if len(set(f.tolist())) != d:
            failing.append(mu)
            continue
        entries[f, mu] = np.arange(d)
    if failing:
        raise NotBijectiveError(
            f"f_mu is not bijective for mu in {failing}.", failing)
    return DecisionTable(entries)


def non_injective_bases(table: DecisionTable) -> List[int]:
    return [mu for mu in range(table.dim + 1) if not table.is_injective(mu)]


def aravind_bound(d: int) -> float:
    """The claimed ceiling ``(2 sqrt(d) + d - 1) / (sqrt(d) (d + 1))``."""
    if d < 2:
        raise DimensionError(f"Dimension must be at least 2, got {d}.")
    root = math.sqrt(d)
    return (2 * root + d - 1) / (root * (d + 1))


def zero_overlap_pairs(phi: Ket, mubs: MubFamily,
                       tol: float = ZERO_OVERLAP_TOLERANCE
                       ) -> List[Tuple[int, int]]:
    """Pairs ``(j, mu)``, ``j`` 1-based, with ``|<Psi^mu_j|phi>|^2 < tol``.

    Sorted by ``mu`` and then ``j``.
    """
    if phi.dim != mubs.dim:
        raise DimensionError(f"Dimension mismatch: {phi.dim} != {mubs.dim}.")
    if tol <= 0:
        raise ConfigurationError(f"Tolerance must be positive, got {tol}.")
    overlaps = np.abs(mubs.vectors.conj() @ phi.amplitudes) ** 2
    return [(int(j) + 1, int(mu)) for mu, j in np.argwhere(overlaps < tol)]
