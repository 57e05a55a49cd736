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

"""Operator-norm bound for sums of rank-one projectors, and the MUB-input bound.

For unit vectors ``phi_1..phi_m`` and ``L = sum_i |phi_i><phi_i|``::

    ||L|| <= lim_n (sum_{i_1..i_n} prod_k |<phi_{i_k}|phi_{i_k+1}>|)^(1/n)

The sum under the root is ``1^T A^(n-1) 1`` for the absolute Gram matrix
``A``, so the limit is the Perron root of ``A``. :func:`lemma_bound`
evaluates the Perron root and checks it against the sequence itself.
"""
import itertools
import logging
import math
import typing
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

import numpy as np

from .game import (
    DensityOperator,
    EnumerationTooLargeError,
    aravind_bound,
    optimal_decision,
    success_probability,
)
from .linalg import (
    Basis,
    ConfigurationError,
    ConvergenceError,
    DimensionError,
    Ket,
    NORM_TOLERANCE,
    NotNormalizedError,
    check_finite,
    hermitian_eigenvalues,
    operator_norm,
    projector_sum,
)
from .mub import MubFamily

logger = logging.getLogger(__name__)

GELFAND_TERMS = 64
GELFAND_TOLERANCE = 1e-6
CERTIFICATE_TOLERANCE = 1e-9
MAX_NESTED_TUPLES = 1_000_000


class VectorSet:
    """``m`` unit kets of a common dimension, stored as rows."""

    __slots__ = ("_vectors",)

    def __init__(self, vectors, *, tol: float = NORM_TOLERANCE):
        if not isinstance(vectors, np.ndarray):
            vectors = [v.amplitudes if isinstance(v, Ket) else v
                       for v in vectors]
            lengths = {len(v) for v in vectors}
            if len(lengths) > 1:
                raise DimensionError(
                    f"Vectors have differing dimensions {sorted(lengths)}.")
        array = np.array(vectors, dtype=complex)
        if array.ndim != 2 or array.shape[0] == 0 or array.shape[1] == 0:
            raise DimensionError(
                f"A vector set needs shape (m, d) with m, d >= 1, got "
                f"{array.shape}.")
        check_finite(array, "Vector set")
        norms = np.linalg.norm(array, axis=1)
        worst = int(np.argmax(np.abs(norms - 1.0)))
        if abs(norms[worst] - 1.0) > tol:
            raise NotNormalizedError(
                f"Vector {worst + 1} has norm {norms[worst]!r}, expected 1.")
        array.setflags(write=False)
        self._vectors = array

    @property
    def dim(self) -> int:
        return self._vectors.shape[1]

    @property
    def vectors(self) -> np.ndarray:
        return self._vectors

    @property
    def kets(self) -> List[Ket]:
        return [Ket(v) for v in self._vectors]

    def __len__(self) -> int:
        return self._vectors.shape[0]

    def __repr__(self) -> str:
        return f"VectorSet(m={len(self)}, d={self.dim})"


class LemmaCertificate(typing.NamedTuple):
    bound: float
    gelfand_tail: float
    witness: float
    operator_norm: float
    slack: float
    passed: bool


class TheoremCertificate(typing.NamedTuple):
    probability: float
    # (1/(d+1)) [1 + (1/d) sum_k <chi_k|L_k|chi_k>]; equals probability.
    chain_value: float
    norm_bound: float
    lemma_total: float
    theorem_bound: float
    norms: Tuple[float, ...]
    lemma_bounds: Tuple[float, ...]
    identity_residual: float
    slacks: Dict[str, float]
    passed: bool


def abs_gram(vs: VectorSet) -> np.ndarray:
    """``A[i, j] = |<phi_i|phi_j>|``: symmetric, unit diagonal, in [0, 1]."""
    v = vs.vectors
    gram = np.abs(v.conj() @ v.T)
    gram = 0.5 * (gram + gram.T)
    np.fill_diagonal(gram, 1.0)
    return np.clip(gram, 0.0, 1.0)


def gelfand_sequence(vs: VectorSet, n_max: int = GELFAND_TERMS) -> np.ndarray:
    """``b_n = (1^T A^(n-1) 1)^(1/n)`` for ``n = 2..n_max``.

    Powers are renormalized every step and the scale is tracked in log space.
    """
    if n_max < 2:
        raise ConfigurationError(f"n_max must be at least 2, got {n_max}.")
    gram = abs_gram(vs)
    v = np.ones(gram.shape[0])
    log_scale = 0.0
    values = np.empty(n_max - 1)
    for n in range(2, n_max + 1):
        v = gram @ v
        peak = v.max()
        v /= peak
        log_scale += math.log(peak)
        values[n - 2] = math.exp((log_scale + math.log(v.sum())) / n)
    return values


def gelfand_nested_sum(vs: VectorSet, n: int) -> float:
    """``b_n`` summed directly over all ``m^n`` index tuples."""
    gram = abs_gram(vs)
    m = gram.shape[0]
    if m ** n > MAX_NESTED_TUPLES:
        raise EnumerationTooLargeError(
            f"{m}^{n} index tuples exceed the limit of {MAX_NESTED_TUPLES}.")
    total = 0.0
    for indices in itertools.product(range(m), repeat=n):
        term = 1.0
        for a, b in zip(indices, indices[1:]):
            term *= gram[a, b]
        total += term
    return total ** (1.0 / n)


def _dyadic_terms(gram: np.ndarray, squarings: int) -> np.ndarray:
    power = gram.copy()
    # log of the per-unit-power scale removed from ``power`` so far.
    level = 0.0
    values = np.empty(squarings)
    for k in range(1, squarings + 1):
        power = power @ power
        peak = power.max()
        power /= peak
        exponent = 2.0 ** k
        level += math.log(peak) / exponent
        # log b_n = log(1^T A^(n-1) 1) / n with n - 1 = 2^k
        values[k - 1] = math.exp(
            level + (math.log(power.sum()) - level) / (exponent + 1.0))
    return values


def gelfand_dyadic(vs: VectorSet, squarings: int = GELFAND_TERMS) -> np.ndarray:
    """``b_n`` at ``n = 2^k + 1`` for ``k = 1..squarings``, by repeated squaring.

    A subsequence of :func:`gelfand_sequence`. The bias of ``b_n`` shrinks
    like ``1/n``, so this reaches the limit to rounding where the plain
    sequence at ``n = 64`` is still off in the second decimal.
    """
    if squarings < 1:
        raise ConfigurationError(f"squarings must be at least 1, got {squarings}.")
    return _dyadic_terms(abs_gram(vs), squarings)


def perron_root(gram: np.ndarray) -> float:
    return float(hermitian_eigenvalues(gram)[-1])


def lemma_bound(vs: VectorSet, *, n_max: int = GELFAND_TERMS,
                tol: float = GELFAND_TOLERANCE) -> float:
    """The limit of the Gelfand sequence, i.e. the Perron root of ``abs_gram``.

    Raises :class:`ConvergenceError` when the dyadic tail of the sequence
    does not agree with the eigensolver within ``tol`` (relative to 1 or the
    root, whichever is larger).
    """
    gram = abs_gram(vs)
    root = perron_root(gram)
    witness = float(_dyadic_terms(gram, n_max)[-1])
    residual = abs(witness - root)
    if residual > tol * max(1.0, root):
        raise ConvergenceError(
            f"Gelfand tail {witness!r} disagrees with the Perron root "
            f"{root!r} by {residual!r}.", residual)
    return root


def certify_lemma(vs: VectorSet, *, n_max: int = GELFAND_TERMS,
                  tol: float = CERTIFICATE_TOLERANCE) -> LemmaCertificate:
    bound = lemma_bound(vs)
    tail = float(gelfand_sequence(vs, n_max)[-1])
    witness = float(gelfand_dyadic(vs)[-1])
    norm = operator_norm(projector_sum(vs.kets))
    slack = bound - norm
    return LemmaCertificate(bound, tail, witness, norm, slack, slack >= -tol)


def mub_norm_bound(d: int) -> float:
    """``(sqrt(d) + d - 1) / sqrt(d)``: the lemma bound for one vector per basis."""
    root = math.sqrt(d)
    return (root + d - 1) / root


def theorem_bound(d: int) -> float:
    """Bound for inputs that are MUB basis vectors.

    Same closed form as :func:`meanking.game.aravind_bound`.
    """
    return aravind_bound(d)


def certify_theorem(mubs: MubFamily, chi: Basis,
                    per_mu_choice: Optional[Mapping[int, int]] = None, *,
                    state: Tuple[int, int] = (0, 0),
                    tol: float = CERTIFICATE_TOLERANCE) -> TheoremCertificate:
    """Evaluate every link of the proof chain for ``rho = |Psi^mu0_j0><.|``.

    With ``s = s_max`` and ``L_k = sum_{mu != mu0} |Psi^mu_s(k,mu)><.|``::

        P = (1/(d+1)) [1 + (1/d) sum_k <chi_k|L_k|chi_k>]
          <= (1/(d+1)) [1 + (1/d) sum_k ||L_k||]
          <= (1/(d+1)) [1 + (1/d) sum_k lemma_bound(L_k)]
          = theorem_bound(d)

    ``state`` is 0-based ``(mu0, j0)``. ``per_mu_choice`` maps ``mu`` to a
    1-based ``j`` and adds the lemma link for that arbitrary selection.
    Slacks are reported per link; ``passed`` needs all of them
    ``>= -tol`` and the first equality to hold within ``tol``.
    """
    d = mubs.dim
    if chi.dim != d:
        raise DimensionError(f"Dimension mismatch: {chi.dim} != {d}.")
    mu0, j0 = state
    rho = DensityOperator.pure(mubs.vector(mu0, j0))
    decision = optimal_decision(rho, chi, mubs)
    probability = success_probability(rho, chi, decision, mubs).total
    others = [mu for mu in range(d + 1) if mu != mu0]

    expectations: List[float] = []
    norms: List[float] = []
    lemma_bounds: List[float] = []
    for k, chi_k in enumerate(chi):
        kets = [mubs.vector(mu, decision[k, mu]) for mu in others]
        projectors = projector_sum(kets)
        expectations.append(projectors.expectation(chi_k).real)
        norms.append(operator_norm(projectors))
        lemma_bounds.append(lemma_bound(VectorSet(kets)))

    closed_form = mub_norm_bound(d)
    bound = theorem_bound(d)
    chain_value = (1.0 + sum(expectations) / d) / (d + 1)
    norm_bound = (1.0 + sum(norms) / d) / (d + 1)
    lemma_total = (1.0 + sum(lemma_bounds) / d) / (d + 1)
    slacks = {
        "norm": norm_bound - probability,
        "lemma": min(b - n for b, n in zip(lemma_bounds, norms)),
        "mub_closed_form": min(closed_form - b for b in lemma_bounds),
        "theorem": bound - lemma_total,
    }
    if per_mu_choice:
        selected = _selection(mubs, per_mu_choice)
        slacks["selection"] = lemma_bound(VectorSet(selected)) - \
            operator_norm(projector_sum(selected))
    residual = abs(probability - chain_value)
    passed = residual <= tol and all(v >= -tol for v in slacks.values())
    if not passed:
        logger.warning(f"Certification chain failed for d={d}, state={state}: "
                       f"residual {residual!r}, slacks {slacks!r}.")
    return TheoremCertificate(probability, chain_value, norm_bound, lemma_total,
                              bound, tuple(norms), tuple(lemma_bounds),
                              residual, slacks, passed)


def _selection(mubs: MubFamily, per_mu_choice: Mapping[int, int]) -> List[Ket]:
    d = mubs.dim
    kets = []
    for mu, j in sorted(per_mu_choice.items()):
        if not (0 <= mu <= d and 1 <= j <= d):
            raise DimensionError(
                f"Selection (mu={mu}, j={j}) is outside mu in 0..{d}, "
                f"j in 1..{d}.")
        kets.append(mubs.vector(mu, j - 1))
    return kets


def one_per_basis(mubs: MubFamily, choice: Iterable[int]) -> VectorSet:
    """One vector from each of the bases ``mu = 1..d``; ``choice`` is 0-based ``j``."""
    return VectorSet([mubs.vector(mu, j) for mu, j in enumerate(choice, start=1)])
