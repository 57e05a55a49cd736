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

"""Dense complex linear algebra shared by the rest of the package.

Kets and bases are stored as read-only numpy arrays. A :class:`Basis` keeps
its vectors as *rows*, so ``basis.vectors[k]`` is the ket ``|chi_k>``;
:attr:`Basis.matrix` gives the usual column form.
"""
import logging
from typing import Iterable, Iterator, Optional, Sequence, Union

import numpy as np

logger = logging.getLogger(__name__)

NORM_TOLERANCE = 1e-10
HERMITIAN_TOLERANCE = 1e-12
PSD_TOLERANCE = 1e-10
EIGEN_TOLERANCE = 1e-12
DEFAULT_MAX_ITERATIONS = 10_000


class MeanKingError(Exception):
    """Base class of every error meanking raises on bad input."""


class DimensionError(MeanKingError, ValueError):
    pass


class NotHermitianError(MeanKingError, ValueError):
    pass


class NotPositiveError(MeanKingError, ValueError):
    pass


class NotNormalizedError(MeanKingError, ValueError):
    pass


class ConfigurationError(MeanKingError, ValueError):
    """An option or parameter outside its allowed range."""


class ConvergenceError(MeanKingError, ArithmeticError):
    def __init__(self, message: str, residual: float):
        super().__init__(message)
        self.residual = residual


def _readonly(array: np.ndarray) -> np.ndarray:
    array.setflags(write=False)
    return array


def check_finite(array: np.ndarray, what: str):
    """Reject NaN and infinite entries, which pass every tolerance test."""
    if not np.isfinite(array).all():
        raise NotNormalizedError(f"{what} has non-finite entries.")


class Ket:
    """A unit-norm vector of complex probability amplitudes."""

    __slots__ = ("_amplitudes",)

    def __init__(self, amplitudes: Iterable[complex], *, normalize: bool = False,
                 tol: float = NORM_TOLERANCE):
        array = np.array(amplitudes, dtype=complex)
        if array.ndim != 1 or array.size == 0:
            raise DimensionError(
                f"A ket needs a non-empty 1-D amplitude sequence, got shape "
                f"{array.shape}.")
        check_finite(array, "Ket")
        norm = np.linalg.norm(array)
        if normalize:
            if norm == 0.0:
                raise NotNormalizedError("Cannot normalize the zero vector.")
            array /= norm
        elif abs(norm - 1.0) > tol:
            raise NotNormalizedError(
                f"Ket has norm {norm!r}, expected 1 within {tol}.")
        self._amplitudes = _readonly(array)

    @property
    def dim(self) -> int:
        return self._amplitudes.shape[0]

    @property
    def amplitudes(self) -> np.ndarray:
        return self._amplitudes

    def with_phase(self, phase: complex) -> "Ket":
        """Return the same ray multiplied by the unit phase ``phase``."""
        if abs(abs(phase) - 1.0) > NORM_TOLERANCE:
            raise NotNormalizedError(f"Phase {phase!r} is not unimodular.")
        return Ket(self._amplitudes * phase)

    def __len__(self) -> int:
        return self.dim

    def __eq__(self, other) -> bool:
        if not isinstance(other, Ket):
            return NotImplemented
        return np.array_equal(self._amplitudes, other._amplitudes)

    def __hash__(self):
        return hash(self._amplitudes.tobytes())

    def __repr__(self) -> str:
        return f"Ket({self._amplitudes.tolist()!r})"


class Operator:
    """A square complex matrix acting on ``C^dim``.

    ``hermitian=True`` asserts that the entries equal their conjugate
    transpose within ``tol``; the assertion is checked on construction.
    """

    __slots__ = ("_entries", "hermitian")

    def __init__(self, entries, *, hermitian: bool = False,
                 tol: float = HERMITIAN_TOLERANCE):
        array = np.array(entries, dtype=complex)
        if array.ndim != 2 or array.shape[0] != array.shape[1] or \
                array.shape[0] == 0:
            raise DimensionError(
                f"An operator needs a non-empty square matrix, got shape "
                f"{array.shape}.")
        check_finite(array, "Operator")
        if hermitian:
            deviation = hermitian_deviation(array)
            if deviation > tol:
                raise NotHermitianError(
                    f"Matrix deviates from its conjugate transpose by "
                    f"{deviation!r} (tolerance {tol}).")
        self._entries = _readonly(array)
        self.hermitian = hermitian

    @property
    def dim(self) -> int:
        return self._entries.shape[0]

    @property
    def entries(self) -> np.ndarray:
        return self._entries

    def expectation(self, ket: Ket) -> complex:
        """``<psi|A|psi>``."""
        _check_dims(self.dim, ket.dim)
        psi = ket.amplitudes
        return complex(np.vdot(psi, self._entries @ psi))

    def __add__(self, other: "Operator") -> "Operator":
        _check_dims(self.dim, other.dim)
        return Operator(self._entries + other._entries,
                        hermitian=self.hermitian and other.hermitian)

    def __repr__(self) -> str:
        return f"Operator({self._entries.tolist()!r}, hermitian={self.hermitian})"


class Basis:
    """An ordered orthonormal set of ``dim`` kets.

    ``label`` is the basis index ``mu`` when the basis belongs to a MUB
    family and ``None`` otherwise.
    """

    __slots__ = ("_vectors", "label")

    def __init__(self, vectors, *, label: Optional[int] = None,
                 tol: float = NORM_TOLERANCE):
        if isinstance(vectors, np.ndarray):
            array = np.array(vectors, dtype=complex)
        else:
            array = np.array([v.amplitudes if isinstance(v, Ket) else v
                              for v in vectors], dtype=complex)
        if array.ndim != 2 or array.shape[0] != array.shape[1] or \
                array.shape[0] == 0:
            raise DimensionError(
                f"A basis of C^d needs d vectors of length d, got shape "
                f"{array.shape}.")
        check_finite(array, "Basis")
        deviation = _identity_deviation(array.conj() @ array.T)
        if deviation > tol:
            raise NotNormalizedError(
                f"Vectors are not orthonormal: Gram matrix deviates from the "
                f"identity by {deviation!r} (tolerance {tol}).")
        self._vectors = _readonly(array)
        self.label = label

    @property
    def dim(self) -> int:
        return self._vectors.shape[0]

    @property
    def vectors(self) -> np.ndarray:
        return self._vectors

    @property
    def matrix(self) -> np.ndarray:
        """The unitary whose columns are the basis vectors."""
        return self._vectors.T

    def gram(self) -> np.ndarray:
        return self._vectors.conj() @ self._vectors.T

    def is_orthonormal(self, tol: float = NORM_TOLERANCE) -> bool:
        return _identity_deviation(self.gram()) <= tol

    def permuted(self, order: Sequence[int]) -> "Basis":
        """Return the basis with vector ``k`` replaced by ``order[k]``."""
        return Basis(self._vectors[list(order)], label=self.label)

    def with_phases(self, phases: Sequence[complex]) -> "Basis":
        return Basis(self._vectors * np.asarray(phases)[:, None], label=self.label)

    @classmethod
    def standard(cls, d: int, label: Optional[int] = None) -> "Basis":
        return cls(np.eye(d, dtype=complex), label=label)

    def __len__(self) -> int:
        return self.dim

    def __getitem__(self, k: int) -> Ket:
        return Ket(self._vectors[k])

    def __iter__(self) -> Iterator[Ket]:
        for k in range(self.dim):
            yield self[k]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Basis):
            return NotImplemented
        return self.label == other.label and \
            np.array_equal(self._vectors, other._vectors)

    def __repr__(self) -> str:
        return f"Basis(dim={self.dim}, label={self.label})"


def _check_dims(a: int, b: int):
    if a != b:
        raise DimensionError(f"Dimension mismatch: {a} != {b}.")


def _identity_deviation(gram: np.ndarray) -> float:
    return float(np.max(np.abs(gram - np.eye(gram.shape[0]))))


def hermitian_deviation(matrix: np.ndarray) -> float:
    return float(np.max(np.abs(matrix - matrix.conj().T)))


def inner_product(a: Ket, b: Ket) -> complex:
    """``<a|b>``, conjugate-linear in the first argument."""
    _check_dims(a.dim, b.dim)
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def projector(ket: Ket) -> Operator:
    psi = ket.amplitudes
    return Operator(np.outer(psi, psi.conj()), hermitian=True)


def projector_sum(kets: Iterable[Ket]) -> Operator:
    """``L = sum_i |phi_i><phi_i|``."""
    kets = list(kets)
    if not kets:
        raise DimensionError("Cannot sum an empty set of projectors.")
    d = kets[0].dim
    stacked = np.empty((len(kets), d), dtype=complex)
    for i, ket in enumerate(kets):
        _check_dims(d, ket.dim)
        stacked[i] = ket.amplitudes
    # Exactly Hermitian by construction: A^H A.
    return Operator(stacked.T @ stacked.conj(), hermitian=True)


def _off_diagonal_norm(a: np.ndarray) -> float:
    return float(np.linalg.norm(a - np.diag(a.diagonal())))


def _jacobi_rotate(a: np.ndarray, p: int, q: int):
    """Annihilate ``a[p, q]`` with a complex Givens rotation, in place."""
    apq = a[p, q]
    magnitude = abs(apq)
    phase = np.conj(apq / magnitude)
    theta = (a[q, q].real - a[p, p].real) / (2.0 * magnitude)
    t = np.copysign(1.0, theta) / (abs(theta) + np.sqrt(theta * theta + 1.0))
    c = 1.0 / np.sqrt(t * t + 1.0)
    s = t * c
    # diag(1, phase) times the real rotation: phase makes a[p, q] real first.
    rotation = np.array([[c, s], [-s * phase, c * phase]])
    pair = [p, q]
    a[:, pair] = a[:, pair] @ rotation
    a[pair, :] = rotation.conj().T @ a[pair, :]
    a[p, q] = a[q, p] = 0.0


def hermitian_eigenvalues(operator: Union[Operator, np.ndarray], *,
                          tol: float = EIGEN_TOLERANCE,
                          max_iterations: int = DEFAULT_MAX_ITERATIONS
                          ) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix in ascending order.

    Cyclic complex Jacobi sweeps run until the off-diagonal Frobenius norm
    drops below ``tol`` times a hundredth of the matrix norm.
    ``max_iterations`` caps the number of plane rotations.
    """
    entries = operator.entries if isinstance(operator, Operator) else operator
    a = np.array(entries, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionError(f"Expected a square matrix, got shape {a.shape}.")
    deviation = hermitian_deviation(a) if a.size else 0.0
    scale = float(np.linalg.norm(a))
    if deviation > max(HERMITIAN_TOLERANCE, PSD_TOLERANCE * scale):
        raise NotHermitianError(
            f"Matrix is not Hermitian: deviation {deviation!r}.")
    n = a.shape[0]
    if scale == 0.0:
        return np.zeros(n)
    threshold = 1e-2 * tol * scale
    rotations = 0
    sweeps = 0
    while _off_diagonal_norm(a) > threshold:
        for p in range(n - 1):
            for q in range(p + 1, n):
                if abs(a[p, q]) <= threshold / n:
                    continue
                if rotations >= max_iterations:
                    residual = _off_diagonal_norm(a)
                    raise ConvergenceError(
                        f"Jacobi eigensolve did not converge within "
                        f"{max_iterations} rotations, off-diagonal residual "
                        f"{residual!r}.", residual)
                _jacobi_rotate(a, p, q)
                rotations += 1
        sweeps += 1
    logger.debug(f"Jacobi eigensolve of a {n}x{n} matrix: {sweeps} sweeps, "
                 f"{rotations} rotations.")
    return np.sort(a.diagonal().real)


def operator_norm(operator: Union[Operator, np.ndarray], *,
                  tol: float = PSD_TOLERANCE,
                  max_iterations: int = DEFAULT_MAX_ITERATIONS) -> float:
    """Operator norm of a positive semidefinite operator.

    For a positive operator the norm is its largest eigenvalue, which equals
    ``sup <psi|L|psi>`` over unit ``psi``.
    """
    eigenvalues = hermitian_eigenvalues(operator, max_iterations=max_iterations)
    largest = float(eigenvalues[-1])
    if eigenvalues[0] < -tol * max(1.0, abs(largest)):
        raise NotPositiveError(
            f"Operator is not positive semidefinite: smallest eigenvalue "
            f"{eigenvalues[0]!r}.")
    return largest


def derive_seed(master_seed: int, index: int) -> int:
    """Derive the 64-bit seed of trial ``index`` from ``master_seed``.

    ``numpy.random.SeedSequence`` hashes the pair, so seeds of different
    trials are independent and do not depend on evaluation order.
    """
    sequence = np.random.SeedSequence([master_seed, index])
    return int(sequence.generate_state(1, dtype=np.uint64)[0])


def haar_random_basis(d: int, seed: int) -> Basis:
    """Orthonormal basis drawn from the Haar measure on ``U(d)``.

    A complex Ginibre matrix is QR-decomposed and the phases of ``R``'s
    diagonal are moved into ``Q``, which makes the distribution exactly Haar.
    """
    if d < 2:
        raise DimensionError(f"Dimension must be at least 2, got {d}.")
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    q, r = np.linalg.qr(z)
    diagonal = np.diagonal(r)
    q = q * (diagonal / np.abs(diagonal))
    return Basis(q.T)


def haar_random_ket(d: int, seed: int) -> Ket:
    rng = np.random.default_rng(seed)
    psi = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return Ket(psi, normalize=True)
