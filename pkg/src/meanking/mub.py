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

"""Complete families of mutually unbiased bases (MUBs).

A family for dimension ``d`` holds ``d + 1`` bases labelled ``mu = 0..d``.
Vectors are stored in one ``(d + 1, d, d)`` array indexed ``[mu, j, k]``:
basis ``mu``, vector ``j``, amplitude ``k``, all 0-based.
"""
import functools
import typing
from typing import List, Sequence, Tuple

import numpy as np

from .linalg import (
    Basis,
    ConfigurationError,
    DimensionError,
    Ket,
    MeanKingError,
)

MUB_TOLERANCE = 1e-10

# Rows mu = 0..4 of the published d=4 table in sign shorthand.
# Every vector of rows 1..4 is normalized by 1/2.
D4_TABLE = (
    ("+1 0 0 0", "0 +1 0 0", "0 0 +1 0", "0 0 0 +1"),
    ("+1 +1 +1 +1", "+1 -1 +1 -1", "+1 +1 -1 -1", "+1 -1 -1 +1"),
    ("+1 +i +i -1", "+1 -i +i +1", "+1 +i -i +1", "+1 -i -i -1"),
    ("+1 -1 +i +i", "+1 +1 -i +i", "+1 +1 +i -i", "+1 -1 -i -i"),
    ("+1 +i -1 +i", "+1 -i +1 +i", "+1 +i +1 -i", "+1 -i -1 -i"),
)
_SHORTHAND = {"0": 0, "+1": 1, "-1": -1, "+i": 1j, "-i": -1j}


class UnsupportedDimensionError(MeanKingError, ValueError):
    pass


class MubCertificate(typing.NamedTuple):
    passed: bool
    max_deviation: float
    # ((mu, j), (nu, i)) with 0-based mu/nu and 1-based j/i.
    worst_pair: Tuple[Tuple[int, int], Tuple[int, int]]
    tolerance: float


class MubFamily:
    """``d + 1`` bases of ``C^d``.

    Construction only checks the shape; mutual unbiasedness is certified by
    :func:`verify_mub`, so a defective family can still be inspected.
    """

    __slots__ = ("_vectors",)

    def __init__(self, vectors):
        if not isinstance(vectors, np.ndarray):
            vectors = [b.vectors if isinstance(b, Basis) else b for b in vectors]
        array = np.array(vectors, dtype=complex)
        if array.ndim != 3 or array.shape[1] != array.shape[2] or \
                array.shape[0] != array.shape[1] + 1:
            raise DimensionError(
                f"A MUB family of C^d needs shape (d+1, d, d), got "
                f"{array.shape}.")
        array.setflags(write=False)
        self._vectors = array

    @property
    def dim(self) -> int:
        return self._vectors.shape[1]

    @property
    def vectors(self) -> np.ndarray:
        return self._vectors

    def basis(self, mu: int) -> Basis:
        return Basis(self._vectors[mu], label=mu)

    @property
    def bases(self) -> List[Basis]:
        return [self.basis(mu) for mu in range(self.dim + 1)]

    def vector(self, mu: int, j: int) -> Ket:
        """``|Psi^mu_j>`` with 0-based ``mu`` and ``j``."""
        return Ket(self._vectors[mu, j])

    def overlaps(self) -> np.ndarray:
        """Squared overlaps between all ``(d + 1) d`` vectors.

        Row and column ``mu * d + j`` belong to ``|Psi^mu_j>``.
        """
        flat = self._vectors.reshape(-1, self.dim)
        return np.abs(flat.conj() @ flat.T) ** 2

    def __len__(self) -> int:
        return self._vectors.shape[0]

    def __eq__(self, other) -> bool:
        if not isinstance(other, MubFamily):
            return NotImplemented
        return np.array_equal(self._vectors, other._vectors)

    def __repr__(self) -> str:
        return f"MubFamily(d={self.dim})"


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % p for p in range(2, int(n ** 0.5) + 1))


def _parse_shorthand(entry: str) -> List[complex]:
    return [_SHORTHAND[token] for token in entry.split()]


def d4_table() -> MubFamily:
    """The d=4 family exactly as tabulated, rows read as ``mu = 0..4``."""
    vectors = np.array([[_parse_shorthand(entry) for entry in row]
                        for row in D4_TABLE], dtype=complex)
    vectors[1:] *= 0.5
    return MubFamily(vectors)


def _qubit_family() -> MubFamily:
    s = 2 ** -0.5
    return MubFamily([
        [[1, 0], [0, 1]],
        [[s, s], [s, -s]],
        [[s, 1j * s], [s, -1j * s]],
    ])


def _gauss_sum_family(d: int, conjugate: bool) -> MubFamily:
    k = np.arange(d)
    sign = -1 if conjugate else 1
    vectors = np.empty((d + 1, d, d), dtype=complex)
    vectors[0] = np.eye(d)
    for mu in range(1, d + 1):
        # Reduce the exponent modulo d before exponentiating.
        exponent = (mu * k[None, :] ** 2 + k[:, None] * k[None, :]) % d
        vectors[mu] = np.exp(sign * 2j * np.pi * exponent / d) / np.sqrt(d)
    return MubFamily(vectors)


@functools.lru_cache(maxsize=None)
def mub_family(d: int, conjugate: bool = False) -> MubFamily:
    """Complete MUB family for ``d = 2``, ``d = 4`` or an odd prime ``d``.

    Basis 0 is always the standard basis. For an odd prime ``d`` basis
    ``mu`` has amplitudes ``<k|Psi^mu_j> = w^(mu k^2 + j k) / sqrt(d)`` with
    ``w = exp(2 pi i / d)``; ``conjugate=True`` uses ``w`` conjugated.
    ``d = 2`` gives the Pauli eigenbases (Z, X, Y), ``d = 4`` the tabulated
    family of :func:`d4_table`.
    """
    if d == 2:
        return _qubit_family()
    if d == 4:
        return d4_table()
    if d > 2 and is_prime(d):
        return _gauss_sum_family(d, conjugate)
    raise UnsupportedDimensionError(
        f"No MUB construction for d={d}: supported are d=2, d=4 and odd "
        f"primes.")


def verify_mub(family: MubFamily, tol: float = MUB_TOLERANCE) -> MubCertificate:
    """Certify the MUB overlap conditions.

    ``|<Psi^mu_i|Psi^nu_j>|^2`` must be ``delta_ij`` within a basis and
    ``1/d`` across bases, up to ``tol``.
    """
    if tol <= 0:
        raise ConfigurationError(f"Tolerance must be positive, got {tol}.")
    d = family.dim
    labels = np.repeat(np.arange(d + 1), d)
    same_basis = labels[:, None] == labels[None, :]
    expected = np.where(same_basis, np.eye((d + 1) * d), 1.0 / d)
    deviation = np.abs(family.overlaps() - expected)
    deviation = np.nan_to_num(deviation, nan=np.inf)
    row, column = np.unravel_index(np.argmax(deviation), deviation.shape)
    max_deviation = float(deviation[row, column])
    worst_pair = ((int(row // d), int(row % d) + 1),
                  (int(column // d), int(column % d) + 1))
    return MubCertificate(max_deviation <= tol, max_deviation, worst_pair, tol)


def selection(family: MubFamily, choice: Sequence[Tuple[int, int]]) -> List[Ket]:
    """Kets ``|Psi^mu_j>`` for 0-based ``(mu, j)`` pairs."""
    return [family.vector(mu, j) for mu, j in choice]
