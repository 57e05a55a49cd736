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

import math

from hypothesis import given, settings, strategies as st

from meanking.linalg import (
    Basis,
    ConvergenceError,
    DimensionError,
    Ket,
    NotHermitianError,
    NotNormalizedError,
    NotPositiveError,
    Operator,
    derive_seed,
    haar_random_basis,
    haar_random_ket,
    hermitian_eigenvalues,
    inner_product,
    operator_norm,
    projector,
    projector_sum,
)
from meanking.mub import d4_table

import numpy as np
from numpy.testing import assert_allclose

import pytest

SEEDS = st.integers(min_value=0, max_value=2 ** 63)


def random_psd(rng: np.random.Generator, d: int, rank: int) -> np.ndarray:
    z = rng.standard_normal((d, rank)) + 1j * rng.standard_normal((d, rank))
    matrix = z @ z.conj().T
    return matrix / np.trace(matrix).real


def test_inner_product_standard_basis():
    e1 = Ket([1, 0, 0])
    e2 = Ket([0, 1, 0])
    assert inner_product(e1, e1) == 1
    assert inner_product(e1, e2) == 0


def test_inner_product_d4_table_is_unbiased():
    family = d4_table()
    overlap = inner_product(family.vector(1, 0), family.vector(2, 0))
    assert abs(overlap) == pytest.approx(0.5, abs=1e-15)


def test_inner_product_is_conjugate_linear_in_first_argument():
    a = Ket([1j, 0])
    b = Ket([1, 0])
    assert inner_product(a, b) == -1j


@given(SEEDS, SEEDS)
def test_inner_product_conjugate_symmetry(seed_a, seed_b):
    a = haar_random_ket(5, seed_a)
    b = haar_random_ket(5, seed_b)
    assert inner_product(a, b) == np.conj(inner_product(b, a))


def test_inner_product_dimension_mismatch():
    with pytest.raises(DimensionError) as error:
        inner_product(Ket([1, 0]), Ket([1, 0, 0]))
    error.match("2 != 3")


def test_ket_rejects_non_unit_norm():
    with pytest.raises(NotNormalizedError) as error:
        Ket([1, 1])
    error.match("norm")


def test_ket_normalize():
    ket = Ket([3, 4j], normalize=True)
    assert_allclose(ket.amplitudes, [0.6, 0.8j])


@pytest.mark.parametrize("value", [math.nan, math.inf, complex(0, math.nan)])
def test_ket_rejects_non_finite_amplitudes(value):
    with pytest.raises(NotNormalizedError) as error:
        Ket([value, 0])
    error.match("non-finite")
    with pytest.raises(NotNormalizedError):
        Ket([value, 1], normalize=True)


def test_ket_is_read_only():
    ket = Ket([1, 0])
    with pytest.raises(ValueError):
        ket.amplitudes[0] = 0


def test_ket_with_phase():
    ket = Ket([0, 1]).with_phase(1j)
    assert ket == Ket([0, 1j])
    with pytest.raises(NotNormalizedError):
        ket.with_phase(2)


def test_operator_hermitian_flag_is_checked():
    with pytest.raises(NotHermitianError) as error:
        Operator([[0, 1], [0, 0]], hermitian=True)
    error.match("conjugate transpose")
    assert not Operator([[0, 1], [0, 0]]).hermitian


def test_basis_rejects_non_orthonormal_vectors():
    with pytest.raises(NotNormalizedError) as error:
        Basis([[1, 0], [1, 0]])
    error.match("not orthonormal")


def test_non_finite_entries_are_rejected():
    with pytest.raises(NotNormalizedError):
        Basis([[math.nan, 0], [0, 1]])
    with pytest.raises(NotNormalizedError):
        Operator([[math.inf, 0], [0, 1]])


def test_basis_rows_and_matrix():
    basis = Basis([[0, 1], [1, 0]])
    assert basis[0] == Ket([0, 1])
    assert_allclose(basis.matrix[:, 0], [0, 1])
    assert basis.is_orthonormal()
    assert [k.amplitudes.tolist() for k in basis] == [[0, 1], [1, 0]]


def test_projector_sum_matches_outer_products():
    kets = [haar_random_ket(3, seed) for seed in range(4)]
    expected = sum(np.outer(k.amplitudes, k.amplitudes.conj()) for k in kets)
    assert_allclose(projector_sum(kets).entries, expected, atol=1e-15)
    assert projector(kets[0]).hermitian


def test_operator_norm_identity():
    assert operator_norm(Operator(np.eye(3), hermitian=True)) == \
        pytest.approx(1.0, abs=1e-12)


def test_operator_norm_doubled_projector():
    e1 = Ket([1, 0, 0])
    assert operator_norm(projector_sum([e1, e1])) == \
        pytest.approx(2.0, abs=1e-12)


def test_operator_norm_one_vector_per_d4_basis():
    family = d4_table()
    projectors = projector_sum(family.vector(mu, 0) for mu in range(1, 5))
    norm = operator_norm(projectors)
    assert norm <= 2.5 + 1e-12
    assert norm == pytest.approx(
        np.linalg.eigvalsh(projectors.entries)[-1], abs=1e-10)


@pytest.mark.parametrize("d", range(1, 9))
def test_operator_norm_matches_full_eigensolve(d):
    rng = np.random.default_rng(d)
    for _ in range(20):
        matrix = random_psd(rng, d, rng.integers(1, d + 1))
        assert operator_norm(matrix) == pytest.approx(
            np.linalg.eigvalsh(matrix)[-1], abs=1e-10)


@pytest.mark.parametrize("d", range(1, 9))
def test_hermitian_eigenvalues_full_spectrum(d):
    rng = np.random.default_rng(100 + d)
    z = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    matrix = z + z.conj().T
    assert_allclose(hermitian_eigenvalues(matrix), np.linalg.eigvalsh(matrix),
                    rtol=0, atol=1e-10)


def test_hermitian_eigenvalues_zero_matrix():
    assert_allclose(hermitian_eigenvalues(np.zeros((3, 3))), np.zeros(3))


def test_hermitian_eigenvalues_rejects_non_hermitian():
    with pytest.raises(NotHermitianError):
        hermitian_eigenvalues(np.array([[1, 2], [0, 1]], dtype=complex))


def test_hermitian_eigenvalues_iteration_cap():
    rng = np.random.default_rng(3)
    z = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    with pytest.raises(ConvergenceError) as error:
        hermitian_eigenvalues(z + z.conj().T, max_iterations=1)
    error.match("did not converge")
    assert error.value.residual > 0


def test_operator_norm_rejects_indefinite():
    with pytest.raises(NotPositiveError) as error:
        operator_norm(np.diag([1.0, -0.5]))
    error.match("not positive semidefinite")


def test_haar_random_basis_is_deterministic():
    assert haar_random_basis(3, 42) == haar_random_basis(3, 42)
    assert haar_random_basis(3, 42) != haar_random_basis(3, 43)


@given(SEEDS, st.integers(min_value=2, max_value=8))
@settings(deadline=None)
def test_haar_random_basis_is_orthonormal(seed, d):
    basis = haar_random_basis(d, seed)
    assert_allclose(basis.gram(), np.eye(d), atol=1e-10)


def test_haar_random_basis_seed_7():
    assert_allclose(haar_random_basis(4, 7).gram(), np.eye(4), atol=1e-10)


def test_haar_random_basis_rejects_small_dimension():
    with pytest.raises(DimensionError) as error:
        haar_random_basis(1, 0)
    error.match("at least 2")


@pytest.mark.parametrize("d", [2, 3, 4])
def test_haar_random_basis_first_moment(d):
    samples = np.array([abs(haar_random_basis(d, seed).vectors[0, 0]) ** 2
                        for seed in range(10_000)])
    standard_error = samples.std() / np.sqrt(samples.size)
    assert abs(samples.mean() - 1 / d) < 5 * standard_error


def test_derive_seed():
    seed = derive_seed(42, 0)
    assert seed == derive_seed(42, 0)
    assert 0 <= seed < 2 ** 64
    assert len({derive_seed(42, index) for index in range(1000)}) == 1000
    assert derive_seed(42, 0) != derive_seed(43, 0)


@given(SEEDS, st.integers(min_value=1, max_value=8))
def test_haar_random_ket_is_unit(seed, d):
    ket = haar_random_ket(d, seed)
    assert ket.dim == d
    assert np.linalg.norm(ket.amplitudes) == pytest.approx(1.0, abs=1e-12)
