import sys
import timeit

import numpy as np

from meanking.linalg import hermitian_eigenvalues


if __name__ == "__main__":
    d = int(sys.argv[1]) if len(sys.argv) > 1 else 16
    rng = np.random.default_rng(0)
    z = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    matrix = z @ z.conj().T
    jacobi = timeit.timeit(lambda: hermitian_eigenvalues(matrix), number=100)
    lapack = timeit.timeit(lambda: np.linalg.eigvalsh(matrix), number=100)
    print(f"d={d} jacobi: {jacobi * 10:.3f}ms lapack: {lapack * 10:.3f}ms")
