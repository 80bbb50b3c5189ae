"""Independent reference computations used by the tests."""

import numpy as np


def triple(x, y, z):
    """(x y* z + z y* x) / 2 on plain matrices."""
    return (x @ y.conj().T @ z + z @ y.conj().T @ x) / 2


def singular_values(m, kind):
    s = np.linalg.svd(m, compute_uv=False)
    if kind == "I":
        return s[: min(m.shape)]
    return s[0::2][: m.shape[0] // 2]


def peirce_dims_type_I(p, q, k):
    return k * k, k * (p - k) + k * (q - k), (p - k) * (q - k)


def tett_kappa(n, d):
    """Length of the bracket filtration predicted by offset bookkeeping.

    h occupies the odd offsets 1, 3, ..., 2d-1 below the diagonal and every
    bracket of two offsets lands on their sum; offset m is reached after j
    steps iff m is a sum of j generators, i.e. j >= ceil(m/(2d-1)) with
    j = m (mod 2).
    """
    best = 0
    for m in range(1, n):
        j = -(-m // (2 * d - 1))
        if (j - m) % 2:
            j += 1
        best = max(best, j)
    return best
