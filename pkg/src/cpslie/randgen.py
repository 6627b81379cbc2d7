"""Random exact test data: matrices, products, LSAs and complex product structures.

Every generator takes a ``numpy.random.Generator`` so a run is reproducible
from its seed.  Entries are small integers, which keeps Fraction sizes sane.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .lie import LieAlgebra, apply_change_of_basis
from .linalg import compose_bilinear, eye, inverse, is_zero, matmul, qarray, rank, zeros
from .lsa import BilinearProductSpace, aff_construction
from .structures import ComplexProductStructure


def random_matrix(rng: np.random.Generator, rows: int, cols: int | None = None, bound: int = 3) -> np.ndarray:
    cols = rows if cols is None else cols
    return qarray(rng.integers(-bound, bound + 1, size=(rows, cols)).tolist()) if rows and cols else zeros(rows, cols)


def random_invertible(rng: np.random.Generator, n: int, bound: int = 2) -> np.ndarray:
    while True:
        m = random_matrix(rng, n, n, bound)
        if rank(m) == n:
            return m


def random_symmetric(rng: np.random.Generator, n: int, bound: int = 3, nonzero: bool = True) -> np.ndarray:
    while True:
        m = random_matrix(rng, n, n, bound)
        s = m + m.T
        if not nonzero or not is_zero(s):
            return s


def random_product(rng: np.random.Generator, n: int, bound: int = 3, density: float = 0.5) -> np.ndarray:
    """Arbitrary bilinear product tensor; roughly ``density`` of entries nonzero."""
    vals = rng.integers(-bound, bound + 1, size=(n, n, n))
    mask = rng.random((n, n, n)) < density
    return qarray((vals * mask).tolist())


def transport_product(a, p) -> np.ndarray:
    """The product ``a`` written in the basis given by the columns of ``p``."""
    return compose_bilinear(qarray(a), out=inverse(p), left=p, right=p)


# left-symmetric seeds, associative and not; every GL-conjugate of an LSA
# is again an LSA


def _seed(n: int, entries: dict) -> np.ndarray:
    a = zeros(n, n, n)
    for (i, j, k), v in entries.items():
        a[i, j, k] = Fraction(v)
    return a


LSA_SEEDS: dict[int, list[np.ndarray]] = {
    1: [
        _seed(1, {}),
        _seed(1, {(0, 0, 0): 1}),
    ],
    2: [
        _seed(2, {}),
        _seed(2, {(0, 0, 0): 1, (1, 1, 1): 1}),  # R x R
        _seed(2, {(0, 0, 0): 1, (0, 1, 1): 1, (1, 0, 1): 1}),  # R[x]/x^2
        _seed(2, {(0, 0, 1): 1}),  # e1 e1 = e2
        _seed(2, {(0, 1, 1): 1}),  # e1 e2 = e2, the left-regular aff(R) product
        _seed(2, {(0, 0, 0): 2, (0, 1, 1): 1, (1, 1, 0): 1}),  # not associative
        _seed(2, {(0, 0, 0): 2, (0, 1, 1): 1}),  # not associative
        _seed(2, {(1, 0, 0): -1, (1, 1, 1): -1}),  # e2 e1 = -e1, e2 e2 = -e2
    ],
    3: [
        _seed(3, {}),
        _seed(3, {(0, 0, 0): 1, (0, 1, 1): 1, (1, 0, 1): 1, (0, 2, 2): 1, (2, 0, 2): 1, (1, 1, 2): 1}),  # R[x]/x^3
        _seed(3, {(0, 0, 0): 1, (1, 1, 1): 1, (2, 2, 2): 1}),
        _seed(3, {(0, 1, 2): 1}),  # e1 e2 = e3
        _seed(3, {(0, 1, 1): 1, (0, 2, 2): 1}),  # e1 acts as the identity from the left
        _seed(3, {(0, 0, 0): 1, (0, 1, 1): 1, (2, 2, 2): 1}),
    ],
}


def random_lsa(rng: np.random.Generator, n: int) -> np.ndarray:
    """A GL-conjugate of a seed LSA (or a direct sum of smaller ones)."""
    if n >= 2 and rng.random() < 0.3:
        k = int(rng.integers(1, n))
        a = zeros(n, n, n)
        a[:k, :k, :k] = random_lsa(rng, k)
        a[k:, k:, k:] = random_lsa(rng, n - k)
    else:
        seeds = LSA_SEEDS[n]
        a = seeds[int(rng.integers(len(seeds)))]
    return transport_product(a, random_invertible(rng, n))


def random_aff_cps(rng: np.random.Generator, n: int, transport: bool = True) -> ComplexProductStructure:
    """``aff(A)`` for a random LSA ``A`` of dimension ``n``, optionally in a random basis."""
    g, cps = aff_construction(BilinearProductSpace(random_lsa(rng, n)))
    if transport:
        cps = cps.transported(random_invertible(rng, 2 * n))
    return cps


def random_almost_product(rng: np.random.Generator, n: int, plus_dim: int | None = None) -> np.ndarray:
    """``E = P D P^-1`` with ``D = diag(+1.., -1..)``."""
    k = int(rng.integers(0, n + 1)) if plus_dim is None else plus_dim
    d = eye(n)
    for i in range(k, n):
        d[i, i] = Fraction(-1)
    p = random_invertible(rng, n)
    return matmul(matmul(p, d), inverse(p))


def random_algebra_conjugate(rng: np.random.Generator, g: LieAlgebra) -> LieAlgebra:
    return apply_change_of_basis(g, random_invertible(rng, g.dim), labels=[f"f{i + 1}" for i in range(g.dim)])
