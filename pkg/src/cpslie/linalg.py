"""Exact rational linear algebra on numpy object arrays.

Every array handled here has ``dtype=object`` and holds
:class:`fractions.Fraction` entries.  Nothing is ever rounded, so equality
tests are exact.  Matrices act on column vectors: ``m[:, j]`` is the image of
the ``j``-th basis vector.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "CirclePoint",
    "DimensionMismatch",
    "SingularMatrix",
    "Subspace",
    "circle_point",
    "compose_bilinear",
    "compose_bilinear_sum",
    "contract",
    "eigenspace",
    "eye",
    "format_rational",
    "format_vector",
    "inverse",
    "is_zero",
    "kernel",
    "matmul",
    "parse_rational",
    "qarray",
    "rank",
    "rref",
    "solve",
    "subspace_intersect",
    "subspace_sum",
    "contains",
    "zeros",
]


class DimensionMismatch(ValueError):
    pass


class SingularMatrix(ValueError):
    pass


# --------------------------------------------------------------------------
# scalars


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` (or pass through ints and Fractions)."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, (int, np.integer)) and not isinstance(text, bool):
        return Fraction(int(text))
    if isinstance(text, str):
        s = text.strip()
        if not s or any(ch.isspace() for ch in s) or "." in s or "e" in s.lower():
            raise ValueError(f"not a rational literal: {text!r}")
        return Fraction(s)
    raise TypeError(f"cannot interpret {text!r} as an exact rational")


def format_rational(q) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


# --------------------------------------------------------------------------
# arrays


_to_fraction = np.frompyfunc(parse_rational, 1, 1)


def qarray(data) -> np.ndarray:
    """Build an object array of Fractions from nested sequences."""
    arr = np.array(data, dtype=object)
    if arr.size == 0:
        return arr
    return _to_fraction(arr).astype(object)


def zeros(*shape: int) -> np.ndarray:
    out = np.empty(shape, dtype=object)
    out.fill(Fraction(0))
    return out


def eye(n: int) -> np.ndarray:
    out = zeros(n, n)
    for i in range(n):
        out[i, i] = Fraction(1)
    return out


def is_zero(arr) -> bool:
    return all(x == 0 for x in np.asarray(arr, dtype=object).flat)


def _common_denominator(arr: np.ndarray) -> int:
    dens = {x.denominator for x in arr.flat if x}
    return reduce(math.lcm, dens, 1)


def _scaled(arr: np.ndarray, den: int) -> np.ndarray:
    out = np.empty(arr.shape, dtype=object)
    flat = out.reshape(-1)
    for idx, x in enumerate(arr.flat):
        flat[idx] = x.numerator * (den // x.denominator)
    return out


def _to_ints(arr: np.ndarray) -> tuple[np.ndarray, int]:
    den = _common_denominator(arr)
    return _scaled(arr, den), den


def _from_ints(ints, den: int) -> np.ndarray:
    """Fraction array ``ints / den``; equal values share one Fraction object."""
    out = np.empty(np.shape(ints), dtype=object)
    flat = out.reshape(-1)
    cache: dict[int, Fraction] = {}
    for idx, x in enumerate(np.asarray(ints, dtype=object).flat):
        q = cache.get(x)
        if q is None:
            q = cache[x] = Fraction(int(x), den)
        flat[idx] = q
    return out


def contract(a: np.ndarray, b: np.ndarray, axes=1) -> np.ndarray:
    """Exact ``np.tensordot`` for Fraction arrays.

    Both operands are cleared of denominators first so the inner loop runs on
    Python ints, which is far cheaper than Fraction arithmetic.
    """
    ia, da = _to_ints(a)
    ib, db = _to_ints(b)
    return _from_ints(np.tensordot(ia, ib, axes), da * db)


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return contract(a, b, ([a.ndim - 1], [0]))


def _compose_ints(t, den, out=None, left=None, right=None):
    if left is not None:
        il, dl = _to_ints(left)
        t, den = np.moveaxis(np.tensordot(t, il, ([0], [0])), -1, 0), den * dl
    if right is not None:
        ir, dr = _to_ints(right)
        t, den = np.moveaxis(np.tensordot(t, ir, ([1], [0])), -1, 1), den * dr
    if out is not None:
        io, do = _to_ints(out)
        t, den = np.tensordot(t, io, ([2], [1])), den * do
    return t, den


def compose_bilinear(t: np.ndarray, out=None, left=None, right=None) -> np.ndarray:
    """Tensor of ``(x, y) -> out(t(left x, right y))``.

    ``t[i, j, k]`` is the ``k``-th coordinate of ``t(e_i, e_j)``; ``None``
    stands for the identity map.
    """
    return _from_ints(*_compose_ints(*_to_ints(t), out=out, left=left, right=right))


def compose_bilinear_sum(t: np.ndarray, terms) -> np.ndarray:
    """``sum(sign * compose_bilinear(t, out, left, right))`` over ``terms``.

    Each term is ``(sign, out, left, right)``; everything stays in integers
    until the end, which matters for the Nijenhuis-type defects.
    """
    it, dt = _to_ints(t)
    parts = [(sign, *_compose_ints(it, dt, out=o, left=l, right=r)) for sign, o, l, r in terms]
    den = reduce(math.lcm, (d for _, _, d in parts), 1)
    total = sum(sign * (den // d) * x for sign, x, d in parts)
    return _from_ints(total, den)


# --------------------------------------------------------------------------
# elimination


def rref(m) -> tuple[np.ndarray, int]:
    """Reduced row-echelon form and rank."""
    r, pivots = _rref_pivots(m)
    return r, len(pivots)


def _rref_pivots(m) -> tuple[np.ndarray, list[int]]:
    a = qarray(m).copy()
    if a.ndim != 2:
        raise DimensionMismatch("rref expects a matrix")
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for col in range(cols):
        if r == rows:
            break
        pivot = next((i for i in range(r, rows) if a[i, col] != 0), None)
        if pivot is None:
            continue
        if pivot != r:
            a[[r, pivot]] = a[[pivot, r]]
        p = a[r, col]
        if p != 1:
            a[r] = a[r] / p
        for i in range(rows):
            if i != r and a[i, col] != 0:
                a[i] = a[i] - a[i, col] * a[r]
        pivots.append(col)
        r += 1
    return a, pivots


def rank(m) -> int:
    return rref(m)[1]


def inverse(m) -> np.ndarray:
    a = qarray(m)
    n, k = a.shape
    if n != k:
        raise DimensionMismatch("inverse of a non-square matrix")
    r, pivots = _rref_pivots(np.hstack([a, eye(n)]))
    if pivots[:n] != list(range(n)):
        raise SingularMatrix("matrix is singular")
    return r[:, n:]


def solve(m, b) -> np.ndarray | None:
    """One solution of ``m x = b`` or ``None`` if the system is inconsistent."""
    a = qarray(m)
    rhs = qarray(b)
    vec = rhs.ndim == 1
    if vec:
        rhs = rhs.reshape(-1, 1)
    rows, cols = a.shape
    r, pivots = _rref_pivots(np.hstack([a, rhs]))
    if any(p >= cols for p in pivots):
        return None
    x = zeros(cols, rhs.shape[1])
    for row, p in enumerate(pivots):
        x[p] = r[row, cols:]
    return x[:, 0] if vec else x


# --------------------------------------------------------------------------
# subspaces


@dataclass(frozen=True, eq=False)
class Subspace:
    """Linear subspace of Q^n stored as the rows of a canonical RREF matrix."""

    ambient_dim: int
    basis: np.ndarray

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int | None = None) -> "Subspace":
        vecs = [qarray(v) for v in vectors]
        if ambient_dim is None:
            if not vecs:
                raise ValueError("ambient dimension needed for an empty span")
            ambient_dim = len(vecs[0])
        if any(len(v) != ambient_dim for v in vecs):
            raise DimensionMismatch("vectors of different lengths")
        if not vecs:
            return cls(ambient_dim, zeros(0, ambient_dim))
        r, k = rref(np.vstack(vecs))
        basis = r[:k]
        basis.flags.writeable = False
        return cls(ambient_dim, basis)

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls.span([], n)

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls.span(list(eye(n)), n)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def vectors(self) -> list[np.ndarray]:
        return [row.copy() for row in self.basis]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.ambient_dim == other.ambient_dim
            and self.basis.shape == other.basis.shape
            and all(x == y for x, y in zip(self.basis.flat, other.basis.flat))
        )

    def __hash__(self):
        return hash((self.ambient_dim, tuple(self.basis.flat)))

    def __repr__(self) -> str:
        rows = ["(" + ", ".join(format_rational(x) for x in row) + ")" for row in self.basis]
        return f"Subspace(n={self.ambient_dim}, span{{{', '.join(rows)}}})"

    def __contains__(self, v) -> bool:
        return contains(self, v)

    def __add__(self, other: "Subspace") -> "Subspace":
        return subspace_sum(self, other)

    def __and__(self, other: "Subspace") -> "Subspace":
        return subspace_intersect(self, other)

    def image(self, m) -> "Subspace":
        m = qarray(m)
        return Subspace.span(list(matmul(self.basis, qarray(m).T)), m.shape[0])

    def coordinates(self, v) -> np.ndarray:
        """Coefficients of ``v`` in the stored basis; raises if ``v`` is outside."""
        v = qarray(v)
        if self.dim == 0:
            if not is_zero(v):
                raise ValueError("vector is not in the subspace")
            return zeros(0)
        x = solve(self.basis.T, v)
        if x is None:
            raise ValueError("vector is not in the subspace")
        return x

    def annihilator(self) -> "Subspace":
        """Functionals (as row vectors) vanishing on the subspace."""
        if self.dim == 0:
            return Subspace.full(self.ambient_dim)
        return kernel(self.basis)


def _check_same_ambient(a: Subspace, b: Subspace) -> None:
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch(f"ambient dimensions differ: {a.ambient_dim} vs {b.ambient_dim}")


def kernel(m) -> Subspace:
    """Null space ``{v : m v = 0}``."""
    a = qarray(m)
    rows, cols = a.shape
    r, pivots = _rref_pivots(a)
    free = [c for c in range(cols) if c not in pivots]
    vecs = []
    for f in free:
        v = zeros(cols)
        v[f] = Fraction(1)
        for row, p in enumerate(pivots):
            v[p] = -r[row, f]
        vecs.append(v)
    return Subspace.span(vecs, cols)


def eigenspace(m, lam) -> Subspace:
    a = qarray(m)
    n, k = a.shape
    if n != k:
        raise DimensionMismatch("eigenspace of a non-square matrix")
    return kernel(a - Fraction(lam) * eye(n))


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    _check_same_ambient(a, b)
    return Subspace.span(a.vectors() + b.vectors(), a.ambient_dim)


def subspace_intersect(a: Subspace, b: Subspace) -> Subspace:
    _check_same_ambient(a, b)
    n = a.ambient_dim
    if a.dim == 0 or b.dim == 0:
        return Subspace.zero(n)
    # x = sum alpha_i a_i = sum beta_j b_j
    stacked = np.vstack([a.basis, -b.basis]).T
    ker = kernel(stacked)
    return Subspace.span([row[: a.dim].dot(a.basis) for row in ker.basis], n)


def contains(a: Subspace, v) -> bool:
    v = qarray(v)
    if len(v) != a.ambient_dim:
        raise DimensionMismatch("vector length differs from ambient dimension")
    if is_zero(v):
        return True
    return rank(np.vstack([a.basis, v.reshape(1, -1)])) == a.dim


# --------------------------------------------------------------------------
# rational points of the unit circle


@dataclass(frozen=True)
class CirclePoint:
    """Exact point ``(c, s)`` with ``c**2 + s**2 == 1``."""

    c: Fraction
    s: Fraction

    def __post_init__(self):
        object.__setattr__(self, "c", Fraction(self.c))
        object.__setattr__(self, "s", Fraction(self.s))
        if self.c**2 + self.s**2 != 1:
            raise ValueError(f"({self.c}, {self.s}) is not on the unit circle")

    def double(self) -> "CirclePoint":
        """Point at twice the angle."""
        return CirclePoint(self.c**2 - self.s**2, 2 * self.c * self.s)

    def __str__(self) -> str:
        return f"({format_rational(self.c)}, {format_rational(self.s)})"


def circle_point(t) -> CirclePoint:
    """Rational parametrisation ``((1-t^2)/(1+t^2), 2t/(1+t^2))``."""
    t = parse_rational(t)
    d = 1 + t * t
    return CirclePoint((1 - t * t) / d, 2 * t / d)


ANGLE_ZERO = CirclePoint(1, 0)
ANGLE_HALF_PI = CirclePoint(0, 1)
ANGLE_PI = CirclePoint(-1, 0)
ANGLE_MINUS_HALF_PI = CirclePoint(0, -1)


# --------------------------------------------------------------------------
# display


def format_vector(v, labels: Sequence[str], spaces: bool = True) -> str:
    """Render a coordinate vector as a linear combination of labels."""
    terms = []
    for coeff, label in zip(v, labels):
        coeff = Fraction(coeff)
        if coeff == 0:
            continue
        sign = "-" if coeff < 0 else "+"
        mag = abs(coeff)
        body = label if mag == 1 else f"{format_rational(mag)}{'*' if '/' in format_rational(mag) else ''}{label}"
        terms.append((sign, body))
    if not terms:
        return "0"
    sep = " " if spaces else ""
    out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        out += f"{sep}{sign}{sep}{body}"
    return out
