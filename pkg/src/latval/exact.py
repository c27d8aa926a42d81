"""Exact scalars, small integer/rational linear algebra, SL_n(Z) elements and
polynomial interpolation.

Rationals are :class:`fractions.Fraction`; plain ``int`` is accepted anywhere a
rational is expected.  Nothing in here ever touches a float.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence

import numpy as np


def as_exact(x) -> int | Fraction:
    """Return ``x`` as an int when integral, else as a Fraction.

    Accepts ints, Fractions and strings like ``"3/4"``.  Floats are rejected.
    """
    if isinstance(x, bool):
        raise TypeError("booleans are not coordinates")
    if isinstance(x, int):
        return x
    if isinstance(x, float):
        raise TypeError(f"refusing float {x!r}; use Fraction or 'p/q' strings")
    f = x if isinstance(x, Fraction) else Fraction(x)
    return f.numerator if f.denominator == 1 else f


def fmt(x) -> str:
    """Serialize a rational as ``"p/q"`` (or ``"p"`` when integral)."""
    return str(Fraction(x))


def parse(s) -> int | Fraction:
    return as_exact(Fraction(s) if isinstance(s, str) else s)


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def vec_add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(t, u):
    return tuple(as_exact(t * a) for a in u)


def primitive(v: Sequence[int]) -> tuple[int, ...]:
    """Divide an integer vector by the gcd of its entries."""
    g = reduce(gcd, v, 0)
    if g == 0:
        return tuple(v)
    return tuple(a // g for a in v)


def integer_multiple(v: Sequence) -> tuple[int, ...]:
    """Smallest positive rescaling of a rational vector to a primitive integer vector."""
    den = reduce(lcm, (Fraction(a).denominator for a in v), 1)
    return primitive([int(Fraction(a) * den) for a in v])


# --------------------------------------------------------------------------
# determinants and elimination


def det(m: Sequence[Sequence]) -> int | Fraction:
    """Exact determinant.

    Integer matrices go through fraction-free Bareiss elimination, anything
    with a Fraction entry through ordinary Gaussian elimination.
    """
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("det of a non-square matrix")
    if n == 0:
        return 1
    if all(isinstance(x, int) for row in m for x in row):
        return _bareiss(m)
    a = [[Fraction(x) for x in row] for row in m]
    sign = 1
    result = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c] != 0), None)
        if p is None:
            return 0
        if p != c:
            a[c], a[p] = a[p], a[c]
            sign = -sign
        piv = a[c][c]
        result *= piv
        for r in range(c + 1, n):
            f = a[r][c] / piv
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return as_exact(sign * result)


def _bareiss(m):
    a = [list(row) for row in m]
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            p = next((r for r in range(k + 1, n) if a[r][k] != 0), None)
            if p is None:
                return 0
            a[k], a[p] = a[p], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns (nonzero rows, pivot columns)."""
    a = [[Fraction(x) for x in row] for row in rows]
    if not a:
        return [], []
    ncols = len(a[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        a[r] = [x / piv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[tuple[int, ...]]:
    """Primitive integer basis of {x : rows . x = 0}."""
    red, piv = rref(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, p in zip(red, piv):
            x[p] = -row[f]
        basis.append(integer_multiple(x))
    return basis


def solve_linear(a: Sequence[Sequence], b: Sequence) -> list[int | Fraction] | None:
    """Solve ``a x = b`` exactly for square ``a``; ``None`` when ``a`` is singular."""
    n = len(a)
    if any(len(row) != n for row in a) or len(b) != n:
        raise ValueError("solve_linear needs a square system")
    aug = [list(row) + [rhs] for row, rhs in zip(a, b)]
    red, piv = rref(aug)
    if piv[:n] != list(range(n)) or len(piv) > n:
        return None
    return [as_exact(red[i][n]) for i in range(n)]


def cross(vectors: Sequence[Sequence]) -> tuple:
    """Generalized cross product of n-1 vectors in R^n (cofactor vector).

    The result is orthogonal to every input and its length is the
    (n-1)-volume of the parallelotope they span.
    """
    k = len(vectors)
    n = k + 1
    if any(len(v) != n for v in vectors):
        raise ValueError("cross needs n-1 vectors of length n")
    out = []
    for i in range(n):
        minor = [[v[j] for j in range(n) if j != i] for v in vectors]
        out.append(as_exact((-1) ** i * det(minor)))
    return tuple(out)


def matmul(a, b):
    cols = list(zip(*b))
    return tuple(tuple(as_exact(dot(row, col)) for col in cols) for row in a)


def matvec(m, v):
    return tuple(as_exact(dot(row, v)) for row in m)


def transpose(m):
    return tuple(tuple(col) for col in zip(*m))


def identity(n: int) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


# --------------------------------------------------------------------------
# SL_n(Z)


@dataclass(frozen=True)
class UnimodularMap:
    """An element of SL_n(Z) together with its (integer) inverse."""

    matrix: tuple[tuple[int, ...], ...]
    inverse: tuple[tuple[int, ...], ...]

    @classmethod
    def from_matrix(cls, m: Sequence[Sequence[int]]) -> "UnimodularMap":
        m = tuple(tuple(int(x) for x in row) for row in m)
        if det(m) != 1:
            raise ValueError("matrix does not have determinant 1")
        n = len(m)
        red, _ = rref([list(row) + list(e) for row, e in zip(m, identity(n))])
        inv = tuple(tuple(int(x) for x in row[n:]) for row in red)
        return cls(m, inv)

    @classmethod
    def identity(cls, n: int) -> "UnimodularMap":
        e = identity(n)
        return cls(e, e)

    @property
    def n(self) -> int:
        return len(self.matrix)

    def __call__(self, x: Sequence) -> tuple:
        return matvec(self.matrix, x)

    def __matmul__(self, other: "UnimodularMap") -> "UnimodularMap":
        return UnimodularMap(matmul(self.matrix, other.matrix),
                             matmul(other.inverse, self.inverse))

    def inv(self) -> "UnimodularMap":
        return UnimodularMap(self.inverse, self.matrix)

    def inverse_transpose(self) -> "UnimodularMap":
        return UnimodularMap(transpose(self.inverse), transpose(self.matrix))

    def to_json(self) -> list[list[str]]:
        return [[str(x) for x in row] for row in self.matrix]

    @classmethod
    def from_json(cls, data) -> "UnimodularMap":
        return cls.from_matrix([[int(x) for x in row] for row in data])


def inverse_transpose(phi: UnimodularMap) -> UnimodularMap:
    return phi.inverse_transpose()


def rng_stream(seed: int, *key: int) -> np.random.Generator:
    """Counter-based (Philox) generator for the stream ``key`` under ``seed``."""
    ss = np.random.SeedSequence(int(seed), spawn_key=tuple(int(k) for k in key))
    return np.random.Generator(np.random.Philox(ss))


def as_rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return rng_stream(seed)


def random_unimodular(n: int, steps: int = 12, seed=0) -> UnimodularMap:
    """Random element of SL_n(Z) as a product of ``steps`` elementary moves.

    The first move is always a transvection (add m * row j to row i with
    m in {-2,-1,1,2}); later moves are transvections with probability 3/4
    and otherwise a row swap with one row negated.  ``seed`` is an int or a
    numpy Generator.
    """
    if n < 2:
        raise ValueError("random_unimodular needs n >= 2")
    if steps < 1:
        raise ValueError("steps must be >= 1")
    rng = as_rng(seed)
    m = [list(row) for row in identity(n)]
    for step in range(steps):
        i, j = (int(t) for t in rng.choice(n, size=2, replace=False))
        if step == 0 or rng.random() < 0.75:
            mult = int(rng.choice([-2, -1, 1, 2]))
            m[i] = [a + mult * b for a, b in zip(m[i], m[j])]
        else:
            m[i], m[j] = m[j], [-x for x in m[i]]
    return UnimodularMap.from_matrix(m)


# --------------------------------------------------------------------------
# polynomials


class Polynomial:
    """Univariate polynomial with exact rational coefficients (index = degree)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        c = [as_exact(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs: tuple = tuple(c)

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def coefficient(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return as_exact(acc)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        m = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(self.coefficient(i) + other.coefficient(i) for i in range(m))

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return Polynomial(c * other for c in self.coeffs)
        out = [0] * max(len(self.coeffs) + len(other.coeffs) - 1, 0)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, Polynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Polynomial([{', '.join(fmt(c) for c in self.coeffs)}])"


class VectorPolynomial:
    """A vector of polynomials in the same variable, one per coordinate."""

    __slots__ = ("components",)

    def __init__(self, components: Iterable[Polynomial]):
        self.components = tuple(components)

    @property
    def degree(self) -> int:
        return max((p.degree for p in self.components), default=-1)

    def coefficient(self, i: int) -> tuple:
        return tuple(p.coefficient(i) for p in self.components)

    def __call__(self, x) -> tuple:
        return tuple(p(x) for p in self.components)

    def __eq__(self, other) -> bool:
        return isinstance(other, VectorPolynomial) and self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def __repr__(self) -> str:
        return f"VectorPolynomial({list(self.components)!r})"


def lagrange_interpolate(samples: Sequence[tuple]) -> Polynomial:
    """The unique polynomial of degree < len(samples) through ``(k, value)`` pairs."""
    xs = [as_exact(k) for k, _ in samples]
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation abscissae must be pairwise distinct")
    total = Polynomial()
    for i, (xi, (_, yi)) in enumerate(zip(xs, samples)):
        if yi == 0:
            continue
        basis = Polynomial([1])
        denom = 1
        for j, xj in enumerate(xs):
            if j != i:
                basis = basis * Polynomial([-xj, 1])
                denom *= xi - xj
        total = total + basis * (Fraction(yi) / denom)
    return total
