"""Lattice point counts L, discrete moment vectors l, their dilation
polynomials and the discrete Steiner point.

Lattice points are enumerated fiber by fiber: for each j the projection of P
onto the first j coordinates is described by inequalities, and the range of
x_j over a fixed prefix is read off those with a nonzero x_j coefficient.
Dilating P only rescales the right-hand sides, so the description is computed
once per polytope.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import floor
from typing import Sequence

from . import _kernels
from .exact import (Polynomial, VectorPolynomial, as_exact, fmt, lagrange_interpolate)
from .polytope import Polytope, lattice_box, scale


@lru_cache(maxsize=8192)
def _fiber_levels(P: Polytope) -> tuple[tuple[tuple[tuple[int, ...], Fraction], ...], ...]:
    levels = []
    n = P.n
    for j in range(1, n + 1):
        proj = P if j == n else Polytope({v[:j] for v in P.vertices})
        hs = proj.halfspaces
        rows = [(a, Fraction(b)) for a, b in hs.inequalities if a[j - 1] != 0]
        for a, b in hs.equations:
            if a[j - 1] != 0:
                rows.append((a, Fraction(b)))
                rows.append((tuple(-x for x in a), -Fraction(b)))
        levels.append(tuple(rows))
    return tuple(levels)


def _rows_for(P: Polytope, k: int):
    n = P.n
    rows, starts = [], [0]
    for level in _fiber_levels(P):
        for a, b in level:
            rows.append(list(a) + [0] * (n - len(a)) + [floor(k * b)])
        starts.append(len(rows))
    return rows, starts


@lru_cache(maxsize=65536)
def _count_moment(P: Polytope, k: int) -> tuple[int, tuple[int, ...]]:
    if k == 0:
        return 1, (0,) * P.n
    rows, starts = _rows_for(P, k)
    box = [(k * lo - 1, k * hi + 1) for lo, hi in lattice_box(P)]
    cnt, mom = _kernels.count_moment(rows, starts, P.n, box)
    return cnt, tuple(mom)


def enumerate_lattice_points(P: Polytope | None) -> list[tuple[int, ...]]:
    """P cap Z^n in lexicographic order."""
    if P is None:
        return []
    rows, starts = _rows_for(P, 1)
    return _kernels.lattice_points(rows, starts, P.n)


def count(P: Polytope | None) -> int:
    """L(P), the number of lattice points."""
    return 0 if P is None else _count_moment(P, 1)[0]


def discrete_moment(P: Polytope | None, n: int | None = None) -> tuple[int, ...]:
    """l(P), the sum of the lattice points of P."""
    if P is None:
        if n is None:
            raise ValueError("ambient dimension needed for the empty set")
        return (0,) * n
    return _count_moment(P, 1)[1]


def dilate_count(P: Polytope, k: int) -> int:
    """L(kP) for integer k >= 0."""
    return _count_moment(P, k)[0]


def dilate_moment(P: Polytope, k: int) -> tuple[int, ...]:
    """l(kP) for integer k >= 0."""
    return _count_moment(P, k)[1]


@dataclass(frozen=True)
class EhrhartExpansion:
    polytope: Polytope
    polynomial: Polynomial

    @property
    def coefficients(self) -> list:
        """L_0(P), ..., L_n(P)."""
        return [self.polynomial.coefficient(i) for i in range(self.polytope.n + 1)]

    def __call__(self, k):
        return self.polynomial(k)

    def to_json(self) -> dict:
        return {"L": [fmt(c) for c in self.coefficients]}


@dataclass(frozen=True)
class MomentExpansion:
    polytope: Polytope
    polynomial: VectorPolynomial

    @property
    def coefficients(self) -> list[tuple]:
        """l_0(P) (always o), l_1(P), ..., l_{n+1}(P)."""
        return [self.polynomial.coefficient(i) for i in range(self.polytope.n + 2)]

    def __call__(self, k) -> tuple:
        return self.polynomial(k)

    def to_json(self) -> dict:
        return {"ell": [[fmt(x) for x in c] for c in self.coefficients]}


def _need_lattice(P: Polytope):
    # rational polytopes have quasi-polynomial counts; interpolation would lie
    if not P.is_lattice:
        raise ValueError("expansions are defined for lattice polytopes only")


@lru_cache(maxsize=8192)
def ehrhart(P: Polytope) -> EhrhartExpansion:
    """Ehrhart polynomial k -> L(kP), interpolated from k = 0..n."""
    _need_lattice(P)
    poly = lagrange_interpolate([(k, dilate_count(P, k)) for k in range(P.n + 1)])
    if poly.degree != P.dim:
        raise ArithmeticError(f"Ehrhart polynomial of degree {poly.degree} for a "
                              f"{P.dim}-dimensional polytope")
    return EhrhartExpansion(P, poly)


@lru_cache(maxsize=8192)
def moment_expansion(P: Polytope) -> MomentExpansion:
    """Polynomial k -> l(kP), interpolated from k = 0..n+1."""
    _need_lattice(P)
    samples = [dilate_moment(P, k) for k in range(P.n + 2)]
    comps = [lagrange_interpolate([(k, s[j]) for k, s in enumerate(samples)])
             for j in range(P.n)]
    vp = VectorPolynomial(comps)
    if any(c != 0 for c in vp.coefficient(0)):
        raise ArithmeticError("moment polynomial has a nonzero constant term")
    if vp.degree > P.dim + 1:
        raise ArithmeticError("moment polynomial degree exceeds dim(P) + 1")
    return MomentExpansion(P, vp)


def discrete_steiner(P: Polytope) -> tuple:
    """dst(P): the linear coefficient of k -> l(kP)."""
    return moment_expansion(P).polynomial.coefficient(1)


dst = discrete_steiner


def _interpolate_grid(values: Sequence[Sequence], d: int) -> list[list]:
    """Coefficients c[i][j] of the polynomial of degree <= d in each variable
    through values[k][l] at (k, l) in {0..d}^2."""
    by_k = [lagrange_interpolate([(l, values[k][l]) for l in range(d + 1)])
            for k in range(d + 1)]
    out = []
    for j in range(d + 1):
        p = lagrange_interpolate([(k, by_k[k].coefficient(j)) for k in range(d + 1)])
        out.append([p.coefficient(i) for i in range(d + 1)])
    # out[j][i] is the coefficient of k^i l^j
    return [[out[j][i] for j in range(d + 1)] for i in range(d + 1)]


def bivariate_count_check(P: Polytope, Q: Polytope, degree_bound: int | None = None) -> bool:
    """Fit k, l -> L(kP + lQ) on {0..d}^2 and test total degree and three
    out-of-grid values."""
    d = P.n if degree_bound is None else degree_bound
    if d < P.n:
        raise ValueError("degree_bound must be at least n")

    def L(k, l):
        return count(scale(P, k) + scale(Q, l))

    grid = [[L(k, l) for l in range(d + 1)] for k in range(d + 1)]
    c = _interpolate_grid(grid, d)
    if any(c[i][j] != 0 for i in range(d + 1) for j in range(d + 1) if i + j > d):
        return False

    def ev(k, l):
        return as_exact(sum(c[i][j] * k ** i * l ** j
                            for i in range(d + 1) for j in range(d + 1)))

    return all(ev(k, l) == L(k, l) for k, l in ((d + 1, 1), (1, d + 1), (d + 1, d + 1)))


def l1_additivity_check(P: Polytope, Q: Polytope) -> bool:
    """L_1(P + Q) == L_1(P) + L_1(Q)."""
    return (ehrhart(P + Q).polynomial.coefficient(1)
            == ehrhart(P).polynomial.coefficient(1) + ehrhart(Q).polynomial.coefficient(1))
