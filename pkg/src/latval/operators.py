"""Minkowski valuations on lattice polytopes: difference body, Z_{a,b},
projection body, the planar rotated family, and homogeneous parts.

Two deliberately broken operators are included as negative controls for the
verification suites; they are never used by the real ones.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .ehrhart import discrete_steiner
from .exact import Polynomial, as_exact, fmt, integer_multiple, lagrange_interpolate, parse
from .polytope import (Polytope, centroid, facet_area_vectors, hyperplane_area_vector,
                       minkowski_sum, negate, origin, scale, support, translate)


def difference_body(P: Polytope) -> Polytope:
    """P - P."""
    return minkowski_sum(P, negate(P))


def _nonneg(*params):
    for t in params:
        if as_exact(t) < 0:
            raise ValueError(f"operator parameters must be nonnegative, got {fmt(t)}")


def _z_ab_with_center(P: Polytope, a, b, s) -> Polytope:
    a, b = as_exact(a), as_exact(b)
    neg_s = tuple(-x for x in s)
    first = scale(translate(P, neg_s), a)
    second = scale(translate(negate(P), s), b)
    return minkowski_sum(first, second)


def z_ab(P: Polytope, a, b) -> Polytope:
    """a (P - dst P) + b (-P + dst P)."""
    _nonneg(a, b)
    return _z_ab_with_center(P, a, b, discrete_steiner(P))


def zonotope(generators: Sequence[Sequence], n: int) -> Polytope:
    """Sum of the segments [-g, g]; parallel generators are merged first."""
    merged: dict[tuple, Fraction] = {}
    for g in generators:
        if all(x == 0 for x in g):
            continue
        d = integer_multiple(g)
        k = next(i for i, x in enumerate(d) if x != 0)
        if d[k] < 0:
            d = tuple(-x for x in d)
        t = abs(Fraction(g[k]) / d[k])
        merged[d] = merged.get(d, Fraction(0)) + t
    Z = origin(n)
    for d, t in sorted(merged.items()):
        seg = Polytope._trusted([tuple(as_exact(t * x) for x in d),
                                 tuple(as_exact(-t * x) for x in d)], n)
        Z = minkowski_sum(Z, seg)
    return Z


def projection_generators(P: Polytope) -> list[tuple]:
    """Generators g with Pi P = sum of [-g, g]."""
    n = P.n
    if P.dim == n:
        return [tuple(as_exact(Fraction(x, 2)) for x in z) for z in facet_area_vectors(P)]
    if P.dim == n - 1:
        return [hyperplane_area_vector(P)]
    return []


def projection_body(P: Polytope) -> Polytope:
    """Pi P: half the sum of [-z_F, z_F] over facet area vectors z_F.

    For dim P = n-1 this is [-|P| w, |P| w] with w a unit normal of aff P,
    and {o} for dim P <= n-2.
    """
    return zonotope(projection_generators(P), P.n)


def rotate90(P: Polytope) -> Polytope:
    """Rotation by pi/2 in the plane: (x, y) -> (-y, x)."""
    if P.n != 2:
        raise ValueError("rotate90 is only defined in the plane")
    return Polytope._trusted([(-y, x) for x, y in P.vertices], 2)


def contra_z_ab_2d(P: Polytope, a, b) -> Polytope:
    """a rho(P - dst P) + b rho(-P + dst P) with rho the quarter turn."""
    if P.n != 2:
        raise ValueError("contra_z_ab_2d is only defined in the plane")
    return rotate90(z_ab(P, a, b))


# -- negative controls -------------------------------------------------------------


def z_ab_centroid(P: Polytope, a, b) -> Polytope:
    """Z_{a,b} with the centroid in place of dst (not a valuation unless a == b)."""
    _nonneg(a, b)
    return _z_ab_with_center(P, a, b, centroid(P))


def projection_body_flipped(P: Polytope) -> Polytope:
    """sum [o, z_F] with the first facet's area vector negated.

    Unflipped, sum [o, z_F] equals Pi P because the area vectors sum to o; the
    flip translates it by -z_F for a facet singled out by its position in the
    facet order, which breaks contravariance.
    """
    n = P.n
    if P.dim < n:
        return projection_body(P)
    zs = facet_area_vectors(P)
    zs[0] = tuple(-x for x in zs[0])
    out = origin(n)
    for z in zs:
        out = minkowski_sum(out, Polytope._trusted([(0,) * n, z], n))
    return out


# -- operator specifications ---------------------------------------------------------


EQUIVARIANT = "equivariant"
CONTRAVARIANT = "contravariant"

_KINDS = {
    "difference_scaled": EQUIVARIANT,
    "z_ab": EQUIVARIANT,
    "projection_scaled": CONTRAVARIANT,
    "rot_z_ab_2d": CONTRAVARIANT,
    "zero": EQUIVARIANT,
    "z_ab_centroid": EQUIVARIANT,
    "projection_flipped": CONTRAVARIANT,
}
NEGATIVE_CONTROLS = ("z_ab_centroid", "projection_flipped")


@dataclass(frozen=True)
class OperatorSpec:
    kind: str
    a: Fraction | int = 0
    b: Fraction | int = 0
    c: Fraction | int = 0

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown operator kind {self.kind!r}")
        for name in ("a", "b", "c"):
            object.__setattr__(self, name, as_exact(getattr(self, name)))
        _nonneg(self.a, self.b, self.c)

    @property
    def variance(self) -> str:
        """``"equivariant"`` or ``"contravariant"``; ``zero`` counts as both."""
        return _KINDS[self.kind]

    @property
    def planar_only(self) -> bool:
        return self.kind == "rot_z_ab_2d"

    def __call__(self, P: Polytope) -> Polytope:
        k = self.kind
        if k == "zero":
            return origin(P.n)
        if k == "difference_scaled":
            return scale(difference_body(P), self.c)
        if k == "z_ab":
            return z_ab(P, self.a, self.b)
        if k == "projection_scaled":
            return scale(projection_body(P), self.c)
        if k == "rot_z_ab_2d":
            return contra_z_ab_2d(P, self.a, self.b)
        if k == "z_ab_centroid":
            return z_ab_centroid(P, self.a, self.b)
        if k == "projection_flipped":
            return scale(projection_body_flipped(P), self.c)
        raise AssertionError(k)

    def __str__(self) -> str:
        if self.kind in ("z_ab", "rot_z_ab_2d", "z_ab_centroid"):
            return f"{self.kind}(a={fmt(self.a)}, b={fmt(self.b)})"
        if self.kind == "zero":
            return "zero"
        return f"{self.kind}(c={fmt(self.c)})"

    def to_json(self) -> dict:
        out = {"kind": self.kind}
        if self.kind in ("z_ab", "rot_z_ab_2d", "z_ab_centroid"):
            out.update(a=fmt(self.a), b=fmt(self.b))
        elif self.kind != "zero":
            out["c"] = fmt(self.c)
        return out

    @classmethod
    def from_json(cls, data: dict) -> "OperatorSpec":
        return cls(data["kind"], *(parse(data.get(k, "0")) for k in ("a", "b", "c")))


def homogeneous_part(op, P: Polytope, v: Sequence, kmax: int | None = None
                     ) -> tuple[Polynomial, int | Fraction]:
    """Polynomial k -> h(op(kP), v) and its degree-n coefficient.

    Fitted on k = 1..n+1 and checked on k = n+2..max(kmax, n+2).
    """
    n = P.n
    kmax = n + 2 if kmax is None else kmax
    if kmax < n + 1:
        raise ValueError("kmax must be at least n+1")
    hk = {k: support(op(scale(P, k)), v) for k in range(1, max(kmax, n + 2) + 1)}
    poly = lagrange_interpolate([(k, hk[k]) for k in range(1, n + 2)])
    for k in range(n + 2, max(kmax, n + 2) + 1):
        if poly(k) != hk[k]:
            raise ArithmeticError(f"h(Z(kP), v) is not a polynomial of degree <= {n} "
                                  f"(residual at k={k})")
    return poly, poly.coefficient(n)
