"""Exact V-polytopes: canonical vertex sets, support functions, faces,
Minkowski sums, H-representations, intersections, volumes and centroids.

A :class:`Polytope` stores only its extreme points, sorted lexicographically,
with coordinates as ``int`` (or ``Fraction`` when not integral).  The empty
set is represented by ``None``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, reduce
from itertools import combinations
from math import factorial, gcd
from typing import Iterable, Sequence

from ._hull import Hull, convex_hull
from .exact import (UnimodularMap, as_exact, cross, det, dot, fmt, integer_multiple,
                    nullspace, parse, rank, rref, solve_linear, vec_add, vec_sub)


class UnboundedError(ValueError):
    """A halfspace system does not describe a bounded set."""


@dataclass(frozen=True)
class HalfspaceSystem:
    """``normal . x <= offset`` for every inequality, ``normal . x == offset`` for
    every equation.  Normals are primitive integer vectors."""

    n: int
    inequalities: tuple[tuple[tuple[int, ...], int | Fraction], ...]
    equations: tuple[tuple[tuple[int, ...], int | Fraction], ...] = ()

    def contains(self, x: Sequence) -> bool:
        return (all(dot(a, x) <= b for a, b in self.inequalities)
                and all(dot(a, x) == b for a, b in self.equations))

    def strictly_inside(self, x: Sequence) -> bool:
        return (all(dot(a, x) < b for a, b in self.inequalities)
                and all(dot(a, x) == b for a, b in self.equations))

    def __or__(self, other: "HalfspaceSystem") -> "HalfspaceSystem":
        return HalfspaceSystem(self.n, self.inequalities + other.inequalities,
                               self.equations + other.equations)

    def to_json(self) -> dict:
        def rows(rs):
            return [{"normal": [fmt(x) for x in a], "offset": fmt(b)} for a, b in rs]
        return {"dim": self.n, "inequalities": rows(self.inequalities),
                "equations": rows(self.equations)}


def _point(p) -> tuple:
    return tuple(as_exact(x) for x in p)


class Polytope:
    """Convex hull of finitely many rational points.

    ``Polytope(points)`` canonicalizes: duplicates and non-extreme points are
    dropped.  Supports ``P + Q`` (Minkowski sum), ``-P``, ``t * P`` and
    ``P + z`` / ``P - z`` for a translation vector ``z``.
    """

    def __init__(self, points: Iterable[Sequence]):
        pts = [_point(p) for p in points]
        if not pts:
            raise ValueError("a polytope needs at least one point")
        n = len(pts[0])
        if any(len(p) != n for p in pts):
            raise ValueError("points of different lengths")
        h = convex_hull(pts)
        self.vertices: tuple[tuple, ...] = tuple(sorted(pts[i] for i in h.vertices))
        self.n: int = n

    @classmethod
    def _trusted(cls, vertices: Iterable[tuple], n: int | None = None) -> "Polytope":
        """Build from points already known to be extreme (no hull computation)."""
        self = object.__new__(cls)
        self.vertices = tuple(sorted(set(vertices)))
        self.n = len(self.vertices[0]) if n is None else n
        return self

    # -- basic protocol -----------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, Polytope) and self.vertices == other.vertices

    def __hash__(self) -> int:
        return hash(self.vertices)

    def __repr__(self) -> str:
        vs = ", ".join("(" + ", ".join(fmt(x) for x in v) + ")" for v in self.vertices)
        return f"Polytope([{vs}])"

    def __add__(self, other):
        if isinstance(other, Polytope):
            return minkowski_sum(self, other)
        return translate(self, other)

    def __sub__(self, other):
        if isinstance(other, Polytope):
            return minkowski_sum(self, negate(other))
        return translate(self, tuple(-as_exact(x) for x in other))

    def __neg__(self):
        return negate(self)

    def __rmul__(self, t):
        return scale(self, t)

    @property
    def is_lattice(self) -> bool:
        return all(isinstance(x, int) for v in self.vertices for x in v)

    @cached_property
    def hull(self) -> Hull:
        return convex_hull(list(self.vertices))

    @property
    def dim(self) -> int:
        return self.hull.dim

    @cached_property
    def halfspaces(self) -> HalfspaceSystem:
        h = self.hull
        ineqs = []
        for a, b, _ in h.facets:
            full = [0] * self.n
            for j, c in zip(h.chart, a):
                full[j] = c
            ineqs.append((tuple(full), as_exact(Fraction(b, h.scale))))
        eqs = tuple((a, as_exact(b)) for a, b in h.equations)
        return HalfspaceSystem(self.n, tuple(ineqs), eqs)

    @cached_property
    def simplices(self) -> list[tuple[int, ...]]:
        """Pulling triangulation (vertex index tuples) from the first vertex."""
        h = self.hull
        if h.dim == 0:
            return [(0,)]
        if h.dim == 1:
            return [tuple(h.vertices)]
        X = h.coords
        out = []
        for (a, b, _), pieces in zip(h.facets, h.pieces):
            if dot(a, X[0]) == b:
                continue
            out.extend((0,) + tuple(piece) for piece in pieces)
        return out

    def to_json(self) -> dict:
        return {"dim": self.n, "vertices": [[fmt(x) for x in v] for v in self.vertices]}

    @classmethod
    def from_json(cls, data: dict) -> "Polytope":
        verts = [[parse(x) for x in v] for v in data["vertices"]]
        n = int(data["dim"])
        if any(len(v) != n for v in verts):
            raise ValueError("vertex length does not match 'dim'")
        return cls(verts)


# -- constructors --------------------------------------------------------------


def canonicalize(points: Iterable[Sequence]) -> Polytope:
    return Polytope(points)


def point(p: Sequence) -> Polytope:
    return Polytope._trusted([_point(p)])


def origin(n: int) -> Polytope:
    return Polytope._trusted([(0,) * n])


def segment(p: Sequence, q: Sequence) -> Polytope:
    return Polytope([p, q])


def unit_vector(n: int, i: int) -> tuple[int, ...]:
    """e_i for i = 1..n; e_0 is the origin."""
    return tuple(int(j == i - 1) for j in range(n))


def standard_simplex(k: int, n: int | None = None) -> Polytope:
    """T_k = [o, e_1, ..., e_k] in Z^n (n defaults to k)."""
    n = k if n is None else n
    return Polytope._trusted([unit_vector(n, i) for i in range(k + 1)], n)


def unit_cube(k: int, n: int | None = None) -> Polytope:
    """[0,1]^k embedded in Z^n."""
    n = k if n is None else n
    verts = [tuple(((m >> j) & 1) if j < k else 0 for j in range(n)) for m in range(2 ** k)]
    return Polytope._trusted(verts, n)


# -- support, faces, sums -------------------------------------------------------


def support(P: Polytope, v: Sequence) -> int | Fraction:
    """h(P, v) = max over P of v . x."""
    return as_exact(max(dot(v, x) for x in P.vertices))


def face(P: Polytope, v: Sequence) -> Polytope:
    """F(P, v): the face of P on which v . x is maximal."""
    if all(x == 0 for x in v):
        raise ValueError("face direction must be nonzero")
    h = support(P, v)
    return Polytope._trusted([x for x in P.vertices if dot(v, x) == h], P.n)


def minkowski_sum(P: Polytope, Q: Polytope) -> Polytope:
    if P.n != Q.n:
        raise ValueError(f"ambient dimensions differ: {P.n} vs {Q.n}")
    if len(P.vertices) == 1 or len(Q.vertices) == 1:
        return Polytope._trusted([vec_add(p, q) for p in P.vertices for q in Q.vertices], P.n)
    return Polytope([vec_add(p, q) for p in P.vertices for q in Q.vertices])


def minkowski_sum_all(polytopes: Iterable[Polytope], n: int) -> Polytope:
    return reduce(minkowski_sum, polytopes, origin(n))


def scale(P: Polytope, t) -> Polytope:
    t = as_exact(t)
    if t == 0:
        return origin(P.n)
    return Polytope._trusted([tuple(as_exact(t * x) for x in v) for v in P.vertices], P.n)


def translate(P: Polytope, z: Sequence) -> Polytope:
    z = _point(z)
    return Polytope._trusted([vec_add(v, z) for v in P.vertices], P.n)


def negate(P: Polytope) -> Polytope:
    return Polytope._trusted([tuple(-x for x in v) for v in P.vertices], P.n)


def apply_map(P: Polytope, phi: UnimodularMap | Sequence[Sequence[int]]) -> Polytope:
    """phi P for a unimodular (or any invertible linear) map."""
    m = phi.matrix if isinstance(phi, UnimodularMap) else phi
    return Polytope._trusted([tuple(as_exact(dot(row, v)) for row in m) for v in P.vertices], P.n)


def equal(P: Polytope | None, Q: Polytope | None) -> bool:
    return P == Q


# -- dimension --------------------------------------------------------------------


def dim(P: Polytope | None) -> int:
    return -1 if P is None else P.dim


def affine_basis(P: Polytope) -> tuple[tuple, list[tuple]]:
    """(base vertex, linearly independent vertex differences spanning aff P)."""
    base = P.vertices[0]
    edges: list[tuple] = []
    for v in P.vertices[1:]:
        e = vec_sub(v, base)
        if rank(edges + [e]) > len(edges):
            edges.append(e)
    return base, edges


def is_basic_simplex(S: Polytope) -> bool:
    """Unimodular image of some T_d, up to a lattice translation."""
    if not S.is_lattice:
        return False
    d = S.dim
    if len(S.vertices) != d + 1:
        return False
    if d == 0:
        return True
    base = S.vertices[0]
    edges = [vec_sub(v, base) for v in S.vertices[1:]]
    g = 0
    for cols in combinations(range(S.n), d):
        g = gcd(g, det([[e[c] for c in cols] for e in edges]))
        if g == 1:
            return True
    return g == 1


def is_centrally_symmetric(P: Polytope) -> bool:
    """Reflection through the midpoint of the lex-min and lex-max vertices maps P to itself."""
    c2 = vec_add(P.vertices[0], P.vertices[-1])
    return Polytope._trusted([vec_sub(c2, v) for v in P.vertices], P.n) == P


def center_of_symmetry(P: Polytope) -> tuple:
    return tuple(as_exact(Fraction(x, 2)) for x in vec_add(P.vertices[0], P.vertices[-1]))


# -- H-representation -------------------------------------------------------------


def facet_system(P: Polytope) -> HalfspaceSystem:
    """Facet inequalities (within aff P) plus the equations of aff P."""
    return P.halfspaces


def _normalize_rows(rows):
    """Scale rows to primitive integer normals and keep the tightest offset per
    normal.  Returns (rows, infeasible) where a zero row with negative offset
    makes the system infeasible."""
    best: dict[tuple, int | Fraction] = {}
    infeasible = False
    for a, b in rows:
        if all(x == 0 for x in a):
            infeasible |= b < 0
            continue
        a_int = integer_multiple(a)
        k = next(i for i, x in enumerate(a) if x != 0)
        bb = as_exact(Fraction(b) * a_int[k] / Fraction(a[k]))
        best[a_int] = min(bb, best.get(a_int, bb))
    return list(best.items()), infeasible


def vertex_enumeration(H: HalfspaceSystem) -> Polytope | None:
    """Vertices of a bounded system by brute force over tight constraint sets.

    Returns ``None`` for an infeasible system and raises
    :class:`UnboundedError` when the solution set is unbounded.
    """
    n = H.n
    ineqs, infeasible = _normalize_rows(H.inequalities)
    if infeasible:
        return None
    eq_rows = [list(a) + [Fraction(b)] for a, b in H.equations]
    red, piv = rref(eq_rows) if eq_rows else ([], [])
    if n in piv:
        return None  # inconsistent equations
    E = [(tuple(r[:n]), r[n]) for r in red]
    r = len(E)
    A = [a for a, _ in ineqs]
    if rank([e for e, _ in E] + A) < n:
        # lineality space present: either empty or unbounded
        lin = nullspace([e for e, _ in E] + A, n)
        probe = vertex_enumeration(HalfspaceSystem(
            n, tuple(ineqs), tuple(E) + tuple((w, 0) for w in lin)))
        if probe is None:
            return None
        raise UnboundedError("system has a lineality space")

    def feasible(x):
        return all(dot(a, x) <= b for a, b in ineqs)

    found = set()
    for S in combinations(range(len(ineqs)), n - r):
        M = [e for e, _ in E] + [ineqs[i][0] for i in S]
        rhs = [b for _, b in E] + [ineqs[i][1] for i in S]
        x = solve_linear(M, rhs)
        if x is not None and feasible(x):
            found.add(tuple(x))
    if not found:
        return None
    # extreme rays of the recession cone
    for S in combinations(range(len(ineqs)), n - 1 - r) if r < n else ():
        M = [e for e, _ in E] + [ineqs[i][0] for i in S]
        if rank(M) != n - 1:
            continue
        (d,) = nullspace(M, n)
        for sgn in (1, -1):
            if all(sgn * dot(a, d) <= 0 for a in A):
                raise UnboundedError(f"unbounded in direction {tuple(sgn * x for x in d)}")
    return Polytope._trusted(found, n) if len(found) == 1 else Polytope(found)


def intersect(P: Polytope, Q: Polytope) -> Polytope | None:
    """P cap Q, or ``None`` when empty."""
    if P.n != Q.n:
        raise ValueError("ambient dimensions differ")
    for j in range(P.n):
        if (max(v[j] for v in P.vertices) < min(v[j] for v in Q.vertices)
                or max(v[j] for v in Q.vertices) < min(v[j] for v in P.vertices)):
            return None
    if P == Q:
        return P
    return vertex_enumeration(facet_system(P) | facet_system(Q))


def contains(P: Polytope, x: Sequence) -> bool:
    return facet_system(P).contains(x)


# -- triangulations, volume, centroid ------------------------------------------------


def triangulation(P: Polytope) -> list[tuple[int, ...]]:
    """Simplices (vertex index tuples) triangulating P inside aff P."""
    return P.simplices


def _chart_weight(h: Hull, simplex) -> int:
    X = h.coords
    p0 = X[simplex[0]]
    return abs(det([[x - y for x, y in zip(X[i], p0)] for i in simplex[1:]]))


def volume(P: Polytope | None) -> int | Fraction:
    """n-dimensional volume; 0 for lower-dimensional (or empty) input."""
    if P is None or P.dim < P.n:
        return 0
    V = P.vertices
    total = 0
    for s in triangulation(P):
        p0 = V[s[0]]
        total += abs(det([vec_sub(V[i], p0) for i in s[1:]]))
    return as_exact(Fraction(total, factorial(P.n)))


def relative_volume_weights(P: Polytope) -> list[tuple[tuple[int, ...], int]]:
    h = P.hull
    if h.dim == 0:
        return [((0,), 1)]
    return [(s, _chart_weight(h, s)) for s in triangulation(P)]


def centroid(P: Polytope) -> tuple:
    """Centroid of P with respect to dim(P)-dimensional volume."""
    V = P.vertices
    if len(V) == 1:
        return V[0]
    acc = [Fraction(0)] * P.n
    wsum = 0
    for s, w in relative_volume_weights(P):
        k = len(s)
        for i in s:
            for j, x in enumerate(V[i]):
                acc[j] += Fraction(w, k) * x
        wsum += w
    return tuple(as_exact(x / wsum) for x in acc)


def vertex_average(P: Polytope) -> tuple:
    k = len(P.vertices)
    return tuple(as_exact(Fraction(sum(v[j] for v in P.vertices), k)) for j in range(P.n))


def facet_area_vectors(P: Polytope) -> list[tuple]:
    """|F| u_F for every facet F with outer unit normal u_F (rational by construction).

    Ordered like ``facet_system(P).inequalities``.
    """
    if P.dim != P.n:
        raise ValueError("facet area vectors need a full-dimensional polytope")
    h = P.hull
    V = P.vertices
    f = factorial(P.n - 1)
    out = []
    for (a, _, _), pieces in zip(h.facets, h.pieces):
        z = [Fraction(0)] * P.n
        for piece in pieces:
            p0 = V[piece[0]]
            c = cross([vec_sub(V[i], p0) for i in piece[1:]])
            if dot(c, a) < 0:
                c = tuple(-x for x in c)
            z = [x + y for x, y in zip(z, c)]
        out.append(tuple(as_exact(x / f) for x in z))
    return out


def hyperplane_area_vector(P: Polytope) -> tuple:
    """|P| w for a polytope of dimension n-1, w a unit normal of aff P (sign arbitrary)."""
    if P.dim != P.n - 1:
        raise ValueError("needs a polytope of dimension n-1")
    V = P.vertices
    total = None
    for s in triangulation(P):
        p0 = V[s[0]]
        c = cross([vec_sub(V[i], p0) for i in s[1:]])
        if total is None:
            total = list(c)
            continue
        if dot(c, total) < 0:
            c = tuple(-x for x in c)
        total = [x + y for x, y in zip(total, c)]
    f = factorial(P.n - 1)
    return tuple(as_exact(Fraction(x, f)) for x in total)


def faces(P: Polytope) -> list[Polytope]:
    """All nonempty faces of P (including P itself), as polytopes."""
    h = P.hull
    V = P.vertices
    if h.dim == 0:
        return [P]
    facet_sets = {f for _, _, f in h.facets}
    found = set(facet_sets)
    frontier = set(facet_sets)
    while frontier:
        new = set()
        for a in frontier:
            for b in facet_sets:
                c = a & b
                if c and c not in found:
                    new.add(c)
        found |= new
        frontier = new
    out = [P] + [Polytope._trusted([V[i] for i in s], P.n) for s in found]
    return sorted(out, key=lambda F: (-F.dim, F.vertices))


def lattice_box(P: Polytope) -> list[tuple[int, int]]:
    from math import ceil, floor
    return [(ceil(min(v[j] for v in P.vertices)), floor(max(v[j] for v in P.vertices)))
            for j in range(P.n)]
