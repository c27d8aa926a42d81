"""Exact beneath-beyond convex hull for small dimensions.

Works inside the affine hull of the input: points are projected onto a set of
coordinates that is injective on that affine hull, scaled to integers, and the
hull is grown one point at a time with a simplicial boundary.  Coplanar
simplices are merged afterwards into true facets, and a boundary point is
declared a vertex iff the normals of the facets through it have full rank.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from itertools import combinations
from math import lcm

from .exact import det, nullspace, primitive, rank, rref


@dataclass
class Hull:
    dim: int
    chart: tuple[int, ...]            # coordinate indices used as the chart
    scale: int                        # chart coordinates are scale * x[chart]
    vertices: list[int]               # indices (into the input) of extreme points
    # true facets in chart coordinates: (primitive normal, offset, vertex index set)
    facets: list[tuple[tuple[int, ...], int, frozenset[int]]] = field(default_factory=list)
    # boundary simplices grouped by facet (same order as ``facets``)
    pieces: list[list[tuple[int, ...]]] = field(default_factory=list)
    equations: list[tuple[tuple[int, ...], Fraction]] = field(default_factory=list)
    coords: dict[int, tuple[int, ...]] = field(default_factory=dict)


def _normal(pts):
    """Integer normal (a, b) of the hyperplane through d points in Z^d."""
    p0 = pts[0]
    edges = [[x - y for x, y in zip(p, p0)] for p in pts[1:]]
    d = len(p0)
    a = []
    for i in range(d):
        minor = [[e[j] for j in range(d) if j != i] for e in edges]
        a.append((-1) ** i * det(minor))
    a = primitive(a)
    return a, sum(x * y for x, y in zip(a, p0))


def convex_hull(points) -> Hull:
    """Hull of a nonempty list of rational points (tuples of int/Fraction)."""
    if not points:
        raise ValueError("convex hull of an empty point set")
    n = len(points[0])
    seen: dict[tuple, int] = {}
    for i, p in enumerate(points):
        seen.setdefault(tuple(p), i)
    uniq = sorted(seen.values())
    base = points[uniq[0]]

    # affine independent seed set, found greedily
    simplex = [uniq[0]]
    diffs: list[list] = []
    for i in uniq[1:]:
        cand = diffs + [[a - b for a, b in zip(points[i], base)]]
        if rank(cand) == len(cand):
            diffs = cand
            simplex.append(i)
            if len(diffs) == n:
                break
    d = len(diffs)
    equations = []
    if d < n:
        for a in nullspace(diffs, n):
            equations.append((a, Fraction(sum(x * y for x, y in zip(a, base)))))
    if d == 0:
        return Hull(0, (), 1, [uniq[0]], equations=equations)

    chart = tuple(rref(diffs)[1])
    scale = reduce(lcm, (Fraction(points[i][j]).denominator for i in uniq for j in chart), 1)
    X = {i: tuple(int(Fraction(points[i][j]) * scale) for j in chart) for i in uniq}

    if d == 1:
        lo = min(uniq, key=lambda i: X[i][0])
        hi = max(uniq, key=lambda i: X[i][0])
        facets = [((-1,), -X[lo][0], frozenset([lo])), ((1,), X[hi][0], frozenset([hi]))]
        return Hull(1, chart, scale, sorted([lo, hi]), facets, [[(lo,)], [(hi,)]],
                    equations, X)

    # interior reference point, scaled by (d+1) to stay integral
    center = [sum(X[i][k] for i in simplex) for k in range(d)]

    def oriented(verts):
        a, b = _normal([X[i] for i in verts])
        s = sum(x * y for x, y in zip(a, center)) - (d + 1) * b
        if s > 0:
            a, b = tuple(-x for x in a), -b
        return a, b

    facets: dict[int, tuple[tuple[int, ...], tuple[int, ...], int]] = {}
    next_id = 0
    for verts in combinations(simplex, d):
        facets[next_id] = (verts, *oriented(verts))
        next_id += 1

    in_simplex = set(simplex)
    for i in uniq:
        if i in in_simplex:
            continue
        p = X[i]
        visible = [fid for fid, (_, a, b) in facets.items()
                   if sum(x * y for x, y in zip(a, p)) > b]
        if not visible:
            continue
        ridges: dict[frozenset, int] = {}
        for fid in visible:
            verts = facets[fid][0]
            for r in combinations(verts, d - 1):
                key = frozenset(r)
                ridges[key] = ridges.get(key, 0) + 1
        for fid in visible:
            del facets[fid]
        for r, cnt in ridges.items():
            if cnt == 1:
                verts = tuple(sorted(r)) + (i,)
                facets[next_id] = (verts, *oriented(verts))
                next_id += 1

    groups: dict[tuple, list[tuple[int, ...]]] = {}
    for verts, a, b in facets.values():
        groups.setdefault((a, b), []).append(verts)
    keys = sorted(groups)
    boundary = sorted({i for verts, _, _ in facets.values() for i in verts})
    extreme = []
    for i in boundary:
        normals = [a for a, b in keys if sum(x * y for x, y in zip(a, X[i])) == b]
        if rank(normals) == d:
            extreme.append(i)
    true_facets = []
    for a, b in keys:
        on = frozenset(i for i in extreme if sum(x * y for x, y in zip(a, X[i])) == b)
        true_facets.append((a, b, on))
    pieces = [groups[k] for k in keys]
    return Hull(d, chart, scale, extreme, true_facets, pieces, equations, X)
