"""Slow, independent reference implementations used only by the tests.

Nothing here calls into latval beyond plain data; each oracle takes the most
direct route to its answer so it can disagree with the production code.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations, product
from math import factorial


def cofactor_det(m):
    m = [list(r) for r in m]
    if len(m) == 1:
        return m[0][0]
    return sum((-1) ** j * m[0][j] * cofactor_det([r[:j] + r[j + 1:] for r in m[1:]])
               for j in range(len(m)))


def leibniz_det(m):
    n = len(m)
    total = 0
    for p in permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if p[i] > p[j]:
                    sign = -sign
        term = sign
        for i in range(n):
            term *= m[i][p[i]]
        total += term
    return total


def gauss_solve(a, b):
    """Exact solution of a square system, or None when singular."""
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(a, b)]
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return None
        m[c], m[piv] = m[piv], m[c]
        for r in range(n):
            if r != c and m[r][c] != 0:
                f = m[r][c] / m[c][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return [m[i][n] / m[i][i] for i in range(n)]


def vandermonde_fit(samples):
    """Coefficients (low degree first) through the samples."""
    a = [[Fraction(k) ** j for j in range(len(samples))] for k, _ in samples]
    return gauss_solve(a, [v for _, v in samples])


def _rank(rows):
    m = [[Fraction(x) for x in r] for r in rows]
    rk, col = 0, 0
    ncol = len(m[0]) if m else 0
    while rk < len(m) and col < ncol:
        piv = next((r for r in range(rk, len(m)) if m[r][col] != 0), None)
        if piv is None:
            col += 1
            continue
        m[rk], m[piv] = m[piv], m[rk]
        for r in range(len(m)):
            if r != rk and m[r][col] != 0:
                f = m[r][col] / m[rk][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[rk])]
        rk += 1
        col += 1
    return rk


def affine_rank(points):
    if len(points) <= 1:
        return 0
    base = points[0]
    return _rank([[a - b for a, b in zip(p, base)] for p in points[1:]])


def in_hull(p, pts):
    """Is p a convex combination of pts?  Caratheodory: try every affinely
    independent subset and solve for barycentric coordinates."""
    pts = [tuple(q) for q in pts]
    if tuple(p) in pts:
        return True
    n = len(p)
    for size in range(2, min(len(pts), n + 1) + 1):
        for sub in combinations(pts, size):
            if affine_rank(list(sub)) != size - 1:
                continue
            diffs = [[a - b for a, b in zip(q, sub[0])] for q in sub[1:]]
            target = [a - b for a, b in zip(p, sub[0])]
            cols = _pivot_cols(diffs)
            a = [[diffs[i][c] for i in range(size - 1)] for c in cols]
            lam = gauss_solve(a, [target[c] for c in cols])
            if lam is None:
                continue
            point = [sum(l * d[j] for l, d in zip(lam, diffs)) for j in range(n)]
            if point != target:
                continue
            if all(x >= 0 for x in lam) and sum(lam) <= 1:
                return True
    return False


def _pivot_cols(rows):
    cols = []
    for c in range(len(rows[0])):
        trial = cols + [c]
        if _rank([[r[j] for j in trial] for r in rows]) == len(trial):
            cols = trial
    return cols


def extreme_points(points):
    """Points not in the hull of the others."""
    pts = sorted({tuple(p) for p in points})
    return [p for p in pts if not in_hull(p, [q for q in pts if q != p])]


def facets_brute_force(vertices):
    """Facet inequalities (a, b) with a.x <= b of a full-dimensional polytope,
    normalized to primitive integer a, found by trying every n-subset."""
    from math import gcd
    V = [tuple(Fraction(x) for x in v) for v in vertices]
    n = len(V[0])
    out = set()
    for sub in combinations(V, n):
        if affine_rank(list(sub)) != n - 1:
            continue
        diffs = [[a - b for a, b in zip(q, sub[0])] for q in sub[1:]]
        normal = [(-1) ** i * cofactor_det([[d[j] for j in range(n) if j != i] for d in diffs])
                  for i in range(n)]
        b = sum(x * y for x, y in zip(normal, sub[0]))
        vals = [sum(x * y for x, y in zip(normal, v)) for v in V]
        if all(x <= b for x in vals):
            pass
        elif all(x >= b for x in vals):
            normal, b = [-x for x in normal], -b
        else:
            continue
        den = 1
        for x in normal + [b]:
            den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
        ints = [int(x * den) for x in normal]
        g = 0
        for x in ints:
            g = gcd(g, x)
        out.add((tuple(x // g for x in ints), Fraction(b * den, g)))
    return sorted(out)


def box_points(vertices, facets):
    """Lattice points of the bounding box satisfying every facet inequality."""
    n = len(vertices[0])
    lo = [int(min(Fraction(v[j]) for v in vertices).__floor__()) for j in range(n)]
    hi = [int(max(Fraction(v[j]) for v in vertices).__ceil__()) for j in range(n)]
    return [x for x in product(*(range(a, b + 1) for a, b in zip(lo, hi)))
            if all(sum(p * q for p, q in zip(a, x)) <= b for a, b in facets)]


def box_points_any(vertices):
    """Lattice points of conv(vertices) of any dimension, by hull membership."""
    n = len(vertices[0])
    lo = [int(min(Fraction(v[j]) for v in vertices).__floor__()) for j in range(n)]
    hi = [int(max(Fraction(v[j]) for v in vertices).__ceil__()) for j in range(n)]
    return [x for x in product(*(range(a, b + 1) for a, b in zip(lo, hi)))
            if in_hull(x, vertices)]


def simplex_volume(simplex):
    base = simplex[0]
    m = [[a - b for a, b in zip(v, base)] for v in simplex[1:]]
    return Fraction(abs(cofactor_det(m)), factorial(len(base)))


def fan_simplices(vertices):
    """Full-dimensional simplices of a fan from the vertex average over the
    oracle facets; 3-dimensional facets are fanned from their own average."""
    V = [tuple(Fraction(x) for x in v) for v in vertices]
    n = len(V[0])
    assert n <= 3
    c = tuple(sum(v[j] for v in V) / len(V) for j in range(n))
    out = []
    for a, b in facets_brute_force(V):
        on = [v for v in V if sum(x * y for x, y in zip(a, v)) == b]
        if n <= 2:
            out.append([c] + on)
            continue
        m = tuple(sum(p[j] for p in on) / len(on) for j in range(n))
        for p, q in combinations(on, 2):
            sides = [_dot(_cross(_sub(q, p), _sub(r, p)), a) for r in on if r not in (p, q)]
            if all(x > 0 for x in sides) or all(x < 0 for x in sides):
                out.append([c, m, p, q])
    return out


def _sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def _dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def _cross(u, v):
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])


def volume_oracle(vertices):
    return sum(simplex_volume(s) for s in fan_simplices(vertices))


def centroid_oracle(vertices):
    n = len(vertices[0])
    total = Fraction(0)
    acc = [Fraction(0)] * n
    for s in fan_simplices(vertices):
        w = simplex_volume(s)
        total += w
        for j in range(n):
            acc[j] += w * sum(v[j] for v in s) / len(s)
    return tuple(x / total for x in acc)


def binomial_poly(n):
    """Coefficients of C(k+n, n) = prod (k+i)/i as a polynomial in k."""
    coeffs = [Fraction(1)]
    for i in range(1, n + 1):
        new = [Fraction(0)] * (len(coeffs) + 1)
        for d, c in enumerate(coeffs):
            new[d] += c
            new[d + 1] += c / i
        coeffs = new
    return coeffs


def power_poly(n):
    """Coefficients of (k+1)^n."""
    from math import comb
    return [comb(n, i) for i in range(n + 1)]
