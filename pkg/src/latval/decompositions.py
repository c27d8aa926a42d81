"""Cell decompositions of cubes and prisms, inclusion-exclusion over their
faces, and a small library of certified valuation quadruples."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import combinations, permutations, product

from .ehrhart import count, discrete_moment
from .exact import vec_add
from .polytope import (Polytope, faces, intersect, minkowski_sum,
                       segment, standard_simplex, unit_cube, unit_vector, volume)

log = logging.getLogger(__name__)


@dataclass
class CellDecomposition:
    target: Polytope
    cells: list[Polytope]
    name: str = ""

    @cached_property
    def faces(self) -> list[Polytope]:
        """All faces of all cells, deduplicated, highest dimension first."""
        seen = {F for C in self.cells for F in faces(C)}
        return sorted(seen, key=lambda F: (-F.dim, F.vertices))

    @cached_property
    def interior(self) -> list[bool]:
        """For each face: does it meet the interior of the target?"""
        H = self.target.halfspaces
        out = []
        for F in self.faces:
            m = len(F.vertices)
            avg = tuple(sum(v[j] for v in F.vertices) / m for j in range(F.n))
            out.append(H.strictly_inside(avg))
        return out

    def census(self) -> dict[int, int]:
        """Number of interior-meeting faces per dimension."""
        out = {d: 0 for d in range(self.target.n + 1)}
        for F, inside in zip(self.faces, self.interior):
            if inside:
                out[F.dim] += 1
        return out

    def interior_faces(self) -> list[Polytope]:
        return [F for F, inside in zip(self.faces, self.interior) if inside]

    def adjacency(self) -> list[tuple[int, int]]:
        """Pairs of cells sharing a facet."""
        n = self.target.n
        out = []
        for i, j in combinations(range(len(self.cells)), 2):
            I = intersect(self.cells[i], self.cells[j])
            if I is not None and I.dim == n - 1:
                out.append((i, j))
        return out

    def validate(self) -> list[str]:
        """Problems found, empty when D is a cell decomposition of the target."""
        problems = []
        n = self.target.n
        if any(C.dim != n for C in self.cells):
            problems.append("a cell is not full-dimensional")
        if sum(volume(C) for C in self.cells) != volume(self.target):
            problems.append("cell volumes do not add up to the target volume")
        if any(not all(self.target.halfspaces.contains(v) for v in C.vertices) for C in self.cells):
            problems.append("a cell leaves the target")
        for i, j in combinations(range(len(self.cells)), 2):
            A, B = self.cells[i], self.cells[j]
            I = intersect(A, B)
            if I is None:
                continue
            if I not in faces(A) or I not in faces(B):
                problems.append(f"cells {i} and {j} meet in a non-face")
        return problems

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "target": self.target.to_json(),
            "cells": [C.to_json() for C in self.cells],
            "faces": [dict(F.to_json(), interior=inside)
                      for F, inside in zip(self.faces, self.interior)],
            "census": {str(d): c for d, c in self.census().items()},
            "adjacency": [list(p) for p in self.adjacency()],
        }


def _valuation(which: str):
    if which == "count":
        return count
    if which == "volume":
        return volume
    if which == "moment":
        return discrete_moment
    raise ValueError(f"unknown valuation {which!r}")


def alternating_face_sum(D: CellDecomposition, which: str):
    """Sum over interior-meeting faces F of (-1)^(n - dim F) omega(F)."""
    f = _valuation(which)
    n = D.target.n
    total = None
    for F in D.interior_faces():
        sign = (-1) ** (n - F.dim)
        val = f(F)
        term = tuple(sign * x for x in val) if isinstance(val, tuple) else sign * val
        if total is None:
            total = term
        elif isinstance(term, tuple):
            total = vec_add(total, term)
        else:
            total += term
    return total


def inclusion_exclusion_check(D: CellDecomposition, which: str) -> bool:
    return alternating_face_sum(D, which) == _valuation(which)(D.target)


# -- constructors ---------------------------------------------------------------------


def _need_dim(n, low=2):
    if n < low:
        raise ValueError(f"dimension must be at least {low}, got {n}")


def staircase(base: list[tuple], n: int) -> list[Polytope]:
    """Staircase triangulation of conv(base) x [0, e_n] for a simplex with the
    given vertex order (lying in x_n = 0): cell i is
    [v_0+e_n, ..., v_{i-1}+e_n, v_{i-1}, ..., v_{d}]."""
    en = unit_vector(n, n)
    cells = []
    for i in range(1, len(base) + 1):
        top = [vec_add(v, en) for v in base[:i]]
        cells.append(Polytope._trusted(top + list(base[i - 1:]), n))
    return cells


def prism_triangulation(n: int) -> CellDecomposition:
    """T_{n-1} + [o, e_n] cut into n basic simplices S_1 = T_n, ..., S_n."""
    _need_dim(n)
    base = [(0,) * n] + [unit_vector(n, i) for i in range(1, n)]
    target = minkowski_sum(standard_simplex(n - 1, n), segment((0,) * n, unit_vector(n, n)))
    return CellDecomposition(target, staircase(base, n), f"prism-{n}")


def _order_key(v):
    return (sum(v), tuple(-x for x in v))


def _cube_cells(n: int) -> list[list[tuple]]:
    # cells as vertex lists in the global order, T_n first
    if n == 1:
        return [[(0,), (1,)]]
    out = []
    for cell in _cube_cells(n - 1):
        base = sorted((v + (0,) for v in cell), key=_order_key)
        out.extend(list(C.vertices) for C in staircase(base, n))
    return out


def cube_triangulation(n: int) -> CellDecomposition:
    """[0,1]^n cut into n! basic simplices on the cube vertices, T_n among them.

    Built by induction: each cell S' of [0,1]^{n-1} gives the prism
    S' x [0,1], cut by the staircase rule with one global vertex order, so
    neighbouring prisms are cut compatibly.
    """
    _need_dim(n)
    cells = [Polytope._trusted(c, n) for c in _cube_cells(n)]
    assert standard_simplex(n) in cells
    return CellDecomposition(unit_cube(n), cells, f"cube-{n}")


def kuhn_triangulation(n: int) -> CellDecomposition:
    """The permutation simplices {0 <= x_s(1) <= ... <= x_s(n) <= 1}."""
    _need_dim(n, 1)
    cells = []
    for sigma in permutations(range(n)):
        v = [0] * n
        pts = [tuple(v)]
        for i in reversed(sigma):
            v[i] = 1
            pts.append(tuple(v))
        cells.append(Polytope._trusted(pts, n))
    return CellDecomposition(unit_cube(n), cells, f"kuhn-{n}")


def grid_decomposition(n: int, k: int) -> CellDecomposition:
    """k[0,1]^n cut into k^n unit cubes."""
    _need_dim(n, 1)
    if k < 1:
        raise ValueError("k must be at least 1")
    C = unit_cube(n)
    cells = [C + z for z in product(range(k), repeat=n)]
    return CellDecomposition(k * C, cells, f"grid-{n}-{k}")


# -- valuation quadruples ---------------------------------------------------------------


@dataclass(frozen=True)
class ValuationQuadruple:
    P: Polytope
    Q: Polytope
    U: Polytope = field(init=False)
    I: Polytope | None = field(init=False)
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "U", Polytope(self.P.vertices + self.Q.vertices))
        object.__setattr__(self, "I", intersect(self.P, self.Q))

    def certified(self) -> bool:
        """vol P + vol Q == vol U + vol I (so P cup Q is the convex set U).

        Only meaningful for full-dimensional P and Q.
        """
        if self.I is None:
            return False
        return volume(self.P) + volume(self.Q) == volume(self.U) + volume(self.I)

    def to_json(self) -> dict:
        return {"label": self.label,
                **{k: getattr(self, k).to_json() for k in "PQUI"}}


def corner_split(n: int) -> ValuationQuadruple:
    """T_n and R_n, the hull of the cube vertices other than o."""
    _need_dim(n)
    R = Polytope([v for v in product((0, 1), repeat=n) if any(v)])
    return ValuationQuadruple(standard_simplex(n), R, label=f"corner-{n}")


@lru_cache(maxsize=None)
def quadruples_library(n: int) -> tuple[ValuationQuadruple, ...]:
    """Curated quadruples with U = P cup Q, each certified by volumes."""
    if n not in (2, 3, 4):
        raise ValueError("quadruples are provided for n in {2, 3, 4}")
    e = [unit_vector(n, i) for i in range(1, n + 1)]
    cube = unit_cube(n)
    ones = tuple(1 for _ in range(n))
    candidates = [corner_split(n)]

    cells = prism_triangulation(n).cells
    for i in range(len(cells) - 1):
        candidates.append(ValuationQuadruple(cells[i], cells[i + 1], label=f"prism-{n}-{i + 1}"))

    # the cube cut along x_1 = x_2
    half = [Polytope([v for v in cube.vertices if v[0] <= v[1]]),
            Polytope([v for v in cube.vertices if v[0] >= v[1]])]
    candidates.append(ValuationQuadruple(*half, label=f"diagonal-{n}"))

    # overlapping boxes [0,2] x [0,1]^{n-1} and [1,3] x [0,1]^{n-1}
    box = Polytope([(2 * v[0],) + v[1:] for v in cube.vertices])
    candidates.append(ValuationQuadruple(box, box + e[0], label=f"boxes-{n}"))

    # a cube and the pyramid over its facet x_1 = 1 with apex 2e_1
    tip = Polytope([vec_add(e[0], e[0])] + [v for v in cube.vertices if v[0] == 1])
    candidates.append(ValuationQuadruple(cube, tip, label=f"trapezoid-{n}"))

    if n == 2:
        flipped = Polytope([ones, e[0], e[1]])
        candidates.append(ValuationQuadruple(standard_simplex(2), flipped, label="square-2"))

    # two unit cubes meeting only at a corner: not convex, must be rejected
    candidates.append(ValuationQuadruple(cube, cube + ones, label=f"non-convex-{n}"))

    admitted = []
    for q in candidates:
        if q.certified():
            admitted.append(q)
        else:
            log.info("rejected quadruple %s: volumes do not certify a convex union", q.label)
    return tuple(admitted)
