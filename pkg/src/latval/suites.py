"""Seeded property suites checking the valuation, covariance, integrality and
expansion statements on random and curated lattice polytopes.

Each suite returns a SuiteReport whose failures carry the serialized input,
so a counterexample can be replayed on its own.  Trials draw from
independent streams keyed by (seed, suite, trial), so a trial's input does
not depend on how many trials ran before it.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, lcm

from .decompositions import (ValuationQuadruple, cube_triangulation, grid_decomposition,
                             inclusion_exclusion_check, prism_triangulation, quadruples_library)
from .ehrhart import (bivariate_count_check, count, discrete_steiner, ehrhart,
                      l1_additivity_check)
from .exact import fmt, random_unimodular, rng_stream, vec_add
from .operators import (CONTRAVARIANT, OperatorSpec, projection_body, z_ab)
from .polytope import (Polytope, apply_map, center_of_symmetry, centroid, facet_area_vectors,
                       is_basic_simplex, is_centrally_symmetric, minkowski_sum, negate, scale,
                       standard_simplex, unit_cube, volume)

DEFAULT_TRIALS = {2: 100, 3: 40, 4: 10}
DEFAULT_BOX = 4

_STREAM = {"valuation": 1, "equivariance": 2, "contravariance": 3, "dst": 4,
           "integrality": 5, "ehrhart": 6, "minkowski": 7}

NOT_CHECKED = ("only the forward directions are checked; the uniqueness "
               "('only if') parts of the classification are not machine-checkable")


def default_trials(n: int) -> int:
    return DEFAULT_TRIALS.get(n, 10)


def m_n(n: int) -> int:
    """lcm(2, ..., n+1)."""
    return lcm(*range(2, n + 2))


@dataclass
class SuiteReport:
    name: str
    trials: int = 0
    failures: list[dict] = field(default_factory=list)
    elapsed: float = 0.0
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, ok: bool, what: str, inputs: dict, expected=None, actual=None):
        if not ok:
            self.failures.append({"check": what, "input": inputs,
                                  "expected": _js(expected), "actual": _js(actual)})

    def to_json(self) -> dict:
        return {"suite": self.name, "passed": self.passed, "trials": self.trials,
                "failures": self.failures, "elapsed": round(self.elapsed, 3),
                "notes": self.notes}

    def summary(self) -> str:
        status = "PASS" if self.passed else f"FAIL ({len(self.failures)} failures)"
        return f"{self.name}: {status}, {self.trials} trials, {self.elapsed:.2f}s"


def _js(x):
    if x is None or isinstance(x, (bool, str)):
        return x
    if isinstance(x, Polytope):
        return x.to_json()
    if isinstance(x, (int, Fraction)):
        return fmt(x)
    if isinstance(x, (list, tuple)):
        return [_js(y) for y in x]
    if isinstance(x, dict):
        return {k: _js(v) for k, v in x.items()}
    return str(x)


class _timed:
    def __init__(self, report):
        self.report = report

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self.report

    def __exit__(self, *exc):
        self.report.elapsed = time.perf_counter() - self.t0


# -- random inputs -----------------------------------------------------------------------


def random_lattice_polytope(n: int, box: int = DEFAULT_BOX, points: int | None = None,
                            seed=0, full_dim: bool = False) -> Polytope:
    """Hull of ``points`` uniform integer points of [0, box]^n.

    ``seed`` is an int or a numpy Generator.  With ``full_dim`` the draw is
    repeated until the hull is n-dimensional.
    """
    points = n + 2 if points is None else points
    if box < 1:
        raise ValueError("box must be at least 1")
    if points < n + 1:
        raise ValueError("need at least n+1 points")
    rng = seed if hasattr(seed, "integers") else rng_stream(seed)
    for _ in range(100):
        pts = rng.integers(0, box + 1, size=(points, n)).tolist()
        P = Polytope([tuple(p) for p in pts])
        if not full_dim or P.dim == n:
            return P
    raise RuntimeError(f"no full-dimensional polytope after 100 draws (n={n}, box={box})")


def _random_vector(rng, n, box=DEFAULT_BOX):
    return tuple(int(x) for x in rng.integers(-box, box + 1, size=n))


def _affine(P: Polytope, phi, z) -> Polytope:
    return apply_map(P, phi) + z


def _map_in(phi, z=None):
    out = {"phi": phi.to_json()}
    if z is not None:
        out["z"] = [fmt(x) for x in z]
    return out


# -- suites ------------------------------------------------------------------------------


def _check_planar(op: OperatorSpec, n: int):
    if op.planar_only and n != 2:
        raise ValueError(f"{op} is only defined in the plane")


def suite_valuation(op: OperatorSpec, n: int, seed: int = 0, trials: int | None = None
                    ) -> SuiteReport:
    """op(U) + op(I) == op(P) + op(Q) on the curated quadruples and on
    `trials` random affine unimodular images of them."""
    _check_planar(op, n)
    trials = default_trials(n) if trials is None else trials
    report = SuiteReport(f"valuation[{op}]")
    library = quadruples_library(n)
    with _timed(report):
        cases = [(q, None, None) for q in library]
        for t in range(trials):
            rng = rng_stream(seed, _STREAM["valuation"], n, t)
            phi = random_unimodular(n, seed=rng)
            z = _random_vector(rng, n)
            q = library[int(rng.integers(len(library)))]
            cases.append((ValuationQuadruple(_affine(q.P, phi, z), _affine(q.Q, phi, z),
                                             label=q.label), phi, z))
        for q, phi, z in cases:
            left = minkowski_sum(op(q.U), op(q.I))
            right = minkowski_sum(op(q.P), op(q.Q))
            inputs = {"operator": op.to_json(), "label": q.label,
                      "P": q.P.to_json(), "Q": q.Q.to_json()}
            if phi is not None:
                inputs.update(_map_in(phi, z))
            report.check(left == right, "op(U)+op(I) == op(P)+op(Q)", inputs, right, left)
        report.trials = len(cases)
    return report


def _covariance(op: OperatorSpec, n: int, seed, trials, contravariant: bool) -> SuiteReport:
    _check_planar(op, n)
    trials = default_trials(n) if trials is None else trials
    name = "contravariance" if contravariant else "equivariance"
    report = SuiteReport(f"{name}[{op}]", notes=[NOT_CHECKED])
    with _timed(report):
        for t in range(trials):
            rng = rng_stream(seed, _STREAM[name], n, t)
            P = random_lattice_polytope(n, seed=rng)
            phi = random_unimodular(n, seed=rng)
            z = _random_vector(rng, n)
            psi = phi.inverse_transpose() if contravariant else phi
            actual = op(_affine(P, phi, z))
            expected = apply_map(op(P), psi)
            report.check(actual == expected, f"op(phi P + z) == {'phi^-t' if contravariant else 'phi'} op(P)",
                         {"operator": op.to_json(), "P": P.to_json(), **_map_in(phi, z)},
                         expected, actual)
        report.trials = trials
        if op.kind != "zero" and (op.a > 0 or op.b > 0 or op.c > 0):
            # derived sanity check: o is interior to op(T_n) for positive parameters
            T = op(standard_simplex(n))
            ok = T.dim == n and T.halfspaces.strictly_inside((0,) * n)
            report.check(ok, "o in int op(T_n)", {"operator": op.to_json()}, True, ok)
            report.notes.append("o in int op(T_n) checked as a derived sanity check")
    return report


def suite_equivariance(op: OperatorSpec, n: int, seed: int = 0, trials: int | None = None
                       ) -> SuiteReport:
    """op(phi P + z) == phi op(P) for random phi in SL_n(Z), z in Z^n."""
    return _covariance(op, n, seed, trials, contravariant=False)


def suite_contravariance(op: OperatorSpec, n: int, seed: int = 0, trials: int | None = None
                         ) -> SuiteReport:
    """op(phi P + z) == phi^-t op(P) for random phi in SL_n(Z), z in Z^n."""
    return _covariance(op, n, seed, trials, contravariant=True)


def suite_dst(n: int, seed: int = 0, trials: int | None = None) -> SuiteReport:
    """dst: equivariance, translation, additivity, valuation, and
    dst = centroid on basic simplices and centrally symmetric polytopes."""
    trials = default_trials(n) if trials is None else trials
    report = SuiteReport("dst", notes=[NOT_CHECKED])
    with _timed(report):
        for t in range(trials):
            rng = rng_stream(seed, _STREAM["dst"], n, t)
            P = random_lattice_polytope(n, seed=rng)
            Q = random_lattice_polytope(n, seed=rng)
            phi = random_unimodular(n, seed=rng)
            z = _random_vector(rng, n)
            inputs = {"P": P.to_json(), **_map_in(phi, z)}
            dP = discrete_steiner(P)
            expected = vec_add(apply_map(Polytope._trusted([dP], n), phi).vertices[0], z)
            actual = discrete_steiner(_affine(P, phi, z))
            report.check(actual == expected, "dst(phi P + z) == phi dst(P) + z", inputs,
                         expected, actual)
            expected = vec_add(dP, discrete_steiner(Q))
            actual = discrete_steiner(P + Q)
            report.check(actual == expected, "dst(P + Q) == dst(P) + dst(Q)",
                         {"P": P.to_json(), "Q": Q.to_json()}, expected, actual)
            S = _affine(standard_simplex(n), phi, z)
            report.check(discrete_steiner(S) == centroid(S), "dst == centroid on basic simplex",
                         {"S": S.to_json()}, centroid(S), discrete_steiner(S))
            D = minkowski_sum(P, negate(P)) + z
            report.check(discrete_steiner(D) == center_of_symmetry(D),
                         "dst == center on symmetric polytope", {"D": D.to_json()},
                         center_of_symmetry(D), discrete_steiner(D))
        report.trials = trials

        for q in quadruples_library(n):
            left = vec_add(discrete_steiner(q.U), discrete_steiner(q.I))
            right = vec_add(discrete_steiner(q.P), discrete_steiner(q.Q))
            report.check(left == right, "dst valuation", {"label": q.label}, right, left)
        for D in (cube_triangulation(n), prism_triangulation(n)):
            for S in D.cells:
                assert is_basic_simplex(S)
                report.check(discrete_steiner(S) == centroid(S), "dst == centroid on basic simplex",
                             {"S": S.to_json()}, centroid(S), discrete_steiner(S))
        for C in (unit_cube(n), grid_decomposition(n, 2).target):
            assert is_centrally_symmetric(C)
            report.check(discrete_steiner(C) == center_of_symmetry(C),
                         "dst == center on symmetric polytope", {"C": C.to_json()},
                         center_of_symmetry(C), discrete_steiner(C))
    return report


def _witness(n: int, make):
    """First T_k (k = 1..n, in Z^n) with a non-lattice image, or None."""
    for k in range(1, n + 1):
        img = make(standard_simplex(k, n))
        if not img.is_lattice:
            return k, img
    return None


def suite_integrality(n: int, seed: int = 0, trials: int | None = None) -> SuiteReport:
    """m_n dst(P) integral; lattice images of z_ab, planar rotated z_ab and c Pi
    for admissible parameters; T_k witnesses for inadmissible ones."""
    trials = default_trials(n) if trials is None else trials
    m = m_n(n)
    report = SuiteReport("integrality", notes=[NOT_CHECKED])
    good = [(0, 0), (1, 1), (0, m), (1, 1 + m), (2 + m, 2), (3, 3 + 2 * m)]
    bad = [(1, 2), (0, 1), (1, 1 + m // 2), (Fraction(1, 2), Fraction(1, 2))]
    ops_good = [OperatorSpec("z_ab", a, b) for a, b in good]
    ops_good.append(OperatorSpec("projection_scaled", c=factorial(n - 1)))
    ops_good.append(OperatorSpec("projection_scaled", c=2 * factorial(n - 1)))
    ops_bad = [OperatorSpec("z_ab", a, b) for a, b in bad]
    ops_bad.append(OperatorSpec("projection_scaled", c=Fraction(factorial(n - 1), 2)))
    if n == 2:
        ops_good += [OperatorSpec("rot_z_ab_2d", 1, 7), OperatorSpec("rot_z_ab_2d", 0, 6),
                     OperatorSpec("rot_z_ab_2d", 2, 2)]
        ops_bad += [OperatorSpec("rot_z_ab_2d", 1, 2), OperatorSpec("rot_z_ab_2d", 0, 3)]
    with _timed(report):
        for t in range(trials):
            rng = rng_stream(seed, _STREAM["integrality"], n, t)
            P = random_lattice_polytope(n, seed=rng)
            d = discrete_steiner(P)
            md = tuple(m * x for x in d)
            report.check(all(Fraction(x).denominator == 1 for x in md), f"{m} dst(P) integral",
                         {"P": P.to_json()}, "integer vector", md)
            for op in ops_good:
                img = op(P)
                report.check(img.is_lattice, "lattice image",
                             {"operator": op.to_json(), "P": P.to_json()}, "lattice polytope", img)
        report.trials = trials
        for op in ops_bad:
            w = _witness(n, op)
            report.check(w is not None, "inadmissible parameters have a T_k witness",
                         {"operator": op.to_json()}, "non-lattice image of some T_k", "none found")
            if w is not None:
                report.notes.append(f"{op}: witness T_{w[0]}")
    return report


def expansion_identities(n: int, k: int, a, b, c) -> dict[str, tuple[Polytope, Polytope]]:
    """Both sides of the cube expansion identities for one k.

    contra: Z = c Pi,   Z(kC) + c (k^n - k^{n-1}) Pi C == k^n Z(C)
    equi:   Z = z_ab,   Z(kC) + k^n [-h,h]^n == k^n Z(C) + k [-h,h]^n, h = (a+b)/2
    """
    C = unit_cube(n)
    h = Fraction(a + b, 2)
    sym = scale(C + tuple(Fraction(-1, 2) for _ in range(n)), 2 * h)   # [-h, h]^n
    PiC = projection_body(C)
    contra_left = minkowski_sum(scale(projection_body(scale(C, k)), c),
                                scale(PiC, c * (k ** n - k ** (n - 1))))
    contra_right = scale(scale(PiC, c), k ** n)
    equi_left = minkowski_sum(z_ab(scale(C, k), a, b), scale(sym, k ** n))
    equi_right = minkowski_sum(scale(z_ab(C, a, b), k ** n), scale(sym, k))
    return {"contra": (contra_left, contra_right), "equi": (equi_left, equi_right),
            "cube": (z_ab(C, a, b), sym)}


def suite_expansion_identities(n: int, kmax: int = 5, a=1, b=1, c=1) -> SuiteReport:
    if kmax < 3:
        raise ValueError("kmax must be at least 3")
    report = SuiteReport(f"expansion[a={fmt(a)}, b={fmt(b)}, c={fmt(c)}]")
    with _timed(report):
        for k in range(1, kmax + 1):
            for name, (left, right) in expansion_identities(n, k, a, b, c).items():
                report.check(left == right, f"{name} identity",
                             {"n": n, "k": k, "a": fmt(a), "b": fmt(b), "c": fmt(c)}, right, left)
        report.trials = kmax
    return report


def suite_ehrhart(n: int, seed: int = 0, trials: int | None = None) -> SuiteReport:
    """Degree, constant and leading coefficients, homogeneity, out-of-sample
    values, bivariate polynomiality and L_1 additivity."""
    trials = default_trials(n) if trials is None else trials
    report = SuiteReport("ehrhart")
    with _timed(report):
        for t in range(trials):
            rng = rng_stream(seed, _STREAM["ehrhart"], n, t)
            P = random_lattice_polytope(n, seed=rng)
            inputs = {"P": P.to_json()}
            E = ehrhart(P)
            L = E.coefficients
            report.check(E.polynomial.degree == P.dim, "degree == dim", inputs, P.dim,
                         E.polynomial.degree)
            report.check(L[0] == 1, "L_0 == 1", inputs, 1, L[0])
            if P.dim == n:
                report.check(L[n] == volume(P), "L_n == volume", inputs, volume(P), L[n])
            L2 = ehrhart(scale(P, 2)).coefficients
            expected = [2 ** i * x for i, x in enumerate(L)]
            report.check(L2 == expected, "L_i(2P) == 2^i L_i(P)", inputs, expected, L2)
            for k in (n + 1, n + 3):
                report.check(E(k) == count(scale(P, k)), f"L({k}P) from the polynomial",
                             inputs, count(scale(P, k)), E(k))
            if t % 4 == 0:
                Q = random_lattice_polytope(n, box=2, seed=rng)
                pq = {"P": P.to_json(), "Q": Q.to_json()}
                report.check(bivariate_count_check(P, Q), "L(kP + lQ) polynomial", pq, True, False)
                report.check(l1_additivity_check(P, Q), "L_1(P + Q) == L_1(P) + L_1(Q)", pq,
                             True, False)
        report.trials = trials
    return report


def suite_minkowski(n: int, seed: int = 0, trials: int | None = None) -> SuiteReport:
    """Facet area vectors of full-dimensional polytopes sum to o."""
    trials = default_trials(n) if trials is None else trials
    report = SuiteReport("minkowski")
    with _timed(report):
        corpus = [unit_cube(n), standard_simplex(n)] + list(cube_triangulation(n).cells)
        corpus += [random_lattice_polytope(n, seed=rng_stream(seed, _STREAM["minkowski"], n, t),
                                           full_dim=True) for t in range(trials)]
        for P in corpus:
            total = (0,) * n
            for z in facet_area_vectors(P):
                total = vec_add(total, z)
            report.check(all(x == 0 for x in total), "sum of facet area vectors == o",
                         {"P": P.to_json()}, (0,) * n, total)
        report.trials = len(corpus)
    return report


# -- registry ------------------------------------------------------------------------------


def default_operators(n: int) -> list[OperatorSpec]:
    ops = [OperatorSpec("z_ab", a, b) for a, b in ((1, 0), (0, 1), (2, Fraction(1, 2)), (1, 1))]
    ops += [OperatorSpec("difference_scaled", c=1), OperatorSpec("projection_scaled", c=1),
            OperatorSpec("projection_scaled", c=2), OperatorSpec("zero")]
    if n == 2:
        ops.append(OperatorSpec("rot_z_ab_2d", 1, 2))
    return ops


def negative_controls(n: int, seed: int = 0, trials: int | None = None) -> list[SuiteReport]:
    """Suites run on deliberately broken operators; each report should fail."""
    return [suite_valuation(OperatorSpec("z_ab_centroid", 1, 0), n, seed, trials),
            suite_contravariance(OperatorSpec("projection_flipped", c=1), n, seed, trials)]


def _for_ops(fn, variance=None):
    def run(n, seed, trials):
        return [fn(op, n, seed, trials) for op in default_operators(n)
                if variance is None or op.variance == variance or op.kind == "zero"]
    return run


SUITES = {
    "valuation": _for_ops(suite_valuation),
    "equivariance": _for_ops(suite_equivariance, "equivariant"),
    "contravariance": _for_ops(suite_contravariance, CONTRAVARIANT),
    "dst": lambda n, seed, trials: [suite_dst(n, seed, trials)],
    "integrality": lambda n, seed, trials: [suite_integrality(n, seed, trials)],
    "expansion": lambda n, seed, trials: [suite_expansion_identities(n, 5, a, b, c)
                                          for a, b, c in ((1, 1, 1), (2, 0, 2),
                                                          (Fraction(1, 2), 2, Fraction(1, 3)))],
    "ehrhart": lambda n, seed, trials: [suite_ehrhart(n, seed, trials)],
    "minkowski": lambda n, seed, trials: [suite_minkowski(n, seed, trials)],
    "decompositions": lambda n, seed, trials: [suite_decompositions(n)],
    "negative-controls": negative_controls,
}
ALL = tuple(name for name in SUITES if name != "negative-controls")


def suite_decompositions(n: int) -> SuiteReport:
    """Validity and inclusion-exclusion for the constructed decompositions."""
    report = SuiteReport("decompositions")
    with _timed(report):
        ds = [prism_triangulation(n), cube_triangulation(n)]
        if n <= 3:
            ds += [grid_decomposition(n, k) for k in (1, 2, 3)]
        for D in ds:
            problems = D.validate()
            report.check(not problems, "valid cell decomposition", {"name": D.name}, [], problems)
            for which in ("count", "volume", "moment"):
                report.check(inclusion_exclusion_check(D, which), f"inclusion-exclusion ({which})",
                             {"name": D.name}, True, False)
        report.trials = len(ds)
    return report


def run_suites(names, n: int, seed: int = 0, trials: int | None = None) -> list[SuiteReport]:
    reports = []
    for name in names:
        if name not in SUITES:
            raise KeyError(name)
        reports.extend(SUITES[name](n, seed, trials))
    return reports
