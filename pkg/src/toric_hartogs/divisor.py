"""Torus-invariant divisors on a smooth complete fan.

Sign convention: the piecewise-linear support function of ``D = sum a_i D_i``
takes the value ``-a_i`` at the ray generator ``u_i``.  For the divisor at
infinity of a Laurent polynomial this is the support function ``l_f`` of its
Newton polytope on every ray.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from ._linalg import det, normalize_number, solve
from .errors import ConsistencyError
from .lattice import M_SIDE, Fan, LatticeVector, pair, require_valid, walls
from .polytope import LatticePolytope, LaurentSupport, support_function
from .ring import build_ring


@dataclass(frozen=True)
class TDivisor:
    fan: Fan
    coeffs: tuple

    def __post_init__(self):
        coeffs = tuple(int(a) for a in self.coeffs)
        if len(coeffs) != self.fan.n_rays:
            raise ValueError(f"divisor needs {self.fan.n_rays} coefficients, got {len(coeffs)}")
        object.__setattr__(self, "coeffs", coeffs)

    def _same_fan(self, other):
        if other.fan != self.fan:
            raise ValueError("divisors live on different fans")

    def __add__(self, other):
        self._same_fan(other)
        return TDivisor(self.fan, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return TDivisor(self.fan, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, k):
        return TDivisor(self.fan, tuple(k * a for a in self.coeffs))

    def __str__(self):
        terms = [f"{a}*D{i + 1}" for i, a in enumerate(self.coeffs) if a]
        return " + ".join(terms) or "0"


def prime_divisor(fan: Fan, i: int) -> TDivisor:
    return TDivisor(fan, tuple(int(j == i) for j in range(fan.n_rays)))


def zero_divisor(fan: Fan) -> TDivisor:
    return TDivisor(fan, (0,) * fan.n_rays)


def canonical_divisor(fan: Fan) -> TDivisor:
    return TDivisor(fan, (-1,) * fan.n_rays)


def divisor_at_infinity(fan: Fan, s: LaurentSupport) -> TDivisor:
    """``-sum_i l_f(u_i) D_i`` for the Newton polytope of the support ``s``."""
    require_valid(fan)
    if s.dim != fan.dim:
        raise ValueError(f"support lives in dimension {s.dim}, fan in dimension {fan.dim}")
    return TDivisor(fan, tuple(-support_function(s.terms, u) for u in fan.rays))


def principal_divisor(fan: Fan, m) -> TDivisor:
    return TDivisor(fan, tuple(pair(m, u) for u in fan.rays))


def is_effective(D: TDivisor) -> bool:
    return all(a >= 0 for a in D.coeffs)


def cone_functionals(D: TDivisor) -> dict:
    """For every maximal cone, the character ``m`` with ``<m, u_i> = -a_i`` on its rays."""
    fan = D.fan
    out = {}
    for c in fan.max_cones:
        matrix = [list(fan.rays[i]) for i in c]
        if abs(det(matrix)) != 1:
            raise ValueError(f"cone {c} is not unimodular")
        sol = solve(matrix, [-D.coeffs[i] for i in c])
        out[c] = LatticeVector([normalize_number(x) for x in sol], M_SIDE)
    return out


def nef_witnesses(D: TDivisor) -> list:
    """Per maximal cone: its local character and the rays where convexity fails."""
    fan = D.fan
    rows = []
    for c, m in cone_functionals(D).items():
        bad = [j for j, u in enumerate(fan.rays) if pair(m, u) < -D.coeffs[j]]
        rows.append({"cone": list(c), "m": list(m), "violations": bad})
    return rows


def _nef_by_convexity(D):
    return all(not row["violations"] for row in nef_witnesses(D))


def wall_degrees(D: TDivisor) -> dict:
    """``D . C_w`` for the torus-invariant curve of every wall ``w``."""
    ring = build_ring(D.fan)
    cls = ring.class_of(D)
    out = {}
    for w in walls(D.fan):
        curve = ring.monomial_class(w.facet)
        out[w.facet] = ring.degree_eval(ring.multiply(cls, curve))
    return out


def is_nef(D: TDivisor) -> bool:
    """Convexity of the support function, cross-checked against the wall curves."""
    require_valid(D.fan)
    by_cones = _nef_by_convexity(D)
    by_curves = all(v >= 0 for v in wall_degrees(D).values())
    if by_cones != by_curves:
        raise ConsistencyError(
            f"nef tests disagree for {D}: cone functionals say {by_cones}, wall curves say {by_curves}"
        )
    return by_cones


def polytope_of_divisor(D: TDivisor) -> LatticePolytope:
    """``{m : <m, u_i> >= -a_i for all i}``, possibly empty or with rational vertices."""
    fan = D.fan
    n = fan.dim
    rays = fan.rays
    points = set()
    for subset in combinations(range(fan.n_rays), n):
        matrix = [list(rays[i]) for i in subset]
        if det(matrix) == 0:
            continue
        m = solve(matrix, [-D.coeffs[i] for i in subset])
        if all(sum(a * b for a, b in zip(m, u)) >= -a_j for u, a_j in zip(rays, D.coeffs)):
            points.add(tuple(normalize_number(x) for x in m))
    if not points:
        return LatticePolytope.empty(n)
    return LatticePolytope.hull(points)
