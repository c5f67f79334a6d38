"""Cohomology of torus-invariant line bundles, one character at a time.

For a character ``m`` let ``S(m) = {i : <m, u_i> < -a_i}``.  The graded piece
of ``H^p(X, O(D))`` in degree ``m`` is the reduced cohomology
``H~^{p-1}`` of the full subcomplex of the fan's nerve on ``S(m)``; the empty
complex has ``H~^{-1} = 1``, which is how sections (lattice points of the
divisor polytope) show up in ``h^0``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations
from math import ceil, floor

import numpy as np

from ._linalg import det, normalize_number, rank, solve
from .divisor import TDivisor, canonical_divisor, is_effective, is_nef
from .errors import ConsistencyError, HypothesisError
from .lattice import Fan, pair, require_valid
from .ring import build_ring

MAX_BOX_SIDE = 10_000
_MAX_INFLATE = 8


@dataclass(frozen=True)
class SupportComplex:
    vertices: frozenset
    simplices: frozenset  # nonempty faces only


def negative_support_complex(D: TDivisor, m) -> SupportComplex:
    fan = D.fan
    S = frozenset(i for i, (u, a) in enumerate(zip(fan.rays, D.coeffs)) if pair(m, u) < -a)
    return _full_subcomplex(fan, S)


def _full_subcomplex(fan, S):
    simplices = frozenset(f for f in fan.faces if f and f <= S)
    return SupportComplex(S, simplices)


def reduced_cohomology(cx: SupportComplex) -> dict:
    """``{q: dim H~^q}`` over the rationals for ``q >= -1``, zero entries omitted."""
    by_dim = {-1: [frozenset()]}
    for s in cx.simplices:
        by_dim.setdefault(len(s) - 1, []).append(s)
    for q in by_dim:
        by_dim[q].sort(key=sorted)
    top = max(by_dim)
    ranks = {}
    for q in range(0, top + 1):
        rows = by_dim[q]
        index = {s: j for j, s in enumerate(by_dim[q - 1])}
        matrix = []
        for s in rows:
            row = [0] * len(index)
            for k, v in enumerate(sorted(s)):
                row[index[s - {v}]] = (-1) ** k
            matrix.append(row)
        ranks[q] = rank(matrix)
    out = {}
    for q in range(-1, top + 1):
        d = len(by_dim[q]) - ranks.get(q, 0) - ranks.get(q + 1, 0)
        if d:
            out[q] = d
    return out


@lru_cache(maxsize=4096)
def _dims_for_support(fan: Fan, S: frozenset) -> tuple:
    """Contribution of a character with negative support ``S`` to ``h^0..h^n``."""
    red = reduced_cohomology(_full_subcomplex(fan, S))
    return tuple(red.get(p - 1, 0) for p in range(fan.dim + 1))


@dataclass
class CohomologyTable:
    """``h^p`` for ``p = 0..n`` plus the per-character breakdown."""

    divisor: TDivisor
    h: tuple
    box: tuple
    _coords: object = field(repr=False, default=None)
    _mask_index: object = field(repr=False, default=None)
    _mask_dims: dict = field(repr=False, default=None)

    @property
    def euler_characteristic(self) -> int:
        return sum((-1) ** p * x for p, x in enumerate(self.h))

    @cached_property
    def breakdown(self) -> dict:
        """``{m: {p: contribution}}`` over the characters that contribute at all."""
        out = {}
        for k, dims in self._mask_dims.items():
            if not any(dims):
                continue
            contrib = {p: d for p, d in enumerate(dims) if d}
            for row in self._coords[self._mask_index == k]:
                out[tuple(int(x) for x in row)] = contrib
        return dict(sorted(out.items()))

    def to_json(self) -> dict:
        return {
            "divisor": list(self.divisor.coeffs),
            "h": list(self.h),
            "box": [list(b) for b in self.box],
            "breakdown": [
                {"m": list(m), "contributions": {str(p): c for p, c in sorted(v.items())}}
                for m, v in self.breakdown.items()
            ],
        }


def default_box(D: TDivisor, inflate: int = 1) -> tuple:
    """Integer box around every vertex of the hyperplane arrangement ``<m, u_i> = -a_i``."""
    fan = D.fan
    n = fan.dim
    lo = [0] * n
    hi = [0] * n
    for subset in combinations(range(fan.n_rays), n):
        matrix = [list(fan.rays[i]) for i in subset]
        if det(matrix) == 0:
            continue
        m = solve(matrix, [-D.coeffs[i] for i in subset])
        for k in range(n):
            lo[k] = min(lo[k], floor(m[k]))
            hi[k] = max(hi[k], ceil(m[k]))
    return tuple((a - inflate, b + inflate) for a, b in zip(lo, hi))


def _scan(D, box):
    fan = D.fan
    if any(b - a + 1 > MAX_BOX_SIDE for a, b in box):
        raise ValueError(f"search box {box} exceeds side {MAX_BOX_SIDE}")
    axes = [np.arange(a, b + 1, dtype=np.int64) for a, b in box]
    grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, fan.dim)
    rays = np.array(fan.rays, dtype=np.int64)
    coeffs = np.array(D.coeffs, dtype=np.int64)
    negative = grid @ rays.T < -coeffs
    weights = np.left_shift(np.int64(1), np.arange(fan.n_rays, dtype=np.int64))
    masks = negative.astype(np.int64) @ weights
    uniq, inverse, counts = np.unique(masks, return_inverse=True, return_counts=True)
    h = [0] * (fan.dim + 1)
    mask_dims = {}
    for k, (mask, count) in enumerate(zip(uniq.tolist(), counts.tolist())):
        S = frozenset(i for i in range(fan.n_rays) if mask >> i & 1)
        dims = _dims_for_support(fan, S)
        mask_dims[k] = dims
        for p, d in enumerate(dims):
            h[p] += d * count
    return CohomologyTable(D, tuple(h), tuple(box), grid, inverse.reshape(-1), mask_dims)


def cohomology_table(D: TDivisor, search_box=None) -> CohomologyTable:
    """Dimensions ``h^p(X, O(D))``.

    Without an explicit ``search_box`` the box is chosen automatically and, on
    surfaces, widened until the Euler characteristic matches Riemann-Roch.
    """
    fan = D.fan
    require_valid(fan)
    if fan.dim > 4:
        raise ValueError("line bundle cohomology is supported for n <= 4 only")
    if search_box is not None:
        return _scan(D, tuple(tuple(b) for b in search_box))
    target = riemann_roch(D) if fan.dim == 2 else None
    for inflate in range(1, _MAX_INFLATE + 1):
        table = _scan(D, default_box(D, inflate))
        if target is None or table.euler_characteristic == target:
            return table
    raise ConsistencyError(f"no search box reproduced Riemann-Roch for {D}")


def riemann_roch(D: TDivisor):
    """``1 + D.(D - K)/2`` on a toric surface."""
    if D.fan.dim != 2:
        raise ValueError("Riemann-Roch check is implemented for surfaces only")
    ring = build_ring(D.fan)
    value = 1 + Fraction(ring.intersection_number(D, D - canonical_divisor(D.fan)), 2)
    return normalize_number(value)


def euler_rr_check(D: TDivisor) -> tuple:
    table = cohomology_table(D, search_box=default_box(D))
    chi = table.euler_characteristic
    rr = riemann_roch(D)
    return chi, rr, chi == rr


@dataclass
class VanishingReport:
    divisor: tuple
    m_max: int
    rows: list
    violations: list

    @property
    def fatal(self) -> bool:
        return bool(self.violations)

    def to_json(self) -> dict:
        return {
            "divisor": list(self.divisor),
            "m_max": self.m_max,
            "rows": self.rows,
            "violations": self.violations,
            "fatal": self.fatal,
        }


def verify_dp_vanishing(D: TDivisor, m_max: int = 3) -> VanishingReport:
    """Check ``h^0(-mD) = h^1(-mD) = 0`` for ``m = 1..m_max`` on a surface.

    ``D`` must be nef, effective and have nonzero self-intersection class.  A
    violation means this library is wrong, so the report marks it fatal.
    """
    if D.fan.dim != 2:
        raise HypothesisError("vanishing check is implemented on surfaces only")
    if not is_effective(D):
        raise HypothesisError(f"{D} is not effective")
    if not is_nef(D):
        raise HypothesisError(f"{D} is not nef")
    ring = build_ring(D.fan)
    if ring.self_square_is_zero(D):
        raise HypothesisError(f"[{D}]^2 vanishes")
    rows = []
    violations = []
    for m in range(1, m_max + 1):
        table = cohomology_table(-m * D)
        rows.append({"m": m, "h": list(table.h)})
        if table.h[0] or table.h[1]:
            violations.append({"m": m, "h": list(table.h)})
    return VanishingReport(D.coeffs, m_max, rows, violations)
