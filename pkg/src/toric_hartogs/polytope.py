"""Newton polytopes, support functions, volumes and mixed volumes.

Polytopes are kept as their vertex lists with exact coordinates (``int``, or
``Fraction`` for the rational polytopes of non-nef divisors).  The hull is
computed by enumerating supporting hyperplanes inside the affine hull of the
points, which is plenty for the dimensions (n <= 4) and sizes this package
works with.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations, product
from math import ceil, factorial, floor, lcm

from ._linalg import det, normalize_number, nullspace, rref
from .lattice import M_SIDE, LatticeVector


@dataclass(frozen=True)
class LaurentSupport:
    """Exponent vectors of a Laurent polynomial, with optional coefficients.

    Coefficients are kept only for display; none of the geometry looks at them.
    """

    terms: tuple
    coefficients: dict = field(default=None, compare=False, hash=False)

    def __post_init__(self):
        terms = tuple(sorted({tuple(int(x) for x in t) for t in self.terms}))
        if not terms:
            raise ValueError("a Laurent support must be nonempty")
        if len(terms) != len(self.terms):
            raise ValueError("exponent vectors must be distinct")
        if len({len(t) for t in terms}) != 1:
            raise ValueError("exponent vectors have mixed lengths")
        object.__setattr__(self, "terms", terms)

    @property
    def dim(self) -> int:
        return len(self.terms[0])

    def translate(self, m) -> "LaurentSupport":
        shifted = tuple(tuple(a + b for a, b in zip(t, m)) for t in self.terms)
        coeffs = None
        if self.coefficients is not None:
            coeffs = {tuple(a + b for a, b in zip(t, m)): c for t, c in self.coefficients.items()}
        return LaurentSupport(shifted, coeffs)


def _exact(x):
    return normalize_number(x) if isinstance(x, Fraction) else int(x)


def _as_point(p):
    return tuple(_exact(x) for x in p)


class _Hull:
    """Hull data for a finite point set, computed in its affine hull.

    ``facets`` are ``(normal, offset, members)`` in projected integer
    coordinates with ``<normal, q> >= offset`` on the polytope; ``members`` are
    indices into ``vertices``.  ``equations`` are ``(w, c)`` pairs with
    ``<w, p> == c`` cutting out the affine hull in the ambient space.
    """

    def __init__(self, points):
        pts = sorted(set(_as_point(p) for p in points))
        if not pts:
            raise ValueError("hull of an empty point set")
        self.ambient = len(pts[0])
        base = pts[0]
        diffs = [[Fraction(a - b) for a, b in zip(p, base)] for p in pts[1:]]
        if diffs:
            _, pivots = rref(diffs, self.ambient)
        else:
            pivots = []
        self.dim = len(pivots)
        self.coords = pivots
        self.equations = []
        if self.dim < self.ambient:
            for w in nullspace(diffs, self.ambient) if diffs else nullspace([], self.ambient):
                c = sum(a * b for a, b in zip(w, base))
                self.equations.append((w, c))
        # integer projected coordinates; scaling by a common denominator keeps
        # the combinatorics unchanged
        den = 1
        for p in pts:
            for k in pivots:
                den = lcm(den, Fraction(p[k]).denominator)
        self.scale = den
        proj = [tuple(int(Fraction(p[k]) * den) for k in pivots) for p in pts]
        self.facets = []
        if self.dim == 0:
            self.vertices = [pts[0]]
            return
        cand = _vertex_candidates(proj, self.dim)
        pts = [pts[i] for i in cand]
        proj = [proj[i] for i in cand]
        facets = self._facets(proj)
        tight = [set() for _ in proj]
        for fi, (normal, offset) in enumerate(facets):
            for i, q in enumerate(proj):
                if sum(a * b for a, b in zip(normal, q)) == offset:
                    tight[i].add(fi)
        keep = []
        for i in range(len(proj)):
            normals = [facets[f][0] for f in tight[i]]
            if len(normals) >= self.dim and len(rref(normals, self.dim)[1]) == self.dim:
                keep.append(i)
        index = {old: new for new, old in enumerate(keep)}
        self.vertices = [pts[i] for i in keep]
        self.projected = [proj[i] for i in keep]
        for fi, (normal, offset) in enumerate(facets):
            members = frozenset(index[i] for i in keep if fi in tight[i])
            self.facets.append((normal, offset, members))

    def _facets(self, proj):
        return _facets(proj, self.dim)

    def contains(self, p) -> bool:
        for w, c in self.equations:
            if sum(a * b for a, b in zip(w, p)) != c:
                return False
        if self.dim == 0:
            return tuple(p) == tuple(self.vertices[0])
        q = [Fraction(p[k]) * self.scale for k in self.coords]
        return all(sum(a * b for a, b in zip(normal, q)) >= offset for normal, offset, _ in self.facets)



def _facets(proj, d):
    """Supporting hyperplanes of a full-dimensional integer point set, brute force."""
    if d == 1:
        xs = [q[0] for q in proj]
        return [((1,), min(xs)), ((-1,), -max(xs))]
    if d == 2:
        return _polygon_facets(proj)
    found = {}
    for subset in combinations(range(len(proj)), d):
        q0 = proj[subset[0]]
        edges = [[a - b for a, b in zip(proj[j], q0)] for j in subset[1:]]
        normal = _cross(edges)
        if not any(normal):
            continue
        offset = sum(a * b for a, b in zip(normal, q0))
        sign = 0
        ok = True
        for q in proj:
            s = sum(a * b for a, b in zip(normal, q)) - offset
            if s == 0:
                continue
            s = 1 if s > 0 else -1
            if sign == 0:
                sign = s
            elif s != sign:
                ok = False
                break
        if not ok or sign == 0:
            continue
        if sign < 0:
            normal = tuple(-a for a in normal)
            offset = -offset
        g = 0
        for a in normal:
            g = _gcd(g, a)
        normal = tuple(a // g for a in normal)
        offset //= g
        found[normal] = offset
    return sorted(found.items())


_DIRECTIONS_RNG_SEED = 0


def _vertex_candidates(proj, d):
    """Indices of a subset of points with the same convex hull (usually near minimal).

    Seeds with minimizers of fixed directions, then repeatedly adds the
    minimizers of every facet normal of the current hull that some point
    violates.  On exit every point lies in the hull of the returned subset.
    """
    k = len(proj)
    if k <= 3 * d + 3 or d <= 1:
        return list(range(k))
    rng = random.Random(_DIRECTIONS_RNG_SEED)
    directions = []
    for i in range(d):
        for s in (1, -1):
            directions.append(tuple(s * int(i == j) for j in range(d)))
    for _ in range(4 * d + 8):
        directions.append(tuple(rng.randint(-7, 7) for _ in range(d)))
    chosen = set()
    for c in directions:
        vals = [sum(a * b for a, b in zip(c, q)) for q in proj]
        mn = min(vals)
        chosen.update(i for i, v in enumerate(vals) if v == mn)
    # make the seed full dimensional
    base = proj[min(chosen)]
    basis = [[a - b for a, b in zip(proj[i], base)] for i in sorted(chosen)]
    r = len(rref(basis, d)[1]) if basis else 0
    for i in range(k):
        if r == d:
            break
        if i in chosen:
            continue
        trial = basis + [[a - b for a, b in zip(proj[i], base)]]
        rt = len(rref(trial, d)[1])
        if rt > r:
            basis, r = trial, rt
            chosen.add(i)
    while True:
        idx = sorted(chosen)
        added = False
        for normal, offset in _facets([proj[i] for i in idx], d):
            vals = [sum(a * b for a, b in zip(normal, q)) for q in proj]
            mn = min(vals)
            if mn < offset:
                chosen.update(i for i, v in enumerate(vals) if v == mn)
                added = True
        if not added:
            return idx


def _gcd(a, b):
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a


def _polygon_facets(proj):
    """Edges of a planar hull by the monotone chain; extremal points only."""
    pts = sorted(set(proj))

    def turn(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    def chain(seq):
        out = []
        for p in seq:
            while len(out) >= 2 and turn(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = chain(pts)
    upper = chain(reversed(pts))
    ring = lower[:-1] + upper[:-1]  # counter-clockwise
    found = {}
    for a, b in zip(ring, ring[1:] + ring[:1]):
        dx, dy = b[0] - a[0], b[1] - a[1]
        g = _gcd(dx, dy)
        normal = (-dy // g, dx // g)  # inner normal for counter-clockwise order
        found[normal] = normal[0] * a[0] + normal[1] * a[1]
    return sorted(found.items())


def _cross(vectors):
    """Integer normal to ``d-1`` vectors in ``Z^d`` via signed maximal minors."""
    d = len(vectors) + 1
    if d == 3:
        (a1, a2, a3), (b1, b2, b3) = vectors
        return (a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1)
    out = []
    for j in range(d):
        minor = [[v[k] for k in range(d) if k != j] for v in vectors]
        out.append((-1) ** j * det(minor))
    return tuple(out)


@dataclass(frozen=True)
class LatticePolytope:
    """Convex hull stored by its vertices.

    An empty vertex tuple is the empty polytope, which arises as the polytope
    of a divisor without sections.
    """

    vertices: tuple
    ambient_dim: int

    @classmethod
    def hull(cls, points, ambient_dim=None) -> "LatticePolytope":
        points = list(points)
        if not points:
            if ambient_dim is None:
                raise ValueError("ambient dimension required for the empty polytope")
            return cls((), ambient_dim)
        h = _Hull(points)
        poly = cls(tuple(sorted(h.vertices)), h.ambient)
        poly.__dict__["_hull"] = h
        return poly

    @classmethod
    def empty(cls, ambient_dim) -> "LatticePolytope":
        return cls((), ambient_dim)

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    @cached_property
    def _hull(self):
        return _Hull(self.vertices)

    def __contains__(self, p) -> bool:
        return not self.is_empty and self._hull.contains(p)

    def translate(self, m) -> "LatticePolytope":
        return LatticePolytope(
            tuple(sorted(tuple(_exact(a + b) for a, b in zip(v, m)) for v in self.vertices)),
            self.ambient_dim,
        )

    def scale(self, k) -> "LatticePolytope":
        return LatticePolytope.hull([[k * x for x in v] for v in self.vertices], self.ambient_dim)


def newton_polytope(s: LaurentSupport) -> LatticePolytope:
    return LatticePolytope.hull(s.terms)


def support_function(P, u):
    """``min <u, m>`` over the polytope; ``P`` may also be a bare point collection."""
    pts = P.vertices if isinstance(P, LatticePolytope) else getattr(P, "terms", P)
    if not pts:
        raise ValueError("support function of an empty polytope")
    return _exact(min(sum(a * b for a, b in zip(u, m)) for m in pts))


def dim(P: LatticePolytope) -> int:
    """Dimension of the affine hull; -1 for the empty polytope."""
    if P.is_empty:
        return -1
    return P._hull.dim


def lattice_points(P: LatticePolytope) -> list:
    if P.is_empty:
        return []
    n = P.ambient_dim
    lo = [ceil(min(Fraction(v[k]) for v in P.vertices)) for k in range(n)]
    hi = [floor(max(Fraction(v[k]) for v in P.vertices)) for k in range(n)]
    h = P._hull
    return [
        LatticeVector(p, M_SIDE)
        for p in product(*(range(a, b + 1) for a, b in zip(lo, hi)))
        if h.contains(p)
    ]


def _triangulate(points):
    """Simplices (as point lists) of a pulling triangulation from the first vertex."""
    h = _Hull(points)
    if h.dim == 0:
        return [[h.vertices[0]]]
    v0 = 0
    simplices = []
    for _, _, members in h.facets:
        if v0 in members:
            continue
        for simplex in _triangulate([h.vertices[i] for i in members]):
            simplices.append([h.vertices[v0]] + simplex)
    return simplices


@lru_cache(maxsize=4096)
def normalized_volume(P: LatticePolytope):
    """``n!`` times the Euclidean volume; zero unless full dimensional."""
    if P.is_empty or dim(P) < P.ambient_dim:
        return 0
    total = Fraction(0)
    for simplex in _triangulate(P.vertices):
        v0 = simplex[0]
        total += abs(Fraction(det([[Fraction(a) - Fraction(b) for a, b in zip(v, v0)] for v in simplex[1:]])))
    return normalize_number(total)


@lru_cache(maxsize=4096)
def minkowski_sum(P: LatticePolytope, Q: LatticePolytope) -> LatticePolytope:
    if P.ambient_dim != Q.ambient_dim:
        raise ValueError("Minkowski sum of polytopes in different dimensions")
    if P.is_empty or Q.is_empty:
        return LatticePolytope.empty(P.ambient_dim)
    sums = {tuple(_exact(a + b) for a, b in zip(p, q)) for p in P.vertices for q in Q.vertices}
    return LatticePolytope.hull(sums)


def mixed_volume(*polytopes):
    """Mixed volume by polarization, normalized so ``MV(P, ..., P)`` is the normalized volume."""
    n = len(polytopes)
    if n == 0:
        raise ValueError("mixed volume needs at least one polytope")
    if any(P.ambient_dim != n for P in polytopes):
        raise ValueError(f"mixed volume needs {n} polytopes in dimension {n}")
    if any(P.is_empty for P in polytopes):
        raise ValueError("mixed volume of an empty polytope")
    total = Fraction(0)
    for k in range(1, n + 1):
        for subset in combinations(range(n), k):
            Q = polytopes[subset[0]]
            for i in subset[1:]:
                Q = minkowski_sum(Q, polytopes[i])
            total += (-1) ** (n - k) * Fraction(normalized_volume(Q))
    return normalize_number(total / factorial(n))
