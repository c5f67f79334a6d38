"""The cohomology ring of a smooth complete toric variety.

The ring is the polynomial ring in one variable per ray modulo the
Stanley-Reisner ideal (products over ray sets that span no cone) and the
linear relations ``sum_i <m, u_i> x_i``.  Each graded piece is computed
separately as a quotient of the space of degree-k monomials by exact row
reduction; no Groebner bases are involved.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb

from ._linalg import normalize_number, rref
from .errors import ConsistencyError
from .lattice import Fan, require_valid


def _merge(a, b):
    return tuple(sorted(a + b))


@dataclass(frozen=True, eq=False)
class CohomologyClass:
    ring: "GradedRing"
    degree: int
    coords: tuple

    def _check(self, other):
        if not isinstance(other, CohomologyClass):
            return NotImplemented
        if other.ring.fan != self.ring.fan:
            raise ValueError("classes live in rings of different fans")
        if other.degree != self.degree:
            raise ValueError("cannot add classes of different degrees")
        return other

    def __eq__(self, other):
        if not isinstance(other, CohomologyClass):
            return NotImplemented
        return (self.ring.fan, self.degree, self.coords) == (other.ring.fan, other.degree, other.coords)

    def __hash__(self):
        return hash((self.ring.fan, self.degree, self.coords))

    def __add__(self, other):
        other = self._check(other)
        return CohomologyClass(self.ring, self.degree, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return CohomologyClass(self.ring, self.degree, tuple(-a for a in self.coords))

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, k):
        if isinstance(k, CohomologyClass):
            return NotImplemented
        return CohomologyClass(self.ring, self.degree, tuple(k * a for a in self.coords))

    def __mul__(self, other):
        if isinstance(other, CohomologyClass):
            return self.ring.multiply(self, other)
        return other * self

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __repr__(self):
        terms = " + ".join(
            f"{normalize_number(c)}*{_mono_str(m)}" for c, m in zip(self.coords, self.ring.basis[self.degree]) if c
        )
        return f"<degree {self.degree} class: {terms or '0'}>"


def _mono_str(mono):
    if not mono:
        return "1"
    return "*".join(f"x{i + 1}" for i in mono)


class GradedRing:
    """Graded quotient ring with a lexicographically smallest monomial basis per degree."""

    def __init__(self, fan: Fan):
        require_valid(fan)
        self.fan = fan
        self.n = fan.dim
        self.r = fan.n_rays
        self.basis = []
        self._nf = []
        for k in range(self.n + 1):
            basis, nf = self._build_degree(k)
            self.basis.append(basis)
            self._nf.append(nf)
        self._products = {}
        self._point_scale = self._normalization()

    def _build_degree(self, k):
        fan = self.fan
        monos = list(combinations_with_replacement(range(self.r), k))
        alive = [m for m in monos if fan.is_cone(set(m))]
        # largest monomials first, so the non-pivot columns are the smallest
        columns = sorted(alive, reverse=True)
        col = {m: j for j, m in enumerate(columns)}
        rows = []
        if k >= 1:
            for mu in combinations_with_replacement(range(self.r), k - 1):
                for j in range(self.n):
                    row = [0] * len(columns)
                    nonzero = False
                    for i in range(self.r):
                        c = fan.rays[i][j]
                        if c == 0:
                            continue
                        m = _merge(mu, (i,))
                        if m in col:
                            row[col[m]] += c
                            nonzero = True
                    if nonzero:
                        rows.append(row)
        if rows:
            R, pivots = rref(rows, len(columns))
        else:
            R, pivots = [], []
        pivot_set = set(pivots)
        free = [j for j in range(len(columns)) if j not in pivot_set]
        basis = sorted(columns[j] for j in free)
        pos = {columns[j]: basis.index(columns[j]) for j in free}
        zero = tuple(Fraction(0) for _ in basis)
        nf = {m: zero for m in monos}
        for m, p in pos.items():
            v = [Fraction(0)] * len(basis)
            v[p] = Fraction(1)
            nf[m] = tuple(v)
        for row, p in zip(R, pivots):
            v = [Fraction(0)] * len(basis)
            for j in free:
                if row[j]:
                    v[pos[columns[j]]] = -row[j]
            nf[columns[p]] = tuple(v)
        return basis, nf

    def _normalization(self):
        if len(self.basis[self.n]) != 1:
            raise ConsistencyError(
                f"top degree has dimension {len(self.basis[self.n])}, expected 1"
            )
        values = {self._nf[self.n][c][0] for c in self.fan.max_cones}
        if len(values) != 1 or 0 in values:
            raise ConsistencyError(f"maximal cone monomials evaluate differently: {sorted(values)}")
        return 1 / values.pop()

    def dims(self) -> list:
        return [len(b) for b in self.basis]

    def normal_form(self, mono) -> tuple:
        mono = tuple(sorted(mono))
        return self._nf[len(mono)][mono]

    def monomial_class(self, mono) -> CohomologyClass:
        mono = tuple(sorted(mono))
        if len(mono) > self.n:
            return CohomologyClass(self, len(mono), ())
        return CohomologyClass(self, len(mono), self.normal_form(mono))

    def zero(self, degree) -> CohomologyClass:
        return CohomologyClass(self, degree, tuple(Fraction(0) for _ in self.basis[degree]))

    def class_of(self, divisor) -> CohomologyClass:
        """Degree-one class of ``sum a_i D_i``; accepts a divisor or a coefficient list."""
        fan = getattr(divisor, "fan", None)
        if fan is not None and fan != self.fan:
            raise ValueError("divisor lives on a different fan")
        coeffs = getattr(divisor, "coeffs", divisor)
        if len(coeffs) != self.r:
            raise ValueError(f"expected {self.r} coefficients, got {len(coeffs)}")
        out = [Fraction(0)] * len(self.basis[1])
        for i, a in enumerate(coeffs):
            if a:
                for j, c in enumerate(self._nf[1][(i,)]):
                    out[j] += a * c
        return CohomologyClass(self, 1, tuple(out))

    def _table(self, k1, k2):
        key = (k1, k2)
        if key not in self._products:
            self._products[key] = [
                [self._nf[k1 + k2][_merge(a, b)] for b in self.basis[k2]] for a in self.basis[k1]
            ]
        return self._products[key]

    def multiply(self, c1: CohomologyClass, c2: CohomologyClass) -> CohomologyClass:
        if c1.ring.fan != self.fan or c2.ring.fan != self.fan:
            raise ValueError("classes live in rings of different fans")
        k = c1.degree + c2.degree
        if k > self.n:
            raise ValueError(f"product of degree {k} exceeds top degree {self.n}")
        table = self._table(c1.degree, c2.degree)
        out = [Fraction(0)] * len(self.basis[k])
        for a, x in enumerate(c1.coords):
            if not x:
                continue
            for b, y in enumerate(c2.coords):
                if not y:
                    continue
                xy = x * y
                for j, t in enumerate(table[a][b]):
                    if t:
                        out[j] += xy * t
        return CohomologyClass(self, k, tuple(out))

    def degree_eval(self, c: CohomologyClass):
        """Evaluate a top-degree class, with every maximal-cone monomial equal to 1."""
        if c.degree != self.n:
            raise ValueError(f"degree_eval needs a degree {self.n} class, got degree {c.degree}")
        return normalize_number(c.coords[0] * self._point_scale)

    def intersection_number(self, *divisors) -> int:
        if len(divisors) != self.n:
            raise ValueError(f"need exactly {self.n} divisors")
        c = self.class_of(divisors[0])
        for d in divisors[1:]:
            c = self.multiply(c, self.class_of(d))
        value = self.degree_eval(c)
        if not isinstance(value, int):
            raise ConsistencyError(f"non-integral intersection number {value}")
        return value

    def self_square_is_zero(self, divisor) -> bool:
        if self.n < 2:
            return True
        c = self.class_of(divisor)
        return self.multiply(c, c).is_zero()

    def square_pairing(self, divisor, ample) -> int:
        """``D^2 . H^(n-2)``: a numerical companion to the class-level square test."""
        if self.n < 2:
            return 0
        return self.intersection_number(divisor, divisor, *([ample] * (self.n - 2)))


@lru_cache(maxsize=None)
def build_ring(fan: Fan) -> GradedRing:
    return GradedRing(fan)


def class_of(divisor) -> CohomologyClass:
    return build_ring(divisor.fan).class_of(divisor)


def multiply(c1, c2):
    return c1.ring.multiply(c1, c2)


def degree_eval(c):
    return c.ring.degree_eval(c)


def intersection_number(*divisors) -> int:
    return build_ring(divisors[0].fan).intersection_number(*divisors)


def self_square_is_zero(divisor) -> bool:
    return build_ring(divisor.fan).self_square_is_zero(divisor)


def betti_numbers(fan: Fan) -> list:
    """Even Betti numbers from the counts ``d_j`` of j-dimensional cones."""
    n = fan.dim
    d = fan.cone_counts()
    return [sum((-1) ** (i - k) * comb(i, k) * d[n - i] for i in range(k, n + 1)) for k in range(n + 1)]
