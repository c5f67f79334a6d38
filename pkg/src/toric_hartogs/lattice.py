"""Lattice vectors and smooth complete fans.

A fan is stored by its primitive ray generators and its maximal cones, each
given as a sorted tuple of ray indices.  Lower dimensional cones are derived
on demand: the fans handled here are simplicial, so every subset of a
maximal cone is a face.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import combinations
from math import gcd
from typing import NamedTuple

from ._linalg import det, solve

N_SIDE = "N"
M_SIDE = "M"


class LatticeVector(tuple):
    """An integer vector tagged as living in ``N`` (cocharacters) or ``M`` (characters).

    Behaves as a plain tuple everywhere; the tag only matters for `pair`.
    """

    side: str

    def __new__(cls, coords, side=N_SIDE):
        if side not in (N_SIDE, M_SIDE):
            raise ValueError(f"unknown lattice side {side!r}")
        coords = tuple(int(c) for c in coords)
        obj = super().__new__(cls, coords)
        obj.side = side
        return obj

    def __repr__(self):
        return f"LatticeVector({tuple(self)!r}, side={self.side!r})"


def pair(m, u) -> int:
    """The pairing between a character ``m`` and a cocharacter ``u``.

    When both arguments carry a side tag they must come from opposite lattices.
    """
    sm = getattr(m, "side", None)
    su = getattr(u, "side", None)
    if sm is not None and su is not None and sm == su:
        raise ValueError(f"cannot pair two {sm}-vectors")
    if len(m) != len(u):
        raise ValueError("dimension mismatch in pairing")
    return sum(a * b for a, b in zip(m, u))


def primitive(v, side=N_SIDE) -> LatticeVector:
    """Divide an integer vector by the gcd of its coordinates."""
    g = 0
    for x in v:
        g = gcd(g, abs(int(x)))
    if g == 0:
        raise ValueError("no primitive direction for the zero vector")
    return LatticeVector((int(x) // g for x in v), side)


@dataclass(frozen=True)
class Fan:
    """A complete simplicial fan given by rays and maximal cones.

    Construction only checks structural well-formedness (primitive rays,
    index ranges, cone sizes, every ray used).  Smoothness and completeness
    are reported by `validate_fan`.
    """

    dim: int
    rays: tuple
    max_cones: tuple
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("fan dimension must be positive")
        rays = tuple(tuple(int(x) for x in u) for u in self.rays)
        cones = tuple(sorted(tuple(sorted(int(i) for i in c)) for c in self.max_cones))
        for u in rays:
            if len(u) != self.dim:
                raise ValueError(f"ray {u} has wrong length for dimension {self.dim}")
            if tuple(primitive(u)) != u:
                raise ValueError(f"ray {u} is not primitive")
        if len(set(rays)) != len(rays):
            raise ValueError("duplicate rays")
        for c in cones:
            if len(c) != self.dim:
                raise ValueError(f"maximal cone {c} does not have {self.dim} rays")
            if len(set(c)) != len(c):
                raise ValueError(f"maximal cone {c} repeats a ray")
            if any(i < 0 or i >= len(rays) for i in c):
                raise ValueError(f"maximal cone {c} has an index out of range")
        if len(set(cones)) != len(cones):
            raise ValueError("duplicate maximal cones")
        used = {i for c in cones for i in c}
        missing = set(range(len(rays))) - used
        if missing:
            raise ValueError(f"rays {sorted(missing)} lie in no maximal cone")
        object.__setattr__(self, "rays", rays)
        object.__setattr__(self, "max_cones", cones)

    @property
    def n_rays(self) -> int:
        return len(self.rays)

    def ray(self, i) -> LatticeVector:
        return LatticeVector(self.rays[i], N_SIDE)

    @cached_property
    def faces(self) -> frozenset:
        """All cones of the fan as frozensets of ray indices, including the origin."""
        out = set()
        for c in self.max_cones:
            for k in range(len(c) + 1):
                out.update(frozenset(s) for s in combinations(c, k))
        return frozenset(out)

    def is_cone(self, indices) -> bool:
        return frozenset(indices) in self.faces

    def cone_counts(self) -> list:
        """Number of cones of each dimension 0..n."""
        counts = Counter(len(f) for f in self.faces)
        return [counts.get(k, 0) for k in range(self.dim + 1)]

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "rays": [list(u) for u in self.rays],
            "max_cones": [list(c) for c in self.max_cones],
        }

    def __str__(self):
        return self.name or f"Fan(dim={self.dim}, rays={len(self.rays)})"


@dataclass
class ValidationReport:
    smooth: bool
    complete: bool
    failures: list

    def to_json(self) -> dict:
        return {"smooth": self.smooth, "complete": self.complete, "failures": self.failures}


def _facet_table(fan):
    table = {}
    for ci, c in enumerate(fan.max_cones):
        for facet in combinations(c, fan.dim - 1):
            table.setdefault(facet, []).append(ci)
    return table


def validate_fan(fan: Fan) -> ValidationReport:
    """Check smoothness and completeness, collecting every failure."""
    failures = []
    smooth = True
    for c in fan.max_cones:
        d = det([list(fan.rays[i]) for i in c])
        if abs(d) != 1:
            smooth = False
            failures.append({"kind": "non-unimodular cone", "cone": list(c), "det": d})

    complete = True
    table = _facet_table(fan)
    for facet, owners in sorted(table.items()):
        if len(owners) != 2:
            complete = False
            failures.append(
                {"kind": "unpaired facet", "facet": list(facet), "occurrences": len(owners)}
            )
    # adjacency connectivity
    adjacency = {i: set() for i in range(len(fan.max_cones))}
    for owners in table.values():
        for a, b in combinations(owners, 2):
            adjacency[a].add(b)
            adjacency[b].add(a)
    seen = {0}
    stack = [0]
    while stack:
        for j in adjacency[stack.pop()]:
            if j not in seen:
                seen.add(j)
                stack.append(j)
    if len(seen) != len(fan.max_cones):
        complete = False
        failures.append({"kind": "disconnected cone adjacency", "components_reached": len(seen)})
    return ValidationReport(smooth, complete, failures)


class Wall(NamedTuple):
    facet: tuple
    cones: tuple


def walls(fan: Fan) -> list:
    """Codimension-one cones together with the two maximal cones meeting there."""
    return list(_walls(fan))


@lru_cache(maxsize=256)
def _walls(fan):
    report = validate_fan(fan)
    if not report.complete:
        raise ValueError("walls are only defined for a complete fan")
    table = _facet_table(fan)
    return tuple(
        Wall(facet, tuple(fan.max_cones[i] for i in owners))
        for facet, owners in sorted(table.items())
    )


@lru_cache(maxsize=256)
def _failures(fan):
    report = validate_fan(fan)
    if report.smooth and report.complete:
        return None
    return repr(report.failures)


def require_valid(fan: Fan) -> None:
    failures = _failures(fan)
    if failures is not None:
        raise ValueError(f"fan {fan} is not smooth and complete: {failures}")


def locate(fan: Fan, v) -> list:
    """Maximal cones containing the rational direction ``v``."""
    found = []
    for c in fan.max_cones:
        basis = [[fan.rays[i][k] for i in c] for k in range(fan.dim)]
        coeffs = solve(basis, list(v))
        if all(x >= 0 for x in coeffs):
            found.append(c)
    return found


# builtin fans

def projective_space(n: int) -> Fan:
    if n < 1:
        raise ValueError("projective space needs n >= 1")
    rays = [tuple(int(i == k) for k in range(n)) for i in range(n)]
    rays.append(tuple(-1 for _ in range(n)))
    cones = list(combinations(range(n + 1), n))
    return Fan(n, tuple(rays), tuple(cones), name=f"P{n}")


def product_p1_p1() -> Fan:
    rays = ((1, 0), (-1, 0), (0, 1), (0, -1))
    cones = ((0, 2), (2, 1), (1, 3), (3, 0))
    return Fan(2, rays, cones, name="P1xP1")


def hirzebruch(r: int) -> Fan:
    """The Hirzebruch surface with rays (-1,r), (0,1), (1,0), (0,-1) in that order."""
    if r < 0:
        raise ValueError("Hirzebruch parameter r must be >= 0")
    rays = ((-1, r), (0, 1), (1, 0), (0, -1))
    cones = ((0, 1), (1, 2), (2, 3), (3, 0))
    return Fan(2, rays, cones, name=f"Hirzebruch:{r}")


def builtin_fan(name: str, *params) -> Fan:
    if name == "projective_space":
        return projective_space(*params)
    if name == "product_p1_p1":
        return product_p1_p1()
    if name == "hirzebruch":
        return hirzebruch(*params)
    raise ValueError(f"unknown builtin fan {name!r}")


def fan_from_json(data) -> Fan:
    if isinstance(data, str):
        data = json.loads(data)
    try:
        return Fan(int(data["dim"]), tuple(map(tuple, data["rays"])), tuple(map(tuple, data["max_cones"])))
    except KeyError as exc:
        raise ValueError(f"fan JSON lacks field {exc}") from None


def fan_from_selector(text: str) -> Fan:
    """Parse ``P2``, ``P3``, ``Pn``, ``P1xP1`` or ``Hirzebruch:r``; otherwise read a JSON file."""
    text = text.strip()
    if text == "P1xP1":
        return product_p1_p1()
    if text.startswith("Hirzebruch:"):
        try:
            r = int(text.split(":", 1)[1])
        except ValueError:
            raise ValueError(f"bad Hirzebruch parameter in {text!r}") from None
        return hirzebruch(r)
    if text[:1] == "P" and text[1:].isdigit():
        return projective_space(int(text[1:]))
    with open(text, encoding="utf-8") as fh:
        return fan_from_json(json.load(fh))
