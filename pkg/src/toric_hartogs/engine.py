"""Hartogs decisions for complements of toric hypersurface closures.

`decide` is the gated criterion: when the divisor at infinity is effective
and nef, the complement admits the Hartogs phenomenon exactly when the square
of its class is nonzero.  Outside those hypotheses no verdict is given.

The Hirzebruch helpers evaluate the closed forms for ``H_r`` next to the
generic machinery and record every disagreement instead of reconciling it.
"""

from __future__ import annotations

import random
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from itertools import combinations, product

from .divisor import (
    TDivisor,
    divisor_at_infinity,
    is_effective,
    is_nef,
    polytope_of_divisor,
)
from .errors import ConsistencyError, HypothesisError
from .lattice import Fan, hirzebruch, require_valid
from .polytope import LaurentSupport, dim as polytope_dim, mixed_volume, support_function
from .ring import build_ring

HARTOGS = "HARTOGS"
NO_HARTOGS = "NO_HARTOGS"
INAPPLICABLE = "INAPPLICABLE"

BASIS_NEF_SQUARE = "toric-nef-square-criterion"
BASIS_BASEPOINT_FREE = "basepoint-free-dimension-criterion"

CONNECTEDNESS_CAVEAT = (
    "the support of the divisor at infinity (the closure of the hypersurface) "
    "is assumed connected; this is not verified"
)


@dataclass
class HartogsReport:
    divisor: list
    effective: bool
    nef: bool
    square_zero: bool
    square: object
    polytope_dim: object
    decision: str
    basis: str
    caveats: list = field(default_factory=list)

    def to_json(self) -> dict:
        return asdict(self)


@lru_cache(maxsize=65536)
def _divisor_facts(D: TDivisor):
    ring = build_ring(D.fan)
    effective = is_effective(D)
    nef = is_nef(D)
    square_zero = ring.self_square_is_zero(D)
    square = ring.intersection_number(D, D) if D.fan.dim == 2 else None
    k = polytope_dim(polytope_of_divisor(D))
    return effective, nef, square_zero, square, k


def decide_divisor(D: TDivisor) -> HartogsReport:
    require_valid(D.fan)
    effective, nef, square_zero, square, k = _divisor_facts(D)
    if nef and (k >= 2) == square_zero:
        raise ConsistencyError(
            f"nef divisor {D}: polytope dimension {k} but square_zero={square_zero}"
        )
    caveats = [CONNECTEDNESS_CAVEAT]
    if effective and nef:
        decision = NO_HARTOGS if square_zero else HARTOGS
    else:
        decision = INAPPLICABLE
        if not effective:
            caveats.append("hypothesis failed: divisor at infinity is not effective")
        if not nef:
            caveats.append("hypothesis failed: divisor at infinity is not nef")
        caveats.append("no Hartogs verdict is given outside the effective nef case")
    return HartogsReport(
        divisor=list(D.coeffs),
        effective=effective,
        nef=nef,
        square_zero=square_zero,
        square=square,
        polytope_dim=k if k >= 0 else "empty",
        decision=decision,
        basis=BASIS_NEF_SQUARE,
        caveats=caveats,
    )


def decide(fan: Fan, s: LaurentSupport) -> HartogsReport:
    require_valid(fan)
    return decide_divisor(divisor_at_infinity(fan, s))


@dataclass
class EquivalenceRecord:
    divisor: list
    polytope_dim: int
    square_zero: bool
    hartogs: bool
    basis: str = BASIS_BASEPOINT_FREE


def equivalence_report(D: TDivisor) -> EquivalenceRecord:
    """Image dimension of the linear system against vanishing of ``[D]^2``.

    On a toric variety a nef divisor is basepoint free and the image of its
    morphism is the toric variety of its polytope, so ``dim P_D`` stands in
    for the image dimension.
    """
    if not is_effective(D):
        raise HypothesisError(f"{D} is not effective")
    if not is_nef(D):
        raise HypothesisError(f"{D} is not nef")
    _, _, square_zero, _, k = _divisor_facts(D)
    if (k >= 2) == square_zero:
        raise ConsistencyError(f"dim P_D = {k} but square_zero = {square_zero} for {D}")
    return EquivalenceRecord(list(D.coeffs), k, square_zero, hartogs=k >= 2)


# Hirzebruch closed forms

def printed_claim1(l, r) -> bool:
    l1, l2, l3, l4 = l
    return all(x <= 0 for x in l) and l1 + l3 - r * l4 <= 0


def derived_claim1(l, r) -> bool:
    l1, l2, l3, l4 = l
    return all(x <= 0 for x in l) and l1 + l3 + r * l4 <= 0


def factored_square(l, r) -> int:
    l1, l2, l3, l4 = l
    return (l2 + l4) * (2 * l1 + 2 * l3 - r * l2 + r * l4)


def expanded_square(l, r) -> int:
    l1, l2, l3, l4 = l
    return 2 * (l1 + l3 - r * l2) * (l2 + l4) + r * (l2 + l4) ** 2


def claim2_nonzero(l, r) -> bool:
    # the unbalanced bracket read as 2(l1 + l3) - r(l2 - l4)
    l1, l2, l3, l4 = l
    return l2 + l4 != 0 and 2 * (l1 + l3) - r * (l2 - l4) != 0


@dataclass
class HirzebruchEvaluation:
    r: int
    support: list
    l: tuple
    printed_claim1: bool
    derived_claim1: bool
    printed_claim2_nonzero: bool
    factored_square: int
    expanded_square: int
    generic_effective: bool
    generic_nef: bool
    generic_square: int
    discrepancies: list

    def to_json(self) -> dict:
        out = asdict(self)
        out["l"] = list(self.l)
        return out


def hirzebruch_closed_forms(r: int, s: LaurentSupport) -> HirzebruchEvaluation:
    fan = hirzebruch(r)
    l = tuple(support_function(s.terms, u) for u in fan.rays)
    D = divisor_at_infinity(fan, s)
    effective, nef, _, square, _ = _divisor_facts(D)
    generic = effective and nef
    ev = HirzebruchEvaluation(
        r=r,
        support=[list(t) for t in s.terms],
        l=l,
        printed_claim1=printed_claim1(l, r),
        derived_claim1=derived_claim1(l, r),
        printed_claim2_nonzero=claim2_nonzero(l, r),
        factored_square=factored_square(l, r),
        expanded_square=expanded_square(l, r),
        generic_effective=effective,
        generic_nef=nef,
        generic_square=square,
        discrepancies=[],
    )
    checks = [
        ("printed_claim1", ev.printed_claim1, generic),
        ("derived_claim1", ev.derived_claim1, generic),
        ("factored_square", ev.factored_square, square),
        ("expanded_square", ev.expanded_square, square),
        ("claim2_nonzero", ev.printed_claim2_nonzero, square != 0),
    ]
    for name, closed, reference in checks:
        if closed != reference:
            ev.discrepancies.append({"check": name, "closed_form": closed, "generic": reference})
    return ev


@dataclass
class HirzebruchAudit:
    r: int
    n_supports: int
    disagreements: dict  # check name -> list of supports (as sorted point lists)

    def supports_for(self, check) -> set:
        return {tuple(map(tuple, s)) for s in self.disagreements.get(check, [])}


def hirzebruch_audit(r: int, supports) -> HirzebruchAudit:
    disagreements = {}
    count = 0
    for s in supports:
        count += 1
        ev = hirzebruch_closed_forms(r, s)
        for d in ev.discrepancies:
            disagreements.setdefault(d["check"], []).append(ev.support)
    return HirzebruchAudit(r, count, disagreements)


# batch sweeps

def box_points(n: int, radius: int) -> list:
    return list(product(range(-radius, radius + 1), repeat=n))


def all_supports(n: int, radius: int, max_points: int):
    """Every support with at most ``max_points`` points in ``[-radius, radius]^n``."""
    pts = box_points(n, radius)
    for k in range(1, max_points + 1):
        for subset in combinations(pts, k):
            yield LaurentSupport(subset)


def random_supports(n: int, radius: int, max_points: int, count: int, seed: int = 0):
    rng = random.Random(seed)
    pts = box_points(n, radius)
    for _ in range(count):
        k = rng.randint(1, max_points)
        yield LaurentSupport(rng.sample(pts, k))


def realized_divisors(fan: Fan, radius: int, max_points: int) -> dict:
    """All divisors at infinity of supports with at most ``max_points`` points in the box.

    The divisor only depends on the minimum of ``<u_i, p>`` over the support,
    so the image is built up one point at a time instead of enumerating
    subsets.  Returns ``{coefficients: witness support}``.
    """
    require_valid(fan)
    pts = box_points(fan.dim, radius)
    values = [tuple(sum(a * b for a, b in zip(u, p)) for u in fan.rays) for p in pts]
    layer = {v: (p,) for v, p in zip(values, pts)}
    seen = dict(layer)
    for _ in range(max_points - 1):
        nxt = {}
        for vec, wit in layer.items():
            for v, p in zip(values, pts):
                cand = tuple(min(a, b) for a, b in zip(vec, v))
                if cand not in seen and cand not in nxt:
                    nxt[cand] = wit + (p,)
        seen.update(nxt)
        layer = nxt
    return {tuple(-x for x in vec): LaurentSupport(wit) for vec, wit in seen.items()}


@dataclass
class OracleSweep:
    fan: str
    n_divisors: int
    n_effective_nef: int
    violations: list


def oracle_sweep(fan: Fan, radius: int = 3, max_points: int = 5) -> OracleSweep:
    """Compare ring square, mixed volume and polytope dimension on realized effective nef divisors."""
    ring = build_ring(fan)
    realized = realized_divisors(fan, radius, max_points)
    checked = 0
    violations = []
    for coeffs, witness in sorted(realized.items()):
        D = TDivisor(fan, coeffs)
        if not (is_effective(D) and is_nef(D)):
            continue
        checked += 1
        P = polytope_of_divisor(D)
        square = ring.intersection_number(*([D] * fan.dim))
        mv = mixed_volume(*([P] * fan.dim))
        k = polytope_dim(P)
        zero = ring.self_square_is_zero(D)
        if square != mv or (k >= 2) == zero:
            violations.append(
                {"divisor": list(coeffs), "support": [list(t) for t in witness.terms],
                 "square": square, "mixed_volume": mv, "polytope_dim": k, "square_zero": zero}
            )
    return OracleSweep(str(fan), len(realized), checked, violations)
