"""Constructive search for a representation with non-unit twisted polynomial.

The search walks branched quotients in increasing order, then permutation
degree, then representation order, extending each nontrivial periodic
representation it finds and testing the resulting twisted Alexander
polynomial.  A successful search returns a self-contained certificate that
can be re-verified from its serialized data alone.
"""

from __future__ import annotations

import hashlib
import time
from dataclasses import dataclass

from .covers import branched_cover
from .errors import BudgetExhausted, KnotrepError
from .laurent import UnitNormalForm
from .permrep import (PermRep, extend_periodic, least_period,
                      least_period_of_periodic, periodic_from_rep, search_homs,
                      trivial_rep)
from .twisted import alexander_polynomial, twisted_alexander_poly
from .words import abelianization_map, parse_presentation


@dataclass(frozen=True)
class SearchLimits:
    max_r: int = 3
    max_degree: int = 6
    node_budget: int = 500_000
    time_limit: float | None = None
    threads: int = 1

    def __post_init__(self):
        if self.max_r < 2 or self.max_degree < 1 or self.node_budget < 1:
            raise ValueError("limits must be positive (max_r >= 2)")
        if self.time_limit is not None and self.time_limit <= 0:
            raise ValueError("time limit must be positive")


@dataclass(frozen=True)
class Certificate:
    """Everything needed to re-verify a non-unit twisted polynomial."""

    knot_id: str | None
    presentation_text: str
    presentation_sha256: str
    branch_order: int
    degree: int
    images: tuple              # (generator name, image tuple) pairs
    least_period: int
    delta_rho: UnitNormalForm
    delta_0: UnitNormalForm
    transcript: tuple

    def to_json(self):
        return {
            "knot_id": self.knot_id,
            "presentation": self.presentation_text,
            "presentation_sha256": self.presentation_sha256,
            "branch_order": self.branch_order,
            "degree": self.degree,
            "images": {name: list(images) for name, images in self.images},
            "least_period": self.least_period,
            "delta_rho": self.delta_rho.to_json(),
            "delta_0": self.delta_0.to_json(),
            "transcript": list(self.transcript),
        }


@dataclass(frozen=True)
class Exhausted:
    """Search frontier after an unsuccessful certificate search."""

    frontier: tuple            # (branch order, degree, class count) triples
    reason: str                # "limits", "budget" or "time"

    def to_json(self):
        return {
            "frontier": [list(t) for t in self.frontier],
            "reason": self.reason,
        }


def presentation_hash(text):
    return hashlib.sha256(text.encode()).hexdigest()


def _certificate_from_rep(pres, P, branch_order, r0, result):
    text = pres.to_text()
    transcript = (
        f"relators checked: {pres.num_relators}",
        f"degree: {P.degree}",
        f"least period: {r0}",
        f"delta_rho: {result.delta_rho.pretty()}",
        f"delta_0: {result.delta_0.pretty()}",
        f"is_unit: {result.is_unit}",
        f"untwisted_divides: {result.untwisted_divides}",
    )
    return Certificate(
        knot_id=pres.name,
        presentation_text=text,
        presentation_sha256=presentation_hash(text),
        branch_order=branch_order,
        degree=P.degree,
        images=tuple((name, p.images)
                     for name, p in zip(pres.generators, P.images)),
        least_period=r0,
        delta_rho=result.delta_rho,
        delta_0=result.delta_0,
        transcript=transcript,
    )


def certify_nontrivial(pres, limits=SearchLimits()):
    """Find a permutation representation whose twisted polynomial is not a unit.

    The trivial representation is tried first: a knot with non-unit
    classical Alexander polynomial certifies itself.  Otherwise branched
    quotients of order r = 2..max_r are searched for nontrivial finite
    quotients of degree up to max_degree; each found quotient is reduced to
    its least period, extended to the whole group, and its twisted
    polynomial tested.
    """
    eps = abelianization_map(pres)
    started = time.monotonic()

    triv = trivial_rep(pres)
    result = twisted_alexander_poly(triv)
    if not result.is_unit:
        return _certificate_from_rep(pres, triv, 1, 1, result)

    frontier = []
    reason = "limits"
    for r in range(2, limits.max_r + 1):
        branched = branched_cover(pres, eps, r)
        for degree in range(2, limits.max_degree + 1):
            if limits.time_limit is not None and \
                    time.monotonic() - started > limits.time_limit:
                return Exhausted(tuple(frontier), "time")
            try:
                reps = search_homs(branched.presentation, degree,
                                   budget=limits.node_budget,
                                   threads=limits.threads)
            except BudgetExhausted as exc:
                frontier.append((r, degree, len(exc.partial)))
                return Exhausted(tuple(frontier), "budget")
            frontier.append((r, degree, len(reps)))
            for rep in reps:
                if rep.is_trivial():
                    continue
                periodic = periodic_from_rep(branched, rep)
                r0 = least_period_of_periodic(periodic)
                if r0 == 1:
                    # a period-1 representation factors through the trivial
                    # branched quotient, so it must be trivial
                    continue
                P = extend_periodic(periodic)
                result = twisted_alexander_poly(P)
                if not result.is_unit:
                    return _certificate_from_rep(pres, P, r, r0, result)
    return Exhausted(tuple(frontier), reason)


def verify_certificate(data):
    """Replay all checks of a serialized certificate.

    Returns (ok, transcript lines).  Verification recomputes everything
    from the presentation text and images alone.
    """
    lines = []
    ok = True

    def check(label, value):
        nonlocal ok
        lines.append(f"{'ok' if value else 'FAIL'}: {label}")
        ok = ok and bool(value)

    try:
        text = data["presentation"]
        pres = parse_presentation(text, name=data.get("knot_id"))
        check("presentation parses", True)
        check("presentation hash matches",
              presentation_hash(text) == data["presentation_sha256"])
        from .perms import Permutation

        images = tuple(Permutation(tuple(data["images"][name]))
                       for name in pres.generators)
        P = PermRep(pres, int(data["degree"]), images)
        P.validate()
        check("all relators are killed", True)
        r0 = least_period(P)
        check(f"least period equals {data['least_period']}",
              r0 == int(data["least_period"]))
        result = twisted_alexander_poly(P)
        claimed = UnitNormalForm.from_json(data["delta_rho"])
        check("twisted polynomial matches the certificate",
              result.delta_rho == claimed)
        check("twisted polynomial is not a unit", not result.is_unit)
        check("degree-zero polynomial matches",
              result.delta_0 == UnitNormalForm.from_json(data["delta_0"]))
        untwisted = alexander_polynomial(pres)
        lines.append(f"info: classical alexander polynomial {untwisted.pretty()}")
        check("classical polynomial divides the twisted one",
              result.untwisted_divides)
    except (KnotrepError, KeyError, ValueError) as exc:
        lines.append(f"FAIL: exception during verification: {exc}")
        ok = False
    return ok, lines
