"""
Firm chambers, closing squares and the square closure of a ball.

``flex_set`` describes the n-flex of ``c0`` through firmness of Weyl
distances, while ``square_closure`` builds the closure of a chamber set by
repeatedly closing squares.  ``verify_flex_theorem`` runs both and compares.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from . import coxeter
from .bounds import DEFAULT_CAP, find_d
from .building import Building, Chamber, sort_chambers
from .errors import CapExceeded, ConsistencyError, PreconditionError


@dataclass(frozen=True)
class SpherePartition:
    n: int
    firm: frozenset[Chamber]
    not_firm: frozenset[Chamber]


def is_firm_chamber(B: Building, c0: Chamber, c: Chamber) -> bool:
    if c == c0:
        raise PreconditionError("firmness is only defined for chambers other than c0")
    return coxeter.is_firm(B.diagram, B.weyl_distance(c0, c))


def sphere_partition(B: Building, c0: Chamber, n: int) -> SpherePartition:
    firm, rest = set(), set()
    for c in B.sphere(c0, n):
        if n > 0 and is_firm_chamber(B, c0, c):
            firm.add(c)
        else:
            rest.add(c)
    return SpherePartition(n, frozenset(firm), frozenset(rest))


def _require_adjacent(B: Building, a: Chamber, b: Chamber, what: str) -> int:
    s = B.adjacency(a, b)
    if s is None:
        raise PreconditionError(f"{what} are not adjacent")
    return s


def _require_distance(B: Building, c0: Chamber, c: Chamber, n: int, what: str) -> None:
    got = B.distance(c0, c)
    if got != n:
        raise PreconditionError(f"{what} is at distance {got} from c0, expected {n}")


def close_square_down(B: Building, c0: Chamber, c1: Chamber, c2: Chamber, c3: Chamber) -> Chamber:
    """
    Given ``c1, c2`` at distance ``n`` and ``c3`` at ``n+1`` with
    ``c1 ~t c3`` and ``c2 ~s c3`` (``s != t``), return the chamber ``c4`` at
    distance ``n-1`` with ``c1 ~s c4`` and ``c2 ~t c4``.
    """
    n = B.distance(c0, c1)
    _require_distance(B, c0, c2, n, "c2")
    _require_distance(B, c0, c3, n + 1, "c3")
    t = _require_adjacent(B, c1, c3, "c1 and c3")
    s = _require_adjacent(B, c2, c3, "c2 and c3")
    if s == t:
        raise PreconditionError("the two adjacencies must have different types")
    if not B.diagram.commutes(s, t):
        raise ConsistencyError(f"closing square with m = inf between {s} and {t}")
    c4 = B.project(B.panel_handle(c1, s), c0)
    if B.distance(c0, c4) != n - 1 or B.adjacency(c2, c4) != t:
        raise ConsistencyError("no closing chamber below the square")
    return c4


def close_square_side(B: Building, c0: Chamber, c1: Chamber, c2: Chamber, c3: Chamber) -> Chamber:
    """
    Given ``c1, c2`` at distance ``n`` and ``c3`` at ``n-1`` with
    ``c1 ~s c2`` and ``c2 ~t c3`` (``s != t``), return the chamber ``c4`` at
    distance ``n-1`` with ``c1 ~t c4`` and ``c3 ~s c4``.
    """
    n = B.distance(c0, c1)
    _require_distance(B, c0, c2, n, "c2")
    _require_distance(B, c0, c3, n - 1, "c3")
    s = _require_adjacent(B, c1, c2, "c1 and c2")
    t = _require_adjacent(B, c2, c3, "c2 and c3")
    if s == t:
        raise PreconditionError("the two adjacencies must have different types")
    if not B.diagram.commutes(s, t):
        raise ConsistencyError(f"closing square with m = inf between {s} and {t}")
    c4 = B.project(B.panel_handle(c1, t), c0)
    if B.distance(c0, c4) != n - 1 or B.adjacency(c3, c4) != s:
        raise ConsistencyError("no closing chamber beside the square")
    return c4


def close_square_up(B: Building, c0: Chamber, c4: Chamber, c1: Chamber, c2: Chamber) -> Chamber:
    """
    Given ``c4`` at distance ``n-1`` and ``c1, c2`` at ``n`` with
    ``c4 ~s c1``, ``c4 ~t c2``, ``s != t`` commuting, return the chamber
    ``c3`` at distance ``n+1`` with ``c3 ~t c1`` and ``c3 ~s c2``.
    """
    n = B.distance(c0, c1)
    _require_distance(B, c0, c2, n, "c2")
    _require_distance(B, c0, c4, n - 1, "c4")
    s = _require_adjacent(B, c4, c1, "c4 and c1")
    t = _require_adjacent(B, c4, c2, "c4 and c2")
    if s == t:
        raise PreconditionError("the two adjacencies must have different types")
    if not B.diagram.commutes(s, t):
        raise PreconditionError("the two adjacency types do not commute")
    c3 = B.multiply(c1, B.difference(c4, c2))
    if B.distance(c0, c3) != n + 1:
        raise ConsistencyError("closing chamber above the square is not at distance n+1")
    return c3


def _up_neighbours(B: Building, c0: Chamber, c: Chamber, n: int, members: set[Chamber]) -> list[tuple[int, Chamber]]:
    out = []
    for s in range(B.diagram.rank):
        for x in B.panel(c, s)[1:]:
            if x in members and B.distance(c0, x) == n + 1:
                out.append((s, x))
    return out


def square_closure(B: Building, c0: Chamber, chambers: Iterable[Chamber], max_radius: int | None = None) -> frozenset[Chamber]:
    """Smallest superset of ``chambers`` closed under squares with respect to ``c0``."""
    members = set(chambers)
    dist = {c: B.distance(c0, c) for c in members}
    pending = set(members)
    while pending:
        # any new square has its lower corner c4 equal to, or adjacent below, a recently added chamber
        bottoms = set()
        for c in pending:
            bottoms.add(c)
            for s in range(B.diagram.rank):
                for x in B.panel(c, s)[1:]:
                    if x in members and dist[x] == dist[c] - 1:
                        bottoms.add(x)
        pending = set()
        for c4 in bottoms:
            n = dist[c4]
            ups = _up_neighbours(B, c0, c4, n, members)
            for k, (s, c1) in enumerate(ups):
                for t, c2 in ups[k + 1:]:
                    if s == t or not B.diagram.commutes(s, t):
                        continue
                    c3 = B.multiply(c1, B.difference(c4, c2))
                    if c3 in members:
                        continue
                    if max_radius is not None and n + 2 > max_radius:
                        raise CapExceeded(f"square closure left the ball of radius {max_radius}")
                    members.add(c3)
                    dist[c3] = n + 2
                    pending.add(c3)
            if len(members) > B.cap:
                raise CapExceeded(f"square closure exceeded {B.cap} chambers")
    return frozenset(members)


def flex_set(B: Building, c0: Chamber, n: int, radius: int, cap: int = DEFAULT_CAP) -> frozenset[Chamber]:
    """Chambers ``c`` with ``firmness(delta(c0, c)) <= n``; ``radius`` must reach ``d(n)``."""
    bound = find_d(B.diagram, n, cap).d
    if radius < bound:
        raise PreconditionError(f"radius {radius} is below d({n}) = {bound}; the n-flex may leave the ball")
    d = B.diagram
    return frozenset(c for c in B.ball(c0, radius) if coxeter.firmness(d, B.weyl_distance(c0, c)) <= n)


@dataclass
class FlexReport:
    n: int
    radius: int
    d_of_n: int
    equal: bool
    flex_size: int
    closure_size: int
    max_distance: int
    within_d_ball: bool
    only_in_closure: list[str] = field(default_factory=list)
    only_in_flex: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.equal and self.within_d_ball

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "radius": self.radius,
            "d_of_n": self.d_of_n,
            "equal": self.equal,
            "flex_size": self.flex_size,
            "closure_size": self.closure_size,
            "max_distance": self.max_distance,
            "within_d_ball": self.within_d_ball,
            "only_in_closure": self.only_in_closure,
            "only_in_flex": self.only_in_flex,
        }


def verify_flex_theorem(B: Building, c0: Chamber, n: int, radius: int, cap: int = DEFAULT_CAP) -> FlexReport:
    """Compare the square closure of the n-ball with the firmness-defined n-flex."""
    bound = find_d(B.diagram, n, cap).d
    flex = flex_set(B, c0, n, radius, cap)
    closure = square_closure(B, c0, B.ball(c0, n), max_radius=max(radius, bound) + 1)
    dists = [B.distance(c0, c) for c in flex]
    return FlexReport(
        n=n,
        radius=radius,
        d_of_n=bound,
        equal=flex == closure,
        flex_size=len(flex),
        closure_size=len(closure),
        max_distance=max(dists),
        within_d_ball=max(dists) <= bound,
        only_in_closure=[B.format_chamber(c) for c in sort_chambers(closure - flex)],
        only_in_flex=[B.format_chamber(c) for c in sort_chambers(flex - closure)],
    )
