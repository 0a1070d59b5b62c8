"""
Wing-permutation automorphisms of a semi-regular right-angled building.

A panel permutation ``theta`` of the ``s``-panel at ``e`` extends to an
automorphism that acts on each wing ``X_s(p)`` by left translation,
``x -> theta(p) p^-1 x``.  Wings of ``theta``-fixed chambers are fixed
pointwise.  Automorphisms are finite products of such extensions.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import coxeter
from .bounds import DEFAULT_CAP, find_d
from .building import Building, Chamber, sort_chambers
from .coxeter import CoxeterDiagram
from .errors import PreconditionError
from .flex import flex_set

Permutation = tuple[int, ...]


@dataclass(frozen=True)
class WingPermutation:
    """
    ``theta[v] = v'`` sends the panel chamber ``e*(s, v)`` to ``e*(s, v')``.

    ``e`` is a chamber of the panel and plays the role of offset 0.
    """

    e: Chamber
    s: int
    theta: Permutation

    def inverse(self) -> "WingPermutation":
        inv = [0] * len(self.theta)
        for v, w in enumerate(self.theta):
            inv[w] = v
        return WingPermutation(self.e, self.s, tuple(inv))

    def fixes_base(self) -> bool:
        return self.theta[0] == 0


def _offset(B: Building, w: WingPermutation, x: Chamber) -> tuple[int, Chamber]:
    """Offset ``v`` of the gate ``e*(s, v)`` of ``x`` on the panel, and ``z`` with ``x = gate * z``."""
    diff = B.difference(w.e, x)
    comm = B.diagram.commuting_with(w.s)
    for k, (t, v) in enumerate(diff):
        if t == w.s:
            if all(u in comm for u, _ in diff[:k]):
                return v, diff[:k] + diff[k + 1:]
            break
    return 0, diff


def _apply_wing(B: Building, w: WingPermutation, x: Chamber) -> Chamber:
    v, z = _offset(B, w, x)
    image = w.theta[v]
    if image == v:
        return x
    # x = e (s,v) z with z in the wing side; rebuild as e (s, theta(v)) z
    return B.multiply(B.step(w.e, w.s, image), z)


@dataclass(frozen=True)
class Automorphism:
    """Product of wing permutations; ``factors[-1]`` is applied first."""

    building: Building = field(compare=False, repr=False)
    factors: tuple[WingPermutation, ...] = ()

    def __call__(self, x: Chamber) -> Chamber:
        for w in reversed(self.factors):
            x = _apply_wing(self.building, w, x)
        return x

    def __mul__(self, other: "Automorphism") -> "Automorphism":
        return compose(self, other)


def identity(B: Building) -> Automorphism:
    return Automorphism(B, ())


def extend_panel_permutation(B: Building, e: Chamber, s: int, theta: Sequence[int]) -> Automorphism:
    theta = tuple(theta)
    q = B.q[s]
    if len(theta) != q or sorted(theta) != list(range(q)):
        raise PreconditionError(f"theta must be a permutation of 0..{q - 1}, got {theta!r}")
    return Automorphism(B, (WingPermutation(e, s, theta),))


def theta_from_mapping(B: Building, e: Chamber, s: int, mapping: dict[Chamber, Chamber]) -> Permutation:
    """Convert a chamber-level panel permutation to offsets relative to ``e``."""
    panel = B.panel(e, s)
    offset = {c: v for v, c in enumerate(panel)}
    theta = list(range(len(panel)))
    for src, dst in mapping.items():
        if src not in offset or dst not in offset:
            raise PreconditionError("mapping moves chambers outside the panel")
        theta[offset[src]] = offset[dst]
    if sorted(theta) != list(range(len(panel))):
        raise PreconditionError("mapping is not a bijection of the panel")
    return tuple(theta)


def apply(g: Automorphism, x: Chamber) -> Chamber:
    return g(x)


def compose(g: Automorphism, h: Automorphism) -> Automorphism:
    """``compose(g, h)(x) == g(h(x))``."""
    return Automorphism(g.building, g.factors + h.factors)


def inverse(g: Automorphism) -> Automorphism:
    return Automorphism(g.building, tuple(w.inverse() for w in reversed(g.factors)))


def fixes_ball(g: Automorphism, c0: Chamber, r: int) -> bool:
    return all(g(x) == x for x in g.building.ball(c0, r))


# -- the fixator of a ball --------------------------------------------------

def panel_gates(B: Building, c0: Chamber, radius: int) -> list[tuple[Chamber, int]]:
    """Panels contained in ``ball(c0, radius)``, labelled by (gate towards c0, type)."""
    out = []
    for e in sort_chambers(B.ball(c0, radius - 1)):
        down = coxeter.descents(B.diagram, B.weyl_distance(c0, e))
        for s in range(B.diagram.rank):
            if s not in down:
                out.append((e, s))
    return out


def ball_fixator_generators(B: Building, c0: Chamber, n: int, radius: int) -> list[WingPermutation]:
    """All nontrivial wing permutations at panels inside ``ball(c0, radius)`` fixing ``ball(c0, n)``."""
    gens = []
    for e, s in panel_gates(B, c0, radius):
        q = B.q[s]
        for theta in itertools.permutations(range(q)):
            if theta == tuple(range(q)):
                continue
            w = WingPermutation(e, s, theta)
            if fixes_ball(Automorphism(B, (w,)), c0, n):
                gens.append(w)
    return gens


@dataclass
class MovingWitness:
    chamber: str
    firm_chamber: str
    panel_gate: str
    gen: str
    theta: list[int]

    def to_dict(self) -> dict:
        return {"chamber": self.chamber, "firm_chamber": self.firm_chamber,
                "panel_gate": self.panel_gate, "gen": self.gen, "theta": self.theta}


@dataclass
class FixedPointReport:
    n: int
    radius: int
    d_of_n: int
    generator_count: int
    ball_size: int
    flex_size: int
    fixed_set_size: int
    flex_fixed: bool
    fixed_equals_flex: bool
    witnesses: list[MovingWitness] = field(default_factory=list)
    missing_witness: list[str] = field(default_factory=list)
    inapplicable: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.flex_fixed and self.fixed_equals_flex and not self.missing_witness and not self.inapplicable

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "radius": self.radius,
            "d_of_n": self.d_of_n,
            "generator_count": self.generator_count,
            "ball_size": self.ball_size,
            "flex_size": self.flex_size,
            "fixed_set_size": self.fixed_set_size,
            "flex_fixed": self.flex_fixed,
            "fixed_equals_flex": self.fixed_equals_flex,
            "passed": self.passed,
            "witnesses": [w.to_dict() for w in self.witnesses],
            "missing_witness": self.missing_witness,
            "inapplicable": self.inapplicable,
        }


def _firm_chamber_on_gallery(B: Building, c0: Chamber, c: Chamber) -> tuple[Chamber, Chamber, int]:
    """A firm chamber ``d`` of maximal distance on a minimal gallery c0 -> c, its inward neighbour and type."""
    d = B.diagram
    diff = B.difference(c0, c)
    word = tuple(s for s, _ in diff)
    i = coxeter.maximizing_position(d, word)
    p = coxeter.word_poset(d, word)
    head = sorted(p.i_set(i)) + [i]
    prefix = tuple(diff[k - 1] for k in head)
    firm = B.multiply(c0, prefix)
    inner = B.multiply(c0, prefix[:-1])
    return firm, inner, prefix[-1][0]


def verify_fixed_point_theorem(B: Building, c0: Chamber, n: int, radius: int, cap: int = DEFAULT_CAP) -> FixedPointReport:
    """
    Desk-scale check that the fixed chambers of the fixator of ``ball(c0, n)``
    are exactly the n-flex, using the sampled wing-permutation generators.
    """
    bound = find_d(B.diagram, n, cap).d
    flex = flex_set(B, c0, n, radius, cap)
    ball = B.ball(c0, radius)
    gens = ball_fixator_generators(B, c0, n, radius)
    autos = [Automorphism(B, (w,)) for w in gens]
    fixed = frozenset(x for x in ball if all(g(x) == x for g in autos))
    report = FixedPointReport(
        n=n, radius=radius, d_of_n=bound, generator_count=len(gens), ball_size=len(ball),
        flex_size=len(flex), fixed_set_size=len(fixed),
        flex_fixed=flex <= fixed, fixed_equals_flex=fixed == flex,
    )
    names = B.diagram.generators
    for c in sort_chambers(ball - flex):
        firm, inner, s = _firm_chamber_on_gallery(B, c0, c)
        if B.q[s] < 3:
            report.inapplicable.append(B.format_chamber(c))
            continue
        target = B.difference(inner, firm)[0][1]
        other = next(v for v in range(1, B.q[s]) if v != target)
        theta = list(range(B.q[s]))
        theta[target], theta[other] = other, target
        g = extend_panel_permutation(B, inner, s, theta)
        if fixes_ball(g, c0, n) and g(firm) != firm and g(c) != c:
            report.witnesses.append(MovingWitness(B.format_chamber(c), B.format_chamber(firm),
                                                  B.format_chamber(inner), names[s], theta))
        else:
            report.missing_witness.append(B.format_chamber(c))
    return report


# -- roots of the standard apartment -----------------------------------------

def root_contains(d: CoxeterDiagram, u: Sequence[int], s: int, v: Sequence[int]) -> bool:
    """Whether ``v`` is nearer to ``u`` than to ``u s`` in the thin building ``W``."""
    x = coxeter.reduce(d, tuple(coxeter.inverse(d, u)) + tuple(v))
    return coxeter.length(d, x) < coxeter.length(d, (s,) + x)


def root_distance(d: CoxeterDiagram, u: Sequence[int], s: int) -> int:
    """Distance from the identity to the root of the panel ``{u, us}`` that contains ``us``."""
    limit = coxeter.length(d, tuple(u) + (s,))
    level = {()}
    for L in range(limit + 1):
        if any(not root_contains(d, u, s, v) for v in level):
            return L
        nxt = set()
        for g in level:
            down = coxeter.descents(d, g)
            for r in range(d.rank):
                if r not in down:
                    nxt.add(coxeter.multiply(d, g, r)[0])
        level = nxt
    raise AssertionError("u*s must lie in its own root")


def apartment_chamber(B: Building, c0: Chamber, w: Iterable[int]) -> Chamber:
    """Chamber of the standard apartment at ``c0`` with Weyl distance ``w`` (all syllable values 1)."""
    w = coxeter.reduce(B.diagram, tuple(w))
    return B.multiply(c0, tuple((s, 1) for s in w))


def check_far_wing_fixator(B: Building, c0: Chamber, r: int, e: Chamber, s: int) -> bool:
    """
    For an ``s``-panel at ``e`` on the standard apartment whose far root lies
    at distance greater than ``r`` from ``c0`` (with ``c0`` on ``e``'s side),
    check that every wing permutation fixing ``e`` fixes ``ball(c0, r)``.
    """
    d = B.diagram
    diff = B.difference(c0, e)
    if any(v != 1 for _, v in diff):
        raise PreconditionError("e is not on the standard apartment of c0")
    u = tuple(t for t, _ in diff)
    if not root_contains(d, u, s, ()):
        raise PreconditionError("c0 is not on the e-side of the panel")
    dist = root_distance(d, u, s)
    if dist <= r:
        raise PreconditionError(f"far root is at distance {dist} <= r = {r}")
    q = B.q[s]
    for rest in itertools.permutations(range(1, q)):
        theta = (0,) + rest
        if not fixes_ball(extend_panel_permutation(B, e, s, theta), c0, r):
            return False
    return True
