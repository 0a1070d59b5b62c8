"""
Semi-regular right-angled buildings as graph products of cyclic groups.

For a diagram with thickness ``q_s`` the chambers are the elements of the
graph product of the cyclic groups ``Z/q_s`` over the commutation graph.  A
chamber is stored as a tuple of syllables ``(s, v)`` with ``1 <= v < q_s``,
in normal form: the type word ``(s for s, v in chamber)`` is the ShortLex
reduced word of the Weyl distance from the base chamber ``()``.

Two chambers are ``s``-adjacent when they differ by right multiplication
with a single ``s``-syllable, and the Weyl distance between ``c`` and ``c'``
is the type word of ``c^-1 c'``.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .coxeter import CoxeterDiagram, GroupElement
from .errors import CapExceeded, DiagramError, WordError

Syllable = tuple[int, int]
Chamber = tuple[Syllable, ...]

BASE: Chamber = ()
DEFAULT_CHAMBER_CAP = 10**6


@dataclass(frozen=True)
class ResidueHandle:
    """The ``J``-residue containing ``base``."""

    J: frozenset[int]
    base: Chamber

    @classmethod
    def of(cls, J: Iterable[int], base: Chamber) -> "ResidueHandle":
        return cls(frozenset(J), base)


class Building:
    """The unique semi-regular right-angled building with the diagram's thickness."""

    def __init__(self, diagram: CoxeterDiagram, cap: int = DEFAULT_CHAMBER_CAP):
        if diagram.thickness is None:
            raise DiagramError("a building needs a thickness for every generator")
        self.diagram = diagram
        self.q = diagram.thickness
        self.cap = cap
        self._normal = lru_cache(maxsize=1 << 18)(self._normal_form)
        self._spheres: list[frozenset[Chamber]] = [frozenset({BASE})]

    # -- normal forms -----------------------------------------------------

    def _push(self, syl: list[Syllable], s: int, v: int) -> int:
        """Right-multiply by ``(s, v)``; returns the change in length (+1, 0 or -1)."""
        if v == 0:
            return 0
        comm = self.diagram.commuting_with(s)
        for k in range(len(syl) - 1, -1, -1):
            t, u = syl[k]
            if t == s:
                w = (u + v) % self.q[s]
                if w:
                    syl[k] = (s, w)
                    return 0
                del syl[k]
                return -1
            if t not in comm:
                break
        syl.append((s, v))
        return 1

    def _sort(self, syl: Sequence[Syllable]) -> Chamber:
        rest = list(syl)
        out = []
        d = self.diagram
        while rest:
            best = None
            seen: list[int] = []
            for pos, (s, _) in enumerate(rest):
                comm = d.commuting_with(s)
                if all(t in comm for t in seen):
                    if best is None or s < rest[best][0]:
                        best = pos
                seen.append(s)
            out.append(rest.pop(best))
        return tuple(out)

    def _normal_form(self, raw: Chamber) -> Chamber:
        syl: list[Syllable] = []
        for s, v in raw:
            self._push(syl, s, v)
        return self._sort(syl)

    def canonicalize(self, raw: Iterable[Sequence[int]]) -> Chamber:
        """Normal form of a product of syllables ``(s, v)`` with ``0 <= v < q_s``."""
        raw = tuple((s, v) for s, v in raw)
        n = self.diagram.rank
        for s, v in raw:
            if isinstance(s, bool) or not isinstance(s, int) or not 0 <= s < n:
                raise WordError(f"unknown generator index {s!r}")
            if isinstance(v, bool) or not isinstance(v, int) or not 0 <= v < self.q[s]:
                raise WordError(f"syllable value {v!r} out of range for {self.diagram.generators[s]} (q={self.q[s]})")
        return self._normal(raw)

    def multiply(self, a: Chamber, b: Chamber) -> Chamber:
        return self._normal(a + b)

    def inverse(self, c: Chamber) -> Chamber:
        return self._normal(tuple((s, (self.q[s] - v) % self.q[s]) for s, v in reversed(c)))

    def step(self, c: Chamber, s: int, v: int) -> Chamber:
        """The chamber ``c * (s, v)``; ``s``-adjacent to ``c`` unless ``v == 0``."""
        return self._normal(c + ((s, v),))

    # -- distances --------------------------------------------------------

    def difference(self, c: Chamber, c2: Chamber) -> Chamber:
        return self._normal(self.inverse(c) + c2)

    def weyl_distance(self, c: Chamber, c2: Chamber) -> GroupElement:
        return tuple(s for s, _ in self.difference(c, c2))

    def distance(self, c: Chamber, c2: Chamber) -> int:
        return len(self.difference(c, c2))

    def adjacency(self, c: Chamber, c2: Chamber) -> int | None:
        diff = self.difference(c, c2)
        if len(diff) == 1:
            return diff[0][0]
        return None

    def type_word(self, c: Chamber) -> GroupElement:
        return tuple(s for s, _ in c)

    # -- panels, spheres, balls -------------------------------------------

    def panel(self, c: Chamber, s: int) -> list[Chamber]:
        """The ``q_s`` chambers of the ``s``-panel of ``c``, listed as ``c*(s,0), c*(s,1), ...``."""
        self.diagram._check_indices((s,))
        return [self.step(c, s, v) for v in range(self.q[s])]

    def _sphere_at_base(self, n: int) -> frozenset[Chamber]:
        while len(self._spheres) <= n:
            last = self._spheres[-1]
            nxt = set()
            for c in last:
                down = self._descent_set(c)
                for s in range(self.diagram.rank):
                    if s in down:
                        continue
                    for v in range(1, self.q[s]):
                        nxt.add(self.step(c, s, v))
            total = sum(len(x) for x in self._spheres) + len(nxt)
            if total > self.cap:
                raise CapExceeded(f"chamber enumeration exceeded {self.cap} chambers at radius {len(self._spheres)}")
            self._spheres.append(frozenset(nxt))
        return self._spheres[n]

    def _descent_set(self, c: Chamber) -> set[int]:
        out = set()
        later: list[int] = []
        d = self.diagram
        for s, _ in reversed(c):
            comm = d.commuting_with(s)
            if all(t in comm for t in later):
                out.add(s)
            later.append(s)
        return out

    def sphere(self, c0: Chamber, n: int) -> frozenset[Chamber]:
        if n < 0:
            raise ValueError("radius must be >= 0")
        level = self._sphere_at_base(n)
        if not c0:
            return level
        return frozenset(self._normal(c0 + x) for x in level)

    def ball(self, c0: Chamber, n: int) -> frozenset[Chamber]:
        out: set[Chamber] = set()
        for k in range(n + 1):
            out |= self.sphere(c0, k)
        return frozenset(out)

    # -- residues ---------------------------------------------------------

    def same_residue(self, r1: ResidueHandle, r2: ResidueHandle) -> bool:
        return r1.J == r2.J and set(self.weyl_distance(r1.base, r2.base)) <= r1.J

    def residue_chambers(self, r: ResidueHandle) -> frozenset[Chamber]:
        """All chambers of a finite residue (spherical type)."""
        if not self.diagram.is_spherical(r.J):
            raise ValueError("residue of non-spherical type is infinite")
        seen = {r.base}
        queue = deque([r.base])
        while queue:
            c = queue.popleft()
            for s in r.J:
                for v in range(1, self.q[s]):
                    x = self.step(c, s, v)
                    if x not in seen:
                        seen.add(x)
                        queue.append(x)
        return frozenset(seen)

    def project(self, r: ResidueHandle, c: Chamber) -> Chamber:
        """
        The gate of ``c`` in the residue ``r``.

        Writes ``base^-1 c = y z`` where ``y`` is the largest initial piece
        made only of ``J``-syllables (syllables whose predecessors are all
        ``J``-syllables too); the gate is ``base * y``.
        """
        J = r.J
        self.diagram._check_indices(J)
        d = self.diagram
        taken = []
        left: list[int] = []
        for s, v in self.difference(r.base, c):
            if s in J and all(t in d.commuting_with(s) for t in left):
                taken.append((s, v))
            else:
                left.append(s)
        return self._normal(r.base + tuple(taken))

    def residue_key(self, r: ResidueHandle) -> tuple[frozenset[int], Chamber]:
        """Canonical label of a residue: its type and the gate of the base chamber."""
        return r.J, self.project(r, BASE)

    def is_parallel(self, r1: ResidueHandle, r2: ResidueHandle) -> bool:
        if r1.J != r2.J:
            return False
        allowed = r1.J | self.diagram.j_perp(r1.J)
        return set(self.weyl_distance(r1.base, r2.base)) <= allowed

    def panel_handle(self, c: Chamber, s: int) -> ResidueHandle:
        return ResidueHandle(frozenset((s,)), c)

    def wing_contains(self, c: Chamber, s: int, x: Chamber) -> bool:
        """Whether ``x`` lies in the ``s``-wing of ``c``."""
        return self.project(self.panel_handle(c, s), x) == c

    # -- galleries --------------------------------------------------------

    def gallery(self, c0: Chamber, c: Chamber) -> list[Chamber]:
        """The minimal gallery from ``c0`` to ``c`` following the normal form of ``c0^-1 c``."""
        out = [c0]
        cur = c0
        for s, v in self.difference(c0, c):
            cur = self.step(cur, s, v)
            out.append(cur)
        return out

    # -- text syntax ------------------------------------------------------

    def parse_chamber(self, text: str) -> Chamber:
        raw = []
        for tok in text.split():
            name, sep, value = tok.partition(":")
            if not sep:
                raise WordError(f"chamber token {tok!r} is not of the form gen:value")
            try:
                v = int(value)
            except ValueError:
                raise WordError(f"chamber token {tok!r} has a non-integer value") from None
            raw.append((self.diagram.index(name), v))
        return self.canonicalize(raw)

    def format_chamber(self, c: Chamber) -> str:
        return " ".join(f"{self.diagram.generators[s]}:{v}" for s, v in c)


def sort_chambers(chambers: Iterable[Chamber]) -> list[Chamber]:
    """Deterministic order: by length, then lexicographically."""
    return sorted(chambers, key=lambda c: (len(c), c))
