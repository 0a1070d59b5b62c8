"""
Right-angled Coxeter diagrams and the combinatorics of their reduced words.

Generators are interned to indices ``0..rank-1`` in declaration order and a
word is a plain tuple of indices.  A group element is represented by its
ShortLex normal form: the lexicographically least reduced word (with respect
to the declared generator order) among all reduced representations.

Positions inside words are 1-based in every public function, to match the
usual indexing ``w = s_1 s_2 ... s_l``.
"""
from __future__ import annotations

import hashlib
import json
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import DiagramError, NotReducedError, WordError

Word = tuple[int, ...]
# A GroupElement is a Word in ShortLex normal form.
GroupElement = Word

IDENTITY: GroupElement = ()


@dataclass(frozen=True)
class CoxeterDiagram:
    """
    A right-angled Coxeter diagram.

    ``commuting`` holds the unordered pairs ``{i, j}`` with ``m_ij = 2``; every
    other pair of distinct generators has ``m_ij = inf``.  ``thickness`` is the
    optional panel size ``q_s`` of each generator, needed only by buildings.
    """

    generators: tuple[str, ...]
    commuting: frozenset[frozenset[int]] = frozenset()
    thickness: tuple[int, ...] | None = None
    _comm: tuple[frozenset[int], ...] = field(init=False, repr=False, compare=False)
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        gens = tuple(self.generators)
        object.__setattr__(self, "generators", gens)
        if not gens:
            raise DiagramError("a diagram needs at least one generator")
        for name in gens:
            if not isinstance(name, str) or not name or any(ch.isspace() or ch == ":" for ch in name):
                raise DiagramError(f"invalid generator name {name!r}")
        if len(set(gens)) != len(gens):
            dup = sorted({g for g in gens if gens.count(g) > 1})
            raise DiagramError(f"duplicate generator(s): {', '.join(dup)}")
        n = len(gens)
        comm = [set() for _ in range(n)]
        pairs = frozenset(frozenset(p) for p in self.commuting)
        for pair in pairs:
            if len(pair) != 2:
                raise DiagramError("a commuting pair must consist of two distinct generators")
            i, j = sorted(pair)
            if not (0 <= i < n and 0 <= j < n):
                raise DiagramError(f"commuting pair {sorted(pair)} out of range")
            comm[i].add(j)
            comm[j].add(i)
        object.__setattr__(self, "commuting", pairs)
        if self.thickness is not None:
            q = tuple(self.thickness)
            if len(q) != n:
                raise DiagramError("thickness must be given for every generator")
            for name, qs in zip(gens, q):
                if isinstance(qs, bool) or not isinstance(qs, int) or qs < 2:
                    raise DiagramError(f"thickness of {name} must be an integer >= 2, got {qs!r}")
            object.__setattr__(self, "thickness", q)
        object.__setattr__(self, "_comm", tuple(frozenset(c) for c in comm))
        object.__setattr__(self, "_index", {g: i for i, g in enumerate(gens)})

    @classmethod
    def from_names(cls, generators: Sequence[str], commuting: Iterable[Sequence[str]] = (),
                   thickness: Mapping[str, int] | None = None) -> "CoxeterDiagram":
        gens = tuple(generators)
        index = {g: i for i, g in enumerate(gens)}
        pairs = set()
        for pair in commuting:
            pair = list(pair)
            if len(pair) != 2:
                raise DiagramError(f"commuting entry {pair!r} is not a pair")
            for name in pair:
                if name not in index:
                    raise DiagramError(f"unknown generator {name!r} in commuting pair {pair!r}")
            if pair[0] == pair[1]:
                raise DiagramError(f"commuting pair {pair!r} repeats a generator")
            pairs.add(frozenset(index[name] for name in pair))
        q = None
        if thickness is not None:
            for name in thickness:
                if name not in index:
                    raise DiagramError(f"unknown generator {name!r} in thickness")
            missing = [g for g in gens if g not in thickness]
            if missing:
                raise DiagramError(f"thickness missing for {', '.join(missing)}")
            q = tuple(thickness[g] for g in gens)
        return cls(gens, frozenset(pairs), q)

    @property
    def rank(self) -> int:
        return len(self.generators)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise WordError(f"unknown generator {name!r}") from None

    def m(self, i: int, j: int) -> float:
        """Coxeter matrix entry: 1 on the diagonal, then 2 or ``math.inf``."""
        if i == j:
            return 1
        return 2 if j in self._comm[i] else math.inf

    def commutes(self, i: int, j: int) -> bool:
        # distinct commuting generators only
        return j in self._comm[i]

    def commuting_with(self, i: int) -> frozenset[int]:
        return self._comm[i]

    def q(self, i: int) -> int:
        if self.thickness is None:
            raise DiagramError("diagram has no thickness")
        return self.thickness[i]

    def with_thickness(self, q: int | Mapping[str, int]) -> "CoxeterDiagram":
        if isinstance(q, Mapping):
            return CoxeterDiagram.from_names(self.generators, self.commuting_names(), q)
        return CoxeterDiagram(self.generators, self.commuting, (q,) * self.rank)

    def commuting_names(self) -> list[list[str]]:
        return sorted(sorted(self.generators[i] for i in pair) for pair in self.commuting)

    def is_spherical(self, J: Iterable[int]) -> bool:
        J = list(J)
        self._check_indices(J)
        return all(self.commutes(a, b) for k, a in enumerate(J) for b in J[k + 1:] if a != b)

    def j_perp(self, J: Iterable[int]) -> frozenset[int]:
        J = frozenset(J)
        self._check_indices(J)
        return frozenset(t for t in range(self.rank)
                         if t not in J and all(self.commutes(t, s) for s in J))

    def _check_indices(self, letters: Iterable[int]) -> None:
        n = self.rank
        for s in letters:
            if isinstance(s, bool) or not isinstance(s, int) or not 0 <= s < n:
                raise WordError(f"unknown generator index {s!r}")

    # text round trips

    def parse_word(self, text: str) -> Word:
        return tuple(self.index(tok) for tok in text.split())

    def format_word(self, word: Iterable[int]) -> str:
        return " ".join(self.generators[s] for s in word)

    def to_dict(self) -> dict:
        doc = {"generators": list(self.generators), "commuting": self.commuting_names()}
        if self.thickness is not None:
            doc["thickness"] = dict(zip(self.generators, self.thickness))
        return doc

    def digest(self) -> str:
        blob = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()


def parse_diagram(text: str) -> CoxeterDiagram:
    """Parse a diagram document (JSON with ``generators``, ``commuting``, ``thickness``)."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DiagramError(f"malformed diagram document at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise DiagramError("diagram document must be a JSON object")
    unknown = set(doc) - {"generators", "commuting", "thickness"}
    if unknown:
        raise DiagramError(f"unexpected key(s): {', '.join(sorted(unknown))}")
    gens = doc.get("generators")
    if not isinstance(gens, list) or not all(isinstance(g, str) for g in gens):
        raise DiagramError("'generators' must be a list of strings")
    commuting = doc.get("commuting", [])
    if not isinstance(commuting, list) or not all(isinstance(p, list) for p in commuting):
        raise DiagramError("'commuting' must be a list of pairs")
    thickness = doc.get("thickness")
    if thickness is not None and not isinstance(thickness, dict):
        raise DiagramError("'thickness' must be an object mapping generators to integers")
    return CoxeterDiagram.from_names(gens, commuting, thickness)


def load_diagram(path) -> CoxeterDiagram:
    with open(path, encoding="utf-8") as fh:
        return parse_diagram(fh.read())


# -- word rewriting ---------------------------------------------------------

def _push(d: CoxeterDiagram, letters: list[int], s: int) -> bool:
    """Right-multiply the reduced word ``letters`` by ``s`` in place.

    Returns True on an ascent, False when a letter cancelled.
    """
    comm = d.commuting_with(s)
    for k in range(len(letters) - 1, -1, -1):
        t = letters[k]
        if t == s:
            del letters[k]
            return False
        if t not in comm:
            break
    letters.append(s)
    return True


def shortlex(d: CoxeterDiagram, word: Sequence[int]) -> Word:
    """Lexicographically least rearrangement of a reduced word by commuting swaps."""
    rest = list(word)
    out = []
    while rest:
        best = None
        seen: list[int] = []
        for pos, s in enumerate(rest):
            comm = d.commuting_with(s)
            if all(t in comm for t in seen):
                if best is None or s < rest[best]:
                    best = pos
            seen.append(s)
        out.append(rest.pop(best))
    return tuple(out)


def reduce(d: CoxeterDiagram, w: Sequence[int]) -> GroupElement:
    """Normal form (ShortLex reduced word) of the element represented by ``w``."""
    d._check_indices(w)
    letters: list[int] = []
    for s in w:
        _push(d, letters, s)
    return shortlex(d, letters)


def length(d: CoxeterDiagram, w: Sequence[int]) -> int:
    d._check_indices(w)
    letters: list[int] = []
    for s in w:
        _push(d, letters, s)
    return len(letters)


def is_reduced(d: CoxeterDiagram, w: Sequence[int]) -> bool:
    return length(d, w) == len(w)


def multiply(d: CoxeterDiagram, g: Sequence[int], s: int) -> tuple[GroupElement, int]:
    """Normal form of ``g*s`` and +1 on an ascent, -1 on a descent."""
    d._check_indices((s,))
    letters = list(reduce(d, g))
    up = _push(d, letters, s)
    return shortlex(d, letters), (1 if up else -1)


def inverse(d: CoxeterDiagram, g: Sequence[int]) -> GroupElement:
    return reduce(d, tuple(reversed(g)))


def descents(d: CoxeterDiagram, g: Sequence[int]) -> frozenset[int]:
    """Generators ``r`` with ``l(g r) < l(g)``; ``g`` must be reduced."""
    out = set()
    later: list[int] = []
    for s in reversed(g):
        comm = d.commuting_with(s)
        if all(t in comm for t in later):
            out.add(s)
        later.append(s)
    return frozenset(out)


def _require_reduced(d: CoxeterDiagram, w: Sequence[int]) -> None:
    if not is_reduced(d, w):
        raise NotReducedError(d.format_word(w), d.format_word(reduce(d, w)))


def enumerate_reps(d: CoxeterDiagram, w: Sequence[int]) -> frozenset[Word]:
    """All reduced words for the element of the reduced word ``w``."""
    _require_reduced(d, w)
    start = tuple(w)
    seen = {start}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        for k in range(len(cur) - 1):
            a, b = cur[k], cur[k + 1]
            if d.commutes(a, b):
                nxt = cur[:k] + (b, a) + cur[k + 2:]
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
    return frozenset(seen)


# -- the dependence poset ---------------------------------------------------

@dataclass(frozen=True)
class WordPoset:
    """
    The order on letter positions of a reduced word.

    ``relation`` contains ``(i, j)`` (1-based) exactly when letter ``i`` comes
    before letter ``j`` in every reduced representation; ``above[i-1]`` is the
    set of all such ``i`` for a fixed ``j``.
    """

    word: Word
    relation: frozenset[tuple[int, int]]
    above: tuple[frozenset[int], ...]

    @property
    def length(self) -> int:
        return len(self.word)

    def holds(self, i: int, j: int) -> bool:
        return (i, j) in self.relation

    def i_set(self, i: int) -> frozenset[int]:
        if not 1 <= i <= len(self.word):
            raise WordError(f"position {i} out of range 1..{len(self.word)}")
        return self.above[i - 1]

    def sorted_relations(self) -> list[list[int]]:
        return [list(p) for p in sorted(self.relation)]


def _above_masks(d: CoxeterDiagram, w: Sequence[int]) -> list[int]:
    # bit i of masks[j] set iff position i (0-based) precedes j in every representation
    masks = []
    for j, t in enumerate(w):
        comm = d.commuting_with(t)
        m = 0
        for i in range(j):
            if w[i] not in comm:
                m |= masks[i] | (1 << i)
        masks.append(m)
    return masks


def word_poset(d: CoxeterDiagram, w: Sequence[int]) -> WordPoset:
    _require_reduced(d, w)
    masks = _above_masks(d, w)
    above = []
    relation = set()
    for j, m in enumerate(masks, start=1):
        members = frozenset(i + 1 for i in range(j - 1) if m >> i & 1)
        above.append(members)
        relation.update((i, j) for i in members)
    return WordPoset(tuple(w), frozenset(relation), tuple(above))


def i_set(p: WordPoset, i: int) -> frozenset[int]:
    return p.i_set(i)


# -- firmness ---------------------------------------------------------------

def is_firm(d: CoxeterDiagram, g: Sequence[int]) -> bool:
    """Whether the nonidentity element ``g`` has exactly one descent."""
    g = reduce(d, g)
    if not g:
        raise WordError("firmness of the identity is not defined; use firmness()")
    return len(descents(d, g)) == 1


def firmness(d: CoxeterDiagram, g: Sequence[int]) -> int:
    """Largest length of a firm prefix over all reduced words of ``g`` (0 for the identity)."""
    g = reduce(d, g)
    if not g:
        return 0
    return max(bin(m).count("1") for m in _above_masks(d, g)) + 1


def firm_rearrangement(d: CoxeterDiagram, w: Sequence[int], i: int) -> Word:
    """
    Reduced rewrite of ``w`` that starts with the letters of ``I_w(i)`` (in
    position order) followed by the letter at position ``i``.

    That prefix is firm, and since the positions involved form a down-set of
    the poset, appending the remaining letters in their original order keeps
    the word a representation of the same element.
    """
    p = word_poset(d, w)
    head = sorted(p.i_set(i)) + [i]
    chosen = set(head)
    tail = [k for k in range(1, len(w) + 1) if k not in chosen]
    return tuple(w[k - 1] for k in head + tail)


def maximizing_position(d: CoxeterDiagram, w: Sequence[int]) -> int:
    """Smallest position ``i`` attaining ``max |I_w(i)|``."""
    p = word_poset(d, w)
    sizes = [len(a) for a in p.above]
    return sizes.index(max(sizes)) + 1
