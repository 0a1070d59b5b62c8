"""
Exhaustive searches for the firmness bounds of a right-angled Coxeter group.

* ``max_bounded_chain_sequence``: longest reduced increasing sequence whose
  infinity-chains have at most ``b`` letters (the empirical ``f(b)``).
* ``k_of``: how many ascent steps always raise the firmness of ``g``.
* ``d_of``: the largest length of an element of firmness at most ``n``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .coxeter import CoxeterDiagram, GroupElement, Word, descents, firmness, multiply, reduce
from .errors import CapExceeded, Inconclusive

DEFAULT_CAP = 10**7


@dataclass(frozen=True)
class IncreasingSequence:
    base: GroupElement
    steps: Word

    @property
    def end(self) -> tuple[int, ...]:
        return self.base + self.steps


def is_increasing(d: CoxeterDiagram, base: Sequence[int], steps: Sequence[int]) -> bool:
    g = reduce(d, base)
    for r in steps:
        g, sign = multiply(d, g, r)
        if sign < 0:
            return False
    return True


def max_bounded_chain_sequence(d: CoxeterDiagram, b: int, cap: int = DEFAULT_CAP) -> tuple[int, IncreasingSequence]:
    """Longest reduced increasing sequence from the identity with all infinity-chains of size <= b."""
    if b < 1:
        raise ValueError("b must be >= 1")
    rank = d.rank
    best: list = [0, ()]
    nodes = 0

    def dfs(g: GroupElement, steps: list[int], chain: list[int]) -> None:
        nonlocal nodes
        nodes += 1
        if nodes > cap:
            raise CapExceeded(f"bounded-chain search exceeded {cap} nodes")
        if len(steps) > best[0]:
            best[0], best[1] = len(steps), tuple(steps)
        down = descents(d, g)
        for r in range(rank):
            if r in down:
                continue
            # longest infinity-chain ending at the new step
            end = 1 + max((chain[k] for k, t in enumerate(steps) if t != r and not d.commutes(t, r)), default=0)
            if end > b:
                continue
            nxt, _ = multiply(d, g, r)
            steps.append(r)
            chain.append(end)
            dfs(nxt, steps, chain)
            steps.pop()
            chain.pop()

    dfs((), [], [])
    return best[0], IncreasingSequence((), best[1])


def chain_bound(d: CoxeterDiagram, steps: Sequence[int]) -> int:
    """Size of the longest subsequence whose consecutive letters generate an infinite dihedral group."""
    chain: list[int] = []
    for k, r in enumerate(steps):
        chain.append(1 + max((chain[j] for j in range(k) if steps[j] != r and not d.commutes(steps[j], r)), default=0))
    return max(chain, default=0)


def k_of(d: CoxeterDiagram, g: Sequence[int], cap: int = DEFAULT_CAP) -> int:
    """1 + length of the longest reduced increasing g-sequence that keeps the firmness of g."""
    g = reduce(d, g)
    target = firmness(d, g)
    nodes = 0

    def longest(h: GroupElement) -> int:
        nonlocal nodes
        nodes += 1
        if nodes > cap:
            raise CapExceeded(f"k search exceeded {cap} nodes")
        down = descents(d, h)
        best = 0
        for r in range(d.rank):
            if r in down:
                continue
            nxt, _ = multiply(d, h, r)
            if firmness(d, nxt) == target:
                best = max(best, 1 + longest(nxt))
        return best

    return longest(g) + 1


def spheres(d: CoxeterDiagram, cap: int = DEFAULT_CAP) -> Iterator[tuple[int, frozenset[GroupElement]]]:
    """Yield ``(L, sphere)`` for L = 0, 1, 2, ... with spheres as sets of normal forms.

    Only the current frontier is kept.  The iteration stops after yielding an
    empty sphere (finite groups).
    """
    total = 1
    level: frozenset[GroupElement] = frozenset({()})
    L = 0
    while True:
        yield L, level
        if not level:
            return
        nxt = set()
        for g in level:
            down = descents(d, g)
            for r in range(d.rank):
                if r not in down:
                    nxt.add(multiply(d, g, r)[0])
        total += len(nxt)
        if total > cap:
            raise CapExceeded(f"sphere enumeration exceeded {cap} elements at length {L + 1}")
        level = frozenset(nxt)
        L += 1


@dataclass(frozen=True)
class DBound:
    n: int
    d: int
    checked_up_to_length: int

    def to_dict(self) -> dict:
        return {"n": self.n, "d": self.d, "checked_up_to_length": self.checked_up_to_length}


def find_d(d: CoxeterDiagram, n: int, cap: int = DEFAULT_CAP) -> DBound:
    """
    Smallest ``D`` with ``firmness(g) > n`` whenever ``l(g) > D``.

    Spheres are scanned by length until one of them (possibly empty) has no
    element of firmness <= n.  Every element one step longer is an ascent of
    an element of that sphere, and ascents never lower firmness, so nothing
    beyond can qualify.  One further sphere is scanned as a sanity check.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    stop = None
    try:
        for L, level in spheres(d, cap):
            low = any(firmness(d, g) <= n for g in level)
            if stop is None:
                if not low:
                    stop = L
            else:
                if low:
                    raise AssertionError(f"element of firmness <= {n} found at length {L} beyond stop level {stop}")
                return DBound(n, stop - 1, L)
            if not level:
                return DBound(n, stop - 1, L)
    except CapExceeded as exc:
        if stop is not None:
            # stopping rule already fired; only the sanity sphere was too large
            return DBound(n, stop - 1, stop)
        raise Inconclusive(f"d({n}) inconclusive up to cap {cap}: {exc}") from None
    raise AssertionError("unreachable")


def d_of(d: CoxeterDiagram, n: int, cap: int = DEFAULT_CAP) -> int:
    return find_d(d, n, cap).d

