"""
Brute-force oracles.  None of these call the rewriting, poset or projection
code they are used to check.
"""
from __future__ import annotations

import itertools
from collections import deque

from racb.coxeter import CoxeterDiagram


def _commute(d: CoxeterDiagram, a: int, b: int) -> bool:
    return a != b and d.m(a, b) == 2


# -- words ------------------------------------------------------------------

def swap_class(d, w):
    """Words reachable from ``w`` by type-(2) elementary operations."""
    w = tuple(w)
    seen = {w}
    queue = deque([w])
    while queue:
        cur = queue.popleft()
        for k in range(len(cur) - 1):
            if _commute(d, cur[k], cur[k + 1]):
                nxt = cur[:k] + (cur[k + 1], cur[k]) + cur[k + 2:]
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
    return frozenset(seen)


class ClosureOracle:
    """Minimal-length words reachable from a word by elementary operations (memoized)."""

    def __init__(self, d):
        self.d = d
        self.memo = {}

    def minimal(self, w):
        w = tuple(w)
        hit = self.memo.get(w)
        if hit is not None:
            return hit
        cls = swap_class(self.d, w)
        shorter = {u[:k] + u[k + 2:] for u in cls for k in range(len(u) - 1) if u[k] == u[k + 1]}
        if not shorter:
            result = cls
        else:
            parts = [self.minimal(x) for x in shorter]
            best = min(len(next(iter(p))) for p in parts)
            result = frozenset().union(*(p for p in parts if len(next(iter(p))) == best))
        for u in cls:
            self.memo[u] = result
        return result


def tits_matrix(d, w):
    """Image of ``w`` under the (faithful) Tits representation, as a tuple of rows."""
    n = d.rank
    M = [[int(i == j) for j in range(n)] for i in range(n)]
    for s in w:
        # sigma_s(e_t) = e_t - 2 B(e_s, e_t) e_s with B = 1, 0, -1 for m = 1, 2, inf
        R = [[int(i == j) for j in range(n)] for i in range(n)]
        for t in range(n):
            b = 1 if t == s else (0 if _commute(d, s, t) else -1)
            R[s][t] -= 2 * b
        M = [[sum(M[i][k] * R[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    return tuple(map(tuple, M))


def all_words(rank, max_len):
    for L in range(max_len + 1):
        yield from itertools.product(range(rank), repeat=L)


def reduced_words(d, max_len):
    """All reduced words up to ``max_len`` (no elementary operation can shorten them)."""
    oracle = ClosureOracle(d)
    for w in all_words(d.rank, max_len):
        if len(next(iter(oracle.minimal(w)))) == len(w):
            yield w


def rep_permutations(d, w):
    """The set Rep(w) of permutations built from elementary transpositions."""
    w = tuple(w)
    start = tuple(range(len(w)))
    seen = {start}
    queue = deque([start])
    while queue:
        sigma = queue.popleft()
        word = [w[i] for i in sigma]
        for k in range(len(w) - 1):
            if _commute(d, word[k], word[k + 1]):
                nxt = list(sigma)
                nxt[k], nxt[k + 1] = nxt[k + 1], nxt[k]
                nxt = tuple(nxt)
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
    return seen


def reps_by_permutation_filter(d, w):
    """Reduced words of ``w``: rearrangements of its letters with the same Tits matrix."""
    target = tits_matrix(d, w)
    return {tuple(w[i] for i in sigma) for sigma in itertools.permutations(range(len(w)))
            if tits_matrix(d, [w[i] for i in sigma]) == target}


def poset_by_reps(d, w):
    """Pairs (i, j), 1-based, with letter i placed before letter j in every representation."""
    perms = rep_permutations(d, w)
    n = len(w)
    out = set()
    for i in range(n):
        for j in range(n):
            if i != j and all(sigma.index(i) < sigma.index(j) for sigma in perms):
                out.add((i + 1, j + 1))
    return out


def is_firm_word(d, w):
    """Every representation of the reduced word ``w`` ends in the same letter."""
    return len({u[-1] for u in swap_class(d, w)}) == 1


def firmness_by_prefixes(d, w):
    """Longest firm prefix over all representations of the reduced word ``w``."""
    best = 0
    for u in swap_class(d, w):
        for k in range(len(u), best, -1):
            if is_firm_word(d, u[:k]):
                best = k
                break
    return best


def descents_by_matrix(d, w):
    """Generators r with l(w r) < l(w), via the closure oracle."""
    oracle = ClosureOracle(d)
    L = len(next(iter(oracle.minimal(w))))
    return {r for r in range(d.rank) if len(next(iter(oracle.minimal(tuple(w) + (r,))))) < L}


# -- buildings --------------------------------------------------------------

def graph_distances(B, source, radius):
    """BFS distances in the chamber graph from ``source`` up to ``radius`` steps."""
    dist = {source: 0}
    queue = deque([source])
    while queue:
        c = queue.popleft()
        if dist[c] == radius:
            continue
        for s in range(B.diagram.rank):
            for v in range(1, B.q[s]):
                x = B.step(c, s, v)
                if x not in dist:
                    dist[x] = dist[c] + 1
                    queue.append(x)
    return dist


def residue_by_bfs(B, J, base):
    seen = {base}
    queue = deque([base])
    while queue:
        c = queue.popleft()
        for s in J:
            for v in range(1, B.q[s]):
                x = B.step(c, s, v)
                if x not in seen:
                    seen.add(x)
                    queue.append(x)
    return seen


def project_by_argmin(B, J, base, x):
    chambers = residue_by_bfs(B, J, base)
    best = min(B.distance(x, y) for y in chambers)
    winners = [y for y in chambers if B.distance(x, y) == best]
    assert len(winners) == 1, "projection must be unique"
    return winners[0]


def minimal_galleries(B, c0, c):
    """All minimal galleries from c0 to c (chamber tuples)."""
    n = B.distance(c0, c)
    out = []

    def extend(path):
        cur = path[-1]
        if len(path) - 1 == n:
            if cur == c:
                out.append(tuple(path))
            return
        for s in range(B.diagram.rank):
            for v in range(1, B.q[s]):
                x = B.step(cur, s, v)
                if B.distance(c0, x) == len(path) and B.distance(x, c) == n - len(path):
                    extend(path + [x])

    extend([c0])
    return out
