"""Smoothings, enhanced states and their gradings.

A marker state is a tuple of ``+1``/``-1`` per crossing.  A positive marker
resolves a crossing by joining positions (0,1) and (2,3); a negative marker
joins (0,3) and (1,2).  Circles are identified by their lowest arc id and
listed in increasing order, followed by the diagram's crossingless loops.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, NamedTuple

from .diagram import LinkDiagram

A_PAIRS = ((0, 1), (2, 3))
B_PAIRS = ((0, 3), (1, 2))


@dataclass(frozen=True)
class CircleSet:
    """Result of smoothing: ``arc_circle[arc]`` is a circle index."""

    arc_circle: dict
    circle_ids: tuple  # lowest arc per crossing circle, then ("loop", k)

    @property
    def circle_count(self) -> int:
        return len(self.circle_ids)

    def circle_of(self, arc: int) -> int:
        return self.arc_circle[arc]


class EnhancedState(NamedTuple):
    markers: tuple
    signs: tuple

    @property
    def label(self) -> tuple:
        """Sorted negative-marked crossings (0-based)."""
        return tuple(c for c, m in enumerate(self.markers) if m < 0)

    def __str__(self):
        mk = "".join("+" if m > 0 else "-" for m in self.markers)
        sg = "".join("+" if s > 0 else "-" for s in self.signs)
        return f"[{mk}|{sg}]"


@dataclass(frozen=True)
class Gradings:
    sigma: int
    tau: int
    i: int
    j: int


def _smooth(crossings, loops, markers) -> CircleSet:
    parent = {}

    def find(a):
        root = a
        while parent.setdefault(root, root) != root:
            root = parent[root]
        while parent[a] != root:
            parent[a], a = root, parent[a]
        return root

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            if ra < rb:
                parent[rb] = ra
            else:
                parent[ra] = rb

    for x, m in zip(crossings, markers):
        for p, q in (A_PAIRS if m > 0 else B_PAIRS):
            union(x[p], x[q])
    roots = sorted({find(a) for a in parent})
    index = {r: k for k, r in enumerate(roots)}
    arc_circle = {a: index[find(a)] for a in parent}
    ids = tuple(roots) + tuple(("loop", k) for k in range(loops))
    return CircleSet(arc_circle, ids)


_smooth_cached = lru_cache(maxsize=1 << 16)(_smooth)


def smooth(d: LinkDiagram, markers) -> CircleSet:
    markers = tuple(markers)
    if len(markers) != d.n:
        raise ValueError(f"expected {d.n} markers, got {len(markers)}")
    return _smooth_cached(d.crossings, d.loops, markers)


def marker_states(n: int) -> Iterator[tuple]:
    """All marker tuples, lexicographic with + before -."""
    return itertools.product((1, -1), repeat=n)


def enhanced_states(d: LinkDiagram) -> dict[int, list[EnhancedState]]:
    """Enhanced states grouped by homological degree i (keys ascending)."""
    out: dict[int, list[EnhancedState]] = {}
    for mk in marker_states(d.n):
        k = smooth(d, mk).circle_count
        i = homological_degree(d, mk)
        bucket = out.setdefault(i, [])
        for sg in itertools.product((1, -1), repeat=k):
            bucket.append(EnhancedState(mk, sg))
    return dict(sorted(out.items()))


def homological_degree(d: LinkDiagram, markers) -> int:
    sigma = sum(markers)
    return (d.writhe - sigma) // 2


def gradings(d: LinkDiagram, st: EnhancedState) -> Gradings:
    sigma = sum(st.markers)
    tau = sum(st.signs)
    w = d.writhe
    if (w - sigma) % 2:
        raise ValueError("marker state has the wrong length for this diagram")
    i = (w - sigma) // 2
    # a + circle carries quantum degree -1 (it is the generator whose square
    # involves s and t), a - circle carries +1
    j = (3 * w - sigma - 2 * tau) // 2
    return Gradings(sigma, tau, i, j)
