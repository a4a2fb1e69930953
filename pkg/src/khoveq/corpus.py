"""Embedded example diagrams."""

from __future__ import annotations

from .diagram import LinkDiagram, mirror, parse_pd

_PD = {
    "unknot": "O",
    "unlink2": "O O",
    "unlink3": "O O O",
    "kink_pos": "X(1,1,2,2)",
    "kink_neg": "X(1,2,2,1)",
    "hopf_neg": "X(1,4,2,3) X(3,2,4,1)",
    "trefoil_left": "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)",
    "figure8": "X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)",
    "knot_5_1": "X(1,6,2,7) X(3,8,4,9) X(5,10,6,1) X(7,2,8,3) X(9,4,10,5)",
    "knot_5_2": "X(1,4,2,5) X(3,8,4,9) X(5,10,6,1) X(9,6,10,7) X(7,2,8,3)",
    # a 6-crossing unknot diagram with triangle faces ready for a third move
    "r3_ready": "X(12,3,1,4) X(8,12,9,11) X(9,6,10,7) X(10,8,11,7) X(5,3,6,2) X(4,1,5,2)",
}

_MIRRORED = {"hopf_pos": "hopf_neg", "trefoil_right": "trefoil_left"}

NAMES = (
    "unknot",
    "unlink2",
    "unlink3",
    "kink_pos",
    "kink_neg",
    "hopf_pos",
    "hopf_neg",
    "trefoil_right",
    "trefoil_left",
    "figure8",
    "knot_5_1",
    "knot_5_2",
    "r3_ready",
)


def get(name: str) -> LinkDiagram:
    if name in _PD:
        return parse_pd(_PD[name])
    if name in _MIRRORED:
        return mirror(parse_pd(_PD[_MIRRORED[name]]))
    raise KeyError(f"unknown corpus diagram {name!r}; known: {', '.join(NAMES)}")


def corpus() -> list[tuple[str, LinkDiagram]]:
    return [(n, get(n)) for n in NAMES]


def small_corpus() -> list[tuple[str, LinkDiagram]]:
    """Diagrams of at most four crossings, for quick calculus checks."""
    return [(n, d) for n, d in corpus() if d.n <= 4]


def r3_ready() -> LinkDiagram:
    return get("r3_ready")


def components(name: str) -> int:
    return get(name).component_count
