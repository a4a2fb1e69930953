"""The enhanced-state chain complex and its universal differential.

Generators are ``EnhancedState`` values; the ordered label [x] is implicit
(the negative-marked crossings in increasing order).  Flipping the positive
marker at crossing ``a`` appends ``a`` to the label, which is then sorted at
the cost of ``(-1)^{#negative crossings with index > a}``.

Local argument order for the calculus tables: on a merge the first circle is
the one through positions (2,3) and the second the one through (0,1); on a
split the first output is the circle through (0,3), the second the one
through (1,2).
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable

from .diagram import LinkDiagram
from .frobenius import FrobeniusCalculus
from .polyring import ZERO, Poly
from .resolution import EnhancedState, enhanced_states, gradings, homological_degree, smooth

DEFAULT_MAX_CROSSINGS = 14


class ResourceLimitError(RuntimeError):
    pass


def max_crossings() -> int:
    raw = os.environ.get("KHOVEQ_MAX_CROSSINGS")
    if raw is None:
        return DEFAULT_MAX_CROSSINGS
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"KHOVEQ_MAX_CROSSINGS must be an integer, got {raw!r}") from None


# ---------------------------------------------------------------------------
# sparse chain vectors


def add_into(acc: dict, key, coeff) -> None:
    if not coeff:
        return
    v = acc.get(key)
    v = coeff if v is None else v + coeff
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


def vec_add(*vecs: dict, scale: Iterable = None) -> dict:
    out: dict = {}
    scales = list(scale) if scale is not None else [1] * len(vecs)
    for v, c in zip(vecs, scales):
        for k, x in v.items():
            add_into(out, k, x * c if c != 1 else x)
    return out


def vec_str(v: dict) -> str:
    if not v:
        return "0"
    return " + ".join(f"({c})*{k}" for k, c in sorted(v.items()))


# ---------------------------------------------------------------------------
# local transitions


@dataclass(frozen=True)
class Transition:
    """How flipping a positive marker at ``crossing`` changes the circles."""

    crossing: int
    target_markers: tuple
    kind: str  # "merge" or "split"
    inputs: tuple  # circle indices in the source smoothing (1 or 2)
    outputs: tuple  # circle indices in the target smoothing (1 or 2)
    carry: tuple  # (source circle, target circle) for untouched circles
    target_count: int
    sign: int


def transition(d: LinkDiagram, markers: tuple, a: int) -> Transition:
    return _transition(d.crossings, d.loops, markers, a)


@lru_cache(maxsize=1 << 16)
def _transition(crossings, loops, markers, a) -> Transition:
    from .resolution import _smooth_cached

    if markers[a] < 0:
        raise ValueError("can only flip a positive marker")
    src = _smooth_cached(crossings, loops, markers)
    tgt_markers = markers[:a] + (-1,) + markers[a + 1:]
    tgt = _smooth_cached(crossings, loops, tgt_markers)
    x = crossings[a]
    c01, c23 = src.arc_circle[x[0]], src.arc_circle[x[2]]
    t03, t12 = tgt.arc_circle[x[0]], tgt.arc_circle[x[1]]
    if c01 != c23:
        kind, inputs, outputs = "merge", (c23, c01), (t03,)
    else:
        kind, inputs, outputs = "split", (c01,), (t03, t12)
    touched = set(inputs)
    carry = []
    # every untouched circle keeps its arc set; match through any of its arcs
    rep = {}
    for arc, ci in src.arc_circle.items():
        rep.setdefault(ci, arc)
    n_arc_circles = len(src.circle_ids) - loops
    for ci in range(n_arc_circles):
        if ci not in touched:
            carry.append((ci, tgt.arc_circle[rep[ci]]))
    n_tgt_arc = len(tgt.circle_ids) - loops
    for k in range(loops):
        carry.append((n_arc_circles + k, n_tgt_arc + k))
    sign = -1 if sum(1 for c in range(a + 1, len(markers)) if markers[c] < 0) % 2 else 1
    return Transition(a, tgt_markers, kind, inputs, outputs, tuple(carry), len(tgt.circle_ids), sign)


def apply_transition(tr: Transition, signs: tuple, calc: FrobeniusCalculus) -> dict:
    """Image of one enhanced state (by its circle signs) under a transition."""
    base = [0] * tr.target_count
    for s_src, s_tgt in tr.carry:
        base[s_tgt] = signs[s_src]
    if tr.kind == "merge":
        combo = calc.multiply(signs[tr.inputs[0]], signs[tr.inputs[1]])
    else:
        combo = calc.comultiply(signs[tr.inputs[0]])
    out = {}
    for key, c in combo.items():
        new = list(base)
        for slot, val in zip(tr.outputs, key):
            new[slot] = val
        add_into(out, EnhancedState(tr.target_markers, tuple(new)), c * tr.sign if tr.sign < 0 else c)
    return out


def differential(d: LinkDiagram, calc: FrobeniusCalculus, g: EnhancedState, only=None) -> dict:
    """δ(g) as a sparse map EnhancedState -> Poly.

    ``only`` restricts the sum to a set of crossings (used for local terms).
    """
    out: dict = {}
    for a, m in enumerate(g.markers):
        if m < 0 or (only is not None and a not in only):
            continue
        tr = transition(d, g.markers, a)
        for k, c in apply_transition(tr, g.signs, calc).items():
            add_into(out, k, c)
    return out


def apply_linear(fn, vec: dict) -> dict:
    """Extend a generator-level map linearly over a chain vector."""
    out: dict = {}
    for g, c in vec.items():
        for k, x in fn(g).items():
            add_into(out, k, x * c)
    return out


# ---------------------------------------------------------------------------
# whole complex


@dataclass
class ComplexRepr:
    diagram: LinkDiagram
    calculus: FrobeniusCalculus
    generators: dict  # i -> list[EnhancedState]
    index: dict  # EnhancedState -> position within its degree
    matrices: dict  # i -> {col: {row: Poly}} for d_i : C^i -> C^{i+1}
    qdeg: dict = field(default_factory=dict)  # EnhancedState -> j

    @property
    def degrees(self) -> list[int]:
        return sorted(self.generators)

    def dim(self, i: int) -> int:
        return len(self.generators.get(i, ()))

    def total_generators(self) -> int:
        return sum(len(v) for v in self.generators.values())

    def column(self, g: EnhancedState) -> dict:
        i = homological_degree(self.diagram, g.markers)
        col = self.matrices.get(i, {}).get(self.index[g], {})
        tgt = self.generators.get(i + 1, [])
        return {tgt[r]: c for r, c in col.items()}

    def entries(self):
        """Yield (i, source, target, coefficient) for every nonzero entry."""
        for i, cols in sorted(self.matrices.items()):
            src, tgt = self.generators[i], self.generators.get(i + 1, [])
            for c, col in sorted(cols.items()):
                for r, val in sorted(col.items()):
                    yield i, src[c], tgt[r], val

    def to_json(self) -> dict:
        gens = []
        for i in self.degrees:
            for g in self.generators[i]:
                gens.append(
                    {
                        "i": i,
                        "j": self.qdeg[g],
                        "markers": "".join("+" if m > 0 else "-" for m in g.markers),
                        "signs": "".join("+" if s > 0 else "-" for s in g.signs),
                    }
                )
        mats = []
        for i, cols in sorted(self.matrices.items()):
            trip = [[r, c, v.to_json()] for c, col in sorted(cols.items()) for r, v in sorted(col.items())]
            mats.append({"i": i, "rows": self.dim(i + 1), "cols": self.dim(i), "entries": trip})
        return {"generators": gens, "matrices": mats}


def build_complex(d: LinkDiagram, calc: FrobeniusCalculus, cap: int | None = None) -> ComplexRepr:
    cap = max_crossings() if cap is None else cap
    if d.n > cap:
        raise ResourceLimitError(
            f"diagram has {d.n} crossings, above the cap of {cap} (set KHOVEQ_MAX_CROSSINGS)"
        )
    gens = enhanced_states(d)
    index = {}
    for i, lst in gens.items():
        for k, g in enumerate(lst):
            index[g] = k
    qdeg = {g: gradings(d, g).j for lst in gens.values() for g in lst}
    mats = {}
    for i, lst in gens.items():
        cols = {}
        for k, g in enumerate(lst):
            img = differential(d, calc, g)
            if img:
                cols[k] = {index[t]: c for t, c in img.items()}
        mats[i] = cols
    return ComplexRepr(d, calc, gens, index, mats, qdeg)


@dataclass
class DeltaSquaredReport:
    ok: bool
    checked: int
    witnesses: list  # (source generator, nonzero image) pairs

    def to_json(self) -> dict:
        return {
            "identity": "delta_squared",
            "status": "pass" if self.ok else "fail",
            "checked": self.checked,
            "witnesses": [{"generator": str(g), "image": vec_str(v)} for g, v in self.witnesses[:5]],
        }


def verify_delta_squared(cx: ComplexRepr, max_witnesses: int = 5) -> DeltaSquaredReport:
    """Check d_{i+1} d_i = 0 column by column, symbolically over Z[s,t]."""
    witnesses = []
    checked = 0
    for i, cols in cx.matrices.items():
        src = cx.generators[i]
        nxt = cx.matrices.get(i + 1, {})
        for c, col in cols.items():
            acc: dict = {}
            for r, v in col.items():
                for r2, v2 in nxt.get(r, {}).items():
                    add_into(acc, r2, v * v2)
            checked += 1
            if acc:
                tgt = cx.generators[i + 2]
                witnesses.append((src[c], {tgt[r]: v for r, v in acc.items()}))
                if len(witnesses) >= max_witnesses:
                    return DeltaSquaredReport(False, checked, witnesses)
    return DeltaSquaredReport(not witnesses, checked, witnesses)
