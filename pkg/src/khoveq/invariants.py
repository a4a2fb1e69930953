"""Independent oracles: Kauffman bracket, graded Euler characteristic, Lee rank.

The bracket is computed straight from PD smoothings and never touches the
calculus or complex code.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .diagram import LinkDiagram


class Laurent:
    """Single-variable Laurent polynomial with integer coefficients."""

    __slots__ = ("_c",)

    def __init__(self, coeffs=None):
        self._c = {int(k): int(v) for k, v in sorted((coeffs or {}).items()) if v}

    @classmethod
    def mono(cls, e: int, c: int = 1):
        return cls({e: c})

    def __add__(self, o):
        out = dict(self._c)
        for k, v in o._c.items():
            out[k] = out.get(k, 0) + v
        return Laurent(out)

    def __neg__(self):
        return Laurent({k: -v for k, v in self._c.items()})

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, o):
        if isinstance(o, int):
            return Laurent({k: v * o for k, v in self._c.items()})
        out: dict = {}
        for k1, v1 in self._c.items():
            for k2, v2 in o._c.items():
                out[k1 + k2] = out.get(k1 + k2, 0) + v1 * v2
        return Laurent(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = Laurent.mono(0)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, o):
        return isinstance(o, Laurent) and self._c == o._c

    def __hash__(self):
        return hash(tuple(self._c.items()))

    def items(self):
        return self._c.items()

    def substitute_monomial(self, coeff: int, exp: int) -> "Laurent":
        """Replace the variable by ``coeff * X**exp`` (coeff = ±1)."""
        return Laurent({k * exp: v * coeff**abs(k) for k, v in self._c.items()})

    def to_json(self):
        return [[k, v] for k, v in self._c.items()]

    def __repr__(self):
        return f"Laurent({self._c})"

    def __str__(self, var="q"):
        if not self._c:
            return "0"
        return " + ".join(f"{v}*{var}^{k}" for k, v in self._c.items()).replace("+ -", "- ")


def kauffman_bracket(d: LinkDiagram) -> Laurent:
    """Unnormalised bracket <D> in A, with <O> = 1 and extra loops giving δ."""
    delta = Laurent({2: -1, -2: -1})
    total = Laurent()
    arcs = sorted({a for x in d.crossings for a in x})
    for choice in itertools.product((0, 1), repeat=d.n):
        parent = {a: a for a in arcs}

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for x, ch in zip(d.crossings, choice):
            pairs = ((0, 1), (2, 3)) if ch == 0 else ((0, 3), (1, 2))
            for p, q in pairs:
                parent[find(x[p])] = find(x[q])
        circles = len({find(a) for a in arcs}) + d.loops
        n_a = choice.count(0)
        total = total + Laurent.mono(n_a - (d.n - n_a)) * delta ** (circles - 1)
    return total


def jones_from_bracket(d: LinkDiagram) -> Laurent:
    """(-A)^{-3w} <D> (-A^2 - A^{-2}), a Laurent polynomial in A."""
    w = d.writhe
    factor = Laurent.mono(-3 * w, -1 if w % 2 else 1)
    return factor * kauffman_bracket(d) * Laurent({2: -1, -2: -1})


def graded_euler(cx) -> Laurent:
    """Σ (-1)^i q^j over the generators of a bigraded complex."""
    from .resolution import gradings

    out: dict = {}
    for i, gens in cx.generators.items():
        for g in gens:
            j = cx.qdeg[g]
            out[j] = out.get(j, 0) + (-1) ** (i % 2)
    return Laurent(out)


def euler_in_A(chi: Laurent) -> Laurent:
    """Substitute q = -A^{-2}."""
    return chi.substitute_monomial(-1, -2)


@dataclass
class LeeRankReport:
    components: int
    expected: int
    rank: int

    @property
    def ok(self) -> bool:
        return self.rank == self.expected

    def to_json(self):
        return {"components": self.components, "expected": self.expected, "rank": self.rank, "status": "pass" if self.ok else "fail"}


def lee_rank_check(d: LinkDiagram) -> LeeRankReport:
    from .complex import build_complex
    from .frobenius import universal_calculus
    from .homology import homology_at
    from .polyring import LEE

    res = homology_at(build_complex(d, universal_calculus()), LEE)
    k = d.component_count
    return LeeRankReport(k, 2**k, res.total_rank())
