"""Signed-circle Frobenius calculi: merge and split tables over Z[s, t].

Circle signs are the integers ``+1`` and ``-1``.  A ``SignCombo`` is a
formal Z[s, t]-combination of sign tuples; merges produce 1-tuples and
splits produce 2-tuples.  Nothing here assumes the tables are associative
or commutative, so arbitrary user tables can be represented and checked.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Mapping

from .polyring import ONE, S, T, ZERO, Poly, Specialization, parse_poly

PLUS, MINUS = 1, -1
SIGNS = (PLUS, MINUS)


def sign_str(signs: Iterable[int]) -> str:
    return "".join("+" if s > 0 else "-" for s in signs)


def parse_signs(text: str) -> tuple[int, ...]:
    out = []
    for ch in text:
        if ch == "+":
            out.append(PLUS)
        elif ch in "-−":
            out.append(MINUS)
        else:
            raise ValueError(f"bad sign character {ch!r} in {text!r}")
    return tuple(out)


class SignCombo:
    """Canonical Z[s,t]-linear combination of sign tuples."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[tuple[int, ...], Poly] | Iterable = ()):
        acc: dict[tuple[int, ...], Poly] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for key, c in items:
            key = tuple(key)
            acc[key] = acc.get(key, ZERO) + Poly.promote(c)
        self._terms = {k: acc[k] for k in sorted(acc, key=lambda k: tuple(-x for x in k)) if acc[k]}

    @classmethod
    def single(cls, *signs: int, coeff=ONE) -> "SignCombo":
        return cls({tuple(signs): coeff})

    def items(self):
        return self._terms.items()

    def __iter__(self):
        return iter(self._terms.items())

    def __len__(self):
        return len(self._terms)

    def coeff(self, *signs: int) -> Poly:
        return self._terms.get(tuple(signs), ZERO)

    def __add__(self, other: "SignCombo") -> "SignCombo":
        return SignCombo(list(self._terms.items()) + list(other._terms.items()))

    def __neg__(self):
        return SignCombo({k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "SignCombo":
        return SignCombo({k: v * c for k, v in self._terms.items()})

    def __eq__(self, other):
        return isinstance(other, SignCombo) and self._terms == other._terms

    def __hash__(self):
        return hash(tuple(self._terms.items()))

    def map_coefficients(self, fn) -> "SignCombo":
        return SignCombo({k: fn(v) for k, v in self._terms.items()})

    def to_json(self) -> list[dict]:
        return [{"signs": sign_str(k), "coeff": v.to_json()} for k, v in self._terms.items()]

    @classmethod
    def from_json(cls, data, arity: int) -> "SignCombo":
        if not isinstance(data, list):
            raise ValueError("sign combination must be a list of terms")
        terms = []
        for entry in data:
            if not isinstance(entry, dict) or "signs" not in entry or "coeff" not in entry:
                raise ValueError(f"malformed sign-combination term {entry!r}")
            key = parse_signs(entry["signs"])
            if len(key) != arity:
                raise ValueError(f"expected {arity} signs, got {entry['signs']!r}")
            terms.append((key, parse_poly(entry["coeff"])))
        return cls(terms)

    def __repr__(self):
        return f"SignCombo({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for k, v in self._terms.items():
            c = str(v)
            if c == "1":
                c = ""
            elif c == "-1":
                c = "-"
            elif len(v.terms) > 1:
                c = f"({c})"
            parts.append(f"{c}({','.join(sign_str((x,)) for x in k)})")
        return " + ".join(parts).replace("+ -", "- ")


@dataclass(frozen=True)
class FrobeniusCalculus:
    merge: Mapping[tuple[int, int], SignCombo]
    split: Mapping[int, SignCombo]
    name: str = "custom"

    def __post_init__(self):
        for p in SIGNS:
            for q in SIGNS:
                if (p, q) not in self.merge:
                    raise ValueError(f"merge entry m({sign_str((p,))},{sign_str((q,))}) missing")
            if p not in self.split:
                raise ValueError(f"split entry Δ({sign_str((p,))}) missing")
        for k, v in self.merge.items():
            if any(len(key) != 1 for key, _ in v):
                raise ValueError(f"merge entry {k} must produce single signs")
        for k, v in self.split.items():
            if any(len(key) != 2 for key, _ in v):
                raise ValueError(f"split entry {k} must produce sign pairs")

    def multiply(self, p: int, q: int) -> SignCombo:
        return self.merge[(p, q)]

    def comultiply(self, p: int) -> SignCombo:
        return self.split[p]

    def composite_split_of_merge(self, p: int, q: int) -> SignCombo:
        out = SignCombo()
        for (r,), c in self.merge[(p, q)]:
            out = out + self.split[r].scale(c)
        return out

    def specialized(self, s, t, name=None) -> "FrobeniusCalculus":
        """Substitute polynomials (or ints) for s and t in every coefficient."""
        s, t = Poly.promote(s), Poly.promote(t)

        def sub(c: Poly) -> Poly:
            return Poly.promote(c.substitute(s, t))

        return FrobeniusCalculus(
            {k: v.map_coefficients(sub) for k, v in self.merge.items()},
            {k: v.map_coefficients(sub) for k, v in self.split.items()},
            name or f"{self.name}@({s},{t})",
        )

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "m": {sign_str(k): self.merge[k].to_json() for k in sorted(self.merge, reverse=True)},
            "delta": {sign_str((k,)): self.split[k].to_json() for k in sorted(self.split, reverse=True)},
        }

    def __eq__(self, other):
        return (
            isinstance(other, FrobeniusCalculus)
            and dict(self.merge) == dict(other.merge)
            and dict(self.split) == dict(other.split)
        )

    def __hash__(self):
        return hash((tuple(sorted(self.merge.items())), tuple(sorted(self.split.items()))))


def universal_calculus() -> FrobeniusCalculus:
    P, M = PLUS, MINUS
    return FrobeniusCalculus(
        merge={
            (P, P): SignCombo({(P,): S, (M,): T}),
            (P, M): SignCombo.single(P),
            (M, P): SignCombo.single(P),
            (M, M): SignCombo.single(M),
        },
        split={
            P: SignCombo({(P, P): ONE, (M, M): T}),
            M: SignCombo({(P, M): ONE, (M, P): ONE, (M, M): -S}),
        },
        name="universal",
    )


def khovanov_calculus() -> FrobeniusCalculus:
    return universal_calculus().specialized(0, 0, "khovanov")


def lee_calculus() -> FrobeniusCalculus:
    return universal_calculus().specialized(0, 1, "lee")


def reduce_mod2(c: FrobeniusCalculus) -> FrobeniusCalculus:
    """Reduce coefficients mod 2 (representatives 0/1), e.g. for Bar-Natan."""

    def red(p: Poly) -> Poly:
        return Poly({k: v % 2 for k, v in p.items()})

    return FrobeniusCalculus(
        {k: v.map_coefficients(red) for k, v in c.merge.items()},
        {k: v.map_coefficients(red) for k, v in c.split.items()},
        c.name + "-mod2",
    )


def load_calculus(doc) -> FrobeniusCalculus:
    """Build a calculus from a parsed JSON document, a JSON string or a path."""
    if isinstance(doc, str):
        text = doc
        if not doc.lstrip().startswith("{"):
            with open(doc, encoding="utf-8") as fh:
                text = fh.read()
        doc = json.loads(text)
    if not isinstance(doc, dict) or "m" not in doc or "delta" not in doc:
        raise ValueError("calculus document needs 'm' and 'delta' tables")
    merge, split = {}, {}
    for key, entry in doc["m"].items():
        k = parse_signs(key)
        if len(k) != 2:
            raise ValueError(f"merge key must have two signs, got {key!r}")
        merge[k] = SignCombo.from_json(entry, 1)
    for key, entry in doc["delta"].items():
        k = parse_signs(key)
        if len(k) != 1:
            raise ValueError(f"split key must have one sign, got {key!r}")
        split[k[0]] = SignCombo.from_json(entry, 2)
    return FrobeniusCalculus(merge, split, doc.get("name", "custom"))


def specialize_calculus(c: FrobeniusCalculus, sp: Specialization) -> FrobeniusCalculus:
    """Integer specializations only; ring reduction happens at homology time."""
    if sp.ring == "mod2poly":
        return c.specialized(S, 0)
    return c.specialized(sp.s, sp.t)
