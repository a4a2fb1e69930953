"""Exact sparse arithmetic in Z[s, t] and its specializations.

A :class:`Poly` is an immutable map ``(a, b) -> c`` standing for
``sum c * s**a * t**b``.  Coefficients are Python ints, so there is no
overflow anywhere in the pipeline.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping

__all__ = [
    "Poly",
    "S",
    "T",
    "ONE",
    "ZERO",
    "Specialization",
    "KHOVANOV",
    "LEE",
    "KHOVANOV_MOD2",
    "BAR_NATAN",
    "specialize",
    "gf2_mul",
    "gf2_divmod",
    "gf2_gcd",
    "gf2_str",
    "gf2_parse",
    "gf2_pow",
    "parse_poly",
]


def _grlex(key):
    a, b = key
    return (a + b, a, b)


class Poly:
    """Element of Z[s, t] with canonical (graded-lex) term order."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[tuple[int, int], int] | None = None):
        items = {}
        if terms:
            for key, c in terms.items():
                if c:
                    a, b = key
                    if a < 0 or b < 0:
                        raise ValueError(f"negative exponent in {key}")
                    items[(int(a), int(b))] = int(c)
        self._terms = dict(sorted(items.items(), key=lambda kv: _grlex(kv[0])))
        self._hash = None

    @classmethod
    def const(cls, c: int) -> "Poly":
        return cls({(0, 0): c})

    @classmethod
    def promote(cls, x) -> "Poly":
        if isinstance(x, Poly):
            return x
        if isinstance(x, int):
            return cls.const(x)
        raise TypeError(f"cannot promote {type(x).__name__} to Poly")

    @property
    def terms(self) -> dict[tuple[int, int], int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def is_constant(self) -> bool:
        return all(k == (0, 0) for k in self._terms)

    def constant_term(self) -> int:
        return self._terms.get((0, 0), 0)

    def __add__(self, other):
        other = Poly.promote(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-Poly.promote(other))

    def __rsub__(self, other):
        return Poly.promote(other) - self

    def __mul__(self, other):
        other = Poly.promote(other)
        if not self._terms or not other._terms:
            return ZERO
        out: dict[tuple[int, int], int] = {}
        for (a1, b1), c1 in self._terms.items():
            for (a2, b2), c2 in other._terms.items():
                k = (a1 + a2, b1 + b2)
                out[k] = out.get(k, 0) + c1 * c2
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = ONE
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def substitute(self, s, t):
        """Evaluate at ``s``, ``t`` taken from any commutative ring with ``**``."""
        total = 0
        for (a, b), c in self._terms.items():
            total = total + c * (s**a) * (t**b)
        return total

    def to_json(self) -> list[list]:
        return [[a, b, str(c)] for (a, b), c in self._terms.items()]

    @classmethod
    def from_json(cls, data: Iterable) -> "Poly":
        terms: dict[tuple[int, int], int] = {}
        for entry in data:
            if len(entry) != 3:
                raise ValueError(f"malformed polynomial term {entry!r}")
            a, b, c = entry
            if not isinstance(a, int) or not isinstance(b, int):
                raise ValueError(f"malformed polynomial exponents {entry!r}")
            try:
                c = int(c)
            except (TypeError, ValueError):
                raise ValueError(f"malformed polynomial coefficient {entry!r}") from None
            terms[(a, b)] = terms.get((a, b), 0) + c
        return cls(terms)

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for (a, b), c in self._terms.items():
            mono = "*".join(
                x for x in (
                    ("s" if a == 1 else f"s^{a}") if a else "",
                    ("t" if b == 1 else f"t^{b}") if b else "",
                ) if x
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


ZERO = Poly()
ONE = Poly.const(1)
S = Poly({(1, 0): 1})
T = Poly({(0, 1): 1})


# --- GF(2)[x] as Python ints (bit i = coefficient of x**i) -----------------

def gf2_mul(a: int, b: int) -> int:
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        b >>= 1
    return out


def gf2_divmod(a: int, b: int) -> tuple[int, int]:
    if b == 0:
        raise ZeroDivisionError("division by zero polynomial")
    q = 0
    db = b.bit_length()
    while a and a.bit_length() >= db:
        shift = a.bit_length() - db
        q ^= 1 << shift
        a ^= b << shift
    return q, a


def gf2_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, gf2_divmod(a, b)[1]
    return a


def gf2_pow(a: int, n: int) -> int:
    out = 1
    for _ in range(n):
        out = gf2_mul(out, a)
    return out


def gf2_str(a: int, var: str = "s") -> str:
    if a == 0:
        return "0"
    parts = []
    for i in range(a.bit_length() - 1, -1, -1):
        if a >> i & 1:
            parts.append("1" if i == 0 else (var if i == 1 else f"{var}^{i}"))
    return " + ".join(parts)


def gf2_parse(text: str, var: str = "s") -> int:
    """Parse ``"s^2 + s + 1"`` style text into the bit representation."""
    text = text.replace(" ", "")
    if text in ("", "0"):
        return 0
    out = 0
    for term in text.split("+"):
        if term == "1":
            out ^= 1
        elif term == var:
            out ^= 2
        elif term.startswith(var + "^"):
            out ^= 1 << int(term[len(var) + 1:])
        else:
            raise ValueError(f"cannot parse GF(2) polynomial term {term!r}")
    return out


# --- specializations -------------------------------------------------------

RINGS = ("integers", "mod2", "mod2poly")


@dataclass(frozen=True)
class Specialization:
    """Evaluation target for s and t.

    ``integers``: s, t are ints, target ring Z.
    ``mod2``: s, t in {0, 1}, target GF(2).
    ``mod2poly``: t = 0 and s is sent to an element of GF(2)[x] (default x).
    """

    ring: str = "integers"
    s: int = 0
    t: int = 0

    def __post_init__(self):
        if self.ring not in RINGS:
            raise ValueError(f"unknown ring {self.ring!r}; expected one of {RINGS}")
        if self.ring == "mod2" and (self.s not in (0, 1) or self.t not in (0, 1)):
            raise ValueError("mod2 specialization needs s, t in {0, 1}")
        if self.ring == "mod2poly":
            if self.t != 0:
                raise ValueError("mod2poly specialization forces t = 0")
            if self.s < 0:
                raise ValueError("s must be a GF(2)[x] bit pattern")

    @property
    def preserves_quantum_grading(self) -> bool:
        if self.ring == "mod2poly":
            return self.s == 0
        return self.s == 0 and self.t == 0

    def to_json(self) -> dict:
        d = {"ring": self.ring, "t": self.t}
        d["s"] = gf2_str(self.s, "s") if self.ring == "mod2poly" else self.s
        return d


KHOVANOV = Specialization("integers", 0, 0)
LEE = Specialization("integers", 0, 1)
KHOVANOV_MOD2 = Specialization("mod2", 0, 0)
BAR_NATAN = Specialization("mod2poly", 0b10, 0)


def specialize(p: Poly, sp: Specialization):
    """Evaluation homomorphism Z[s, t] -> target ring of ``sp``."""
    p = Poly.promote(p)
    if sp.ring == "integers":
        return p.substitute(sp.s, sp.t)
    if sp.ring == "mod2":
        return p.substitute(sp.s, sp.t) % 2
    out = 0
    for (a, b), c in p.items():
        if b and sp.t == 0:
            continue
        if c % 2:
            out ^= gf2_pow(sp.s, a)
    return out


_MONO = re.compile(r"([+-]?)(\d*)((?:(?<=\d)\*)?(?:[st](?:\^\d+)?)(?:\*?[st](?:\^\d+)?)*)?")


def parse_poly(text) -> Poly:
    """Parse ``"2s^2t - 3t + 1"``-style text (also accepts ints and JSON term lists)."""
    if isinstance(text, Poly):
        return text
    if isinstance(text, bool):
        raise ValueError("boolean is not a polynomial")
    if isinstance(text, int):
        return Poly.const(text)
    if isinstance(text, list):
        return Poly.from_json(text)
    if not isinstance(text, str):
        raise ValueError(f"cannot read a polynomial from {text!r}")
    if re.search(r"[\d^]\s+\d", text):
        raise ValueError(f"malformed polynomial {text!r}")
    src = text.replace(" ", "").replace("−", "-").replace("**", "^")
    if not src:
        raise ValueError("empty polynomial")
    out = ZERO
    pos = 0
    while pos < len(src):
        m = _MONO.match(src, pos)
        sign, digits, vars_ = m.group(1), m.group(2), m.group(3) or ""
        if m.end() == pos or (not digits and not vars_):
            raise ValueError(f"malformed polynomial {text!r} at offset {pos}")
        if pos > 0 and not sign:
            raise ValueError(f"malformed polynomial {text!r} at offset {pos}")
        coeff = int(digits) if digits else 1
        a = b = 0
        for var, exp in re.findall(r"([st])(?:\^(\d+))?", vars_):
            e = int(exp) if exp else 1
            if var == "s":
                a += e
            else:
                b += e
        term = Poly({(a, b): -coeff if sign == "-" else coeff})
        out = out + term
        pos = m.end()
    return out
