"""Explicit Reidemeister retractions ρ and homotopies h, with symbolic checks.

All maps act on the complex of the diagram D' that contains the move's
tangle (kink, bigon or triangle).  They are assembled from two local
operations:

* ``delta_at(c, v)``: the crossing-``c`` part of the differential, carrying
  its global label sign;
* ``transfer``: change the markers at the tangle crossings, give the small
  circle (the face bounded by the tangle) a prescribed sign or drop it, and
  carry every other circle's sign across through the arcs outside the face.
  Labels are treated as ordered words: the source is read as ``[x + tail]``
  and the target written as ``[x + tail']``.

Both kinks, both bigon orientations and triangle faces are supported.  For
the positive kink, any bigon and triangles with two A-closing corners ρ is
given by a closed-form table; for the negative kink and triangles with one
A-closing corner ρ is derived as ``id - δh - hδ`` from the homotopy and
checked the same way.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Optional

from .complex import add_into, build_complex, differential, vec_str
from .diagram import LinkDiagram, MoveSite, apply_move, find_move_sites, insertion_sites
from .frobenius import FrobeniusCalculus, universal_calculus
from .polyring import ONE, Poly, Specialization
from .resolution import EnhancedState, enhanced_states, smooth


class SiteMismatch(ValueError):
    pass


class TransferError(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# helpers


def label_sign(x: tuple, tail: tuple) -> int:
    """Sign of the word ``sorted(x) + tail`` relative to sorted order."""
    inv = 0
    for k, t in enumerate(tail):
        inv += sum(1 for y in x if y > t)
        inv += sum(1 for u in tail[k + 1:] if u < t)
    return -1 if inv % 2 else 1


def _scale(v: dict, c) -> dict:
    return {k: x * c for k, x in v.items()} if c != 1 else dict(v)


def _sum(*vs: dict) -> dict:
    out: dict = {}
    for v in vs:
        for k, x in v.items():
            add_into(out, k, x)
    return out


# ---------------------------------------------------------------------------
# move context


@dataclass(frozen=True)
class MoveContext:
    """Roles of the tangle crossings inside D'."""

    kind: str  # "R1", "R2", "R3"
    diagram: LinkDiagram
    a: int
    b: Optional[int]
    c: Optional[int]
    face_arcs: frozenset
    variant: str  # e.g. "A"/"B" for kinks, "parallel"/..., "AAB"/"ABB"
    context: tuple = ()  # ((crossing, marker),) that must hold for the bigon part
    closed_form: bool = True  # ρ has a closed-form table rather than being derived

    @property
    def crossings(self) -> tuple:
        return tuple(x for x in (self.a, self.b, self.c) if x is not None)

    def describe(self) -> dict:
        return {
            "kind": self.kind,
            "variant": self.variant,
            "a": self.a + 1,
            "b": None if self.b is None else self.b + 1,
            "c": None if self.c is None else self.c + 1,
            "closed_form": self.closed_form,
        }


def contexts_for(d: LinkDiagram, site: MoveSite) -> list[MoveContext]:
    """All role assignments for a removal / slide site of ``d``."""
    kind = site.kind.upper()
    f = d.faces[site.face] if site.face >= 0 else None
    if kind == "R1":
        (a,) = site.crossings
        if f is None or len(f) != 1 or f.corners[0][0] != a:
            raise SiteMismatch("R1 site does not match a kink in this diagram")
        return [MoveContext("R1", d, a, None, None, frozenset(s[0] for s in f.sides), site.variant, (), site.variant == "A")]
    if kind == "R2":
        a, b = site.crossings
        if f is None or {c for c, _ in f.corners} != {a, b}:
            raise SiteMismatch("R2 site does not match a bigon in this diagram")
        return [MoveContext("R2", d, a, b, None, frozenset(s[0] for s in f.sides), site.variant)]
    if kind == "R3":
        if f is None or len(f) != 3:
            raise SiteMismatch("R3 site does not match a triangle in this diagram")
        arcs = frozenset(s[0] for s in f.sides)
        types = {c: ("A" if q % 2 == 0 else "B") for c, q in f.corners}
        As = [c for c in site.crossings if types[c] == "A"]
        Bs = [c for c in site.crossings if types[c] == "B"]
        out = []
        if len(As) == 2:
            (b,) = Bs
            for a, c in ((As[0], As[1]), (As[1], As[0])):
                out.append(MoveContext("R3", d, a, b, c, arcs, "AAB", ((c, 1),), True))
        elif len(As) == 1:
            (a,) = As
            for b, c in ((Bs[0], Bs[1]), (Bs[1], Bs[0])):
                out.append(MoveContext("R3", d, a, b, c, arcs, "ABB", ((c, -1),), False))
        return out
    raise SiteMismatch(f"unknown move kind {site.kind!r}")


# ---------------------------------------------------------------------------
# local operators


class LocalOps:
    def __init__(self, ctx: MoveContext, calc: FrobeniusCalculus):
        self.ctx = ctx
        self.d = ctx.diagram
        self.calc = calc
        self._delta: dict = {}
        self._delta_c: dict = {}

    # -- differential pieces

    def delta(self, v: dict) -> dict:
        out: dict = {}
        for g, c in v.items():
            img = self._delta.get(g)
            if img is None:
                img = self._delta[g] = differential(self.d, self.calc, g)
            for k, x in img.items():
                add_into(out, k, x * c)
        return out

    def delta_at(self, crossing: int, v: dict) -> dict:
        out: dict = {}
        for g, c in v.items():
            key = (crossing, g)
            img = self._delta_c.get(key)
            if img is None:
                img = self._delta_c[key] = differential(self.d, self.calc, g, only={crossing})
            for k, x in img.items():
                add_into(out, k, x * c)
        return out

    # -- circles

    def small_circle(self, markers) -> Optional[int]:
        cs = smooth(self.d, markers)
        idx = {cs.arc_circle[a] for a in self.ctx.face_arcs}
        if len(idx) != 1:
            return None
        (ci,) = idx
        if all(a in self.ctx.face_arcs for a, k in cs.arc_circle.items() if k == ci):
            return ci
        return None

    def small_sign(self, g: EnhancedState) -> Optional[int]:
        ci = self.small_circle(g.markers)
        return None if ci is None else g.signs[ci]

    def transfer(self, g: EnhancedState, new: dict, tail_from: tuple, tail_to: tuple, small: Optional[int]) -> dict:
        """Move ``g`` to the marker pattern ``new`` (crossing -> marker)."""
        d = self.d
        site = set(new)
        x = tuple(c for c, m in enumerate(g.markers) if m < 0 and c not in site)
        neg_site = {c for c in site if g.markers[c] < 0}
        if set(tail_from) != neg_site:
            raise TransferError(f"label tail {tail_from} does not match the negative markers {sorted(neg_site)}")
        markers = tuple(new.get(c, m) for c, m in enumerate(g.markers))
        if set(tail_to) != {c for c in site if markers[c] < 0}:
            raise TransferError(f"target tail {tail_to} does not match the target markers")
        src = smooth(d, g.markers)
        tgt = smooth(d, markers)
        src_small = self.small_circle(g.markers)
        tgt_small = self.small_circle(markers)
        loops = d.loops
        n_src = src.circle_count - loops
        n_tgt = tgt.circle_count - loops
        signs = [0] * tgt.circle_count
        used = set()
        for k in range(n_tgt):
            if k == tgt_small:
                if small is None:
                    raise TransferError("target has a small circle but no sign was given")
                signs[k] = small
                continue
            srcs = {src.arc_circle[a] for a, kk in tgt.arc_circle.items() if kk == k and a not in self.ctx.face_arcs}
            if len(srcs) != 1:
                raise TransferError("circles do not correspond through the outer arcs")
            (s,) = srcs
            if s in used or s == src_small:
                raise TransferError("circles do not correspond through the outer arcs")
            used.add(s)
            signs[k] = g.signs[s]
        expected = set(range(n_src)) - ({src_small} if src_small is not None else set())
        if used != expected:
            raise TransferError("circles do not correspond through the outer arcs")
        for k in range(loops):
            signs[n_tgt + k] = g.signs[n_src + k]
        sign = label_sign(x, tuple(tail_from)) * label_sign(x, tuple(tail_to))
        return {EnhancedState(markers, tuple(signs)): Poly.const(sign)}

    def transfer_vec(self, v: dict, new, tail_from, tail_to, small) -> dict:
        out: dict = {}
        for g, c in v.items():
            for k, x in self.transfer(g, new, tail_from, tail_to, small).items():
                add_into(out, k, x * c)
        return out

    def in_context(self, g: EnhancedState) -> bool:
        return all(g.markers[c] == m for c, m in self.ctx.context)


# ---------------------------------------------------------------------------
# maps


class MovePair:
    """The homotopy ``h`` and retraction ``rho`` for one move context."""

    def __init__(self, ctx: MoveContext, calc: FrobeniusCalculus | None = None, rho_form: str = "closed"):
        self.ctx = ctx
        self.calc = calc or universal_calculus()
        self.ops = LocalOps(ctx, self.calc)
        if rho_form not in ("closed", "derived", "alternative"):
            raise ValueError(f"unknown rho form {rho_form!r}")
        if rho_form != "derived" and not ctx.closed_form:
            rho_form = "derived"
        self.rho_form = rho_form
        self._h: dict = {}
        self._rho: dict = {}

    # -- classification

    def classify(self, g: EnhancedState) -> str:
        ctx, ops = self.ctx, self.ops
        mk = lambda c: "+" if g.markers[c] > 0 else "-"
        sm = ops.small_sign(g)
        if ctx.kind == "R1":
            a = ctx.a
            if sm is None:
                return "red"
            return f"blue({'+' if sm > 0 else '-'})"
        pat = "".join(mk(c) for c in ctx.crossings)
        name = f"S_{{{pat}}}"
        if sm is not None and sm < 0:
            name = f"S_{{{pat},-}}"
        return name

    # -- h

    def h(self, g: EnhancedState) -> dict:
        if g in self._h:
            return self._h[g]
        self._h[g] = out = self._h_raw(g)
        return out

    def _h_raw(self, g: EnhancedState) -> dict:
        ctx, ops = self.ctx, self.ops
        a = ctx.a
        if ctx.kind == "R1":
            if ctx.variant == "A":
                # red(p)[xa] -> blue(p,-)[x]
                if g.markers[a] < 0:
                    return ops.transfer(g, {a: 1}, (a,), (), -1)
                return {}
            # negative kink: blue'(p,+)[xa] -> red'(p)[x]
            if g.markers[a] < 0 and ops.small_sign(g) == 1:
                return ops.transfer(g, {a: 1}, (a,), (), None)
            return {}
        if not ops.in_context(g):
            return {}
        b = ctx.b
        ma, mb = g.markers[a], g.markers[b]
        if (ma, mb) == (1, -1) and ops.small_sign(g) == 1:
            return ops.transfer(g, {a: 1, b: 1}, (b,), (), None)
        if (ma, mb) == (-1, -1):
            return _scale(ops.transfer(g, {a: 1, b: -1}, (a, b), (b,), -1), -1)
        return {}

    def h_vec(self, v: dict) -> dict:
        out: dict = {}
        for g, c in v.items():
            for k, x in self.h(g).items():
                add_into(out, k, x * c)
        return out

    # -- rho

    def rho(self, g: EnhancedState) -> dict:
        if g in self._rho:
            return self._rho[g]
        if self.rho_form == "derived":
            out = self._rho_derived(g)
        else:
            out = self._rho_closed(g)
        self._rho[g] = out
        return out

    def rho_vec(self, v: dict) -> dict:
        out: dict = {}
        for g, c in v.items():
            for k, x in self.rho(g).items():
                add_into(out, k, x * c)
        return out

    def _rho_derived(self, g):
        ops = self.ops
        one = {g: ONE}
        return _sum(one, _scale(ops.delta(self.h(g)), -1), _scale(self.h_vec(ops.delta(one)), -1))

    def _relabel_minus(self, v: dict) -> dict:
        """S_{--}[xab] -> S_{+-,-}[xb] (the bigon relabelling)."""
        a, b = self.ctx.a, self.ctx.b
        return self.ops.transfer_vec(v, {a: 1, b: -1}, (a, b), (b,), -1)

    def _rho_closed(self, g):
        ctx, ops = self.ctx, self.ops
        a = ctx.a
        one = {g: ONE}
        if ctx.kind == "R1":
            # blue(p,+) -> blue(p,+) - blue(m(p,+), -); everything else -> 0
            if g.markers[a] > 0 and ops.small_sign(g) == 1:
                red = ops.delta_at(a, one)
                return _sum(one, _scale(self.h_vec(red), -1))
            return {}
        b = ctx.b
        if ctx.kind == "R3" and not ops.in_context(g):
            return one  # S_{**-}
        ma, mb = g.markers[a], g.markers[b]
        if (ma, mb) == (1, 1):
            return {}
        if (ma, mb) == (-1, 1):
            return _sum(one, self._relabel_minus(ops.delta_at(b, one)))
        if (ma, mb) == (1, -1):
            if ops.small_sign(g) != 1:
                return {}
            G = self.h(g)
            if ctx.kind == "R3" and self.rho_form == "alternative":
                # S_{+-+}(p,q,r) - S_{+-+,-}(p, m(+,q), r): merge the small circle
                # across corner a, then split it off again with sign -
                return _sum(one, self._relabel_minus(ops.delta_at(a, one)))
            t1 = ops.delta_at(a, G)
            out = _sum(_scale(t1, -1), _scale(self._relabel_minus(ops.delta_at(b, t1)), -1))
            if ctx.kind == "R3":
                out = _sum(out, _scale(ops.delta_at(ctx.c, G), -1))
            return out
        # (ma, mb) == (-1, -1)
        if ctx.kind == "R2":
            return {}
        c = ctx.c
        return ops.transfer(g, {a: 1, b: -1, c: -1}, (a, b), (b, c), None)


# ---------------------------------------------------------------------------
# verification


@dataclass
class IdentityReport:
    identity: str
    move: str
    variant: str
    ok: bool
    checked: int
    witness: Optional[dict] = None

    def to_json(self) -> dict:
        out = {"identity": self.identity, "move": self.move, "variant": self.variant, "status": "pass" if self.ok else "fail", "checked": self.checked}
        if self.witness:
            out["witness"] = self.witness
        return out


def _witness(g, lhs, rhs):
    diff = _sum(lhs, _scale(rhs, -1))
    return {"generator": str(g), "difference": vec_str(diff)}


def _check(name, pair: MovePair, gens, fn) -> IdentityReport:
    checked = 0
    for g in gens:
        lhs, rhs = fn(g)
        checked += 1
        if _sum(lhs, _scale(rhs, -1)):
            return IdentityReport(name, pair.ctx.kind, pair.ctx.variant, False, checked, _witness(g, lhs, rhs))
    return IdentityReport(name, pair.ctx.kind, pair.ctx.variant, True, checked)


def all_generators(d: LinkDiagram):
    for lst in enhanced_states(d).values():
        yield from lst


def verify_chain_map(pair: MovePair, f: Callable | None = None, name="chain_map") -> IdentityReport:
    """δ∘f = f∘δ on every generator (``f`` defaults to ρ)."""
    ops = pair.ops
    fv = (lambda v: _apply(f, v)) if f else pair.rho_vec
    fg = f or pair.rho
    return _check(name, pair, all_generators(pair.ctx.diagram), lambda g: (ops.delta(fg(g)), fv(ops.delta({g: ONE}))))


def _apply(f, v):
    out: dict = {}
    for g, c in v.items():
        for k, x in f(g).items():
            add_into(out, k, x * c)
    return out


def verify_homotopy(pair: MovePair) -> list[IdentityReport]:
    """δh + hδ = id − ρ, ρ² = ρ, h² = 0 and hρ = 0 on every generator."""
    ops = pair.ops
    gens = list(all_generators(pair.ctx.diagram))
    out = [
        _check("homotopy", pair, gens, lambda g: (_sum(ops.delta(pair.h(g)), pair.h_vec(ops.delta({g: ONE}))), _sum({g: ONE}, _scale(pair.rho(g), -1)))),
        _check("idempotent", pair, gens, lambda g: (pair.rho_vec(pair.rho(g)), pair.rho(g))),
        _check("h_squared", pair, gens, lambda g: (pair.h_vec(pair.h(g)), {})),
        _check("h_rho", pair, gens, lambda g: (pair.h_vec(pair.rho(g)), {})),
    ]
    return out


def verify_move(pair: MovePair) -> list[IdentityReport]:
    return [verify_chain_map(pair)] + verify_homotopy(pair)


# ---------------------------------------------------------------------------
# R1 isomorphism with the complex of the unkinked diagram


class KinkIsomorphism:
    """Embedding ι: C(D) → C(D') onto the image of ρ₁, and projection π back."""

    def __init__(self, pair: MovePair):
        ctx = pair.ctx
        if ctx.kind != "R1":
            raise SiteMismatch("kink isomorphism needs an R1 context")
        self.pair = pair
        self.dprime = ctx.diagram
        res = apply_move(ctx.diagram, MoveSite("R1", (ctx.a,), (), ctx.variant, -1), "remove")
        self.d = res.diagram
        self.cmap = res.crossing_map
        self.amap = res.arc_map
        self.inv_cmap = {v: k for k, v in self.cmap.items()}

    def _lift(self, g: EnhancedState, marker_a: int, small: int):
        """Generator of C(D') with the kink resolved so the small circle splits off."""
        ctx = self.pair.ctx
        markers = [0] * self.dprime.n
        for new, old in self.inv_cmap.items():
            markers[old] = g.markers[new]
        markers[ctx.a] = marker_a
        markers = tuple(markers)
        src = smooth(self.d, g.markers)
        tgt = smooth(self.dprime, markers)
        small_ci = self.pair.ops.small_circle(markers)
        signs = [0] * tgt.circle_count
        loops = self.d.loops
        n_src = src.circle_count - loops
        n_tgt = tgt.circle_count - self.dprime.loops
        for arc, k in tgt.arc_circle.items():
            if k == small_ci:
                signs[k] = small
            elif arc in self.amap:
                signs[k] = g.signs[src.arc_circle[self.amap[arc]]]
        for k in range(self.dprime.loops):
            signs[n_tgt + k] = g.signs[n_src + k] if n_src + k < len(g.signs) else 0
        # a kink on a free loop turns one loop into a crossing circle
        if self.dprime.loops < self.d.loops or 0 in signs:
            extra = [k for k in range(n_tgt) if signs[k] == 0 and k != small_ci]
            if len(extra) != 1:
                raise TransferError("cannot match kink strand circle")
            signs[extra[0]] = g.signs[n_src + self.d.loops - 1]
        return EnhancedState(markers, tuple(signs))

    def iota(self, g: EnhancedState) -> dict:
        ctx = self.pair.ctx
        if ctx.variant == "A":
            return self.pair.rho(self._lift(g, 1, 1))
        # negative kink: label a is written first, so ι commutes with δ
        lifted = self._lift(g, -1, -1)
        x_after = sum(1 for c, m in enumerate(lifted.markers) if m < 0 and c < ctx.a)
        return {lifted: Poly.const(-1 if x_after % 2 else 1)}

    def check(self) -> list[IdentityReport]:
        pair = self.pair
        d_gens = list(all_generators(self.d))
        ops = pair.ops
        calc = pair.calc

        def lhs_rhs(g):
            left = ops.delta(self.iota(g))
            right = _apply(self.iota, differential(self.d, calc, g))
            return left, right

        reports = [_check("iota_chain_map", pair, d_gens, lhs_rhs)]
        # ρ∘ι = ι  (ι lands in the image of ρ)
        reports.append(_check("rho_iota", pair, d_gens, lambda g: (pair.rho_vec(self.iota(g)), self.iota(g))))
        reports.append(_check("pi_iota", pair, d_gens, lambda g: (self.pi(self.iota(g)), {g: ONE})))
        return reports

    def _lift_table(self):
        if not hasattr(self, "_lifts"):
            ctx = self.pair.ctx
            self._lifts = {}
            for g in all_generators(self.d):
                if ctx.variant == "A":
                    self._lifts[self._lift(g, 1, 1)] = (g, 1)
                else:
                    ((lifted, c),) = self.iota(g).items()
                    self._lifts[lifted] = (g, c.constant_term())
        return self._lifts

    def pi(self, v: dict) -> dict:
        """Projection C(D') → C(D): read off the coefficients of the lifted generators."""
        table = self._lift_table()
        out: dict = {}
        for g, c in v.items():
            if g in table:
                base, sign = table[g]
                add_into(out, base, c * sign)
        return out


# ---------------------------------------------------------------------------
# invariance under move sequences


def random_move_sequence(d: LinkDiagram, steps: int, seed: int, cap: int = 8) -> list[tuple]:
    """Seeded random Reidemeister moves; returns [(site, direction, diagram_after)]."""
    rng = random.Random(seed)
    out = []
    cur = d
    for _ in range(steps):
        options = []
        if cur.n + 1 <= cap:
            options += [(s, "insert") for s in insertion_sites(cur, "R1")]
        if cur.n + 2 <= cap:
            options += [(s, "insert") for s in insertion_sites(cur, "R2")]
        options += [(s, "remove") for s in find_move_sites(cur, "R1")]
        options += [(s, "remove") for s in find_move_sites(cur, "R2")]
        options += [(s, "slide") for s in find_move_sites(cur, "R3")]
        if not options:
            break
        # weight move kinds evenly rather than by how many sites they offer
        kinds = sorted({(s.kind, dr) for s, dr in options})
        kind = rng.choice(kinds)
        site, direction = rng.choice([o for o in options if (o[0].kind, o[1]) == kind])
        cur = apply_move(cur, site, direction).diagram
        out.append((site, direction, cur))
    return out


@dataclass
class InvarianceReport:
    ok: bool
    steps: list = field(default_factory=list)

    def to_json(self):
        return {"identity": "invariance", "status": "pass" if self.ok else "fail", "steps": self.steps}


def verify_invariance(d: LinkDiagram, moves, sp: Specialization, bigraded: bool = False, calc=None) -> InvarianceReport:
    """Homology before and after each move must agree.

    ``moves`` is a list of (MoveSite, direction) pairs applied in sequence or
    the output of :func:`random_move_sequence`.
    """
    from .homology import homology_at

    calc = calc or universal_calculus()
    base = homology_at(build_complex(d, calc), sp, bigraded)
    cur = d
    steps = []
    ok = True
    for mv in moves:
        site, direction = mv[0], mv[1]
        cur = apply_move(cur, site, direction).diagram
        res = homology_at(build_complex(cur, calc), sp, bigraded)
        same = res == base
        ok = ok and same
        steps.append({"move": site.to_json() | {"direction": direction}, "pd": str(cur), "equal": same})
    return InvarianceReport(ok, steps)
