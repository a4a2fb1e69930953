"""Oriented link diagrams in planar-diagram (PD) notation.

A crossing ``X(i, j, k, l)`` lists its four arcs counterclockwise starting
from the incoming under-strand; the under-strand runs ``i -> k``.  Crossing
signs are traced from orientation, never taken on trust.  Crossingless
components are carried as a plain count (``loops``).

Half-edges are ``(crossing_index, position)`` pairs with positions 0..3.
A face corner ``(c, q)`` is the region between positions ``q`` and ``q+1``
at crossing ``c``; the A-smoothing joins positions (0,1) and (2,3), so a
corner with even ``q`` is closed off by the A-smoothing.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional, Sequence

__all__ = [
    "PDError",
    "LinkDiagram",
    "Face",
    "MoveSite",
    "MoveResult",
    "parse_pd",
    "format_pd",
    "writhe",
    "find_move_sites",
    "insertion_sites",
    "apply_move",
    "canonicalize",
    "mirror",
]


class PDError(ValueError):
    """Malformed or inconsistent PD input."""


# ---------------------------------------------------------------------------
# core data


@dataclass(frozen=True)
class Face:
    corners: tuple[tuple[int, int], ...]
    # (arc, start half-edge, end half-edge) in traversal order, face on the left
    sides: tuple[tuple[int, tuple[int, int], tuple[int, int]], ...]

    def __len__(self):
        return len(self.corners)


def _corner_type(q: int) -> str:
    return "A" if q % 2 == 0 else "B"


@dataclass(frozen=True)
class LinkDiagram:
    crossings: tuple[tuple[int, int, int, int], ...]
    loops: int = 0
    overrides: tuple[Optional[int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "crossings", tuple(tuple(int(a) for a in x) for x in self.crossings))
        if not self.overrides:
            object.__setattr__(self, "overrides", (None,) * len(self.crossings))
        if len(self.overrides) != len(self.crossings):
            raise PDError("one sign override slot per crossing required")
        if self.loops < 0:
            raise PDError("negative loop count")
        self._validate()

    # -- validation ---------------------------------------------------------

    def _validate(self):
        counts: dict[int, int] = {}
        for x in self.crossings:
            if len(x) != 4:
                raise PDError(f"crossing {x} does not have four arcs")
            for a in x:
                counts[a] = counts.get(a, 0) + 1
        for a, k in sorted(counts.items()):
            if k != 2:
                raise PDError(f"arc {a} appears {k} times (expected 2)")
        self._orientation  # raises on inconsistency
        if self.crossings and not self.is_planar:
            raise PDError("PD code is not planar (Euler characteristic check failed)")

    # -- basic structure ----------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.crossings)

    @cached_property
    def arcs(self) -> tuple[int, ...]:
        return tuple(sorted({a for x in self.crossings for a in x}))

    @cached_property
    def arc_ends(self) -> dict[int, tuple[tuple[int, int], tuple[int, int]]]:
        ends: dict[int, list] = {}
        for c, x in enumerate(self.crossings):
            for p, a in enumerate(x):
                ends.setdefault(a, []).append((c, p))
        return {a: (e[0], e[1]) for a, e in ends.items()}

    def other_end(self, half: tuple[int, int]) -> tuple[int, int]:
        c, p = half
        e1, e2 = self.arc_ends[self.crossings[c][p]]
        return e2 if e1 == half else e1

    @cached_property
    def _orientation(self) -> dict[tuple[int, int], str]:
        """Map each half-edge to 'in' or 'out' (arc entering / leaving)."""
        d: dict[tuple[int, int], str] = {}
        flip = {"in": "out", "out": "in"}
        queue = []

        def assign(h, v):
            if h in d:
                if d[h] != v:
                    raise PDError(f"inconsistent orientation at crossing {h[0] + 1}")
                return
            d[h] = v
            queue.append(h)

        def propagate():
            while queue:
                h = queue.pop()
                assign(self.other_end(h), flip[d[h]])
                c, p = h
                if p in (1, 3):
                    assign((c, 4 - p), flip[d[h]])

        for c in range(self.n):
            assign((c, 0), "in")
            assign((c, 2), "out")
        propagate()
        # components passing only over: use the override, else arc numbering
        for c, x in enumerate(self.crossings):
            if (c, 1) in d:
                continue
            o = self.overrides[c]
            if o is not None:
                l_in = o > 0
            else:
                j, l = x[1], x[3]
                l_in = not (l == j + 1)
            assign((c, 3), "in" if l_in else "out")
            propagate()
        return d

    @cached_property
    def traced_signs(self) -> tuple[int, ...]:
        return tuple(1 if self._orientation[(c, 3)] == "in" else -1 for c in range(self.n))

    @cached_property
    def signs(self) -> tuple[int, ...]:
        return tuple(o if o is not None else s for o, s in zip(self.overrides, self.traced_signs))

    @cached_property
    def sign_mismatches(self) -> tuple[int, ...]:
        return tuple(
            c for c, (o, s) in enumerate(zip(self.overrides, self.traced_signs))
            if o is not None and o != s
        )

    @property
    def n_plus(self) -> int:
        return sum(1 for s in self.signs if s > 0)

    @property
    def n_minus(self) -> int:
        return sum(1 for s in self.signs if s < 0)

    @property
    def writhe(self) -> int:
        return self.n_plus - self.n_minus

    @property
    def arc_count(self) -> int:
        return len(self.arcs)

    @cached_property
    def successor(self) -> dict[int, int]:
        """Arc -> next arc along the orientation."""
        nxt = {}
        for c, x in enumerate(self.crossings):
            nxt[x[0]] = x[2]
            if self._orientation[(c, 3)] == "in":
                nxt[x[3]] = x[1]
            else:
                nxt[x[1]] = x[3]
        return nxt

    def arc_tail(self, arc: int) -> tuple[int, int]:
        """Half-edge where ``arc`` leaves its crossing."""
        e1, e2 = self.arc_ends[arc]
        return e1 if self._orientation[e1] == "out" else e2

    @cached_property
    def link_components(self) -> tuple[tuple[int, ...], ...]:
        seen = set()
        comps = []
        for a in self.arcs:
            if a in seen:
                continue
            comp = []
            b = a
            while b not in seen:
                seen.add(b)
                comp.append(b)
                b = self.successor[b]
            comps.append(tuple(comp))
        return tuple(comps)

    @property
    def component_count(self) -> int:
        return len(self.link_components) + self.loops

    # -- faces ----------------------------------------------------------------

    @cached_property
    def faces(self) -> tuple[Face, ...]:
        seen = set()
        faces = []
        for c in range(self.n):
            for p in range(4):
                if (c, p) in seen:
                    continue
                corners, sides = [], []
                h = (c, p)
                while h not in seen:
                    seen.add(h)
                    arr = self.other_end(h)
                    sides.append((self.crossings[h[0]][h[1]], h, arr))
                    nxt = (arr[0], (arr[1] - 1) % 4)
                    corners.append(nxt)
                    h = nxt
                faces.append(Face(tuple(corners), tuple(sides)))
        return tuple(faces)

    @cached_property
    def is_planar(self) -> bool:
        parent = list(range(self.n))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for e1, e2 in self.arc_ends.values():
            parent[find(e1[0])] = find(e2[0])
        graph_components = len({find(i) for i in range(self.n)})
        return self.n - 2 * self.n + len(self.faces) == 2 * graph_components

    def corner_type(self, corner: tuple[int, int]) -> str:
        return _corner_type(corner[1])

    def is_over(self, half: tuple[int, int]) -> bool:
        return half[1] % 2 == 1

    def __str__(self):
        return format_pd(self)


# ---------------------------------------------------------------------------
# parsing / printing

_TOKEN = re.compile(
    r"\s*(?:(?P<x>X(?P<sg>[+\-−])?\(\s*(?P<a>\d+)\s*,\s*(?P<b>\d+)\s*,"
    r"\s*(?P<c>\d+)\s*,\s*(?P<d>\d+)\s*\))|(?P<o>O)(?![\w(]))"
)


def parse_pd(text: str) -> LinkDiagram:
    """Parse PD text: ``X(a,b,c,d)``, ``X+(...)``/``X-(...)``, ``O``; ``#`` comments."""
    crossings, overrides, loops = [], [], 0
    offset = 0
    for line in text.splitlines(keepends=True):
        if line.lstrip().startswith("#"):
            offset += len(line)
            continue
        pos = 0
        stripped_end = len(line.rstrip())
        while pos < stripped_end:
            m = _TOKEN.match(line, pos)
            if not m or m.end() == pos:
                bad = pos + len(line[pos:]) - len(line[pos:].lstrip())
                raise PDError(f"syntax error at offset {offset + bad}: {line[bad:bad + 12]!r}")
            if m.group("o"):
                loops += 1
            else:
                crossings.append(tuple(int(m.group(k)) for k in "abcd"))
                sg = m.group("sg")
                overrides.append(None if sg is None else (1 if sg == "+" else -1))
            pos = m.end()
        offset += len(line)
    return LinkDiagram(tuple(crossings), loops, tuple(overrides))


def format_pd(d: LinkDiagram) -> str:
    toks = []
    for x, o in zip(d.crossings, d.overrides):
        sg = "" if o is None else ("+" if o > 0 else "-")
        toks.append(f"X{sg}({x[0]},{x[1]},{x[2]},{x[3]})")
    toks.extend("O" * d.loops)
    return " ".join(toks)


def writhe(d: LinkDiagram) -> int:
    return d.writhe


# ---------------------------------------------------------------------------
# canonical relabelling


def _canonical(crossings, signs, loops, key=lambda a: a):
    """Renumber arcs 1..2n along orientation, components by lowest ``key``.

    ``crossings`` may use arbitrary hashable arc labels; ``signs`` orient the
    over-strands.  Returns ``(LinkDiagram, label -> new id)``.
    """
    nxt = {}
    for x, s in zip(crossings, signs):
        nxt[x[0]] = x[2]
        if s > 0:
            nxt[x[3]] = x[1]
        else:
            nxt[x[1]] = x[3]
    labels = sorted(nxt, key=key)
    new_id, counter = {}, 1
    for start in labels:
        if start in new_id:
            continue
        comp = [start]
        b = nxt[start]
        while b != start:
            comp.append(b)
            b = nxt[b]
        lo = min(range(len(comp)), key=lambda i: key(comp[i]))
        for a in comp[lo:] + comp[:lo]:
            new_id[a] = counter
            counter += 1
    new_x = tuple(tuple(new_id[a] for a in x) for x in crossings)
    d = LinkDiagram(new_x, loops)
    if tuple(d.signs) != tuple(signs):
        raise PDError("internal error: orientation lost during relabelling")
    return d, new_id


def canonicalize(d: LinkDiagram) -> LinkDiagram:
    return _canonical(d.crossings, d.signs, d.loops)[0]


# ---------------------------------------------------------------------------
# moves


@dataclass(frozen=True)
class MoveSite:
    """A local pattern for a Reidemeister move.

    For removal / slide sites ``crossings`` names the tangle crossings
    (0-based) and ``arcs`` the arcs inside the monogon / bigon / triangle.
    For insertion sites ``arcs`` names the arcs acted on (empty for a kink on
    a crossingless loop) and ``face``/``sides`` locate the bigon.
    """

    kind: str
    crossings: tuple[int, ...] = ()
    arcs: tuple[int, ...] = ()
    variant: str = ""
    face: int = -1
    sides: tuple[int, ...] = ()

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "crossings": [c + 1 for c in self.crossings],
            "arcs": list(self.arcs),
            "variant": self.variant,
            "face": self.face,
            "sides": list(self.sides),
        }


@dataclass(frozen=True)
class MoveResult:
    diagram: LinkDiagram
    crossing_map: dict  # old crossing index -> new crossing index
    arc_map: dict  # old arc -> new arc (merged or first piece)
    created: Optional[MoveSite] = None


def _r3_strands_ok(d: LinkDiagram, face: Face) -> bool:
    # each side lies on one strand; need one strand over at both ends and one under at both
    kinds = set()
    for arc, h1, h2 in face.sides:
        o1, o2 = d.is_over(h1), d.is_over(h2)
        kinds.add("over" if o1 and o2 else "under" if not o1 and not o2 else "mixed")
    return kinds == {"over", "under", "mixed"}


def find_move_sites(d: LinkDiagram, kind: str) -> list[MoveSite]:
    """Removal (R1, R2) or slide (R3) sites present in ``d``, in face order."""
    kind = kind.upper()
    sites = []
    seen = set()
    for fi, f in enumerate(d.faces):
        cs = tuple(c for c, _ in f.corners)
        if kind == "R1" and len(f) == 1:
            c = cs[0]
            if c in seen:
                continue
            seen.add(c)
            sites.append(MoveSite("R1", (c,), (f.sides[0][0],), _corner_type(f.corners[0][1]), fi))
        elif kind == "R2" and len(f) == 2 and cs[0] != cs[1]:
            types = [_corner_type(q) for _, q in f.corners]
            if sorted(types) != ["A", "B"]:
                continue
            a = cs[types.index("A")]
            b = cs[types.index("B")]
            agree = [d.arc_tail(arc) == h1 for arc, h1, _ in f.sides]
            variant = "parallel" if agree[0] != agree[1] else "antiparallel"
            sites.append(MoveSite("R2", (a, b), tuple(s[0] for s in f.sides), variant, fi))
        elif kind == "R3" and len(f) == 3 and len(set(cs)) == 3:
            if not _r3_strands_ok(d, f):
                continue
            pattern = "".join(_corner_type(q) for _, q in f.corners)
            sites.append(MoveSite("R3", cs, tuple(s[0] for s in f.sides), pattern, fi))
    if kind not in ("R1", "R2", "R3"):
        raise ValueError(f"unknown move kind {kind!r}")
    return sites


KINK_VARIANTS = ("+under", "-under", "+over", "-over")


def insertion_sites(d: LinkDiagram, kind: str) -> list[MoveSite]:
    """All R1 / R2 insertions available on ``d`` (deterministic order)."""
    kind = kind.upper()
    out = []
    if kind == "R1":
        for a in d.arcs:
            out.extend(MoveSite("R1", (), (a,), v) for v in KINK_VARIANTS)
        if d.loops:
            out.extend(MoveSite("R1", (), (), v) for v in KINK_VARIANTS)
    elif kind == "R2":
        for fi, f in enumerate(d.faces):
            for i in range(len(f.sides)):
                for j in range(i + 1, len(f.sides)):
                    if f.sides[i][0] == f.sides[j][0]:
                        continue
                    for over in ("first-over", "second-over"):
                        out.append(MoveSite("R2", (), (f.sides[i][0], f.sides[j][0]), over, fi, (i, j)))
    else:
        raise ValueError(f"insertion is defined for R1 and R2 only, not {kind!r}")
    return out


def _labelled(d: LinkDiagram):
    return [[(a, 0) for a in x] for x in d.crossings]


def _finish(d, xs, signs, loops, keep, created_fn=None):
    """Relabel, build crossing/arc maps.  ``keep`` lists surviving old indices."""
    nd, new_id = _canonical([tuple(x) for x in xs], signs, loops, key=lambda a: a)
    crossing_map = {old: new for new, old in enumerate(keep) if old is not None}
    arc_map = {}
    for lab, nid in new_id.items():
        orig = lab[0]
        if lab[1] == 0 and orig in d.arc_ends and orig not in arc_map:
            arc_map[orig] = nid
    created = created_fn(nd, new_id) if created_fn else None
    return MoveResult(nd, crossing_map, arc_map, created)


def _remove(d: LinkDiagram, removed: Sequence[int]) -> MoveResult:
    parent = {a: a for a in d.arcs}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for c in removed:
        x = d.crossings[c]
        parent[find(x[0])] = find(x[2])
        parent[find(x[1])] = find(x[3])
    keep = [c for c in range(d.n) if c not in removed]
    roots_used = {find(a) for c in keep for a in d.crossings[c]}
    roots_all = {find(a) for a in d.arcs}
    loops = d.loops + len(roots_all - roots_used)
    # merged arc is labelled by its lowest member so numbering starts there
    lowest: dict[int, int] = {}
    for a in d.arcs:
        r = find(a)
        lowest[r] = min(lowest.get(r, a), a)
    xs = [[(lowest[find(a)], 0) for a in d.crossings[c]] for c in keep]
    signs = [d.signs[c] for c in keep]
    res = _finish(d, xs, signs, loops, keep)
    arc_map = {}
    for a in d.arcs:
        r = find(a)
        if r in roots_used:
            arc_map[a] = res.arc_map[lowest[r]]
    return MoveResult(res.diagram, res.crossing_map, arc_map, None)


def _kink_tuple(variant, e1, lp, e2):
    return {
        "+under": (e1, e2, lp, lp),
        "-under": (e1, lp, lp, e2),
        "+over": (lp, lp, e2, e1),
        "-over": (lp, e1, e2, lp),
    }[variant]


def _insert_r1(d: LinkDiagram, site: MoveSite) -> MoveResult:
    if site.variant not in KINK_VARIANTS:
        raise PDError(f"unknown kink variant {site.variant!r}")
    sign = 1 if site.variant[0] == "+" else -1
    xs = _labelled(d)
    loops = d.loops
    if not site.arcs:
        if not d.loops:
            raise PDError("no crossingless loop to put a kink on")
        loops -= 1
        base = max(d.arcs, default=0) + 1
        e1 = e2 = (base, 0)
        lp = (base, 1)
    else:
        (e,) = site.arcs
        if e not in d.arc_ends:
            raise PDError(f"arc {e} does not exist")
        tail = d.arc_tail(e)
        e1, lp, e2 = (e, 0), (e, 1), (e, 2)
        (h1, h2) = d.arc_ends[e]
        head = h2 if h1 == tail else h1
        xs[tail[0]][tail[1]] = e1
        xs[head[0]][head[1]] = e2
    xs.append(list(_kink_tuple(site.variant, e1, lp, e2)))
    signs = list(d.signs) + [sign]
    keep = list(range(d.n)) + [None]

    def created(nd, new_id):
        return MoveSite("R1", (nd.n - 1,), (new_id[lp],), "A" if sign > 0 else "B")

    return _finish(d, xs, signs, loops, keep, created)


def _rotate_to(lst, first):
    i = lst.index(first)
    return lst[i:] + lst[:i]


def _insert_r2(d: LinkDiagram, site: MoveSite) -> MoveResult:
    if site.face < 0 or len(site.sides) != 2:
        raise PDError("R2 insertion needs a face and two of its sides")
    f = d.faces[site.face]
    (e, ea, eb), (g, ga, gb) = f.sides[site.sides[0]], f.sides[site.sides[1]]
    if e == g:
        raise PDError("R2 insertion needs two distinct arcs")
    if site.arcs and tuple(site.arcs) != (e, g):
        raise PDError("R2 insertion site does not match the face sides")
    e_fwd = d.arc_tail(e) == ea
    g_fwd = d.arc_tail(g) == ga
    e1, em, e2 = (e, 0), (e, 1), (e, 2)
    g1, gm, g2 = (g, 0), (g, 1), (g, 2)
    if not e_fwd:
        e1, e2 = (e, 2), (e, 0)
    if not g_fwd:
        g1, g2 = (g, 2), (g, 0)
    xs = _labelled(d)
    xs[ea[0]][ea[1]] = e1
    xs[eb[0]][eb[1]] = e2
    xs[ga[0]][ga[1]] = g1
    xs[gb[0]][gb[1]] = g2
    X = [e1, gm, em, g2]
    Y = [e2, g1, em, gm]
    e_under = site.variant == "second-over"
    if e_under:
        inX, inY = (e1, em) if e_fwd else (em, e2)
        outX = em if e_fwd else e1
        over_in_X = gm if g_fwd else g2
        over_in_Y = g1 if g_fwd else gm
    else:
        inX, inY = (gm, g1) if g_fwd else (g2, gm)
        over_in_X = e1 if e_fwd else em
        over_in_Y = em if e_fwd else e2
    X = _rotate_to(X, inX)
    Y = _rotate_to(Y, inY)
    sX = 1 if X.index(over_in_X) == 3 else -1
    sY = 1 if Y.index(over_in_Y) == 3 else -1
    xs.extend([X, Y])
    signs = list(d.signs) + [sX, sY]
    keep = list(range(d.n)) + [None, None]

    def created(nd, new_id):
        cx, cy = nd.n - 2, nd.n - 1
        for s in find_move_sites(nd, "R2"):
            if set(s.crossings) == {cx, cy}:
                return s
        raise PDError("internal error: inserted bigon not found")

    return _finish(d, xs, signs, d.loops, keep, created)


def _slide_r3(d: LinkDiagram, site: MoveSite) -> MoveResult:
    f = d.faces[site.face] if site.face >= 0 else None
    if f is None or len(f) != 3 or tuple(c for c, _ in f.corners) != tuple(site.crossings):
        matches = [s for s in find_move_sites(d, "R3") if set(s.crossings) == set(site.crossings)]
        if not matches:
            raise PDError("no R3 triangle at the given crossings")
        f = d.faces[matches[0].face]
    if not _r3_strands_ok(d, f):
        raise PDError("triangle is not an R3 configuration")
    xs = [list(x) for x in d.crossings]
    for arc, (c1, p1), (c2, p2) in f.sides:
        ext1 = d.crossings[c1][(p1 + 2) % 4]
        ext2 = d.crossings[c2][(p2 + 2) % 4]
        xs[c1][p1] = ext2
        xs[c1][(p1 + 2) % 4] = arc
        xs[c2][p2] = ext1
        xs[c2][(p2 + 2) % 4] = arc
    xs = [[(a, 0) for a in x] for x in xs]
    keep = list(range(d.n))
    tri = set(site.crossings)

    def created(nd, new_id):
        for s in find_move_sites(nd, "R3"):
            if set(s.crossings) == tri:
                return s
        raise PDError("internal error: slid triangle not found")

    return _finish(d, xs, list(d.signs), d.loops, keep, created)


def apply_move(d: LinkDiagram, site: MoveSite, direction: str = "remove") -> MoveResult:
    """Apply a Reidemeister move; returns the new diagram and correspondences."""
    kind = site.kind.upper()
    if kind == "R3":
        if direction not in ("insert", "remove", "slide"):
            raise ValueError(f"unknown direction {direction!r}")
        return _slide_r3(d, site)
    if direction == "remove":
        if kind == "R1":
            ok = [s for s in find_move_sites(d, "R1") if s.crossings == site.crossings]
            if not ok:
                raise PDError(f"no kink at crossing {site.crossings}")
            return _remove(d, site.crossings)
        if kind == "R2":
            ok = [s for s in find_move_sites(d, "R2") if set(s.crossings) == set(site.crossings)]
            if not ok:
                raise PDError(f"no R2 bigon at crossings {site.crossings}")
            return _remove(d, site.crossings)
    elif direction == "insert":
        if kind == "R1":
            return _insert_r1(d, site)
        if kind == "R2":
            return _insert_r2(d, site)
    raise ValueError(f"unsupported move {kind}/{direction}")


def mirror(d: LinkDiagram) -> LinkDiagram:
    """Swap over and under at every crossing, keeping the orientation."""
    xs = []
    for c, x in enumerate(d.crossings):
        k = 3 if d.signs[c] > 0 else 1  # incoming over-strand becomes the under-strand
        xs.append(x[k:] + x[:k])
    return LinkDiagram(tuple(xs), d.loops)
