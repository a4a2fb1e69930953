"""Homology of specialized complexes via Smith normal form.

Supported target rings: Z, GF(2), and GF(2)[x] (polynomials stored as int
bit masks).  Each differential is first shrunk by sparse elimination on
unit pivots and the leftover block is diagonalised densely.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .complex import ComplexRepr
from .polyring import Specialization, gf2_divmod, gf2_mul, gf2_str, specialize


class UnsupportedRing(ValueError):
    pass


# ---------------------------------------------------------------------------
# rings


class _Integers:
    name = "integers"

    @staticmethod
    def is_unit(a):
        return a in (1, -1)

    @staticmethod
    def norm(a):
        return abs(a)

    @staticmethod
    def divmod(a, b):
        q, r = divmod(a, b)
        # keep remainders small in absolute value
        if r and 2 * abs(r) > abs(b):
            q += 1 if (b > 0) == (r > 0) else -1
            r = a - q * b
        return q, r

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def inv(u):
        return u

    @staticmethod
    def normalize(a):
        return abs(a)

    @staticmethod
    def show(a):
        return str(a)


class _GF2:
    name = "mod2"

    @staticmethod
    def is_unit(a):
        return a == 1

    @staticmethod
    def norm(a):
        return a

    @staticmethod
    def divmod(a, b):
        return a, 0

    @staticmethod
    def sub(a, b):
        return a ^ b

    add = sub

    @staticmethod
    def mul(a, b):
        return a & b

    @staticmethod
    def neg(a):
        return a

    @staticmethod
    def inv(u):
        return 1

    @staticmethod
    def normalize(a):
        return a

    @staticmethod
    def show(a):
        return str(a)


class _GF2Poly:
    name = "mod2poly"

    @staticmethod
    def is_unit(a):
        return a == 1

    @staticmethod
    def norm(a):
        return a.bit_length()

    divmod = staticmethod(gf2_divmod)

    @staticmethod
    def sub(a, b):
        return a ^ b

    add = sub
    mul = staticmethod(gf2_mul)

    @staticmethod
    def neg(a):
        return a

    @staticmethod
    def inv(u):
        return 1

    @staticmethod
    def normalize(a):
        return a

    @staticmethod
    def show(a):
        return gf2_str(a, "s")


RINGS = {"integers": _Integers, "mod2": _GF2, "mod2poly": _GF2Poly}


def ring_for(name: str):
    try:
        return RINGS[name]
    except KeyError:
        raise UnsupportedRing(f"unsupported ring {name!r}") from None


# ---------------------------------------------------------------------------
# Smith normal form


def smith_normal_form(matrix, ring="integers", transforms: bool = False):
    """Diagonalise a dense matrix (list of rows).

    Returns the diagonal (length min(rows, cols), successive divisibility,
    zeros last).  With ``transforms`` also returns unimodular ``U``, ``V``
    with ``U * matrix * V = diag``.
    """
    R = ring_for(ring)
    A = [list(row) for row in matrix]
    m = len(A)
    n = len(A[0]) if m else 0
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)] if transforms else None
    V = [[1 if i == j else 0 for j in range(n)] for i in range(n)] if transforms else None

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        if U is not None:
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        if V is not None:
            for row in V:
                row[i], row[j] = row[j], row[i]

    def row_op(dst, src, q):  # row dst -= q * row src
        A[dst] = [R.sub(x, R.mul(q, y)) for x, y in zip(A[dst], A[src])]
        if U is not None:
            U[dst] = [R.sub(x, R.mul(q, y)) for x, y in zip(U[dst], U[src])]

    def col_op(dst, src, q):  # col dst -= q * col src
        for row in A:
            row[dst] = R.sub(row[dst], R.mul(q, row[src]))
        if V is not None:
            for row in V:
                row[dst] = R.sub(row[dst], R.mul(q, row[src]))

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    if A[i][j] and (best is None or R.norm(A[i][j]) < R.norm(A[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            swap_rows(t, best[0])
            swap_cols(t, best[1])
            p = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    q, r = R.divmod(A[i][t], p)
                    row_op(i, t, q)
                    dirty = dirty or bool(r)
            for j in range(t + 1, n):
                if A[t][j]:
                    q, r = R.divmod(A[t][j], p)
                    col_op(j, t, q)
                    dirty = dirty or bool(r)
            if dirty:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if R.divmod(A[i][j], p)[1]),
                None,
            )
            if bad is None:
                break
            # fold the offending row in and start again
            A[t] = [R.add(x, y) for x, y in zip(A[t], A[bad])]
            if U is not None:
                U[t] = [R.add(x, y) for x, y in zip(U[t], U[bad])]
        if best is None:
            break
    diag = []
    for t in range(min(m, n)):
        d = A[t][t]
        if ring == "integers" and d < 0:
            A[t][t] = -d
            if U is not None:
                U[t] = [-x for x in U[t]]
            d = -d
        diag.append(d)
    if transforms:
        return diag, U, V
    return diag


def _eliminate_units(rows: dict, ring) -> tuple[int, dict]:
    """Sparse elimination on unit pivots.  Returns (#pivots, leftover rows)."""
    R = ring_for(ring)
    cols: dict = {}
    for r, row in rows.items():
        for c in row:
            cols.setdefault(c, set()).add(r)
    pivots = 0
    progress = True
    while progress:
        progress = False
        # sweep rows from sparsest to densest, pivoting on the unit entry
        # whose column is sparsest (a cheap Markowitz-style choice)
        for r in sorted(rows, key=lambda k: len(rows[k])):
            prow = rows.get(r)
            if prow is None:
                continue
            units = [c for c, v in prow.items() if R.is_unit(v)]
            if not units:
                continue
            c = min(units, key=lambda k: len(cols[k]))
            del rows[r]
            inv = R.inv(prow[c])
            for cc in prow:
                cols[cc].discard(r)
            for r2 in list(cols[c]):
                row2 = rows[r2]
                q = R.mul(row2[c], inv)
                for cc, v in prow.items():
                    nv = R.sub(row2.get(cc, 0), R.mul(q, v))
                    if nv:
                        if cc not in row2:
                            cols[cc].add(r2)
                        row2[cc] = nv
                    elif cc in row2:
                        del row2[cc]
                        cols[cc].discard(r2)
                if not row2:
                    del rows[r2]
            del cols[c]
            pivots += 1
            progress = True
    return pivots, rows


def invariant_factors(rows: dict, ring) -> list:
    """Nonzero invariant factors of a sparse matrix ``{row: {col: value}}``."""
    R = ring_for(ring)
    rows = {r: dict(row) for r, row in rows.items() if row}
    pivots, rest = _eliminate_units(rows, ring)
    factors = [1] * pivots
    if rest:
        rkeys = sorted(rest)
        ckeys = sorted({c for row in rest.values() for c in row})
        cidx = {c: k for k, c in enumerate(ckeys)}
        dense = [[0] * len(ckeys) for _ in rkeys]
        for i, r in enumerate(rkeys):
            for c, v in rest[r].items():
                dense[i][cidx[c]] = v
        factors += [R.normalize(x) for x in smith_normal_form(dense, ring) if x]
    return factors


# ---------------------------------------------------------------------------
# homology


@dataclass
class HomologyResult:
    spec: Specialization
    groups: dict  # (i, j or None) -> (rank, torsion list)
    ring: str = "integers"

    def to_json(self) -> dict:
        R = ring_for(self.ring)
        out = []
        for (i, j), (rank, tors) in sorted(self.groups.items(), key=lambda kv: (kv[0][0], kv[0][1] or 0)):
            out.append({"i": i, "j": j, "rank": rank, "torsion": [R.show(x) for x in tors]})
        return {"spec": self.spec.to_json(), "groups": out}

    def total_rank(self) -> int:
        return sum(r for r, _ in self.groups.values())

    def key(self):
        return tuple(sorted((k, v[0], tuple(v[1])) for k, v in self.groups.items()))

    def __eq__(self, other):
        return isinstance(other, HomologyResult) and self.key() == other.key()

    def rank(self, i, j=None) -> int:
        return self.groups.get((i, j), (0, []))[0]

    def torsion(self, i, j=None) -> list:
        return list(self.groups.get((i, j), (0, []))[1])


def _specialized_block(cx: ComplexRepr, i: int, sp: Specialization, src_keep=None, tgt_keep=None):
    """Rows = targets in degree i+1, cols = sources in degree i."""
    rows: dict = {}
    for c, col in cx.matrices.get(i, {}).items():
        if src_keep is not None and c not in src_keep:
            continue
        for r, v in col.items():
            if tgt_keep is not None and r not in tgt_keep:
                continue
            x = specialize(v, sp)
            if x:
                rows.setdefault(r, {})[c] = x
    return rows


def homology_at(cx: ComplexRepr, sp: Specialization, bigraded: bool = False) -> HomologyResult:
    if bigraded and not sp.preserves_quantum_grading:
        raise ValueError("bigraded homology needs a specialization with s = t = 0")
    ring = sp.ring
    R = ring_for(ring)
    groups: dict = {}
    if bigraded:
        blocks: dict = {}
        for i, gens in cx.generators.items():
            for k, g in enumerate(gens):
                blocks.setdefault((i, cx.qdeg[g]), set()).add(k)
        keys = sorted(blocks)
        factors = {}
        for (i, j) in keys:
            src = blocks[(i, j)]
            tgt = blocks.get((i + 1, j), set())
            factors[(i, j)] = invariant_factors(_specialized_block(cx, i, sp, src, tgt), ring) if tgt else []
        for (i, j) in keys:
            out_f = factors[(i, j)]
            in_f = factors.get((i - 1, j), [])
            rank = len(blocks[(i, j)]) - len(out_f) - len(in_f)
            tors = sorted((x for x in in_f if not R.is_unit(x)), key=R.norm)
            if rank or tors:
                groups[(i, j)] = (rank, tors)
    else:
        factors = {i: invariant_factors(_specialized_block(cx, i, sp), ring) for i in cx.generators}
        for i in sorted(cx.generators):
            out_f = factors[i]
            in_f = factors.get(i - 1, [])
            rank = cx.dim(i) - len(out_f) - len(in_f)
            tors = sorted((x for x in in_f if not R.is_unit(x)), key=R.norm)
            if rank or tors:
                groups[(i, None)] = (rank, tors)
    return HomologyResult(sp, groups, ring)


def mod2_bar_natan(cx: ComplexRepr, s_value: int = 0b10) -> HomologyResult:
    """Homology over GF(2)[s] with t = 0; ``s_value`` is a GF(2)[s] bit mask."""
    return homology_at(cx, Specialization("mod2poly", s_value, 0))
