"""Regenerate tests/golden/derived.json.

Values here come from deliberately naive routes: every differential block
is diagonalised with the dense Smith normal form (no sparse elimination),
Euler characteristics come from a generator census, and brackets from the
state sum.  Run ``python tests/oracle.py`` and review the diff before
committing a change to the golden file.
"""

import json
import pathlib

from khoveq import corpus
from khoveq.complex import build_complex
from khoveq.frobenius import universal_calculus
from khoveq.homology import smith_normal_form
from khoveq.invariants import graded_euler, kauffman_bracket
from khoveq.polyring import specialize, KHOVANOV, LEE
from khoveq.resolution import smooth

OUT = pathlib.Path(__file__).parent / "golden" / "derived.json"


def dense_block(cx, i, sp, src=None, tgt=None):
    srcs = [k for k in range(cx.dim(i)) if src is None or k in src]
    tgts = [k for k in range(cx.dim(i + 1)) if tgt is None or k in tgt]
    ri = {r: n for n, r in enumerate(tgts)}
    ci = {c: n for n, c in enumerate(srcs)}
    M = [[0] * len(srcs) for _ in tgts]
    for c, col in cx.matrices.get(i, {}).items():
        if c not in ci:
            continue
        for r, v in col.items():
            if r in ri:
                M[ri[r]][ci[c]] = specialize(v, sp)
    return M


def factors(M):
    if not M or not M[0]:
        return []
    return [x for x in smith_normal_form(M) if x]


def bigraded_table(cx):
    blocks = {}
    for i, gens in cx.generators.items():
        for k, g in enumerate(gens):
            blocks.setdefault((i, cx.qdeg[g]), set()).add(k)
    fac = {}
    for (i, j), src in blocks.items():
        tgt = blocks.get((i + 1, j), set())
        fac[(i, j)] = factors(dense_block(cx, i, KHOVANOV, src, tgt)) if tgt else []
    table = []
    for (i, j) in sorted(blocks):
        rank = len(blocks[(i, j)]) - len(fac[(i, j)]) - len(fac.get((i - 1, j), []))
        tors = sorted(x for x in fac.get((i - 1, j), []) if x != 1)
        if rank or tors:
            table.append([i, j, rank, tors])
    return table


def lee_total_rank(cx):
    fac = {i: factors(dense_block(cx, i, LEE)) for i in cx.generators}
    return sum(cx.dim(i) - len(fac[i]) - len(fac.get(i - 1, [])) for i in cx.generators)


def main():
    u = universal_calculus()
    out = {"bigraded": {}, "lee_rank": {}, "euler": {}, "bracket": {}, "generators": {}}
    for name, d in corpus.corpus():
        if d.n > 6:
            continue
        cx = build_complex(d, u)
        out["euler"][name] = graded_euler(cx).to_json()
        out["bracket"][name] = kauffman_bracket(d).to_json()
        out["generators"][name] = sum(2 ** smooth(d, m).circle_count for lst in [cx.generators] for m in {g.markers for v in lst.values() for g in v})
        if d.n <= 4:
            out["bigraded"][name] = bigraded_table(cx)
            out["lee_rank"][name] = lee_total_rank(cx)
    OUT.write_text(json.dumps(out, indent=1, sort_keys=True) + "\n")
    print(f"wrote {OUT}")


if __name__ == "__main__":
    main()
