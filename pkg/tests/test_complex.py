import pytest
from hypothesis import given, settings, strategies as st

from khoveq import corpus
from khoveq.complex import ResourceLimitError, build_complex, differential, max_crossings, verify_delta_squared
from khoveq.frobenius import khovanov_calculus, universal_calculus
from khoveq.polyring import Poly, S, T
from khoveq.resolution import EnhancedState, gradings

from calculi import broken_unit, delta_minus_missing


def test_trefoil_dimensions(universal):
    cx = build_complex(corpus.get("trefoil_right"), universal)
    assert [cx.dim(i) for i in cx.degrees] == [4, 6, 12, 8]
    assert cx.total_generators() == 30


def test_kink_differential_is_merge(universal):
    # the one-crossing kink: two circles at i = 0 merge into one at i = 1
    d = corpus.get("kink_pos")
    g = EnhancedState((1,), (1, 1))
    assert differential(d, universal, g) == {EnhancedState((-1,), (1,)): S, EnhancedState((-1,), (-1,)): T}


def test_negative_kink_differential_is_split(universal):
    d = corpus.get("kink_neg")
    img = differential(d, universal, EnhancedState((1,), (-1,)))
    assert set(img.values()) <= {Poly.const(1), Poly.const(-1), -S, S}
    assert len(img) == 3


def test_delta_squared_on_corpus(universal, all_diagrams):
    for _, d in all_diagrams:
        rep = verify_delta_squared(build_complex(d, universal))
        assert rep.ok, rep.to_json()


@pytest.mark.parametrize("make", [broken_unit, delta_minus_missing])
def test_delta_squared_fails_for_broken_calculi(make):
    reps = [verify_delta_squared(build_complex(d, make())) for _, d in corpus.small_corpus()]
    bad = [r for r in reps if not r.ok]
    assert bad
    assert bad[0].to_json()["witnesses"][0]["image"]


def test_khovanov_differential_preserves_j():
    cx = build_complex(corpus.get("figure8"), khovanov_calculus())
    for i, src, tgt, _ in cx.entries():
        assert cx.qdeg[tgt] == cx.qdeg[src]


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([n for n in corpus.NAMES if corpus.get(n).n <= 5]))
def test_entries_are_homogeneous(name):
    # every monomial s^a t^b shifts i by one and j by 2a + 4b in this grading
    d = corpus.get(name)
    cx = build_complex(d, universal_calculus())
    for i, src, tgt, coeff in cx.entries():
        assert gradings(d, tgt).i == gradings(d, src).i + 1 == i + 1
        for (a, b), _ in coeff.items():
            assert cx.qdeg[tgt] - cx.qdeg[src] == 2 * a + 4 * b


def test_cap(monkeypatch, universal):
    d = corpus.get("figure8")
    with pytest.raises(ResourceLimitError):
        build_complex(d, universal, cap=3)
    monkeypatch.setenv("KHOVEQ_MAX_CROSSINGS", "2")
    assert max_crossings() == 2
    with pytest.raises(ResourceLimitError):
        build_complex(d, universal)
    monkeypatch.setenv("KHOVEQ_MAX_CROSSINGS", "many")
    with pytest.raises(ValueError):
        max_crossings()


def test_json_export_is_deterministic(universal):
    d = corpus.get("hopf_pos")
    a = build_complex(d, universal).to_json()
    b = build_complex(d, universal).to_json()
    assert a == b
    assert {m["i"] for m in a["matrices"]} == {0, 1, 2}
