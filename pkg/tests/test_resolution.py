import pytest
from hypothesis import given, settings, strategies as st

from khoveq import corpus
from khoveq.resolution import enhanced_states, gradings, marker_states, smooth


def test_unknot_generators():
    d = corpus.get("unknot")
    (states,) = enhanced_states(d).values()
    grads = {g.signs: gradings(d, g) for g in states}
    assert grads[(1,)].i == grads[(-1,)].i == 0
    # a + circle sits in the lower quantum degree
    assert grads[(1,)].tau == 1 and grads[(1,)].j == -1
    assert grads[(-1,)].tau == -1 and grads[(-1,)].j == 1


def test_trefoil_circle_counts():
    d = corpus.get("trefoil_right")
    assert smooth(d, (1, 1, 1)).circle_count == 2
    assert smooth(d, (-1, -1, -1)).circle_count == 3
    assert {i: len(v) for i, v in enhanced_states(d).items()} == {0: 4, 1: 6, 2: 12, 3: 8}


def test_marker_states_enumerates_cube():
    assert len(list(marker_states(4))) == 16
    assert len(set(marker_states(3))) == 8


def test_generator_counts_match_golden(golden):
    for name, count in golden["generators"].items():
        d = corpus.get(name)
        assert sum(len(v) for v in enhanced_states(d).values()) == count


def test_loops_count_as_circles():
    d = corpus.get("unlink3")
    assert smooth(d, ()).circle_count == 3
    assert len(enhanced_states(d)[0]) == 8


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([n for n in corpus.NAMES if corpus.get(n).n <= 5]), st.data())
def test_grading_parity_and_range(name, data):
    d = corpus.get(name)
    states = enhanced_states(d)
    i = data.draw(st.sampled_from(sorted(states)))
    g = data.draw(st.sampled_from(states[i]))
    gr = gradings(d, g)
    assert gr.i == i
    assert -d.n_minus <= gr.i <= d.n_plus
    assert gr.j % 2 == d.component_count % 2
    assert sum(1 for m in g.markers if m < 0) == gr.i + d.n_minus
    assert len(g.label) == sum(1 for m in g.markers if m < 0)
