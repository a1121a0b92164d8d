from __future__ import annotations

from hypothesis import given, settings
from hypothesis import strategies as st

from chordbraid.braidword import (
    ChordWord,
    close,
    cyclic_class,
    cyclic_permute,
    cyclically_equivalent,
    decrease_stabilize,
    increase_stabilize,
    shift_strands,
    trace_normal_form,
)
from chordbraid.diagram import (
    ChordDiagram,
    amalgamate,
    canonical_form,
    expand,
    index_bounds,
    relabel,
    rotate,
)
from chordbraid.errors import NotApplicableError


@st.composite
def names(draw, max_chords=6):
    n = draw(st.integers(0, max_chords))
    order = draw(st.permutations(list(range(2 * n))))
    name = [0] * (2 * n)
    for label in range(n):
        name[order[2 * label]] = name[order[2 * label + 1]] = label + 1
    return tuple(name)


@st.composite
def words(draw, max_m=6, max_len=6):
    m = draw(st.integers(2, max_m))
    gens = [(i, j) for i in range(1, m + 1) for j in range(i + 1, m + 1)]
    return ChordWord(m, tuple(draw(st.lists(st.sampled_from(gens), max_size=max_len))))


@given(names(), st.integers(0, 20))
def test_canonical_form_rotation_invariant(name, r):
    assert canonical_form(relabel(rotate(name, r))) == canonical_form(name)
    assert canonical_form(canonical_form(name)) == canonical_form(name)


@given(names())
def test_amalgamation_round_trip(name):
    d = ChordDiagram.from_name(name)
    a = amalgamate(d)
    assert expand(a) == d
    assert amalgamate(expand(a)) == a


@given(names())
def test_bounds_are_ordered(name):
    lo, hi = index_bounds(ChordDiagram.from_name(name))
    assert lo <= hi


@given(words())
def test_cyclic_permute_preserves_closure(w):
    if w.gens:
        assert close(cyclic_permute(w)) == close(w)


@given(words(), st.integers(0, 7))
def test_strand_shift_preserves_closure(w, k):
    assert close(shift_strands(w, k)) == close(w)


@given(words(), st.data())
def test_stabilizations_preserve_closure(w, data):
    if not w.gens:
        return
    p = data.draw(st.integers(1, len(w)))
    up = increase_stabilize(w, p)
    assert close(up) == close(w)
    assert decrease_stabilize(up, p) == w
    try:
        down = decrease_stabilize(w, p)
    except NotApplicableError:
        return
    assert close(down) == close(w)


@given(words(max_m=4, max_len=4))
@settings(max_examples=60)
def test_cyclic_class_is_closed_and_shares_closure(w):
    cls = cyclic_class(w)
    assert trace_normal_form(w).gens in cls
    for gens in cls:
        v = ChordWord(w.m, gens)
        assert close(v) == close(w)
        assert cyclically_equivalent(v, w)
