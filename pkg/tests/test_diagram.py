from __future__ import annotations

import itertools

import pytest

from chordbraid.diagram import (
    ChordDiagram,
    WeightedDiagram,
    amalgamate,
    associated_permutations,
    canonical_form,
    crossing_graph,
    enumerate_diagrams,
    expand,
    index_bounds,
    is_braid_index_three_special,
    max_parallel_set,
    maximal_fans,
    parse_name,
    relabel,
    rotate,
    special_chords,
)
from chordbraid.errors import (
    CapExceededError,
    EmptyInputError,
    LabelCountError,
    LabelGapError,
    NoSpecialChordError,
)


def N(text: str) -> tuple[int, ...]:
    return tuple(int(c) for c in text)


def edges(*pairs):
    return frozenset(frozenset(p) for p in pairs)


# -- independent helpers ------------------------------------------------------


def brute_equivalent(a, b) -> bool:
    """Same diagram iff some rotation of a, under some relabeling, equals b."""
    if len(a) != len(b):
        return False
    n = len(a) // 2
    for r in range(len(a)):
        rot = a[r:] + a[:r]
        for perm in itertools.permutations(range(1, n + 1)):
            if tuple(perm[x - 1] for x in rot) == tuple(b):
                return True
    return not a


def brute_crosses(name, x, y) -> bool:
    px = [k for k, v in enumerate(name) if v == x]
    inside = [px[0] < k < px[1] for k, v in enumerate(name) if v == y]
    return inside.count(True) == 1


# -- parsing -----------------------------------------------------------------


def test_parse_contiguous_and_comma_forms_agree():
    assert parse_name("1212") == parse_name("1,2,1,2") == parse_name("2 1 2 1")


def test_parse_empty_is_zero_chord_diagram():
    d = parse_name("")
    assert d.n == 0 and d.canonical == ()


def test_parse_empty_can_be_rejected():
    with pytest.raises(EmptyInputError):
        parse_name("", reject_empty=True)


def test_parse_rejects_single_occurrence():
    with pytest.raises(LabelCountError):
        parse_name("1213")


def test_parse_rejects_label_gap():
    with pytest.raises(LabelGapError):
        parse_name("1133")


def test_parse_many_chords_needs_commas():
    labels = list(range(1, 11)) * 2
    d = parse_name(",".join(map(str, labels)))
    assert d.n == 10


# -- canonical form ----------------------------------------------------------


@pytest.mark.parametrize(
    "name, expected",
    [("2121", "1212"), ("121323", "121323"), ("1221", "1122"), ("12342143", "12314324"),
     ("12341342", "12134234"), ("123132", "121323")],
)
def test_canonical_form_examples(name, expected):
    assert canonical_form(N(name)) == N(expected)
    assert brute_equivalent(N(name), N(expected))


def test_rotated_names_share_canonical_form():
    assert canonical_form(N("12341342")) == canonical_form(N("12341423"))


def test_canonical_form_is_rotation_invariant_and_idempotent():
    for d in enumerate_diagrams(4):
        for r in range(8):
            rotated = relabel(rotate(d.canonical, r))
            assert canonical_form(rotated) == d.canonical
        assert canonical_form(d.canonical) == d.canonical


def test_equality_follows_canonical_name():
    assert ChordDiagram.from_name(N("2121")) == parse_name("1212")
    assert hash(parse_name("2121")) == hash(parse_name("1212"))


# -- crossings, fans, amalgamation --------------------------------------------


def test_crossing_graph_examples():
    assert crossing_graph(parse_name("1212")) == edges((1, 2))
    assert crossing_graph(parse_name("1122")) == frozenset()


def test_crossing_graph_of_12341342():
    # chords in canonical labels 12134234
    d = parse_name("12341342")
    assert d.canonical == N("12134234")
    assert crossing_graph(d) == edges((1, 2), (2, 3), (2, 4), (3, 4))


def test_crossing_graph_of_12342143_is_a_four_cycle():
    d = parse_name("12342143")
    g = crossing_graph(d)
    assert len(g) == 4
    assert all(sum(1 for e in g if c in e) == 2 for c in range(1, 5))


def test_crossing_graph_matches_brute_interleaving():
    for n in range(1, 5):
        for d in enumerate_diagrams(n):
            expected = {
                frozenset((x, y))
                for x in range(1, n + 1)
                for y in range(x + 1, n + 1)
                if brute_crosses(d.canonical, x, y)
            }
            assert crossing_graph(d) == expected


@pytest.mark.parametrize(
    "name, fans",
    [("1212", [(1, 2)]), ("1122", [(1,), (2,)]), ("123123", [(1, 2, 3)]),
     ("12134234", [(1,), (2,), (3, 4)])],
)
def test_maximal_fans(name, fans):
    assert sorted(maximal_fans(parse_name(name))) == fans


def test_fan_members_pairwise_cross_and_partition():
    for n in range(1, 6):
        for d in enumerate_diagrams(n):
            blocks = maximal_fans(d)
            assert sorted(c for b in blocks for c in b) == list(range(1, n + 1))
            for b in blocks:
                assert all(d.crosses(x, y) for x, y in itertools.combinations(b, 2))


def test_amalgamate_full_fan():
    a = amalgamate(parse_name("123123"))
    assert a.base.canonical == N("11") and a.weights == (3,)


def test_amalgamate_without_fans_is_identity():
    a = amalgamate(parse_name("1122"))
    assert a.base.canonical == N("1122") and a.weights == (1, 1)


def test_amalgamate_collapses_the_two_chord_fan():
    a = amalgamate(parse_name("12341342"))
    assert a.base.canonical == N("121323")
    assert sorted(a.weights) == [1, 1, 2]


def test_expand_examples():
    assert expand(WeightedDiagram(parse_name("11"), (3,))).canonical == N("123123")
    assert expand(WeightedDiagram(parse_name("1212"), (1, 1))).canonical == N("1212")
    assert expand(WeightedDiagram(parse_name("1212"), (2, 1))).canonical == N("123123")
    assert expand(WeightedDiagram(parse_name("121323"), (2, 1, 1))).n == 4


def test_amalgamate_expand_round_trip():
    for n in range(1, 6):
        for d in enumerate_diagrams(n):
            a = amalgamate(d)
            assert expand(a) == d
            assert amalgamate(expand(a)) == a
            assert all(len(f) == 1 for f in maximal_fans(a.base))


# -- parallel chords and bounds ----------------------------------------------


def brute_parallel(d: ChordDiagram) -> int:
    best = 0
    for k in range(d.n + 1):
        for subset in itertools.combinations(range(1, d.n + 1), k):
            if not any(d.crosses(x, y) for x, y in itertools.combinations(subset, 2)):
                best = k
    return best


@pytest.mark.parametrize(
    "name, p", [("123123", 1), ("123321", 3), ("12342143", 2), ("12341342", 2), ("1212", 1)]
)
def test_max_parallel_set_examples(name, p):
    assert max_parallel_set(parse_name(name)) == p


def test_max_parallel_set_matches_brute_force():
    for n in range(1, 6):
        for d in enumerate_diagrams(n):
            assert max_parallel_set(d) == brute_parallel(d)


@pytest.mark.parametrize(
    "name, bounds", [("1212", (2, 3)), ("123321", (4, 4)), ("112233", (4, 4)), ("", (1, 1))]
)
def test_index_bounds_examples(name, bounds):
    assert index_bounds(parse_name(name)) == bounds


# -- special chords and permutations -------------------------------------------


def test_special_chords_examples():
    assert special_chords(parse_name("1212")) == {1, 2}
    assert special_chords(parse_name("1221")) == frozenset()
    assert special_chords(parse_name("12342143")) == frozenset()
    assert special_chords(parse_name("12341342")) == {2}  # canonical labels


def test_associated_permutations_of_two_chord_fan():
    perms = associated_permutations(parse_name("1212"))
    assert {p.sigma for p in perms} == {(1, 2)}


def test_associated_permutations_are_inverse_pairs():
    perms = associated_permutations(parse_name("12341342"))
    assert {p.sigma for p in perms} == {(1, 3, 4, 2), (1, 4, 2, 3)}
    for n in range(2, 6):
        for d in enumerate_diagrams(n):
            if not special_chords(d):
                continue
            by_chord: dict[int, list] = {}
            for p in associated_permutations(d):
                assert p.sigma[0] == 1
                assert sorted(p.sigma) == list(range(1, n + 1))
                by_chord.setdefault(p.source[0], []).append(p.sigma)
            for first, second in by_chord.values():
                inverse = tuple(first.index(k) + 1 for k in range(1, n + 1))
                assert second == inverse


def test_fan_permutation_is_identity():
    perms = associated_permutations(parse_name("123123"))
    assert all(p.sigma == (1, 2, 3) and p.descents == 0 for p in perms)


def test_single_descent_predicate_examples():
    assert is_braid_index_three_special(parse_name("12341342"))
    assert not is_braid_index_three_special(parse_name("123123"))
    assert is_braid_index_three_special(parse_name("123132"))
    # one chord: the permutation is (1), no descent
    assert not is_braid_index_three_special(parse_name("11"))


def test_no_special_chord_raises():
    with pytest.raises(NoSpecialChordError):
        associated_permutations(parse_name("1221"))
    with pytest.raises(NoSpecialChordError):
        is_braid_index_three_special(parse_name("1122"))


# -- enumeration -------------------------------------------------------------


def test_enumerate_small():
    assert [d.canonical for d in enumerate_diagrams(0)] == [()]
    assert [d.canonical for d in enumerate_diagrams(1)] == [N("11")]
    assert [d.canonical for d in enumerate_diagrams(2)] == [N("1122"), N("1212")]
    assert len(enumerate_diagrams(3)) == 5


def brute_count(n: int) -> int:
    """Matchings of 2n points counted up to rotation, by explicit orbit search."""
    def matchings(points):
        if not points:
            yield ()
            return
        a = points[0]
        for k in range(1, len(points)):
            rest = points[1:k] + points[k + 1:]
            for m in matchings(rest):
                yield ((a, points[k]),) + m

    seen, orbits = set(), 0
    size = 2 * n
    for m in matchings(tuple(range(size))):
        key = frozenset(frozenset(p) for p in m)
        if key in seen:
            continue
        orbits += 1
        for r in range(size):
            seen.add(frozenset(frozenset((x + r) % size for x in p) for p in m))
    return orbits


@pytest.mark.parametrize("n", range(0, 6))
def test_enumeration_counts_match_orbit_count(n):
    ds = enumerate_diagrams(n)
    assert len(ds) == brute_count(n)
    assert [d.canonical for d in ds] == sorted(d.canonical for d in ds)
    assert len(set(ds)) == len(ds)


def test_enumeration_cap():
    with pytest.raises(CapExceededError):
        enumerate_diagrams(7)


def test_four_chord_diagram_missing_one_crossing():
    # endpoints 1:(1,5) 2:(2,7) 3:(3,6) 4:(4,8); only chords 2 and 3 are nested
    d = parse_name("12341324")
    g = crossing_graph(d)
    assert len(g) == 5
    specials = special_chords(d)
    assert len(specials) == 2
    (missing,) = {frozenset(p) for p in itertools.combinations(range(1, 5), 2)} - g
    assert missing == frozenset(range(1, 5)) - specials
    assert max_parallel_set(d) == 2
