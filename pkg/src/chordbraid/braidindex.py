"""
Braid index of chord diagrams.

compute_braid_index builds canonical braidings from every labelling of the
chords (chord 1 and its first endpoint fixed) and reduces them:

* ``merge`` (default) amalgamates fans first, then searches level by level
  over strand merges.  States at one level are words with the same
  per-strand label sequences up to rotating the strands, which is all a
  merge can see.  This is exhaustive, so it finds the true index.
* ``literal`` runs on the diagram as given and only applies the
  generator-anchored decreasing stabilization, with no cyclic moves.  It
  can stop above the true index (it returns 3 on "1212").

oracle_braid_index enumerates every word of n generators in C_m for
m = 2, 3, ... and never touches the reduction machinery.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache

from .braidword import (
    ChordWord,
    Gen,
    LETTERS,
    _cyclic_class,
    _normal_gens,
    canonical_braiding,
    close,
    decrease_stabilize,
    merge_at,
    merge_split,
    read_name,
    shift_strands,
)
from .diagram import (
    ChordDiagram,
    amalgamate,
    canonical_maps,
    index_bounds,
    relabel,
)
from .errors import (
    BudgetExceededError,
    CapExceededError,
    NotApplicableError,
    NotThreeBraidError,
)

DEFAULT_INDEX_CAP = 8
DEFAULT_ORACLE_BUDGET = 200_000
SLOW_ORACLE_BUDGET = 2_000_000


@dataclass(frozen=True)
class BraidIndexResult:
    value: int
    witness: ChordWord
    strategy: str
    labelings_examined: int


# -- helpers -----------------------------------------------------------------


def _labelled_names(d: ChordDiagram):
    """Names read from the first endpoint of chord 1, one per labelling of the rest."""
    base = d.canonical
    others = sorted(set(base) - {1})
    for perm in itertools.permutations(range(2, d.n + 1)):
        mapping = {1: 1, **dict(zip(others, perm))}
        yield tuple(mapping[x] for x in base)


def _expand_witness(w_a: ChordWord, d: ChordDiagram) -> ChordWord:
    """Raise each generator of a braiding of the amalgamation to its fan weight."""
    wd = amalgamate(d)
    if wd.base.n == d.n:
        return w_a
    options = []
    for mapping in canonical_maps(read_name(w_a)):
        gens: list[Gen] = []
        for label, g in enumerate(w_a.gens, start=1):
            gens.extend([g] * wd.weights[mapping[label] - 1])
        cand = ChordWord(w_a.m, tuple(gens))
        if close(cand) == d:
            options.append(_normal_gens(cand.gens))
    if not options:
        raise AssertionError(f"no weighting of {w_a} closes to {d}")
    return ChordWord(w_a.m, min(options))


# -- merge strategy ----------------------------------------------------------


def _rotation_key(w: ChordWord) -> tuple:
    """
    Complete invariant of w up to commutation and strand rotation.

    The per-strand label sequences determine the commutation class, so the
    key is the least (strand lengths, relabeled reading) over rotations.
    """
    per_strand: list[list[int]] = [[] for _ in range(w.m)]
    for label, (i, j) in enumerate(w.gens):
        per_strand[i - 1].append(label)
        per_strand[j - 1].append(label)
    lengths = tuple(len(s) for s in per_strand)
    flat = [x for s in per_strand for x in s]
    best = None
    offset = 0
    for k in range(w.m):
        cand = (lengths[k:] + lengths[:k], relabel(flat[offset:] + flat[:offset]))
        if best is None or cand < best:
            best = cand
        offset += lengths[k]
    return best


def _merges(w: ChordWord):
    # merges of adjacent strands, plus strands m and 1 after one full pass
    for rotated, js in ((w, range(2, w.m + 1)), (shift_strands(w, 1), (2,))):
        for j in js:
            found = merge_split(rotated, j)
            if found is not None:
                word, split = found
                yield merge_at(word, j, split)


def _merge_search(d: ChordDiagram, lower: int) -> tuple[int, ChordWord, int]:
    """
    Level-by-level search over strand merges, one level per strand count.
    States are words without empty strands taken up to commutation and full
    passes of cyclic permutation.  Every braiding without empty strands
    splits back to a canonical braiding, so the search is exhaustive.
    """
    labelings = 0
    level: dict[tuple[Gen, ...], ChordWord] = {}
    m = max(2 * d.n, 1)
    for name in _labelled_names(d):
        labelings += 1
        start = canonical_braiding(name)
        level.setdefault(_rotation_key(start), start)
    while m > lower:
        nxt: dict[tuple[Gen, ...], ChordWord] = {}
        for w in level.values():
            for merged in _merges(w):
                nxt.setdefault(_rotation_key(merged), merged)
        if not nxt:
            break
        m, level = m - 1, nxt
    witness = min((_normal_gens(w.gens) for w in level.values()))
    return m, ChordWord(m, witness), labelings


# -- literal strategy --------------------------------------------------------


def _literal_search(d: ChordDiagram, lower: int) -> tuple[int, ChordWord, int]:
    memo: dict[ChordWord, ChordWord] = {}

    def reduce(w: ChordWord) -> ChordWord:
        if w in memo:
            return memo[w]
        best = w
        if w.m > lower:
            for p in range(1, len(w) + 1):
                try:
                    nxt = decrease_stabilize(w, p)
                except NotApplicableError:
                    continue
                cand = reduce(nxt)
                if (cand.m, cand.gens) < (best.m, best.gens):
                    best = cand
                if best.m <= lower:
                    break
        memo[w] = best
        return best

    best: ChordWord | None = None
    labelings = 0
    for name in _labelled_names(d):
        labelings += 1
        cand = reduce(canonical_braiding(name))
        if best is None or (cand.m, cand.gens) < (best.m, best.gens):
            best = cand
        if best.m <= lower:
            break
    assert best is not None
    return best.m, best, labelings


def compute_braid_index(
    d: ChordDiagram,
    strategy: str = "merge",
    *,
    cap: int = DEFAULT_INDEX_CAP,
    amalgamate_fans: bool | None = None,
    oracle_budget: int = SLOW_ORACLE_BUDGET,
) -> BraidIndexResult:
    """
    Braid index of `d` with a witness word.

    `amalgamate_fans` defaults to True for the merge strategy and False for
    the literal one; pass it explicitly to compare both ways.  The oracle
    strategy enumerates words and is bounded by `oracle_budget`.
    """
    if strategy == "oracle":
        value = oracle_braid_index(d, d.n + 1, budget=oracle_budget)
        return BraidIndexResult(value, oracle_witness(d, value), "oracle", 0)
    if strategy not in ("merge", "literal"):
        raise ValueError(f"unknown strategy {strategy!r}")
    if d.n == 0:
        return BraidIndexResult(1, ChordWord(1, ()), strategy, 0)
    if amalgamate_fans is None:
        amalgamate_fans = strategy == "merge"
    target = amalgamate(d).base if amalgamate_fans else d
    if target.n > cap:
        raise CapExceededError(f"{target.n} chords after amalgamation exceeds cap {cap}")
    lower = index_bounds(target)[0]
    search = _merge_search if strategy == "merge" else _literal_search
    value, witness, labelings = search(target, lower)
    if target is not d:
        witness = _expand_witness(witness, d)
    return BraidIndexResult(value, witness, strategy, labelings)


# -- oracle ------------------------------------------------------------------


def _generators(m: int) -> list[Gen]:
    return [(i, j) for i in range(1, m + 1) for j in range(i + 1, m + 1)]


@lru_cache(maxsize=None)
def closure_table(n: int, m: int) -> dict[tuple[int, ...], tuple[Gen, ...]]:
    """Every diagram closed by some n-generator word in C_m, with the least such word."""
    table: dict[tuple[int, ...], tuple[Gen, ...]] = {}
    for gens in itertools.product(_generators(m), repeat=n):
        key = close(ChordWord(m, gens)).canonical
        if key not in table:
            table[key] = gens
    return table


def oracle_braid_index(
    d: ChordDiagram, cap: int | None = None, *, budget: int = DEFAULT_ORACLE_BUDGET
) -> int | None:
    """
    Least m <= cap such that some word of n generators in C_m closes to d,
    found by brute-force enumeration; None if there is none.
    """
    n = d.n
    if n == 0:
        return 1
    cap = n + 1 if cap is None else cap
    cost = sum(len(_generators(m)) ** n for m in range(2, cap + 1))
    if cost > budget:
        raise BudgetExceededError(
            f"enumerating words up to C_{cap} with {n} generators costs {cost} > {budget}"
        )
    for m in range(2, cap + 1):
        if d.canonical in closure_table(n, m):
            return m
    return None


def oracle_witness(d: ChordDiagram, m: int) -> ChordWord:
    return ChordWord(m, closure_table(d.n, m)[d.canonical])


# -- 3-braid representatives -------------------------------------------------


@dataclass(frozen=True)
class RepClassReport:
    diagram: ChordDiagram
    classes: tuple[tuple[ChordWord, ...], ...]
    dichotomy: str  # "unique" | "flype_pair" | "violation"


@lru_cache(maxsize=None)
def _c3_words_by_closure(n: int) -> dict[tuple[int, ...], list[tuple[Gen, ...]]]:
    out: dict[tuple[int, ...], list[tuple[Gen, ...]]] = defaultdict(list)
    for gens in itertools.product(list(LETTERS.values()), repeat=n):
        out[close(ChordWord(3, gens)).canonical].append(gens)
    return dict(out)


def _fan_name(n: int) -> tuple[int, ...]:
    return tuple(range(1, n + 1)) * 2


def flype_word(l: int, m: int, n: int) -> ChordWord:
    """The word a^l c^m a^n in C_3."""
    a, c = LETTERS["a"], LETTERS["c"]
    return ChordWord(3, (a,) * l + (c,) * m + (a,) * n)


def _flype_triple(classes: list[frozenset]) -> tuple[int, int, int] | None:
    total = len(next(iter(classes[0]))) if classes[0] else 0
    for l in range(1, total + 1):
        for m in range(1, total - l):
            n = total - l - m
            if n < 1 or m == n:
                continue
            first = _normal_gens(flype_word(l, m, n).gens)
            second = _normal_gens(flype_word(l, n, m).gens)
            if first in classes[0] and second in classes[1]:
                return (l, m, n)
    return None


def three_braid_representatives(d: ChordDiagram) -> RepClassReport:
    """Split the C_3 words of length n closing to d into cyclic-equivalence classes."""
    if d.n == 0 or d.canonical == _fan_name(d.n):
        raise NotThreeBraidError(f"{d} has braid index {1 if d.n == 0 else 2}")
    words = _c3_words_by_closure(d.n).get(d.canonical, [])
    if not words:
        raise NotThreeBraidError(f"{d} is not the closure of any 3-braid word")
    classes: list[frozenset] = []
    for gens in words:
        if not any(gens in cls for cls in classes):
            classes.append(_cyclic_class(3, gens))
    classes.sort(key=min)
    reps = tuple(
        tuple(ChordWord(3, g) for g in sorted(cls))
        for cls in classes
    )
    if len(classes) == 1:
        dichotomy = "unique"
    elif len(classes) == 2 and (
        _flype_triple(classes) or _flype_triple(classes[::-1])
    ):
        dichotomy = "flype_pair"
    else:
        dichotomy = "violation"
    return RepClassReport(d, reps, dichotomy)


def verify_three_braid_uniqueness(n_max: int) -> dict:
    """
    Check every braid-index-3 diagram with at most n_max chords: its 3-braid
    words form one cyclic class, or two classes matching a^l c^m a^n and
    a^l c^n a^m with m != n.
    """
    violations = []
    flype_pairs = []
    checked = 0
    for n in range(1, n_max + 1):
        for key in sorted(_c3_words_by_closure(n)):
            if key == _fan_name(n):
                continue
            checked += 1
            report = three_braid_representatives(ChordDiagram(key))
            if report.dichotomy == "flype_pair":
                flype_pairs.append(key)
            elif report.dichotomy != "unique":
                violations.append(
                    {
                        "diagram": ",".join(map(str, key)),
                        "classes": [[str(w) for w in cls[:1]] for cls in report.classes],
                    }
                )
    return {
        "checked": checked,
        "flype_pairs": flype_pairs,
        "violations": violations,
    }
