"""
Chord diagrams on an oriented circle.

A diagram with n chords is described by a *name*: the 2n chord labels met
while walking once around the circle.  Names are tuples of positive ints.
Every diagram is stored by its canonical name, the lexicographically least
name over all 2n starting points, each relabeled in first-occurrence order.
Reflections are never applied; the circle is oriented.

    >>> d = parse_name("2121")
    >>> d.name_str()
    '1212'
    >>> sorted(maximal_fans(parse_name("123123")))
    [(1, 2, 3)]
"""

from __future__ import annotations

import itertools
import re
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

from .errors import (
    CapExceededError,
    EmptyInputError,
    LabelCountError,
    LabelGapError,
    NoSpecialChordError,
)

Name = tuple[int, ...]

DEFAULT_ENUMERATION_CAP = 6


# -- names -------------------------------------------------------------------


def validate_name(labels: Sequence[int]) -> Name:
    name = tuple(int(x) for x in labels)
    counts = Counter(name)
    for label, count in sorted(counts.items()):
        if label <= 0:
            raise LabelGapError(f"label {label} is not a positive integer")
        if count != 2:
            raise LabelCountError(f"label {label} occurs {count} time(s), expected 2")
    n = len(counts)
    if set(counts) != set(range(1, n + 1)):
        missing = sorted(set(range(1, n + 1)) - set(counts))
        raise LabelGapError(f"labels must be exactly 1..{n}; missing {missing}")
    return name


def relabel(seq: Sequence[int]) -> Name:
    """Rename labels 1, 2, ... in order of first occurrence."""
    mapping: dict[int, int] = {}
    out = []
    for x in seq:
        if x not in mapping:
            mapping[x] = len(mapping) + 1
        out.append(mapping[x])
    return tuple(out)


def rotate(seq: Sequence[int], r: int) -> tuple[int, ...]:
    seq = tuple(seq)
    if not seq:
        return seq
    r %= len(seq)
    return seq[r:] + seq[:r]


def _canonical_rotations(name: Name) -> tuple[Name, list[int]]:
    best: Name | None = None
    where: list[int] = []
    for r in range(len(name)):
        cand = relabel(rotate(name, r))
        if best is None or cand < best:
            best, where = cand, [r]
        elif cand == best:
            where.append(r)
    return (best if best is not None else ()), where


def canonical_form(name: Sequence[int]) -> Name:
    """Least first-occurrence relabeling over all rotations of `name`."""
    return _canonical_rotations(validate_name(name))[0]


def canonical_maps(name: Sequence[int]) -> list[dict[int, int]]:
    """
    All label maps (old label -> canonical label) realised by a rotation
    that carries `name` onto its canonical form.  More than one map exists
    exactly when the diagram has rotational symmetry.
    """
    name = validate_name(name)
    _, where = _canonical_rotations(name)
    maps = []
    for r in where:
        mapping: dict[int, int] = {}
        for x in rotate(name, r):
            mapping.setdefault(x, len(mapping) + 1)
        maps.append(mapping)
    return maps


def format_name(name: Sequence[int], sep: str | None = None) -> str:
    """Digits run together when every label is one digit, else comma separated."""
    if sep is None:
        sep = "" if all(x <= 9 for x in name) else ","
    return sep.join(str(x) for x in name)


_TOKEN = re.compile(r"\d+")


def tokenize_name(text: str) -> Name:
    text = text.strip()
    if not text:
        return ()
    if re.fullmatch(r"\d+", text):
        return tuple(int(c) for c in text)
    if not re.fullmatch(r"\d+(\s*[,\s]\s*\d+)*", text):
        raise LabelGapError(f"cannot tokenize name {text!r}")
    return tuple(int(t) for t in _TOKEN.findall(text))


# -- diagrams ----------------------------------------------------------------


@dataclass(frozen=True)
class ChordDiagram:
    """A chord diagram stored by its canonical name."""

    canonical: Name

    @classmethod
    def from_name(cls, name: Sequence[int]) -> "ChordDiagram":
        return cls(canonical_form(name))

    @property
    def n(self) -> int:
        return len(self.canonical) // 2

    @cached_property
    def endpoints(self) -> dict[int, tuple[int, int]]:
        pos: dict[int, list[int]] = {}
        for k, x in enumerate(self.canonical):
            pos.setdefault(x, []).append(k)
        return {x: (p[0], p[1]) for x, p in pos.items()}

    @cached_property
    def crossings(self) -> frozenset[frozenset[int]]:
        return crossing_graph(self)

    def crosses(self, i: int, j: int) -> bool:
        return frozenset((i, j)) in self.crossings

    def name_str(self, sep: str | None = None) -> str:
        return format_name(self.canonical, sep)

    def __str__(self) -> str:
        return self.name_str()


def parse_name(text: str, *, reject_empty: bool = False) -> ChordDiagram:
    """Parse "12342143" or "1,2,1,2" into a canonical diagram."""
    labels = tokenize_name(text)
    if not labels and reject_empty:
        raise EmptyInputError("empty diagram rejected by configuration")
    return ChordDiagram.from_name(labels)


def _interleave(a: tuple[int, int], b: tuple[int, int]) -> bool:
    lo, hi = a
    return (lo < b[0] < hi) != (lo < b[1] < hi)


def crossing_graph(d: ChordDiagram) -> frozenset[frozenset[int]]:
    """Edges {i, j} of chords whose endpoints interleave around the circle."""
    ends = d.endpoints
    return frozenset(
        frozenset((i, j))
        for i, j in itertools.combinations(sorted(ends), 2)
        if _interleave(ends[i], ends[j])
    )


def _fan_successor(name: Name) -> dict[int, int]:
    size = len(name)
    pos: dict[int, list[int]] = {}
    for k, x in enumerate(name):
        pos.setdefault(x, []).append(k)
    succ = {}
    for r, (p, q) in pos.items():
        s1, s2 = name[(p + 1) % size], name[(q + 1) % size]
        if s1 == s2 and s1 != r:
            succ[r] = s1
    return succ


def _fan_chains(name: Name) -> list[tuple[int, ...]]:
    succ = _fan_successor(name)
    has_pred = set(succ.values())
    labels = sorted(set(name))
    chains = []
    seen: set[int] = set()
    for head in labels:
        if head in has_pred:
            continue
        chain = [head]
        while chain[-1] in succ:
            chain.append(succ[chain[-1]])
        chains.append(tuple(chain))
        seen.update(chain)
    rest = [x for x in labels if x not in seen]
    if rest:
        # Successors close up into a cycle only when one fan fills the circle.
        chain = [rest[0]]
        while succ[chain[-1]] != rest[0]:
            chain.append(succ[chain[-1]])
        chains.append(tuple(chain))
    return chains


def maximal_fans(d: ChordDiagram) -> list[tuple[int, ...]]:
    """
    Partition of the chords into maximal fans, each listed in the order its
    chords are met inside either of the fan's two arcs.
    """
    return _fan_chains(d.canonical)


@dataclass(frozen=True)
class WeightedDiagram:
    """
    An amalgamated diagram: `weights[k]` is the fan size carried by chord
    k + 1 of `base`.  When the base has rotational symmetry the weight tuple
    is normalised to the least one among symmetric relabelings, so equal
    weighted diagrams compare equal.
    """

    base: ChordDiagram
    weights: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.weights) != self.base.n:
            raise ValueError("one weight per chord of the base diagram is required")
        if any(w < 1 for w in self.weights):
            raise ValueError("weights must be positive")
        best = min(
            tuple(
                w
                for _, w in sorted(
                    (mapping[k + 1], w) for k, w in enumerate(self.weights)
                )
            )
            for mapping in canonical_maps(self.base.canonical)
        ) if self.base.n else ()
        object.__setattr__(self, "weights", best)

    @classmethod
    def from_labels(cls, name: Sequence[int], weight: dict[int, int]) -> "WeightedDiagram":
        """Build from a non-canonical base name and a weight per label in it."""
        first: dict[int, int] = {}
        for x in name:
            first.setdefault(x, len(first) + 1)
        dense = tuple(first[x] for x in name)
        mapping = canonical_maps(dense)[0] if name else {}
        base = ChordDiagram.from_name(dense)
        weights = [0] * base.n
        for label, mid in first.items():
            weights[mapping[mid] - 1] = weight[label]
        return cls(base, tuple(weights))


def amalgamate(d: ChordDiagram) -> WeightedDiagram:
    """Collapse every maximal fan to one chord weighted by the fan's size."""
    chains = maximal_fans(d)
    heads = {c[0]: len(c) for c in chains}
    base_name = tuple(x for x in d.canonical if x in heads)
    return WeightedDiagram.from_labels(base_name, heads)


def expand(w: WeightedDiagram) -> ChordDiagram:
    """Replace each chord of weight k by a fan of k chords."""
    out: list[tuple[int, int]] = []
    for label in w.base.canonical:
        out.extend((label, k) for k in range(w.weights[label - 1]))
    return ChordDiagram(canonical_form(relabel(out)))  # type: ignore[arg-type]


def max_parallel_set(d: ChordDiagram) -> int:
    """Largest set of pairwise non-crossing chords (exhaustive branch and bound)."""
    chords = sorted(d.endpoints)
    nbrs = {c: set() for c in chords}
    for e in d.crossings:
        a, b = tuple(e)
        nbrs[a].add(b)
        nbrs[b].add(a)

    best = 0

    def search(candidates: list[int], size: int) -> None:
        nonlocal best
        if size + len(candidates) <= best:
            return
        if not candidates:
            best = size
            return
        v, rest = candidates[0], candidates[1:]
        search([u for u in rest if u not in nbrs[v]], size + 1)
        search(rest, size)

    search(chords, 0)
    return best


def index_bounds(d: ChordDiagram) -> tuple[int, int]:
    """(lower, upper) braid-index bounds from parallel chords and chord count."""
    if d.n == 0:
        return 1, 1
    return max(2, max_parallel_set(d) + 1), d.n + 1


def special_chords(d: ChordDiagram) -> frozenset[int]:
    """Chords that cross every other chord."""
    chords = set(d.endpoints)
    degree = Counter(x for e in d.crossings for x in e)
    return frozenset(c for c in chords if degree[c] == len(chords) - 1)


@dataclass(frozen=True)
class AssociatedPermutation:
    sigma: tuple[int, ...]
    source: tuple[int, int]  # (special chord, endpoint index 0 or 1)

    @property
    def descents(self) -> int:
        return sum(1 for a, b in zip(self.sigma, self.sigma[1:]) if a > b)


def associated_permutations(d: ChordDiagram) -> list[AssociatedPermutation]:
    """
    Read the name from each endpoint of each special chord.  The reading has
    the shape 1 2 ... n s(1) ... s(n); the second half is returned.
    """
    specials = special_chords(d)
    if not specials:
        raise NoSpecialChordError(f"diagram {d} has no special chord")
    out = []
    for chord in sorted(specials):
        for which, p in enumerate(d.endpoints[chord]):
            reading = relabel(rotate(d.canonical, p))
            assert reading[: d.n] == tuple(range(1, d.n + 1))
            out.append(AssociatedPermutation(reading[d.n :], (chord, which)))
    return out


def is_braid_index_three_special(d: ChordDiagram) -> bool:
    """True iff some associated permutation has exactly one descent."""
    return any(p.descents == 1 for p in associated_permutations(d))


def _matchings(points: list[int]) -> Iterator[list[tuple[int, int]]]:
    if not points:
        yield []
        return
    first, rest = points[0], points[1:]
    for k, other in enumerate(rest):
        for tail in _matchings(rest[:k] + rest[k + 1 :]):
            yield [(first, other)] + tail


def enumerate_diagrams(n: int, cap: int = DEFAULT_ENUMERATION_CAP) -> list[ChordDiagram]:
    """All n-chord diagrams, once each, sorted by canonical name."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > cap:
        raise CapExceededError(f"n = {n} exceeds the enumeration cap {cap}")
    found = set()
    for matching in _matchings(list(range(2 * n))):
        name = [0] * (2 * n)
        for label, (a, b) in enumerate(matching, start=1):
            name[a] = name[b] = label
        found.add(_canonical_rotations(relabel(name))[0])
    return [ChordDiagram(c) for c in sorted(found)]
