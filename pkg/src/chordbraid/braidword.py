"""
Words in the chord monoid C_m and the moves that preserve their closure.

A word is a strand count m and a sequence of horizontal chords A(i, j),
1 <= i < j <= m, read top to bottom.  Two generators commute exactly when
their strand sets are disjoint.  In C_3 the letters a, b, c stand for
A(1,2), A(2,3), A(1,3).

Closure reading: generators are labelled 1..n in word order, and the name
is the concatenation over strands 1..m of the labels met going down each
strand.

Positions passed to the move functions are 1-based generator indices.
"""

from __future__ import annotations

import itertools
import re
from collections import deque
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from .diagram import ChordDiagram, Name, canonical_form, validate_name
from .errors import (
    EmptyWordError,
    IndexOutOfRangeError,
    NotApplicableError,
    PositionError,
    WordSyntaxError,
)

Gen = tuple[int, int]

LETTERS = {"a": (1, 2), "b": (2, 3), "c": (1, 3)}
_LETTER_OF = {v: k for k, v in LETTERS.items()}


@dataclass(frozen=True)
class ChordWord:
    m: int
    gens: tuple[Gen, ...] = ()

    def __post_init__(self) -> None:
        gens = tuple((int(i), int(j)) for i, j in self.gens)
        object.__setattr__(self, "gens", gens)
        if self.m < 1:
            raise IndexOutOfRangeError(f"strand count must be at least 1, got {self.m}")
        for i, j in gens:
            if not 1 <= i < j <= self.m:
                raise IndexOutOfRangeError(f"A({i},{j}) is not a generator of C_{self.m}")

    def __len__(self) -> int:
        return len(self.gens)

    def __str__(self) -> str:
        return "".join(f"A({i},{j})" for i, j in self.gens) + f"@{self.m}"

    def letters(self) -> str | None:
        """The a/b/c spelling, or None outside C_3."""
        if self.m != 3:
            return None
        return "".join(_LETTER_OF[g] for g in self.gens)

    def to_json(self) -> dict:
        return {"m": self.m, "gens": [list(g) for g in self.gens]}

    @classmethod
    def from_json(cls, data: dict) -> "ChordWord":
        return cls(int(data["m"]), tuple(tuple(g) for g in data["gens"]))

    def strands_used(self) -> set[int]:
        return {s for g in self.gens for s in g}

    def endpoint_counts(self) -> list[int]:
        counts = [0] * (self.m + 1)
        for i, j in self.gens:
            counts[i] += 1
            counts[j] += 1
        return counts[1:]


_EXPLICIT = re.compile(r"A\(\s*(\d+)\s*,\s*(\d+)\s*\)")


def parse_word(text: str) -> ChordWord:
    """
    Parse "A(1,3)A(2,4)@4" or the C_3 letter form "acb", "a2c1b3".

    The explicit form takes its strand count after '@' (default: the largest
    index used).  Letter words live in C_3 unless a larger '@m' is given.
    """
    text = "".join(text.split())
    body, _, strands = text.partition("@")
    if strands and not strands.isdigit():
        raise WordSyntaxError(f"bad strand count {strands!r}")
    m = int(strands) if strands else None

    if body.startswith("A("):
        pos, gens = 0, []
        for match in _EXPLICIT.finditer(body):
            if match.start() != pos:
                break
            gens.append((int(match.group(1)), int(match.group(2))))
            pos = match.end()
        if pos != len(body):
            raise WordSyntaxError(f"cannot parse {body[pos:]!r} in {text!r}")
        for i, j in gens:
            if i >= j:
                raise IndexOutOfRangeError(f"A({i},{j}) needs i < j")
        if m is None:
            m = max([j for _, j in gens], default=1)
        return ChordWord(m, tuple(gens))

    if not re.fullmatch(r"([abc]\d*)*", body):
        raise WordSyntaxError(f"cannot parse word {text!r}")
    gens = []
    for letter, exp in re.findall(r"([abc])(\d*)", body):
        gens.extend([LETTERS[letter]] * (int(exp) if exp else 1))
    if m is None:
        m = 3 if gens or not strands else 1
    if gens and m < 3:
        raise IndexOutOfRangeError(f"letter words need at least 3 strands, got {m}")
    return ChordWord(m, tuple(gens))


# -- closure -----------------------------------------------------------------


def read_name(w: ChordWord) -> Name:
    """The standard name read from w, labels = generator positions."""
    per_strand: list[list[int]] = [[] for _ in range(w.m + 1)]
    for label, (i, j) in enumerate(w.gens, start=1):
        per_strand[i].append(label)
        per_strand[j].append(label)
    return tuple(x for strand in per_strand for x in strand)


def close(w: ChordWord) -> ChordDiagram:
    return ChordDiagram(canonical_form(read_name(w)))


# -- cyclic permutation and commutation --------------------------------------


def _shift(g: Gen, m: int) -> Gen:
    i, j = g
    return (i + 1, j + 1) if j < m else (1, i + 1)


def cyclic_permute(w: ChordWord) -> ChordWord:
    """Move the last generator to the front, shifting its strands by one."""
    if not w.gens:
        raise EmptyWordError("cannot cyclically permute the empty word")
    return ChordWord(w.m, (_shift(w.gens[-1], w.m),) + w.gens[:-1])


def shift_strands(w: ChordWord, k: int = 1) -> ChordWord:
    """Relabel strands s -> s + k (mod m) in place, keeping generator order."""
    gens = []
    for i, j in w.gens:
        a, b = (i - 1 + k) % w.m + 1, (j - 1 + k) % w.m + 1
        gens.append((min(a, b), max(a, b)))
    return ChordWord(w.m, tuple(gens))


def commute(w: ChordWord, position: int) -> ChordWord:
    """Swap generators at `position` and `position + 1` (they must be disjoint)."""
    if not 1 <= position < len(w):
        raise PositionError(f"no adjacent pair at position {position}")
    g, h = w.gens[position - 1], w.gens[position]
    if set(g) & set(h):
        raise NotApplicableError(f"A{g} and A{h} share a strand and do not commute")
    gens = list(w.gens)
    gens[position - 1], gens[position] = h, g
    return ChordWord(w.m, tuple(gens))


def _normal_gens(gens: Sequence[Gen]) -> tuple[Gen, ...]:
    # lex-least linear extension of the dependence order: greedy on minimal elements
    remaining = list(gens)
    out = []
    while remaining:
        best_k = None
        blocked: set[int] = set()
        for k, g in enumerate(remaining):
            if not (set(g) & blocked):
                if best_k is None or g < remaining[best_k]:
                    best_k = k
            blocked.update(g)
        out.append(remaining.pop(best_k))
    return tuple(out)


def trace_normal_form(w: ChordWord) -> ChordWord:
    """Lexicographically least word reachable from w by commutations."""
    return ChordWord(w.m, _normal_gens(w.gens))


def _cyclic_class(m: int, gens: tuple[Gen, ...]) -> frozenset[tuple[Gen, ...]]:
    start = _normal_gens(gens)
    seen = {start}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        n = len(cur)
        for p in range(n):
            if any(set(cur[p]) & set(cur[q]) for q in range(p + 1, n)):
                continue
            # cur[p] can be commuted to the end, then moved round the closure
            moved = (_shift(cur[p], m),) + cur[:p] + cur[p + 1 :]
            nxt = _normal_gens(moved)
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return frozenset(seen)


def cyclic_class(w: ChordWord) -> frozenset[tuple[Gen, ...]]:
    """Normal forms of every word reachable by commutations and cyclic permutations."""
    return _cyclic_class(w.m, w.gens)


def cyclic_class_key(w: ChordWord) -> tuple[int, tuple[Gen, ...]]:
    return w.m, min(cyclic_class(w))


def cyclically_equivalent(v: ChordWord, w: ChordWord) -> bool:
    if v.m != w.m or len(v) != len(w):
        return False
    return _normal_gens(w.gens) in cyclic_class(v)


# -- stabilizations ----------------------------------------------------------


def _check_position(w: ChordWord, position: int) -> None:
    if not 1 <= position <= len(w):
        raise PositionError(f"position {position} outside 1..{len(w)}")


def _bump(g: Gen, threshold: int, delta: int) -> Gen:
    return tuple(x + delta if x >= threshold else x for x in g)  # type: ignore[return-value]


def increase_stabilize(w: ChordWord, position: int) -> ChordWord:
    """Add a trivial loop at the second strand j of the generator at `position`."""
    _check_position(w, position)
    p = position - 1
    i, j = w.gens[p]
    before = tuple(_bump(g, j + 1, 1) for g in w.gens[:p])
    after = tuple(_bump(g, j, 1) for g in w.gens[p + 1 :])
    return ChordWord(w.m + 1, before + ((i, j + 1),) + after)


def decrease_stabilize(w: ChordWord, position: int) -> ChordWord:
    """Delete the trivial loop ending at the generator at `position`."""
    _check_position(w, position)
    p = position - 1
    i, j = w.gens[p]
    if i == j - 1:
        raise NotApplicableError(f"generator A({i},{j}) joins strand {j - 1} to {j}")
    if any(j in g for g in w.gens[:p]):
        raise NotApplicableError(f"prefix touches strand {j}")
    if any(j - 1 in g for g in w.gens[p + 1 :]):
        raise NotApplicableError(f"suffix touches strand {j - 1}")
    before = tuple(_bump(g, j + 1, -1) for g in w.gens[:p])
    after = tuple(_bump(g, j, -1) for g in w.gens[p + 1 :])
    return ChordWord(w.m - 1, before + ((i, j - 1),) + after)


def merge_at(w: ChordWord, j: int, split: int) -> ChordWord:
    """
    Merge strands j-1 and j of the literal split w = U V with len(U) = split.
    U must avoid strand j and V must avoid strand j-1.
    """
    if not 2 <= j <= w.m:
        raise PositionError(f"strand {j} outside 2..{w.m}")
    if not 0 <= split <= len(w):
        raise PositionError(f"split {split} outside 0..{len(w)}")
    head, tail = w.gens[:split], w.gens[split:]
    if any(j in g for g in head):
        raise NotApplicableError(f"prefix touches strand {j}")
    if any(j - 1 in g for g in tail):
        raise NotApplicableError(f"suffix touches strand {j - 1}")
    before = tuple(_bump(g, j + 1, -1) for g in head)
    after = tuple(_bump(g, j, -1) for g in tail)
    return ChordWord(w.m - 1, before + after)


def merge_split(w: ChordWord, j: int) -> tuple[ChordWord, int] | None:
    """
    Find a commutation-equivalent reordering of w and a split point at which
    strands j-1 and j can be merged, or None.  The returned word is the
    reordering; merge_at(word, j, split) performs the merge.
    """
    gens = w.gens
    n = len(gens)
    # generators that must come before some strand-(j-1) generator
    must_left = [False] * n
    for p in range(n - 1, -1, -1):
        if j - 1 in gens[p]:
            must_left[p] = True
            continue
        must_left[p] = any(
            must_left[q] and set(gens[p]) & set(gens[q]) for q in range(p + 1, n)
        )
    if any(must_left[p] and j in gens[p] for p in range(n)):
        return None
    left = tuple(g for g, flag in zip(gens, must_left) if flag)
    right = tuple(g for g, flag in zip(gens, must_left) if not flag)
    return ChordWord(w.m, left + right), len(left)


def strand_merge(w: ChordWord, j: int) -> ChordWord:
    """Merge strands j-1 and j wherever some commutation-equivalent split allows it."""
    if not 2 <= j <= w.m:
        raise PositionError(f"strand {j} outside 2..{w.m}")
    found = merge_split(w, j)
    if found is None:
        raise NotApplicableError(
            f"every split leaves a strand-{j} generator above a strand-{j - 1} generator"
        )
    word, split = found
    return merge_at(word, j, split)


def remove_empty_strands(w: ChordWord) -> ChordWord:
    used = sorted(w.strands_used())
    if not used:
        return ChordWord(1, ())
    index = {s: k for k, s in enumerate(used, start=1)}
    return ChordWord(len(used), tuple((index[i], index[j]) for i, j in w.gens))


# -- canonical braidings -----------------------------------------------------


def canonical_braiding(name: Sequence[int]) -> ChordWord:
    """One strand per endpoint: chord r becomes A(first position, second position)."""
    name = validate_name(name)
    n = len(name) // 2
    pos: dict[int, list[int]] = {}
    for k, x in enumerate(name, start=1):
        pos.setdefault(x, []).append(k)
    gens = tuple((pos[r][0], pos[r][1]) for r in range(1, n + 1))
    return ChordWord(max(2 * n, 1), gens)


def is_canonical_braiding(w: ChordWord) -> bool:
    return w.m == 2 * len(w) and all(c == 1 for c in w.endpoint_counts())


class Move(NamedTuple):
    kind: str  # commute | cyclic_permute | increase | decrease | merge
    args: tuple[int, ...] = ()


@dataclass(frozen=True)
class MoveTrace:
    moves: tuple[Move, ...] = ()

    def __len__(self) -> int:
        return len(self.moves)

    def replay(self, source: ChordWord) -> ChordWord:
        w = source
        for move in self.moves:
            w = apply_move(w, move)
        return w


def apply_move(w: ChordWord, move: Move) -> ChordWord:
    if move.kind == "commute":
        return commute(w, *move.args)
    if move.kind == "cyclic_permute":
        return cyclic_permute(w)
    if move.kind == "increase":
        return increase_stabilize(w, *move.args)
    if move.kind == "decrease":
        return decrease_stabilize(w, *move.args)
    if move.kind == "merge":
        return merge_at(w, *move.args)
    raise ValueError(f"unknown move {move.kind!r}")


def braid_up(w: ChordWord) -> tuple[ChordWord, MoveTrace]:
    """
    Drive w to a canonical braiding of its closure with commutations, cyclic
    permutations and stabilizations, returning the word and a replayable trace.
    """
    moves: list[Move] = []

    def do(move: Move) -> None:
        nonlocal w
        w = apply_move(w, move)
        moves.append(move)

    if not w.gens:
        return w, MoveTrace()
    # empty strands: merge each one into a neighbour
    while len(w.strands_used()) < w.m:
        counts = w.endpoint_counts()
        empty = counts.index(0) + 1
        if empty == 1:
            do(Move("merge", (2, 0)))
        else:
            do(Move("merge", (empty, len(w))))

    while not is_canonical_braiding(w):
        position = _split_candidate(w)
        passes = 0
        while position is None:
            # a full pass of cyclic permutations rotates the strand labels by one
            for _ in range(len(w)):
                do(Move("cyclic_permute"))
            passes += 1
            assert passes <= w.m, "no strand with two endpoints reached the last strand"
            position = _split_candidate(w)
        do(Move("increase", (position,)))
    return w, MoveTrace(tuple(moves))


def _split_candidate(w: ChordWord) -> int | None:
    # a generator whose second strand already carries an endpoint above it
    seen: set[int] = set()
    for p, (i, j) in enumerate(w.gens, start=1):
        if j in seen:
            return p
        seen.update((i, j))
    return None


def all_words(m: int, length: int) -> Iterable[ChordWord]:
    gens = [(i, j) for i in range(1, m + 1) for j in range(i + 1, m + 1)]
    for combo in itertools.product(gens, repeat=length):
        yield ChordWord(m, combo)
