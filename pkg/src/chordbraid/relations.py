"""
Chord diagrams modulo the 4-term and 1-term relations, over the rationals.

Two independent generators of the 4-term relations are provided:

* four_term_relations works on the circle.  It takes a diagram with one
  endpoint of a sliding chord removed and a pivot chord with endpoints
  q1, q2, and emits (after(q1) - before(q1)) + (after(q2) - before(q2)),
  where before/after place the free endpoint just before/after q along the
  orientation.
* braid_context_relations closes U [A(i,j), A(j,k) + A(i,k)] V for every
  context pair U, V.

Their row spans must agree, which is the main guard against sign errors.
Words are also combed here: comb rewrites a word modulo 4T into
block-ordered words, and one_block_form adds cyclic permutation to reach
words that only use generators A(i, m).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Hashable, Iterable, Iterator, Mapping

from .braidword import ChordWord, Gen, close, cyclic_permute
from .diagram import (
    ChordDiagram,
    Name,
    canonical_form,
    enumerate_diagrams,
    format_name,
    special_chords,
)
from .errors import BudgetExceededError, CapExceededError, IterationCapError, NotOneBlockError
from .linalg import Echelon

DEFAULT_RELATION_CAP = 6
DEFAULT_CONTEXT_BUDGET = 2_000_000
DEFAULT_ITERATION_CAP = 100_000


class LinearCombo:
    """Finitely supported map from hashable keys to nonzero Fractions."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Hashable, object] | Iterable[tuple[Hashable, object]] = ()):
        acc: dict[Hashable, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for key, coeff in items:
            acc[key] = acc.get(key, Fraction(0)) + Fraction(coeff)
        self.terms = {k: v for k, v in acc.items() if v}

    @classmethod
    def single(cls, key: Hashable, coeff: object = 1) -> "LinearCombo":
        return cls({key: coeff})

    def __add__(self, other: "LinearCombo") -> "LinearCombo":
        return LinearCombo(itertools.chain(self.terms.items(), other.terms.items()))

    def __neg__(self) -> "LinearCombo":
        return LinearCombo({k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "LinearCombo") -> "LinearCombo":
        return self + (-other)

    def __mul__(self, scalar: object) -> "LinearCombo":
        s = Fraction(scalar)
        return LinearCombo({k: v * s for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        return isinstance(other, LinearCombo) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[Hashable]:
        return iter(self.terms)

    def items(self):
        return self.terms.items()

    def map_keys(self, fn) -> "LinearCombo":
        return LinearCombo((fn(k), v) for k, v in self.terms.items())

    def normalized(self) -> "LinearCombo":
        """Scaled so the coefficient of the least key is 1 (for deduplication)."""
        if not self.terms:
            return self
        lead = self.terms[min(self.terms, key=repr)]
        return self * (1 / lead)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k, v in sorted(self.terms.items(), key=lambda kv: repr(kv[0])):
            parts.append(f"{v}*{k}")
        return " + ".join(parts)


def _fmt_fraction(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass
class RelationSystem:
    """Rows of relations over a fixed basis of canonical diagram names."""

    basis: tuple[Name, ...]
    rows: list[LinearCombo] = field(default_factory=list)

    def __post_init__(self) -> None:
        self.index = {name: k for k, name in enumerate(self.basis)}
        for row in self.rows:
            missing = [k for k in row if k not in self.index]
            if missing:
                raise ValueError(f"row support {missing[:3]} outside the basis")

    def _vector(self, row: LinearCombo) -> dict[int, Fraction]:
        return {self.index[k]: v for k, v in row.items()}

    @cached_property
    def echelon(self) -> Echelon:
        return Echelon(self._vector(r) for r in self.rows)

    @property
    def rank(self) -> int:
        return self.echelon.rank

    @property
    def dimension(self) -> int:
        """Dimension of the span of the basis modulo the rows."""
        return len(self.basis) - self.rank

    def contains(self, row: LinearCombo) -> bool:
        return self.echelon.contains(self._vector(row))

    def spans_rows_of(self, other: "RelationSystem") -> bool:
        return all(self.contains(r) for r in other.rows)

    def same_span(self, other: "RelationSystem") -> bool:
        return self.spans_rows_of(other) and other.spans_rows_of(self)

    def extended(self, rows: Iterable[LinearCombo]) -> "RelationSystem":
        return RelationSystem(self.basis, list(self.rows) + list(rows))

    def to_json(self) -> dict:
        return {
            "basis": [format_name(b, ",") for b in self.basis],
            "rows": [
                [[self.index[k], _fmt_fraction(v)] for k, v in sorted(
                    row.items(), key=lambda kv: self.index[kv[0]]
                )]
                for row in self.rows
            ],
        }

    def to_matrix_market(self) -> str:
        """Coordinate-format sparse text; 1-based (row, column, value) lines."""
        entries = [
            (r + 1, self.index[k] + 1, v)
            for r, row in enumerate(self.rows)
            for k, v in row.items()
        ]
        entries.sort()
        lines = ["%%MatrixMarket matrix coordinate rational general"]
        lines += [f"% basis {c + 1} {format_name(b, ',')}" for c, b in enumerate(self.basis)]
        lines.append(f"{len(self.rows)} {len(self.basis)} {len(entries)}")
        lines += [f"{r} {c} {_fmt_fraction(v)}" for r, c, v in entries]
        return "\n".join(lines) + "\n"


def _dedupe(rows: Iterable[LinearCombo]) -> list[LinearCombo]:
    seen = set()
    out = []
    for row in rows:
        if not row:
            continue
        key = row.normalized()
        if key not in seen:
            seen.add(key)
            out.append(row)
    return out


def _basis(n: int, cap: int) -> tuple[Name, ...]:
    return tuple(d.canonical for d in enumerate_diagrams(n, cap))


# -- diagrammatic relations --------------------------------------------------


def _insert(seq: tuple[int, ...], index: int, label: int) -> Name:
    return canonical_form(seq[:index] + (label,) + seq[index:])


def four_term_relations(n: int, cap: int = DEFAULT_RELATION_CAP) -> RelationSystem:
    if n > cap:
        raise CapExceededError(f"n = {n} exceeds the relation cap {cap}")
    basis = _basis(n, cap)
    rows = []
    for name in basis:
        for slider in range(1, n + 1):
            for drop in (0, 1):
                positions = [k for k, x in enumerate(name) if x == slider]
                gone = positions[drop]
                template = name[:gone] + name[gone + 1 :]
                for pivot in range(1, n + 1):
                    if pivot == slider:
                        continue
                    row = LinearCombo()
                    for q in (k for k, x in enumerate(template) if x == pivot):
                        row = row + LinearCombo(
                            [(_insert(template, q + 1, slider), 1), (_insert(template, q, slider), -1)]
                        )
                    rows.append(row)
    return RelationSystem(basis, _dedupe(rows))


def one_term_relations(n: int, cap: int = DEFAULT_RELATION_CAP) -> RelationSystem:
    """One row D = 0 for every diagram D with a chord crossing no other chord."""
    basis = _basis(n, cap)
    rows = []
    for name in basis:
        d = ChordDiagram(name)
        crossed = {x for e in d.crossings for x in e}
        if any(c not in crossed for c in range(1, n + 1)):
            rows.append(LinearCombo.single(name))
    return RelationSystem(basis, rows)


# -- braid-form relations ----------------------------------------------------


@lru_cache(maxsize=1 << 20)
def _closure_key(m: int, gens: tuple[Gen, ...]) -> Name:
    return close(ChordWord(m, gens)).canonical


def closure_image(combo: LinearCombo) -> LinearCombo:
    """Push a combination of words forward to canonical diagram names."""
    return LinearCombo((_closure_key(w.m, w.gens), v) for w, v in combo.items())


def _gen(a: int, b: int) -> Gen:
    return (a, b) if a < b else (b, a)


def four_term_braid_element(m: int, i: int, j: int, k: int) -> LinearCombo:
    """[A(i,j), A(j,k) + A(i,k)] as a combination of two-letter words in C_m."""
    x, y, z = _gen(i, j), _gen(j, k), _gen(i, k)
    return LinearCombo(
        [
            (ChordWord(m, (x, y)), 1),
            (ChordWord(m, (y, x)), -1),
            (ChordWord(m, (x, z)), 1),
            (ChordWord(m, (z, x)), -1),
        ]
    )


def braid_context_relations(
    n: int,
    m_max: int,
    cap: int = DEFAULT_RELATION_CAP,
    budget: int = DEFAULT_CONTEXT_BUDGET,
) -> RelationSystem:
    """
    Closures of U [A(i,j), A(j,k) + A(i,k)] V with len(U) + len(V) = n - 2.

    Words are enumerated in C_{m_max} only: a word in a smaller C_m embeds
    by adding unused strands and has the same closure.
    """
    if n > cap:
        raise CapExceededError(f"n = {n} exceeds the relation cap {cap}")
    if n < 2 or m_max < 3:
        return RelationSystem(_basis(n, cap), [])
    m = m_max
    gens = [(a, b) for a in range(1, m + 1) for b in range(a + 1, m + 1)]
    pivots = [
        (i, j, k)
        for i, j in gens
        for k in range(1, m + 1)
        if k not in (i, j)
    ]
    contexts = (n - 1) * len(gens) ** (n - 2)
    if contexts * len(pivots) > budget:
        raise BudgetExceededError(
            f"{contexts * len(pivots)} braid relations exceed the budget {budget}"
        )
    seen: set[LinearCombo] = set()
    rows = []
    for left_len in range(n - 1):
        right_len = n - 2 - left_len
        for left in itertools.product(gens, repeat=left_len):
            for right in itertools.product(gens, repeat=right_len):
                for i, j, k in pivots:
                    x, y, z = _gen(i, j), _gen(j, k), _gen(i, k)
                    row = LinearCombo(
                        [
                            (_closure_key(m, left + (x, y) + right), 1),
                            (_closure_key(m, left + (y, x) + right), -1),
                            (_closure_key(m, left + (x, z) + right), 1),
                            (_closure_key(m, left + (z, x) + right), -1),
                        ]
                    )
                    if not row:
                        continue
                    key = row.normalized()
                    if key not in seen:
                        seen.add(key)
                        rows.append(row)
    return RelationSystem(_basis(n, cap), rows)


# -- quotients ---------------------------------------------------------------


@dataclass(frozen=True)
class QuotientReport:
    n: int
    use_one_term: bool
    braid_cap: int | None
    diagrams: int
    dimension: int
    restricted_diagrams: int | None = None
    relations_among_restricted: int | None = None
    local_relations: int | None = None
    induced_relations: int | None = None

    def to_json(self) -> dict:
        return {k: v for k, v in self.__dict__.items()}


def relation_system(n: int, use_one_term: bool, cap: int = DEFAULT_RELATION_CAP) -> RelationSystem:
    system = four_term_relations(n, cap) if n >= 2 else RelationSystem(_basis(n, cap), [])
    if use_one_term:
        system = system.extended(one_term_relations(n, cap).rows)
    return system


def quotient_report(
    n: int,
    use_one_term: bool = False,
    braid_cap: int | None = None,
    braid_indices: Mapping[Name, int] | None = None,
    cap: int = DEFAULT_RELATION_CAP,
) -> QuotientReport:
    """
    Dimension of the n-chord diagram space modulo relations.  With a braid
    cap b, report instead the dimension of the image of diagrams of braid
    index <= b, the number of independent relations they satisfy in the
    quotient (relations_among_restricted), the rank of the generating
    relations supported entirely on such diagrams (local_relations), and
    the difference: relations forced through higher-index diagrams
    (induced_relations).
    """
    system = relation_system(n, use_one_term, cap)
    if braid_cap is None:
        return QuotientReport(n, use_one_term, None, len(system.basis), system.dimension)
    if braid_indices is None:
        from .braidindex import compute_braid_index

        braid_indices = {
            name: compute_braid_index(ChordDiagram(name)).value for name in system.basis
        }
    low = [name for name in system.basis if braid_indices[name] <= braid_cap]
    low_set = set(low)
    combined = Echelon(system.echelon.pivots.values())
    for name in low:
        combined.add({system.index[name]: Fraction(1)})
    image = combined.rank - system.rank
    local = Echelon(system._vector(r) for r in system.rows if set(r) <= low_set).rank
    return QuotientReport(
        n,
        use_one_term,
        braid_cap,
        len(system.basis),
        image,
        restricted_diagrams=len(low),
        relations_among_restricted=len(low) - image,
        local_relations=local,
        induced_relations=len(low) - image - local,
    )


def quotient_dimension(
    n: int,
    use_one_term: bool = False,
    braid_cap: int | None = None,
    braid_indices: Mapping[Name, int] | None = None,
    cap: int = DEFAULT_RELATION_CAP,
) -> int:
    return quotient_report(n, use_one_term, braid_cap, braid_indices, cap).dimension


# -- combing -----------------------------------------------------------------


def is_block_ordered(w: ChordWord) -> bool:
    return all(g[1] >= h[1] for g, h in zip(w.gens, w.gens[1:]))


def is_one_block(w: ChordWord) -> bool:
    return all(j == w.m for _, j in w.gens)


def _rewrite(gens: tuple[Gen, ...], p: int) -> list[tuple[tuple[Gen, ...], int]]:
    (i, j), (k, l) = gens[p], gens[p + 1]
    pre, post = gens[:p], gens[p + 2 :]

    def at(*pair: Gen) -> tuple[Gen, ...]:
        return pre + pair + post

    if not {i, j} & {k, l}:
        return [(at((k, l), (i, j)), 1)]
    if j == k:
        return [
            (at((j, l), (i, j)), 1),
            (at((i, l), (i, j)), 1),
            (at((i, j), (i, l)), -1),
        ]
    if i == k:
        return [
            (at((i, l), (i, j)), 1),
            (at((i, l), (j, l)), 1),
            (at((j, l), (i, l)), -1),
        ]
    raise AssertionError(f"unexpected ascending pair A{gens[p]} A{gens[p + 1]}")


def comb(w: ChordWord, iteration_cap: int = DEFAULT_ITERATION_CAP) -> LinearCombo:
    """Rewrite w modulo 4T into block-ordered words (second indices non-increasing)."""
    return LinearCombo(
        (ChordWord(w.m, g), v) for g, v in _comb_gens(w.m, {w.gens: Fraction(1)}, iteration_cap).items()
    )


def _comb_gens(m: int, start: dict, iteration_cap: int) -> dict[tuple[Gen, ...], Fraction]:
    pending = dict(start)
    done: dict[tuple[Gen, ...], Fraction] = {}
    steps = 0
    while pending:
        gens, coeff = pending.popitem()
        if not coeff:
            continue
        p = next((q for q in range(len(gens) - 1) if gens[q][1] < gens[q + 1][1]), None)
        if p is None:
            done[gens] = done.get(gens, Fraction(0)) + coeff
            continue
        steps += 1
        if steps > iteration_cap:
            raise IterationCapError(f"combing did not finish within {iteration_cap} rewrites")
        for new, sign in _rewrite(gens, p):
            value = pending.get(new, Fraction(0)) + sign * coeff
            if value:
                pending[new] = value
            else:
                pending.pop(new, None)
    return {g: v for g, v in done.items() if v}


def one_block_form(w: ChordWord, iteration_cap: int = DEFAULT_ITERATION_CAP) -> LinearCombo:
    """
    Rewrite w, modulo 4T and cyclic permutation, as a combination of words
    using only generators A(i, m): comb, then cyclically permute each word
    whose last block is below strand m and comb again.
    """
    m = w.m
    pending = _comb_gens(m, {w.gens: Fraction(1)}, iteration_cap)
    done: dict[tuple[Gen, ...], Fraction] = {}
    rounds = 0
    while pending:
        rounds += 1
        if rounds > iteration_cap:
            raise IterationCapError(f"one-block reduction did not finish in {iteration_cap} rounds")
        todo: dict[tuple[Gen, ...], Fraction] = {}
        for gens, coeff in pending.items():
            if all(j == m for _, j in gens):
                done[gens] = done.get(gens, Fraction(0)) + coeff
            else:
                moved = cyclic_permute(ChordWord(m, gens)).gens
                todo[moved] = todo.get(moved, Fraction(0)) + coeff
        pending = _comb_gens(m, {g: v for g, v in todo.items() if v}, iteration_cap)
    return LinearCombo((ChordWord(m, g), v) for g, v in done.items())


def special_chord_property(w: ChordWord) -> bool:
    """Whether close(A(1,m) w) has a chord crossing all others, for one-block w."""
    if not is_one_block(w):
        raise NotOneBlockError(f"{w} uses a generator A(i,j) with j < {w.m}")
    if w.m < 2:
        raise NotOneBlockError("one-block words need at least two strands")
    return bool(special_chords(close(ChordWord(w.m, ((1, w.m),) + w.gens))))
