"""
Exhaustive and randomized property checks, shared by ``chordbraid verify``
and the test suite.  Each check returns a CheckReport; a check passes when
its violation list is empty.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable

from .braidindex import (
    SLOW_ORACLE_BUDGET,
    compute_braid_index,
    oracle_braid_index,
    verify_three_braid_uniqueness,
)
from .braidword import (
    ChordWord,
    Move,
    all_words,
    apply_move,
    braid_up,
    canonical_braiding,
    close,
    is_canonical_braiding,
    remove_empty_strands,
    shift_strands,
    strand_merge,
)
from .diagram import (
    ChordDiagram,
    amalgamate,
    enumerate_diagrams,
    format_name,
    index_bounds,
    is_braid_index_three_special,
    special_chords,
)
from .errors import ChordBraidError
from .relations import (
    LinearCombo,
    closure_image,
    four_term_relations,
    is_one_block,
    one_block_form,
    special_chord_property,
)


@dataclass
class CheckReport:
    name: str
    checked: int = 0
    violations: list[str] = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "check": self.name,
            "checked": self.checked,
            "violations": list(self.violations),
            **self.notes,
        }


def _diagrams(n_max: int, n_min: int = 1):
    for n in range(n_min, n_max + 1):
        yield from enumerate_diagrams(n)


# -- moves -------------------------------------------------------------------


def _random_word(rng: random.Random, m_max: int, length_max: int) -> ChordWord:
    m = rng.randint(2, m_max)
    gens = [(i, j) for i in range(1, m + 1) for j in range(i + 1, m + 1)]
    return ChordWord(m, tuple(rng.choice(gens) for _ in range(rng.randint(1, length_max))))


def _candidate_moves(w: ChordWord) -> list[tuple[str, Callable[[ChordWord], ChordWord]]]:
    n = len(w)
    out: list[tuple[str, Callable[[ChordWord], ChordWord]]] = [
        ("cyclic_permute", lambda v: apply_move(v, Move("cyclic_permute"))),
        ("shift_strands", lambda v: shift_strands(v, 1)),
        ("remove_empty_strands", remove_empty_strands),
    ]
    for p in range(1, n + 1):
        out.append((f"increase {p}", lambda v, p=p: apply_move(v, Move("increase", (p,)))))
        out.append((f"decrease {p}", lambda v, p=p: apply_move(v, Move("decrease", (p,)))))
    for p in range(1, n):
        out.append((f"commute {p}", lambda v, p=p: apply_move(v, Move("commute", (p,)))))
    for j in range(2, w.m + 1):
        out.append((f"strand_merge {j}", lambda v, j=j: strand_merge(v, j)))
    return out


def check_moves(n_max: int = 4, samples: int = 1000, seed: int = 0,
                m_max: int = 6, length_max: int = 6) -> CheckReport:
    """
    Every move preserves the closure and braid_up ends at a canonical
    braiding of the same closure (random words, plus all C_3 words up to
    n_max), and canonical braidings read back their name (all names up to
    n_max).
    """
    report = CheckReport("moves")
    rng = random.Random(seed)
    applied = 0
    for _ in range(samples):
        w = _random_word(rng, m_max, length_max)
        target = close(w).canonical
        for label, move in _candidate_moves(w):
            try:
                v = move(w)
            except ChordBraidError:
                continue
            applied += 1
            if close(v).canonical != target:
                report.violations.append(f"{label} changes the closure of {w}")
        up, trace = braid_up(w)
        if not is_canonical_braiding(up) or close(up).canonical != target:
            report.violations.append(f"braid_up({w}) ended at {up}")
        elif trace.replay(w) != up:
            report.violations.append(f"braid_up({w}) trace does not replay")
        report.checked += 1
    for d in _diagrams(n_max):
        report.checked += 1
        w = canonical_braiding(d.canonical)
        if close(w).canonical != d.canonical:
            report.violations.append(f"canonical braiding of {d} closes to {close(w)}")
        if not is_canonical_braiding(w):
            report.violations.append(f"canonical braiding of {d} has a strand without one endpoint")
    for n in range(1, n_max + 1):
        for w in all_words(3, n):
            report.checked += 1
            v, trace = braid_up(w)
            if not is_canonical_braiding(v) or close(v).canonical != close(w).canonical:
                report.violations.append(f"braid_up({w}) ended at {v}")
            elif trace.replay(w) != v:
                report.violations.append(f"braid_up({w}) trace does not replay")
    report.notes["moves_applied"] = applied
    return report


# -- braid index -------------------------------------------------------------


def check_braid_index(n_max: int = 4) -> CheckReport:
    """Merge-strategy braid index equals the brute-force oracle, and its witness closes to D."""
    report = CheckReport("braid_index_vs_oracle")
    for d in _diagrams(n_max):
        report.checked += 1
        result = compute_braid_index(d)
        truth = oracle_braid_index(d, budget=SLOW_ORACLE_BUDGET)
        if result.value != truth:
            report.violations.append(f"{d}: merge {result.value}, oracle {truth}")
        if close(result.witness).canonical != d.canonical or result.witness.m != result.value:
            report.violations.append(f"{d}: witness {result.witness} does not close to it")
    return report


def _weighted_base(d: ChordDiagram) -> ChordDiagram:
    return amalgamate(d).base


def check_amalgamation(n_max: int = 5) -> CheckReport:
    """Collapsing each maximal fan to one chord leaves the brute-force braid index unchanged."""
    report = CheckReport("amalgamation")
    for d in _diagrams(n_max):
        report.checked += 1
        base = _weighted_base(d)
        a = oracle_braid_index(d, budget=SLOW_ORACLE_BUDGET)
        b = oracle_braid_index(base, budget=SLOW_ORACLE_BUDGET)
        if a != b:
            report.violations.append(f"{d}: index {a}, amalgamated base {base} index {b}")
    return report


def check_bounds(n_max: int = 5) -> CheckReport:
    """Parallel-chord lower bound and chord-count upper bound bracket the index."""
    report = CheckReport("bounds")
    for d in _diagrams(n_max):
        report.checked += 1
        lo, hi = index_bounds(d)
        value = compute_braid_index(d).value
        if not lo <= value <= hi:
            report.violations.append(f"{d}: index {value} outside [{lo}, {hi}]")
    return report


def check_three_braid_uniqueness(n_max: int = 6) -> CheckReport:
    """3-braid words of one diagram form one cyclic class or a flype pair."""
    raw = verify_three_braid_uniqueness(n_max)
    report = CheckReport("three_braid_uniqueness", checked=raw["checked"])
    report.violations = [f"{v['diagram']}: classes {v['classes']}" for v in raw["violations"]]
    report.notes["flype_pairs"] = [format_name(k, ",") for k in raw["flype_pairs"]]
    return report


def check_single_descent(n_max: int = 5) -> CheckReport:
    """For special-chord diagrams, single descent holds iff the braid index is 3."""
    report = CheckReport("single_descent")
    for d in _diagrams(n_max):
        if not special_chords(d):
            continue
        report.checked += 1
        predicate = is_braid_index_three_special(d)
        value = compute_braid_index(d).value
        if predicate != (value == 3):
            report.violations.append(f"{d}: single descent {predicate}, index {value}")
    return report


# -- relations ---------------------------------------------------------------


def check_one_block(length_max: int = 4, m: int = 3) -> CheckReport:
    """one_block_form gives one-block words whose closures agree with the input modulo 4T."""
    report = CheckReport("one_block_form")
    systems = {}
    for n in range(1, length_max + 1):
        systems[n] = four_term_relations(n) if n >= 2 else None
        for w in all_words(m, n):
            report.checked += 1
            out = one_block_form(w)
            if not all(is_one_block(v) for v in out):
                report.violations.append(f"{w}: output word is not one-block")
                continue
            diff = closure_image(out) - LinearCombo.single(close(w).canonical)
            ok = not diff if systems[n] is None else systems[n].contains(diff)
            if not ok:
                report.violations.append(f"{w}: closure differs modulo 4T")
    return report


def check_special_chord_property(length_max: int = 3, m_max: int = 4) -> CheckReport:
    """Prefixing A(1,m) to a one-block word always closes to a special-chord diagram."""
    report = CheckReport("special_chord_property")
    for m in range(2, m_max + 1):
        block = [(i, m) for i in range(1, m)]
        words = [()]
        for length in range(length_max + 1):
            for gens in words:
                report.checked += 1
                if not special_chord_property(ChordWord(m, gens)):
                    report.violations.append(f"{ChordWord(m, gens)}")
            words = [g + (x,) for g in words for x in block]
    return report


CHECKS: dict[str, tuple[Callable[[int], CheckReport], int, str]] = {
    "thm2.3": (check_moves, 4, "moves preserve closures; canonical braidings and braid_up are sound"),
    "thm3.2": (check_braid_index, 4, "braid index search agrees with brute-force enumeration"),
    "thm4.1": (check_three_braid_uniqueness, 6, "3-braid representatives are unique up to flypes"),
    "prop3.4": (check_amalgamation, 5, "fan amalgamation preserves braid index"),
    "prop3.6": (check_bounds, 5, "parallel-chord and chord-count bounds bracket the index"),
    "prop5.1": (check_one_block, 4, "one-block rewriting is one-block and closure-equal mod 4T"),
    "prop5.3": (check_single_descent, 5, "single descent iff braid index 3 for special-chord diagrams"),
    "remark5.2": (check_special_chord_property, 3, "A(1,m) times a one-block word has a special chord"),
}


def run_check(token: str, max_chords: int | None = None) -> CheckReport:
    fn, default, _ = CHECKS[token]
    return fn(default if max_chords is None else max_chords)
