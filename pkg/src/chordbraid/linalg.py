"""
Sparse Gaussian elimination over the rationals.

Rows are dicts {column: Fraction}.  An Echelon keeps one reduced row per
pivot column; inserting a row reduces it against the stored pivots and
keeps the remainder if it is nonzero.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

Row = dict[int, Fraction]


class Echelon:
    def __init__(self, rows: Iterable[Mapping[int, Fraction]] = ()):
        self.pivots: dict[int, Row] = {}
        for row in rows:
            self.add(row)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: Mapping[int, Fraction]) -> Row:
        r = {c: Fraction(v) for c, v in row.items() if v}
        out: Row = {}
        while r:
            col = min(r)
            factor = r.pop(col)
            piv = self.pivots.get(col)
            if piv is None:
                out[col] = factor
                continue
            # pivot rows only have columns >= their pivot
            for c, v in piv.items():
                if c == col:
                    continue
                nv = r.get(c, 0) - factor * v
                if nv:
                    r[c] = nv
                else:
                    r.pop(c, None)
        return out

    def add(self, row: Mapping[int, Fraction]) -> bool:
        """Insert a row; True when it was independent of the rows so far."""
        r = self.reduce(row)
        if not r:
            return False
        col = min(r)
        lead = r[col]
        self.pivots[col] = {c: v / lead for c, v in r.items()}
        return True

    def contains(self, row: Mapping[int, Fraction]) -> bool:
        return not self.reduce(row)


def rank(rows: Iterable[Mapping[int, Fraction]]) -> int:
    return Echelon(rows).rank
