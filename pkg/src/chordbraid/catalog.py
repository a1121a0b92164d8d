"""JSON-lines catalog of diagrams with their braid data."""

from __future__ import annotations

import json
import os
from dataclasses import asdict, dataclass
from pathlib import Path

from .braidindex import compute_braid_index
from .braidword import close
from .diagram import (
    ChordDiagram,
    amalgamate,
    enumerate_diagrams,
    format_name,
    index_bounds,
    is_braid_index_three_special,
    special_chords,
    tokenize_name,
)
from .errors import CapExceededError


@dataclass(frozen=True)
class CatalogRecord:
    canonical_name: str  # comma separated labels
    n: int
    braid_index: int
    literal_index: int
    witness: str
    bounds: tuple[int, int]
    has_special_chord: bool
    single_descent: bool | None  # None without a special chord
    fan_profile: tuple[int, ...]

    def __post_init__(self) -> None:
        lo, hi = self.bounds
        assert lo <= self.braid_index <= hi, self
        assert self.braid_index <= self.literal_index, self

    @property
    def diagram(self) -> ChordDiagram:
        return ChordDiagram.from_name(tokenize_name(self.canonical_name))

    def to_json_line(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, data: dict) -> "CatalogRecord":
        data = dict(data)
        data["bounds"] = tuple(data["bounds"])
        data["fan_profile"] = tuple(data["fan_profile"])
        return cls(**data)


def make_record(d: ChordDiagram) -> CatalogRecord:
    merge = compute_braid_index(d)
    literal = compute_braid_index(d, "literal")
    assert close(merge.witness).canonical == d.canonical
    special = bool(special_chords(d))
    return CatalogRecord(
        canonical_name=format_name(d.canonical, ","),
        n=d.n,
        braid_index=merge.value,
        literal_index=literal.value,
        witness=str(merge.witness),
        bounds=index_bounds(d),
        has_special_chord=special,
        single_descent=is_braid_index_three_special(d) if special else None,
        fan_profile=tuple(amalgamate(d).weights),
    )


def build_records(n_max: int, cap: int = 6) -> list[CatalogRecord]:
    if n_max > cap:
        raise CapExceededError(f"n_max = {n_max} exceeds the catalog cap {cap}")
    records = [make_record(d) for n in range(1, n_max + 1) for d in enumerate_diagrams(n)]
    # d.canonical order within each n equals sorting the tuples
    records.sort(key=lambda r: (r.n, tokenize_name(r.canonical_name)))
    return records


def catalog_build(n_max: int, path: str | os.PathLike, cap: int = 6) -> int:
    """Write one record per diagram with 1..n_max chords; returns the record count."""
    records = build_records(n_max, cap)
    text = "".join(r.to_json_line() + "\n" for r in records)
    Path(path).write_text(text)
    return len(records)


def load_catalog(path: str | os.PathLike) -> list[CatalogRecord]:
    with open(path) as fh:
        return [CatalogRecord.from_json(json.loads(line)) for line in fh if line.strip()]


def braid_indices(records: list[CatalogRecord]) -> dict[tuple[int, ...], int]:
    return {tokenize_name(r.canonical_name): r.braid_index for r in records}
