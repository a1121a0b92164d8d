"""
Command-line interface.

Every command builds a plain dict; ``--format json`` prints it as JSON and
the text format prints one ``key: value`` line per entry, so both formats
carry the same values.  Exit status: 0 on success, 1 on a domain error (or
a failed ``verify``), 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence, TextIO

from . import catalog as catalog_mod
from .braidindex import compute_braid_index
from .braidword import (
    ChordWord,
    canonical_braiding,
    close,
    cyclically_equivalent,
    parse_word,
)
from .checks import CHECKS, run_check
from .config import Config, load_config
from .diagram import (
    ChordDiagram,
    amalgamate,
    associated_permutations,
    enumerate_diagrams,
    format_name,
    index_bounds,
    is_braid_index_three_special,
    max_parallel_set,
    maximal_fans,
    parse_name,
    special_chords,
)
from .errors import CapExceededError, ChordBraidError
from .relations import LinearCombo, comb, one_block_form, quotient_report, relation_system
from .render import render_svg

STRATEGIES = ("merge", "literal", "oracle")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # route usage errors through run_command
        raise UsageError(f"{self.prog}: {message}")


def _name(d: ChordDiagram) -> str:
    return format_name(d.canonical)


def _combo_terms(combo: LinearCombo) -> list[dict]:
    terms = sorted(combo.items(), key=lambda kv: (kv[0].gens, kv[0].m))
    return [{"coefficient": str(v), "word": str(w)} for w, v in terms]


# -- commands ----------------------------------------------------------------


def cmd_info(args, config: Config) -> dict:
    d = parse_name(args.name)
    a = amalgamate(d)
    out = {
        "name": _name(d),
        "n": d.n,
        "crossings": sorted(sorted(e) for e in d.crossings),
        "maximal_fans": [list(f) for f in maximal_fans(d)],
        "amalgamated_base": format_name(a.base.canonical),
        "amalgamated_weights": list(a.weights),
        "max_parallel_set": max_parallel_set(d),
        "bounds": list(index_bounds(d)),
        "special_chords": sorted(special_chords(d)),
    }
    if out["special_chords"]:
        out["associated_permutations"] = [
            {"chord": p.source[0], "endpoint": p.source[1] + 1,
             "sigma": list(p.sigma), "descents": p.descents}
            for p in associated_permutations(d)
        ]
        out["single_descent"] = is_braid_index_three_special(d)
    return out


def cmd_braid_index(args, config: Config) -> dict:
    d = parse_name(args.name)
    if d.n > config.oracle_cap:
        raise CapExceededError(f"n = {d.n} exceeds the cap {config.oracle_cap}")
    result = compute_braid_index(
        d, args.strategy, cap=config.oracle_cap, oracle_budget=config.oracle_budget
    )
    out = {"name": _name(d), "strategy": args.strategy, "value": result.value}
    if args.witness:
        out["witness"] = str(result.witness) if result.witness is not None else None
    return out


def cmd_close(args, config: Config) -> dict:
    w = parse_word(args.word)
    return {"word": str(w), "name": _name(close(w))}


def cmd_canonical_braiding(args, config: Config) -> dict:
    d = parse_name(args.name)
    return {"name": _name(d), "word": str(canonical_braiding(d.canonical))}


def cmd_equivalent(args, config: Config) -> dict:
    v, w = parse_word(args.first), parse_word(args.second)
    return {"first": str(v), "second": str(w), "equivalent": cyclically_equivalent(v, w)}


def cmd_comb(args, config: Config) -> dict:
    w = parse_word(args.word)
    return {"word": str(w), "terms": _combo_terms(comb(w, config.iteration_cap))}


def cmd_one_block(args, config: Config) -> dict:
    w = parse_word(args.word)
    return {"word": str(w), "terms": _combo_terms(one_block_form(w, config.iteration_cap))}


def _check_chords(n: int, config: Config) -> None:
    if n < 0:
        raise UsageError(f"--chords must be non-negative, got {n}")
    if n > config.max_n:
        raise CapExceededError(f"--chords {n} exceeds max_n = {config.max_n}")


def cmd_relations(args, config: Config) -> dict | str:
    _check_chords(args.chords, config)
    if args.emit == "matrix":
        system = relation_system(args.chords, args.one_term, config.max_n)
        return system.to_json() if args.format == "json" else system.to_matrix_market()
    indices = None
    if args.braid_cap is not None:
        path = Path(args.catalog or config.catalog)
        if path.exists():
            indices = catalog_mod.braid_indices(catalog_mod.load_catalog(path))
            if not all(name in indices for name in relation_system(args.chords, False).basis):
                indices = None
    report = quotient_report(args.chords, args.one_term, args.braid_cap, indices, config.max_n)
    return report.to_json()


def cmd_enumerate(args, config: Config) -> dict:
    _check_chords(args.chords, config)
    if args.catalog:
        count = catalog_mod.catalog_build(args.chords, args.catalog, config.max_n)
        return {"catalog": args.catalog, "records": count}
    names = [_name(d) for d in enumerate_diagrams(args.chords, config.max_n)]
    return {"n": args.chords, "count": len(names), "diagrams": names}


def cmd_verify(args, config: Config) -> dict:
    if args.max_chords is not None and args.max_chords > config.max_n:
        raise CapExceededError(f"--max-chords {args.max_chords} exceeds max_n = {config.max_n}")
    report = run_check(args.check, args.max_chords)
    out = report.to_json()
    out["summary"] = f"{len(report.violations)} violations"
    return out


def cmd_render(args, config: Config) -> dict:
    subject: ChordDiagram | ChordWord
    text = args.subject.strip()
    if text and all(c.isdigit() or c in ", " for c in text):
        subject = parse_name(text)
        kind = "diagram"
    else:
        subject = parse_word(text)
        kind = "word"
    try:
        path = render_svg(subject, args.out)
    except OSError as exc:
        raise ChordBraidError(f"cannot write {args.out}: {exc.strerror}") from None
    return {"subject": str(subject), "kind": kind, "out": str(path)}


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    fmt = _Parser(add_help=False)
    fmt.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS,
                     help="output format (default from config, else text)")
    parser = _Parser(prog="chordbraid", description="Braid index and relations of chord diagrams.",
                     parents=[fmt])
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    def add(name: str, fn, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text, description=help_text, parents=[fmt])
        p.set_defaults(func=fn)
        return p

    p = add("info", cmd_info, "describe a diagram given by its name")
    p.add_argument("name")
    p = add("braid-index", cmd_braid_index, "compute the braid index of a diagram")
    p.add_argument("name")
    p.add_argument("--strategy", choices=STRATEGIES, default="merge")
    p.add_argument("--witness", action="store_true", help="also print a minimal braiding")
    p = add("close", cmd_close, "name of the closure of a chord word")
    p.add_argument("word")
    p = add("canonical-braiding", cmd_canonical_braiding, "one-endpoint-per-strand braiding")
    p.add_argument("name")
    p = add("equivalent", cmd_equivalent, "are two words equal up to commutation and cyclic moves")
    p.add_argument("first")
    p.add_argument("second")
    p = add("comb", cmd_comb, "rewrite a word modulo 4T into block-ordered words")
    p.add_argument("word")
    p = add("one-block", cmd_one_block, "rewrite a word into words using only A(i,m)")
    p.add_argument("word")
    p = add("relations", cmd_relations, "diagram space modulo 4T (and 1T) relations")
    p.add_argument("--chords", type=int, required=True)
    p.add_argument("--one-term", action="store_true", help="also impose the 1-term relation")
    p.add_argument("--braid-cap", type=int, help="restrict to diagrams of braid index at most this")
    p.add_argument("--emit", choices=("dim", "matrix"), default="dim")
    p.add_argument("--catalog", help="catalog file to read braid indices from")
    p = add("enumerate", cmd_enumerate, "list diagrams, or write a catalog of all up to --chords")
    p.add_argument("--chords", type=int, required=True)
    p.add_argument("--catalog", help="write a JSON-lines catalog here")
    checks = "; ".join(f"{k}: {v[2]}" for k, v in CHECKS.items())
    p = add("verify", cmd_verify, f"run a property check ({checks})")
    p.add_argument("check", choices=list(CHECKS))
    p.add_argument("--max-chords", type=int, help="size bound for the check")
    p = add("render", cmd_render, "draw a diagram name or a word as SVG")
    p.add_argument("subject")
    p.add_argument("--out", required=True)
    return parser


def _text(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "none"
    if isinstance(value, list) and value and all(isinstance(v, (int, str)) for v in value):
        return " ".join(str(v) for v in value)
    if isinstance(value, (list, dict)):
        return json.dumps(value, sort_keys=True)
    return str(value)


def emit(result: dict | str, fmt: str, out: TextIO) -> None:
    if isinstance(result, str):
        out.write(result if result.endswith("\n") else result + "\n")
    elif fmt == "json":
        out.write(json.dumps(result, sort_keys=True) + "\n")
    elif "terms" in result:
        out.write(f"word: {result['word']}\n")
        for t in result["terms"]:
            out.write(f"{t['coefficient']} {t['word']}\n")
    else:
        for key, value in result.items():
            out.write(f"{key}: {_text(value)}\n")


def run_command(argv: Sequence[str] | None = None, stdout: TextIO | None = None,
                stderr: TextIO | None = None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        stderr.write(parser.format_usage())
        stderr.write(f"{exc}\n")
        return 2
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        config = load_config()
        args.format = getattr(args, "format", None) or config.format
        result = args.func(args, config)
    except UsageError as exc:
        stderr.write(f"chordbraid {args.command}: {exc}\n")
        return 2
    except ChordBraidError as exc:
        stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return 1
    emit(result, args.format, stdout)
    if args.command == "verify" and result["violations"]:
        return 1
    return 0


def main() -> None:
    sys.exit(run_command())
