"""
SVG pictures of chord diagrams and chord words.

Diagrams: a circle with 2n equally spaced endpoints, one straight chord per
label, and a small marker at each crossing.  Words: m vertical strands, one
horizontal chord per generator (top to bottom in word order), and an arc on
the right of each strand standing for the closure.
"""

from __future__ import annotations

import math
import os
import xml.etree.ElementTree as ET
from pathlib import Path

from .braidword import ChordWord
from .diagram import ChordDiagram

SVG_NS = "http://www.w3.org/2000/svg"


def _num(x: float) -> str:
    text = f"{x:.3f}".rstrip("0").rstrip(".")
    return "0" if text == "-0" else text


def _svg(width: float, height: float, title: str) -> ET.Element:
    root = ET.Element(
        "svg",
        {
            "xmlns": SVG_NS,
            "version": "1.1",
            "width": _num(width),
            "height": _num(height),
            "viewBox": f"0 0 {_num(width)} {_num(height)}",
        },
    )
    ET.SubElement(root, "title").text = title
    return root


def _segment_intersection(p, q, r, s) -> tuple[float, float] | None:
    d = (q[0] - p[0]) * (s[1] - r[1]) - (q[1] - p[1]) * (s[0] - r[0])
    if abs(d) < 1e-12:
        return None
    t = ((r[0] - p[0]) * (s[1] - r[1]) - (r[1] - p[1]) * (s[0] - r[0])) / d
    return p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])


def diagram_svg(d: ChordDiagram, radius: float = 120.0) -> ET.Element:
    margin = 30.0
    size = 2 * (radius + margin)
    cx = cy = radius + margin
    root = _svg(size, size, f"chord diagram {d.name_str()}")
    ET.SubElement(root, "desc").text = f"{d.n} chords, {len(d.crossings)} crossings"
    ET.SubElement(
        root, "circle",
        {"class": "circle", "cx": _num(cx), "cy": _num(cy), "r": _num(radius),
         "fill": "none", "stroke": "black"},
    )
    count = 2 * d.n
    points = []
    for k in range(count):
        # start at the top, go clockwise
        angle = 2 * math.pi * k / max(count, 1) - math.pi / 2
        points.append((cx + radius * math.cos(angle), cy + radius * math.sin(angle), angle))

    chords = ET.SubElement(root, "g", {"class": "chords"})
    for label in sorted(d.endpoints):
        a, b = d.endpoints[label]
        ET.SubElement(
            chords, "line",
            {"class": "chord", "data-chord": str(label),
             "x1": _num(points[a][0]), "y1": _num(points[a][1]),
             "x2": _num(points[b][0]), "y2": _num(points[b][1]),
             "stroke": "steelblue"},
        )
    marks = ET.SubElement(root, "g", {"class": "crossings"})
    for edge in sorted(tuple(sorted(e)) for e in d.crossings):
        (a1, b1), (a2, b2) = (d.endpoints[c] for c in edge)
        hit = _segment_intersection(points[a1][:2], points[b1][:2], points[a2][:2], points[b2][:2])
        if hit is None:
            continue
        ET.SubElement(
            marks, "circle",
            {"class": "crossing", "data-chords": f"{edge[0]},{edge[1]}",
             "cx": _num(hit[0]), "cy": _num(hit[1]), "r": "2.5", "fill": "crimson"},
        )
    ends = ET.SubElement(root, "g", {"class": "endpoints"})
    for k, (x, y, angle) in enumerate(points):
        label = d.canonical[k]
        ET.SubElement(
            ends, "circle",
            {"class": "endpoint", "cx": _num(x), "cy": _num(y), "r": "4", "fill": "black"},
        )
        ET.SubElement(
            ends, "text",
            {"class": "label",
             "x": _num(cx + (radius + 16) * math.cos(angle)),
             "y": _num(cy + (radius + 16) * math.sin(angle) + 4),
             "text-anchor": "middle", "font-size": "12"},
        ).text = str(label)
    return root


def word_svg(w: ChordWord, gap: float = 40.0, step: float = 30.0) -> ET.Element:
    rows = max(len(w), 1)
    margin = 30.0
    top, bottom = margin, margin + step * (rows + 1)
    width = 2 * margin + gap * w.m + gap  # room on the right for closure arcs
    height = bottom + margin
    root = _svg(width, height, f"chord word {w}")
    ET.SubElement(root, "desc").text = f"{w.m} strands, {len(w)} chords"

    def x(s: int) -> float:
        return margin + gap * (s - 1)

    strands = ET.SubElement(root, "g", {"class": "strands"})
    closure = ET.SubElement(root, "g", {"class": "closures"})
    right = x(w.m) + gap * 0.5
    for s in range(1, w.m + 1):
        ET.SubElement(
            strands, "line",
            {"class": "strand", "data-strand": str(s), "x1": _num(x(s)), "y1": _num(top),
             "x2": _num(x(s)), "y2": _num(bottom), "stroke": "black"},
        )
        # go round from the bottom of strand s to the top of strand s+1
        nxt = s % w.m + 1
        reach = right + gap * 0.4 * s / w.m
        ET.SubElement(
            closure, "path",
            {"class": "closure-arc", "data-strand": str(s),
             "d": f"M {_num(x(s))} {_num(bottom)} C {_num(x(s))} {_num(bottom + margin)} "
                  f"{_num(reach)} {_num(bottom + margin)} {_num(reach)} {_num(bottom)} "
                  f"L {_num(reach)} {_num(top)} C {_num(reach)} {_num(top - margin)} "
                  f"{_num(x(nxt))} {_num(top - margin)} {_num(x(nxt))} {_num(top)}",
             "fill": "none", "stroke": "gray", "stroke-dasharray": "4 3"},
        )
    chords = ET.SubElement(root, "g", {"class": "chords"})
    for k, (i, j) in enumerate(w.gens, start=1):
        y = top + step * k
        ET.SubElement(
            chords, "line",
            {"class": "chord", "data-chord": str(k), "x1": _num(x(i)), "y1": _num(y),
             "x2": _num(x(j)), "y2": _num(y), "stroke": "steelblue", "stroke-width": "2"},
        )
        for s in (i, j):
            ET.SubElement(
                chords, "circle",
                {"class": "endpoint", "cx": _num(x(s)), "cy": _num(y), "r": "3", "fill": "black"},
            )
    return root


def to_svg_text(subject: ChordDiagram | ChordWord) -> str:
    root = diagram_svg(subject) if isinstance(subject, ChordDiagram) else word_svg(subject)
    ET.indent(root)
    return '<?xml version="1.0" encoding="UTF-8"?>\n' + ET.tostring(root, encoding="unicode") + "\n"


def render_svg(subject: ChordDiagram | ChordWord, out: str | os.PathLike) -> Path:
    path = Path(out)
    path.write_text(to_svg_text(subject))
    return path
