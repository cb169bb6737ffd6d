"""Lossless JSON forms for polygons and verify reports."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from .params import Param, PlaidError
from .grid import PlaidPolygon

FORMAT_VERSION = 1


def _frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 \
        else str(x.numerator)


def _parse_frac(s: str) -> Fraction:
    return Fraction(s)


def polygon_document(param: Param,
                     blocks: Sequence[Tuple[int, int]],
                     polygons: Dict[Tuple[int, int], Sequence[PlaidPolygon]]
                     ) -> dict:
    return {
        "format": FORMAT_VERSION,
        "param": [param.p, param.q],
        "blocks": [list(b) for b in blocks],
        "polygons": [
            {
                "block": list(block),
                "vertices": [[_frac_str(x), _frac_str(y)]
                             for x, y in pg.vertices],
            }
            for block in blocks
            for pg in polygons[block]
        ],
    }


def emit(doc: dict) -> str:
    """Canonical byte form; emitting a parsed document reproduces it."""
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def parse_polygon_document(text: str) -> dict:
    doc = json.loads(text)
    if doc.get("format") != FORMAT_VERSION:
        raise PlaidError(f"unsupported format {doc.get('format')!r}")
    return doc


def document_polygons(doc: dict) -> Dict[Tuple[int, int], List[PlaidPolygon]]:
    out: Dict[Tuple[int, int], List[PlaidPolygon]] = {}
    for entry in doc["polygons"]:
        verts2 = tuple(
            (int(2 * _parse_frac(x)), int(2 * _parse_frac(y)))
            for x, y in entry["vertices"])
        out.setdefault(tuple(entry["block"]), []).append(PlaidPolygon(verts2))
    return out


def report_line(record: dict) -> str:
    return json.dumps(record, sort_keys=True, separators=(",", ":"))
