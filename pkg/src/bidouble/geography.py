"""Atlas of the admissible (K^2, chi) range and its deterministic emission.

One row per admissible integer pair with chi up to a bound.  Covered pairs
carry the certificate summary (geometric genus, irregularity, positivity
verdict, notes); pairs in the uncovered strip are listed with empty fields.
Emission is byte-deterministic: running the same atlas twice produces
identical CSV, JSON and SVG output.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass

from .degenerations import degenerate
from .recipes import (
    COVERED_REGIONS,
    DEGENERABLE_REGIONS,
    GENUS2_GENERAL,
    GENUS3,
    LINE_4CHI_MINUS_4,
    LINE_4CHI_MINUS_5,
    NOETHER_LINE,
    NOT_COVERED,
    PLANE_SPECIAL_12,
    PLANE_SPECIAL_13,
    PRODUCT_LINE,
    admissible,
    classify,
    construct,
)

CSV_COLUMNS = (
    "chi",
    "Ksq",
    "region",
    "constructed",
    "degenerated",
    "pg",
    "q",
    "ampleness",
    "notes",
)

FORMATS = ("csv", "json", "svg")


def canonical_json(doc) -> str:
    """The one JSON serialization used everywhere: sorted keys, two-space
    indent, trailing newline."""
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


@dataclass(frozen=True)
class AtlasRow:
    chi: int
    ksq: int
    region: str
    constructed: bool
    degenerated: bool
    pg: int | None
    q: int | None
    ampleness: str | None
    notes: tuple[str, ...]

    def to_doc(self) -> dict:
        return {
            "chi": self.chi,
            "ksq": self.ksq,
            "region": self.region,
            "constructed": self.constructed,
            "degenerated": self.degenerated,
            "pg": self.pg,
            "q": self.q,
            "ampleness": self.ampleness,
            "notes": list(self.notes),
        }

    def to_csv_row(self) -> list[str]:
        return [
            str(self.chi),
            str(self.ksq),
            self.region,
            str(self.constructed).lower(),
            str(self.degenerated).lower(),
            "" if self.pg is None else str(self.pg),
            "" if self.q is None else str(self.q),
            "" if self.ampleness is None else self.ampleness,
            "; ".join(self.notes),
        ]


def atlas(chi_max: int) -> tuple[AtlasRow, ...]:
    """All admissible pairs with 1 <= chi <= chi_max, in (chi, K^2) order."""
    if chi_max < 1:
        raise ValueError("chi_max must be at least 1")
    rows: list[AtlasRow] = []
    for chi in range(1, chi_max + 1):
        for ksq in range(max(1, 2 * chi - 6), 9 * chi + 1):
            assert admissible(ksq, chi)
            region = classify(ksq, chi)
            if region not in COVERED_REGIONS:
                rows.append(
                    AtlasRow(chi, ksq, region, False, False, None, None, None, ())
                )
                continue
            cert = construct(ksq, chi)
            degenerated = (
                region in DEGENERABLE_REGIONS and degenerate(cert).ok
            )
            rows.append(
                AtlasRow(
                    chi,
                    ksq,
                    region,
                    cert.ok,
                    degenerated,
                    cert.invariants.pg,
                    cert.invariants.q,
                    cert.ampleness,
                    cert.notes,
                )
            )
    return tuple(rows)


def _emit_csv(rows: tuple[AtlasRow, ...]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        writer.writerow(row.to_csv_row())
    return buf.getvalue()


def _emit_json(rows: tuple[AtlasRow, ...]) -> str:
    chi_max = max((r.chi for r in rows), default=0)
    return canonical_json({"chiMax": chi_max, "rows": [r.to_doc() for r in rows]})


REGION_FILL = {
    NOETHER_LINE: "#1f77b4",
    PLANE_SPECIAL_12: "#9467bd",
    PLANE_SPECIAL_13: "#8c564b",
    GENUS2_GENERAL: "#2ca02c",
    LINE_4CHI_MINUS_5: "#d62728",
    LINE_4CHI_MINUS_4: "#ff7f0e",
    GENUS3: "#17becf",
    PRODUCT_LINE: "#e377c2",
    NOT_COVERED: "#d9d9d9",
}

# the five reference lines drawn on every chart: (label, slope, intercept)
GUIDE_LINES = (
    ("Ksq = 2chi - 6", 2, -6),
    ("Ksq = 4chi - 4", 4, -4),
    ("Ksq = 8chi - 8", 8, -8),
    ("Ksq = 8chi", 8, 0),
    ("Ksq = 9chi", 9, 0),
)

_CELL_W = 20
_CELL_H = 2
_MARGIN = 40


def _emit_svg(rows: tuple[AtlasRow, ...]) -> str:
    chi_max = max(r.chi for r in rows)
    kmax = 9 * chi_max
    width = 2 * _MARGIN + chi_max * _CELL_W + 180
    height = 2 * _MARGIN + (kmax + 6) * _CELL_H

    def cx(chi: int) -> int:
        return _MARGIN + (chi - 1) * _CELL_W

    def cy(ksq: int) -> int:
        return _MARGIN + (kmax - ksq) * _CELL_H

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="#ffffff"/>',
        f'<text x="{_MARGIN}" y="{_MARGIN - 16}" font-family="monospace" '
        f'font-size="14">geography of covered pairs, chi up to {chi_max}</text>',
    ]
    for row in rows:
        fill = REGION_FILL[row.region]
        parts.append(
            f'<rect x="{cx(row.chi)}" y="{cy(row.ksq)}" width="{_CELL_W}" '
            f'height="{_CELL_H}" fill="{fill}"><title>chi={row.chi} Ksq={row.ksq} '
            f"{row.region}</title></rect>"
        )
    for label, slope, intercept in GUIDE_LINES:
        x1 = cx(1) + _CELL_W // 2
        y1 = cy(slope * 1 + intercept) + _CELL_H // 2
        x2 = cx(chi_max) + _CELL_W // 2
        y2 = cy(slope * chi_max + intercept) + _CELL_H // 2
        parts.append(
            f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="#000000" '
            f'stroke-dasharray="4 3"/>'
        )
        parts.append(
            f'<text x="{x2 + 4}" y="{y2 + 4}" font-family="monospace" '
            f'font-size="10">{label}</text>'
        )
    legend_x = _MARGIN + chi_max * _CELL_W + 60
    legend_y = _MARGIN + 20
    for i, (region, fill) in enumerate(sorted(REGION_FILL.items())):
        y = legend_y + 18 * i
        parts.append(
            f'<rect x="{legend_x}" y="{y}" width="12" height="12" fill="{fill}"/>'
        )
        parts.append(
            f'<text x="{legend_x + 18}" y="{y + 10}" font-family="monospace" '
            f'font-size="10">{region}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def emit(rows: tuple[AtlasRow, ...], fmt: str) -> str:
    """Serialize atlas rows; identical rows always give identical bytes."""
    if fmt == "csv":
        return _emit_csv(rows)
    if fmt == "json":
        return _emit_json(rows)
    if fmt == "svg":
        return _emit_svg(rows)
    raise ValueError(f"unknown atlas format {fmt!r}; expected one of {FORMATS}")
