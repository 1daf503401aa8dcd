"""Root-set artifacts: CSV rows, JSON documents and an SVG scatter plot."""

from __future__ import annotations

import csv
import io
import json
import math

from .exactpoly import IntPolynomial
from .roots import ComplexRootSet

CSV_HEADER = ("re", "im", "multiplicity", "orbit_id", "residual")
SIZE = 800
MARGIN = 50


def _g17(x: float) -> str:
    return format(x, ".17g")


def roots_to_csv(rs: ComplexRootSet) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for root, oid in zip(rs.roots, rs.orbit_ids):
        z = root.value
        writer.writerow([_g17(z.real), _g17(z.imag), root.multiplicity, oid, _g17(root.residual)])
    return buf.getvalue()


def roots_to_dict(rs: ComplexRootSet, poly: IntPolynomial | None = None) -> dict:
    d = {"r": rs.r, "degree": rs.degree}
    if poly is not None:
        d["polynomial"] = [str(c) for c in poly.coeffs]
    d["roots"] = [
        {
            "re": root.value.real,
            "im": root.value.imag,
            "multiplicity": root.multiplicity,
            "orbit_id": oid,
            "residual": root.residual,
        }
        for root, oid in zip(rs.roots, rs.orbit_ids)
    ]
    return d


def roots_to_json(rs: ComplexRootSet, poly: IntPolynomial | None = None, **extra) -> str:
    d = roots_to_dict(rs, poly)
    d.update(extra)
    return json.dumps(d, indent=2)


def _nice_extent(rs: ComplexRootSet) -> float:
    far = max((abs(root.value) for root in rs.roots), default=0.0)
    return max(1.25, math.ceil(far * 1.1 * 4) / 4)


def render_svg(rs: ComplexRootSet, title: str = "") -> str:
    """Scatter of the zeros with axes, the unit circle and r guide rays.

    Self-contained: inline styles only, fixed 800x800 viewport.
    """
    extent = _nice_extent(rs)
    c = SIZE / 2
    scale = (SIZE / 2 - MARGIN) / extent

    def px(z: complex) -> tuple[str, str]:
        return f"{c + z.real * scale:.2f}", f"{c - z.imag * scale:.2f}"

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
        f'viewBox="0 0 {SIZE} {SIZE}">',
        f'<rect x="0" y="0" width="{SIZE}" height="{SIZE}" style="fill:#ffffff"/>',
    ]
    lo, hi = MARGIN / 2, SIZE - MARGIN / 2
    out.append(f'<line x1="{lo}" y1="{c}" x2="{hi}" y2="{c}" style="stroke:#444444;stroke-width:1"/>')
    out.append(f'<line x1="{c}" y1="{lo}" x2="{c}" y2="{hi}" style="stroke:#444444;stroke-width:1"/>')
    out.append(
        f'<circle cx="{c}" cy="{c}" r="{scale:.2f}" '
        'style="fill:none;stroke:#999999;stroke-width:1;stroke-dasharray:4 3"/>'
    )
    for k in range(rs.r if rs.r > 1 else 0):
        end = px(extent * complex(math.cos(2 * math.pi * k / rs.r), math.sin(2 * math.pi * k / rs.r)))
        out.append(
            f'<line x1="{c}" y1="{c}" x2="{end[0]}" y2="{end[1]}" '
            'style="stroke:#c8c8e6;stroke-width:1"/>'
        )
    for tick in (-1, 1):
        x, _ = px(complex(tick, 0))
        _, y = px(complex(0, tick))
        out.append(f'<text x="{x}" y="{c + 16}" style="font:12px sans-serif;fill:#444444;text-anchor:middle">{tick}</text>')
        out.append(f'<text x="{c - 8}" y="{y}" style="font:12px sans-serif;fill:#444444;text-anchor:end">{tick}i</text>')
    for root in rs.roots:
        x, y = px(root.value)
        out.append(f'<circle cx="{x}" cy="{y}" r="4" style="fill:#c0392b;stroke:#000000;stroke-width:0.5"/>')
        if root.multiplicity > 1:
            out.append(
                f'<text x="{float(x) + 6:.2f}" y="{float(y) - 6:.2f}" '
                f'style="font:11px sans-serif;fill:#000000">×{root.multiplicity}</text>'
            )
    if title:
        out.append(f'<text x="{c}" y="24" style="font:16px sans-serif;fill:#000000;text-anchor:middle">{_escape(title)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
