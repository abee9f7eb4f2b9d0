"""SVG figure of a Wulff polygon against the bounding square and envelope arcs."""

from __future__ import annotations

from .wulff import WulffPolygon, envelope


def _f(x: float) -> str:
    s = f"{x:.9g}"
    return "0" if s == "-0" else s


def _points(pts) -> str:
    # SVG y grows downward
    return " ".join(f"{_f(x)},{_f(-y)}" for x, y in pts)


def wulff_svg(polygon: WulffPolygon, theta: float, alpha: float, beta: float, arc_points: int = 96) -> str:
    half = 1.0 / (8.0 * alpha)
    side = 2.0 * half
    margin = 0.1 * side
    lo = -half - margin
    span = side + 2 * margin
    stroke = side / 400.0
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{_f(lo)} {_f(lo)} {_f(span)} {_f(span)}" '
        f'width="480" height="480">',
        f"<title>Wulff shape, theta={_f(theta)} alpha={_f(alpha)} beta={_f(beta)}</title>",
        f'<g id="axes" stroke="#999999" stroke-width="{_f(stroke)}">',
        f'<line x1="{_f(lo)}" y1="0" x2="{_f(lo + span)}" y2="0"/>',
        f'<line x1="0" y1="{_f(lo)}" x2="0" y2="{_f(lo + span)}"/>',
        "</g>",
        f'<rect id="bounding-square" x="{_f(-half)}" y="{_f(-half)}" width="{_f(side)}" height="{_f(side)}" '
        f'fill="none" stroke="#000000" stroke-width="{_f(stroke)}"/>',
        '<g id="envelope" fill="none">',
    ]
    for arc in envelope(theta, alpha, beta, arc_points):
        style = (
            f'stroke="#d62728" stroke-width="{_f(2 * stroke)}"'
            if arc.restricted
            else f'stroke="#1f77b4" stroke-width="{_f(stroke)}" stroke-dasharray="{_f(4 * stroke)}"'
        )
        kind = "restricted" if arc.restricted else "full"
        out.append(f'<polyline class="arc-{kind}" data-quadrant="{arc.quadrant}" {style} '
                   f'points="{_points(arc.points)}"/>')
    out.append("</g>")
    out.append(f'<polygon id="wulff" fill="#2ca02c" fill-opacity="0.25" stroke="#2ca02c" '
               f'stroke-width="{_f(2 * stroke)}" points="{_points(polygon.vertices)}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
