"""Minimal deterministic SVG writer.

Byte-identical output for identical inputs matters more here than features,
so coordinates are formatted with a fixed precision and attributes are
emitted in a fixed order.
"""

from __future__ import annotations

from typing import Iterable, List, Optional, Tuple


def fmt(v: float) -> str:
    s = f"{float(v):.4f}"
    return s.rstrip("0").rstrip(".") if "." in s else s


class Canvas:
    def __init__(self, width: float, height: float):
        self.width = width
        self.height = height
        self.parts: List[str] = []

    def comment(self, text: str) -> None:
        self.parts.append(f"<!-- {text.replace('--', '- -')} -->")

    def rect(self, x, y, w, h, fill: str, stroke: Optional[str] = None, width: float = 1.0) -> None:
        extra = f' stroke="{stroke}" stroke-width="{fmt(width)}"' if stroke else ""
        self.parts.append(
            f'<rect x="{fmt(x)}" y="{fmt(y)}" width="{fmt(w)}" height="{fmt(h)}" fill="{fill}"{extra}/>'
        )

    def line(self, x1, y1, x2, y2, stroke: str, width: float = 1.0, dash: Optional[str] = None) -> None:
        extra = f' stroke-dasharray="{dash}"' if dash else ""
        self.parts.append(
            f'<line x1="{fmt(x1)}" y1="{fmt(y1)}" x2="{fmt(x2)}" y2="{fmt(y2)}" '
            f'stroke="{stroke}" stroke-width="{fmt(width)}"{extra}/>'
        )

    def polyline(self, points: Iterable[Tuple[float, float]], stroke: str, width: float = 1.0) -> None:
        pts = " ".join(f"{fmt(x)},{fmt(y)}" for x, y in points)
        self.parts.append(
            f'<polyline points="{pts}" fill="none" stroke="{stroke}" stroke-width="{fmt(width)}"/>'
        )

    def circle(self, cx, cy, r, fill: str) -> None:
        self.parts.append(f'<circle cx="{fmt(cx)}" cy="{fmt(cy)}" r="{fmt(r)}" fill="{fill}"/>')

    def text(self, x, y, s: str, size: float = 12.0, fill: str = "#1a1a1a", anchor: str = "start") -> None:
        esc = s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
        self.parts.append(
            f'<text x="{fmt(x)}" y="{fmt(y)}" font-size="{fmt(size)}" '
            f'font-family="monospace" fill="{fill}" text-anchor="{anchor}">{esc}</text>'
        )

    def tostring(self) -> str:
        head = (
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{fmt(self.width)}" '
            f'height="{fmt(self.height)}" viewBox="0 0 {fmt(self.width)} {fmt(self.height)}">'
        )
        return "\n".join([head, *self.parts, "</svg>"]) + "\n"


def palette_color(index: int) -> str:
    """Deterministic categorical palette; golden-angle hue walk."""
    hue = (index * 137.508) % 360.0
    return _hsl_hex(hue, 0.62, 0.55)


def _hsl_hex(h: float, s: float, l: float) -> str:
    c = (1 - abs(2 * l - 1)) * s
    hp = h / 60.0
    x = c * (1 - abs(hp % 2 - 1))
    if hp < 1:
        r, g, b = c, x, 0.0
    elif hp < 2:
        r, g, b = x, c, 0.0
    elif hp < 3:
        r, g, b = 0.0, c, x
    elif hp < 4:
        r, g, b = 0.0, x, c
    elif hp < 5:
        r, g, b = x, 0.0, c
    else:
        r, g, b = c, 0.0, x
    m = l - c / 2
    to255 = lambda v: max(0, min(255, round((v + m) * 255)))
    return f"#{to255(r):02x}{to255(g):02x}{to255(b):02x}"
