"""Static charts of spectral sequence pages.

Classes are plotted at (integer degree, filtration); the alpha-coordinate of
the degree picks the colour. Output is byte-stable: no timestamps, fixed
hash salt for SVG ids.
"""
from __future__ import annotations

import io
from collections import defaultdict
from typing import Dict, List, Tuple

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .borel_ss import SSPage  # noqa: E402


def _layout(dump: dict) -> Dict[Tuple[int, int], List[dict]]:
    spots: Dict[Tuple[int, int], List[dict]] = defaultdict(list)
    for c in dump["classes"]:
        spots[(c["deg"][0], c["s"])].append(c)
    return spots


def svg_chart(page_or_dump, title: str = "") -> str:
    dump = page_or_dump.dump() if isinstance(page_or_dump, SSPage) else page_or_dump
    spots = _layout(dump)
    alphas = sorted({c["deg"][1] for c in dump["classes"]})
    cmap = plt.get_cmap("viridis", max(len(alphas), 1))
    colour = {a: cmap(i) for i, a in enumerate(alphas)}

    matplotlib.rcParams["svg.hashsalt"] = "borel-descent"
    fig, ax = plt.subplots(figsize=(10, 6))
    for (x, s), cls in sorted(spots.items()):
        m = len(cls)
        for i, c in enumerate(sorted(cls, key=lambda c: (c["deg"][1], c["name"]))):
            dx = (i - (m - 1) / 2) * 0.12
            filled = c["group"] == "Z"
            ax.plot(x + dx, s, "o", ms=5, color=colour[c["deg"][1]],
                    markerfacecolor=colour[c["deg"][1]] if filled else "white")
    for a in alphas:
        ax.plot([], [], "o", color=colour[a], label=f"alpha coeff {a}")
    ax.set_xlabel("degree (integer part)")
    ax.set_ylabel("filtration s")
    ax.set_title(title or f"E_{dump['r']} page")
    ax.grid(True, lw=0.3)
    if alphas and len(alphas) <= 12:
        ax.legend(fontsize=7, loc="upper left", bbox_to_anchor=(1.0, 1.0))
    buf = io.StringIO()
    fig.savefig(buf, format="svg", bbox_inches="tight", metadata={"Date": None, "Creator": None})
    plt.close(fig)
    return buf.getvalue()


def text_chart(page_or_dump) -> str:
    """Grid with one row per filtration; a cell counts classes (Z, finite) at that spot."""
    dump = page_or_dump.dump() if isinstance(page_or_dump, SSPage) else page_or_dump
    spots = _layout(dump)
    if not spots:
        return "(empty page)\n"
    xs = sorted({x for x, _ in spots})
    ss = sorted({s for _, s in spots}, reverse=True)

    def cell(cls):
        if not cls:
            return "."
        free = sum(c["group"] == "Z" for c in cls)
        tors = len(cls) - free
        return f"{free}" if not tors else f"{free}+{tors}t"

    cells = {(x, s): cell(spots.get((x, s), [])) for x in xs for s in ss}
    width = max(max(len(str(x)) for x in xs), max(len(c) for c in cells.values())) + 1
    lines = ["s\\deg".ljust(6) + "".join(str(x).rjust(width) for x in xs)]
    for s in ss:
        lines.append(str(s).ljust(6) + "".join(cells[(x, s)].rjust(width) for x in xs))
    return "\n".join(lines) + "\n"
