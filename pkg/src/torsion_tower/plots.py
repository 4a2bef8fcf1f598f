"""Static SVG figures for batch output.

The visual grammar is fixed: x is volume (linear or log), y is the tr
statistic, blue markers are covers with b_1 = 0, red markers covers with
b_1 > 0, and scatter plots carry a horizontal reference line at tr = 1.
Figures are rendered with matplotlib's SVG backend with glyphs outlined as
paths, so the files are standalone XML with no external references.
"""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

B1_ZERO_COLOR = "blue"
B1_POSITIVE_COLOR = "red"


class NoPlottableRecords(ValueError):
    """No error-free records to draw."""


def _plottable(records):
    recs = [r for r in records if r.ok]
    if not recs:
        raise NoPlottableRecords("every record carries an error")
    return recs


def _save(fig, path):
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)


def emit_scatter_svg(records, path, log_x=False, color_by_b1=True):
    """Volume/tr scatter plot with the b_1 color split and a tr = 1 line."""
    recs = _plottable(records)
    fig, ax = plt.subplots(figsize=(7, 4.5))
    groups = [
        ("b1-zero", B1_ZERO_COLOR, [r for r in recs if r.b1 == 0]),
        ("b1-positive", B1_POSITIVE_COLOR, [r for r in recs if r.b1 > 0]),
    ]
    if not color_by_b1:
        groups = [("all", B1_ZERO_COLOR, recs)]
    for gid, color, group in groups:
        if group:
            ax.scatter([r.volume for r in group], [r.tr for r in group],
                       s=16, c=color, gid=f"markers-{gid}", zorder=3)
    ax.axhline(1.0, color="black", linewidth=0.8, linestyle="--",
               gid="tr-reference-line", zorder=2)
    if log_x:
        ax.set_xscale("log")
    ax.set_xlabel("vol(M)")
    ax.set_ylabel("TR(M)")
    fig.tight_layout()
    _save(fig, path)


def emit_histogram_svg(records, path, bins=20, split_by_b1=False):
    """Histogram of tr values, optionally split into the two b_1 classes."""
    recs = _plottable(records)
    fig, ax = plt.subplots(figsize=(7, 4.5))
    if split_by_b1:
        zero = [r.tr for r in recs if r.b1 == 0]
        pos = [r.tr for r in recs if r.b1 > 0]
        lo = min(r.tr for r in recs)
        hi = max(r.tr for r in recs)
        span = (lo, hi) if hi > lo else (lo - 0.5, hi + 0.5)
        if zero:
            ax.hist(zero, bins=bins, range=span, color=B1_ZERO_COLOR,
                    alpha=0.6, gid="hist-b1-zero", label="b1 = 0")
        if pos:
            ax.hist(pos, bins=bins, range=span, color=B1_POSITIVE_COLOR,
                    alpha=0.6, gid="hist-b1-positive", label="b1 > 0")
        ax.legend()
    else:
        ax.hist([r.tr for r in recs], bins=bins, color=B1_ZERO_COLOR,
                gid="hist-all")
    ax.set_xlabel("TR(M)")
    ax.set_ylabel("count")
    fig.tight_layout()
    _save(fig, path)
