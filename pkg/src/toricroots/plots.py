"""Figure rendering for analysis reports.

Writes matplotlib figures next to the delimited summary: the ray diagram
(direct for surfaces, pairwise coordinate projections otherwise), the root
diagram for surfaces, and the alpha matrix with the preorder verdict.
Numbers are converted to floats here and only here; everything the
figures show was computed exactly upstream.
"""

import csv
from pathlib import Path

from .analyze import Analysis
from .report import star_notation

FIG_DPI = 150
RAY_COLOR = "#1f5fa8"
EXTRA_COLOR = "#b34700"
SEMISIMPLE_COLOR = "#2a7f3f"
UNIPOTENT_COLOR = "#8a2a7f"


def _plt():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def _arrows(ax, vectors, labels, color):
    for vec, label in zip(vectors, labels):
        ax.annotate(
            "",
            xy=(float(vec[0]), float(vec[1])),
            xytext=(0, 0),
            arrowprops=dict(arrowstyle="->", color=color, lw=1.6),
        )
        ax.annotate(
            label,
            xy=(float(vec[0]) * 1.12, float(vec[1]) * 1.12),
            ha="center",
            va="center",
            fontsize=9,
        )


def _frame(ax, vectors):
    lim = max(
        (abs(float(c)) for vec in vectors for c in vec), default=1.0
    ) * 1.3 + 0.2
    ax.set_xlim(-lim, lim)
    ax.set_ylim(-lim, lim)
    ax.axhline(0, color="0.85", lw=0.8, zorder=0)
    ax.axvline(0, color="0.85", lw=0.8, zorder=0)
    ax.set_aspect("equal")


def render_rays_figure(analysis: Analysis, path: Path) -> Path:
    plt = _plt()
    rs = analysis.rays
    basis = set(analysis.structure.basis_indices) if analysis.structure else set()
    if rs.dim == 2:
        fig, ax = plt.subplots(figsize=(4.2, 4.2))
        axes_vectors = [(ax, rs.rays, None)]
    else:
        pairs = [
            (a, b) for a in range(rs.dim) for b in range(a + 1, rs.dim)
        ]
        cols = min(3, len(pairs))
        rows = (len(pairs) + cols - 1) // cols
        fig, axmat = plt.subplots(
            rows, cols, figsize=(3.4 * cols, 3.4 * rows), squeeze=False
        )
        axes_vectors = []
        for k, (a, b) in enumerate(pairs):
            ax = axmat[k // cols][k % cols]
            ax.set_title(f"coords {a + 1}, {b + 1}", fontsize=9)
            axes_vectors.append(
                (ax, [(r[a], r[b]) for r in rs.rays], (a, b))
            )
        for k in range(len(pairs), rows * cols):
            axmat[k // cols][k % cols].axis("off")
    for ax, vectors, _ in axes_vectors:
        _frame(ax, vectors)
        for i, vec in enumerate(vectors):
            color = RAY_COLOR if i in basis else EXTRA_COLOR
            _arrows(ax, [vec], [f"p{i + 1}"], color)
    fig.suptitle(f"rays of {analysis.fan.label or 'fan'}", fontsize=11)
    fig.tight_layout()
    fig.savefig(path, dpi=FIG_DPI)
    plt.close(fig)
    return path


def render_roots_figure(analysis: Analysis, path: Path) -> Path:
    """Root diagram in the dual plane; surfaces only."""
    plt = _plt()
    cat = analysis.catalog
    fig, ax = plt.subplots(figsize=(4.2, 4.2))
    vectors = [e for roots in cat.per_ray for e in roots] or [(1, 1)]
    _frame(ax, vectors)
    for i, roots in enumerate(cat.per_ray):
        for e in roots:
            color = (
                SEMISIMPLE_COLOR if e in cat.semisimple else UNIPOTENT_COLOR
            )
            label = (
                star_notation(analysis.structure, e)
                if analysis.structure
                else f"R{i + 1}"
            )
            _arrows(ax, [e], [label], color)
    ax.set_title(
        f"Demazure roots of {analysis.fan.label or 'fan'} "
        f"(dim U = {cat.unipotent_dim})",
        fontsize=10,
    )
    fig.tight_layout()
    fig.savefig(path, dpi=FIG_DPI)
    plt.close(fig)
    return path


def render_alpha_figure(analysis: Analysis, path: Path) -> Path:
    plt = _plt()
    s = analysis.structure
    assert s is not None
    rows = [list(map(float, r)) for r in s.alpha]
    fig, ax = plt.subplots(
        figsize=(1.2 + 0.7 * s.n, 1.2 + 0.7 * len(rows))
    )
    ax.imshow(rows, cmap="YlOrBr", aspect="equal")
    for j, row in enumerate(s.alpha):
        for i, v in enumerate(row):
            ax.text(i, j, str(v), ha="center", va="center", fontsize=10)
    ax.set_xticks(range(s.n))
    ax.set_xticklabels([f"p{i + 1}" for i in s.basis_indices])
    ax.set_yticks(range(len(rows)))
    ax.set_yticklabels([f"p{i + 1}" for i in s.extra_indices])
    verdict = analysis.verdict
    tail = ""
    if verdict is not None:
        tail = " (unique)" if verdict.unique else " (not unique)"
    ax.set_title(f"alpha of {analysis.fan.label or 'fan'}{tail}", fontsize=10)
    fig.tight_layout()
    fig.savefig(path, dpi=FIG_DPI)
    plt.close(fig)
    return path


def render_figures(analysis: Analysis, outdir) -> list[Path]:
    """Render every figure that applies to this analysis."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    stem = (analysis.fan.label or "fan").replace(" ", "_")
    paths = []
    if analysis.rays.dim >= 2:
        paths.append(
            render_rays_figure(analysis, outdir / f"{stem}_rays.png")
        )
    if analysis.rays.dim == 2:
        paths.append(
            render_roots_figure(analysis, outdir / f"{stem}_roots.png")
        )
    if analysis.structure is not None:
        paths.append(
            render_alpha_figure(analysis, outdir / f"{stem}_alpha.png")
        )
    return paths


def write_summary_csv(analyses, path) -> Path:
    """One delimited row per analyzed fan."""
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(
            [
                "label",
                "dim",
                "rays",
                "existence",
                "dim_unipotent",
                "collections",
                "unique",
            ]
        )
        for a in analyses:
            writer.writerow(
                [
                    a.fan.label or "",
                    a.rays.dim,
                    a.rays.m,
                    a.existence,
                    a.catalog.unipotent_dim,
                    len(a.collections),
                    a.verdict.unique if a.verdict else "",
                ]
            )
    return path
