"""Optional SVG rendering of experiment tables (presentation only).

Requires matplotlib; install the package with the ``plots`` extra.
"""

from __future__ import annotations

from pathlib import Path


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def _lines_by_group(plt, table, x_col, y_col, group_col, ax=None):
    ax = ax or plt.gca()
    groups = sorted(set(table.column(group_col)))
    for g in groups:
        sub = table.select(**{group_col: g})
        xs = sub.column(x_col)
        ys = sub.column(y_col)
        order = sorted(range(len(xs)), key=lambda i: xs[i])
        ax.plot([xs[i] for i in order], [ys[i] for i in order],
                marker="o", markersize=3, label=f"{group_col}={g}")
    ax.set_xlabel(x_col)
    ax.set_ylabel(y_col)
    ax.legend(fontsize=7)


def render_plots(result, out_dir) -> None:
    plt = _pyplot()
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    def save(name):
        plt.tight_layout()
        plt.savefig(out / f"{name}.svg")
        plt.close()

    family = result.family
    tables = result.tables
    if family in ("compare-algorithms",):
        plt.figure(figsize=(6, 4))
        _lines_by_group(plt, tables["aggregate"], "l", "mean_r", "algorithm")
        save("damage_vs_l")
    elif family == "beta-sweep":
        plt.figure(figsize=(6, 4))
        _lines_by_group(plt, tables["ipga_by_beta"], "l", "mean_r", "beta")
        save("ipga_by_beta")
    elif family == "size-sweep":
        plt.figure(figsize=(6, 4))
        _lines_by_group(plt, tables["gaps"], "l", "gap", "size")
        save("gap_vs_l")
    elif family == "attack-law":
        plt.figure(figsize=(6, 4))
        _lines_by_group(plt, tables["dhat_by_gamma_rho"], "gamma",
                        "mean_mean_degree", "rho")
        save("dhat_vs_gamma")
        plt.figure(figsize=(6, 4))
        _lines_by_group(plt, tables["dhat_by_gamma_rho"], "rho",
                        "mean_mean_degree", "gamma")
        save("dhat_vs_rho")
    elif family == "convergence":
        plt.figure(figsize=(6, 4))
        hist = tables["history"]
        for rep in sorted(set(hist.column("replicate"))):
            sub = hist.select(replicate=rep)
            style = {"lw": 2, "color": "tab:blue"} if rep == "mean" else {
                "lw": 0.6, "alpha": 0.4}
            plt.plot(sub.column("generation"), sub.column("best_fitness"), **style)
        plt.xlabel("generation")
        plt.ylabel("best fitness")
        save("convergence")
    elif family == "runtime":
        plt.figure(figsize=(6, 4))
        _lines_by_group(plt, tables["results"], "l", "seconds", "gen")
        save("runtime")
