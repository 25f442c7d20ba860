"""Turn the sweep runner's CSV files into figures.

Three kinds are supported, one per CSV schema:

  fringe        phi_rad,p2_cond,p1_cond,success_prob
  duality-beta  beta_rad,V,D,V2_plus_D2,Vg,Dg,Vg2_plus_Dg2
  generalized   beta_rad,... (above), optionally plus alpha_rad,Vg,Dg,Vg2_plus_Dg2

Rendering is deterministic: fixed DPI and fonts, no timestamps in the output.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

SCHEMA_LINE = "# schema=1"

HEADERS = {
    "fringe": "phi_rad,p2_cond,p1_cond,success_prob",
    "duality-beta": "beta_rad,V,D,V2_plus_D2,Vg,Dg,Vg2_plus_Dg2",
    "sweep-alpha": "alpha_rad,Vg,Dg,Vg2_plus_Dg2",
}

KINDS = ("fringe", "duality-beta", "generalized")
FORMATS = (".png", ".svg")

_RC = {
    "figure.dpi": 150,
    "savefig.dpi": 150,
    "font.family": "DejaVu Sans",
    "font.size": 10,
    "svg.hashsalt": "qmzi-figures",
    "axes.grid": True,
    "grid.alpha": 0.3,
}


class SchemaError(Exception):
    """Input CSV does not match the expected schema."""


@dataclass(frozen=True)
class FigureSpec:
    kind: str
    inputs: tuple[str, ...]
    out: str

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}, got {self.kind!r}")
        if not self.inputs:
            raise ValueError("at least one input CSV is required")
        suffix = Path(self.out).suffix.lower()
        if suffix not in FORMATS:
            raise ValueError(f"output must end in {FORMATS}, got {self.out!r}")


@dataclass
class Table:
    header: str
    columns: dict[str, list[float]] = field(default_factory=dict)

    def __getitem__(self, name: str) -> list[float]:
        return self.columns[name]


def load_table(path: str, expected_header: str) -> Table:
    """Read one schema-versioned CSV, enforcing the expected header."""
    p = Path(path)
    if not p.is_file():
        raise SchemaError(f"input CSV not found: {path}")
    lines = p.read_text(encoding="utf-8").splitlines()
    if not lines or lines[0].strip() != SCHEMA_LINE:
        found = lines[0] if lines else ""
        raise SchemaError(f"{path}: missing '{SCHEMA_LINE}' line, found {found!r}")
    if len(lines) < 3:
        raise SchemaError(f"{path}: no data rows")
    header = lines[1].strip()
    if header != expected_header:
        raise SchemaError(f"{path}: expected header {expected_header!r}, found {header!r}")
    names = header.split(",")
    table = Table(header=header, columns={n: [] for n in names})
    for lineno, line in enumerate(lines[2:], start=3):
        cells = line.split(",")
        if len(cells) != len(names):
            raise SchemaError(f"{path}:{lineno}: expected {len(names)} cells, found {len(cells)}")
        for name, cell in zip(names, cells):
            try:
                table.columns[name].append(float(cell))
            except ValueError:
                raise SchemaError(f"{path}:{lineno}: non-numeric cell {cell!r}") from None
    return table


def rows_above_bound(table: Table, bound: float = 1.0) -> list[tuple[float, float]]:
    """(beta, V^2+D^2) pairs exceeding the classical bound."""
    return [
        (b, s)
        for b, s in zip(table["beta_rad"], table["V2_plus_D2"])
        if s > bound
    ]


def _save(fig, out: str) -> None:
    metadata = {"Date": None} if out.lower().endswith(".svg") else None
    fig.savefig(out, metadata=metadata)
    plt.close(fig)


def _render_fringe(spec: FigureSpec) -> None:
    table = load_table(spec.inputs[0], HEADERS["fringe"])
    with plt.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(5.0, 3.4), constrained_layout=True)
        ax.plot(table["phi_rad"], table["p2_cond"], "o-", ms=2.5, lw=1.0, color="#1f77b4")
        ax.set_xlabel(r"$\varphi$ (rad)")
        ax.set_ylabel(r"$p_2(\varphi)$")
        ax.set_ylim(-0.05, 1.05)
        ax.set_title("Probability that the photon takes Path 2")
        _save(fig, spec.out)


def _render_duality_beta(spec: FigureSpec) -> None:
    table = load_table(spec.inputs[0], HEADERS["duality-beta"])
    beta = table["beta_rad"]
    with plt.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(5.0, 3.6), constrained_layout=True)
        ax.plot(beta, table["V"], "s-", ms=3, lw=1.0, label=r"$V$", color="#2ca02c")
        ax.plot(beta, table["D"], "^-", ms=3, lw=1.0, label=r"$D$", color="#ff7f0e")
        ax.plot(beta, table["V2_plus_D2"], "o-", ms=3, lw=1.2, label=r"$V^2+D^2$", color="#1f77b4")
        ax.axhline(1.0, ls="--", lw=1.2, color="#d62728", label="classical bound")
        above = rows_above_bound(table)
        if above:
            xs, ys = zip(*above)
            ax.plot(xs, ys, "o", ms=7, mfc="none", mec="#d62728", mew=1.4)
        ax.set_xlabel(r"$\beta$ (rad)")
        ax.set_ylabel("value")
        ax.legend(loc="lower center", ncol=2, fontsize=8)
        ax.set_title("Wave and particle knowledge versus the detection basis")
        _save(fig, spec.out)


def _render_generalized(spec: FigureSpec) -> None:
    beta_table = load_table(spec.inputs[0], HEADERS["duality-beta"])
    alpha_table = (
        load_table(spec.inputs[1], HEADERS["sweep-alpha"]) if len(spec.inputs) > 1 else None
    )
    n_panels = 2 if alpha_table is not None else 1
    with plt.rc_context(_RC):
        fig, axes = plt.subplots(
            1, n_panels, figsize=(4.4 * n_panels, 3.4), constrained_layout=True, squeeze=False
        )
        ax = axes[0][0]
        ax.plot(
            beta_table["beta_rad"],
            beta_table["Vg2_plus_Dg2"],
            "o-", ms=3, lw=1.2, color="#1f77b4",
        )
        ax.axhline(1.0, ls="--", lw=1.2, color="#d62728")
        ax.set_xlabel(r"$\beta$ (rad)")
        ax.set_ylabel(r"$V_g^2+D_g^2$")
        ax.set_ylim(0.0, 1.1)
        ax.set_title("(a) combined outcomes vs detection basis")
        if alpha_table is not None:
            ax = axes[0][1]
            ax.plot(
                alpha_table["alpha_rad"],
                alpha_table["Vg2_plus_Dg2"],
                "o-", ms=3, lw=1.2, color="#1f77b4",
            )
            ax.axhline(1.0, ls="--", lw=1.2, color="#d62728")
            ax.set_xlabel(r"$\alpha$ (rad)")
            ax.set_ylabel(r"$V_g^2+D_g^2$")
            ax.set_ylim(0.0, 1.1)
            ax.set_title("(b) combined outcomes vs preparation")
        _save(fig, spec.out)


_RENDERERS = {
    "fringe": _render_fringe,
    "duality-beta": _render_duality_beta,
    "generalized": _render_generalized,
}


def render(spec: FigureSpec) -> None:
    """Render one figure; raises SchemaError for malformed inputs."""
    _RENDERERS[spec.kind](spec)
