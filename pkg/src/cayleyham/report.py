"""Grid runs: build and verify a cycle for each parameter triple, collect timing
rows, and optionally draw them."""

from __future__ import annotations

import csv
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from typing import Iterable, Optional, Sequence, TextIO

from .constructions import construct
from .group_core import GroupParams
from .verifier import verify_hamiltonian


@dataclass
class GridRow:
    d: int
    e: int
    n: int
    group: str
    order: int
    length: int
    valid: bool
    provenance: str
    build_s: float
    verify_s: float


FIELDS = list(GridRow.__dataclass_fields__)


def run_one(triple: tuple[int, int, int]) -> GridRow:
    params = GroupParams(*triple)
    t0 = time.perf_counter()
    cyc = construct(params)
    built = time.perf_counter() - t0
    rep = verify_hamiltonian(params, None, cyc.word, cyc.provenance)
    return GridRow(
        params.d,
        params.e,
        params.n,
        params.name,
        params.order,
        len(cyc.word),
        rep.valid,
        cyc.provenance,
        round(built, 6),
        round(rep.elapsed, 6),
    )


def run_grid(grid: Iterable[GroupParams], jobs: int = 1) -> list[GridRow]:
    triples = [(p.d, p.e, p.n) for p in grid]
    if jobs <= 1:
        return [run_one(t) for t in triples]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(run_one, triples))


def write_csv(rows: Sequence[GridRow], fh: TextIO) -> None:
    writer = csv.DictWriter(fh, fieldnames=FIELDS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(asdict(row))


def plot_grid(rows: Sequence[GridRow], path, title: Optional[str] = None) -> None:
    """Build and verification time against group order, one colour per n."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, axes = plt.subplots(1, 2, figsize=(10, 4), sharex=True)
    ns = sorted({r.n for r in rows})
    cmap = plt.get_cmap("viridis", max(len(ns), 2))
    for i, n in enumerate(ns):
        sub = [r for r in rows if r.n == n]
        x = [r.order for r in sub]
        for ax, key in zip(axes, ("build_s", "verify_s")):
            y = [max(getattr(r, key), 1e-6) for r in sub]
            ax.scatter(x, y, s=14, color=cmap(i), label=f"n={n}")
    bad = [r for r in rows if not r.valid]
    if bad:
        axes[0].scatter(
            [r.order for r in bad], [max(r.build_s, 1e-6) for r in bad],
            marker="x", color="red", s=40, label="invalid",
        )
    for ax, what in zip(axes, ("construction", "verification")):
        ax.set_xscale("log")
        ax.set_yscale("log")
        ax.set_xlabel("group order")
        ax.set_ylabel(f"{what} time [s]")
        ax.grid(True, which="major", alpha=0.3)
    axes[0].legend(fontsize=8, frameon=False)
    fig.suptitle(title or f"{len(rows)} groups, {sum(r.valid for r in rows)} valid")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
