"""Report figures rendered next to the CSV outputs.

CSV stays the machine-readable contract; these are the human-facing bar and
trace views.  Figures are rendered with the Agg backend and fixed metadata
so identical inputs produce byte-identical PNG files.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .cost import MEMORY_ORDER, CalibrationTable
from .core import OperationKind
from .maxmin import ExtremeResult

_PNG_METADATA = {"Software": "limsim"}

_OP_ORDER = (
    OperationKind.WRITE,
    OperationKind.READ,
    OperationKind.SEARCH,
    OperationKind.AND,
)


def save_edp_bars(table: CalibrationTable, size: int, path: str) -> str:
    """Grouped bar chart of the calibrated energy-delay products."""
    fig, ax = plt.subplots(figsize=(8.0, 4.5), dpi=100)
    group_width = 0.8
    bar_width = group_width / len(_OP_ORDER)
    for op_index, op in enumerate(_OP_ORDER):
        xs, ys = [], []
        for mem_index, memory in enumerate(MEMORY_ORDER):
            if not memory.supports(op):
                continue
            xs.append(mem_index - group_width / 2 + (op_index + 0.5) * bar_width)
            ys.append(table.lookup(memory, op, size))
        ax.bar(xs, ys, width=bar_width, label=op.value)
    ax.set_xticks(range(len(MEMORY_ORDER)))
    ax.set_xticklabels([m.label for m in MEMORY_ORDER])
    ax.set_ylabel("energy-delay product [pJ*ps]")
    ax.set_yscale("log")
    ax.set_title(f"calibrated EDP at {size}x{size}")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, metadata=_PNG_METADATA)
    plt.close(fig)
    return path


def save_trace_plot(result: ExtremeResult, rows: int, path: str) -> str:
    """Candidate-count winnowing curve for one extremum search."""
    counts = [rows] + [t.candidates_after.bit_count() for t in result.steps]
    fig, ax = plt.subplots(figsize=(6.4, 4.0), dpi=100)
    ax.step(range(len(counts)), counts, where="post", marker="o")
    ax.set_xlabel("scan step")
    ax.set_ylabel("candidates remaining")
    ax.set_ylim(bottom=0)
    ax.set_title(f"winner: row {result.row} = {result.value.to01()}")
    fig.tight_layout()
    fig.savefig(path, metadata=_PNG_METADATA)
    plt.close(fig)
    return path
