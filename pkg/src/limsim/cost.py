"""Calibrated energy-delay product lookups and relative-variation tables.

The shipped calibration covers the 256x256 arrays only; other sizes fail
with UncalibratedPoint unless a scaling hook is installed.  The denominator
convention for percentage comparisons is nonstandard: positive entries are
relative to the column EDP, negative entries to the row EDP.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from enum import Enum
from importlib import resources
from typing import Callable, Iterable, Mapping

from .array import SensingEvent
from .cells import BitlineLoad
from .core import CellVariant, OperationKind, SimulationParams
from .errors import NonPositiveEdp, UncalibratedPoint, UnsupportedOperation

ScalingHook = Callable[[CellVariant, OperationKind, int], float]

# Row/column order shared by every comparison table.
MEMORY_ORDER: tuple[CellVariant, ...] = (
    CellVariant.SRAM6T,
    CellVariant.CAM_NOR,
    CellVariant.LIM_SPECIAL,
    CellVariant.LIM_DYNAMIC,
    CellVariant.LIM_STATIC,
)

_SEARCH_MEMORIES = (
    CellVariant.CAM_NOR,
    CellVariant.LIM_SPECIAL,
    CellVariant.LIM_DYNAMIC,
    CellVariant.LIM_STATIC,
)
_AND_MEMORIES = (
    CellVariant.LIM_SPECIAL,
    CellVariant.LIM_DYNAMIC,
    CellVariant.LIM_STATIC,
)
# The write-vs-read table lists the static array before the dynamic one.
_WRITE_VS_READ_ORDER = (
    CellVariant.SRAM6T,
    CellVariant.CAM_NOR,
    CellVariant.LIM_SPECIAL,
    CellVariant.LIM_STATIC,
    CellVariant.LIM_DYNAMIC,
)

_MEMORY_INDEX = {v: i for i, v in enumerate(MEMORY_ORDER)}


class CalibrationTable:
    """(memory, operation, size) -> energy-delay product in pJ*ps."""

    def __init__(
        self,
        entries: Mapping[tuple[CellVariant, OperationKind, int], float],
        scaling_hook: ScalingHook | None = None,
    ) -> None:
        checked: dict[tuple[CellVariant, OperationKind, int], float] = {}
        for (memory, op, size), edp in entries.items():
            if not memory.supports(op):
                raise UnsupportedOperation(
                    f"{memory.label} has no {op.value} operation"
                )
            if edp <= 0:
                raise NonPositiveEdp(
                    f"EDP for ({memory.label}, {op.value}, {size}) must be positive"
                )
            checked[(memory, op, size)] = float(edp)
        self._entries = checked
        self._hook = scaling_hook

    def with_scaling_hook(self, hook: ScalingHook) -> "CalibrationTable":
        """New table consulting `hook` for unseeded sizes.

        The hook must return positive values and keep EDP monotone
        non-decreasing in size; positivity is enforced here, monotonicity is
        the caller's obligation.
        """
        return CalibrationTable(self._entries, hook)

    @property
    def entries(self) -> dict[tuple[CellVariant, OperationKind, int], float]:
        return dict(self._entries)

    def sizes(self) -> tuple[int, ...]:
        return tuple(sorted({size for (_, _, size) in self._entries}))

    def lookup(self, memory: CellVariant, op: OperationKind, size: int) -> float:
        if not memory.supports(op):
            raise UnsupportedOperation(
                f"{memory.label} has no {op.value} operation"
            )
        key = (memory, op, size)
        if key in self._entries:
            return self._entries[key]
        if self._hook is not None:
            edp = float(self._hook(memory, op, size))
            if edp <= 0:
                raise NonPositiveEdp(
                    f"scaling hook returned non-positive EDP {edp} for "
                    f"({memory.label}, {op.value}, {size})"
                )
            return edp
        raise UncalibratedPoint(
            f"no calibration for ({memory.label}, {op.value}, {size}); "
            "install a scaling hook or seed the size"
        )


def _parse_calibration_rows(
    rows: Iterable[list[str]],
) -> dict[tuple[CellVariant, OperationKind, int], float]:
    entries: dict[tuple[CellVariant, OperationKind, int], float] = {}
    for row in rows:
        if not row or row[0].lstrip().startswith("#"):
            continue
        if [c.strip() for c in row[:4]] == ["memory", "op", "size", "edp_pj_ps"]:
            continue
        memory, op, size, edp = (c.strip() for c in row[:4])
        entries[
            (CellVariant(memory), OperationKind(op), int(size))
        ] = float(edp)
    return entries


def load_calibration(path: str) -> CalibrationTable:
    """Read a `memory,op,size,edp_pj_ps` file into a table."""
    with open(path, newline="", encoding="ascii") as fh:
        return CalibrationTable(_parse_calibration_rows(csv.reader(fh)))


def default_calibration() -> CalibrationTable:
    """The shipped 256x256 calibration seed."""
    text = (
        resources.files("limsim.data").joinpath("table2_seed.csv").read_text("ascii")
    )
    return CalibrationTable(_parse_calibration_rows(csv.reader(text.splitlines())))


_DEFAULT_TABLE: CalibrationTable | None = None


def _default_table() -> CalibrationTable:
    global _DEFAULT_TABLE
    if _DEFAULT_TABLE is None:
        _DEFAULT_TABLE = default_calibration()
    return _DEFAULT_TABLE


def edp_lookup(
    memory: CellVariant,
    op: OperationKind,
    size: int,
    table: CalibrationTable | None = None,
) -> float:
    return (table or _default_table()).lookup(memory, op, size)


def relative_variation(edp_row: float, edp_col: float) -> float:
    """Signed percentage difference, row relative to column.

    Nonstandard denominator: increases (row >= col) are a percentage of the
    column EDP; decreases are a percentage of the row EDP.  This is the
    unique simple convention consistent with the calibrated tables.
    """
    if edp_row <= 0 or edp_col <= 0:
        raise NonPositiveEdp("relative variation needs positive EDPs")
    if edp_row >= edp_col:
        return 100.0 * (edp_row - edp_col) / edp_col
    return 100.0 * (edp_row - edp_col) / edp_row


class TableKind(Enum):
    READ = "read_vs_read"
    WRITE = "write_vs_write"
    SEARCH = "search_vs_search"
    AND = "and_vs_and"
    WRITE_VS_READ = "write_vs_read"
    SEARCH_VS_WRITE = "search_vs_write"
    SEARCH_VS_READ = "search_vs_read"
    AND_VS_SEARCH = "and_vs_search"
    AND_VS_WRITE = "and_vs_write"
    AND_VS_READ = "and_vs_read"


@dataclass(frozen=True)
class _TableLayout:
    row_op: OperationKind
    col_op: OperationKind
    row_memories: tuple[CellVariant, ...]
    col_memories: tuple[CellVariant, ...]
    rule: str  # "strict_lower" | "lower" | "diagonal"


_R = OperationKind.READ
_W = OperationKind.WRITE
_S = OperationKind.SEARCH
_A = OperationKind.AND

_LAYOUTS: dict[TableKind, _TableLayout] = {
    TableKind.READ: _TableLayout(_R, _R, MEMORY_ORDER, MEMORY_ORDER, "strict_lower"),
    TableKind.WRITE: _TableLayout(_W, _W, MEMORY_ORDER, MEMORY_ORDER, "strict_lower"),
    TableKind.SEARCH: _TableLayout(
        _S, _S, _SEARCH_MEMORIES, _SEARCH_MEMORIES, "strict_lower"
    ),
    TableKind.AND: _TableLayout(_A, _A, _AND_MEMORIES, _AND_MEMORIES, "strict_lower"),
    TableKind.WRITE_VS_READ: _TableLayout(
        _W, _R, _WRITE_VS_READ_ORDER, _WRITE_VS_READ_ORDER, "diagonal"
    ),
    TableKind.SEARCH_VS_WRITE: _TableLayout(
        _S, _W, _SEARCH_MEMORIES, MEMORY_ORDER, "lower"
    ),
    TableKind.SEARCH_VS_READ: _TableLayout(
        _S, _R, _SEARCH_MEMORIES, MEMORY_ORDER, "lower"
    ),
    TableKind.AND_VS_SEARCH: _TableLayout(
        _A, _S, _AND_MEMORIES, _SEARCH_MEMORIES, "lower"
    ),
    TableKind.AND_VS_WRITE: _TableLayout(_A, _W, _AND_MEMORIES, MEMORY_ORDER, "lower"),
    TableKind.AND_VS_READ: _TableLayout(_A, _R, _AND_MEMORIES, MEMORY_ORDER, "lower"),
}


def _cell_included(layout: _TableLayout, row_mem: CellVariant, col_mem: CellVariant) -> bool:
    ri, ci = _MEMORY_INDEX[row_mem], _MEMORY_INDEX[col_mem]
    if layout.rule == "strict_lower":
        return ri > ci
    if layout.rule == "lower":
        return ri >= ci
    return row_mem is col_mem


@dataclass(frozen=True)
class RelativeVariationCell:
    row_memory: CellVariant
    col_memory: CellVariant
    row_op: OperationKind
    col_op: OperationKind
    percent: float


@dataclass(frozen=True)
class ComparisonTable:
    kind: TableKind
    size: int
    row_memories: tuple[CellVariant, ...]
    col_memories: tuple[CellVariant, ...]
    # None marks positions the published layout leaves blank.
    cells: tuple[tuple[float | None, ...], ...]
    records: tuple[RelativeVariationCell, ...] = field(default=())

    def cell(self, row_mem: CellVariant, col_mem: CellVariant) -> float | None:
        r = self.row_memories.index(row_mem)
        c = self.col_memories.index(col_mem)
        return self.cells[r][c]


def comparison_table(
    kind: TableKind,
    size: int,
    table: CalibrationTable | None = None,
) -> ComparisonTable:
    """Regenerate one published comparison matrix from the calibration."""
    layout = _LAYOUTS[kind]
    source = table or _default_table()
    rows: list[tuple[float | None, ...]] = []
    records: list[RelativeVariationCell] = []
    for row_mem in layout.row_memories:
        line: list[float | None] = []
        for col_mem in layout.col_memories:
            if not _cell_included(layout, row_mem, col_mem):
                line.append(None)
                continue
            percent = relative_variation(
                source.lookup(row_mem, layout.row_op, size),
                source.lookup(col_mem, layout.col_op, size),
            )
            line.append(percent)
            records.append(
                RelativeVariationCell(
                    row_mem, col_mem, layout.row_op, layout.col_op, percent
                )
            )
        rows.append(tuple(line))
    return ComparisonTable(
        kind=kind,
        size=size,
        row_memories=layout.row_memories,
        col_memories=layout.col_memories,
        cells=tuple(rows),
        records=tuple(records),
    )


def format_percent(value: float) -> str:
    """Two-decimal signed rendering used in CSV output."""
    return f"{value:+.2f}"


@dataclass(frozen=True)
class EstimateCoefficients:
    a: float = 10.0  # per charging line
    b: float = 1.0  # per leak window unit per discharged line
    c: float = 5.0  # per gate commutation
    d: float = 2.0  # per bitline load unit

    def __post_init__(self) -> None:
        if min(self.a, self.b, self.c, self.d) <= 0:
            raise ValueError("estimate coefficients must be positive")


@dataclass(frozen=True)
class StructuralEstimate:
    charge_events: int
    leak_window_units: int  # abstract time the sense window stays open
    gate_commutations: int
    bitline_load_units: int
    estimate: float


def structural_estimate(
    event: SensingEvent,
    loads: BitlineLoad,
    params: SimulationParams = SimulationParams(),
    coefficients: EstimateCoefficients = EstimateCoefficients(),
) -> StructuralEstimate:
    """Abstract energy-delay units from transition counts.

    estimate = a*charge_events + b*leak_window_units*lines_discharged
             + c*gate_commutations + d*bitline_load_units

    Calibrated only in ordering: charging lines dominate, discharged lines
    leak for the duration of each dummy window, gate commutations model the
    dynamic AND penalty, and bitline load units scale with the per-line
    transistor count times the row count.  `params` is validated by
    construction but does not scale the abstract units.
    """
    del params
    charge_events = event.lines_charged
    leak_window_units = event.dummy_window_units
    bitline_load_units = loads.transistors_on_bitlines * event.rows
    estimate = (
        coefficients.a * charge_events
        + coefficients.b * leak_window_units * event.lines_discharged
        + coefficients.c * event.gate_commutations
        + coefficients.d * bitline_load_units
    )
    return StructuralEstimate(
        charge_events=charge_events,
        leak_window_units=leak_window_units,
        gate_commutations=event.gate_commutations,
        bitline_load_units=bitline_load_units,
        estimate=estimate,
    )
