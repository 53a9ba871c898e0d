"""Stateful memory array: read, write, search, and in-memory AND.

Rows are stored as packed integers (column j at weight 2^(cols-1-j)) so that
row-parallel operations reduce to integer arithmetic; the cell-level
functions in `cells` define the semantics and the property tests tie the two
together.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .core import (
    ArrayGeometry,
    Bit,
    CellVariant,
    Mask,
    OperationKind,
    Word,
)
from .errors import IndexOutOfRange, UnsupportedOperation, WidthMismatch


class Phase(Enum):
    PRE_DISCHARGE = "pre_discharge"
    MASK_LOAD = "mask_load"
    PRECHARGE = "precharge"
    EVALUATE = "evaluate"
    SENSE = "sense"
    DUMMY_DISABLE = "dummy_disable"
    DRIVE = "drive"
    SETTLE = "settle"


@dataclass(frozen=True)
class PhaseSequence:
    """Ordered phase groups; phases inside a group overlap in time."""

    groups: tuple[tuple[Phase, ...], ...]

    def __len__(self) -> int:
        return len(self.groups)

    @property
    def phases(self) -> tuple[Phase, ...]:
        return tuple(p for group in self.groups for p in group)


@dataclass(frozen=True)
class SensingEvent:
    """Per-operation record consumed by the structural cost estimator.

    For Search/And, lines_charged + lines_discharged = rows and
    per_row_result has one bit per row.  For Read/Write the counts describe
    the per-column bitline pairs (one line of each pair swings) and
    per_row_result carries the word moved.
    """

    operation: OperationKind
    rows: int
    cols: int
    lines_charged: int
    lines_discharged: int
    per_row_result: tuple[Bit, ...]
    dummy_window_units: int
    gate_commutations: int


class ArrayState:
    """One memory array of a single variant; all cells start at 0."""

    __slots__ = ("geometry", "variant", "_rows", "_prev_gate")

    def __init__(self, geometry: ArrayGeometry, variant: CellVariant) -> None:
        self.geometry = geometry
        self.variant = variant
        self._rows: list[int] = [0] * geometry.rows
        # Last AND-gate output per cell (packed per row); static variant only.
        self._prev_gate: list[int] | None = (
            [0] * geometry.rows if variant is CellVariant.LIM_STATIC else None
        )

    @property
    def rows(self) -> int:
        return self.geometry.rows

    @property
    def cols(self) -> int:
        return self.geometry.cols

    def cell(self, row: int, col: int) -> Bit:
        self._check_row(row)
        if not 0 <= col < self.cols:
            raise IndexOutOfRange(f"column {col} out of range for {self.cols} columns")
        return (self._rows[row] >> (self.cols - 1 - col)) & 1

    def row_word(self, row: int) -> Word:
        self._check_row(row)
        return Word(self.cols, self._rows[row])

    def row_values(self) -> tuple[int, ...]:
        """Packed row contents, for oracles and bulk inspection."""
        return tuple(self._rows)

    def load_rows(self, values: Sequence[int]) -> None:
        """Bulk content load without producing write events."""
        if len(values) != self.rows:
            raise WidthMismatch(
                f"expected {self.rows} row values, got {len(values)}"
            )
        limit = 1 << self.cols
        for v in values:
            if not 0 <= v < limit:
                raise WidthMismatch(f"row value {v} does not fit in {self.cols} bits")
        self._rows = list(values)

    def _check_row(self, row: int) -> None:
        if not 0 <= row < self.rows:
            raise IndexOutOfRange(f"row {row} out of range for {self.rows} rows")


def new_array(geometry: ArrayGeometry, variant: CellVariant) -> ArrayState:
    return ArrayState(geometry, variant)


def write_word(array: ArrayState, row: int, word: Word) -> SensingEvent:
    array._check_row(row)
    if word.width != array.cols:
        raise WidthMismatch(
            f"word width {word.width} does not match {array.cols} columns"
        )
    array._rows[row] = word.value
    return SensingEvent(
        operation=OperationKind.WRITE,
        rows=array.rows,
        cols=array.cols,
        lines_charged=array.cols,
        lines_discharged=array.cols,
        per_row_result=word.bits(),
        dummy_window_units=0,
        gate_commutations=0,
    )


def read_word(array: ArrayState, row: int) -> tuple[Word, SensingEvent]:
    array._check_row(row)
    word = Word(array.cols, array._rows[row])
    event = SensingEvent(
        operation=OperationKind.READ,
        rows=array.rows,
        cols=array.cols,
        lines_charged=array.cols,
        lines_discharged=array.cols,
        per_row_result=word.bits(),
        dummy_window_units=0,
        gate_commutations=0,
    )
    return word, event


def search(array: ArrayState, key: Word) -> tuple[tuple[Bit, ...], SensingEvent]:
    """Row-parallel exact match; a row matches iff its word equals the key."""
    if not array.variant.supports_search:
        raise UnsupportedOperation(f"{array.variant.name} cannot search")
    if key.width != array.cols:
        raise WidthMismatch(
            f"key width {key.width} does not match {array.cols} columns"
        )
    kv = key.value
    results = tuple(1 if r == kv else 0 for r in array._rows)
    matches = sum(results)
    event = SensingEvent(
        operation=OperationKind.SEARCH,
        rows=array.rows,
        cols=array.cols,
        lines_charged=matches,
        lines_discharged=array.rows - matches,
        per_row_result=results,
        dummy_window_units=1,
        gate_commutations=0,
    )
    return results, event


def and_op(array: ArrayState, mask: Mask) -> tuple[tuple[Bit, ...], SensingEvent]:
    """Row-parallel in-memory AND under the given column selection.

    Dynamic/static rows produce OR over the selected bits (the row line
    wire-ORs the per-cell gate outputs); the special-purpose row produces
    AND over the selected bits.  Both reduce to the selected column's bit
    for one-hot masks.
    """
    if not array.variant.is_lim:
        raise UnsupportedOperation(f"{array.variant.name} has no AND capability")
    if mask.width != array.cols:
        raise WidthMismatch(
            f"mask width {mask.width} does not match {array.cols} columns"
        )
    mv = mask.value
    rows = array._rows
    n = array.rows

    if array.variant is CellVariant.LIM_SPECIAL:
        results = tuple(1 if (r & mv) == mv else 0 for r in rows)
        # The special-purpose line carries the result directly.
        charged = sum(results)
        commutations = 0
    else:
        results = tuple(1 if (r & mv) else 0 for r in rows)
        # The line carries the inverted result: true rows stay discharged.
        charged = n - sum(results)
        if array.variant is CellVariant.LIM_DYNAMIC:
            # Every precharged gate with D*M = 0 discharges each evaluation.
            active = sum((r & mv).bit_count() for r in rows)
            commutations = n * array.cols - active
        else:
            prev = array._prev_gate
            assert prev is not None
            commutations = 0
            for i, r in enumerate(rows):
                gate = r & mv
                commutations += (gate ^ prev[i]).bit_count()
                prev[i] = gate
    event = SensingEvent(
        operation=OperationKind.AND,
        rows=n,
        cols=array.cols,
        lines_charged=charged,
        lines_discharged=n - charged,
        per_row_result=results,
        dummy_window_units=1,
        gate_commutations=commutations,
    )
    return results, event


_SEARCH_AND_GROUPS = (
    (Phase.PRE_DISCHARGE, Phase.MASK_LOAD),
    (Phase.EVALUATE,),
    (Phase.SENSE,),
    (Phase.DUMMY_DISABLE,),
)
_READ_GROUPS = ((Phase.PRECHARGE,), (Phase.EVALUATE,), (Phase.SENSE,))
_WRITE_GROUPS = ((Phase.DRIVE,), (Phase.SETTLE,))


def phase_sequence(op: OperationKind, variant: CellVariant) -> PhaseSequence:
    """Clocked phase groups for one operation on one variant.

    Search/And overlap the mask load with the pre-discharge cycle; reads
    precharge the bitlines first; writes drive and settle.
    """
    if not variant.supports(op):
        raise UnsupportedOperation(f"{variant.name} does not support {op.value}")
    if op in (OperationKind.SEARCH, OperationKind.AND):
        return PhaseSequence(_SEARCH_AND_GROUPS)
    if op is OperationKind.READ:
        return PhaseSequence(_READ_GROUPS)
    return PhaseSequence(_WRITE_GROUPS)
