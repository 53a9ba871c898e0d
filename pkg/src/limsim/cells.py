"""Per-cell combinational behavior under the current-saving sensing scheme.

Shared row lines are pre-discharged; a line charges during evaluation iff no
cell holds a conducting pull-down on it.  The dynamic and static AND cells
drive the pull-down from the gate output, so the line carries the inverted
result; the special-purpose cell gates the pull-down with the complement of
the stored bit on the selected column, so the line carries the result
directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from .core import Bit, CellVariant, LIM_VARIANTS
from .errors import InvalidWidth, UnsupportedOperation


class PullDownState(Enum):
    CONDUCTING = "conducting"
    OFF = "off"


class LineLevel(Enum):
    CHARGED = "charged"
    DISCHARGED = "discharged"


def _require_lim(variant: CellVariant) -> None:
    if variant not in LIM_VARIANTS:
        raise UnsupportedOperation(
            f"{variant.name} has no AND gate; only the Lim variants do"
        )


def and_gate_output(variant: CellVariant, d: Bit, m: Bit) -> Bit:
    """Settled logical AND of stored bit and mask bit.

    The special-purpose variant realizes selection rather than a gate, but
    its observable result for a selected column equals the stored bit, so
    the logical output is D*M for all three variants.
    """
    _require_lim(variant)
    return d & m


def pulldown_state(variant: CellVariant, d: Bit, m: Bit) -> PullDownState:
    """Whether this cell's pull-down holds the shared line discharged."""
    _require_lim(variant)
    if variant is CellVariant.LIM_SPECIAL:
        # Footer conducts on the selected column; pull-down gate is the
        # complement of the stored bit.
        conducting = m == 1 and d == 0
    else:
        conducting = (d & m) == 1
    return PullDownState.CONDUCTING if conducting else PullDownState.OFF


def resolve_line(states: Sequence[PullDownState] | Iterable[PullDownState]) -> LineLevel:
    """Current-saving line resolution: charged iff every pull-down is off."""
    seq = tuple(states)
    if not seq:
        raise InvalidWidth("a line must have at least one cell")
    for s in seq:
        if s is PullDownState.CONDUCTING:
            return LineLevel.DISCHARGED
    return LineLevel.CHARGED


def sensed_and(variant: CellVariant, level: LineLevel) -> Bit:
    """Row result recovered from the line level.

    Dynamic/static lines carry the inverted result (the sense amplifier
    inverts); the special-purpose line carries the result directly.
    """
    _require_lim(variant)
    if variant is CellVariant.LIM_SPECIAL:
        return 1 if level is LineLevel.CHARGED else 0
    return 1 if level is LineLevel.DISCHARGED else 0


def cam_bit_mismatch(d: Bit, key_bit: Bit) -> PullDownState:
    """NOR-CAM bit compare: a mismatching bit blocks the matchline charge."""
    return PullDownState.CONDUCTING if d != key_bit else PullDownState.OFF


def mask_bitline_levels(variant: CellVariant, m: Bit) -> tuple[Bit, Bit]:
    """Physical (BL, BLB) pair encoding one logical mask bit.

    Dynamic/static cells select with BL high; the special-purpose cell uses
    logic 0 as the active value on BL, so its selected column drives BL=0,
    BLB=1 (the footer transistor conducts when BLB is high).
    """
    _require_lim(variant)
    if variant is CellVariant.LIM_SPECIAL:
        return (1 - m, m)
    return (m, 1 - m)


def data_bitline_levels(bit: Bit) -> tuple[Bit, Bit]:
    """Physical (BL, BLB) pair for a write-data or search-key bit."""
    return (bit, 1 - bit)


@dataclass(frozen=True)
class BitlineLoad:
    """Transistor count a single cell attaches to its bitline pair."""

    variant: CellVariant
    transistors_on_bitlines: int

    def __post_init__(self) -> None:
        if self.transistors_on_bitlines < 1:
            raise ValueError("transistor count must be positive")


# Only the ordering SRAM < CAM <= SP = DYN < ST is contractually meaningful;
# the counts themselves are configuration, not calibrated data.
DEFAULT_BITLINE_LOADS: dict[CellVariant, BitlineLoad] = {
    CellVariant.SRAM6T: BitlineLoad(CellVariant.SRAM6T, 2),
    CellVariant.CAM_NOR: BitlineLoad(CellVariant.CAM_NOR, 4),
    CellVariant.LIM_SPECIAL: BitlineLoad(CellVariant.LIM_SPECIAL, 5),
    CellVariant.LIM_DYNAMIC: BitlineLoad(CellVariant.LIM_DYNAMIC, 5),
    CellVariant.LIM_STATIC: BitlineLoad(CellVariant.LIM_STATIC, 6),
}


def default_bitline_load(variant: CellVariant) -> BitlineLoad:
    return DEFAULT_BITLINE_LOADS[variant]
