"""Shared vocabulary types: bits, words, masks, variants, operations, geometries.

Bit ordering is MSB-first everywhere: index 0 of a Word or Mask is the most
significant bit, matching the scan order of the extremum search.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, Sequence

from .errors import IndexOutOfRange, InvalidWidth

# A logical bit is a plain int restricted to 0 or 1.
Bit = int


def _check_bit(value: int) -> Bit:
    if value not in (0, 1):
        raise ValueError(f"bit must be 0 or 1, got {value!r}")
    return value


class OperationKind(Enum):
    READ = "read"
    WRITE = "write"
    SEARCH = "search"
    AND = "and"


class CellVariant(Enum):
    """The five memory-cell variants.

    Sram6T supports read/write only; CamNor adds search; the three Lim
    variants (dynamic, static, special-purpose AND) add the in-memory AND.
    """

    SRAM6T = "sram6t"
    CAM_NOR = "camnor"
    LIM_DYNAMIC = "limdynamic"
    LIM_STATIC = "limstatic"
    LIM_SPECIAL = "limspecial"

    @property
    def is_lim(self) -> bool:
        return self in _LIM_VARIANTS

    @property
    def supports_search(self) -> bool:
        return self is not CellVariant.SRAM6T

    @property
    def supported_operations(self) -> tuple[OperationKind, ...]:
        return tuple(op for op in OperationKind if op in _SUPPORTED[self])

    def supports(self, op: OperationKind) -> bool:
        return op in _SUPPORTED[self]

    @property
    def label(self) -> str:
        """Human-facing array label used in tables and CSV output."""
        return _LABELS[self]


_LIM_VARIANTS = frozenset(
    {CellVariant.LIM_DYNAMIC, CellVariant.LIM_STATIC, CellVariant.LIM_SPECIAL}
)

_SUPPORTED = {
    CellVariant.SRAM6T: frozenset({OperationKind.READ, OperationKind.WRITE}),
    CellVariant.CAM_NOR: frozenset(
        {OperationKind.READ, OperationKind.WRITE, OperationKind.SEARCH}
    ),
}
for _v in _LIM_VARIANTS:
    _SUPPORTED[_v] = frozenset(
        {OperationKind.READ, OperationKind.WRITE, OperationKind.SEARCH, OperationKind.AND}
    )

_LABELS = {
    CellVariant.SRAM6T: "SRAM",
    CellVariant.CAM_NOR: "CAM",
    CellVariant.LIM_SPECIAL: "AND SP",
    CellVariant.LIM_DYNAMIC: "AND DYN",
    CellVariant.LIM_STATIC: "AND ST",
}

LIM_VARIANTS: frozenset[CellVariant] = _LIM_VARIANTS


@dataclass(frozen=True)
class _BitVector:
    """Fixed-width bit vector backed by an int; index 0 is the MSB."""

    width: int
    value: int

    def __post_init__(self) -> None:
        if self.width < 1:
            raise InvalidWidth(f"width must be >= 1, got {self.width}")
        if not 0 <= self.value < (1 << self.width):
            raise ValueError(
                f"value {self.value} does not fit in {self.width} bits"
            )

    def __len__(self) -> int:
        return self.width

    def __getitem__(self, position: int) -> Bit:
        if not 0 <= position < self.width:
            raise IndexOutOfRange(
                f"bit position {position} out of range for width {self.width}"
            )
        return (self.value >> (self.width - 1 - position)) & 1

    def __iter__(self) -> Iterator[Bit]:
        return (self[i] for i in range(self.width))

    def bits(self) -> tuple[Bit, ...]:
        """All bits, MSB first."""
        return tuple(self)

    def to01(self) -> str:
        return format(self.value, f"0{self.width}b")


class Word(_BitVector):
    """One stored memory row's content."""


class Mask(_BitVector):
    """Logical column-selection vector; 1 = column selected.

    The per-variant physical bitline polarity is resolved in the cell layer,
    so the same Mask drives every variant identically.
    """


def make_word(bits: Sequence[Bit] | Iterable[Bit]) -> Word:
    """Build a Word from a bit sequence, MSB first."""
    seq = tuple(_check_bit(b) for b in bits)
    if not seq:
        raise InvalidWidth("cannot build a word from an empty sequence")
    value = 0
    for b in seq:
        value = (value << 1) | b
    return Word(len(seq), value)


def make_mask(bits: Sequence[Bit] | Iterable[Bit]) -> Mask:
    """Build a Mask from a logical selection sequence, MSB first."""
    seq = tuple(_check_bit(b) for b in bits)
    if not seq:
        raise InvalidWidth("cannot build a mask from an empty sequence")
    value = 0
    for b in seq:
        value = (value << 1) | b
    return Mask(len(seq), value)


def word_from_int(width: int, value: int) -> Word:
    if width >= 1 and not 0 <= value < (1 << width):
        raise InvalidWidth(f"value {value} does not fit in {width} bits")
    return Word(width, value)


def one_hot_mask(width: int, position: int) -> Mask:
    """Mask selecting exactly one column; position counts from the MSB."""
    if width < 1:
        raise InvalidWidth(f"width must be >= 1, got {width}")
    if not 0 <= position < width:
        raise IndexOutOfRange(
            f"position {position} out of range for width {width}"
        )
    return Mask(width, 1 << (width - 1 - position))


@dataclass(frozen=True)
class ArrayGeometry:
    rows: int
    cols: int

    def __post_init__(self) -> None:
        if self.rows < 1 or self.cols < 1:
            raise InvalidWidth(
                f"geometry must be at least 1x1, got {self.rows}x{self.cols}"
            )


@dataclass(frozen=True)
class SimulationParams:
    """Electrical run parameters: supply voltage and clock period.

    Measured energies are carried by the calibration table, not recomputed,
    so these only parameterize stimulus generation and run records.
    """

    vdd: float = 1.0
    t_clk_ns: float = 1.0

    def __post_init__(self) -> None:
        if self.vdd <= 0:
            raise ValueError(f"vdd must be positive, got {self.vdd}")
        if self.t_clk_ns <= 0:
            raise ValueError(f"t_clk_ns must be positive, got {self.t_clk_ns}")
