"""Bit-serial maximum/minimum search over a Lim array.

The driver scans columns MSB to LSB with one-hot masks and winnows a
candidate set: for Max, rows whose selected bit is 1 survive (if any); for
Min, rows whose bit is 0 survive.  If no candidate carries the kept value
the set is left unchanged, which is what makes the scan correct when a whole
column agrees.  Candidate sets are int bitmaps with bit r = row r.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .array import ArrayState, and_op
from .core import Bit, Mask, Word, one_hot_mask
from .errors import EmptySet, UnsupportedOperation

CandidateSet = int


class SearchMode(Enum):
    MAX = "max"
    MIN = "min"


class Encoding(Enum):
    UNSIGNED = "unsigned"
    TWOS_COMPLEMENT = "twos_complement"


def full_candidates(rows: int) -> CandidateSet:
    return (1 << rows) - 1


def candidate_rows(candidates: CandidateSet) -> tuple[int, ...]:
    """Member row indices, ascending."""
    out = []
    c = candidates
    while c:
        low = c & -c
        out.append(low.bit_length() - 1)
        c ^= low
    return tuple(out)


def priority_select(candidates: CandidateSet) -> int:
    """Lowest row index in the set."""
    if candidates == 0:
        raise EmptySet("cannot select from an empty candidate set")
    return (candidates & -candidates).bit_length() - 1


@dataclass(frozen=True)
class StepTrace:
    bit_position: int
    mask: Mask
    and_results: tuple[Bit, ...]
    candidates_before: CandidateSet
    candidates_after: CandidateSet


@dataclass(frozen=True)
class ExtremeResult:
    row: int
    value: Word
    steps: tuple[StepTrace, ...]


def step(
    candidates: CandidateSet,
    and_results: Sequence[Bit],
    mode: SearchMode,
) -> CandidateSet:
    """One winnowing step; keeps the set unchanged if it would empty out."""
    keep = 1 if mode is SearchMode.MAX else 0
    kept = 0
    for row, result in enumerate(and_results):
        if result == keep:
            kept |= 1 << row
    refined = candidates & kept
    return refined if refined else candidates


def find_extreme(
    array: ArrayState,
    mode: SearchMode,
    encoding: Encoding = Encoding.UNSIGNED,
) -> ExtremeResult:
    """Run the full scan and return the winning row, its word, and the trace.

    Two's-complement support flips the kept polarity at the sign bit only
    (a 0 sign bit is larger); ties resolve to the lowest row index.  The
    scan exits early once a single candidate remains.
    """
    if not array.variant.is_lim:
        raise UnsupportedOperation(
            f"{array.variant.name} cannot run the extremum search"
        )
    candidates = full_candidates(array.rows)
    steps: list[StepTrace] = []
    flipped = SearchMode.MIN if mode is SearchMode.MAX else SearchMode.MAX
    for position in range(array.cols):
        if candidates & (candidates - 1) == 0:
            break
        mask = one_hot_mask(array.cols, position)
        results, _ = and_op(array, mask)
        effective = mode
        if encoding is Encoding.TWOS_COMPLEMENT and position == 0:
            effective = flipped
        after = step(candidates, results, effective)
        steps.append(StepTrace(position, mask, results, candidates, after))
        candidates = after
    row = priority_select(candidates)
    return ExtremeResult(row=row, value=array.row_word(row), steps=tuple(steps))


def oracle_extreme(
    row_values: Sequence[int],
    width: int,
    mode: SearchMode,
    encoding: Encoding = Encoding.UNSIGNED,
) -> tuple[int, int]:
    """Direct-scan reference: (first-occurrence row index, packed value)."""
    if not row_values:
        raise EmptySet("oracle needs at least one row")

    def keyed(v: int) -> int:
        if encoding is Encoding.TWOS_COMPLEMENT and v >= (1 << (width - 1)):
            return v - (1 << width)
        return v

    best_row = 0
    best_key = keyed(row_values[0])
    for i, v in enumerate(row_values[1:], start=1):
        k = keyed(v)
        if (mode is SearchMode.MAX and k > best_key) or (
            mode is SearchMode.MIN and k < best_key
        ):
            best_row, best_key = i, k
    return best_row, row_values[best_row]
