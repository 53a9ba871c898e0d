"""Reduced worst-case array netlists and stimulus waveforms.

The full array is reduced to the two critical cells (read/write at the first
row and last column, search/AND at the first row and first column), dummy
row cells that load only the row signals, dummy column cells that load only
the last bitline pair, one dummy-load replica per row on the dummy sensing
output, and an always-match dummy line for the search-capable variants.

Output is generic SPICE-flavored text: `*` comments, `.include` directives,
and one `X` instance line per block, referencing opaque subcircuit names
from a primitive library.  Emission is a pure function of its inputs; golden
tests pin the bytes.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from typing import Mapping, Sequence

from .cells import data_bitline_levels, mask_bitline_levels
from .core import (
    ArrayGeometry,
    CellVariant,
    Mask,
    OperationKind,
    Word,
)
from .errors import (
    GeometryNotBlockAligned,
    MissingPrimitive,
    UnsupportedOperation,
    WidthMismatch,
)

BLOCK_ALIGNMENT = 32

SUPPLY_NODES = ("VDD", "0")


@dataclass(frozen=True)
class CellPlacement:
    role: str  # "read_write" | "search_and"
    row: int
    col: int


@dataclass(frozen=True)
class ReducedArrayModel:
    geometry: ArrayGeometry
    variant: CellVariant
    real_cells: tuple[CellPlacement, CellPlacement]
    dummy_row_cells: int
    dummy_col_cells: int
    dummy_loads: int
    has_dummy_line: bool
    peripherals: tuple[str, ...]

    @property
    def total_cell_instances(self) -> int:
        return len(self.real_cells) + self.dummy_row_cells + self.dummy_col_cells


def build_reduced_model(
    geometry: ArrayGeometry, variant: CellVariant
) -> ReducedArrayModel:
    """Worst-case reduction; geometry must use 32-wide basic blocks."""
    if geometry.rows % BLOCK_ALIGNMENT or geometry.cols % BLOCK_ALIGNMENT:
        raise GeometryNotBlockAligned(
            f"{geometry.rows}x{geometry.cols} is not a multiple of "
            f"{BLOCK_ALIGNMENT} in both dimensions"
        )
    peripherals = ["bitline_driver", "precharge", "delay_sa", "read_sa"]
    if variant.supports_search:
        peripherals.append("match_sa")
    if variant.is_lim:
        peripherals.append("and_sa")
    return ReducedArrayModel(
        geometry=geometry,
        variant=variant,
        real_cells=(
            CellPlacement("read_write", 0, geometry.cols - 1),
            CellPlacement("search_and", 0, 0),
        ),
        dummy_row_cells=geometry.cols - 2,
        dummy_col_cells=geometry.rows - 1,
        dummy_loads=geometry.rows,
        has_dummy_line=variant.supports_search,
        peripherals=tuple(peripherals),
    )


# Block keys a primitive library must name for a given model.
_ALWAYS_REQUIRED = (
    "cell",
    "dummy_row_cell",
    "dummy_col_cell",
    "dummy_load",
    "precharge",
    "delay_sa",
    "read_sa",
    "bitline_driver",
)


def required_blocks(model: ReducedArrayModel) -> tuple[str, ...]:
    blocks = list(_ALWAYS_REQUIRED)
    if model.has_dummy_line:
        blocks += ["match_sa", "dummy_line"]
    if model.variant.is_lim:
        blocks.append("and_sa")
    return tuple(blocks)


_VARIANT_TAGS = {
    CellVariant.SRAM6T: "SRAM6T",
    CellVariant.CAM_NOR: "CAMNOR",
    CellVariant.LIM_DYNAMIC: "LIMDYN",
    CellVariant.LIM_STATIC: "LIMST",
    CellVariant.LIM_SPECIAL: "LIMSP",
}


def default_primitive_library(variant: CellVariant) -> dict[str, str]:
    """Subcircuit names matching the shipped placeholder library."""
    tag = _VARIANT_TAGS[variant]
    return {
        "cell": f"CELL_{tag}",
        "dummy_row_cell": f"DROWCELL_{tag}",
        "dummy_col_cell": f"DCOLCELL_{tag}",
        "dummy_load": "DUMMYLOAD",
        "precharge": f"PRECH_{tag}",
        "delay_sa": "DELAYSA",
        "read_sa": "READSA",
        "bitline_driver": "BLDRV",
        "match_sa": "MLSA",
        "dummy_line": "DUMMYLINE",
        "and_sa": "ANDSA",
    }


def primitive_library_text() -> str:
    """The shipped placeholder subcircuit definitions."""
    return (
        resources.files("limsim.data").joinpath("primitives.sp").read_text("ascii")
    )


def _row_signal_nodes(variant: CellVariant) -> list[str]:
    """Row-wise nodes every first-row cell touches, in emission order."""
    nodes = ["WL0"]
    if variant.supports_search:
        nodes.append("ML0")
    if variant.is_lim:
        nodes.append("ANDL0")
    if variant is CellVariant.LIM_DYNAMIC:
        nodes.append("PREB0")
    return nodes


def _node_sets(model: ReducedArrayModel) -> tuple[list[str], list[str]]:
    """(internal lines, testbench sources) for this model."""
    last = model.geometry.cols - 1
    variant = model.variant
    lines = [f"BL{last}", f"BLB{last}", "SAO", "SAEN"]
    if variant.supports_search:
        lines += ["ML0", "MLSAO", "DML", "DMLSAO"]
    if variant.is_lim:
        lines += ["ANDL0", "ANDSAO"]
    sources = ["WL0", "BL0", "BLB0", "ENB", "PRECHB", "BDATA", "BDRVEN"]
    if variant is CellVariant.LIM_DYNAMIC:
        sources.append("PREB0")
    return sorted(lines), sorted(sources)


def emit_netlist(
    model: ReducedArrayModel,
    primitive_library: Mapping[str, str],
    include: str = "primitives.sp",
) -> str:
    """Deterministic netlist text for the reduced model."""
    for block in required_blocks(model):
        if block not in primitive_library:
            raise MissingPrimitive(
                f"primitive library lacks a subcircuit for '{block}'"
            )
    lib = primitive_library
    geometry, variant = model.geometry, model.variant
    last = geometry.cols - 1
    lines, sources = _node_sets(model)
    row_nodes = _row_signal_nodes(variant)
    supply = " ".join(SUPPLY_NODES)

    out: list[str] = []
    out.append("* reduced worst-case array netlist")
    out.append(f"* variant: {variant.value}")
    out.append(f"* geometry: {geometry.rows} x {geometry.cols} (rows x cols)")
    out.append(f"* cell instances: {model.total_cell_instances}")
    out.append(f"* dummy loads: {model.dummy_loads}")
    out.append(f"* lines: {' '.join(lines)}")
    out.append(f"* sources: {' '.join(sources)}")
    out.append(f"* supplies: {supply}")
    out.append(f'.include "{include}"')
    out.append("")

    out.append("* critical cells (first row)")
    rw_nodes = " ".join(row_nodes + [f"BL{last}", f"BLB{last}"])
    ops_nodes = " ".join(row_nodes + ["BL0", "BLB0"])
    out.append(f"XCELL_RW {rw_nodes} {supply} {lib['cell']}")
    out.append(f"XCELL_OPS {ops_nodes} {supply} {lib['cell']}")

    out.append("* dummy row cells (row-signal transistors only)")
    drow_nodes = " ".join(row_nodes)
    for c in range(1, geometry.cols - 1):
        out.append(f"XDROW{c} {drow_nodes} {supply} {lib['dummy_row_cell']}")

    out.append("* dummy column cells (bitline transistors only)")
    for r in range(1, geometry.rows):
        out.append(
            f"XDCOL{r} BL{last} BLB{last} {supply} {lib['dummy_col_cell']}"
        )

    # Dummy loads replicate the gate-input sections hanging on the dummy
    # sensing output; without a dummy line they load the enable net instead.
    attach = "DMLSAO" if model.has_dummy_line else "SAEN"
    out.append("* dummy loads (gate-input replicas)")
    for r in range(geometry.rows):
        out.append(f"XDLOAD{r} {attach} {supply} {lib['dummy_load']}")

    if model.has_dummy_line:
        out.append("* always-match dummy line with its sense amplifier")
        out.append(f"XDML DML SAEN DMLSAO {supply} {lib['dummy_line']}")

    out.append("* peripherals")
    prech_lines = [f"BL{last}", f"BLB{last}"]
    if variant.supports_search:
        prech_lines.append("ML0")
    if variant.is_lim:
        prech_lines.append("ANDL0")
    if model.has_dummy_line:
        prech_lines.append("DML")
    out.append(f"XPRECH PRECHB {' '.join(prech_lines)} {supply} {lib['precharge']}")
    out.append(f"XDELAYSA ENB SAEN {supply} {lib['delay_sa']}")
    out.append(f"XSA BL{last} BLB{last} SAEN SAO {supply} {lib['read_sa']}")
    if variant.supports_search:
        out.append(f"XMLSA ML0 DMLSAO MLSAO {supply} {lib['match_sa']}")
    if variant.is_lim:
        out.append(f"XANDSA ANDL0 DMLSAO ANDSAO {supply} {lib['and_sa']}")
    out.append(f"XBLDRV BDATA BDRVEN BL{last} BLB{last} {supply} {lib['bitline_driver']}")
    out.append(".end")
    return "\n".join(out) + "\n"


@dataclass(frozen=True)
class NetlistInstance:
    name: str
    nodes: tuple[str, ...]
    subcircuit: str


def netlist_instances(text: str) -> list[NetlistInstance]:
    """Parse back the instance lines of an emitted netlist."""
    instances = []
    for line in text.splitlines():
        line = line.strip()
        if not line.startswith("X"):
            continue
        tokens = line.split()
        if len(tokens) < 2:
            continue
        instances.append(
            NetlistInstance(tokens[0], tuple(tokens[1:-1]), tokens[-1])
        )
    return instances


def declared_nodes(text: str) -> set[str]:
    """Nodes a netlist declares as lines, sources, or supplies."""
    nodes: set[str] = set()
    for line in text.splitlines():
        for prefix in ("* lines:", "* sources:", "* supplies:"):
            if line.startswith(prefix):
                nodes.update(line[len(prefix):].split())
    return nodes


def lint_netlist(text: str) -> list[str]:
    """Node-name closure check; returns problems (empty list = clean)."""
    known = declared_nodes(text)
    problems = []
    for inst in netlist_instances(text):
        for node in inst.nodes:
            if node not in known:
                problems.append(
                    f"{inst.name} references undeclared node '{node}'"
                )
    return problems


def count_cell_instances(text: str, primitive_library: Mapping[str, str]) -> int:
    cell_names = {
        primitive_library["cell"],
        primitive_library["dummy_row_cell"],
        primitive_library["dummy_col_cell"],
    }
    return sum(1 for i in netlist_instances(text) if i.subcircuit in cell_names)


def count_dummy_loads(text: str, primitive_library: Mapping[str, str]) -> int:
    name = primitive_library["dummy_load"]
    return sum(1 for i in netlist_instances(text) if i.subcircuit == name)


@dataclass(frozen=True)
class StimulusOp:
    kind: OperationKind
    row: int | None = None
    word: Word | None = None
    mask: Mask | None = None

    def __post_init__(self) -> None:
        if self.kind is OperationKind.WRITE and (self.row is None or self.word is None):
            raise ValueError("write needs a row and a word")
        if self.kind is OperationKind.READ and self.row is None:
            raise ValueError("read needs a row")
        if self.kind is OperationKind.SEARCH and self.word is None:
            raise ValueError("search needs a key word")
        if self.kind is OperationKind.AND and self.mask is None:
            raise ValueError("and needs a mask")
        if self.row is not None and self.row < 0:
            raise ValueError(f"row must be non-negative, got {self.row}")


@dataclass(frozen=True)
class StimulusProgram:
    """Operation sequence plus clocking for testbench source generation."""

    ops: tuple[StimulusOp, ...]
    t_clk_ns: float = 1.0
    vdd: float = 1.0

    def __post_init__(self) -> None:
        if self.t_clk_ns <= 0:
            raise ValueError("t_clk_ns must be positive")
        if self.vdd <= 0:
            raise ValueError("vdd must be positive")


_EDGE_NS = 0.001


class _Waveform:
    """Piecewise-constant level track rendered as a PWL source."""

    def __init__(self, idle: float) -> None:
        self.idle = idle
        self.changes: list[tuple[float, float]] = []

    def set_level(self, t: float, level: float) -> None:
        self.changes.append((t, level))

    def render(self, t_end: float) -> str:
        # Abutting windows write the same instant twice (end of one op,
        # start of the next); the later call wins so the level holds through
        # the boundary without a glitch.
        last_at: dict[float, float] = {}
        for t, new in self.changes:
            last_at[round(t, 6)] = new
        points: list[tuple[float, float]] = [(0.0, self.idle)]
        level = self.idle
        for t in sorted(last_at):
            new = last_at[t]
            if new == level:
                continue
            if t <= 0.0:
                points = [(0.0, new)]
            else:
                points.append((t, level))
                points.append((t + _EDGE_NS, new))
            level = new
        if t_end > points[-1][0]:
            points.append((t_end, level))
        return " ".join(f"{t:.3f}n {v:g}" for t, v in points)


def op_cycle_count(kind: OperationKind) -> int:
    """Search/And spend one extra cycle pre-discharging and loading the mask."""
    return 2 if kind in (OperationKind.SEARCH, OperationKind.AND) else 1


def emit_stimuli(program: StimulusProgram, variant: CellVariant) -> str:
    """Testbench source definitions for the reduced model.

    Cycle 0 is idle; the first operation starts at cycle 1.  Reads and
    writes take one cycle; search/AND take two, with the key or mask placed
    on the bitlines during the pre-discharge cycle and held through
    evaluation.  Column 0 rides the directly driven BL0/BLB0 pair; the last
    column's value feeds the bitline driver through BDATA/BDRVEN.
    """
    for op in program.ops:
        if not variant.supports(op.kind):
            raise UnsupportedOperation(
                f"{variant.name} does not support {op.kind.value}"
            )
    T = program.t_clk_ns
    vdd = program.vdd
    is_dynamic = variant is CellVariant.LIM_DYNAMIC

    wl0 = _Waveform(0.0)
    bl0 = _Waveform(0.0)
    blb0 = _Waveform(0.0)
    bdata = _Waveform(0.0)
    bdrven = _Waveform(0.0)
    prechb = _Waveform(vdd)  # active low
    enb = _Waveform(0.0)
    preb0 = _Waveform(vdd) if is_dynamic else None  # active low

    schedule: list[tuple[int, StimulusOp]] = []
    cycle = 1
    for op in program.ops:
        schedule.append((cycle, op))
        cycle += op_cycle_count(op.kind)
    total_cycles = cycle
    t_end = total_cycles * T

    def col_levels(op: StimulusOp) -> tuple[tuple[float, float], float]:
        """((BL0, BLB0) levels, driver BDATA level) in volts."""
        if op.kind is OperationKind.AND:
            assert op.mask is not None
            first = mask_bitline_levels(variant, op.mask[0])
            last = mask_bitline_levels(variant, op.mask[op.mask.width - 1])
        else:
            word = op.word
            assert word is not None
            first = data_bitline_levels(word[0])
            last = data_bitline_levels(word[word.width - 1])
        return (first[0] * vdd, first[1] * vdd), last[0] * vdd

    for start, op in schedule:
        t0 = start * T
        if op.kind is OperationKind.WRITE:
            wl0.set_level(t0, vdd)
            wl0.set_level(t0 + T, 0.0)
            (b0, bb0), drv = col_levels(op)
            bl0.set_level(t0, b0)
            blb0.set_level(t0, bb0)
            bl0.set_level(t0 + T, 0.0)
            blb0.set_level(t0 + T, 0.0)
            bdata.set_level(t0, drv)
            bdata.set_level(t0 + T, 0.0)
            bdrven.set_level(t0, vdd)
            bdrven.set_level(t0 + T, 0.0)
        elif op.kind is OperationKind.READ:
            prechb.set_level(t0, 0.0)
            prechb.set_level(t0 + T / 2, vdd)
            wl0.set_level(t0 + T / 2, vdd)
            wl0.set_level(t0 + T, 0.0)
            enb.set_level(t0 + T / 2, vdd)
            enb.set_level(t0 + T, 0.0)
        else:  # SEARCH or AND: load cycle then evaluate cycle
            prechb.set_level(t0, 0.0)
            prechb.set_level(t0 + T, vdd)
            (b0, bb0), drv = col_levels(op)
            bl0.set_level(t0, b0)
            blb0.set_level(t0, bb0)
            bl0.set_level(t0 + 2 * T, 0.0)
            blb0.set_level(t0 + 2 * T, 0.0)
            bdata.set_level(t0, drv)
            bdata.set_level(t0 + 2 * T, 0.0)
            bdrven.set_level(t0, vdd)
            bdrven.set_level(t0 + 2 * T, 0.0)
            enb.set_level(t0 + T + T / 2, vdd)
            enb.set_level(t0 + 2 * T, 0.0)
            if preb0 is not None and op.kind is OperationKind.AND:
                preb0.set_level(t0, 0.0)
                preb0.set_level(t0 + T, vdd)

    def describe(op: StimulusOp) -> str:
        if op.kind is OperationKind.WRITE:
            assert op.word is not None
            return f"write row {op.row} <- {op.word.to01()}"
        if op.kind is OperationKind.READ:
            return f"read row {op.row}"
        if op.kind is OperationKind.SEARCH:
            assert op.word is not None
            return f"search key {op.word.to01()}"
        assert op.mask is not None
        return f"and mask {op.mask.to01()}"

    out: list[str] = []
    out.append("* testbench stimuli")
    out.append(f"* variant: {variant.value}")
    out.append(f"* t_clk: {T:g} ns  vdd: {vdd:g} V  cycles: {total_cycles}")
    for start, op in schedule:
        span = op_cycle_count(op.kind)
        cycles = (
            f"cycle {start}" if span == 1 else f"cycles {start}-{start + span - 1}"
        )
        out.append(f"* {cycles}: {describe(op)}")
    out.append(f".param VDD={vdd:g}")
    out.append(f".param TCLK={T:g}n")
    out.append(f".param SADELAY={T / 2:g}n")

    tracks: list[tuple[str, _Waveform]] = [
        ("WL0", wl0),
        ("BL0", bl0),
        ("BLB0", blb0),
        ("BDATA", bdata),
        ("BDRVEN", bdrven),
        ("PRECHB", prechb),
        ("ENB", enb),
    ]
    if preb0 is not None:
        tracks.append(("PREB0", preb0))
    for name, wave in tracks:
        out.append(f"V{name} {name} 0 PWL({wave.render(t_end)})")
    out.append(".end")
    return "\n".join(out) + "\n"
