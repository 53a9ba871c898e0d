"""Behavioral simulator for logic-in-memory cell arrays.

Models five cell variants (two conventional, three in-memory AND designs),
their sensing behavior under a current-saving scheme, bit-serial max/min
search built from in-array AND steps, calibrated energy-delay-product
comparisons, and reduced-array netlist/stimulus emission for circuit-level
characterization.
"""

from .array import (
    ArrayState,
    Phase,
    PhaseSequence,
    SensingEvent,
    and_op,
    new_array,
    phase_sequence,
    read_word,
    search,
    write_word,
)
from .audit import AuditRecord, audit_tables, summarize
from .cells import (
    BitlineLoad,
    DEFAULT_BITLINE_LOADS,
    LineLevel,
    PullDownState,
    and_gate_output,
    cam_bit_mismatch,
    data_bitline_levels,
    default_bitline_load,
    mask_bitline_levels,
    pulldown_state,
    resolve_line,
    sensed_and,
)
from .core import (
    ArrayGeometry,
    CellVariant,
    LIM_VARIANTS,
    Mask,
    OperationKind,
    SimulationParams,
    Word,
    make_mask,
    make_word,
    one_hot_mask,
    word_from_int,
)
from .cost import (
    CalibrationTable,
    ComparisonTable,
    EstimateCoefficients,
    MEMORY_ORDER,
    StructuralEstimate,
    TableKind,
    comparison_table,
    default_calibration,
    edp_lookup,
    format_percent,
    load_calibration,
    relative_variation,
    structural_estimate,
)
from .errors import (
    ConfigError,
    EmptySet,
    GeometryNotBlockAligned,
    IndexOutOfRange,
    InvalidWidth,
    LimError,
    MissingPrimitive,
    NonPositiveEdp,
    UncalibratedPoint,
    UnsupportedOperation,
    WidthMismatch,
)
from .maxmin import (
    Encoding,
    ExtremeResult,
    SearchMode,
    StepTrace,
    candidate_rows,
    find_extreme,
    full_candidates,
    oracle_extreme,
    priority_select,
    step,
)
from .netlist import (
    BLOCK_ALIGNMENT,
    CellPlacement,
    NetlistInstance,
    ReducedArrayModel,
    StimulusOp,
    StimulusProgram,
    build_reduced_model,
    count_cell_instances,
    count_dummy_loads,
    declared_nodes,
    default_primitive_library,
    emit_netlist,
    emit_stimuli,
    lint_netlist,
    netlist_instances,
    op_cycle_count,
    required_blocks,
)
from .rng import SplitMix64, random_row_value, random_row_values

__version__ = "0.1.0"

__all__ = [
    "ArrayGeometry",
    "ArrayState",
    "AuditRecord",
    "BLOCK_ALIGNMENT",
    "BitlineLoad",
    "CalibrationTable",
    "CellPlacement",
    "CellVariant",
    "ComparisonTable",
    "ConfigError",
    "DEFAULT_BITLINE_LOADS",
    "EmptySet",
    "Encoding",
    "EstimateCoefficients",
    "ExtremeResult",
    "GeometryNotBlockAligned",
    "IndexOutOfRange",
    "InvalidWidth",
    "LIM_VARIANTS",
    "LimError",
    "LineLevel",
    "MEMORY_ORDER",
    "Mask",
    "MissingPrimitive",
    "NetlistInstance",
    "NonPositiveEdp",
    "OperationKind",
    "Phase",
    "PhaseSequence",
    "PullDownState",
    "ReducedArrayModel",
    "SearchMode",
    "SensingEvent",
    "SimulationParams",
    "SplitMix64",
    "StepTrace",
    "StimulusOp",
    "StimulusProgram",
    "StructuralEstimate",
    "TableKind",
    "UncalibratedPoint",
    "UnsupportedOperation",
    "WidthMismatch",
    "Word",
    "and_gate_output",
    "and_op",
    "audit_tables",
    "build_reduced_model",
    "cam_bit_mismatch",
    "candidate_rows",
    "comparison_table",
    "count_cell_instances",
    "count_dummy_loads",
    "data_bitline_levels",
    "declared_nodes",
    "default_bitline_load",
    "default_calibration",
    "default_primitive_library",
    "edp_lookup",
    "emit_netlist",
    "emit_stimuli",
    "find_extreme",
    "format_percent",
    "full_candidates",
    "lint_netlist",
    "load_calibration",
    "make_mask",
    "make_word",
    "mask_bitline_levels",
    "netlist_instances",
    "new_array",
    "one_hot_mask",
    "op_cycle_count",
    "oracle_extreme",
    "phase_sequence",
    "priority_select",
    "pulldown_state",
    "random_row_value",
    "random_row_values",
    "read_word",
    "relative_variation",
    "required_blocks",
    "resolve_line",
    "search",
    "sensed_and",
    "step",
    "structural_estimate",
    "summarize",
    "word_from_int",
    "write_word",
]
