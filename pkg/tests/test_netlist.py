"""Reduced-model construction, netlist emission, lint, stimuli."""

import pathlib
import re

import pytest

from limsim import (
    ArrayGeometry,
    BLOCK_ALIGNMENT,
    CellVariant,
    GeometryNotBlockAligned,
    MissingPrimitive,
    OperationKind,
    StimulusOp,
    StimulusProgram,
    UnsupportedOperation,
    build_reduced_model,
    count_cell_instances,
    count_dummy_loads,
    declared_nodes,
    default_primitive_library,
    emit_netlist,
    emit_stimuli,
    lint_netlist,
    make_mask,
    make_word,
    netlist_instances,
    op_cycle_count,
    required_blocks,
)

GOLDEN = pathlib.Path(__file__).parent / "golden"

ALL_VARIANTS = tuple(CellVariant)


def build_text(rows, cols, variant):
    model = build_reduced_model(ArrayGeometry(rows, cols), variant)
    return emit_netlist(model, default_primitive_library(variant))


def test_reduced_model_counts():
    model = build_reduced_model(ArrayGeometry(64, 64), CellVariant.CAM_NOR)
    assert model.dummy_row_cells == 62
    assert model.dummy_col_cells == 63
    assert model.dummy_loads == 64
    assert model.total_cell_instances == 64 + 64 - 1
    roles = {cell.role: cell for cell in model.real_cells}
    assert roles["read_write"].row == 0 and roles["read_write"].col == 63
    assert roles["search_and"].row == 0 and roles["search_and"].col == 0


def test_block_alignment_is_enforced():
    assert BLOCK_ALIGNMENT == 32
    with pytest.raises(GeometryNotBlockAligned):
        build_reduced_model(ArrayGeometry(100, 64), CellVariant.SRAM6T)
    with pytest.raises(GeometryNotBlockAligned):
        build_reduced_model(ArrayGeometry(64, 100), CellVariant.SRAM6T)
    with pytest.raises(GeometryNotBlockAligned):
        build_reduced_model(ArrayGeometry(16, 16), CellVariant.SRAM6T)


@pytest.mark.parametrize("size", [32, 64, 128, 256])
@pytest.mark.parametrize("variant", ALL_VARIANTS)
def test_parse_back_counts_at_all_block_sizes(size, variant):
    text = build_text(size, size, variant)
    library = default_primitive_library(variant)
    assert count_cell_instances(text, library) == 2 * size - 1
    assert count_dummy_loads(text, library) == size
    assert lint_netlist(text) == []


def test_rectangular_geometry_counts():
    text = build_text(64, 128, CellVariant.LIM_STATIC)
    library = default_primitive_library(CellVariant.LIM_STATIC)
    assert count_cell_instances(text, library) == 64 + 128 - 1
    assert count_dummy_loads(text, library) == 64


def test_emission_is_deterministic():
    for variant in ALL_VARIANTS:
        assert build_text(32, 32, variant) == build_text(32, 32, variant)


@pytest.mark.parametrize("variant", ALL_VARIANTS)
def test_netlist_matches_golden(variant):
    expected = (GOLDEN / f"netlist_{variant.value}_32x32.sp").read_text()
    assert build_text(32, 32, variant) == expected


def test_large_netlist_matches_golden():
    expected = (GOLDEN / "netlist_limdynamic_64x64.sp").read_text()
    assert build_text(64, 64, CellVariant.LIM_DYNAMIC) == expected


def test_instance_parser_returns_name_nodes_subckt():
    text = build_text(32, 32, CellVariant.SRAM6T)
    instances = {inst.name: inst for inst in netlist_instances(text)}
    cell = instances["XCELL_RW"]
    assert cell.subcircuit == "CELL_SRAM6T"
    assert cell.nodes == ("WL0", "BL31", "BLB31", "VDD", "0")
    assert "XDML" not in instances  # no dummy line on the plain array


def test_variant_gating_of_lines_and_blocks():
    sram = declared_nodes(build_text(32, 32, CellVariant.SRAM6T))
    cam = declared_nodes(build_text(32, 32, CellVariant.CAM_NOR))
    dyn = declared_nodes(build_text(32, 32, CellVariant.LIM_DYNAMIC))
    special = declared_nodes(build_text(32, 32, CellVariant.LIM_SPECIAL))
    assert "ML0" not in sram and "ANDL0" not in sram
    assert "ML0" in cam and "ANDL0" not in cam
    assert "ML0" in dyn and "ANDL0" in dyn and "PREB0" in dyn
    assert "PREB0" not in special and "ANDL0" in special


def test_required_blocks_follow_capabilities():
    sram_model = build_reduced_model(ArrayGeometry(32, 32), CellVariant.SRAM6T)
    lim_model = build_reduced_model(ArrayGeometry(32, 32), CellVariant.LIM_STATIC)
    sram_blocks = required_blocks(sram_model)
    lim_blocks = required_blocks(lim_model)
    assert "match_sa" not in sram_blocks and "and_sa" not in sram_blocks
    assert "dummy_line" not in sram_blocks
    assert "match_sa" in lim_blocks and "and_sa" in lim_blocks
    assert "dummy_line" in lim_blocks
    for always in ("cell", "dummy_row_cell", "dummy_col_cell", "dummy_load",
                   "precharge", "delay_sa", "read_sa", "bitline_driver"):
        assert always in sram_blocks and always in lim_blocks


def test_missing_primitive_is_reported():
    model = build_reduced_model(ArrayGeometry(32, 32), CellVariant.LIM_DYNAMIC)
    library = default_primitive_library(CellVariant.LIM_DYNAMIC)
    del library["and_sa"]
    with pytest.raises(MissingPrimitive):
        emit_netlist(model, library)


def test_lint_catches_undeclared_nodes():
    text = build_text(32, 32, CellVariant.CAM_NOR)
    broken = text.replace("XMLSA ML0", "XMLSA MLX")
    problems = lint_netlist(broken)
    assert any("MLX" in p for p in problems)


def test_dummy_loads_attach_to_the_sense_disable_rail():
    # search-capable arrays hang the loads on the dummy sense output;
    # the plain array uses the sense-enable rail
    cam = build_text(32, 32, CellVariant.CAM_NOR)
    assert re.search(r"XDLOAD0 DMLSAO VDD 0 DUMMYLOAD", cam)
    sram = build_text(32, 32, CellVariant.SRAM6T)
    assert re.search(r"XDLOAD0 SAEN VDD 0 DUMMYLOAD", sram)


FULL_PROGRAM = StimulusProgram(
    ops=(
        StimulusOp(OperationKind.WRITE, row=0, word=make_word((1, 0, 1, 1))),
        StimulusOp(OperationKind.READ, row=0),
        StimulusOp(OperationKind.SEARCH, word=make_word((1, 0, 1, 1))),
        StimulusOp(OperationKind.AND, mask=make_mask((0, 1, 0, 0))),
    )
)


def test_op_cycle_counts():
    assert op_cycle_count(OperationKind.WRITE) == 1
    assert op_cycle_count(OperationKind.READ) == 1
    assert op_cycle_count(OperationKind.SEARCH) == 2
    assert op_cycle_count(OperationKind.AND) == 2


@pytest.mark.parametrize(
    "variant",
    [CellVariant.LIM_DYNAMIC, CellVariant.LIM_SPECIAL],
)
def test_stimuli_match_golden(variant):
    expected = (GOLDEN / f"stimuli_{variant.value}.sp").read_text()
    assert emit_stimuli(FULL_PROGRAM, variant) == expected


def test_sram_stimuli_match_golden():
    program = StimulusProgram(ops=FULL_PROGRAM.ops[:2])
    expected = (GOLDEN / "stimuli_sram6t.sp").read_text()
    assert emit_stimuli(program, CellVariant.SRAM6T) == expected


def test_stimuli_reject_unsupported_ops():
    with pytest.raises(UnsupportedOperation):
        emit_stimuli(FULL_PROGRAM, CellVariant.SRAM6T)
    search_only = StimulusProgram(
        ops=(StimulusOp(OperationKind.SEARCH, word=make_word((1, 0))),)
    )
    emit_stimuli(search_only, CellVariant.CAM_NOR)  # fine
    and_only = StimulusProgram(
        ops=(StimulusOp(OperationKind.AND, mask=make_mask((1, 0))),)
    )
    with pytest.raises(UnsupportedOperation):
        emit_stimuli(and_only, CellVariant.CAM_NOR)


def pwl_points(text, name):
    line = next(l for l in text.splitlines() if l.startswith(f"V{name} "))
    return [
        (float(t), float(v))
        for t, v in re.findall(r"([0-9.]+)n ([0-9.eE+-]+)", line)
    ]


def level_at(points, t):
    level = points[0][1]
    for pt, pv in points:
        if pt <= t:
            level = pv
        else:
            break
    return level


def test_word_line_pulses_write_then_half_read():
    text = emit_stimuli(FULL_PROGRAM, CellVariant.LIM_DYNAMIC)
    wl0 = pwl_points(text, "WL0")
    # cycle 1 is the write: high across the full cycle
    assert level_at(wl0, 1.5) == 1.0
    # cycle 2 is the read: low first half, high second half
    assert level_at(wl0, 2.2) == 0.0
    assert level_at(wl0, 2.8) == 1.0
    # never raised again during search/AND
    assert level_at(wl0, 4.0) == 0.0
    assert level_at(wl0, 6.0) == 0.0


def test_pwl_times_are_strictly_increasing():
    for variant in (CellVariant.LIM_DYNAMIC, CellVariant.LIM_SPECIAL,
                    CellVariant.LIM_STATIC):
        text = emit_stimuli(FULL_PROGRAM, variant)
        for line in text.splitlines():
            if line.startswith("V"):
                times = [t for t, _ in pwl_points(line, line.split()[0][1:])]
                assert times == sorted(set(times)), line


def test_special_and_mask_drives_the_pair_active_low():
    program = StimulusProgram(
        ops=(StimulusOp(OperationKind.AND, mask=make_mask((1, 0, 0, 1))),)
    )
    text = emit_stimuli(program, CellVariant.LIM_SPECIAL)
    # op occupies cycles 1-2; the selected first column pulls BL0 low and
    # raises the complement for the whole window
    bl0 = pwl_points(text, "BL0")
    blb0 = pwl_points(text, "BLB0")
    for t in (1.5, 2.5):
        assert level_at(bl0, t) == 0.0
        assert level_at(blb0, t) == 1.0
    # the dynamic encoding is the opposite polarity
    text = emit_stimuli(program, CellVariant.LIM_DYNAMIC)
    bl0 = pwl_points(text, "BL0")
    blb0 = pwl_points(text, "BLB0")
    for t in (1.5, 2.5):
        assert level_at(bl0, t) == 1.0
        assert level_at(blb0, t) == 0.0


def test_gate_precharge_source_only_for_the_dynamic_cell():
    dyn = emit_stimuli(FULL_PROGRAM, CellVariant.LIM_DYNAMIC)
    assert "VPREB0" in dyn
    static = emit_stimuli(FULL_PROGRAM, CellVariant.LIM_STATIC)
    assert "VPREB0" not in static
    # active low, and only around the AND pre-discharge cycle (cycle 5)
    preb = pwl_points(dyn, "PREB0")
    assert level_at(preb, 0.5) == 1.0
    assert level_at(preb, 5.5) == 0.0
    assert level_at(preb, 6.5) == 1.0


def test_sense_enable_window():
    text = emit_stimuli(FULL_PROGRAM, CellVariant.LIM_SPECIAL)
    enb = pwl_points(text, "ENB")
    # second half of the read cycle and of each evaluate cycle
    assert level_at(enb, 2.75) == 1.0
    assert level_at(enb, 4.75) == 1.0
    assert level_at(enb, 6.75) == 1.0
    # never during write or pre-discharge cycles
    for t in (1.5, 3.5, 5.5):
        assert level_at(enb, t) == 0.0


def test_param_lines_follow_the_clock():
    program = StimulusProgram(ops=FULL_PROGRAM.ops, t_clk_ns=2.0, vdd=0.9)
    text = emit_stimuli(program, CellVariant.LIM_STATIC)
    assert ".param VDD=0.9" in text
    assert ".param TCLK=2n" in text
    assert ".param SADELAY=1n" in text


def test_stimulus_op_validation():
    with pytest.raises(ValueError):
        StimulusOp(OperationKind.WRITE, row=0)  # missing word
    with pytest.raises(ValueError):
        StimulusOp(OperationKind.READ)  # missing row
    with pytest.raises(ValueError):
        StimulusOp(OperationKind.SEARCH, word=None)
    with pytest.raises(ValueError):
        StimulusOp(OperationKind.AND)
    with pytest.raises(ValueError):
        StimulusOp(OperationKind.READ, row=-1)
