"""Word/mask containers, variant capabilities, and basic validation."""

import pytest

from limsim import (
    ArrayGeometry,
    CellVariant,
    IndexOutOfRange,
    InvalidWidth,
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


def test_word_round_trips_bits_msb_first():
    w = make_word((1, 0, 1, 1, 0))
    assert w.width == 5
    assert w.bits() == (1, 0, 1, 1, 0)
    assert w.to01() == "10110"
    assert w.value == 0b10110
    assert w[0] == 1 and w[1] == 0 and w[4] == 0


def test_word_from_int_matches_make_word():
    assert word_from_int(8, 0xB2) == make_word((1, 0, 1, 1, 0, 0, 1, 0))
    assert word_from_int(3, 0) .to01() == "000"


def test_word_from_int_rejects_out_of_range_values():
    with pytest.raises(InvalidWidth):
        word_from_int(4, 16)
    with pytest.raises(InvalidWidth):
        word_from_int(4, -1)


def test_empty_width_rejected():
    with pytest.raises(InvalidWidth):
        make_word(())
    with pytest.raises(InvalidWidth):
        make_mask(())
    with pytest.raises(InvalidWidth):
        word_from_int(0, 0)


def test_non_binary_bits_rejected():
    with pytest.raises(ValueError):
        make_word((0, 2))
    with pytest.raises(ValueError):
        make_mask((1, -1))


def test_word_index_bounds():
    w = make_word((1, 0))
    with pytest.raises(IndexOutOfRange):
        w[2]
    with pytest.raises(IndexOutOfRange):
        w[-3]


def test_one_hot_mask_positions():
    m = one_hot_mask(4, 0)
    assert m.to01() == "1000"
    assert one_hot_mask(4, 3).to01() == "0001"
    assert isinstance(m, Mask)


def test_one_hot_mask_bad_position():
    with pytest.raises(IndexOutOfRange):
        one_hot_mask(4, 4)
    with pytest.raises(IndexOutOfRange):
        one_hot_mask(4, -1)


def test_words_and_masks_are_hashable_values():
    assert make_word((1, 0)) == make_word((1, 0))
    assert len({make_word((1, 0)), make_word((1, 0)), make_word((0, 1))}) == 2
    # same bits but different container types stay distinct
    assert make_word((1, 0)) != make_mask((1, 0))


def test_variant_capability_matrix():
    assert CellVariant.SRAM6T.supported_operations == (
        OperationKind.READ,
        OperationKind.WRITE,
    )
    assert CellVariant.CAM_NOR.supported_operations == (
        OperationKind.READ,
        OperationKind.WRITE,
        OperationKind.SEARCH,
    )
    for variant in LIM_VARIANTS:
        assert variant.supported_operations == (
            OperationKind.READ,
            OperationKind.WRITE,
            OperationKind.SEARCH,
            OperationKind.AND,
        )
        assert variant.is_lim
        assert variant.supports_search
    assert not CellVariant.SRAM6T.is_lim
    assert not CellVariant.SRAM6T.supports_search
    assert CellVariant.CAM_NOR.supports_search
    assert not CellVariant.CAM_NOR.is_lim


def test_variant_labels():
    assert [v.label for v in (
        CellVariant.SRAM6T,
        CellVariant.CAM_NOR,
        CellVariant.LIM_SPECIAL,
        CellVariant.LIM_DYNAMIC,
        CellVariant.LIM_STATIC,
    )] == ["SRAM", "CAM", "AND SP", "AND DYN", "AND ST"]


def test_geometry_validation():
    g = ArrayGeometry(4, 6)
    assert g.rows == 4 and g.cols == 6
    with pytest.raises(InvalidWidth):
        ArrayGeometry(0, 6)
    with pytest.raises(InvalidWidth):
        ArrayGeometry(4, 0)


def test_simulation_params_validation():
    p = SimulationParams()
    assert p.vdd == 1.0 and p.t_clk_ns == 1.0
    with pytest.raises(ValueError):
        SimulationParams(vdd=0.0)
    with pytest.raises(ValueError):
        SimulationParams(t_clk_ns=-1.0)


def test_word_is_immutable():
    w = make_word((1, 0))
    with pytest.raises(Exception):
        w.value = 3  # type: ignore[misc]
