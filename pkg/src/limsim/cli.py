"""Command-line front end: searches, tables, netlists, event logs, audit.

All file outputs are deterministic for a fixed config and seed.  CSV files
use RFC-style quoting with LF line endings; column sets are documented in
docs/formats.md.
"""

from __future__ import annotations

import configparser
import csv
import os
from dataclasses import dataclass

import click

from . import audit as audit_mod
from .array import ArrayState, and_op, new_array, read_word, search, write_word
from .cells import default_bitline_load
from .core import (
    ArrayGeometry,
    CellVariant,
    Mask,
    OperationKind,
    SimulationParams,
    Word,
    make_mask,
    make_word,
)
from .cost import (
    MEMORY_ORDER,
    CalibrationTable,
    TableKind,
    comparison_table,
    default_calibration,
    format_percent,
    structural_estimate,
)
from .errors import ConfigError, LimError
from .maxmin import (
    Encoding,
    SearchMode,
    find_extreme,
    oracle_extreme,
)
from .netlist import (
    StimulusOp,
    StimulusProgram,
    build_reduced_model,
    default_primitive_library,
    emit_netlist,
    emit_stimuli,
    primitive_library_text,
)
from .rng import SplitMix64, random_row_values

_VARIANT_TOKENS = {
    "sram6t": CellVariant.SRAM6T,
    "sram": CellVariant.SRAM6T,
    "camnor": CellVariant.CAM_NOR,
    "cam": CellVariant.CAM_NOR,
    "limdynamic": CellVariant.LIM_DYNAMIC,
    "and_dyn": CellVariant.LIM_DYNAMIC,
    "dynamic": CellVariant.LIM_DYNAMIC,
    "limstatic": CellVariant.LIM_STATIC,
    "and_st": CellVariant.LIM_STATIC,
    "static": CellVariant.LIM_STATIC,
    "limspecial": CellVariant.LIM_SPECIAL,
    "and_sp": CellVariant.LIM_SPECIAL,
    "special": CellVariant.LIM_SPECIAL,
}

_KNOWN_KEYS = {
    "array": {"variant", "rows", "cols"},
    "run": {"seed", "t_clk_ns", "vdd"},
    "maxmin": {"mode", "encoding"},
    "script": {"ops"},
}


@dataclass(frozen=True)
class RunConfig:
    variant: CellVariant
    geometry: ArrayGeometry
    seed: int
    params: SimulationParams
    mode: SearchMode | None
    encoding: Encoding
    ops: tuple[StimulusOp, ...]


def parse_variant(token: str) -> CellVariant:
    key = token.strip().lower()
    if key not in _VARIANT_TOKENS:
        raise ConfigError(
            f"unknown variant '{token}'; expected one of "
            f"{sorted(set(_VARIANT_TOKENS))}"
        )
    return _VARIANT_TOKENS[key]


def _parse_bits(token: str, what: str) -> tuple[int, ...]:
    if not token or set(token) - {"0", "1"}:
        raise ConfigError(f"{what} must be a non-empty 0/1 string, got '{token}'")
    return tuple(int(c) for c in token)


def parse_op(text: str) -> StimulusOp:
    parts = text.split()
    if not parts:
        raise ConfigError("empty operation")
    kind = parts[0].lower()
    try:
        if kind == "write" and len(parts) == 3:
            return StimulusOp(
                OperationKind.WRITE,
                row=int(parts[1]),
                word=make_word(_parse_bits(parts[2], "write data")),
            )
        if kind == "read" and len(parts) == 2:
            return StimulusOp(OperationKind.READ, row=int(parts[1]))
        if kind == "search" and len(parts) == 2:
            return StimulusOp(
                OperationKind.SEARCH,
                word=make_word(_parse_bits(parts[1], "search key")),
            )
        if kind == "and" and len(parts) == 2:
            return StimulusOp(
                OperationKind.AND,
                mask=make_mask(_parse_bits(parts[1], "and mask")),
            )
    except ValueError as exc:
        raise ConfigError(f"bad operation '{text}': {exc}") from exc
    raise ConfigError(
        f"bad operation '{text}'; expected 'write <row> <bits>', "
        "'read <row>', 'search <bits>', or 'and <bits>'"
    )


def load_config(path: str, seed_override: int | None = None) -> RunConfig:
    """Parse and validate a flat INI run configuration."""
    parser = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
    try:
        with open(path, encoding="utf-8") as fh:
            parser.read_file(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except configparser.Error as exc:
        raise ConfigError(f"malformed config {path}: {exc}") from exc

    for section in parser.sections():
        if section not in _KNOWN_KEYS:
            raise ConfigError(f"unknown config section [{section}]")
        unknown = set(parser[section]) - _KNOWN_KEYS[section]
        if unknown:
            raise ConfigError(
                f"unknown keys in [{section}]: {sorted(unknown)}"
            )

    if "array" not in parser:
        raise ConfigError("config needs an [array] section")
    array_sec = parser["array"]
    try:
        variant = parse_variant(array_sec.get("variant", ""))
        rows = array_sec.getint("rows")
        cols = array_sec.getint("cols")
        if rows is None or cols is None:
            raise ConfigError("[array] needs rows and cols")
        geometry = ArrayGeometry(rows, cols)
        run_sec = parser["run"] if "run" in parser else {}
        seed = int(run_sec.get("seed", "0"), 0)
        params = SimulationParams(
            vdd=float(run_sec.get("vdd", "1.0")),
            t_clk_ns=float(run_sec.get("t_clk_ns", "1.0")),
        )
    except (ValueError, LimError) as exc:
        raise ConfigError(f"bad config value: {exc}") from exc

    mode: SearchMode | None = None
    encoding = Encoding.UNSIGNED
    if "maxmin" in parser:
        mode_token = parser["maxmin"].get("mode", "max").strip().lower()
        if mode_token not in ("max", "min"):
            raise ConfigError(f"mode must be max or min, got '{mode_token}'")
        mode = SearchMode(mode_token)
        enc_token = parser["maxmin"].get("encoding", "unsigned").strip().lower()
        if enc_token not in ("unsigned", "twos_complement"):
            raise ConfigError(
                f"encoding must be unsigned or twos_complement, got '{enc_token}'"
            )
        encoding = Encoding(enc_token)

    ops: tuple[StimulusOp, ...] = ()
    if "script" in parser:
        raw = parser["script"].get("ops", "")
        pieces = [p.strip() for chunk in raw.splitlines() for p in chunk.split(";")]
        ops = tuple(parse_op(p) for p in pieces if p)

    if seed_override is not None:
        seed = seed_override
    return RunConfig(
        variant=variant,
        geometry=geometry,
        seed=seed,
        params=params,
        mode=mode,
        encoding=encoding,
        ops=ops,
    )


def _write_csv(path: str, header: list[str], rows: list[list[object]]) -> None:
    with open(path, "w", newline="", encoding="ascii") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def _bitstring(bits: tuple[int, ...]) -> str:
    return "".join(str(b) for b in bits)


def _candidates_string(candidates: int, rows: int) -> str:
    """Membership as a 0/1 string, row 0 first."""
    return "".join("1" if candidates >> r & 1 else "0" for r in range(rows))


def _seeded_array(config: RunConfig) -> ArrayState:
    array = new_array(config.geometry, config.variant)
    rng = SplitMix64(config.seed)
    array.load_rows(random_row_values(rng, config.geometry.rows, config.geometry.cols))
    return array


@click.group()
def main() -> None:
    """Behavioral logic-in-memory array simulator."""


def _fail(exc: Exception) -> None:
    raise click.ClickException(str(exc))


@main.command()
@click.option("--config", "config_path", required=True, type=click.Path())
@click.option("--out", "out_dir", default=".", type=click.Path())
@click.option("--seed", type=int, default=None, help="Override the config seed.")
def maxmin(config_path: str, out_dir: str, seed: int | None) -> None:
    """Run the bit-serial extremum search; writes result.csv and trace.csv."""
    try:
        config = load_config(config_path, seed)
        if config.mode is None:
            raise ConfigError("maxmin needs a [maxmin] section with a mode")
        if not config.variant.is_lim:
            raise ConfigError(
                f"maxmin needs an AND-capable variant, got {config.variant.value}"
            )
        array = _seeded_array(config)
        result = find_extreme(array, config.mode, config.encoding)
    except LimError as exc:
        _fail(exc)

    oracle_row, oracle_value = oracle_extreme(
        array.row_values(), config.geometry.cols, config.mode, config.encoding
    )
    os.makedirs(out_dir, exist_ok=True)
    _write_csv(
        os.path.join(out_dir, "result.csv"),
        [
            "row", "value_bits", "value_int", "steps",
            "oracle_row", "oracle_value_bits", "agrees",
        ],
        [[
            result.row,
            result.value.to01(),
            result.value.value,
            len(result.steps),
            oracle_row,
            Word(config.geometry.cols, oracle_value).to01(),
            int(result.row == oracle_row and result.value.value == oracle_value),
        ]],
    )
    rows = config.geometry.rows
    _write_csv(
        os.path.join(out_dir, "trace.csv"),
        [
            "step", "bit_position", "mask_bits", "and_results",
            "candidates_before", "candidates_after",
        ],
        [
            [
                i,
                t.bit_position,
                t.mask.to01(),
                _bitstring(t.and_results),
                _candidates_string(t.candidates_before, rows),
                _candidates_string(t.candidates_after, rows),
            ]
            for i, t in enumerate(result.steps)
        ],
    )
    from .plotting import save_trace_plot

    save_trace_plot(result, rows, os.path.join(out_dir, "trace.png"))
    click.echo(
        f"row {result.row} value {result.value.to01()} "
        f"steps {len(result.steps)} oracle_agrees "
        f"{int(result.row == oracle_row)}"
    )


@main.command()
@click.option("--size", default=256, show_default=True, type=int)
@click.option("--out", "out_dir", default=".", type=click.Path())
def compare(size: int, out_dir: str) -> None:
    """Regenerate the EDP table and all ten comparison tables as CSV."""
    table = default_calibration()
    os.makedirs(out_dir, exist_ok=True)
    try:
        edp_rows: list[list[object]] = []
        for memory in MEMORY_ORDER:
            for op in (
                OperationKind.WRITE,
                OperationKind.READ,
                OperationKind.SEARCH,
                OperationKind.AND,
            ):
                if not memory.supports(op):
                    continue
                edp_rows.append(
                    [memory.value, op.value, size, f"{table.lookup(memory, op, size):g}"]
                )
        _write_csv(
            os.path.join(out_dir, "edp.csv"),
            ["memory", "op", "size", "edp_pj_ps"],
            edp_rows,
        )
        for kind in TableKind:
            matrix = comparison_table(kind, size, table)
            header = ["memory"] + [m.label for m in matrix.col_memories]
            rows: list[list[object]] = []
            for mem, line in zip(matrix.row_memories, matrix.cells):
                rows.append(
                    [mem.label]
                    + [format_percent(v) if v is not None else "" for v in line]
                )
            _write_csv(os.path.join(out_dir, f"{kind.value}.csv"), header, rows)
    except LimError as exc:
        _fail(exc)
    from .plotting import save_edp_bars

    save_edp_bars(table, size, os.path.join(out_dir, "edp_bars.png"))
    click.echo(f"wrote edp.csv, {len(TableKind)} comparison tables, edp_bars.png")


@main.command()
@click.option("--config", "config_path", required=True, type=click.Path())
@click.option("--out", "out_dir", default=".", type=click.Path())
def netlist(config_path: str, out_dir: str) -> None:
    """Emit netlist.sp, stimuli.sp, and the placeholder primitives."""
    try:
        config = load_config(config_path)
        model = build_reduced_model(config.geometry, config.variant)
        library = default_primitive_library(config.variant)
        netlist_text = emit_netlist(model, library)
        program = StimulusProgram(
            ops=config.ops,
            t_clk_ns=config.params.t_clk_ns,
            vdd=config.params.vdd,
        )
        stimuli_text = emit_stimuli(program, config.variant)
    except LimError as exc:
        _fail(exc)
    os.makedirs(out_dir, exist_ok=True)
    for name, text in (
        ("netlist.sp", netlist_text),
        ("stimuli.sp", stimuli_text),
        ("primitives.sp", primitive_library_text()),
    ):
        with open(os.path.join(out_dir, name), "w", newline="\n", encoding="ascii") as fh:
            fh.write(text)
    click.echo(
        f"wrote netlist.sp ({model.total_cell_instances} cell instances), "
        "stimuli.sp, primitives.sp"
    )


@main.command()
@click.option("--config", "config_path", required=True, type=click.Path())
@click.option("--out", "out_dir", default=".", type=click.Path())
@click.option("--seed", type=int, default=None, help="Override the config seed.")
def simulate(config_path: str, out_dir: str, seed: int | None) -> None:
    """Run the operation script; writes one event row per op to events.csv."""
    try:
        config = load_config(config_path, seed)
        if not config.ops:
            raise ConfigError("simulate needs a [script] section with ops")
        array = new_array(config.geometry, config.variant)
        loads = default_bitline_load(config.variant)
        rows: list[list[object]] = []
        for index, op in enumerate(config.ops):
            if op.kind is OperationKind.WRITE:
                assert op.row is not None and op.word is not None
                event = write_word(array, op.row, op.word)
                result_bits = event.per_row_result
            elif op.kind is OperationKind.READ:
                assert op.row is not None
                word, event = read_word(array, op.row)
                result_bits = word.bits()
            elif op.kind is OperationKind.SEARCH:
                assert op.word is not None
                results, event = search(array, op.word)
                result_bits = results
            else:
                assert op.mask is not None
                results, event = and_op(array, op.mask)
                result_bits = results
            estimate = structural_estimate(event, loads, config.params)
            rows.append(
                [
                    index,
                    op.kind.value,
                    event.rows,
                    event.cols,
                    event.lines_charged,
                    event.lines_discharged,
                    event.dummy_window_units,
                    event.gate_commutations,
                    _bitstring(result_bits),
                    estimate.charge_events,
                    estimate.leak_window_units,
                    estimate.bitline_load_units,
                    f"{estimate.estimate:g}",
                ]
            )
    except LimError as exc:
        _fail(exc)
    os.makedirs(out_dir, exist_ok=True)
    _write_csv(
        os.path.join(out_dir, "events.csv"),
        [
            "op_index", "op", "rows", "cols", "lines_charged",
            "lines_discharged", "dummy_window_units", "gate_commutations",
            "result_bits", "charge_events", "leak_window_units",
            "bitline_load_units", "estimate",
        ],
        rows,
    )
    click.echo(f"wrote events.csv ({len(rows)} ops)")


@main.command()
@click.option("--size", default=256, show_default=True, type=int)
@click.option("--out", "out_dir", default=".", type=click.Path())
def audit(size: int, out_dir: str) -> None:
    """Re-derive every published table cell; nonzero exit on mismatches."""
    try:
        records = audit_mod.audit_tables(size)
    except LimError as exc:
        _fail(exc)
    os.makedirs(out_dir, exist_ok=True)
    _write_csv(
        os.path.join(out_dir, "audit_report.csv"),
        [
            "table", "row", "col", "published", "computed", "delta",
            "status", "note",
        ],
        [
            [
                r.table.value,
                r.row_label,
                r.col_label,
                f"{r.published:g}",
                f"{r.computed:.2f}",
                f"{r.delta:+.2f}",
                r.status,
                r.note,
            ]
            for r in records
        ],
    )
    counts = audit_mod.summarize(records)
    click.echo(
        f"audited {len(records)} cells: {counts['match']} match, "
        f"{counts['explained']} explained, {counts['mismatch']} mismatch"
    )
    if counts["mismatch"]:
        raise click.ClickException("audit found unexplained mismatches")


if __name__ == "__main__":
    main()
