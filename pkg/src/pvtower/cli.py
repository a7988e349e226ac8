"""Command-line front end.

Subcommands: rank1, tower, koszul (datum or symbolic), homog, oracle,
shape.  Datum-consuming commands read JSON shaped as
``{"schema": 1, "datum": {...}}`` from stdin or a file.  Output is text
or JSON (``--format``); JSON outputs carry a top-level ``"schema": 1``
and are byte-identical across runs for fixed inputs.  Unknown input
fields are rejected, never ignored.

Exit codes: 0 success, 2 input validation failure, 3 ambiguity flag
raised under ``--strict``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from .cubical import oracle_compare
from .koszul import (
    DatumError,
    ModuleDatum,
    build_symbolic,
    datum_cohomology,
    endpoint_augmentation_surjective,
    generic_rank_exactness,
)
from .exterior import Covector
from .liegroups import SeriesSpec, homogeneous_ktheory, weyl_order
from .tower import euler_characteristic, pv_rank1, pv_tower, tower_shape

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_AMBIGUOUS = 3


@dataclass
class RunConfig:
    command: str
    input_path: str | None = None
    seed: int = 0
    trials: int = 8
    output_format: str = "text"
    strict: bool = False
    series: str | None = None
    n: int | None = None
    k: int | None = None
    w: int | None = None
    dual: bool = False

    def __post_init__(self) -> None:
        if self.trials < 1:
            raise ValueError("trials must be at least 1")


class InputError(ValueError):
    """Invalid command-line input; maps to exit code 2."""


def _load_datum(payload: bytes) -> ModuleDatum:
    try:
        obj = json.loads(payload.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise InputError(f"malformed JSON: {exc}") from None
    if not isinstance(obj, dict):
        raise InputError("input: expected a JSON object")
    unknown = set(obj) - {"schema", "datum"}
    if unknown:
        raise InputError(f"input: unknown field {sorted(unknown)[0]!r}")
    if obj.get("schema") != SCHEMA_VERSION:
        raise InputError(f"input.schema: expected {SCHEMA_VERSION}")
    if "datum" not in obj or not isinstance(obj["datum"], dict):
        raise InputError("input.datum: missing or not an object")
    try:
        return ModuleDatum.from_json_dict(obj["datum"])
    except DatumError as exc:
        raise InputError(str(exc)) from None


def _dump(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def _use_color() -> bool:
    mode = os.environ.get("PV_COLOR", "auto")
    if mode == "never":
        return False
    return sys.stdout.isatty()


def _mark(ok: bool) -> str:
    text = "ok" if ok else "AMBIGUOUS"
    if _use_color():
        code = "32" if ok else "33"
        return f"\x1b[{code}m{text}\x1b[0m"
    return text


def _require(config: RunConfig, *names: str) -> None:
    for name in names:
        if getattr(config, name) is None:
            raise InputError(f"--{name} is required for '{config.command}'")


# ---------------------------------------------------------------------------
# Command implementations: each returns (exit_code, output_text)
# ---------------------------------------------------------------------------


def _cmd_rank1(config: RunConfig, payload: bytes) -> tuple[int, str]:
    datum = _load_datum(payload)
    if datum.n != 1:
        raise InputError(f"datum.n: rank1 needs exactly one endomorphism, got {datum.n}")
    try:
        result = pv_rank1(datum)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if config.output_format == "json":
        out = _dump(
            {
                "schema": SCHEMA_VERSION,
                "K0": str(result.group.even),
                "K1": str(result.group.odd),
                "ambiguous": result.ambiguous,
                "reasons": list(result.reasons),
            }
        )
    else:
        lines = [
            f"K0 = {result.group.even}",
            f"K1 = {result.group.odd}",
            f"extensions: {_mark(not result.ambiguous)}",
        ]
        lines += [f"  {r}" for r in result.reasons]
        out = "\n".join(lines) + "\n"
    code = EXIT_AMBIGUOUS if (config.strict and result.ambiguous) else EXIT_OK
    return code, out


def _cmd_tower(config: RunConfig, payload: bytes) -> tuple[int, str]:
    datum = _load_datum(payload)
    try:
        report = pv_tower(datum)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    euler = euler_characteristic(list(report.cohomology))
    if config.output_format == "json":
        body = report.to_json_dict()
        body["schema"] = SCHEMA_VERSION
        body["euler"] = euler
        out = _dump(body)
    else:
        lines = [f"rank n = {report.n}", f"final = {report.final}"]
        for lvl in report.levels:
            lines.append(
                f"level {lvl.level}: {lvl.group}  [{_mark(not lvl.ambiguous)}]"
            )
        lines.append(f"euler characteristic = {euler}")
        lines.append(f"extensions: {_mark(not report.ambiguous)}")
        lines += [f"  {r}" for r in report.reasons]
        out = "\n".join(lines) + "\n"
    code = EXIT_AMBIGUOUS if (config.strict and report.ambiguous) else EXIT_OK
    return code, out


def _cmd_koszul(config: RunConfig, payload: bytes) -> tuple[int, str]:
    if config.n is not None:
        # Symbolic regularity report for the covector (1 - t_1, ..., 1 - t_n).
        if config.n < 1:
            raise InputError("--n must be at least 1")
        cx = build_symbolic(Covector.standard(config.n))
        report = generic_rank_exactness(cx, trials=config.trials, seed=config.seed)
        aug = endpoint_augmentation_surjective(cx)
        if config.output_format == "json":
            out = _dump(
                {
                    "schema": SCHEMA_VERSION,
                    "n": config.n,
                    "trials": config.trials,
                    "seed": config.seed,
                    "spots": [
                        {
                            "spot": s.spot,
                            "module_rank": s.module_rank,
                            "observed_rank": s.observed_rank,
                            "consistent": s.consistent,
                        }
                        for s in report.spots
                    ],
                    "augmentation_onto_Z": aug,
                }
            )
        else:
            lines = [f"regular covector, rank {config.n}"]
            for s in report.spots:
                lines.append(
                    f"spot {s.spot}: module rank {s.module_rank}, observed rank "
                    f"{s.observed_rank}, consistent={s.consistent}"
                )
            lines.append(f"endpoint augmentation onto Z: {aug}")
            out = "\n".join(lines) + "\n"
        return EXIT_OK, out

    datum = _load_datum(payload)
    try:
        groups = datum_cohomology(datum)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    euler = euler_characteristic(groups)
    if config.output_format == "json":
        out = _dump(
            {
                "schema": SCHEMA_VERSION,
                "n": datum.n,
                "cohomology": [
                    {"spot": d, **g.to_dict()} for d, g in enumerate(groups)
                ],
                "euler": euler,
            }
        )
    else:
        lines = [f"rank n = {datum.n}"]
        for d, g in enumerate(groups):
            lines.append(f"H at spot {d}: {g}")
        lines.append(f"euler characteristic = {euler}")
        out = "\n".join(lines) + "\n"
    return EXIT_OK, out


def _cmd_homog(config: RunConfig, payload: bytes) -> tuple[int, str]:
    _require(config, "series", "n", "k")
    try:
        big = SeriesSpec(config.series, config.n)
        small = SeriesSpec(config.series, config.k)
        result = homogeneous_ktheory(big, small, trials=config.trials, seed=config.seed)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if config.output_format == "json":
        out = _dump(
            {
                "schema": SCHEMA_VERSION,
                "series": config.series,
                "n": config.n,
                "k": config.k,
                "even": str(result.group.even),
                "odd": str(result.group.odd),
                "spot_ranks": list(result.spot_ranks),
                "witnessed": result.exactness.all_consistent,
            }
        )
    else:
        lines = [
            f"K-theory of {big}/{small}:",
            f"  even = {result.group.even}",
            f"  odd  = {result.group.odd}",
            f"  nonzero spot ranks: {list(result.nonzero_ranks)}",
        ]
        out = "\n".join(lines) + "\n"
    return EXIT_OK, out


def _cmd_oracle(config: RunConfig, payload: bytes) -> tuple[int, str]:
    _require(config, "n")
    if config.n < 1:
        raise InputError("--n must be at least 1")
    match = oracle_compare(config.n)
    if config.output_format == "json":
        out = _dump({"schema": SCHEMA_VERSION, "n": config.n, "match": match})
    else:
        out = f"cubical cochain matrices match contraction for n={config.n}: {match}\n"
    return EXIT_OK, out


def _cmd_shape(config: RunConfig, payload: bytes) -> tuple[int, str]:
    _require(config, "n")
    if config.w is not None:
        w = config.w
    elif config.series is not None:
        try:
            w = weyl_order(SeriesSpec(config.series, config.n))
        except ValueError as exc:
            raise InputError(str(exc)) from None
    else:
        w = 1
    try:
        shape = tower_shape(config.n, w, dual=config.dual)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if config.output_format == "json":
        body = shape.to_json_dict()
        body["schema"] = SCHEMA_VERSION
        out = _dump(body)
    else:
        lines = [f"tower shape: n={shape.n}, w={shape.w}, dual={shape.dual}"]
        for obj in shape.objects:
            lines.append(
                f"  [{obj.kind}] suspension {obj.suspension}, multiplicity "
                f"{obj.multiplicity}: {obj.label}"
            )
        out = "\n".join(lines) + "\n"
    return EXIT_OK, out


_COMMANDS = {
    "rank1": _cmd_rank1,
    "tower": _cmd_tower,
    "koszul": _cmd_koszul,
    "homog": _cmd_homog,
    "oracle": _cmd_oracle,
    "shape": _cmd_shape,
}

_NEEDS_INPUT = {"rank1", "tower"}


def run(config: RunConfig, payload: bytes) -> tuple[int, str]:
    """Execute one command; returns (exit code, output text)."""
    try:
        return _COMMANDS[config.command](config, payload)
    except InputError:
        raise
    except DatumError as exc:
        raise InputError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pv",
        description="Exact K-theory of crossed products via Koszul complexes "
        "and Pimsner-Voiculescu towers.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("rank1", "crossed-product K-theory for a single automorphism"),
        ("tower", "full tower: level groups and final K-theory"),
        ("koszul", "Koszul cohomology of a datum, or regularity report via --n"),
        ("homog", "K-theory of a classical homogeneous space"),
        ("oracle", "compare cubical cochain matrices with contraction"),
        ("shape", "structural tower diagram data"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("input", nargs="?", default=None, help="input JSON path (default: stdin)")
        p.add_argument("--series", choices=("A", "B", "C", "D"), default=None)
        p.add_argument("--n", type=int, default=None)
        p.add_argument("--k", type=int, default=None)
        p.add_argument("--w", type=int, default=None, help="Weyl multiplicity for 'shape'")
        p.add_argument("--dual", action="store_true", help="dual tower labels for 'shape'")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--trials", type=int, default=8)
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--strict", action="store_true", help="exit 3 on ambiguity flags")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = RunConfig(
            command=args.command,
            input_path=args.input,
            seed=args.seed,
            trials=args.trials,
            output_format=args.format,
            strict=args.strict,
            series=args.series,
            n=args.n,
            k=args.k,
            w=args.w,
            dual=args.dual,
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID

    payload = b""
    needs_input = config.command in _NEEDS_INPUT or (
        config.command == "koszul" and config.n is None
    )
    if needs_input:
        if config.input_path:
            try:
                with open(config.input_path, "rb") as fh:
                    payload = fh.read()
            except OSError as exc:
                print(f"error: {exc}", file=sys.stderr)
                return EXIT_INVALID
        else:
            payload = sys.stdin.buffer.read()

    try:
        code, output = run(config, payload)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    sys.stdout.write(output)
    return code


if __name__ == "__main__":
    sys.exit(main())
