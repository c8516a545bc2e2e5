"""Batch front door: load fixtures, run selected analyses, emit reports.

Exit codes: 0 clean (warnings allowed), 1 assertion-level failure in some
report, 2 I/O or parse trouble.  Reports are JSON with a fixed key order, so
identical spec+seed runs are byte-identical.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from . import fixtures
from .errors import ParseError, ReductionError, WorkbenchError
from .fields import Field
from .invariants import SURFACE_OPS, ScanConfig, analyze_surface, charp_scan, report_bytes
from .linalg import set_matrix_dump_sink
from .plane_lemma import castelnuovo_check, load_plane_curve, syzygy_space
from .surface import load_surface, reduce_mod_p

ALL_OPS = SURFACE_OPS + ("czlemma", "scan")


@dataclass(frozen=True)
class RunSpec:
    inputs: tuple
    ops: tuple
    field_override: str | None = None
    seed: int = 0
    out: str | None = None
    dump_matrices: str | None = None
    strategy: str | None = None

    def __post_init__(self):
        if not self.ops:
            raise ParseError("at least one operation is required")
        for op in self.ops:
            if op not in ALL_OPS:
                raise ParseError(f"unknown operation {op!r} (choose from {', '.join(ALL_OPS)})")


def _load_document(path_or_name: str) -> dict:
    try:
        return fixtures.bundled_document(path_or_name)
    except KeyError:
        pass
    with open(path_or_name, "r", encoding="utf-8") as handle:
        return json.load(handle)


def _analyze_curve(curve, ops) -> dict:
    report = {
        "kind": "curve",
        "curve": curve.name,
        "field": curve.field.describe(),
        "degree": curve.n,
        "nodal": curve.nodal,
    }
    dims = {str(l): syzygy_space(curve, l).dim for l in range(max(curve.n - 1, 0))}
    report["czlemma"] = {
        "holds": castelnuovo_check(curve),
        "syzygy_dims": dims,
    }
    report["warnings"] = []
    report["status"] = "ok" if report["czlemma"]["holds"] else "failed"
    return report


def _apply_field_override(doc: dict, override: str) -> dict:
    current = doc.get("field", "rationals")
    if override == current:
        return doc
    if override.startswith("prime:") and current == "rationals":
        return doc  # reduction happens after loading the rational model
    raise ReductionError(
        f"field override {override!r} incompatible with fixture field {current!r}"
    )


def _process_input(name: str, spec: RunSpec) -> dict:
    doc = _load_document(name)
    if spec.field_override:
        doc = _apply_field_override(doc, spec.field_override)
    if "g" in doc:
        if "czlemma" not in spec.ops:
            return {
                "kind": "curve",
                "curve": doc.get("name", name),
                "warnings": ["no curve operation requested; nothing to do"],
                "status": "ok",
            }
        return _analyze_curve(load_plane_curve(doc), spec.ops)
    if "recipe" in doc:
        if "scan" not in spec.ops:
            return {
                "kind": "scan",
                "warnings": ["no scan operation requested; nothing to do"],
                "status": "ok",
            }
        config = ScanConfig(
            p=doc["p"],
            d=doc["d"],
            trials=doc["trials"],
            seed=doc.get("seed", spec.seed),
            recipe=doc["recipe"],
        )
        report = charp_scan(config)
        report["status"] = "ok"
        return report
    if "F" in doc:
        surface = load_surface(doc)
        if spec.field_override and spec.field_override.startswith("prime:"):
            surface = reduce_mod_p(surface, int(spec.field_override.split(":", 1)[1]))
        ops = [op for op in spec.ops if op in SURFACE_OPS]
        if not ops:
            return {
                "kind": "surface",
                "surface": surface.name,
                "warnings": ["no surface operation requested; nothing to do"],
                "status": "ok",
            }
        return analyze_surface(surface, ops, spec.strategy)
    raise ParseError(f"cannot tell what kind of fixture {name!r} is (no F, g or recipe key)")


def run(spec: RunSpec) -> int:
    """Process every input; write one report per input; return the exit code."""
    dump_handle = None
    if spec.dump_matrices:
        os.makedirs(spec.dump_matrices, exist_ok=True)
        counter = [0]

        def sink(matrix):
            counter[0] += 1
            path = os.path.join(spec.dump_matrices, f"matrix_{counter[0]:04d}.txt")
            with open(path, "w", encoding="utf-8") as handle:
                handle.write(matrix.dump_text())

        set_matrix_dump_sink(sink)
        dump_handle = sink

    reports = []
    exit_code = 0
    try:
        for name in spec.inputs:
            try:
                report = _process_input(name, spec)
            except (OSError, json.JSONDecodeError, ParseError, ReductionError, KeyError) as exc:
                reports.append(
                    {
                        "kind": "error",
                        "input": name,
                        "error": {"type": type(exc).__name__, "message": str(exc)},
                        "status": "error",
                    }
                )
                exit_code = 2
                continue
            except (WorkbenchError, AssertionError) as exc:
                reports.append(
                    {
                        "kind": "error",
                        "input": name,
                        "error": {"type": type(exc).__name__, "message": str(exc)},
                        "status": "failed",
                    }
                )
                if exit_code == 0:
                    exit_code = 1
                continue
            reports.append(report)
            if report.get("status") == "failed" and exit_code == 0:
                exit_code = 1
    finally:
        if dump_handle is not None:
            set_matrix_dump_sink(None)

    document = {"reports": reports}
    payload = report_bytes(document)
    if spec.out:
        is_dir = os.path.isdir(spec.out) or spec.out.endswith(os.sep) or len(spec.inputs) > 1
        if is_dir:
            os.makedirs(spec.out, exist_ok=True)
            for name, report in zip(spec.inputs, reports):
                stem = os.path.splitext(os.path.basename(name))[0]
                with open(os.path.join(spec.out, f"{stem}.report.json"), "wb") as handle:
                    handle.write(report_bytes(report))
        else:
            with open(spec.out, "wb") as handle:
                handle.write(payload)
    else:
        sys.stdout.write(payload.decode("utf-8"))
    return exit_code


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="analyze",
        description="Exact analysis of projected-surface fixtures: adjoint systems, "
        "Picard-relation solutions, closedness defects, syzygy checks, char-p scans.",
    )
    parser.add_argument("inputs", nargs="*", help="bundled fixture names or JSON fixture paths")
    parser.add_argument(
        "--ops",
        default="picard,defect,qan",
        help=f"comma-separated operations from: {', '.join(ALL_OPS)}",
    )
    parser.add_argument("--field", dest="field_override", default=None,
                        help="'rationals' or 'prime:<p>' (reduces a rational fixture mod p)")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--out", default=None, help="report file (or directory for several inputs)")
    parser.add_argument("--dump-matrices", default=None, metavar="DIR",
                        help="dump every assembled coefficient matrix into DIR")
    parser.add_argument("--strategy", choices=["ideal-span", "point-sampling"], default=None)
    parser.add_argument("--list-fixtures", action="store_true", help="list bundled fixtures and exit")
    args = parser.parse_args(argv)

    if args.list_fixtures:
        for name in fixtures.all_fixture_names():
            print(name)
        return 0
    if not args.inputs:
        parser.error("no inputs given")
    if args.field_override and args.field_override != "rationals":
        try:
            Field.from_description(args.field_override)
        except ValueError as exc:
            parser.error(str(exc))

    try:
        spec = RunSpec(
            inputs=tuple(args.inputs),
            ops=tuple(op.strip() for op in args.ops.split(",") if op.strip()),
            field_override=args.field_override,
            seed=args.seed,
            out=args.out,
            dump_matrices=args.dump_matrices,
            strategy=args.strategy,
        )
    except ParseError as exc:
        parser.error(str(exc))
    return run(spec)


if __name__ == "__main__":
    sys.exit(main())
