"""The ``tileguard`` command-line tool.

Subcommands: ``inspect`` compares test tiles against a defect-free
reference and emits a JSON or CSV report; ``generate`` renders
synthetic reference/defect tiles from a JSON spec file; ``plotdata``
pivots a report into per-metric CSVs ready for bar charts.

Exit codes for inspect: 0 all tiles defect-free, 1 at least one
defective, 2 on any error.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from .image import Threshold
from .io import IMAGE_EXTENSIONS, load_image, save_image
from .metrics import Verdict, build_record
from .morphology import StructuringElement
from .pipelines import DetectionMethod, PipelineOptions, run_method
from .report import (
    emit_plot_data,
    load_json_report,
    record_to_row,
    write_csv_report,
    write_json_report,
)
from .synth import DefectSpec, TileSpec, generate_reference, inject_defect

__all__ = ["RunConfig", "inspect", "main", "entrypoint"]

ALL_METHODS = tuple(DetectionMethod)


@dataclass
class RunConfig:
    """Everything one inspect run needs."""

    reference: Path
    tests: list[Path]
    methods: tuple[DetectionMethod, ...] = ALL_METHODS
    se: str = "square:3"
    threshold: str = "otsu"
    erosion_variant: str = "literal"
    metric_pair: str = "residual"
    count_tolerance: int = 0
    binarize_all: bool = False
    output_format: str = "json"
    out: Path | None = None
    dump_residuals: Path | None = None
    jobs: int = 1

    def __post_init__(self) -> None:
        if not self.methods:
            raise ValueError("at least one detection method must be selected")
        if self.metric_pair not in ("residual", "input"):
            raise ValueError(f"metric_pair must be 'residual' or 'input', got {self.metric_pair!r}")
        if self.output_format not in ("json", "csv"):
            raise ValueError(f"output format must be 'json' or 'csv', got {self.output_format!r}")
        if self.count_tolerance < 0:
            raise ValueError("count tolerance must be >= 0")
        if self.jobs < 1:
            raise ValueError("jobs must be >= 1")


def _expand_tests(paths: list[Path]) -> list[Path]:
    tiles: list[Path] = []
    for path in paths:
        if path.is_dir():
            entries = [p for p in path.iterdir() if p.suffix.lower() in IMAGE_EXTENSIONS]
            tiles.extend(sorted(entries))
        else:
            tiles.append(path)
    return tiles


def inspect(cfg: RunConfig) -> tuple[int, list[dict[str, Any]]]:
    """Run every selected method on every test tile against the reference.

    Returns the exit code and the report rows, sorted by
    (tile path, method name); the report itself is written to
    ``cfg.out`` (stdout when unset) in the configured format.  Errors
    are reported on stderr with exit code 2 and produce no report.
    """
    try:
        rows = _inspect_rows(cfg)
    except Exception as exc:  # noqa: BLE001 - every failure maps to exit code 2
        print(f"error: {exc}", file=sys.stderr)
        return 2, []

    meta = {
        "reference": str(cfg.reference),
        "se": cfg.se,
        "threshold": cfg.threshold,
        "erosion_variant": cfg.erosion_variant,
        "metric_pair": cfg.metric_pair,
        "count_tolerance": cfg.count_tolerance,
        "binarize_all": cfg.binarize_all,
    }
    if cfg.output_format == "json":
        text = write_json_report(rows, meta, cfg.out)
    else:
        text = write_csv_report(rows, cfg.out)
    if cfg.out is None:
        sys.stdout.write(text)

    defective = any(row["verdict"] == Verdict.DEFECTIVE.value for row in rows)
    return (1 if defective else 0), rows


def _inspect_rows(cfg: RunConfig) -> list[dict[str, Any]]:
    se = StructuringElement.parse(cfg.se)
    threshold = Threshold.parse(cfg.threshold)
    options = PipelineOptions(erosion_variant=cfg.erosion_variant, binarize_all=cfg.binarize_all)
    reference = load_image(cfg.reference)
    tiles = _expand_tests(cfg.tests)
    if not tiles:
        raise ValueError("no test tiles found")

    ref_results = {
        method: run_method(method, reference, se, threshold, options) for method in cfg.methods
    }
    if cfg.dump_residuals is not None:
        cfg.dump_residuals.mkdir(parents=True, exist_ok=True)
        for method, result in ref_results.items():
            save_image(result.residual, cfg.dump_residuals / f"reference__{method.value}.pgm")

    def process(item: tuple[int, Path]) -> list[dict[str, Any]]:
        index, tile_path = item
        tile = load_image(tile_path)
        if tile.shape != reference.shape:
            raise ValueError(
                f"dimension mismatch: test tile {tile_path} is {tile.height}x{tile.width}, "
                f"reference is {reference.height}x{reference.width}"
            )
        tile_rows = []
        for method in cfg.methods:
            result = run_method(method, tile, se, threshold, options)
            if cfg.metric_pair == "residual":
                pair = (ref_results[method].residual, result.residual)
            else:
                pair = (reference, tile)
            record = build_record(method, ref_results[method], result, pair, cfg.count_tolerance)
            tile_rows.append(record_to_row(str(tile_path), record))
            if cfg.dump_residuals is not None:
                name = f"{index:03d}__{tile_path.stem}__{method.value}.pgm"
                save_image(result.residual, cfg.dump_residuals / name)
        return tile_rows

    items = list(enumerate(tiles))
    if cfg.jobs > 1:
        with ThreadPoolExecutor(max_workers=cfg.jobs) as pool:
            per_tile = list(pool.map(process, items))
    else:
        per_tile = [process(item) for item in items]

    rows = [row for tile_rows in per_tile for row in tile_rows]
    rows.sort(key=lambda row: (row["tile"], row["method"]))
    return rows


def _parse_methods(values: list[str]) -> tuple[DetectionMethod, ...]:
    names: list[str] = []
    for value in values:
        names.extend(part.strip() for part in value.split(",") if part.strip())
    if "all" in names:
        return ALL_METHODS
    methods = []
    for name in names:
        try:
            methods.append(DetectionMethod(name))
        except ValueError:
            choices = ", ".join(m.value for m in ALL_METHODS)
            raise ValueError(f"unknown method {name!r}; expected all or one of: {choices}") from None
    # preserve first-mention order, drop duplicates
    seen: dict[DetectionMethod, None] = dict.fromkeys(methods)
    return tuple(seen)


def _cmd_inspect(args: argparse.Namespace) -> int:
    try:
        cfg = RunConfig(
            reference=Path(args.reference),
            tests=[Path(p) for p in args.test],
            methods=_parse_methods(args.method or ["all"]),
            se=args.se,
            threshold=args.threshold,
            erosion_variant=args.erosion_variant,
            metric_pair=args.metric_pair,
            count_tolerance=args.count_tolerance,
            binarize_all=args.binarize_all,
            output_format=args.format,
            out=Path(args.out) if args.out else None,
            dump_residuals=Path(args.dump_residuals) if args.dump_residuals else None,
            jobs=args.jobs,
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    code, _ = inspect(cfg)
    return code


def _cmd_generate(args: argparse.Namespace) -> int:
    try:
        spec = json.loads(Path(args.spec).read_text(encoding="utf-8"))
        ext = args.image_format or spec.get("image_format", "pgm")
        if ext not in ("pgm", "png"):
            raise ValueError(f"image format must be 'pgm' or 'png', got {ext!r}")
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)

        reference = generate_reference(TileSpec.from_dict(spec["reference"]))
        written = [out_dir / f"reference.{ext}"]
        save_image(reference, written[0])
        for entry in spec.get("tiles", []):
            tile = reference
            for defect in entry.get("defects", []):
                tile = inject_defect(tile, DefectSpec.from_dict(defect))
            path = out_dir / f"{entry['name']}.{ext}"
            save_image(tile, path)
            written.append(path)
    except Exception as exc:  # noqa: BLE001
        print(f"error: {exc}", file=sys.stderr)
        return 2
    for path in written:
        print(f"wrote {path}")
    return 0


def _cmd_plotdata(args: argparse.Namespace) -> int:
    try:
        document = load_json_report(args.report)
        written = emit_plot_data(document.get("records", []), args.out)
    except Exception as exc:  # noqa: BLE001
        print(f"error: {exc}", file=sys.stderr)
        return 2
    for path in written:
        print(f"wrote {path}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tileguard",
        description="Morphological surface-defect inspection for ceramic tile images.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_inspect = sub.add_parser("inspect", help="classify test tiles against a reference")
    p_inspect.add_argument("--reference", required=True, help="defect-free reference image")
    p_inspect.add_argument(
        "--test", required=True, action="append", help="test image or directory (repeatable)"
    )
    p_inspect.add_argument(
        "--method",
        action="append",
        help="all (default) or a method name: dilation, erosion, smee, boundary (repeatable)",
    )
    p_inspect.add_argument("--se", default="square:3", help="structuring element: square:K, cross:K or disk:R")
    p_inspect.add_argument("--threshold", default="otsu", help="binarization: otsu or fixed:V")
    p_inspect.add_argument(
        "--erosion-variant", default="literal", choices=["literal", "difference"]
    )
    p_inspect.add_argument("--metric-pair", default="residual", choices=["residual", "input"])
    p_inspect.add_argument("--count-tolerance", type=int, default=0, help="|delta_d| <= K still passes")
    p_inspect.add_argument(
        "--binarize-all", action="store_true", help="binarize input for smee/boundary too"
    )
    p_inspect.add_argument("--format", default="json", choices=["json", "csv"])
    p_inspect.add_argument("--out", help="report path (stdout when omitted)")
    p_inspect.add_argument("--dump-residuals", help="directory for residual image dumps")
    p_inspect.add_argument("--jobs", type=int, default=1, help="parallel tile workers")
    p_inspect.set_defaults(handler=_cmd_inspect)

    p_generate = sub.add_parser("generate", help="render synthetic tiles from a JSON spec")
    p_generate.add_argument("--spec", required=True, help="tile spec JSON file")
    p_generate.add_argument("--out", required=True, help="output directory")
    p_generate.add_argument("--image-format", choices=["pgm", "png"], help="overrides the spec file")
    p_generate.set_defaults(handler=_cmd_generate)

    p_plot = sub.add_parser("plotdata", help="emit per-metric CSVs from a JSON report")
    p_plot.add_argument("--report", required=True, help="report JSON produced by inspect")
    p_plot.add_argument("--out", required=True, help="output directory")
    p_plot.set_defaults(handler=_cmd_plotdata)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.handler(args)


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
