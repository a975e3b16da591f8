"""Command line pipeline: barcodes, spectral-gap curves, Wu characteristic, benchmark.

Exit codes: 0 success, 1 internal error, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import plotting
from .complex import parse_simplices, vr_filtration
from .geometry import GroupingError, ParseError, PointCloud, distance_matrix, load_cloud, parse_groups, select_groups
from .homology import UnsupportedInput, betti, persistent_barcode, wu_characteristic
from .interaction import enumerate_cells
from .schemas import BENCHMARK_COLUMNS
from .spectral import ZERO_TOL, auto_grid, critical_values, interaction_vr_basis, snapshot_series

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

log = logging.getLogger("interaction_tda")

MODES = ("barcode", "spectra", "wu", "benchmark", "classic")
FORMATS = ("xyz", "csv", "complex")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    input: str
    mode: str
    out: str = "out"
    format: str | None = None
    groups: list[frozenset[str]] = field(default_factory=list)
    max_degree: int = 1
    max_scale: float | None = None
    grid: str = "auto"
    field: str = "q"
    tol: float = ZERO_TOL

    def validate(self):
        if self.mode not in MODES:
            raise UsageError(f"unknown mode {self.mode!r}; choose from {', '.join(MODES)}")
        if self.format is not None and self.format not in FORMATS:
            raise UsageError(f"unknown format {self.format!r}")
        if self.format == "complex" and self.mode != "wu":
            raise UsageError("explicit complex files are only supported in wu mode")
        if self.max_degree < 0:
            raise UsageError("--max-degree must be >= 0")
        if self.max_scale is not None and self.max_scale < 0:
            raise UsageError("--max-scale must be >= 0")
        if self.field not in ("q", "f2"):
            raise UsageError("--field must be q or f2")
        if not self.tol > 0:
            raise UsageError("--tol must be positive")
        if self.format != "complex" and len(self.groups) < 2:
            raise UsageError("--groups needs at least two groups, e.g. 'C,B;C,H'")
        if self.mode == "wu" and self.format != "complex":
            if len(self.groups) != 2 or self.groups[0] != self.groups[1]:
                raise UsageError("wu mode needs exactly two identical groups")


def parse_grid(spec: str, crit_grid) -> list[float]:
    spec = spec.strip()
    if spec == "auto":
        grid = list(crit_grid)
    elif ":" in spec:
        try:
            a, b, step = (float(x) for x in spec.split(":"))
        except ValueError:
            raise UsageError(f"bad grid {spec!r}; expected a:b:step") from None
        if step <= 0 or b < a:
            raise UsageError(f"bad grid {spec!r}; need a <= b and step > 0")
        n = int(math.floor((b - a) / step + 1e-9)) + 1
        grid = [a + k * step for k in range(n)]
    else:
        try:
            grid = sorted(float(x) for x in spec.split(",") if x.strip())
        except ValueError:
            raise UsageError(f"bad grid {spec!r}") from None
    if not grid:
        raise UsageError("grid is empty")
    return grid


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="interaction-tda",
        description="Persistent interaction homology and interaction Laplacian spectra of grouped point clouds.",
    )
    ap.add_argument("--config", help="TOML file with the same keys as the flags (flags win)")
    ap.add_argument("--input", help="point cloud (.xyz / .csv) or explicit complex file")
    ap.add_argument("--format", choices=FORMATS)
    ap.add_argument("--groups", help="label groups, e.g. 'C,B;C,H'")
    ap.add_argument("--max-degree", type=int, help="highest homology / Laplacian degree (default 1)")
    ap.add_argument("--max-scale", type=float, help="filtration cap (default: largest in-group distance)")
    ap.add_argument("--grid", help="auto | a:b:step | v1,v2,...")
    ap.add_argument("--mode", choices=MODES)
    ap.add_argument("--field", choices=("q", "f2"))
    ap.add_argument("--tol", type=float, help="relative zero-eigenvalue tolerance")
    ap.add_argument("--out", help="output directory")
    ap.add_argument("-v", "--verbose", action="store_true")
    return ap


def make_config(args: argparse.Namespace) -> RunConfig:
    values: dict = {}
    if args.config:
        try:
            with open(args.config, "rb") as fh:
                raw = tomllib.load(fh)
        except FileNotFoundError:
            raise UsageError(f"config file not found: {args.config}") from None
        except tomllib.TOMLDecodeError as e:
            raise UsageError(f"bad config file: {e}") from None
        values.update({k.replace("-", "_"): v for k, v in raw.items()})
    for key in ("input", "format", "groups", "max_degree", "max_scale", "grid", "mode", "field", "tol", "out"):
        v = getattr(args, key)
        if v is not None:
            values[key] = v
    unknown = set(values) - set(RunConfig.__dataclass_fields__)
    if unknown:
        raise UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")
    if "input" not in values:
        raise UsageError("--input is required")
    if "mode" not in values:
        raise UsageError("--mode is required")
    groups = values.get("groups", [])
    if isinstance(groups, str):
        try:
            groups = parse_groups(groups)
        except GroupingError as e:
            raise UsageError(str(e)) from None
    else:
        groups = [frozenset(g) for g in groups]
    values["groups"] = groups
    cfg = RunConfig(**values)
    cfg.validate()
    return cfg


def _load(cfg: RunConfig):
    path = Path(cfg.input)
    if not path.is_file():
        raise UsageError(f"input file not found: {cfg.input}")
    if cfg.format == "complex":
        return parse_simplices(path.read_text())
    return load_cloud(path, cfg.format)


def _barcode_files(bc, degree: int) -> dict[str, str]:
    data = [e for e in bc.to_json() if e["degree"] == degree] or [
        {"degree": degree, "field": bc.field, "bars": []}]
    xmax = max((x for x in bc.endpoints() if math.isfinite(x)), default=1.0) * 1.1 or 1.0
    return {
        f"barcode_p{degree}.json": json.dumps(data, indent=2) + "\n",
        f"barcode_p{degree}.csv": bc.to_csv(degree),
        f"barcode_p{degree}.svg": plotting.barcode_svg(bc.degree(degree), degree, xmax),
    }


def _spectra_files(series, degree: int, title: str) -> dict[str, str]:
    return {
        f"spectra_p{degree}.json": json.dumps(series.to_json(), indent=2) + "\n",
        f"spectra_p{degree}.csv": series.to_csv(),
        f"spectra_p{degree}.svg": plotting.step_svg([e.t for e in series.entries], series.gaps, degree, title),
    }


def _scale(cfg: RunConfig, dmat, groups) -> float:
    if cfg.max_scale is not None:
        return cfg.max_scale
    return max(critical_values(dmat, groups))


def cmd_barcode(cfg: RunConfig, cloud: PointCloud) -> dict[str, str]:
    groups = select_groups(cloud, cfg.groups)
    dmat = distance_matrix(cloud)
    basis = interaction_vr_basis(dmat, groups, cfg.max_degree + 1, _scale(cfg, dmat, groups))
    bc = persistent_barcode(basis, cfg.field)
    files = {}
    for p in range(cfg.max_degree + 1):
        files.update(_barcode_files(bc, p))
    return files


def cmd_spectra(cfg: RunConfig, cloud: PointCloud) -> dict[str, str]:
    groups = select_groups(cloud, cfg.groups)
    dmat = distance_matrix(cloud)
    scale = _scale(cfg, dmat, groups)
    grid = parse_grid(cfg.grid, auto_grid(dmat, groups, scale))
    basis = interaction_vr_basis(dmat, groups, cfg.max_degree + 1, max(max(grid), 0.0))
    files = {}
    for p in range(cfg.max_degree + 1):
        series = snapshot_series(basis, p, grid, cfg.tol)
        files.update(_spectra_files(series, p, f"Interaction spectral gap, degree {p}"))
    return files


def _classic_series(dmat, ids, degree: int, grid, tol):
    k = vr_filtration(ids, dmat, degree + 1, max(grid))
    basis = enumerate_cells([k], degree + 1, max(grid))
    return snapshot_series(basis, degree, grid, tol)


def cmd_classic(cfg: RunConfig, cloud: PointCloud) -> dict[str, str]:
    groups = select_groups(cloud, cfg.groups)
    union = sorted(frozenset().union(*groups))
    dmat = distance_matrix(cloud)
    scale = _scale(cfg, dmat, [union])
    grid = parse_grid(cfg.grid, auto_grid(dmat, [union], scale))
    k = vr_filtration(union, dmat, cfg.max_degree + 1, max(grid))
    basis = enumerate_cells([k], cfg.max_degree + 1, max(grid))
    files = {}
    for p in range(cfg.max_degree + 1):
        series = snapshot_series(basis, p, grid, cfg.tol)
        files.update(_spectra_files(series, p, f"Spectral gap of the union, degree {p}"))
    return files


def cmd_wu(cfg: RunConfig, data) -> dict[str, str]:
    if isinstance(data, PointCloud):
        (ids, _) = select_groups(data, cfg.groups)
        dmat = distance_matrix(data)
        k = vr_filtration(ids, dmat, len(ids) - 1, _scale(cfg, dmat, [ids]))
    else:
        k = data
    basis = enumerate_cells([k, k])
    report = wu_characteristic(basis, betti(basis, cfg.field))
    return {"wu.json": json.dumps(report.to_json(), indent=2) + "\n"}


def cmd_benchmark(cfg: RunConfig, cloud: PointCloud) -> dict[str, str]:
    """Wall-clock times of the classic (union) and interaction pipelines, degrees 0 and 1."""
    groups = select_groups(cloud, cfg.groups)
    union = sorted(frozenset().union(*groups))
    dmat = distance_matrix(cloud)
    scale = _scale(cfg, dmat, [union])
    grid = parse_grid(cfg.grid, auto_grid(dmat, [union], scale))
    rows = []
    for pipeline in ("classic", "interaction"):
        for p in (0, 1):
            t0 = time.perf_counter()
            if pipeline == "classic":
                series = _classic_series(dmat, union, p, grid, cfg.tol)
            else:
                basis = interaction_vr_basis(dmat, groups, p + 1, max(grid))
                series = snapshot_series(basis, p, grid, cfg.tol)
            elapsed = time.perf_counter() - t0
            rows.append([pipeline, p, f"{elapsed:.6f}", len(grid), repr(float(np.sum(series.gaps)))])
            log.info("%s degree %d: %.3fs", pipeline, p, elapsed)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(BENCHMARK_COLUMNS)
    w.writerows(rows)
    return {"benchmark.csv": buf.getvalue()}


COMMANDS = {
    "barcode": cmd_barcode,
    "spectra": cmd_spectra,
    "classic": cmd_classic,
    "wu": cmd_wu,
    "benchmark": cmd_benchmark,
}


def run(cfg: RunConfig) -> list[Path]:
    """Compute everything in memory first so failures leave no partial output."""
    data = _load(cfg)
    files = COMMANDS[cfg.mode](cfg, data)
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for name, text in files.items():
        path = out / name
        path.write_text(text)
        written.append(path)
    return written


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        cfg = make_config(args)
        written = run(cfg)
    except (UsageError, ParseError, GroupingError, UnsupportedInput) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except Exception as e:  # noqa: BLE001
        log.exception("internal error")
        print(f"internal error: {e}", file=sys.stderr)
        return 1
    for path in written:
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
