"""Batch driver: resolve catalog entries, run verification suites, emit reports.

Exit codes: 0 all checks pass, 1 any check fails, 2 configuration error.
The JSON report is byte-identical across runs at a fixed config and seed;
wall-clock data (per-check runtimes, timestamp) goes to a metadata sidecar
and to the CSV format.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from .catalog import (
    CATALOG_GROUP_NAMES,
    CatalogWeight,
    catalog_weights,
    group_by_name,
    load_weight_file,
    resolve_weight,
)
from .groups import FiniteGroup, GroupTableError, load_cayley
from .linalg import Tolerance
from .suites import SUITE_IDS, CheckResult, run_all

__all__ = ["ConfigError", "SuiteConfig", "SuiteReport", "emit_report", "main", "run_suite"]

REPORT_VERSION = 1


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class SuiteConfig:
    groups: tuple[str, ...]
    weights: tuple[str, ...]
    suites: tuple[str, ...]
    tol: Tolerance
    probe_starts: int = 200
    seed: int = 42
    out_dir: str = "reports"
    fmt: str = "json"
    group_files: tuple[str, ...] = ()
    weight_files: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {
            "groups": sorted(self.groups),
            "weights": sorted(self.weights),
            "suites": sorted(self.suites),
            "tol_abs": self.tol.abs_eps,
            "tol_rel": self.tol.rel_eps,
            "probe_starts": self.probe_starts,
            "seed": self.seed,
            "format": self.fmt,
        }


@dataclass
class SuiteReport:
    config: SuiteConfig
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def n_pass(self) -> int:
        return sum(1 for c in self.checks if c.passed)

    @property
    def n_fail(self) -> int:
        return sum(1 for c in self.checks if not c.passed)

    def to_json(self) -> dict:
        return {
            "version": REPORT_VERSION,
            "config": self.config.to_json(),
            "checks": [
                {
                    "id": c.check_id,
                    "anchor": c.anchor,
                    "group": c.group,
                    "weight": c.weight,
                    "pass": c.passed,
                    "margin": c.margin,
                }
                for c in self.checks
            ],
            "summary": {"pass": self.n_pass, "fail": self.n_fail},
        }


def _select_entries(config: SuiteConfig) -> list[CatalogWeight]:
    entries = list(catalog_weights())
    for path in config.weight_files:
        entries.extend(load_weight_file(path))
    group_set = set(config.groups)
    selected = []
    for e in entries:
        if e.group_name not in group_set:
            continue
        for sel in config.weights:
            tail = e.id.split(":", 1)[-1]
            if sel in ("all", e.id, e.kind, tail) or tail.startswith(sel):
                selected.append(e)
                break
    return selected


def _available_groups(config: SuiteConfig) -> dict[str, FiniteGroup]:
    out = {name: group_by_name(name) for name in CATALOG_GROUP_NAMES}
    for path in config.group_files:
        try:
            g = load_cayley(path)
        except (OSError, GroupTableError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot load group file {path}: {exc}") from exc
        out[g.name] = g
    return out


def run_suite(config: SuiteConfig) -> SuiteReport:
    """Execute the selected suites over the (group, weight) grid."""
    if not config.suites:
        raise ConfigError("nothing to run: empty suite list")
    unknown = set(config.suites) - set(SUITE_IDS)
    if unknown:
        raise ConfigError(f"unknown suites: {sorted(unknown)} (known: {list(SUITE_IDS)})")
    available = _available_groups(config)
    for name in config.groups:
        if name not in available:
            raise ConfigError(f"unknown group {name!r}")
    entries = _select_entries(config)
    if not entries:
        raise ConfigError(
            "selectors resolve to no (group, weight) pair; see 'catalog list'"
        )
    from .algebra import NotInAlgebraError
    from .weights import NotPartialWeightError, NotWeightInverseError

    triples = []
    failed_constructions = []
    for e in entries:
        try:
            g, record = resolve_weight(e, config.tol, group=available[e.group_name])
        except (NotPartialWeightError, NotWeightInverseError, NotInAlgebraError) as exc:
            # numeric validation failure at the configured tolerance: report
            # it as a failing check rather than a configuration error
            failed_constructions.append(
                CheckResult(
                    check_id="weights.construct",
                    anchor="ω is a weight inverse at the configured tolerance",
                    group=e.group_name,
                    weight=e.id,
                    passed=False,
                    margin=float(getattr(exc, "margin", float("nan"))),
                    runtime_ms=0.0,
                )
            )
            continue
        except Exception as exc:
            raise ConfigError(f"cannot resolve weight {e.id!r}: {exc}") from exc
        triples.append((g, e, record))
    if not triples and not failed_constructions:
        raise ConfigError("selectors resolve to no usable (group, weight) pair")
    checks = run_all(
        triples,
        suites=config.suites,
        tol=config.tol,
        seed=config.seed,
        n_starts=config.probe_starts,
    )
    checks = sorted(
        checks + failed_constructions, key=lambda r: (r.check_id, r.group, r.weight)
    )
    return SuiteReport(config=config, checks=checks)


# ---------------------------------------------------------------------------
# emission


def emit_report(report: SuiteReport, out_dir: str | Path, fmt: str) -> list[Path]:
    """Write report.{json|csv|txt} plus the report.meta.json sidecar."""
    if fmt not in ("json", "csv", "text"):
        raise ConfigError(f"unknown format {fmt!r}")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []

    meta = {
        "timestamp": time.strftime("%Y-%m-%dT%H:%M:%S%z"),
        "total_runtime_ms": sum(c.runtime_ms for c in report.checks),
        "runtimes_ms": {
            f"{c.check_id}|{c.group}|{c.weight}": round(c.runtime_ms, 3)
            for c in report.checks
        },
    }
    meta_path = out / "report.meta.json"
    meta_path.write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n")
    written.append(meta_path)

    if fmt == "json":
        path = out / "report.json"
        path.write_text(
            json.dumps(report.to_json(), indent=2, sort_keys=True, ensure_ascii=False)
            + "\n"
        )
        written.append(path)
    elif fmt == "csv":
        path = out / "report.csv"
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["check_id", "group", "weight", "pass", "margin", "runtime_ms"])
            for c in report.checks:
                writer.writerow(
                    [c.check_id, c.group, c.weight, c.passed, repr(c.margin),
                     round(c.runtime_ms, 3)]
                )
        written.append(path)
    else:
        path = out / "report.txt"
        lines = []
        for c in report.checks:
            flag = "pass" if c.passed else "FAIL"
            lines.append(
                f"{flag}  {c.check_id:34s} {c.group:8s} {c.weight:22s} "
                f"margin={c.margin:+.3e}  [{c.anchor}]"
            )
        total = len(report.checks)
        if report.n_fail == 0:
            lines.append(f"PASS {total}/{total}")
        else:
            lines.append(f"FAIL {report.n_fail}/{total}")
        path.write_text("\n".join(lines) + "\n")
        written.append(path)
    return written


# ---------------------------------------------------------------------------
# catalog subcommand


def _describe(identifier: str) -> str:
    for e in catalog_weights():
        if e.id == identifier or identifier == e.id.split(":", 1)[-1]:
            lines = [
                f"weight {e.id}",
                f"  group: {e.group_name}",
                f"  kind: {e.kind}",
                f"  params: {json.dumps(e.params)}",
                f"  description: {e.description}",
            ]
            if e.kind == "dual_function":
                lines.append("  anchor: w(st) ≤ w(s)w(t), w ≥ 1 on the dual")
            elif e.kind == "central":
                lines.append("  anchor: ω(π)ω(ρ) ≤ ω(σ) for σ ⊂ π⊗ρ")
            elif e.kind == "extended":
                lines.append("  anchor: ι_H : λ_H(s) ↦ λ_G(s)")
            else:
                lines.append("  anchor: Γ(1)·1 = 1⊗1")
            return "\n".join(lines)
    if identifier in CATALOG_GROUP_NAMES:
        g = group_by_name(identifier)
        return (
            f"group {g.name}\n  order: {g.order}\n  abelian: {g.is_abelian()}\n"
            f"  cyclic factors: {g.cyclic_factors}"
        )
    if identifier in SUITE_IDS:
        return f"suite {identifier}: see 'catalog list' for its checks"
    raise ConfigError(f"unknown catalog id {identifier!r}")


def _catalog_list() -> str:
    lines = ["groups:"]
    lines.append("  " + " ".join(CATALOG_GROUP_NAMES))
    lines.append("weights:")
    for e in catalog_weights():
        lines.append(f"  {e.id:24s} {e.description}")
    lines.append("suites:")
    lines.append("  " + " ".join(SUITE_IDS))
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="beurling-kit",
        description="verification suites for weighted Fourier algebras on finite groups",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run verification suites")
    run_p.add_argument("--groups", default="all",
                       help="comma-separated group names, or 'all'")
    run_p.add_argument("--weights", default="all",
                       help="comma-separated weight ids/families/kinds, or 'all'")
    run_p.add_argument("--suites", default=",".join(SUITE_IDS),
                       help=f"comma-separated subset of {SUITE_IDS}")
    run_p.add_argument("--tol-abs", type=float, default=1e-10)
    run_p.add_argument("--tol-rel", type=float, default=1e-9)
    run_p.add_argument("--probe-starts", type=int, default=200)
    run_p.add_argument("--seed", type=int, default=42)
    run_p.add_argument("--out", default="reports",
                       help="output directory (env BEURLING_KIT_OUT overrides)")
    run_p.add_argument("--format", dest="fmt", default="json",
                       choices=["json", "csv", "text"])
    run_p.add_argument("--group-file", action="append", default=[],
                       help="JSON Cayley-table file; may repeat")
    run_p.add_argument("--weight-file", action="append", default=[],
                       help="JSON weight-catalog file; may repeat")

    cat_p = sub.add_parser("catalog", help="list or describe built-ins")
    cat_p.add_argument("action", choices=["list", "describe"])
    cat_p.add_argument("identifier", nargs="?")
    return parser


def _split(text: str) -> tuple[str, ...]:
    return tuple(t for t in (s.strip() for s in text.split(",")) if t)


def _config_from_args(args) -> SuiteConfig:
    groups = _split(args.groups)
    if groups == ("all",):
        groups = CATALOG_GROUP_NAMES
    extra = []
    for path in args.group_file:
        try:
            extra.append(load_cayley(path).name)
        except (OSError, GroupTableError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot load group file {path}: {exc}") from exc
    groups = tuple(dict.fromkeys(groups + tuple(extra)))
    try:
        tol = Tolerance(abs_eps=args.tol_abs, rel_eps=args.tol_rel)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    out_dir = os.environ.get("BEURLING_KIT_OUT", args.out)
    return SuiteConfig(
        groups=groups,
        weights=_split(args.weights) or ("all",),
        suites=_split(args.suites),
        tol=tol,
        probe_starts=args.probe_starts,
        seed=args.seed,
        out_dir=out_dir,
        fmt=args.fmt,
        group_files=tuple(args.group_file),
        weight_files=tuple(args.weight_file),
    )


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "catalog":
            if args.action == "list":
                print(_catalog_list())
            else:
                if not args.identifier:
                    raise ConfigError("describe needs an identifier")
                print(_describe(args.identifier))
            return 0
        config = _config_from_args(args)
        report = run_suite(config)
        paths = emit_report(report, config.out_dir, config.fmt)
        total = len(report.checks)
        status = "PASS" if report.n_fail == 0 else "FAIL"
        print(f"{status} {report.n_pass}/{total} checks; reports: "
              + ", ".join(str(p) for p in paths))
        return 0 if report.n_fail == 0 else 1
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
