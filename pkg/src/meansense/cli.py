"""Reproducible command-line front end.

Subcommands:

* ``build``  — emit the schedule and the level words as RLE text files;
* ``check``  — run one named check, writing a JSON report (and CSV series);
* ``report`` — consolidate every report in the output directory.

Exit codes: 0 pass, 1 check failure, 2 usage/config error, 3 resource or
horizon limits.  Identical configurations (seed included) produce
byte-identical outputs; reports embed the config and schedule hashes.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional

from . import checks as _checks
from .constructions import (
    GeneratorDescriptor,
    S3Construction,
    S4Construction,
    Schedule,
    build_schedule_s3,
    build_schedule_s4,
)
from .errors import (
    LengthOverflowError,
    MeansenseError,
    MissingArtifactError,
    ParameterError,
    ResourceCapError,
)
from .reports import Report, canonical_json

EXIT_PASS = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3

#: words above this many runs are not materialized to disk by ``build``
EMIT_RUN_CAP = 1_000_000


@dataclass
class RunConfig:
    construction: str = "S3"
    depth: int = 3
    base: Optional[dict] = None
    horizon: Optional[int] = None  # None: each check picks its default
    seed: int = 0
    output_dir: str = "out"
    checks: List[dict] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "construction": self.construction,
            "depth": self.depth,
            "base": self.base,
            "horizon": self.horizon,
            "seed": self.seed,
            "output_dir": self.output_dir,
            "checks": self.checks,
        }

    @property
    def hash(self) -> str:
        payload = dict(self.to_json())
        payload.pop("output_dir")  # location must not change identity
        return hashlib.sha256(canonical_json(payload).encode()).hexdigest()[:16]

    def generator(self) -> GeneratorDescriptor:
        if self.base is None:
            return GeneratorDescriptor("constant-zero")
        return GeneratorDescriptor.from_json(self.base)

    def schedule(self) -> Schedule:
        if self.construction == "S3":
            return build_schedule_s3(self.depth)
        if self.construction == "S4":
            return build_schedule_s4(self.depth, self.generator())
        raise ParameterError(f"no schedule for construction {self.construction!r}")

    def validate(self):
        if self.construction not in ("S3", "S4", "patched"):
            raise ParameterError(
                f"construction must be S3, S4 or patched, got "
                f"{self.construction!r}"
            )
        if self.depth < 1:
            raise ParameterError("depth must be >= 1")
        if self.horizon is not None:
            if self.horizon < 1:
                raise ParameterError("horizon must be >= 1")
            if self.construction in ("S3", "S4"):
                sched = self.schedule()
                top = sched.level(sched.depth)
                if self.horizon > top.len_a + top.k:
                    raise ParameterError(
                        f"horizon {self.horizon} unreachable at depth "
                        f"{self.depth}: the deepest exact prefix has "
                        f"{top.len_a + top.k} symbols"
                    )


def schedule_hash(sched: Schedule) -> str:
    return hashlib.sha256(sched.to_json_str().encode()).hexdigest()[:16]


def _load_config(args) -> RunConfig:
    cfg = RunConfig()
    if args.config:
        with open(args.config) as fh:
            data = json.load(fh)
        for key, value in data.items():
            if not hasattr(cfg, key):
                raise ParameterError(f"unknown config key {key!r}")
            setattr(cfg, key, value)
    for key in ("construction", "depth", "horizon", "seed"):
        value = getattr(args, key, None)
        if value is not None:
            setattr(cfg, key, value)
    if getattr(args, "out", None):
        cfg.output_dir = args.out
    cfg.validate()
    return cfg


def cmd_build(cfg: RunConfig) -> int:
    out = Path(cfg.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    sched = cfg.schedule()
    (out / "schedule.json").write_text(sched.to_json_str())
    construction = (S3Construction(sched) if cfg.construction == "S3"
                    else S4Construction(sched))
    manifest = {"config_hash": cfg.hash, "schedule_hash": schedule_hash(sched),
                "emitted": [], "omitted": []}
    for n in range(1, cfg.depth + 1):
        a = construction.a_word(n)
        (out / f"A_{n}.rle").write_text(a.to_text() + "\n")
        manifest["emitted"].append(f"A_{n}")
        lv = sched.level(n)
        est_runs = (lv.len_a + 1) * 8 if cfg.construction == "S3" else 0
        if n > 1 and cfg.construction == "S3" and est_runs > EMIT_RUN_CAP:
            manifest["omitted"].append(
                {"word": f"B_{n}", "reason": f"about {est_runs} runs"}
            )
            continue
        b = construction.b_word(n)
        (out / f"B_{n}.rle").write_text(b.to_text() + "\n")
        manifest["emitted"].append(f"B_{n}")
    (out / "build.json").write_text(canonical_json(manifest))
    print(f"built {cfg.construction} depth {cfg.depth} -> {out}")
    return EXIT_PASS


def _require_build(cfg: RunConfig) -> Schedule:
    path = Path(cfg.output_dir) / "schedule.json"
    if not path.exists():
        raise MissingArtifactError(
            f"{path} not found: run `meansense build` into this output "
            f"directory first"
        )
    sched = Schedule.from_json(json.loads(path.read_text()))
    return sched


def cmd_check(cfg: RunConfig, names: List[str]) -> int:
    out = Path(cfg.output_dir)
    sched = _require_build(cfg)
    todo = []
    for name in names:
        if name not in _checks.REGISTRY:
            raise ParameterError(
                f"unknown check {name!r}; known: "
                f"{', '.join(sorted(_checks.REGISTRY))}"
            )
        todo.append(name)
    workers = int(os.environ.get("MEANSENSE_THREADS", "0")) or None
    results: Dict[str, Report] = {}

    def run(name: str) -> Report:
        return _checks.REGISTRY[name](cfg, sched)

    if workers == 1 or len(todo) == 1:
        for name in todo:
            results[name] = run(name)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for name, rep in zip(todo, pool.map(run, todo)):
                results[name] = rep
    failed = []
    for name, rep in results.items():
        rep.params["config_hash"] = cfg.hash
        rep.params["schedule_hash"] = schedule_hash(sched)
        for wit in rep.witnesses:
            series = wit.get("csv_series")
            if series:
                fname = f"series-{name}-{series['name']}.csv"
                (out / fname).write_text(series["body"])
                wit["csv_series"] = {"name": series["name"], "file": fname}
        (out / f"report-{name}.json").write_text(rep.to_json_str())
        print(f"{rep.verdict:12s} {name}")
        if not rep.passed:
            failed.append(name)
    return EXIT_CHECK_FAILED if failed else EXIT_PASS


def cmd_report(output_dir: str) -> int:
    out = Path(output_dir)
    reports = sorted(out.glob("report-*.json"))
    if not reports:
        print(f"no reports under {out}", file=sys.stderr)
        return EXIT_USAGE
    rows = []
    failed = []
    for path in reports:
        rep = Report.from_json(json.loads(path.read_text()))
        rows.append({"check": rep.check, "verdict": rep.verdict,
                     "caveats": rep.caveats})
        if not rep.passed:
            failed.append(rep.check)
    summary = {"reports": rows, "failed": failed,
               "all_pass": not failed}
    (out / "summary.json").write_text(canonical_json(summary))
    width = max(len(r["check"]) for r in rows)
    for r in rows:
        print(f"{r['check']:<{width}}  {r['verdict']}")
    print(f"{'TOTAL':<{width}}  {'PASS' if not failed else 'FAIL'}")
    return EXIT_PASS if not failed else EXIT_CHECK_FAILED


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="meansense",
        description="exact subshift constructions and their orbit statistics",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="JSON config file")
        p.add_argument("--construction", choices=["S3", "S4", "patched"])
        p.add_argument("--depth", type=int)
        p.add_argument("--horizon", type=int)
        p.add_argument("--seed", type=int)
        p.add_argument("--out", help="output directory")

    b = sub.add_parser("build", help="emit schedule and level words")
    common(b)
    c = sub.add_parser("check", help="run named checks")
    common(c)
    c.add_argument("names", nargs="+", help="check names (or 'all')")
    r = sub.add_parser("report", help="consolidate reports")
    r.add_argument("--out", default="out")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_PASS
    try:
        if args.command == "build":
            return cmd_build(_load_config(args))
        if args.command == "check":
            cfg = _load_config(args)
            names = list(args.names)
            if names == ["all"]:
                names = sorted(_checks.REGISTRY)
            return cmd_check(cfg, names)
        if args.command == "report":
            return cmd_report(args.out)
        return EXIT_USAGE
    except (ResourceCapError, LengthOverflowError) as exc:
        print(f"resource error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except MissingArtifactError as exc:
        print(f"dependency error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except MeansenseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
