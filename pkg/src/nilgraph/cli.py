"""Command-line front end: ``nilgraph analyze | sweep | verify``.

Exit codes: 0 when nothing mismatched, 2 when any verdict (or, for
``verify``, any criterion) failed, 1 on usage or internal errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import dataclass, field

from . import invariants as inv
from .graph import graph_json, to_dot
from .ring import DEFAULT_MAX_ORDER, RingSpecError, build_ring, parse_ring_spec
from .theorems import CSV_COLUMNS, MISMATCH, THEOREM_IDS, Caps, analyze_instance, default_workers, product_family, sweep_verify, zn_family

EXIT_OK, EXIT_ERROR, EXIT_MISMATCH = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    ring: str | None = None
    max_bound: int | None = None
    zn: bool = False
    products: bool = False
    max_order: int = DEFAULT_MAX_ORDER
    caps: Caps = field(default_factory=Caps)
    json_path: str | None = None
    csv_path: str | None = None
    dot_path: str | None = None
    workers: int = 1

    def __post_init__(self):
        if self.max_order < 2:
            raise UsageError("--max-order must be at least 2")
        if self.workers < 1:
            raise UsageError("--workers must be positive")


def _write(path, text):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _dump_json(path, payload):
    _write(path, json.dumps(payload, indent=2, sort_keys=False) + "\n")


def analysis_json(a) -> dict:
    R = a.ring
    return {
        "ring": R.spec.canonical_text,
        "order": R.order,
        "nil_size": a.nil.t,
        "graph": graph_json(a.graph),
        "invariants": a.report.to_json(),
        "decomposition": {
            "summary": a.decomposition.summary(),
            "m_biclique": a.decomposition.m_biclique,
            "components": [c.to_json(R.label) for c in a.decomposition.components],
        },
        "spectra": {
            k: {"prediction": v["prediction"].to_json(), "check": v["check"].to_json()}
            for k, v in a.spectra.items()
        },
        "verdicts": [v.to_json() for v in a.verdicts],
    }


def run_analyze(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    R = build_ring(parse_ring_spec(cfg.ring), cfg.max_order)
    a = analyze_instance(R, cfg.caps)
    rep = a.report.to_json()
    print(f"ring {R.spec}  |R|={R.order}  |Nil|={a.nil.t}  |V|={len(a.graph.vertices)}  |E|={a.graph.edge_count}", file=out)
    print(f"components: {a.decomposition.summary()}", file=out)
    print("invariants: " + ", ".join(f"{k}={v}" for k, v in rep.items() if k != "skipped"), file=out)
    for k, reason in rep["skipped"].items():
        print(f"  skipped {k}: {reason}", file=out)
    for k, v in a.spectra.items():
        print(f"{k}-spectrum {v['prediction']}: {'certified' if v['check'].ok else 'NOT certified'}", file=out)
    for v in a.verdicts:
        print(f"  {v.theorem:<24} {v.status:<13} predicted={v.to_json()['predicted']} computed={v.to_json()['computed']}", file=out)
    if cfg.json_path:
        _dump_json(cfg.json_path, analysis_json(a))
    if cfg.dot_path:
        _write(cfg.dot_path, to_dot(a.graph))
    return EXIT_MISMATCH if a.has_mismatch else EXIT_OK


def _csv_cell(v):
    return "" if v is None else v


def write_sweep_csv(path, rows):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for r in rows:
            w.writerow([_csv_cell(r[c]) for c in CSV_COLUMNS])


def run_sweep(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    if cfg.max_bound is None or cfg.max_bound < 2:
        raise UsageError("sweep needs --max N with N >= 2")
    if cfg.max_bound > cfg.max_order:
        raise UsageError(f"--max {cfg.max_bound} exceeds --max-order {cfg.max_order}")
    rings = []
    if cfg.zn or not cfg.products:
        rings += zn_family(cfg.max_bound)
    if cfg.products:
        rings += product_family(cfg.max_bound)
    result = sweep_verify(rings, cfg.caps, cfg.workers)
    print(f"{len(result.rings)} rings processed", file=out)
    print(f"{'theorem':<24} {'Match':>6} {'Mismatch':>8} {'n/a':>6} {'Skipped':>7}", file=out)
    for th, c in result.counts().items():
        print(f"{th:<24} {c['Match']:>6} {c['Mismatch']:>8} {c['NotApplicable']:>6} {c['Skipped']:>7}", file=out)
    if cfg.csv_path:
        write_sweep_csv(cfg.csv_path, result.rows)
    if cfg.json_path:
        _dump_json(cfg.json_path, {"rings": result.rings, "counts": result.counts(), "rows": result.rows})
    return EXIT_MISMATCH if result.mismatches() else EXIT_OK


def run_verify(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    from .acceptance import run_all

    if cfg.max_bound is not None and cfg.max_bound < 2:
        raise UsageError("verify --max needs N >= 2")
    results = run_all(cfg.max_bound, echo=lambda line: print(line, file=out, flush=True))
    passed = sum(r.passed for r in results)
    print(f"{passed}/{len(results)} criteria passed", file=out)
    if cfg.json_path:
        _dump_json(cfg.json_path, {"max": cfg.max_bound, "criteria": [r.to_json() for r in results]})
    return EXIT_OK if passed == len(results) else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nilgraph", description="Nilpotent graphs of finite commutative rings.")
    sub = parser.add_subparsers(dest="command", required=True)

    def caps(p):
        p.add_argument("--max-order", type=int, default=DEFAULT_MAX_ORDER)
        p.add_argument("--clique-cap", type=int, default=inv.DEFAULT_CLIQUE_CAP)
        p.add_argument("--dominating-cap", type=int, default=inv.DEFAULT_DOMINATING_CAP)
        p.add_argument("--coloring-cap", type=int, default=inv.DEFAULT_COLORING_CAP)
        p.add_argument("--json", dest="json_path")

    p = sub.add_parser("analyze", help="analyse one ring, e.g. Z18 or Z4xZ9")
    p.add_argument("ring")
    p.add_argument("--dot", dest="dot_path")
    caps(p)

    p = sub.add_parser("sweep", help="verify every ring of a family")
    p.add_argument("--zn", action="store_true", help="Z_n for 2 <= n <= MAX")
    p.add_argument("--products", action="store_true", help="Z_a x Z_b with a <= b, ab <= MAX")
    p.add_argument("--max", dest="max_bound", type=int, required=True)
    p.add_argument("--csv", dest="csv_path")
    p.add_argument("--workers", type=int)
    caps(p)

    p = sub.add_parser("verify", help="run the acceptance criteria")
    p.add_argument("--max", dest="max_bound", type=int)
    p.add_argument("--json", dest="json_path")
    p.add_argument("--workers", type=int)
    return parser


def config_from_args(ns) -> RunConfig:
    workers = getattr(ns, "workers", None)
    kw = dict(
        command=ns.command,
        ring=getattr(ns, "ring", None),
        max_bound=getattr(ns, "max_bound", None),
        zn=getattr(ns, "zn", False),
        products=getattr(ns, "products", False),
        json_path=getattr(ns, "json_path", None),
        csv_path=getattr(ns, "csv_path", None),
        dot_path=getattr(ns, "dot_path", None),
        workers=default_workers() if workers is None else workers,
    )
    if hasattr(ns, "clique_cap"):
        kw["max_order"] = ns.max_order
        kw["caps"] = Caps(ns.clique_cap, ns.dominating_cap, ns.coloring_cap)
    return RunConfig(**kw)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_ERROR
    try:
        cfg = config_from_args(ns)
        runner = {"analyze": run_analyze, "sweep": run_sweep, "verify": run_verify}[cfg.command]
        return runner(cfg)
    except (RingSpecError, UsageError, ValueError) as exc:
        print(f"nilgraph: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except Exception as exc:  # internal failure
        print(f"nilgraph: internal error: {exc!r}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
