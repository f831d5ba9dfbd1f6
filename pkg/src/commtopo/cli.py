"""``commtopo`` command line.

Exit status: 0 success, 1 runtime failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import __version__
from .artifacts import dumps_json, write_profile_artifacts
from .detect import (DEFAULT_WALK_LENGTH, GN_MAX_EDGES, METHODS, GuardrailError, detect,
                     export_partition, import_partition, modularity)
from .generators import GeneratorSpec, generate
from .graph import load_edge_list, write_edge_list
from .metrics import records_from_csv, records_to_csv, score_partition
from .pipeline import PipelineConfig, run_pipeline
from .profile import (DEFAULT_BINS, DEFAULT_MASK_THRESHOLD, DEFAULT_SCALE_SPLIT,
                      DEFAULT_THRESHOLDS, bivariate_map, classify_topology, correlation_matrix)

log = logging.getLogger("commtopo")

EXIT_OK, EXIT_RUNTIME, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _existing_file(path: str) -> str:
    if not Path(path).is_file():
        raise UsageError(f"input file not found: {path}")
    return path


def _add_generator_args(p, required=True):
    p.add_argument("--model", choices=["er", "ws", "ba"], required=required)
    p.add_argument("--n", type=int, default=1000)
    p.add_argument("--p", type=float, default=0.0, help="ER edge / WS rewiring probability")
    p.add_argument("--k", type=int, default=0, help="WS ring degree (even)")
    p.add_argument("--m-attach", type=int, default=0, help="BA edges per new node")


def _add_map_args(p):
    p.add_argument("--min-size", type=int, default=3)
    p.add_argument("--scale-split", type=int, default=DEFAULT_SCALE_SPLIT)
    p.add_argument("--bins", type=int, default=DEFAULT_BINS)
    p.add_argument("--tau-ccf", type=float, default=DEFAULT_THRESHOLDS[0])
    p.add_argument("--tau-hub", type=float, default=DEFAULT_THRESHOLDS[1])
    p.add_argument("--mask-threshold", type=float, default=DEFAULT_MASK_THRESHOLD)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="commtopo", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write an ER / WS / BA graph as an edge list")
    _add_generator_args(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", help="file to write (default: stdout)")

    p = sub.add_parser("detect", help="detect communities in an edge list")
    p.add_argument("input")
    p.add_argument("--method", choices=METHODS, default="louvain")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--t", type=int, default=DEFAULT_WALK_LENGTH, help="Walktrap walk length")
    p.add_argument("--force", action="store_true",
                   help=f"run Girvan-Newman beyond {GN_MAX_EDGES} edges")
    p.add_argument("-o", "--output", help="partition file (default: stdout)")

    p = sub.add_parser("metrics", help="score the communities of a partition")
    p.add_argument("input")
    p.add_argument("--partition", required=True)
    p.add_argument("--min-size", type=int, default=3)
    p.add_argument("-o", "--output", help="metrics CSV (default: stdout)")

    p = sub.add_parser("profile", help="correlations and bivariate map from metrics CSVs")
    p.add_argument("metrics", nargs="+")
    _add_map_args(p)
    p.add_argument("--out", required=True, help="output directory")

    p = sub.add_parser("classify", help="topology label of one (ccf, hub_dom) point")
    p.add_argument("--ccf", type=float, required=True)
    p.add_argument("--hub-dom", type=float, required=True)
    p.add_argument("--tau-ccf", type=float, default=DEFAULT_THRESHOLDS[0])
    p.add_argument("--tau-hub", type=float, default=DEFAULT_THRESHOLDS[1])

    p = sub.add_parser("pipeline", help="load/generate, detect, score, correlate and map")
    p.add_argument("inputs", nargs="*", help="edge-list files")
    _add_generator_args(p, required=False)
    p.add_argument("--replicates", type=int, default=1,
                   help="generated graphs, seeds seed..seed+replicates-1")
    p.add_argument("--method", action="append", choices=METHODS,
                   help="detector; repeat to pool several (default: louvain)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--t", type=int, default=DEFAULT_WALK_LENGTH)
    p.add_argument("--force", action="store_true")
    _add_map_args(p)
    p.add_argument("--manifest", help="replay the configuration of an earlier run")
    p.add_argument("--out", required=True, help="output directory")
    return ap


def _emit(text: str, output):
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_generate(a) -> int:
    spec = GeneratorSpec(a.model, a.n, a.p, a.k, a.m_attach, a.seed)
    try:
        spec.validate()
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    g = generate(spec)
    if a.output:
        write_edge_list(g, a.output)
    else:
        write_edge_list(g, sys.stdout)
    return EXIT_OK


def cmd_detect(a) -> int:
    g = load_edge_list(_existing_file(a.input))
    if a.method == "gn" and g.m > GN_MAX_EDGES and not a.force:
        raise UsageError(f"refusing Girvan-Newman on {g.m} edges: above the {GN_MAX_EDGES}-edge "
                         "guardrail (cost O(n m^2)); use --force to override")
    part = detect(g, a.method, seed=a.seed, t=a.t, force=a.force)
    _emit(export_partition(g, part), a.output)
    q = modularity(g, part) if g.m else float("nan")
    print(f"{part.k} communities, Q={q:.6f}", file=sys.stderr if not a.output else sys.stdout)
    return EXIT_OK


def cmd_metrics(a) -> int:
    g = load_edge_list(_existing_file(a.input))
    part = import_partition(g, _existing_file(a.partition))
    _emit(records_to_csv(score_partition(g, part, a.min_size)), a.output)
    return EXIT_OK


def cmd_profile(a) -> int:
    recs = []
    for path in a.metrics:
        recs.extend(records_from_csv(_existing_file(path)))
    thresholds = (a.tau_ccf, a.tau_hub)
    recs = [r for r in recs if r.size >= a.min_size]
    cm = correlation_matrix(recs, a.mask_threshold) if len(recs) >= 3 else None
    prof = bivariate_map(recs, a.bins, a.scale_split, thresholds)
    out = Path(a.out)
    out.mkdir(parents=True, exist_ok=True)
    write_profile_artifacts(out, prof, cm)
    return EXIT_OK


def cmd_classify(a) -> int:
    try:
        label = classify_topology(a.ccf, a.hub_dom, (a.tau_ccf, a.tau_hub))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    print(label.value)
    return EXIT_OK


def cmd_pipeline(a) -> int:
    if a.manifest:
        doc = json.loads(Path(_existing_file(a.manifest)).read_text(encoding="utf-8"))
        cfg = PipelineConfig.from_manifest(doc, a.out)
    else:
        gens = []
        if a.model:
            gens = [GeneratorSpec(a.model, a.n, a.p, a.k, a.m_attach, a.seed + r)
                    for r in range(a.replicates)]
        cfg = PipelineConfig(
            inputs=list(a.inputs), generators=gens, methods=a.method or ["louvain"],
            seed=a.seed, t=a.t, min_size=a.min_size, scale_split=a.scale_split,
            thresholds=(a.tau_ccf, a.tau_hub), bins=a.bins, mask_threshold=a.mask_threshold,
            out_dir=a.out, force=a.force)
    try:
        cfg.validate()
    except (ValueError, FileNotFoundError) as exc:
        raise UsageError(str(exc)) from exc
    if "gn" in cfg.methods and not cfg.force:
        for path in cfg.inputs:
            if load_edge_list(path).m > GN_MAX_EDGES:
                raise UsageError(f"{path}: too many edges for Girvan-Newman without --force")
    manifest = run_pipeline(cfg)
    for run in manifest["runs"]:
        q = run["modularity"]
        print(f"{run['graph']} {run['method']}: {run['communities']} communities, "
              f"{run['scored']} scored, Q={q:.6f}" if q is not None else
              f"{run['graph']} {run['method']}: {run['communities']} communities")
    return EXIT_OK


COMMANDS = {
    "generate": cmd_generate, "detect": cmd_detect, "metrics": cmd_metrics,
    "profile": cmd_profile, "classify": cmd_classify, "pipeline": cmd_pipeline,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except (UsageError, GuardrailError) as exc:
        print(f"commtopo {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # noqa: BLE001 - every runtime failure maps to exit 1
        if args.verbose:
            log.exception("command failed")
        print(f"commtopo {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
