"""End-to-end run: graphs -> communities -> metrics -> correlations -> map.

A run writes everything into one output directory together with a
``manifest.json`` holding the full effective configuration, so that
``PipelineConfig.from_manifest`` reproduces the run byte for byte.
"""
from __future__ import annotations

import logging
import shutil
import tempfile
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path

from . import __version__
from .artifacts import dumps_json, sha256_file, write_profile_artifacts, write_text
from .detect import DEFAULT_WALK_LENGTH, METHODS, detect, export_partition, modularity
from .generators import GeneratorSpec, generate
from .graph import load_edge_list
from .metrics import records_to_csv, score_partition
from .profile import (DEFAULT_BINS, DEFAULT_MASK_THRESHOLD, DEFAULT_SCALE_SPLIT,
                      DEFAULT_THRESHOLDS, bivariate_map, correlation_matrix)

log = logging.getLogger(__name__)


@dataclass
class PipelineConfig:
    inputs: list = field(default_factory=list)
    generators: list = field(default_factory=list)
    methods: list = field(default_factory=lambda: ["louvain"])
    seed: int = 0
    t: int = DEFAULT_WALK_LENGTH
    min_size: int = 3
    scale_split: int = DEFAULT_SCALE_SPLIT
    thresholds: tuple = DEFAULT_THRESHOLDS
    bins: int = DEFAULT_BINS
    mask_threshold: float = DEFAULT_MASK_THRESHOLD
    out_dir: str = "out"
    force: bool = False

    def validate(self) -> "PipelineConfig":
        if not self.inputs and not self.generators:
            raise ValueError("nothing to analyse: give edge-list inputs or generator specs")
        for m in self.methods:
            if m not in METHODS:
                raise ValueError(f"unknown method {m!r}")
        for path in self.inputs:
            if not Path(path).is_file():
                raise FileNotFoundError(f"input file not found: {path}")
        for spec in self.generators:
            spec.validate()
        if self.min_size < 1 or self.bins < 2 or self.t < 1 or self.scale_split < 1:
            raise ValueError("min_size, scale_split and t must be >= 1 and bins >= 2")
        for tau in self.thresholds:
            if not 0.0 <= tau <= 1.0:
                raise ValueError(f"threshold {tau} outside [0, 1]")
        return self

    def parameters(self) -> dict:
        return {
            "methods": list(self.methods), "t": self.t, "min_size": self.min_size,
            "scale_split": self.scale_split,
            "thresholds": {"ccf": self.thresholds[0], "hub_dom": self.thresholds[1]},
            "bins": self.bins, "mask_threshold": self.mask_threshold, "force": self.force,
        }

    @classmethod
    def from_manifest(cls, doc: dict, out_dir: str) -> "PipelineConfig":
        p = doc["parameters"]
        return cls(
            inputs=[i["path"] for i in doc["inputs"] if i["kind"] == "edge_list"],
            generators=[GeneratorSpec(**i["spec"]) for i in doc["inputs"] if i["kind"] == "generator"],
            methods=list(p["methods"]), seed=doc["seeds"]["detector"], t=p["t"],
            min_size=p["min_size"], scale_split=p["scale_split"],
            thresholds=(p["thresholds"]["ccf"], p["thresholds"]["hub_dom"]),
            bins=p["bins"], mask_threshold=p["mask_threshold"], out_dir=out_dir,
            force=p["force"],
        )


def _graphs(cfg: PipelineConfig):
    for path in cfg.inputs:
        yield Path(path).stem, load_edge_list(path), cfg.seed
    for spec in cfg.generators:
        yield f"{spec.model.lower()}_n{spec.n}_s{spec.seed}", generate(spec), spec.seed


def run_pipeline(cfg: PipelineConfig) -> dict:
    """Execute the run and return the manifest.

    Artifacts are staged in a temporary directory and only moved into
    ``cfg.out_dir`` when every stage succeeded.
    """
    cfg.validate()
    out = Path(cfg.out_dir)
    created = not out.exists()
    out.mkdir(parents=True, exist_ok=True)
    stage = Path(tempfile.mkdtemp(prefix=".commtopo-", dir=out))
    try:
        manifest = _run(cfg, stage)
        for item in sorted(stage.iterdir()):
            shutil.move(str(item), out / item.name)
    except BaseException:
        shutil.rmtree(stage, ignore_errors=True)
        if created:
            shutil.rmtree(out, ignore_errors=True)
        raise
    shutil.rmtree(stage, ignore_errors=True)
    return manifest


def _run(cfg: PipelineConfig, stage: Path) -> dict:
    runs, pooled = [], []
    written = []
    for name, g, seed in _graphs(cfg):
        for method in cfg.methods:
            part = detect(g, method, seed=seed, t=cfg.t, force=cfg.force)
            q = modularity(g, part) if g.m else None
            pfile = stage / f"{name}.{method}.partition.txt"
            export_partition(g, part, pfile)
            written.append(pfile)
            recs = score_partition(g, part, cfg.min_size)
            first = len(pooled)
            pooled.extend(replace(r, community_id=first + i) for i, r in enumerate(recs))
            runs.append({"graph": name, "method": method, "seed": seed, "n": g.n, "m": g.m,
                         "communities": part.k, "scored": len(recs), "modularity": q,
                         "record_ids": [first, len(pooled)], "partition": pfile.name})
            log.info("%s/%s: %d communities, Q=%s", name, method, part.k, q)

    written.append(write_text(stage / "metrics.csv", records_to_csv(pooled)))
    cm = None
    if len(pooled) >= 3:
        cm = correlation_matrix(pooled, cfg.mask_threshold)
    else:
        log.warning("only %d scored communities; correlation matrix skipped", len(pooled))
    prof = bivariate_map(pooled, cfg.bins, cfg.scale_split, cfg.thresholds)
    written.extend(write_profile_artifacts(stage, prof, cm))

    inputs = [{"kind": "edge_list", "path": str(p), "sha256": sha256_file(p)} for p in cfg.inputs]
    inputs += [{"kind": "generator", "spec": asdict(s)} for s in cfg.generators]
    manifest = {
        "command": "pipeline",
        "version": __version__,
        "inputs": inputs,
        "parameters": cfg.parameters(),
        "seeds": {"detector": cfg.seed, "generators": [s.seed for s in cfg.generators]},
        "runs": runs,
        "outputs": [{"path": p.name, "sha256": sha256_file(p)} for p in sorted(written)],
    }
    write_text(stage / "manifest.json", dumps_json(manifest))
    return manifest
