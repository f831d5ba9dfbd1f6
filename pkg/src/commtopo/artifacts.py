"""Serialisation of profiles, correlation matrices and heatmaps.

Every writer is deterministic: same input, same bytes.
"""
from __future__ import annotations

import csv
import hashlib
import io
import json
import math
from collections import Counter
from pathlib import Path

import numpy as np

from .profile import SCALES, BivariateProfile, CorrelationMatrix, TopologyLabel


def _num(x) -> str:
    return "" if x is None or (isinstance(x, float) and math.isnan(x)) else f"{float(x):.17g}"


def dumps_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False, allow_nan=False) + "\n"


def write_text(path, text: str) -> Path:
    path = Path(path)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
    return path


def sha256_file(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for block in iter(lambda: fh.read(1 << 16), b""):
            h.update(block)
    return h.hexdigest()


def profile_json(prof: BivariateProfile) -> str:
    return dumps_json(prof.to_dict())


def read_profile_json(path) -> BivariateProfile:
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    return BivariateProfile(
        bins=doc["bins"], scale_split=doc["scale_split"],
        thresholds=(doc["thresholds"]["ccf"], doc["thresholds"]["hub_dom"]),
        grids={s: np.array(doc["grids"][s], dtype=np.int64) for s in SCALES},
        label_totals={s: Counter({TopologyLabel(k): v for k, v in doc["label_totals"][s].items() if v})
                      for s in SCALES},
        unclassified_count=doc["unclassified_count"],
    )


def _matrix_csv(names, rows_fn) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["metric", *names])
    for i, name in enumerate(names):
        w.writerow([name, *rows_fn(i)])
    return buf.getvalue()


def correlation_csv(cm: CorrelationMatrix) -> tuple[str, str]:
    """Coefficient matrix and its parallel mask (1 = masked)."""
    names = cm.metric_names
    masked = cm.masked
    r_text = _matrix_csv(names, lambda i: [_num(v) for v in cm.r[i]])
    m_text = _matrix_csv(names, lambda i: [str(int(v)) for v in masked[i]])
    return r_text, m_text


def pvalue_csv(cm: CorrelationMatrix) -> str:
    return _matrix_csv(cm.metric_names, lambda i: [_num(v) for v in cm.p[i]])


def read_matrix_csv(path) -> tuple[tuple, np.ndarray]:
    with open(path, encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    names = tuple(rows[0][1:])
    vals = np.array([[float(x) if x != "" else np.nan for x in row[1:]] for row in rows[1:]])
    return names, vals


# light grey for empty cells, ramping to a dark red
_LOW = np.array([0xF2, 0xF2, 0xF2], dtype=float)
_HIGH = np.array([0xB2, 0x18, 0x2B], dtype=float)


def _shade(count: int, top: int) -> str:
    frac = math.log1p(count) / math.log1p(top) if top > 0 else 0.0
    rgb = np.rint(_LOW + (_HIGH - _LOW) * frac).astype(int)
    return "#{:02x}{:02x}{:02x}".format(*rgb)


def heatmap_svg(grid: np.ndarray, title: str = "", cell: int = 20) -> str:
    """Square heatmap: CCF bins along x, hub_dom bins along y (upwards)."""
    b = grid.shape[0]
    margin = 50
    size = b * cell
    width = size + margin + 20
    height = size + margin + 30
    top = int(grid.max()) if grid.size else 0
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<title>{title}</title>' if title else "",
        f'<g transform="translate({margin},20)">',
    ]
    for i in range(b):
        for j in range(b):
            c = int(grid[i, j])
            y = (b - 1 - j) * cell
            out.append(f'<rect x="{i * cell}" y="{y}" width="{cell}" height="{cell}" '
                       f'fill="{_shade(c, top)}"><title>{c}</title></rect>')
    out.append(f'<rect x="0" y="0" width="{size}" height="{size}" fill="none" stroke="#333"/>')
    for frac in (0.0, 0.5, 1.0):
        pos = round(frac * size)
        out.append(f'<text x="{pos}" y="{size + 14}" font-size="10" text-anchor="middle">{frac:g}</text>')
        out.append(f'<text x="-4" y="{size - pos + 3}" font-size="10" text-anchor="end">{frac:g}</text>')
    out.append(f'<text x="{size // 2}" y="{size + 28}" font-size="12" text-anchor="middle">CCF</text>')
    out.append(f'<text x="-34" y="{size // 2}" font-size="12" text-anchor="middle" '
               f'transform="rotate(-90 -34 {size // 2})">hub_dom</text>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(line for line in out if line) + "\n"


def write_profile_artifacts(out_dir, prof: BivariateProfile, cm: CorrelationMatrix | None) -> list[Path]:
    """profile.json, one heatmap per scale and, when available, correlation CSVs."""
    out_dir = Path(out_dir)
    paths = [write_text(out_dir / "profile.json", profile_json(prof))]
    for scale in SCALES:
        paths.append(write_text(out_dir / f"heatmap_{scale}.svg",
                                heatmap_svg(prof.grids[scale], f"{scale} communities")))
    if cm is not None:
        r_text, m_text = correlation_csv(cm)
        paths.append(write_text(out_dir / "correlation.csv", r_text))
        paths.append(write_text(out_dir / "correlation_mask.csv", m_text))
        paths.append(write_text(out_dir / "correlation_pvalues.csv", pvalue_csv(cm)))
    return paths
