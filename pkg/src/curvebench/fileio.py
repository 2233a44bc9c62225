"""On-disk formats: dataset/embedding CSV and instance/report JSON.

All numbers are written with 17 significant digits, which round-trips
IEEE doubles exactly, and files always end with a newline so repeated
writes of the same data are byte-identical.
"""

import json
from pathlib import Path

import numpy as np

from .generator import InstanceDescriptor

INSTANCE_KEYS = ("n", "m", "families", "thetas", "eta", "seed", "grid_resolution", "instance_id")


def _format_value(v: float) -> str:
    return f"{v:.17g}"


def write_point_cloud_csv(path, points, prefix: str = "x") -> None:
    """CSV with header ``<prefix>1,...,<prefix>d``, one row per point."""
    points = np.atleast_2d(np.asarray(points, dtype=float))
    d = points.shape[1]
    header = ",".join(f"{prefix}{i + 1}" for i in range(d))
    lines = [header]
    lines.extend(",".join(_format_value(v) for v in row) for row in points)
    Path(path).write_text("\n".join(lines) + "\n")


def read_point_cloud_csv(path, prefix=None) -> np.ndarray:
    """Read a point-cloud CSV back; validates the header when ``prefix`` given."""
    text = Path(path).read_text()
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError(f"{path}: empty CSV")
    header = [col.strip() for col in lines[0].split(",")]
    if prefix is not None:
        expected = [f"{prefix}{i + 1}" for i in range(len(header))]
        if header != expected:
            raise ValueError(
                f"{path}: expected header {','.join(expected)}, got {lines[0]!r}"
            )
    try:
        data = np.array(
            [[float(v) for v in ln.split(",")] for ln in lines[1:]], dtype=float
        )
    except ValueError as exc:
        raise ValueError(f"{path}: non-numeric cell ({exc})") from None
    if data.ndim != 2 or data.size == 0:
        raise ValueError(f"{path}: no data rows")
    if data.shape[1] != len(header):
        raise ValueError(f"{path}: ragged rows")
    return data


def write_instance_json(path, descriptor: InstanceDescriptor) -> None:
    obj = {
        "n": descriptor.n,
        "m": descriptor.m,
        "families": list(descriptor.families),
        "thetas": list(descriptor.thetas),
        "eta": descriptor.eta,
        "seed": descriptor.seed,
        "grid_resolution": descriptor.grid_resolution,
        "instance_id": descriptor.instance_id,
    }
    Path(path).write_text(json.dumps(obj, indent=2) + "\n")


def read_instance_json(path) -> InstanceDescriptor:
    obj = json.loads(Path(path).read_text())
    missing = [key for key in INSTANCE_KEYS if key not in obj]
    if missing:
        raise ValueError(f"{path}: instance file missing keys {missing}")
    return InstanceDescriptor(
        n=int(obj["n"]),
        m=int(obj["m"]),
        families=tuple(obj["families"]),
        thetas=tuple(float(t) for t in obj["thetas"]),
        eta=float(obj["eta"]),
        seed=int(obj["seed"]),
        grid_resolution=int(obj["grid_resolution"]),
        instance_id=str(obj["instance_id"]),
    )


def write_json(path, obj) -> None:
    """Deterministic JSON dump (sorted keys, trailing newline)."""
    Path(path).write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def read_json(path):
    return json.loads(Path(path).read_text())
