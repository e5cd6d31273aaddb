"""Instances, file formats and seeded generators.

Text format: one ``x,y`` pair per line, ``#`` starts a comment. Lines
``# name: ...`` and ``# provenance: {json}`` carry metadata. A JSON envelope
``{name, seed, generator, params, points: [[x, y], ...]}`` is also accepted.

Random instances come from splitmix64 so the same seed gives the same
points in any language:

    state += 0x9E3779B97F4A7C15
    z = state
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    return z ^ (z >> 31)                    # all arithmetic mod 2**64

A uniform double is ``(next() >> 11) * 2**-53``; normals use Box-Muller on
two such draws.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

GENERATOR = "splitmix64"
MASK64 = (1 << 64) - 1


class InstanceFormatError(ValueError):
    """Malformed instance or solution file; ``line`` is 1-based when known."""

    def __init__(self, message: str, line: int | None = None, path=None):
        where = f"{path}:" if path is not None else ""
        where += f"line {line}: " if line is not None else (" " if where else "")
        super().__init__(f"{where}{message}")
        self.line = line


@dataclass
class Instance:
    points: np.ndarray
    bbox: tuple[float, float, float, float] | None = None
    name: str = ""
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float).reshape(-1, 2)
        if not np.all(np.isfinite(pts)):
            raise ValueError("points must be finite")
        self.points = pts
        if self.bbox is None:
            if len(pts):
                lo, hi = pts.min(axis=0), pts.max(axis=0)
                self.bbox = (float(lo[0]), float(lo[1]), float(hi[0]), float(hi[1]))
            else:
                self.bbox = (0.0, 0.0, 0.0, 0.0)
        else:
            self.bbox = tuple(float(v) for v in self.bbox)
            x0, y0, x1, y1 = self.bbox
            if len(pts) and (pts[:, 0].min() < x0 or pts[:, 0].max() > x1 or pts[:, 1].min() < y0 or pts[:, 1].max() > y1):
                raise ValueError("points outside the declared bounding box")

    def __len__(self):
        return len(self.points)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "seed": self.provenance.get("seed"),
            "generator": self.provenance.get("generator"),
            "params": self.provenance.get("params", {}),
            "bbox": list(self.bbox),
            "points": [[float(x), float(y)] for x, y in self.points],
        }


# -- generator -----------------------------------------------------------------


class SplitMix64:
    """The splitmix64 sequence with a 64-bit state."""

    def __init__(self, seed: int):
        self.state = int(seed) & MASK64

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def uniform(self) -> float:
        """Double in [0, 1)."""
        return (self.next() >> 11) * 2.0**-53

    def normal(self) -> float:
        u1 = 1.0 - self.uniform()
        u2 = self.uniform()
        return math.sqrt(-2.0 * math.log(u1)) * math.cos(2.0 * math.pi * u2)


def gen_uniform(n: int, width: float, height: float, seed: int) -> Instance:
    """``n`` points uniform in ``[0, width] x [0, height]``, x drawn before y."""
    if n < 0 or width <= 0 or height <= 0:
        raise ValueError("need n >= 0 and a box of positive size")
    rng = SplitMix64(seed)
    pts = [(rng.uniform() * width, rng.uniform() * height) for _ in range(n)]
    prov = {"generator": GENERATOR, "seed": seed, "params": {"kind": "uniform", "n": n, "width": width, "height": height}}
    return Instance(np.asarray(pts, dtype=float).reshape(-1, 2), (0.0, 0.0, float(width), float(height)),
                    f"uniform-n{n}-s{seed}", prov)


def gen_clustered(n: int, clusters: int, spread: float, width: float, height: float, seed: int) -> Instance:
    """Gaussian blobs around uniform centers, clipped to the box.

    Centers are drawn first (x then y each); every point then draws its
    cluster as ``floor(u * clusters)`` followed by two normals.
    """
    if n < 0 or clusters < 1 or spread <= 0 or width <= 0 or height <= 0:
        raise ValueError("need n >= 0, clusters >= 1, spread > 0 and a box of positive size")
    rng = SplitMix64(seed)
    centers = [(rng.uniform() * width, rng.uniform() * height) for _ in range(clusters)]
    pts = []
    for _ in range(n):
        cx, cy = centers[min(int(rng.uniform() * clusters), clusters - 1)]
        x = min(max(cx + spread * rng.normal(), 0.0), width)
        y = min(max(cy + spread * rng.normal(), 0.0), height)
        pts.append((x, y))
    prov = {"generator": GENERATOR, "seed": seed,
            "params": {"kind": "clustered", "n": n, "clusters": clusters, "spread": spread, "width": width, "height": height}}
    return Instance(np.asarray(pts, dtype=float).reshape(-1, 2), (0.0, 0.0, float(width), float(height)),
                    f"clustered-n{n}-c{clusters}-s{seed}", prov)


# -- files ----------------------------------------------------------------------


def _parse_pair(text: str, lineno: int, path) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise InstanceFormatError(f"expected 'x,y', got {text!r}", lineno, path)
    try:
        x, y = float(parts[0]), float(parts[1])
    except ValueError:
        raise InstanceFormatError(f"not a number pair: {text!r}", lineno, path) from None
    if not (math.isfinite(x) and math.isfinite(y)):
        raise InstanceFormatError(f"non-finite value: {text!r}", lineno, path)
    return x, y


def parse_points(text: str, path=None) -> tuple[np.ndarray, dict]:
    """Points and ``# key: value`` metadata of the text format."""
    pts = []
    meta = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line.startswith("#"):
            body = line[1:].strip()
            key, sep, value = body.partition(":")
            if sep and key.strip() in ("name", "provenance", "bbox"):
                meta[key.strip()] = value.strip()
            continue
        line = line.split("#", 1)[0].strip()
        if not line or (not pts and line.replace(" ", "").lower() == "x,y"):
            continue
        pts.append(_parse_pair(line, lineno, path))
    return np.asarray(pts, dtype=float).reshape(-1, 2), meta


def _from_envelope(data, path) -> Instance:
    if not isinstance(data, dict) or "points" not in data:
        raise InstanceFormatError("JSON instance needs a 'points' list", None, path)
    pts = []
    for i, p in enumerate(data["points"]):
        if not (isinstance(p, (list, tuple)) and len(p) == 2):
            raise InstanceFormatError(f"point {i} is not an [x, y] pair", None, path)
        try:
            x, y = float(p[0]), float(p[1])
        except (TypeError, ValueError):
            raise InstanceFormatError(f"point {i} is not numeric", None, path) from None
        if not (math.isfinite(x) and math.isfinite(y)):
            raise InstanceFormatError(f"point {i} is not finite", None, path)
        pts.append((x, y))
    prov = {k: data[k] for k in ("generator", "seed", "params") if data.get(k) is not None}
    bbox = tuple(data["bbox"]) if data.get("bbox") else None
    try:
        return Instance(np.asarray(pts, dtype=float).reshape(-1, 2), bbox, str(data.get("name") or ""), prov)
    except ValueError as exc:
        raise InstanceFormatError(str(exc), None, path) from None


def loads_instance(text: str, path=None) -> Instance:
    if text.lstrip().startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InstanceFormatError(f"invalid JSON: {exc.msg}", exc.lineno, path) from None
        return _from_envelope(data, path)
    pts, meta = parse_points(text, path)
    prov = {}
    if "provenance" in meta:
        try:
            prov = json.loads(meta["provenance"])
        except json.JSONDecodeError:
            raise InstanceFormatError("provenance comment is not JSON", None, path) from None
    bbox = None
    if "bbox" in meta:
        try:
            bbox = tuple(float(v) for v in meta["bbox"].split(","))
        except ValueError:
            raise InstanceFormatError("bbox comment is not 'x0,y0,x1,y1'", None, path) from None
    name = meta.get("name", Path(path).stem if path is not None else "")
    try:
        return Instance(pts, bbox, name, prov)
    except ValueError as exc:
        raise InstanceFormatError(str(exc), None, path) from None


def load_instance(path) -> Instance:
    path = Path(path)
    return loads_instance(path.read_text(encoding="utf-8"), path)


def dumps_instance(inst: Instance, fmt: str = "csv") -> str:
    if fmt == "json":
        return json.dumps(inst.to_dict(), indent=2) + "\n"
    if fmt != "csv":
        raise ValueError("format must be 'csv' or 'json'")
    lines = []
    if inst.name:
        lines.append(f"# name: {inst.name}")
    if inst.provenance:
        lines.append(f"# provenance: {json.dumps(inst.provenance, sort_keys=True)}")
    lines.append("# bbox: " + ",".join(format(v, ".17g") for v in inst.bbox))
    lines += [f"{x:.17g},{y:.17g}" for x, y in inst.points]
    return "\n".join(lines) + "\n"


def save_instance(inst: Instance, path, fmt: str | None = None) -> None:
    path = Path(path)
    fmt = fmt or ("json" if path.suffix.lower() == ".json" else "csv")
    path.write_text(dumps_instance(inst, fmt), encoding="utf-8")


class NotASubset(ValueError):
    """A solution names a point that is not part of the instance."""


def load_solution(path, inst: Instance) -> list[int]:
    """Chosen indices from a run report (``chosen``) or a point list.

    Point lists are matched to instance points by exact coordinates.
    """
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    n = len(inst)
    if text.lstrip().startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InstanceFormatError(f"invalid JSON: {exc.msg}", exc.lineno, path) from None
        if "chosen" in data:
            out = []
            for c in data["chosen"]:
                if not isinstance(c, int) or isinstance(c, bool):
                    raise InstanceFormatError(f"chosen entry {c!r} is not an index", None, path)
                if not 0 <= c < n:
                    raise NotASubset(f"not a subset: index {c} outside 0..{n - 1}")
                out.append(c)
            return out
        pts = _from_envelope(data, path).points
    else:
        pts, _ = parse_points(text, path)
    lookup: dict[tuple[float, float], int] = {}
    for i, (x, y) in enumerate(inst.points):
        lookup.setdefault((float(x), float(y)), i)
    out = []
    for x, y in pts:
        key = (float(x), float(y))
        if key not in lookup:
            raise NotASubset(f"not a subset: point ({x:.17g}, {y:.17g}) is not in the instance")
        out.append(lookup[key])
    return out
