"""Parsers and serializers for the package's text file formats.

Formats:
  point cloud   one point per line, comma- or whitespace-separated floats
  distances     lower-triangular text, row i has i entries
  complex       one simplex per line, space-separated vertex ids
  values        one `vertex value` pair per line
  filtration    one `value v0 v1 ... vk` line per simplex
  cover         "lo,hi;lo,hi;..." on the command line
  cosheaf       complex lines, then `stalk <simplex> <dim>` lines, then
                `map <face> <coface> <row-major entries>` lines, where a
                simplex is written as comma-separated vertex ids
  zigzag        header `dims d0 d1 ...`, then per arrow `fwd|bwd` followed
                by row-major matrix entries
  barcode JSON  {"field": p, "bars": [{"dim": i, "birth": b, "death":
                d-or-null}, ...]}, bars sorted by (dim, birth, death)
"""

from __future__ import annotations

import json
import math

import numpy as np

from .complexes import IntervalCover, SimplicialComplex, build_complex, simplex
from .cosheaf import SimplicialCosheaf, codim1_pairs
from .errors import TdaError
from .persistence import Bar, Barcode, FilteredComplex
from .zigzag import BACKWARD, FORWARD, ZigzagModule


def _nonblank_lines(text: str) -> list[str]:
    return [line.strip() for line in text.splitlines() if line.strip()]


def parse_point_cloud(text: str, header: bool = False) -> np.ndarray:
    lines = _nonblank_lines(text)
    if header:
        lines = lines[1:]
    rows = []
    for line in lines:
        parts = line.replace(",", " ").split()
        try:
            rows.append([float(x) for x in parts])
        except ValueError as exc:
            raise TdaError(f"bad point line {line!r}") from exc
    if not rows:
        raise TdaError("point cloud file has no points")
    widths = {len(r) for r in rows}
    if len(widths) != 1:
        raise TdaError(f"points have inconsistent dimensions {sorted(widths)}")
    return np.asarray(rows, dtype=float)


def parse_distance_matrix(text: str) -> np.ndarray:
    """Lower-triangular rows; line j (0-based) must hold j+1 entries."""
    lines = _nonblank_lines(text)
    n = len(lines) + 1
    D = np.zeros((n, n), dtype=float)
    for j, line in enumerate(lines):
        parts = line.replace(",", " ").split()
        if len(parts) != j + 1:
            raise TdaError(
                f"distance row {j} has {len(parts)} entries, expected {j + 1}"
            )
        for i, x in enumerate(parts):
            D[j + 1, i] = D[i, j + 1] = float(x)
    return D


def parse_complex(text: str) -> SimplicialComplex:
    simplices = []
    for line in _nonblank_lines(text):
        simplices.append([int(v) for v in line.split()])
    return build_complex(simplices)


def parse_vertex_values(text: str) -> dict[int, float]:
    values: dict[int, float] = {}
    for line in _nonblank_lines(text):
        parts = line.split()
        if len(parts) != 2:
            raise TdaError(f"bad values line {line!r}; expected `vertex value`")
        values[int(parts[0])] = float(parts[1])
    return values


def parse_cover(spec: str) -> IntervalCover:
    intervals = []
    for chunk in spec.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        parts = chunk.split(",")
        if len(parts) != 2:
            raise TdaError(f"bad cover interval {chunk!r}; expected `lo,hi`")
        intervals.append((float(parts[0]), float(parts[1])))
    if not intervals:
        raise TdaError("cover specification is empty")
    return IntervalCover(intervals)


def parse_filtration(text: str) -> FilteredComplex:
    entries = []
    for line in _nonblank_lines(text):
        parts = line.split()
        if len(parts) < 2:
            raise TdaError(f"bad filtration line {line!r}; expected `value v0 ...`")
        entries.append(([int(v) for v in parts[1:]], float(parts[0])))
    return FilteredComplex(entries)


def _parse_simplex_token(token: str):
    return simplex(int(v) for v in token.split(","))


def parse_cosheaf(text: str) -> SimplicialCosheaf:
    """Cosheaf file: complex section, stalk lines, map lines.

    Unlisted stalks default to dimension 0 and unlisted extension maps to
    zero matrices, so zero-stalk simplices need no explicit lines.
    """
    complex_lines: list[str] = []
    stalk_lines: list[list[str]] = []
    map_lines: list[list[str]] = []
    for line in _nonblank_lines(text):
        parts = line.split()
        if parts[0] == "stalk":
            stalk_lines.append(parts)
        elif parts[0] == "map":
            map_lines.append(parts)
        else:
            complex_lines.append(line)
    base = parse_complex("\n".join(complex_lines))
    stalks = {s: 0 for s in base.simplices}
    for parts in stalk_lines:
        if len(parts) != 3:
            raise TdaError(f"bad stalk line {parts!r}; expected `stalk <simplex> <dim>`")
        s = _parse_simplex_token(parts[1])
        if s not in base:
            raise TdaError(f"stalk given for {s}, which is not in the complex")
        stalks[s] = int(parts[2])
    maps = {}
    for parts in map_lines:
        if len(parts) < 3:
            raise TdaError("bad map line; expected `map <face> <coface> <entries>`")
        face = _parse_simplex_token(parts[1])
        coface = _parse_simplex_token(parts[2])
        entries = [int(x) for x in parts[3:]]
        shape = (stalks.get(face, 0), stalks.get(coface, 0))
        if len(entries) != shape[0] * shape[1]:
            raise TdaError(
                f"map {face} <- {coface} needs {shape[0] * shape[1]} entries, got {len(entries)}"
            )
        maps[(face, coface)] = np.asarray(entries, dtype=np.int64).reshape(shape)
    for pair in codim1_pairs(base):
        if pair not in maps:
            maps[pair] = np.zeros((stalks[pair[0]], stalks[pair[1]]), dtype=np.int64)
    return SimplicialCosheaf(base=base, stalks=stalks, maps=maps)


def parse_zigzag(text: str) -> ZigzagModule:
    lines = _nonblank_lines(text)
    if not lines or not lines[0].startswith("dims"):
        raise TdaError("zigzag file must start with a `dims d0 d1 ...` header")
    dims = [int(x) for x in lines[0].split()[1:]]
    arrows = []
    for i, line in enumerate(lines[1:]):
        parts = line.split()
        direction = parts[0]
        if direction not in (FORWARD, BACKWARD):
            raise TdaError(f"arrow direction must be {FORWARD!r} or {BACKWARD!r}, got {direction!r}")
        if i + 1 >= len(dims):
            raise TdaError("more arrows than dims allow")
        shape = (
            (dims[i + 1], dims[i]) if direction == FORWARD else (dims[i], dims[i + 1])
        )
        entries = [int(x) for x in parts[1:]]
        if len(entries) != shape[0] * shape[1]:
            raise TdaError(
                f"arrow {i} needs {shape[0] * shape[1]} entries, got {len(entries)}"
            )
        arrows.append((direction, np.asarray(entries, dtype=np.int64).reshape(shape)))
    return ZigzagModule(dims=dims, arrows=arrows)


def barcode_to_json(bc: Barcode, field: int) -> str:
    bars = [
        {
            "dim": b.degree,
            "birth": b.birth,
            "death": None if math.isinf(b.death) else b.death,
        }
        for b in bc
    ]
    return json.dumps({"bars": bars, "field": field}, indent=2, sort_keys=True) + "\n"


def parse_barcode_json(text: str) -> tuple[int, Barcode]:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise TdaError(f"bad barcode JSON: {exc}") from exc
    if not isinstance(obj, dict) or "bars" not in obj:
        raise TdaError("barcode JSON must be an object with a `bars` list")
    bars = []
    for item in obj["bars"]:
        death = item["death"]
        bars.append(
            Bar(
                degree=item["dim"],
                birth=float(item["birth"]),
                death=math.inf if death is None else float(death),
            )
        )
    return int(obj.get("field", 2)), Barcode(bars)


def read_text(path) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()
