"""Shared builders for the test suite: reference complexes, the grid
torus with its height function, random complexes, admissible covers, and
tiny self-contained oracles kept independent of the library internals."""

from __future__ import annotations

import os

import numpy as np

import tda
from tda import leray
from tda.complexes import IntervalCover, SimplicialComplex

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")


def interval_complex() -> SimplicialComplex:
    """Two vertices and one edge."""
    return tda.build_complex([[0, 1]])


def hollow_triangle() -> SimplicialComplex:
    return tda.build_complex([[0, 1], [1, 2], [0, 2]])


def solid_triangle() -> SimplicialComplex:
    return tda.build_complex([[0, 1, 2]])


def octagon_circle():
    """An 8-vertex circle model with the height (y coordinate) per vertex."""
    import math

    angles = [math.pi / 2 + i * math.pi / 4 for i in range(8)]
    pts = [(math.cos(a), math.sin(a)) for a in angles]
    K = tda.build_complex([[i, (i + 1) % 8] for i in range(8)])
    values = {i: pts[i][1] for i in range(8)}
    return K, values


def grid_torus(n: int = 18, big: float = 2.0, small: float = 1.0):
    """Grid-triangulated torus standing upright, with vertex heights.

    The angular samples are spaced evenly in sin (tube-center angle) and
    cos (tube angle), which caps each triangle's height span at 8/(n/2)
    and keeps the four critical vertices exactly on the grid.
    """
    m = n // 2
    sins = [0.0] * n
    coss = [0.0] * n
    for i in range(n):
        k = i if i <= m else n - i
        sins[i] = -1.0 + 2.0 * k / m
        coss[i] = 1.0 - 2.0 * k / m

    def vid(i, j):
        return (i % n) * n + (j % n)

    tris = []
    for i in range(n):
        for j in range(n):
            tris.append([vid(i, j), vid(i + 1, j), vid(i, j + 1)])
            tris.append([vid(i + 1, j), vid(i, j + 1), vid(i + 1, j + 1)])
    K = tda.build_complex(tris)
    values = {
        vid(i, j): (big + small * coss[j]) * sins[i] for i in range(n) for j in range(n)
    }
    return K, values


def torus_cover() -> IntervalCover:
    """Five intervals: one per critical value of the height, plus a
    padding interval past the maximum; the nerve is a 5-vertex path."""
    return IntervalCover([(-4.2, -1.05), (-2.95, 0.97), (-0.97, 2.95), (1.05, 4.2), (3.3, 5.5)])


TORUS_THRESHOLDS = [-2.0, 0.0, 2.0, 3.5]


def circle60() -> np.ndarray:
    rows = []
    with open(os.path.join(FIXTURES, "circle60.csv")) as fh:
        for line in fh:
            x, y = line.strip().split(",")
            rows.append((float(x), float(y)))
    return np.asarray(rows)


def random_complex(rng: np.random.Generator, max_vertices: int = 12) -> SimplicialComplex:
    """A random 2-dimensional complex: sprinkled triangles and edges."""
    nv = int(rng.integers(3, max_vertices + 1))
    simplices = [[v] for v in range(nv)]
    n_edges = int(rng.integers(0, 2 * nv))
    for _ in range(n_edges):
        a, b = rng.choice(nv, size=2, replace=False)
        simplices.append([int(a), int(b)])
    n_tris = int(rng.integers(0, nv))
    for _ in range(n_tris):
        t = rng.choice(nv, size=3, replace=False)
        simplices.append([int(v) for v in t])
    return tda.build_complex(simplices)


def random_mapped_complex(rng: np.random.Generator, max_vertices: int = 12) -> leray.MappedComplex:
    K = random_complex(rng, max_vertices)
    values = {v: float(rng.uniform(0.0, 10.0)) for v in K.vertices()}
    return leray.MappedComplex(K, values)


def admissible_random_cover(rng: np.random.Generator, M: leray.MappedComplex) -> IntervalCover:
    """A random linear cover that every simplex's value range fits into.

    Cut points are separated by more than twice the largest simplex span,
    and each interval extends one span past its neighbouring cuts.
    """
    vals = [M.values[v] for v in M.complex.vertices()]
    lo, hi = min(vals), max(vals)
    span = max(
        (
            max(M.values[v] for v in s) - min(M.values[v] for v in s)
            for s in M.complex.simplices
        ),
        default=0.0,
    )
    delta = span + 0.05 * (hi - lo) + 1e-6
    cuts = []
    pos = lo + 2 * delta
    while pos < hi - 2 * delta and len(cuts) < 4:
        if rng.random() < 0.7:
            cuts.append(pos + float(rng.uniform(0.0, delta / 2)))
        pos += 2.5 * delta
    if not cuts:
        return IntervalCover([(lo - 1.0, hi + 1.0)])
    points = [lo - 1.0] + cuts + [hi + 1.0]
    intervals = []
    for i in range(len(points) - 1):
        a = points[i] - delta if i > 0 else points[i]
        b = points[i + 1] + delta if i + 1 < len(points) - 1 else points[i + 1]
        intervals.append((a, b))
    cover = IntervalCover(intervals)
    leray.check_cover_granularity(M, cover)
    return cover


def random_zigzag(rng: np.random.Generator, max_len: int = 6, max_dim: int = 3, field: int = 2):
    from tda.zigzag import BACKWARD, FORWARD, ZigzagModule

    n = int(rng.integers(1, max_len + 1))
    dims = [int(rng.integers(0, max_dim + 1)) for _ in range(n)]
    arrows = []
    for i in range(n - 1):
        direction = FORWARD if rng.random() < 0.5 else BACKWARD
        shape = (dims[i + 1], dims[i]) if direction == FORWARD else (dims[i], dims[i + 1])
        arrows.append((direction, rng.integers(0, field, size=shape)))
    return ZigzagModule(dims=dims, arrows=arrows)


def random_invertible(rng: np.random.Generator, n: int, field: int) -> np.ndarray:
    """Unit lower-triangular times unit upper-triangular, always invertible."""
    L = np.tril(rng.integers(0, field, size=(n, n)), -1) + np.eye(n, dtype=np.int64)
    U = np.triu(rng.integers(0, field, size=(n, n)), 1) + np.eye(n, dtype=np.int64)
    return (L @ U) % field


def twisted_constant_cosheaf(rng: np.random.Generator, K: SimplicialComplex, n: int, field: int):
    """A valid random cosheaf: the constant cosheaf conjugated per simplex.

    With r = inv(A_face) A_coface, compositions along any two face chains
    agree, so path independence holds by construction.
    """
    from tda import fields
    from tda.cosheaf import SimplicialCosheaf, codim1_pairs

    twists = {s: random_invertible(rng, n, field) for s in K.simplices}
    inverses = {
        s: fields.solve(A, np.eye(n, dtype=np.int64), field) for s, A in twists.items()
    }
    maps = {
        (face, coface): fields.matmul(inverses[face], twists[coface], field)
        for face, coface in codim1_pairs(K)
    }
    return SimplicialCosheaf(base=K, stalks={s: n for s in K.simplices}, maps=maps)


def torus_leray_zigzag():
    """The degree-1 Leray zigzag of the upright torus over a four-piece
    cover: 0 <- k -> k^2 <- k^2 -> k^2 <- k -> 0 with diagonal end maps."""
    from tda.zigzag import BACKWARD, FORWARD, ZigzagModule

    diag = np.array([[1], [1]], dtype=np.int64)
    eye2 = np.eye(2, dtype=np.int64)
    none = np.zeros((0, 1), dtype=np.int64)
    return ZigzagModule(
        dims=[0, 1, 2, 2, 2, 1, 0],
        arrows=[
            (BACKWARD, none),
            (FORWARD, diag),
            (BACKWARD, eye2),
            (FORWARD, eye2),
            (BACKWARD, diag),
            (FORWARD, none),
        ],
    )


def gf2_rank_reference(A) -> int:
    """Plain-python GF(2) rank, used as an oracle independent of tda.fields."""
    M = np.atleast_2d(np.asarray(A, dtype=np.int64)) % 2
    if M.size == 0:
        return 0
    rows = [int("".join(str(int(x)) for x in row), 2) for row in M]
    rank = 0
    while True:
        rows = [r for r in rows if r]
        if not rows:
            return rank
        pivot = max(rows)
        top = 1 << (pivot.bit_length() - 1)
        rows = [r ^ pivot if r & top else r for r in rows if r != pivot]
        rank += 1
