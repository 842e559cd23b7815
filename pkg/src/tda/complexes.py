"""Simplicial complex builders.

Explicit complexes from simplex lists, Vietoris-Rips and Čech complexes of
point clouds, nerves of interval covers, and eccentricity vertex functions.
All constructions use closed-ball conventions (<= comparisons) and compare
squared distances where possible, with an absolute tolerance of 1e-9 for
the rest.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidMetricError, MalformedSimplexError, NonlinearNerveError

TOL = 1e-9

Simplex = tuple[int, ...]


def simplex(vertices: Iterable[int]) -> Simplex:
    """Normalize an iterable of vertex ids into a sorted simplex tuple."""
    vs = tuple(int(v) for v in vertices)
    if not vs:
        raise MalformedSimplexError("a simplex needs at least one vertex")
    if any(v < 0 for v in vs):
        raise MalformedSimplexError(f"negative vertex id in {vs!r}")
    if len(set(vs)) != len(vs):
        raise MalformedSimplexError(f"duplicate vertices in {vs!r}")
    return tuple(sorted(vs))


def faces(sigma: Simplex) -> list[Simplex]:
    """All codimension-1 faces of sigma, in vertex-deletion order."""
    return [sigma[:j] + sigma[j + 1 :] for j in range(len(sigma))]


def face_closure(simplices: Iterable[Simplex]) -> set[Simplex]:
    closed: set[Simplex] = set()
    for s in simplices:
        for k in range(1, len(s) + 1):
            closed.update(combinations(s, k))
    return closed


class SimplicialComplex:
    """A finite, face-closed set of simplices over integer vertex ids.

    The constructor normalizes each input simplex and takes the face
    closure, so the result is always a valid complex; construction is
    idempotent on already-closed input.
    """

    __slots__ = ("_simplices", "_dim")

    def __init__(self, simplices: Iterable[Sequence[int]] = (), *, _closed: bool = False):
        cleaned = {simplex(s) for s in simplices}
        if not _closed:
            cleaned = face_closure(cleaned)
        self._simplices = frozenset(cleaned)
        self._dim = max((len(s) - 1 for s in cleaned), default=-1)

    @property
    def simplices(self) -> frozenset[Simplex]:
        return self._simplices

    @property
    def dimension(self) -> int:
        """Top simplex dimension; -1 for the empty complex."""
        return self._dim

    def p_simplices(self, p: int) -> list[Simplex]:
        """The p-simplices in lexicographic vertex order."""
        return sorted(s for s in self._simplices if len(s) == p + 1)

    def vertices(self) -> list[int]:
        return sorted(s[0] for s in self._simplices if len(s) == 1)

    def full_subcomplex(self, vertex_subset: Iterable[int]) -> "SimplicialComplex":
        """Simplices all of whose vertices lie in the given set."""
        vs = set(vertex_subset)
        kept = {s for s in self._simplices if vs.issuperset(s)}
        return SimplicialComplex(kept, _closed=True)

    def is_subcomplex_of(self, other: "SimplicialComplex") -> bool:
        return self._simplices <= other._simplices

    def __contains__(self, s) -> bool:
        return tuple(s) in self._simplices

    def __len__(self) -> int:
        return len(self._simplices)

    def __iter__(self):
        return iter(sorted(self._simplices, key=lambda s: (len(s), s)))

    def __eq__(self, other) -> bool:
        return isinstance(other, SimplicialComplex) and self._simplices == other._simplices

    def __hash__(self) -> int:
        return hash(self._simplices)

    def __repr__(self) -> str:
        return f"SimplicialComplex({len(self._simplices)} simplices, dim {self._dim})"


def build_complex(simplices: Iterable[Sequence[int]]) -> SimplicialComplex:
    """Face closure of the given simplices."""
    return SimplicialComplex(simplices)


def as_point_cloud(points) -> np.ndarray:
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] < 1:
        raise ValueError(f"a point cloud must be a 2-D array of coordinates, got shape {pts.shape}")
    return pts


def _looks_like_distance_matrix(arr: np.ndarray) -> bool:
    return (
        arr.ndim == 2
        and arr.shape[0] == arr.shape[1]
        and np.allclose(arr, arr.T, atol=TOL)
        and np.allclose(np.diag(arr), 0.0, atol=TOL)
    )


def squared_distance_matrix(data, precomputed: bool | None = None) -> np.ndarray:
    """Squared pairwise distances from points or a precomputed matrix.

    With precomputed=None, a square symmetric zero-diagonal array is taken
    to be a distance matrix; anything else is taken to be coordinates.
    """
    arr = np.asarray(data, dtype=float)
    if precomputed is None:
        precomputed = _looks_like_distance_matrix(arr)
    if precomputed:
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise InvalidMetricError(f"distance matrix must be square, got shape {arr.shape}")
        if not np.allclose(arr, arr.T, atol=TOL):
            raise InvalidMetricError("distance matrix must be symmetric")
        if np.any(arr < -TOL):
            raise InvalidMetricError("distances must be nonnegative")
        return arr**2
    pts = as_point_cloud(arr)
    diff = pts[:, None, :] - pts[None, :, :]
    return np.einsum("ijk,ijk->ij", diff, diff)


def _cliques_of_graph(n: int, neighbors: dict[int, set[int]], max_dim: int) -> list[Simplex]:
    """All cliques with at most max_dim+1 vertices; neighbors[v] holds w > v."""
    simplices: list[Simplex] = [(i,) for i in range(n)]
    prev: list[Simplex] = list(simplices)
    for _ in range(max_dim):
        cur: list[Simplex] = []
        for s in prev:
            common = neighbors[s[0]]
            for v in s[1:]:
                common = common & neighbors[v]
            for w in sorted(common):
                cur.append(s + (w,))
        if not cur:
            break
        simplices.extend(cur)
        prev = cur
    return simplices


def build_rips(data, r: float, max_dim: int = 2, precomputed: bool | None = None) -> SimplicialComplex:
    """Vietoris-Rips complex: a simplex iff all pairwise distances <= 2r."""
    if r <= 0:
        raise ValueError(f"Rips radius must be positive, got {r}")
    if max_dim < 0:
        raise ValueError(f"max_dim must be nonnegative, got {max_dim}")
    D2 = squared_distance_matrix(data, precomputed)
    n = D2.shape[0]
    thr = 4.0 * r * r + TOL
    neighbors = {i: {j for j in range(i + 1, n) if D2[i, j] <= thr} for i in range(n)}
    return SimplicialComplex(_cliques_of_graph(n, neighbors, max_dim), _closed=True)


def _ball_from_boundary(boundary: list[np.ndarray]):
    if not boundary:
        return None, -1.0
    q0 = boundary[0]
    if len(boundary) == 1:
        return q0, 0.0
    U = np.stack(boundary[1:]) - q0
    G = U @ U.T
    rhs = np.diag(G).copy()
    try:
        lam = np.linalg.solve(2.0 * G, rhs)
    except np.linalg.LinAlgError:
        lam = np.linalg.lstsq(2.0 * G, rhs, rcond=None)[0]
    center = q0 + U.T @ lam
    radius = max(float(np.linalg.norm(center - q)) for q in boundary)
    return center, radius


def _welzl(pts: np.ndarray, i: int, boundary: list[np.ndarray]):
    if i == len(pts) or len(boundary) == pts.shape[1] + 1:
        return _ball_from_boundary(boundary)
    center, radius = _welzl(pts, i + 1, boundary)
    p = pts[i]
    if center is not None and float(np.dot(p - center, p - center)) <= radius * radius + TOL:
        return center, radius
    return _welzl(pts, i + 1, boundary + [p])


def min_enclosing_ball(points) -> tuple[np.ndarray, float]:
    """Smallest ball containing all points: (center, radius).

    Welzl's move-to-front recursion without shuffling, so the result is a
    deterministic function of the input order.
    """
    pts = as_point_cloud(points)
    if len(pts) == 0:
        raise ValueError("min_enclosing_ball needs at least one point")
    center, radius = _welzl(pts, 0, [])
    return center, radius


def build_cech(points, r: float, max_dim: int = 2) -> SimplicialComplex:
    """Čech complex: a simplex iff the radius-r closed balls around its
    points intersect, decided exactly via the minimum enclosing ball."""
    if r <= 0:
        raise ValueError(f"Čech radius must be positive, got {r}")
    if max_dim < 0:
        raise ValueError(f"max_dim must be nonnegative, got {max_dim}")
    pts = as_point_cloud(points)
    candidates = build_rips(pts, r, max_dim, precomputed=False)
    r2 = r * r + TOL
    kept = []
    for s in candidates.simplices:
        if len(s) <= 2:
            kept.append(s)  # meb radius <= r already implied by the Rips test
            continue
        _, rad = min_enclosing_ball(pts[list(s)])
        if rad * rad <= r2:
            kept.append(s)
    return SimplicialComplex(kept, _closed=False)


@dataclass(frozen=True)
class IntervalCover:
    """Ordered open intervals where only consecutive ones may overlap."""

    intervals: tuple[tuple[float, float], ...]

    def __init__(self, intervals: Iterable[Sequence[float]]):
        ivs = tuple(sorted((float(lo), float(hi)) for lo, hi in intervals))
        for lo, hi in ivs:
            if not lo < hi:
                raise NonlinearNerveError(f"degenerate interval ({lo}, {hi})")
        for i in range(len(ivs) - 2):
            if ivs[i + 2][0] < ivs[i][1]:
                raise NonlinearNerveError(
                    f"intervals {i} and {i + 2} overlap; only consecutive overlaps are allowed"
                )
        object.__setattr__(self, "intervals", ivs)

    def __len__(self) -> int:
        return len(self.intervals)

    def overlap(self, i: int) -> tuple[float, float] | None:
        """The open intersection of intervals i and i+1, or None if disjoint."""
        lo = self.intervals[i + 1][0]
        hi = self.intervals[i][1]
        return (lo, hi) if lo < hi else None


def nerve_of_interval_cover(cover: IntervalCover) -> SimplicialComplex:
    """One vertex per interval, one edge per overlapping consecutive pair.

    The cover invariants force the result to be linear: every vertex has
    degree at most two and there are no cycles.
    """
    simplices: list[Simplex] = [(i,) for i in range(len(cover))]
    for i in range(len(cover) - 1):
        if cover.overlap(i) is not None:
            simplices.append((i, i + 1))
    return SimplicialComplex(simplices, _closed=True)


def eccentricity_values(points, p: float = 2.0) -> np.ndarray:
    """Discrete eccentricity of each point: ((1/n) sum_y d(x,y)^p)^(1/p)."""
    if p < 1:
        raise ValueError(f"eccentricity exponent must be >= 1, got {p}")
    pts = as_point_cloud(points)
    if len(pts) == 0:
        raise ValueError("eccentricity of an empty point cloud is undefined")
    D = np.sqrt(squared_distance_matrix(pts, precomputed=False))
    return (np.mean(D**p, axis=1)) ** (1.0 / p)
