"""Filtrations, the persistence reduction algorithm, and barcodes.

Filtration barcodes use half-open bars [birth, death): the pairing the
column reduction produces makes pointwise dimension counts exact under
that convention. Module decompositions over integer grades (see
:func:`decompose_explicit`) use closed bars instead, with degree None.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field as dataclass_field
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import fields
from .complexes import Simplex, SimplicialComplex, simplex, squared_distance_matrix, TOL
from .errors import MissingVertexValueError, TdaError, InternalInconsistencyError


@dataclass(frozen=True)
class Bar:
    """A bar: half-open [birth, death) for filtrations, closed [birth,
    death] integer grades for module decompositions (degree None)."""

    degree: int | None
    birth: float
    death: float

    def __post_init__(self):
        if not math.isfinite(self.birth):
            raise TdaError(f"bar birth must be finite, got {self.birth}")
        if self.death < self.birth:
            raise TdaError(f"bar death {self.death} precedes birth {self.birth}")

    @property
    def infinite(self) -> bool:
        return math.isinf(self.death)


def _bar_key(bar: Bar):
    return (bar.degree is None, -1 if bar.degree is None else bar.degree, bar.birth, bar.death)


class Barcode:
    """A multiset of bars, kept in canonical (degree, birth, death) order."""

    def __init__(self, bars: Iterable[Bar] = ()):
        self._bars = tuple(sorted(bars, key=_bar_key))

    @property
    def bars(self) -> tuple[Bar, ...]:
        return self._bars

    def in_degree(self, degree: int | None) -> list[Bar]:
        return [b for b in self._bars if b.degree == degree]

    def alive_at(self, t: float, degree: int | None = None) -> int:
        """Number of bars with birth <= t < death (optionally one degree)."""
        return sum(
            1
            for b in self._bars
            if (degree is None or b.degree == degree) and b.birth <= t < b.death
        )

    def rank(self, r: float, s: float, degree: int | None = None) -> int:
        """Number of bars containing [r, s]; equals rank of the map r -> s."""
        if s < r:
            raise ValueError(f"need r <= s, got {r} > {s}")
        return sum(
            1
            for b in self._bars
            if (degree is None or b.degree == degree) and b.birth <= r and b.death > s
        )

    def counter(self) -> Counter:
        return Counter((b.degree, b.birth, b.death) for b in self._bars)

    def __len__(self) -> int:
        return len(self._bars)

    def __iter__(self):
        return iter(self._bars)

    def __eq__(self, other) -> bool:
        return isinstance(other, Barcode) and self._bars == other._bars

    def __repr__(self) -> str:
        return f"Barcode({len(self._bars)} bars)"


def barcode_to_diagram(bc: Barcode) -> list[tuple[float, float]]:
    """One planar point (birth, death) per bar; +inf marks infinite death."""
    return sorted((b.birth, b.death) for b in bc)


class FilteredComplex:
    """Simplices paired with monotone appearance values.

    Entries are sorted by (value, dimension, lexicographic vertex order);
    the underlying simplex set must be face-closed and every face must
    appear no later than its cofaces.
    """

    def __init__(self, entries: Iterable[tuple[Sequence[int], float]]):
        pairs = [(simplex(s), float(v)) for s, v in entries]
        seen = {s for s, _ in pairs}
        if len(seen) != len(pairs):
            raise TdaError("duplicate simplex in filtration")
        values = dict(pairs)
        for s, v in pairs:
            for k in range(len(s)):
                face = s[:k] + s[k + 1 :]
                if not face:
                    continue
                if face not in values:
                    raise TdaError(f"filtration is not face-closed: missing {face}")
                if values[face] > v:
                    raise TdaError(
                        f"filtration not monotone: value({face}) > value({s})"
                    )
        self.entries: list[tuple[Simplex, float]] = sorted(
            pairs, key=lambda e: (e[1], len(e[0]), e[0])
        )

    def values(self) -> dict[Simplex, float]:
        return dict(self.entries)

    def grades(self) -> list[float]:
        return sorted({v for _, v in self.entries})

    def complex_at(self, t: float) -> SimplicialComplex:
        return SimplicialComplex([s for s, v in self.entries if v <= t], _closed=True)

    def underlying_complex(self) -> SimplicialComplex:
        return SimplicialComplex([s for s, _ in self.entries], _closed=True)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)


def rips_filtration(
    data,
    max_dim: int = 2,
    max_radius: float = math.inf,
    precomputed: bool | None = None,
) -> FilteredComplex:
    """Rips filtration: each simplex appears at half its diameter."""
    if not max_radius > 0:
        raise ValueError(f"max_radius must be positive, got {max_radius}")
    if max_dim < 0:
        raise ValueError(f"max_dim must be nonnegative, got {max_dim}")
    D2 = squared_distance_matrix(data, precomputed)
    n = D2.shape[0]
    thr = 4.0 * max_radius * max_radius + TOL if math.isfinite(max_radius) else math.inf
    neighbors = {i: {j for j in range(i + 1, n) if D2[i, j] <= thr} for i in range(n)}
    entries: list[tuple[Simplex, float]] = [((i,), 0.0) for i in range(n)]
    prev: list[tuple[Simplex, float]] = list(entries)
    for _ in range(max_dim):
        cur: list[tuple[Simplex, float]] = []
        for s, val in prev:
            common = neighbors[s[0]]
            for v in s[1:]:
                common = common & neighbors[v]
            for w in sorted(common):
                d2w = max(D2[v, w] for v in s)
                cur.append((s + (w,), max(val, math.sqrt(d2w) / 2.0)))
        if not cur:
            break
        entries.extend(cur)
        prev = cur
    return FilteredComplex(entries)


def cech_filtration(
    points, max_dim: int = 2, max_radius: float = math.inf
) -> FilteredComplex:
    """Čech filtration: each simplex appears at its minimum enclosing ball
    radius, which is exactly the smallest r whose closed balls intersect."""
    from .complexes import min_enclosing_ball

    if not max_radius > 0:
        raise ValueError(f"max_radius must be positive, got {max_radius}")
    pts = np.asarray(points, dtype=float)
    candidates = rips_filtration(pts, max_dim, max_radius, precomputed=False)
    entries: list[tuple[Simplex, float]] = []
    for s, val in candidates:
        if len(s) <= 2:
            entries.append((s, val))  # meb radius is 0 or half the distance
            continue
        _, rad = min_enclosing_ball(pts[list(s)])
        if rad <= max_radius + TOL:
            entries.append((s, rad))
    return FilteredComplex(entries)


def lower_star_filtration(K: SimplicialComplex, vertex_values: Mapping[int, float]) -> FilteredComplex:
    """Each simplex appears at the max of its vertices' values, so the
    sublevel complex at t is the full subcomplex on {v : f(v) <= t}."""
    for v in K.vertices():
        if v not in vertex_values:
            raise MissingVertexValueError(f"vertex {v} has no value")
    return FilteredComplex(
        (s, max(vertex_values[v] for v in s)) for s in K.simplices
    )


def superlevel_filtration(K: SimplicialComplex, vertex_values: Mapping[int, float]) -> FilteredComplex:
    """Superlevel filtration, encoded as the lower-star filtration of -f.

    A grade g in the result corresponds to the superlevel threshold
    t = -g; negate grades back when reporting in terms of f.
    """
    negated = {v: -float(x) for v, x in vertex_values.items()}
    return lower_star_filtration(K, negated)


def _reduce_gf2(entries, index_of_face):
    pivot_owner: dict[int, int] = {}
    reduced: dict[int, set[int]] = {}
    pairs: list[tuple[int, int]] = []
    positive: list[int] = []
    for j, (s, _) in enumerate(entries):
        col = {index_of_face[s[:k] + s[k + 1 :]] for k in range(len(s))} if len(s) > 1 else set()
        while col:
            piv = max(col)
            owner = pivot_owner.get(piv)
            if owner is None:
                break
            col ^= reduced[owner]
        if col:
            piv = max(col)
            pivot_owner[piv] = j
            reduced[j] = col
            pairs.append((piv, j))
        else:
            positive.append(j)
    return pairs, positive


def _reduce_modp(entries, index_of_face, p):
    pivot_owner: dict[int, int] = {}
    reduced: dict[int, dict[int, int]] = {}
    pairs: list[tuple[int, int]] = []
    positive: list[int] = []
    for j, (s, _) in enumerate(entries):
        col: dict[int, int] = {}
        if len(s) > 1:
            for k in range(len(s)):
                face = s[:k] + s[k + 1 :]
                col[index_of_face[face]] = (-1) ** k % p
        while col:
            piv = max(col)
            owner = pivot_owner.get(piv)
            if owner is None:
                break
            ocol = reduced[owner]
            factor = col[piv] * pow(ocol[piv], -1, p) % p
            for row, coeff in ocol.items():
                new = (col.get(row, 0) - factor * coeff) % p
                if new:
                    col[row] = new
                else:
                    col.pop(row, None)
        if col:
            piv = max(col)
            pivot_owner[piv] = j
            reduced[j] = col
            pairs.append((piv, j))
        else:
            positive.append(j)
    return pairs, positive


def compute_barcode(fc: FilteredComplex, field: int = 2, include_zero_bars: bool = False) -> Barcode:
    """Barcode of a filtration by the standard column reduction.

    Pivot pair (i, j) yields the bar [value_i, value_j) in degree dim(i);
    unpaired positive simplices yield infinite bars. Zero-length bars are
    dropped unless include_zero_bars is set.
    """
    fields.check_prime(field)
    entries = fc.entries
    index = {s: i for i, (s, _) in enumerate(entries)}
    if field == 2:
        pairs, positive = _reduce_gf2(entries, index)
    else:
        pairs, positive = _reduce_modp(entries, index, field)
    bars: list[Bar] = []
    for i, j in pairs:
        birth, death = entries[i][1], entries[j][1]
        if birth == death and not include_zero_bars:
            continue
        bars.append(Bar(degree=len(entries[i][0]) - 1, birth=birth, death=death))
    paired_rows = {i for i, _ in pairs}
    for j in positive:
        if j not in paired_rows:
            bars.append(Bar(degree=len(entries[j][0]) - 1, birth=entries[j][1], death=math.inf))
    return Barcode(bars)


@dataclass
class ExplicitModule:
    """A persistence module on integer grades 0..n-1, given by matrices."""

    dims: list[int]
    maps: list[np.ndarray] = dataclass_field(default_factory=list)

    def __post_init__(self):
        if len(self.maps) != max(len(self.dims) - 1, 0):
            raise TdaError(
                f"need {max(len(self.dims) - 1, 0)} maps for {len(self.dims)} grades, "
                f"got {len(self.maps)}"
            )
        for i, M in enumerate(self.maps):
            M = np.asarray(M, dtype=np.int64)
            if M.shape != (self.dims[i + 1], self.dims[i]):
                raise TdaError(
                    f"map {i} has shape {M.shape}, expected {(self.dims[i + 1], self.dims[i])}"
                )
            self.maps[i] = M

    def __len__(self) -> int:
        return len(self.dims)


def _composite_ranks(module: ExplicitModule, field: int) -> dict[tuple[int, int], int]:
    n = len(module.dims)
    r: dict[tuple[int, int], int] = {}
    for b in range(n):
        r[(b, b)] = module.dims[b]
        M = np.eye(module.dims[b], dtype=np.int64)
        for d in range(b + 1, n):
            M = fields.matmul(module.maps[d - 1], M, field)
            r[(b, d)] = fields.rank(M, field)
    return r


def decompose_explicit(module: ExplicitModule, field: int = 2) -> Barcode:
    """Interval decomposition of an explicit module over integer grades.

    Multiplicity of the closed bar [b, d] is the inclusion-exclusion
    r(b,d) - r(b-1,d) - r(b,d+1) + r(b-1,d+1) of composite-map ranks.
    Bars are returned with degree None and integer birth/death grades.
    """
    fields.check_prime(field)
    n = len(module.dims)
    r = _composite_ranks(module, field)

    def rk(b: int, d: int) -> int:
        if b < 0 or d >= n:
            return 0
        return r[(b, d)]

    bars: list[Bar] = []
    for b in range(n):
        for d in range(b, n):
            mult = rk(b, d) - rk(b - 1, d) - rk(b, d + 1) + rk(b - 1, d + 1)
            if mult < 0:
                raise InternalInconsistencyError(
                    f"negative multiplicity {mult} for interval [{b}, {d}]"
                )
            bars.extend(Bar(degree=None, birth=float(b), death=float(d)) for _ in range(mult))
    return Barcode(bars)
