"""Simplicial cosheaves and sheaves over a complex.

A cosheaf assigns a vector-space dimension to each simplex and an
extension matrix toward each codimension-1 face; longer compositions are
derived, and path independence across codimension-2 pairs is what makes
the signed block boundary square to zero. Sheaf cohomology is computed by
transposing to a cosheaf.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dataclass_field
import numpy as np

from . import fields, zigzag
from .complexes import Simplex, SimplicialComplex
from .errors import InvalidCosheafError, NonlinearNerveError, NotASubcomplexError
from .homology import HomologyResult


def codim1_pairs(K: SimplicialComplex) -> list[tuple[Simplex, Simplex]]:
    """All (face, coface) pairs differing by one vertex, in lex order."""
    pairs = []
    for p in range(1, K.dimension + 1):
        for tau in K.p_simplices(p):
            for k in range(len(tau)):
                pairs.append((tau[:k] + tau[k + 1 :], tau))
    return sorted(pairs)


def _check_structure(base, stalks, maps, kind: str) -> None:
    for s in base.simplices:
        if s not in stalks:
            raise InvalidCosheafError(f"{kind} has no stalk dimension for {s}")
        if stalks[s] < 0:
            raise InvalidCosheafError(f"negative stalk dimension at {s}")
    extra = set(stalks) - base.simplices
    if extra:
        raise InvalidCosheafError(f"stalks given for simplices not in the base: {sorted(extra)}")
    needed = set(codim1_pairs(base))
    if set(maps) != needed:
        missing = sorted(needed - set(maps))
        extra = sorted(set(maps) - needed)
        raise InvalidCosheafError(
            f"{kind} extension maps mismatch; missing {missing}, unexpected {extra}"
        )


@dataclass
class SimplicialCosheaf:
    """Stalk dimensions plus extension matrices toward faces.

    maps[(face, coface)] sends the coface stalk to the face stalk, so its
    shape is (stalks[face], stalks[coface]).
    """

    base: SimplicialComplex
    stalks: dict[Simplex, int]
    maps: dict[tuple[Simplex, Simplex], np.ndarray] = dataclass_field(default_factory=dict)

    def __post_init__(self):
        _check_structure(self.base, self.stalks, self.maps, "cosheaf")
        for (face, coface), M in list(self.maps.items()):
            M = np.asarray(M, dtype=np.int64).reshape(self.stalks[face], self.stalks[coface])
            self.maps[(face, coface)] = M


@dataclass
class SimplicialSheaf:
    """Dual data: maps[(face, coface)] sends the face stalk to the coface
    stalk, shape (stalks[coface], stalks[face])."""

    base: SimplicialComplex
    stalks: dict[Simplex, int]
    maps: dict[tuple[Simplex, Simplex], np.ndarray] = dataclass_field(default_factory=dict)

    def __post_init__(self):
        _check_structure(self.base, self.stalks, self.maps, "sheaf")
        for (face, coface), M in list(self.maps.items()):
            M = np.asarray(M, dtype=np.int64).reshape(self.stalks[coface], self.stalks[face])
            self.maps[(face, coface)] = M


def constant_cosheaf(K: SimplicialComplex, n: int) -> SimplicialCosheaf:
    """Stalk k^n on every simplex, identity extension maps."""
    if n < 0:
        raise ValueError(f"stalk dimension must be nonnegative, got {n}")
    eye = np.eye(n, dtype=np.int64)
    return SimplicialCosheaf(
        base=K,
        stalks={s: n for s in K.simplices},
        maps={pair: eye.copy() for pair in codim1_pairs(K)},
    )


@dataclass(frozen=True)
class CosheafViolation:
    """First codimension-2 square whose two compositions disagree."""

    face: Simplex
    coface: Simplex
    via_first: Simplex
    via_second: Simplex

    def __str__(self) -> str:
        return (
            f"extension maps {self.coface} -> {self.face} disagree via "
            f"{self.via_first} and {self.via_second}"
        )


def validate(F: SimplicialCosheaf, field: int = 2) -> CosheafViolation | None:
    """Check path independence on every codimension-2 pair.

    Returns None when all squares commute mod the field, otherwise the
    first violating triple in lexicographic order. Commutation across
    codimension 2 generates the full composition condition.
    """
    fields.check_prime(field)
    for p in range(2, F.base.dimension + 1):
        for tau in F.base.p_simplices(p):
            for i in range(len(tau)):
                for j in range(i + 1, len(tau)):
                    gamma1 = tau[:i] + tau[i + 1 :]  # drop vertex i
                    gamma2 = tau[:j] + tau[j + 1 :]  # drop vertex j
                    sigma = tuple(v for k, v in enumerate(tau) if k not in (i, j))
                    via1 = fields.matmul(F.maps[(sigma, gamma1)], F.maps[(gamma1, tau)], field)
                    via2 = fields.matmul(F.maps[(sigma, gamma2)], F.maps[(gamma2, tau)], field)
                    if not np.array_equal(via1, via2):
                        return CosheafViolation(sigma, tau, gamma1, gamma2)
    return None


def chain_offsets(F: SimplicialCosheaf, p: int) -> tuple[list[Simplex], list[int]]:
    """p-simplices in lex order with block offsets into C_p(K; F)."""
    simplices = F.base.p_simplices(p)
    offsets = [0]
    for s in simplices:
        offsets.append(offsets[-1] + F.stalks[s])
    return simplices, offsets


def cosheaf_boundary(F: SimplicialCosheaf, p: int, field: int = 2) -> np.ndarray:
    """Block matrix of the signed extension boundary C_p -> C_{p-1}.

    Block (sigma, tau) is (-1)^j r_{sigma,tau} when sigma is the j-th
    face of tau (delete the j-th vertex), zero otherwise.
    """
    if p < 0:
        raise ValueError(f"degree must be nonnegative, got {p}")
    fields.check_prime(field)
    cols, col_off = chain_offsets(F, p)
    if p == 0:
        return np.zeros((0, col_off[-1]), dtype=np.int64)
    rows, row_off = chain_offsets(F, p - 1)
    row_index = {s: i for i, s in enumerate(rows)}
    D = np.zeros((row_off[-1], col_off[-1]), dtype=np.int64)
    for j, tau in enumerate(cols):
        for k in range(len(tau)):
            sigma = tau[:k] + tau[k + 1 :]
            i = row_index[sigma]
            block = F.maps[(sigma, tau)] * ((-1) ** k)
            D[row_off[i] : row_off[i + 1], col_off[j] : col_off[j + 1]] += block
    return D % field


def cosheaf_homology(F: SimplicialCosheaf, p: int, field: int = 2) -> HomologyResult:
    """H_p(K; F) from the cosheaf boundary ranks; validates first."""
    violation = validate(F, field)
    if violation is not None:
        raise InvalidCosheafError(str(violation))
    quotient = fields.Quotient(
        cosheaf_boundary(F, p, field), cosheaf_boundary(F, p + 1, field), field
    )
    basis = [quotient.representatives[:, j].copy() for j in range(quotient.dimension)]
    return HomologyResult(degree=p, dimension=quotient.dimension, cycle_basis=basis)


def sheaf_to_cosheaf(F: SimplicialSheaf) -> SimplicialCosheaf:
    """Transpose all restriction maps, turning a sheaf into a cosheaf."""
    return SimplicialCosheaf(
        base=F.base,
        stalks=dict(F.stalks),
        maps={pair: M.T.copy() for pair, M in F.maps.items()},
    )


def sheaf_cohomology(F: SimplicialSheaf, p: int, field: int = 2) -> HomologyResult:
    """H^p of a sheaf, computed as cosheaf homology of the transpose."""
    return cosheaf_homology(sheaf_to_cosheaf(F), p, field)


def _linear_components(K: SimplicialComplex) -> list[list[Simplex]]:
    """Split a linear complex into paths of alternating vertex/edge slots.

    Raises NonlinearNerveError when the complex has dimension > 1, a
    vertex of degree > 2, or a cycle.
    """
    if K.dimension > 1:
        raise NonlinearNerveError(f"base has dimension {K.dimension}, expected <= 1")
    vertices = K.vertices()
    edges = K.p_simplices(1)
    adjacency: dict[int, list[int]] = {v: [] for v in vertices}
    for a, b in edges:
        adjacency[a].append(b)
        adjacency[b].append(a)
    if any(len(nb) > 2 for nb in adjacency.values()):
        v = min(v for v, nb in adjacency.items() if len(nb) > 2)
        raise NonlinearNerveError(f"vertex {v} has degree > 2")
    seen: set[int] = set()
    components: list[list[Simplex]] = []
    for start in vertices:
        if start in seen:
            continue
        comp_vertices = {start}
        frontier = [start]
        while frontier:
            v = frontier.pop()
            for w in adjacency[v]:
                if w not in comp_vertices:
                    comp_vertices.add(w)
                    frontier.append(w)
        seen |= comp_vertices
        n_edges = sum(1 for a, b in edges if a in comp_vertices)
        if n_edges != len(comp_vertices) - 1:
            raise NonlinearNerveError("base contains a cycle")
        endpoints = sorted(v for v in comp_vertices if len(adjacency[v]) <= 1)
        cur = endpoints[0]
        slots: list[Simplex] = [(cur,)]
        prev = None
        while True:
            nxt = [w for w in adjacency[cur] if w != prev]
            if not nxt:
                break
            w = nxt[0]
            slots.append(tuple(sorted((cur, w))))
            slots.append((w,))
            prev, cur = cur, w
        components.append(slots)
    return components


def bar_census(F: SimplicialCosheaf, field: int = 2) -> tuple[int, int, int]:
    """Counts of (closed, open, half-open) bars over a linear base.

    The cosheaf is read as a zigzag along each path, vertices and edges
    interleaved; a bar end landing on a vertex slot is closed, on an edge
    slot open. Closed bars count dim H_0 and open bars dim H_1.
    """
    violation = validate(F, field)
    if violation is not None:
        raise InvalidCosheafError(str(violation))
    closed = opened = half = 0
    for slots in _linear_components(F.base):
        dims = [F.stalks[s] for s in slots]
        arrows: list[tuple[str, np.ndarray]] = []
        for i in range(len(slots) - 1):
            a, b = slots[i], slots[i + 1]
            if len(a) == 1:  # vertex then edge: map points back to the vertex
                arrows.append((zigzag.BACKWARD, F.maps[(a, b)]))
            else:  # edge then vertex
                arrows.append((zigzag.FORWARD, F.maps[(b, a)]))
        bars = zigzag.decompose_zigzag(zigzag.ZigzagModule(dims, arrows), field)
        for bar in bars:
            lo_vertex = bar.lo % 2 == 0
            hi_vertex = bar.hi % 2 == 0
            if lo_vertex and hi_vertex:
                closed += bar.multiplicity
            elif not lo_vertex and not hi_vertex:
                opened += bar.multiplicity
            else:
                half += bar.multiplicity
    return closed, opened, half


def colimit_over_subcomplex(F: SimplicialCosheaf, L, field: int = 2) -> int:
    """Dimension of the colimit of F over the face diagram spanned by L.

    L may be a subcomplex or any collection of simplices of the base (an
    open union of cells need not be face-closed); one object per simplex,
    one arrow per codimension-1 face pair lying entirely inside L.
    """
    subset = {tuple(s) for s in L}
    if not subset <= F.base.simplices:
        raise NotASubcomplexError("L contains simplices outside the cosheaf's base")
    objects = sorted(subset, key=lambda s: (len(s), s))
    index = {s: i for i, s in enumerate(objects)}
    morphisms = []
    for tau in objects:
        for k in range(len(tau)):
            sigma = tau[:k] + tau[k + 1 :]
            if sigma and sigma in subset:
                morphisms.append((index[tau], index[sigma], F.maps[(sigma, tau)]))
    diagram = zigzag.FiniteDiagram(
        dims=[F.stalks[s] for s in objects], morphisms=morphisms
    )
    dim, _ = zigzag.colimit(diagram, field)
    return dim
