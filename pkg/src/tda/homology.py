"""Simplicial (co)homology over prime fields.

Boundary and coboundary matrices, homology dimensions with representative
cycle bases, and the maps on homology induced by simplicial vertex maps.
Orientations come from the global integer order on vertex ids; bases are
deterministic via the leftmost-pivot elimination rule.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from . import fields
from .complexes import SimplicialComplex
from .errors import InternalInconsistencyError, NonSimplicialMapError


def boundary_matrix(K: SimplicialComplex, p: int, field: int = 2) -> np.ndarray:
    """Matrix of the boundary operator C_p(K) -> C_{p-1}(K).

    Column per p-simplex, row per (p-1)-simplex, both in lexicographic
    order; the j-th face (delete the j-th vertex) gets sign (-1)^j mod p.
    For p = 0 this is the empty-row matrix.
    """
    if p < 0:
        raise ValueError(f"degree must be nonnegative, got {p}")
    fields.check_prime(field)
    cols = K.p_simplices(p)
    rows = K.p_simplices(p - 1) if p > 0 else []
    row_index = {s: i for i, s in enumerate(rows)}
    D = np.zeros((len(rows), len(cols)), dtype=np.int64)
    for j, tau in enumerate(cols):
        for k in range(len(tau)):
            face = tau[:k] + tau[k + 1 :]
            if face:
                D[row_index[face], j] = (-1) ** k % field
    return D


def coboundary_matrix(K: SimplicialComplex, p: int, field: int = 2) -> np.ndarray:
    """Transpose of the degree-(p+1) boundary matrix."""
    return boundary_matrix(K, p + 1, field).T.copy()


@dataclass
class HomologyResult:
    """Dimension of a (co)homology group with representative cycles.

    Each basis vector is a coordinate vector over the chain basis used by
    the corresponding boundary matrix (lexicographic simplex order).
    """

    degree: int
    dimension: int
    cycle_basis: list[np.ndarray]


def _result(degree: int, quotient: fields.Quotient) -> HomologyResult:
    basis = [quotient.representatives[:, j].copy() for j in range(quotient.dimension)]
    return HomologyResult(degree=degree, dimension=quotient.dimension, cycle_basis=basis)


def homology_quotient(K: SimplicialComplex, p: int, field: int = 2) -> fields.Quotient:
    return fields.Quotient(
        boundary_matrix(K, p, field), boundary_matrix(K, p + 1, field), field
    )


def homology(K: SimplicialComplex, p: int, field: int = 2) -> HomologyResult:
    """H_p(K) = ker d_p / im d_{p+1} over the given prime field."""
    return _result(p, homology_quotient(K, p, field))


def cohomology(K: SimplicialComplex, p: int, field: int = 2) -> HomologyResult:
    """H^p(K) from coboundary ranks; its dimension equals dim H_p(K)."""
    if p < 0:
        raise ValueError(f"degree must be nonnegative, got {p}")
    low = coboundary_matrix(K, p, field)
    high = coboundary_matrix(K, p - 1, field) if p > 0 else np.zeros(
        (len(K.p_simplices(0)), 0), dtype=np.int64
    )
    return _result(p, fields.Quotient(low, high, field))


def _check_simplicial(f: Mapping[int, int], source: SimplicialComplex, target: SimplicialComplex) -> None:
    for v in source.vertices():
        if v not in f:
            raise NonSimplicialMapError(f"vertex {v} has no image under the vertex map")
    for s in source.simplices:
        image = tuple(sorted(set(f[v] for v in s)))
        if image not in target:
            raise NonSimplicialMapError(
                f"image {image} of simplex {s} is not a simplex of the target"
            )


def _permutation_sign(seq) -> int:
    inversions = sum(
        1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j]
    )
    return -1 if inversions % 2 else 1


def chain_map(
    f: Mapping[int, int],
    source: SimplicialComplex,
    target: SimplicialComplex,
    p: int,
    field: int = 2,
) -> np.ndarray:
    """Matrix of C_p(f): C_p(source) -> C_p(target).

    A p-simplex whose image has repeated vertices maps to zero; otherwise
    to the sorted image simplex with the sign of the sorting permutation.
    """
    fields.check_prime(field)
    _check_simplicial(f, source, target)
    src = source.p_simplices(p)
    tgt = target.p_simplices(p)
    tgt_index = {s: i for i, s in enumerate(tgt)}
    M = np.zeros((len(tgt), len(src)), dtype=np.int64)
    for j, s in enumerate(src):
        image = [f[v] for v in s]
        if len(set(image)) != len(image):
            continue
        M[tgt_index[tuple(sorted(image))], j] = _permutation_sign(image) % field
    return M


def induced_map(
    f: Mapping[int, int],
    source: SimplicialComplex,
    target: SimplicialComplex,
    p: int,
    field: int = 2,
) -> np.ndarray:
    """Matrix of H_p(f) in the deterministic homology bases of both sides.

    The chain-level map is verified to commute with the boundary operators
    before being projected to homology.
    """
    Cp = chain_map(f, source, target, p, field)
    Cp_minus = chain_map(f, source, target, p - 1, field) if p > 0 else None
    dK = boundary_matrix(source, p, field)
    dL = boundary_matrix(target, p, field)
    if p > 0:
        lhs = fields.matmul(Cp_minus, dK, field)
        rhs = fields.matmul(dL, Cp, field)
        if not np.array_equal(lhs, rhs):
            raise InternalInconsistencyError("chain map does not commute with boundaries")
    hK = homology_quotient(source, p, field)
    hL = homology_quotient(target, p, field)
    if hK.dimension == 0:
        return np.zeros((hL.dimension, 0), dtype=np.int64)
    pushed = fields.matmul(Cp, hK.representatives, field)
    return hL.coordinates(pushed)
