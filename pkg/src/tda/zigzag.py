"""Finite zigzag modules and finite diagrams of vector spaces.

Limits and colimits are computed from the difference map of a diagram;
the generalized rank of a zigzag over a slot interval is the rank of the
canonical map from the limit to the colimit of the restriction, and
interval multiplicities follow by inclusion-exclusion.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import fields
from .errors import InternalInconsistencyError, TdaError
from .persistence import ExplicitModule

FORWARD = "fwd"
BACKWARD = "bwd"


@dataclass
class FiniteDiagram:
    """Objects k^{dims[i]} and morphisms (source, target, matrix)."""

    dims: list[int]
    morphisms: list[tuple[int, int, np.ndarray]]

    def __post_init__(self):
        checked = []
        for s, t, M in self.morphisms:
            M = np.asarray(M, dtype=np.int64)
            if not (0 <= s < len(self.dims) and 0 <= t < len(self.dims)):
                raise TdaError(f"morphism endpoints ({s}, {t}) out of range")
            if M.shape != (self.dims[t], self.dims[s]):
                raise TdaError(
                    f"morphism {s}->{t} has shape {M.shape}, "
                    f"expected {(self.dims[t], self.dims[s])}"
                )
            checked.append((s, t, M))
        self.morphisms = checked


def _offsets(dims: Sequence[int]) -> list[int]:
    off = [0]
    for d in dims:
        off.append(off[-1] + d)
    return off


def limit(diagram: FiniteDiagram, field: int = 2) -> tuple[int, list[np.ndarray]]:
    """Limit dimension and projection matrices onto each object.

    Computed as the kernel of the difference map sending (v_x)_x to
    (F(g)(v_src) - v_tgt)_g; projections are coordinate restrictions.
    """
    fields.check_prime(field)
    off = _offsets(diagram.dims)
    total = off[-1]
    rows = sum(diagram.dims[t] for _, t, _ in diagram.morphisms)
    Phi = np.zeros((rows, total), dtype=np.int64)
    r = 0
    for s, t, M in diagram.morphisms:
        h = diagram.dims[t]
        Phi[r : r + h, off[s] : off[s + 1]] += M
        Phi[r : r + h, off[t] : off[t + 1]] -= np.eye(h, dtype=np.int64)
        r += h
    K = fields.kernel_basis(Phi % field, field)
    projections = [K[off[x] : off[x + 1], :] for x in range(len(diagram.dims))]
    return K.shape[1], projections


def colimit(diagram: FiniteDiagram, field: int = 2) -> tuple[int, list[np.ndarray]]:
    """Colimit dimension and the induced inclusion of each object.

    The colimit is the cokernel of the map collecting, per morphism g and
    vector v, the relation F(g)(v) at the target minus v at the source;
    each inclusion is the quotient map restricted to one coordinate block.
    """
    fields.check_prime(field)
    off = _offsets(diagram.dims)
    total = off[-1]
    cols = sum(diagram.dims[s] for s, _, _ in diagram.morphisms)
    Psi = np.zeros((total, cols), dtype=np.int64)
    c = 0
    for s, t, M in diagram.morphisms:
        w = diagram.dims[s]
        Psi[off[t] : off[t + 1], c : c + w] += M
        Psi[off[s] : off[s + 1], c : c + w] -= np.eye(w, dtype=np.int64)
        c += w
    Q = fields.kernel_basis((Psi % field).T, field).T
    inclusions = [Q[:, off[x] : off[x + 1]] for x in range(len(diagram.dims))]
    return Q.shape[0], inclusions


@dataclass
class ZigzagModule:
    """Dims joined by direction-tagged matrices: arrows[i] sits between
    slots i and i+1, pointing i -> i+1 when forward."""

    dims: list[int]
    arrows: list[tuple[str, np.ndarray]]

    def __post_init__(self):
        if len(self.arrows) != max(len(self.dims) - 1, 0):
            raise TdaError(
                f"need {max(len(self.dims) - 1, 0)} arrows for {len(self.dims)} slots, "
                f"got {len(self.arrows)}"
            )
        checked = []
        for i, (direction, M) in enumerate(self.arrows):
            if direction not in (FORWARD, BACKWARD):
                raise TdaError(f"arrow direction must be '{FORWARD}' or '{BACKWARD}'")
            M = np.asarray(M, dtype=np.int64)
            expected = (
                (self.dims[i + 1], self.dims[i])
                if direction == FORWARD
                else (self.dims[i], self.dims[i + 1])
            )
            if M.shape != expected:
                raise TdaError(f"arrow {i} has shape {M.shape}, expected {expected}")
            checked.append((direction, M))
        self.arrows = checked

    def __len__(self) -> int:
        return len(self.dims)

    def restriction(self, b: int, d: int) -> FiniteDiagram:
        """The slots b..d as a finite diagram with local indices."""
        morphisms = []
        for i in range(b, d):
            direction, M = self.arrows[i]
            if direction == FORWARD:
                morphisms.append((i - b, i - b + 1, M))
            else:
                morphisms.append((i - b + 1, i - b, M))
        return FiniteDiagram(dims=list(self.dims[b : d + 1]), morphisms=morphisms)


@dataclass(frozen=True)
class IntegerBar:
    """Closed slot interval [lo, hi] with a multiplicity."""

    lo: int
    hi: int
    multiplicity: int = 1

    def __post_init__(self):
        if not 0 <= self.lo <= self.hi:
            raise TdaError(f"bad integer bar [{self.lo}, {self.hi}]")
        if self.multiplicity < 1:
            raise TdaError(f"bar multiplicity must be >= 1, got {self.multiplicity}")


def generalized_rank(z: ZigzagModule, b: int, d: int, field: int = 2) -> int:
    """Rank of the canonical map limit -> colimit of z restricted to [b, d].

    Equals the ordinary composite rank when every arrow in the range is
    forward, and counts the interval summands containing [b, d] in general.
    """
    if not 0 <= b <= d < len(z.dims):
        raise ValueError(f"slot range [{b}, {d}] out of bounds for {len(z.dims)} slots")
    sub = z.restriction(b, d)
    _, projections = limit(sub, field)
    _, inclusions = colimit(sub, field)
    canonical = fields.matmul(inclusions[0], projections[0], field)
    return fields.rank(canonical, field)


def decompose_zigzag(z: ZigzagModule, field: int = 2) -> list[IntegerBar]:
    """Interval multiplicities of a zigzag via generalized-rank
    inclusion-exclusion; negative multiplicities signal an internal bug."""
    n = len(z.dims)
    r: dict[tuple[int, int], int] = {}
    for b in range(n):
        for d in range(b, n):
            r[(b, d)] = generalized_rank(z, b, d, field)

    def rk(b: int, d: int) -> int:
        if b < 0 or d >= n:
            return 0
        return r[(b, d)]

    bars: list[IntegerBar] = []
    for b in range(n):
        for d in range(b, n):
            mult = rk(b, d) - rk(b - 1, d) - rk(b, d + 1) + rk(b - 1, d + 1)
            if mult < 0:
                raise InternalInconsistencyError(
                    f"negative multiplicity {mult} for slots [{b}, {d}]"
                )
            if mult:
                bars.append(IntegerBar(b, d, mult))
    return bars


def forward_module_to_zigzag(module: ExplicitModule) -> ZigzagModule:
    """Embed an ordinary persistence module as an all-forward zigzag."""
    return ZigzagModule(
        dims=list(module.dims), arrows=[(FORWARD, M) for M in module.maps]
    )
