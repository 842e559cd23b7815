"""Dense linear algebra over prime fields.

Matrices are numpy int64 arrays with entries reduced mod p. GF(2) gets a
bit-packed fast path (rows packed into bytes, XOR row operations); other
primes use plain modular row reduction. Pivots are always chosen leftmost
column first, topmost row first, so every routine is deterministic.
"""

from __future__ import annotations

import numpy as np

from .errors import InternalInconsistencyError


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def check_prime(p: int) -> int:
    if not is_prime(p) or p >= 2**15:
        raise ValueError(f"field characteristic must be a prime < 2^15, got {p}")
    return p


def normalize(A, p: int) -> np.ndarray:
    """Coerce to a 2-D int64 array with entries in [0, p)."""
    M = np.asarray(A, dtype=np.int64)
    if M.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {M.shape}")
    return M % p


def _gf2_rref(A: np.ndarray):
    m, n = A.shape
    if m == 0 or n == 0:
        return A.astype(np.int64, copy=True), []
    P = np.packbits(A.astype(np.uint8, copy=False), axis=1, bitorder="little")
    pivots: list[int] = []
    r = 0
    for c in range(n):
        byte, bit = divmod(c, 8)
        col = (P[r:, byte] >> bit) & 1
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            P[[r, i]] = P[[i, r]]
        full = (P[:, byte] >> bit) & 1
        full[r] = 0
        rows = np.nonzero(full)[0]
        if rows.size:
            P[rows] ^= P[r]
        pivots.append(c)
        r += 1
        if r == m:
            break
    R = np.unpackbits(P, axis=1, count=n, bitorder="little").astype(np.int64)
    return R, pivots


def _modp_rref(A: np.ndarray, p: int):
    R = A.copy()
    m, n = R.shape
    pivots: list[int] = []
    r = 0
    for c in range(n):
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            R[[r, i]] = R[[i, r]]
        inv = pow(int(R[r, c]), -1, p)
        R[r] = (R[r] * inv) % p
        coeffs = R[:, c].copy()
        coeffs[r] = 0
        rows = np.nonzero(coeffs)[0]
        if rows.size:
            R[rows] = (R[rows] - np.outer(coeffs[rows], R[r])) % p
        pivots.append(c)
        r += 1
        if r == m:
            break
    return R, pivots


def rref(A, p: int):
    """Reduced row echelon form mod p. Returns (R, pivot_columns)."""
    M = normalize(A, p)
    if p == 2:
        return _gf2_rref(M)
    return _modp_rref(M, p)


def rank(A, p: int) -> int:
    return len(rref(A, p)[1])


def kernel_basis(A, p: int) -> np.ndarray:
    """Column basis of the null space of A, shape (n_cols, nullity)."""
    M = normalize(A, p)
    n = M.shape[1]
    R, pivots = rref(M, p) if M.size else (M, [])
    pivot_set = set(pivots)
    free = [c for c in range(n) if c not in pivot_set]
    K = np.zeros((n, len(free)), dtype=np.int64)
    if free:
        K[np.asarray(free), np.arange(len(free))] = 1
        if pivots:
            K[np.asarray(pivots), :] = (-R[: len(pivots)][:, free]) % p
    return K


def solve(A, B, p: int):
    """One solution X of A X = B mod p, or None if inconsistent.

    B may be a vector or a matrix of stacked right-hand sides; free
    variables are set to zero, so the solution is deterministic.
    """
    M = normalize(A, p)
    rhs = np.asarray(B, dtype=np.int64) % p
    squeeze = rhs.ndim == 1
    if squeeze:
        rhs = rhs[:, None]
    if rhs.shape[0] != M.shape[0]:
        raise ValueError("right-hand side has wrong number of rows")
    na = M.shape[1]
    R, pivots = rref(np.hstack([M, rhs]), p)
    if any(c >= na for c in pivots):
        return None
    X = np.zeros((na, rhs.shape[1]), dtype=np.int64)
    for i, c in enumerate(pivots):
        X[c] = R[i, na:]
    return X[:, 0] if squeeze else X


def matmul(A, B, p: int) -> np.ndarray:
    return (normalize(A, p) @ normalize(B, p)) % p


class Quotient:
    """The quotient ker(d_low) / im(d_high) with frozen representatives.

    d_low maps the ambient chain space out, d_high maps into it; the usual
    homology situation. Representatives are the kernel-basis columns that
    extend a basis of the image, chosen by the leftmost-pivot rule.
    """

    def __init__(self, d_low, d_high, p: int):
        self.field = p
        low = normalize(d_low, p)
        high = normalize(d_high, p)
        if low.shape[1] != high.shape[0]:
            raise ValueError(
                f"chain space mismatch: d_low has {low.shape[1]} columns, "
                f"d_high has {high.shape[0]} rows"
            )
        Z = kernel_basis(low, p)
        stacked = np.hstack([high, Z])
        _, pivots = rref(stacked, p)
        nb = high.shape[1]
        image_cols = [c for c in pivots if c < nb]
        rep_cols = [c - nb for c in pivots if c >= nb]
        self.representatives = Z[:, rep_cols]
        self.dimension = len(rep_cols)
        self._solve_mat = np.hstack([self.representatives, high[:, image_cols]])

    def coordinates(self, V) -> np.ndarray:
        """Coordinates of cycle column(s) V in the representative basis."""
        X = solve(self._solve_mat, V, self.field)
        if X is None:
            raise InternalInconsistencyError(
                "vector is not a cycle modulo boundaries of this quotient"
            )
        return X[: self.dimension]
