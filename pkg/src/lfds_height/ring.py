"""Square matrices over Z_n: products, powers, GF(p) rank, Smith form, image sizes.

Entries are stored as read-only ``int64`` arrays of residues. Moduli up to
``2**62`` are supported; whenever a product could overflow 64 bits the
arithmetic falls back to Python integers (``dtype=object``).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import UsageError
from .factorize import is_prime

MAX_MODULUS = 2**62
_INT64_LIMIT = 2**63


def _work_dtype(modulus: int, terms: int = 1):
    """dtype that can hold ``terms`` products of two residues without overflow."""
    if terms * (modulus - 1) ** 2 < _INT64_LIMIT:
        return np.int64
    return object


@dataclass(frozen=True, eq=False)
class MatrixModN:
    """An ``m x m`` matrix with entries in ``[0, modulus)``."""

    modulus: int
    entries: np.ndarray

    def __post_init__(self):
        modulus = int(self.modulus)
        if modulus < 2 or modulus > MAX_MODULUS:
            raise UsageError(f"modulus must lie in [2, 2**62], got {modulus}")
        arr = np.asarray(self.entries)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
            raise UsageError(f"matrix must be square and non-empty, got shape {arr.shape}")
        if arr.dtype != np.int64:
            arr = np.array([[int(e) for e in row] for row in arr], dtype=np.int64)
        if arr.size and (arr.min() < 0 or arr.max() >= modulus):
            raise UsageError("entries must be residues in [0, modulus)")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "entries", arr)

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], modulus: int) -> "MatrixModN":
        """Build a matrix from arbitrary integers, reducing each mod ``modulus``."""
        modulus = int(modulus)
        if modulus < 2:
            raise UsageError(f"modulus must be >= 2, got {modulus}")
        reduced = [[int(e) % modulus for e in row] for row in rows]
        if not reduced or any(len(row) != len(reduced) for row in reduced):
            raise UsageError("matrix must be square and non-empty")
        return cls(modulus, np.array(reduced, dtype=np.int64))

    @classmethod
    def identity(cls, dim: int, modulus: int) -> "MatrixModN":
        return cls(modulus, np.eye(dim, dtype=np.int64))

    @classmethod
    def zeros(cls, dim: int, modulus: int) -> "MatrixModN":
        return cls(modulus, np.zeros((dim, dim), dtype=np.int64))

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def to_lists(self) -> list[list[int]]:
        return [[int(e) for e in row] for row in self.entries]

    def reduce(self, modulus: int) -> "MatrixModN":
        """Entry-wise reduction to a smaller modulus (no divisibility check)."""
        return MatrixModN(modulus, self.entries % modulus)

    def is_zero(self) -> bool:
        return not self.entries.any()

    def __eq__(self, other):
        if not isinstance(other, MatrixModN):
            return NotImplemented
        return self.modulus == other.modulus and np.array_equal(self.entries, other.entries)

    def __hash__(self):
        return hash((self.modulus, self.entries.tobytes(), self.dim))

    def __repr__(self):
        return f"MatrixModN(modulus={self.modulus}, entries={self.to_lists()})"


def mat_mul(a: MatrixModN, b: MatrixModN) -> MatrixModN:
    """Product ``a @ b`` reduced mod the common modulus."""
    if a.modulus != b.modulus:
        raise UsageError(f"modulus mismatch: {a.modulus} vs {b.modulus}")
    if a.dim != b.dim:
        raise UsageError(f"dimension mismatch: {a.dim} vs {b.dim}")
    n = a.modulus
    if _work_dtype(n, a.dim) is np.int64:
        prod = (a.entries @ b.entries) % n
    else:
        prod = (a.entries.astype(object) @ b.entries.astype(object)) % n
        prod = prod.astype(np.int64)
    return MatrixModN(n, prod)


def mat_pow(a: MatrixModN, k: int) -> MatrixModN:
    """``a**k`` by binary exponentiation; ``a**0`` is the identity."""
    if k < 0:
        raise UsageError(f"exponent must be nonnegative, got {k}")
    result = MatrixModN.identity(a.dim, a.modulus)
    base = a
    while k:
        if k & 1:
            result = mat_mul(result, base)
        k >>= 1
        if k:
            base = mat_mul(base, base)
    return result


def rank_mod_p(a: MatrixModN, p: int) -> int:
    """Rank of ``a mod p`` over GF(p) by Gaussian elimination.

    Pivots are taken as the first nonzero entry (top-down) in each column,
    swapped up into the current pivot row.
    """
    if not is_prime(p):
        raise UsageError(f"{p} is not prime")
    dtype = _work_dtype(p)
    mat = (a.entries % p).astype(dtype)
    m = a.dim
    rank = 0
    for col in range(m):
        if rank == m:
            break
        nonzero = np.flatnonzero(mat[rank:, col] != 0)
        if nonzero.size == 0:
            continue
        pivot_row = rank + int(nonzero[0])
        if pivot_row != rank:
            mat[[rank, pivot_row]] = mat[[pivot_row, rank]]
        inv = pow(int(mat[rank, col]), -1, p)
        mat[rank] = (mat[rank] * inv) % p
        below = mat[rank + 1:, col].copy()
        if below.any():
            mat[rank + 1:] = (mat[rank + 1:] - np.outer(below, mat[rank]) % p) % p
        rank += 1
    return rank


def snf_diagonal(a: MatrixModN) -> list[int]:
    """Smith normal form diagonal of the integer lift of ``a``.

    Uses exact Python integers throughout; the result satisfies
    ``d[i] | d[i+1]`` with zeros (if any) at the end.
    """
    m = a.dim
    mat = [[int(e) for e in row] for row in a.entries]
    diag: list[int] = []
    for t in range(m):
        pivot = _smallest_nonzero(mat, t)
        if pivot is None:
            diag.extend([0] * (m - t))
            break
        _move_to(mat, t, *pivot)
        while True:
            p = mat[t][t]
            clean = True
            for i in range(t + 1, m):
                q = mat[i][t] // p
                if q:
                    row_t = mat[t]
                    mat[i] = [x - q * y for x, y in zip(mat[i], row_t)]
                if mat[i][t]:
                    clean = False
            for j in range(t + 1, m):
                q = mat[t][j] // p
                if q:
                    for row in mat:
                        row[j] -= q * row[t]
                if mat[t][j]:
                    clean = False
            if not clean:
                # a remainder smaller than the pivot survived in row/column t
                best = None
                for i in range(t, m):
                    if mat[i][t] and (best is None or abs(mat[i][t]) < abs(mat[best[0]][best[1]])):
                        best = (i, t)
                for j in range(t, m):
                    if mat[t][j] and (best is None or abs(mat[t][j]) < abs(mat[best[0]][best[1]])):
                        best = (t, j)
                _move_to(mat, t, *best)
                continue
            bad_row = next(
                (i for i in range(t + 1, m) for j in range(t + 1, m) if mat[i][j] % p),
                None,
            )
            if bad_row is None:
                break
            mat[t] = [x + y for x, y in zip(mat[t], mat[bad_row])]
        diag.append(abs(mat[t][t]))
    return diag


def _smallest_nonzero(mat, t):
    best = None
    m = len(mat)
    for i in range(t, m):
        for j in range(t, m):
            v = mat[i][j]
            if v and (best is None or abs(v) < abs(mat[best[0]][best[1]])):
                best = (i, j)
    return best


def _move_to(mat, t, i, j):
    if i != t:
        mat[t], mat[i] = mat[i], mat[t]
    if j != t:
        for row in mat:
            row[t], row[j] = row[j], row[t]


def p_valuation(x: int, p: int) -> float:
    """p-adic valuation of an integer; ``inf`` for zero."""
    x = abs(int(x))
    if x == 0:
        return float("inf")
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def elementary_valuations(a: MatrixModN, p: int, r: int) -> list[int]:
    """Capped valuations ``min(r, v_p(d_i))`` of the Smith diagonal of ``a`` over Z_{p^r}.

    Works directly over the local ring Z_{p^r}: at each step the entry of
    least valuation becomes the pivot and clears its column with row
    operations. Every other entry in the pivot row is divisible by the
    pivot, so column clearing never touches the remaining block and is
    skipped.
    """
    q = p**r
    if a.modulus != q:
        raise UsageError(f"matrix modulus {a.modulus} is not {p}^{r}")
    m = a.dim
    mat = a.entries.astype(_work_dtype(q))
    powers = [p**k for k in range(1, r + 1)]
    vals: list[int] = []
    for t in range(m):
        sub = mat[t:, t:]
        if not sub.any():
            vals.extend([r] * (m - t))
            break
        val = np.zeros(sub.shape, dtype=np.int64)
        for pk in powers:
            val += (sub % pk == 0).astype(np.int64)
        flat = int(np.argmin(val))
        i, j = divmod(flat, sub.shape[1])
        i += t
        j += t
        v = int(val.flat[flat])
        if i != t:
            mat[[t, i]] = mat[[i, t]]
        if j != t:
            mat[:, [t, j]] = mat[:, [j, t]]
        pv = p**v
        unit_inv = pow(int(mat[t, t]) // pv, -1, q)
        coeffs = (mat[t + 1:, t] // pv) * unit_inv % q
        if coeffs.any():
            mat[t + 1:] = (mat[t + 1:] - np.outer(coeffs, mat[t]) % q) % q
        vals.append(v)
    return vals


def image_cardinality(a: MatrixModN, p: int, r: int, method: str = "local") -> int:
    """Number of distinct vectors ``a @ x`` for ``x`` in Z_{p^r}^m.

    ``method="local"`` eliminates over Z_{p^r} directly; ``method="snf"``
    takes p-adic valuations of the exact integer Smith diagonal. Both give
    ``p ** sum(r - min(r, v_p(d_i)))``.
    """
    if r < 1 or not is_prime(p) or a.modulus != p**r:
        raise UsageError(f"matrix modulus {a.modulus} is not {p}^{r}")
    if method == "local":
        vals = elementary_valuations(a, p, r)
    elif method == "snf":
        vals = [min(r, p_valuation(d, p)) for d in snf_diagonal(a)]
    else:
        raise UsageError(f"unknown method {method!r}")
    return p ** sum(r - int(v) for v in vals)
