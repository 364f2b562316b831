"""Exact linear algebra over prime fields F_p with p < 2**16.

Matrices are dense, row-major and immutable. Elimination always picks the
first nonzero entry in a column, so every result is reproducible.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "FieldError",
    "ShapeError",
    "Inconsistent",
    "FpMatrix",
    "check_prime",
    "rref",
    "rank",
    "kernel_basis",
    "column_space",
    "solve",
    "inverse",
    "block_diag",
    "hstack",
    "vstack",
]

MAX_P = 1 << 16


class FieldError(ValueError):
    """Raised for a non-prime modulus or mixed moduli."""


class ShapeError(ValueError):
    """Raised when matrix dimensions do not fit together."""


class Inconsistent(ValueError):
    """Raised by `solve` when the system has no solution."""


@lru_cache(maxsize=None)
def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def check_prime(p: int) -> int:
    if not isinstance(p, (int, np.integer)) or not 2 <= int(p) < MAX_P or not _is_prime(int(p)):
        raise FieldError(f"modulus must be a prime below 2^16, got {p!r}")
    return int(p)


class FpMatrix:
    """An immutable matrix over F_p backed by a read-only int64 array."""

    __slots__ = ("p", "a")

    def __init__(self, entries, p: int, _trusted: bool = False):
        if _trusted:
            arr = entries
        else:
            p = check_prime(p)
            arr = np.array(entries, dtype=np.int64)
            if arr.ndim == 1 and arr.size == 0:
                arr = arr.reshape(0, 0)
            if arr.ndim != 2:
                raise ShapeError("entries must be a 2-dimensional array")
            arr = np.mod(arr, p)
        arr.flags.writeable = False
        self.p = p
        self.a = arr

    @classmethod
    def wrap(cls, arr: np.ndarray, p: int) -> "FpMatrix":
        """Wrap an array already reduced mod p (no copy, no checks)."""
        return cls(arr, p, _trusted=True)

    @classmethod
    def zeros(cls, rows: int, cols: int, p: int) -> "FpMatrix":
        return cls.wrap(np.zeros((rows, cols), dtype=np.int64), check_prime(p))

    @classmethod
    def identity(cls, n: int, p: int) -> "FpMatrix":
        return cls.wrap(np.eye(n, dtype=np.int64), check_prime(p))

    @property
    def rows(self) -> int:
        return self.a.shape[0]

    @property
    def cols(self) -> int:
        return self.a.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.a.shape

    @property
    def entries(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(int(x) for x in row) for row in self.a)

    def tolist(self) -> list[list[int]]:
        return self.a.tolist()

    @property
    def T(self) -> "FpMatrix":
        return FpMatrix.wrap(np.ascontiguousarray(self.a.T), self.p)

    def _same_field(self, other: "FpMatrix") -> None:
        if self.p != other.p:
            raise FieldError(f"mixed moduli {self.p} and {other.p}")

    def __matmul__(self, other: "FpMatrix") -> "FpMatrix":
        self._same_field(other)
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        return FpMatrix.wrap((self.a @ other.a) % self.p, self.p)

    def __add__(self, other: "FpMatrix") -> "FpMatrix":
        self._same_field(other)
        if self.shape != other.shape:
            raise ShapeError(f"cannot add {self.shape} and {other.shape}")
        return FpMatrix.wrap((self.a + other.a) % self.p, self.p)

    def __sub__(self, other: "FpMatrix") -> "FpMatrix":
        self._same_field(other)
        if self.shape != other.shape:
            raise ShapeError(f"cannot subtract {other.shape} from {self.shape}")
        return FpMatrix.wrap((self.a - other.a) % self.p, self.p)

    def __neg__(self) -> "FpMatrix":
        return FpMatrix.wrap((-self.a) % self.p, self.p)

    def scale(self, c: int) -> "FpMatrix":
        return FpMatrix.wrap((self.a * (int(c) % self.p)) % self.p, self.p)

    def is_zero(self) -> bool:
        return not self.a.any()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FpMatrix):
            return NotImplemented
        return self.p == other.p and self.shape == other.shape and np.array_equal(self.a, other.a)

    def __hash__(self) -> int:
        return hash((self.p, self.shape, self.a.tobytes()))

    def __repr__(self) -> str:
        return f"FpMatrix({self.a.tolist()}, p={self.p})"


# Array-level routines. These take and return plain int64 arrays reduced mod p
# so that the module layer can avoid wrapping intermediate results.

def rref_array(a: np.ndarray, p: int, ncols: int | None = None) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form; pivots are searched in the first `ncols` columns."""
    m = np.array(a, dtype=np.int64, copy=True) % p
    rows, cols = m.shape
    limit = cols if ncols is None else ncols
    pivots: list[int] = []
    r = 0
    for c in range(limit):
        if r == rows:
            break
        nz = np.flatnonzero(m[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        inv = pow(int(m[r, c]), -1, p)
        if inv != 1:
            m[r] = (m[r] * inv) % p
        col = m[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            m[hit] = (m[hit] - np.outer(col[hit], m[r])) % p
        pivots.append(c)
        r += 1
    return m, pivots


def rank_array(a: np.ndarray, p: int) -> int:
    if a.size == 0:
        return 0
    return len(rref_array(a, p)[1])


def kernel_array(a: np.ndarray, p: int) -> np.ndarray:
    """Columns form a basis of the right kernel of `a`."""
    rows, cols = a.shape
    if cols == 0:
        return np.zeros((0, 0), dtype=np.int64)
    if rows == 0:
        return np.eye(cols, dtype=np.int64)
    r, piv = rref_array(a, p)
    free = [c for c in range(cols) if c not in set(piv)]
    k = np.zeros((cols, len(free)), dtype=np.int64)
    for j, f in enumerate(free):
        k[f, j] = 1
        for i, pc in enumerate(piv):
            k[pc, j] = (-r[i, f]) % p
    return k


def colspace_array(a: np.ndarray, p: int) -> np.ndarray:
    """A basis of the column space, taken from the original pivot columns."""
    if a.size == 0:
        return np.zeros((a.shape[0], 0), dtype=np.int64)
    _, piv = rref_array(a, p)
    return a[:, piv] % p


def solve_array(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """One solution x of a @ x = b (free variables set to zero)."""
    rows, cols = a.shape
    if b.shape[0] != rows:
        raise ShapeError(f"right-hand side has {b.shape[0]} rows, expected {rows}")
    if rows == 0:
        return np.zeros((cols, b.shape[1]), dtype=np.int64)
    aug = np.hstack([a % p, b % p])
    r, piv = rref_array(aug, p, ncols=cols)
    rk = len(piv)
    if r[rk:, cols:].any():
        raise Inconsistent("linear system has no solution")
    x = np.zeros((cols, b.shape[1]), dtype=np.int64)
    for i, pc in enumerate(piv):
        x[pc] = r[i, cols:]
    return x


# Public wrappers over FpMatrix.

def rref(m: FpMatrix) -> tuple[FpMatrix, list[int]]:
    r, piv = rref_array(m.a, m.p)
    return FpMatrix.wrap(r, m.p), piv


def rank(m: FpMatrix) -> int:
    return rank_array(m.a, m.p)


def kernel_basis(m: FpMatrix) -> FpMatrix:
    """Return a matrix whose columns are a basis of ker(m)."""
    return FpMatrix.wrap(kernel_array(m.a, m.p), m.p)


def column_space(m: FpMatrix) -> FpMatrix:
    return FpMatrix.wrap(colspace_array(m.a, m.p), m.p)


def solve(a: FpMatrix, b: FpMatrix | Sequence[int]) -> FpMatrix:
    """Solve a @ x = b. A vector right-hand side gives a column vector back."""
    if not isinstance(b, FpMatrix):
        b = FpMatrix([[int(v)] for v in b], a.p) if len(b) else FpMatrix.zeros(0, 1, a.p)
    a._same_field(b)
    return FpMatrix.wrap(solve_array(a.a, b.a, a.p), a.p)


def inverse(m: FpMatrix) -> FpMatrix:
    if m.rows != m.cols:
        raise ShapeError("only square matrices are invertible")
    if rank(m) != m.rows:
        raise Inconsistent("matrix is singular")
    return solve(m, FpMatrix.identity(m.rows, m.p))


def _field_of(parts: Iterable[FpMatrix], p: int | None) -> int:
    ps = {x.p for x in parts}
    if p is not None:
        ps.add(check_prime(p))
    if len(ps) != 1:
        raise FieldError("need a single modulus")
    return ps.pop()


def block_diag(*parts: FpMatrix, p: int | None = None) -> FpMatrix:
    q = _field_of(parts, p)
    rows = sum(x.rows for x in parts)
    cols = sum(x.cols for x in parts)
    out = np.zeros((rows, cols), dtype=np.int64)
    r = c = 0
    for x in parts:
        out[r:r + x.rows, c:c + x.cols] = x.a
        r += x.rows
        c += x.cols
    return FpMatrix.wrap(out, q)


def hstack(*parts: FpMatrix, p: int | None = None) -> FpMatrix:
    q = _field_of(parts, p)
    if not parts:
        return FpMatrix.zeros(0, 0, q)
    if len({x.rows for x in parts}) != 1:
        raise ShapeError("hstack needs equal row counts")
    return FpMatrix.wrap(np.hstack([x.a for x in parts]), q)


def vstack(*parts: FpMatrix, p: int | None = None) -> FpMatrix:
    q = _field_of(parts, p)
    if not parts:
        return FpMatrix.zeros(0, 0, q)
    if len({x.cols for x in parts}) != 1:
        raise ShapeError("vstack needs equal column counts")
    return FpMatrix.wrap(np.vstack([x.a for x in parts]), q)
