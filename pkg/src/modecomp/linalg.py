"""
Exact dense linear algebra over prime fields F_p.

Everything is kept as ``int64`` numpy arrays with entries reduced into
``[0, p)``.  With p <= 251 no product of two entries overflows, so plain
integer numpy arithmetic followed by ``% p`` is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import ShapeError

MAX_PRIME = 251

Vector = tuple[int, ...]
Basis = tuple[Vector, ...]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def check_prime(p: int) -> int:
    if not isinstance(p, (int, np.integer)) or not is_prime(int(p)):
        raise ShapeError(f"p must be prime, got {p!r}")
    if p > MAX_PRIME:
        raise ShapeError(f"p must be at most {MAX_PRIME}, got {p}")
    return int(p)


def inverse_mod(a: int, p: int) -> int:
    return pow(int(a), -1, p)


def as_array(rows, p: int, ncols: int | None = None) -> np.ndarray:
    """Coerce rows (any nested sequence of integers) into a reduced int64 array."""
    a = np.asarray(rows, dtype=np.int64)
    if a.size == 0:
        if ncols is None:
            ncols = a.shape[1] if a.ndim == 2 else 0
        return np.zeros((0, ncols), dtype=np.int64)
    if a.ndim == 1:
        a = a.reshape(1, -1)
    if a.ndim != 2:
        raise ShapeError(f"expected a 2-d array of integers, got shape {a.shape}")
    if ncols is not None and a.shape[1] != ncols:
        raise ShapeError(f"expected vectors of length {ncols}, got {a.shape[1]}")
    return a % p


def rref(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over F_p.

    Returns the nonzero rows of the reduced form (so the result is a basis of
    the row space) and the list of pivot columns.
    """
    r = np.array(a, dtype=np.int64, copy=True) % p
    nrows, ncols = r.shape
    pivots: list[int] = []
    row = 0
    for col in range(ncols):
        if row == nrows:
            break
        nz = np.flatnonzero(r[row:, col])
        if nz.size == 0:
            continue
        k = row + int(nz[0])
        if k != row:
            r[[row, k]] = r[[k, row]]
        inv = inverse_mod(r[row, col], p)
        r[row] = (r[row] * inv) % p
        others = np.flatnonzero(r[:, col])
        others = others[others != row]
        if others.size:
            r[others] = (r[others] - np.outer(r[others, col], r[row])) % p
        pivots.append(col)
        row += 1
    return r[:row], pivots


def rank(a: np.ndarray, p: int) -> int:
    if a.size == 0:
        return 0
    return len(rref(a, p)[1])


def to_basis(a: np.ndarray) -> Basis:
    return tuple(tuple(int(x) for x in row) for row in a)


def rref_canonicalize(vectors: Iterable[Sequence[int]], p: int, m: int | None = None) -> Basis:
    """Canonical (reduced echelon) basis of the span of ``vectors``.

    >>> rref_canonicalize([(0, 1), (1, 1)], 2)
    ((1, 0), (0, 1))
    >>> rref_canonicalize([(2, 4)], 5)
    ((1, 2),)
    """
    vectors = list(vectors)
    if not vectors:
        return ()
    lengths = {len(v) for v in vectors}
    if len(lengths) != 1 or (m is not None and lengths != {m}):
        raise ShapeError(f"vectors of mixed or unexpected length: {sorted(lengths)}")
    r, _ = rref(as_array(vectors, p), p)
    return to_basis(r)


def nullspace(a: np.ndarray, p: int) -> np.ndarray:
    """Basis (as rows, reduced echelon) of {x : a @ x = 0} over F_p."""
    nrows, ncols = a.shape
    if ncols == 0:
        return np.zeros((0, 0), dtype=np.int64)
    if nrows == 0:
        return np.eye(ncols, dtype=np.int64)
    r, pivots = rref(a, p)
    free = [c for c in range(ncols) if c not in pivots]
    out = np.zeros((len(free), ncols), dtype=np.int64)
    for i, f in enumerate(free):
        out[i, f] = 1
        for row, pc in enumerate(pivots):
            out[i, pc] = (-r[row, f]) % p
    if out.shape[0]:
        out, _ = rref(out, p)
    return out


def coordinates(basis: np.ndarray, pivots: Sequence[int], v: np.ndarray) -> np.ndarray:
    """Coordinates of ``v`` (a row, or rows) in a reduced echelon ``basis``.

    Assumes ``v`` lies in the span; for a reduced basis the coordinates are
    simply the entries of ``v`` in the pivot columns.
    """
    return np.asarray(v)[..., list(pivots)]


@dataclass(frozen=True, eq=False)
class PrimeFieldMatrix:
    """An immutable matrix over F_p."""

    p: int
    entries: np.ndarray

    def __post_init__(self):
        p = check_prime(self.p)
        a = np.asarray(self.entries)
        if a.ndim != 2:
            raise ShapeError(f"matrix must be 2-d, got shape {a.shape}")
        if a.size and (a.min() < 0 or a.max() >= p):
            raise ShapeError(f"matrix entries must lie in [0, {p})")
        a = a.astype(np.int64, copy=True)
        a.setflags(write=False)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "entries", a)

    @classmethod
    def from_rows(cls, p: int, rows, reduce: bool = False) -> "PrimeFieldMatrix":
        a = np.asarray(rows, dtype=np.int64)
        if a.ndim == 1 and a.size == 0:
            a = a.reshape(0, 0)
        if reduce:
            a = a % p
        return cls(p, a)

    @classmethod
    def identity(cls, p: int, n: int) -> "PrimeFieldMatrix":
        return cls(p, np.eye(n, dtype=np.int64))

    @property
    def shape(self) -> tuple[int, int]:
        return self.entries.shape

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    def __matmul__(self, other):
        if isinstance(other, PrimeFieldMatrix):
            if other.p != self.p:
                raise ShapeError("moduli differ")
            return PrimeFieldMatrix(self.p, (self.entries @ other.entries) % self.p)
        return (self.entries @ np.asarray(other, dtype=np.int64)) % self.p

    def __eq__(self, other):
        if not isinstance(other, PrimeFieldMatrix):
            return NotImplemented
        return (self.p == other.p and self.shape == other.shape
                and bool(np.array_equal(self.entries, other.entries)))

    def __hash__(self):
        return hash((self.p, self.shape, self.entries.tobytes()))

    def tolist(self) -> list[list[int]]:
        return self.entries.tolist()

    def rank(self) -> int:
        return rank(self.entries, self.p)

    def __repr__(self):
        return f"PrimeFieldMatrix(p={self.p}, {self.tolist()})"
