"""
Modules over matrix algebras and their submodule calculus.

A module is F_p^m together with a list of m x m matrices acting on column
vectors.  The acting ring is the unital algebra those matrices generate, so
a subspace is a submodule exactly when every generator maps it into itself.
Submodules are stored by their reduced echelon basis, which makes equality,
hashing and ordering purely syntactic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import product
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import PreconditionError, ResourceLimitError, ShapeError
from .linalg import (
    Basis,
    PrimeFieldMatrix,
    as_array,
    check_prime,
    nullspace,
    rref,
    to_basis,
)

DEFAULT_CAP = 2 ** 16


@dataclass(frozen=True, eq=False)
class ModulePresentation:
    """F_p^dim with generator matrices acting from the left on column vectors."""

    p: int
    dim: int
    generators: tuple[PrimeFieldMatrix, ...] = ()
    label: str = ""

    def __post_init__(self):
        p = check_prime(self.p)
        if self.dim < 0:
            raise ShapeError(f"dimension must be non-negative, got {self.dim}")
        gens = []
        for g in self.generators:
            if not isinstance(g, PrimeFieldMatrix):
                g = PrimeFieldMatrix.from_rows(p, g)
            if g.p != p:
                raise ShapeError(f"generator over F_{g.p} in a module over F_{p}")
            if g.shape != (self.dim, self.dim):
                raise ShapeError(f"generator of shape {g.shape} on a {self.dim}-dimensional module")
            gens.append(g)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "generators", tuple(gens))

    @classmethod
    def from_matrices(cls, p: int, matrices, dim: int | None = None, label: str = "") -> "ModulePresentation":
        mats = [PrimeFieldMatrix.from_rows(p, g) for g in matrices]
        if dim is None:
            if not mats:
                raise ShapeError("dim is required when there are no generators")
            dim = mats[0].rows
        return cls(p, dim, tuple(mats), label)

    @cached_property
    def actions(self) -> np.ndarray:
        """Generators stacked into an int64 array of shape (k, m, m)."""
        if not self.generators:
            return np.zeros((0, self.dim, self.dim), dtype=np.int64)
        return np.stack([g.entries for g in self.generators])

    @property
    def ngens(self) -> int:
        return len(self.generators)

    def __eq__(self, other):
        if not isinstance(other, ModulePresentation):
            return NotImplemented
        return (self.p == other.p and self.dim == other.dim
                and self.generators == other.generators)

    def __hash__(self):
        return hash((self.p, self.dim, self.generators))

    def __repr__(self):
        name = f" {self.label!r}" if self.label else ""
        return f"<ModulePresentation{name} over F_{self.p}, dim {self.dim}, {self.ngens} generators>"

    def zero(self) -> "Submodule":
        return Submodule(self, ())

    def whole(self) -> "Submodule":
        return Submodule(self, to_basis(np.eye(self.dim, dtype=np.int64)))

    def span(self, vectors) -> "Submodule":
        """The submodule generated by ``vectors``."""
        return closure(self, vectors)

    def vectors(self, projective: bool = False) -> Iterator[tuple[int, ...]]:
        """All vectors of F_p^m in lexicographic order.

        With ``projective=True`` only nonzero vectors whose first nonzero
        entry is 1 are produced (one per line).
        """
        for v in product(range(self.p), repeat=self.dim):
            if projective:
                lead = next((x for x in v if x), 0)
                if lead != 1:
                    continue
            yield v


@dataclass(frozen=True, eq=False)
class Submodule:
    """A generator-invariant subspace, identified by its reduced echelon basis."""

    module: ModulePresentation = field(repr=False)
    basis: Basis

    @cached_property
    def array(self) -> np.ndarray:
        if not self.basis:
            return np.zeros((0, self.module.dim), dtype=np.int64)
        return np.array(self.basis, dtype=np.int64)

    @cached_property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(i for i, x in enumerate(row) if x) for row in self.basis)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def p(self) -> int:
        return self.module.p

    def is_zero(self) -> bool:
        return not self.basis

    def is_whole(self) -> bool:
        return len(self.basis) == self.module.dim

    def sort_key(self):
        return (len(self.basis), self.basis)

    def __eq__(self, other):
        if not isinstance(other, Submodule):
            return NotImplemented
        return (self.basis == other.basis and self.module.p == other.module.p
                and self.module.dim == other.module.dim)

    def __hash__(self):
        return hash((self.module.p, self.module.dim, self.basis))

    def __lt__(self, other: "Submodule"):
        return self.sort_key() < other.sort_key()

    def __contains__(self, v) -> bool:
        v = np.asarray(v, dtype=np.int64) % self.p
        if not self.basis:
            return not v.any()
        residue = (v - v[list(self.pivots)] @ self.array) % self.p
        return not residue.any()

    def __le__(self, other: "Submodule") -> bool:
        _same_ambient(self, other)
        if self.dim > other.dim:
            return False
        if self.dim == other.dim:
            return self.basis == other.basis
        return _sum_bases(self.p, self.basis, other.basis) == other.basis if self.basis else True

    def __ge__(self, other: "Submodule") -> bool:
        return other <= self

    def __and__(self, other: "Submodule") -> "Submodule":
        return intersect(self, other)

    def __add__(self, other: "Submodule") -> "Submodule":
        return sum_submodules(self, other)

    def __repr__(self):
        if not self.basis:
            return "<0>"
        return "<" + ", ".join("(" + " ".join(map(str, row)) + ")" for row in self.basis) + ">"


def _same_ambient(a: Submodule, b: Submodule) -> None:
    if a.module is not b.module and a.module != b.module:
        raise ShapeError("submodules live in different ambient modules")


def _span_array(M: ModulePresentation, rows: np.ndarray) -> np.ndarray:
    if rows.shape[0] == 0:
        return rows
    return rref(rows, M.p)[0]


@lru_cache(maxsize=1 << 16)
def _closure_cached(M: ModulePresentation, seed: Basis) -> Basis:
    if not seed:
        return ()
    cur = np.array(seed, dtype=np.int64)
    acts = M.actions
    while True:
        if acts.shape[0] == 0:
            return to_basis(cur)
        # each generator g sends a basis row b to g @ b, i.e. rows b @ g.T
        images = np.einsum("kij,rj->kri", acts, cur).reshape(-1, M.dim) % M.p
        nxt = _span_array(M, np.vstack([cur, images]))
        if nxt.shape[0] == cur.shape[0]:
            return to_basis(cur)
        cur = nxt


def closure(M: ModulePresentation, seed) -> Submodule:
    """Smallest submodule of ``M`` containing every vector of ``seed``."""
    seed = list(seed)
    if not seed or M.dim == 0:
        return M.zero()
    a = as_array(seed, M.p, M.dim)
    start = to_basis(_span_array(M, a))
    return Submodule(M, _closure_cached(M, start))


def is_invariant(M: ModulePresentation, basis) -> bool:
    """True when the span of ``basis`` is mapped into itself by all generators."""
    a = as_array(list(basis), M.p, M.dim)
    if a.shape[0] == 0 or M.ngens == 0:
        return True
    span = _span_array(M, a)
    images = np.einsum("kij,rj->kri", M.actions, span).reshape(-1, M.dim) % M.p
    return rref(np.vstack([span, images]), M.p)[0].shape[0] == span.shape[0]


def submodule(M: ModulePresentation, vectors) -> Submodule:
    """Wrap an already invariant span as a Submodule, checking invariance."""
    vectors = list(vectors)
    if not vectors:
        return M.zero()
    a = as_array(vectors, M.p, M.dim)
    if not is_invariant(M, a):
        raise PreconditionError("span is not invariant under the generators")
    return Submodule(M, to_basis(_span_array(M, a)))


def intersect(A: Submodule, B: Submodule) -> Submodule:
    _same_ambient(A, B)
    if A.is_zero() or B.is_zero():
        return A.module.zero()
    if A.is_whole():
        return B
    if B.is_whole():
        return A
    return Submodule(A.module, _intersect_bases(A.p, A.basis, B.basis))


@lru_cache(maxsize=1 << 16)
def _intersect_bases(p: int, a: Basis, b: Basis) -> Basis:
    A = np.array(a, dtype=np.int64)
    stacked = np.vstack([A, np.array(b, dtype=np.int64)])
    # (x, y) with x A + y B = 0  gives  x A in A ∩ B
    kernel = nullspace(stacked.T % p, p)
    if kernel.shape[0] == 0:
        return ()
    return to_basis(rref((kernel[:, : len(a)] @ A) % p, p)[0])


def sum_submodules(A: Submodule, B: Submodule) -> Submodule:
    _same_ambient(A, B)
    if A.is_zero():
        return B
    if B.is_zero():
        return A
    return Submodule(A.module, _sum_bases(A.p, A.basis, B.basis))


@lru_cache(maxsize=1 << 16)
def _sum_bases(p: int, a: Basis, b: Basis) -> Basis:
    return to_basis(rref(np.array(a + b, dtype=np.int64), p)[0])


def intersect_all(parts: Sequence[Submodule], ambient: ModulePresentation | None = None) -> Submodule:
    if not parts:
        if ambient is None:
            raise ShapeError("empty intersection needs an ambient module")
        return ambient.whole()
    out = parts[0]
    for q in parts[1:]:
        out = intersect(out, q)
    return out


def sum_all(parts: Iterable[Submodule], ambient: ModulePresentation) -> Submodule:
    out = ambient.zero()
    for q in parts:
        out = sum_submodules(out, q)
    return out


def is_direct_sum(parts: Sequence[Submodule], ambient: ModulePresentation) -> bool:
    return sum_all(parts, ambient).dim == sum(q.dim for q in parts)


def restrict(S: Submodule) -> ModulePresentation:
    """The submodule S as a module in its own right, in echelon-basis coordinates."""
    M = S.module
    if S.is_zero():
        return ModulePresentation(M.p, 0, tuple(PrimeFieldMatrix(M.p, np.zeros((0, 0), dtype=np.int64))
                                             for _ in M.generators))
    gens = []
    piv = list(S.pivots)
    for g in M.actions:
        images = (S.array @ g.T) % M.p
        coeffs = images[:, piv]  # images[i] = sum_j coeffs[i, j] * basis[j]
        gens.append(PrimeFieldMatrix(M.p, coeffs.T.copy()))
    return ModulePresentation(M.p, S.dim, tuple(gens))


def direct_sum(*modules: ModulePresentation, label: str = "") -> ModulePresentation:
    """Block-diagonal direct sum of modules sharing a generator list."""
    if not modules:
        raise ShapeError("direct_sum needs at least one summand")
    p = modules[0].p
    k = modules[0].ngens
    if any(X.p != p or X.ngens != k for X in modules):
        raise ShapeError("summands must share p and the number of generators")
    m = sum(X.dim for X in modules)
    gens = []
    for i in range(k):
        g = np.zeros((m, m), dtype=np.int64)
        off = 0
        for X in modules:
            g[off:off + X.dim, off:off + X.dim] = X.actions[i]
            off += X.dim
        gens.append(PrimeFieldMatrix(p, g))
    return ModulePresentation(p, m, tuple(gens), label)


@dataclass(frozen=True, eq=False)
class QuotientPresentation:
    """M/N with induced actions on the non-pivot coordinates of N's echelon basis.

    ``module`` is the quotient as a ModulePresentation; ``projection`` is the
    (q x m) matrix of M -> M/N and ``section`` the (m x q) right inverse that
    places quotient coordinates on the non-pivot positions.
    """

    base: ModulePresentation
    kernel: Submodule
    module: ModulePresentation
    projection: PrimeFieldMatrix
    section: PrimeFieldMatrix

    @property
    def induced_generators(self) -> tuple[PrimeFieldMatrix, ...]:
        return self.module.generators

    def project(self, vectors) -> np.ndarray:
        a = as_array(list(vectors), self.base.p, self.base.dim)
        return (a @ self.projection.entries.T) % self.base.p

    def image(self, W: Submodule) -> Submodule:
        """pi(W) as a submodule of the quotient."""
        _same_ambient(W, self.base.zero())
        if W.is_zero() or self.module.dim == 0:
            return self.module.zero()
        rows = self.project(W.basis)
        return Submodule(self.module, to_basis(_span_array(self.module, rows)))

    def preimage(self, W: Submodule) -> Submodule:
        """pi^{-1}(W) as a submodule of the base (always contains the kernel)."""
        if W.module.dim != self.module.dim or W.module.p != self.module.p:
            raise ShapeError("submodule does not live in this quotient")
        if W.is_zero():
            return self.kernel
        lifted = (W.array @ self.section.entries.T) % self.base.p
        rows = np.vstack([lifted, self.kernel.array])
        return Submodule(self.base, to_basis(_span_array(self.base, rows)))


@lru_cache(maxsize=4096)
def quotient(M: ModulePresentation, N: Submodule) -> QuotientPresentation:
    """The factor module M/N."""
    _same_ambient(N, M.zero())
    if not is_invariant(M, N.basis):
        raise PreconditionError("N is not invariant under the generators")
    p, m = M.p, M.dim
    piv = set(N.pivots)
    free = [i for i in range(m) if i not in piv]
    q = len(free)
    # project(e_i): reduce e_i against N's echelon basis, read off free coordinates
    reduced = np.eye(m, dtype=np.int64)
    if N.dim:
        reduced = (reduced - reduced[:, list(N.pivots)] @ N.array) % p
    P = reduced[:, free].T.copy() if q else np.zeros((0, m), dtype=np.int64)
    S = np.zeros((m, q), dtype=np.int64)
    for t, i in enumerate(free):
        S[i, t] = 1
    gens = tuple(PrimeFieldMatrix(p, (P @ g @ S) % p) for g in M.actions)
    Q = ModulePresentation(p, q, gens, f"{M.label}/N" if M.label else "")
    return QuotientPresentation(M, N, Q, PrimeFieldMatrix(p, P), PrimeFieldMatrix(p, S))


def hom_space(M1: ModulePresentation, M2: ModulePresentation) -> tuple[PrimeFieldMatrix, ...]:
    """Basis of the intertwiners X : M1 -> M2, i.e. X g1 = g2 X for every generator."""
    if M1.p != M2.p:
        raise ShapeError("modules over different fields")
    if M1.ngens != M2.ngens:
        raise ShapeError(f"generator count mismatch: {M1.ngens} vs {M2.ngens}")
    p, d1, d2 = M1.p, M1.dim, M2.dim
    if d1 == 0 or d2 == 0:
        return ()
    n = d1 * d2
    if M1.ngens == 0:
        sol = np.eye(n, dtype=np.int64)
    else:
        # row-major vec: vec(X g1) = (I ⊗ g1^T) vec X,  vec(g2 X) = (g2 ⊗ I) vec X
        eqs = [np.kron(np.eye(d2, dtype=np.int64), g1.T) - np.kron(g2, np.eye(d1, dtype=np.int64))
               for g1, g2 in zip(M1.actions, M2.actions)]
        sol = nullspace(np.vstack(eqs) % p, p)
    return tuple(PrimeFieldMatrix(p, row.reshape(d2, d1)) for row in sol)


def is_simple(M: ModulePresentation, cap: int = DEFAULT_CAP) -> bool:
    """M != 0 and every nonzero vector generates all of M."""
    if M.dim == 0:
        return False
    _check_scan(M, cap)
    return all(closure(M, [v]).dim == M.dim for v in M.vectors(projective=True))


def is_isomorphic_simple(S1: ModulePresentation, S2: ModulePresentation, cap: int = DEFAULT_CAP) -> bool:
    """Isomorphism test for simple modules (any nonzero intertwiner is invertible)."""
    for S in (S1, S2):
        if not is_simple(S, cap):
            raise PreconditionError("is_isomorphic_simple expects simple modules")
    if S1.dim != S2.dim:
        return False
    return len(hom_space(S1, S2)) > 0


def find_isomorphism(M1: ModulePresentation, M2: ModulePresentation, cap: int = DEFAULT_CAP):
    """Exhaustively search Hom(M1, M2) for an invertible element.

    Returns the isomorphism as a PrimeFieldMatrix, or None.  Intended for
    tiny instances only: the search visits up to p^dim(Hom) maps.
    """
    if M1.p != M2.p or M1.dim != M2.dim:
        return None
    if M1.dim == 0:
        return PrimeFieldMatrix(M1.p, np.zeros((0, 0), dtype=np.int64))
    basis = hom_space(M1, M2)
    if not basis:
        return None
    p = M1.p
    if p ** len(basis) > cap:
        raise ResourceLimitError(f"hom space of size {p}^{len(basis)} exceeds cap {cap}",
                                 bound=cap, needed=p ** len(basis))
    stack = np.stack([b.entries for b in basis])
    for coeffs in product(range(p), repeat=len(basis)):
        if not any(coeffs):
            continue
        X = np.tensordot(np.array(coeffs, dtype=np.int64), stack, axes=1) % p
        if rref(X, p)[0].shape[0] == M1.dim:
            return PrimeFieldMatrix(p, X)
    return None


def _check_scan(M: ModulePresentation, cap: int) -> None:
    if M.p ** M.dim > cap:
        raise ResourceLimitError(
            f"vector scan of {M.p}^{M.dim} = {M.p ** M.dim} vectors exceeds cap {cap}",
            bound=cap, needed=M.p ** M.dim)


def cyclic_submodules(M: ModulePresentation, cap: int = DEFAULT_CAP) -> list[Submodule]:
    """All distinct nonzero cyclic submodules closure({v}), canonically ordered."""
    _check_scan(M, cap)
    return _cyclic_cached(M)


@lru_cache(maxsize=1024)
def _cyclic_cached(M: ModulePresentation) -> list[Submodule]:
    seen = {closure(M, [v]) for v in M.vectors(projective=True)}
    return sorted(seen)


def enumerate_submodules(M: ModulePresentation, cap: int = DEFAULT_CAP) -> list[Submodule]:
    """Every submodule of M, ordered by (dimension, echelon basis).

    Each submodule is a sum of cyclic ones, so the lattice is the closure of
    {0} under adding cyclic submodules.
    """
    _check_scan(M, cap)
    return list(_lattice_cached(M))


@lru_cache(maxsize=1024)
def _lattice_cached(M: ModulePresentation) -> tuple[Submodule, ...]:
    cyclic = _cyclic_cached(M)
    found = {M.zero()}
    frontier = [M.zero()]
    while frontier:
        nxt = []
        for W in frontier:
            for Z in cyclic:
                if Z <= W:
                    continue
                S = sum_submodules(W, Z)
                if S not in found:
                    found.add(S)
                    nxt.append(S)
        frontier = nxt
    return tuple(sorted(found))
