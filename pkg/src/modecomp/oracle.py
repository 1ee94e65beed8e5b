"""
Definitional brute force over the complete submodule lattice.

Nothing here uses socles or the constructions of :mod:`modecomp.decompose`.
Every notion is evaluated straight from its definition on the lattice of
M, with subquotients U/K represented by pairs K ⊆ U of submodules of M:

* A/K is essential in U/K when A ∩ B ≠ K for every B with K ⊊ B ⊆ U;
* U/K is uniform when U ≠ K and every nonzero submodule is essential;
* two uniform subquotients are essentially equivalent when they contain
  essential submodules that are isomorphic (exhaustive isomorphism search);
* As(U/K) is the set of classes of uniform subquotients V/K with V ⊆ U.

This is only feasible for tiny modules, which is the point: it serves as
ground truth for the constructive code.
"""

from __future__ import annotations

from itertools import combinations, permutations

from .decompose import Decomposition, PRIMARY, UNIFORM
from .errors import ProperSubmoduleError, ResourceLimitError
from .modules import (
    DEFAULT_CAP,
    ModulePresentation,
    Submodule,
    enumerate_submodules,
    find_isomorphism,
    intersect,
    intersect_all,
    quotient,
    restrict,
    sum_all,
)

KINDS = (
    "primary",
    "shortest_primary",
    "maximal_shortest_primary",
    "uniform",
    "shortest_uniform",
    "maximal_shortest_uniform",
)


class LatticeOracle:
    """Definitional lattice computations for one module M."""

    def __init__(self, M: ModulePresentation, cap: int = DEFAULT_CAP, lattice_cap: int | None = None):
        self.M = M
        self.cap = cap
        self.lattice = enumerate_submodules(M, cap)
        if lattice_cap is not None and len(self.lattice) > lattice_cap:
            raise ResourceLimitError(
                f"lattice of {len(self.lattice)} submodules exceeds cap {lattice_cap}",
                bound=lattice_cap, needed=len(self.lattice))
        self._reps: list[tuple[Submodule, Submodule]] = []
        self._class: dict[tuple[Submodule, Submodule], int] = {}
        self._iso: dict = {}
        self._sq: dict = {}
        self._uniform: dict = {}
        self._as: dict = {}
        self._short: dict = {}

    # -- lattice helpers -------------------------------------------------

    def between(self, K: Submodule, U: Submodule, strict_bottom: bool = False) -> list[Submodule]:
        return [B for B in self.lattice
                if K <= B <= U and not (strict_bottom and B == K)]

    def above(self, K: Submodule) -> list[Submodule]:
        return [B for B in self.lattice if K <= B]

    def is_essential(self, A: Submodule, U: Submodule, K: Submodule | None = None) -> bool:
        """A/K essential in U/K (K defaults to 0), straight from the definition."""
        K = self.M.zero() if K is None else K
        return all(intersect(A, B) != K for B in self.between(K, U, strict_bottom=True))

    def is_uniform(self, U: Submodule, K: Submodule | None = None) -> bool:
        K = self.M.zero() if K is None else K
        key = (U, K)
        if key not in self._uniform:
            if U == K:
                self._uniform[key] = False
            else:
                inner = self.between(K, U, strict_bottom=True)
                self._uniform[key] = all(intersect(A, B) != K for A, B in combinations(inner, 2))
        return self._uniform[key]

    def udim(self, U: Submodule, K: Submodule | None = None) -> int:
        """Largest number of nonzero submodules of U/K whose sum is direct."""
        K = self.M.zero() if K is None else K
        inner = self.between(K, U, strict_bottom=True)
        atoms = [A for A in inner if not any(B != A and B <= A for B in inner)]
        best = 0

        def grow(start, chosen, acc):
            nonlocal best
            best = max(best, len(chosen))
            for i in range(start, len(atoms)):
                A = atoms[i]
                nxt = acc + A
                if nxt.dim - acc.dim == A.dim - K.dim:
                    grow(i + 1, chosen + [A], nxt)

        grow(0, [], K)
        return best

    def subquotient(self, U: Submodule, K: Submodule) -> ModulePresentation:
        key = (U, K)
        if key not in self._sq:
            pi = quotient(self.M, K)
            self._sq[key] = restrict(pi.image(U))
        return self._sq[key]

    def _isomorphic(self, X: ModulePresentation, Y: ModulePresentation) -> bool:
        key = (X, Y)
        if key not in self._iso:
            self._iso[key] = X == Y or find_isomorphism(X, Y, self.cap) is not None
            self._iso[(Y, X)] = self._iso[key]
        return self._iso[key]

    def essentially_equivalent(self, a: tuple[Submodule, Submodule], b: tuple[Submodule, Submodule]) -> bool:
        """U1/K1 ~ U2/K2: some essential submodules of each are isomorphic."""
        (U1, K1), (U2, K2) = a, b
        ess1 = [L for L in self.between(K1, U1, strict_bottom=True) if self.is_essential(L, U1, K1)]
        ess2 = [L for L in self.between(K2, U2, strict_bottom=True) if self.is_essential(L, U2, K2)]
        pairs = [(L1, L2) for L1 in ess1 for L2 in ess2 if L1.dim - K1.dim == L2.dim - K2.dim]
        pairs.sort(key=lambda t: t[0].dim - K1.dim)
        return any(self._isomorphic(self.subquotient(L1, K1), self.subquotient(L2, K2)) for L1, L2 in pairs)

    def prime_class(self, U: Submodule, K: Submodule) -> int:
        """Index of the essential-equivalence class of the uniform module U/K."""
        key = (U, K)
        if key not in self._class:
            for i, rep in enumerate(self._reps):
                if self.essentially_equivalent(rep, key):
                    self._class[key] = i
                    break
            else:
                self._reps.append(key)
                self._class[key] = len(self._reps) - 1
        return self._class[key]

    def associated(self, K: Submodule, U: Submodule | None = None) -> frozenset[int]:
        """As(U/K) as a set of class indices (U defaults to M)."""
        U = self.M.whole() if U is None else U
        key = (U, K)
        if key not in self._as:
            self._as[key] = frozenset(self.prime_class(V, K) for V in self.between(K, U, strict_bottom=True)
                                      if self.is_uniform(V, K))
        return self._as[key]

    def is_primary(self, K: Submodule) -> bool:
        return K.dim < self.M.dim and len(self.associated(K)) == 1

    def has_uniform_quotient(self, K: Submodule) -> bool:
        return self.is_uniform(self.M.whole(), K)

    def is_irredundant(self, N: Submodule, parts) -> bool:
        parts = list(parts)
        return all(intersect_all(parts[:i] + parts[i + 1:], self.M) != N for i in range(len(parts)))

    # -- decompositions ------------------------------------------------------

    def _candidates(self, N: Submodule, kind: str) -> list[Submodule]:
        test = self.is_primary if kind == PRIMARY else self.has_uniform_quotient
        return [K for K in self.above(N) if K.dim < self.M.dim and test(K)]

    def _search(self, N: Submodule, cands: list[Submodule], sizes) -> dict[int, list[frozenset]]:
        out: dict[int, list[frozenset]] = {}
        budget = 0
        for r in sizes:
            hits = []
            for combo in combinations(cands, r):
                budget += 1
                if budget > self.cap:
                    raise ResourceLimitError(f"brute-force search exceeded cap {self.cap}", bound=self.cap)
                if intersect_all(list(combo), self.M) == N:
                    hits.append(frozenset(combo))
            out[r] = hits
        return out

    def decompositions(self, N: Submodule, kind: str, max_parts: int | None = None) -> list[Decomposition]:
        """The oracle side of every decomposition kind in :data:`KINDS`."""
        if N.dim == self.M.dim:
            raise ProperSubmoduleError()
        if kind not in KINDS:
            raise ValueError(f"unknown decomposition kind {kind!r}")
        base = PRIMARY if kind.endswith(PRIMARY) else UNIFORM
        cands = self._candidates(N, base)
        if kind in (PRIMARY, UNIFORM):
            limit = self.udim(self.M.whole(), N) + 1 if max_parts is None else max_parts
            found = self._search(N, cands, range(1, limit + 1))
            shortest = min((r for r, hits in found.items() if hits), default=None)
            return self._wrap(N, [(parts, r == shortest) for r, hits in found.items() for parts in hits], base, ())

        shortest, maximal = self._shortest(N, base, cands)
        if kind.startswith("maximal"):
            return self._wrap(N, [(D, True) for D in maximal], base, maximal)
        return self._wrap(N, [(D, True) for D in shortest], base, maximal)

    def _shortest(self, N: Submodule, base: str, cands: list[Submodule]):
        key = (N, base)
        if key not in self._short:
            shortest = []
            for r in range(1, len(cands) + 1):
                shortest = self._search(N, cands, [r])[r]
                if shortest:
                    break
            maximal = [D for D in shortest if not any(E != D and self._dominates(E, D, base) for E in shortest)]
            self._short[key] = (shortest, maximal)
        return self._short[key]

    def _dominates(self, big: frozenset, small: frozenset, kind: str) -> bool:
        """Some matching sends every part of ``small`` into a part of ``big``
        (with the same prime, for primary decompositions)."""
        small_l, big_l = sorted(small), sorted(big)
        if len(small_l) != len(big_l):
            return False
        for perm in permutations(big_l):
            if all(a <= b for a, b in zip(small_l, perm)):
                if kind == UNIFORM or all(self.associated(a) == self.associated(b) for a, b in zip(small_l, perm)):
                    return True
        return False

    def _wrap(self, N, items, kind, maximal) -> list[Decomposition]:
        top = set(maximal)
        out = []
        for parts, is_shortest in items:
            ordered = tuple(sorted(parts))
            out.append(Decomposition(
                self.M, N, ordered, (), kind,
                is_primary=all(self.is_primary(K) for K in ordered),
                is_uniform=all(self.has_uniform_quotient(K) for K in ordered),
                is_irredundant=self.is_irredundant(N, ordered),
                is_shortest=is_shortest,
                is_maximal=parts in top,
            ))
        return sorted(out)


def brute_force_decompositions(M: ModulePresentation, N: Submodule, kind: str,
                               cap: int = DEFAULT_CAP, max_parts: int | None = None,
                               oracle: LatticeOracle | None = None) -> list[Decomposition]:
    """Definitional search for decompositions of N in M of the given kind.

    ``primary`` and ``uniform`` list every decomposition into at most
    ``max_parts`` distinct parts (default u.dim(M/N) + 1, which covers all
    irredundant ones); the ``shortest`` kinds search sizes 1, 2, ... and stop
    at the first size that admits a decomposition.  Part primes are not
    computed (``part_primes`` is empty).
    """
    oracle = LatticeOracle(M, cap) if oracle is None else oracle
    return oracle.decompositions(N, kind, max_parts)


def lattice_stats(M: ModulePresentation, cap: int = DEFAULT_CAP) -> dict[str, int]:
    try:
        n = len(enumerate_submodules(M, cap))
    except ResourceLimitError:
        n = -1
    return {"p": M.p, "dim": M.dim, "generators": M.ngens, "submodules": n}


def sum_is_direct(parts, M: ModulePresentation) -> bool:
    return sum_all(parts, M).dim == sum(q.dim for q in parts)
