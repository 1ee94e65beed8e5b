"""
Socles, essentiality, uniform dimension and associated left primes.

For a finite module the socle (sum of all simple submodules) is essential,
and a direct sum of simples spanning the socle is an essential direct sum of
uniform submodules.  Everything below is phrased in those terms:

* N is essential in M iff soc(M) is contained in N;
* M is uniform iff soc(M) is simple;
* u.dim(M) is the number of simple summands of soc(M);
* two uniform modules are essentially equivalent iff their (simple) socles
  are isomorphic, so a left prime is represented by a simple module.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field, replace
from functools import cached_property, lru_cache
from itertools import combinations
from math import comb

import numpy as np

from .errors import PreconditionError, ProperSubmoduleError, ResourceLimitError
from .modules import (
    DEFAULT_CAP,
    ModulePresentation,
    Submodule,
    cyclic_submodules,
    hom_space,
    quotient,
    restrict,
    sum_all,
)


@dataclass(frozen=True, eq=False)
class LeftPrime:
    """An essential-equivalence class of uniform modules.

    ``witness`` is a simple submodule of whatever module the prime was read
    off; ``simple`` is that simple module in its own coordinates.  Equality is
    isomorphism of the simple witnesses.
    """

    witness: Submodule
    simple: ModulePresentation = field(repr=False)
    label: str = ""

    @property
    def dim(self) -> int:
        return self.simple.dim

    @cached_property
    def invariant(self) -> tuple:
        # cheap isomorphism invariant used for hashing and early rejection
        S = self.simple
        p = S.p
        traces = tuple(int(np.trace(g)) % p for g in S.actions)
        pair = tuple(int(np.trace(g @ h)) % p for g in S.actions for h in S.actions)
        if S.dim == 1:
            return (p, 1, tuple(int(g[0, 0]) for g in S.actions))
        return (p, S.dim, traces, pair)

    def __eq__(self, other):
        if not isinstance(other, LeftPrime):
            return NotImplemented
        if self is other:
            return True
        if self.invariant != other.invariant:
            return False
        if self.dim == 1:
            return True
        return _simples_isomorphic(self.simple, other.simple)

    def __hash__(self):
        return hash(self.invariant)

    def with_label(self, label: str) -> "LeftPrime":
        return replace(self, label=label)

    def __repr__(self):
        name = self.label or "X"
        return f"{name}[dim {self.dim}]"


@lru_cache(maxsize=1 << 14)
def _simples_isomorphic(S1: ModulePresentation, S2: ModulePresentation) -> bool:
    return S1.dim == S2.dim and len(hom_space(S1, S2)) > 0


@dataclass(frozen=True)
class AssociatedPrimes:
    """As(M) together with multiplicities, primes ordered by (dim, witness basis)."""

    primes: tuple[LeftPrime, ...]
    counts: tuple[int, ...]

    @property
    def multiplicities(self) -> dict[LeftPrime, int]:
        return dict(zip(self.primes, self.counts))

    def mult(self, X: LeftPrime) -> int:
        for Y, c in zip(self.primes, self.counts):
            if Y == X:
                return c
        return 0

    def __len__(self):
        return len(self.primes)

    def __contains__(self, X):
        return X in self.primes

    def as_set(self) -> frozenset:
        return frozenset(self.primes)

    @property
    def total(self) -> int:
        return sum(self.counts)


def simple_submodules(M: ModulePresentation, cap: int = DEFAULT_CAP) -> list[Submodule]:
    """All minimal nonzero submodules of M, in canonical order.

    A simple submodule is cyclic, so it suffices to keep the cyclic
    submodules that contain no other nonzero cyclic submodule.
    """
    cyc = cyclic_submodules(M, cap)
    return _simples_from_cyclic(M, tuple(cyc))


@lru_cache(maxsize=1024)
def _simples_from_cyclic(M, cyc):
    out = []
    for Z in cyc:
        if not any(W.dim < Z.dim and W <= Z for W in cyc):
            out.append(Z)
    return out


def socle(M: ModulePresentation, cap: int = DEFAULT_CAP) -> Submodule:
    return sum_all(simple_submodules(M, cap), M)


def _greedy_socle_basis(simples: list[Submodule], M: ModulePresentation) -> list[Submodule]:
    chosen: list[Submodule] = []
    acc = M.zero()
    for S in simples:
        nxt = acc + S
        if nxt.dim == acc.dim + S.dim:
            chosen.append(S)
            acc = nxt
    return chosen


def socle_decompositions(M: ModulePresentation, cap: int = DEFAULT_CAP) -> list[tuple[Submodule, ...]]:
    """Every way of writing soc(M) as a direct sum of simple submodules.

    Returned in lexicographic order of index tuples into the canonical list
    of simples; the first entry coincides with the greedy default.
    """
    simples = simple_submodules(M, cap)
    n = len(_greedy_socle_basis(simples, M))
    if comb(len(simples), n) > cap:
        raise ResourceLimitError(
            f"{comb(len(simples), n)} candidate socle decompositions exceed cap {cap}",
            bound=cap, needed=comb(len(simples), n))
    target = sum_all(simples, M).dim
    out = []
    for combo in combinations(simples, n):
        if sum(S.dim for S in combo) == target and sum_all(combo, M).dim == target:
            out.append(combo)
    return out


def socle_decomposition(M: ModulePresentation, choice: int | None = None,
                        cap: int = DEFAULT_CAP) -> list[Submodule]:
    """Simples S_1, ..., S_n whose direct sum is soc(M).

    The default is the greedy choice over the canonical list of simples;
    ``choice=k`` selects the k-th entry of :func:`socle_decompositions`.
    """
    if choice is None:
        return _greedy_socle_basis(simple_submodules(M, cap), M)
    options = socle_decompositions(M, cap)
    if not 0 <= choice < len(options):
        raise PreconditionError(f"choice {choice} out of range: {len(options)} socle decompositions")
    return list(options[choice])


def is_essential(N: Submodule, M: ModulePresentation | None = None, cap: int = DEFAULT_CAP) -> bool:
    M = N.module if M is None else M
    return socle(M, cap) <= N


def uniform_dimension(M: ModulePresentation, cap: int = DEFAULT_CAP) -> int:
    if M.dim == 0:
        return 0
    return len(socle_decomposition(M, cap=cap))


def is_uniform(M: ModulePresentation, cap: int = DEFAULT_CAP) -> bool:
    return M.dim > 0 and len(simple_submodules(M, cap)) == 1


def prime_of_simple(S: Submodule) -> LeftPrime:
    return LeftPrime(S, restrict(S))


def left_prime_of(U, cap: int = DEFAULT_CAP) -> LeftPrime:
    """The left prime [U] of a uniform module (or uniform submodule)."""
    if isinstance(U, Submodule):
        U = restrict(U)
    simples = simple_submodules(U, cap) if U.dim else []
    if len(simples) != 1:
        raise PreconditionError("left_prime_of expects a uniform module")
    return prime_of_simple(simples[0])


def _collect(simples) -> AssociatedPrimes:
    counts: Counter = Counter()
    order: list[LeftPrime] = []
    for S in simples:
        X = prime_of_simple(S)
        if X not in counts:
            order.append(X)
        counts[X] += 1
    order.sort(key=lambda X: (X.dim, X.witness.basis))
    primes = tuple(X.with_label(f"X{i + 1}") for i, X in enumerate(order))
    return AssociatedPrimes(primes, tuple(counts[X] for X in order))


def associated_left_primes(M: ModulePresentation, cap: int = DEFAULT_CAP,
                           choice: int | None = None) -> AssociatedPrimes:
    """As(M) with multiplicities, read off a socle decomposition."""
    if M.dim == 0:
        return AssociatedPrimes((), ())
    return _associated_cached(M, cap, choice)


@lru_cache(maxsize=1 << 12)
def _associated_cached(M, cap, choice) -> AssociatedPrimes:
    return _collect(socle_decomposition(M, choice, cap))


def primes_of_submodule(W: Submodule, cap: int = DEFAULT_CAP) -> AssociatedPrimes:
    """As(W) computed inside the ambient module of W."""
    if W.is_zero():
        return AssociatedPrimes((), ())
    simples = [S for S in simple_submodules(W.module, cap) if S <= W]
    return _collect(_greedy_socle_basis(simples, W.module))


def label_against(X: LeftPrime, reference: AssociatedPrimes) -> LeftPrime:
    """Give X the label of the isomorphic prime in ``reference``, if any."""
    for Y in reference.primes:
        if Y == X:
            return X.with_label(Y.label)
    return X.with_label("?")


def quotient_primes(M: ModulePresentation, N: Submodule, cap: int = DEFAULT_CAP) -> AssociatedPrimes:
    """As(M/N)."""
    return associated_left_primes(quotient(M, N).module, cap)


def _require_proper(M: ModulePresentation, N: Submodule) -> None:
    if N.dim == M.dim:
        raise ProperSubmoduleError()


def is_primary(M: ModulePresentation, N: Submodule, cap: int = DEFAULT_CAP) -> LeftPrime | None:
    """The unique prime X when N is X-primary in M, else None."""
    _require_proper(M, N)
    As = quotient_primes(M, N, cap)
    return As.primes[0] if len(As) == 1 else None


def is_irreducible(M: ModulePresentation, N: Submodule, cap: int = DEFAULT_CAP) -> bool:
    """u.dim(M/N) == 1."""
    _require_proper(M, N)
    return is_uniform(quotient(M, N).module, cap)
