"""
Construction and exhaustive enumeration of shortest primary and shortest
uniform decompositions N = N_1 ∩ ... ∩ N_s of a submodule N of M.

All work happens in the factor module Q = M/N and is pulled back along the
projection at the end.  A typical maximal decomposition is built from an
essential direct sum of uniform submodules of Q:

* uniform kind: for each summand U_i take a complement C_i to U_i that
  contains the other summands; N = ∩ pi^{-1}(C_i);
* primary kind: first merge summands with the same left prime into blocks
  W_i, then do the same with the blocks.

Enumerating every choice of summands, complements and intermediate parts
(K with Σ_{j≠i} W_j ⊆ K ⊆ C_i and the right quotient type) yields every
shortest decomposition of the given kind.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import cached_property, lru_cache
from itertools import combinations, product
from typing import Iterator, Sequence

from .errors import PreconditionError, ProperSubmoduleError, ResourceLimitError, ShapeError
from .modules import (
    DEFAULT_CAP,
    ModulePresentation,
    Submodule,
    closure,
    enumerate_submodules,
    intersect,
    intersect_all,
    quotient,
    sum_all,
)
from .spectrum import (
    AssociatedPrimes,
    LeftPrime,
    associated_left_primes,
    label_against,
    prime_of_simple,
    simple_submodules,
    socle_decomposition,
    uniform_dimension,
)

PRIMARY = "primary"
UNIFORM = "uniform"


@dataclass(frozen=True, eq=False)
class Decomposition:
    """N = ∩ parts, with parts kept in canonical order.

    Two decompositions are equal when they have the same base and the same
    set of parts; part order carries no meaning.
    """

    ambient: ModulePresentation
    base: Submodule
    parts: tuple[Submodule, ...]
    part_primes: tuple[AssociatedPrimes, ...]
    kind: str = PRIMARY
    is_primary: bool = False
    is_uniform: bool = False
    is_irredundant: bool = False
    is_shortest: bool = False
    is_maximal: bool = False

    @cached_property
    def key(self):
        return (self.base.basis, tuple(sorted(q.sort_key() for q in self.parts)))

    def __eq__(self, other):
        if not isinstance(other, Decomposition):
            return NotImplemented
        return self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __lt__(self, other):
        return self.key < other.key

    def __len__(self):
        return len(self.parts)

    @property
    def primes(self) -> tuple[LeftPrime, ...]:
        """The single prime of each part (primary decompositions only)."""
        return tuple(P.primes[0] for P in self.part_primes if len(P) == 1)

    def flags(self) -> dict[str, bool]:
        return {"primary": self.is_primary, "uniform": self.is_uniform,
                "irredundant": self.is_irredundant, "shortest": self.is_shortest,
                "maximal": self.is_maximal}

    def __repr__(self):
        return "{" + ", ".join(map(repr, self.parts)) + "}"


def _require_proper(M: ModulePresentation, N: Submodule) -> None:
    if N.module != M:
        raise ShapeError("N is not a submodule of M")
    if N.dim == M.dim:
        raise ProperSubmoduleError()


class _Workspace:
    """Cached lattice data for one pair (M, N), computed inside Q = M/N."""

    def __init__(self, M: ModulePresentation, N: Submodule, cap: int):
        _require_proper(M, N)
        self.M, self.N, self.cap = M, N, cap
        self.pi = quotient(M, N)
        self.Q = self.pi.module
        self.As = associated_left_primes(self.Q, cap)
        self.simples = simple_submodules(self.Q, cap)
        self.simple_class = {S: self._class_index(S) for S in self.simples}
        self._quotient_cache: dict[Submodule, AssociatedPrimes] = {}
        self.budget = 0

    def _class_index(self, S: Submodule) -> int:
        X = prime_of_simple(S)
        return next(i for i, Y in enumerate(self.As.primes) if Y == X)

    @cached_property
    def lattice(self) -> list[Submodule]:
        return enumerate_submodules(self.Q, self.cap)

    def spend(self, n: int = 1) -> None:
        self.budget += n
        if self.budget > self.cap:
            raise ResourceLimitError(f"enumeration exceeded cap {self.cap}", bound=self.cap)

    def sub_classes(self, W: Submodule) -> frozenset[int]:
        return frozenset(self.simple_class[S] for S in self.simples if S <= W)

    def is_uniform_sub(self, W: Submodule) -> bool:
        return sum(1 for S in self.simples if S <= W) == 1

    def quotient_primes(self, K: Submodule) -> AssociatedPrimes:
        """As(Q/K), labelled against As(Q)."""
        hit = self._quotient_cache.get(K)
        if hit is None:
            raw = associated_left_primes(quotient(self.Q, K).module, self.cap)
            hit = AssociatedPrimes(tuple(label_against(X, self.As) for X in raw.primes), raw.counts)
            self._quotient_cache[K] = hit
        return hit

    def is_primary_for(self, K: Submodule, i: int) -> bool:
        P = self.quotient_primes(K)
        return len(P) == 1 and P.primes[0] == self.As.primes[i]

    def has_uniform_quotient(self, K: Submodule) -> bool:
        return K.dim < self.Q.dim and self.quotient_primes(K).total == 1

    def complements(self, W: Submodule, L: Submodule) -> list[Submodule]:
        cands = [C for C in self.lattice if L <= C and intersect(C, W).is_zero()]
        return [C for C in cands if not any(C.dim < D.dim and C <= D for D in cands)]

    def lift(self, parts: Sequence[Submodule]) -> tuple[Submodule, ...]:
        return tuple(self.pi.preimage(K) for K in parts)

    def part_primes_in_q(self, parts: Sequence[Submodule]) -> tuple[AssociatedPrimes, ...]:
        return tuple(self.quotient_primes(K) for K in parts)

    def make(self, parts_q: Sequence[Submodule], *, kind: str, maximal: bool) -> Decomposition:
        pairs = sorted(zip(self.lift(parts_q), self.part_primes_in_q(parts_q)),
                       key=lambda t: t[0].sort_key())
        parts = tuple(a for a, _ in pairs)
        primes = tuple(b for _, b in pairs)
        return Decomposition(
            self.M, self.N, parts, primes, kind,
            is_primary=all(len(P) == 1 for P in primes),
            is_uniform=all(P.total == 1 for P in primes),
            is_irredundant=True,
            is_shortest=True,
            is_maximal=maximal,
        )


def complement(M: ModulePresentation, N: Submodule, L: Submodule | None = None) -> Submodule:
    """A complement to N containing L: maximal C ⊇ L with N ∩ C = 0.

    Greedy scan over the nonzero vectors of M in lexicographic order; a
    vector rejected once stays rejected as C only grows, so one pass is
    enough.
    """
    C = M.zero() if L is None else L
    if not intersect(N, C).is_zero():
        raise PreconditionError("complement requires N ∩ L = 0")
    if N.is_zero():
        return M.whole()
    for v in M.vectors(projective=True):
        if v in C:
            continue
        bigger = C + closure(M, [v])
        if intersect(bigger, N).is_zero():
            C = bigger
    return C


def enumerate_complements(M: ModulePresentation, N: Submodule, L: Submodule | None = None,
                          cap: int = DEFAULT_CAP) -> list[Submodule]:
    """Every complement to N containing L, in canonical order."""
    L = M.zero() if L is None else L
    if not intersect(N, L).is_zero():
        raise PreconditionError("complement requires N ∩ L = 0")
    lattice = enumerate_submodules(M, cap)
    cands = [C for C in lattice if L <= C and intersect(C, N).is_zero()]
    return [C for C in cands if not any(C.dim < D.dim and C <= D for D in cands)]


def _blocks(ws: _Workspace, summands: Sequence[Submodule]) -> list[Submodule]:
    """Group simple summands into isotypic blocks W_i, in the order of As(Q)."""
    groups: list[list[Submodule]] = [[] for _ in ws.As.primes]
    for U in summands:
        groups[ws.simple_class[U]].append(U)
    return [sum_all(g, ws.Q) for g in groups]


def _greedy_maximal(ws: _Workspace, summands: Sequence[Submodule], kind: str) -> Decomposition:
    Q = ws.Q
    pieces = _blocks(ws, summands) if kind == PRIMARY else list(summands)
    parts_q = []
    for i, W in enumerate(pieces):
        others = sum_all([X for j, X in enumerate(pieces) if j != i], Q)
        parts_q.append(complement(Q, W, others))
    return ws.make(parts_q, kind=kind, maximal=True)


def maximal_shortest_primary(M: ModulePresentation, N: Submodule, choice: int | None = None,
                             cap: int = DEFAULT_CAP) -> Decomposition:
    """A maximal shortest primary decomposition of N in M.

    Without ``choice`` the socle decomposition and the complements are the
    deterministic greedy ones.  ``choice=k`` returns the k-th entry of
    :func:`enumerate_maximal_shortest_primary`.
    """
    if choice is not None:
        return _pick(enumerate_maximal_shortest_primary(M, N, cap), choice)
    ws = _Workspace(M, N, cap)
    return _greedy_maximal(ws, socle_decomposition(ws.Q, cap=cap), PRIMARY)


def maximal_shortest_uniform(M: ModulePresentation, N: Submodule, choice: int | None = None,
                             cap: int = DEFAULT_CAP) -> Decomposition:
    """A maximal shortest uniform decomposition of N in M (see the primary variant)."""
    if choice is not None:
        return _pick(enumerate_maximal_shortest_uniform(M, N, cap), choice)
    ws = _Workspace(M, N, cap)
    return _greedy_maximal(ws, socle_decomposition(ws.Q, cap=cap), UNIFORM)


def _pick(options: list[Decomposition], choice: int) -> Decomposition:
    if not 0 <= choice < len(options):
        raise PreconditionError(f"choice {choice} out of range: {len(options)} decompositions")
    return options[choice]


def _summand_tuples(ws: _Workspace, kind: str) -> Iterator[tuple[Submodule, ...]]:
    """Direct, essential families (W_1, ..., W_s) of Q that every enumeration starts from.

    primary: W_i nonzero with As(W_i) = {X_i}, one per associated prime;
    uniform: u.dim(Q) uniform submodules (unordered).
    """
    Q = ws.Q
    soc = sum_all(ws.simples, Q)
    nonzero = [W for W in ws.lattice if not W.is_zero()]
    if kind == PRIMARY:
        cands = [[W for W in nonzero if ws.sub_classes(W) == {i}] for i in range(len(ws.As))]
        families = product(*cands)
    else:
        n = ws.As.total
        families = combinations([W for W in nonzero if ws.is_uniform_sub(W)], n)
    for fam in families:
        ws.spend()
        total = sum_all(fam, Q)
        if total.dim == sum(W.dim for W in fam) and soc <= total:
            yield fam


def _enumerate(M: ModulePresentation, N: Submodule, kind: str, maximal: bool, cap: int) -> list[Decomposition]:
    ws = _Workspace(M, N, cap)
    Q = ws.Q
    if kind == PRIMARY:
        def fits(K, i):
            return ws.is_primary_for(K, i)
    else:
        def fits(K, i):
            return ws.has_uniform_quotient(K)

    comp_cache: dict[tuple[Submodule, Submodule], list[Submodule]] = {}
    found: set[frozenset[Submodule]] = set()
    for fam in _summand_tuples(ws, kind):
        others = [sum_all([X for j, X in enumerate(fam) if j != i], Q) for i in range(len(fam))]
        comps = []
        for W, S in zip(fam, others):
            key = (W, S)
            if key not in comp_cache:
                comp_cache[key] = ws.complements(W, S)
            comps.append(comp_cache[key])
        for cs in product(*comps):
            ws.spend()
            if maximal:
                found.add(frozenset(cs))
                continue
            middles = []
            for i, (S, C) in enumerate(zip(others, cs)):
                middles.append([K for K in ws.lattice if S <= K <= C and fits(K, i if kind == PRIMARY else 0)])
            for parts in product(*middles):
                ws.spend()
                found.add(frozenset(parts))
    out = [ws.make(sorted(parts), kind=kind, maximal=maximal) for parts in found]
    return sorted(out)


def enumerate_shortest_primary(M: ModulePresentation, N: Submodule, cap: int = DEFAULT_CAP) -> list[Decomposition]:
    """All shortest primary decompositions of N in M, canonically ordered."""
    return _with_maximal_flags(_enumerate(M, N, PRIMARY, False, cap),
                               _enumerate(M, N, PRIMARY, True, cap))


def enumerate_maximal_shortest_primary(M: ModulePresentation, N: Submodule,
                                       cap: int = DEFAULT_CAP) -> list[Decomposition]:
    return _enumerate(M, N, PRIMARY, True, cap)


def enumerate_shortest_uniform(M: ModulePresentation, N: Submodule, cap: int = DEFAULT_CAP) -> list[Decomposition]:
    """All shortest uniform decompositions of N in M, canonically ordered."""
    return _with_maximal_flags(_enumerate(M, N, UNIFORM, False, cap),
                               _enumerate(M, N, UNIFORM, True, cap))


def enumerate_maximal_shortest_uniform(M: ModulePresentation, N: Submodule,
                                       cap: int = DEFAULT_CAP) -> list[Decomposition]:
    return _enumerate(M, N, UNIFORM, True, cap)


def _with_maximal_flags(every: list[Decomposition], maximal: list[Decomposition]) -> list[Decomposition]:
    top = set(maximal)
    return [replace(D, is_maximal=D in top) for D in every]


def refine_to_uniform(M: ModulePresentation, D: Decomposition,
                      cap: int = DEFAULT_CAP) -> tuple[Decomposition, list[list[int]]]:
    """Refine a primary decomposition into a uniform one.

    Each part N_i is replaced by a (greedy) maximal shortest uniform
    decomposition of N_i in M.  Returns the combined decomposition and the
    index blocks I_1, ..., I_s (0-based, into the returned parts) with
    N_i = ∩_{k in I_i} part_k.
    """
    if not D.parts or intersect_all(list(D.parts), M) != D.base:
        raise PreconditionError("refine_to_uniform expects a decomposition of its base")
    for Ni in D.parts:
        if Ni.dim == M.dim or len(associated_left_primes(quotient(M, Ni).module, cap)) != 1:
            raise PreconditionError("refine_to_uniform expects a primary decomposition")
    pieces: list[Submodule] = []
    blocks: list[list[int]] = []
    for Ni in D.parts:
        sub = _uniform_pieces(M, Ni, cap)
        blocks.append(list(range(len(pieces), len(pieces) + len(sub))))
        pieces.extend(sub)
    ref_primes = associated_left_primes(quotient(M, D.base).module, cap)
    primes = tuple(_labelled_quotient_primes(M, K, ref_primes, cap) for K in pieces)
    refined = Decomposition(
        M, D.base, tuple(pieces), primes, UNIFORM,
        is_primary=True, is_uniform=True,
        is_irredundant=_irredundant(M, D.base, pieces),
        is_shortest=len(pieces) == uniform_dimension(quotient(M, D.base).module, cap),
        is_maximal=False,
    )
    return refined, blocks


@lru_cache(maxsize=1 << 12)
def _uniform_pieces(M: ModulePresentation, Ni: Submodule, cap: int) -> tuple[Submodule, ...]:
    return maximal_shortest_uniform(M, Ni, cap=cap).parts


def _labelled_quotient_primes(M, K, reference: AssociatedPrimes, cap) -> AssociatedPrimes:
    raw = associated_left_primes(quotient(M, K).module, cap)
    return AssociatedPrimes(tuple(label_against(X, reference) for X in raw.primes), raw.counts)


def _cofactors(M: ModulePresentation, parts: Sequence[Submodule]) -> list[Submodule]:
    return [intersect_all([q for j, q in enumerate(parts) if j != i], M) for i in range(len(parts))]


def _irredundant(M, N, parts) -> bool:
    return all(U != N for U in _cofactors(M, parts))


@dataclass(frozen=True)
class DecompositionReport:
    """Everything :func:`check_decomposition` verifies about N = ∩ parts."""

    intersects_to_base: bool
    part_primes: tuple[AssociatedPrimes, ...]
    quotient_primes: AssociatedPrimes
    udim: int
    is_primary: bool
    is_irredundant: bool
    cofactors: tuple[Submodule, ...]
    cofactors_direct: bool
    is_shortest_primary: bool
    is_uniform: bool
    is_shortest_uniform: bool
    is_maximal_primary: bool | None
    is_maximal_uniform: bool | None

    def confirms(self, D: Decomposition) -> bool:
        """True when every flag claimed by ``D`` holds."""
        uniform = D.kind == UNIFORM
        claims = [
            (D.is_primary, self.is_primary),
            (D.is_uniform, self.is_uniform),
            (D.is_irredundant, self.is_irredundant),
            (D.is_shortest, self.is_shortest_uniform if uniform else self.is_shortest_primary),
            (D.is_maximal, self.is_maximal_uniform if uniform else self.is_maximal_primary),
        ]
        return self.intersects_to_base and all(bool(have) for claimed, have in claims if claimed)


def check_decomposition(M: ModulePresentation, N: Submodule, parts: Sequence[Submodule],
                        cap: int = DEFAULT_CAP) -> DecompositionReport:
    """Verify the defining properties of N = N_1 ∩ ... ∩ N_s.

    Maximality is only decided when the submodule lattice of M fits within
    ``cap``; otherwise the two maximality fields are None.
    """
    _require_proper(M, N)
    parts = list(parts)
    if not parts:
        raise PreconditionError("a decomposition needs at least one part")
    for q in parts:
        if not N <= q:
            raise PreconditionError(f"part {q!r} does not contain N")
    ref = associated_left_primes(quotient(M, N).module, cap)
    udim = ref.total
    pp = tuple(_labelled_quotient_primes(M, q, ref, cap) if q.dim < M.dim else AssociatedPrimes((), ())
               for q in parts)
    meets = intersect_all(parts, M) == N
    primary = meets and all(len(P) == 1 for P in pp)
    uniform = meets and all(P.total == 1 for P in pp)
    cof = tuple(_cofactors(M, parts))
    irredundant = meets and all(U != N for U in cof)
    pi = quotient(M, N)
    images = [pi.image(U) for U in cof]
    direct = sum_all(images, pi.module).dim == sum(W.dim for W in images)
    short_p = primary and len(parts) == len(ref)
    short_u = uniform and len(parts) == udim

    max_p = max_u = None
    try:
        lattice = enumerate_submodules(M, cap)
    except ResourceLimitError:
        lattice = None
    if lattice is not None:
        max_p = short_p and _no_single_enlargement(M, N, parts, pp, lattice, cap, PRIMARY)
        max_u = short_u and _no_single_enlargement(M, N, parts, pp, lattice, cap, UNIFORM)
    return DecompositionReport(meets, pp, ref, udim, primary, irredundant, cof, direct,
                               short_p, uniform, short_u, max_p, max_u)


def _no_single_enlargement(M, N, parts, pp, lattice, cap, kind) -> bool:
    # if a partwise larger shortest decomposition exists, enlarging a single
    # part already gives one, so checking one part at a time is enough
    for i, q in enumerate(parts):
        rest = intersect_all([r for j, r in enumerate(parts) if j != i], M)
        for K in lattice:
            if K.dim <= q.dim or K.dim == M.dim or not q <= K:
                continue
            if intersect(K, rest) != N:
                continue
            P = associated_left_primes(quotient(M, K).module, cap)
            if kind == PRIMARY and len(P) == 1 and P.primes[0] == pp[i].primes[0]:
                return False
            if kind == UNIFORM and P.total == 1:
                return False
    return True
