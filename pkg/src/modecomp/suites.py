"""
Executable verification suites.

Each suite checks one structural result exhaustively on a single instance,
comparing the constructive code against the definitional lattice oracle.
When the instance carries a nonzero base submodule N only that N is
examined; otherwise every proper submodule serves as N in turn.

A suite ends with one of four verdicts:

``pass``            every check held;
``counterexample``  at least one check failed (payloads are replayable
                    instance documents);
``resource``        a cap was hit before the search finished;
``skipped``         the suite does not apply to the instance.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

import numpy as np
import sympy

from .corpus import Instance
from .decompose import (
    check_decomposition,
    complement,
    enumerate_complements,
    enumerate_maximal_shortest_primary,
    enumerate_maximal_shortest_uniform,
    enumerate_shortest_primary,
    enumerate_shortest_uniform,
    maximal_shortest_primary,
    maximal_shortest_uniform,
    refine_to_uniform,
)
from .errors import ResourceLimitError
from .fileformat import to_document
from .linalg import rank
from .modules import (
    DEFAULT_CAP,
    ModulePresentation,
    Submodule,
    enumerate_submodules,
    intersect,
    intersect_all,
    quotient,
    restrict,
)
from .oracle import LatticeOracle, sum_is_direct
from .spectrum import (
    associated_left_primes,
    is_essential,
    is_uniform,
    left_prime_of,
    primes_of_submodule,
    socle_decompositions,
    uniform_dimension,
)

LATTICE_CAP = 64

PASS = "pass"
COUNTEREXAMPLE = "counterexample"
RESOURCE = "resource"
SKIPPED = "skipped"


@dataclass(frozen=True)
class Counterexample:
    description: str
    document: dict


@dataclass(frozen=True)
class TheoremReport:
    suite: str
    instance: str
    verdict: str
    counterexamples: tuple[Counterexample, ...] = ()
    checks: int = 0
    constructed: int | None = None
    brute_force: int | None = None
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    def lines(self) -> list[str]:
        head = f"{self.suite:<16} {self.instance:<28} {self.verdict:<14} checks={self.checks}"
        if self.constructed is not None:
            head += f" constructed={self.constructed} brute_force={self.brute_force}"
        if self.note:
            head += f" ({self.note})"
        out = [head]
        for c in self.counterexamples:
            out.append(f"  ! {c.description}")
            out.append("    " + _one_line(c.document))
        return out


def _one_line(doc: dict) -> str:
    return json.dumps(doc, separators=(",", ":"))


class _Run:
    """Shared state for one suite on one instance."""

    def __init__(self, instance: Instance, cap: int, lattice_cap: int):
        self.M = instance.module
        self.base = instance.base
        self.cap = cap
        self.lattice_cap = lattice_cap
        self.checks = 0
        self.failures: list[Counterexample] = []
        self.constructed = None
        self.brute_force = None

    @cached_property
    def oracle(self) -> LatticeOracle:
        return LatticeOracle(self.M, self.cap, self.lattice_cap)

    @cached_property
    def lattice(self) -> list[Submodule]:
        return self.oracle.lattice

    def bases(self) -> list[Submodule]:
        """The submodules N to examine."""
        if not self.base.is_zero():
            return [self.base]
        return [N for N in self.lattice if N.dim < self.M.dim]

    def check(self, ok: bool, what: str, N: Submodule | None = None, parts=None) -> None:
        self.checks += 1
        if not ok:
            doc = to_document(self.M, self.base if N is None else N, parts)
            self.failures.append(Counterexample(what, doc))

    def count(self, constructed: int, brute: int) -> None:
        self.constructed = (self.constructed or 0) + constructed
        self.brute_force = (self.brute_force or 0) + brute


# -- suites ----------------------------------------------------------------


def _suite_multUV(r: _Run) -> None:
    """Every essential direct sum of uniform submodules of M/N carries the
    same multiset of primes, and every uniform submodule's prime occurs in it."""
    for N in r.bases():
        Q = quotient(r.M, N).module
        options = socle_decompositions(Q, r.cap)
        ref = associated_left_primes(Q, r.cap, choice=0)
        r.check(ref.total == len(options[0]) == uniform_dimension(Q, r.cap),
                "multiplicities do not sum to u.dim", N)
        for k in range(1, len(options)):
            other = associated_left_primes(Q, r.cap, choice=k)
            same = len(other) == len(ref) and all(other.mult(X) == ref.mult(X) for X in ref.primes)
            r.check(same, f"socle decomposition {k} gives a different prime multiset", N)
        for W in enumerate_submodules(Q, r.cap):
            if not W.is_zero() and is_uniform(restrict(W), r.cap):
                r.check(left_prime_of(W, r.cap) in ref,
                        f"uniform submodule {W!r} of M/N has a prime outside the socle's", N)


def _suite_Asdirs(r: _Run) -> None:
    """As of direct sums, of extensions, and directness of sums with disjoint As."""
    o = r.oracle
    zero = r.M.zero()
    nonzero = [A for A in r.lattice if not A.is_zero()]
    As = {A: o.associated(zero, A) for A in nonzero}
    for A in nonzero:
        r.check(len(primes_of_submodule(A, r.cap)) == len(As[A]),
                f"socle reading of As({A!r}) disagrees with the definition")
    whole = r.M.whole()
    for A, B in combinations(nonzero, 2):
        if intersect(A, B).is_zero():
            r.check(As[A + B] == As[A] | As[B], f"As({A!r} ⊕ {B!r}) is not As({A!r}) ∪ As({B!r})")
    for A in nonzero:
        if A != whole:
            r.check(As[whole] <= As[A] | o.associated(A), f"As(M) ⊄ As({A!r}) ∪ As(M/{A!r})")
    for A, B in combinations(nonzero, 2):
        if not As[A] & As[B]:
            r.check(sum_is_direct([A, B], r.M), f"{A!r} + {B!r} not direct despite disjoint As")
    for A, B, C in combinations(nonzero, 3):
        if not (As[A] & As[B] or As[A] & As[C] or As[B] & As[C]):
            r.check(sum_is_direct([A, B, C], r.M),
                    f"{A!r} + {B!r} + {C!r} not direct despite pairwise disjoint As")


def _suite_intprim(r: _Run) -> None:
    """The intersection of X-primary submodules is X-primary."""
    o = r.oracle
    by_prime: dict[int, list[Submodule]] = {}
    for K in r.lattice:
        if o.is_primary(K):
            (x,) = o.associated(K)
            by_prime.setdefault(x, []).append(K)
    for x, group in sorted(by_prime.items()):
        for A, B in combinations(group, 2):
            D = intersect(A, B)
            r.check(o.associated(D) == {x}, f"{A!r} ∩ {B!r} is not primary for class {x}", D)


def _suite_RlufAss(r: _Run) -> None:
    """Primes of primary decompositions versus As(M/N)."""
    o = r.oracle
    for N in r.bases():
        ref = o.associated(N)
        decs = o.decompositions(N, "primary")
        r.check(bool(decs), "no primary decomposition exists", N)
        for D in decs:
            xs = [next(iter(o.associated(q))) for q in D.parts]
            parts = D.parts
            r.check(ref <= set(xs), "As(M/N) not covered by the parts' primes", N, parts)
            if D.is_irredundant:
                r.check(ref == set(xs), "irredundant decomposition with extra primes", N, parts)
            if D.is_shortest:
                r.check(len(set(xs)) == len(xs) == len(ref),
                        "shortest decomposition with repeated primes or wrong length", N, parts)
            r.check(D.is_shortest == (len(parts) == len(ref)),
                    "shortness does not match r = |As(M/N)|", N, parts)


def _suite_sbudimMN(r: _Run) -> None:
    """s >= u.dim(M/N) for uniform decompositions, with equality iff shortest."""
    o = r.oracle
    for N in r.bases():
        n = uniform_dimension(quotient(r.M, N).module, r.cap)
        r.check(n == o.udim(r.M.whole(), N), "u.dim disagrees with the definitional count", N)
        decs = o.decompositions(N, "uniform")
        r.check(bool(decs), "no uniform decomposition exists", N)
        for D in decs:
            r.check(len(D) >= n, "uniform decomposition shorter than u.dim", N, D.parts)
            r.check(D.is_shortest == (len(D) == n), "shortness does not match s = u.dim", N, D.parts)
            if D.is_shortest:
                r.check(D.is_irredundant and D.is_primary,
                        "shortest uniform decomposition is not an irredundant primary one", N, D.parts)


def _suite_Csminprd(r: _Run) -> None:
    """The greedy construction is a maximal shortest primary decomposition."""
    o = r.oracle
    for N in r.bases():
        D = maximal_shortest_primary(r.M, N, cap=r.cap)
        top = o.decompositions(N, "maximal_shortest_primary")
        r.check(D in top, "greedy primary decomposition is not maximal shortest", N, D.parts)
        classes = [o.associated(q) for q in D.parts]
        r.check(all(len(c) == 1 for c in classes) and len(set(classes)) == len(classes),
                "parts are not primary for distinct primes", N, D.parts)
        r.check(check_decomposition(r.M, N, D.parts, r.cap).confirms(D),
                "check_decomposition rejects a claimed flag", N, D.parts)


def _suite_UiCipr(r: _Run) -> None:
    """The greedy construction is a maximal shortest uniform decomposition."""
    o = r.oracle
    for N in r.bases():
        D = maximal_shortest_uniform(r.M, N, cap=r.cap)
        top = o.decompositions(N, "maximal_shortest_uniform")
        r.check(D in top, "greedy uniform decomposition is not maximal shortest", N, D.parts)
        r.check(all(o.has_uniform_quotient(q) for q in D.parts), "a part has non-uniform quotient", N, D.parts)
        r.check(o.is_irredundant(N, D.parts), "greedy uniform decomposition is redundant", N, D.parts)
        r.check(check_decomposition(r.M, N, D.parts, r.cap).confirms(D),
                "check_decomposition rejects a claimed flag", N, D.parts)


def _set_equality(r: _Run, kind: str, enum_all, enum_max) -> None:
    o = r.oracle
    for N in r.bases():
        for label, mine, theirs in (
            ("shortest", enum_all(r.M, N, r.cap), o.decompositions(N, f"shortest_{kind}")),
            ("maximal shortest", enum_max(r.M, N, r.cap), o.decompositions(N, f"maximal_shortest_{kind}")),
        ):
            r.count(len(mine), len(theirs))
            a, b = set(mine), set(theirs)
            for D in sorted(a - b):
                r.check(False, f"constructed {label} {kind} decomposition unknown to brute force", N, D.parts)
            for D in sorted(b - a):
                r.check(False, f"brute-force {label} {kind} decomposition missed by construction", N, D.parts)
            r.check(a == b, f"{label} {kind} sets differ", N)
            if label == "shortest":
                flagged = {D for D in mine if D.is_maximal}
                r.check(flagged == {D for D in theirs if D.is_maximal}, "maximal flags differ", N)


def _suite_clminprdec(r: _Run) -> None:
    """Construction enumerates exactly the (maximal) shortest primary decompositions."""
    _set_equality(r, "primary", enumerate_shortest_primary, enumerate_maximal_shortest_primary)


def _suite_clstunid(r: _Run) -> None:
    """Construction enumerates exactly the (maximal) shortest uniform decompositions."""
    _set_equality(r, "uniform", enumerate_shortest_uniform, enumerate_maximal_shortest_uniform)


def _suite_1clstun(r: _Run) -> None:
    """In a shortest uniform decomposition each prime X occurs mult(X) times."""
    o = r.oracle
    for N in r.bases():
        pi = quotient(r.M, N)
        summands = socle_decompositions(pi.module, r.cap)[0]
        mult = Counter(o.prime_class(pi.preimage(S), N) for S in summands)
        for D in o.decompositions(N, "shortest_uniform"):
            seen = Counter(next(iter(o.associated(q))) for q in D.parts)
            r.check(seen == mult, "part primes do not match the multiplicities of M/N", N, D.parts)


def _suite_retpdu(r: _Run) -> None:
    """Every primary decomposition refines to a uniform one block by block."""
    o = r.oracle
    for N in r.bases():
        for D in o.decompositions(N, "primary"):
            refined, blocks = refine_to_uniform(r.M, D, r.cap)
            parts = refined.parts
            r.check(intersect_all(list(parts), r.M) == N, "refinement does not intersect to N", N, parts)
            r.check(all(o.has_uniform_quotient(q) for q in parts), "refined part has non-uniform quotient",
                    N, parts)
            r.check(sorted(k for b in blocks for k in b) == list(range(len(parts))),
                    "blocks do not partition the refined parts", N, parts)
            for Mj, block in zip(D.parts, blocks):
                r.check(intersect_all([parts[k] for k in block], r.M) == Mj,
                        f"block does not recover {Mj!r}", N, D.parts)
                r.check(all(o.associated(parts[k]) == o.associated(Mj) for k in block),
                        f"block of {Mj!r} changes the prime", N, D.parts)


def _polynomial_at(coeffs, A: np.ndarray, p: int) -> np.ndarray:
    out = np.zeros_like(A)
    eye = np.eye(A.shape[0], dtype=np.int64)
    for c in coeffs:  # highest degree first
        out = (out @ A + int(c) * eye) % p
    return out


def _charpoly(A: np.ndarray, p: int) -> sympy.Poly:
    x = sympy.Symbol("x")
    return sympy.Poly(sympy.Matrix(A.tolist()).charpoly(x).as_expr(), x, modulus=p)


def _suite_comm_crosscheck(r: _Run) -> None:
    """For a module over F_p[x], As matches the irreducible factors of the
    characteristic polynomial: one prime per distinct factor q with
    multiplicity dim ker q(A) / deg q."""
    M = r.M
    A = M.actions[0]
    _, factors = _charpoly(A, M.p).factor_list()
    expected = Counter()
    for q, _e in factors:
        coeffs = [c % M.p for c in q.all_coeffs()]
        kernel_dim = M.dim - rank(_polynomial_at(coeffs, A, M.p), M.p)
        expected[tuple(coeffs)] = kernel_dim // q.degree()
    for N in r.bases():
        if not N.is_zero():
            continue
        As = associated_left_primes(M, r.cap)
        r.check(len(As) == len(expected), "number of primes differs from the number of irreducible factors")
        got = Counter()
        for X, c in zip(As.primes, As.counts):
            q = _charpoly(X.simple.actions[0], M.p)
            got[tuple(c_ % M.p for c_ in q.all_coeffs())] += c
        r.check(got == expected, "prime multiplicities do not match the factorization")
    r.count(len(associated_left_primes(M, r.cap)), len(expected))


def _suite_essential(r: _Run) -> None:
    """The socle test for essentiality agrees with the definition."""
    o = r.oracle
    whole = r.M.whole()
    for N in r.bases():
        pi = quotient(r.M, N)
        for A in o.above(N):
            r.check(is_essential(pi.image(A), pi.module, r.cap) == o.is_essential(A, whole, N),
                    f"essentiality of {A!r} over N disagrees with the definition", N)


def _suite_lprime(r: _Run) -> None:
    """Equality of left primes (socle isomorphism) agrees with the existence
    of isomorphic essential submodules, over uniform subquotients U/N."""
    o = r.oracle
    items = []
    for N in r.bases():
        pi = quotient(r.M, N)
        for U in o.above(N):
            if o.is_uniform(U, N):
                items.append((U, N, left_prime_of(pi.image(U), r.cap)))
    for (U1, N1, X1), (U2, N2, X2) in combinations(items, 2):
        same = o.prime_class(U1, N1) == o.prime_class(U2, N2)
        r.check(same == (X1 == X2), f"{U1!r}/{N1!r} vs {U2!r}/{N2!r}: prime equality disagrees", N1)


def _suite_complement(r: _Run) -> None:
    """Greedy complements are complements, and are among all complements."""
    o = r.oracle
    whole = r.M.whole()
    zero = r.M.zero()
    for N in r.bases():
        for L in r.lattice:
            if not intersect(N, L).is_zero():
                continue
            C = complement(r.M, N, L)
            ok = L <= C and intersect(N, C).is_zero()
            ok = ok and o.is_essential(N + C, whole, zero)
            ok = ok and not any(C.dim < D.dim and C <= D and intersect(D, N).is_zero() for D in r.lattice)
            r.check(ok, f"greedy complement to N containing {L!r} violates the contract", N, [C])
            r.check(C in enumerate_complements(r.M, N, L, r.cap),
                    "greedy complement missing from the enumeration", N, [C])


SUITES = {
    "multUV": _suite_multUV,
    "Asdirs": _suite_Asdirs,
    "intprim": _suite_intprim,
    "RlufAss": _suite_RlufAss,
    "sbudimMN": _suite_sbudimMN,
    "Csminprd": _suite_Csminprd,
    "clminprdec": _suite_clminprdec,
    "UiCipr": _suite_UiCipr,
    "clstunid": _suite_clstunid,
    "1clstun": _suite_1clstun,
    "retpdu": _suite_retpdu,
    "comm-crosscheck": _suite_comm_crosscheck,
    "essential": _suite_essential,
    "lprime": _suite_lprime,
    "complement": _suite_complement,
}


def _applies(suite: str, M: ModulePresentation) -> str:
    if suite == "comm-crosscheck" and M.ngens != 1:
        return "needs exactly one generator"
    return ""


def verify_suite(instance: Instance | ModulePresentation, suite: str, cap: int = DEFAULT_CAP,
                 lattice_cap: int = LATTICE_CAP) -> TheoremReport:
    """Run one suite exhaustively on one instance."""
    if isinstance(instance, ModulePresentation):
        instance = Instance(instance)
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; known: {', '.join(SUITES)}")
    name = instance.label or "unnamed"
    reason = _applies(suite, instance.module)
    if reason:
        return TheoremReport(suite, name, SKIPPED, note=reason)
    r = _Run(instance, cap, lattice_cap)
    try:
        SUITES[suite](r)
    except ResourceLimitError as exc:
        return TheoremReport(suite, name, RESOURCE, tuple(r.failures), r.checks, note=str(exc))
    verdict = COUNTEREXAMPLE if r.failures else PASS
    return TheoremReport(suite, name, verdict, tuple(r.failures), r.checks, r.constructed, r.brute_force)


def run_suites(instances, suites=None, cap: int = DEFAULT_CAP,
               lattice_cap: int = LATTICE_CAP) -> list[TheoremReport]:
    suites = list(SUITES) if suites is None else list(suites)
    return [verify_suite(inst, s, cap, lattice_cap) for inst in instances for s in suites]


def overall_verdict(reports) -> str:
    verdicts = {rep.verdict for rep in reports}
    if COUNTEREXAMPLE in verdicts:
        return COUNTEREXAMPLE
    if RESOURCE in verdicts:
        return RESOURCE
    return PASS


def format_reports(reports) -> str:
    """Plain-text report followed by a key=value summary block."""
    reports = list(reports)
    lines = []
    for rep in reports:
        lines.extend(rep.lines())
    tally = Counter(rep.verdict for rep in reports)
    lines.append("")
    lines.append(f"reports={len(reports)}")
    for v in (PASS, COUNTEREXAMPLE, RESOURCE, SKIPPED):
        lines.append(f"{v}={tally.get(v, 0)}")
    lines.append(f"checks={sum(rep.checks for rep in reports)}")
    lines.append(f"counterexamples={sum(len(rep.counterexamples) for rep in reports)}")
    lines.append(f"verdict={overall_verdict(reports)}")
    return "\n".join(lines) + "\n"
