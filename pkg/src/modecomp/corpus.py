"""
Named fixtures and a reproducible corpus of small modules.

The three named fixtures are over F_2:

* B, "local":  F_2[x]/(x^2) as a module over itself (x sends e2 to e1);
* C, "split":  F_2 x F_2, one generator diag(1, 0);
* D, "mixed":  F_2[x]/(x^2) ⊕ F_2, x sends e2 to e1 and kills e1, e3.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ResourceLimitError
from .linalg import rank, rref
from .modules import DEFAULT_CAP, ModulePresentation, Submodule, closure, enumerate_submodules


@dataclass(frozen=True)
class Instance:
    """A module together with a base submodule N (zero by default)."""

    module: ModulePresentation
    base: Submodule | None = None

    def __post_init__(self):
        if self.base is None:
            object.__setattr__(self, "base", self.module.zero())

    @property
    def label(self) -> str:
        return self.module.label


@dataclass(frozen=True)
class CorpusLimits:
    primes: tuple[int, ...] = (2, 3)
    max_dim: int = 3
    max_generators: int = 2
    random_count: int = 12
    lattice_cap: int = 64
    scan_cap: int = DEFAULT_CAP


def _module(p, mats, label, dim=None) -> ModulePresentation:
    return ModulePresentation.from_matrices(p, mats, dim=dim, label=label)


def fixture_B() -> ModulePresentation:
    return _module(2, [[[0, 1], [0, 0]]], "fixture-B")


def fixture_C() -> ModulePresentation:
    return _module(2, [[[1, 0], [0, 0]]], "fixture-C")


def fixture_D() -> ModulePresentation:
    return _module(2, [[[0, 1, 0], [0, 0, 0], [0, 0, 0]]], "fixture-D")


def companion_matrix(p: int, coeffs) -> np.ndarray:
    """Multiplication by x on F_p[x]/(f) in the basis 1, x, ..., x^(n-1).

    ``coeffs`` lists f from the constant term up; f must be monic.
    """
    coeffs = [c % p for c in coeffs]
    n = len(coeffs) - 1
    if n < 1 or coeffs[-1] != 1:
        raise ValueError("f must be monic of degree at least 1")
    A = np.zeros((n, n), dtype=np.int64)
    for i in range(n - 1):
        A[i + 1, i] = 1
    A[:, n - 1] = [(-c) % p for c in coeffs[:-1]]
    return A


def polynomial_module(p: int, coeffs, label: str | None = None) -> ModulePresentation:
    """The regular module of the commutative algebra F_p[x]/(f)."""
    if label is None:
        label = "Fp[x]/(" + poly_str(coeffs) + f") p={p}"
    return _module(p, [companion_matrix(p, coeffs)], label)


def poly_str(coeffs) -> str:
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if not c:
            continue
        mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
        terms.append(("" if c == 1 and k else str(c)) + mono)
    return "+".join(terms) or "0"


# f in {x^2, x^2+x, x^2+x+1, x^3+x} over F_2, plus two quadratics over F_3
COMMUTATIVE_CASES = (
    (2, (0, 0, 1)),
    (2, (0, 1, 1)),
    (2, (1, 1, 1)),
    (2, (0, 1, 0, 1)),
    (3, (1, 0, 1)),
    (3, (2, 0, 1)),
)


def upper_triangular_modules(p: int = 2) -> list[ModulePresentation]:
    """The natural and the regular module of the upper triangular 2x2 matrices."""
    e11 = [[1, 0], [0, 0]]
    e12 = [[0, 1], [0, 0]]
    natural = _module(p, [e11, e12], f"T2-natural p={p}")
    # left multiplication on the basis E11, E12, E22 of T2
    l11 = [[1, 0, 0], [0, 1, 0], [0, 0, 0]]
    l12 = [[0, 0, 0], [0, 0, 1], [0, 0, 0]]
    regular = _module(p, [l11, l12], f"T2-regular p={p}")
    return [natural, regular]


def trivial_module(p: int, m: int) -> ModulePresentation:
    """F_p^m with no generators: every subspace is a submodule."""
    return ModulePresentation(p, m, (), f"trivial p={p} m={m}")


def fixtures() -> list[ModulePresentation]:
    return [fixture_B(), fixture_C(), fixture_D()]


def _random_matrix(rng: np.random.Generator, p: int, m: int) -> np.ndarray:
    style = rng.integers(0, 4)
    A = rng.integers(0, p, size=(m, m)) * (rng.random((m, m)) < 0.6)
    if style == 0:
        A = np.triu(A, 1)
    elif style == 1:
        A = np.triu(A)
    elif style == 2:
        A = np.diag(np.diag(A))
    return A.astype(np.int64) % p


def _random_invertible(rng: np.random.Generator, p: int, m: int) -> np.ndarray:
    while True:
        P = rng.integers(0, p, size=(m, m))
        if rank(P, p) == m:
            return P


def _inverse(P: np.ndarray, p: int) -> np.ndarray:
    m = P.shape[0]
    r, _ = rref(np.hstack([P, np.eye(m, dtype=np.int64)]), p)
    return r[:, m:]


def random_module(rng: np.random.Generator, limits: CorpusLimits, label: str) -> ModulePresentation:
    p = int(rng.choice(limits.primes))
    m = int(rng.integers(min(2, limits.max_dim), limits.max_dim + 1))
    k = int(rng.integers(1, limits.max_generators + 1))
    P = _random_invertible(rng, p, m)
    Pinv = _inverse(P, p)
    mats = [(P @ _random_matrix(rng, p, m) @ Pinv) % p for _ in range(k)]
    return _module(p, mats, label, dim=m)


def _fits(M: ModulePresentation, limits: CorpusLimits) -> bool:
    try:
        return len(enumerate_submodules(M, limits.scan_cap)) <= limits.lattice_cap
    except ResourceLimitError:
        return False


def generate_corpus(seed: int = 0, limits: CorpusLimits | None = None) -> list[Instance]:
    """Fixtures B, C, D first, then the other fixed families, then random modules.

    Random modules whose lattice exceeds ``limits.lattice_cap`` are redrawn,
    so every instance can be searched exhaustively.  Identical seeds and
    limits give identical corpora.
    """
    limits = CorpusLimits() if limits is None else limits
    out = [Instance(M) for M in fixtures()]
    fixed = [polynomial_module(p, f) for p, f in COMMUTATIVE_CASES]
    for p in (2, 3):
        fixed.extend(upper_triangular_modules(p))
    fixed.extend([trivial_module(2, 3), trivial_module(3, 2)])
    for M in fixed:
        if M.p in limits.primes and M.dim <= limits.max_dim and M.ngens <= limits.max_generators \
                and _fits(M, limits):
            out.append(Instance(M))
    rng = np.random.default_rng(seed)
    made = 0
    attempts = 0
    while made < limits.random_count and attempts < 50 * max(1, limits.random_count):
        attempts += 1
        M = random_module(rng, limits, f"random-{seed}-{made}")
        if _fits(M, limits):
            out.append(Instance(M))
            made += 1
    return out


def instance_with_base(M: ModulePresentation, vectors) -> Instance:
    return Instance(M, closure(M, vectors))
