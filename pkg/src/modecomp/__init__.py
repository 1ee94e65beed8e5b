"""Shortest primary and uniform decompositions of submodules of finite
modules over matrix algebras over prime fields, with a brute-force lattice
oracle to check them against."""

from .corpus import CorpusLimits, Instance, fixture_B, fixture_C, fixture_D, generate_corpus, polynomial_module
from .decompose import (
    PRIMARY,
    UNIFORM,
    Decomposition,
    DecompositionReport,
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
from .errors import ModecompError, PreconditionError, ProperSubmoduleError, ResourceLimitError, ShapeError
from .fileformat import InstanceFormatError, LoadedInstance, load, save
from .linalg import PrimeFieldMatrix, nullspace, rank, rref, rref_canonicalize
from .modules import (
    DEFAULT_CAP,
    ModulePresentation,
    QuotientPresentation,
    Submodule,
    closure,
    direct_sum,
    enumerate_submodules,
    find_isomorphism,
    hom_space,
    intersect,
    is_isomorphic_simple,
    is_simple,
    quotient,
    restrict,
    submodule,
    sum_submodules,
)
from .oracle import KINDS, LatticeOracle, brute_force_decompositions
from .spectrum import (
    AssociatedPrimes,
    LeftPrime,
    associated_left_primes,
    is_essential,
    is_irreducible,
    is_primary,
    is_uniform,
    left_prime_of,
    simple_submodules,
    socle,
    socle_decomposition,
    socle_decompositions,
    uniform_dimension,
)
from .suites import SUITES, TheoremReport, format_reports, run_suites, verify_suite

__version__ = "0.1.0"
