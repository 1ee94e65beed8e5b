import ast
from pathlib import Path

import pytest

import modecomp.oracle as oracle_module
from modecomp.corpus import CorpusLimits, generate_corpus, polynomial_module
from modecomp.errors import ProperSubmoduleError, ResourceLimitError
from modecomp.modules import submodule
from modecomp.oracle import KINDS, LatticeOracle, brute_force_decompositions, lattice_stats


def parts_of(D):
    return [q.basis for q in D.parts]


def test_examples(C, D):
    assert [parts_of(x) for x in brute_force_decompositions(C, C.zero(), "shortest_primary")] == \
        [[((0, 1),), ((1, 0),)]]
    assert [parts_of(x) for x in brute_force_decompositions(D, D.zero(), "shortest_primary")] == [[()]]


def test_primary_N_is_its_own_shortest_decomposition(D):
    o = LatticeOracle(D)
    for N in o.lattice:
        if N.dim < D.dim and o.is_primary(N):
            found = o.decompositions(N, "shortest_primary")
            assert [parts_of(x) for x in found] == [[N.basis]]


def test_definitional_uniformity(B, D):
    o = LatticeOracle(B)
    assert o.is_uniform(B.whole()) and o.udim(B.whole()) == 1
    o = LatticeOracle(D)
    assert not o.is_uniform(D.whole()) and o.udim(D.whole()) == 2
    e3 = submodule(D, [(0, 0, 1)])
    assert o.is_uniform(D.whole(), e3)


def test_all_kinds_run_and_rejects(D):
    o = LatticeOracle(D)
    for kind in KINDS:
        assert o.decompositions(D.zero(), kind)
    with pytest.raises(ProperSubmoduleError):
        o.decompositions(D.whole(), "primary")
    with pytest.raises(ValueError):
        o.decompositions(D.zero(), "tertiary")


def test_caps():
    M = polynomial_module(3, (0, 0, 0, 1))
    with pytest.raises(ResourceLimitError):
        LatticeOracle(M, lattice_cap=2)
    assert lattice_stats(M)["submodules"] == 4
    assert lattice_stats(M, cap=3)["submodules"] == -1


def test_oracle_is_independent_of_the_construction():
    # only the Decomposition container may come from the decomposition module
    tree = ast.parse(Path(oracle_module.__file__).read_text())
    imported = {(node.module, alias.name) for node in ast.walk(tree) if isinstance(node, ast.ImportFrom)
                for alias in node.names}
    assert ("decompose", "Decomposition") in imported
    assert not any(mod == "spectrum" for mod, _ in imported)
    assert {name for mod, name in imported if mod == "decompose"} <= {"Decomposition", "PRIMARY", "UNIFORM"}


def test_corpus_shape():
    a = generate_corpus(0)
    assert [i.label for i in a[:3]] == ["fixture-B", "fixture-C", "fixture-D"]
    b = generate_corpus(0)
    assert [(i.module, i.label) for i in a] == [(i.module, i.label) for i in b]
    small = generate_corpus(0, CorpusLimits(primes=(2,), max_dim=3))
    assert all(i.module.p == 2 and i.module.dim <= 3 for i in small)
    assert all(len(LatticeOracle(i.module).lattice) <= 64 for i in small)
    assert [i.label for i in generate_corpus(1)] != [i.label for i in a] or \
        [i.module for i in generate_corpus(1)] != [i.module for i in a]
