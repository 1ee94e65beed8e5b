from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import small_modules
from modecomp.corpus import trivial_module
from modecomp.errors import PreconditionError, ResourceLimitError, ShapeError
from modecomp.linalg import rref_canonicalize
from modecomp.modules import (
    ModulePresentation,
    closure,
    direct_sum,
    enumerate_submodules,
    hom_space,
    intersect,
    is_invariant,
    is_isomorphic_simple,
    quotient,
    restrict,
    submodule,
)


def test_closure_examples(B):
    assert closure(B, [(0, 1)]) == B.whole()
    assert closure(B, []).is_zero()
    T = trivial_module(3, 2)
    assert closure(T, [(1, 2)]).basis == ((1, 2),)


def test_closure_is_minimal(D):
    # every invariant subspace containing the seed contains the closure
    for v in D.vectors():
        S = closure(D, [v])
        assert v in S and is_invariant(D, S.basis)
        for W in enumerate_submodules(D):
            if v in W:
                assert S <= W


def test_intersection_and_sum_examples(D):
    e3 = submodule(D, [(0, 0, 1)])
    e12 = submodule(D, [(1, 0, 0), (0, 1, 0)])
    assert intersect(e3, e12).is_zero()
    assert e3 & e3 == e3
    assert e3 + D.zero() == e3
    assert e3 + e12 == D.whole()


def test_lattice_examples(B, C):
    assert [S.basis for S in enumerate_submodules(B)] == [(), ((1, 0),), ((1, 0), (0, 1))]
    assert [S.basis for S in enumerate_submodules(C)] == [(), ((0, 1),), ((1, 0),), ((1, 0), (0, 1))]
    assert len(enumerate_submodules(trivial_module(2, 2))) == 5


def test_lattice_of_D_has_eight_members(D):
    lat = enumerate_submodules(D)
    assert len(lat) == 8
    assert [S.dim for S in lat] == [0, 1, 1, 1, 2, 2, 2, 3]


def test_lattice_cap():
    with pytest.raises(ResourceLimitError) as info:
        enumerate_submodules(trivial_module(2, 3), cap=4)
    assert info.value.bound == 4


@given(small_modules())
@settings(max_examples=30, deadline=None)
def test_lattice_laws_and_closure_under_meet_and_join(M):
    lat = enumerate_submodules(M)
    members = set(lat)
    assert len(members) == len(lat)
    assert lat == sorted(lat)
    for A, B in product(lat, repeat=2):
        meet, join = A & B, A + B
        assert meet in members and join in members
        assert A & join == A and A + meet == A
        assert meet == B & A and join == B + A


@given(small_modules(), st.data())
@settings(max_examples=30, deadline=None)
def test_associativity(M, data):
    lat = enumerate_submodules(M)
    A, B, C = (data.draw(st.sampled_from(lat)) for _ in range(3))
    assert (A & B) & C == A & (B & C)
    assert (A + B) + C == A + (B + C)


def test_quotient_examples(D):
    pi = quotient(D, D.zero())
    assert pi.module.dim == 3
    assert [g.tolist() for g in pi.induced_generators] == [g.tolist() for g in D.generators]
    e3 = submodule(D, [(0, 0, 1)])
    Q = quotient(D, e3).module
    lat = enumerate_submodules(Q)
    assert Q.dim == 2 and len(lat) == 3  # a chain: uniform
    assert quotient(D, D.whole()).module.dim == 0


def test_quotient_rejects_non_submodule(D):
    from modecomp.modules import Submodule
    bad = Submodule(D, rref_canonicalize([(0, 1, 0)], 2))
    with pytest.raises(PreconditionError):
        quotient(D, bad)


@given(small_modules())
@settings(max_examples=25, deadline=None)
def test_quotient_correspondence(M):
    lat = enumerate_submodules(M)
    for N in lat:
        pi = quotient(M, N)
        P, S = pi.projection.entries, pi.section.entries
        assert np.array_equal((P @ S) % M.p, np.eye(pi.module.dim, dtype=np.int64))
        for g, h in zip(M.actions, pi.module.actions):
            assert np.array_equal((P @ g) % M.p, (h @ P) % M.p)
        above = [W for W in lat if N <= W]
        lifted = [pi.preimage(W) for W in enumerate_submodules(pi.module)]
        assert sorted(lifted) == sorted(above)
        for W in above:
            assert pi.preimage(pi.image(W)) == W


def test_hom_space_examples(C):
    S1 = restrict(submodule(C, [(1, 0)]))
    S2 = restrict(submodule(C, [(0, 1)]))
    assert len(hom_space(S1, S1)) == 1
    assert len(hom_space(S1, S2)) == 0
    assert hom_space(C, restrict(C.zero())) == ()
    with pytest.raises(ShapeError):
        hom_space(C, trivial_module(2, 2))


@given(small_modules())
@settings(max_examples=25, deadline=None)
def test_hom_space_elements_intertwine(M):
    for X in hom_space(M, M):
        for g in M.actions:
            assert np.array_equal((X.entries @ g) % M.p, (g @ X.entries) % M.p)


def test_isomorphism_of_simples(C, B):
    S1 = restrict(submodule(C, [(1, 0)]))
    S2 = restrict(submodule(C, [(0, 1)]))
    assert is_isomorphic_simple(S1, S1)
    assert not is_isomorphic_simple(S1, S2)
    with pytest.raises(PreconditionError):
        is_isomorphic_simple(B, B)
    # simples of different dimension
    T = ModulePresentation.from_matrices(2, [[[0, 1], [1, 1]]])
    one = ModulePresentation.from_matrices(2, [[[1]]])
    assert not is_isomorphic_simple(T, one)


def test_direct_sum_adds_dimensions(B):
    M = direct_sum(B, B)
    assert M.dim == 4 and M.ngens == 1


def test_zero_module_is_legal():
    Z = ModulePresentation(2, 0, ())
    assert [S.dim for S in enumerate_submodules(Z)] == [0]
    assert closure(Z, []).is_zero()
