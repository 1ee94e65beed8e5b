import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modecomp.errors import ShapeError
from modecomp.linalg import (
    PrimeFieldMatrix,
    check_prime,
    inverse_mod,
    is_prime,
    nullspace,
    rank,
    rref,
    rref_canonicalize,
)


def test_canonicalize_examples():
    assert rref_canonicalize([(0, 1), (1, 1)], 2) == ((1, 0), (0, 1))
    assert rref_canonicalize([], 2) == ()
    assert rref_canonicalize([(2, 4)], 5) == ((1, 2),)


def test_canonicalize_rejects_mixed_lengths():
    with pytest.raises(ShapeError):
        rref_canonicalize([(1, 0), (1, 0, 0)], 2)
    with pytest.raises(ShapeError):
        rref_canonicalize([(1, 0)], 2, m=3)


@st.composite
def spans(draw):
    p = draw(st.sampled_from([2, 3, 5, 7]))
    m = draw(st.integers(1, 5))
    k = draw(st.integers(1, 5))
    rows = draw(st.lists(st.lists(st.integers(0, p - 1), min_size=m, max_size=m), min_size=k, max_size=k))
    return p, m, rows


@given(spans(), st.integers(0, 2**32 - 1))
@settings(max_examples=150, deadline=None)
def test_canonical_form_is_idempotent_and_basis_independent(data, seed):
    p, m, rows = data
    basis = rref_canonicalize(rows, p)
    assert rref_canonicalize(basis, p) == basis
    # any other spanning set of the same space gives the same basis
    rng = np.random.default_rng(seed)
    a = np.array(rows, dtype=np.int64)
    mix = rng.integers(0, p, size=(a.shape[0] + 2, a.shape[0]))
    other = np.vstack([(mix @ a) % p, a[::-1]])
    assert rref_canonicalize(other.tolist(), p) == basis


@given(spans())
@settings(max_examples=150, deadline=None)
def test_nullspace_solves_and_has_complementary_dimension(data):
    p, m, rows = data
    a = np.array(rows, dtype=np.int64)
    ns = nullspace(a, p)
    assert ns.shape[0] + rank(a, p) == m
    if ns.shape[0]:
        assert not ((a @ ns.T) % p).any()


def test_rref_pivots():
    r, piv = rref(np.array([[0, 2, 4], [0, 1, 1]]), 5)
    assert piv == [1, 2]
    assert r.tolist() == [[0, 1, 0], [0, 0, 1]]


def test_primes():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]
    assert check_prime(251) == 251
    with pytest.raises(ShapeError, match="p must be prime"):
        check_prime(4)
    with pytest.raises(ShapeError):
        check_prime(257)
    for p in (2, 3, 7, 251):
        for a in range(1, min(p, 40)):
            assert a * inverse_mod(a, p) % p == 1


def test_matrix_is_immutable_and_validated():
    A = PrimeFieldMatrix.from_rows(3, [[1, 2], [0, 1]])
    assert A.shape == (2, 2)
    with pytest.raises(ValueError):
        A.entries[0, 0] = 2
    with pytest.raises(ShapeError):
        PrimeFieldMatrix.from_rows(3, [[3, 0], [0, 1]])
    assert PrimeFieldMatrix.from_rows(3, [[4, -1]], reduce=True).tolist() == [[1, 2]]
    assert (A @ PrimeFieldMatrix.identity(3, 2)) == A
    assert A.rank() == 2
    assert hash(A) == hash(PrimeFieldMatrix.from_rows(3, [[1, 2], [0, 1]]))
