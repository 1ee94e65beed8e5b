import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import small_modules
from modecomp.errors import ProperSubmoduleError
from modecomp.fileformat import InstanceFormatError, dumps, load, loads, save, to_document
from modecomp.modules import enumerate_submodules
from modecomp.spectrum import quotient, uniform_dimension

FIXTURE_D = {"p": 2, "dim": 3, "generators": [[[0, 1, 0], [0, 0, 0], [0, 0, 0]]], "label": "mixed"}


def doc(**changes):
    d = dict(FIXTURE_D)
    d.update(changes)
    return json.dumps(d)


def test_fixture_D_loads(tmp_path):
    path = tmp_path / "d.json"
    path.write_text(doc())
    inst = load(path)
    assert inst.label == "mixed" and inst.base.is_zero() and not inst.closed
    assert uniform_dimension(quotient(inst.module, inst.base).module) == 2


def test_rejections():
    with pytest.raises(InstanceFormatError, match="p must be prime"):
        loads(doc(p=4))
    with pytest.raises(ProperSubmoduleError, match="N must be proper"):
        loads(doc(N=[[1, 0, 0], [0, 1, 0], [0, 0, 1]]))
    with pytest.raises(InstanceFormatError, match="unknown field"):
        loads(doc(colour="red"))
    with pytest.raises(InstanceFormatError, match="square"):
        loads(doc(generators=[[[0, 1], [0, 0]]]))
    with pytest.raises(InstanceFormatError, match="out of range"):
        loads(doc(generators=[[[0, 2, 0], [0, 0, 0], [0, 0, 0]]]))
    with pytest.raises(InstanceFormatError, match="missing"):
        loads(json.dumps({"p": 2, "dim": 1}))
    with pytest.raises(InstanceFormatError, match="JSON"):
        loads("{not json")
    with pytest.raises(InstanceFormatError, match="parts"):
        loads(doc(), decomposition=True)


def test_non_submodule_is_closed_with_warning():
    inst = loads(doc(N=[[0, 1, 0]]))
    assert inst.closed and "N is not a submodule" in inst.warnings[0]
    assert inst.base.basis == ((1, 0, 0), (0, 1, 0))


def test_zero_module_is_legal():
    inst = loads(json.dumps({"p": 3, "dim": 0, "generators": []}))
    assert inst.module.dim == 0


@given(small_modules(), st.data())
@settings(max_examples=40, deadline=None)
def test_round_trip(M, data):
    lat = enumerate_submodules(M)
    proper = [S for S in lat if S.dim < M.dim]
    N = data.draw(st.sampled_from(proper))
    parts = data.draw(st.lists(st.sampled_from(proper), min_size=1, max_size=3))
    inst = loads(dumps(to_document(M, N)))
    assert inst.module == M and inst.base == N and inst.label == M.label
    dec = loads(dumps(to_document(M, N, parts)))
    assert dec.parts == tuple(parts)
    assert dumps(to_document(dec.module, dec.base, dec.parts)) == dumps(to_document(M, N, parts))


def test_save_and_load(tmp_path, D):
    path = tmp_path / "x.json"
    save(path, D, D.zero())
    assert load(path).module == D
    with pytest.raises(InstanceFormatError, match="cannot read"):
        load(tmp_path / "missing.json")
