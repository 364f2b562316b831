import pytest

from oracles import ID_REGULAR, PD
from relit import load_fixture
from relit.homol import (
    PdResult,
    absolute_engine,
    dims_over,
    ext_dims,
    injdim,
    pd,
    resolution,
    sup_results,
    syzygy,
)
from relit.krull import catalog_for
from relit.modcat import regular, simple


def test_class_pd_matches_hand_values(fixture_name, alg, cat):
    eng = absolute_engine(alg, cat)
    for cid, want in enumerate(PD[fixture_name]):
        r = eng.class_pd(cid)
        if want is None:
            assert r.is_infinite and r.cycle is not None
        else:
            assert r == PdResult.finite(want)
        assert pd(cat.witness(cid)) == r


def test_injective_dimension_of_regular(fixture_name, alg):
    assert injdim(regular(alg)) == PdResult.finite(ID_REGULAR[fixture_name])


def test_l3_simple_resolution_is_exact():
    a = load_fixture("L3")
    chain = resolution(simple(a, 1), 3)
    assert chain.check_exact()
    assert [t.dim for t in chain.terms] == [2, 2, 1, 0]


def test_ext_l3():
    a = load_fixture("L3")
    assert ext_dims(simple(a, 1), simple(a, 3), 3) == [0, 0, 1, 0]
    assert ext_dims(simple(a, 1), simple(a, 2), 2) == [0, 1, 0]


def test_ext_from_table_matches_complex(alg, cat):
    eng = absolute_engine(alg, cat)
    for c in cat.ids():
        for d in cat.ids():
            n = cat.witness(d)
            assert eng.ext_counts({c: 1}, n, 3) == ext_dims(cat.witness(c), n, 3)


def test_l4_syzygy_cycle():
    a = load_fixture("L4")
    s = simple(a, 1)
    assert syzygy(s).dim == 2
    assert syzygy(syzygy(s)).dim == 1


def test_sup_results():
    f, i, u = PdResult.finite, PdResult.infinite, PdResult.unknown
    assert sup_results([]) == f(0)
    assert sup_results([f(1), f(3)]) == f(3)
    assert sup_results([f(1), i(0, 1)]).is_infinite
    assert sup_results([f(1), i(0, 1)], finite_only=True) == f(1)
    assert sup_results([f(1), u(8)]) == u(8)


def test_cutoff_gives_unknown():
    a = load_fixture("L3")
    assert pd(simple(a, 1), cutoff=1) == PdResult.unknown(1)


def test_dims_over_modes():
    a = load_fixture("L1")
    cat = catalog_for(a)
    mods = [cat.witness(c) for c in cat.ids()]
    assert dims_over(mods).is_infinite
    assert dims_over(mods, "findim") == PdResult.finite(0)
    with pytest.raises(ValueError):
        dims_over(mods, "nonsense")
