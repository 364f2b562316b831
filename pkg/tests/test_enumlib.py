import pytest

from helpers import a3_sink, kronecker
from relit import load_fixture
from relit.enumlib import (
    BudgetExceeded,
    NotNakayama,
    auslander_generator,
    bounded_indecs,
    delta_modules,
    fdelta_membership,
    is_nakayama,
    nakayama_indecs,
)
from relit.krull import catalog_for
from relit.modcat import projective, regular, simple


def test_nakayama_counts(alg, cat):
    ms = nakayama_indecs(alg, cat)
    assert ms.complete
    assert len(ms) == len(cat.ids())


def test_non_nakayama_detected():
    a = a3_sink()
    assert not is_nakayama(a)
    with pytest.raises(NotNakayama):
        nakayama_indecs(a)


def test_bounded_search_finds_all_a3_indecomposables():
    a = a3_sink()
    ms = bounded_indecs(a, 3)
    dims = sorted(m.dimvec for m in ms)
    assert dims == sorted([(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (0, 1, 1), (1, 1, 1)])
    assert not ms.complete


def test_bounded_search_kronecker_small():
    ms = bounded_indecs(kronecker(), 2)
    dims = sorted(m.dimvec for m in ms)
    # simples and the three regular modules (1,1) over F_2; P1 = (1,2) is too big
    assert dims == [(0, 1), (1, 0), (1, 1), (1, 1), (1, 1)]


def test_budget_returns_partial():
    with pytest.raises(BudgetExceeded) as info:
        bounded_indecs(kronecker(), 4, budget=3)
    assert info.value.partial.modules


def test_auslander_generator_l3():
    a = load_fixture("L3")
    assert auslander_generator(a).dim == 7


def test_auslander_generator_needs_completeness():
    with pytest.raises(ValueError):
        auslander_generator(kronecker())


def test_standard_modules_l3():
    a = load_fixture("L3")
    deltas = delta_modules(a, [1, 2, 3])
    assert [d.dimvec for d in deltas] == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    deltas = delta_modules(a, [3, 2, 1])
    assert [d.dimvec for d in deltas] == [(0, 0, 1), (0, 1, 1), (1, 1, 0)]


def test_filtration_membership():
    a = load_fixture("L3")
    deltas = delta_modules(a, [3, 2, 1])
    cat = catalog_for(a)
    assert fdelta_membership(regular(a), deltas, cat=cat) is True
    assert fdelta_membership(simple(a, 2), deltas, cat=cat) is False
    assert fdelta_membership(projective(a, 1), delta_modules(a, [1, 2, 3]), cat=cat) is True


def test_order_must_be_a_permutation():
    with pytest.raises(ValueError):
        delta_modules(load_fixture("L3"), [1, 2])


def test_zero_budget_keeps_only_projectives():
    a = a3_sink()
    with pytest.raises(BudgetExceeded) as info:
        bounded_indecs(a, 3, budget=0)
    assert sorted(m.dimvec for m in info.value.partial) == sorted(projective(a, v).dimvec for v in a.vertices)
