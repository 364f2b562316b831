from collections import Counter

from hypothesis import given, settings, strategies as st

from helpers import a3_sink, conjugate, kronecker, rng
from oracles import CLASS_DIMVECS
from relit import load_fixture
from relit.krull import (
    Decomp,
    IsoCatalog,
    catalog_for,
    classify,
    decompose,
    is_indecomposable,
    is_isomorphic,
    is_local_exhaustive,
    rep_from_classes,
    strip,
)
from relit.modcat import direct_sum, injective, projective, regular, simple


def test_catalog_ids_are_canonical(fixture_name, cat):
    dims = tuple(cat.witness(c).dimvec for c in cat.ids())
    assert dims == CLASS_DIMVECS[fixture_name]
    assert cat.complete and cat.provenance == "nakayama-complete"


def test_regular_module_splits_into_projectives(alg, cat):
    d = classify(regular(alg), cat)
    assert len(d) == alg.n
    for cid, _ in d.items:
        assert is_indecomposable(cat.witness(cid), cat)


def test_witnesses_have_local_endomorphism_rings(cat):
    for c in cat.ids():
        assert is_local_exhaustive(cat.witness(c))


def test_decomposition_witness_is_an_isomorphism():
    a = a3_sink()
    m = direct_sum(projective(a, 1), injective(a, 2), simple(a, 3))
    d = decompose(m)
    assert d.witness.is_iso()
    assert len(d.decomp) == 3


def test_kronecker_regular_module():
    a = kronecker()
    d = classify(regular(a))
    assert sorted(catalog_for(a).witness(c).dimvec for c, _ in d.items) == [(0, 1), (1, 2)]
    assert d.counter()[classify(projective(a, 2)).items[0][0]] == 1


@given(st.integers(0, 2**16), st.lists(st.integers(0, 4), min_size=1, max_size=3))
@settings(max_examples=30, deadline=None)
def test_decomposition_ignores_base_change_and_seed(seed, picks):
    a = load_fixture("L3")
    cat = catalog_for(a)
    counts = Counter(picks)
    m = rep_from_classes(counts, cat)
    n = conjugate(m, rng(seed))
    assert decompose(n, cat, seed=seed).decomp == Decomp.from_counts(counts)
    assert is_isomorphic(m, n, cat)


def test_strip_removes_projective_summands():
    a = load_fixture("L2")
    cat = catalog_for(a)
    m = direct_sum(simple(a, 1), regular(a))
    s = strip(m, lambda c: cat.witness(c).dimvec != (1, 0), cat)
    assert s.dimvec == (1, 0)


def test_fresh_catalog_assigns_ids_in_order():
    a = a3_sink()
    cat = IsoCatalog(a)
    assert cat.register(simple(a, 1)) == 0
    assert cat.register(simple(a, 2)) == 1
    assert cat.register(conjugate(simple(a, 1), rng(0))) == 0
