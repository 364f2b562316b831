import pytest

from relit import FIXTURES, load_fixture
from relit.algebra import (
    Arrow,
    InfiniteDimensional,
    NonAdmissible,
    Quiver,
    StructureConstantAlgebra,
    algebra_from_dict,
    algebra_to_dict,
    build_algebra,
    opposite,
)

DIMS = {"L1": 2, "L2": 3, "L3": 5, "L4": 3}


@pytest.mark.parametrize("name", FIXTURES)
def test_fixture_dimensions(name):
    assert load_fixture(name).dim == DIMS[name]


def test_unknown_fixture():
    with pytest.raises(KeyError):
        load_fixture("L9")


def test_l3_basis_skips_the_relation():
    a = load_fixture("L3")
    words = sorted(str(b) for b in a.basis)
    assert words == ["a", "b", "e1", "e2", "e3"]


@pytest.mark.parametrize("name", FIXTURES)
def test_roundtrip_and_opposite(name):
    a = load_fixture(name)
    assert algebra_from_dict(algebra_to_dict(a)) == a
    assert opposite(opposite(a)) == a
    assert opposite(a).dim == a.dim


def test_loop_without_relation_is_rejected():
    q = Quiver((1,), (Arrow("x", 1, 1),))
    with pytest.raises(InfiniteDimensional):
        build_algebra(q, [], 2)


def test_relations_must_be_paths_of_length_two():
    q = Quiver((1, 2), (Arrow("a", 1, 2),))
    with pytest.raises(NonAdmissible):
        build_algebra(q, ["a"], 2)
    with pytest.raises(NonAdmissible):
        build_algebra(q, ["aa"], 2)


def test_malformed_description():
    with pytest.raises(ValueError):
        algebra_from_dict({"vertices": [1]})


def test_structure_constants_dual_numbers():
    # k[x]/(x^2) with basis 1, x
    table = [[[1, 0], [0, 1]], [[0, 1], [0, 0]]]
    a = StructureConstantAlgebra(table, 3)
    assert a.unit.tolist() == [1, 0]
    assert a.multiply([0, 1], [0, 1]).tolist() == [0, 0]


def test_structure_constants_need_associativity():
    with pytest.raises(NonAdmissible, match="associative"):
        StructureConstantAlgebra([[[0, 1], [1, 0]], [[1, 0], [1, 1]]], 2)
