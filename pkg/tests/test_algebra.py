import pytest

from nilquiver.core.exceptions import InvalidInput
from nilquiver.models.algebra import NilpotentQuiverAlgebra, TruncatedPathAlgebra
from nilquiver.models.quiver import Arrow, DimFiltration, Path, Quiver
from nilquiver.services.algebra_service import algebra_service
from nilquiver.services.quiver_service import quiver_service

from conftest import A2_QUIVER, JORDAN, KRONECKER, RUNNING, SUITE, random_filtration


def test_truncated_path_algebra_basis():
    algebra = algebra_service.truncated_path_algebra(JORDAN, 3)
    assert [b.label for b in algebra.basis] == ["e(1)", "a", "a·a"]
    a = algebra.arrow_element("a")
    aa = algebra.compose(a, a)
    assert algebra.basis[aa].label == "a·a"
    assert algebra.compose(a, aa) is None
    assert len(algebra.relations) == 1


def test_arrows_vanish_when_s_is_one():
    algebra = TruncatedPathAlgebra(KRONECKER, 1)
    assert algebra.dim == 2
    assert algebra.arrow_element("l") is None


def test_algebras_need_positive_s():
    with pytest.raises(InvalidInput):
        TruncatedPathAlgebra(JORDAN, 0)
    with pytest.raises(InvalidInput):
        NilpotentQuiverAlgebra(JORDAN, 0)


def test_jordan_n2_basis():
    n = algebra_service.nilpotent_quiver_algebra(JORDAN, 2)
    labels = sorted(b.label for b in n.basis)
    assert labels == sorted(["e(1_1)", "e(1_2)", "b(1_1)", "a_2", "b(1_1)·a_2"])
    assert n.dim == 5
    # a_2 b(1_1) = 0
    assert n.evaluate_word(("b(1_1)", "a_2")) is None
    assert n.evaluate_word(("a_2", "b(1_1)")) is not None


def test_commutativity_relation_identifies_both_sides():
    n = algebra_service.nilpotent_quiver_algebra(A2_QUIVER, 3)
    # a_3 b(x_2) = b(y_1) a_2
    lhs = n.evaluate_word(("b(x_2)", "a_3"))
    rhs = n.evaluate_word(("a_2", "b(y_1)"))
    assert lhs is not None and lhs == rhs
    assert all(n.relation_vanishes(r) for r in n.relations)
    assert {r.name for r in n.relations} == {"R1[a,2]", "R2[a]"}


def test_standard_basis_splits_alpha_and_beta():
    n = algebra_service.nilpotent_quiver_algebra(A2_QUIVER, 2)
    pairs = algebra_service.standard_basis(n)
    assert ((), ()) in pairs
    assert (("a_2",), ("b(y_1)",)) in pairs
    assert len(pairs) == n.dim


def test_top_idempotent_and_phi():
    n = algebra_service.nilpotent_quiver_algebra(KRONECKER, 2)
    e = algebra_service.top_idempotent(n)
    assert {n.basis[k].label for k in e} == {"e(1_2)", "e(2_2)"}
    arrow = Path("1", "2", ("l",))
    image = algebra_service.phi_iso(n, arrow)
    assert n.basis[image].word == ("l_2", "b(2_1)")
    longer = Path("1", "1", ("a", "a"))
    assert algebra_service.phi_iso(algebra_service.nilpotent_quiver_algebra(JORDAN, 2), longer) is None


@pytest.mark.parametrize("name", sorted(SUITE))
@pytest.mark.parametrize("s", [1, 2, 3])
def test_corner_isomorphism(name, s):
    n = algebra_service.nilpotent_quiver_algebra(SUITE[name], s)
    assert algebra_service.check_corner_isomorphism(n)


def test_euler_form_nsq():
    n = algebra_service.nilpotent_quiver_algebra(KRONECKER, 2)
    dd = DimFiltration(layers=((0, 1), (1, 1)))
    assert algebra_service.euler_form_nsq(n, dd, dd) == 0
    jordan = algebra_service.nilpotent_quiver_algebra(JORDAN, 2)
    assert algebra_service.euler_form_nsq(jordan, DimFiltration(layers=((1,), (2,))), {"1_1": 1, "1_2": 2}) == 2


def test_layer_quotient():
    n = algebra_service.nilpotent_quiver_algebra(JORDAN, 3)
    quotient, renaming = algebra_service.layer_quotient(n, 1)
    assert quotient is algebra_service.nilpotent_quiver_algebra(JORDAN, 2)
    assert renaming == {"1_2": "1_1", "1_3": "1_2"}
    with pytest.raises(ValueError):
        algebra_service.layer_quotient(n, 3)


def test_auslander_case():
    cycle = Quiver(vertices=("1", "2"), arrows=(Arrow("a", "1", "2"), Arrow("b", "2", "1")))
    assert algebra_service.is_auslander_case(JORDAN, 2)
    assert algebra_service.is_auslander_case(cycle, 3)
    assert not algebra_service.is_auslander_case(JORDAN, 1)
    assert not algebra_service.is_auslander_case(RUNNING, 2)


def test_algebras_are_cached():
    assert algebra_service.nilpotent_quiver_algebra(RUNNING, 2) is algebra_service.nilpotent_quiver_algebra(
        RUNNING, 2
    )


@pytest.mark.parametrize("name", sorted(SUITE))
@pytest.mark.parametrize("s", [2, 3])
def test_euler_form_one_matches_nsq_on_random_filtrations(name, s, rng):
    q = SUITE[name]
    n = algebra_service.nilpotent_quiver_algebra(q, s)
    for _ in range(100):
        dd = random_filtration(rng, q, s)
        assert quiver_service.euler_form_one(q, dd) == algebra_service.euler_form_nsq(n, dd, dd), dd.text()
