import pytest
from pydantic import ValidationError

from nilquiver.core.exceptions import (
    FiltrationCapExceeded,
    InvalidFiltration,
    InvalidInput,
    ParseError,
)
from nilquiver.models.quiver import Arrow, DimFiltration, Quiver
from nilquiver.services.quiver_service import quiver_service

from conftest import A2_QUIVER, D4, E6_SEPARATING, JORDAN, KRONECKER, RUNNING


def dd(*layers):
    return DimFiltration(layers=tuple(tuple(layer) for layer in layers))


def test_quiver_rejects_unknown_endpoint():
    with pytest.raises(ValidationError):
        Quiver(vertices=("1",), arrows=(Arrow("a", "1", "2"),))
    with pytest.raises(ValidationError):
        Quiver(vertices=("1", "1"))


def test_paths_up_to_length():
    labels = [p.label() for p in quiver_service.paths_up_to_length(A2_QUIVER, 1)]
    assert labels == ["e(x)", "e(y)", "a"]
    assert len(quiver_service.paths_up_to_length(JORDAN, 2)) == 3
    assert len(quiver_service.paths_up_to_length(KRONECKER, 1)) == 4
    assert quiver_service.path_count_below(JORDAN, 3) == 3


def test_staircase_shape():
    st = quiver_service.staircase(A2_QUIVER, 2)
    assert len(st.quiver.vertices) == 4
    assert st.vertical_arrows() == ["b(x_1)", "b(y_1)"]
    assert st.diagonal_arrows() == ["a_2"]
    assert st.quiver.arrow("a_2") == Arrow("a_2", "x_2", "y_1")

    flat = quiver_service.staircase(KRONECKER, 1)
    assert flat.quiver.arrows == ()
    assert flat.quiver.vertices == ("1_1", "2_1")


def test_staircase_of_jordan_is_doubled_a_s():
    st = quiver_service.staircase(JORDAN, 3)
    assert st.quiver.vertices == ("1_1", "1_2", "1_3")
    assert {(a.source, a.target) for a in st.quiver.arrows} == {
        ("1_1", "1_2"), ("1_2", "1_3"), ("1_2", "1_1"), ("1_3", "1_2"),
    }
    assert st.locate("1_2") == ("1", 2)
    assert st.kind("a_3") == ("diagonal", "a", 3)


def test_staircase_needs_positive_s():
    with pytest.raises(InvalidInput):
        quiver_service.staircase(JORDAN, 0)


def test_separation_quiver_of_e6_example():
    sep = quiver_service.separation_quiver(E6_SEPARATING)
    assert len(sep.vertices) == 6
    assert sep.arrow("c'") == Arrow("c'", "2", "2*")
    assert quiver_service.is_dynkin(sep) == ["E_6"]


def test_dynkin_types():
    assert quiver_service.is_dynkin(quiver_service.separation_quiver(JORDAN)) == ["A_2"]
    assert quiver_service.is_dynkin(quiver_service.separation_quiver(KRONECKER)) is None
    assert quiver_service.is_dynkin(D4) == ["D_4"]
    assert quiver_service.is_dynkin(RUNNING) == ["A_3"]
    assert quiver_service.is_dynkin(JORDAN) is None


def test_oriented_cycles():
    assert quiver_service.is_union_of_oriented_cycles(JORDAN)
    cycle = Quiver(vertices=("1", "2"), arrows=(Arrow("a", "1", "2"), Arrow("b", "2", "1")))
    assert quiver_service.is_union_of_oriented_cycles(cycle)
    assert not quiver_service.is_union_of_oriented_cycles(A2_QUIVER)


def test_flagged_dimension_counts():
    kron = dd((0, 1), (1, 1))
    assert quiver_service.dim_repdd(KRONECKER, kron) == 2
    assert quiver_service.dim_rf(KRONECKER, kron) == 2
    assert quiver_service.euler_form_one(KRONECKER, kron) == 0

    jordan = dd((1,), (2,))
    assert quiver_service.dim_repdd(JORDAN, jordan) == 1
    assert quiver_service.dim_rf(JORDAN, jordan) == 2
    assert quiver_service.euler_form_one(JORDAN, jordan) == 2


def test_euler_form_path():
    assert quiver_service.euler_form_path(KRONECKER, (1, 1), (1, 1)) == 0
    assert quiver_service.euler_form_path(A2_QUIVER, (1, 0), (0, 1)) == -1


def test_filtrations_with_top():
    all_dd = list(quiver_service.filtrations_with_top(JORDAN, 2, (2,)))
    assert [x.text() for x in all_dd] == ["0;2", "1;2", "2;2"]
    assert len(list(quiver_service.filtrations_with_top(KRONECKER, 3, (1, 2)))) == 3 * 6
    assert all(x.is_monotone() for x in all_dd)


def test_filtrations_with_top_respects_cap():
    it = quiver_service.filtrations_with_top(JORDAN, 2, (2,), cap=2)
    assert next(it).text() == "0;2"
    assert next(it).text() == "1;2"
    with pytest.raises(FiltrationCapExceeded):
        next(it)
    # exactly cap many is fine
    assert len(list(quiver_service.filtrations_with_top(JORDAN, 2, (2,), cap=3))) == 3


def test_parse_filtration():
    parsed = quiver_service.parse_filtration("0,1;1,1", KRONECKER, 2)
    assert parsed.layers == ((0, 1), (1, 1))
    assert parsed.top == (1, 1)
    assert parsed.value(1, 0) == 0
    assert parsed.increment(0, 2) == 1
    with pytest.raises(ParseError):
        quiver_service.parse_filtration("0,x;1,1", KRONECKER)
    with pytest.raises(InvalidFiltration):
        quiver_service.parse_filtration("0,1;1,1", KRONECKER, 3)
    with pytest.raises(InvalidFiltration):
        quiver_service.parse_filtration("0;1,1", KRONECKER)


def test_monotonicity_is_checked_on_demand():
    bad = dd((1, 0), (0, 1))
    assert not bad.is_monotone()
    with pytest.raises(InvalidFiltration):
        bad.require_monotone()
    assert dd((0, 1), (1, 1)).leq(dd((1, 1), (1, 1)))
    assert dd((1, 1), (1, 1)).minus(dd((0, 1), (1, 1))).text() == "1,0;0,0"


TRIANGLE = Quiver(vertices=("1", "2", "3"), arrows=(Arrow("a", "1", "2"), Arrow("b", "2", "3"), Arrow("c", "3", "1")))


def star(arms):
    """Tree with centre 0 and one path per entry of ``arms``, of that many vertices."""
    vertices, arrows = ["0"], []
    for k, length in enumerate(arms):
        prev = "0"
        for step in range(1, length + 1):
            v = f"{k}.{step}"
            vertices.append(v)
            arrows.append(Arrow(f"e{k}.{step}", prev, v))
            prev = v
    return Quiver(vertices=tuple(vertices), arrows=tuple(arrows))


@pytest.mark.parametrize(
    "q, reason",
    [
        (JORDAN, "loop"),
        (KRONECKER, "multiple edge"),
        (TRIANGLE, "cycle"),
        (star([1, 1, 1, 1]), "branch point of degree 4"),
        (star([2, 2, 2]), "arms 2,2,2 outside ADE"),
        (star([1, 3, 3]), "arms 1,3,3 outside ADE"),
        (star([1, 2, 5]), "arms 1,2,5 outside ADE"),
    ],
)
def test_dynkin_obstruction_names_the_shape(q, reason):
    assert quiver_service.is_dynkin(q) is None
    assert quiver_service.dynkin_obstruction(q) == reason


def test_two_branch_points_are_not_dynkin():
    # D~_5: 1,2 -- 3 -- 4 -- 5,6
    q = Quiver(
        vertices=("1", "2", "3", "4", "5", "6"),
        arrows=(
            Arrow("a", "1", "3"),
            Arrow("b", "2", "3"),
            Arrow("c", "3", "4"),
            Arrow("d", "5", "4"),
            Arrow("e", "6", "4"),
        ),
    )
    assert quiver_service.dynkin_obstruction(q) == "more than one branch point"


def test_dynkin_quivers_have_no_obstruction():
    assert quiver_service.dynkin_obstruction(star([1, 2, 4])) is None
    assert quiver_service.is_dynkin(star([1, 2, 4])) == ["E_8"]
    assert quiver_service.dynkin_obstruction(quiver_service.separation_quiver(E6_SEPARATING)) is None
    assert quiver_service.dynkin_obstruction(quiver_service.separation_quiver(KRONECKER)) == "multiple edge"
