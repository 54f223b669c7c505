import numpy as np
import pytest

from nilquiver.core.exact_linalg import RationalField
from nilquiver.core.exceptions import IncompatibleModules, RelationViolated, ResolutionTooLong
from nilquiver.models.module import ModuleMap
from nilquiver.models.quiver import DimFiltration
from nilquiver.services.algebra_service import algebra_service
from nilquiver.services.quiver_service import quiver_service
from nilquiver.services.repmod_service import repmod_service
from nilquiver.services.richardson_service import richardson_service

from conftest import A2_QUIVER, JORDAN, KRONECKER, RUNNING, random_filtration


def jordan_square_zero(field):
    algebra = algebra_service.truncated_path_algebra(JORDAN, 2)
    return repmod_service.make_module(algebra, {"1": 2}, {"a": [[0, 1], [0, 0]]}, field)


def small_modules(n, field):
    """Simples, projectives and injectives of an N_s(Q)."""
    out = []
    for v in n.vertices:
        out.append(repmod_service.simple_module(n, v, field))
        out.append(repmod_service.projective_module(n, v, field))
        out.append(repmod_service.injective_module(n, v, field))
    return out


def test_make_module_checks_relations(qq):
    M = jordan_square_zero(qq)
    assert M.dims == {"1": 2}
    algebra = algebra_service.truncated_path_algebra(JORDAN, 2)
    with pytest.raises(RelationViolated):
        repmod_service.make_module(algebra, {"1": 2}, {"a": [[1, 0], [0, 1]]}, qq)
    with pytest.raises(IncompatibleModules):
        repmod_service.make_module(algebra, {"1": 2}, {"a": [[1, 0]]}, qq)


def test_radical_and_socle_of_square_zero_matrix(qq):
    M = jordan_square_zero(qq)
    rad = repmod_service.radical(M)["1"]
    soc = repmod_service.socle(M)["1"]
    assert rad.shape == (2, 1) and list(rad[:, 0]) == [1, 0]
    assert soc.shape == (2, 1) and list(soc[:, 0]) == [1, 0]
    assert repmod_service.socle_power(M, 2)["1"].shape == (2, 2)
    assert repmod_service.socle_power(M, 5)["1"].shape == (2, 2)
    assert repmod_service.radical_power(M, 2)["1"].shape == (2, 0)
    assert len(repmod_service.socle_filtration(M)) == 2


def test_submodule_generated_by_a_vector(qq):
    M = jordan_square_zero(qq)
    sub = repmod_service.submodule(M, {"1": qq.array([[1], [0]])})
    assert sub.module.dims == {"1": 1}
    assert qq.is_zero(sub.module.matrices["a"])
    quotient = repmod_service.quotient(M, sub.inclusion.matrices)
    assert quotient.module.dims == {"1": 1}


def test_kernel_image_cokernel(qq):
    M = jordan_square_zero(qq)
    endo = {"1": M.matrices["a"]}
    f = ModuleMap(M, M, endo)
    assert repmod_service.kernel(f).module.dims == {"1": 1}
    assert repmod_service.image(f).module.dims == {"1": 1}
    assert repmod_service.cokernel(f).module.dims == {"1": 1}
    assert not repmod_service.is_injective(f)


def test_projectives_and_injectives_of_running_example(fp):
    n = algebra_service.nilpotent_quiver_algebra(RUNNING, 2)
    P = repmod_service.projective_module(n, "2_2", fp)
    assert {v: d for v, d in P.dims.items() if d} == {"2_2": 1, "1_1": 1, "3_1": 1, "1_2": 1, "3_2": 1}
    I12 = repmod_service.injective_module(n, "1_2", fp)
    assert repmod_service.hom_dim(P, I12) == 1
    # I(2_2) = P(2_1) is projective-injective
    I22 = repmod_service.injective_module(n, "2_2", fp)
    P21 = repmod_service.projective_module(n, "2_1", fp)
    assert repmod_service.iso_probe(I22, P21, np.random.default_rng(0))


def test_hom_is_additive(fp, rng):
    dd = DimFiltration(layers=((0, 1), (1, 1)))
    M = richardson_service.sample_flagged(KRONECKER, dd, rng, fp).module
    end = repmod_service.hom_dim(M, M)
    assert repmod_service.hom_dim(M, repmod_service.direct_sum(M, M)) == 2 * end


def test_ext_vanishes_on_projectives(fp):
    n = algebra_service.nilpotent_quiver_algebra(RUNNING, 2)
    modules = small_modules(n, fp)
    for v in n.vertices:
        P = repmod_service.projective_module(n, v, fp)
        for N in modules:
            assert repmod_service.ext_dim(P, N, 1) == 0


def test_nonsplit_sequence_of_running_example(fp):
    n = algebra_service.nilpotent_quiver_algebra(RUNNING, 2)
    S = repmod_service.simple_module(n, "2_2", fp)
    P = repmod_service.projective_module(n, "2_2", fp)
    assert repmod_service.ext_dim(S, P, 1) >= 1
    with pytest.raises(ValueError):
        repmod_service.ext_dim(S, P, -1)


@pytest.mark.parametrize(
    "quiver, s", [(RUNNING, 2), (A2_QUIVER, 3), (KRONECKER, 2), (JORDAN, 3)]
)
def test_global_dimension_at_most_two(quiver, s, fp, rng):
    n = algebra_service.nilpotent_quiver_algebra(quiver, s)
    modules = small_modules(n, fp)
    for dd in quiver_service.filtrations_with_top(quiver, s, (1,) * len(quiver.vertices)):
        modules.append(richardson_service.sample_flagged(quiver, dd, rng, fp).module)
    for M in modules:
        res = repmod_service.minimal_projective_resolution(M)
        assert res.complete and res.length <= 2


def test_resolution_cap_on_truncated_algebra(fp):
    # k[x]/x^2 has infinite global dimension
    S = repmod_service.simple_module(algebra_service.truncated_path_algebra(JORDAN, 2), "1", fp)
    with pytest.raises(ResolutionTooLong):
        repmod_service.minimal_projective_resolution(S, max_len=3)
    res = repmod_service.minimal_projective_resolution(S, max_len=3, truncate=True)
    assert not res.complete and len(res.steps) == 4


@pytest.mark.parametrize("quiver, s", [(RUNNING, 2), (A2_QUIVER, 2), (JORDAN, 2)])
def test_euler_form_matches_alternating_ext(quiver, s, fp):
    n = algebra_service.nilpotent_quiver_algebra(quiver, s)
    modules = small_modules(n, fp)
    for M in modules[:9]:
        for N in modules:
            alternating = sum((-1) ** k * repmod_service.ext_dim(M, N, k) for k in range(3))
            assert algebra_service.euler_form_nsq(n, M.dims, N.dims) == alternating


def test_fitting_decomposition_splits_direct_sums(fp, rng):
    n = algebra_service.nilpotent_quiver_algebra(KRONECKER, 2)
    P = repmod_service.projective_module(n, "1_2", fp)
    S = repmod_service.simple_module(n, "2_1", fp)
    parts = repmod_service.fitting_decompose(repmod_service.direct_sum(P, S), rng)
    assert sorted(p.total_dim for p in parts) == [1, P.total_dim]


def test_mono_object_of_delta_filtered_module(fp, rng):
    dd = DimFiltration(layers=((0, 1), (1, 2), (2, 2)))
    N = richardson_service.sample_flagged(KRONECKER, dd, rng, fp).module
    mono = repmod_service.to_mono_object(N)
    assert mono.is_mono and mono.s == 3
    assert [m.dims for m in mono.modules] == [{"1": 0, "2": 1}, {"1": 1, "2": 2}, {"1": 2, "2": 2}]
    assert repmod_service.mono_hom_dim(mono, mono) == repmod_service.hom_dim(N, N)


def test_lift_to_rationals_keeps_shape(fp):
    n = algebra_service.nilpotent_quiver_algebra(RUNNING, 2)
    P = repmod_service.projective_module(n, "2_2", fp)
    lifted = repmod_service.lift_to_rationals(P)
    assert isinstance(lifted.field, RationalField)
    assert lifted.dims == P.dims
    assert repmod_service.hom_dim(lifted, lifted) == repmod_service.hom_dim(P, P)


def random_modules(quiver, s, field, rng, count):
    """Flagged samples, every other one divided by the submodule of a random vector."""
    out = []
    while len(out) < count:
        M = richardson_service.sample_flagged(quiver, random_filtration(rng, quiver, s, 1), rng, field).module
        if len(out) % 2 and not M.is_zero():
            v = next(w for w in M.algebra.vertices if M.dims[w])
            sub = repmod_service.submodule(M, {v: field.random(rng, (M.dims[v], 1))})
            M = repmod_service.quotient(M, sub.inclusion.matrices).module
        out.append(M)
    return out


@pytest.mark.slow
@pytest.mark.parametrize("quiver, s", [(RUNNING, 2), (A2_QUIVER, 3), (KRONECKER, 2), (JORDAN, 3)])
def test_global_dimension_on_random_modules(quiver, s, fp, rng):
    for M in random_modules(quiver, s, fp, rng, 50):
        res = repmod_service.minimal_projective_resolution(M)
        assert res.complete and res.length <= 2


@pytest.mark.slow
@pytest.mark.parametrize("quiver, s", [(RUNNING, 2), (A2_QUIVER, 2), (KRONECKER, 2), (JORDAN, 2)])
def test_euler_form_on_random_pairs(quiver, s, fp, rng):
    n = algebra_service.nilpotent_quiver_algebra(quiver, s)
    modules = random_modules(quiver, s, fp, rng, 60)
    for M, N in zip(modules[::2], modules[1::2]):
        alternating = sum((-1) ** k * repmod_service.ext_dim(M, N, k) for k in range(3))
        assert algebra_service.euler_form_nsq(n, M.dims, N.dims) == alternating


def test_hom_is_additive_in_the_second_argument(fp, rng):
    n = algebra_service.nilpotent_quiver_algebra(KRONECKER, 2)
    dd = DimFiltration(layers=((0, 1), (1, 1)))
    M = richardson_service.sample_flagged(KRONECKER, dd, rng, fp).module
    P = repmod_service.projective_module(n, "1_2", fp)
    S = repmod_service.simple_module(n, "2_1", fp)
    total = repmod_service.hom_dim(P, M) + repmod_service.hom_dim(S, M)
    assert repmod_service.hom_dim(repmod_service.direct_sum(P, S), M) == total
    assert repmod_service.hom_dim(M, repmod_service.direct_sum(P, S)) == (
        repmod_service.hom_dim(M, P) + repmod_service.hom_dim(M, S)
    )
