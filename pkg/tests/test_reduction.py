import pytest

from starchains import fp_linear
from starchains.frobenius import ClosureConfig
from starchains.reduction import (
    CannotExtendError,
    HypothesisError,
    NoSwapError,
    ReductionCandidate,
    ReductionScene,
    bracket_generator_count,
    candidate_vectors,
    extend_to_reduction,
    f_spread,
    generates_with_special,
    is_minimal_reduction,
    is_minimal_reduction_by_definition,
    is_star_independent,
    meets_special_trivially,
    minimal_reduction,
    swap_generator,
)

from conftest import RINGS

CAP4 = ClosureConfig(degree_cap=4)


@pytest.fixture
def fermat_scene(R3):
    return ReductionScene(R3.zero_ideal(), R3.ideal(["x", "y", "z^2"]), CAP4)


@pytest.fixture
def plane_scene(R1):
    return ReductionScene(R1.ideal(["x^2", "x*y", "y^2"]), R1.ideal(["x", "y"]))


def strs(fs):
    return [str(f) for f in fs]


def test_spread_examples(plane_scene, fermat_scene, R1):
    assert f_spread(plane_scene) == 2
    assert plane_scene.dim_V0 == 2 and plane_scene.dim_special == 0
    assert f_spread(fermat_scene) == 2
    assert fermat_scene.dim_V0 == 3 and fermat_scene.dim_special == 1
    I = R1.ideal(["x", "y"])
    assert f_spread(ReductionScene(I, I)) == 0


def test_bracket_generator_count(plane_scene):
    for e in range(0, 4):
        assert bracket_generator_count(plane_scene, e) == 2


def test_star_independence_examples(plane_scene):
    S = plane_scene.ring.ambient
    assert is_star_independent(plane_scene, (S("x"), S("y")))
    assert not is_star_independent(plane_scene, (S("x"), S("y"), S("x + y")))
    assert is_star_independent(plane_scene, ())


def test_minimal_reduction_examples(fermat_scene, plane_scene):
    S = fermat_scene.ring.ambient
    assert is_minimal_reduction(fermat_scene, (S("x"), S("y")))
    assert not meets_special_trivially(fermat_scene, (S("x"), S("z^2")))
    assert not is_minimal_reduction(fermat_scene, (S("x"), S("z^2")))
    P = plane_scene.ring.ambient
    assert is_minimal_reduction(plane_scene, (P("x"), P("y")))


def test_minimal_reduction_choice(fermat_scene, plane_scene, R1):
    assert strs(minimal_reduction(fermat_scene).fs) == ["x", "y"]
    assert strs(minimal_reduction(plane_scene).fs) == ["x", "y"]
    I = R1.ideal(["x", "y"])
    assert minimal_reduction(ReductionScene(I, I)).fs == ()


def test_extend_examples(fermat_scene, plane_scene):
    S = fermat_scene.ring.ambient
    assert extend_to_reduction(plane_scene, ()).fs == minimal_reduction(plane_scene).fs
    assert strs(extend_to_reduction(fermat_scene, (S("x"),)).fs) == ["x", "y"]
    with pytest.raises(CannotExtendError):
        extend_to_reduction(fermat_scene, (S("z^2"),))


def test_extend_rejects_dependent_partial(plane_scene):
    S = plane_scene.ring.ambient
    with pytest.raises(HypothesisError):
        extend_to_reduction(plane_scene, (S("x"), S("x")))


def test_swap_examples(fermat_scene):
    S = fermat_scene.ring.ambient
    K = minimal_reduction(fermat_scene)
    i, K2 = swap_generator(fermat_scene, K, S("x + y"))
    assert i == 0 and strs(K2.fs) == ["x + y", "y"]
    assert is_minimal_reduction(fermat_scene, K2)
    with pytest.raises(NoSwapError) as info:
        swap_generator(fermat_scene, K, S("z^2"))
    assert info.value.reason == "special"
    i, K3 = swap_generator(fermat_scene, K, K.fs[0])
    assert i == 0 and K3.fs == K.fs


def test_swap_negative_modulo_J(plane_scene):
    S = plane_scene.ring.ambient
    K = minimal_reduction(plane_scene)
    with pytest.raises(NoSwapError) as info:
        swap_generator(plane_scene, K, S("x^2"))
    assert info.value.reason in ("special", "J+special")


def test_scene_hypotheses(R1, R3):
    with pytest.raises(HypothesisError):
        ReductionScene(R1.ideal(["x", "y"]), R1.ideal(["x^2", "y"]))
    with pytest.raises(HypothesisError):
        ReductionScene(R3.ideal(["x", "y"]), R3.maximal_ideal())


def test_candidate_rejects_dependent(plane_scene):
    S = plane_scene.ring.ambient
    with pytest.raises(ValueError):
        ReductionCandidate(plane_scene, (S("x"), S("x")))


def suite_scenes():
    R1, R2, R3, R4 = (RINGS[k] for k in ("R1", "R2", "R3", "R4"))
    out = []
    for R in (R1, R2, R4):
        m = R.maximal_ideal()
        out.append(ReductionScene(R.ideal(["x^2", "x*y", "y^2"]), m))
        out.append(ReductionScene(R.ideal(["x^3", "y^2"]), R.ideal(["x^2", "y"])))
        out.append(ReductionScene(R.ideal(["x^3", "x^2*y", "y^2"]), m))
    out.append(ReductionScene(R3.ideal(["x^2", "x*y", "x*z", "y^2", "y*z", "z^3"]), R3.ideal(["x", "y", "z^2"])))
    out.append(ReductionScene(R3.ideal(["x", "y", "z^2"]), R3.maximal_ideal()))
    return out


@pytest.mark.parametrize("scene", suite_scenes(), ids=repr)
def test_direct_sum_and_cor_1_8(scene):
    K = minimal_reduction(scene)
    images = scene.images(K.fs)
    assert fp_linear.rank(images, scene.p, scene.dim_V0) == len(K.fs) == scene.spread
    assert fp_linear.intersects_trivially(images, list(scene.special_basis.vectors), scene.p, scene.dim_V0)
    assert scene.dim_V0 == scene.spread + scene.dim_special
    assert generates_with_special(scene, K.fs)
    assert f_spread(scene, cross_check=True) == scene.spread


@pytest.mark.parametrize("scene", [s for s in suite_scenes() if s.p == 2], ids=repr)
def test_exhaustive_equivalence_f2(scene):
    n, l = scene.dim_V0, scene.spread
    reductions = 0
    for size in range(0, n + 1):
        for combo in candidate_vectors(scene, size):
            fs = tuple(scene.lift(v) for v in combo)
            by_def = is_minimal_reduction_by_definition(scene, fs)
            if size == l:
                b = meets_special_trivially(scene, fs)
                c = generates_with_special(scene, fs)
                assert b == c == by_def
            else:
                assert not by_def
            reductions += by_def
    assert reductions > 0


@pytest.mark.parametrize("scene", suite_scenes(), ids=repr)
def test_independence_survives_special(scene):
    # a system independent modulo mI + J stays independent after adding J + I^Fsp
    K = minimal_reduction(scene)
    assert is_star_independent(scene, K.fs)
    images = scene.images(K.fs) + list(scene.special_basis.vectors)
    assert fp_linear.rank(images, scene.p, scene.dim_V0) == len(images)


def test_wrong_length_is_not_minimal(plane_scene, fermat_scene):
    S = plane_scene.ring.ambient
    assert not is_minimal_reduction(plane_scene, (S("x"),))
    T = fermat_scene.ring.ambient
    assert not is_minimal_reduction(fermat_scene, (T("x"), T("y"), T("z^2")))
