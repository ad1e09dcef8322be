import random

import pytest

from starchains import fp_linear
from starchains.frobenius import (
    CapExceededError,
    ClosureConfig,
    NotMPrimaryError,
    closure_witness,
    decomposition_check,
    frobenius_closure,
    frobenius_root_space,
    in_frobenius_closure,
    is_frobenius_closed,
    root_space_polynomials,
    special_part,
    special_part_certified,
    verify_certificate,
)
from starchains.groebner import (
    bracket_power,
    contains,
    graded_basis,
    ideal_product,
    ideal_sum,
    membership,
    top_degree,
)

from conftest import RINGS, random_m_primary
from helpers import closure_by_enumeration

FERMAT_SUITE = [
    ["x", "y"],
    ["x", "y", "z^2"],
    ["x", "y", "z"],
    ["x^2", "y^2"],
    ["x^2", "y^2", "z^2"],
    ["x", "y^2"],
    ["x^2", "y", "z^2"],
    ["x^2", "x*y", "y^2", "z^2"],
]


def suite():
    out = []
    for gens in FERMAT_SUITE:
        out.append(RINGS["R3"].ideal(gens))
    for name in ("R1", "R2", "R4"):
        R = RINGS[name]
        out += [R.ideal(["x", "y"]), R.ideal(["x^2", "x*y", "y^2"]), R.ideal(["x^2", "y^3"]), R.ideal(["x", "y^2"])]
    return out


def test_root_space_regular_degree_one(R1):
    I = R1.ideal(["x", "y"])
    space = frobenius_root_space(I, 1, 1)
    assert len(space) == 2  # all of R_1 = I_1


def test_root_space_fermat_contains_z_squared(R3):
    I = R3.ideal(["x", "y"])
    space = frobenius_root_space(I, 1, 2)
    monos = graded_basis(R3, R3.zero_ideal(), 2)
    z2 = [1 if m == (0, 0, 2) else 0 for m in monos]
    assert fp_linear.in_span(z2, space.vectors, 2)
    # the root space is I_2 plus z^2
    assert len(space) == len(monos)
    assert all(f.is_homogeneous() and f.degree() == 2 for f in root_space_polynomials(I, 1, 2))


@pytest.mark.parametrize("name", ["R1", "R3"])
def test_root_space_at_e0_is_I_d(name):
    R = RINGS[name]
    I = R.ideal(["x^2", "y"])
    for d in range(4):
        total = len(graded_basis(R, R.zero_ideal(), d))
        quotient = len(graded_basis(R, I, d))
        assert len(frobenius_root_space(I, 0, d)) == total - quotient


def test_closure_regular(R1):
    I = R1.ideal(["x", "y"])
    J, cert = frobenius_closure(I)
    assert J == I and cert.new_generators == [] and not cert.capped
    assert closure_by_enumeration(I, 3, range(0, 4)) == []


def test_closure_fermat(R3):
    I = R3.ideal(["x", "y"])
    J, cert = frobenius_closure(I)
    S = R3.ambient
    assert J == R3.ideal(["x", "y", "z^2"])
    assert [(str(f), e) for f, e in cert.new_generators] == [("z^2", 1)]
    assert cert.stabilized_at == 1 and not cert.capped
    assert verify_certificate(I, cert)
    # maximality: enumeration over degrees <= 3 finds only z^2 (mod I)
    found = closure_by_enumeration(I, 3, range(0, 4))
    assert found == [S("z^2")]


def test_closure_unit(R3):
    U = R3.unit_ideal()
    J, cert = frobenius_closure(U)
    assert J is U and is_frobenius_closed(U)


def test_is_closed_examples(R1, R3):
    assert is_frobenius_closed(R1.ideal(["x", "y"]))
    assert not is_frobenius_closed(R3.ideal(["x", "y"]))


def test_special_part_regular(R1):
    I = R1.ideal(["x", "y"])
    assert special_part(I) == R1.ideal(["x^2", "x*y", "y^2"])


def test_special_part_fermat(R3):
    I = R3.ideal(["x", "y", "z^2"])
    sp, cert = special_part_certified(I)
    S = R3.ambient
    assert membership(S("z^2"), sp)
    assert ("z^2", (1, 0)) in [(str(f), e) for f, e in cert.new_generators]
    assert verify_certificate(I, cert)
    assert not membership(S("x"), sp)


def test_special_part_zero_ideal(R1):
    assert special_part(R1.zero_ideal()).is_zero()


def test_decomposition_examples(R1, R3):
    assert decomposition_check(R1.ideal(["x", "y"]))
    assert decomposition_check(R3.ideal(["x", "y"]))
    for R in RINGS.values():
        assert decomposition_check(R.maximal_ideal())


def test_not_m_primary_needs_cap(R1, R3):
    with pytest.raises(NotMPrimaryError):
        frobenius_closure(R3.ideal(["x"]))
    J, cert = frobenius_closure(R3.ideal(["x"]), ClosureConfig(degree_cap=3))
    assert not cert.capped
    assert is_frobenius_closed(R1.ideal(["x"]), ClosureConfig(degree_cap=4))


def test_config_validation():
    with pytest.raises(ValueError):
        ClosureConfig(e_max=0)
    with pytest.raises(ValueError):
        ClosureConfig(e_max=6, e0_max=3)
    with pytest.raises(ValueError):
        ClosureConfig(degree_cap=-1)


def test_cap_reported(R3):
    # with a single exponent the two-step stability rule cannot fire
    cfg = ClosureConfig(e_max=1)
    J, cert = frobenius_closure(R3.ideal(["x", "y", "z^2"]), cfg)
    assert cert.capped
    with pytest.raises(CapExceededError):
        is_frobenius_closed(R3.ideal(["x", "y", "z^2"]), cfg)
    # growth proves non-closedness even under the cap
    assert not is_frobenius_closed(R3.ideal(["x", "y"]), cfg)


def test_closure_witness(R3):
    S = R3.ambient
    I = R3.ideal(["x", "y"])
    assert closure_witness(S("z^2"), I) == 1
    assert closure_witness(S("x"), I) == 0
    assert closure_witness(S("z"), I) is None
    assert in_frobenius_closure(S("x + z^2"), I)


def test_closure_matches_enumeration_oracle():
    R = RINGS["R3"]
    for gens in FERMAT_SUITE:
        I = R.ideal(gens)
        J, cert = frobenius_closure(I)
        found = closure_by_enumeration(I, 3, range(0, top_degree(I) + 1))
        assert all(membership(f, J) for f in found)
        # every new generator class is seen by the oracle
        assert ideal_sum(I, R.ideal(found)) == J


@pytest.mark.parametrize("I", suite(), ids=str)
def test_closure_axioms_on_suite(I):
    J, cert = frobenius_closure(I)
    assert not cert.capped
    assert contains(J, I)
    J2, cert2 = frobenius_closure(J)
    assert J2 == J and not cert2.new_generators
    assert contains(J, ideal_product(I.ring.maximal_ideal(), J))
    assert verify_certificate(I, cert)
    sp, spcert = special_part_certified(I)
    assert not spcert.capped
    assert contains(sp, ideal_product(I.ring.maximal_ideal(), I))
    assert contains(J, sp)
    assert decomposition_check(I)


@pytest.mark.parametrize("name", ["R1", "R3"])
def test_closure_monotone(name):
    R = RINGS[name]
    rng = random.Random(17)
    for _ in range(10):
        I = random_m_primary(R, rng, max_degree=2, extra=1)
        big = ideal_sum(I, random_m_primary(R, rng, max_degree=3, extra=1))
        assert contains(frobenius_closure(big)[0], frobenius_closure(I)[0])


def test_obs_a_from_certificate(R3):
    # (z^2)^2 lies in (I^[2])^F, so z^2 lies in I^F
    I = R3.ideal(["x", "y"])
    S = R3.ambient
    f = S("z^2")
    assert in_frobenius_closure(f.frobenius_power(1), bracket_power(I, 1))
    assert in_frobenius_closure(f, I)
