import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from starchains.poly import (
    ExponentOverflowError,
    MAX_EXPONENT,
    ParseError,
    PolyRing,
    Polynomial,
    RingMismatchError,
)

RINGS = {p: PolyRing(p, ["x", "y", "z"]) for p in (2, 3, 5)}


@st.composite
def polys(draw, p=None, max_terms=5, max_exp=3):
    if p is None:
        p = draw(st.sampled_from([2, 3, 5]))
    S = RINGS[p]
    n = draw(st.integers(0, max_terms))
    coeffs = {}
    for _ in range(n):
        m = tuple(draw(st.integers(0, max_exp)) for _ in range(3))
        coeffs[m] = draw(st.integers(1, p - 1))
    return Polynomial(S, coeffs)


@st.composite
def triples(draw):
    p = draw(st.sampled_from([2, 3, 5]))
    return draw(polys(p)), draw(polys(p)), draw(polys(p))


monomials = st.tuples(*[st.integers(0, 6)] * 3)


def test_addition_examples():
    S2, S3 = PolyRing(2, ["x", "y"]), PolyRing(3, ["x", "y"])
    f = S2("x + y")
    assert (f + f).is_zero()
    assert f + S2.zero() == f
    assert S3("x^2 + y") + S3("y + 1") == S3("x^2 + 2*y + 1")


def test_multiplication_examples():
    S2, S3 = PolyRing(2, ["x", "y"]), PolyRing(3, ["x", "y"])
    assert S2("x + y") * S2("x + y") == S2("x^2 + y^2")
    assert S2("x + y") * S2.one() == S2("x + y")
    assert S3("x + y") * S3("x + 2*y") == S3("x^2 + 2*y^2")


def test_frobenius_examples():
    S2, S3 = PolyRing(2, ["x", "y"]), PolyRing(3, ["x", "y"])
    assert S2("x + y").frobenius_power(1) == S2("x^2 + y^2")
    assert S3("x + 2*y").frobenius_power(0) == S3("x + 2*y")
    assert S3("x + 2*y").frobenius_power(1) == S3("x^3 + 2*y^3")


def test_parse_examples():
    S = PolyRing(2, ["x", "y", "z"])
    f = S.parse("x^3+y^3+z^3")
    assert dict(f.coeffs) == {(3, 0, 0): 1, (0, 3, 0): 1, (0, 0, 3): 1}
    assert S.parse("0").is_zero()
    S3 = PolyRing(3, ["x", "y"])
    assert S3.parse("2*x*y + 3") == S3.monomial((1, 1), 2)


def test_parse_implicit_multiplication_and_signs():
    S = PolyRing(5, ["x", "y"])
    assert S("3x y^2 - y") == S("3*x*y^2 + 4*y")
    assert S("-x") == S("4*x")
    assert S(" x ^ 2 * y ") == S.monomial((2, 1))


@pytest.mark.parametrize(
    "text, position",
    [("x + w", 4), ("x +", 3), ("x^", 2), ("x $ y", 2), ("*x", 0), ("", 0), ("x y ^ z", 6)],
)
def test_parse_errors_report_position(text, position):
    S = PolyRing(2, ["x", "y"])
    with pytest.raises(ParseError) as info:
        S.parse(text)
    assert info.value.position == position


def test_render_round_trip():
    S = PolyRing(3, ["x", "y", "z"])
    f = S("2*x^2*y + z^3 - 1")
    assert S.parse(str(f)) == f
    assert str(S.zero()) == "0"


def test_ring_validation():
    with pytest.raises(ValueError):
        PolyRing(4, ["x"])
    with pytest.raises(ValueError):
        PolyRing(65537, ["x"])
    with pytest.raises(ValueError):
        PolyRing(2, ["x", "x"])
    with pytest.raises(ValueError):
        PolyRing(2, ["x"], order="deglex")
    with pytest.raises(ValueError):
        PolyRing(2, [])


def test_mixed_rings_rejected():
    with pytest.raises(RingMismatchError):
        PolyRing(2, ["x"])("x") + PolyRing(3, ["x"])("x")


def test_exponent_overflow():
    S = PolyRing(2, ["x"])
    with pytest.raises(ExponentOverflowError):
        S.monomial((MAX_EXPONENT,)) * S("x")
    with pytest.raises(ExponentOverflowError):
        S("x^2").frobenius_power(16)


def test_homogeneity_and_degree():
    S = PolyRing(2, ["x", "y"])
    assert S("x^2 + x*y").is_homogeneous()
    assert not S("x^2 + y").is_homogeneous()
    assert S("x^2 + y").degree() == 2
    parts = S("x^2 + y + 1").homogeneous_components()
    assert sorted(parts) == [0, 1, 2]


def test_derivative():
    S = PolyRing(3, ["x", "y"])
    assert S("x^3 + x^2*y").derivative("x") == S("2*x*y")


def test_lead_monomial_orders():
    G = PolyRing(2, ["x", "y", "z"])
    L = PolyRing(2, ["x", "y", "z"], order="lex")
    assert G("x*z + y^2").lead_monomial() == (0, 2, 0)
    assert L("x*z + y^2").lead_monomial() == (1, 0, 1)


@settings(max_examples=1000, deadline=None)
@given(triples())
def test_ring_axioms(t):
    f, g, h = t
    assert (f + g) + h == f + (g + h)
    assert f + g == g + f
    assert (f * g) * h == f * (g * h)
    assert f * g == g * f
    assert f * (g + h) == f * g + f * h
    assert f - f == f.ring.zero()


@settings(max_examples=300, deadline=None)
@given(polys(), st.integers(0, 2))
def test_frobenius_matches_repeated_squaring(f, e):
    p = f.ring.p
    power = p**e
    base, acc = f, f.ring.one()
    while power:
        if power & 1:
            acc = acc * base
        base = base * base
        power >>= 1
    assert f.frobenius_power(e) == acc


@pytest.mark.parametrize("order", ["grevlex", "lex"])
@settings(max_examples=300, deadline=None)
@given(a=monomials, b=monomials, c=monomials)
def test_order_axioms(order, a, b, c):
    S = PolyRing(2, ["x", "y", "z"], order=order)
    key = S.key
    assert key(S.one_monomial) <= key(a)
    if key(a) < key(b):
        ac = tuple(i + j for i, j in zip(a, c))
        bc = tuple(i + j for i, j in zip(b, c))
        assert key(ac) < key(bc)
