import pytest
from hypothesis import given, settings, strategies as st

from nesthilb.ideals import power_of_max_ideal
from nesthilb.linalg import FieldSpec, QQ
from nesthilb.parsing import (IdealSpecError, NotHomogeneous, PolySyntaxError,
                              UnknownVariable, parse_ideal_spec,
                              parse_nesting_spec, parse_polynomial)
from nesthilb.ring import RingCtx

FP = FieldSpec.prime(32003)


def test_parse_examples():
    ctx = RingCtx(4)
    det = parse_polynomial("x1*x4 - x2*x3", ctx, QQ)
    assert det.degree == 2 and len(det.coeffs) == 2
    const = parse_polynomial("3", ctx, QQ)
    assert const.degree == 0 and list(const.coeffs.values()) == [3]
    underscore = parse_polynomial("x_1*x_4 - x_2*x_3", ctx, QQ)
    assert underscore.coeffs == det.coeffs


def test_parse_rejects_inhomogeneous():
    ctx = RingCtx(2)
    with pytest.raises(NotHomogeneous) as exc:
        parse_polynomial("x_1^2 + x_2", ctx, QQ)
    assert exc.value.degrees == {1, 2}


def test_parse_error_positions():
    ctx = RingCtx(2)
    with pytest.raises(PolySyntaxError) as exc:
        parse_polynomial("x1 + @", ctx, QQ)
    assert exc.value.pos == 5
    with pytest.raises(PolySyntaxError):
        parse_polynomial("x1 * * x2", ctx, QQ)
    with pytest.raises(PolySyntaxError):
        parse_polynomial("(x1 + x2", ctx, QQ)
    with pytest.raises(UnknownVariable):
        parse_polynomial("x3", ctx, QQ)


def test_parse_parentheses_and_powers():
    ctx = RingCtx(2)
    f = parse_polynomial("(x1 + x2)^2 - x1^2 - 2*x1*x2", ctx, QQ)
    g = parse_polynomial("x2^2", ctx, QQ)
    assert f.coeffs == g.coeffs
    zero = parse_polynomial("x1*x2 - x2*x1", ctx, QQ)
    assert zero.is_zero()
    neg = parse_polynomial("-x1 + 2*x1", ctx, QQ)
    assert str(neg) == "x1"


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=1, max_value=4), st.integers(min_value=0, max_value=3),
       st.data())
def test_print_parse_roundtrip(n, d, data):
    ctx = RingCtx(n)
    monos = ctx.monomials(d)
    coeffs = data.draw(st.lists(st.integers(min_value=-20, max_value=20),
                                min_size=len(monos), max_size=len(monos)))
    from nesthilb.ring import HomogeneousElement

    f = HomogeneousElement.from_exponents(ctx, QQ, d, dict(zip(monos, coeffs)))
    if f.is_zero():
        return
    again = parse_polynomial(str(f), ctx, QQ)
    assert again.coeffs == f.coeffs


def test_ideal_specs():
    m = parse_ideal_spec("m^3:4", QQ)
    assert m.equals(power_of_max_ideal(RingCtx(4), QQ, 3))
    i1 = parse_ideal_spec("I1:5,2", QQ)
    assert tuple(i1.hilbert_function().entries) == (1, 2)
    z = parse_ideal_spec("8points", QQ)
    assert z.colength() == 8
    g = parse_ideal_spec("generic:q=(1,4,3),seed=7", QQ)
    assert tuple(g.hilbert_function().entries) == (1, 4, 3)
    inline = parse_ideal_spec("gens(2): x1^2; x1*x2; x2^2", QQ)
    assert inline.equals(power_of_max_ideal(RingCtx(2), QQ, 2))
    with pytest.raises(IdealSpecError):
        parse_ideal_spec("nosuch:3", QQ)


def test_ideal_spec_from_file(tmp_path):
    path = tmp_path / "gens.txt"
    path.write_text("# squares\nx1^2\nx1*x2\nx2^2\n")
    ideal = parse_ideal_spec(f"file(2):{path}", QQ)
    assert ideal.equals(power_of_max_ideal(RingCtx(2), QQ, 2))


def test_nesting_spec():
    nest = parse_nesting_spec("I1:4,2 > I2:4", QQ)
    assert nest.colengths == [3, 7]
