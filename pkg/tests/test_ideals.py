import pytest
from hypothesis import given, settings, strategies as st

from nesthilb.ideals import (CutoffTooSmall,
                             InfeasibleHilbertFunction, Nesting, NotMPrimary,
                             NotNested, family_8points, family_delta, family_I1,
                             family_I2, family_twisted_cubic_cone,
                             generic_ideal_with_hilbert_function,
                             ideal_from_generators, power_of_max_ideal,
                             quotient_module, subquotient_module, zero_ideal)
from nesthilb.linalg import FieldSpec, QQ
from nesthilb.parsing import parse_polynomial
from nesthilb.ring import RingCtx, scatter_rows
from nesthilb.verify import sharpness_ideal

FP = FieldSpec.prime(32003)


def _gens(ctx, fld, *texts):
    return [parse_polynomial(t, ctx, fld) for t in texts]


def test_linear_ideal_has_trivial_quotient():
    ctx = RingCtx(2)
    ideal = ideal_from_generators(ctx, QQ, _gens(ctx, QQ, "x1", "x2"), cutoff=2)
    assert ideal.dim_at(1) == 2 and ideal.dim_at(2) == 3
    assert tuple(ideal.hilbert_function().entries) == (1,)


def test_determinantal_families():
    ctx = RingCtx(4)
    i2 = family_I2(ctx, QQ)
    assert tuple(i2.hilbert_function().entries) == (1, 4, 2)
    assert i2.generator_degrees() == {2: 8}
    delta = family_delta(ctx, QQ, cutoff=6)
    h = delta.hilbert_function()
    assert h.truncated
    assert all(h(i) == 4 for i in range(1, 7))
    assert not delta.is_m_primary
    with pytest.raises(NotMPrimary):
        h.size  # colength undefined for truncations


def test_power_of_max_ideal_profiles():
    ctx = RingCtx(3)
    assert tuple(power_of_max_ideal(ctx, QQ, 1).hilbert_function().entries) == (1,)
    m2 = power_of_max_ideal(ctx, QQ, 2)
    assert tuple(m2.hilbert_function().entries) == (1, 3)
    assert m2.colength() == 4
    assert power_of_max_ideal(ctx, QQ, 5).colength() == 35


def test_hilbert_function_fixtures():
    ctx = RingCtx(4)
    i1 = family_I1(ctx, QQ, 2)
    assert tuple(i1.hilbert_function().entries) == (1, 2)
    z = family_8points(ctx, QQ)
    assert tuple(z.hilbert_function().entries) == (1, 4, 3)
    assert z.colength() == 8


def test_containment_fixtures():
    ctx = RingCtx(4)
    z = family_8points(ctx, QQ)
    cone = family_twisted_cubic_cone(ctx, QQ, cutoff=3)
    assert z.contains(cone)
    assert z.contains(power_of_max_ideal(ctx, QQ, 5))
    assert z.contains(z)
    assert not cone.is_m_primary
    with pytest.raises(CutoffTooSmall):
        cone.contains(z)  # truncation cannot certify containing an m-primary ideal


def test_contains_element():
    ctx = RingCtx(4)
    z = family_8points(ctx, QQ)
    det = parse_polynomial("x1*x4 - x2*x3", ctx, QQ)
    assert z.contains_element(det)
    assert not z.contains_element(parse_polynomial("x1*x2", ctx, QQ))


def test_subquotient_dims_from_explicit_pair():
    _, outer, inner = sharpness_ideal(QQ)
    ctx = outer.ctx
    m3 = power_of_max_ideal(ctx, QQ, 3)
    top = subquotient_module(m3, inner)
    assert (top.lo, top.hi) == (3, 4)
    assert top.dims == [3, 2]
    bottom = subquotient_module(outer, m3)
    assert bottom.dims[bottom.lo - bottom.lo] == 10 and sum(bottom.dims) == 10
    assert top.check_commuting() and bottom.check_commuting()
    with pytest.raises(NotNested):
        subquotient_module(inner, m3)  # containment goes the other way


def test_quotient_module_of_unit_like_ideal():
    ctx = RingCtx(3)
    m = power_of_max_ideal(ctx, QQ, 1)
    mod = quotient_module(m)
    assert mod.dims == [1]
    assert mod.check_commuting()


@pytest.mark.parametrize("fld", [QQ, FP])
def test_generic_ideal_reproduces_profile(fld):
    ctx = RingCtx(4)
    q = (1, 4, 10, 18, 10)
    ideal = generic_ideal_with_hilbert_function(ctx, fld, q, seed=12)
    assert tuple(ideal.hilbert_function().entries) == q
    assert ideal.is_m_primary


def test_generic_compressed_profile_is_quadrics_plus_cube():
    # profile (1, n, 2): a codimension-2 space of quadrics plus all cubics
    ctx = RingCtx(4)
    ideal = generic_ideal_with_hilbert_function(ctx, QQ, (1, 4, 2), seed=3)
    assert ideal.dim_at(2) == ctx.dim(2) - 2
    assert ideal.dim_at(1) == 0
    assert ideal.contains(power_of_max_ideal(ctx, QQ, 3))


def test_generic_trivial_and_infeasible_cases():
    ctx = RingCtx(3)
    m = generic_ideal_with_hilbert_function(ctx, QQ, (1,), seed=99)
    assert m.equals(power_of_max_ideal(ctx, QQ, 1))
    with pytest.raises(InfeasibleHilbertFunction):
        generic_ideal_with_hilbert_function(RingCtx(4), QQ, (1, 4, 10, 18, 10, 1),
                                            seed=3, max_retries=2)


def test_generic_ideal_deterministic_across_fields():
    qq = generic_ideal_with_hilbert_function(RingCtx(3), QQ, (1, 3, 4), seed=5)
    fp = generic_ideal_with_hilbert_function(RingCtx(3), FP, (1, 3, 4), seed=5)
    a = qq.bases[2].to_lists()
    b = fp.bases[2].to_lists()
    assert len(a) == len(b)  # same shape; entries agree after reduction


PROFILES = st.sampled_from([
    (2, (1, 2, 2)), (2, (1, 2, 3, 2)), (3, (1, 3, 4)), (3, (1, 3, 5, 2)),
    (3, (1, 3, 6, 8, 4)), (4, (1, 4, 3)), (4, (1, 4, 6)),
])


@settings(max_examples=25, deadline=None)
@given(PROFILES, st.integers(min_value=0, max_value=50))
def test_generated_ideals_are_closed_under_multiplication(profile, seed):
    n, q = profile
    ctx = RingCtx(n)
    ideal = generic_ideal_with_hilbert_function(ctx, FP, q, seed=seed)
    for d in range(ideal.cutoff):
        basis, _ = ideal.basis_at(d)
        nxt, piv = ideal.basis_at(d + 1)
        for j in range(n):
            moved = scatter_rows(ctx, basis, j, d)
            resid = moved.sub(moved.take_cols(piv).matmul(nxt))
            assert resid.is_zero()
    assert tuple(ideal.hilbert_function().entries) == q


def test_nesting_validation():
    ctx = RingCtx(4)
    i1 = family_I1(ctx, QQ, 2)
    i2 = family_I2(ctx, QQ)
    nest = Nesting([i1, i2])
    assert nest.colengths == [3, 7]
    with pytest.raises(NotNested):
        Nesting([i2, i1])
    with pytest.raises(NotMPrimary):
        Nesting([family_delta(ctx, QQ, cutoff=4)])


def test_zero_ideal_subquotient_window():
    ctx = RingCtx(3)
    m2 = power_of_max_ideal(ctx, QQ, 2)
    mod = subquotient_module(m2, zero_ideal(ctx, QQ, cutoff=4), hi=4)
    assert mod.dims == [6, 10, 15]
    assert mod.check_commuting()
