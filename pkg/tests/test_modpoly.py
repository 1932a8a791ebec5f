import pytest
from hypothesis import given, settings, strategies as st

from newmandiv.modpoly import (
    MINUS_INFINITY,
    CapacityError,
    IntPoly,
    ModPoly,
    Prime,
    mp_gcd,
    mp_mul,
    mp_rem,
    resultant_prs,
    resultant_sylvester,
)

P5 = Prime(5)
P7 = Prime(7)
P11 = Prime(11)


# ---------------------------------------------------------------- primes


def test_prime_accepts_primes():
    for p in (2, 3, 5, 7, 11, 13, 17, 2**31 - 1):
        assert Prime(p).value == p


def test_prime_rejects_composites_and_range():
    for bad in (0, 1, 4, 9, 15, 561, 341550071728321):  # 561 = Carmichael
        with pytest.raises(ValueError):
            Prime(bad)
    with pytest.raises(ValueError):
        Prime(2**31 + 11)  # prime but above the cap


# ---------------------------------------------------------------- canonical form


def test_modpoly_canonical():
    f = ModPoly(P5, [6, 0, 5, 10])  # reduces to [1]
    assert list(f.coeffs) == [1]
    assert f.degree() == 0
    z = ModPoly(P5, [0, 0, 0])
    assert z.is_zero()
    assert z.degree() == MINUS_INFINITY
    assert z.degree() < 0  # the sentinel still orders sensibly


def test_modpoly_immutable():
    f = ModPoly(P5, [1, 2])
    with pytest.raises(AttributeError):
        f.coeffs = None
    with pytest.raises(ValueError):
        f.coeffs[0] = 3


def test_intpoly_eval_and_degree():
    f = IntPoly([1, 0, -3, 2])  # 2x^3 - 3x^2 + 1
    assert f.degree() == 3
    assert f(2) == 16 - 12 + 1
    assert IntPoly([]).degree() == MINUS_INFINITY


# ---------------------------------------------------------------- mul / rem


def test_mul_difference_of_squares():
    f = ModPoly(P5, [1, 1])
    g = ModPoly(P5, [1, -1])
    assert mp_mul(f, g) == ModPoly(P5, [1, 0, 4])


def test_mul_absorbing_zero():
    f = ModPoly(P7, [3, 1, 4])
    assert mp_mul(f, ModPoly.zero(P7)).is_zero()


def test_mul_telescoping():
    # (1 - t)(1 + t + t^2) = 1 - t^3
    f = ModPoly(P7, [1, -1])
    g = ModPoly(P7, [1, 1, 1])
    assert mp_mul(f, g) == ModPoly(P7, [1, 0, 0, 6])


def test_rem_exact_division():
    f = ModPoly(P7, [-1, 0, 1])  # t^2 - 1
    g = ModPoly(P7, [-1, 1])  # t - 1
    assert mp_rem(f, g).is_zero()


def test_rem_small_degree_passthrough():
    f = ModPoly(P7, [3, 1])
    g = ModPoly(P7, [1, 2, 1])
    assert mp_rem(f, g) == f


def test_rem_worked_example():
    # t^5 + t^3 + 1 = t^3 (t^2 + 1) + 1
    f = ModPoly(P11, [1, 0, 0, 1, 0, 1])
    g = ModPoly(P11, [1, 0, 1])
    assert mp_rem(f, g) == ModPoly(P11, [1])


def test_rem_by_zero_raises():
    with pytest.raises(ZeroDivisionError):
        mp_rem(ModPoly(P5, [1, 1]), ModPoly.zero(P5))


def test_modulus_mismatch():
    with pytest.raises(ValueError):
        mp_mul(ModPoly(P5, [1]), ModPoly(P7, [1]))


# ---------------------------------------------------------------- resultants: frozen oracles

# Exact values computed independently via the Sylvester determinant (and
# double-checked against a CAS) before being frozen here.


def test_res_linear_pair():
    # monic linears: Res(t-2, t-3) = 2 - 3 = -1
    assert resultant_sylvester(IntPoly([-2, 1]), IntPoly([-3, 1])) == -1


def test_res_shared_root_is_zero():
    f = ModPoly(P7, [-1, 0, 1])
    g = ModPoly(P7, [-1, 1])
    assert resultant_prs(f, g) == 0


def test_res_discriminant_companion():
    # Res(t^5+t^3+1, 5t^4+3t^2) = 3233 = 108*1^5 + 3125
    f = IntPoly([1, 0, 0, 1, 0, 1])
    g = IntPoly([0, 0, 3, 0, 5])
    assert resultant_sylvester(f, g) == 3233
    fm = ModPoly(P7, [1, 0, 0, 1, 0, 1])
    gm = ModPoly(P7, [0, 0, 3, 0, 5])
    assert resultant_prs(fm, gm) == 3233 % 7 == 6


def test_res_quintic_vs_quadratic():
    # Res(x^5 + a x^3 + 1, x^2 - 1) = -a^2 - 2a; at a = 2 this is -8
    a = 2
    f = IntPoly([1, 0, 0, a, 0, 1])
    g = IntPoly([-1, 0, 1])
    assert resultant_sylvester(f, g) == -(a**2) - 2 * a == -8


def test_res_quintic_vs_quintic():
    # Res(x^5 + a x^3 + 1, 2x^5 - 3) = -108 a^5 - 3125; at a = 1: -3233
    f = IntPoly([1, 0, 0, 1, 0, 1])
    g = IntPoly([-3, 0, 0, 0, 0, 2])
    assert resultant_sylvester(f, g) == -3233


def test_res_constant_rule():
    f = ModPoly(P7, [2, 0, 5, 1])  # degree 3
    c = ModPoly(P7, [4])
    assert resultant_prs(f, c) == pow(4, 3, 7)
    assert resultant_prs(c, f) == pow(4, 3, 7)  # (-1)^(3*0) = +1


def test_res_zero_cases():
    f = ModPoly(P5, [1, 1])
    assert resultant_prs(f, ModPoly.zero(P5)) == 0
    with pytest.raises(ValueError):
        resultant_prs(ModPoly.zero(P5), ModPoly.zero(P5))
    with pytest.raises(ValueError):
        resultant_sylvester(IntPoly.zero(), IntPoly.zero())


def test_sylvester_degree_cap():
    big = IntPoly([1] * 202)
    with pytest.raises(CapacityError):
        resultant_sylvester(big, IntPoly([1, 1]))


# ---------------------------------------------------------------- property tests

primes_st = st.sampled_from([2, 3, 5, 7, 11, 13, 17, 101])


def intpoly_st(max_deg=8, max_coeff=9):
    return st.lists(
        st.integers(min_value=-max_coeff, max_value=max_coeff),
        min_size=1,
        max_size=max_deg + 1,
    ).map(IntPoly)


@given(primes_st, intpoly_st(), intpoly_st())
@settings(max_examples=150, deadline=None)
def test_reduction_commutes_with_resultant(p, f, g):
    """Property: Res(f mod p, g mod p) == Res(f, g) mod p when p divides
    neither leading coefficient."""
    if f.is_zero() or g.is_zero():
        return
    pr = Prime(p)
    if f.leading() % p == 0 or g.leading() % p == 0:
        return
    exact = resultant_sylvester(f, g)
    assert resultant_prs(f.reduce_mod(pr), g.reduce_mod(pr)) == exact % p


@given(primes_st, intpoly_st(), intpoly_st())
@settings(max_examples=150, deadline=None)
def test_resultant_symmetry(p, f, g):
    """Property: Res(f,g) = (-1)^(deg f * deg g) Res(g,f)."""
    pr = Prime(p)
    fm, gm = f.reduce_mod(pr), g.reduce_mod(pr)
    if fm.is_zero() or gm.is_zero():
        return
    lhs = resultant_prs(fm, gm)
    rhs = resultant_prs(gm, fm)
    sign = (-1) ** (int(fm.degree()) * int(gm.degree()))
    assert lhs == rhs * sign % p


@given(primes_st, intpoly_st(5), intpoly_st(5), intpoly_st(5))
@settings(max_examples=150, deadline=None)
def test_resultant_multiplicative(p, f, g, h):
    """Property: Res(f, g*h) = Res(f, g) * Res(f, h)."""
    pr = Prime(p)
    fm, gm, hm = f.reduce_mod(pr), g.reduce_mod(pr), h.reduce_mod(pr)
    if fm.is_zero() or gm.is_zero() or hm.is_zero():
        return
    lhs = resultant_prs(fm, mp_mul(gm, hm))
    rhs = resultant_prs(fm, gm) * resultant_prs(fm, hm) % p
    assert lhs == rhs


@given(primes_st, intpoly_st(), intpoly_st())
@settings(max_examples=150, deadline=None)
def test_resultant_zero_iff_common_factor(p, f, g):
    """Property: Res(f,g) = 0 exactly when gcd(f,g) has positive degree."""
    pr = Prime(p)
    fm, gm = f.reduce_mod(pr), g.reduce_mod(pr)
    if fm.is_zero() or gm.is_zero():
        return
    r = resultant_prs(fm, gm)
    d = mp_gcd(fm, gm).degree()
    assert (r == 0) == (d > 0)


@given(primes_st, intpoly_st(6), intpoly_st(6))
@settings(max_examples=120, deadline=None)
def test_rem_is_division_remainder(p, f, g):
    """Property: f = q*g + rem for some q (checked via degree + evaluation)."""
    pr = Prime(p)
    fm, gm = f.reduce_mod(pr), g.reduce_mod(pr)
    if gm.is_zero():
        return
    r = mp_rem(fm, gm)
    assert r.is_zero() or r.degree() < gm.degree()
    # f ≡ r (mod g), so at any GF(p) root of g the two agree
    for x0 in range(min(p, 12)):
        if gm(x0) == 0:
            assert fm(x0) == r(x0)


def test_large_prime_paths():
    # exercise the row-by-row mul path and PRS adaptive reduction with a big p
    p = Prime(2**31 - 1)
    f = ModPoly(p, [2**31 - 2, 123456789, 1])
    g = ModPoly(p, [7, 2**31 - 5])
    # cross-check against exact Sylvester
    fi = IntPoly([int(c) for c in f.coeffs])
    gi = IntPoly([int(c) for c in g.coeffs])
    assert resultant_prs(f, g) == resultant_sylvester(fi, gi) % p.value
    h = mp_mul(f, f)
    hi = fi * fi
    assert list(h.coeffs) == [c % p.value for c in hi.coeffs]
