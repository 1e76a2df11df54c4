import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from unitary_complex.errors import CapacityError, DomainError
from unitary_complex.ideal import (
    SimplicialComplex,
    UnitaryIdeal,
    close_under_unitary_divisors,
    complex_of,
    interval_ideal,
)
from unitary_complex.multfunc import MultiplicativeFunction, constant
from unitary_complex.repro import random_ideal, random_rational
from unitary_complex.summation import (
    g_sum_direct,
    g_sum_fvector,
    g_sum_inclusion_exclusion,
    k_values,
    kozlov_vertex,
    psi,
    psi_bruteforce,
    psi_piecewise,
    psi_piecewise_level,
    psi_threshold,
)

F = Fraction


def test_direct_examples():
    assert g_sum_direct(UnitaryIdeal({1}), constant(7)) == 1
    S = close_under_unitary_divisors({12})
    assert g_sum_direct(S, MultiplicativeFunction({3: 2, 4: 5})) == 18
    sqfree = close_under_unitary_divisors({2 * 3 * 5 * 7})
    g = MultiplicativeFunction({2: F(1, 2), 3: 2, 5: 4, 7: F(2, 3)})
    assert g_sum_direct(sqfree, g) == F(3, 2) * 3 * 5 * F(5, 3)
    g = MultiplicativeFunction({2: F(1, 2), 3: -1, 5: 4, 7: F(2, 3)})
    assert g_sum_direct(sqfree, g) == 0


def test_fvector_examples():
    assert g_sum_fvector((3, 3, 1), 1) == 8
    assert g_sum_fvector((2, 1), 2) == 9
    assert g_sum_fvector((5, 7, 2), 0) == 1
    assert g_sum_fvector(complex_of(close_under_unitary_divisors({12})).f_vector(), 2) == 9


def test_inclusion_exclusion_examples():
    cx = complex_of(UnitaryIdeal({1, 2, 3}))
    assert g_sum_inclusion_exclusion(cx.facets(), constant(1)) == 3
    full = complex_of(close_under_unitary_divisors({60}))
    g = MultiplicativeFunction({3: 2, 4: 5, 5: F(-1, 2)})
    assert g_sum_inclusion_exclusion(full.facets(), g) == 3 * 6 * F(1, 2)
    d30 = complex_of(interval_ideal(30))
    assert g_sum_inclusion_exclusion(d30.facets(), constant(1)) == 30


def test_inclusion_exclusion_cap():
    fs = complex_of(interval_ideal(30)).facets()
    with pytest.raises(CapacityError):
        g_sum_inclusion_exclusion(fs, constant(1), cap=16)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32))
def test_route_equivalence(seed):
    rng = random.Random(seed)
    S, cx, fs = random_ideal(rng)
    assert len(S) <= 2**12
    g = MultiplicativeFunction({q: random_rational(rng, -3, 3) for q in S.vertices})
    assert g_sum_direct(S, g) == g_sum_inclusion_exclusion(fs, g)
    c = random_rational(rng, -3, 3)
    want = g_sum_fvector(cx.f_vector(), c)
    assert g_sum_direct(S, constant(c)) == want == g_sum_inclusion_exclusion(fs, constant(c))


@pytest.mark.parametrize(
    "r, i, vec", [(4, 1, (4, 0, 0, 0)), (4, 4, (4, 6, 4, 1)), (5, 2, (5, 10, 0, 0, 0))]
)
def test_kozlov_vertex(r, i, vec):
    assert kozlov_vertex(r, i).vector == vec


def test_kozlov_vertex_range():
    for r, i in ((3, 0), (3, 4), (0, 1)):
        with pytest.raises(DomainError):
            kozlov_vertex(r, i)


def test_psi_examples():
    res = psi(5, -1)
    assert res.k_values == (-5, 5, -5, 0, -1)
    assert (res.value, res.argmax_level) == (6, 2)
    res = psi(4, -5)
    assert res.argmax_level == 4
    assert res.value == psi_bruteforce(4, -5)
    for r in range(1, 9):
        assert psi(r, F(1, 3)).argmax_level == r
    assert psi(3, 2).value == 27 == psi_bruteforce(3, 2)


def test_psi_value_is_kozlov_dot_product():
    for r in range(1, 7):
        for c in (F(-7, 2), F(-1), F(-1, 5), F(2)):
            res = psi(r, c)
            vec = kozlov_vertex(r, res.argmax_level).vector
            assert res.value == g_sum_fvector(vec, c)


def test_psi_piecewise_examples():
    assert psi_piecewise(5, 1) == 32
    assert psi_piecewise(5, F(-1, 10)) == psi(5, F(-1, 10)).value
    assert psi_piecewise_level(5, F(-1, 10)) == 2
    assert psi_piecewise(4, -5) == psi(4, -5).value
    assert psi_piecewise_level(4, -5) == 4


def test_psi_piecewise_boundaries():
    with pytest.raises(DomainError, match="ambiguous boundary"):
        psi_piecewise(5, 0)
    with pytest.raises(DomainError, match="ambiguous boundary"):
        psi_piecewise(5, psi_threshold(5, 1))  # -2
    with pytest.raises(DomainError):
        psi_piecewise(0, 1)


def test_psi_bruteforce_examples():
    for c in (F(-3), F(1, 2), F(5)):
        assert psi_bruteforce(1, c) == 1 + c
    assert psi_bruteforce(4, -1) == psi(4, -1).value
    with pytest.raises(CapacityError):
        psi_bruteforce(6, 1)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4), st.fractions(min_value=-10, max_value=10, max_denominator=12))
def test_psi_oracle(r, c):
    value = psi(r, c).value
    assert value == psi_bruteforce(r, c)
    try:
        assert psi_piecewise(r, c) == value
    except DomainError:
        pass


@given(st.integers(1, 40), st.fractions(min_value=-20, max_value=20, max_denominator=30))
def test_psi_piecewise_agrees_off_boundary(r, c):
    try:
        pw = psi_piecewise(r, c)
    except DomainError:
        return
    assert pw == psi(r, c).value


@given(st.integers(3, 30), st.fractions(min_value=-20, max_value=20, max_denominator=30))
def test_difference_identity(r, c):
    K = (F(0),) + k_values(r, c)  # K[0] = 0 pads the empty sum
    i = 0
    while 2 * i + 2 <= r:
        diff = K[2 * i + 2] - K[2 * i]
        assert diff == c ** (2 * i + 1) * (math.comb(r, 2 * i + 1) + c * math.comb(r, 2 * i + 2))
        if c < 0 and 2 * i + 1 < r:
            t = psi_threshold(r, i)
            assert (diff > 0) == (c < t)
        i += 1


def test_threshold_monotonicity():
    for r in range(3, 51):
        ts = [psi_threshold(r, i) for i in range(0, (r - 2) // 2 + 1) if 2 * i + 1 < r]
        assert all(a > b for a, b in zip(ts, ts[1:])), r


def test_zig_zag_for_odd_r():
    rng = random.Random(7)
    for r in range(3, 16, 2):
        for _ in range(40):
            c = -random_rational(rng, 0, 10, max_den=11) - F(1, 1000)
            K = (F(0),) + k_values(r, c)
            for i in range(1, (r - 1) // 2 + 1):
                assert K[2 * i + 1] <= K[2 * i]
            for i in range(0, (r - 3) // 2 + 1):
                assert K[2 * i + 1] <= K[2 * i + 2]


def test_full_simplex_product():
    cx = SimplicialComplex.full_simplex(4)
    assert g_sum_fvector(cx.f_vector(), 3) == 4**4
