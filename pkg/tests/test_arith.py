from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sumprod import arith
from sumprod.config import configure
from sumprod.exceptions import DomainError, FactorizationLimitError


@pytest.mark.parametrize(
    "a, b, expected",
    [(12, 18, 6), (0, 7, 7), (49 * 25, 98, 49), (0, 0, 0)],
)
def test_gcd(a, b, expected):
    assert arith.gcd(a, b) == expected


@pytest.mark.parametrize("n, expected", [(40, (3, 5)), (1, (0, 1)), (35 - 27, (3, 1)), (96, (5, 3))])
def test_v2_split(n, expected):
    assert arith.v2_split(n) == expected


@pytest.mark.parametrize("n", [0, -8])
def test_v2_split_rejects_nonpositive(n):
    with pytest.raises(DomainError):
        arith.v2_split(n)


@given(st.integers(min_value=1, max_value=10**30))
def test_v2_split_reconstructs(n):
    r, odd = arith.v2_split(n)
    assert odd % 2 == 1
    assert 2**r * odd == n


@pytest.mark.parametrize(
    "a, m, expected",
    [(1, 9, 1), (7, 15, -1), (2, 15, 1), (3, 5, -1), (5, 3, -1), (6, 9, 0), (5, 1, 1)],
)
def test_jacobi(a, m, expected):
    assert arith.jacobi(a, m) == expected


@pytest.mark.parametrize("m", [0, -3, 8])
def test_jacobi_rejects_bad_modulus(m):
    with pytest.raises(DomainError):
        arith.jacobi(1, m)


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13, 101, 997, 1999])
def test_jacobi_matches_euler_criterion(p):
    for a in range(p):
        euler = pow(a, (p - 1) // 2, p)
        expected = -1 if euler == p - 1 else euler
        assert arith.jacobi(a, p) == expected


@given(st.integers(min_value=-1000, max_value=1000), st.integers(min_value=0, max_value=500))
def test_jacobi_is_zero_exactly_when_not_coprime(a, half):
    m = 2 * half + 1
    assert (arith.jacobi(a, m) == 0) == (arith.gcd(a, m) > 1)


@pytest.mark.parametrize("m", range(1, 100, 2))
def test_jacobi_is_multiplicative(m):
    symbols = {a: arith.jacobi(a, m) for a in range(-50, 51)}
    for a in range(-50, 51):
        for b in range(-50, 51):
            assert arith.jacobi(a * b, m) == symbols[a] * symbols[b], (a, b)


@given(st.integers(min_value=-(10**9), max_value=10**9), st.integers(min_value=0, max_value=10**5))
def test_jacobi_depends_only_on_the_residue(a, half):
    m = 2 * half + 1
    assert arith.jacobi(a, m) == arith.jacobi(a % m, m)
    assert arith.jacobi(a + m, m) == arith.jacobi(a, m)


@pytest.mark.parametrize(
    "m, expected",
    [(675, (1, 5, 3)), (1, (1, 1, 1)), (360, (5, 3, 2)), (64, (1, 1, 4)), (12, (3, 2, 1))],
)
def test_cubefree_decompose(m, expected):
    d = arith.cubefree_decompose(m)
    assert (d.p1, d.p2, d.p3) == expected
    assert d.reconstruct() == m


@given(st.integers(min_value=1, max_value=10**7))
def test_cubefree_decompose_properties(m):
    d = arith.cubefree_decompose(m)
    assert d.reconstruct() == m
    assert arith.gcd(d.p1, d.p2) == 1
    for part in (d.p1, d.p2):
        assert all(e == 1 for e in arith.factorize(part).values())


def test_cubefree_decompose_rejects_zero():
    with pytest.raises(DomainError):
        arith.cubefree_decompose(0)


def test_factorize_stops_at_the_limit():
    with pytest.raises(FactorizationLimitError) as excinfo:
        arith.factorize(101 * 103, limit=50)
    assert excinfo.value.limit == 50
    assert excinfo.value.remainder == 101 * 103


def test_factorize_uses_configured_limit():
    assert arith.factorize(101 * 103) == {101: 1, 103: 1}
    configure(factor_limit=50)
    with pytest.raises(FactorizationLimitError):
        arith.factorize(101 * 103)


def test_factorize_large_prime_cofactor_within_limit():
    assert arith.factorize(2**5 * 1000003) == {2: 5, 1000003: 1}


@pytest.mark.parametrize("n, expected", [(1, True), (12, True), (8, False), (675, False), (30, True)])
def test_is_cubefree(n, expected):
    assert arith.is_cubefree(n) is expected


@pytest.mark.parametrize(
    "a, b, expected",
    [(1, 3, True), (12, 6, True), (12, 3, False), (49, 7, True), (10, 4, False)],
)
def test_radical_divides(a, b, expected):
    assert arith.radical_divides(a, b) is expected


@pytest.mark.parametrize("p, e, expected", [(3, 4, 11), (1, 3, 1), (1, 20, 1), (7, 3, 7)])
def test_cube_root_mod_2pow(p, e, expected):
    assert arith.cube_root_mod_2pow(p, e) == expected


@given(st.integers(min_value=0, max_value=10**9), st.integers(min_value=3, max_value=64))
def test_cube_root_mod_2pow_cubes_back(half, e):
    p = 2 * half + 1
    u = arith.cube_root_mod_2pow(p, e)
    assert u % 2 == 1
    assert 0 < u < 2**e
    assert pow(u, 3, 2**e) == p % 2**e


def test_cube_root_mod_2pow_is_the_unique_root():
    e = 10
    cubes = {}
    for u in range(1, 2**e, 2):
        cubes.setdefault(pow(u, 3, 2**e), []).append(u)
    for p, roots in cubes.items():
        assert roots == [arith.cube_root_mod_2pow(p, e)]


@pytest.mark.parametrize("m", [1, 2, 3, 5])
def test_cube_root_exponent_closed_form(m):
    e = 2 * m + 2
    assert arith.cube_root_exponent(e) == (2 ** (2 * m + 1) + 1) // 3 % 2 ** (e - 2)


@pytest.mark.parametrize("p, e", [(4, 5), (-3, 5), (3, 2)])
def test_cube_root_mod_2pow_rejects_bad_input(p, e):
    with pytest.raises(DomainError):
        arith.cube_root_mod_2pow(p, e)


@pytest.mark.parametrize(
    "q, expected",
    [(Fraction(49, 100), Fraction(7, 10)), (Fraction(0), Fraction(0)), (Fraction(1, 2), None), (Fraction(9, 8), None)],
)
def test_is_square_rat(q, expected):
    assert arith.is_square_rat(q) == expected


def test_is_square_rat_rejects_negative():
    with pytest.raises(DomainError):
        arith.is_square_rat(Fraction(-1, 4))


@given(st.fractions(min_value=0, max_denominator=10**6))
def test_is_square_rat_of_a_square(q):
    assert arith.is_square_rat(q * q) == q
