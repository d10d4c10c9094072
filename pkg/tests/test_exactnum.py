"""Scalar domains: rationals, Q(w), prime fields."""

import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from st34.exactnum import (
    BadPrimeError,
    Eisenstein,
    IDENTITY_PRIMES,
    OMEGA,
    THETA,
    UNITS,
    PrimeField,
    crt,
    eis_str,
    mod_project,
    parse_eis,
    parse_rat,
    rat_str,
    rational,
    rational_reconstruct,
    unit_pow,
)

rationals = st.builds(
    mpq, st.integers(min_value=-10**6, max_value=10**6), st.integers(min_value=1, max_value=10**4)
)
eisensteins = st.builds(Eisenstein, rationals, rationals)


def test_rational_reduce():
    assert rational(-6, -4) == mpq(3, 2)
    assert rat_str(rational(-6, -4)) == "3/2"
    assert rational(0, 7) == 0 and rat_str(rational(0, 7)) == "0"
    assert rational(64, 27) == mpq(64, 27)
    with pytest.raises(ZeroDivisionError):
        rational(1, 0)


def test_rational_serialization_roundtrip():
    for s in ("3/2", "-3/2", "0", "17", "-1/619872782080"):
        assert rat_str(parse_rat(s)) == s


def test_omega_minimal_polynomial():
    assert OMEGA * OMEGA == Eisenstein(-1, -1)  # w^2 = -1 - w
    assert OMEGA**3 == Eisenstein(1)


def test_theta_squares_to_minus_three():
    assert THETA == Eisenstein(1, 2)
    assert THETA * THETA == Eisenstein(-3)
    assert THETA == OMEGA - OMEGA.conj()


def test_norm_example():
    assert Eisenstein(1, 2).norm() == 3


def test_unit_group():
    assert len(set(UNITS)) == 6
    assert all((u * u.conj()) == Eisenstein(1) for u in UNITS)
    assert [unit_pow(k) for k in range(6)] == [unit_pow(k + 6) for k in range(6)]
    assert len({unit_pow(k) for k in range(6)}) == 6


@settings(max_examples=50)
@given(eisensteins, eisensteins, eisensteins)
def test_eisenstein_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a + b == b + a and a * b == b * a


@settings(max_examples=50)
@given(eisensteins, eisensteins)
def test_conj_involution_and_norm_multiplicative(a, b):
    assert a.conj().conj() == a
    assert (a * b).conj() == a.conj() * b.conj()
    assert (a * b).norm() == a.norm() * b.norm()


@settings(max_examples=30)
@given(eisensteins)
def test_division(a):
    if not a.is_zero():
        assert (a / a) == Eisenstein(1)
        assert a * (Eisenstein(1) / a) == Eisenstein(1)
    else:
        with pytest.raises(ZeroDivisionError):
            Eisenstein(1) / a


@settings(max_examples=50)
@given(eisensteins)
def test_eisenstein_serialization_roundtrip(a):
    assert parse_eis(eis_str(a)) == a


def test_mod_project_examples():
    assert mod_project(mpq(3, 2), 7) == 5
    assert mod_project(0, IDENTITY_PRIMES[0]) == 0
    p = IDENTITY_PRIMES[3]
    r = mod_project(mpq(1, 619872782080), p)
    assert r * 619872782080 % p == 1


def test_mod_project_bad_prime():
    with pytest.raises(BadPrimeError):
        PrimeField(IDENTITY_PRIMES[0]).project(mpq(1, IDENTITY_PRIMES[0]))


def test_prime_field_has_cube_root_of_unity():
    for p in IDENTITY_PRIMES[:3]:
        gf = PrimeField(p)
        assert gf.omega != 1 and pow(gf.omega, 3, p) == 1
        assert (gf.omega**2 + gf.omega + 1) % p == 0


def test_identity_primes_are_62_bit_and_1_mod_3():
    assert len(IDENTITY_PRIMES) == 10
    for p in IDENTITY_PRIMES:
        assert p.bit_length() == 62 and p % 3 == 1
        assert pow(2, p - 1, p) == 1  # Fermat sanity


@settings(max_examples=50)
@given(rationals, rationals)
def test_mod_project_homomorphic(a, b):
    gf = PrimeField(IDENTITY_PRIMES[1])
    assert gf.project(a * b) == gf.project(a) * gf.project(b) % gf.p
    assert gf.project(a + b) == (gf.project(a) + gf.project(b)) % gf.p


@settings(max_examples=100)
@given(rationals)
def test_crt_reconstruction(x):
    primes = list(IDENTITY_PRIMES[:3])
    residues = [mod_project(x, p) for p in primes]
    c, modulus = crt(residues, primes)
    assert rational_reconstruct(c, modulus) == x


def test_crt_product_matches_exact_product():
    # 100 random rationals; CRT image of the product equals product of images
    import random

    rng = random.Random(0)
    primes = list(IDENTITY_PRIMES[:3])
    xs = [mpq(rng.randint(-999, 999), rng.randint(1, 999)) for _ in range(100)]
    prod_exact = mpq(1)
    for x in xs:
        prod_exact *= x
    for p in primes:
        image = 1
        for x in xs:
            image = image * mod_project(x, p) % p
        assert image == mod_project(prod_exact, p)
