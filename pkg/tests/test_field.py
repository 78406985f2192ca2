from __future__ import annotations

from itertools import combinations, product

import pytest

from cyclecert.field import (
    Field,
    is_prime,
    moment_directions_independent,
    moment_row,
    rank,
    smallest_irreducible,
    solve2,
)

SMALL_FIELDS = [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (13, 1), (2, 4)]


def test_is_prime():
    primes = {2, 3, 5, 7, 11, 13, 17, 19, 23}
    assert {n for n in range(25) if is_prime(n)} == primes


def test_modulus_prime_field_is_x():
    assert Field(2, 1).modulus == (0, 1)
    assert Field(7, 1).modulus == (0, 1)


def test_modulus_gf4_unique_quadratic():
    assert Field(2, 2).modulus == (1, 1, 1)


def test_modulus_gf9_matches_exhaustive_oracle():
    # smallest (constant, linear) monic quadratic over F_3 with no roots
    oracle = None
    for c in range(3):
        for b in range(3):
            if all((x * x + b * x + c) % 3 != 0 for x in range(3)):
                oracle = (c, b, 1)
                break
        if oracle:
            break
    assert oracle == (1, 0, 1)
    assert Field(3, 2).modulus == oracle


def test_modulus_is_deterministic():
    assert smallest_irreducible(2, 5) == smallest_irreducible(2, 5)
    assert Field(3, 2) == Field(3, 2)


def test_rejects_bad_parameters():
    with pytest.raises(ValueError):
        Field(4, 1)
    with pytest.raises(ValueError):
        Field(2, 0)


@pytest.mark.parametrize("p,e", SMALL_FIELDS)
def test_field_axioms_exhaustive(p, e):
    F = Field(p, e)
    q = F.q
    elements = range(q)
    for a, b in product(elements, repeat=2):
        assert F.add(a, b) == F.add(b, a)
        assert F.mul(a, b) == F.mul(b, a)
        assert F.add(a, F.neg(a)) == 0
    for a, b, c in product(elements, repeat=3):
        assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
        assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    for a in range(1, q):
        assert F.mul(a, F.inv(a)) == 1
        assert F.pow(a, q - 1) == 1
    assert F.pow(0, 0) == 1


@pytest.mark.parametrize("p,e", SMALL_FIELDS)
def test_index_coeff_round_trip(p, e):
    F = Field(p, e)
    for a in F.elements():
        assert F.from_coeffs(F.coeffs(a)) == a
    assert F.coeffs(0) == (0,) * e
    assert F.coeffs(1)[0] == 1


def test_tables_match_raw_arithmetic():
    for p, e in [(2, 2), (3, 2), (2, 4)]:
        tabled = Field(p, e, use_tables=True)
        raw = Field(p, e, use_tables=False)
        for a, b in product(range(tabled.q), repeat=2):
            assert tabled.mul(a, b) == raw.mul(a, b)
        for a in range(1, tabled.q):
            assert tabled.inv(a) == raw.inv(a)


def test_inverse_of_zero_is_reported():
    with pytest.raises(ZeroDivisionError):
        Field(5, 1).inv(0)


def test_inv_spec_example_gf5():
    assert Field(5, 1).inv(2) == 3


def test_pow_cube_is_identity_in_gf4():
    F = Field(2, 2)
    assert all(F.pow(g, 3) == 1 for g in range(1, 4))


def test_moment_row_examples():
    F3 = Field(3, 1)
    assert moment_row(F3, 2, 5) == (1, 2, 1, 2, 1)
    assert moment_row(F3, 0, 5) == (1, 0, 0, 0, 0)
    F4 = Field(2, 2)
    g = 2  # a non-subfield element of GF(4)
    assert moment_row(F4, g, 3) == (1, g, F4.mul(g, g))
    with pytest.raises(ValueError):
        moment_row(F3, 1, 1)


def test_moment_row_deterministic():
    F = Field(2, 3)
    assert moment_row(F, 5, 5) == moment_row(F, 5, 5)


def test_solve2_identity():
    F = Field(5, 1)
    assert solve2(F, 1, 0, 0, 1, 3, 4) == (3, 4)


def test_solve2_gf3_against_exhaustive_oracle():
    F = Field(3, 1)
    oracle = [
        (s, t)
        for s, t in product(range(3), repeat=2)
        if F.add(s, t) == 0 and F.add(s, F.mul(2, t)) == 1
    ]
    assert oracle == [(2, 1)]
    assert solve2(F, 1, 1, 1, 2, 0, 1) == (2, 1)


def test_solve2_singular_returns_none():
    F = Field(3, 1)
    assert solve2(F, 1, 2, 2, 1, 0, 1) is None  # det = 1 - 4 = 0 mod 3


def test_direction_independence_small_cases():
    assert moment_directions_independent(Field(5, 1), 5)
    assert moment_directions_independent(Field(2, 1), 2)
    with pytest.raises(ValueError):
        moment_directions_independent(Field(3, 1), 5)


def test_direction_independence_gf7_vandermonde_oracle():
    # independent oracle: the Vandermonde determinant prod (a_i - a_j) is
    # nonzero for distinct a_i, so every 5-subset must have full rank
    F = Field(7, 1)
    for subset in combinations(range(7), 5):
        det = 1
        for x, y in combinations(subset, 2):
            det = F.mul(det, F.sub(x, y))
        assert det != 0
    assert moment_directions_independent(F, 5)


def test_rank_gaussian_elimination():
    F = Field(3, 1)
    assert rank(F, [(1, 0), (0, 1)]) == 2
    assert rank(F, [(1, 1), (1, 2)]) == 2
    assert rank(F, [(1, 2), (2, 1)]) == 1  # (2,1) is twice (1,2) mod 3
    assert rank(F, []) == 0
    assert rank(F, [(0, 0)]) == 0
