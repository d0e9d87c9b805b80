import random
from fractions import Fraction

import pytest

from fedosov import linalg
from fedosov.rationals import parse_ratfun
from conftest import random_rational_function


def frac_matrix(rows):
    return [[Fraction(x) for x in row] for row in rows]


def test_rref_identity():
    m = frac_matrix([[1, 0], [0, 1]])
    reduced, pivots = linalg.rref(m)
    assert reduced == m and pivots == [0, 1]


def test_rank_and_nullspace():
    m = frac_matrix([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    assert linalg.rank(m) == 2
    basis = linalg.nullspace(m)
    assert len(basis) == 1
    for row in m:
        assert sum(a * b for a, b in zip(row, basis[0])) == 0


def test_nullspace_of_empty_conditions():
    basis = linalg.nullspace([], ncols=3)
    assert len(basis) == 3


def test_solve_consistent_and_inconsistent():
    a = frac_matrix([[1, 1], [1, -1]])
    x = linalg.solve(a, [Fraction(3), Fraction(1)])
    assert x == [Fraction(2), Fraction(1)]
    b = frac_matrix([[1, 1], [2, 2]])
    assert linalg.solve(b, [Fraction(1), Fraction(3)]) is None


def test_inverse_round_trip():
    rng = random.Random(3)
    for _ in range(20):
        n = rng.randint(1, 5)
        m = [[Fraction(rng.randint(-5, 5)) for _ in range(n)] for _ in range(n)]
        if linalg.det(m) == 0:
            continue
        inv = linalg.inverse(m)
        assert linalg.matmul(m, inv) == [[Fraction(1) if i == j else Fraction(0)
                                          for j in range(n)] for i in range(n)]


def test_inverse_singular_raises():
    with pytest.raises(ValueError):
        linalg.inverse(frac_matrix([[1, 1], [1, 1]]))


def test_det_known_values():
    assert linalg.det(frac_matrix([[2, 0], [0, 3]])) == 6
    assert linalg.det(frac_matrix([[0, 1], [1, 0]])) == -1
    assert linalg.det(frac_matrix([[1, 2], [2, 4]])) == 0


def test_det_matches_permutation_expansion():
    rng = random.Random(9)
    import itertools
    for _ in range(20):
        n = rng.randint(1, 4)
        m = [[Fraction(rng.randint(-4, 4)) for _ in range(n)] for _ in range(n)]
        expected = Fraction(0)
        for perm in itertools.permutations(range(n)):
            sign = 1
            seen = [False] * n
            for s in range(n):
                if seen[s]:
                    continue
                length, pos = 0, s
                while not seen[pos]:
                    seen[pos] = True
                    pos = perm[pos]
                    length += 1
                if length % 2 == 0:
                    sign = -sign
            term = Fraction(sign)
            for i in range(n):
                term *= m[i][perm[i]]
            expected += term
        assert linalg.det(m) == expected


def test_certified_rank_matches_exact():
    rng = random.Random(21)
    for _ in range(30):
        rows = rng.randint(1, 6)
        cols = rng.randint(1, 6)
        m = [[Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(cols)]
             for _ in range(rows)]
        assert linalg.certified_rank(m) == linalg.rank(m)


def test_generic_field_elimination_with_rational_functions():
    x = parse_ratfun("x", ("x",))
    one = parse_ratfun("1", ("x",))
    m = [[x, one], [one, x]]
    d = linalg.det(m)
    assert d == parse_ratfun("x^2 - 1", ("x",))
    inv = linalg.inverse(m)
    prod = linalg.matmul(m, inv)
    assert prod[0][0] == 1 and prod[1][1] == 1
    assert prod[0][1].is_zero() and prod[1][0].is_zero()


def test_rank_over_function_field():
    rng = random.Random(4)
    f = random_rational_function(rng)
    g = random_rational_function(rng)
    while g.is_zero():
        g = random_rational_function(rng)
    # second row is a function-field multiple of the first
    row1 = [g, g * f]
    row2 = [g * g, g * g * f]
    assert linalg.rank([row1, row2]) == 1
