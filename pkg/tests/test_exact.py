import random
from fractions import Fraction

import pytest

from virblocks.exact import (
    CompositeNumber,
    QuadraticNumber,
    normalize_radical,
    parse_rational,
    quad_sqrt,
    solve_line_integer_points,
    squarefree_decompose,
)

F = Fraction


def test_parse_rational():
    assert parse_rational("3/4") == F(3, 4)
    assert parse_rational("-7") == F(-7)
    assert parse_rational(" 2/6 ") == F(1, 3)
    with pytest.raises(ValueError):
        parse_rational("1/0")
    with pytest.raises(ValueError):
        parse_rational("0.5x")


def test_normalize_radical_examples():
    assert normalize_radical(F(25)) == (F(5), 1)
    assert normalize_radical(F(18)) == (F(3), 2)
    assert normalize_radical(F(-23)) == (F(1), -23)
    assert normalize_radical(F(0)) == (F(0), 1)
    assert normalize_radical(F(1, 9)) == (F(1, 3), 1)
    assert normalize_radical(F(8, 27)) == (F(2, 9), 6)


def test_normalize_radical_reconstructs_input():
    rng = random.Random(7)
    for _ in range(300):
        value = F(rng.randint(-4000, 4000), rng.randint(1, 400))
        t, d = normalize_radical(value)
        assert t * t * d == value
        _, sf = squarefree_decompose(d)
        assert sf == d and t >= 0


def test_squarefree_decompose_large_square_factor():
    # cofactor after trial division can itself be a perfect square
    n = 10007 ** 2
    assert squarefree_decompose(n) == (10007, 1)
    n = 3 * 10007 ** 2
    assert squarefree_decompose(n) == (10007, 3)


def test_quad_sqrt_examples():
    root = quad_sqrt(QuadraticNumber(F(3), F(2), 2))
    assert root is not None and root * root == QuadraticNumber(F(3), F(2), 2)
    assert root == QuadraticNumber(F(1), F(1), 2)

    assert quad_sqrt(QuadraticNumber.rational(F(1, 9))) == QuadraticNumber.rational(F(1, 3))

    # u^2 + 3 v^2 = 2, 2uv = 0 has no rational solution
    assert quad_sqrt(QuadraticNumber(F(2), F(0), 3)) is None
    # ... and no small-denominator near miss exists either
    for pu in range(-12, 13):
        for pv in range(-12, 13):
            u, v = F(pu, 6), F(pv, 6)
            cand = QuadraticNumber(u, v, 3)
            assert cand * cand != QuadraticNumber(F(2), F(0), 3)


def test_quad_sqrt_rational_root_inside_field():
    # sqrt(8) = 2*sqrt(2) lives in Q(sqrt(2)) but not in Q(sqrt(5))
    assert quad_sqrt(QuadraticNumber.rational(F(8)), field=2) == QuadraticNumber(F(0), F(2), 2)
    assert quad_sqrt(QuadraticNumber.rational(F(8)), field=5) is None


def test_quad_sqrt_roundtrip_property():
    rng = random.Random(11)
    for d in (2, 3, 5, -1, -23, 6):
        for _ in range(60):
            x = QuadraticNumber(
                F(rng.randint(-9, 9), rng.randint(1, 6)),
                F(rng.randint(-9, 9), rng.randint(1, 6)),
                d,
            )
            sq = x * x
            root = quad_sqrt(sq, field=d)
            assert root is not None
            assert root * root == sq


def test_composite_arithmetic_closure():
    x = CompositeNumber({1: F(1, 2), 2: F(3)})
    y = CompositeNumber({3: F(1), 6: F(-2)})
    prod = x * y
    # sqrt(2)*sqrt(3) = sqrt(6), sqrt(2)*sqrt(6) = 2*sqrt(3)
    assert prod.coefficient(3) == F(1, 2) * 1 + F(3) * F(-2) * 2
    assert prod.coefficient(6) == F(1, 2) * F(-2) + F(3) * 1
    assert set(prod.radicals()) <= {2, 3, 6}
    assert (x - x).is_zero()
    assert x * CompositeNumber.rational(1) == x


def test_composite_square_matches_quadratic_square():
    q = QuadraticNumber(F(-11, 12), F(1, 12), -23)
    c = CompositeNumber.from_quadratic(q)
    assert c * c == CompositeNumber.from_quadratic(q * q)


def _brute_points_rational(nu, beta, window):
    pts = set()
    for r in range(-window, window + 1):
        for s in range(-window, window + 1):
            if r + nu * s + beta == 0:
                pts.add((r, s))
    return pts


def test_solve_line_rational_infinite_family():
    nu = CompositeNumber.rational(F(-2, 3))
    beta = CompositeNumber.rational(F(1, 3))
    sol = solve_line_integer_points(nu, beta, 8)
    assert sol.infinite_family
    assert set(sol.points) == _brute_points_rational(F(-2, 3), F(1, 3), 8)
    assert set(sol.points) == {(-1, -1), (1, 2), (-3, -4), (3, 5), (-5, -7), (5, 8)}
    # sorted by product
    prods = [r * s for r, s in sol.points]
    assert prods == sorted(prods)


def test_solve_line_quadratic_forced_point():
    nu = CompositeNumber({1: F(-11, 12), -23: F(1, 12)})
    beta = CompositeNumber({1: F(-1, 12), -23: F(-1, 12)})
    sol = solve_line_integer_points(nu, beta, 100)
    assert not sol.infinite_family
    assert sol.points == ((1, 1),)
    # brute confirmation over a grid, using exact composite arithmetic
    hits = [
        (r, s)
        for r in range(-40, 41)
        for s in range(-40, 41)
        if (CompositeNumber.rational(r) + nu * s + beta).is_zero()
    ]
    assert hits == [(1, 1)]


def test_solve_line_degree_four_beta_empty():
    nu = CompositeNumber({1: F(-11, 12), -23: F(1, 12)})
    sol = solve_line_integer_points(nu, None, 10)
    assert sol.points == () and not sol.infinite_family


def test_solve_line_mismatched_radical_empty():
    # nu in Q(sqrt(-23)), beta a pure sqrt(2) term: coefficients cannot cancel
    nu = CompositeNumber({1: F(-11, 12), -23: F(1, 12)})
    beta = CompositeNumber({2: F(1)})
    assert solve_line_integer_points(nu, beta, 50).points == ()


def test_solve_line_rejects_bad_window():
    nu = CompositeNumber.rational(F(1))
    with pytest.raises(ValueError):
        solve_line_integer_points(nu, CompositeNumber.rational(F(1)), 0)


def test_solve_line_window_growth_is_monotone():
    nu = CompositeNumber.rational(F(-2, 3))
    beta = CompositeNumber.rational(F(1, 3))
    small = set(solve_line_integer_points(nu, beta, 8).points)
    large = set(solve_line_integer_points(nu, beta, 29).points)
    assert small <= large
    assert large == _brute_points_rational(F(-2, 3), F(1, 3), 29)


def test_solve_line_points_satisfy_equation_exactly():
    rng = random.Random(3)
    for _ in range(40):
        nu = CompositeNumber.rational(F(rng.choice([-3, -2, -1, 2, 3]), rng.choice([1, 2, 3])))
        beta = CompositeNumber.rational(F(rng.randint(-6, 6), rng.choice([1, 2, 3])))
        sol = solve_line_integer_points(nu, beta, 12)
        for r, s in sol.points:
            assert (CompositeNumber.rational(r) + nu * s + beta).is_zero()
