from fractions import Fraction

import pytest

from escapelab.polyroots import (RootBracket, char_poly, compare_roots,
                                 count_roots, largest_root_in, poly_divmod,
                                 poly_eval, poly_gcd, poly_mul,
                                 squarefree_part, sturm_chain, trim)

# polynomials are ascending coefficient tuples: (c0, c1, c2, ...)
GOLDEN = (-1, -1, 1)  # z^2 - z - 1


def test_poly_eval_horner():
    assert poly_eval(GOLDEN, 2) == 1
    assert poly_eval((1, 0, 0, 1), Fraction(1, 2)) == Fraction(9, 8)
    assert poly_eval((), 5) == 0


def test_divmod_exact():
    # (z-1)(z^2-z-1) = z^3 - 2z^2 + 1
    prod = poly_mul((-1, 1), GOLDEN)
    assert trim(prod) == (1, 0, -2, 1)
    q, r = poly_divmod(prod, (-1, 1))
    assert trim(r) == ()
    assert tuple(q) == GOLDEN


def test_gcd_and_squarefree():
    sq = poly_mul(GOLDEN, GOLDEN)
    g = poly_gcd(sq, GOLDEN)
    assert trim(g)[-1] == 1  # monic-normalized
    assert tuple(trim(g)) == GOLDEN
    assert tuple(squarefree_part(sq)) == GOLDEN


def test_sturm_root_counts():
    chain = sturm_chain(GOLDEN)
    assert count_roots(chain, Fraction(0), Fraction(2)) == 1
    assert count_roots(chain, Fraction(-2), Fraction(0)) == 1
    assert count_roots(chain, Fraction(2), Fraction(3)) == 0
    # repeated roots are counted once through the squarefree part
    dbl = poly_mul((-1, 1), (-1, 1))
    chain = sturm_chain(squarefree_part(dbl))
    assert count_roots(chain, Fraction(0), Fraction(2)) == 1


def test_largest_root_golden_ratio():
    br = largest_root_in(GOLDEN, Fraction(0), Fraction(2))
    assert br is not None
    phi = (1 + 5 ** 0.5) / 2
    assert abs(br.value - phi) < 1e-12
    assert br.lo < br.hi and br.width <= Fraction(1, 10 ** 13)


def test_largest_root_picks_top_root():
    # roots at 1 and phi; the bracket must isolate phi
    p = poly_mul((-1, 1), GOLDEN)
    br = largest_root_in(p, Fraction(0), Fraction(2))
    assert abs(br.value - 1.618033988749895) < 1e-12


def test_largest_root_none_when_empty():
    assert largest_root_in((1, 0, 1), Fraction(-10), Fraction(10)) is None


def test_bracket_refine():
    br = largest_root_in(GOLDEN, Fraction(0), Fraction(2))
    finer = br.refined(Fraction(1, 10 ** 20))
    assert finer.width <= Fraction(1, 10 ** 20)
    assert finer.lo >= br.lo and finer.hi <= br.hi


def test_compare_roots_exact_equality():
    a = largest_root_in(GOLDEN, Fraction(0), Fraction(2))
    # same algebraic number inside a different polynomial
    b = largest_root_in(poly_mul(GOLDEN, (1, 0, 1)), Fraction(0), Fraction(2))
    assert compare_roots(a, b) == 0


def test_compare_roots_orders_close_roots():
    # x^2 - 2 vs x^2 - 2 - 1e-30: roots differ by ~3.5e-31
    eps = Fraction(1, 10 ** 30)
    a = largest_root_in((-2, 0, 1), Fraction(0), Fraction(2))
    b = largest_root_in((-2 - eps, 0, 1), Fraction(0), Fraction(2))
    assert compare_roots(a, b) == -1
    assert compare_roots(b, a) == 1
    assert compare_roots(a, a) == 0


def test_char_poly_companion():
    # companion matrix of z^2 - z - 1
    p = char_poly([[0, 1], [1, 1]])
    assert tuple(p) == GOLDEN
    # nilpotent: char poly z^2
    assert tuple(char_poly([[0, 1], [0, 0]])) == (0, 0, 1)
    assert tuple(char_poly([[5]])) == (-5, 1)


def test_char_poly_cayley_hamilton():
    m = [[1, 2, 0], [0, 1, 1], [1, 0, 2]]
    p = char_poly(m)
    # evaluate p(M) by Horner with matrix arithmetic
    n = len(m)
    acc = [[0] * n for _ in range(n)]
    for c in reversed(p):
        nxt = [[sum(acc[i][k] * m[k][j] for k in range(n)) for j in range(n)]
               for i in range(n)]
        for i in range(n):
            nxt[i][i] += c
        acc = nxt
    assert acc == [[0] * n for _ in range(n)]
