"""Exact univariate polynomial arithmetic and real root isolation.

Polynomials are tuples of coefficients in ascending order: c[i] multiplies
z**i.  Coefficients are ints or Fractions and every operation here is exact;
floats appear only when a caller converts a finished bracket.  Root isolation
is Sturm-chain counting plus bisection on exact rationals, so a returned
bracket [lo, hi] is a proof that the root lies inside it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd


Poly = tuple  # ascending coefficients, int or Fraction entries


def trim(c) -> Poly:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def degree(c) -> int:
    """Degree of a trimmed polynomial; -1 for the zero polynomial."""
    return len(trim(c)) - 1


def poly_eval(c, x):
    """Horner evaluation; exact when x is int or Fraction."""
    acc = 0
    for coef in reversed(c):
        acc = acc * x + coef
    return acc


def poly_add(a, b) -> Poly:
    n = max(len(a), len(b))
    return trim(tuple((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
                      for i in range(n)))


def poly_sub(a, b) -> Poly:
    return poly_add(a, tuple(-x for x in b))


def poly_mul(a, b) -> Poly:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return trim(tuple(out))


def poly_scale(a, s) -> Poly:
    return trim(tuple(s * x for x in a))


def poly_derivative(a) -> Poly:
    return trim(tuple(i * a[i] for i in range(1, len(a))))


def poly_divmod(a, b):
    """Exact Euclidean division over the rationals."""
    a = [Fraction(x) for x in trim(a)]
    b = [Fraction(x) for x in trim(b)]
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    while len(a) >= len(b) and a:
        k = len(a) - len(b)
        coef = a[-1] / b[-1]
        q[k] = coef
        for i in range(len(b)):
            a[k + i] -= coef * b[i]
        a.pop()
        while a and a[-1] == 0:
            a.pop()
    return trim(tuple(q)), trim(tuple(a))


def primitive(a) -> Poly:
    """Integer polynomial with content 1 and positive leading coefficient."""
    a = trim(a)
    if not a:
        return ()
    den = 1
    for x in a:
        if isinstance(x, Fraction):
            den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in a]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g:
        ints = [x // g for x in ints]
    if ints[-1] < 0:
        ints = [-x for x in ints]
    return tuple(ints)


def poly_gcd(a, b) -> Poly:
    """Primitive gcd over the integers (via rational Euclid)."""
    a, b = trim(a), trim(b)
    while b:
        _, r = poly_divmod(a, b)
        a, b = b, r
    return primitive(a) if a else ()


def squarefree_part(a) -> Poly:
    a = primitive(a)
    if degree(a) <= 1:
        return a
    g = poly_gcd(a, poly_derivative(a))
    if degree(g) < 1:
        return a
    q, r = poly_divmod(a, g)
    assert not r
    return primitive(q)


def sturm_chain(a):
    chain = [tuple(Fraction(x) for x in trim(a))]
    d = poly_derivative(chain[0])
    if d:
        chain.append(d)
        while degree(chain[-1]) > 0:
            _, r = poly_divmod(chain[-2], chain[-1])
            if not r:
                break
            chain.append(poly_scale(r, -1))
    return chain


def sign_variations(chain, x) -> int:
    signs = []
    for p in chain:
        v = poly_eval(p, x)
        if v != 0:
            signs.append(1 if v > 0 else -1)
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def count_roots(chain, lo, hi) -> int:
    """Roots of the (squarefree) chain head in the half-open interval (lo, hi]."""
    return sign_variations(chain, lo) - sign_variations(chain, hi)


@dataclass(frozen=True)
class RootBracket:
    """An isolated real root: the unique root of `poly` in [lo, hi].

    `poly` is the squarefree integer polynomial used for isolation, kept so
    the bracket can be refined later or compared exactly against another.
    lo == hi means the root was identified exactly.
    """

    poly: Poly
    lo: Fraction
    hi: Fraction

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    @property
    def value(self) -> float:
        return float((self.lo + self.hi) / 2)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def refined(self, tol: Fraction) -> "RootBracket":
        if self.exact:
            return self
        lo, hi = _bisect(self.poly, self.lo, self.hi, tol)
        return RootBracket(self.poly, lo, hi)


def _bisect(p, lo, hi, tol):
    # sign bisection; p has exactly one root in [lo, hi] and p(lo)*p(hi) < 0
    flo = poly_eval(p, lo)
    if flo == 0:
        return lo, lo
    if poly_eval(p, hi) == 0:
        return hi, hi
    s_lo = 1 if flo > 0 else -1
    while hi - lo > tol:
        mid = (lo + hi) / 2
        fm = poly_eval(p, mid)
        if fm == 0:
            return mid, mid
        if (1 if fm > 0 else -1) == s_lo:
            lo = mid
        else:
            hi = mid
    return lo, hi


def largest_root_in(a, lo, hi, tol=Fraction(1, 10**13)) -> RootBracket | None:
    """Bracket the largest real root of `a` inside the open interval (lo, hi).

    Returns None when there is no root.  Endpoints that are themselves roots
    are not reported; callers choose lo/hi accordingly.
    """
    lo, hi = Fraction(lo), Fraction(hi)
    sf = squarefree_part(a)
    if degree(sf) < 1:
        return None
    chain = sturm_chain(sf)
    if poly_eval(sf, lo) == 0:
        lo = _nudge_off_root(sf, chain, lo, hi, up=True)
    if poly_eval(sf, hi) == 0:
        hi = _nudge_off_root(sf, chain, hi, lo, up=False)
    if count_roots(chain, lo, hi) == 0:
        return None
    # shrink toward the top until exactly one root remains above the cut
    a_, b_ = lo, hi
    while count_roots(chain, a_, b_) > 1:
        mid = (a_ + b_) / 2
        if poly_eval(sf, mid) == 0:
            # mid is a root; is anything above it?
            if count_roots(chain, mid, b_) >= 1:
                a_ = mid + (b_ - mid) / (2 ** 10)
                # the nudge must not skip past a root above mid
                while count_roots(chain, a_, b_) < count_roots(chain, mid, b_):
                    a_ = mid + (a_ - mid) / 2
            else:
                return RootBracket(sf, mid, mid)
            continue
        if count_roots(chain, mid, b_) >= 1:
            a_ = mid
        else:
            b_ = mid
    # exactly one root in (a_, b_]; ensure sign change for plain bisection
    while poly_eval(sf, a_) * poly_eval(sf, b_) > 0:
        mid = (a_ + b_) / 2
        if count_roots(chain, mid, b_) >= 1:
            a_ = mid
        else:
            b_ = mid
        if poly_eval(sf, mid) == 0:
            return RootBracket(sf, mid, mid)
    lo2, hi2 = _bisect(sf, a_, b_, Fraction(tol))
    return RootBracket(sf, lo2, hi2)


def _nudge_off_root(sf, chain, point, toward, up):
    # move the endpoint off a root of sf without skipping any other root
    step = abs(toward - point) / 2
    while True:
        cand = point + step if up else point - step
        if poly_eval(sf, cand) != 0:
            if up:
                skipped = count_roots(chain, point, cand)
            else:
                skipped = count_roots(chain, cand, point) - 1
            if skipped == 0:
                return cand
        step /= 2


def compare_roots(b1: RootBracket, b2: RootBracket) -> int:
    """Exact order of two isolated roots: -1, 0 or +1.

    Equality is decided algebraically: if the brackets keep overlapping, the
    roots can only coincide on a common factor of the two isolating
    polynomials.
    """
    x, y = b1, b2
    if x.exact and y.exact:
        return (x.lo > y.lo) - (x.lo < y.lo)
    lo_cap, hi_cap = max(x.lo, y.lo), min(x.hi, y.hi)
    if lo_cap <= hi_cap:
        g = poly_gcd(x.poly, y.poly)
        if degree(g) >= 1:
            chain = sturm_chain(g)
            shared = count_roots(chain, lo_cap, hi_cap)
            if poly_eval(g, lo_cap) == 0:
                shared += 1
            if shared >= 1:
                # a common root lies inside both brackets, and each bracket
                # holds a single root, so both roots are that common one
                return 0
    tol = min(x.width, y.width, Fraction(1, 2 ** 30))
    for _ in range(40):
        if x.hi < y.lo:
            return -1
        if y.hi < x.lo:
            return 1
        tol /= 2 ** 8
        x, y = x.refined(tol), y.refined(tol)
    raise ArithmeticError("roots indistinguishable at 2**-350 but share no factor")


def char_poly(matrix) -> Poly:
    """Characteristic polynomial det(zI - A) of an integer matrix.

    Faddeev-LeVerrier over the integers; the internal divisions are exact.
    Returned ascending, monic of degree n.
    """
    n = len(matrix)
    a = [[int(x) for x in row] for row in matrix]
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    m = [[0] * n for _ in range(n)]
    c = 1
    for k in range(1, n + 1):
        # m <- a @ (m + c * I)
        for i in range(n):
            m[i][i] += c
        m = [[sum(a[i][t] * m[t][j] for t in range(n)) for j in range(n)]
             for i in range(n)]
        tr = sum(m[i][i] for i in range(n))
        assert tr % k == 0
        c = -tr // k
        coeffs[n - k] = c
    return tuple(coeffs)
