from fractions import Fraction

import pytest

from tracesys import poly


def test_normalize_trims_trailing_zeros():
    assert poly.normalize([1, 2, 0, 0]) == (1, 2)
    assert poly.normalize([0, 0]) == ()
    assert poly.degree(()) == -1


def test_arithmetic():
    p = (1, -3, 2)  # (1-z)(1-2z)
    q = (1, -1)
    assert poly.mul((1, -1), (1, -2)) == p
    assert poly.add(p, poly.neg(p)) == ()
    assert poly.sub(p, q) == (0, -2, 2)
    assert poly.evaluate(p, Fraction(1, 2)) == 0
    assert poly.evaluate(p, 0) == 1
    assert poly.derivative(p) == (-3, 4)


def test_div_exact():
    assert poly.div_exact((1, -3, 2), (1, -1)) == (1, -2)
    with pytest.raises(ArithmeticError):
        poly.div_exact((1, 1, 1), (1, 1))


def test_gcd_and_square_free():
    p = poly.mul((1, -1), (1, -1))  # (1-z)^2
    assert poly.gcd(p, poly.derivative(p)) in ((-1, 1), (1, -1))
    sf = poly.square_free_part(p)
    assert poly.evaluate(sf, 1) == 0
    assert poly.degree(sf) == 1
    assert poly.evaluate(sf, 0) > 0
    # already square-free stays itself up to sign normalization
    assert poly.square_free_part((1, -3, 1)) == (1, -3, 1)


def test_sturm_counts():
    # roots of (1-2z)(1-3z) at 1/2 and 1/3
    p = poly.mul((1, -2), (1, -3))
    chain = poly.sturm_chain(p)
    assert poly.count_roots(chain, 0, 1) == 2
    assert poly.count_roots(chain, Fraction(2, 5), 1) == 1
    # half-open convention: a root at the right end is counted
    assert poly.count_roots(chain, Fraction(1, 4), Fraction(1, 3)) == 1
    assert poly.count_roots(chain, Fraction(1, 3), Fraction(2, 5)) == 0


def test_to_string():
    assert poly.to_string((1, -3, 2)) == "1 - 3z + 2z^2"
    assert poly.to_string(()) == "0"
    assert poly.to_string((0, 1)) == "z"
    assert poly.to_string((0, -1, 0, 1)) == "-z + z^3"
