"""Dense univariate polynomials with exact coefficients.

Polynomials are tuples of coefficients in ascending order of degree,
normalized so the last entry is non-zero; the zero polynomial is ``()``.
Coefficients are ints wherever possible, Fractions where division is
involved (Sturm chains).  Everything here is exact; no floats.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as int_gcd

Poly = tuple  # tuple of int or Fraction coefficients, ascending

ZERO: Poly = ()
ONE: Poly = (1,)


def normalize(coeffs) -> Poly:
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def degree(p: Poly) -> int:
    """Degree, with the convention deg(0) = -1."""
    return len(p) - 1


def is_zero(p: Poly) -> bool:
    return not p


def add(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    return normalize(
        (p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)
    )


def neg(p: Poly) -> Poly:
    return tuple(-c for c in p)


def sub(p: Poly, q: Poly) -> Poly:
    return add(p, neg(q))


def mul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return ZERO
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return normalize(out)


def scale(p: Poly, k) -> Poly:
    if k == 0:
        return ZERO
    return tuple(c * k for c in p)


def evaluate(p: Poly, x):
    """Horner evaluation; exact for int/Fraction arguments."""
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def derivative(p: Poly) -> Poly:
    return normalize(i * c for i, c in enumerate(p) if i > 0)


def divmod_rational(p: Poly, q: Poly) -> tuple[Poly, Poly]:
    """Long division over the rationals; returns (quotient, remainder)."""
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    rem = [Fraction(c) for c in p]
    quo = [Fraction(0)] * max(len(p) - len(q) + 1, 0)
    lead = Fraction(q[-1])
    while len(rem) >= len(q) and normalize(rem):
        rem_n = normalize(rem)
        if len(rem_n) < len(q):
            break
        shift = len(rem_n) - len(q)
        factor = Fraction(rem_n[-1]) / lead
        quo[shift] = factor
        rem = list(rem_n)
        for i, c in enumerate(q):
            rem[shift + i] -= factor * c
    return normalize(quo), normalize(rem)


def div_exact(p: Poly, q: Poly) -> Poly:
    """Exact division in Z[z]; raises if q does not divide p over the integers."""
    quo, rem = divmod_rational(p, q)
    if rem:
        raise ArithmeticError("inexact polynomial division")
    out = []
    for c in quo:
        c = Fraction(c)
        if c.denominator != 1:
            raise ArithmeticError("quotient is not an integer polynomial")
        out.append(int(c))
    return normalize(out)


def content(p: Poly) -> int:
    g = 0
    for c in p:
        g = int_gcd(g, abs(int(c)))
    return g


def primitive(p: Poly) -> Poly:
    """Divide out the integer content and make the leading coefficient positive."""
    if not p:
        return ZERO
    g = content(p)
    out = tuple(int(c) // g for c in p)
    if out[-1] < 0:
        out = neg(out)
    return out


def gcd(p: Poly, q: Poly) -> Poly:
    """Primitive gcd in Z[z], leading coefficient positive; gcd(0, q) = primitive(q)."""
    a, b = p, q
    while b:
        _, r = divmod_rational(a, b)
        a, b = b, r
    if not a:
        return ZERO
    # clear denominators before taking the primitive part
    denom = 1
    for c in a:
        denom = denom * Fraction(c).denominator // int_gcd(denom, Fraction(c).denominator)
    ints = tuple(int(Fraction(c) * denom) for c in a)
    return primitive(ints)


def square_free_part(p: Poly) -> Poly:
    """p with all root multiplicities reduced to one.

    Normalized so that the value at 0 is positive when it is non-zero,
    otherwise so that the leading coefficient is positive.
    """
    if degree(p) <= 0:
        return primitive(p) if p else ZERO
    g = gcd(p, derivative(p))
    sf = div_exact(primitive(p), g) if degree(g) >= 1 else primitive(p)
    if sf[0] < 0 or (sf[0] == 0 and sf[-1] < 0):
        sf = neg(sf)
    return sf


def sturm_chain(p: Poly) -> list[Poly]:
    """Sturm sequence of a square-free polynomial, over the rationals."""
    chain = [tuple(Fraction(c) for c in p)]
    d = derivative(chain[0])
    if d:
        chain.append(d)
        while True:
            _, r = divmod_rational(chain[-2], chain[-1])
            if not r:
                break
            chain.append(neg(r))
    return chain


def sign_variations(chain: list[Poly], x) -> int:
    signs = []
    for q in chain:
        v = evaluate(q, x)
        if v != 0:
            signs.append(1 if v > 0 else -1)
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def count_roots(chain: list[Poly], a, b) -> int:
    """Number of distinct real roots in the half-open interval (a, b].

    Requires the chain of a square-free polynomial and a < b.  With the
    zeros-skipped variation count, a root at b is counted and a root at a
    is not.
    """
    return sign_variations(chain, a) - sign_variations(chain, b)


def to_string(p: Poly, var: str = "z") -> str:
    if not p:
        return "0"
    parts = []
    for i, c in enumerate(p):
        if c == 0:
            continue
        if i == 0:
            parts.append(str(c))
            continue
        mono = var if i == 1 else f"{var}^{i}"
        if c == 1:
            term = mono
        elif c == -1:
            term = f"-{mono}"
        else:
            term = f"{c}{mono}"
        parts.append(term)
    out = parts[0]
    for term in parts[1:]:
        out += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
    return out
