"""Exact univariate polynomials over the rationals.

Polynomials are lists of coefficients, constant term first, with no
trailing zeros; the zero polynomial is the empty list.  Coefficients are
ints or Fractions.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

Poly = list


def trim(p: Sequence) -> Poly:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def degree(p: Sequence) -> int:
    p = trim(p)
    return len(p) - 1  # -1 for the zero polynomial


def add(p: Sequence, q: Sequence) -> Poly:
    n = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def sub(p: Sequence, q: Sequence) -> Poly:
    return add(p, [-x for x in q])


def mul(p: Sequence, q: Sequence) -> Poly:
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return trim(out)


def scale(p: Sequence, c) -> Poly:
    return trim([c * x for x in p])


def divmod_poly(p: Sequence, q: Sequence) -> tuple[Poly, Poly]:
    q = trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = [Fraction(x) for x in trim(p)]
    dq = len(q) - 1
    lead = Fraction(q[-1])
    if len(r) - 1 < dq:
        return [], trim(r)
    quot = [Fraction(0)] * (len(r) - dq)
    for k in range(len(r) - 1 - dq, -1, -1):
        c = r[k + dq] / lead
        quot[k] = c
        if c:
            for j, b in enumerate(q):
                r[k + j] -= c * b
    return trim(quot), trim(r[:dq])


def exact_div(p: Sequence, q: Sequence) -> Poly:
    quot, rem = divmod_poly(p, q)
    if rem:
        raise ArithmeticError("polynomial division is not exact")
    return quot


def monic(p: Sequence) -> Poly:
    p = trim(p)
    if not p:
        return []
    lead = Fraction(p[-1])
    return [Fraction(x) / lead for x in p]


def poly_gcd(p: Sequence, q: Sequence) -> Poly:
    """Monic greatest common divisor (zero if both are zero)."""
    a, b = trim(p), trim(q)
    while b:
        _, r = divmod_poly(a, b)
        a, b = b, r
    return monic(a)


def derivative(p: Sequence) -> Poly:
    return trim([i * p[i] for i in range(1, len(p))])


def evaluate(p: Sequence, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def primitive(p: Sequence) -> list[int]:
    """Integer polynomial proportional to ``p`` with content 1 and positive lead."""
    p = trim(p)
    if not p:
        return []
    fr = [Fraction(x) for x in p]
    den = lcm(*(x.denominator for x in fr))
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    ints = [x // g for x in ints]
    if ints[-1] < 0:
        ints = [-x for x in ints]
    return ints


def squarefree_decomposition(p: Sequence) -> list[tuple[Poly, int]]:
    """Yun's algorithm: ``p = c * prod f_i ** i`` with square-free, pairwise coprime monic ``f_i``."""
    p = trim(p)
    if len(p) <= 1:
        return []
    out = []
    a = poly_gcd(p, derivative(p))
    b = exact_div(p, a)
    c = exact_div(derivative(p), a)
    d = sub(c, derivative(b))
    i = 1
    while degree(b) > 0:
        a = poly_gcd(b, d)
        b = exact_div(b, a)
        c = exact_div(d, a)
        d = sub(c, derivative(b))
        if degree(a) > 0:
            out.append((a, i))
        i += 1
    return out


def reverse(p: Sequence, n: int | None = None) -> Poly:
    """``t**n * p(1/t)``, with ``n`` defaulting to the degree."""
    p = trim(p)
    if n is None:
        n = len(p) - 1
    return trim(list(reversed(list(p) + [0] * (n + 1 - len(p)))))


def sturm_sequence(p: Sequence) -> list[Poly]:
    seq = [trim(p), derivative(p)]
    while seq[-1]:
        _, r = divmod_poly(seq[-2], seq[-1])
        seq.append(scale(r, -1))
    return seq[:-1]


def _sign_changes(values) -> int:
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def count_roots(seq: list[Poly], lo, hi) -> int:
    """Distinct real roots in ``(lo, hi]`` of the square-free polynomial behind ``seq``."""
    return _sign_changes([evaluate(s, lo) for s in seq]) - _sign_changes([evaluate(s, hi) for s in seq])


def cauchy_bound(p: Sequence) -> Fraction:
    """Every complex root has modulus below this bound."""
    p = trim(p)
    lead = abs(Fraction(p[-1]))
    return 1 + max((abs(Fraction(x)) / lead for x in p[:-1]), default=Fraction(0))


def rational_root_candidates(p: Sequence[int], lo: Fraction, hi: Fraction, max_den: int = 10**6):
    """Rational roots ``a/b`` of an integer polynomial within ``[lo, hi]``.

    ``b`` divides the leading coefficient; only small denominators are tried.
    """
    p = primitive(p)
    lead = abs(p[-1])
    out = []
    for b in range(1, min(lead, max_den) + 1):
        if lead % b:
            continue
        for a in range(_ceil(lo * b), _floor(hi * b) + 1):
            x = Fraction(a, b)
            if x not in out and evaluate(p, x) == 0:
                out.append(x)
    return out


def _floor(x: Fraction) -> int:
    return x.numerator // x.denominator


def _ceil(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def to_str(p: Sequence, var: str = "t") -> str:
    p = trim(p)
    if not p:
        return "0"
    terms = []
    for i, c in enumerate(p):
        if c == 0:
            continue
        mag = abs(c)
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        body = str(mag) if (mag != 1 or i == 0) else ""
        if body and mono:
            body += "*"
        sign = "-" if c < 0 else "+"
        terms.append((sign, body + mono))
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, t in terms[1:]:
        out += f" {sign} {t}"
    return out
