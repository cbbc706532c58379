"""Integer polynomials and cyclotomic polynomials.

Polynomials are plain tuples of Python ints, lowest degree first:
``(c0, c1, ..., cn)`` stands for ``c0 + c1*t + ... + cn*t**n``.  The zero
polynomial is the empty tuple.
"""

from __future__ import annotations

from functools import lru_cache
from math import gcd

from sympy import divisors, factorint, totient

Poly = tuple  # tuple[int, ...], lowest degree first


def trim(coeffs) -> Poly:
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def degree(p: Poly) -> int:
    return len(p) - 1


def poly_mul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return ()
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return trim(out)


def poly_pow(p: Poly, k: int) -> Poly:
    result: Poly = (1,)
    for _ in range(k):
        result = poly_mul(result, p)
    return result


def poly_divmod(p: Poly, q: Poly) -> tuple[Poly, Poly]:
    """Divide by a monic (or unit-leading) integer polynomial ``q``."""
    q = trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    lead = q[-1]
    if lead not in (1, -1):
        raise ValueError("divisor must have leading coefficient +-1")
    rem = list(trim(p))
    dq = len(q) - 1
    if len(rem) - 1 < dq:
        return (), tuple(rem)
    quot = [0] * (len(rem) - dq)
    for shift in range(len(rem) - 1 - dq, -1, -1):
        c = rem[shift + dq] * lead  # lead is its own inverse
        if c:
            quot[shift] = c
            for i, b in enumerate(q):
                rem[shift + i] -= c * b
    return trim(quot), trim(rem)


def poly_eval(p: Poly, x: int) -> int:
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def poly_str(p: Poly, var: str = "t") -> str:
    if not p:
        return "0"
    terms = []
    for k in range(len(p) - 1, -1, -1):
        c = p[k]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        terms.append((sign, body))
    first_sign, first_body = terms[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


@lru_cache(maxsize=4096)
def euler_phi(d: int) -> int:
    return int(totient(d))


@lru_cache(maxsize=None)
def cyclotomic(d: int) -> Poly:
    """The d-th cyclotomic polynomial, by dividing t^d - 1 by its proper factors."""
    if d < 1:
        raise ValueError(f"cyclotomic index must be positive, got {d}")
    num: Poly = (-1,) + (0,) * (d - 1) + (1,)
    for e in divisors(d):
        if e < d:
            num, rem = poly_divmod(num, cyclotomic(e))
            assert not rem
    return num


@lru_cache(maxsize=4096)
def cyclotomic_at_one(d: int) -> int:
    """Phi_d(1): 0 for d = 1, p for d a power of the prime p, 1 otherwise."""
    if d < 1:
        raise ValueError(f"cyclotomic index must be positive, got {d}")
    if d == 1:
        return 0
    primes = factorint(d)
    if len(primes) == 1:
        return next(iter(primes))
    return 1


@lru_cache(maxsize=4096)
def prime_power_base(q: int) -> int | None:
    """The prime p when q = p**k with k >= 1, else None."""
    if q < 2:
        return None
    primes = factorint(q)
    if len(primes) == 1:
        return next(iter(primes))
    return None


def primitive_numerators(d: int) -> list[int]:
    """Numerators a in [0, d) with gcd(a, d) = 1; for d = 1 this is [0]."""
    if d == 1:
        return [0]
    return [a for a in range(1, d) if gcd(a, d) == 1]
