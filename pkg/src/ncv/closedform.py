"""Closed forms for complete and complete bipartite graphs with a maximum matching."""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial


def falling_factorial(x: int, k: int) -> int:
    if k < 0:
        raise ValueError("k must be nonnegative")
    out = 1
    for i in range(k):
        out *= x - i
    return out


def kn_G(n: int, l: int, k: int) -> int:
    """l-cycles of K_n through a fixed k edges of a maximum matching."""
    if n < 3 or not 3 <= l <= n or not 1 <= k <= n // 2:
        raise ValueError(f"kn_G out of domain: n={n}, l={l}, k={k}")
    if l < 2 * k:
        return 0
    return comb(n - 2 * k, l - 2 * k) * factorial(l - k - 1) * 2 ** (k - 1)


def kn_cminus(n: int, l: int, s: int) -> int:
    """Negative l-cycles of K_n whose negative edges are s disjoint edges."""
    if n < 3 or not 3 <= l <= n or not 0 <= s <= n // 2:
        raise ValueError(f"kn_cminus out of domain: n={n}, l={l}, s={s}")
    total = 0
    for k in range(1, min(s, l // 2) + 1):
        total += comb(s, k) * (-4) ** (k - 1) * comb(n - 2 * k, l - 2 * k) * factorial(l - k - 1)
    return total


def kn_c4_quadratic_as_printed(n: int, s: int) -> int:
    """The in-text quadratic s(n^2 + 5n + 8) - 2s^2, kept only to report its disagreement."""
    return s * (n * n + 5 * n + 8) - 2 * s * s


def kn_c4_quadratic(n: int, s: int) -> int:
    """c_4^-(s) expanded from the sum: s(n-2)(n-3) - 2s(s-1) = s(n^2 - 5n + 8) - 2s^2."""
    return s * (n * n - 5 * n + 8) - 2 * s * s


def kpq_G(p: int, q: int, l: int, k: int) -> int:
    """2l-cycles of K_{p,q} (p <= q) through a fixed k edges of a maximum matching."""
    if not (2 <= l <= p <= q and 1 <= k <= l):
        raise ValueError(f"kpq_G out of domain: p={p}, q={q}, l={l}, k={k}")
    return (
        falling_factorial(p - k, l - k)
        * falling_factorial(q - k, l - k)
        * factorial(k - 1)
        * comb(2 * l - k - 1, k - 1)
    )


def kpq_cminus(p: int, q: int, l: int, s: int) -> int:
    """Negative 2l-cycles of K_{p,q} whose negative edges are s disjoint edges."""
    if not (2 <= l <= p <= q and 0 <= s <= p):
        raise ValueError(f"kpq_cminus out of domain: p={p}, q={q}, l={l}, s={s}")
    total = Fraction(0)
    for k in range(1, min(s, l) + 1):
        total += (
            falling_factorial(s, k)
            * Fraction((-2) ** (k - 1), k)
            * falling_factorial(p - k, l - k)
            * falling_factorial(q - k, l - k)
            * comb(2 * l - k - 1, k - 1)
        )
    if total.denominator != 1:
        raise ArithmeticError(f"non-integral count {total}")
    return int(total)
