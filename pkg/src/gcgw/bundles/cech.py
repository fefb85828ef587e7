"""Bott's table for projective space and a brute-force Čech oracle on the line."""
from __future__ import annotations

from math import comb

from .. import linalg
from ..exterior import ONE, ZERO, ContractViolation, GaussianRational


def _binom(a: int, b: int) -> int:
    return comb(a, b) if 0 <= b <= a else 0


def bott_dims(n: int, m: int, p: int = 0, q: int = 0) -> int:
    """``dim H^q(P^n, Omega^p (x) O(m))``."""
    if n < 1:
        raise ContractViolation("n must be at least 1")
    if not (0 <= p <= n and 0 <= q <= n):
        return 0
    if q == 0 and m > p:
        return _binom(m + n - p, m) * _binom(m - 1, p)
    if q == n and m < p - n:
        return _binom(-m + p, -m) * _binom(-m - 1, n - p)
    if m == 0 and p == q:
        return 1
    return 0


def bott_dims_p0(n: int, m: int, q: int) -> int:
    """The ``p = 0`` specialisation, written independently."""
    if q == 0 and m >= 0:
        return _binom(m + n, m)
    if q == n and m <= -n - 1:
        return _binom(-m - 1, -m - 1 - n)
    return 0


def _p1_cohomology(coeff: int, e: int, N: int):
    """Kernel and cokernel of ``(s0, s1) -> s0 - coeff z^e s1(1/z)``, degrees ``<= N``."""
    lo, hi = min(0, e - N), max(N, e)
    rows = list(range(lo, hi + 1))
    pos = {x: r for r, x in enumerate(rows)}
    cols = []
    for j in range(N + 1):
        col = [ZERO] * len(rows)
        col[pos[j]] = ONE
        cols.append(col)
    for j in range(N + 1):
        col = [ZERO] * len(rows)
        col[pos[e - j]] = GaussianRational(-coeff)
        cols.append(col)
    A = linalg.transpose(cols)
    r = linalg.rank(A)
    return 2 * (N + 1) - r, len(rows) - r


def cech_oracle_p1(m: int, q: int, truncation_degree: int | None = None, p: int = 0) -> int:
    """Čech cohomology of ``Omega^p (x) O(m)`` on the two-chart cover of the line.

    Cochains are polynomials of degree ``<= N`` on each chart; the transition
    on coefficients is ``z^m`` (``p = 0``) or ``-z^(m-2)`` (``p = 1``, from
    ``dz = -z^2 dw``). The answer must agree at ``N`` and ``N + 1``.
    """
    if q not in (0, 1) or p not in (0, 1):
        raise ContractViolation("q and p must be 0 or 1 on the line")
    N = truncation_degree if truncation_degree is not None else abs(m) + 2
    if N < abs(m) + 2:
        raise ContractViolation(f"truncation degree {N} < |m| + 2")
    coeff, e = (1, m) if p == 0 else (-1, m - 2)
    a = _p1_cohomology(coeff, e, N)
    b = _p1_cohomology(coeff, e, N + 1)
    if a != b:
        raise ContractViolation(f"truncation not stable: {a} vs {b}")
    return a[q]


__all__ = ["bott_dims", "bott_dims_p0", "cech_oracle_p1"]
