"""Arithmetic in the prime field F_q and discrete logarithms.

The primitive root eta is fixed per q as the smallest one, so every
exponent-space computation in the rest of the package is deterministic.
Log tables are built once and shared; q is desk scale (<= ~10^6).
"""

from __future__ import annotations

from functools import lru_cache

from .errors import ValidationError


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    if q < 4:
        return True
    if q % 2 == 0:
        return False
    d = 3
    while d * d <= q:
        if q % d == 0:
            return False
        d += 2
    return True


def _prime_factors(n: int) -> list:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def primitive_root(q: int) -> int:
    """Smallest positive integer of multiplicative order q-1 in F_q."""
    if not is_prime(q):
        raise ValidationError(f"{q} is not prime")
    if q == 2:
        return 1
    order = q - 1
    checks = [order // p for p in _prime_factors(order)]
    for g in range(2, q):
        if all(pow(g, c, q) != 1 for c in checks):
            return g
    raise ValidationError(f"no primitive root found for q={q}")  # unreachable


class PrimeField:
    """F_q with a fixed primitive root and a full discrete-log table."""

    def __init__(self, q: int):
        if not is_prime(q):
            raise ValidationError(f"field size {q} is not prime")
        self.q = q
        self.eta = primitive_root(q)
        self._pow = [1] * (q - 1)
        for i in range(1, q - 1):
            self._pow[i] = self._pow[i - 1] * self.eta % q
        self._log = [0] * q
        for i, v in enumerate(self._pow):
            self._log[v] = i

    def eta_pow(self, e: int) -> int:
        return self._pow[e % (self.q - 1)]

    def discrete_log(self, x: int) -> int:
        x %= self.q
        if x == 0:
            raise ValidationError("discrete log of 0")
        return self._log[x]

    def inv(self, x: int) -> int:
        x %= self.q
        if x == 0:
            raise ValidationError("inverse of 0")
        return pow(x, self.q - 2, self.q)

    def __repr__(self):
        return f"PrimeField(q={self.q}, eta={self.eta})"


@lru_cache(maxsize=None)
def field(q: int) -> PrimeField:
    return PrimeField(q)
