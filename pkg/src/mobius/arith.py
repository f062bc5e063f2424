"""Arithmetic functions, Dirichlet convolution and the classical Möbius function."""
from __future__ import annotations

from fractions import Fraction
from math import gcd

from .core import NotInvertibleError, as_fraction


class TruncatedDirichlet:
    """Coefficients a_1..a_N of a Dirichlet series, everything past N dropped.

    Products never send indices above N to indices at most N, so truncation
    commutes with convolution.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        self.coeffs = tuple(as_fraction(c) for c in coeffs)
        if not self.coeffs:
            raise ValueError("need at least one coefficient")

    @classmethod
    def from_function(cls, f, bound):
        return cls(f(n) for n in range(1, bound + 1))

    @property
    def bound(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, n) -> Fraction:
        if not 1 <= n <= self.bound:
            raise IndexError(f"index {n} outside 1..{self.bound}")
        return self.coeffs[n - 1]

    def __eq__(self, other):
        return isinstance(other, TruncatedDirichlet) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"TruncatedDirichlet(N={self.bound})"

    def __mul__(self, other):
        return dirichlet_convolve(self, other)

    def as_list(self):
        return list(self.coeffs)


def unit(bound) -> TruncatedDirichlet:
    return TruncatedDirichlet([1] + [0] * (bound - 1))


def zeta(bound) -> TruncatedDirichlet:
    return TruncatedDirichlet([1] * bound)


def classical_mobius(n: int) -> int:
    """mu(n) by trial division."""
    if n < 1:
        raise ValueError("mu is defined for n >= 1")
    k = 0
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            k += 1
        p += 1
    if n > 1:
        k += 1
    return -1 if k % 2 else 1


def mobius_sieve(bound: int) -> list:
    """[mu(0)=0, mu(1), ..., mu(bound)] by a linear sieve."""
    mu = [0] * (bound + 1)
    if bound >= 1:
        mu[1] = 1
    is_comp = bytearray(bound + 1)
    primes = []
    for i in range(2, bound + 1):
        if not is_comp[i]:
            primes.append(i)
            mu[i] = -1
        for p in primes:
            ip = i * p
            if ip > bound:
                break
            is_comp[ip] = 1
            if i % p == 0:
                mu[ip] = 0
                break
            mu[ip] = -mu[i]
    return mu


def mobius_series(bound) -> TruncatedDirichlet:
    return TruncatedDirichlet(mobius_sieve(bound)[1:])


def _check_bounds(f, g):
    if f.bound != g.bound:
        raise ValueError(f"bound mismatch: {f.bound} vs {g.bound}")


def dirichlet_convolve(f: TruncatedDirichlet, g: TruncatedDirichlet) -> TruncatedDirichlet:
    """(f*g)(n) = sum over d | n of f(d) g(n/d)."""
    _check_bounds(f, g)
    N = f.bound
    out = [Fraction(0)] * (N + 1)
    a, b = f.coeffs, g.coeffs
    for d in range(1, N + 1):
        fd = a[d - 1]
        if not fd:
            continue
        for e in range(1, N // d + 1):
            ge = b[e - 1]
            if ge:
                out[d * e] += fd * ge
    return TruncatedDirichlet(out[1:])


def dirichlet_invert(f: TruncatedDirichlet) -> TruncatedDirichlet:
    """g with f*g = unit: g(1) = 1/f(1), g(n) = -(1/f(1)) sum_{d | n, d > 1} f(d) g(n/d)."""
    N = f.bound
    f1 = f.coeffs[0]
    if f1 == 0:
        raise NotInvertibleError(1, "f(1) = 0, so f is not invertible")
    acc = [Fraction(0)] * (N + 1)  # acc[n] = sum_{d | n, d > 1} f(d) g(n/d), built as g fills in
    g = [Fraction(0)] * (N + 1)
    for m in range(1, N + 1):
        g[m] = ((1 if m == 1 else 0) - acc[m]) / f1
        if g[m]:
            for d in range(2, N // m + 1):
                fd = f.coeffs[d - 1]
                if fd:
                    acc[d * m] += fd * g[m]
    return TruncatedDirichlet(g[1:])


def is_multiplicative(f: TruncatedDirichlet) -> bool:
    """f(ab) = f(a) f(b) for coprime a, b with ab <= N (which forces f(1) = 1 unless f = 0)."""
    N = f.bound
    if N < 2:
        raise ValueError("need bound >= 2")
    for a in range(1, N + 1):
        for b in range(a, N // a + 1):
            if gcd(a, b) == 1 and f[a * b] != f[a] * f[b]:
                return False
    return True


def mertens(n: int) -> int:
    if n < 1:
        raise ValueError("n must be >= 1")
    return sum(mobius_sieve(n))


def prime_power_indicator(p: int, bound: int) -> TruncatedDirichlet:
    """1 on 1, p, p^2, ..., 0 elsewhere."""
    vals = [0] * bound
    q = 1
    while q <= bound:
        vals[q - 1] = 1
        q *= p
    return TruncatedDirichlet(vals)


def prime_sign(bound: int) -> TruncatedDirichlet:
    """1 at 1, -1 at primes, 0 elsewhere."""
    mu = mobius_sieve(bound)
    vals = [0] * bound
    vals[0] = 1
    for n in range(2, bound + 1):
        if mu[n] == -1 and all(n % p for p in range(2, int(n ** 0.5) + 1)):
            vals[n - 1] = -1
    return TruncatedDirichlet(vals)


def divisor_count(n: int) -> int:
    return sum(1 for d in range(1, n + 1) if n % d == 0)
