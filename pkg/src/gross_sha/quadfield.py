"""Exact arithmetic in K = Q(sqrt(-q)) for a prime q = 3 mod 4, q > 3.

Elements of O_K are written x + y*w with w = (1 + sqrt(-q))/2, so that
w^2 = w - (1 + q)/4.  Ideals are kept in two-generator normal form

    content * (Z*a + Z*(b + sqrt(-q))/2),   b^2 = -q (mod 4a),  -a < b <= a.

The distinguished complex embedding sends sqrt(-q) to +i*sqrt(q).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import mpmath

# Deterministic for n < 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    """Miller-Rabin with fixed bases; deterministic far beyond the sweep range."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) for an odd prime p."""
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def sqrt_mod(n: int, p: int) -> int:
    """Tonelli-Shanks square root of n modulo an odd prime p."""
    n %= p
    if n == 0:
        return 0
    if legendre(n, p) != 1:
        raise ValueError(f"{n} is not a square mod {p}")
    if p % 4 == 3:
        return pow(n, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while legendre(z, p) != -1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(n, q, p), pow(n, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, n + 1, i)))
    return [i for i in range(n + 1) if sieve[i]]


class Splitting(Enum):
    SPLIT = "split"
    INERT = "inert"
    RAMIFIED = "ramified"


class Residue(Enum):
    PLUS = "plus"
    MINUS = "minus"
    NEITHER = "neither"


@dataclass(frozen=True)
class FieldParams:
    """The field K = Q(sqrt(-q))."""

    q: int

    def __post_init__(self):
        q = self.q
        if not isinstance(q, int) or q <= 3 or q % 4 != 3 or not is_prime(q):
            raise ValueError(f"q must be a prime = 3 mod 4 with q > 3, got {q!r}")

    @property
    def disc(self) -> int:
        return -self.q

    @property
    def k(self) -> int:
        """(1 + q)/4, so that w^2 = w - k."""
        return (1 + self.q) // 4

    @property
    def mod8(self) -> int:
        return self.q % 8

    def element(self, x: int, y: int = 0) -> "QuadInt":
        return QuadInt(self, x, y)

    @property
    def sqrt_minus_q(self) -> "QuadInt":
        """beta = sqrt(-q) = 2w - 1."""
        return QuadInt(self, -1, 2)

    def unit_ideal(self) -> "QuadIdeal":
        return QuadIdeal(self, 1, 1, 1)

    def principal_ideal(self, g: "QuadInt") -> "QuadIdeal":
        """(g) as a two-generator ideal."""
        return ideal_from_generators(self, [(g.x, g.y), ((g * self.element(0, 1)).x, (g * self.element(0, 1)).y)])


@dataclass(frozen=True)
class QuadInt:
    """x + y*w in O_K."""

    params: FieldParams
    x: int
    y: int

    def __add__(self, other):
        other = self._coerce(other)
        return QuadInt(self.params, self.x + other.x, self.y + other.y)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return QuadInt(self.params, self.x - other.x, self.y - other.y)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return QuadInt(self.params, -self.x, -self.y)

    def __mul__(self, other):
        other = self._coerce(other)
        k = self.params.k
        x1, y1, x2, y2 = self.x, self.y, other.x, other.y
        return QuadInt(self.params, x1 * x2 - k * y1 * y2, x1 * y2 + x2 * y1 + y1 * y2)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result, base = QuadInt(self.params, 1, 0), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def _coerce(self, other) -> "QuadInt":
        if isinstance(other, QuadInt):
            return other
        if isinstance(other, int):
            return QuadInt(self.params, other, 0)
        return NotImplemented

    def conjugate(self) -> "QuadInt":
        # conj(w) = 1 - w
        return QuadInt(self.params, self.x + self.y, -self.y)

    def norm(self) -> int:
        x, y = self.x, self.y
        return x * x + x * y + self.params.k * y * y

    def trace(self) -> int:
        return 2 * self.x + self.y

    def embed(self) -> mpmath.mpc:
        """Image under sqrt(-q) -> +i sqrt(q), at the current mpmath precision."""
        half = mpmath.mpf(self.y) / 2
        return mpmath.mpc(self.x + half, half * mpmath.sqrt(self.params.q))

    def __repr__(self):
        return f"QuadInt({self.x} + {self.y}w; q={self.params.q})"


@dataclass(frozen=True)
class QuadIdeal:
    """content * [a, (b + sqrt(-q))/2] with b normalized into (-a, a]."""

    params: FieldParams
    a: int
    b: int
    content: int = 1

    def __post_init__(self):
        a, b = self.a, self.b
        if a <= 0 or self.content <= 0:
            raise ValueError("ideal data must be positive")
        if (b * b + self.params.q) % (4 * a):
            raise ValueError(f"b^2 != -q mod 4a for a={a}, b={b}")
        nb = _normalize_b(a, b)
        if nb != b:
            object.__setattr__(self, "b", nb)

    def norm(self) -> int:
        return self.content * self.content * self.a

    def basis(self) -> tuple[QuadInt, QuadInt]:
        """Z-basis: (content*a, content*(b + sqrt(-q))/2)."""
        g, p = self.content, self.params
        return QuadInt(p, g * self.a, 0), QuadInt(p, g * (self.b - 1) // 2, g)

    def contains(self, z: QuadInt) -> bool:
        g = self.content
        if z.y % g:
            return False
        n = z.y // g
        rest = z.x - n * g * (self.b - 1) // 2
        return rest % (g * self.a) == 0

    def __contains__(self, z: QuadInt) -> bool:
        return self.contains(z)

    def is_primitive(self) -> bool:
        return self.content == 1

    def __mul__(self, other: "QuadIdeal") -> "QuadIdeal":
        return ideal_mul(self, other)

    def __pow__(self, k: int) -> "QuadIdeal":
        return ideal_pow(self, k)

    def conjugate(self) -> "QuadIdeal":
        return conjugate(self)

    def __repr__(self):
        c = f"{self.content}*" if self.content != 1 else ""
        return f"{c}[{self.a}, ({self.b}+sqrt(-{self.params.q}))/2]"


def _normalize_b(a: int, b: int) -> int:
    b %= 2 * a
    if b > a:
        b -= 2 * a
    return b


def ideal_from_generators(params: FieldParams, gens) -> QuadIdeal:
    """Ideal spanned over Z by vectors (x, y) = x + y*w; the span must be an ideal."""
    # Hermite normal form of the Z-span in the basis (1, w)
    rows = [(x, y) for x, y in gens]
    g, gx = 0, 0
    xs = []
    for x, y in rows:
        if y == 0:
            xs.append(x)
            continue
        if g == 0:
            g, gx = y, x
            continue
        d, s, t = _xgcd(g, y)
        nx = s * gx + t * x
        # the eliminated combination has zero w-coordinate
        xs.append((y // d) * gx - (g // d) * x)
        g, gx = d, nx
    if g < 0:
        g, gx = -g, -gx
    A = 0
    for x in xs:
        A = math.gcd(A, x)
    if g == 0 or A == 0:
        raise ValueError("generators do not span a full-rank lattice")
    gx %= A
    # lattice = Z*A + Z*(gx + g*w); content is g
    if A % g or gx % g:
        raise ValueError("span is not an ideal")
    a = A // g
    b = 2 * (gx // g) + 1
    return QuadIdeal(params, a, b, g)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        t = a // b
        a, b = b, a - t * b
        x0, x1 = x1, x0 - t * x1
        y0, y1 = y1, y0 - t * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def ideal_mul(I: QuadIdeal, J: QuadIdeal) -> QuadIdeal:
    """Exact product of two ideals (Hermite form of the four generator products)."""
    if I.params != J.params:
        raise ValueError("ideals of different fields")
    u1, u2 = I.basis()
    v1, v2 = J.basis()
    gens = [(z.x, z.y) for z in (u1 * v1, u1 * v2, u2 * v1, u2 * v2)]
    return ideal_from_generators(I.params, gens)


def ideal_pow(I: QuadIdeal, k: int) -> QuadIdeal:
    if k < 0:
        raise ValueError("negative exponent")
    result, base = I.params.unit_ideal(), I
    while k:
        if k & 1:
            result = ideal_mul(result, base)
        k >>= 1
        if k:
            base = ideal_mul(base, base)
    return result


def conjugate(I: QuadIdeal) -> QuadIdeal:
    return QuadIdeal(I.params, I.a, -I.b, I.content)


def scalar_ideal(params: FieldParams, n: int) -> QuadIdeal:
    """n * O_K."""
    return QuadIdeal(params, 1, 1, abs(n))


def prime_above(params: FieldParams, ell: int) -> tuple[Splitting, list[QuadIdeal]]:
    """Primes of O_K above the rational prime ``ell``."""
    if not is_prime(ell):
        raise ValueError(f"{ell} is not prime")
    q = params.q
    if ell == q:
        return Splitting.RAMIFIED, [QuadIdeal(params, q, q)]
    if ell == 2:
        if q % 8 == 7:
            # b = 1 solves b^2 = -q mod 8
            p = QuadIdeal(params, 2, 1)
            return Splitting.SPLIT, [p, conjugate(p)]
        return Splitting.INERT, [scalar_ideal(params, 2)]
    if legendre(-q, ell) == 1:
        s = sqrt_mod(-q, ell)
        b = s if s % 2 == 1 else s - ell  # odd representative keeps b^2 = -q mod 4*ell
        p = QuadIdeal(params, ell, b)
        return Splitting.SPLIT, [p, conjugate(p)]
    return Splitting.INERT, [scalar_ideal(params, ell)]


def principal_generator(I: QuadIdeal) -> Optional[QuadInt]:
    """A generator of I if I is principal, else None.

    Lagrange-Gauss reduction of the ideal lattice; since the units of O_K are
    only +-1, I is principal exactly when its shortest vector has norm N(I).
    """
    u, v = I.basis()
    nu, nv = u.norm(), v.norm()
    if nu > nv:
        u, v, nu, nv = v, u, nv, nu
    while True:
        # twice the inner product <u, v> = N(u + v) - N(u) - N(v)
        ip2 = (u + v).norm() - nu - nv
        m = _round_div(ip2, 2 * nu)
        if m:
            v = v - m * u
            nv = v.norm()
        if nv >= nu:
            break
        u, v, nu, nv = v, u, nv, nu
    return u if nu == I.norm() else None


def _round_div(a: int, b: int) -> int:
    """Nearest integer to a/b for b > 0."""
    return (2 * a + b) // (2 * b)


def ideal_sum(I: QuadIdeal, J: QuadIdeal) -> QuadIdeal:
    gens = [(z.x, z.y) for z in I.basis() + J.basis()]
    return ideal_from_generators(I.params, gens)


def coprime(I: QuadIdeal, J: QuadIdeal) -> bool:
    return ideal_sum(I, J).norm() == 1


def residue_is_one(gamma: QuadInt, f: QuadIdeal) -> Residue:
    """Classify gamma as 1, -1 or neither modulo the ideal f."""
    if math.gcd(gamma.norm(), f.norm()) != 1 and not coprime(gamma.params.principal_ideal(gamma), f):
        raise ValueError(f"{gamma} is not coprime to {f}")
    if (gamma - 1) in f:
        return Residue.PLUS
    if (gamma + 1) in f:
        return Residue.MINUS
    return Residue.NEITHER
