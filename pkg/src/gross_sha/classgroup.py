"""Class group of K = Q(sqrt(-q)) via reduced binary quadratic forms.

Forms (a, b, c) have discriminant b^2 - 4ac = -q.  The ideal
[a, (b + sqrt(-q))/2] corresponds to the form (a, b, (b^2 + q)/4a); this map
is a group isomorphism onto the form class group.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import mpmath

from .numerics import DEFAULT_CONTEXT, PrecisionContext, root_of_unity
from .quadfield import FieldParams, QuadIdeal, _xgcd, legendre


class ReducedForm(NamedTuple):
    a: int
    b: int
    c: int

    @property
    def disc(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def inverse(self) -> "ReducedForm":
        return reduce_form(self.a, -self.b, self.c)


def reduce_form(a: int, b: int, c: int) -> ReducedForm:
    """Reduce a positive definite form to the unique reduced one in its class."""
    while True:
        if c < a:
            a, b, c = c, -b, a
            continue
        if b > a or b <= -a:
            # b -> b + 2ka landing in (-a, a]
            k = (a - b) // (2 * a)
            c = c + k * b + k * k * a
            b = b + 2 * k * a
            continue
        break
    if a == c and b < 0:
        b = -b
    return ReducedForm(a, b, c)


def identity_form(q: int) -> ReducedForm:
    return ReducedForm(1, 1, (1 + q) // 4)


def compose(f: ReducedForm, g: ReducedForm) -> ReducedForm:
    """Gauss composition (Shanks' formulation) followed by reduction."""
    if f.disc != g.disc:
        raise ValueError("forms of different discriminant")
    a1, b1, c1 = f
    a2, b2, c2 = g
    if a1 > a2:
        a1, b1, c1, a2, b2, c2 = a2, b2, c2, a1, b1, c1
    s = (b1 + b2) // 2
    n = b2 - s
    if a2 % a1 == 0:
        y1, d = 0, a1
    else:
        d, u, _ = _xgcd(a2, a1)
        y1 = u
    if s % d == 0:
        y2, x2, d1 = -1, 0, d
    else:
        d1, u, v = _xgcd(s, d)
        x2, y2 = u, -v
    v1, v2 = a1 // d1, a2 // d1
    r = (y1 * y2 * n - x2 * c2) % v1
    b3 = b2 + 2 * v2 * r
    a3 = v1 * v2
    c3 = (c2 * d1 + r * (b2 + v2 * r)) // v1
    return reduce_form(a3, b3, c3)


def form_power(f: ReducedForm, k: int, q: int) -> ReducedForm:
    result, base = identity_form(q), f
    if k < 0:
        base, k = f.inverse(), -k
    while k:
        if k & 1:
            result = compose(result, base)
        base = compose(base, base)
        k >>= 1
    return result


def class_of(I: QuadIdeal) -> ReducedForm:
    """Reduced form of the ideal class of I (the content is principal)."""
    a, b = I.a, I.b
    return reduce_form(a, b, (b * b + I.params.q) // (4 * a))


def reduced_forms(q: int) -> list[ReducedForm]:
    """All reduced forms of discriminant -q, in lexicographic order."""
    forms = []
    amax = math.isqrt(q // 3)
    for a in range(1, amax + 1):
        for b in range(-a + 1, a + 1):
            if (b * b + q) % (4 * a):
                continue
            c = (b * b + q) // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            forms.append(ReducedForm(a, b, c))
    return forms


def dirichlet_h(q: int) -> int:
    """Class number from the character-sum formula for prime q = 3 mod 4, q > 3."""
    s = sum(legendre(a, q) for a in range(1, (q + 1) // 2))
    return s // (2 - legendre(2, q))


@dataclass(frozen=True)
class ClassCharacter:
    """Character of Cl(K): exponents (k_1, ..., k_t) against the basis orders."""

    exponents: tuple[int, ...]

    def is_trivial(self) -> bool:
        return not any(self.exponents)

    def label(self) -> str:
        return "(" + ",".join(map(str, self.exponents)) + ")"


@dataclass(frozen=True)
class ClassGroup:
    q: int
    forms: tuple[ReducedForm, ...]
    generators: tuple[tuple[ReducedForm, int], ...]
    dlog: dict = field(compare=False, hash=False, repr=False)

    @property
    def h(self) -> int:
        return len(self.forms)

    @property
    def identity(self) -> ReducedForm:
        return identity_form(self.q)

    @property
    def orders(self) -> tuple[int, ...]:
        return tuple(d for _, d in self.generators)

    @property
    def exponent(self) -> int:
        return self.orders[0] if self.generators else 1

    def compose(self, f: ReducedForm, g: ReducedForm) -> ReducedForm:
        return compose(f, g)

    def power(self, f: ReducedForm, k: int) -> ReducedForm:
        return form_power(f, k, self.q)

    def element(self, exps) -> ReducedForm:
        """Product of generators raised to ``exps``."""
        f = self.identity
        for (g, _), e in zip(self.generators, exps):
            f = compose(f, form_power(g, e, self.q))
        return f

    def order_of_class(self, f: ReducedForm) -> tuple[int, int]:
        """(j, r): the order j of the class of f and r = h/j."""
        j, g = 1, f
        while g != self.identity:
            g = compose(g, f)
            j += 1
        return j, self.h // j

    def characters(self) -> list[ClassCharacter]:
        import itertools

        return [ClassCharacter(tuple(e)) for e in itertools.product(*(range(d) for d in self.orders))]

    def char_index(self, chi: ClassCharacter, f: ReducedForm) -> int:
        """k with chi(f) = exp(2 pi i k / exponent)."""
        e = self.dlog[f]
        n = self.exponent
        return sum(k * x * (n // d) for k, x, d in zip(chi.exponents, e, self.orders)) % n

    def char_value(self, chi: ClassCharacter, f, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpmath.mpc:
        if isinstance(f, QuadIdeal):
            f = class_of(f)
        return root_of_unity(self.char_index(chi, f), self.exponent, ctx)


def enumerate_class_group(q: int, pick: int = 0) -> ClassGroup:
    """Enumerate Cl(K) for K = Q(sqrt(-q)) and decompose it into cyclic factors.

    ``pick`` selects among admissible generator candidates (same order), giving an
    alternative but equally valid basis; ``pick=0`` is the canonical choice.
    """
    FieldParams(q)
    forms = reduced_forms(q)
    h = len(forms)
    if h % 2 != 1:
        raise AssertionError(f"class number {h} of -{q} is even")
    e = identity_form(q)

    def order(f):
        n, g = 1, f
        while g != e:
            g = compose(g, f)
            n += 1
        return n

    # subgroup generated so far, with exponent vectors in the basis built so far
    sub = {e: ()}
    generators = []
    while len(sub) < h:
        best = None
        candidates = []
        for f in forms:
            if f in sub:
                continue
            k, g = 1, f
            while g not in sub:
                g = compose(g, f)
                k += 1
            if best is None or k > best:
                best, candidates = k, [(f, g)]
            elif k == best:
                candidates.append((f, g))
        f, fk = candidates[pick % len(candidates)]
        k = best
        # adjust f by an element of the subgroup so its order is exactly k
        target = fk
        root = None
        for s in sub:
            if form_power(s, k, q) == target:
                root = s
                break
        if root is None:
            raise AssertionError("no lift of maximal quotient order")
        g = compose(f, root.inverse())
        assert order(g) == k
        new_sub = {}
        gp = e
        for i in range(k):
            for s, vec in sub.items():
                new_sub[compose(s, gp)] = vec + (i,)
            gp = compose(gp, g)
        sub = new_sub
        generators.append((g, k))
    if len(set(sub.values())) != h:
        raise AssertionError("discrete log table is not bijective")
    return ClassGroup(q, tuple(forms), tuple(generators), sub)
