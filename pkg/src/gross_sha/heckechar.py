"""The Grossencharacter rho of K and its class-group twists psi = rho * chi.

rho has infinity type z: on principal ideals coprime to the conductor f it is
rho((g)) = eps(g) * g, where eps is a +-1 valued character of (O_K/f)^* with
eps(-1) = -1.  On a non-principal ideal a, rho(a) is pinned down by rho(a)^h =
eps(alpha) * alpha for a^h = (alpha); the remaining root-of-unity freedom is a
class-group character and disappears in the product over all chi.

Concretely, each class-group generator g_i gets a prime representative l_i with
l_i^{d_i} = (beta_i), and rho(l_i) is the principal-branch d_i-th root of
eps(beta_i) * beta_i.  Every other ideal is reduced to these through a small
per-class anchor ideal.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Optional

import mpmath

from .classgroup import ClassCharacter, ClassGroup, ReducedForm, class_of, enumerate_class_group
from .numerics import DEFAULT_CONTEXT, PrecisionContext, root_of_unity
from .quadfield import (
    FieldParams,
    QuadIdeal,
    QuadInt,
    Residue,
    Splitting,
    coprime,
    ideal_mul,
    ideal_pow,
    prime_above,
    primes_up_to,
    principal_generator,
    residue_is_one,
    scalar_ideal,
)

PRIME_SEARCH_BOUND = 200_000


def distinguished_prime_above_two(params: FieldParams) -> QuadIdeal:
    """For q = 7 mod 8: the prime p above 2 dividing (1 - beta)/2 = 1 - w.

    Both primes above 2 contain 1 - beta = 2(1 - w); p is the one where the
    valuation of 1 - beta is at least 2.
    """
    if params.q % 8 != 7:
        raise ValueError("2 is not split")
    _, (p, pbar) = prime_above(params, 2)
    one_minus_w = params.element(1, -1)
    return p if one_minus_w in p else pbar


def build_conductor(params: FieldParams) -> QuadIdeal:
    if params.q % 8 == 7:
        return ideal_pow(distinguished_prime_above_two(params), 2)
    return scalar_ideal(params, 4)


@dataclass(frozen=True)
class Epsilon:
    """A +-1 valued character of (O_K/f)^* with eps(-1) = -1.

    For f = p^2 the unit group is {+-1} and eps is read off ``residue_is_one``.
    For f = 4 O_K the character is stored as a table on residues (x mod 4, y mod 4).
    """

    conductor: QuadIdeal
    ident: int = 0
    table: Optional[tuple] = None

    def __call__(self, g: QuadInt) -> int:
        if self.table is None:
            res = residue_is_one(g, self.conductor)
            if res is Residue.PLUS:
                return 1
            if res is Residue.MINUS:
                return -1
            raise ValueError(f"{g} is neither 1 nor -1 mod {self.conductor}")
        if g.norm() % 2 == 0:
            raise ValueError(f"{g} is not coprime to {self.conductor}")
        return dict(self.table)[(g.x % 4, g.y % 4)]

    def describe(self) -> str:
        if self.table is None:
            return "eps(g) = +1 iff g = 1 mod p^2"
        return "eps on (O_K/4)^*: " + " ".join(f"{x}+{y}w:{s:+d}" for (x, y), s in self.table)


def _units_mod4(params: FieldParams) -> list[tuple[int, int]]:
    return [(x, y) for x in range(4) for y in range(4) if (x * x + x * y + params.k * y * y) % 2]


def epsilon_candidates(params: FieldParams, f: QuadIdeal) -> list[Epsilon]:
    """All admissible finite parts eps for the conductor f."""
    if params.q % 8 == 7:
        return [Epsilon(f, 0)]
    units = _units_mod4(params)

    def mul(u, v):
        z = params.element(*u) * params.element(*v)
        return (z.x % 4, z.y % 4)

    one = (1, 0)
    # greedy generating set of the unit group
    gens, span = [], {one}
    for u in units:
        if u in span:
            continue
        gens.append(u)
        frontier = list(span)
        while frontier:
            nxt = []
            for s in frontier:
                t = mul(s, u)
                if t not in span:
                    span.add(t)
                    nxt.append(t)
            frontier = nxt
    found = []
    for signs in itertools.product((1, -1), repeat=len(gens)):
        values = {one: 1}
        queue = [one]
        ok = True
        while queue and ok:
            s = queue.pop()
            for g, sg in zip(gens, signs):
                t = mul(s, g)
                v = values[s] * sg
                if t in values:
                    if values[t] != v:
                        ok = False
                        break
                else:
                    values[t] = v
                    queue.append(t)
        if ok and values[(3, 0)] == -1:
            found.append(tuple(sorted(values.items())))
    found.sort(key=lambda tab: [s for _, s in tab], reverse=True)
    return [Epsilon(f, i, tab) for i, tab in enumerate(found)]


@dataclass(frozen=True)
class Branch:
    """Data fixing rho on one class-group generator."""

    ideal: QuadIdeal
    order: int
    beta: QuadInt
    rho: mpmath.mpc


def _principal_root(z: mpmath.mpc, d: int) -> mpmath.mpc:
    """The d-th root of z with the smallest nonnegative argument."""
    theta = mpmath.arg(z)
    if theta < 0:
        theta += 2 * mpmath.pi
    return mpmath.root(abs(z), d) * mpmath.expj(theta / d)


@dataclass(frozen=True)
class Grossencharacter:
    params: FieldParams
    conductor: QuadIdeal
    epsilon: Epsilon
    group: ClassGroup
    branch: tuple[Branch, ...]
    ctx: PrecisionContext
    anchors: dict = field(compare=False, hash=False, repr=False)

    def on_principal(self, g: QuadInt) -> mpmath.mpc:
        with self.ctx.activate():
            return self.epsilon(g) * g.embed()

    def __call__(self, a: QuadIdeal) -> mpmath.mpc:
        return rho_value(self, a)

    def psi(self, chi: ClassCharacter, a: QuadIdeal) -> mpmath.mpc:
        with self.ctx.activate():
            return self(a) * self.group.char_value(chi, a, self.ctx)


def _split_primes(params: FieldParams, f: QuadIdeal, bound: int):
    for ell in primes_up_to(bound):
        if ell == params.q:
            continue
        kind, ps = prime_above(params, ell)
        if kind is not Splitting.SPLIT:
            continue
        for p in ps:
            if coprime(p, f) and ell != 2:
                yield p


def build_rho(
    params: FieldParams,
    f: QuadIdeal,
    eps: Epsilon,
    G: ClassGroup,
    ctx: PrecisionContext = DEFAULT_CONTEXT,
    bound: int = PRIME_SEARCH_BOUND,
) -> Grossencharacter:
    """Realize rho with conductor f and finite part eps."""
    wanted_gens = {g: i for i, (g, _) in enumerate(G.generators)}
    reps: dict[int, QuadIdeal] = {}
    anchor_ideals: dict[ReducedForm, QuadIdeal] = {G.identity: params.unit_ideal()}
    search = 64
    while len(reps) < len(wanted_gens) or len(anchor_ideals) < G.h:
        for p in _split_primes(params, f, search):
            c = class_of(p)
            if c in wanted_gens and wanted_gens[c] not in reps:
                reps[wanted_gens[c]] = p
            inv = c.inverse()
            if inv not in anchor_ideals:
                anchor_ideals[inv] = p
        if len(reps) == len(wanted_gens) and len(anchor_ideals) == G.h:
            break
        if search >= bound:
            raise RuntimeError(f"no prime representative below {bound} for some class of q={params.q}; raise bound")
        search = min(4 * search, bound)

    with ctx.activate():
        branch = []
        for i, (g, d) in enumerate(G.generators):
            li = reps[i]
            beta = principal_generator(ideal_pow(li, d))
            if beta is None:
                raise AssertionError(f"{li}^{d} is not principal")
            rho_li = _principal_root(eps(beta) * beta.embed(), d)
            branch.append(Branch(li, d, beta, rho_li))

        anchors = {}
        for c, J in anchor_ideals.items():
            # c is the inverse class of J; store (J, rho(J))
            e = G.dlog[class_of(J)]
            big = J
            denom = mpmath.mpc(1)
            for b, ei in zip(branch, e):
                k = (b.order - ei) % b.order
                if k:
                    big = ideal_mul(big, ideal_pow(b.ideal, k))
                    denom *= b.rho**k
            gamma = principal_generator(big)
            if gamma is None:
                raise AssertionError("anchor reduction did not reach a principal ideal")
            anchors[c] = (J, eps(gamma) * gamma.embed() / denom)
    return Grossencharacter(params, f, eps, G, tuple(branch), ctx, anchors)


def rho_value(R: Grossencharacter, a: QuadIdeal) -> mpmath.mpc:
    """rho(a) for an integral ideal a coprime to the conductor."""
    if not coprime(a, R.conductor):
        raise ValueError(f"{a} is not coprime to the conductor {R.conductor}")
    J, rho_J = R.anchors[class_of(a)]
    gamma = principal_generator(ideal_mul(a, J))
    if gamma is None:
        raise AssertionError("a*J is not principal")
    with R.ctx.activate():
        return R.epsilon(gamma) * gamma.embed() / rho_J


def grossencharacters(q: int, ctx: PrecisionContext = DEFAULT_CONTEXT, pick: int = 0) -> list[Grossencharacter]:
    """rho for every admissible eps (one for q = 7 mod 8, two for q = 3 mod 8)."""
    params = FieldParams(q)
    f = build_conductor(params)
    G = enumerate_class_group(q, pick=pick)
    return [build_rho(params, f, eps, G, ctx) for eps in epsilon_candidates(params, f)]


@dataclass(frozen=True)
class PrimeIdealData:
    """A prime ideal coprime to f, with rho and its class; shared across all chi."""

    ideal: QuadIdeal
    degree: int  # N(P) = ell^degree
    rho: mpmath.mpc
    form: ReducedForm


def local_data(R: Grossencharacter, X: int) -> dict[int, list[PrimeIdealData]]:
    """Prime ideals of norm a power of ell <= X coprime to f, keyed by ell."""
    params = R.params
    out: dict[int, list[PrimeIdealData]] = {}
    with R.ctx.activate():
        for ell in primes_up_to(X):
            kind, ps = prime_above(params, ell)
            entries = []
            for P in ps:
                if not coprime(P, R.conductor):
                    continue
                deg = 2 if kind is Splitting.INERT else 1
                if ell**deg > X:
                    continue
                entries.append(PrimeIdealData(P, deg, rho_value(R, P), class_of(P)))
            out[ell] = entries
    return out


@dataclass(frozen=True)
class CoefficientSeries:
    """Dirichlet coefficients c(1..X) of L(rho*chi, s); ``c[0]`` is unused."""

    X: int
    c: tuple

    def __getitem__(self, n: int):
        return self.c[n]


def coefficients(
    R: Grossencharacter,
    chi: ClassCharacter,
    X: int,
    local: Optional[dict] = None,
) -> CoefficientSeries:
    """Expand the Euler product of L(rho*chi, s) up to n = X."""
    if X < 1:
        raise ValueError("X must be positive")
    if local is None:
        local = local_data(R, X)
    G = R.group
    n_exp = G.exponent
    with R.ctx.activate():
        zeta = [root_of_unity(k, n_exp, R.ctx) for k in range(n_exp)]
        # smallest prime factor sieve
        spf = list(range(X + 1))
        for i in range(2, math.isqrt(X) + 1):
            if spf[i] == i:
                for j in range(i * i, X + 1, i):
                    if spf[j] == j:
                        spf[j] = i
        local_coeffs: dict[int, list] = {}
        for ell, entries in local.items():
            if ell > X:
                continue
            K = 0
            while ell ** (K + 1) <= X:
                K += 1
            series = [mpmath.mpc(1)] + [mpmath.mpc(0)] * K
            for e in entries:
                v = e.rho * zeta[G.char_index(chi, e.form)]
                d = e.degree
                for i in range(d, K + 1):
                    series[i] = series[i] + v * series[i - d]
            local_coeffs[ell] = series
        zero = mpmath.mpc(0)
        c = [zero] * (X + 1)
        c[1] = mpmath.mpc(1)
        for n in range(2, X + 1):
            p = spf[n]
            m, k = n, 0
            while m % p == 0:
                m //= p
                k += 1
            lp = local_coeffs.get(p)
            if lp is None:
                continue
            v = lp[k]
            if v == 0 or c[m] == 0:
                continue
            c[n] = v * c[m]
    return CoefficientSeries(X, tuple(c))
