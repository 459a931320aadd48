"""Character-level construction of the oriented abelian product with
asymmetric invariant ranks in degree 3.

Starting from a prime p this module finds the companion prime l, splits the
nonzero residues into Frobenius-orbit halves to get the self-dual rank
(l-1)/2 representation V carried by the formal factor, searches exhaustively
for a typical representation U making the degree-3 invariant ranks differ,
and assembles the two character modules W_omega = V + U (one-forms) and
W_o = tau(V) + U* (structure cohomology) together with the full equivariant
diamond h^{i,j} = rk(Lambda^i W_omega x Lambda^j W_o)^G.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .cyclochar import (
    CharRep,
    PrimeContext,
    dual,
    exterior_power,
    frobenius_twist,
    invariants_rank,
    is_prime,
    is_typical,
    multiplicative_order,
)
from .hodgecalc import HodgePolynomial


class NotFoundWithinBound(Exception):
    """No companion prime l below the requested bound."""


class SearchExhausted(Exception):
    """No typical U with asymmetric invariant ranks up to the layer limit."""


class EqualRanks(Exception):
    """Assembly received a pair with equal degree-3 invariant ranks."""


SELECTORS = ("default", "alt")


def find_l(p: int, bound: int = 1000) -> PrimeContext:
    """Smallest prime l <= bound, l != p, with ord(p mod l) divisible by 4.

    Equivalently l divides some p^{2r} + 1; such primes exist for every p,
    so the bound is only a search cutoff.
    """
    if not is_prime(p):
        raise ValueError(f"p={p} is not prime")
    if bound < 5:
        raise ValueError("bound must be at least 5")
    for l in range(5, bound + 1):
        if l == p or not is_prime(l):
            continue
        if multiplicative_order(p, l) % 4 == 0:
            return PrimeContext.create(p, l)
    raise NotFoundWithinBound(f"no companion prime for p={p} up to {bound}")


def _p_cosets(ctx: PrimeContext) -> list[list[int]]:
    """Orbits of multiplication by p on the nonzero residues, sorted by minimum."""
    l, p = ctx.l, ctx.p
    seen: set[int] = set()
    orbits = []
    for a in range(1, l):
        if a in seen:
            continue
        orbit, x = [], a
        while x not in seen:
            seen.add(x)
            orbit.append(x)
            x = (x * p) % l
        orbits.append(sorted(orbit))
    return sorted(orbits)


def build_V(ctx: PrimeContext, selector: str = "default") -> CharRep:
    """One square-subgroup coset from each Frobenius orbit, multiplicity one.

    Each orbit of multiplication by p splits into the two cosets {C, pC} of
    the subgroup generated by p^2; "default" takes the coset containing the
    orbit's smallest residue, "alt" the other one.  The result is self-dual
    (since -1 is a square power of p) and disjoint from its twist.
    """
    if selector not in SELECTORS:
        raise ValueError(f"selector must be one of {SELECTORS}")
    l, p = ctx.l, ctx.p
    chosen: list[int] = []
    for orbit in _p_cosets(ctx):
        smallest = orbit[0]
        coset = sorted((smallest * h) % l for h in ctx.half_ord_group)
        if selector == "alt":
            coset = sorted((p * a) % l for a in coset)
        chosen.extend(coset)
    return CharRep.from_exponents(l, chosen)


def cm_type(u_layer: CharRep) -> frozenset[int]:
    """The embedding choice attached to a full-rank typical layer.

    One residue per inverse pair: a is selected exactly when the character
    with exponent -a appears in the layer, so the set and its negation
    partition the nonzero residues.
    """
    l = u_layer.l
    if not is_typical(u_layer):
        raise ValueError("layer must be typical")
    if u_layer.rank != (l - 1) // 2:
        raise ValueError(f"layer must have rank (l-1)/2 = {(l - 1) // 2}")
    return frozenset((-a) % l for a in u_layer.support())


def st_slopes(phi, ctx: PrimeContext) -> dict[Fraction, int]:
    """Frobenius slopes of the rank l-1 module attached to an embedding set.

    For each orbit O of multiplication by p on the nonzero residues the
    slope |phi and O| / |O| occurs with multiplicity |O|; the total slope
    mass is (l-1)/2 and the multiset is stable under s -> 1 - s.
    """
    l = ctx.l
    phi = frozenset(a % l for a in phi)
    neg = frozenset((-a) % l for a in phi)
    if 0 in phi or (phi | neg) != frozenset(range(1, l)) or phi & neg:
        raise ValueError("phi and -phi must partition the nonzero residues")
    slopes: dict[Fraction, int] = {}
    for orbit in _p_cosets(ctx):
        s = Fraction(len(phi.intersection(orbit)), len(orbit))
        slopes[s] = slopes.get(s, 0) + len(orbit)
    return slopes


def typical_layer_candidates(l: int, layer_count: int):
    """Typical multiplicity patterns with pair sums equal to layer_count.

    Pairs {a, l-a} are ordered by the smaller member a; the enumerated digit
    for a pair is the multiplicity given to the LARGER member, so the
    lexicographically first candidate takes the smaller member everywhere.
    """
    reps = list(range(1, (l + 1) // 2))
    for digits in itertools.product(range(layer_count + 1), repeat=len(reps)):
        mults = {}
        for a, big_count in zip(reps, digits):
            if layer_count - big_count:
                mults[a] = layer_count - big_count
            if big_count:
                mults[l - a] = big_count
        yield CharRep.from_dict(l, mults)


def split_layers(u: CharRep) -> list[CharRep]:
    """Decompose a typical representation into full-rank typical layers."""
    l = u.l
    if not is_typical(u):
        raise ValueError("not typical")
    d = u.mult[1] + u.mult[l - 1]
    layers = []
    for t in range(d):
        exps = []
        for a in range(1, (l + 1) // 2):
            exps.append(a if t < u.mult[a] else l - a)
        layers.append(CharRep.from_exponents(l, exps))
    return layers


def rank_pair(v: CharRep, u: CharRep, p: int) -> tuple[int, int]:
    """(r0, r1) = invariant ranks of the two third exterior powers."""
    w_omega = CharRep(v.l, tuple(a + b for a, b in zip(v.mult, u.mult)))
    tau_v = frobenius_twist(v, p)
    u_dual = dual(u)
    w_o = CharRep(v.l, tuple(a + b for a, b in zip(tau_v.mult, u_dual.mult)))
    return (
        invariants_rank(exterior_power(w_omega, 3)),
        invariants_rank(exterior_power(w_o, 3)),
    )


@dataclass(frozen=True)
class TypicalSearchResult:
    U: CharRep
    r0: int
    r1: int
    layer_count: int
    candidate_index: int


def search_typical_U(
    v: CharRep, ctx: PrimeContext, max_layers: int = 3
) -> TypicalSearchResult:
    """First typical U (by layer count, then candidate order) with r0 != r1.

    Existence is guaranteed for any self-dual V not isomorphic to its twist,
    but without an a-priori layer bound; the limit actually tried is
    reported on failure.
    """
    if dual(v) != v:
        raise ValueError("V must be self-dual")
    if frobenius_twist(v, ctx.p) == v:
        raise ValueError("V must differ from its twist")
    if max_layers < 1:
        raise ValueError("max_layers must be positive")
    for layer_count in range(1, max_layers + 1):
        for idx, u in enumerate(typical_layer_candidates(ctx.l, layer_count)):
            r0, r1 = rank_pair(v, u, ctx.p)
            if r0 != r1:
                return TypicalSearchResult(u, r0, r1, layer_count, idx)
    raise SearchExhausted(f"no asymmetric typical U with at most {max_layers} layers")


def search_table(v: CharRep, ctx: PrimeContext, layer_count: int = 1):
    """All candidates of a fixed layer count with their rank pairs (for reports)."""
    return [
        (u, *rank_pair(v, u, ctx.p))
        for u in typical_layer_candidates(ctx.l, layer_count)
    ]


@dataclass(frozen=True)
class CMData:
    """The assembled character data of the oriented product."""

    ctx: PrimeContext
    V: CharRep
    U: CharRep
    W_omega: CharRep
    W_o: CharRep
    oriented: bool

    @property
    def dim(self) -> int:
        return self.W_omega.rank

    def tau_V(self) -> CharRep:
        return frobenius_twist(self.V, self.ctx.p)

    def U_layers(self) -> list[CharRep]:
        return split_layers(self.U)

    def phi_per_layer(self) -> list[frozenset[int]]:
        return [cm_type(layer) for layer in self.U_layers()]

    def isoclinic(self) -> bool:
        """Single Frobenius orbit on the nonzero residues: every slope is 1/2."""
        return self.ctx.ord == self.ctx.l - 1


def _direct_sum(a: CharRep, b: CharRep) -> CharRep:
    return CharRep(a.l, tuple(x + y for x, y in zip(a.mult, b.mult)))


def assemble_Z(v: CharRep, u: CharRep, ctx: PrimeContext) -> CMData:
    """Form W_omega = V + U and W_o = tau(V) + U*, oriented so that the
    degree-3 invariant rank of the one-form side is strictly smaller.

    When the inequality initially points the other way the product is
    replaced by its dual (swap and dualize the two modules)."""
    w_omega = _direct_sum(v, u)
    w_o = _direct_sum(frobenius_twist(v, ctx.p), dual(u))
    r0 = invariants_rank(exterior_power(w_omega, 3))
    r1 = invariants_rank(exterior_power(w_o, 3))
    if r0 == r1:
        raise EqualRanks("degree-3 invariant ranks coincide; search postcondition broken")
    oriented = r0 > r1
    if oriented:
        w_omega, w_o = dual(w_o), dual(w_omega)
    return CMData(ctx=ctx, V=v, U=u, W_omega=w_omega, W_o=w_o, oriented=oriented)


def equivariant_diamond(z: CMData) -> HodgePolynomial:
    """Invariant ranks h^{i,j} = rk(Lambda^i W_omega x Lambda^j W_o)^G.

    Computed as the constant-exponent coefficient of the product of the two
    subset generating functions, i.e. sum_e P_i[e] * Q_j[-e] where P and Q
    are the exterior-power multiplicity tables of the two modules.
    """
    l = z.ctx.l
    dim = z.dim
    p_tab = [exterior_power(z.W_omega, i).mult for i in range(dim + 1)]
    q_tab = [exterior_power(z.W_o, j).mult for j in range(dim + 1)]
    coeffs = {}
    for i in range(dim + 1):
        for j in range(dim + 1):
            c = sum(p_tab[i][e] * q_tab[j][(-e) % l] for e in range(l))
            if c:
                coeffs[(i, j)] = c
    return HodgePolynomial.create(coeffs)


def degree_slice(diamond: HodgePolynomial, n: int) -> tuple[int, ...]:
    """The degree-n slice (h^{n,0}, h^{n-1,1}, ..., h^{0,n})."""
    return tuple(diamond.coeff(n - t, t) for t in range(n + 1))


def build_cm(
    p: int,
    l: int | None = None,
    selector: str = "default",
    max_layers: int = 3,
    bound: int = 1000,
) -> tuple[CMData, TypicalSearchResult]:
    """End-to-end: companion prime, V, typical search, oriented assembly."""
    ctx = PrimeContext.create(p, l) if l is not None else find_l(p, bound)
    v = build_V(ctx, selector)
    result = search_typical_U(v, ctx, max_layers)
    return assemble_Z(v, result.U, ctx), result
