"""Exact character calculus for a cyclic group of prime order l.

A representation of Z/l on a free module over a large-enough unramified
coefficient ring is determined by its character multiplicities: the chosen
generator acts on a rank-one summand by the a-th power of a fixed primitive
l-th root of unity, and we record only the multiplicity of each exponent
a in 0..l-1.  Every rank computed downstream is an integer function of
these exponents, so this module is the arithmetic bedrock of the package.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb


# ---------------------------------------------------------------------------
# small number theory helpers (kept local: no third-party deps, fast import)


def is_prime(n: int) -> bool:
    """Deterministic trial-division primality test (fine for the sizes here)."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def multiplicative_order(a: int, n: int) -> int:
    """Smallest k >= 1 with a^k = 1 mod n; requires gcd(a, n) = 1."""
    a %= n
    if a == 0:
        raise ValueError(f"{a} is not invertible mod {n}")
    k, x = 1, a
    while x != 1:
        x = (x * a) % n
        k += 1
        if k > n:
            raise ValueError(f"{a} is not invertible mod {n}")
    return k


@dataclass(frozen=True)
class PrimeContext:
    """The pair of distinct primes (p, l) with ord(p mod l) divisible by 4.

    half_ord_group is the subgroup generated by p^2 in (Z/l)^x; because
    ord/2 is even, -1 = p^(ord/2) lies in it, which forces self-duality of
    the coset representations built in cmbuild.
    """

    p: int
    l: int
    ord: int
    half_ord_group: frozenset[int]

    @staticmethod
    def create(p: int, l: int) -> "PrimeContext":
        if not is_prime(p):
            raise ValueError(f"p={p} is not prime")
        if not is_prime(l):
            raise ValueError(f"l={l} is not prime")
        if p == l:
            raise ValueError("p and l must be distinct")
        order = multiplicative_order(p, l)
        if order % 4 != 0:
            raise ValueError(
                f"ord({p} mod {l}) = {order} is not divisible by 4"
            )
        sq = (p * p) % l
        group = {1}
        x = sq
        while x != 1:
            group.add(x)
            x = (x * sq) % l
        ctx = PrimeContext(p=p, l=l, ord=order, half_ord_group=frozenset(group))
        assert (l - 1) % l in ctx.half_ord_group  # -1 = p^(ord/2), ord/2 even
        return ctx


@dataclass(frozen=True)
class CharRep:
    """Multiplicity vector of a Z/l-representation over character exponents.

    mult[a] is the multiplicity of the character sending the generator to
    the a-th power of the fixed primitive l-th root of unity.
    """

    l: int
    mult: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.l < 2 or not is_prime(self.l):
            raise ValueError(f"modulus l={self.l} must be prime")
        if len(self.mult) != self.l:
            raise ValueError("multiplicity vector must have length l")
        if any(m < 0 for m in self.mult):
            raise ValueError("multiplicities must be non-negative")

    @staticmethod
    def from_dict(l: int, mults: dict[int, int]) -> "CharRep":
        """Build from {exponent: multiplicity}; exponents reduced mod l."""
        vec = [0] * l
        for a, m in mults.items():
            vec[a % l] += m
        return CharRep(l, tuple(vec))

    @staticmethod
    def from_exponents(l: int, exponents) -> "CharRep":
        vec = [0] * l
        for a in exponents:
            vec[a % l] += 1
        return CharRep(l, tuple(vec))

    @property
    def rank(self) -> int:
        return sum(self.mult)

    def exponents(self) -> list[int]:
        """The exponent multiset, expanded and sorted."""
        out: list[int] = []
        for a, m in enumerate(self.mult):
            out.extend([a] * m)
        return out

    def support(self) -> list[int]:
        return [a for a, m in enumerate(self.mult) if m > 0]

    def as_dict(self) -> dict[int, int]:
        return {a: m for a, m in enumerate(self.mult) if m > 0}

    # -- text form used by the CLI and certificates: "l=5; 1:1,2:1" --------

    def to_text(self) -> str:
        body = ",".join(f"{a}:{m}" for a, m in enumerate(self.mult) if m > 0)
        return f"l={self.l}; {body}" if body else f"l={self.l};"

    @staticmethod
    def from_text(text: str) -> "CharRep":
        head, _, body = text.partition(";")
        head = head.strip()
        if not head.startswith("l="):
            raise ValueError(f"bad CharRep text {text!r}")
        l = int(head[2:])
        mults: dict[int, int] = {}
        body = body.strip()
        if body:
            for item in body.split(","):
                a_s, _, m_s = item.partition(":")
                a = int(a_s) % l
                mults[a] = mults.get(a, 0) + int(m_s)
        return CharRep.from_dict(l, mults)

    def __repr__(self) -> str:  # compact, mirrors the text form
        return f"CharRep({self.to_text()!r})"


# ---------------------------------------------------------------------------
# operations


def dual(v: CharRep) -> CharRep:
    """Dual representation: negate every exponent."""
    l = v.l
    return CharRep(l, tuple(v.mult[(-a) % l] for a in range(l)))


def frobenius_twist(v: CharRep, p: int) -> CharRep:
    """Precompose with g -> g^p: multiply every exponent by p mod l."""
    l = v.l
    if p % l == 0:
        raise ValueError(f"p={p} is not invertible mod l={l}")
    vec = [0] * l
    for a, m in enumerate(v.mult):
        vec[(p * a) % l] += m
    return CharRep(l, tuple(vec))


def tensor(v: CharRep, w: CharRep) -> CharRep:
    """Tensor product: cyclic convolution of multiplicity vectors."""
    if v.l != w.l:
        raise ValueError(f"modulus mismatch: {v.l} != {w.l}")
    l = v.l
    vec = [0] * l
    for a, ma in enumerate(v.mult):
        if ma == 0:
            continue
        for b, mb in enumerate(w.mult):
            if mb:
                vec[(a + b) % l] += ma * mb
    return CharRep(l, tuple(vec))


def exterior_power(v: CharRep, k: int) -> CharRep:
    """k-th exterior power via the generating function over exponents.

    Expands the product of (1 + t*x^a) over the rank(v) exponent instances
    in Z[x]/(x^l - 1) and reads off the coefficient of t^k.  Equivalent to
    enumerating k-element index subsets (the test oracle), but quasi-linear
    in rank*l per step instead of binomial.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    l = v.l
    if k > v.rank:
        return CharRep(l, (0,) * l)
    # dp[j][e]: number of j-subsets of processed exponents summing to e mod l
    dp = [[0] * l for _ in range(k + 1)]
    dp[0][0] = 1
    for a in v.exponents():
        for j in range(min(k, v.rank), 0, -1):
            row, prev = dp[j], dp[j - 1]
            for e in range(l):
                c = prev[(e - a) % l]
                if c:
                    row[e] += c
    return CharRep(l, tuple(dp[k]))


def invariants_rank(v: CharRep) -> int:
    """Rank of the invariant submodule: the multiplicity of the trivial character."""
    return v.mult[0]


def is_typical(u: CharRep) -> bool:
    """Whether u splits into layers avoiding both members of any inverse pair.

    Equivalent pair-sum criterion: no trivial character, and a single d >= 0
    with mult[a] + mult[-a] = d for every nonzero a (distributing the
    multiset greedily across d sets then realizes the layered form).
    """
    l = u.l
    if l == 2:
        raise ValueError("typicality needs an odd prime modulus")
    if u.mult[0] != 0:
        return False
    d = u.mult[1] + u.mult[l - 1]
    return all(u.mult[a] + u.mult[l - a] == d for a in range(1, (l + 1) // 2))


def rank_of_exterior(rank: int, k: int) -> int:
    """C(rank, k); the rank the k-th exterior power must have."""
    return comb(rank, k)
