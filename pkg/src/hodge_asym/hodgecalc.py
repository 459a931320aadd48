"""Exact bivariate Hodge-polynomial and truncated-series algebra.

Coefficient tables h^{i,j} are finite maps (i,j) -> non-negative int; the
polynomial H(x,y) = sum h^{i,j} x^i y^j multiplies by convolution under
products of varieties.  Alongside the concrete tables this module carries
the symbolic side: integer-valued polynomials in a formal product-size
parameter d (DPoly), ledgers of exact/opaque Hodge asymmetries
delta^{i,j} = h^{i,j} - h^{j,i}, and linear expressions combining the two.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb


class NonSymmetricFactor(Exception):
    """Product-asymmetry formula applied with a non-symmetric known factor."""


class NonNegativeDelta(Exception):
    """Special-fiber fix requested for a non-negative degree-3 asymmetry."""


# ---------------------------------------------------------------------------
# concrete coefficient tables


def _clean(coeffs: dict) -> dict[tuple[int, int], int]:
    out: dict[tuple[int, int], int] = {}
    for (i, j), c in coeffs.items():
        if i < 0 or j < 0:
            raise ValueError(f"negative bidegree ({i},{j})")
        if c < 0:
            raise ValueError(f"negative coefficient {c} at ({i},{j})")
        if c:
            out[(i, j)] = int(c)
    return out


@dataclass(frozen=True)
class HodgePolynomial:
    """Finitely supported table of non-negative Hodge numbers."""

    coeffs: tuple[tuple[tuple[int, int], int], ...]

    @staticmethod
    def create(coeffs: dict) -> "HodgePolynomial":
        return HodgePolynomial(tuple(sorted(_clean(coeffs).items())))

    @staticmethod
    def zero() -> "HodgePolynomial":
        return HodgePolynomial(())

    @staticmethod
    def one() -> "HodgePolynomial":
        return HodgePolynomial.create({(0, 0): 1})

    def as_dict(self) -> dict[tuple[int, int], int]:
        return dict(self.coeffs)

    def coeff(self, i: int, j: int) -> int:
        return self.as_dict().get((i, j), 0)

    def is_symmetric(self) -> bool:
        d = self.as_dict()
        return all(d.get((j, i), 0) == c for (i, j), c in d.items())

    def total_degree(self) -> int:
        return max((i + j for (i, j), _ in self.coeffs), default=0)

    def __mul__(self, other: "HodgePolynomial") -> "HodgePolynomial":
        return product(self, other)

    def __pow__(self, m: int) -> "HodgePolynomial":
        if m < 0:
            raise ValueError("negative power")
        out = HodgePolynomial.one()
        for _ in range(m):
            out = out * self
        return out


@dataclass(frozen=True)
class HodgeSeries:
    """Coefficient table truncated at total degree <= bound."""

    coeffs: tuple[tuple[tuple[int, int], int], ...]
    bound: int

    @staticmethod
    def create(coeffs: dict, bound: int) -> "HodgeSeries":
        if bound < 0:
            raise ValueError("bound must be non-negative")
        kept = {k: c for k, c in _clean(coeffs).items() if k[0] + k[1] <= bound}
        return HodgeSeries(tuple(sorted(kept.items())), bound)

    def as_dict(self) -> dict[tuple[int, int], int]:
        return dict(self.coeffs)

    def coeff(self, i: int, j: int) -> int:
        return self.as_dict().get((i, j), 0)


def _convolve(a: dict, b: dict) -> dict[tuple[int, int], int]:
    out: dict[tuple[int, int], int] = {}
    for (i1, j1), c1 in a.items():
        for (i2, j2), c2 in b.items():
            k = (i1 + i2, j1 + j2)
            out[k] = out.get(k, 0) + c1 * c2
    return out


def product(h1, h2):
    """Coefficient convolution; truncates at the smaller bound if a series is involved."""
    conv = _convolve(h1.as_dict(), h2.as_dict())
    bounds = [h.bound for h in (h1, h2) if isinstance(h, HodgeSeries)]
    if bounds:
        return HodgeSeries.create(conv, min(bounds))
    return HodgePolynomial.create(conv)


def delta(h, i: int, j: int) -> int:
    """The asymmetry h^{i,j} - h^{j,i} of a polynomial or series."""
    return h.coeff(i, j) - h.coeff(j, i)


# ---------------------------------------------------------------------------
# standard diamonds and constructions


def projective_space(n: int) -> HodgePolynomial:
    """Diamond of n-dimensional projective space: 1 + xy + ... + (xy)^n."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return HodgePolynomial.create({(a, a): 1 for a in range(n + 1)})


def blow_up(h_ambient: HodgePolynomial, h_center: HodgePolynomial, r: int) -> HodgePolynomial:
    """Blow-up along a center of codimension r+1 >= 2.

    H_ambient + H_center * (xy + (xy)^2 + ... + (xy)^r), exactly.
    """
    if r < 1:
        raise ValueError(f"codimension r+1 = {r + 1} must be at least 2")
    shift = HodgePolynomial.create({(t, t): 1 for t in range(1, r + 1)})
    out = h_ambient.as_dict()
    for k, c in (h_center * shift).as_dict().items():
        out[k] = out.get(k, 0) + c
    return HodgePolynomial.create(out)


def middle_row_count(d: int, n: int, p: int) -> int:
    """Primitive middle Hodge number of a degree-d hypersurface of dimension n.

    Counts integer tuples (a_0, ..., a_{n+1}) with 1 <= a_t <= d-1 and
    sum a_t = d*(n+1-p); the count at p = n is C(d-1, n+1) identically.
    """
    target = d * (n + 1 - p)
    # coefficient of x^target in (x + x^2 + ... + x^{d-1})^{n+2}
    poly = [1]
    for _ in range(n + 2):
        new = [0] * (len(poly) + d - 1)
        for e, c in enumerate(poly):
            if c:
                for a in range(1, d):
                    new[e + a] += c
        poly = new
        if target < len(poly):
            poly = poly[: target + 1]
    return poly[target] if target < len(poly) else 0


def hypersurface(d: int, n: int) -> HodgePolynomial:
    """Full diamond of a smooth degree-d hypersurface in (n+1)-space.

    Off the middle row the diamond is that of the ambient projective space
    (h^{a,a} = 1 for 2a != n, zero elsewhere); the middle row is the
    primitive lattice-point count plus the non-primitive class at a = n/2.
    """
    if d < 1 or n < 1:
        raise ValueError("need d >= 1 and n >= 1")
    coeffs: dict[tuple[int, int], int] = {}
    for a in range(n + 1):
        if 2 * a != n:
            coeffs[(a, a)] = 1
    for p in range(n + 1):
        prim = middle_row_count(d, n, p)
        if 2 * p == n:
            coeffs[(p, p)] = prim + 1
        elif prim:
            coeffs[(p, n - p)] = prim
    return HodgePolynomial.create(coeffs)


def minimal_ambient_dims(n: int, s: int) -> tuple[int, ...]:
    """Ambient dimensions N_t = dim(Y_t) + 2, the smallest legal choice."""
    dims, cur = [], n
    for _ in range(s):
        dims.append(cur + 2)
        cur = cur + 2
    return tuple(dims)


def blow_up_tower(d: int, n: int, s: int, ambient_dims=None) -> HodgePolynomial:
    """Iterated blow-up of projective spaces along the previous stage.

    Y_0 is the degree-d hypersurface of dimension n; Y_{t+1} is the blow-up
    of N_t-space along Y_t (codimension N_t - dim Y_t >= 2).  The result
    decomposes as F(xy) + H_{Y_0}(x,y) * (xy)^s * G(xy).
    """
    if s < 0:
        raise ValueError("s must be non-negative")
    if ambient_dims is None:
        ambient_dims = minimal_ambient_dims(n, s)
    if len(ambient_dims) != s:
        raise ValueError(f"need exactly {s} ambient dimensions")
    h = hypersurface(d, n)
    cur_dim = n
    for big_n in ambient_dims:
        r = big_n - cur_dim - 1
        if r < 1:
            raise ValueError(
                f"ambient dimension {big_n} must exceed current dimension {cur_dim} + 1"
            )
        h = blow_up(projective_space(big_n), h, r)
        cur_dim = big_n
    return h


def stack_series(kind: str, bound: int = 12) -> HodgeSeries:
    """Truncated classifying-stack series.

    mu_p:    (1+x)/(1-xy) = sum_k (x^k y^k + x^{k+1} y^k)
    Z_mod_p: 1/(1-y)      = sum_k y^k
    """
    if bound < 0:
        raise ValueError("bound must be non-negative")
    coeffs: dict[tuple[int, int], int] = {}
    if kind == "mu_p":
        k = 0
        while 2 * k <= bound:
            coeffs[(k, k)] = 1
            if 2 * k + 1 <= bound:
                coeffs[(k + 1, k)] = 1
            k += 1
    elif kind == "Z_mod_p":
        for k in range(bound + 1):
            coeffs[(0, k)] = 1
    else:
        raise ValueError(f"unknown stack kind {kind!r}")
    return HodgeSeries.create(coeffs, bound)


# ---------------------------------------------------------------------------
# integer-valued polynomials in the formal parameter d


@dataclass(frozen=True)
class DPoly:
    """Univariate polynomial in the product-size parameter d, exact coefficients."""

    coeffs: tuple[Fraction, ...]  # ascending powers, no trailing zeros

    @staticmethod
    def create(coeffs) -> "DPoly":
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        return DPoly(tuple(cs))

    @staticmethod
    def constant(c) -> "DPoly":
        return DPoly.create([c])

    @staticmethod
    def zero() -> "DPoly":
        return DPoly(())

    @staticmethod
    def binomial(k: int, shift: int = 0) -> "DPoly":
        """C(d + shift, k) expanded as a polynomial in d."""
        return DPoly.binomial_linear(k, 1, shift)

    @staticmethod
    def binomial_linear(k: int, a: int, b: int) -> "DPoly":
        """C(a*d + b, k) expanded as a polynomial in d."""
        if k < 0:
            raise ValueError("k must be non-negative")
        out = DPoly.constant(1)
        for t in range(k):
            out = out * DPoly.create([b - t, a])
        return out * DPoly.constant(Fraction(1, _factorial(k)))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def __add__(self, other: "DPoly") -> "DPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return DPoly.create(
            [
                (self.coeffs[t] if t < len(self.coeffs) else 0)
                + (other.coeffs[t] if t < len(other.coeffs) else 0)
                for t in range(n)
            ]
        )

    def __neg__(self) -> "DPoly":
        return DPoly.create([-c for c in self.coeffs])

    def __sub__(self, other: "DPoly") -> "DPoly":
        return self + (-other)

    def __mul__(self, other: "DPoly") -> "DPoly":
        if self.is_zero() or other.is_zero():
            return DPoly.zero()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for a, ca in enumerate(self.coeffs):
            for b, cb in enumerate(other.coeffs):
                out[a + b] += ca * cb
        return DPoly.create(out)

    def scale(self, c) -> "DPoly":
        return self * DPoly.constant(c)

    def eval(self, d: int) -> Fraction:
        total = Fraction(0)
        for c in reversed(self.coeffs):
            total = total * d + c
        return total

    def eval_int(self, d: int) -> int:
        v = self.eval(d)
        if v.denominator != 1:
            raise ValueError(f"non-integer value {v} at d={d}")
        return v.numerator

    def serialize(self) -> list:
        """Ascending coefficients; integers plain, other rationals as 'num/den'."""
        return [
            c.numerator if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
            for c in self.coeffs
        ]

    @staticmethod
    def deserialize(items) -> "DPoly":
        return DPoly.create([Fraction(str(c)) for c in items])

    def display(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for t in range(self.degree, -1, -1):
            c = self.coeffs[t]
            if c == 0:
                continue
            mag = abs(c)
            mono = "" if t == 0 else ("d" if t == 1 else f"d^{t}")
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{mag}*{mono}"
            else:
                body = str(mag)
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = (first_sign if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text


def _factorial(k: int) -> int:
    out = 1
    for t in range(2, k + 1):
        out *= t
    return out


# ---------------------------------------------------------------------------
# asymmetry ledgers and symbolic expressions


def opaque_symbol(i: int, j: int) -> str:
    """Canonical name for the unknown asymmetry at (i,j), i > j."""
    return f"delta({i},{j})"


@dataclass(frozen=True)
class DeltaValue:
    """Integer-linear combination of 1 and opaque symbols (no d dependence)."""

    exact: int = 0
    opaque: tuple[tuple[str, int], ...] = ()

    @staticmethod
    def create(exact: int = 0, opaque: dict | None = None) -> "DeltaValue":
        cleaned = {s: c for s, c in (opaque or {}).items() if c != 0}
        return DeltaValue(exact, tuple(sorted(cleaned.items())))

    def opaque_dict(self) -> dict[str, int]:
        return dict(self.opaque)

    def is_zero(self) -> bool:
        return self.exact == 0 and not self.opaque

    def __add__(self, other: "DeltaValue") -> "DeltaValue":
        op = self.opaque_dict()
        for s, c in other.opaque:
            op[s] = op.get(s, 0) + c
        return DeltaValue.create(self.exact + other.exact, op)

    def scale(self, c: int) -> "DeltaValue":
        return DeltaValue.create(self.exact * c, {s: v * c for s, v in self.opaque})

    def __neg__(self) -> "DeltaValue":
        return self.scale(-1)

    def display(self) -> str:
        parts = [str(self.exact)] if self.exact else []
        for s, c in self.opaque:
            parts.append(f"{c}*{s}" if c != 1 else s)
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class DeltaLedger:
    """Per-(i,j) asymmetries for i > j: exact integers where known, opaque otherwise.

    The convention delta^{j,i} = -delta^{i,j} and delta^{i,i} = 0 is applied
    on lookup; entries at negative indices are zero (no cohomology there).
    A complete ledger (fully-known table) treats missing keys as exact zero.
    """

    exact: tuple[tuple[tuple[int, int], int], ...]
    complete: bool = False

    @staticmethod
    def create(exact: dict[tuple[int, int], int], complete: bool = False) -> "DeltaLedger":
        for (i, j) in exact:
            if i <= j:
                raise ValueError(f"ledger keys must have i > j, got ({i},{j})")
        return DeltaLedger(tuple(sorted(exact.items())), complete)

    @staticmethod
    def from_degree3(delta30: int) -> "DeltaLedger":
        """Ledger of a smooth-model object with known degree-3 asymmetry.

        Degree 1 and 2 are symmetric and the degree-3 relation pins
        delta^{2,1} = -3*delta^{3,0}; everything above stays opaque.
        """
        return DeltaLedger.create(
            {(1, 0): 0, (2, 0): 0, (3, 0): delta30, (2, 1): -3 * delta30}
        )

    @staticmethod
    def from_polynomial(h: HodgePolynomial) -> "DeltaLedger":
        """Fully-exact ledger of a known coefficient table (for cross-checks)."""
        d = h.as_dict()
        tops = {max(i, j) for (i, j) in d} | {0}
        m = max(tops)
        exact = {}
        for i in range(m + 1):
            for j in range(i):
                exact[(i, j)] = delta(h, i, j)
        return DeltaLedger.create(exact, complete=True)

    def exact_dict(self) -> dict[tuple[int, int], int]:
        return dict(self.exact)

    def entry(self, i: int, j: int) -> DeltaValue:
        if i < 0 or j < 0 or i == j:
            return DeltaValue.create(0)
        sign = 1 if i > j else -1
        key = (max(i, j), min(i, j))
        known = self.exact_dict()
        if key in known:
            return DeltaValue.create(sign * known[key])
        if self.complete:
            return DeltaValue.create(0)
        return DeltaValue.create(0, {opaque_symbol(*key): sign})

    def is_exact(self, i: int, j: int) -> bool:
        return i == j or i < 0 or j < 0 or (max(i, j), min(i, j)) in self.exact_dict()


@dataclass(frozen=True)
class DeltaExpr:
    """Polynomial in d whose coefficients are combinations of 1 and opaque symbols."""

    exact: DPoly = field(default_factory=DPoly.zero)
    opaque: tuple[tuple[str, DPoly], ...] = ()

    @staticmethod
    def create(exact: DPoly, opaque: dict[str, DPoly] | None = None) -> "DeltaExpr":
        cleaned = {s: p for s, p in (opaque or {}).items() if not p.is_zero()}
        return DeltaExpr(exact, tuple(sorted(cleaned.items())))

    @staticmethod
    def zero() -> "DeltaExpr":
        return DeltaExpr.create(DPoly.zero())

    def opaque_dict(self) -> dict[str, DPoly]:
        return dict(self.opaque)

    def add_term(self, value: DeltaValue, coeff: DPoly) -> "DeltaExpr":
        exact = self.exact + coeff.scale(value.exact)
        op = self.opaque_dict()
        for s, c in value.opaque:
            op[s] = op.get(s, DPoly.zero()) + coeff.scale(c)
        return DeltaExpr.create(exact, op)

    def __neg__(self) -> "DeltaExpr":
        return DeltaExpr.create(-self.exact, {s: -p for s, p in self.opaque})

    def is_nonconstant_in_d(self) -> bool:
        return self.exact.degree >= 1 or any(p.degree >= 1 for _, p in self.opaque)

    def opaque_coeffs_d_independent(self) -> bool:
        return all(p.is_constant() for _, p in self.opaque)

    def max_exception_count(self) -> int:
        """Bound on the integer values of d where the expression can vanish.

        Valid whenever the opaque coefficients are d-independent: for any
        assignment of the opaque symbols the expression is the exact part
        plus a constant, hence has at most deg(exact) roots.
        """
        return max(self.exact.degree, 0)

    def serialize(self) -> dict:
        return {
            "exact": self.exact.serialize(),
            "opaque": {s: p.serialize() for s, p in self.opaque},
        }

    @staticmethod
    def deserialize(data: dict) -> "DeltaExpr":
        return DeltaExpr.create(
            DPoly.deserialize(data["exact"]),
            {s: DPoly.deserialize(p) for s, p in data["opaque"].items()},
        )

    def display(self) -> str:
        parts = [] if self.exact.is_zero() else [self.exact.display()]
        for s, p in self.opaque:
            parts.append(s if p == DPoly.constant(1) else f"({p.display()})*{s}")
        return " + ".join(parts) if parts else "0"


def product_delta(ledger: DeltaLedger, h_sym: HodgePolynomial, i: int, j: int) -> DeltaValue:
    """Asymmetry of a product with a symmetric factor.

    delta^{i,j}(T x Y) = sum over i1+i2=i, j1+j2=j of delta^{i1,j1}(T) * h^{i2,j2}(Y),
    with the ledger supplying exact or opaque delta entries of T.
    """
    if not h_sym.is_symmetric():
        raise NonSymmetricFactor("the known factor must have a symmetric table")
    total = DeltaValue.create(0)
    for (i2, j2), c in h_sym.as_dict().items():
        if i2 <= i and j2 <= j:
            total = total + ledger.entry(i - i2, j - j2).scale(c)
    return total


# ---------------------------------------------------------------------------
# special-fiber symmetrization and polarization search


def _edge_mul(a: dict, b: dict) -> dict[tuple[int, int], int]:
    """Multiply coefficient tables modulo the monomials x^i y^j with i,j > 0,
    i > 3 or j > 3 (only the degree <= 3 edges of the diamond survive)."""
    out: dict[tuple[int, int], int] = {}
    for (i1, j1), c1 in a.items():
        for (i2, j2), c2 in b.items():
            i, j = i1 + i2, j1 + j2
            if (i == 0 or j == 0) and i <= 3 and j <= 3:
                out[(i, j)] = out.get((i, j), 0) + c1 * c2
    return out


def _series_edge(series: HodgeSeries) -> dict[tuple[int, int], int]:
    return {
        (i, j): c
        for (i, j), c in series.as_dict().items()
        if (i == 0 or j == 0) and i <= 3 and j <= 3
    }


@dataclass(frozen=True)
class SpecialFiberFix:
    l_factor: int
    composed_h30: int
    composed_h03: int
    composed_delta30: int
    closed_forms_ok: bool

    @property
    def symmetric(self) -> bool:
        return self.composed_delta30 == 0


def special_fiber_fix(delta30: int, edge: dict | None = None) -> SpecialFiberFix:
    """Number of elliptic factors cancelling a degree-3 special-fiber asymmetry.

    The auxiliary special fiber is the truncated series
    (1/(1-y)) * ((1+x)/(1-xy)) * (1+x+y+xy)^l reduced modulo (x^4, xy, y^4);
    its own asymmetry is -(l+1), so it cancels the fiber carrying the
    OPPOSITE (dual) orientation of the given one: with l = -delta30 - 1 the
    product of the transposed fiber with the auxiliary satisfies
    delta^{3,0} = -delta30 - (l+1) = 0, equivalently the composed
    delta^{0,3} reproduces delta30 + l + 1 = 0 exactly.  The edge closed
    forms (binomial sums in l) are re-derived and checked along the way.

    ``edge`` holds the known special fiber's edge coefficients
    {(i,0): h^{i,0}, (0,j): h^{0,j}} with symmetric degrees 1 and 2 and
    delta^{3,0} = delta30 < 0; the default is the minimal such table.
    """
    if delta30 >= 0:
        raise NonNegativeDelta(f"fix applies only to delta^{{3,0}} < 0, got {delta30}")
    l = -delta30 - 1
    if edge is None:
        edge = {(0, 0): 1, (0, 3): -delta30}
    edge = {k: c for k, c in edge.items() if c}
    h = {"h30": edge.get((3, 0), 0), "h03": edge.get((0, 3), 0),
         "h20": edge.get((2, 0), 0), "h02": edge.get((0, 2), 0),
         "h10": edge.get((1, 0), 0), "h01": edge.get((0, 1), 0)}
    if h["h30"] - h["h03"] != delta30:
        raise ValueError("edge data does not realize the given delta^{3,0}")
    if edge.get((0, 0), 0) != 1:
        raise ValueError("edge data must be connected (h^{0,0} = 1)")
    if h["h10"] or h["h01"]:
        raise ValueError("edge data must have vanishing degree-1 numbers")
    if h["h20"] != h["h02"]:
        raise ValueError("edge data must be symmetric in degree 2")

    aux = _series_edge(stack_series("Z_mod_p", 3))
    aux = _edge_mul(aux, _series_edge(stack_series("mu_p", 3)))
    elliptic = {(0, 0): 1, (1, 0): 1, (0, 1): 1}  # (1+x+y+xy) mod the ideal
    for _ in range(l):
        aux = _edge_mul(aux, elliptic)
    transposed = {(j, i): c for (i, j), c in edge.items()}  # dual orientation
    composed = _edge_mul(transposed, aux)

    h30 = composed.get((3, 0), 0)
    h03 = composed.get((0, 3), 0)
    forms_ok = (
        h30 == comb(l, 3) + comb(l, 2) + h["h03"] + (l + 1) * h["h02"]
        and h03 == comb(l, 3) + comb(l, 2) + l + 1 + h["h30"] + (l + 1) * h["h20"]
        and h03 - h30 == delta30 + l + 1
    )
    return SpecialFiberFix(
        l_factor=l,
        composed_h30=h30,
        composed_h03=h03,
        composed_delta30=h30 - h03,
        closed_forms_ok=forms_ok,
    )


def polarization_value(h_top: int, k: int, dim: int, n: int) -> int:
    """Top self-intersection of H + nE after a point blow-up: H^d - (k-n)^d + k^d."""
    return h_top - (k - n) ** dim + k ** dim


def polarization_degree_search(h_top: int, k: int, dim: int, p: int) -> int:
    """Smallest n >= 0 making the blown-up self-intersection prime to p.

    Exists with n <= p because (k-n)^dim mod p takes at least two values as
    n varies over a full residue system.
    """
    if dim < 1 or k < 1:
        raise ValueError("need dim >= 1 and k >= 1")
    for n in range(p + 1):
        if polarization_value(h_top, k, dim, n) % p != 0:
            return n
    raise AssertionError("unreachable: some n <= p always works")


def weil_restriction_power(h: HodgePolynomial, d_prime: int) -> HodgePolynomial:
    """Coefficient table of the d_prime-fold self-product (concrete descent degree)."""
    if d_prime < 1:
        raise ValueError("d_prime must be positive")
    return h ** d_prime


def weil_restriction_delta30(delta30: int, symbol: str = "d_prime") -> DeltaExpr:
    """Degree-3 asymmetry after descent with an opaque degree: delta30 * d'."""
    return DeltaExpr.create(DPoly.zero(), {symbol: DPoly.constant(delta30)})
