"""Hodge vectors, Newton slope multisets and the polygon-level checks.

Everything here is the discrete shadow of a filtered module in a single
cohomological degree n: a Hodge vector (h^{n,0}, ..., h^{0,n}), a multiset
of rational Frobenius slopes, the endpoint numbers t_H and t_N, and the
polygon comparisons built from them.  Slopes are exact Fractions; no
floating point anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple


class EvenDegree(Exception):
    """Parity predicate requested for an even cohomological degree."""


class RelationViolated(Exception):
    """Hodge vector fails the degree-n endpoint relation 2*t_H = n*rank."""


SlopeMultiset = dict[Fraction, int]


def _normalize_newton(newton) -> dict[Fraction, int]:
    out: dict[Fraction, int] = {}
    for slope, m in dict(newton).items():
        if m < 0:
            raise ValueError("slope multiplicities must be non-negative")
        if m == 0:
            continue
        s = Fraction(slope)
        out[s] = out.get(s, 0) + m
    return out


@dataclass(frozen=True)
class PolygonData:
    """Hodge vector plus Newton slopes for one cohomological degree n.

    ``hodge`` is ordered by descending Omega-degree: hodge[0] = h^{n,0},
    hodge[t] = h^{n-t,t}, ..., hodge[n] = h^{0,n}.  This is the order used
    on the command line and in certificates.
    """

    n: int
    hodge: tuple[int, ...]
    newton: tuple[tuple[Fraction, int], ...]

    @staticmethod
    def create(n: int, hodge, newton) -> "PolygonData":
        hv = tuple(int(h) for h in hodge)
        if n < 0 or len(hv) != n + 1:
            raise ValueError(f"hodge vector must have length n+1 = {n + 1}")
        if any(h < 0 for h in hv):
            raise ValueError("Hodge numbers must be non-negative")
        ns = _normalize_newton(newton)
        if sum(hv) != sum(ns.values()):
            raise ValueError(
                f"rank mismatch: Hodge rank {sum(hv)} vs Newton rank {sum(ns.values())}"
            )
        return PolygonData(n, hv, tuple(sorted(ns.items())))

    @property
    def rank(self) -> int:
        return sum(self.hodge)

    def h(self, i: int) -> int:
        """h^{i, n-i}."""
        return self.hodge[self.n - i]

    def newton_dict(self) -> dict[Fraction, int]:
        return dict(self.newton)


def t_H(pd: PolygonData) -> int:
    """Hodge endpoint: sum of i * h^{i,n-i}."""
    return sum(i * pd.h(i) for i in range(pd.n + 1))


def t_N(slopes) -> Fraction:
    """Newton endpoint: sum of slope * multiplicity over the multiset."""
    total = Fraction(0)
    for slope, m in _normalize_newton(slopes).items():
        total += slope * m
    return total


def check_weak_admissibility_endpoints(pd: PolygonData) -> bool:
    """Endpoint equality t_N = t_H (the only strength of admissibility used here)."""
    return t_N(pd.newton_dict()) == t_H(pd)


def check_slope_symmetry(pd: PolygonData) -> bool:
    """Slope multiset invariant under s -> n - s."""
    ns = pd.newton_dict()
    return all(ns.get(pd.n - s, 0) == m for s, m in ns.items())


def check_slope_symmetry_scalar(pd: PolygonData) -> bool:
    """The weaker endpoint consequence 2*t_N = n*rank."""
    return 2 * t_N(pd.newton_dict()) == pd.n * pd.rank


def check_degree_relation(pd: PolygonData) -> bool:
    """Degree-n relation: sum i*h^{i,n-i} = sum (n-i)*h^{i,n-i}, i.e. 2*t_H = n*rank.

    At n = 1 this is h^{1,0} = h^{0,1}, at n = 2 it is h^{2,0} = h^{0,2}.
    """
    return 2 * t_H(pd) == pd.n * pd.rank


def check_parity(pd: PolygonData) -> bool:
    """For odd n, the total rank must be even whenever the degree relation holds."""
    if pd.n % 2 == 0:
        raise EvenDegree(f"parity predicate undefined for even degree n={pd.n}")
    return pd.rank % 2 == 0


class WeaklyAdmissibleDatum(NamedTuple):
    a: int                      # t_H of the input vector
    b: int                      # its rank; the single slope is a/b
    filtration_dims: tuple[int, ...]  # dim F^0 .. dim F^n (suffix sums)


def construct_weakly_admissible(hodge, n: int) -> WeaklyAdmissibleDatum:
    """Single-slope datum realizing a Hodge vector satisfying the degree relation.

    Returns (a, b, filtration dims) with slope a/b of multiplicity b and
    dim F^i = h^{i,n-i} + ... + h^{n,0}; the resulting PolygonData passes
    both the endpoint check and newton_above_hodge.
    """
    hv = tuple(int(h) for h in hodge)
    if n < 0 or len(hv) != n + 1:
        raise ValueError(f"hodge vector must have length n+1 = {n + 1}")
    if any(h < 0 for h in hv):
        raise ValueError("Hodge numbers must be non-negative")
    b = sum(hv)
    a = sum(i * hv[n - i] for i in range(n + 1))
    if 2 * a != n * b:
        raise RelationViolated(
            f"hodge vector {tuple(hv)} fails 2*t_H = n*rank ({2 * a} != {n * b})"
        )
    # dim F^i indexed ascending i; hv is descending, so suffix sums of reversed
    dims = []
    for i in range(n + 1):
        dims.append(sum(hv[t] for t in range(n - i + 1)))
    return WeaklyAdmissibleDatum(a=a, b=b, filtration_dims=tuple(dims))


def polygon_ordinates(slopes) -> list[Fraction]:
    """Cumulative ordinates of the convex polygon with the given slopes from (0,0)."""
    expanded: list[Fraction] = []
    for s, m in sorted(_normalize_newton(slopes).items()):
        expanded.extend([s] * m)
    out = [Fraction(0)]
    for s in expanded:
        out.append(out[-1] + s)
    return out


def hodge_slopes(pd: PolygonData) -> dict[Fraction, int]:
    """The Hodge polygon as a slope multiset: slope i with multiplicity h^{i,n-i}."""
    return {Fraction(i): pd.h(i) for i in range(pd.n + 1) if pd.h(i)}


def newton_above_hodge(pd: PolygonData) -> bool:
    """Newton polygon on or above the Hodge polygon with matching endpoints.

    Both polygons are drawn from (0,0) with slopes in ascending order and
    compared at every integer abscissa (all breakpoints are integral).
    """
    newt = polygon_ordinates(pd.newton_dict())
    hodg = polygon_ordinates(hodge_slopes(pd))
    if newt[-1] != hodg[-1]:
        return False
    return all(nv >= hv for nv, hv in zip(newt, hodg))
