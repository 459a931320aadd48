"""Independent brute-force oracles used to freeze expected test values.

Everything here is deliberately naive (full enumeration) and shares no code
path with the implementations it checks.
"""

from __future__ import annotations

import itertools

from hodge_asym.cyclochar import CharRep


def subset_exterior(v: CharRep, k: int) -> CharRep:
    """Exterior power by enumerating all k-element index subsets."""
    exps = v.exponents()
    mults: dict[int, int] = {}
    for combo in itertools.combinations(range(len(exps)), k):
        e = sum(exps[t] for t in combo) % v.l
        mults[e] = mults.get(e, 0) + 1
    return CharRep.from_dict(v.l, mults)


def pair_tensor(v: CharRep, w: CharRep) -> CharRep:
    """Tensor product by enumerating all exponent pairs."""
    mults: dict[int, int] = {}
    for a in v.exponents():
        for b in w.exponents():
            e = (a + b) % v.l
            mults[e] = mults.get(e, 0) + 1
    return CharRep.from_dict(v.l, mults)


def lattice_middle_row(d: int, n: int, p: int) -> int:
    """Middle-row primitive Hodge number by full tuple enumeration."""
    target = d * (n + 1 - p)
    return sum(
        1
        for tup in itertools.product(range(1, d), repeat=n + 2)
        if sum(tup) == target
    )


def typical_by_partition(u: CharRep) -> bool:
    """Typicality by searching for an actual partition into valid layers.

    Backtracking over layers, each layer being a set of (l-1)/2 exponents
    avoiding both members of any inverse pair.  Exponential; only for small
    inputs.
    """
    l = u.l
    if u.mult[0] != 0:
        return False
    half = (l - 1) // 2
    if u.rank % half:
        return False
    d = u.rank // half

    def peel(remaining: dict[int, int], layers: int) -> bool:
        if layers == 0:
            return all(m == 0 for m in remaining.values())
        pairs = [(a, l - a) for a in range(1, half + 1)]

        def choose(idx: int, current: dict[int, int]) -> bool:
            if idx == len(pairs):
                return peel(current, layers - 1)
            a, b = pairs[idx]
            for pick in (a, b):
                if current.get(pick, 0) > 0:
                    current[pick] -= 1
                    if choose(idx + 1, current):
                        current[pick] += 1
                        return True
                    current[pick] += 1
            return False

        return choose(0, dict(remaining))

    return peel(u.as_dict(), d)


def naive_table_product(a: dict, b: dict, bound: int | None = None) -> dict:
    """Coefficient convolution of two {(i,j): c} tables, optionally truncated."""
    out: dict[tuple[int, int], int] = {}
    for (i1, j1), c1 in a.items():
        for (i2, j2), c2 in b.items():
            i, j = i1 + i2, j1 + j2
            if bound is None or i + j <= bound:
                out[(i, j)] = out.get((i, j), 0) + c1 * c2
    return {k: c for k, c in out.items() if c}


def triple_invariants(exps_a: list[int], exps_b: list[int], l: int, *, wedge_a: int) -> int:
    """rk(Lambda^{wedge_a} A x Lambda^{3-wedge_a} B)^G by direct enumeration."""
    total = 0
    for ca in itertools.combinations(range(len(exps_a)), wedge_a):
        sa = sum(exps_a[t] for t in ca)
        for cb in itertools.combinations(range(len(exps_b)), 3 - wedge_a):
            if (sa + sum(exps_b[t] for t in cb)) % l == 0:
                total += 1
    return total
