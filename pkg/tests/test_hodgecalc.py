import random
from math import comb

import pytest

from hodge_asym.hodgecalc import (
    DeltaExpr,
    DeltaLedger,
    DeltaValue,
    DPoly,
    HodgePolynomial,
    HodgeSeries,
    NonNegativeDelta,
    NonSymmetricFactor,
    blow_up,
    blow_up_tower,
    delta,
    hypersurface,
    middle_row_count,
    minimal_ambient_dims,
    polarization_degree_search,
    polarization_value,
    product,
    product_delta,
    projective_space,
    special_fiber_fix,
    stack_series,
    weil_restriction_delta30,
    weil_restriction_power,
)
from oracles import lattice_middle_row, naive_table_product

H = HodgePolynomial.create


def test_product_examples():
    p1 = projective_space(1)
    assert product(p1, p1) == H({(0, 0): 1, (1, 1): 2, (2, 2): 1})
    h = H({(0, 0): 1, (2, 1): 3})
    assert product(h, HodgePolynomial.one()) == h
    assert product(H({(0, 0): 1, (3, 0): 1}), H({(0, 0): 1, (0, 3): 1})).coeff(3, 3) == 1


def test_product_algebra_properties():
    rng = random.Random(3)

    def rand_poly():
        return H(
            {
                (rng.randint(0, 3), rng.randint(0, 3)): rng.randint(1, 4)
                for _ in range(rng.randint(0, 5))
            }
        )

    for _ in range(40):
        a, b, c = rand_poly(), rand_poly(), rand_poly()
        assert product(a, b) == product(b, a)
        assert product(product(a, b), c) == product(a, product(b, c))
        assert product(a, HodgePolynomial.one()) == a
        assert product(a, b).as_dict() == naive_table_product(a.as_dict(), b.as_dict())


def test_projective_space():
    assert projective_space(0) == HodgePolynomial.one()
    assert projective_space(2) == H({(0, 0): 1, (1, 1): 1, (2, 2): 1})
    for n in range(1, 6):
        assert hypersurface(1, n) == projective_space(n)
    with pytest.raises(ValueError):
        projective_space(-1)


def test_blow_up_examples():
    point = HodgePolynomial.one()
    assert blow_up(projective_space(2), point, 1) == H(
        {(0, 0): 1, (1, 1): 2, (2, 2): 1}
    )
    assert blow_up(projective_space(3), projective_space(1), 1) == H(
        {(0, 0): 1, (1, 1): 2, (2, 2): 2, (3, 3): 1}
    )
    amb = projective_space(4)
    assert blow_up(amb, HodgePolynomial.zero(), 2) == amb
    with pytest.raises(ValueError):
        blow_up(amb, point, 0)


def test_blow_up_structure():
    rng = random.Random(5)
    for _ in range(25):
        center = H(
            {
                (rng.randint(0, 2), rng.randint(0, 2)): rng.randint(1, 3)
                for _ in range(rng.randint(0, 4))
            }
        )
        ambient = projective_space(rng.randint(3, 6))
        r = rng.randint(1, 3)
        blown = blow_up(ambient, center, r)
        assert blown.coeff(0, 0) == ambient.coeff(0, 0)  # connectedness
        # added mass sits exactly on the diagonal shifts of the center
        diff = {
            k: blown.coeff(*k) - ambient.coeff(*k)
            for k in set(blown.as_dict()) | set(ambient.as_dict())
        }
        expected = naive_table_product(
            center.as_dict(), {(t, t): 1 for t in range(1, r + 1)}
        )
        assert {k: c for k, c in diff.items() if c} == expected


def test_hypersurface_paper_values():
    assert hypersurface(5, 2).coeff(2, 0) == comb(4, 3) == 4
    assert tuple(hypersurface(4, 2).coeff(a, 2 - a) for a in (2, 1, 0)) == (1, 20, 1)
    assert hypersurface(3, 2).coeff(1, 1) == 7
    assert hypersurface(3, 2).coeff(2, 0) == comb(2, 3) == 0
    assert hypersurface(5, 2).coeff(1, 1) == 45


def test_hypersurface_middle_row_against_lattice_oracle():
    for d, n in [(4, 2), (3, 2), (5, 2), (3, 3), (2, 4)]:
        h = hypersurface(d, n)
        for p in range(n + 1):
            expected = lattice_middle_row(d, n, p)
            assert middle_row_count(d, n, p) == expected
            got = h.coeff(p, n - p)
            if 2 * p == n:
                assert got == expected + 1
            else:
                assert got == expected + (1 if p == n - p else 0)


def test_hypersurface_sweep_identities():
    for d in range(1, 11):
        for n in range(1, 6):
            h = hypersurface(d, n)
            assert h.coeff(n, 0) == comb(d - 1, n + 1)
            table = h.as_dict()
            for (a, b), c in table.items():
                assert table.get((b, a), 0) == c  # Hodge symmetry
                assert table.get((n - a, n - b), 0) == c  # Serre duality
                assert a + b == n or a == b  # vanishing pattern
            if n >= 1:
                assert hypersurface(2, n).coeff(n, 0) == 0
    with pytest.raises(ValueError):
        hypersurface(0, 2)
    with pytest.raises(ValueError):
        hypersurface(3, 0)


def test_blow_up_tower_examples():
    assert blow_up_tower(4, 2, 0) == hypersurface(4, 2)
    # one stage over 3-space on a plane cubic
    got = blow_up_tower(3, 1, 1, (3,))
    expected = H(
        {(0, 0): 1, (1, 1): 2, (2, 1): 1, (1, 2): 1, (2, 2): 2, (3, 3): 1}
    )
    assert got == expected
    assert got.coeff(2, 1) == 1
    with pytest.raises(ValueError):
        blow_up_tower(3, 1, 1, (2,))  # codimension 1 embedding


def test_blow_up_tower_decomposition():
    # H = F(xy) + H_T * (xy)^s * G(xy) with F, G of constant term 1
    for d, n, s in [(3, 1, 1), (4, 1, 2), (3, 2, 1), (5, 1, 3)]:
        dims = minimal_ambient_dims(n, s)
        tower = blow_up_tower(d, n, s, dims)
        g = HodgePolynomial.one()  # minimal ambients have r_t = 1
        shift = H({(s, s): 1})
        rest = product(product(hypersurface(d, n), shift), g)
        f = {
            k: tower.coeff(*k) - rest.coeff(*k)
            for k in set(tower.as_dict()) | set(rest.as_dict())
        }
        f = {k: c for k, c in f.items() if c}
        assert all(i == j for (i, j) in f)
        assert f.get((0, 0)) == 1


def test_blow_up_tower_offdiagonal_support():
    for d, n, s in [(3, 1, 1), (4, 1, 2), (4, 2, 1), (5, 3, 2)]:
        tower = blow_up_tower(d, n, s)
        if hypersurface(d, n).coeff(n, 0) == 0:
            continue
        offdiag = [i + j for (i, j) in tower.as_dict() if i != j]
        assert min(offdiag) == n + 2 * s


def test_stack_series_examples():
    mu = stack_series("mu_p", 3)
    assert mu.as_dict() == {(0, 0): 1, (1, 0): 1, (1, 1): 1, (2, 1): 1}
    z = stack_series("Z_mod_p", 3)
    assert z.as_dict() == {(0, 0): 1, (0, 1): 1, (0, 2): 1, (0, 3): 1}
    both = product(mu, z)
    assert both.as_dict() == naive_table_product(mu.as_dict(), z.as_dict(), bound=3)
    assert both.coeff(1, 1) == 2  # xy from x*y and from the mu_p diagonal
    with pytest.raises(ValueError):
        stack_series("other", 3)


def test_stack_series_recurrences():
    mu = stack_series("mu_p", 9)
    for k in range(4):
        assert mu.coeff(k + 1, k + 1) == mu.coeff(k, k) == 1
        assert mu.coeff(k + 2, k + 1) == mu.coeff(k + 1, k) == 1
    z = stack_series("Z_mod_p", 9)
    for k in range(9):
        assert z.coeff(0, k + 1) == z.coeff(0, k) == 1


def test_series_product_truncation():
    a = HodgeSeries.create({(0, 0): 1, (2, 1): 5}, 6)
    b = HodgeSeries.create({(3, 3): 1, (0, 0): 1}, 4)
    prod = product(a, b)
    assert isinstance(prod, HodgeSeries) and prod.bound == 4
    assert prod.coeff(2, 1) == 5
    assert prod.coeff(3, 3) == 0  # total degree 6 > bound 4
    assert prod.coeff(5, 4) == 0


def test_delta():
    h = H({(0, 0): 1, (3, 0): 1})
    assert delta(h, 3, 0) == 1
    assert delta(h, 0, 3) == -1
    assert delta(h, 2, 2) == 0


def test_dpoly_basics():
    c = DPoly.binomial(2, -1)  # C(d-1, 2)
    for d in range(1, 12):
        assert c.eval_int(d) == comb(d - 1, 2)
    lin = DPoly.binomial_linear(3, 2, -1)  # C(2d-1, 3)
    for d in range(1, 8):
        assert lin.eval_int(d) == comb(2 * d - 1, 3)
    assert (c - c).is_zero()
    assert DPoly.create([2, -3, 1]).display() == "d^2 - 3*d + 2"
    assert DPoly.deserialize(c.serialize()) == c
    assert DPoly.constant(5).is_constant() and not c.is_constant()


def test_delta_value_and_expr():
    v = DeltaValue.create(2, {"delta(4,1)": 1})
    w = DeltaValue.create(-2, {"delta(4,1)": 2, "delta(5,2)": -1})
    assert (v + w) == DeltaValue.create(0, {"delta(4,1)": 3, "delta(5,2)": -1})
    assert v.scale(-2) == DeltaValue.create(-4, {"delta(4,1)": -2})

    expr = DeltaExpr.zero().add_term(v, DPoly.create([0, 1]))
    assert expr.exact == DPoly.create([0, 2])
    assert expr.is_nonconstant_in_d()
    assert not expr.opaque_coeffs_d_independent()  # the opaque picked up a d
    rt = DeltaExpr.deserialize(expr.serialize())
    assert rt == expr


def test_ledger_lookup():
    ledger = DeltaLedger.from_degree3(-1)
    assert ledger.entry(3, 0) == DeltaValue.create(-1)
    assert ledger.entry(0, 3) == DeltaValue.create(1)
    assert ledger.entry(2, 1) == DeltaValue.create(3)
    assert ledger.entry(1, 0).is_zero() and ledger.entry(2, 0).is_zero()
    assert ledger.entry(4, 4).is_zero()
    assert ledger.entry(-1, 2).is_zero()
    assert ledger.entry(4, 1) == DeltaValue.create(0, {"delta(4,1)": 1})
    assert ledger.entry(1, 4) == DeltaValue.create(0, {"delta(4,1)": -1})
    with pytest.raises(ValueError):
        DeltaLedger.create({(1, 2): 3})


def test_product_delta_examples():
    ledger = DeltaLedger.from_degree3(-1)
    p1 = projective_space(1)
    got = product_delta(ledger, p1, 4, 1)
    assert got == DeltaValue.create(-1, {"delta(4,1)": 1})
    assert product_delta(ledger, HodgePolynomial.one(), 3, 0) == DeltaValue.create(-1)
    with pytest.raises(NonSymmetricFactor):
        product_delta(ledger, H({(1, 0): 1}), 3, 0)


def test_product_delta_against_direct_computation():
    rng = random.Random(15)
    for _ in range(40):
        h1 = H(
            {
                (rng.randint(0, 3), rng.randint(0, 3)): rng.randint(1, 3)
                for _ in range(rng.randint(1, 6))
            }
        )
        half = {
            (rng.randint(0, 2), rng.randint(0, 2)): rng.randint(1, 3)
            for _ in range(rng.randint(0, 4))
        }
        sym = {}
        for (a, b), c in half.items():
            sym[(a, b)] = sym.get((a, b), 0) + c
            sym[(b, a)] = sym.get((b, a), 0) + c
        h2 = H(sym)
        ledger = DeltaLedger.from_polynomial(h1)
        prod = product(h1, h2)
        for i in range(6):
            for j in range(6):
                if i == j:
                    continue
                got = product_delta(ledger, h2, i, j)
                assert not got.opaque
                assert got.exact == delta(prod, i, j)


def test_special_fiber_fix_examples():
    fix = special_fiber_fix(-3)
    assert fix.l_factor == 2
    assert fix.symmetric and fix.closed_forms_ok
    fix0 = special_fiber_fix(-1)
    assert fix0.l_factor == 0
    assert fix0.symmetric and fix0.closed_forms_ok
    with pytest.raises(NonNegativeDelta):
        special_fiber_fix(0)
    with pytest.raises(NonNegativeDelta):
        special_fiber_fix(2)


def test_special_fiber_fix_range():
    for d30 in range(-10, 0):
        fix = special_fiber_fix(d30)
        assert fix.l_factor == -d30 - 1
        assert fix.composed_delta30 == 0  # = d30 + l + 1
        assert fix.closed_forms_ok
    # with a realistic edge having nonzero symmetric degree-2 entries
    edge = {(0, 0): 1, (2, 0): 2, (0, 2): 2, (0, 3): 1}
    fix = special_fiber_fix(-1, edge=edge)
    assert fix.l_factor == 0 and fix.symmetric and fix.closed_forms_ok
    with pytest.raises(ValueError):
        special_fiber_fix(-1, edge={(0, 0): 1, (3, 0): 1})  # wrong delta
    with pytest.raises(ValueError):
        special_fiber_fix(-1, edge={(0, 0): 1, (0, 3): 1, (1, 0): 1})  # asymmetric


def test_polarization_examples():
    assert polarization_degree_search(2, 1, 2, 2) == 1
    assert polarization_value(2, 1, 2, 1) == 3
    assert polarization_degree_search(1, 1, 2, 2) == 0
    with pytest.raises(ValueError):
        polarization_degree_search(1, 0, 2, 2)


def test_polarization_search_property():
    rng = random.Random(29)
    primes = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]
    for _ in range(500):
        p = rng.choice(primes)
        h_top = rng.randint(1, 10)
        k = rng.randint(1, 10)
        dim = rng.randint(1, 6)
        n = polarization_degree_search(h_top, k, dim, p)
        assert 0 <= n <= p
        assert polarization_value(h_top, k, dim, n) % p != 0


def test_weil_restriction_power():
    h = H({(0, 0): 1, (1, 0): 1, (0, 1): 1, (2, 0): 2, (0, 2): 2, (0, 3): 1})
    assert weil_restriction_power(h, 1) == h
    squared = weil_restriction_power(h, 2)
    # degree <= 2 symmetry makes the cross terms cancel in delta^{3,0}
    assert delta(squared, 3, 0) == 2 * delta(h, 3, 0)
    cubed = weil_restriction_power(h, 3)
    assert delta(cubed, 3, 0) == 3 * delta(h, 3, 0)

    expr = weil_restriction_delta30(-1)
    assert expr.opaque_dict() == {"d_prime": DPoly.constant(-1)}
    for d_prime in range(1, 21):
        total = expr.opaque_dict()["d_prime"].eval_int(1) * d_prime
        assert total == -d_prime != 0
