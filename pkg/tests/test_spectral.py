from fractions import Fraction

import pytest

from tracesys import poly
from tracesys.errors import (
    AmbiguousBasic,
    NoRootInUnitInterval,
    NotAccessible,
    SingularAtT,
    TrivialSystem,
)
from tracesys.graphs import build_adsc, build_dsc, classify_nodes
from tracesys.monoid import TraceMonoid
from tracesys.spectral import (
    characteristic_root,
    compare_roots,
    component_radii,
    determinant,
    growth_eval,
    mobius_matrix,
    refine_root,
    root_from_theta,
    spectral_property_report,
    spectral_radius,
    verify_inversion,
)
from tracesys.system import ConcurrentSystem


# ------------------------------------------------------------ matrix

def test_mobius_matrix_e1(e1):
    pm = mobius_matrix(e1)
    assert pm.entry("s0", "s0") == (1, -2, 1)
    assert pm.entry("s0", "s1") == (0, -1, 1)
    assert pm.entry("s1", "s0") == (0, -1)
    assert pm.entry("s1", "s1") == (1, -1)


def test_mobius_matrix_canonical(canonical_abc):
    pm = mobius_matrix(canonical_abc)
    assert pm.dim == 1
    assert pm.entries[0][0] == (1, -3, 1)


def test_mobius_matrix_constant_terms(aztec):
    pm = mobius_matrix(aztec)
    for i in range(pm.dim):
        for j in range(pm.dim):
            entry = pm.entries[i][j]
            constant = entry[0] if entry else 0
            assert constant == (1 if i == j else 0)


def test_mobius_matrix_product_split():
    # two commuting letter groups acting on one state: matrix factors
    monoid = TraceMonoid("ab", [("a", "b")])
    system = ConcurrentSystem.canonical(monoid)
    pm = mobius_matrix(system)
    part_a = mobius_matrix(system.restrict("b"))
    part_b = mobius_matrix(system.restrict("a"))
    assert (part_a @ part_b).entries == pm.entries
    assert determinant(pm) == poly.mul(determinant(part_a), determinant(part_b))


def test_determinant_examples(e1):
    assert determinant(mobius_matrix(e1)) == (1, -3, 2)
    identity = mobius_matrix(
        ConcurrentSystem(TraceMonoid("a", []), ["s"], {})
    )
    assert determinant(identity) == (1,)
    one_by_one = mobius_matrix(
        ConcurrentSystem.canonical(TraceMonoid("abc", [("a", "b")]))
    )
    assert determinant(one_by_one) == (1, -3, 1)


# ------------------------------------------------------------ characteristic root

def test_root_e1_exact(e1):
    root = characteristic_root(e1)
    assert root.exact and root.lo == Fraction(1, 2)
    assert root.width == 0


def test_root_canonical(canonical_abc):
    root = characteristic_root(canonical_abc)
    golden = (3 - 5**0.5) / 2
    assert not root.exact
    assert root.width <= Fraction(1, 10**12)
    assert abs(root.approx - golden) < 1e-12


def test_root_aztec(aztec):
    root = characteristic_root(aztec)
    assert 0.524 <= root.approx <= 0.526
    residual = poly.evaluate((1, -1, -2, 0, 1), root.midpoint)
    assert abs(residual) <= Fraction(1, 10**10)


def test_root_refusals():
    trivial = ConcurrentSystem(TraceMonoid("a", []), ["s"], {})
    with pytest.raises(TrivialSystem):
        characteristic_root(trivial)
    monoid = TraceMonoid("ab", [])
    inaccessible = ConcurrentSystem(
        monoid, ["s", "t"], {("s", "a"): "t", ("t", "b"): "t"}
    )
    with pytest.raises(NotAccessible):
        characteristic_root(inaccessible)
    with pytest.raises(NoRootInUnitInterval):
        root = root_from_theta((1, 1))  # no positive root
        if root is None:
            raise NoRootInUnitInterval("nothing in (0, 1]")


def test_root_isolation_sign_change(canonical_abc):
    root = characteristic_root(canonical_abc)
    lo_val = poly.evaluate(root.square_free, root.lo)
    hi_val = poly.evaluate(root.square_free, root.hi)
    assert lo_val * hi_val < 0


def test_refine_root(canonical_abc):
    root = characteristic_root(canonical_abc)
    finer = refine_root(root, Fraction(1, 10**20))
    assert finer.width <= Fraction(1, 10**20)
    assert finer.lo >= root.lo and finer.hi <= root.hi


def test_compare_roots_equal_irrational():
    # same polynomial, independent isolations: proven equal via common factor
    theta = (1, -3, 1)
    a = root_from_theta(theta, Fraction(1, 10**6))
    b = root_from_theta(poly.mul(theta, (1, -1)), Fraction(1, 10**6))
    cmp, _, _ = compare_roots(a, b)
    assert cmp == 0


def test_compare_roots_orders():
    half = root_from_theta((1, -3, 2))  # 1/2 exact
    golden = root_from_theta((1, -3, 1))  # (3-sqrt5)/2 ~ 0.382
    cmp, _, _ = compare_roots(golden, half)
    assert cmp == -1
    cmp, _, _ = compare_roots(half, golden)
    assert cmp == 1
    cmp, _, _ = compare_roots(half, root_from_theta((1, -2)))
    assert cmp == 0


# ------------------------------------------------------------ growth matrix

def test_growth_eval_identity_at_zero(e1):
    g = growth_eval(e1, 0)
    assert g == [[1, 0], [0, 1]]


def test_growth_eval_e1_quarter(e1):
    root = characteristic_root(e1)
    g = growth_eval(e1, Fraction(1, 4), root)
    mu = mobius_matrix(e1).evaluate(Fraction(1, 4))
    assert mu == [
        [Fraction(9, 16), Fraction(-3, 16)],
        [Fraction(-1, 4), Fraction(3, 4)],
    ]
    # inverse times original is the identity
    for i in range(2):
        for j in range(2):
            acc = sum(mu[i][k] * g[k][j] for k in range(2))
            assert acc == (1 if i == j else 0)
    # cross-check against the truncated counting series
    from tracesys.graphs import count_paths_table

    table = count_paths_table(build_adsc(e1), "s0", 30)
    t = Fraction(1, 4)
    series = sum(table[n].get("s0", 0) * t**n for n in range(31))
    assert abs(float(g[0][0]) - float(series)) < 1e-6


def test_growth_eval_scalar(canonical_abc):
    root = characteristic_root(canonical_abc)
    t = Fraction(1, 5)
    g = growth_eval(canonical_abc, t, root)
    assert g[0][0] == 1 / poly.evaluate((1, -3, 1), Fraction(t))


def test_growth_eval_rejects_beyond_root(e1):
    root = characteristic_root(e1)
    with pytest.raises(SingularAtT):
        growth_eval(e1, Fraction(1, 2), root)
    with pytest.raises(SingularAtT):
        growth_eval(e1, Fraction(3, 4), root)


def test_growth_positive_entries(aztec):
    root = characteristic_root(aztec)
    g = growth_eval(aztec, Fraction(2, 5), root)
    assert all(v > 0 for row in g for v in row)


# ------------------------------------------------------------ inversion identity

def test_verify_inversion_order0(e1):
    assert verify_inversion(e1, 0).ok


def test_verify_inversion_fixtures(irreducible_fixtures):
    for name, system in irreducible_fixtures.items():
        rep = verify_inversion(system, 10)
        assert rep.ok, (name, rep.failures[:3])


# ------------------------------------------------------------ spectral radii

def test_spectral_radius_e1(e1):
    rho = spectral_radius(build_adsc(e1).succ)
    assert abs(rho - 2.0) < 1e-6


def test_spectral_radius_acyclic():
    assert spectral_radius(((1,), (2,), ())) == 0.0
    assert spectral_radius(()) == 0.0


def test_spectral_radius_matches_root(irreducible_fixtures):
    for name, system in irreducible_fixtures.items():
        root = characteristic_root(system)
        rho = spectral_radius(build_adsc(system).succ)
        assert abs(1 / rho - root.approx) < 1e-6, name


def test_positive_part_same_radius(irreducible_fixtures):
    for name, system in irreducible_fixtures.items():
        adsc = build_adsc(system)
        dsc = build_dsc(system)
        classify_nodes(dsc)
        pair = {n: l for n, l in zip(dsc.nodes, dsc.labels)}
        adsc.labels = tuple(pair[(s, c)] for s, c, _i in adsc.nodes)
        rho_all = spectral_radius(adsc.succ)
        rho_pos = spectral_radius(adsc.positive_subgraph().succ)
        assert abs(rho_all - rho_pos) < 1e-6, name


def test_component_radii_e1(e1):
    adsc = build_adsc(e1)
    dsc = build_dsc(e1)
    classify_nodes(dsc)
    pair = {n: l for n, l in zip(dsc.nodes, dsc.labels)}
    adsc.labels = tuple(pair[(s, c)] for s, c, _i in adsc.nodes)
    rep = component_radii(adsc.positive_subgraph())
    assert rep.basic == (True,)
    assert abs(rep.global_radius - 2.0) < 1e-6


def test_component_radii_terminal_equals_basic(aztec, twelve):
    for system in (aztec, twelve):
        dsc = build_dsc(system)
        classify_nodes(dsc)
        adsc = build_adsc(system)
        pair = {n: l for n, l in zip(dsc.nodes, dsc.labels)}
        adsc.labels = tuple(pair[(s, c)] for s, c, _i in adsc.nodes)
        pos = adsc.positive_subgraph()
        rep = component_radii(pos)
        cond = pos.condensation()
        assert tuple(b for b in rep.basic) == tuple(cond.terminal)


def test_component_radii_ambiguity_surfaces(e1):
    adsc = build_adsc(e1)
    # an artificial band wide enough to catch the null component's radius
    with pytest.raises(AmbiguousBasic):
        component_radii(adsc, basic_rtol=1e-12, ambiguous_rtol=1.0)


# ------------------------------------------------------------ spectral property

def test_spectral_property_e1(e1):
    rep = spectral_property_report(e1)
    assert rep.holds and rep.witness is None
    by_letter = {e.letter: e for e in rep.letters}
    assert by_letter["c"].root.exact and by_letter["c"].root.lo == 1
    for e in rep.letters:
        assert e.comparison > 0
        if e.root is not None and not (e.root.exact and rep.root.exact):
            assert e.root.lo >= rep.root.hi  # disjoint isolating intervals


def test_spectral_property_aztec(aztec):
    rep = spectral_property_report(aztec)
    assert rep.holds
    for e in rep.letters:
        assert e.comparison > 0


def test_spectral_property_reducible_canonical():
    system = ConcurrentSystem.canonical(TraceMonoid("ab", [("a", "b")]))
    rep = spectral_property_report(system)
    assert not rep.holds
    assert rep.witness in ("a", "b")
    assert not system.classify().irreducible


def test_restricted_roots_monotone(irreducible_fixtures):
    for system in irreducible_fixtures.values():
        rep = spectral_property_report(system)
        for e in rep.letters:
            assert e.infinite or e.comparison >= 0


def test_infinite_restricted_root():
    # removing the only letter leaves no executions: infinite radius
    system = ConcurrentSystem(
        TraceMonoid("ab", []), ["s"], {("s", "a"): "s"}
    )
    rep = spectral_property_report(system)
    by_letter = {e.letter: e for e in rep.letters}
    assert by_letter["a"].infinite
    assert by_letter["a"].comparison > 0


def test_root_interval_within_unit(irreducible_fixtures):
    for system in irreducible_fixtures.values():
        root = characteristic_root(system)
        assert 0 < root.lo and root.hi <= 1


def test_theta_midpoint_sanity_bound(canonical_abc, aztec):
    for system in (canonical_abc, aztec):
        root = characteristic_root(system)
        if root.exact:
            assert poly.evaluate(root.theta, root.midpoint) == 0
            continue
        mid = root.midpoint
        val = abs(poly.evaluate(root.theta, mid))
        slope = abs(poly.evaluate(poly.derivative(root.theta), mid))
        assert val <= slope * root.width


def test_mobius_matrix_degree_bound(aztec):
    pm = mobius_matrix(aztec)
    max_clique = max(c.size for c in aztec.monoid.cliques())
    for row in pm.entries:
        for entry in row:
            assert poly.degree(entry) <= max_clique
