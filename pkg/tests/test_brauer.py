import pytest

from feitlab import adams, brauer, chartab, groups, numth
from feitlab.brauer import (
    MonomialContext,
    PairCombination,
    adams_identity_check,
    check_equivalences,
    check_max_sets,
    induced_character,
    induction_by_chains,
    induction_by_chains_values,
    induction_by_orbit_chains,
    invariant_via_coefficients,
    monomial_context,
    monomial_pairs,
    restrict_combination,
)
from feitlab.chartab import compute_table, inner_product
from feitlab.errors import BoundExceeded
from feitlab.groups import MonomialPair


def table(spec):
    return compute_table(groups.from_spec(spec))


def test_monomial_poset_sizes():
    assert len(monomial_pairs(groups.cyclic(1))) == 1
    assert len(monomial_pairs(groups.cyclic(2))) == 3
    # total count is the sum of abelianization sizes over all subgroups
    for spec in ("sym:3", "alt:4", "quaternion:8", "dihedral:12"):
        g = groups.from_spec(spec)
        expect = sum(
            len(h.linear_characters()) for h in g.all_subgroups()
        )
        assert len(monomial_pairs(g)) == expect
    assert len(monomial_pairs(groups.symmetric(3))) == 12


def test_monomial_poset_conjugation_is_poset_automorphism():
    g = groups.symmetric(3)
    ctx = monomial_context(g)
    for gi, row in enumerate(ctx.act):
        for i, p in enumerate(ctx.pairs):
            for j in ctx.above[i]:
                assert row[j] in ctx.above[row[i]]


def test_chain_weights_conjugation_invariant():
    # relabelling every chain by a fixed group element leaves the signed
    # chain-count table unchanged, so coefficients are orbit data
    for spec in ("sym:3", "alt:4"):
        g = groups.from_spec(spec)
        ctx = monomial_context(g)
        for row in ctx.act:
            moved = {}
            for (a, b), w in ctx.chain_weight.items():
                key = (row[a], row[b])
                moved[key] = moved.get(key, 0) + w
            assert {k: v for k, v in moved.items() if v} == \
                {k: v for k, v in ctx.chain_weight.items() if v}


def test_oracle_bound():
    with pytest.raises(BoundExceeded):
        monomial_context(groups.symmetric(4), bound=20)
    with pytest.raises(ValueError):
        brauer.resolve_oracle_bound(100)
    with pytest.warns(UserWarning):
        assert brauer.resolve_oracle_bound(60) == 60


def test_orbit_of():
    g = groups.symmetric(3)
    ctx = monomial_context(g)
    whole = g.whole_subgroup()
    triv_pair = MonomialPair(
        whole, next(c for c in whole.linear_characters() if c.is_trivial())
    )
    rep, size, stab = ctx.orbit_of(triv_pair)
    assert rep == triv_pair and size == 1 and stab == 6

    swap = groups.perm_from_cycles([(1, 2)], 3)
    h = g.subgroup([g.identity, swap])
    sign = next(c for c in h.linear_characters() if c.order == 2)
    rep, size, stab = ctx.orbit_of(MonomialPair(h, sign))
    assert size == 3 and stab == 2
    assert size * stab == g.order

    for p in ctx.pairs:
        _, size, stab = ctx.orbit_of(p)
        assert size * stab == g.order


def test_induction_linear_characters():
    # a linear character induces to exactly its own whole-group pair
    for spec in ("sym:3", "cyclic:6", "quaternion:8", "alt:4"):
        t = table(spec)
        g = t.group
        whole = g.whole_subgroup()
        for i in range(t.num_classes):
            if t.degree(i) != 1:
                continue
            comb = induction_by_chains(t, i)
            assert len(comb.coefficients) == 1
            ((pair, coeff),) = comb.coefficients.items()
            assert coeff == 1
            assert pair.subgroup.order == g.order
            expected_values = {
                h: t.irreducibles[i][g.class_index(h)] for h in g.elements
            }
            assert all(
                pair.character.cyclotomic_value(h) == expected_values[h]
                for h in g.elements
            )


def test_chain_and_orbit_chain_formulas_agree():
    for spec in ("sym:3", "cyclic:12", "quaternion:8", "alt:4", "dihedral:12"):
        t = table(spec)
        for i in range(t.num_classes):
            assert induction_by_chains(t, i) == induction_by_orbit_chains(t, i)


def test_section_property():
    # inducing back the canonical coefficients recovers the character
    for spec in ("sym:3", "quaternion:8", "alt:4", "cyclic:12", "sym:4"):
        t = table(spec)
        for i in range(t.num_classes):
            comb = induction_by_chains(t, i)
            assert induced_character(t, comb) == t.irreducible(i)


def test_normalization_projection():
    # the coefficient of a whole-group pair is the inner product with that
    # linear character
    for spec in ("sym:3", "sym:4", "dihedral:8", "sl2:3"):
        t = table(spec)
        g = t.group
        whole = g.whole_subgroup()
        for i in range(t.num_classes):
            comb = induction_by_chains(t, i)
            chi = t.irreducible(i)
            for phi in whole.linear_characters():
                pair = MonomialPair(whole, phi)
                lin = t.class_function(
                    [phi.cyclotomic_value(rep) for rep in t.class_reps]
                )
                expect = inner_product(chi, lin)
                assert comb.coefficient(pair) == expect


def test_induced_character_examples():
    t = table("sym:3")
    g = t.group
    ctx = monomial_context(g)

    # the trivial pair of the trivial subgroup induces the regular character
    trivial_sub = g.trivial_subgroup()
    triv_pair = MonomialPair(trivial_sub, trivial_sub.linear_characters()[0])
    comb = PairCombination(brauer._group_key(g), {ctx.orbit_of(triv_pair)[0]: 1})
    assert induced_character(t, comb) == t.regular_character()

    # the trivial character of the rotation subgroup induces 1 + sign
    a3 = next(s for s in g.all_subgroups() if s.order == 3)
    pair = MonomialPair(a3, next(c for c in a3.linear_characters() if c.is_trivial()))
    comb = PairCombination(brauer._group_key(g), {ctx.orbit_of(pair)[0]: 1})
    induced = induced_character(t, comb)
    linear_rows = [t.irreducible(i) for i in range(3) if t.degree(i) == 1]
    assert induced == linear_rows[0] + linear_rows[1]


def test_restriction_to_whole_group_and_trivial():
    t = table("sym:3")
    g = t.group
    chi2 = next(i for i in range(3) if t.degree(i) == 2)
    comb = induction_by_chains(t, chi2)

    down_same = restrict_combination(comb, g.whole_subgroup())
    # restricting to the whole group is the identity (keys live over the
    # promoted copy, so compare canonical serializations)
    assert down_same.to_json() == comb.to_json()

    trivial = g.trivial_subgroup()
    down = restrict_combination(comb, trivial)
    ((pair, coeff),) = down.coefficients.items()
    assert pair.subgroup.order == 1
    # every pair orbit contributes [G : H] copies of the trivial pair
    expect = sum(
        c * (g.order // p.subgroup.order) for p, c in comb.coefficients.items()
    )
    assert coeff == expect


def test_restriction_trivial_subgroup_coefficient():
    # restricting [H, phi] to the trivial group gives [G : H] trivial pairs
    t = table("alt:4")
    g = t.group
    for i in range(t.num_classes):
        comb = induction_by_chains(t, i)
        down = restrict_combination(comb, g.trivial_subgroup())
        if not comb.coefficients:
            assert not down.coefficients
            continue
        ((_, coeff),) = down.coefficients.items()
        expect = sum(
            c * (g.order // p.subgroup.order)
            for p, c in comb.coefficients.items()
        )
        assert coeff == expect


def test_restriction_naturality():
    # restriction of the canonical coefficients equals the canonical
    # coefficients of the restricted character, for every subgroup
    for spec in ("sym:3", "quaternion:8", "alt:4", "cyclic:12"):
        t = table(spec)
        g = t.group
        for i in range(t.num_classes):
            comb = induction_by_chains(t, i)
            chi_values = brauer.element_values(t, i)
            for u in g.all_subgroups():
                down = restrict_combination(comb, u)
                sub_values = {x: chi_values[x] for x in u.elements}
                direct = induction_by_chains_values(u.as_group(), sub_values)
                assert down == direct


def test_invariant_route_equivalence():
    for spec in ("sym:3", "quaternion:8", "alt:4", "cyclic:12", "dihedral:12"):
        t = table(spec)
        for i in range(t.num_classes):
            comb = induction_by_chains(t, i)
            for n in numth.divisors(t.exponent):
                slow = invariant_via_coefficients(t, i, n, comb=comb)
                fast = adams.invariant(t, i, n).value
                assert slow == fast


def test_route_equivalence_virtual_characters():
    # both routes are additive, so they agree on arbitrary integer
    # combinations of irreducibles (not only genuine characters)
    import random

    rng = random.Random(31)
    for spec in ("sym:3", "alt:4", "quaternion:8"):
        t = table(spec)
        g = t.group
        rows = [t.irreducible(i) for i in range(t.num_classes)]
        for _ in range(4):
            coeffs = [rng.randrange(-2, 3) for _ in rows]
            virt = t.class_function((0,) * t.num_classes)
            for c, row in zip(coeffs, rows):
                virt = virt + c * row
            values = {
                x: virt.values[g.class_index(x)] for x in g.elements
            }
            comb = induction_by_chains_values(g, values)
            assert comb == brauer.induction_by_orbit_chains_values(g, values)
            assert induced_character(t, comb) == virt
            # the signed coefficient sum is linear in the character
            for n in numth.divisors(t.exponent):
                slow = comb.order_filtered_sum(n, multiples=True)
                fast = sum(
                    c * adams.invariant(t, i, n).value
                    for i, c in enumerate(coeffs)
                )
                assert slow == fast, (spec, coeffs, n)


def test_invariant_via_coefficients_any_n():
    # the coefficient sum parses for n not dividing the exponent: the filter
    # is empty there, so the sum vanishes
    t = table("sym:3")
    for i in range(3):
        assert invariant_via_coefficients(t, i, 5) == 0
        assert invariant_via_coefficients(t, i, 4) == 0


def test_adams_coefficient_identity():
    for spec in ("sym:3", "alt:4", "quaternion:8", "cyclic:12"):
        t = table(spec)
        for i in range(t.num_classes):
            comb = induction_by_chains(t, i)
            for n in numth.divisors(t.exponent):
                chk = adams_identity_check(t, i, n, comb=comb)
                assert chk.passed
            # n = exponent: every pair order divides, so the sum is the degree
            top = adams_identity_check(t, i, t.exponent, comb=comb)
            assert top.coefficient_sum == t.degree(i)
            # n = 1: only trivial-character pairs survive
            one = adams_identity_check(t, i, 1, comb=comb)
            assert one.adams_multiplicity == inner_product(
                t.irreducible(i), t.trivial_character()
            )


def test_check_max_sets():
    t = table("sym:3")
    # for a linear character both maxima are the whole-group pair
    for i in range(3):
        chk = check_max_sets(t, i)
        assert chk.passed
        if t.degree(i) == 1:
            assert len(chk.max_constituent) == 1
            ((pair),) = chk.max_constituent
            assert pair.subgroup.order == 6
            # the support misses the restrictions below the top pair
            assert chk.strictly_smaller

    # smallest strict-inclusion instance: the trivial character of C2 has
    # the trivial pair as constituent but not in the coefficient support
    c2 = table("cyclic:2")
    chk = check_max_sets(c2, c2.trivial_index)
    assert chk.passed and chk.strictly_smaller
    assert len(chk.support_pairs) == 1 and len(chk.constituent_pairs) == 2


def test_check_equivalences():
    t = table("sym:3")
    triv = t.trivial_index
    all_true = check_equivalences(t, triv, 1)
    assert all_true.passed and all(all_true.flags)
    all_false = check_equivalences(t, triv, 2)
    assert all_false.passed and not any(all_false.flags)

    for spec in ("sym:3", "quaternion:8", "alt:4"):
        tt = table(spec)
        for i in range(tt.num_classes):
            for n in numth.divisors(tt.exponent):
                assert check_equivalences(tt, i, n).passed


def test_pair_combination_arithmetic_and_json():
    t = table("sym:3")
    a = induction_by_chains(t, 0)
    b = induction_by_chains(t, 1)
    s = a + b
    assert s - b == a
    assert a.scale(0) == PairCombination(a.group_key, {})
    blob = a.to_json()
    assert all(
        set(rec) == {"subgroup", "phi", "coefficient"} for rec in blob
    )
