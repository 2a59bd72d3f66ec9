import pytest

from feitlab import groups
from feitlab.errors import BoundExceeded
from feitlab.groups import (
    MonomialPair,
    PermGroup,
    alternating,
    compose,
    conjugate_pair,
    cyclic,
    dihedral,
    direct_product,
    from_spec,
    inverse,
    perm_from_cycles,
    perm_order,
    quaternion,
    restrict_linear,
    special_linear_2,
    symmetric,
)


def closure_subgroups(group):
    """Independent oracle: grow subgroups by adjoining single elements."""
    trivial = frozenset([group.identity])
    found = {trivial}
    queue = [trivial]
    while queue:
        h = queue.pop()
        for g in group.elements:
            if g in h:
                continue
            k = groups._closure(group.degree, set(h) | {g})
            if k not in found:
                found.add(k)
                queue.append(k)
    return found


def test_perm_helpers():
    p = perm_from_cycles([(1, 2, 3)], 4)
    assert p == (1, 2, 0, 3)
    assert perm_order(p) == 3
    assert compose(p, inverse(p)) == (0, 1, 2, 3)
    assert groups.cycle_notation(p) == "(1,2,3)"


def test_enumeration_sizes():
    assert cyclic(1).order == 1
    assert symmetric(3).order == 6
    assert alternating(5).order == 60
    assert symmetric(4).order == 24
    assert quaternion().order == 8
    assert special_linear_2(3).order == 24
    assert dihedral(12).order == 12
    assert groups.extraspecial_27().order == 27
    assert direct_product(cyclic(2), cyclic(4)).order == 8


def test_enumeration_bound():
    with pytest.raises(BoundExceeded):
        PermGroup(symmetric(5).generators, order_bound=100)


def test_conjugacy_classes():
    s3 = symmetric(3)
    sizes = sorted(c.size for c in s3.conjugacy_classes())
    assert sizes == [1, 2, 3]
    assert s3.conjugacy_classes()[0].rep == s3.identity

    c4 = cyclic(4)
    assert [c.size for c in c4.conjugacy_classes()] == [1, 1, 1, 1]

    q8 = quaternion()
    assert len(q8.conjugacy_classes()) == 5

    # partition property
    for g in (s3, q8, alternating(4)):
        assert sum(c.size for c in g.conjugacy_classes()) == g.order


def test_exponent():
    assert symmetric(3).exponent() == 6
    assert quaternion().exponent() == 4
    assert alternating(5).exponent() == 30
    assert groups.extraspecial_27().exponent() == 3


def test_class_power_map():
    s3 = symmetric(3)
    n = len(s3.conjugacy_classes())
    assert s3.class_power_map(1) == tuple(range(n))
    assert s3.class_power_map(s3.exponent()) == (0,) * n
    # squaring kills the transposition class
    transposition = next(
        i for i, c in enumerate(s3.conjugacy_classes()) if c.element_order == 2
    )
    assert s3.class_power_map(2)[transposition] == 0

    for g in (s3, quaternion(), cyclic(12)):
        e = g.exponent()
        for a in (2, 3, 5):
            for b in (2, 7):
                lhs = g.class_power_map(a * b)
                via = [g.class_power_map(a)[i] for i in g.class_power_map(b)]
                assert list(lhs) == via
                assert g.class_power_map(a) == g.class_power_map(a + e)


def test_all_subgroups_counts():
    assert len(symmetric(3).all_subgroups()) == 6
    for p in (2, 3, 5, 7):
        assert len(cyclic(p).all_subgroups()) == 2
    assert len(alternating(4).all_subgroups()) == 10
    assert len(symmetric(4).all_subgroups()) == 30
    assert len(quaternion().all_subgroups()) == 6


def test_all_subgroups_against_closure_oracle():
    for g in (symmetric(3), alternating(4), quaternion(), cyclic(12),
              dihedral(12), special_linear_2(3)):
        ours = {s.elements for s in g.all_subgroups()}
        assert ours == closure_subgroups(g)


def test_subgroups_lagrange_and_conjugation_closed():
    g = symmetric(4)
    subs = g.all_subgroups()
    sets = {s.elements for s in subs}
    for s in subs:
        assert g.order % s.order == 0
        for x in g.generators:
            assert s.conjugate(x).elements in sets


def test_subgroup_validation():
    s3 = symmetric(3)
    with pytest.raises(ValueError):
        s3.subgroup([s3.identity, (1, 0, 2)][:1] + [(1, 2, 0)])  # not closed


def test_linear_characters_counts():
    assert len(symmetric(3).whole_subgroup().linear_characters()) == 2
    for n in (1, 2, 3, 4, 6, 12):
        chars = cyclic(n).whole_subgroup().linear_characters()
        assert len(chars) == n
        orders = sorted(c.order for c in chars)
        # one character of each order d | n, with totient(d) many of order d
        from feitlab import numth

        expect = sorted(
            d for d in numth.divisors(n) for _ in range(numth.totient(d))
        )
        assert orders == expect
    assert len(quaternion().whole_subgroup().linear_characters()) == 4
    assert len(alternating(4).whole_subgroup().linear_characters()) == 3


def test_linear_characters_are_homomorphisms():
    for g in (symmetric(3), quaternion(), dihedral(8), special_linear_2(3)):
        h = g.whole_subgroup()
        for phi in h.linear_characters():
            for a in list(h.elements)[:6]:
                for b in list(h.elements)[:6]:
                    assert phi.value(compose(a, b)) == phi.value(a) * phi.value(b)


def test_linear_characters_form_group():
    h = dihedral(8).whole_subgroup()
    chars = set(h.linear_characters())
    assert len(chars) == 4
    for a in chars:
        for b in chars:
            assert a * b in chars


def test_linear_character_count_is_abelianization_size():
    for g in (symmetric(4), quaternion(), special_linear_2(3), alternating(4)):
        for h in g.all_subgroups():
            assert len(h.linear_characters()) == h.order // len(h.derived_elements())


def test_char_order_divides_on_restriction():
    c4 = cyclic(4)
    whole = c4.whole_subgroup()
    sub2 = next(s for s in c4.all_subgroups() if s.order == 2)
    for phi in whole.linear_characters():
        psi = phi.restrict(sub2)
        assert phi.order % psi.order == 0
    faithful = next(c for c in whole.linear_characters() if c.order == 4)
    assert faithful.restrict(sub2).order == 2
    assert faithful.restrict(whole) == faithful
    trivial_sub = c4.trivial_subgroup()
    assert faithful.restrict(trivial_sub).is_trivial()


def test_conjugate_pair():
    s3 = symmetric(3)
    swap12 = perm_from_cycles([(1, 2)], 3)
    swap23 = perm_from_cycles([(2, 3)], 3)
    rot = perm_from_cycles([(1, 2, 3)], 3)
    h = s3.subgroup([s3.identity, swap12])
    sign = next(c for c in h.linear_characters() if c.order == 2)
    pair = MonomialPair(h, sign)

    moved = conjugate_pair(rot, pair)
    assert moved.subgroup.elements == frozenset([s3.identity, swap23])
    assert moved.character.order == 2

    # identity acts trivially; action is compatible with products
    assert conjugate_pair(s3.identity, pair) == pair
    for g in s3.elements:
        for k in s3.elements:
            assert conjugate_pair(g, conjugate_pair(k, pair)) == conjugate_pair(
                compose(g, k), pair
            )

    # normalizing element with trivial character fixes the pair
    triv = next(c for c in h.linear_characters() if c.is_trivial())
    assert conjugate_pair(swap12, MonomialPair(h, triv)) == MonomialPair(h, triv)


def test_restrict_linear_and_pair_order():
    c4 = cyclic(4)
    whole = c4.whole_subgroup()
    faithful = next(c for c in whole.linear_characters() if c.order == 4)
    sub2 = next(s for s in c4.all_subgroups() if s.order == 2)
    pair = MonomialPair(whole, faithful)
    assert restrict_linear(pair, sub2).order == 2
    small = MonomialPair(sub2, restrict_linear(pair, sub2))
    assert small <= pair
    assert not pair <= small


def test_pair_order_requires_restriction_match():
    c4 = cyclic(4)
    whole = c4.whole_subgroup()
    chars = whole.linear_characters()
    sub2 = next(s for s in c4.all_subgroups() if s.order == 2)
    faithful = next(c for c in chars if c.order == 4)
    trivial = next(c for c in chars if c.is_trivial())
    below = MonomialPair(sub2, trivial.restrict(sub2))
    assert below <= MonomialPair(whole, trivial)
    assert not below <= MonomialPair(whole, faithful)


def test_from_spec():
    assert from_spec("cyclic:12").order == 12
    assert from_spec("sym:4").order == 24
    assert from_spec("dihedral:8").order == 8
    assert from_spec("perm:[(1,2),(1,2,3)]").order == 6
    assert from_spec("product:sym:3,cyclic:2").order == 12
    assert from_spec("product:cyclic:2,cyclic:4").order == 8
    assert from_spec("elementary:2,3").order == 8
    assert from_spec("sl2:3").order == 24
    assert from_spec("extraspecial:27").order == 27
    with pytest.raises(ValueError):
        from_spec("nonsense:1")
    with pytest.raises(ValueError):
        from_spec("sym4")


def test_perm_spec_big():
    s5 = from_spec("perm:[(1,2,3,4,5),(1,2)]")
    assert s5.order == 120
    assert s5.exponent() == 60
