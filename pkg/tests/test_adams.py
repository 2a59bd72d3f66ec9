import math
import random

import pytest

from feitlab import adams, chartab, groups, numth
from feitlab.adams import (
    adams_operation,
    alternating_adams_character,
    eigenvalue_multiplicities,
    eigenvalue_order_witness,
    feit_indicator,
    invariant,
    verify_invariant,
)
from feitlab.chartab import compute_table, conductor


def table(spec):
    return compute_table(groups.from_spec(spec))


def linear_indices(t):
    return [i for i in range(t.num_classes) if t.degree(i) == 1]


def char_order(t, i):
    """Order of a linear character = lcm of the orders of its values."""
    orders = []
    for v in t.irreducibles[i]:
        root = v.as_root_of_unity()
        assert root is not None
        orders.append(root.order)
    return math.lcm(*orders)


def test_adams_identity_and_exponent():
    t = table("sym:3")
    chi = t.irreducible(2)
    assert adams_operation(t, chi, 1) == chi
    top = adams_operation(t, chi, t.exponent)
    assert all(v == chi.values[0] for v in top.values)
    triv = t.trivial_character()
    for k in (2, 3, 5, 7):
        assert adams_operation(t, triv, k) == triv


def test_adams_ring_homomorphism():
    for spec in ("sym:3", "quaternion:8", "dihedral:12"):
        t = table(spec)
        rows = [t.irreducible(i) for i in range(t.num_classes)]
        for m in (2, 3):
            for a in rows[:3]:
                for b in rows[:3]:
                    lhs = adams_operation(t, a * b, m)
                    rhs = adams_operation(t, a, m) * adams_operation(t, b, m)
                    assert lhs == rhs


def test_adams_multiplicativity():
    for spec in ("sym:4", "cyclic:12"):
        t = table(spec)
        for i in range(t.num_classes):
            chi = t.irreducible(i)
            for a in (2, 3, 4):
                for b in (2, 5):
                    assert adams_operation(t, adams_operation(t, chi, b), a) == \
                        adams_operation(t, chi, a * b)


def test_invariant_trivial_character():
    for spec in ("sym:3", "alt:4", "cyclic:12"):
        t = table(spec)
        triv = t.trivial_index
        for n in numth.divisors(t.exponent):
            rep = invariant(t, triv, n)
            assert rep.value == (1 if n == 1 else 0)


def test_invariant_rejects_bad_n():
    t = table("sym:3")
    with pytest.raises(ValueError):
        invariant(t, 0, 4)  # 4 does not divide 6
    with pytest.raises(ValueError):
        invariant(t, 0, 0)


def test_invariant_linear_characters():
    for spec in ("cyclic:12", "dihedral:8", "quaternion:8", "sl2:3"):
        t = table(spec)
        for i in linear_indices(t):
            o = char_order(t, i)
            for n in numth.divisors(t.exponent):
                rep = invariant(t, i, n)
                assert rep.value == (1 if o % n == 0 else 0)


def test_invariant_regular_character():
    for spec in ("sym:3", "quaternion:8", "alt:4"):
        g = groups.from_spec(spec)
        t = compute_table(g)
        reg = t.regular_character()
        for n in numth.divisors(t.exponent):
            census = sum(
                1 for x in g.elements if groups.perm_order(x) % n == 0
            )
            assert invariant(t, reg, n).value == census


def test_invariant_degree_at_one():
    for spec in ("sym:4", "sl2:3", "dihedral:12"):
        t = table(spec)
        for i in range(t.num_classes):
            assert invariant(t, i, 1).value == t.degree(i)


def test_invariant_cyclic_prime_virtual_character():
    # faithful character of a prime-order cyclic group at n = p: the signed
    # Adams sum is trivial-minus-chi and the invariant is 1
    for p in (2, 3, 5, 7):
        t = table(f"cyclic:{p}")
        for i in range(t.num_classes):
            if char_order(t, i) != p:
                continue
            chi = t.irreducible(i)
            virt = alternating_adams_character(t, chi, p)
            assert virt == t.trivial_character() - chi
            assert invariant(t, i, p).value == 1


def test_invariant_report_consistency():
    t = table("sym:4")
    for i in range(t.num_classes):
        for n in numth.divisors(t.exponent):
            rep = invariant(t, i, n)
            signed = sum(
                (-1 if len(rho) % 2 else 1) * v for rho, v in rep.summands.items()
            )
            assert signed == rep.value
            assert (rep.witness is not None) == (rep.value > 0)
            blob = rep.to_json()
            assert blob["S"] == rep.value and blob["n"] == n


def test_eigenvalue_multiplicities():
    t = table("sym:3")
    chi2 = next(i for i in range(3) if t.degree(i) == 2)
    ident = eigenvalue_multiplicities(t, chi2, 0)
    assert ident == (2,)
    three = next(c for c in range(3) if t.classes[c].rep_order == 3)
    assert eigenvalue_multiplicities(t, chi2, three) == (0, 1, 1)
    # linear characters concentrate in a single exponent
    for i in linear_indices(t):
        for c in range(t.num_classes):
            mults = eigenvalue_multiplicities(t, i, c)
            assert sum(mults) == 1


def test_eigenvalue_witness():
    t = table("sym:3")
    triv = t.trivial_index
    assert eigenvalue_order_witness(t, triv, 1) == (0, 0)
    assert eigenvalue_order_witness(t, triv, 2) is None
    c4 = table("cyclic:4")
    faithful = next(i for i in range(4) if char_order(c4, i) == 4)
    witness = eigenvalue_order_witness(c4, faithful, 4)
    assert witness is not None
    c, j = witness
    t_ord = c4.classes[c].rep_order
    assert t_ord // math.gcd(t_ord, j) == 4


def test_feit_indicator_linear():
    for spec in ("cyclic:12", "dihedral:8", "sl2:3"):
        t = table(spec)
        for i in linear_indices(t):
            rep = feit_indicator(t, i)
            assert rep.value == 1
            blob = rep.to_json()
            assert blob["F"] == 1 and blob["conductor"] == rep.conductor


def test_feit_indicator_rational_irreducible():
    t = table("sym:4")
    for i in range(t.num_classes):
        rep = feit_indicator(t, i)
        assert rep.conductor == 1
        assert rep.value == t.degree(i)


def test_feit_indicator_rejects_reducible():
    t = table("sym:3")
    with pytest.raises(ValueError):
        feit_indicator(t, t.regular_character())


def test_verify_invariant_exhaustive_small():
    rng = random.Random(11)
    for spec in ("sym:3", "quaternion:8", "alt:4", "cyclic:12"):
        t = table(spec)
        rows = [t.irreducible(i) for i in range(t.num_classes)]
        combos = list(range(t.num_classes))
        for n in numth.divisors(t.exponent):
            for i in combos:
                assert verify_invariant(t, i, n).passed
            # random non-negative integer combinations stay in the theorem
            coeffs = [rng.randrange(0, 3) for _ in rows]
            if not any(coeffs):
                coeffs[0] = 1
            mixed = t.class_function((0,) * t.num_classes)
            for c, row in zip(coeffs, rows):
                mixed = mixed + c * row
            assert verify_invariant(t, mixed, n).passed
