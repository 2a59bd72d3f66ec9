"""Adams operations on class functions and the alternating-sum invariant.

The central quantity is the multiplicity of the trivial character in the
signed sum, over subsets of the primes of n, of Adams operations of a
character at blended moduli.  It is a non-negative integer, positive
exactly when some representing matrix has an eigenvalue of order n, and at
n = conductor it decides the conjecture the toolkit exists to probe.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, FrozenSet, Optional, Tuple, Union

from . import numth
from .chartab import (
    CharacterTable,
    ClassFunction,
    conductor,
    inner_product,
    integral_inner_product,
)
from .cyclo import Cyclotomic, zeta
from .errors import ConsistencyError

ChiLike = Union[int, ClassFunction]


def _as_class_function(table: CharacterTable, chi: ChiLike) -> Tuple[ClassFunction, Optional[int]]:
    if isinstance(chi, int):
        return table.irreducible(chi), chi
    if chi.table is not table:
        raise ValueError("class function belongs to a different table")
    for i, row in enumerate(table.irreducibles):
        if all(a == b for a, b in zip(row, chi.values)):
            return chi, i
    return chi, None


def adams_operation(table: CharacterTable, chi: ChiLike, m: int) -> ClassFunction:
    """The class function g -> chi(g^m)."""
    chi, _ = _as_class_function(table, chi)
    return ClassFunction(
        table,
        tuple(chi.values[table.class_of_power(c, m)] for c in range(table.num_classes)),
    )


@dataclass
class InvariantReport:
    """Value and audit trail of the alternating Adams invariant at n."""

    chi_index: Optional[int]
    n: int
    value: int
    witness: Optional[Tuple[int, int]]
    summands: Dict[FrozenSet[int], int]

    def to_json(self) -> dict:
        return {
            "chi_index": self.chi_index,
            "n": self.n,
            "S": self.value,
            "witness": list(self.witness) if self.witness else None,
            "summands": {
                ",".join(str(p) for p in sorted(rho)): v
                for rho, v in self.summands.items()
            },
        }


@dataclass
class FeitReport:
    """The invariant evaluated at the character's conductor."""

    chi_index: Optional[int]
    conductor: int
    value: int
    witness: Optional[Tuple[int, int]]

    def to_json(self) -> dict:
        return {
            "chi_index": self.chi_index,
            "conductor": self.conductor,
            "F": self.value,
            "witness": list(self.witness) if self.witness else None,
        }


def invariant(table: CharacterTable, chi: ChiLike, n: int) -> InvariantReport:
    """The alternating Adams invariant of chi at a divisor n of the exponent,
    with the per-subset multiplicities that make up the signed sum."""
    chi, idx = _as_class_function(table, chi)
    e = table.exponent
    if n < 1 or e % n != 0:
        raise ValueError(f"n = {n} must be a positive divisor of the exponent {e}")
    summands: Dict[FrozenSet[int], int] = {}
    total = 0
    for rho in numth.prime_subsets(n):
        m = numth.subset_modulus(n, e, rho)
        mult = integral_inner_product(
            adams_operation(table, chi, m), table.trivial_character()
        )
        summands[rho] = mult
        total += (-1 if len(rho) % 2 else 1) * mult
    witness = eigenvalue_order_witness(table, chi, n) if total > 0 else None
    return InvariantReport(idx, n, total, witness, summands)


def alternating_adams_character(table: CharacterTable, chi: ChiLike, n: int) -> ClassFunction:
    """The signed sum of Adams operations whose trivial-character multiplicity
    is the invariant (a virtual character, not a genuine one in general)."""
    chi, _ = _as_class_function(table, chi)
    e = table.exponent
    if n < 1 or e % n != 0:
        raise ValueError(f"n = {n} must be a positive divisor of the exponent {e}")
    acc = table.class_function((0,) * table.num_classes)
    for rho in numth.prime_subsets(n):
        m = numth.subset_modulus(n, e, rho)
        term = adams_operation(table, chi, m)
        acc = acc + term if len(rho) % 2 == 0 else acc - term
    return acc


def eigenvalue_multiplicities(table: CharacterTable, chi: ChiLike, c: int) -> Tuple[int, ...]:
    """Multiplicity of each power of a primitive t-th root of unity among the
    eigenvalues of a representing matrix at class c (t = representative
    order), recovered by the inverse discrete Fourier transform of the
    power-map values."""
    chi, _ = _as_class_function(table, chi)
    t = table.classes[c].rep_order
    powers = [chi.values[table.class_of_power(c, a)] for a in range(t)]
    out = []
    for j in range(t):
        acc = Cyclotomic.rational(0)
        for a in range(t):
            acc = acc + powers[a] * zeta(t, -j * a)
        m = (acc / t).as_integer()
        if m is None or m < 0:
            raise ConsistencyError(
                f"eigenvalue multiplicity at class {c}, exponent {j} is {acc / t!r}"
            )
        out.append(m)
    total = sum(out)
    degree = chi.values[0].as_integer()
    if degree is None or total != degree:
        raise ConsistencyError(
            f"eigenvalue multiplicities at class {c} sum to {total}, not the degree"
        )
    return tuple(out)


def eigenvalue_order_witness(
    table: CharacterTable, chi: ChiLike, n: int
) -> Optional[Tuple[int, int]]:
    """First (class, exponent) in table order whose eigenvalue has order
    exactly n with positive multiplicity, if any."""
    chi, _ = _as_class_function(table, chi)
    for c in range(table.num_classes):
        t = table.classes[c].rep_order
        if t % n != 0:
            continue
        mults = eigenvalue_multiplicities(table, chi, c)
        for j, m in enumerate(mults):
            if m > 0 and t // math.gcd(t, j) == n:
                return (c, j)
    return None


def feit_indicator(table: CharacterTable, chi: ChiLike) -> FeitReport:
    """The invariant at the conductor of an irreducible character: positive
    exactly when the conjecture holds for this character."""
    chi, idx = _as_class_function(table, chi)
    if inner_product(chi, chi) != 1:
        raise ValueError("the character is not irreducible")
    c = conductor(chi)
    rep = invariant(table, chi, c)
    return FeitReport(idx, c, rep.value, rep.witness)


@dataclass
class TheoremCheck:
    """Outcome of the non-negativity and witness-equivalence test."""

    chi_index: Optional[int]
    n: int
    value: int
    witness: Optional[Tuple[int, int]]
    nonnegative: bool
    witness_equivalent: bool

    @property
    def passed(self) -> bool:
        return self.nonnegative and self.witness_equivalent


def verify_invariant(table: CharacterTable, chi: ChiLike, n: int) -> TheoremCheck:
    """Check that the invariant is non-negative and positive exactly when an
    eigenvalue-order witness exists.  A failure here is a reportable
    counterexample to the implementation, so nothing is raised."""
    chi, idx = _as_class_function(table, chi)
    rep = invariant(table, chi, n)
    witness = eigenvalue_order_witness(table, chi, n)
    return TheoremCheck(
        idx,
        n,
        rep.value,
        witness,
        nonnegative=rep.value >= 0,
        witness_equivalent=(rep.value > 0) == (witness is not None),
    )
