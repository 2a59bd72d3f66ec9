"""Exact arithmetic in cyclotomic fields.

Values live in the field generated by a primitive e-th root of unity for a
"level" e, represented on the power basis 1, z, ..., z^(phi(e)-1) with
Fraction coefficients, reduced modulo the e-th cyclotomic polynomial.  The
representation at a fixed level is canonical, so equality at a common level
is coefficient equality; mixed-level operations promote to the lcm level.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Iterable, List, Optional, Tuple, Union

from . import numth
from .errors import ConsistencyError

Rational = Union[int, Fraction]


def _poly_divmod_exact(num: List[int], den: List[int]) -> List[int]:
    """Quotient of integer polynomials known to divide exactly."""
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for shift in range(len(out) - 1, -1, -1):
        c = num[len(den) - 1 + shift]
        if c % den[-1] != 0:
            raise ConsistencyError("inexact cyclotomic polynomial division")
        q = c // den[-1]
        out[shift] = q
        for i, d in enumerate(den):
            num[i + shift] -= q * d
    if any(num):
        raise ConsistencyError("nonzero remainder in cyclotomic division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(e: int) -> Tuple[int, ...]:
    """Coefficients (ascending) of the e-th cyclotomic polynomial, computed
    by dividing x^e - 1 by the polynomials of the proper divisors of e."""
    if e < 1:
        raise ValueError(f"positive level required, got {e}")
    poly = [-1] + [0] * (e - 1) + [1]
    for d in numth.divisors(e)[:-1]:
        poly = _poly_divmod_exact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


@lru_cache(maxsize=None)
def units(e: int) -> Tuple[int, ...]:
    """Residues coprime to e (the Galois exponents at level e)."""
    return tuple(k for k in range(max(e, 1)) if math.gcd(k, e) == 1)


@lru_cache(maxsize=None)
def _reduction_table(e: int) -> Tuple[Tuple[int, ...], ...]:
    """Monomial z^i at level e expressed on the power basis, for every
    exponent i that arithmetic can produce (i < max(e, 2*phi(e)-1))."""
    phi = numth.totient(e)
    poly = cyclotomic_polynomial(e)
    tail = tuple(-c for c in poly[:phi])  # z^phi on the basis
    limit = max(e, 2 * phi - 1)
    rows: List[Tuple[int, ...]] = []
    for i in range(phi):
        rows.append(tuple(int(i == j) for j in range(phi)))
    for i in range(phi, limit):
        prev = rows[i - 1]
        shifted = (0,) + prev[:-1]
        carry = prev[-1]
        if carry:
            shifted = tuple(s + carry * t for s, t in zip(shifted, tail))
        rows.append(shifted)
    return tuple(rows)


@lru_cache(maxsize=None)
def _monomial_traces(e: int) -> Tuple[Fraction, ...]:
    """Trace to the rationals of each basis monomial at level e, by literal
    summation of all Galois images (no closed form used)."""
    red = _reduction_table(e)
    phi = numth.totient(e)
    out = []
    for i in range(phi):
        out.append(Fraction(sum(red[(i * k) % e][0] for k in units(e))))
    return tuple(out)


class Cyclotomic:
    """An exact element of the cyclotomic field at a fixed level."""

    __slots__ = ("level", "coeffs")

    def __init__(self, level: int, coeffs: Iterable[Rational]):
        coeffs = tuple(Fraction(c) for c in coeffs)
        if level < 1 or len(coeffs) != numth.totient(level):
            raise ValueError(
                f"need exactly totient({level}) coefficients, got {len(coeffs)}"
            )
        self.level = level
        self.coeffs = coeffs

    @staticmethod
    def rational(q: Rational) -> "Cyclotomic":
        return Cyclotomic(1, (Fraction(q),))

    @staticmethod
    def from_terms(level: int, terms: Iterable[Tuple[int, Rational]]) -> "Cyclotomic":
        """Sum of coeff * z^exp at the given level."""
        red = _reduction_table(level)
        phi = numth.totient(level)
        acc = [Fraction(0)] * phi
        for exp, c in terms:
            c = Fraction(c)
            if not c:
                continue
            row = red[exp % level]
            for j in range(phi):
                if row[j]:
                    acc[j] += c * row[j]
        return Cyclotomic(level, acc)

    # -- level handling -------------------------------------------------

    def _embedded(self, level: int) -> "Cyclotomic":
        if level == self.level:
            return self
        if level % self.level != 0:
            raise ValueError(f"{self.level} does not divide {level}")
        step = level // self.level
        return Cyclotomic.from_terms(
            level, ((i * step, c) for i, c in enumerate(self.coeffs) if c)
        )

    def _projected(self, level: int) -> "Cyclotomic":
        """Rewrite at a divisor level; fails if the value is not there."""
        step = self.level // level
        red = _reduction_table(self.level)
        phi_small = numth.totient(level)
        cols = [red[(j * step) % self.level] for j in range(phi_small)]
        sol = _solve_exact(cols, self.coeffs)
        if sol is None:
            raise ValueError(f"value is not contained in the level-{level} field")
        return Cyclotomic(level, sol)

    def at_level(self, level: int) -> "Cyclotomic":
        """The same value re-expressed at another level (up or down)."""
        if level == self.level:
            return self
        if level % self.level == 0:
            return self._embedded(level)
        if self.level % level == 0:
            return self._projected(level)
        common = math.lcm(self.level, level)
        return self._embedded(common)._projected(level)

    @staticmethod
    def _common(a: "Cyclotomic", b: "Cyclotomic"):
        if a.level == b.level:
            return a, b
        lev = math.lcm(a.level, b.level)
        return a._embedded(lev), b._embedded(lev)

    # -- ring operations -------------------------------------------------

    @staticmethod
    def _coerce(x) -> Optional["Cyclotomic"]:
        if isinstance(x, Cyclotomic):
            return x
        if isinstance(x, (int, Fraction)):
            return Cyclotomic.rational(x)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self._common(self, other)
        return Cyclotomic(a.level, (x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.level, (-c for c in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyclotomic(self.level, (c * other for c in self.coeffs))
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        a, b = self._common(self, other)
        phi = len(a.coeffs)
        conv = [Fraction(0)] * (2 * phi - 1)
        for i, x in enumerate(a.coeffs):
            if not x:
                continue
            for j, y in enumerate(b.coeffs):
                if y:
                    conv[i + j] += x * y
        red = _reduction_table(a.level)
        out = conv[:phi]
        for k in range(phi, 2 * phi - 1):
            c = conv[k]
            if c:
                row = red[k]
                for j in range(phi):
                    if row[j]:
                        out[j] += c * row[j]
        return Cyclotomic(a.level, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / Fraction(other))
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not supported")
        out = Cyclotomic.rational(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self._common(self, other)
        return a.coeffs == b.coeffs

    __hash__ = None  # cross-level equality makes hashing unsafe

    def __bool__(self):
        return any(self.coeffs)

    def __repr__(self):
        if not self:
            return "Cyc(0)"
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                z = f"z{self.level}" + (f"^{i}" if i > 1 else "")
                parts.append(z if c == 1 else f"{c}*{z}")
        return "Cyc(" + " + ".join(parts) + ")"

    # -- Galois theory ----------------------------------------------------

    def galois(self, k: int) -> "Cyclotomic":
        """Apply the field automorphism sending z to z^k (k coprime to level)."""
        if math.gcd(k, self.level) != 1:
            raise ValueError(f"{k} is not coprime to the level {self.level}")
        return Cyclotomic.from_terms(
            self.level, ((i * k, c) for i, c in enumerate(self.coeffs) if c)
        )

    def conjugate(self) -> "Cyclotomic":
        return self.galois(-1)

    def rational_trace(self) -> Fraction:
        """Sum of all Galois images, as a rational."""
        tr = _monomial_traces(self.level)
        return sum((c * tr[i] for i, c in enumerate(self.coeffs)), Fraction(0))

    # -- predicates / conversions ----------------------------------------

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def as_rational(self) -> Optional[Fraction]:
        return self.coeffs[0] if self.is_rational() else None

    def as_integer(self) -> Optional[int]:
        q = self.as_rational()
        if q is None or q.denominator != 1:
            return None
        return int(q)

    def as_root_of_unity(self) -> Optional["RootOfUnity"]:
        """Return the root of unity equal to this value, if there is one."""
        if self * self.conjugate() != 1:
            return None
        e = self.level
        for k in range(e):
            cand = zeta(e, k)
            if self == cand:
                return RootOfUnity(e, k)
            if self == -cand:
                return RootOfUnity(2, 1) * RootOfUnity(e, k)
        return None

    # -- serialization -----------------------------------------------------

    def to_json(self):
        """Wire form: a bare int, a "num/den" string, or {level, terms}."""
        q = self.as_rational()
        if q is not None:
            return int(q) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
        terms = [
            [i, c.numerator, c.denominator]
            for i, c in enumerate(self.coeffs)
            if c
        ]
        return {"level": self.level, "terms": terms}

    @staticmethod
    def from_json(data) -> "Cyclotomic":
        if isinstance(data, bool):
            raise ValueError("boolean is not a valid cyclotomic value")
        if isinstance(data, int):
            return Cyclotomic.rational(data)
        if isinstance(data, str):
            num, _, den = data.partition("/")
            return Cyclotomic.rational(Fraction(int(num), int(den or 1)))
        if isinstance(data, dict):
            level = data["level"]
            terms = [
                (int(e), Fraction(int(num), int(den)))
                for e, num, den in data["terms"]
            ]
            return Cyclotomic.from_terms(level, terms)
        raise ValueError(f"unrecognized cyclotomic value {data!r}")


def _solve_exact(cols, target) -> Optional[Tuple[Fraction, ...]]:
    """Solve sum_j x_j * cols[j] = target exactly; None if inconsistent."""
    rows = len(target)
    ncols = len(cols)
    mat = [[Fraction(cols[j][i]) for j in range(ncols)] + [Fraction(target[i])]
           for i in range(rows)]
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, rows) if mat[i][c]), None)
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [v * inv for v in mat[r]]
        for i in range(rows):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    for i in range(r, rows):
        if mat[i][ncols]:
            return None
    sol = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        sol[c] = mat[i][ncols]
    # rows below pivots already checked; ensure free columns are genuinely free
    return tuple(sol)


def zeta(e: int, k: int = 1) -> Cyclotomic:
    """The k-th power of a fixed primitive e-th root of unity."""
    red = _reduction_table(e)
    return Cyclotomic(e, red[k % e])


def rational(q: Rational) -> Cyclotomic:
    return Cyclotomic.rational(q)


@dataclass(frozen=True)
class RootOfUnity:
    """A root of unity in canonical form: level is its exact order and the
    exponent is coprime to it (so order == level always)."""

    level: int
    exponent: int

    def __post_init__(self):
        e, k = self.level, self.exponent
        if e < 1:
            raise ValueError(f"positive level required, got {e}")
        k %= e
        g = math.gcd(k, e) if k else e
        object.__setattr__(self, "level", e // g)
        object.__setattr__(self, "exponent", (k // g) % (e // g) if e // g > 1 else 0)

    @property
    def order(self) -> int:
        return self.level

    def power(self, m: int) -> "RootOfUnity":
        return RootOfUnity(self.level, self.exponent * m)

    def inverse(self) -> "RootOfUnity":
        return self.power(-1)

    def __mul__(self, other: "RootOfUnity") -> "RootOfUnity":
        lev = math.lcm(self.level, other.level)
        exp = self.exponent * (lev // self.level) + other.exponent * (lev // other.level)
        return RootOfUnity(lev, exp)

    def to_cyclotomic(self) -> Cyclotomic:
        return zeta(self.level, self.exponent)
