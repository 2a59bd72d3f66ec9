"""Character tables: exact computation for small groups, JSON ingest with
full validation, inner products, Galois conjugation, conductors and power
maps on classes.

Tables are computed entirely in exact arithmetic: the splitting of the
class-sum matrices happens modulo a prime p = 1 (mod exponent) with
p > 2*sqrt(|G|), and the resulting residue values are lifted to exact
cyclotomic numbers through the eigenvalue-multiplicity transform, which is
known to produce small non-negative integers.  Floating point never occurs.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from functools import reduce
from typing import List, Mapping, Optional, Sequence

from . import numth
from .cyclo import Cyclotomic, units
from .errors import BoundExceeded, ConsistencyError, TableFormatError
from .groups import PermGroup, Perm, compose, inverse, perm_power

DEFAULT_TABLE_BOUND = 2000


class ClassData:
    """Per-class table data: representative order, size, prime power maps."""

    __slots__ = ("rep_order", "size", "power_maps")

    def __init__(self, rep_order: int, size: int, power_maps: Mapping[int, int]):
        self.rep_order = rep_order
        self.size = size
        self.power_maps = dict(power_maps)

    def __repr__(self):
        return f"ClassData(order={self.rep_order}, size={self.size})"


class ClassFunction:
    """A vector of exact cyclotomic values indexed by conjugacy classes."""

    __slots__ = ("table", "values")

    def __init__(self, table: "CharacterTable", values: Sequence):
        vals = tuple(
            v if isinstance(v, Cyclotomic) else Cyclotomic.rational(v)
            for v in values
        )
        if len(vals) != len(table.classes):
            raise ValueError("one value per conjugacy class required")
        self.table = table
        self.values = vals

    def __getitem__(self, c: int) -> Cyclotomic:
        return self.values[c]

    def _check_same_table(self, other: "ClassFunction"):
        if self.table is not other.table:
            raise ValueError("class functions belong to different tables")

    def __add__(self, other: "ClassFunction") -> "ClassFunction":
        self._check_same_table(other)
        return ClassFunction(
            self.table, tuple(a + b for a, b in zip(self.values, other.values))
        )

    def __sub__(self, other: "ClassFunction") -> "ClassFunction":
        self._check_same_table(other)
        return ClassFunction(
            self.table, tuple(a - b for a, b in zip(self.values, other.values))
        )

    def __mul__(self, other):
        if isinstance(other, ClassFunction):
            self._check_same_table(other)
            return ClassFunction(
                self.table,
                tuple(a * b for a, b in zip(self.values, other.values)),
            )
        return ClassFunction(self.table, tuple(v * other for v in self.values))

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, ClassFunction):
            return NotImplemented
        return self.table is other.table and all(
            a == b for a, b in zip(self.values, other.values)
        )

    __hash__ = None

    def galois(self, k: int) -> "ClassFunction":
        if math.gcd(k, self.table.exponent) != 1:
            raise ValueError(
                f"{k} is not coprime to the exponent {self.table.exponent}"
            )
        # values live at levels dividing the exponent, so k stays coprime
        return ClassFunction(self.table, tuple(v.galois(k) for v in self.values))

    def conjugate(self) -> "ClassFunction":
        return self.galois(-1)

    def degree(self) -> Cyclotomic:
        return self.values[0]

    def __repr__(self):
        return f"ClassFunction({list(self.values)!r})"


class CharacterTable:
    """Conjugacy-class data plus the full matrix of irreducible characters.

    Tables computed from a group keep a reference to it (class
    representatives and the element-to-class map), which the brute-force
    induction machinery requires; tables loaded from JSON have table data
    only.
    """

    def __init__(
        self,
        name: str,
        order: int,
        exponent: int,
        classes: Sequence[ClassData],
        irreducibles: Sequence[Sequence[Cyclotomic]],
        group: Optional[PermGroup] = None,
        class_reps: Optional[Sequence[Perm]] = None,
    ):
        self.name = name
        self.order = order
        self.exponent = exponent
        self.classes = tuple(classes)
        self.irreducibles = tuple(tuple(row) for row in irreducibles)
        self.group = group
        self.class_reps = tuple(class_reps) if class_reps is not None else None

    def __repr__(self):
        return (
            f"CharacterTable({self.name}, order={self.order},"
            f" classes={len(self.classes)})"
        )

    @property
    def num_classes(self) -> int:
        return len(self.classes)

    def degree(self, i: int) -> int:
        d = self.irreducibles[i][0].as_integer()
        if d is None or d < 1:
            raise ConsistencyError(f"character {i} has invalid degree")
        return d

    def irreducible(self, i: int) -> ClassFunction:
        return ClassFunction(self, self.irreducibles[i])

    def class_function(self, values: Sequence) -> ClassFunction:
        return ClassFunction(self, values)

    def trivial_character(self) -> ClassFunction:
        return ClassFunction(self, (1,) * self.num_classes)

    @property
    def trivial_index(self) -> int:
        for i, row in enumerate(self.irreducibles):
            if all(v == 1 for v in row):
                return i
        raise ConsistencyError("table has no trivial character")

    def regular_character(self) -> ClassFunction:
        return ClassFunction(
            self, (self.order,) + (0,) * (self.num_classes - 1)
        )

    def class_of_element(self, g: Perm) -> int:
        if self.group is None:
            raise ValueError("table carries no group data")
        return self.group.class_index(g)

    def class_of_power(self, c: int, m: int) -> int:
        """Class of rep(c)^m, from the stored prime power maps; the part of
        m coprime to the exponent acts through Galois column matching."""
        e = self.exponent
        m %= e
        if m == 0:
            return 0
        cur = c
        residual = 1
        for q, v in numth.prime_factorization(m):
            if e % q == 0:
                for _ in range(v):
                    cur = self.classes[cur].power_maps[q]
            else:
                residual = residual * q**v % e
        if residual != 1:
            cur = self._galois_class(cur, residual)
        return cur

    def _galois_class(self, c: int, k: int) -> int:
        target = [row[c].galois(k) for row in self.irreducibles]
        matches = [
            c2
            for c2 in range(self.num_classes)
            if all(row[c2] == t for row, t in zip(self.irreducibles, target))
        ]
        if len(matches) != 1:
            raise ConsistencyError(
                f"power map match failed for class {c}, exponent {k}"
            )
        return matches[0]

    def row_key(self, row: Sequence[Cyclotomic]) -> tuple:
        return tuple(v.at_level(self.exponent).coeffs for v in row)


def inner_product(a: ClassFunction, b: ClassFunction) -> Cyclotomic:
    """Schur inner product: average of a * conjugate(b) weighted by class
    sizes.  Rational (indeed integral) whenever a and b are characters."""
    a._check_same_table(b)
    table = a.table
    total = Cyclotomic.rational(0)
    for cls, x, y in zip(table.classes, a.values, b.values):
        total = total + x * y.conjugate() * cls.size
    return total / table.order


def integral_inner_product(a: ClassFunction, b: ClassFunction) -> int:
    v = inner_product(a, b).as_integer()
    if v is None:
        raise ConsistencyError("inner product of virtual characters must be integral")
    return v


def galois_conjugate(chi: ClassFunction, k: int) -> ClassFunction:
    """Apply a Galois automorphism to every value of a class function."""
    return chi.galois(k)


def conductor(chi: ClassFunction) -> int:
    """Smallest divisor n of the exponent such that every Galois exponent
    congruent to 1 mod n fixes the character values."""
    e = chi.table.exponent
    for n in numth.divisors(e):
        if all(
            chi.galois(k) == chi
            for k in units(e)
            if (k - 1) % n == 0 and k != 1
        ):
            return n
    raise ConsistencyError("conductor search failed")  # unreachable: n = e works


# ---------------------------------------------------------------------------
# exact table computation


def _primitive_root(p: int) -> int:
    fact = [q for q, _ in numth.prime_factorization(p - 1)]
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in fact):
            return g
    raise ConsistencyError(f"no primitive root modulo {p}")


def _choose_prime(order: int, exponent: int) -> int:
    floor = 2 * math.isqrt(order) + 1
    p = exponent + 1
    while p <= floor or not numth.is_prime(p):
        p += exponent
    return p


def _nullspace_mod(mat: List[List[int]], p: int) -> List[List[int]]:
    """Basis of the kernel of a square matrix over the field with p elements."""
    n = len(mat)
    m = [row[:] for row in mat]
    pivots: List[int] = []
    r = 0
    for c in range(n):
        pr = next((i for i in range(r, n) if m[i][c] % p), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = pow(m[r][c], p - 2, p)
        m[r] = [v * inv % p for v in m[r]]
        for i in range(n):
            if i != r and m[i][c] % p:
                f = m[i][c]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    basis = []
    pivot_set = set(pivots)
    for free in range(n):
        if free in pivot_set:
            continue
        vec = [0] * n
        vec[free] = 1
        for row_i, c in enumerate(pivots):
            vec[c] = (-m[row_i][free]) % p
        basis.append(vec)
    return basis


def _coords_in_basis(basis: List[List[int]], w: List[int], p: int) -> List[int]:
    """Coordinates of w in the span of the given independent vectors."""
    n = len(w)
    d = len(basis)
    aug = [[basis[j][i] for j in range(d)] + [w[i]] for i in range(n)]
    r = 0
    pivots = []
    for c in range(d):
        pr = next((i for i in range(r, n) if aug[i][c] % p), None)
        if pr is None:
            raise ConsistencyError("dependent basis in eigenspace splitting")
        aug[r], aug[pr] = aug[pr], aug[r]
        inv = pow(aug[r][c], p - 2, p)
        aug[r] = [v * inv % p for v in aug[r]]
        for i in range(n):
            if i != r and aug[i][c] % p:
                f = aug[i][c]
                aug[i] = [(a - f * b) % p for a, b in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    for i in range(r, n):
        if aug[i][d] % p:
            raise ConsistencyError("vector left the invariant subspace")
    out = [0] * d
    for i, c in enumerate(pivots):
        out[c] = aug[i][d]
    return out


def compute_table(
    group: PermGroup,
    name: Optional[str] = None,
    bound: int = DEFAULT_TABLE_BOUND,
) -> CharacterTable:
    """Exact character table of a small permutation group."""
    if group.order > bound:
        raise BoundExceeded(
            f"table computation needs order <= {bound}, group has {group.order}"
        )
    classes = group.conjugacy_classes()
    r = len(classes)
    n_order = group.order
    e = group.exponent()
    cls_of = group.class_index
    inv_class = [cls_of(inverse(c.rep)) for c in classes]
    sizes = [c.size for c in classes]

    # class-sum structure constants: A[i][j][k] counts products from class i
    # and class j landing on the fixed representative of class k
    A = [[[0] * r for _ in range(r)] for _ in range(r)]
    for k, ck in enumerate(classes):
        zk = ck.rep
        for x in group.elements:
            i = cls_of(x)
            j = cls_of(compose(inverse(x), zk))
            A[i][j][k] += 1

    p = _choose_prime(n_order, e)
    w = _primitive_root(p)
    z_e = pow(w, (p - 1) // e, p)

    # split the common eigenspaces of the class-sum matrices over F_p
    spaces: List[List[List[int]]] = [
        [[int(i == j) for j in range(r)] for i in range(r)]
    ]
    for i in range(1, r):
        if all(len(s) == 1 for s in spaces):
            break
        mat_i = A[i]
        new_spaces = []
        for basis in spaces:
            if len(basis) == 1:
                new_spaces.append(basis)
                continue
            images = []
            for b in basis:
                wv = [
                    sum(mat_i[jj][k] * b[k] for k in range(r)) % p
                    for jj in range(r)
                ]
                images.append(_coords_in_basis(basis, wv, p))
            d = len(basis)
            small = [[images[j][l] for j in range(d)] for l in range(d)]
            found = 0
            for lam in range(p):
                shifted = [
                    [(small[a][b2] - (lam if a == b2 else 0)) % p for b2 in range(d)]
                    for a in range(d)
                ]
                kernel = _nullspace_mod(shifted, p)
                if not kernel:
                    continue
                sub = []
                for vec in kernel:
                    amb = [
                        sum(vec[j] * basis[j][k] for j in range(d)) % p
                        for k in range(r)
                    ]
                    sub.append(amb)
                new_spaces.append(sub)
                found += len(kernel)
                if found == d:
                    break
            if found != d:
                raise ConsistencyError("class-sum matrix failed to split")
        spaces = new_spaces
    if any(len(s) != 1 for s in spaces):
        raise ConsistencyError("common eigenspaces did not become lines")

    rows = []
    for basis in spaces:
        v = basis[0]
        if v[0] % p == 0:
            raise ConsistencyError("eigenvector vanishes on the identity class")
        norm = pow(v[0], p - 2, p)
        v = [x * norm % p for x in v]
        denom = sum(
            v[k] * v[inv_class[k]] * pow(sizes[k], p - 2, p) for k in range(r)
        ) % p
        if denom == 0:
            raise ConsistencyError("degree denominator vanished")
        deg_sq = n_order * pow(denom, p - 2, p) % p
        deg = next(
            (d for d in range(1, math.isqrt(n_order) + 1) if d * d % p == deg_sq),
            None,
        )
        if deg is None:
            raise ConsistencyError("no integral degree matches the residue")
        vals_mod = [deg * v[k] * pow(sizes[k], p - 2, p) % p for k in range(r)]

        row = []
        for k, ck in enumerate(classes):
            t = ck.element_order
            z_t = pow(z_e, e // t, p)
            pow_class = [cls_of(perm_power(ck.rep, a)) for a in range(t)]
            inv_t = pow(t, p - 2, p)
            mults = []
            for j in range(t):
                s = sum(
                    vals_mod[pow_class[a]] * pow(z_t, -j * a % (p - 1), p)
                    for a in range(t)
                )
                m_j = s * inv_t % p
                if m_j > deg:
                    raise ConsistencyError(
                        "eigenvalue multiplicity exceeds the degree"
                    )
                mults.append(m_j)
            if sum(mults) != deg:
                raise ConsistencyError("eigenvalue multiplicities do not sum up")
            row.append(Cyclotomic.from_terms(t, enumerate(mults)))
        rows.append(row)

    if sum(row[0].as_integer() ** 2 for row in rows) != n_order:
        raise ConsistencyError("degree squares do not sum to the group order")

    def row_key(row):
        return (row[0].as_integer(), tuple(v.at_level(e).coeffs for v in row))

    table = CharacterTable(
        name or group.name,
        n_order,
        e,
        [
            ClassData(
                c.element_order,
                c.size,
                {
                    q: cls_of(perm_power(c.rep, q))
                    for q, _ in numth.prime_factorization(e)
                },
            )
            for c in classes
        ],
        sorted(rows, key=row_key),
        group=group,
        class_reps=[c.rep for c in classes],
    )
    _validate(table)
    return table


# ---------------------------------------------------------------------------
# validation and serialization


def _validate(table: CharacterTable) -> None:
    def fail(check: str):
        raise TableFormatError(f"table validation failed: {check}")

    if table.order < 1 or table.exponent < 1:
        fail("positive order and exponent")
    if not table.classes:
        fail("at least one conjugacy class")
    if table.classes[0].rep_order != 1 or table.classes[0].size != 1:
        fail("class 0 must be the identity class")
    if sum(c.size for c in table.classes) != table.order:
        fail("class sizes must sum to the group order")
    if reduce(math.lcm, (c.rep_order for c in table.classes), 1) != table.exponent:
        fail("exponent must be the lcm of the representative orders")
    primes = [q for q, _ in numth.prime_factorization(table.exponent)]
    for idx, c in enumerate(table.classes):
        if set(c.power_maps) != set(primes):
            fail(f"class {idx} must carry a power map for every prime "
                 f"dividing the exponent")
        for q, tgt in c.power_maps.items():
            if not 0 <= tgt < len(table.classes):
                fail(f"power map of class {idx} at {q} is out of range")
            want = c.rep_order // math.gcd(c.rep_order, q)
            if table.classes[tgt].rep_order != want:
                fail(
                    f"power map of class {idx} at {q} lands on a class of the"
                    f" wrong order"
                )
    if len(table.irreducibles) != len(table.classes):
        fail("need as many irreducible characters as classes")
    degs = []
    for i, row in enumerate(table.irreducibles):
        if len(row) != len(table.classes):
            fail(f"character {i} has the wrong number of values")
        d = row[0].as_integer()
        if d is None or d < 1:
            fail(f"character {i} must have a positive integral degree")
        degs.append(d)
    if sum(d * d for d in degs) != table.order:
        fail("degree squares must sum to the group order")
    for i in range(len(table.irreducibles)):
        chi = table.irreducible(i)
        for j in range(i, len(table.irreducibles)):
            got = inner_product(chi, table.irreducible(j))
            if got != (1 if i == j else 0):
                fail(f"row orthogonality of characters {i} and {j}")
    ncls = len(table.classes)
    for c in range(ncls):
        for c2 in range(c, ncls):
            s = Cyclotomic.rational(0)
            for row in table.irreducibles:
                s = s + row[c] * row[c2].conjugate()
            want = Fraction(table.order, table.classes[c].size) if c == c2 else 0
            if s != want:
                fail(f"column orthogonality of classes {c} and {c2}")


def save_table(table: CharacterTable) -> bytes:
    """Serialize to the interchange JSON format (deterministic bytes)."""
    doc = {
        "name": table.name,
        "order": table.order,
        "exponent": table.exponent,
        "classes": [
            {
                "rep_order": c.rep_order,
                "size": c.size,
                "powermap": {
                    str(q): c.power_maps[q] for q in sorted(c.power_maps)
                },
            }
            for c in table.classes
        ],
        "irreducibles": [
            [v.to_json() for v in row] for row in table.irreducibles
        ],
    }
    return json.dumps(doc, indent=1).encode("utf-8")


def load_table(data) -> CharacterTable:
    """Parse and fully validate a serialized character table."""
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    if isinstance(data, str):
        try:
            doc = json.loads(data)
        except json.JSONDecodeError as exc:
            raise TableFormatError(f"invalid JSON: {exc}") from None
    else:
        doc = data
    try:
        classes = [
            ClassData(
                int(c["rep_order"]),
                int(c["size"]),
                {int(q): int(t) for q, t in c["powermap"].items()},
            )
            for c in doc["classes"]
        ]
        irreducibles = [
            [Cyclotomic.from_json(v) for v in row] for row in doc["irreducibles"]
        ]
        table = CharacterTable(
            str(doc["name"]),
            int(doc["order"]),
            int(doc["exponent"]),
            classes,
            irreducibles,
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise TableFormatError(f"malformed table document: {exc}") from None
    _validate(table)
    return table
