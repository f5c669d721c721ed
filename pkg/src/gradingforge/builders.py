"""Programmatic constructors for the bundled example algebras.

Everything is built from the cyclotomic and group-ring constructions so no
structure table is ever typed by hand.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .algebras import StructureAlgebra
from .numberfield import NumberField, cyclotomic_field


def rational_algebra(base="Q") -> StructureAlgebra:
    """Q (or Z) as a rank-1 algebra."""
    return StructureAlgebra(base, [[[1]]], name="Q" if base == "Q" else "Z")


def from_number_field(K: NumberField, base="Q", name=None) -> StructureAlgebra:
    """The field K as a structure-constant algebra in its power basis."""
    d = K.degree
    table = []
    for u in range(d):
        row = []
        for v in range(d):
            prod = K.mul(K.element([1 if t == u else 0 for t in range(d)]),
                         K.element([1 if t == v else 0 for t in range(d)]))
            row.append(prod)
        table.append(row)
    return StructureAlgebra(base, table, name=name)


def sqrt_order(d: int, base="Z") -> StructureAlgebra:
    """Z[sqrt(d)] (or its rational span) on the basis {1, sqrt(d)}."""
    table = [
        [[1, 0], [0, 1]],
        [[0, 1], [d, 0]],
    ]
    name = "%s[sqrt(%d)]" % ("Z" if base == "Z" else "Q", d)
    return StructureAlgebra(base, table, name=name)


def cyclotomic_order(e: int, base="Z") -> StructureAlgebra:
    """Z[zeta_e] (or Q(zeta_e)) in the power basis of zeta_e."""
    K = cyclotomic_field(e)
    name = ("Z[zeta_%d]" if base == "Z" else "Q(zeta_%d)") % e
    return from_number_field(K, base=base, name=name)


def group_ring(invariants, base="Z") -> StructureAlgebra:
    """The group ring of prod Z/n_i Z on the group-element basis."""
    invariants = list(invariants)
    elems = list(itertools.product(*[range(n) for n in invariants]))
    index = {g: i for i, g in enumerate(elems)}
    n = len(elems)
    table = []
    for g in elems:
        row = []
        for h in elems:
            gh = tuple((a + b) % m for a, b, m in zip(g, h, invariants))
            vec = [0] * n
            vec[index[gh]] = 1
            row.append(vec)
        table.append(row)
    name = "%s[%s]" % (base, "x".join("C%d" % m for m in invariants) or "C1")
    return StructureAlgebra(base, table, name=name)


def product_algebra(A: StructureAlgebra, B: StructureAlgebra) -> StructureAlgebra:
    """Direct product A x B with the concatenated basis."""
    if A.base != B.base:
        raise ValueError("mismatched base rings")
    n, m = A.rank, B.rank
    total = n + m
    zero = (Fraction(0),) * total
    table = [[zero] * total for _ in range(total)]
    for h in range(n):
        for i in range(n):
            vec = [Fraction(0)] * total
            for j in range(n):
                vec[j] = A.table[h][i][j]
            table[h][i] = tuple(vec)
    for h in range(m):
        for i in range(m):
            vec = [Fraction(0)] * total
            for j in range(m):
                vec[n + j] = B.table[h][i][j]
            table[n + h][n + i] = tuple(vec)
    name = None
    if A.name and B.name:
        name = "%s x %s" % (A.name, B.name)
    return StructureAlgebra(A.base, table, name=name)


def broken_table() -> StructureAlgebra:
    """A deliberately invalid table (fails associativity, has no unit)."""
    # e1*e1 = e1, cross products 0, e2*e2 = e1: (e2 e2) e1 != e2 (e2 e1)
    table = [
        [[1, 0], [0, 0]],
        [[0, 0], [1, 0]],
    ]
    return StructureAlgebra("Z", table, name="broken")


BUNDLED = {
    "zsqrt2": lambda: sqrt_order(2),
    "zsqrt2_squared": lambda: product_algebra(sqrt_order(2), sqrt_order(2)),
    "zzeta8": lambda: cyclotomic_order(8),
    "zc2": lambda: group_ring([2]),
    "zc2c2": lambda: group_ring([2, 2]),
    "zc4": lambda: group_ring([4]),
    "zc6": lambda: group_ring([6]),
    "qc4": lambda: StructureAlgebra("Q", group_ring([4]).table, name="Q[C4]"),
    "qzeta8": lambda: cyclotomic_order(8, base="Q"),
}
