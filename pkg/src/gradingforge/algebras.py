"""Structure-constant algebras over Z and Q.

Validation, unit recovery, reducedness, tensoring with cyclotomic rings,
and the spectrum decomposition of a reduced rational algebra into number
fields.
"""

from __future__ import annotations

from fractions import Fraction

from .linalg import Matrix, kernel_basis
from .numberfield import (
    CyclotomicField,
    NumberField,
    cyclotomic_field,
    field_from_min_poly,
    rational_field,
)
from .polys import degree as poly_degree
from .polys import (
    factor_rational,
    is_irreducible,
    poly_deriv,
    poly_div_exact,
    poly_divmod,
    poly_gcd,
    poly_mod,
    poly_mul,
    poly_sub,
    trim,
)


class AlgebraError(ValueError):
    pass


class NotAssociative(AlgebraError):
    def __init__(self, triple):
        self.triple = triple
        super().__init__("associativity fails on basis triple %r" % (triple,))


class NotCommutative(AlgebraError):
    def __init__(self, pair):
        self.pair = pair
        super().__init__("commutativity fails on basis pair %r" % (pair,))


class NoUnit(AlgebraError):
    def __init__(self):
        super().__init__("the algebra has no two-sided unit")


class NotReduced(AlgebraError):
    pass


class NotAnOrder(AlgebraError):
    pass


class StructureAlgebra:
    """Free Z- or Q-algebra of finite rank given by structure constants.

    table[h][i] is the coordinate vector of e_h * e_i.
    """

    def __init__(self, base, table, name=None, validated=False):
        if base not in ("Z", "Q"):
            raise ValueError("base must be 'Z' or 'Q'")
        self.base = base
        self.table = tuple(
            tuple(tuple(Fraction(c) for c in vec) for vec in row) for row in table
        )
        self.rank = len(self.table)
        for row in self.table:
            if len(row) != self.rank or any(len(v) != self.rank for v in row):
                raise ValueError("structure table must be rank^3")
        if base == "Z":
            for row in self.table:
                for vec in row:
                    if any(c.denominator != 1 for c in vec):
                        raise NotAnOrder("integral base with non-integer table")
        self.name = name
        self._unit = None
        self._mult_mats = None
        if validated:
            self._unit = self._solve_unit()

    # -- multiplication --------------------------------------------------

    def mult_matrix(self, x):
        """Matrix of multiplication by the vector x."""
        n = self.rank
        cols = []
        for i in range(n):
            col = [Fraction(0)] * n
            for h in range(n):
                c = Fraction(x[h])
                if c:
                    vec = self.table[h][i]
                    for j in range(n):
                        if vec[j]:
                            col[j] += c * vec[j]
            cols.append(col)
        return Matrix.from_cols(cols, nrows=n)

    def mul(self, x, y):
        n = self.rank
        out = [Fraction(0)] * n
        for h in range(n):
            a = Fraction(x[h])
            if not a:
                continue
            row = self.table[h]
            for i in range(n):
                b = Fraction(y[i])
                if not b:
                    continue
                vec = row[i]
                ab = a * b
                for j in range(n):
                    if vec[j]:
                        out[j] += ab * vec[j]
        return tuple(out)

    def basis_vector(self, i):
        return tuple(Fraction(1 if j == i else 0) for j in range(self.rank))

    def zero(self):
        return (Fraction(0),) * self.rank

    @property
    def unit(self):
        if self._unit is None:
            self._unit = self._solve_unit()
        return self._unit

    def _solve_unit(self):
        # solve x * e_i = e_i for all i
        n = self.rank
        rows = []
        rhs = []
        for i in range(n):
            for j in range(n):
                rows.append([self.table[h][i][j] for h in range(n)])
                rhs.append(Fraction(1 if i == j else 0))
        M = Matrix(rows)
        sol = M.solve(tuple(rhs))
        if sol is None:
            raise NoUnit()
        return tuple(sol)

    def scale(self, x, c):
        c = Fraction(c)
        return tuple(c * Fraction(v) for v in x)

    def add(self, x, y):
        return tuple(Fraction(a) + Fraction(b) for a, b in zip(x, y))

    def sub(self, x, y):
        return tuple(Fraction(a) - Fraction(b) for a, b in zip(x, y))

    def power(self, x, k):
        out = self.unit
        base = tuple(Fraction(c) for c in x)
        while k:
            if k & 1:
                out = self.mul(out, base)
            k >>= 1
            if k:
                base = self.mul(base, base)
        return out

    def rational(self):
        """The same table viewed over Q."""
        if self.base == "Q":
            return self
        return StructureAlgebra("Q", self.table, name=self.name)

    def __repr__(self):
        return "StructureAlgebra(base=%r, rank=%d%s)" % (
            self.base, self.rank, ", name=%r" % self.name if self.name else "")


def validate(A: StructureAlgebra):
    """Check commutativity, associativity and unit existence.

    Returns the unit vector; raises NotCommutative / NotAssociative /
    NoUnit naming a violating tuple.
    """
    n = A.rank
    for h in range(n):
        for i in range(h + 1, n):
            if A.table[h][i] != A.table[i][h]:
                raise NotCommutative((h, i))
    basis = [A.basis_vector(i) for i in range(n)]
    for h in range(n):
        for i in range(n):
            hi = A.table[h][i]
            for j in range(n):
                left = A.mul(hi, basis[j])
                right = A.mul(basis[h], A.table[i][j])
                if left != right:
                    raise NotAssociative((h, i, j))
    return A.unit


def is_reduced(A: StructureAlgebra) -> bool:
    """Nondegeneracy of the trace form Tr(xy) (characteristic-zero test)."""
    B = A.rational()
    n = B.rank
    mats = [B.mult_matrix(B.basis_vector(i)) for i in range(n)]
    gram = [[_trace_product(mats[i], mats[j]) for j in range(n)] for i in range(n)]
    from .linalg import det
    return det(Matrix(gram)) != 0


def _trace_product(M, N):
    n = M.nrows
    total = Fraction(0)
    for i in range(n):
        for j in range(n):
            a = M.rows[i][j]
            if a:
                b = N.rows[j][i]
                if b:
                    total += a * b
    return total


def minimal_polynomial(x, A: StructureAlgebra):
    """Monic least-degree rational polynomial vanishing at x.

    Computed from the kernel of the Krylov matrix of powers of x.
    """
    B = A.rational()
    n = B.rank
    powers = [B.unit]
    cur = B.unit
    for _ in range(n):
        cur = B.mul(cur, x)
        powers.append(cur)
    for d in range(1, n + 1):
        M = Matrix.from_cols([list(p) for p in powers[: d + 1]], nrows=n)
        K = kernel_basis(M)
        if K.ncols > 0:
            col = K.col(0)
            lead = Fraction(col[d])
            if lead == 0:
                continue
            return [Fraction(c) / lead for c in col]
    raise AssertionError("no minimal polynomial found below the rank bound")


class TensorExtension:
    """A' = A tensor Z[mu_e] with its embedding, retraction and Galois action.

    Basis ordering: (i, j) -> i * phi(e) + j for basis vector b_i * zeta^j.
    """

    def __init__(self, algebra, extended, embed, retract, cyclo, e):
        self.algebra = algebra
        self.extended = extended
        self.embed = embed          # Matrix: A -> A'
        self.retract = retract      # Matrix: A' -> A, retract*embed = id
        self.cyclo = cyclo          # CyclotomicField
        self.order = e
        self._tau = {}

    def tau(self, a) -> Matrix:
        """The ring automorphism acting as zeta -> zeta^a on the second factor."""
        a %= self.order if self.order > 1 else 1
        if a not in self._tau:
            K = self.cyclo
            d = K.degree
            n = self.algebra.rank
            hom = K.automorphism(a if self.order > 1 else 1)
            cols = []
            for i in range(n):
                for j in range(d):
                    img = hom.apply(K.element([1 if t == j else 0 for t in range(d)]))
                    col = [Fraction(0)] * (n * d)
                    for t in range(d):
                        col[i * d + t] = img[t]
                    cols.append(col)
            self._tau[a] = Matrix.from_cols(cols, nrows=n * d)
        return self._tau[a]

    def zeta_mult_matrix(self, k) -> Matrix:
        """Multiplication by 1 tensor zeta^k on A'."""
        K = self.cyclo
        d = K.degree
        n = self.algebra.rank
        zk = K.zeta_power(k)
        cols = []
        for i in range(n):
            for j in range(d):
                img = K.mul(zk, K.element([1 if t == j else 0 for t in range(d)]))
                col = [Fraction(0)] * (n * d)
                for t in range(d):
                    col[i * d + t] = img[t]
                cols.append(col)
        return Matrix.from_cols(cols, nrows=n * d)


def tensor_cyclotomic(A: StructureAlgebra, e: int) -> TensorExtension:
    """A tensor the e-th cyclotomic ring, with the (Z/eZ)* action exposed."""
    if e < 1:
        raise ValueError("cyclotomic order must be positive")
    K = cyclotomic_field(e)
    d = K.degree
    n = A.rank
    nd = n * d
    zpows = {}
    for u in range(d):
        for v in range(d):
            if u + v not in zpows:
                zeta_uv = K.mul(
                    K.element([1 if t == u else 0 for t in range(d)]),
                    K.element([1 if t == v else 0 for t in range(d)]),
                )
                zpows[u + v] = zeta_uv
    table = []
    for h in range(n):
        for u in range(d):
            row = []
            for i in range(n):
                base_vec = A.table[h][i]
                for v in range(d):
                    zvec = zpows[u + v]
                    out = [Fraction(0)] * nd
                    for j in range(n):
                        c = base_vec[j]
                        if c:
                            for t in range(d):
                                if zvec[t]:
                                    out[j * d + t] = c * zvec[t]
                    row.append(tuple(out))
            table.append(tuple(row))
    extended = StructureAlgebra(A.base, table)
    embed_cols = []
    for i in range(n):
        col = [Fraction(0)] * nd
        col[i * d] = Fraction(1)
        embed_cols.append(col)
    embed = Matrix.from_cols(embed_cols, nrows=nd)
    retract_rows = []
    for i in range(n):
        row = [Fraction(0)] * nd
        row[i * d] = Fraction(1)
        retract_rows.append(row)
    retract = Matrix(retract_rows)
    return TensorExtension(A, extended, embed, retract, K, e)


class SpectrumDecomposition:
    """Isomorphism of a reduced Q-algebra with a product of number fields."""

    def __init__(self, algebra, factors, projections, sections):
        self.algebra = algebra
        self.factors = factors          # list[NumberField]
        self.projections = projections  # list[Matrix], algebra -> power basis
        self.sections = sections        # list[Matrix], power basis -> algebra

    def __len__(self):
        return len(self.factors)

    def iso_matrix(self) -> Matrix:
        M = self.projections[0]
        for P in self.projections[1:]:
            M = M.vstack(P)
        return M

    def idempotent(self, i):
        """Preimage in the algebra of the i-th factor's unit."""
        return self.sections[i].apply(self.factors[i].one())

    def project(self, i, x):
        return self.projections[i].apply(x)


def spectrum(E: StructureAlgebra) -> SpectrumDecomposition:
    """Decompose a reduced Q-algebra into number fields.

    Factors are sorted by (degree, defining polynomial); projections are
    Q-algebra maps onto power-basis coordinates.
    """
    E = E.rational()
    if not is_reduced(E):
        raise NotReduced("spectrum of a non-reduced algebra")
    parts = _split_completely(E, Matrix.identity(E.rank), Matrix.identity(E.rank))
    # each part: (subalgebra, projection E->sub coords, section sub->E)
    entries = []
    for sub, proj, sect in parts:
        field, to_field, from_field = _field_presentation(sub)
        entries.append((field, to_field * proj, sect * from_field))
    entries.sort(key=lambda t: (t[0].degree, t[0].defining, t[1].key()))
    return SpectrumDecomposition(
        E,
        [t[0] for t in entries],
        [t[1] for t in entries],
        [t[2] for t in entries],
    )


def _split_completely(E, proj, sect):
    """Recursively split E (with tracking maps to the root algebra)."""
    n = E.rank
    split = _find_splitting(E)
    if split is None:
        return [(E, proj, sect)]
    x, factors = split
    out = []
    f = minimal_polynomial(x, E)
    for fac, mult in factors:
        if mult > 1:
            raise NotReduced("repeated minimal polynomial factor")
        # idempotent for this factor: g * (f / fac) with g = (f/fac)^-1 mod fac
        cof = poly_div_exact(f, fac)
        g = _poly_inverse_mod(cof, fac)
        idem_poly = poly_mul(g, cof)
        idem = _eval_poly_at(E, idem_poly, x)
        sub, p2, s2 = _component(E, idem)
        out.extend(_split_completely(sub, p2 * proj, sect * s2))
    return out


def _poly_inverse_mod(a, m):
    r0, r1 = [Fraction(c) for c in m], [Fraction(c) for c in a]
    t0, t1 = [], [Fraction(1)]
    while poly_degree(r1) > 0:
        q, r = poly_divmod(r0, r1)
        r0, r1 = r1, r
        t0, t1 = t1, poly_sub(t0, poly_mul(q, t1))
    if not r1:
        raise ArithmeticError("non-coprime inverse")
    inv = 1 / Fraction(r1[0])
    return poly_mod([inv * c for c in t1], m)


def _eval_poly_at(E, coeffs, x):
    out = E.zero()
    for c in reversed(trim(coeffs)):
        out = E.mul(out, x)
        out = E.add(out, E.scale(E.unit, c))
    return out


def _component(E, idem):
    """Subalgebra e*E for an idempotent e: (algebra, projection, section)."""
    M = E.mult_matrix(idem)
    # basis of the image
    R, pivots = M.transpose().rref()
    basis = [tuple(R.rows[k]) for k in range(len(pivots))]
    S = Matrix.from_cols(basis, nrows=E.rank)  # section: sub -> E
    # left inverse L with L*S = I
    L = _left_inverse(S)
    P = L * M  # projection x -> coords of e*x
    r = len(basis)
    table = []
    for h in range(r):
        row = []
        for i in range(r):
            prod = E.mul(basis[h], basis[i])
            row.append(P.apply(prod))
        table.append(row)
    sub = StructureAlgebra("Q", table)
    return sub, P, S


def _left_inverse(S: Matrix) -> Matrix:
    """L with L*S = identity, for S of full column rank."""
    n, r = S.nrows, S.ncols
    _, pivot_rows = S.transpose().rref()
    assert len(pivot_rows) == r, "section not of full column rank"
    square = S.submatrix(pivot_rows, range(r))
    inv = square.inverse()
    rows = []
    for i in range(r):
        row = [Fraction(0)] * n
        for k, pr in enumerate(pivot_rows):
            row[pr] = inv.rows[i][k]
        rows.append(row)
    return Matrix(rows)


def _find_splitting(E):
    """(element, factorization of its minimal polynomial) or None if E is a field."""
    n = E.rank
    candidates = [E.basis_vector(i) for i in range(n)]
    best_irreducible = None
    for x in candidates:
        f = minimal_polynomial(x, E)
        if poly_degree(f) == n:
            if is_irreducible(f):
                return None  # E is a field with primitive element x
            return x, factor_rational(f)[1]
        _, facs = factor_rational(f)
        if len(facs) > 1 or facs[0][1] > 1:
            return x, facs
    # all basis vectors have irreducible minimal polynomials of low degree;
    # scan small integer combinations for a splitting or primitive element
    for x in _combination_scan(E):
        f = minimal_polynomial(x, E)
        if poly_degree(f) == n:
            if is_irreducible(f):
                return None
            return x, factor_rational(f)[1]
        _, facs = factor_rational(f)
        if len(facs) > 1 or facs[0][1] > 1:
            return x, facs
    raise AssertionError("splitting scan exhausted")


def _combination_scan(E):
    """Deterministic unbounded scan of small integer combinations."""
    import itertools

    n = E.rank
    for c in itertools.count(1):
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                yield E.add(E.basis_vector(i), E.scale(E.basis_vector(j), c))
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    v = E.add(E.basis_vector(i), E.scale(E.basis_vector(j), c))
                    yield E.add(v, E.scale(E.basis_vector(k), c * c + 1))


def _field_presentation(E):
    """Present a Q-algebra known to be a field by a power basis.

    Returns (NumberField, to_field: Matrix, from_field: Matrix).
    """
    n = E.rank
    prim = None
    for x in [E.basis_vector(i) for i in range(n)]:
        f = minimal_polynomial(x, E)
        if poly_degree(f) == n:
            prim = (x, f)
            break
    if prim is None:
        for x in _combination_scan(E):
            f = minimal_polynomial(x, E)
            if poly_degree(f) == n:
                prim = (x, f)
                break
    if prim is None:
        raise AssertionError("no primitive element found")
    x, f = prim
    field, scale = field_from_min_poly(f)
    if field.degree == 1 and tuple(field.defining) != (0, 1):
        field = rational_field()
    # power basis of scale*x
    sx = E.scale(x, scale)
    powers = [E.unit]
    for _ in range(n - 1):
        powers.append(E.mul(powers[-1], sx))
    from_field = Matrix.from_cols([list(p) for p in powers], nrows=n)
    to_field = _left_inverse_square(from_field)
    return field, to_field, from_field


def _left_inverse_square(M):
    return M.inverse()


def subset_projection(E: StructureAlgebra, spec: SpectrumDecomposition,
                      lattice_basis, indices):
    """Product of spectrum factors over `indices` with the projected order.

    lattice_basis: columns spanning the order R inside E (rational matrix).
    Returns (E_P algebra, projection matrix, R_P basis matrix in E_P, R_P
    algebra).
    """
    indices = sorted(indices)
    if not indices:
        raise AlgebraError("empty spectrum subset")
    dims = [spec.factors[i].degree for i in indices]
    total = sum(dims)
    # block-diagonal structure constants from the factor fields
    table = [[None] * total for _ in range(total)]
    offs = []
    off = 0
    for i, d in zip(indices, dims):
        offs.append(off)
        K = spec.factors[i]
        for u in range(d):
            for v in range(d):
                prod = K.mul(K.element([1 if t == u else 0 for t in range(d)]),
                             K.element([1 if t == v else 0 for t in range(d)]))
                vec = [Fraction(0)] * total
                for t in range(d):
                    vec[off + t] = prod[t]
                table[off + u][off + v] = tuple(vec)
        off += d
    zero = (Fraction(0),) * total
    for u in range(total):
        for v in range(total):
            if table[u][v] is None:
                table[u][v] = zero
    E_P = StructureAlgebra("Q", table)
    proj = spec.projections[indices[0]]
    for i in indices[1:]:
        proj = proj.vstack(spec.projections[i])
    # image of the order under the projection
    img_cols = [proj.apply(col) for col in lattice_basis.cols()]
    RP_basis = _rational_lattice_basis(img_cols, total)
    RP = order_in_algebra(E_P, RP_basis)
    return E_P, proj, RP_basis, RP


def _rational_lattice_basis(cols, ambient) -> Matrix:
    """Canonical basis of the subgroup of Q^ambient generated by cols."""
    from math import lcm as _lcm
    dens = [Fraction(x).denominator for c in cols for x in c]
    D = _lcm(*dens) if dens else 1
    from .linalg import IntegerLattice
    lat = IntegerLattice(ambient, [[int(Fraction(x) * D) for x in c] for c in cols])
    return Matrix.from_cols(
        [[Fraction(x, D) for x in b] for b in lat.basis], nrows=ambient)


def order_in_algebra(E: StructureAlgebra, basis: Matrix) -> StructureAlgebra:
    """Structure algebra over Z of the order spanned by `basis` inside E."""
    inv = _left_inverse(basis)
    r = basis.ncols
    cols = basis.cols()
    table = []
    for h in range(r):
        row = []
        for i in range(r):
            prod = E.mul(cols[h], cols[i])
            coords = inv.apply(prod)
            row.append(coords)
        table.append(row)
    try:
        return StructureAlgebra("Z", table)
    except NotAnOrder:
        raise NotAnOrder("lattice is not multiplicatively closed over Z")


def primitive_idempotents(E: StructureAlgebra, spec: SpectrumDecomposition = None):
    """Idempotents summing to 1, pairwise products zero, one per factor."""
    if spec is None:
        spec = spectrum(E)
    return [spec.idempotent(i) for i in range(len(spec))]


def nilpotent_search_reduced(A: StructureAlgebra) -> bool:
    """Oracle for is_reduced: every basis element has squarefree minimal
    polynomial and so do pairwise sums."""
    B = A.rational()
    n = B.rank
    elems = [B.basis_vector(i) for i in range(n)]
    elems += [B.add(e, f) for i, e in enumerate(elems) for f in elems[i + 1:]]
    for x in elems:
        f = minimal_polynomial(x, B)
        if poly_degree(poly_gcd(f, poly_deriv(f))) > 0:
            return False
    return True
