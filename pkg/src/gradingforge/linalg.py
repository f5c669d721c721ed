"""Exact linear algebra over Z and Q.

Kernels, determinants, Hermite and Smith normal forms, and arithmetic of
finitely generated subgroups of Z^n (sum, intersection, inclusion,
saturation).  All arithmetic is arbitrary precision; no floats.

Conventions:
  * matrices act on column vectors; a subgroup of Z^n is given by the
    integer span of the columns of a generator matrix.
  * hnf() is a column-style Hermite form H = M*U with U unimodular,
    positive pivots, strictly increasing pivot rows, zero columns last,
    and entries left of a pivot reduced into [0, pivot).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm


class Matrix:
    """Immutable dense matrix with exact (int or Fraction) entries."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows):
        self.rows = tuple(tuple(x for x in row) for row in rows)
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        if any(len(r) != self.ncols for r in self.rows):
            raise ValueError("ragged rows")

    # -- constructors -------------------------------------------------

    @staticmethod
    def identity(n):
        return Matrix([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @staticmethod
    def zero(nrows, ncols):
        return Matrix([[0] * ncols for _ in range(nrows)])

    @staticmethod
    def from_cols(cols, nrows=None):
        cols = list(cols)
        if not cols:
            if nrows is None:
                raise ValueError("empty column list needs explicit row count")
            return Matrix([[] for _ in range(nrows)])
        n = len(cols[0])
        return Matrix([[col[i] for col in cols] for i in range(n)])

    @staticmethod
    def column(vec):
        return Matrix([[x] for x in vec])

    # -- basic access --------------------------------------------------

    def col(self, j):
        return tuple(self.rows[i][j] for i in range(self.nrows))

    def cols(self):
        return [self.col(j) for j in range(self.ncols)]

    def entry(self, i, j):
        return self.rows[i][j]

    def transpose(self):
        return Matrix([[self.rows[i][j] for i in range(self.nrows)]
                       for j in range(self.ncols)])

    def is_zero(self):
        return all(x == 0 for row in self.rows for x in row)

    def is_integer(self):
        return all(Fraction(x).denominator == 1 for row in self.rows for x in row)

    def to_int(self):
        if not self.is_integer():
            raise ValueError("matrix has non-integer entries")
        return Matrix([[int(x) for x in row] for row in self.rows])

    def is_square(self):
        return self.nrows == self.ncols

    # -- arithmetic ----------------------------------------------------

    def __mul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise ValueError("shape mismatch in product")
            ocols = other.ncols
            out = []
            for row in self.rows:
                orow = [0] * ocols
                for k, a in enumerate(row):
                    if a:
                        brow = other.rows[k]
                        for j in range(ocols):
                            b = brow[j]
                            if b:
                                orow[j] += a * b
                out.append(orow)
            return Matrix(out)
        return NotImplemented

    def apply(self, vec):
        """Matrix times column vector, as a tuple."""
        if self.ncols != len(vec):
            raise ValueError("shape mismatch in apply")
        return tuple(sum(a * x for a, x in zip(row, vec) if a and x)
                     for row in self.rows)

    def __add__(self, other):
        if self.nrows != other.nrows or self.ncols != other.ncols:
            raise ValueError("shape mismatch in sum")
        return Matrix([[a + b for a, b in zip(r1, r2)]
                       for r1, r2 in zip(self.rows, other.rows)])

    def __sub__(self, other):
        if self.nrows != other.nrows or self.ncols != other.ncols:
            raise ValueError("shape mismatch in difference")
        return Matrix([[a - b for a, b in zip(r1, r2)]
                       for r1, r2 in zip(self.rows, other.rows)])

    def __neg__(self):
        return Matrix([[-a for a in row] for row in self.rows])

    def scale(self, c):
        return Matrix([[c * a for a in row] for row in self.rows])

    def hstack(self, other):
        if self.nrows != other.nrows:
            raise ValueError("row count mismatch in hstack")
        return Matrix([r1 + r2 for r1, r2 in zip(self.rows, other.rows)])

    def vstack(self, other):
        if self.ncols != other.ncols:
            raise ValueError("column count mismatch in vstack")
        return Matrix(self.rows + other.rows)

    def submatrix(self, rows, cols):
        return Matrix([[self.rows[i][j] for j in cols] for i in rows])

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.nrows == other.nrows
                and self.ncols == other.ncols
                and all(Fraction(a) == Fraction(b)
                        for r1, r2 in zip(self.rows, other.rows)
                        for a, b in zip(r1, r2)))

    def __hash__(self):
        return hash(tuple(tuple(Fraction(x) for x in row) for row in self.rows))

    def __repr__(self):
        return "Matrix(%r)" % [list(r) for r in self.rows]

    def key(self):
        """Canonical hashable key (entries as normalized fractions)."""
        return tuple(tuple(Fraction(x) for x in row) for row in self.rows)

    # -- elimination ---------------------------------------------------

    def rref(self):
        """Reduced row echelon form over Q.  Returns (R, pivot_columns)."""
        rows = [[Fraction(x) for x in row] for row in self.rows]
        pivots = []
        r = 0
        for c in range(self.ncols):
            if r == self.nrows:
                break
            pr = next((i for i in range(r, self.nrows) if rows[i][c] != 0), None)
            if pr is None:
                continue
            rows[r], rows[pr] = rows[pr], rows[r]
            inv = 1 / rows[r][c]
            rows[r] = [x * inv for x in rows[r]]
            for i in range(self.nrows):
                if i != r and rows[i][c] != 0:
                    f = rows[i][c]
                    rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
            pivots.append(c)
            r += 1
        return Matrix(rows), pivots

    def rank(self):
        return len(self.rref()[1])

    def inverse(self):
        if not self.is_square():
            raise ValueError("inverse of a non-square matrix")
        n = self.nrows
        aug = self.hstack(Matrix.identity(n))
        red, pivots = aug.rref()
        if pivots != list(range(n)):
            raise ValueError("matrix is singular")
        return red.submatrix(range(n), range(n, 2 * n))

    def solve(self, vec):
        """One solution x of self*x = vec over Q, or None."""
        aug = self.hstack(Matrix.column(vec))
        red, pivots = aug.rref()
        if self.ncols in pivots:
            return None
        x = [Fraction(0)] * self.ncols
        for r, c in enumerate(pivots):
            x[c] = red.rows[r][self.ncols]
        return tuple(x)


def det(M: Matrix):
    """Exact determinant.  Integer matrices use fraction-free Bareiss."""
    if not M.is_square():
        raise ValueError("determinant of a non-square matrix")
    n = M.nrows
    if n == 0:
        return 1
    if M.is_integer():
        a = [[int(x) for x in row] for row in M.rows]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                pr = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
                if pr is None:
                    return 0
                a[k], a[pr] = a[pr], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
                a[i][k] = 0
            prev = a[k][k]
        return sign * a[n - 1][n - 1]
    # rational: clear denominators row by row
    scale = Fraction(1)
    rows = []
    for row in M.rows:
        d = lcm(*[Fraction(x).denominator for x in row]) if row else 1
        scale /= d
        rows.append([int(Fraction(x) * d) for x in row])
    return scale * det(Matrix(rows))


def hnf(M: Matrix):
    """Column Hermite normal form.  Returns (H, U) with M*U = H."""
    M = M.to_int()
    m, n = M.nrows, M.ncols
    cols = [list(M.col(j)) for j in range(n)]
    ucols = [list(Matrix.identity(n).col(j)) for j in range(n)]

    def addmul(dst, src, q):
        cols[dst] = [a + q * b for a, b in zip(cols[dst], cols[src])]
        ucols[dst] = [a + q * b for a, b in zip(ucols[dst], ucols[src])]

    def swap(i, j):
        cols[i], cols[j] = cols[j], cols[i]
        ucols[i], ucols[j] = ucols[j], ucols[i]

    def negate(j):
        cols[j] = [-a for a in cols[j]]
        ucols[j] = [-a for a in ucols[j]]

    c = 0
    for r in range(m):
        if c == n:
            break
        # euclidean elimination of row r across columns c..n-1
        while True:
            nz = [j for j in range(c, n) if cols[j][r] != 0]
            if len(nz) <= 1:
                break
            j0 = min(nz, key=lambda j: abs(cols[j][r]))
            for j in nz:
                if j != j0:
                    q = cols[j][r] // cols[j0][r]
                    if q:
                        addmul(j, j0, -q)
        nz = [j for j in range(c, n) if cols[j][r] != 0]
        if not nz:
            continue
        j0 = nz[0]
        if j0 != c:
            swap(c, j0)
        if cols[c][r] < 0:
            negate(c)
        pivot = cols[c][r]
        for j in range(c):
            q = cols[j][r] // pivot
            if q:
                addmul(j, c, -q)
        c += 1
    # zero columns last (columns >= c are zero by construction)
    H = Matrix.from_cols(cols, nrows=m)
    U = Matrix.from_cols(ucols, nrows=n)
    return H, U


def snf(M: Matrix):
    """Smith normal form.  Returns (D, L, R) with L*M*R = D, d1 | d2 | ..."""
    M = M.to_int()
    m, n = M.nrows, M.ncols
    a = [list(row) for row in M.rows]
    L = [list(r) for r in Matrix.identity(m).rows]
    R = [list(r) for r in Matrix.identity(n).rows]

    def row_addmul(i, k, q):
        a[i] = [x + q * y for x, y in zip(a[i], a[k])]
        L[i] = [x + q * y for x, y in zip(L[i], L[k])]

    def col_addmul(j, k, q):
        for row in a:
            row[j] += q * row[k]
        for row in R:
            row[j] += q * row[k]

    def row_swap(i, k):
        a[i], a[k] = a[k], a[i]
        L[i], L[k] = L[k], L[i]

    def col_swap(j, k):
        for row in a:
            row[j], row[k] = row[k], row[j]
        for row in R:
            row[j], row[k] = row[k], row[j]

    def row_neg(i):
        a[i] = [-x for x in a[i]]
        L[i] = [-x for x in L[i]]

    t = 0
    while t < min(m, n):
        # find a nonzero pivot in the trailing block
        pos = None
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if a[i][j] != 0 and (best is None or abs(a[i][j]) < best):
                    best = abs(a[i][j])
                    pos = (i, j)
        if pos is None:
            break
        row_swap(t, pos[0])
        col_swap(t, pos[1])
        while True:
            # clear column t
            dirty = False
            for i in range(t + 1, m):
                if a[i][t] != 0:
                    q = a[i][t] // a[t][t]
                    row_addmul(i, t, -q)
                    if a[i][t] != 0:
                        row_swap(t, i)
                        dirty = True
            for j in range(t + 1, n):
                if a[t][j] != 0:
                    q = a[t][j] // a[t][t]
                    col_addmul(j, t, -q)
                    if a[t][j] != 0:
                        col_swap(t, j)
                        dirty = True
            if not dirty:
                break
        if a[t][t] < 0:
            row_neg(t)
        t += 1
    # enforce divisibility chain
    changed = True
    while changed:
        changed = False
        for i in range(t - 1):
            if a[i + 1][i + 1] % a[i][i] != 0:
                # fold d_{i+1} into column i, then gcd-reduce the 2x2 block
                col_addmul(i, i + 1, 1)
                while a[i + 1][i] != 0:
                    q = a[i][i] // a[i + 1][i]
                    row_addmul(i, i + 1, -q)
                    row_swap(i, i + 1)
                # re-clear the disturbed entries in row i and column i+1
                for j in range(i + 1, n):
                    if a[i][j] != 0:
                        q = a[i][j] // a[i][i]
                        col_addmul(j, i, -q)
                for r2 in range(i + 1, m):
                    if a[r2][i] != 0:
                        q = a[r2][i] // a[i][i]
                        row_addmul(r2, i, -q)
                if a[i][i] < 0:
                    row_neg(i)
                if a[i + 1][i + 1] < 0:
                    row_neg(i + 1)
                changed = True
    return Matrix(a), Matrix(L), Matrix(R)


def kernel_basis(M: Matrix) -> Matrix:
    """Basis of ker(M) as matrix columns.

    The basis is integral and generates the saturated integer kernel
    ker(M) n Z^ncols, hence it is also a Q-basis of the rational kernel.
    """
    if M.ncols == 0:
        return Matrix([[] for _ in range(0)])
    if M.nrows == 0:
        return Matrix.identity(M.ncols)
    if not M.is_integer():
        # row scaling preserves the kernel
        rows = []
        for row in M.rows:
            d = lcm(*[Fraction(x).denominator for x in row]) if row else 1
            rows.append([int(Fraction(x) * d) for x in row])
        M = Matrix(rows)
    H, U = hnf(M)
    zero_cols = [j for j in range(H.ncols)
                 if all(H.rows[i][j] == 0 for i in range(H.nrows))]
    basis = [U.col(j) for j in zero_cols]
    # canonical: HNF of the kernel lattice (kernels of matrices are saturated)
    if not basis:
        return Matrix([[] for _ in range(M.ncols)])
    K, _ = hnf(Matrix.from_cols(basis, nrows=M.ncols))
    keep = [j for j in range(K.ncols)
            if any(K.rows[i][j] != 0 for i in range(K.nrows))]
    return K.submatrix(range(K.nrows), keep)


class IntegerLattice:
    """Finitely generated subgroup of Z^n, canonicalized by column HNF."""

    __slots__ = ("ambient", "basis")

    def __init__(self, ambient, generators):
        """generators: iterable of integer vectors of length `ambient`."""
        gens = [tuple(int(x) for x in g) for g in generators]
        for g in gens:
            if len(g) != ambient:
                raise ValueError("generator/ambient rank mismatch")
        self.ambient = ambient
        if not gens:
            self.basis = ()
        else:
            H, _ = hnf(Matrix.from_cols(gens, nrows=ambient))
            cols = [H.col(j) for j in range(H.ncols)
                    if any(H.rows[i][j] != 0 for i in range(H.nrows))]
            self.basis = tuple(cols)

    @staticmethod
    def from_matrix(M: Matrix):
        return IntegerLattice(M.nrows, M.cols())

    @staticmethod
    def zero(ambient):
        return IntegerLattice(ambient, [])

    @staticmethod
    def full(ambient):
        return IntegerLattice(ambient, Matrix.identity(ambient).cols())

    def matrix(self) -> Matrix:
        return Matrix.from_cols(self.basis, nrows=self.ambient)

    def rank(self):
        return len(self.basis)

    def is_zero(self):
        return not self.basis

    def __eq__(self, other):
        return (isinstance(other, IntegerLattice)
                and self.ambient == other.ambient and self.basis == other.basis)

    def __hash__(self):
        return hash((self.ambient, self.basis))

    def __repr__(self):
        return "IntegerLattice(%d, %r)" % (self.ambient, [list(b) for b in self.basis])

    def contains_vector(self, vec):
        vec = [int(x) if Fraction(x).denominator == 1 else None for x in vec]
        if None in vec:
            return False
        if len(vec) != self.ambient:
            raise ValueError("vector/ambient rank mismatch")
        rem = list(vec)
        cols = list(self.basis)
        # pivot rows are strictly increasing across HNF columns
        for col in cols:
            r = next(i for i in range(self.ambient) if col[i] != 0)
            if rem[r] % col[r] != 0:
                return False
            q = rem[r] // col[r]
            if q:
                rem = [a - q * b for a, b in zip(rem, col)]
        return all(x == 0 for x in rem)


def lattice_sum(a: IntegerLattice, b: IntegerLattice) -> IntegerLattice:
    if a.ambient != b.ambient:
        raise ValueError("ambient rank mismatch")
    return IntegerLattice(a.ambient, list(a.basis) + list(b.basis))


def lattice_intersect(a: IntegerLattice, b: IntegerLattice) -> IntegerLattice:
    if a.ambient != b.ambient:
        raise ValueError("ambient rank mismatch")
    if a.is_zero() or b.is_zero():
        return IntegerLattice.zero(a.ambient)
    A = a.matrix()
    B = b.matrix()
    K = kernel_basis(A.hstack(B))
    top = K.submatrix(range(A.ncols), range(K.ncols))
    gens = (A * top).cols()
    return IntegerLattice(a.ambient, gens)


def lattice_contains(a: IntegerLattice, b: IntegerLattice) -> bool:
    """True iff a is a subgroup of b."""
    if a.ambient != b.ambient:
        raise ValueError("ambient rank mismatch")
    return all(b.contains_vector(g) for g in a.basis)


def saturate(lat: IntegerLattice) -> IntegerLattice:
    """Smallest saturated lattice containing lat: (Q*lat) n Z^n."""
    n = lat.ambient
    if lat.is_zero():
        return lat
    B = lat.matrix()
    N = kernel_basis(B.transpose())  # columns orthogonal to the span
    if N.ncols == 0:
        return IntegerLattice.full(n)
    sat = kernel_basis(N.transpose())
    return IntegerLattice.from_matrix(sat)


def rational_span_intersect_lattice(cols, ambient) -> IntegerLattice:
    """(Q-span of the given rational columns) n Z^ambient."""
    cols = [tuple(Fraction(x) for x in c) for c in cols]
    cols = [c for c in cols if any(x != 0 for x in c)]
    if not cols:
        return IntegerLattice.zero(ambient)
    ints = []
    for c in cols:
        d = lcm(*[x.denominator for x in c])
        ints.append(tuple(int(x * d) for x in c))
    return saturate(IntegerLattice(ambient, ints))


def solve_integer(M: Matrix, vec):
    """One integer solution x of M*x = vec, or None."""
    M = M.to_int()
    aug = M.hstack(Matrix.column([int(v) for v in vec]))
    K = kernel_basis(aug)
    # an integer solution is a kernel vector of (M|vec) with last entry -1;
    # combine kernel basis columns to hit last entry -1 via extended gcd
    last = [K.rows[M.ncols][j] for j in range(K.ncols)]
    coeff = [0] * len(last)
    g = 0
    for j, v in enumerate(last):
        if v == 0:
            continue
        if g == 0:
            g, coeff = v, [0] * len(last)
            coeff[j] = 1
        else:
            # g_new = s*g + t*v
            s, t, g = _xgcd(g, v)
            coeff = [s * c for c in coeff]
            coeff[j] += t
    if g != 1:
        return None
    mult = -1
    sol = [0] * (M.ncols + 1)
    for j, c in enumerate(coeff):
        if c:
            for i in range(M.ncols + 1):
                sol[i] += mult * c * K.rows[i][j]
    assert sol[M.ncols] == -1
    return tuple(sol[: M.ncols])


def _xgcd(a, b):
    """Returns (s, t, g) with s*a + t*b = g = gcd(a, b), g >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_s, old_t, old_r
