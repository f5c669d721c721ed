"""Number fields, exact homomorphisms, and factoring over number fields.

A NumberField is Q[X]/(f) for a monic irreducible integral f; elements are
coordinate tuples of Fractions in the power basis.  Factorization over a
field uses Trager's norm method with the deterministic shift sequence
0, 1, -1, 2, -2, ...
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

from .polys import (
    cyclotomic_polynomial,
    degree,
    factor_rational,
    factor_squarefree_integer,
    gf_gcd,
    gf_trim,
    is_irreducible,
    poly_deriv,
    poly_div_exact,
    poly_divmod,
    poly_eval,
    poly_gcd,
    poly_mod,
    poly_mul,
    poly_sub,
    primitive,
    resultant,
    trim,
)

_MOD_PRIMES = [1000003, 1000033, 1000037, 1000039, 1000081, 1000099,
               1000117, 1000121, 1000133, 1000151]


class NumberField:
    """Q[X]/(defining), defining monic irreducible with integer coefficients."""

    def __init__(self, defining, check_irreducible=False):
        defining = [int(a) for a in trim(defining)]
        if not defining or defining[-1] != 1:
            raise ValueError("defining polynomial must be monic integral")
        if check_irreducible and not is_irreducible(defining):
            raise ValueError("defining polynomial is reducible")
        self.defining = tuple(defining)
        self.degree = len(defining) - 1
        if self.degree < 1:
            raise ValueError("defining polynomial must have positive degree")
        # reduction table: X^k mod defining for k = degree .. 2*degree-2
        red = []
        cur = [Fraction(-a) for a in defining[:-1]]
        red.append(tuple(cur))
        for _ in range(self.degree - 2):
            cur = [Fraction(0)] + list(cur)
            if len(cur) > self.degree:
                top = cur.pop()
                cur = [c + top * r for c, r in zip(cur, red[0])]
            red.append(tuple(cur))
        self._red = red

    # -- elements -------------------------------------------------------

    def zero(self):
        return (Fraction(0),) * self.degree

    def one(self):
        return self.coerce(1)

    def gen(self):
        if self.degree == 1:
            return (Fraction(-self.defining[0]),)
        return tuple(Fraction(1 if i == 1 else 0) for i in range(self.degree))

    def coerce(self, rational):
        return (Fraction(rational),) + (Fraction(0),) * (self.degree - 1)

    def element(self, coords):
        coords = [Fraction(c) for c in coords]
        if len(coords) != self.degree:
            raise ValueError("coordinate length mismatch")
        return tuple(coords)

    def from_poly(self, coeffs):
        """Element represented by a rational polynomial in the generator."""
        rem = poly_mod([Fraction(c) for c in coeffs], list(self.defining))
        rem = list(rem) + [Fraction(0)] * (self.degree - len(rem))
        return tuple(rem)

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x for x in a)

    def scale(self, a, c):
        c = Fraction(c)
        return tuple(c * x for x in a)

    def mul(self, a, b):
        d = self.degree
        prod = [Fraction(0)] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        out = prod[:d]
        for k in range(d, 2 * d - 1):
            c = prod[k]
            if c:
                row = self._red[k - d]
                out = [o + c * r for o, r in zip(out, row)]
        return tuple(out)

    def pow(self, a, n):
        out = self.one()
        base = a
        while n:
            if n & 1:
                out = self.mul(out, base)
            n >>= 1
            if n:
                base = self.mul(base, base)
        return out

    def inv(self, a):
        apoly = trim(list(a))
        if not apoly:
            raise ZeroDivisionError("inverse of zero field element")
        # extended euclid in Q[X] against the defining polynomial
        r0, r1 = [Fraction(c) for c in self.defining], apoly
        t0, t1 = [], [Fraction(1)]
        while degree(r1) > 0:
            q, r = poly_divmod(r0, r1)
            r0, r1 = r1, r
            t0, t1 = t1, poly_sub(t0, poly_mul(q, t1))
        if not r1:
            raise ZeroDivisionError("element is not invertible")
        inv_c = 1 / Fraction(r1[0])
        res = [inv_c * c for c in t1]
        return self.from_poly(res)

    def is_zero(self, a):
        return all(x == 0 for x in a)

    def is_rational(self, a):
        return all(x == 0 for x in a[1:])

    def eval_poly(self, coeffs, x):
        """Evaluate a polynomial with rational or field coefficients at x."""
        out = self.zero()
        for c in reversed(list(coeffs)):
            out = self.mul(out, x)
            cc = c if isinstance(c, tuple) else self.coerce(c)
            out = self.add(out, cc)
        return out

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.defining == other.defining

    def __hash__(self):
        return hash(self.defining)

    def __repr__(self):
        return "NumberField(%r)" % (list(self.defining),)


class FieldHom:
    """Homomorphism source -> target, determined by the generator image."""

    def __init__(self, source: NumberField, target: NumberField, gen_image):
        self.source = source
        self.target = target
        self.gen_image = target.element(gen_image)
        img = target.eval_poly(list(source.defining), self.gen_image)
        if not target.is_zero(img):
            raise ValueError("generator image is not a root of the defining polynomial")
        # images of the power basis
        powers = [target.one()]
        for _ in range(source.degree - 1):
            powers.append(target.mul(powers[-1], self.gen_image))
        self._powers = powers

    def apply(self, elem):
        out = self.target.zero()
        for c, p in zip(elem, self._powers):
            if c:
                out = self.target.add(out, self.target.scale(p, c))
        return out

    def matrix_columns(self):
        """Images of the source power basis, as column tuples."""
        return list(self._powers)

    def compose(self, other: "FieldHom") -> "FieldHom":
        """self after other (other: A->B, self: B->C gives A->C)."""
        if other.target != self.source:
            raise ValueError("composition mismatch")
        return FieldHom(other.source, self.target, self.apply(other.gen_image))

    def is_identity(self):
        return self.source == self.target and self.gen_image == self.source.gen()

    def inverse(self) -> "FieldHom":
        if self.source.degree != self.target.degree:
            raise ValueError("not invertible")
        # solve for the preimage of the target generator
        from .linalg import Matrix
        cols = [list(p) for p in self._powers]
        M = Matrix.from_cols(cols, nrows=self.target.degree)
        sol = M.solve(self.target.gen())
        if sol is None:
            raise ValueError("hom is not surjective")
        return FieldHom(self.target, self.source, sol)

    def __eq__(self, other):
        return (isinstance(other, FieldHom) and self.source == other.source
                and self.target == other.target
                and self.gen_image == other.gen_image)

    def __hash__(self):
        return hash((self.source, self.target, self.gen_image))

    def __repr__(self):
        return "FieldHom(%r -> %r, gen -> %r)" % (
            list(self.source.defining), list(self.target.defining),
            list(self.gen_image))


def rational_field():
    """Q presented as Q[X]/(X)."""
    return NumberField([0, 1])


def field_from_min_poly(minpoly):
    """NumberField from a monic rational minimal polynomial.

    The primitive element is scaled to make the defining polynomial
    integral: returns (field, scale) where scale*original_root is the new
    generator.
    """
    f = [Fraction(a) for a in trim(minpoly)]
    if not f or f[-1] != 1:
        raise ValueError("minimal polynomial must be monic")
    d = degree(f)
    dens = [f[i].denominator for i in range(d)]
    scale = 1
    # smallest c with c^(d-i) * f_i integral for all i
    while True:
        ok = all((f[i] * scale ** (d - i)).denominator == 1 for i in range(d))
        if ok:
            break
        bad = next(i for i in range(d) if (f[i] * scale ** (d - i)).denominator != 1)
        scale *= min(p for p in _prime_factors((f[bad] * scale ** (d - bad)).denominator))
    coeffs = [int(f[i] * scale ** (d - i)) for i in range(d)] + [1]
    return NumberField(coeffs), scale


def _prime_factors(n):
    n = abs(int(n))
    out = set()
    d = 2
    while d * d <= n:
        while n % d == 0:
            out.add(d)
            n //= d
        d += 1
    if n > 1:
        out.add(n)
    return out


# ---------------------------------------------------------------------------
# cyclotomic fields


class CyclotomicField(NumberField):
    """Q(zeta_e) with the distinguished root of unity zeta_e."""

    def __init__(self, e):
        if e < 1:
            raise ValueError("order must be positive")
        super().__init__(cyclotomic_polynomial(e) if e > 1 else [-1, 1])
        self.order = e

    @property
    def zeta(self):
        if self.order == 1:
            return self.one()
        if self.degree == 1:
            # e = 2: zeta = -1
            return self.coerce(-1)
        return self.gen()

    def zeta_power(self, k):
        return self.pow(self.zeta, k % self.order if self.order > 1 else 0)

    def automorphism(self, a) -> FieldHom:
        """The automorphism zeta -> zeta^a for a coprime to the order."""
        from math import gcd as _gcd
        if _gcd(a, self.order) != 1:
            raise ValueError("exponent not coprime to the order")
        return FieldHom(self, self, self.zeta_power(a))


def cyclotomic_field(e) -> CyclotomicField:
    return CyclotomicField(e)


# ---------------------------------------------------------------------------
# Trager factorization


def _kpoly_trim(K, f):
    f = list(f)
    while f and K.is_zero(f[-1]):
        f.pop()
    return f


def _kpoly_mul(K, f, g):
    if not f or not g:
        return []
    out = [K.zero() for _ in range(len(f) + len(g) - 1)]
    for i, a in enumerate(f):
        if not K.is_zero(a):
            for j, b in enumerate(g):
                if not K.is_zero(b):
                    out[i + j] = K.add(out[i + j], K.mul(a, b))
    return _kpoly_trim(K, out)


def _kpoly_divmod(K, f, g):
    f = list(f)
    g = _kpoly_trim(K, g)
    if not g:
        raise ZeroDivisionError
    inv = K.inv(g[-1])
    q = [K.zero()] * max(0, len(f) - len(g) + 1)
    while len(f) >= len(g):
        c = K.mul(f[-1], inv)
        d = len(f) - len(g)
        q[d] = c
        for i, b in enumerate(g):
            f[d + i] = K.sub(f[d + i], K.mul(c, b))
        f = _kpoly_trim(K, f)
    return q, f


def _kpoly_gcd(K, f, g):
    f, g = _kpoly_trim(K, f), _kpoly_trim(K, g)
    while g:
        f, g = g, _kpoly_divmod(K, f, g)[1]
    if not f:
        return []
    inv = K.inv(f[-1])
    return [K.mul(a, inv) for a in f]


def _kpoly_monic(K, f):
    f = _kpoly_trim(K, f)
    if not f:
        return []
    inv = K.inv(f[-1])
    return [K.mul(a, inv) for a in f]


def _kpoly_deriv(K, f):
    return _kpoly_trim(K, [K.scale(a, i) for i, a in enumerate(f)][1:])


def _norm_polynomial(K, f, shift):
    """Res_Y(defining(Y), f(X - shift*Y)) for a K-coefficient polynomial f.

    Evaluation/interpolation modulo word-size primes with CRT
    reconstruction; the input is scaled to integer coordinates first so the
    norm has integer coefficients (the scale is returned separately).
    Returns an integer coefficient list of the norm of the scaled input.
    """
    # scale f to integer coordinates; roots/gcd structure is unaffected
    dens = [c.denominator for coef in f for c in coef]
    den = lcm(*dens) if dens else 1
    fint = [tuple(int(c * den) for c in coef) for coef in f]
    g = [int(a) for a in K.defining]
    d = len(fint) - 1
    n = K.degree
    deg_norm = d * n
    npoints = deg_norm + 1
    points = list(range(-(npoints // 2), npoints - npoints // 2))

    # coefficient bound: |roots of g| <= rho, per-conjugate factor has
    # sup-norm <= ||f||_1 * (1+|s|rho)^d, product of n polynomials of deg d
    rho = 1 + max(abs(a) for a in g[:-1]) if n > 0 else 1
    norm1 = sum(max(abs(c) for c in coef) * (n) for coef in fint) + 1
    bound = ((d + 1) ** n) * (norm1 * (1 + abs(shift) * rho) ** d) ** n
    bound = 2 * bound + 1

    # g is monic, so Res(g, h) mod p = Res(g mod p, h mod p) holds for every
    # prime even when the degree of h drops modulo p
    residues = []
    primes = []
    mprod = 1
    for p in _crt_primes():
        gp = [a % p for a in g]
        vals = [_gf_resultant(gp, _eval_shifted_mod(fint, x0, shift, p), p)
                for x0 in points]
        residues.append(_gf_newton_interpolate(points, vals, p))
        primes.append(p)
        mprod *= p
        if mprod > bound:
            break
    # CRT per coefficient
    out = []
    for i in range(npoints):
        rems = [(res[i] if i < len(res) else 0) for res in residues]
        c = _crt(rems, primes, mprod)
        if 2 * c > mprod:
            c -= mprod
        out.append(c)
    return trim(out)


def _eval_shifted_mod(fint, x0, shift, p):
    """f(x0 - shift*Y) mod p as a Y-polynomial (int lists mod p)."""
    h = []
    base = [x0 % p, (-shift) % p]
    powcur = [1]
    d = len(fint) - 1
    for i, coef in enumerate(fint):
        cpoly = [c % p for c in coef]
        term = _gf_mul_small(cpoly, powcur, p)
        h = _padd_mod(h, term, p)
        if i < d:
            powcur = _gf_mul_small(powcur, base, p)
    while h and h[-1] == 0:
        h.pop()
    return h


def _gf_mul_small(f, g, p):
    if not any(f) or not any(g):
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                if b:
                    out[i + j] = (out[i + j] + a * b) % p
    return out


def _padd_mod(f, g, p):
    n = max(len(f), len(g))
    return [((f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0)) % p
            for i in range(n)]


def _gf_resultant(f, g, p):
    """Res(f, g) mod p via the Euclidean recursion (f, g trimmed mod p)."""
    f = [a % p for a in f]
    g = [a % p for a in g]
    while f and f[-1] == 0:
        f.pop()
    while g and g[-1] == 0:
        g.pop()
    if not f or not g:
        return 0
    res = 1
    while True:
        if len(g) == 1:
            return res * pow(g[0], len(f) - 1, p) % p
        if len(f) < len(g):
            if ((len(f) - 1) * (len(g) - 1)) % 2 == 1:
                res = -res % p
            f, g = g, f
            continue
        # r = f mod g
        r = list(f)
        inv = pow(g[-1], p - 2, p)
        while len(r) >= len(g):
            c = r[-1] * inv % p
            dd = len(r) - len(g)
            for i, b in enumerate(g):
                r[dd + i] = (r[dd + i] - c * b) % p
            while r and r[-1] == 0:
                r.pop()
        if not r:
            return 0
        if ((len(f) - 1) * (len(g) - 1)) % 2 == 1:
            res = -res % p
        res = res * pow(g[-1], len(f) - len(r), p) % p
        f, g = g, r


def _gf_newton_interpolate(xs, ys, p):
    n = len(xs)
    coeffs = [y % p for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            diff = (coeffs[i] - coeffs[i - 1]) % p
            coeffs[i] = diff * pow((xs[i] - xs[i - j]) % p, p - 2, p) % p
    poly = []
    for i in range(n - 1, -1, -1):
        poly = _gf_mul_small(poly, [(-xs[i]) % p, 1], p)
        poly = _padd_mod(poly, [coeffs[i]], p)
    while poly and poly[-1] == 0:
        poly.pop()
    return poly


_CRT_PRIME_CACHE = []


def _crt_primes():
    """Deterministic stream of ~62-bit primes."""
    for p in _CRT_PRIME_CACHE:
        yield p
    cand = _CRT_PRIME_CACHE[-1] - 2 if _CRT_PRIME_CACHE else (1 << 62) - 57
    while True:
        while not _is_prime_64(cand):
            cand -= 2
        _CRT_PRIME_CACHE.append(cand)
        yield cand
        cand -= 2


def _is_prime_64(n):
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    # deterministic Miller-Rabin bases for n < 3.3 * 10^24
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _crt(rems, primes, mprod):
    total = 0
    for r, p in zip(rems, primes):
        m = mprod // p
        total += r * m * pow(m, p - 2, p)
    return total % mprod


def _is_squarefree_fast(f):
    """Squarefree test for an integer polynomial via modular gcds."""
    f = trim(f)
    if degree(f) <= 1:
        return True
    fd = poly_deriv(f)
    for p in _MOD_PRIMES:
        fp = gf_trim(f, p)
        if degree(fp) != degree(f):
            continue
        g = gf_gcd(fp, gf_trim(fd, p), p)
        if degree(g) == 0:
            return True
    # exact fallback
    return degree(poly_gcd(f, fd)) == 0


def _shift_sequence():
    yield 0
    k = 1
    while True:
        yield k
        yield -k
        k += 1


def factor_over_field(f, K: NumberField):
    """Complete factorization over K of a polynomial with K coefficients.

    f is a list of K-elements (rationals are coerced).  Returns a list of
    (monic irreducible K-polynomial, multiplicity); the product over all
    pairs times the leading coefficient reproduces f.
    """
    f = [c if isinstance(c, tuple) else K.coerce(c) for c in f]
    f = _kpoly_trim(K, f)
    if not f:
        raise ValueError("cannot factor the zero polynomial")
    if len(f) == 1:
        return []
    f = _kpoly_monic(K, f)
    if K.degree == 1:
        consts = [c[0] for c in f]
        _, facs = factor_rational(consts)
        return [([K.coerce(c) for c in g], m) for g, m in facs]
    # squarefree part
    sqf = _kpoly_divmod(K, f, _kpoly_gcd(K, f, _kpoly_deriv(K, f)))[0]
    sqf = _kpoly_monic(K, sqf)
    parts = _trager_squarefree(sqf, K)
    # multiplicities by trial division
    out = []
    rem = f
    for g in parts:
        mult = 0
        while True:
            q, r = _kpoly_divmod(K, rem, g)
            if _kpoly_trim(K, r):
                break
            rem = q
            mult += 1
        out.append((g, mult))
    out.sort(key=lambda gm: (len(gm[0]), [tuple(c) for c in gm[0]]))
    return out


def _trager_squarefree(f, K: NumberField):
    """Irreducible monic factors of a squarefree monic K-polynomial."""
    if len(f) == 2:
        return [f]
    alpha = K.gen()
    for s in _shift_sequence():
        nint = _norm_polynomial(K, f, s)
        _, nint = primitive(nint)
        if not _is_squarefree_fast(nint):
            continue
        nfactors = factor_squarefree_integer(nint, degree_block=K.degree)
        out = []
        for ni in nfactors:
            # substitute X -> X + s*alpha and gcd against f
            shifted = _kpoly_from_rational_shift(K, ni, s, alpha)
            g = _kpoly_gcd(K, f, shifted)
            if len(g) > 1:
                out.append(g)
        assert sum(len(g) - 1 for g in out) == len(f) - 1, "trager factor mismatch"
        return out
    raise AssertionError("unreachable")


def _kpoly_from_rational_shift(K, poly, s, alpha):
    """poly(X + s*alpha) as a K-coefficient polynomial."""
    out = []
    salpha = K.scale(alpha, s)
    shift_poly = [salpha, K.one()]  # X + s*alpha
    for c in reversed(trim(poly)):
        out = _kpoly_mul(K, out, shift_poly)
        if not out:
            out = [K.coerce(c)]
        else:
            out[0] = K.add(out[0], K.coerce(c))
    return _kpoly_trim(K, out)


def roots_in_field(f, K: NumberField):
    """All roots in K of a polynomial with rational coefficients."""
    f = [Fraction(a) for a in trim(f)]
    if degree(f) < 1:
        return []
    # squarefree part is enough for roots
    g = poly_gcd(f, poly_deriv(f))
    if degree(g) > 0:
        f = poly_div_exact(f, g)
    f = [c / f[-1] for c in f]
    if K.degree == 1:
        roots = []
        for fac, _ in factor_rational(f)[1]:
            if degree(fac) == 1:
                roots.append(K.coerce(-Fraction(fac[0]) / fac[1]))
        return sorted(roots)
    alpha = K.gen()
    for s in _shift_sequence():
        if s == 0:
            continue  # norm of a rational polynomial is a power, never squarefree
        nint = _norm_polynomial(K, [K.coerce(c) for c in f], s)
        _, nint = primitive(nint)
        if not _is_squarefree_fast(nint):
            continue
        nfactors = factor_squarefree_integer(nint, degree_block=K.degree)
        roots = []
        fk = [K.coerce(c) for c in f]
        for ni in nfactors:
            if degree(ni) != K.degree:
                continue
            shifted = _kpoly_from_rational_shift(K, ni, s, alpha)
            g = _kpoly_gcd(K, fk, shifted)
            if len(g) == 2:
                roots.append(K.neg(g[0]))
        return sorted(roots)
    raise AssertionError("unreachable")


def field_isomorphisms(K: NumberField, L: NumberField):
    """All field isomorphisms K -> L (empty iff the fields are not isomorphic)."""
    if K.degree != L.degree:
        return []
    return [FieldHom(K, L, r) for r in roots_in_field(list(K.defining), L)]


def complex_embeddings(K: NumberField):
    """Best-effort numeric embeddings K -> C as coefficient-evaluation roots.

    Returns a list of complex generator images, one per embedding, sorted
    by (real, imag).  Used only for the numeric orthogonality check.
    """
    import numpy as np

    coeffs = [float(c) for c in reversed(K.defining)]
    roots = sorted(np.roots(coeffs), key=lambda z: (round(z.real, 9), round(z.imag, 9)))
    return list(roots)


def embed_element(coords, root):
    """Numeric value of a field element at a complex generator image."""
    out = 0j
    for c in reversed(list(coords)):
        out = out * root + complex(Fraction(c))
    return out
