"""Exact univariate polynomial arithmetic and factorization over Q.

Polynomials are dense coefficient lists, low degree first, with int or
Fraction entries.  Rational factorization runs squarefree decomposition
(Yun), factorization modulo a good prime (Cantor-Zassenhaus with a
deterministic seed), quadratic Hensel lifting to the Mignotte bound, and
subset recombination.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import gcd, isqrt, lcm, prod


# ---------------------------------------------------------------------------
# basic arithmetic


def trim(f):
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def degree(f):
    return len(trim(f)) - 1


def poly_add(f, g):
    n = max(len(f), len(g))
    return trim([(f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0)
                 for i in range(n)])


def poly_sub(f, g):
    n = max(len(f), len(g))
    return trim([(f[i] if i < len(f) else 0) - (g[i] if i < len(g) else 0)
                 for i in range(n)])


def poly_neg(f):
    return [-a for a in f]


def poly_scale(f, c):
    if c == 0:
        return []
    return [c * a for a in f]


def poly_mul(f, g):
    f, g = trim(f), trim(g)
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                if b:
                    out[i + j] += a * b
    return out


def poly_pow(f, n):
    out = [1]
    base = list(f)
    while n:
        if n & 1:
            out = poly_mul(out, base)
        n >>= 1
        if n:
            base = poly_mul(base, base)
    return out


def poly_divmod(f, g):
    """Division with remainder over Q."""
    f = [Fraction(a) for a in trim(f)]
    g = [Fraction(a) for a in trim(g)]
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(0, len(f) - len(g) + 1)
    inv = 1 / g[-1]
    while len(f) >= len(g):
        c = f[-1] * inv
        d = len(f) - len(g)
        q[d] = c
        for i, b in enumerate(g):
            f[d + i] -= c * b
        f = trim(f)
        if not f:
            break
    return trim(q), trim(f)


def poly_div_exact(f, g):
    q, r = poly_divmod(f, g)
    if r:
        raise ValueError("inexact polynomial division")
    return q


def poly_mod(f, g):
    return poly_divmod(f, g)[1]


def poly_gcd(f, g):
    """Monic gcd over Q."""
    f, g = trim(f), trim(g)
    while g:
        f, g = g, poly_mod(f, g)
    if not f:
        return []
    inv = 1 / Fraction(f[-1])
    return [Fraction(a) * inv for a in f]


def poly_deriv(f):
    return trim([i * a for i, a in enumerate(f)][1:])


def poly_eval(f, x):
    out = 0
    for a in reversed(trim(f)):
        out = out * x + a
    return out


def poly_compose(f, g):
    """f(g(X))."""
    out = []
    for a in reversed(trim(f)):
        out = poly_add(poly_mul(out, g), [a])
    return out


def poly_shift(f, c):
    """f(X + c)."""
    return poly_compose(f, [c, 1])


def content(f):
    """Positive rational content; content([]) = 0."""
    f = trim(f)
    if not f:
        return Fraction(0)
    fracs = [Fraction(a) for a in f]
    num = gcd(*[abs(x.numerator) for x in fracs])
    den = lcm(*[x.denominator for x in fracs])
    return Fraction(num, den)


def primitive(f):
    """(content, primitive integer polynomial with positive lc)."""
    f = trim(f)
    if not f:
        return Fraction(0), []
    c = content(f)
    g = [int(Fraction(a) / c) for a in f]
    if g[-1] < 0:
        return -c, [-a for a in g]
    return c, g


def monic(f):
    f = trim(f)
    if not f:
        return []
    inv = 1 / Fraction(f[-1])
    return [Fraction(a) * inv for a in f]


def is_squarefree(f):
    return degree(poly_gcd(f, poly_deriv(f))) == 0


# ---------------------------------------------------------------------------
# arithmetic mod p


def gf_trim(f, p):
    f = [a % p for a in f]
    while f and f[-1] == 0:
        f.pop()
    return f


def gf_mul(f, g, p):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return gf_trim(out, p)


def gf_divmod(f, g, p):
    f = list(f)
    if not g:
        raise ZeroDivisionError
    inv = pow(g[-1], p - 2, p)
    q = [0] * max(0, len(f) - len(g) + 1)
    while len(f) >= len(g):
        c = f[-1] * inv % p
        d = len(f) - len(g)
        q[d] = c
        for i, b in enumerate(g):
            f[d + i] = (f[d + i] - c * b) % p
        while f and f[-1] % p == 0:
            f.pop()
    return gf_trim(q, p), gf_trim(f, p)


def gf_mod(f, g, p):
    return gf_divmod(f, g, p)[1]


def gf_gcd(f, g, p):
    f, g = gf_trim(f, p), gf_trim(g, p)
    while g:
        f, g = g, gf_mod(f, g, p)
    if not f:
        return []
    inv = pow(f[-1], p - 2, p)
    return [a * inv % p for a in f]


def gf_monic(f, p):
    f = gf_trim(f, p)
    if not f:
        return []
    inv = pow(f[-1], p - 2, p)
    return [a * inv % p for a in f]


def gf_pow_mod(f, n, g, p):
    out = [1]
    base = gf_mod(f, g, p)
    while n:
        if n & 1:
            out = gf_mod(gf_mul(out, base, p), g, p)
        n >>= 1
        if n:
            base = gf_mod(gf_mul(base, base, p), g, p)
    return out


def gf_factor_squarefree(f, p, rng):
    """Cantor-Zassenhaus for squarefree monic f mod p (p odd)."""
    factors = []
    # distinct-degree splitting
    todo = []
    h = [0, 1]  # X
    v = gf_monic(f, p)
    d = 0
    while degree(v) > 0:
        d += 1
        if 2 * d > degree(v):
            todo.append((v, degree(v)))
            break
        h = gf_pow_mod(h, p, v, p)
        g = gf_gcd(poly_sub(h, [0, 1]), v, p)
        if degree(g) > 0:
            todo.append((g, d))
            v = gf_divmod(v, g, p)[0]
            h = gf_mod(h, v, p)
    # equal-degree splitting
    for g, d in todo:
        stack = [g]
        while stack:
            u = stack.pop()
            if degree(u) == d:
                factors.append(gf_monic(u, p))
                continue
            while True:
                t = [rng.randrange(p) for _ in range(degree(u))] + [1]
                t = gf_trim(t, p)
                if degree(t) < 1:
                    continue
                w = gf_pow_mod(t, (p ** d - 1) // 2, u, p)
                w = poly_sub(w, [1])
                w = gf_gcd(gf_trim(w, p), u, p)
                if 0 < degree(w) < degree(u):
                    stack.append(w)
                    stack.append(gf_divmod(u, w, p)[0])
                    break
    factors.sort()
    return factors


# ---------------------------------------------------------------------------
# Hensel lifting


def _hensel_step(f, g, h, s, t, m):
    """One quadratic lift step: f = g*h mod m, s*g + t*h = 1 mod m.

    Returns (G, H, S, T) with the same relations mod m*m.  f, g monic*?:
    h monic, g*h = f mod m, deg s < deg h, deg t < deg g.
    """
    mm = m * m

    def red(u):
        return [a % mm for a in u]

    e = red(poly_sub(f, poly_mul(g, h)))
    q, r = _zz_divmod_mod(poly_mul(s, e), h, mm)
    G = red(poly_add(poly_add(g, poly_mul(t, e)), poly_mul(q, g)))
    H = red(poly_add(h, r))
    b = red(poly_sub(poly_add(poly_mul(s, G), poly_mul(t, H)), [1]))
    c, d = _zz_divmod_mod(poly_mul(s, b), H, mm)
    S = red(poly_sub(s, d))
    T = red(poly_sub(poly_sub(t, poly_mul(t, b)), poly_mul(c, G)))
    return trim(G), trim(H), trim(S), trim(T)


def _zz_divmod_mod(f, g, m):
    """Division with remainder mod m by a monic g."""
    f = [a % m for a in trim(f)]
    g = trim(g)
    assert g and g[-1] % m == 1
    q = [0] * max(0, len(f) - len(g) + 1)
    while len(f) >= len(g):
        c = f[-1] % m
        d = len(f) - len(g)
        q[d] = c
        for i, b in enumerate(g):
            f[d + i] = (f[d + i] - c * b) % m
        while f and f[-1] % m == 0:
            f.pop()
    return trim(q), trim(f)


def _hensel_tree(f, mods, p, bound):
    """Lift the factorization f = prod(mods) mod p to mod p^B >= bound.

    f must be monic mod p^B arithmetic-wise (we lift the monic image).
    Returns (p^B, lifted factor list, ordered as mods).
    """
    if len(mods) == 1:
        m = p
        while m < bound:
            m *= m
        return m, [ _monic_mod(f, m) ]
    k = len(mods) // 2
    g0 = [1]
    for u in mods[:k]:
        g0 = gf_mul(g0, u, p)
    h0 = [1]
    for u in mods[k:]:
        h0 = gf_mul(h0, u, p)
    s0, t0 = _gf_xgcd(g0, h0, p)
    g, h, s, t = g0, h0, s0, t0
    m = p
    while m < bound:
        g, h, s, t = _hensel_step(f, g, h, s, t, m)
        m *= m
    _, left = _hensel_tree(g, mods[:k], p, bound)
    _, right = _hensel_tree(h, mods[k:], p, bound)
    return m, left + right


def _monic_mod(f, m):
    f = [a % m for a in trim(f)]
    assert f and f[-1] % m == 1
    return f


def _gf_xgcd(f, g, p):
    """(s, t) with s*f + t*g = 1 mod p for coprime monic f, g."""
    r0, r1 = gf_trim(f, p), gf_trim(g, p)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = gf_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, gf_trim(poly_sub(s0, gf_mul(q, s1, p)), p)
        t0, t1 = t1, gf_trim(poly_sub(t0, gf_mul(q, t1, p)), p)
    assert degree(r0) == 0
    inv = pow(r0[0], p - 2, p)
    return [a * inv % p for a in s0], [a * inv % p for a in t0]


# ---------------------------------------------------------------------------
# Zassenhaus


_PRIMES = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61,
           67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131,
           137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191, 193, 197]


def _sym_mod(a, m):
    a %= m
    if 2 * a > m:
        a -= m
    return a


def _mignotte_bound(f):
    """Bound on coefficients of any monic factor of monic integer f."""
    n = degree(f)
    norm = isqrt(sum(int(a) * int(a) for a in f)) + 1
    return (1 << n) * norm


def factor_squarefree_integer(f, degree_block=1):
    """Factor a squarefree primitive integer polynomial with lc > 0.

    degree_block: all irreducible factors are known to have degree
    divisible by this number (used to prune recombination).
    Returns a list of primitive irreducible integer factors.
    """
    f = trim(f)
    n = degree(f)
    if n <= 0:
        return []
    if n == 1:
        return [f]
    lc = f[-1]
    if lc != 1:
        # monicize by X -> X/lc, factor, substitute back
        F = [int(a) * lc ** (n - 1 - i) for i, a in enumerate(f[:-1])] + [1]
        out = []
        for G in factor_squarefree_integer(F, degree_block):
            sub = [int(a) * lc ** i for i, a in enumerate(G)]
            _, g = primitive(sub)
            out.append(g)
        out.sort(key=lambda g: (degree(g), g))
        return out

    # choose a prime keeping f squarefree, preferring few modular factors
    best = None
    tried = 0
    for p in _PRIMES:
        fp = gf_trim(f, p)
        if degree(fp) != n:
            continue
        if degree(gf_gcd(fp, gf_trim(poly_deriv(fp), p), p)) != 0:
            continue
        seed = p
        for a in f:
            seed = (seed * 1000003 + int(a) % p) % (1 << 61)
        facs = gf_factor_squarefree(fp, p, random.Random(seed))
        tried += 1
        if best is None or len(facs) < len(best[1]):
            best = (p, facs)
        if tried >= 4 or len(facs) == 1:
            break
    if best is None:
        raise ArithmeticError("no good prime found for factorization")
    p, mods = best
    if len(mods) == 1:
        return [f]
    bound = 2 * _mignotte_bound(f) + 1
    m, lifted = _hensel_tree(f, mods, p, bound)

    factors = []
    remaining = list(range(len(mods)))
    fcur = list(f)

    def subset_poly(idx):
        g = [1]
        for i in idx:
            g = [c % m for c in poly_mul(g, lifted[i])]
        return [_sym_mod(a, m) for a in g]

    size = 1
    while 2 * size <= len(remaining):
        found = True
        while found:
            found = False
            for idx in _subsets(remaining, size):
                degsum = sum(degree(lifted[i]) for i in idx)
                if degsum % degree_block != 0:
                    continue
                # cheap constant-coefficient divisibility test
                c0 = 1
                for i in idx:
                    c0 = c0 * lifted[i][0] % m
                c0 = _sym_mod(c0, m)
                f0 = fcur[0]
                if f0 != 0 and (c0 == 0 or f0 % c0 != 0):
                    continue
                cand = subset_poly(idx)
                q, r = poly_divmod(fcur, cand)
                if not r:
                    factors.append([int(a) for a in cand])
                    fcur = [int(a) for a in q]
                    remaining = [i for i in remaining if i not in idx]
                    found = True
                    break
        size += 1
    if degree(fcur) > 0:
        factors.append(fcur)
    factors.sort(key=lambda g: (degree(g), g))
    return factors


def _subsets(items, size):
    import itertools
    return itertools.combinations(items, size)


def factor_rational(f):
    """Factor f over Q.

    Returns (constant, [(monic irreducible factor, multiplicity), ...]) with
    constant * prod(factor^mult) == f.  Factors are sorted by (degree,
    coefficients).
    """
    f = trim(f)
    if not f:
        raise ValueError("cannot factor the zero polynomial")
    if degree(f) == 0:
        return Fraction(f[0]), []
    c, g = primitive(f)
    out = {}
    for part, mult in _yun_squarefree(g):
        cc, part = primitive(part)
        c *= cc ** mult
        for irr in factor_squarefree_integer(part):
            lead = Fraction(irr[-1])
            c *= lead ** mult
            key = tuple(monic(irr))
            out[key] = out.get(key, 0) + mult
    factors = sorted(out.items(), key=lambda kv: (len(kv[0]), kv[0]))
    return Fraction(c), [(list(k), m) for k, m in factors]


def _yun_squarefree(f):
    """Yun's algorithm: [(squarefree part, multiplicity), ...] over Q."""
    f = [Fraction(a) for a in trim(f)]
    out = []
    g = poly_gcd(f, poly_deriv(f))
    if degree(g) == 0:
        return [(f, 1)]
    w = poly_div_exact(f, g)
    y = poly_div_exact(poly_deriv(f), g)
    z = poly_sub(y, poly_deriv(w))
    i = 1
    while degree(w) > 0 or z:
        h = poly_gcd(w, z)
        if degree(h) > 0:
            out.append((h, i))
        if degree(w) == 0:
            break
        w = poly_div_exact(w, h)
        y = poly_div_exact(z, h)
        z = poly_sub(y, poly_deriv(w))
        i += 1
    return out


def is_irreducible(f):
    f = trim(f)
    if degree(f) < 1:
        return False
    _, factors = factor_rational(f)
    return len(factors) == 1 and factors[0][1] == 1


# ---------------------------------------------------------------------------
# resultants and cyclotomic polynomials


def resultant(f, g):
    """Res_X(f, g) over Q via the Euclidean recursion."""
    f = [Fraction(a) for a in trim(f)]
    g = [Fraction(a) for a in trim(g)]
    if not f or not g:
        return Fraction(0)
    res = Fraction(1)
    while True:
        if degree(g) == 0:
            return res * g[0] ** degree(f)
        if degree(f) < degree(g):
            res *= (-1) ** (degree(f) * degree(g))
            f, g = g, f
            continue
        r = poly_mod(f, g)
        if not r:
            return Fraction(0)
        res *= (-1) ** (degree(f) * degree(g))
        res *= Fraction(g[-1]) ** (degree(f) - degree(r))
        f, g = g, r


_CYCLOTOMIC_CACHE = {}


def cyclotomic_polynomial(n):
    """The n-th cyclotomic polynomial as an integer list."""
    if n < 1:
        raise ValueError("n must be positive")
    if n not in _CYCLOTOMIC_CACHE:
        f = [-1] + [0] * (n - 1) + [1]  # X^n - 1
        for d in range(1, n):
            if n % d == 0:
                f = [int(a) for a in poly_div_exact(f, cyclotomic_polynomial(d))]
        _CYCLOTOMIC_CACHE[n] = [int(a) for a in f]
    return list(_CYCLOTOMIC_CACHE[n])
