"""Exact arithmetic in GF(p^e) and small dense matrices over it.

Fields are built as polynomial quotients over a base field, so extension
towers (needed for stabilized fixed-point counts) reuse the same code path.
The defining modulus is always the lexicographically smallest monic
irreducible of the requested degree, which makes every report reproducible.
"""

from __future__ import annotations

import itertools
from functools import lru_cache


class PrimeField:
    """GF(p) with elements represented as ints in [0, p)."""

    def __init__(self, p):
        if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
            raise ValueError("p must be prime, got %r" % (p,))
        self.p = p
        self.order = p
        self.fp_dim = 1

    def zero(self):
        return 0

    def one(self):
        return 1

    def from_int(self, n):
        return n % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of 0 in GF(%d)" % self.p)
        return pow(a, self.p - 2, self.p)

    def pow(self, a, n):
        return pow(a, n, self.p)

    def is_zero(self, a):
        return a % self.p == 0

    def frob(self, a):
        return a

    def inv_frob(self, a):
        return a

    def elements(self):
        return range(self.p)

    def to_fp_vec(self, a):
        return (a % self.p,)

    def fp_basis(self):
        return [1]

    def __repr__(self):
        return "GF(%d)" % self.p


class PolyField:
    """base[t]/(modulus): elements are tuples of base elements, degree-major.

    `modulus` is the monic defining polynomial given by its non-leading
    coefficients (m[0] + m[1] t + ... + m[e-1] t^{e-1} + t^e).
    """

    def __init__(self, base, modulus):
        self.base = base
        self.modulus = tuple(modulus)
        self.deg = len(self.modulus)
        self.p = base.p
        self.order = base.order ** self.deg
        self.fp_dim = base.fp_dim * self.deg

    def zero(self):
        return (self.base.zero(),) * self.deg

    def one(self):
        return (self.base.one(),) + (self.base.zero(),) * (self.deg - 1)

    def from_base(self, a):
        return (a,) + (self.base.zero(),) * (self.deg - 1)

    def from_int(self, n):
        return self.from_base(self.base.from_int(n))

    def gen(self):
        if self.deg == 1:
            return self.from_base(self.base.neg(self.modulus[0]))
        z, o = self.base.zero(), self.base.one()
        return (z, o) + (z,) * (self.deg - 2)

    def add(self, a, b):
        return tuple(self.base.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple(self.base.sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        return tuple(self.base.neg(x) for x in a)

    def is_zero(self, a):
        return all(self.base.is_zero(x) for x in a)

    def mul(self, a, b):
        K, e = self.base, self.deg
        conv = [K.zero()] * (2 * e - 1)
        for i, x in enumerate(a):
            if K.is_zero(x):
                continue
            for j, y in enumerate(b):
                conv[i + j] = K.add(conv[i + j], K.mul(x, y))
        # reduce t^k for k >= e via t^e = -modulus
        for k in range(2 * e - 2, e - 1, -1):
            c = conv[k]
            if K.is_zero(c):
                continue
            conv[k] = K.zero()
            for j, m in enumerate(self.modulus):
                conv[k - e + j] = K.sub(conv[k - e + j], K.mul(c, m))
        return tuple(conv[:e])

    def pow(self, a, n):
        result = self.one()
        while n:
            if n & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            n >>= 1
        return result

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of 0 in %r" % self)
        return self.pow(a, self.order - 2)

    def frob(self, a):
        return self.pow(a, self.p)

    def inv_frob(self, a):
        return self.pow(a, self.order // self.p)

    def elements(self):
        for coeffs in itertools.product(self.base.elements(), repeat=self.deg):
            yield tuple(reversed(coeffs))

    def to_fp_vec(self, a):
        out = []
        for c in a:
            out.extend(self.base.to_fp_vec(c))
        return tuple(out)

    def fp_basis(self):
        basis = []
        for i in range(self.deg):
            for b in self.base.fp_basis():
                elt = [self.base.zero()] * self.deg
                elt[i] = b
                basis.append(tuple(elt))
        return basis

    def __repr__(self):
        return "GF(%d^%d)" % (self.p, self.fp_dim)


# ---------------------------------------------------------------------------
# polynomial helpers over an arbitrary base field (coefficient lists, low
# degree first), used only for irreducibility testing


def _poly_trim(K, f):
    while f and K.is_zero(f[-1]):
        f.pop()
    return f


def _poly_mod(K, f, g):
    # g monic
    f = list(f)
    dg = len(g) - 1
    while len(f) - 1 >= dg and f:
        c = f[-1]
        if not K.is_zero(c):
            shift = len(f) - 1 - dg
            for j in range(dg + 1):
                f[shift + j] = K.sub(f[shift + j], K.mul(c, g[j]))
        f.pop()
    return _poly_trim(K, f)


def _poly_mulmod(K, a, b, g):
    if not a or not b:
        return []
    conv = [K.zero()] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if K.is_zero(x):
            continue
        for j, y in enumerate(b):
            conv[i + j] = K.add(conv[i + j], K.mul(x, y))
    return _poly_mod(K, conv, g)


def _poly_powmod(K, a, n, g):
    result = [K.one()]
    a = _poly_mod(K, list(a), g)
    while n:
        if n & 1:
            result = _poly_mulmod(K, result, a, g)
        a = _poly_mulmod(K, a, a, g)
        n >>= 1
    return result


def _poly_gcd(K, a, b):
    a, b = list(a), list(b)
    while b:
        b_lead_inv = K.inv(b[-1])
        bm = [K.mul(c, b_lead_inv) for c in b]
        a, b = b, _poly_mod(K, a, bm)
    return a


def _is_irreducible(K, coeffs):
    """coeffs: non-leading coefficients of a monic degree-e polynomial.

    Incremental distinct-degree test: g is reducible iff it shares a factor
    with x^(q^k) - x for some k <= e/2; almost all composites die at k = 1,
    which keeps the lexicographic search cheap even for deep towers.
    """
    e = len(coeffs)
    if e == 1:
        return True
    g = list(coeffs) + [K.one()]
    x = [K.zero(), K.one()]
    q = K.order
    xq = x
    for _ in range(e // 2):
        xq = _poly_powmod(K, xq, q, g)
        diff = _poly_trim(K, [K.sub(a, b) for a, b in
                              itertools.zip_longest(xq, x,
                                                    fillvalue=K.zero())])
        if not diff:
            return False  # all irreducible factors have small degree
        gcd = _poly_gcd(K, g, diff)
        if len(gcd) - 1 > 0:
            return False
    return True


def _random_element(K, rng):
    if isinstance(K, PrimeField):
        return rng.randrange(K.p)
    return tuple(_random_element(K.base, rng) for _ in range(K.deg))


def seeded_irreducible(K, e, seed=0):
    """Non-leading coefficients of a monic irreducible of degree e over K.

    Deterministic seeded search (expected ~e draws); used for tower layers
    whose base is too large for the lexicographic scan.
    """
    import random

    rng = random.Random("%d:%d:%d" % (K.order, e, seed))
    while True:
        cand = tuple(_random_element(K, rng) for _ in range(e))
        if _is_irreducible(K, cand):
            return cand


def smallest_irreducible(K, e):
    """Non-leading coefficients of the lex-least monic irreducible of degree e."""
    if e == 1:
        # t - a is always irreducible; take a = 0 unless that gives t | t
        # (degree-1 extensions only appear as trivial tower layers)
        for a in K.elements():
            return (K.neg(a),)
    base_elts = list(K.elements())
    for coeffs in itertools.product(base_elts, repeat=e):
        cand = tuple(reversed(coeffs))  # iterate low coefficients fastest
        if _is_irreducible(K, cand):
            return cand
    raise AssertionError("no irreducible polynomial found (impossible)")


@lru_cache(maxsize=None)
def GF(p, e=1):
    """The field with p^e elements, with a deterministic defining modulus."""
    prime = PrimeField(p)
    if e == 1:
        return prime
    return PolyField(prime, smallest_irreducible(prime, e))


@lru_cache(maxsize=None)
def extension_of(p, e, n):
    """GF(p^(e*n)) as a tower of prime-degree layers over GF(p, e).

    Layering by the sorted prime factorization of n keeps every
    irreducibility search at degree <= 5 while staying deterministic.
    """
    field = GF(p, e)
    remaining = n
    q = 2
    while remaining > 1:
        while remaining % q == 0:
            if field.order <= 512:
                modulus = smallest_irreducible(field, q)
            else:
                modulus = seeded_irreducible(field, q)
            field = PolyField(field, modulus)
            remaining //= q
        q += 1
    return field


def lift(tower, a):
    """Embed an element of tower.base into the tower field."""
    return tower.from_base(a)


# ---------------------------------------------------------------------------
# dense matrices: lists of lists of field elements


def mat_zero(K, n, m=None):
    m = n if m is None else m
    return [[K.zero()] * m for _ in range(n)]


def mat_identity(K, n):
    A = mat_zero(K, n)
    for i in range(n):
        A[i][i] = K.one()
    return A


def mat_mul(K, A, B):
    n, k, m = len(A), len(B), len(B[0])
    C = mat_zero(K, n, m)
    for i in range(n):
        Ai = A[i]
        Ci = C[i]
        for t in range(k):
            a = Ai[t]
            if K.is_zero(a):
                continue
            Bt = B[t]
            for j in range(m):
                Ci[j] = K.add(Ci[j], K.mul(a, Bt[j]))
    return C

def mat_add(K, A, B):
    return [[K.add(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_vec(K, A, v):
    return [
        _dot(K, row, v)
        for row in A
    ]


def _dot(K, row, v):
    acc = K.zero()
    for a, x in zip(row, v):
        acc = K.add(acc, K.mul(a, x))
    return acc


def mat_entrywise(K, A, f):
    return [[f(a) for a in row] for row in A]


def mat_rank(K, A):
    if not A:
        return 0
    M = [list(row) for row in A]
    rows, cols = len(M), len(M[0])
    rank = 0
    for col in range(cols):
        pivot = next((r for r in range(rank, rows)
                      if not K.is_zero(M[r][col])), None)
        if pivot is None:
            continue
        M[rank], M[pivot] = M[pivot], M[rank]
        inv = K.inv(M[rank][col])
        M[rank] = [K.mul(inv, x) for x in M[rank]]
        for r in range(rows):
            if r != rank and not K.is_zero(M[r][col]):
                c = M[r][col]
                M[r] = [K.sub(x, K.mul(c, y)) for x, y in zip(M[r], M[rank])]
        rank += 1
        if rank == rows:
            break
    return rank


def mat_inv(K, A):
    n = len(A)
    M = [list(row) + list(e) for row, e in zip(A, mat_identity(K, n))]
    for col in range(n):
        pivot = next((r for r in range(col, n)
                      if not K.is_zero(M[r][col])), None)
        if pivot is None:
            raise ZeroDivisionError("matrix is singular")
        M[col], M[pivot] = M[pivot], M[col]
        inv = K.inv(M[col][col])
        M[col] = [K.mul(inv, x) for x in M[col]]
        for r in range(n):
            if r != col and not K.is_zero(M[r][col]):
                c = M[r][col]
                M[r] = [K.sub(x, K.mul(c, y)) for x, y in zip(M[r], M[col])]
    return [row[n:] for row in M]


def mat_eq(K, A, B):
    return all(K.is_zero(K.sub(a, b))
               for ra, rb in zip(A, B) for a, b in zip(ra, rb))
