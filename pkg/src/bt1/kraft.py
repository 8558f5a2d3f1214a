"""Mod-p semilinear pairs, canonical cyclic-word classes, duals, p-ranks.

A datum gives 0/1 matrices F (Frobenius-linear action v -> F v^(p)) and V
(inverse-Frobenius-linear action v -> (V v)^(1/p)).  Isomorphism classes are
canonical multisets of primitive cyclic words over {F, V}: each pi-cycle is
read as a word, proper powers split into copies of their primitive root, and
each word is normalized to its least rotation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from . import gf
from .errors import NotBT1, NotStabilized, RTooLarge
from .perm import Bt1Datum

DEFAULT_MAX_R = 8
# Divisibility chains of extension degrees for stabilized fixed-point counts.
# Solutions of z = A z^(p) from a permutation-supported pair have field
# degrees dividing a cycle length <= r <= 6, so the chain must contain two
# entries divisible by lcm(1..6) = 60.  The 2x2 stratification systems at
# p = 2 have at most 4 solutions, hence degrees <= 4 and lcm(1..4) = 12.
DEFAULT_EXTENSION_CHAIN = (1, 2, 6, 12, 60, 120)
SMALL_EXTENSION_CHAIN = (1, 2, 4, 12, 24)


@dataclass(frozen=True)
class SemilinearPair:
    """F and V over a common field; r x r with the conventions above."""

    field: object
    F: tuple
    V: tuple

    @property
    def r(self):
        return len(self.F)

    def check_bt1(self):
        """im(F-action) = ker(V-action) and vice versa, as matrix identities."""
        K = self.field
        F = [list(row) for row in self.F]
        V = [list(row) for row in self.V]
        zero = gf.mat_zero(K, self.r)
        if not gf.mat_eq(K, gf.mat_mul(K, F, V), zero):
            raise NotBT1("F*V != 0")
        if not gf.mat_eq(K, gf.mat_mul(K, V, F), zero):
            raise NotBT1("V*F != 0")
        if gf.mat_rank(K, F) + gf.mat_rank(K, V) != self.r:
            raise NotBT1("rank(F) + rank(V) != r")


def _freeze(A):
    return tuple(tuple(row) for row in A)


def build_pair(datum, p=2):
    """0/1 permutation-supported pair over GF(p).

    F e_i = e_pi(i) for i <= c (0 otherwise); the V-action sends e_pi(i)
    to e_i for i > c.  Ranks and the invariants below do not depend on p,
    so p defaults to 2.
    """
    return build_pair_over(datum, gf.GF(p))


def build_pair_over(datum, K):
    r = datum.r
    F = gf.mat_zero(K, r)
    V = gf.mat_zero(K, r)
    one = K.one()
    for i in range(1, r + 1):
        if i <= datum.c:
            F[datum.apply(i) - 1][i - 1] = one
        else:
            V[i - 1][datum.apply(i) - 1] = one
    return SemilinearPair(field=K, F=_freeze(F), V=_freeze(V))


# ---------------------------------------------------------------------------
# Kraft canonical invariant


def _least_rotation(word):
    return min(word[k:] + word[:k] for k in range(len(word)))


def _primitive_split(word):
    n = len(word)
    for ell in range(1, n + 1):
        if n % ell == 0 and word[:ell] * (n // ell) == word:
            return [word[:ell]] * (n // ell)
    raise AssertionError("unreachable")


@dataclass(frozen=True)
class KraftInvariant:
    words: tuple  # sorted tuple of canonical primitive word strings

    @property
    def c(self):
        return sum(w.count("F") for w in self.words)

    @property
    def d(self):
        return sum(w.count("V") for w in self.words)

    def key(self):
        return ",".join(self.words)

    def to_json_obj(self):
        return list(self.words)


def kraft_invariant(datum):
    words = []
    for cyc in datum.cycles():
        word = "".join("F" if x <= datum.c else "V" for x in cyc)
        for primitive in _primitive_split(word):
            words.append(_least_rotation(primitive))
    return KraftInvariant(words=tuple(sorted(words)))


def class_count(c, d, max_r=DEFAULT_MAX_R):
    r = c + d
    if r > max_r:
        raise RTooLarge("c+d=%d exceeds the enumeration bound %d" % (r, max_r))
    seen = set()
    for images in itertools.permutations(range(1, r + 1)):
        seen.add(kraft_invariant(Bt1Datum(c, d, images)))
    return len(seen)


def dual(inv):
    """Cartier dual on words: swap F and V, reverse orientation."""
    swapped = []
    for word in inv.words:
        rev = "".join("F" if ch == "V" else "V" for ch in reversed(word))
        swapped.append(_least_rotation(rev))
    return KraftInvariant(words=tuple(sorted(swapped)))


def datum_from_invariant(inv):
    """A permutation presentation of the class: one pi-cycle per word."""
    c = inv.c
    next_f = iter(range(1, c + 1))
    next_v = iter(range(c + 1, c + inv.d + 1))
    r = c + inv.d
    images = [0] * r
    for word in inv.words:
        indices = [next(next_f) if ch == "F" else next(next_v) for ch in word]
        for pos, idx in enumerate(indices):
            images[idx - 1] = indices[(pos + 1) % len(indices)]
    return Bt1Datum(c, inv.d, tuple(images))


def dual_datum(datum):
    return datum_from_invariant(dual(kraft_invariant(datum)))


# ---------------------------------------------------------------------------
# p-rank / a-number via stable semilinear rank


def _twist(K, A, k):
    """Entrywise x -> x^(p^k)."""
    p = K.p
    return gf.mat_entrywise(K, A, lambda a: K.pow(a, p**k))


def p_rank(pair):
    """Rank of the r-th iterate of the Frobenius-linear action."""
    pair.check_bt1()
    K = pair.field
    C = [list(row) for row in pair.F]
    for k in range(1, pair.r):
        C = gf.mat_mul(K, C, _twist(K, [list(r_) for r_ in pair.F], k))
    return gf.mat_rank(K, C)


def a_number(pair):
    """r minus the rank of the combined F-action and V-action images."""
    pair.check_bt1()
    K = pair.field
    v_img = gf.mat_entrywise(K, [list(r_) for r_ in pair.V], K.inv_frob)
    combined = [list(fr) + list(vr) for fr, vr in zip(pair.F, v_img)]
    return pair.r - gf.mat_rank(K, combined)


def word_rank_profile(pair, max_len=None):
    """Ranks of all composites of the F- and V-actions up to 2r letters.

    Every composite is of the shape v -> (N v)^(p^t); appending a letter on
    the right (applied first) with action v -> (A v)^(p^s) updates
    N -> N^(p^-s) A and t -> t + s.  Only the ranks are kept; this is a
    secondary class invariant, not the canonical form.
    """
    pair.check_bt1()
    K = pair.field
    r = pair.r
    max_len = 2 * r if max_len is None else max_len
    # F-action: v -> F v^(p) = (F^(1/p) v)^(p); V-action: v -> (V v)^(1/p)
    F_half = gf.mat_entrywise(K, [list(row) for row in pair.F], K.inv_frob)
    V = [list(row) for row in pair.V]
    letters = (("F", F_half, 1), ("V", V, -1))
    profile = {}
    items = [("", gf.mat_identity(K, r), 0)]
    for _ in range(max_len):
        new_items = []
        for word, N, t in items:
            for letter, A, s in letters:
                M = gf.mat_mul(K, _twist(K, N, (-s) % K.fp_dim), A)
                new_word = word + letter
                profile[new_word] = gf.mat_rank(K, M)
                new_items.append((new_word, M, t + s))
        items = new_items
    return profile


# ---------------------------------------------------------------------------
# Section-7 stratification example (c = d = 2)


def ex6_pair(p, e, x):
    """The rank-4 pair over GF(p^e) at the point x = (x1, x2, x3, x4).

    Blocks: A1 = [[x1, x2], [x3, x4]], A2 = A3 = I, A4 = 0 -- invertible for
    every specialization.  F sends e1, e2 to the first two columns of A and
    kills e3, e4; V is forced by the kernel/image matching.
    """
    K = gf.GF(p, e)
    x1, x2, x3, x4 = x
    z, o = K.zero(), K.one()
    A = [
        [x1, x2, o, z],
        [x3, x4, z, o],
        [o, z, z, z],
        [z, o, z, z],
    ]
    F = [[A[i][j] if j < 2 else z for j in range(4)] for i in range(4)]
    P = [[z] * 4 for _ in range(4)]
    P[2][2] = o
    P[3][3] = o
    V = gf.mat_mul(K, P, gf.mat_inv(K, A))
    return SemilinearPair(field=K, F=_freeze(F), V=_freeze(V))


def ex6_a1(p, e, x):
    K = gf.GF(p, e)
    x1, x2, x3, x4 = x
    return K, [[x1, x2], [x3, x4]]


def predicted_ex6_stratum(p, e, x):
    """p-rank predicted by the closed-form strata, None off the chart."""
    K = gf.GF(p, e)
    x1, x2, x3, x4 = x
    on_t = K.is_zero(K.sub(K.mul(x1, x4), K.mul(x2, x3)))
    if not on_t:
        return 2
    if K.is_zero(x1):
        return None
    hasse = K.add(K.pow(x1, p), K.mul(x4, K.pow(x3, p - 1)))
    return 0 if K.is_zero(hasse) else 1


# ---------------------------------------------------------------------------
# fixed-point counting oracle (test-side check for p-rank)


def _nullity_mod_p(M, p):
    import numpy as np

    M = M.copy() % p
    rows, cols = M.shape
    rank = 0
    for col in range(cols):
        pivots = np.nonzero(M[rank:, col])[0]
        if pivots.size == 0:
            continue
        piv = rank + pivots[0]
        M[[rank, piv]] = M[[piv, rank]]
        inv = pow(int(M[rank, col]), p - 2, p)
        M[rank] = (M[rank] * inv) % p
        mask = np.nonzero(M[:, col])[0]
        mask = mask[mask != rank]
        M[mask] = (M[mask] - np.outer(M[mask, col], M[rank])) % p
        rank += 1
        if rank == rows:
            break
    return cols - rank


@lru_cache(maxsize=None)
def _frob_matrix(p, e, N):
    """F_p-matrix of Frobenius on the degree-N tower over GF(p^e)."""
    import numpy as np

    big = gf.extension_of(p, e, N)
    cols = [big.to_fp_vec(big.frob(b)) for b in big.fp_basis()]
    return big, np.array(cols, dtype=np.int64).T % p


def count_fixed_points(K, A, N):
    """Number of z in GF(q^N)^n with z = A z^(p), by F_p-linearization.

    Multiplication by an entry a of A (a lives in the base field K) is
    F_p-linear on the tower and block-diagonal in the flattened basis, so
    its matrix is kron(I_N, mul-by-a on K); 0/1 entries shortcut so that
    permutation-supported pairs stay cheap in deep towers.
    """
    import numpy as np

    n = len(A)
    p = K.p
    e = K.fp_dim
    big, frob = _frob_matrix(p, e, N)
    m = big.fp_dim

    def entry_block(a):
        cols = [K.to_fp_vec(K.mul(a, b)) for b in K.fp_basis()]
        base_mat = np.array(cols, dtype=np.int64).T % p
        D = np.kron(np.eye(m // e, dtype=np.int64), base_mat)
        return (-(D @ frob)) % p

    zero_block = np.zeros((m, m), dtype=np.int64)
    blocks = []
    for i in range(n):
        row = []
        for j in range(n):
            a = A[i][j]
            if K.is_zero(a):
                B = zero_block
            elif K.is_zero(K.sub(a, K.one())):
                B = (-frob) % p
            else:
                B = entry_block(a)
            if i == j:
                B = (B + np.eye(m, dtype=np.int64)) % p
            row.append(B)
        blocks.append(row)
    M = np.block(blocks)
    return p ** _nullity_mod_p(M, p)


def stabilized_fixed_point_count(K, A, chain=DEFAULT_EXTENSION_CHAIN):
    """Count over a divisibility chain of extensions until it stops growing."""
    counts = [count_fixed_points(K, A, N) for N in chain]
    if counts[-1] != counts[-2]:
        raise NotStabilized(
            "fixed-point count still growing along chain %r: %r"
            % (chain, counts))
    return counts[-1]


def p_rank_oracle(K, A, chain=DEFAULT_EXTENSION_CHAIN):
    """log_p of the stabilized fixed-point count of z = A z^(p)."""
    count = stabilized_fixed_point_count(K, A, chain)
    p = K.p
    rank = 0
    while count > 1:
        count //= p
        rank += 1
    return rank
