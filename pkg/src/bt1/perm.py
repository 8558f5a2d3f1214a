"""BT1 data given by a permutation, and the J-set pair combinatorics.

A class is presented by (c, d, pi): codimension, dimension, and a
permutation of J = {1..r}, r = c+d.  Every pair (i, j) in J^2 falls in one
of three regions, refined into six classes by following the componentwise
pi-orbit of Minus-region pairs until it returns to Plus or Minus.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from functools import cached_property

from .errors import ConstraintError, InternalError, NotMinusPair


class Region(Enum):
    PLUS = "Plus"
    ZERO = "Zero"
    MINUS = "Minus"


class Refined(Enum):
    PLUS_ONE = "PlusOne"
    PLUS_TWO = "PlusTwo"
    ZERO_ZERO = "ZeroZero"
    ZERO_PLAIN = "ZeroPlain"
    MINUS_ONE = "MinusOne"
    MINUS_TWO = "MinusTwo"


@dataclass(frozen=True)
class Bt1Datum:
    """(c, d, pi) with pi stored as a 1-indexed image tuple: pi maps i to pi[i-1]."""

    c: int
    d: int
    pi: tuple

    def __post_init__(self):
        if self.c < 1 or self.d < 1:
            raise ConstraintError("c and d must be positive, got c=%d d=%d"
                                  % (self.c, self.d))
        object.__setattr__(self, "pi", tuple(self.pi))
        if sorted(self.pi) != list(range(1, self.r + 1)):
            raise ConstraintError(
                "pi must be a bijection of {1..%d}, got %r" % (self.r, self.pi))

    @property
    def r(self):
        return self.c + self.d

    def apply(self, i):
        return self.pi[i - 1]

    def apply_pair(self, pair, s=1):
        i, j = pair
        for _ in range(s):
            i, j = self.pi[i - 1], self.pi[j - 1]
        return (i, j)

    def cycles(self):
        """Cycle decomposition, each cycle starting at its least element."""
        seen = set()
        out = []
        for start in range(1, self.r + 1):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            x = self.apply(start)
            while x != start:
                cyc.append(x)
                seen.add(x)
                x = self.apply(x)
            out.append(tuple(cyc))
        return out


def region_of(datum, pair):
    i, j = pair
    c = datum.c
    if j <= c < i:
        return Region.PLUS
    if i <= c < j:
        return Region.MINUS
    return Region.ZERO


def classify_regions(datum):
    """Total map J^2 -> Region."""
    r = datum.r
    return {(i, j): region_of(datum, (i, j))
            for i in range(1, r + 1) for j in range(1, r + 1)}


def pi_order(datum, pair):
    """Least s >= 1 with pi^s(pair) in Plus or Minus; pair must be in Minus."""
    if region_of(datum, pair) is not Region.MINUS:
        raise NotMinusPair("pair %r is not in the Minus region" % (pair,))
    cur = pair
    bound = datum.r * datum.r
    for s in range(1, bound + 1):
        cur = datum.apply_pair(cur)
        if region_of(datum, cur) is not Region.ZERO:
            return s
    raise InternalError("pi-order iteration exceeded r^2 for %r" % (pair,))


@dataclass
class PairTable:
    """Region and refined classification of every pair, with nu and eta.

    nu is defined on all Minus pairs and on the orbit-walk pairs
    (MinusOne, ZeroZero, PlusOne); eta only on the latter three.
    """

    datum: Bt1Datum
    region: dict
    refined: dict
    nu: dict
    eta: dict

    def pairs_with(self, kind):
        return {p for p, k in self.refined.items() if k is kind}

    @cached_property
    def minus_one(self):
        return self.pairs_with(Refined.MINUS_ONE)

    @cached_property
    def minus_two(self):
        return self.pairs_with(Refined.MINUS_TWO)

    @cached_property
    def plus_one(self):
        return self.pairs_with(Refined.PLUS_ONE)

    @cached_property
    def plus_two(self):
        return self.pairs_with(Refined.PLUS_TWO)

    @cached_property
    def zero_zero(self):
        return self.pairs_with(Refined.ZERO_ZERO)

    def to_json_obj(self):
        pairs = []
        for (i, j) in sorted(self.refined):
            entry = {"i": i, "j": j, "refined": self.refined[(i, j)].value}
            if (i, j) in self.nu:
                entry["nu"] = self.nu[(i, j)]
            if (i, j) in self.eta:
                entry["eta"] = self.eta[(i, j)]
            pairs.append(entry)
        return {"c": self.datum.c, "d": self.datum.d,
                "pi": list(self.datum.pi), "pairs": pairs}

    def to_json(self, pretty=False):
        obj = self.to_json_obj()
        if pretty:
            return json.dumps(obj, indent=2)
        return json.dumps(obj, separators=(",", ":"))


def refine(datum):
    """Full classification: walk every Minus pair to its first return."""
    region = classify_regions(datum)
    refined = {}
    nu = {}
    eta = {}

    minus_pairs = [p for p, reg in region.items() if reg is Region.MINUS]
    for pair in minus_pairs:
        order = pi_order(datum, pair)
        target = datum.apply_pair(pair, order)
        nu[pair] = order
        if region[target] is Region.MINUS:
            refined[pair] = Refined.MINUS_TWO
            continue
        refined[pair] = Refined.MINUS_ONE
        eta[pair] = 0
        cur = pair
        for s in range(1, order + 1):
            cur = datum.apply_pair(cur)
            kind = Refined.PLUS_ONE if s == order else Refined.ZERO_ZERO
            if cur in refined:
                raise InternalError("pair %r reached from two walks" % (cur,))
            refined[cur] = kind
            nu[cur] = order - s
            eta[cur] = s

    for pair, reg in region.items():
        if pair in refined:
            continue
        if reg is Region.PLUS:
            refined[pair] = Refined.PLUS_TWO
        elif reg is Region.ZERO:
            refined[pair] = Refined.ZERO_PLAIN
        else:
            raise InternalError("unwalked Minus pair %r" % (pair,))

    return PairTable(datum=datum, region=region, refined=refined, nu=nu, eta=eta)


def composable_chain_max(table):
    """Longest chain (i1,i2),(i2,i3),... of ZeroZero pairs, counted in pairs."""
    succ = {}
    for (i, j) in table.zero_zero:
        succ.setdefault(i, []).append(j)
    memo = {}
    in_progress = set()

    def longest_from(i):
        if i in memo:
            return memo[i]
        if i in in_progress:
            raise InternalError("cycle among ZeroZero pairs (nilpotency broken)")
        in_progress.add(i)
        best = 0
        for j in succ.get(i, ()):
            best = max(best, 1 + longest_from(j))
        in_progress.discard(i)
        memo[i] = best
        return best

    return max((longest_from(i) for i in succ), default=0)
