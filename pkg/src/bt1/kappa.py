"""Path families over the refined pair table and the rational kappa invariant.

Gamma paths are chains of ZeroZero pairs ending in a single PlusTwo step;
Delta paths append one more ZeroZero step after the PlusTwo step.  kappa of
a path is sum_t n_t * p^(-t) over the ZeroZero step orders, computed with
exact rationals so the strict comparisons behind condition (C) are decided
without rounding.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction

from .errors import PathExplosion, RTooLarge
from .perm import Bt1Datum, Refined, refine

DEFAULT_PATH_CEILING = 10**7
DEFAULT_MAX_R = 8


@dataclass(frozen=True)
class Path:
    vertices: tuple
    kind: str  # "gamma" | "delta"
    in_gamma1: bool
    in_delta1: bool
    nt: tuple  # sorted ((t, n_t), ...) over ZeroZero step orders

    @property
    def selected(self):
        return self.in_gamma1 or self.in_delta1

    def nt_histogram(self):
        return dict(self.nt)


def _histogram(table, vertices, steps):
    hist = {}
    for ell in steps:
        pair = (vertices[ell], vertices[ell + 1])
        if table.refined[pair] is Refined.ZERO_ZERO:
            t = table.nu[pair]
            hist[t] = hist.get(t, 0) + 1
    return tuple(sorted(hist.items()))


def _make_path(table, vertices, kind):
    s = len(vertices)
    plus_one = table.plus_one
    first_last = (vertices[0], vertices[-1])
    second_last = (vertices[1], vertices[-1])
    selected = first_last in plus_one and second_last not in plus_one
    return Path(
        vertices=tuple(vertices),
        kind=kind,
        in_gamma1=selected and kind == "gamma",
        in_delta1=selected and kind == "delta",
        nt=_histogram(table, vertices, range(s - 1)),
    )


def enumerate_paths(table, ceiling=DEFAULT_PATH_CEILING):
    """All Gamma and Delta paths of the table, with flags and histograms."""
    zero_preds = {}  # head -> list of tails x with (x, head) in ZeroZero
    zero_succs = {}
    for (i, j) in table.zero_zero:
        zero_preds.setdefault(j, []).append(i)
        zero_succs.setdefault(i, []).append(j)

    paths = []

    def check_ceiling():
        if len(paths) > ceiling:
            raise PathExplosion(
                "more than %d paths; datum too large for exhaustive "
                "enumeration" % ceiling)

    def prefixes_ending_at(v):
        """Yield reversed ZeroZero chains ...->v, including the empty chain."""
        yield [v]
        for x in zero_preds.get(v, ()):
            for chain in prefixes_ending_at(x):
                yield chain + [v]

    for (a, b) in sorted(table.plus_two):
        for chain in prefixes_ending_at(a):
            gamma_vertices = chain + [b]
            paths.append(_make_path(table, gamma_vertices, "gamma"))
            check_ceiling()
            for z in zero_succs.get(b, ()):
                paths.append(_make_path(table, gamma_vertices + [z], "delta"))
                check_ceiling()
    return paths


def kappa_of_path(path, p):
    """sum_t n_t(path) * p^(-t), exact."""
    return sum((Fraction(n, p**t) for t, n in path.nt), Fraction(0))


@dataclass
class KappaReport:
    p: int
    kappa_pi: Fraction
    witness: Path | None = None
    kappa_class: Fraction | None = None
    condition_c: bool | None = None
    dual_kappa_class: Fraction | None = None

    def to_json_obj(self):
        def frac(x):
            return None if x is None else {"num": x.numerator, "den": x.denominator}

        return {
            "p": self.p,
            "kappa_pi": frac(self.kappa_pi),
            "witness": list(self.witness.vertices) if self.witness else None,
            "kappa_class": frac(self.kappa_class),
            "condition_c": self.condition_c,
            "dual_kappa_class": frac(self.dual_kappa_class),
        }

    def to_json(self, pretty=False):
        obj = self.to_json_obj()
        return json.dumps(obj, indent=2 if pretty else None,
                          separators=None if pretty else (",", ":"))


def kappa_of_perm(datum, p, ceiling=DEFAULT_PATH_CEILING):
    """Max of kappa over Gamma_1 and Delta_1; 0 on the empty set."""
    table = refine(datum)
    best = Fraction(0)
    witness = None
    for path in enumerate_paths(table, ceiling):
        if not path.selected:
            continue
        value = kappa_of_path(path, p)
        if value > best:
            best, witness = value, path
    return KappaReport(p=p, kappa_pi=best, witness=witness)


def selected_histograms(table, ceiling=DEFAULT_PATH_CEILING):
    """nt histograms of the Gamma_1 and Delta_1 paths (prime-independent)."""
    return [path.nt for path in enumerate_paths(table, ceiling) if path.selected]


def kappa_from_histograms(histograms, p):
    best = Fraction(0)
    for nt in histograms:
        value = sum((Fraction(n, p**t) for t, n in nt), Fraction(0))
        if value > best:
            best = value
    return best


def _check_r(datum, max_r):
    if datum.r > max_r:
        raise RTooLarge("r=%d exceeds the enumeration bound %d"
                        % (datum.r, max_r))


def class_representatives(datum, max_r=DEFAULT_MAX_R):
    """All permutations of S_r presenting the same class as the datum."""
    from .kraft import kraft_invariant

    _check_r(datum, max_r)
    key = kraft_invariant(datum)
    reps = []
    for images in itertools.permutations(range(1, datum.r + 1)):
        cand = Bt1Datum(datum.c, datum.d, images)
        if kraft_invariant(cand) == key:
            reps.append(cand)
    return reps


def kappa_of_class(datum, p, max_r=DEFAULT_MAX_R):
    """Min of kappa_of_perm over every presentation of the class."""
    reps = class_representatives(datum, max_r)
    return min(kappa_of_perm(rep, p).kappa_pi for rep in reps)


def condition_c(datum, p, max_r=DEFAULT_MAX_R):
    """kappa(class) < 1 or kappa(dual class) < 1; returns (bool, KappaReport)."""
    from .kraft import dual_datum

    own = kappa_of_class(datum, p, max_r)
    dual_val = kappa_of_class(dual_datum(datum), p, max_r)
    holds = own < 1 or dual_val < 1
    report = kappa_of_perm(datum, p)
    report.kappa_class = own
    report.dual_kappa_class = dual_val
    report.condition_c = holds
    return holds, report


def scalar_action_period(datum):
    """Largest a with a pi-cyclic partition J = J_1 | ... | J_a, F-block in J_1.

    Feasibility for a given a: every pi-cycle has length divisible by a and
    its elements > c occupy positions congruent modulo a, so an offset can
    place them all in J_1.
    """
    cycles = datum.cycles()
    for a in range(datum.r, 0, -1):
        ok = True
        for cyc in cycles:
            if len(cyc) % a != 0:
                ok = False
                break
            hot = [pos for pos, x in enumerate(cyc) if x > datum.c]
            if hot and any((pos - hot[0]) % a != 0 for pos in hot):
                ok = False
                break
        if ok:
            return a
    return 1
