"""Class sweeps over S_r and the persistent JSONL catalog.

A sweep enumerates every permutation once, groups them into Kraft classes,
and records class functions only: the per-prime class kappa (min over
presentations of the max over paths), condition (C) via the dual class,
certificate verdicts, dimensions, p-rank and a-number.  The catalog is one
JSON object per line sorted by class key, written atomically.
"""

from __future__ import annotations

import itertools
import json
import os
import tempfile
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .errors import RTooLarge
from .kappa import kappa_from_histograms, selected_histograms
from .kraft import a_number, build_pair, dual, kraft_invariant, p_rank
from .perm import Bt1Datum, refine
from .polysys import finiteness_report

DEFAULT_MAX_R = 8


@dataclass
class ClassData:
    """Aggregate of one Kraft class over all its S_r presentations."""

    key: str
    rep_pi: tuple  # lexicographically least presentation
    hist_collections: set  # one sorted histogram tuple per distinct rep shape
    dual_key: str

    def kappa_class(self, p):
        return min(kappa_from_histograms(hists, p)
                   for hists in self.hist_collections)


def enumerate_classes(c, d, max_r=DEFAULT_MAX_R):
    """Map class key -> ClassData, visiting each permutation of S_r once."""
    r = c + d
    if r > max_r:
        raise RTooLarge("c+d=%d exceeds the sweep bound %d" % (r, max_r))
    classes = {}
    for images in itertools.permutations(range(1, r + 1)):
        datum = Bt1Datum(c, d, images)
        inv = kraft_invariant(datum)
        key = inv.key()
        hists = tuple(sorted(selected_histograms(refine(datum))))
        data = classes.get(key)
        if data is None:
            classes[key] = ClassData(key=key, rep_pi=images,
                                     hist_collections={hists},
                                     dual_key=dual(inv).key())
        else:
            data.hist_collections.add(hists)
            if images < data.rep_pi:
                data.rep_pi = images
    return classes


def _frac_obj(x):
    x = Fraction(x)
    return {"num": x.numerator, "den": x.denominator}


def build_entry(c, d, data, primes, kappa_by_prime, dual_kappa_by_prime):
    """The catalog line for one class, derived from its canonical presentation."""
    datum = Bt1Datum(c, d, data.rep_pi)
    table = refine(datum)
    per_prime = {}
    for p in primes:
        kappa_cls = kappa_by_prime[p]
        dual_cls = dual_kappa_by_prime[p]
        pair = build_pair(datum, p)
        per_prime[str(p)] = {
            "kappaClass": _frac_obj(kappa_cls),
            "conditionC": kappa_cls < 1 or dual_cls < 1,
            "certificateVerdict": finiteness_report(datum, p).verdict,
            "coverDegreeExponent": len(table.zero_zero),
            "dimC10": len(table.minus_one),
            "pRank": p_rank(pair),
            "aNumber": a_number(pair),
        }
    return {
        "classKey": data.key,
        "c": c,
        "d": d,
        "representativePi": list(data.rep_pi),
        "perPrime": per_prime,
    }


def _entry_worker(args):
    return build_entry(*args)


def sweep(c, d, primes, jobs=None, max_r=DEFAULT_MAX_R):
    """All class entries for (c, d), sorted by class key."""
    classes = enumerate_classes(c, d, max_r)
    dual_classes = (classes if c == d
                    else enumerate_classes(d, c, max_r))
    tasks = []
    for key in sorted(classes):
        data = classes[key]
        kappa_by_prime = {p: data.kappa_class(p) for p in primes}
        dual_by_prime = {p: dual_classes[data.dual_key].kappa_class(p)
                         for p in primes}
        tasks.append((c, d, data, tuple(primes), kappa_by_prime, dual_by_prime))
    if jobs and jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            entries = list(pool.map(_entry_worker, tasks))
    else:
        entries = [build_entry(*task) for task in tasks]
    return entries


def write_catalog(entries, path):
    """Atomic JSONL write: temp file in the target directory, then replace."""
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as handle:
            for entry in entries:
                handle.write(json.dumps(entry, sort_keys=True) + "\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def read_catalog(path):
    with open(path) as handle:
        return [json.loads(line) for line in handle if line.strip()]
