"""Stabilizer parametrization, the polynomial system, and finiteness certificates.

The stabilizer of the standard point is parametrized by three formal
matrices differing only in summation limits; identifying coefficients in the
resulting matrix identity yields one polynomial equation x^{p^nu} = Q per
level-1 variable.  Finite flatness of the induced morphism is certified by
exhibiting positive rational weights making every right-hand monomial's
weighted degree strictly smaller than the weighted left-hand degree; the
default weights p^{nubar - nu} succeed exactly when kappa < 1, and an
exact-rational LP search covers systems beyond that regime.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DimensionCeiling
from .gf import GF, mat_identity, mat_mul, mat_eq
from .kappa import enumerate_paths
from .perm import Refined
from .simplex import feasible_point

LP_VARIABLE_CEILING = 64


# ---------------------------------------------------------------------------
# stabilizer parametrization


@dataclass
class StabilizerParam:
    """Formal matrices h12, h2, h23: position pair -> (MinusOne pair, power).

    An entry ((i0,j0), ell) at position (i,j) stands for y_{i0,j0}^{p^ell}
    with (i,j) = pi^ell(i0,j0); each matrix implicitly adds the identity.
    """

    table: object
    h12: dict
    h2: dict
    h23: dict

    def instantiate(self, name, K, assignment):
        """Dense matrix over K for one of the three formal matrices."""
        r = self.table.datum.r
        M = mat_identity(K, r)
        for (i, j), (base, ell) in getattr(self, name).items():
            M[i - 1][j - 1] = K.pow(assignment[base], K.p ** ell)
        return M


def stabilizer_param(table):
    """The three formal matrices, with summation limits [1,nu], [1,nu-1], [0,nu-1]."""
    datum = table.datum
    h12, h2, h23 = {}, {}, {}
    for pair in sorted(table.minus_one):
        nu = table.nu[pair]
        for ell in range(0, nu + 1):
            pos = datum.apply_pair(pair, ell)
            if 1 <= ell <= nu:
                h12[pos] = (pair, ell)
            if 1 <= ell <= nu - 1:
                h2[pos] = (pair, ell)
            if 0 <= ell <= nu - 1:
                h23[pos] = (pair, ell)
    return StabilizerParam(table=table, h12=h12, h2=h2, h23=h23)


def _series_inverse(K, M):
    """Inverse of M = I + N with N nilpotent: I - N + N^2 - ..."""
    r = len(M)
    I = mat_identity(K, r)
    N = [[K.sub(M[i][j], I[i][j]) for j in range(r)] for i in range(r)]
    inv = [row[:] for row in I]
    power = [row[:] for row in I]
    sign = -1
    for _ in range(r):
        power = mat_mul(K, power, N)
        if all(K.is_zero(x) for row in power for x in row):
            break
        for i in range(r):
            for j in range(r):
                term = power[i][j] if sign > 0 else K.neg(power[i][j])
                inv[i][j] = K.add(inv[i][j], term)
        sign = -sign
    return inv


def verify_stabilizer(table, p, e=2, trials=100, seed=0):
    """Random instantiation check of the parametrization over GF(p^e).

    Each trial draws MinusOne values, instantiates the three matrices and
    checks (a) the nilpotent geometric series inverts h2 and (b) the twist
    identity: the h12 entry at (pi(i), pi(j)) is the p-th power of the h23
    entry at (i, j).  Returns (ok, distinct_triple_count).
    """
    datum = table.datum
    param = stabilizer_param(table)
    K = GF(p, e)
    elements = list(K.elements())
    rng = random.Random(seed)
    minus_one = sorted(table.minus_one)
    r = datum.r
    I = mat_identity(K, r)
    seen = set()
    for _ in range(trials):
        assignment = {pair: rng.choice(elements) for pair in minus_one}
        h12 = param.instantiate("h12", K, assignment)
        h2 = param.instantiate("h2", K, assignment)
        h23 = param.instantiate("h23", K, assignment)
        if not mat_eq(K, mat_mul(K, h2, _series_inverse(K, h2)), I):
            return False, 0
        for i in range(1, r + 1):
            for j in range(1, r + 1):
                ti, tj = datum.apply(i), datum.apply(j)
                lhs = h12[ti - 1][tj - 1]
                rhs = K.pow(h23[i - 1][j - 1], p)
                if not K.is_zero(K.sub(lhs, rhs)):
                    return False, 0
        seen.add(tuple(tuple(tuple(row) for row in M)
                       for M in (h12, h2, h23)))
    return True, len(seen)


# ---------------------------------------------------------------------------
# the polynomial system


@dataclass(frozen=True)
class SignedMonomial:
    """sign * prod a[pair]^exp * prod x[pair]^exp."""

    sign: int
    a_factors: tuple  # sorted ((pair, exp), ...)
    x_powers: tuple  # sorted ((pair, exp), ...)
    source: str = field(default="", compare=False)
    path_nt: tuple = field(default=(), compare=False)

    def sort_key(self):
        return (self.a_factors, self.x_powers)

    def text(self, p):
        sign = "+" if self.sign % p == 1 % p else "-"
        factors = ["a[%d,%d]" % pair + ("^%d" % e if e > 1 else "")
                   for pair, e in self.a_factors]
        factors += ["x[%d,%d]" % pair + ("^%d" % e if e > 1 else "")
                    for pair, e in self.x_powers]
        return sign + " " + "*".join(factors)


@dataclass(frozen=True)
class Equation:
    var: tuple  # the XVar pair (i, j)
    nu: int  # LHS degree is p^nu
    monomials: tuple


@dataclass
class PolySystem:
    p: int
    equations: dict  # XVar pair -> Equation
    cover_exponent: int  # |ZeroZero| of the generating table
    cyclic: tuple = ()  # linear variables skipped by eliminate_linear

    @property
    def xvars(self):
        return sorted(self.equations)

    def to_text(self):
        lines = []
        for var in self.xvars:
            eq = self.equations[var]
            lhs = "x[%d,%d]" % var
            if eq.nu > 0:
                lhs += "^%d" % self.p ** eq.nu
            rhs = " ".join(m.text(self.p)
                           for m in sorted(eq.monomials,
                                           key=SignedMonomial.sort_key))
            lines.append("%s = %s" % (lhs, rhs if rhs else "0"))
        return "\n".join(lines)


def gen_system(table, p):
    """One equation per level-1 variable, with Q assembled from the path sums.

    Q collects (1) Gamma_1 paths matching the equation's endpoints, sign
    (-1)^(s-2), a-factor from the final step, q-factors from the ZeroZero
    steps; (2) Delta_1 paths, sign (-1)^(s-3), q-factors skipping the
    next-to-last step; (3) the linear tail a at the endpoint plus the
    one-step PlusOne * ZeroZero products.
    """
    datum = table.datum
    inv_pi = {datum.apply(i): i for i in range(1, datum.r + 1)}

    def q_factor(pair):
        eta = table.eta[pair]
        i, j = pair
        for _ in range(eta - 1):
            i, j = inv_pi[i], inv_pi[j]
        return (i, j), p ** (eta - 1)

    xvars = sorted(pair for pair in table.eta
                   if table.eta[pair] == 1
                   and table.refined[pair] in (Refined.ZERO_ZERO,
                                               Refined.PLUS_ONE))
    endpoint_of = {var: datum.apply_pair(var, table.nu[var]) for var in xvars}
    eq_of_endpoint = {end: var for var, end in endpoint_of.items()}

    monomials = {var: [] for var in xvars}

    def x_powers_of(qpairs):
        acc = {}
        for qp in qpairs:
            base, exp = q_factor(qp)
            acc[base] = acc.get(base, 0) + exp
        return tuple(sorted(acc.items()))

    for path in enumerate_paths(table):
        if not path.selected:
            continue
        v = path.vertices
        s = len(v)
        var = eq_of_endpoint[(v[0], v[-1])]
        if path.kind == "gamma":
            sign = 1 if (s - 2) % 2 == 0 else -1
            a_pair = (v[-2], v[-1])
            qpairs = [(v[u], v[u + 1]) for u in range(s - 2)]
        else:
            sign = 1 if (s - 3) % 2 == 0 else -1
            a_pair = (v[-3], v[-2])
            qpairs = [(v[u], v[u + 1]) for u in range(s - 3)] + [(v[-2], v[-1])]
        monomials[var].append(SignedMonomial(
            sign=sign,
            a_factors=((a_pair, 1),),
            x_powers=x_powers_of(qpairs),
            source=path.kind,
            path_nt=path.nt,
        ))

    zero_zero = table.zero_zero
    plus_one = table.plus_one
    for var in xvars:
        I, J = endpoint_of[var]
        monomials[var].append(SignedMonomial(
            sign=1, a_factors=(((I, J), 1),), x_powers=(), source="tail"))
        for mid in range(1, datum.r + 1):
            if (I, mid) in plus_one and (mid, J) in zero_zero:
                monomials[var].append(SignedMonomial(
                    sign=1,
                    a_factors=(((I, mid), 1),),
                    x_powers=x_powers_of([(mid, J)]),
                    source="tail",
                ))

    equations = {var: Equation(var=var, nu=table.nu[var],
                               monomials=tuple(monomials[var]))
                 for var in xvars}
    return PolySystem(p=p, equations=equations,
                      cover_exponent=len(zero_zero))


# ---------------------------------------------------------------------------
# weight certificates


@dataclass
class WeightCertificate:
    p: int
    weights: dict  # XVar pair -> positive Fraction
    satisfied: bool
    violations: list  # (var, monomial text, weighted degree, bound)
    cover_exponent: int
    default: bool = True

    @property
    def cover_degree(self):
        return self.p ** self.cover_exponent

    def to_json_obj(self):
        def frac(x):
            return {"num": x.numerator, "den": x.denominator}

        return {
            "p": self.p,
            "weights": {"x[%d,%d]" % var: frac(Fraction(w))
                        for var, w in sorted(self.weights.items())},
            "satisfied": self.satisfied,
            "violations": [
                {"equation": "x[%d,%d]" % var, "monomial": mono,
                 "weightedDegree": frac(Fraction(wd)),
                 "bound": frac(Fraction(bound))}
                for var, mono, wd, bound in self.violations],
            "coverDegreeExponent": self.cover_exponent,
            "coverDegree": self.cover_degree,
            "defaultWeights": self.default,
        }

    def to_json(self, pretty=False):
        return json.dumps(self.to_json_obj(), indent=2 if pretty else None)


def weighted_degree(monomial, weights):
    return sum((Fraction(weights[v]) * e for v, e in monomial.x_powers),
               Fraction(0))


def check_certificate(system, weights, default=True):
    """Evaluate the strict weighted-degree inequalities for given weights."""
    p = system.p
    violations = []
    for var in system.xvars:
        eq = system.equations[var]
        bound = Fraction(weights[var]) * p ** eq.nu
        for m in eq.monomials:
            wd = weighted_degree(m, weights)
            if not wd < bound:
                violations.append((var, m.text(p), wd, bound))
    return WeightCertificate(p=p, weights=dict(weights),
                             satisfied=not violations, violations=violations,
                             cover_exponent=system.cover_exponent,
                             default=default)


def default_weights(system):
    """mu_ell = p^(nubar - nu_ell) with nubar the max LHS order."""
    if not system.equations:
        return {}
    nubar = max(eq.nu for eq in system.equations.values())
    return {var: Fraction(system.p ** (nubar - eq.nu))
            for var, eq in system.equations.items()}


def default_certificate(system, table=None, p=None):
    """Certificate for the canonical weights; trivially satisfied when empty."""
    if not system.equations:
        return WeightCertificate(p=system.p, weights={}, satisfied=True,
                                 violations=[],
                                 cover_exponent=system.cover_exponent)
    return check_certificate(system, default_weights(system))


# ---------------------------------------------------------------------------
# linear elimination and weight search


def _substitute(monomial, var, exp, rhs):
    """monomial with x[var]^exp replaced by (sum rhs)^exp, in characteristic p."""
    rest_x = tuple((v, e) for v, e in monomial.x_powers if v != var)
    out = []
    for t in rhs:
        sign = monomial.sign * (t.sign if exp % 2 == 1 else 1)
        a_acc = dict(monomial.a_factors)
        for pair, e in t.a_factors:
            a_acc[pair] = a_acc.get(pair, 0) + e * exp
        x_acc = dict(rest_x)
        for v, e in t.x_powers:
            x_acc[v] = x_acc.get(v, 0) + e * exp
        out.append(SignedMonomial(
            sign=sign,
            a_factors=tuple(sorted(a_acc.items())),
            x_powers=tuple(sorted(x_acc.items())),
            source="eliminated",
        ))
    return out


def eliminate_linear(system):
    """Remove every degree-1 equation, substituting its RHS everywhere.

    Substitution into x^(p^l) raises signs, a-exponents and x-exponents to
    the p^l-th power termwise (Frobenius distributes over sums in
    characteristic p).  A linear variable occurring in its own RHS is
    reported in `cyclic` and left in place.
    """
    eqs = dict(system.equations)
    cyclic = list(system.cyclic)
    while True:
        lin = next((v for v in sorted(eqs)
                    if eqs[v].nu == 0 and v not in cyclic), None)
        if lin is None:
            break
        eq = eqs[lin]
        if any(v == lin for m in eq.monomials for v, _ in m.x_powers):
            cyclic.append(lin)
            continue
        del eqs[lin]
        rhs = eq.monomials
        for var in list(eqs):
            other = eqs[var]
            new = []
            for m in other.monomials:
                exp = dict(m.x_powers).get(lin)
                if exp is None:
                    new.append(m)
                else:
                    new.extend(_substitute(m, lin, exp, rhs))
            eqs[var] = Equation(var=var, nu=other.nu, monomials=tuple(new))
    return PolySystem(p=system.p, equations=eqs,
                      cover_exponent=system.cover_exponent,
                      cyclic=tuple(cyclic))


def weight_search(system, max_vars=LP_VARIABLE_CEILING):
    """Feasible positive rational weights, or None.

    Solves {mu_ell * p^nu_ell >= weighted degree + 1, mu >= 1} exactly by
    substituting mu = 1 + t, t >= 0 and running two-phase simplex; the +1
    slack is equivalent to the open system by homogeneity.
    """
    xvars = system.xvars
    if not xvars:
        return {}
    if len(xvars) > max_vars:
        raise DimensionCeiling("%d weight variables exceed the LP bound %d"
                               % (len(xvars), max_vars))
    index = {v: k for k, v in enumerate(xvars)}
    A, b = [], []
    for var in xvars:
        eq = system.equations[var]
        d = system.p ** eq.nu
        for m in eq.monomials:
            row = [Fraction(0)] * len(xvars)
            rhs_const = Fraction(d - 1)
            for v, e in m.x_powers:
                row[index[v]] += e
                rhs_const -= e
            row[index[var]] -= d
            # sum t_i v_i - t_ell d <= d - 1 - sum v_i
            A.append(row)
            b.append(rhs_const)
    point = feasible_point(A, b)
    if point is None:
        return None
    return {v: Fraction(1) + point[index[v]] for v in xvars}


@dataclass
class FinitenessReport:
    p: int
    verdict: str  # CertifiedDefault | CertifiedSearched | NotCertified
    certificate: WeightCertificate
    searched_weights: dict | None
    cover_exponent: int
    degree_claim_asserted: bool

    def to_json_obj(self):
        obj = {
            "p": self.p,
            "verdict": self.verdict,
            "coverDegreeExponent": self.cover_exponent,
            "coverDegree": self.p ** self.cover_exponent,
            "degreeClaimAsserted": self.degree_claim_asserted,
            "certificate": self.certificate.to_json_obj(),
        }
        if self.searched_weights is not None:
            obj["searchedWeights"] = {
                "x[%d,%d]" % var: {"num": w.numerator, "den": w.denominator}
                for var, w in sorted(self.searched_weights.items())}
        return obj

    def to_json(self, pretty=False):
        return json.dumps(self.to_json_obj(), indent=2 if pretty else None)


def finiteness_report(datum, p):
    """default certificate; on failure eliminate linears and search weights."""
    from .perm import refine

    table = refine(datum)
    system = gen_system(table, p)
    cert = default_certificate(system)
    if cert.satisfied:
        return FinitenessReport(p=p, verdict="CertifiedDefault",
                                certificate=cert, searched_weights=None,
                                cover_exponent=system.cover_exponent,
                                degree_claim_asserted=True)
    reduced = eliminate_linear(system)
    weights = weight_search(reduced)
    if weights is not None:
        searched = check_certificate(reduced, weights, default=False)
        if searched.satisfied:
            return FinitenessReport(p=p, verdict="CertifiedSearched",
                                    certificate=searched,
                                    searched_weights=weights,
                                    cover_exponent=system.cover_exponent,
                                    degree_claim_asserted=False)
    return FinitenessReport(p=p, verdict="NotCertified", certificate=cert,
                            searched_weights=None,
                            cover_exponent=system.cover_exponent,
                            degree_claim_asserted=False)
