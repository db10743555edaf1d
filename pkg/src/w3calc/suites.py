"""Property suites behind ``w3calc verify``.

Each suite returns a list of :class:`Check` results.  Randomness comes from a
seeded :class:`random.Random`, so a suite run is reproducible byte for byte.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Callable

from . import bracket as br
from .hexquot import (HexRelator, Restriction, orbit_of, orbit_relators, reduce_mod_R,
                      relator_span_dimension, sigma, tau, tau_inv, in_survival_region)
from .linalg import rref
from .pi1cfg import Face, FaceMapParams, GeneratorTerm, HClass, Parity, act, normalize
from .ring import T13, LaurentPoly
from .w3 import (aggregate, aggregate_records, assembly_check, delta_ledger,
                 per_dot_expression, w3_closed_form)

PARITIES = (Parity.EVEN, Parity.ODD)


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    cases: int
    detail: str = ""

    def to_json(self) -> dict:
        out = {"name": self.name, "passed": self.passed, "cases": self.cases}
        if self.detail:
            out["detail"] = self.detail
        return out


def _run(name: str, cases, predicate) -> Check:
    """Evaluate ``predicate`` on every case; report the first failure."""
    n = 0
    for case in cases:
        n += 1
        if not predicate(case):
            return Check(name, False, n, f"failed on {case!r}")
    return Check(name, True, n)


def _rand_fraction(rng: random.Random) -> Fraction:
    return Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.choice([1, 1, 2, 3]))


def random_generator_term(rng: random.Random, k: int = 3, span: int = 6) -> GeneratorTerm:
    i, j = rng.choice([(a, b) for a in range(1, k + 1) for b in range(a + 1, k + 1)])
    return GeneratorTerm.monomial(i, j, rng.randint(-span, span), k)


def random_bracket_sum(rng: random.Random, parity: Parity, size: int | None = None,
                       span: int = 6) -> br.BracketSum:
    size = rng.randint(1, 6) if size is None else size
    terms = tuple(br.BracketTerm(random_generator_term(rng, span=span),
                                 random_generator_term(rng, span=span), _rand_fraction(rng))
                  for _ in range(size))
    return br.BracketSum(parity, 3, terms)


# -- relations ---------------------------------------------------------------------


def relations_suite(rng: random.Random) -> list[Check]:
    checks = []

    def w(i, j, par, e=0):
        return HClass.generator(i, j, 3, par, e)

    def module_relations(case):
        par, i, j, l, mono = case
        e = [0, 0, 0]
        e[i - 1] = mono
        base = normalize(e, i, j, par)
        if normalize(e, i, i, par) or normalize(e, j, i, par) != base.scale(par.sign()):
            return False
        tl = [0, 0, 0]
        tl[l - 1] = 1
        tj, ti_inv = [0, 0, 0], [0, 0, 0]
        tj[j - 1], ti_inv[i - 1] = 1, -1
        return act(tl, base) == base and act(tj, base) == act(ti_inv, base)

    cases = [(par, i, j, l, rng.randint(-9, 9))
             for par in PARITIES for i, j, l in permutations((1, 2, 3)) for _ in range(5)]
    checks.append(_run("module relations on generators", cases, module_relations))

    cyc = [(par, [br.bracket(w(1, 2, par), w(2, 3, par)), br.bracket(w(2, 3, par), w(3, 1, par)),
                  br.bracket(w(3, 1, par), w(1, 2, par))]) for par in PARITIES]
    checks.append(_run("cyclic identity", cyc,
                       lambda c: c[1][0] == c[1][1] == c[1][2] and bool(c[1][0])))

    def graded(case):
        par, f, g = case
        fc, gc = HClass(par, 3, {(f.i, f.j): f.poly}), HClass(par, 3, {(g.i, g.j): g.poly})
        return br.bracket(fc, gc) == br.bracket(gc, fc).scale(par.bracket_sign())

    cases = [(par, random_generator_term(rng), random_generator_term(rng))
             for par in PARITIES for _ in range(100)]
    checks.append(_run("graded symmetry", cases, graded))

    def three_term(case):
        par, (i, j, l), e = case
        return not br.bracket(w(i, j, par, e), w(i, l, par, e) + w(j, l, par, e))

    cases = [(par, p, 0) for par in PARITIES for p in permutations((1, 2, 3))]
    checks.append(_run("three-term relation [w_ij, w_il + w_jl] = 0", cases, three_term))

    def equivariance(case):
        par, f, g, m = case
        fc, gc = HClass(par, 3, {(f.i, f.j): f.poly}), HClass(par, 3, {(g.i, g.j): g.poly})
        lhs = br.bracket(act(m, fc), act(m, gc)).coeff_w12w23
        rhs = br.bracket(fc, gc).coeff_w12w23.shift((m[0] - m[1], m[2] - m[1]))
        return lhs == rhs

    cases = [(par, random_generator_term(rng), random_generator_term(rng),
              tuple(rng.randint(-4, 4) for _ in range(3)))
             for par in PARITIES for _ in range(100)]
    checks.append(_run("action commutes with brackets", cases, equivariance))

    def confluence(case):
        s, seed = case
        base = br.reduce(s)
        local = random.Random(seed)
        return all(br.reduce(s, local) == base for _ in range(3))

    cases = [(random_bracket_sum(rng, rng.choice(PARITIES)), rng.randrange(2**32))
             for _ in range(500)]
    checks.append(_run("confluence of randomised reduction", cases, confluence))

    def disjoint_k4(case):
        par, e1, e2 = case
        f = HClass.generator(1, 2, 4, par, e1)
        g = HClass.generator(3, 4, 4, par, e2)
        return not br.reduce(br.expand(f, g))

    checks.append(_run("disjoint brackets vanish at k=4",
                       [(par, rng.randint(-5, 5), rng.randint(-5, 5))
                        for par in PARITIES for _ in range(10)], disjoint_k4))
    return checks


# -- expansions ----------------------------------------------------------------------


def expected_face(alpha: int, beta: int, face: Face, parity: Parity,
                  params: FaceMapParams | None = None) -> br.ReducedClass:
    """The reduced image of [t1^alpha w12, t1^beta w12] under each face, as
    expected from the doubling-face expansions.

    The doubling faces also leave a w23 (resp. w12) diagonal.  For odd n the
    velocity term contributes a^2 [w_ij, w_ij] on top; all of these lie in the
    diagonal relator families, so the a-dependence dies in the closure.
    """
    params = params or FaceMapParams()
    s = parity.sign()
    odd = parity is Parity.ODD

    def diag(a, b, c=1):
        if (a == b and not odd) or not c:
            return {}
        if a <= b:
            return {(a, b): Fraction(c)}
        return {(b, a): Fraction(c * parity.bracket_sign())}

    if face is Face.T1_ZERO:
        return br.ReducedClass(diag23=diag(alpha, beta))
    if face is Face.T3_ONE:
        return br.ReducedClass(diag12=diag(alpha, beta))
    if face is Face.DOUBLE_FIRST:
        coeff = LaurentPoly(T13, [((alpha - beta, -beta), -1), ((beta - alpha, -alpha), s)])
        return br.ReducedClass(coeff, diag12=diag(0, 0, params.a1 ** 2),
                               diag13=diag(alpha, beta), diag23=diag(alpha, beta))
    coeff = LaurentPoly(T13, [((alpha, alpha - beta), -1), ((beta, beta - alpha), s)])
    return br.ReducedClass(coeff, diag12=diag(alpha, beta), diag13=diag(alpha, beta),
                           diag23=diag(0, 0, params.a2 ** 2))


def expansions_suite(rng: random.Random) -> list[Check]:
    del rng  # exhaustive sweep
    grid = [(par, a, b, a1, a2) for par in PARITIES for a in range(-3, 4) for b in range(-3, 4)
            for a1 in range(-2, 3) for a2 in range(-2, 3)]
    checks = []
    for face in Face:
        def matches(case, face=face):
            par, a, b, a1, a2 = case
            params = FaceMapParams(a1, a2)
            red = br.reduce(br.face_bracket(a, b, face, par, params))
            return red == expected_face(a, b, face, par, params)
        checks.append(_run(f"face {face.value} matches the expected expansion", grid, matches))

    def nine_terms(case):
        par, a, b, a1, a2 = case
        return len(br.face_bracket(a, b, Face.DOUBLE_FIRST, par, FaceMapParams(a1, a2))) == (9 if a1 else 4)

    checks.append(_run("double_first expands to 9 terms when a1 != 0", grid, nine_terms))

    def closure(case):
        par, a, b, a1, a2 = case
        params = FaceMapParams(a1, a2)
        out = {f: br.closure_reduce(br.reduce(br.face_bracket(a, b, f, par, params)), par)
               for f in Face}
        return (not out[Face.T1_ZERO] and not out[Face.T3_ONE] and not out[Face.DOUBLE_FIRST]
                and out[Face.DOUBLE_SECOND] == HexRelator((a, b), par).polynomial())

    checks.append(_run("closure: faces give 0, 0, 0 and the hexagon relator", grid, closure))
    return checks


# -- hexagon -------------------------------------------------------------------------


def brute_force_in_R(p: LaurentPoly, parity: Parity) -> bool:
    """Membership by rank comparison against every relator seeded at a member
    of an orbit touched by ``p``, using the raw (alpha, beta) seeds."""
    members = set()
    for u in p.support():
        members.update(orbit_of(u).members)
    rels = []
    for seed in members:
        rel = HexRelator(seed, parity).polynomial()
        if rel and set(rel.support()) <= members:
            rels.append(rel)
        elif rel:
            return False  # would contradict relator confinement
    cols = sorted(members)
    idx = {c: i for i, c in enumerate(cols)}

    def row(q):
        r = [Fraction(0)] * len(cols)
        for u, c in q.terms.items():
            r[idx[u]] = c
        return r

    base = [row(r) for r in rels]
    return len(rref(base, len(cols))[1]) == len(rref(base + [row(p)], len(cols))[1])


def random_orbit_element(rng: random.Random, parity: Parity, in_r: bool) -> LaurentPoly:
    u = (rng.randint(-20, 20), rng.randint(-20, 20))
    orbit = orbit_of(u)
    if in_r:
        total = LaurentPoly.zero(T13)
        for rel in orbit_relators(orbit, parity):
            total = total + rel.polynomial().scale(rng.randint(-3, 3))
        return total
    return LaurentPoly(T13, [(m, rng.randint(-3, 3)) for m in orbit.members])


def hexagon_suite(rng: random.Random) -> list[Check]:
    checks = []
    seeds = [(rng.choice(PARITIES), (rng.randint(-50, 50), rng.randint(-50, 50))) for _ in range(1000)]
    checks.append(_run("1000 random relators reduce to zero", seeds,
                       lambda c: reduce_mod_R(HexRelator(c[1], c[0]).polynomial(), c[0]).is_zero()))

    def confined(c):
        members = set(orbit_of(c[1]).members)
        return all(u in members for u, _ in HexRelator(c[1], c[0]).terms())

    checks.append(_run("relator support lies in one dihedral orbit", seeds, confined))

    pts = [(rng.randint(-60, 60), rng.randint(-60, 60)) for _ in range(1000)]

    def dihedral(u):
        t6 = u
        for _ in range(6):
            t6 = tau(t6)
        return sigma(tau(sigma(u))) == tau_inv(u) and t6 == u

    checks.append(_run("sigma tau sigma = tau^-1 and tau^6 = 1", pts, dihedral))

    def span5(c):
        par, u = c
        orbit = orbit_of(u)
        return not orbit.free or relator_span_dimension(orbit, par) == 5

    checks.append(_run("free orbits have a 5-dimensional relator span",
                       [(rng.choice(PARITIES), u) for u in pts[:200]], span5))

    def rand_poly():
        return LaurentPoly(T13, [((rng.randint(-8, 8), rng.randint(-8, 8)), rng.randint(-4, 4))
                                 for _ in range(rng.randint(0, 6))])

    samples = [(rng.choice(PARITIES), rng.choice(list(Restriction)), rand_poly(), rand_poly(),
                _rand_fraction(rng)) for _ in range(200)]

    def linear(c):
        par, res, p, q, lam = c
        red = lambda x: reduce_mod_R(x, par, res).as_poly()
        return red(p + q.scale(lam)) == red(p) + red(q).scale(lam)

    def idempotent(c):
        par, res, p, _, _ = c
        once = reduce_mod_R(p, par, res)
        return reduce_mod_R(once.as_poly(), par, res) == once

    checks.append(_run("reduction is linear", samples, linear))
    checks.append(_run("reduction is idempotent", samples, idempotent))

    elems = []
    for _ in range(200):
        par = rng.choice(PARITIES)
        elems.append((par, random_orbit_element(rng, par, rng.random() < 0.5)))
    checks.append(_run("brute-force membership agrees with echelon reduction", elems,
                       lambda c: brute_force_in_R(c[1], c[0]) == reduce_mod_R(c[1], c[0]).is_zero()))
    return checks


# -- ledger ----------------------------------------------------------------------------


def ledger_suite(rng: random.Random) -> list[Check]:
    del rng
    ks = [(par, k) for par in PARITIES for k in range(3, 65)]
    checks = [
        _run("ledger aggregate equals closed form, k = 3..64", ks,
             lambda c: aggregate(delta_ledger(c[1]), c[0]) == w3_closed_form(c[1], c[0])),
        _run("generic dot aggregates to the per-dot expression", ks,
             lambda c: aggregate_records(delta_ledger(c[1]).generic, c[0])
             == per_dot_expression(c[1], c[0])),
        _run("assembly identity last - A = B", ks, lambda c: assembly_check(c[1], c[0])),
    ]

    def one_free_orbit(c):
        par, k = c
        support = w3_closed_form(k, par).support()
        orbits = {orbit_of(u).key for u in support}
        return (len(support) == 8 and len(orbits) == 1 and orbit_of(support[0]).free
                and all(in_survival_region(u) for u in support))

    big = [(par, k) for par, k in ks if 4 <= k <= 40]
    checks.append(_run("W3(delta_k) lies in one free orbit inside the survival region", big,
                       one_free_orbit))
    keys = [orbit_of(w3_closed_form(k, Parity.EVEN).support()[0]).key for k in range(4, 41)]
    checks.append(Check("distinct k use disjoint orbits", len(set(keys)) == len(keys), len(keys)))

    def k3_orbit(par):
        support = w3_closed_form(3, par).support()
        orbit = orbit_of(support[0])
        return (orbit.size == 6 and len(orbit.sigma_fixed) == 2
                and all(u in orbit for u in support))

    checks.append(_run("k=3 orbit has 6 members and two sigma-fixed points", PARITIES, k3_orbit))
    return checks


SUITES: dict[str, Callable[[random.Random], list[Check]]] = {
    "relations": relations_suite,
    "expansions": expansions_suite,
    "hexagon": hexagon_suite,
    "ledger": ledger_suite,
}


def run_suite(name: str, seed: int = 0) -> dict[str, list[Check]]:
    """Run one suite (or ``all``) with a fresh RNG per suite."""
    names = list(SUITES) if name == "all" else [name]
    return {n: SUITES[n](random.Random(f"{seed}:{n}")) for n in names}
