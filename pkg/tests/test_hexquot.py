import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from w3calc.hexquot import (HexRelator, Restriction, in_survival_region, is_in_R, orbit_of,
                            orbit_relators, rank_mod_R, reduce_mod_R, relator_span_dimension,
                            sigma, tau, tau_inv)
from w3calc.pi1cfg import Parity
from w3calc.ring import T13, LaurentPoly
from w3calc.suites import brute_force_in_R, random_orbit_element

parities = st.sampled_from(list(Parity))
points = st.tuples(st.integers(-60, 60), st.integers(-60, 60))
restrictions = st.sampled_from(list(Restriction))
polys = st.lists(st.tuples(st.tuples(st.integers(-8, 8), st.integers(-8, 8)),
                           st.integers(-4, 4)), max_size=6).map(lambda ts: LaurentPoly(T13, ts))


def mono(x, z, c=1):
    return LaurentPoly(T13, {(x, z): c})


@given(points)
def test_dihedral_relations(u):
    assert sigma(tau(sigma(u))) == tau_inv(u)
    v = u
    for _ in range(6):
        v = tau(v)
    assert v == u
    assert tau(tau(tau(u))) == (-u[0], -u[1])


@given(points)
def test_orbit_matches_brute_force(u):
    orbit = orbit_of(u)
    assert set(orbit.members) == oracles.dihedral_orbit(u)
    assert orbit.size in (1, 6, 12)


def test_free_orbit():
    orbit = orbit_of((1, 3))
    assert orbit.size == 12 and orbit.free and not orbit.sigma_fixed


def test_k3_orbit():
    orbit = orbit_of((1, 2))
    assert set(orbit.members) == {(-1, -2), (-2, -1), (-1, 1), (1, 2), (2, 1), (1, -1)}
    assert orbit.tau_orbit_sigma_invariant
    assert set(orbit.sigma_fixed) == {(-1, 1), (1, -1)}


def test_origin_orbit_is_a_point():
    assert orbit_of((0, 0)).members == ((0, 0),)


@settings(max_examples=300)
@given(parities, points)
def test_relator_is_confined_to_one_orbit(par, seed):
    members = set(orbit_of(seed).members)
    assert all(u in members for u, _ in HexRelator(seed, par).terms())


@given(parities, points)
def test_relators_reduce_to_zero(par, seed):
    rel = HexRelator(seed, par).polynomial()
    assert is_in_R(rel, par)
    assert oracles.to_sympy(rel) - oracles.hex_relator(*seed, 1 if par is Parity.ODD else 0) == 0


@pytest.mark.parametrize("par", list(Parity))
def test_degenerate_seed_vanishes(par):
    assert not HexRelator((0, 0), par).polynomial()


@pytest.mark.parametrize("par", list(Parity))
@pytest.mark.parametrize("u", [(1, 3), (2, 7), (-5, 4), (10, -3)])
def test_free_orbit_relator_span_has_dimension_five(par, u):
    orbit = orbit_of(u)
    assert orbit.free
    assert relator_span_dimension(orbit, par) == 5
    assert len(orbit_relators(orbit, par)) == 12


@settings(max_examples=150)
@given(parities, restrictions, polys, polys, st.fractions(max_denominator=5, min_value=-3, max_value=3))
def test_reduction_is_linear(par, res, p, q, lam):
    red = lambda x: reduce_mod_R(x, par, res).as_poly()
    assert red(p + q.scale(lam)) == red(p) + red(q).scale(lam)


@settings(max_examples=150)
@given(parities, restrictions, polys)
def test_reduction_is_idempotent_and_congruent(par, res, p):
    r = reduce_mod_R(p, par, res)
    assert reduce_mod_R(r.as_poly(), par, res) == r
    assert reduce_mod_R(p - r.as_poly(), par, res).is_zero()


@pytest.mark.parametrize("par", list(Parity))
def test_single_monomial_is_not_in_R(par):
    assert not is_in_R(mono(1, 1), par)
    assert is_in_R(LaurentPoly.zero(T13), par)


def test_membership_against_sympy_oracle():
    rng = random.Random(11)
    for _ in range(60):
        par = rng.choice(list(Parity))
        p = random_orbit_element(rng, par, rng.random() < 0.5)
        expected = oracles.in_R(oracles.to_sympy(p), 1 if par is Parity.ODD else 0)
        assert is_in_R(p, par) == expected
        assert brute_force_in_R(p, par) == expected


def test_rank_edge_cases():
    assert rank_mod_R([], "even").rank == 0
    rels = [HexRelator((3, 1), Parity.EVEN).polynomial(), HexRelator((-2, 5), Parity.EVEN).polynomial()]
    assert rank_mod_R(rels, "even").rank == 0
    cert = rank_mod_R([mono(1, 1), mono(1, 1).scale(2), mono(5, 2)], "odd")
    assert cert.rank == 2 and not cert.independent and cert.check()


def test_certificate_check_detects_tampering():
    cert = rank_mod_R([mono(1, 1), mono(5, 2)], "odd")
    assert cert.check()
    forged = type(cert)(cert.labels, cert.columns, cert.matrix, 1, cert.pivots[:1],
                        cert.parity, cert.restriction)
    assert not forged.check()


@pytest.mark.parametrize("u, survives", [((1, 2), True), ((0, 3), False), ((4, 0), False), ((2, 2), False)])
def test_survival_region(u, survives):
    assert in_survival_region(u) == survives
    killed = reduce_mod_R(mono(*u), "even", "topological")
    if not survives:
        assert killed.is_zero()


def test_residue_json_is_exact():
    data = reduce_mod_R(mono(1, 1, Fraction(1, 3)), "odd").to_json()
    assert data["parity"] == "odd" and data["restriction"] == "none"
    coeffs = [t["coeff"] for o in data["orbits"] for t in o["residue"]]
    assert all("/" in c for c in coeffs)
