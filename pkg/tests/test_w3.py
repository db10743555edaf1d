import json

import pytest
import sympy as sp

import oracles
from w3calc.errors import DomainError, LedgerError
from w3calc.hexquot import orbit_of
from w3calc.pi1cfg import Parity
from w3calc.ring import T13, LaurentPoly
from w3calc.w3 import (Affine, CrossingRecord, LedgerFile, PairingKind, aggregate,
                       aggregate_records, assembly_check, bundled_template, delta_ledger,
                       independence_certificate, load_ledger, parse_ledger, per_dot_expression,
                       residual_terms, w3_closed_form)

t1, t3 = oracles.t1, oracles.t3


def sympy_closed_form(k, n_parity):
    s = (-1) ** n_parity
    return ((k - 1) * (t1**-1 * t3**(1 - k) + s * t1**(1 - k) * t3**-1 - t1**(2 - k) * t3
                       - s * t1 * t3**(2 - k))
            + t1 * t3**(k - 1) + s * t1**(k - 1) * t3 - t1**(1 - k) * t3**(2 - k)
            - s * t1**(2 - k) * t3**(1 - k))


@pytest.mark.parametrize("k", [3, 4, 7, 20])
@pytest.mark.parametrize("par, n", [(Parity.EVEN, 0), (Parity.ODD, 1)])
def test_closed_form_against_sympy(k, par, n):
    assert sp.expand(oracles.to_sympy(w3_closed_form(k, par)) - sympy_closed_form(k, n)) == 0


def test_k4_even_example():
    want = LaurentPoly(T13, [((-1, -3), 3), ((-3, -1), 3), ((-2, 1), -3), ((1, -2), -3),
                             ((1, 3), 1), ((3, 1), 1), ((-3, -2), -1), ((-2, -3), -1)])
    assert w3_closed_form(4, "even") == want


@pytest.mark.parametrize("bad", [2, 0, -4])
def test_domain(bad):
    with pytest.raises(DomainError):
        w3_closed_form(bad, "odd")
    with pytest.raises(DomainError):
        delta_ledger(bad)


@pytest.mark.parametrize("k", range(3, 65))
def test_ledger_agrees_with_closed_form(k):
    for par in Parity:
        assert aggregate(delta_ledger(k), par) == w3_closed_form(k, par)
        assert assembly_check(k, par)


def test_generic_dot_at_k4():
    got = aggregate_records(delta_ledger(4).generic, "even")
    assert got == LaurentPoly(T13, [((-1, -3), 1), ((-3, -1), 1), ((-2, 1), -1), ((1, -2), -1)])


@pytest.mark.parametrize("par", list(Parity))
def test_last_dot_has_eight_terms(par):
    k = 9
    last = aggregate_records(delta_ledger(k).last, par)
    assert len(last) == 8
    assert last - per_dot_expression(k, par) == residual_terms(k, par)


def test_single_record_example():
    k = 6
    rec = CrossingRecord(PairingKind.CO31, k - 2, PairingKind.CO23, 1 - k, 1, 1)
    assert rec.exponents() == (-1, 1 - k)
    assert aggregate_records([rec], "odd") == LaurentPoly(T13, {(-1, 1 - k): 1})


def test_empty_ledger_aggregates_to_zero():
    assert not aggregate(LedgerFile(5, (), ()), "even")


@pytest.mark.parametrize("text, a, b", [("k-2", 1, -2), ("1-k", -1, 1), ("2*k+3", 2, 3),
                                        ("-(k - 1)", -1, 1), (7, 0, 7), ("k*3", 3, 0)])
def test_affine_parse(text, a, b):
    assert Affine.parse(text) == Affine(a, b)


@pytest.mark.parametrize("text", ["k*k", "k/2", "j+1", "2.5", "__import__('os')", True, None])
def test_affine_parse_rejects(text):
    with pytest.raises(LedgerError):
        Affine.parse(text)


def _record(first="Co21", g1="k-1", second="Co23", g2=0, sign=1):
    return {"first": {"kind": first, "gamma": g1}, "second": {"kind": second, "gamma": g2},
            "sign": sign}


@pytest.mark.parametrize("data", [
    [],
    {"k": 5, "generic": [_record(first="Co13")], "last": []},
    {"k": 5, "generic": [_record(first="Co31", second="Co13")], "last": []},
    {"k": 5, "generic": [_record(first="Co99")], "last": []},
    {"k": 5, "generic": [_record(sign=2)], "last": []},
    {"k": 5, "generic": [_record(sign={"even": 1})], "last": []},
    {"k": 5, "generic": [{"first": {}}], "last": []},
    {"k": 5, "generic": []},
    {"k": "5", "generic": [], "last": []},
    {"k": None, "generic": [], "last": []},
])
def test_parse_ledger_rejects(data):
    with pytest.raises(LedgerError):
        parse_ledger(data)


def test_ledger_k_conflict():
    with pytest.raises(LedgerError):
        parse_ledger({"k": 5, "generic": [], "last": []}, k=6)
    with pytest.raises(DomainError):
        parse_ledger({"k": 2, "generic": [], "last": []})


def test_ledger_file_roundtrip(tmp_path):
    ledger = delta_ledger(7)
    path = tmp_path / "ledger.json"
    path.write_text(json.dumps(ledger.to_json()), encoding="utf-8")
    assert load_ledger(path) == ledger
    assert load_ledger(path, 7) == ledger


def test_load_ledger_errors(tmp_path):
    with pytest.raises(LedgerError):
        load_ledger(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{not json", encoding="utf-8")
    with pytest.raises(LedgerError):
        load_ledger(bad)


def test_bundled_template_is_parametric():
    assert bundled_template()["k"] is None


@pytest.mark.parametrize("k", range(4, 41))
def test_support_lies_in_one_free_orbit(k):
    support = w3_closed_form(k, "odd").support()
    orbits = {orbit_of(u).key for u in support}
    assert len(orbits) == 1 and orbit_of(support[0]).free


def test_k3_support_lies_in_the_degenerate_orbit():
    for par in Parity:
        support = w3_closed_form(3, par).support()
        orbit = orbit_of(support[0])
        assert orbit.size == 6 and len(orbit.sigma_fixed) == 2
        assert all(u in orbit for u in support)


@pytest.mark.parametrize("kmin, kmax, par, res, rank", [
    (4, 10, "even", "none", 7), (4, 10, "odd", "topological", 7), (4, 4, "even", "none", 1),
])
def test_independence_examples(kmin, kmax, par, res, rank):
    cert = independence_certificate(kmin, kmax, par, res)
    assert cert.rank == rank and cert.independent and cert.check()


def test_independence_domain():
    with pytest.raises(DomainError):
        independence_certificate(3, 10, "even")
    with pytest.raises(DomainError):
        independence_certificate(8, 5, "even")


def test_parallel_certificate_matches_serial():
    serial = independence_certificate(4, 12, "odd")
    assert independence_certificate(4, 12, "odd", workers=3) == serial
