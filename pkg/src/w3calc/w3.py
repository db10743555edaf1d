"""The W3 invariant of the delta_k family.

Two independent routes produce W3(delta_k):

* :func:`w3_closed_form`, the closed formula; and
* :func:`aggregate` over a crossing ledger, which sums signed linking
  contributions of cohorizontal pairings green dot by green dot.

The bundled ledger (``data/delta_ledger.json``) records, for a generic dot
(repeated k-2 times) and for the last dot, which pair of cohorizontal
manifolds cross, at which deck translates, and with which sign.
"""

from __future__ import annotations

import ast
import enum
import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Any, Mapping, Sequence, Union

from .errors import DomainError, LedgerError
from .hexquot import IndependenceCertificate, Restriction, rank_mod_R
from .pi1cfg import Parity
from .ring import T13, LaurentPoly


class PairingKind(enum.Enum):
    """Constituents of the linking pair
    (t^a Co21 - t^(a-b) Co31,  t^(b-a) Co13 - t^b Co23)."""

    CO21 = "Co21"
    CO31 = "Co31"
    CO13 = "Co13"
    CO23 = "Co23"

    @property
    def sign(self) -> int:
        return _KIND_SIGN[self]

    @property
    def is_first(self) -> bool:
        return self in (PairingKind.CO21, PairingKind.CO31)


_KIND_SIGN = {PairingKind.CO21: 1, PairingKind.CO31: -1,
              PairingKind.CO13: 1, PairingKind.CO23: -1}


def solve_translates(first: PairingKind, gamma1: int,
                     second: PairingKind, gamma2: int) -> tuple[int, int]:
    """The unique (alpha, beta) with translate(first) = gamma1 and
    translate(second) = gamma2, where the translates are
    Co21: alpha, Co31: alpha - beta, Co13: beta - alpha, Co23: beta."""
    if first is PairingKind.CO21 and second is PairingKind.CO23:
        return gamma1, gamma2
    if first is PairingKind.CO21 and second is PairingKind.CO13:
        return gamma1, gamma2 + gamma1
    if first is PairingKind.CO31 and second is PairingKind.CO23:
        return gamma1 + gamma2, gamma2
    if first is PairingKind.CO31 and second is PairingKind.CO13:
        # alpha - beta = g1 and beta - alpha = g2 only fix the difference
        raise LedgerError("Co31 paired with Co13 does not determine (alpha, beta)")
    raise LedgerError(f"bad pairing order {first.value}, {second.value}")


@dataclass(frozen=True)
class Affine:
    """``a*k + b`` with integer a, b."""

    a: int
    b: int

    def __call__(self, k: int) -> int:
        return self.a * k + self.b

    def __str__(self):
        if not self.a:
            return str(self.b)
        head = {1: "k", -1: "-k"}.get(self.a, f"{self.a}*k")
        if not self.b:
            return head
        return f"{head}{self.b:+d}"

    @classmethod
    def parse(cls, value: Union[int, str]) -> "Affine":
        if isinstance(value, bool):
            raise LedgerError(f"bad translate {value!r}")
        if isinstance(value, int):
            return cls(0, value)
        if not isinstance(value, str):
            raise LedgerError(f"translate must be an integer or an expression in k, got {value!r}")
        try:
            tree = ast.parse(value, mode="eval").body
            a, b = _affine(tree)
        except (SyntaxError, LedgerError) as exc:
            raise LedgerError(f"translate {value!r} is not an integer-affine expression in k") from exc
        return cls(a, b)


def _affine(node) -> tuple[int, int]:
    if isinstance(node, ast.Constant) and type(node.value) is int:
        return 0, node.value
    if isinstance(node, ast.Name) and node.id == "k":
        return 1, 0
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        a, b = _affine(node.operand)
        return (-a, -b) if isinstance(node.op, ast.USub) else (a, b)
    if isinstance(node, ast.BinOp):
        la, lb = _affine(node.left)
        ra, rb = _affine(node.right)
        if isinstance(node.op, ast.Add):
            return la + ra, lb + rb
        if isinstance(node.op, ast.Sub):
            return la - ra, lb - rb
        if isinstance(node.op, ast.Mult) and (la == 0 or ra == 0):
            return la * rb + ra * lb, lb * rb
    raise LedgerError("not affine")


@dataclass(frozen=True)
class CrossingRecord:
    first: PairingKind
    gamma1: int
    second: PairingKind
    gamma2: int
    sign_even: int
    sign_odd: int

    def __post_init__(self):
        if not self.first.is_first or self.second.is_first:
            raise LedgerError(
                f"record pairs {self.first.value} with {self.second.value}; expected "
                "Co21/Co31 first and Co13/Co23 second")
        if self.sign_even not in (1, -1) or self.sign_odd not in (1, -1):
            raise LedgerError("crossing signs must be +1 or -1")
        solve_translates(self.first, self.gamma1, self.second, self.gamma2)

    def crossing_sign(self, parity: Parity) -> int:
        return self.sign_even if Parity.parse(parity) is Parity.EVEN else self.sign_odd

    def exponents(self) -> tuple[int, int]:
        return solve_translates(self.first, self.gamma1, self.second, self.gamma2)

    def contribution(self, parity: Parity) -> int:
        return self.crossing_sign(parity) * self.first.sign * self.second.sign

    def to_json(self) -> dict:
        return {"first": {"kind": self.first.value, "gamma": self.gamma1},
                "second": {"kind": self.second.value, "gamma": self.gamma2},
                "sign": {"even": self.sign_even, "odd": self.sign_odd}}


@dataclass(frozen=True)
class LedgerFile:
    k: int
    generic: tuple[CrossingRecord, ...]
    last: tuple[CrossingRecord, ...]

    def __post_init__(self):
        if self.k < 3:
            raise DomainError(f"ledgers are defined for k >= 3, got k={self.k}")

    def to_json(self) -> dict:
        return {"k": self.k,
                "generic": [r.to_json() for r in self.generic],
                "last": [r.to_json() for r in self.last]}


def _parse_record(raw: Any, k: int) -> CrossingRecord:
    try:
        first, second, sign = raw["first"], raw["second"], raw["sign"]
        kinds = []
        for part in (first, second):
            try:
                kind = PairingKind(part["kind"])
            except ValueError:
                raise LedgerError(f"unknown pairing kind {part['kind']!r}") from None
            kinds.append((kind, Affine.parse(part["gamma"])(k)))
    except (KeyError, TypeError) as exc:
        raise LedgerError(f"malformed ledger record {raw!r}") from exc
    if isinstance(sign, Mapping):
        try:
            s_even, s_odd = sign["even"], sign["odd"]
        except KeyError as exc:
            raise LedgerError("per-parity sign needs both 'even' and 'odd'") from exc
    else:
        s_even = s_odd = sign
    for s in (s_even, s_odd):
        if type(s) is not int:
            raise LedgerError(f"crossing sign must be an integer, got {s!r}")
    (k1, g1), (k2, g2) = kinds
    return CrossingRecord(k1, g1, k2, g2, s_even, s_odd)


def parse_ledger(data: Any, k: int | None = None) -> LedgerFile:
    """Validate ledger JSON and instantiate its translates.

    A file with ``"k": null`` is a template and needs ``k``; a file with an
    integer ``k`` must agree with ``k`` when both are given.
    """
    if not isinstance(data, Mapping):
        raise LedgerError("ledger JSON must be an object")
    file_k = data.get("k")
    if file_k is not None:
        if type(file_k) is not int:
            raise LedgerError(f"ledger 'k' must be an integer or null, got {file_k!r}")
        if k is not None and k != file_k:
            raise LedgerError(f"ledger is for k={file_k}, but k={k} was requested")
        k = file_k
    if k is None:
        raise LedgerError("ledger template needs an explicit k")
    if k < 3:
        raise DomainError(f"ledgers are defined for k >= 3, got k={k}")
    sections = {}
    for name in ("generic", "last"):
        records = data.get(name)
        if not isinstance(records, list):
            raise LedgerError(f"ledger section {name!r} must be an array")
        sections[name] = tuple(_parse_record(r, k) for r in records)
    return LedgerFile(k, sections["generic"], sections["last"])


def load_ledger(path: Union[str, Path], k: int | None = None) -> LedgerFile:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise LedgerError(f"cannot read ledger {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise LedgerError(f"ledger {path} is not valid JSON: {exc}") from exc
    return parse_ledger(data, k)


def bundled_template() -> dict:
    text = resources.files("w3calc").joinpath("data/delta_ledger.json").read_text(encoding="utf-8")
    return json.loads(text)


def delta_ledger(k: int) -> LedgerFile:
    if k < 3:
        raise DomainError(f"delta_k is defined for k >= 3, got k={k}")
    return parse_ledger(bundled_template(), k)


def aggregate_records(records: Sequence[CrossingRecord], parity: Parity) -> LaurentPoly:
    parity = Parity.parse(parity)
    terms: dict[tuple[int, int], int] = {}
    for r in records:
        e = r.exponents()
        terms[e] = terms.get(e, 0) + r.contribution(parity)
    return LaurentPoly(T13, terms)


def aggregate(ledger: LedgerFile, parity: Parity) -> LaurentPoly:
    """Sum of all crossing contributions: (k-2) generic dots plus the last dot."""
    generic = aggregate_records(ledger.generic, parity)
    return generic.scale(ledger.k - 2) + aggregate_records(ledger.last, parity)


def _check_k(k: int):
    if type(k) is not int or k < 3:
        raise DomainError(f"delta_k is defined for integer k >= 3, got {k!r}")


def per_dot_expression(k: int, parity: Parity) -> LaurentPoly:
    """Contribution of a single generic green dot."""
    _check_k(k)
    s = Parity.parse(parity).sign()
    return LaurentPoly(T13, [((-1, 1 - k), 1), ((1 - k, -1), s),
                             ((2 - k, 1), -1), ((1, 2 - k), -s)])


def residual_terms(k: int, parity: Parity) -> LaurentPoly:
    """The part of W3(delta_k) outside the (k-1)-fold repeated block."""
    _check_k(k)
    s = Parity.parse(parity).sign()
    return LaurentPoly(T13, [((1, k - 1), 1), ((k - 1, 1), s),
                             ((1 - k, 2 - k), -1), ((2 - k, 1 - k), -s)])


def w3_closed_form(k: int, parity: Parity) -> LaurentPoly:
    _check_k(k)
    return per_dot_expression(k, parity).scale(k - 1) + residual_terms(k, parity)


def assembly_check(k: int, parity: Parity, ledger: LedgerFile | None = None) -> bool:
    """(k-2) A + last = (k-1) A + B, i.e. last - A = B, with A and B taken
    from the closed formula and ``last`` from the ledger."""
    _check_k(k)
    ledger = ledger or delta_ledger(k)
    last = aggregate_records(ledger.last, parity)
    a = per_dot_expression(k, parity)
    return last - a == residual_terms(k, parity)


def independence_certificate(kmin: int, kmax: int, parity: Parity,
                             restriction: Restriction | str = Restriction.NONE,
                             workers: int = 1) -> IndependenceCertificate:
    if type(kmin) is not int or type(kmax) is not int:
        raise DomainError("kmin and kmax must be integers")
    if kmin < 4:
        raise DomainError(f"independence is claimed for k >= 4 only, got kmin={kmin}")
    if kmax < kmin:
        raise DomainError(f"empty range: kmin={kmin} > kmax={kmax}")
    ks = range(kmin, kmax + 1)
    elements = [w3_closed_form(k, parity) for k in ks]
    return rank_mod_R(elements, parity, restriction,
                      labels=[f"W3(delta_{k})" for k in ks], workers=workers)
