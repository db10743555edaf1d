"""Normal forms in the rational (n-1)-st homotopy group of the k-point
configuration space of S^1 x D^{n-1}.

The group is generated, as a module over Q[t1^+-1, ..., tk^+-1], by classes
``w_ij`` subject to

* ``w_ii = 0``
* ``w_ij = (-1)^n w_ji``
* ``t_l . w_ij = w_ij`` for ``l`` not in ``{i, j}``
* ``t_j . w_ij = t_i^-1 . w_ij``

so every element is uniquely a sum of ``p_ij(t_i) . w_ij`` over pairs
``i < j``, with ``p_ij`` a Laurent polynomial in ``t_i`` alone.  That is the
normal form stored by :class:`HClass`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Mapping, Sequence, Union

from .errors import StructuralError
from .ring import LaurentPoly, Scalar, as_fraction, lp_subst, t_vars


class Parity(enum.Enum):
    """Parity of the ambient dimension n."""

    EVEN = "even"
    ODD = "odd"

    def sign(self) -> int:
        """(-1)^n"""
        return 1 if self is Parity.EVEN else -1

    def bracket_sign(self) -> int:
        """Sign of swapping a Whitehead bracket of two (n-1)-classes: (-1)^(n-1)."""
        return -self.sign()

    @classmethod
    def parse(cls, value: Union["Parity", str, int]) -> "Parity":
        if isinstance(value, Parity):
            return value
        if isinstance(value, bool):
            raise StructuralError(f"bad parity {value!r}")
        if isinstance(value, int):
            return cls.EVEN if value % 2 == 0 else cls.ODD
        try:
            return cls(str(value).lower())
        except ValueError:
            raise StructuralError(f"parity must be 'even' or 'odd', got {value!r}") from None

    def __str__(self):
        return self.value


Pair = tuple[int, int]
MonomialLike = Union[LaurentPoly, Sequence[int]]


@dataclass(frozen=True)
class GeneratorTerm:
    """``poly(t_i) . w_ij`` with ``i < j``."""

    i: int
    j: int
    poly: LaurentPoly

    def __post_init__(self):
        if not 1 <= self.i < self.j <= self.poly.nvars:
            raise StructuralError(f"generator indices ({self.i},{self.j}) not normal")
        for exps in self.poly.terms:
            if any(e for idx, e in enumerate(exps) if idx != self.i - 1):
                raise StructuralError(
                    f"coefficient of w{self.i}{self.j} uses variables other than t{self.i}")

    @property
    def k(self) -> int:
        return self.poly.nvars

    @classmethod
    def monomial(cls, i: int, j: int, exponent: int, k: int,
                 coeff: Scalar = 1) -> "GeneratorTerm":
        exps = [0] * k
        exps[i - 1] = exponent
        return cls(i, j, LaurentPoly.monomial(t_vars(k), exps, coeff))

    def is_unit_monomial(self) -> bool:
        return self.poly.is_monomial() and next(iter(self.poly.terms.values())) == 1

    @property
    def exponent(self) -> int:
        """Exponent of t_i for a monomial term."""
        if not self.poly.is_monomial():
            raise StructuralError("exponent of a non-monomial generator term")
        (exps, _), = self.poly.terms.items()
        return exps[self.i - 1]

    def monomials(self) -> Iterator[tuple[int, Fraction]]:
        """(exponent of t_i, coefficient) pairs in ascending exponent order."""
        for exps, c in self.poly.items():
            yield exps[self.i - 1], c

    def __str__(self):
        return f"({self.poly}).w{self.i}{self.j}"


@dataclass(frozen=True)
class FaceMapParams:
    """Degrees of the velocity-vector maps on the two doubling faces."""

    a1: int = 0
    a2: int = 0


class Face(enum.Enum):
    T1_ZERO = "t1_zero"
    DOUBLE_FIRST = "double_first"
    DOUBLE_SECOND = "double_second"
    T3_ONE = "t3_one"


@dataclass(frozen=True, eq=False)
class HClass:
    parity: Parity
    k: int
    terms: Mapping[Pair, LaurentPoly] = field(default_factory=dict)

    def __post_init__(self):
        if self.k < 1:
            raise StructuralError(f"k must be positive, got {self.k}")
        clean = {}
        for (i, j), poly in self.terms.items():
            if poly:
                GeneratorTerm(i, j, poly)  # validates normal form
                clean[(i, j)] = poly
        object.__setattr__(self, "terms", clean)

    @classmethod
    def zero(cls, k: int, parity: Parity) -> "HClass":
        return cls(Parity.parse(parity), k, {})

    @classmethod
    def generator(cls, i: int, j: int, k: int, parity: Parity,
                  exponent: int = 0, coeff: Scalar = 1) -> "HClass":
        """``coeff * t_i^exponent . w_ij`` brought to normal form."""
        exps = [0] * k
        if 1 <= i <= k:
            exps[i - 1] = exponent
        return normalize(exps, i, j, parity, coeff=coeff)

    def __eq__(self, other):
        if not isinstance(other, HClass):
            return NotImplemented
        return (self.parity, self.k, self.terms) == (other.parity, other.k, other.terms)

    def __hash__(self):
        return hash((self.parity, self.k, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def _check(self, other: "HClass"):
        if not isinstance(other, HClass):
            raise StructuralError(f"expected HClass, got {type(other).__name__}")
        if other.k != self.k or other.parity != self.parity:
            raise StructuralError("k or parity mismatch between classes")

    def __add__(self, other: "HClass") -> "HClass":
        self._check(other)
        out = dict(self.terms)
        for pair, poly in other.terms.items():
            out[pair] = out[pair] + poly if pair in out else poly
        return HClass(self.parity, self.k, out)

    def __neg__(self):
        return HClass(self.parity, self.k, {p: -q for p, q in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, q: Scalar) -> "HClass":
        return HClass(self.parity, self.k, {p: poly.scale(q) for p, poly in self.terms.items()})

    def generator_terms(self) -> list[GeneratorTerm]:
        return [GeneratorTerm(i, j, self.terms[(i, j)]) for i, j in sorted(self.terms)]

    def __iter__(self):
        return iter(self.generator_terms())

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(str(g) for g in self.generator_terms())

    def __repr__(self):
        return f"HClass({self.parity.value}, k={self.k}, {self})"

    def to_json(self) -> list[dict]:
        return [{"i": g.i, "j": g.j, "poly": g.poly.to_json()} for g in self.generator_terms()]

    @classmethod
    def from_json(cls, data: list, k: int, parity: Parity) -> "HClass":
        parity = Parity.parse(parity)
        total = cls.zero(k, parity)
        for item in data:
            try:
                i, j, poly = item["i"], item["j"], item["poly"]
            except (KeyError, TypeError) as exc:
                raise StructuralError(f"bad HClass term {item!r}") from exc
            total = total + normalize(LaurentPoly.from_json(t_vars(k), poly), i, j, parity)
        return total


def _as_poly(mono: MonomialLike, k: int | None) -> LaurentPoly:
    if isinstance(mono, LaurentPoly):
        if k is not None and mono.nvars != k:
            raise StructuralError(f"monomial has {mono.nvars} variables, expected {k}")
        return mono
    exps = tuple(mono)
    if k is not None and len(exps) != k:
        raise StructuralError(f"exponent vector {exps} has length {len(exps)}, expected {k}")
    return LaurentPoly.monomial(t_vars(len(exps)), exps)


def normalize(mono: MonomialLike, i: int, j: int, parity: Parity | str,
              coeff: Scalar = 1, k: int | None = None) -> HClass:
    """Normal form of ``coeff * mono . w_ij``.

    ``mono`` is a Laurent polynomial (usually a monomial) in t1..tk, or its
    exponent vector.  Exponents on t_l for l outside {i, j} are dropped, the
    t_j exponent is folded into t_i with a sign flip, and the indices are
    ordered at the cost of a factor (-1)^n.
    """
    parity = Parity.parse(parity)
    poly = _as_poly(mono, k)
    k = poly.nvars
    if not (1 <= i <= k and 1 <= j <= k):
        raise StructuralError(f"indices ({i},{j}) out of range for k={k}")
    if i == j:
        return HClass.zero(k, parity)
    lo, hi = min(i, j), max(i, j)
    sign = parity.sign() if i > j else 1
    q = as_fraction(coeff) * sign
    out: dict[tuple[int, ...], Fraction] = {}
    for exps, c in poly.terms.items():
        e = [0] * k
        e[lo - 1] = exps[lo - 1] - exps[hi - 1]
        key = tuple(e)
        out[key] = out.get(key, Fraction(0)) + c * q
    return HClass(parity, k, {(lo, hi): LaurentPoly(poly.variables, out)})


def act(mono: MonomialLike, c: HClass) -> HClass:
    """Action of a group-ring element (normally a monomial) on a class."""
    poly = _as_poly(mono, c.k)
    total = HClass.zero(c.k, c.parity)
    for g in c.generator_terms():
        total = total + normalize(poly * g.poly, g.i, g.j, c.parity)
    return total


# face -> (images of t1, t2 as exponent vectors over t1,t2,t3; image of w12)
_FACES = {
    Face.T1_ZERO: (((0, 1, 0), (0, 0, 1)), lambda p: [(1, 2, 3)]),
    Face.DOUBLE_FIRST: (((1, 1, 0), (0, 0, 1)),
                        lambda p: [(1, 1, 3), (1, 2, 3), (p.a1, 2, 1)]),
    Face.DOUBLE_SECOND: (((1, 0, 0), (0, 1, 1)),
                         lambda p: [(1, 1, 2), (1, 1, 3), (p.a2, 2, 3)]),
    Face.T3_ONE: (((1, 0, 0), (0, 1, 0)), lambda p: [(1, 1, 2)]),
}


def face_image(c: HClass, face: Face | str, params: FaceMapParams | None = None) -> HClass:
    """Image of a 2-point class under one of the four boundary inclusions into
    the 3-point configuration space."""
    if c.k != 2:
        raise StructuralError(f"face maps act on 2-point classes, got k={c.k}")
    try:
        face = Face(face)
    except ValueError:
        raise StructuralError(f"unknown face {face!r}") from None
    params = params or FaceMapParams()
    (img1, img2), generator_image = _FACES[face]
    v3 = t_vars(3)
    images = {"t1": LaurentPoly.monomial(v3, img1), "t2": LaurentPoly.monomial(v3, img2)}
    total = HClass.zero(3, c.parity)
    for g in c.generator_terms():
        moved = lp_subst(g.poly, images, v3)
        for q, i, j in generator_image(params):
            if q:
                total = total + normalize(moved, i, j, c.parity, coeff=q)
    return total
