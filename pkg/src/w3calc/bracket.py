"""Binary Whitehead brackets of (n-1)-classes in the 3-point configuration
space, reduced to the canonical basis.

Every bracket of two generator terms is either *diagonal*,
``[t_i^a w_ij, t_i^b w_ij]``, or *mixed*, in which case the module action
``t.[f, g] = [t.f, t.g]``, graded symmetry ``[f, g] = (-1)^(n-1) [g, f]`` and
the cyclic identity ``[w_ij, w_jl] = [w_jl, w_li]`` turn it into a monomial
multiple of ``[w12, w23]``.  Since ``t1 t2 t3`` acts trivially on every
``w_ij``, those multiples live in ``Q[t1^+-1, t3^+-1]``.

Reduction is a rewriting system run term by term.  Rules come in two stages;
inside a stage the applicable rules commute, so any order (and any choice of
gauge in the common-monomial factorisation) reaches the same normal form.
:func:`reduce` accepts an optional :class:`random.Random` to exercise that.
"""

from __future__ import annotations

import random as _random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Optional

from .errors import StructuralError
from .pi1cfg import (Face, FaceMapParams, GeneratorTerm, HClass, Parity, face_image)
from .ring import T13, LaurentPoly, Scalar, as_fraction, fraction_str

DiagKey = tuple[int, int]


@dataclass(frozen=True)
class BracketTerm:
    left: GeneratorTerm
    right: GeneratorTerm
    coefficient: Fraction

    def __post_init__(self):
        if not (self.left.is_unit_monomial() and self.right.is_unit_monomial()):
            raise StructuralError("bracket sides must be unit-coefficient monomial generators")
        if self.left.k != self.right.k:
            raise StructuralError("bracket sides live in different configuration spaces")
        object.__setattr__(self, "coefficient", as_fraction(self.coefficient))

    def __str__(self):
        return f"{self.coefficient}*[{self.left}, {self.right}]"


@dataclass(frozen=True)
class BracketSum:
    parity: Parity
    k: int
    terms: tuple[BracketTerm, ...] = ()

    def __add__(self, other: "BracketSum") -> "BracketSum":
        if (other.parity, other.k) != (self.parity, self.k):
            raise StructuralError("parity or k mismatch between bracket sums")
        return BracketSum(self.parity, self.k, self.terms + other.terms)

    def scale(self, q: Scalar) -> "BracketSum":
        q = as_fraction(q)
        return BracketSum(self.parity, self.k, tuple(
            BracketTerm(t.left, t.right, t.coefficient * q) for t in self.terms))

    def __len__(self):
        return len(self.terms)

    @classmethod
    def single(cls, left: GeneratorTerm, right: GeneratorTerm, parity: Parity,
               coefficient: Scalar = 1) -> "BracketSum":
        return cls(Parity.parse(parity), left.k, (BracketTerm(left, right, coefficient),))


def _freeze(d: Mapping[DiagKey, Fraction]) -> dict[DiagKey, Fraction]:
    return {key: c for key, c in sorted(d.items()) if c}


@dataclass(frozen=True, eq=False)
class ReducedClass:
    """Canonical representative of a class in the rational (2n-3)-rd homotopy
    group of the 3-point space."""

    coeff_w12w23: LaurentPoly = field(default_factory=lambda: LaurentPoly.zero(T13))
    diag12: Mapping[DiagKey, Fraction] = field(default_factory=dict)
    diag13: Mapping[DiagKey, Fraction] = field(default_factory=dict)
    diag23: Mapping[DiagKey, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        if self.coeff_w12w23.variables != T13:
            raise StructuralError("[w12,w23] coefficient must be a polynomial in (t1, t3)")
        for name in ("diag12", "diag13", "diag23"):
            d = getattr(self, name)
            if any(a > b for a, b in d):
                raise StructuralError(f"{name} keys must satisfy alpha <= beta")
            object.__setattr__(self, name, _freeze(d))

    def _key(self):
        return (self.coeff_w12w23, tuple(self.diag12.items()),
                tuple(self.diag13.items()), tuple(self.diag23.items()))

    def __eq__(self, other):
        if not isinstance(other, ReducedClass):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __bool__(self):
        return bool(self.coeff_w12w23 or self.diag12 or self.diag13 or self.diag23)

    def diagonal(self, pair: tuple[int, int]) -> Mapping[DiagKey, Fraction]:
        return {(1, 2): self.diag12, (1, 3): self.diag13, (2, 3): self.diag23}[pair]

    def __add__(self, other: "ReducedClass") -> "ReducedClass":
        def merge(a, b):
            out = dict(a)
            for key, c in b.items():
                out[key] = out.get(key, Fraction(0)) + c
            return out
        return ReducedClass(self.coeff_w12w23 + other.coeff_w12w23,
                            merge(self.diag12, other.diag12),
                            merge(self.diag13, other.diag13),
                            merge(self.diag23, other.diag23))

    def scale(self, q: Scalar) -> "ReducedClass":
        q = as_fraction(q)
        return ReducedClass(self.coeff_w12w23.scale(q),
                            {key: c * q for key, c in self.diag12.items()},
                            {key: c * q for key, c in self.diag13.items()},
                            {key: c * q for key, c in self.diag23.items()})

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other: "ReducedClass") -> "ReducedClass":
        return self + (-other)

    def to_json(self) -> dict:
        def diag(d):
            return [{"alpha": a, "beta": b, "coeff": fraction_str(c)} for (a, b), c in d.items()]
        return {
            "coeff_w12w23": self.coeff_w12w23.to_json(),
            "diag12": diag(self.diag12),
            "diag13": diag(self.diag13),
            "diag23": diag(self.diag23),
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "ReducedClass":
        def diag(items):
            return {(int(x["alpha"]), int(x["beta"])): as_fraction(x["coeff"]) for x in items}
        try:
            return cls(LaurentPoly.from_json(T13, data["coeff_w12w23"]),
                       diag(data["diag12"]), diag(data["diag13"]), diag(data["diag23"]))
        except (KeyError, TypeError) as exc:
            raise StructuralError(f"bad ReducedClass JSON: {exc}") from exc


# -- expansion ------------------------------------------------------------------


def expand(f: HClass, g: HClass) -> BracketSum:
    """Bilinear expansion of ``[f, g]`` into brackets of monomial generators."""
    if not isinstance(f, HClass) or not isinstance(g, HClass):
        raise StructuralError("expand takes two HClass values")
    if f.parity != g.parity or f.k != g.k:
        raise StructuralError("expand: parity or k mismatch")
    terms = []
    for gf in f.generator_terms():
        for ea, ca in gf.monomials():
            left = GeneratorTerm.monomial(gf.i, gf.j, ea, f.k)
            for gg in g.generator_terms():
                for eb, cb in gg.monomials():
                    right = GeneratorTerm.monomial(gg.i, gg.j, eb, g.k)
                    terms.append(BracketTerm(left, right, ca * cb))
    return BracketSum(f.parity, f.k, tuple(terms))


# -- rewriting engine -------------------------------------------------------------
#
# A working term is (coef, mono, left, right): coef a Fraction, mono the
# exponent triple of a monomial acting on the whole bracket, and each side
# (i, j, u) standing for t^u . w_ij with u an exponent triple, not
# necessarily normalised and with i, j in either order.

Side = tuple[int, int, tuple[int, int, int]]
Work = tuple[Fraction, tuple[int, int, int], Side, Side]
Rule = Callable[[Work, Parity, Optional[_random.Random]], Optional[Work]]

_BASIS = ((1, 2), (2, 3))
_ZERO3 = (0, 0, 0)


def _effective(side: Side) -> int:
    # exponent of t_lo in the normal form, independent of orientation/folding
    i, j, u = side
    lo, hi = min(i, j), max(i, j)
    return u[lo - 1] - u[hi - 1]


def _folded(side: Side) -> Side:
    i, j, u = side
    lo = min(i, j)
    v = [0, 0, 0]
    v[lo - 1] = _effective(side)
    return (i, j, tuple(v))


def _is_folded(side: Side) -> bool:
    return side[2] == _folded(side)[2]


def _same_pair(w: Work) -> bool:
    _, _, (a, b, _), (c, d, _) = w
    return {a, b} == {c, d}


def _disjoint(w: Work) -> bool:
    _, _, (a, b, _), (c, d, _) = w
    return not ({a, b} & {c, d})


def _flip(side: Side) -> Side:
    i, j, u = side
    return (j, i, u)


def _rule_vanish(w, parity, rng):
    _, _, (a, b, _), (c, d, _) = w
    if a == b or c == d or _disjoint(w):
        return "zero"
    return None


def _rule_fold(pos: int) -> Rule:
    def rule(w, parity, rng):
        side = w[2 + pos]
        if _is_folded(side):
            return None
        out = list(w)
        out[2 + pos] = _folded(side)
        return tuple(out)
    return rule


def _rule_orient(pos: int) -> Rule:
    def rule(w, parity, rng):
        side = w[2 + pos]
        if side[0] < side[1]:
            return None
        out = list(w)
        out[0] = w[0] * parity.sign()
        out[2 + pos] = _flip(side)
        return tuple(out)
    return rule


def _rule_factor(w, parity, rng):
    coef, mono, left, right = w
    if _same_pair(w) or _disjoint(w):
        return None
    if left[2] == _ZERO3 and right[2] == _ZERO3:
        return None
    # find m = (x, 0, z) with m.w_left = left and m.w_right = right, i.e.
    # m_lo - m_hi equals each side's effective exponent
    rows, rhs = [], []
    for side in (left, right):
        lo, hi = min(side[0], side[1]), max(side[0], side[1])
        coeffs = [0, 0, 0]
        coeffs[lo - 1] += 1
        coeffs[hi - 1] -= 1
        rows.append((coeffs[0], coeffs[2]))
        rhs.append(_effective(side))
    (p, q), (r, s) = rows
    det = p * s - q * r
    if det not in (1, -1):
        raise AssertionError(f"common-monomial system singular for {left}, {right}")
    x = (rhs[0] * s - q * rhs[1]) * det
    z = (p * rhs[1] - r * rhs[0]) * det
    m = [x, 0, z]
    if rng is not None:
        # t1 t2 t3 acts trivially, so any representative of m mod (1,1,1) is valid
        g = rng.randint(-3, 3)
        m = [e + g for e in m]
    new_mono = tuple(a + b for a, b in zip(mono, m))
    return (coef, new_mono, (left[0], left[1], _ZERO3), (right[0], right[1], _ZERO3))


def _rule_drop_t2(w, parity, rng):
    coef, (x, y, z), left, right = w
    if y == 0:
        return None
    return (coef, (x - y, 0, z - y), left, right)


def _rule_absorb(w, parity, rng):
    # a diagonal bracket has no [w12,w23] coefficient: push the monomial into both sides
    coef, mono, left, right = w
    if mono == _ZERO3 or not _same_pair(w):
        return None

    def shifted(side):
        return (side[0], side[1], tuple(a + b for a, b in zip(side[2], mono)))
    return (coef, _ZERO3, shifted(left), shifted(right))


def _rule_diagonal(w, parity, rng):
    coef, mono, left, right = w
    if not _same_pair(w):
        return None
    if not (left[0] < left[1] and right[0] < right[1] and _is_folded(left) and _is_folded(right)):
        return None
    lo = left[0]
    a, b = left[2][lo - 1], right[2][lo - 1]
    if a > b:
        return (coef * parity.bracket_sign(), mono, right, left)
    if a == b and parity.bracket_sign() == -1:
        return "zero"  # [f, f] = -[f, f]
    return None


def _shared(w: Work) -> int:
    _, _, (a, b, _), (c, d, _) = w
    (s,) = {a, b} & {c, d}
    return s


def _is_chain(w: Work) -> bool:
    _, _, (a, b, _), (c, d, _) = w
    return b == c and a != d


_EVEN_PERMS = {(1, 2, 3), (2, 3, 1), (3, 1, 2)}


def _rule_chain_left(w, parity, rng):
    if _is_chain(w):
        return None
    coef, mono, left, right = w
    if left[1] == _shared(w):
        return None
    return (coef * parity.sign(), mono, _flip(left), right)


def _rule_chain_right(w, parity, rng):
    if _is_chain(w):
        return None
    coef, mono, left, right = w
    if right[0] == _shared(w):
        return None
    return (coef * parity.sign(), mono, left, _flip(right))


def _rule_chain_reverse(w, parity, rng):
    # [w_ab, w_bd] = (-1)^(n-1) [w_db, w_ba]
    if not _is_chain(w):
        return None
    coef, mono, (a, b, u), (_, d, v) = w
    if (a, b, d) in _EVEN_PERMS:
        return None
    return (coef * parity.bracket_sign(), mono, (d, b, v), (b, a, u))


def _rule_chain_rotate(w, parity, rng):
    # cyclic identity: [w_ab, w_bd] = [w_bd, w_da]
    if not _is_chain(w):
        return None
    coef, mono, (a, b, u), (_, d, v) = w
    if (a, b, d) not in _EVEN_PERMS or (a, b, d) == (1, 2, 3):
        return None
    return (coef, mono, (b, d, v), (d, a, u))


_STAGE_ONE: tuple[Rule, ...] = (
    _rule_vanish, _rule_fold(0), _rule_fold(1), _rule_orient(0), _rule_orient(1),
    _rule_factor, _rule_drop_t2, _rule_absorb, _rule_diagonal,
)
_STAGE_TWO: tuple[Rule, ...] = (
    _rule_chain_left, _rule_chain_right, _rule_chain_reverse, _rule_chain_rotate,
)
_MAX_STEPS = 64


def _run_stage(w: Work, rules, parity: Parity, rng) -> Optional[Work]:
    for _ in range(_MAX_STEPS):
        order = list(rules)
        if rng is not None:
            rng.shuffle(order)
        for rule in order:
            out = rule(w, parity, rng)
            if out is None:
                continue
            if out == "zero":
                return None
            w = out
            break
        else:
            return w
    raise AssertionError(f"rewriting did not terminate on {w}")


def _normal_form(w: Work, parity: Parity, rng) -> Optional[Work]:
    w = _run_stage(w, _STAGE_ONE, parity, rng)
    if w is None or _same_pair(w):
        return w
    return _run_stage(w, _STAGE_TWO, parity, rng)


def _work_from_term(t: BracketTerm) -> Work:
    def side(g: GeneratorTerm) -> Side:
        u = [0, 0, 0]
        u[g.i - 1] = g.exponent
        return (g.i, g.j, tuple(u))
    return (t.coefficient, _ZERO3, side(t.left), side(t.right))


def _reduce_work(items: Iterable[Work], parity: Parity,
                 rng: Optional[_random.Random] = None) -> ReducedClass:
    coeff: dict[tuple[int, int], Fraction] = {}
    diags: dict[tuple[int, int], dict[DiagKey, Fraction]] = {(1, 2): {}, (1, 3): {}, (2, 3): {}}
    items = list(items)
    if rng is not None:
        rng.shuffle(items)
    for w in items:
        if not w[0]:
            continue
        nf = _normal_form(w, parity, rng)
        if nf is None:
            continue
        c, (x, y, z), left, right = nf
        if _same_pair(nf):
            lo = left[0]
            key = (left[2][lo - 1], right[2][lo - 1])
            d = diags[(left[0], left[1])]
            d[key] = d.get(key, Fraction(0)) + c
        else:
            assert (left[:2], right[:2]) == _BASIS and y == 0, nf
            coeff[(x, z)] = coeff.get((x, z), Fraction(0)) + c
    return ReducedClass(LaurentPoly(T13, coeff), diags[(1, 2)], diags[(1, 3)], diags[(2, 3)])


def reduce(s: BracketSum, rng: Optional[_random.Random] = None) -> ReducedClass:
    """Canonical form of a bracket sum.

    With ``rng`` given, terms are processed in random order, applicable rules
    are chosen at random and the common-monomial gauge is randomised; the
    result must not change.
    """
    works = []
    for t in s.terms:
        w = _work_from_term(t)
        if s.k != 3:
            if _rule_vanish(w, s.parity, None) == "zero" or not t.coefficient:
                continue
            raise StructuralError(f"reduction to the [w12,w23] basis needs k=3, got k={s.k}")
        works.append(w)
    return _reduce_work(works, s.parity, rng)


def bracket(f: HClass, g: HClass) -> ReducedClass:
    return reduce(expand(f, g))


# -- closure --------------------------------------------------------------------


def w13_diagonal_value(alpha: int, beta: int, parity: Parity) -> LaurentPoly:
    """[w12,w23]-coefficient that the closure assigns to [t1^a w13, t1^b w13].

    Read off from the doubling-face relator: the image of
    [t1^a w12, t1^b w12] is [t1^a w13, t1^b w13] - X [w12,w23] up to the
    killed w12/w23 diagonals, with X computed by :func:`reduce`.
    """
    parity = Parity.parse(parity)
    return LaurentPoly(T13, [((alpha - beta, -beta), 1),
                             ((beta - alpha, -alpha), parity.bracket_sign())])


def closure_reduce(r: ReducedClass, parity: Parity) -> LaurentPoly:
    """Total [w12,w23]-coefficient after applying the closure relators.

    Diagonal w12 and w23 brackets are dropped and each w13 diagonal bracket
    is traded for its [w12,w23] value.  The result is not reduced modulo the
    hexagon relators.
    """
    parity = Parity.parse(parity)
    total = r.coeff_w12w23
    for (a, b), c in r.diag13.items():
        total = total + w13_diagonal_value(a, b, parity).scale(c)
    return total


def face_bracket(alpha: int, beta: int, face: Face | str, parity: Parity,
                 params: FaceMapParams | None = None) -> BracketSum:
    """Expanded image of [t1^alpha w12, t1^beta w12] under a boundary face."""
    parity = Parity.parse(parity)
    f = face_image(HClass.generator(1, 2, 2, parity, alpha), face, params)
    g = face_image(HClass.generator(1, 2, 2, parity, beta), face, params)
    return expand(f, g)
