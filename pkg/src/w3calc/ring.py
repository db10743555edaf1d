"""Sparse Laurent polynomials with exact rational coefficients.

A :class:`LaurentPoly` is a finite map from integer exponent vectors to
non-zero :class:`fractions.Fraction` coefficients over a fixed, ordered tuple
of variable names.  Values are immutable; every operation returns a new
polynomial.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .errors import StructuralError

Exponents = tuple[int, ...]
Scalar = Union[int, Fraction]


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise StructuralError(f"not a rational coefficient: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        if "." in value or "e" in value.lower():
            raise StructuralError(f"coefficient must be an exact fraction string: {value!r}")
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise StructuralError(f"bad coefficient {value!r}") from exc
    raise StructuralError(f"not a rational coefficient: {value!r}")


def fraction_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def grlex_key(exps: Exponents):
    # graded first, then lexicographic
    return (sum(exps), exps)


class LaurentPoly:
    __slots__ = ("variables", "terms", "_hash")

    def __init__(self, variables: Sequence[str], terms: Mapping[Sequence[int], Scalar] = ()):
        self.variables = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise StructuralError(f"repeated variable name in {self.variables}")
        n = len(self.variables)
        clean: dict[Exponents, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for exps, coeff in items:
            exps = tuple(int(e) for e in exps)
            if len(exps) != n:
                raise StructuralError(
                    f"exponent vector {exps} has length {len(exps)}, expected {n}")
            c = clean.get(exps, Fraction(0)) + as_fraction(coeff)
            if c:
                clean[exps] = c
            else:
                clean.pop(exps, None)
        self.terms = clean
        self._hash = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, variables: Sequence[str]) -> "LaurentPoly":
        return cls(variables)

    @classmethod
    def one(cls, variables: Sequence[str]) -> "LaurentPoly":
        return cls(variables, {(0,) * len(variables): 1})

    @classmethod
    def monomial(cls, variables: Sequence[str], exps: Sequence[int],
                 coeff: Scalar = 1) -> "LaurentPoly":
        return cls(variables, {tuple(exps): coeff})

    @classmethod
    def var(cls, variables: Sequence[str], name: str, power: int = 1) -> "LaurentPoly":
        exps = [0] * len(variables)
        exps[list(variables).index(name)] = power
        return cls(variables, {tuple(exps): 1})

    # -- basic protocol -----------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.variables == other.variables and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.variables, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.items())

    def items(self) -> list[tuple[Exponents, Fraction]]:
        """Terms in canonical (graded-lexicographic) order."""
        return sorted(self.terms.items(), key=lambda kv: grlex_key(kv[0]))

    def coeff(self, exps: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def support(self) -> list[Exponents]:
        return [e for e, _ in self.items()]

    def __repr__(self):
        return f"LaurentPoly({self.variables!r}, {str(self)!r})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exps, c in self.items():
            factors = []
            for name, e in zip(self.variables, exps):
                if e == 1:
                    factors.append(name)
                elif e:
                    factors.append(f"{name}^{e}")
            mono = "*".join(factors)
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        head_sign, head = parts[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: "LaurentPoly"):
        if not isinstance(other, LaurentPoly):
            raise StructuralError(f"expected LaurentPoly, got {type(other).__name__}")
        if other.variables != self.variables:
            raise StructuralError(
                f"variable declaration mismatch: {self.variables} vs {other.variables}")

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return LaurentPoly(self.variables, {(0,) * self.nvars: other})
        self._check(other)
        return other

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, Fraction(0)) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return _raw(self.variables, out)

    __radd__ = __add__

    def __neg__(self):
        return _raw(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, q: Scalar) -> "LaurentPoly":
        q = as_fraction(q)
        if not q:
            return LaurentPoly(self.variables)
        return _raw(self.variables, {e: c * q for e, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        self._check(other)
        out: dict[Exponents, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, Fraction(0)) + c1 * c2
                if s:
                    out[e] = s
                else:
                    del out[e]
        return _raw(self.variables, out)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, n: int):
        if n < 0:
            if not self.is_monomial():
                raise StructuralError("only monomials are invertible")
            (e, c), = self.terms.items()
            return LaurentPoly(self.variables, {tuple(x * n for x in e): Fraction(1) / c ** -n})
        result = LaurentPoly.one(self.variables)
        for _ in range(n):
            result = result * self
        return result

    def shift(self, exps: Sequence[int]) -> "LaurentPoly":
        """Multiply by the monomial with the given exponents."""
        d = tuple(exps)
        if len(d) != self.nvars:
            raise StructuralError("shift vector has wrong length")
        return _raw(self.variables,
                    {tuple(a + b for a, b in zip(e, d)): c for e, c in self.terms.items()})

    def evaluate(self, point: Sequence[Scalar]) -> Fraction:
        """Exact value at a point with non-zero rational coordinates."""
        if len(point) != self.nvars:
            raise StructuralError("evaluation point has wrong length")
        xs = [as_fraction(x) for x in point]
        if any(x == 0 for x in xs):
            raise ZeroDivisionError("Laurent polynomials are evaluated at non-zero points only")
        total = Fraction(0)
        for exps, c in self.terms.items():
            term = c
            for x, e in zip(xs, exps):
                term *= x ** e
            total += term
        return total

    # -- serialization ------------------------------------------------------

    def to_json(self) -> list[dict]:
        return [{"exponents": list(e), "coeff": fraction_str(c)} for e, c in self.items()]

    @classmethod
    def from_json(cls, variables: Sequence[str], data: Iterable[Mapping]) -> "LaurentPoly":
        if not isinstance(data, list):
            raise StructuralError("polynomial JSON must be an array of terms")
        terms: list[tuple[Exponents, Fraction]] = []
        for item in data:
            try:
                exps, coeff = item["exponents"], item["coeff"]
            except (KeyError, TypeError) as exc:
                raise StructuralError(f"bad polynomial term {item!r}") from exc
            if not isinstance(exps, list) or not all(
                    isinstance(e, int) and not isinstance(e, bool) for e in exps):
                raise StructuralError(f"bad exponent vector {exps!r}")
            if not isinstance(coeff, str):
                raise StructuralError(f"coefficient must be a fraction string, got {coeff!r}")
            terms.append((tuple(exps), as_fraction(coeff)))
        return cls(variables, terms)


def _raw(variables: tuple[str, ...], terms: dict[Exponents, Fraction]) -> LaurentPoly:
    # trusted fast path: terms already pruned and keyed by correct-length tuples
    p = LaurentPoly.__new__(LaurentPoly)
    p.variables = variables
    p.terms = terms
    p._hash = None
    return p


def lp_add(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    a._check(b)
    return a + b


def lp_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    a._check(b)
    return a * b


def lp_subst(p: LaurentPoly, images: Mapping[str, LaurentPoly],
             target: Sequence[str] | None = None) -> LaurentPoly:
    """Apply the ring map sending each variable of ``p`` to a Laurent monomial.

    ``images`` maps every variable name of ``p`` to a monomial with coefficient
    1 over the ``target`` variables (defaults to those of the first image, or
    ``p``'s own variables when unmapped names are absent).
    """
    missing = [v for v in p.variables if v not in images]
    if target is None:
        target = next(iter(images.values())).variables if images else p.variables
    target = tuple(target)
    columns = []
    for name in p.variables:
        if name in missing:
            if name not in target:
                raise StructuralError(f"no image given for variable {name!r}")
            img = LaurentPoly.var(target, name)
        else:
            img = images[name]
        if not isinstance(img, LaurentPoly) or img.variables != target:
            raise StructuralError(f"image of {name!r} is not a polynomial over {target}")
        if not img.is_monomial():
            raise StructuralError(f"image of {name!r} is not a monomial: {img}")
        (exps, c), = img.terms.items()
        if c != 1:
            raise StructuralError(f"image of {name!r} must have coefficient 1, got {c}")
        columns.append(exps)
    out: dict[Exponents, Fraction] = {}
    width = len(target)
    for exps, c in p.terms.items():
        image = [0] * width
        for e, col in zip(exps, columns):
            if e:
                for idx in range(width):
                    image[idx] += e * col[idx]
        key = tuple(image)
        s = out.get(key, Fraction(0)) + c
        if s:
            out[key] = s
        else:
            out.pop(key, None)
    return _raw(target, out)


def t_vars(k: int) -> tuple[str, ...]:
    """Variable names t1..tk of the fundamental group of the k-point space."""
    return tuple(f"t{i}" for i in range(1, k + 1))


T13 = ("t1", "t3")
