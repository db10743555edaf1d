"""Reduction of Q[t1^+-1, t3^+-1] modulo the hexagon relators.

Write ``e(u)`` for the monomial ``t1^u1 t3^u2`` and set

    E(u) = e(u) + (-1)^n e(sigma u),   sigma(u1, u2) = (-u2, -u1).

The relator seeded at (alpha, beta) is ``E(u) - E(tau^-1 u)`` with
``u = (alpha - beta, -beta)`` and ``tau(u1, u2) = (u2, u2 - u1)``.  Its
support lies in a single orbit of the order-12 group generated by tau and
sigma, so reduction splits into independent, tiny exact linear-algebra
problems, one per orbit.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, partial
from typing import Iterable, Mapping, Sequence

from .errors import StructuralError
from .linalg import determinant, rank_with_witness, reduce_vector, rref
from .parallel import pmap
from .pi1cfg import Parity
from .ring import T13, LaurentPoly, fraction_str, grlex_key

Point = tuple[int, int]


class Restriction(enum.Enum):
    """``none``: quotient by R.  ``topological``: additionally treat every
    monomial outside the survival region (a != 0, b != 0, a != b) as killed,
    a worst-case model of the kernel behind R'."""

    NONE = "none"
    TOPOLOGICAL = "topological"

    @classmethod
    def parse(cls, value) -> "Restriction":
        if value is None:
            return cls.NONE
        if isinstance(value, Restriction):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise StructuralError(f"restriction must be 'none' or 'topological', got {value!r}") from None


def tau(u: Point) -> Point:
    return (u[1], u[1] - u[0])


def tau_inv(u: Point) -> Point:
    return (u[0] - u[1], u[0])


def sigma(u: Point) -> Point:
    return (-u[1], -u[0])


def in_survival_region(u: Point) -> bool:
    a, b = u
    return a != 0 and b != 0 and a != b


@dataclass(frozen=True)
class HexRelator:
    seed: Point
    parity: Parity

    def terms(self) -> list[tuple[Point, int]]:
        a, b = self.seed
        s = self.parity.sign()
        return [((a - b, -b), 1), ((a, a - b), -1), ((b, b - a), s), ((b - a, -a), -s)]

    def polynomial(self) -> LaurentPoly:
        return LaurentPoly(T13, self.terms())


@dataclass(frozen=True)
class DihedralOrbit:
    members: tuple[Point, ...]
    seed: Point
    tau_orbit_sigma_invariant: bool
    sigma_fixed: tuple[Point, ...]

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def free(self) -> bool:
        return self.size == 12

    @property
    def key(self) -> Point:
        """Canonical label: the graded-lex smallest member."""
        return self.members[0]

    def __contains__(self, u):
        return tuple(u) in self.members


def _tau_orbit(u: Point) -> list[Point]:
    out = [u]
    v = tau(u)
    while v != u:
        out.append(v)
        v = tau(v)
    return out


def orbit_of(pair: Sequence[int]) -> DihedralOrbit:
    """Closure of ``pair`` under tau and sigma, with its degeneracy flags."""
    return _orbit_of((int(pair[0]), int(pair[1])))


@lru_cache(maxsize=None)
def _orbit_of(u: Point) -> DihedralOrbit:
    seen = {u}
    stack = [u]
    while stack:
        x = stack.pop()
        for y in (tau(x), sigma(x)):
            if y not in seen:
                seen.add(y)
                stack.append(y)
    members = tuple(sorted(seen, key=grlex_key))
    t_orb = set(_tau_orbit(u))
    return DihedralOrbit(
        members=members,
        seed=u,
        tau_orbit_sigma_invariant={sigma(x) for x in t_orb} == t_orb,
        sigma_fixed=tuple(m for m in members if sigma(m) == m),
    )


def orbit_key(u: Point) -> Point:
    return orbit_of(u).key


@dataclass(frozen=True)
class _OrbitSystem:
    columns: tuple[Point, ...]
    index: Mapping[Point, int]
    basis: tuple[tuple[Fraction, ...], ...]
    pivots: tuple[int, ...]

    @property
    def free_columns(self) -> tuple[Point, ...]:
        piv = set(self.pivots)
        return tuple(c for i, c in enumerate(self.columns) if i not in piv)


def orbit_relators(orbit: DihedralOrbit, parity: Parity) -> list[HexRelator]:
    """One relator per member u, seeded so that its first monomial is e(u)."""
    return [HexRelator((u[0] - u[1], -u[1]), parity) for u in orbit.members]


@lru_cache(maxsize=None)
def _system(key: Point, parity: Parity, restriction: Restriction) -> _OrbitSystem:
    orbit = orbit_of(key)
    # pivot on the graded-lex largest members first
    columns = tuple(sorted(orbit.members, key=grlex_key, reverse=True))
    index = {c: i for i, c in enumerate(columns)}
    rows = []
    for rel in orbit_relators(orbit, parity):
        row = [Fraction(0)] * len(columns)
        for u, c in rel.terms():
            row[index[u]] += c
        rows.append(row)
    if restriction is Restriction.TOPOLOGICAL:
        for u in columns:
            if not in_survival_region(u):
                row = [Fraction(0)] * len(columns)
                row[index[u]] = Fraction(1)
                rows.append(row)
    basis, pivots = rref(rows, len(columns))
    return _OrbitSystem(columns, index, tuple(map(tuple, basis)), tuple(pivots))


def relator_span_dimension(orbit: DihedralOrbit, parity: Parity,
                           restriction: Restriction | str = Restriction.NONE) -> int:
    return len(_system(orbit.key, Parity.parse(parity), Restriction.parse(restriction)).pivots)


@dataclass(frozen=True, eq=False)
class CanonicalResidue:
    """Per-orbit normal form: coefficients on the non-pivot members of each
    orbit touched by the input.  Orbits whose residue vanishes are omitted."""

    parity: Parity
    restriction: Restriction
    orbits: Mapping[Point, Mapping[Point, Fraction]] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for key in sorted(self.orbits, key=grlex_key):
            vec = {u: c for u, c in sorted(self.orbits[key].items(), key=lambda kv: grlex_key(kv[0])) if c}
            if vec:
                clean[key] = vec
        object.__setattr__(self, "orbits", clean)

    def is_zero(self) -> bool:
        return not self.orbits

    def __bool__(self):
        return not self.is_zero()

    def _key(self):
        return (self.parity, self.restriction,
                tuple((k, tuple(v.items())) for k, v in self.orbits.items()))

    def __eq__(self, other):
        if not isinstance(other, CanonicalResidue):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def as_poly(self) -> LaurentPoly:
        """The residue as a polynomial: the canonical representative of the class."""
        return LaurentPoly(T13, [(u, c) for vec in self.orbits.values() for u, c in vec.items()])

    def coordinates(self) -> dict[tuple[Point, Point], Fraction]:
        return {(key, u): c for key, vec in self.orbits.items() for u, c in vec.items()}

    def to_json(self) -> dict:
        return {
            "parity": self.parity.value,
            "restriction": self.restriction.value,
            "orbits": [
                {"orbit": list(key),
                 "residue": [{"exponents": list(u), "coeff": fraction_str(c)} for u, c in vec.items()]}
                for key, vec in self.orbits.items()
            ],
        }


def _split_by_orbit(p: LaurentPoly) -> dict[Point, dict[Point, Fraction]]:
    if p.variables != T13:
        raise StructuralError(f"hexagon reduction needs a polynomial in {T13}, got {p.variables}")
    parts: dict[Point, dict[Point, Fraction]] = {}
    for u, c in p.terms.items():
        parts.setdefault(orbit_key(u), {})[u] = c
    return parts


def reduce_mod_R(p: LaurentPoly, parity: Parity | str,
                 restriction: Restriction | str = Restriction.NONE) -> CanonicalResidue:
    parity = Parity.parse(parity)
    restriction = Restriction.parse(restriction)
    out = {}
    for key, part in _split_by_orbit(p).items():
        system = _system(key, parity, restriction)
        vec = [Fraction(0)] * len(system.columns)
        for u, c in part.items():
            vec[system.index[u]] = c
        red = reduce_vector(vec, system.basis, system.pivots)
        out[key] = {system.columns[i]: c for i, c in enumerate(red) if c}
    return CanonicalResidue(parity, restriction, out)


def is_in_R(p: LaurentPoly, parity: Parity | str,
            restriction: Restriction | str = Restriction.NONE) -> bool:
    return reduce_mod_R(p, parity, restriction).is_zero()


@dataclass(frozen=True)
class IndependenceCertificate:
    labels: tuple[str, ...]
    columns: tuple[tuple[Point, Point], ...]
    matrix: tuple[tuple[Fraction, ...], ...]
    rank: int
    pivots: tuple[tuple[int, int], ...]
    parity: Parity
    restriction: Restriction

    @property
    def independent(self) -> bool:
        return self.rank == len(self.labels)

    def check(self) -> bool:
        """Re-verify the witness: the pivot minor is non-singular, and no
        larger rank is possible than the witness claims."""
        if len(self.pivots) != self.rank:
            return False
        rows = [r for r, _ in self.pivots]
        cols = [c for _, c in self.pivots]
        if len(set(rows)) != self.rank or len(set(cols)) != self.rank:
            return False
        minor = [[self.matrix[r][c] for c in cols] for r in rows]
        if determinant(minor) == 0:
            return False
        return len(rank_with_witness(self.matrix, len(self.columns))) == self.rank

    def to_json(self) -> dict:
        return {
            "labels": list(self.labels),
            "columns": [{"orbit": list(k), "exponents": list(u)} for k, u in self.columns],
            "matrix": [[fraction_str(x) for x in row] for row in self.matrix],
            "rank": self.rank,
            "pivots": [list(p) for p in self.pivots],
            "parity": self.parity.value,
            "restriction": self.restriction.value,
        }


def _coordinates(p: LaurentPoly, parity: Parity, restriction: Restriction):
    return reduce_mod_R(p, parity, restriction).coordinates()


def rank_mod_R(elements: Sequence[LaurentPoly], parity: Parity | str,
               restriction: Restriction | str = Restriction.NONE,
               labels: Iterable[str] | None = None,
               workers: int = 1) -> IndependenceCertificate:
    """Exact rank of the images of ``elements`` in the quotient.

    Each element is evaluated on the orbit functionals (the coordinates of
    its canonical residue); the rank of that matrix is the rank in the
    quotient, witnessed by a non-singular minor.
    """
    parity = Parity.parse(parity)
    restriction = Restriction.parse(restriction)
    labels = tuple(labels) if labels is not None else tuple(f"e{i}" for i in range(len(elements)))
    if len(labels) != len(elements):
        raise StructuralError("one label per element required")
    coords = pmap(partial(_coordinates, parity=parity, restriction=restriction), elements, workers)
    columns = sorted({c for co in coords for c in co},
                     key=lambda kc: (grlex_key(kc[0]), grlex_key(kc[1])))
    matrix = tuple(tuple(co.get(c, Fraction(0)) for c in columns) for co in coords)
    witness = rank_with_witness(matrix, len(columns))
    return IndependenceCertificate(labels, tuple(columns), matrix, len(witness),
                                   tuple(witness), parity, restriction)
