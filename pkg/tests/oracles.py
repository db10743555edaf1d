"""Independent oracles built on sympy, sharing no code with the package."""

from __future__ import annotations

import sympy as sp

t1, t3 = sp.symbols("t1 t3")


def to_sympy(p) -> sp.Expr:
    return sp.Add(*[sp.Rational(c.numerator, c.denominator) * t1 ** e[0] * t3 ** e[1]
                    for e, c in p.terms.items()])


def hex_relator(alpha: int, beta: int, n_parity: int) -> sp.Expr:
    s = (-1) ** n_parity
    return (t1 ** (alpha - beta) * t3 ** (-beta) - t1 ** alpha * t3 ** (alpha - beta)
            + s * t1 ** beta * t3 ** (beta - alpha) - s * t1 ** (beta - alpha) * t3 ** (-alpha))


def dihedral_orbit(u: tuple[int, int]) -> set[tuple[int, int]]:
    """Closure under (a, b) -> (b, b - a) and (a, b) -> (-b, -a), by brute force."""
    seen, todo = {u}, [u]
    while todo:
        a, b = todo.pop()
        for v in ((b, b - a), (-b, -a)):
            if v not in seen:
                seen.add(v)
                todo.append(v)
    return seen


def _coeffs(expr: sp.Expr) -> dict[tuple[int, int], sp.Rational]:
    out = {}
    for term in sp.Add.make_args(sp.expand(expr)):
        if term == 0:
            continue
        c, rest = term.as_coeff_Mul()
        powers = rest.as_powers_dict()
        out[(int(powers.get(t1, 0)), int(powers.get(t3, 0)))] = c
    return out


def in_R(expr: sp.Expr, n_parity: int) -> bool:
    """Membership in the span of all relators seeded anywhere inside the
    orbits met by ``expr``: solve the linear system with sympy."""
    target = _coeffs(expr)
    if not target:
        return True
    members = set()
    for u in target:
        members |= dihedral_orbit(u)
    # every seed (alpha, beta) that puts any of the four relator monomials on a member
    seeds = set()
    for a, b in members:
        seeds |= {(a - b, -b), (a, a - b), (a - b, a), (-b, a - b)}
    rels = [_coeffs(hex_relator(a, b, n_parity)) for a, b in seeds]
    cols = sorted(members | {m for r in rels for m in r})
    mat = sp.Matrix([[r.get(m, 0) for r in rels] for m in cols])
    rhs = sp.Matrix([target.get(m, 0) for m in cols])
    return mat.rank() == mat.row_join(rhs).rank()
