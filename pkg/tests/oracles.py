"""Independent reference computations used only by the tests."""

from __future__ import annotations

from fractions import Fraction

import sympy

from bocskit.algebra import Path, trivial
from bocskit.bocs import OMEGA, Bocs


def _left_action_matrix(b: Bocs, p: Path, summand: list) -> sympy.Matrix:
    index = {w: k for k, w in enumerate(summand)}
    m = sympy.zeros(len(summand), len(summand))
    for col, w in enumerate(summand):
        for w2, c in b.lmul_path(p, w).items():
            m[index[w2], col] += sympy.Rational(c.numerator, c.denominator)
    return m


def _algebra_left_matrix(b: Bocs, p: Path) -> sympy.Matrix:
    basis = list(b.algebra.basis)
    index = {r: k for k, r in enumerate(basis)}
    m = sympy.zeros(len(basis), len(basis))
    for col, r in enumerate(basis):
        for r2, c in b.algebra.mul_paths(p, r).items():
            m[index[r2], col] += sympy.Rational(c.numerator, c.denominator)
    return m


def left_summands(b: Bocs) -> dict:
    """Split the basis of V into left submodules A·(generator·q)."""
    groups: dict = {}
    for w in b.v_basis:
        key = (w[1], w[2])
        groups.setdefault(key, []).append(w)
    return groups


def hom_dim_from_summand(b: Bocs, summand: list) -> int:
    """dim Hom_A(S, A) by solving L_A(p)·F = F·L_S(p) for every generator p."""
    generators = [trivial(i) for i in range(1, b.n + 1)]
    generators += [Path(a.source, a.target, (a.name,)) for a in b.quiver.solid]
    dimA = len(b.algebra.basis)
    dimS = len(summand)
    unknowns = dimA * dimS
    rows = []
    for p in generators:
        LA = _algebra_left_matrix(b, p)
        LS = _left_action_matrix(b, p, summand)
        # entry (r, x) of LA·F − F·LS as a linear form in F (row-major)
        for r in range(dimA):
            for x in range(dimS):
                row = [0] * unknowns
                for k in range(dimA):
                    if LA[r, k]:
                        row[k * dimS + x] += LA[r, k]
                for k in range(dimS):
                    if LS[k, x]:
                        row[r * dimS + k] -= LS[k, x]
                if any(row):
                    rows.append(row)
    if not rows:
        return unknowns
    return unknowns - sympy.Matrix(rows).rank()


def right_algebra_dim_bruteforce(b: Bocs) -> tuple[int, dict]:
    parts = {}
    for key, summand in left_summands(b).items():
        parts[key] = hom_dim_from_summand(b, summand)
    return sum(parts.values()), parts


def omega_part(parts: dict) -> int:
    return sum(v for (g, _), v in parts.items() if g == OMEGA)


def to_fraction(x) -> Fraction:
    return Fraction(int(x.p), int(x.q)) if hasattr(x, "p") else Fraction(x)
