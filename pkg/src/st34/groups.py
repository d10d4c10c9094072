"""Generators of ST34 as explicit 6x6 matrices over Q(w), and their action.

Each generator is the order-2 unitary reflection fixing one listed mirror:

    P1: x2 - x3 = 0      P2: x3 - x4 = 0      P3: x4 - x5 = 0
    Q1: x1 - x2 = 0      R1: x1 - w*x2 = 0    R2: x1 + ... + x6 = 0

The matrix is built from the mirror's linear form l via
r(x) = x - 2 <x,n>/<n,n> n with n = conj(l) and the standard Hermitian
pairing, which reproduces the coordinate formulas x1 <-> x2 swaps,
R1: x1 -> w*x2, x2 -> w^2*x1, and R2: x_j -> x_j - (1/3) * sum(x).

Polynomials transform by substitution: act(g, f) = f(g x), a right action.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from gmpy2 import mpq

from .ctlattice import MinimalVector, enumerate_minimal_vectors
from .exactnum import Eisenstein, OMEGA
from .mpoly import QQ, QW, Polynomial

__all__ = [
    "GroupElement",
    "GENERATOR_NAMES",
    "GENERATOR_MIRRORS",
    "generator",
    "generators",
    "act",
    "is_invariant",
    "permutes_minimal_vectors",
    "matrix_mul",
    "apply_matrix",
    "reflection_rank",
    "X_VARS",
]

X_VARS = ("x1", "x2", "x3", "x4", "x5", "x6")
GENERATOR_NAMES = ("P1", "P2", "P3", "Q1", "R1", "R2")

_ZERO = Eisenstein(0)
_ONE = Eisenstein(1)

# linear forms of the fixed mirrors, as coefficient 6-tuples
GENERATOR_MIRRORS = {
    "P1": (0, 1, -1, 0, 0, 0),
    "P2": (0, 0, 1, -1, 0, 0),
    "P3": (0, 0, 0, 1, -1, 0),
    "Q1": (1, -1, 0, 0, 0, 0),
    "R1": (_ONE, -OMEGA, _ZERO, _ZERO, _ZERO, _ZERO),
    "R2": (1, 1, 1, 1, 1, 1),
}


@dataclass(frozen=True)
class GroupElement:
    matrix: tuple[tuple[Eisenstein, ...], ...]
    label: str | None = None

    def is_rational(self) -> bool:
        return all(c.is_rational() for row in self.matrix for c in row)


def _eis(x) -> Eisenstein:
    return x if isinstance(x, Eisenstein) else Eisenstein(mpq(x))


def reflection_matrix(form) -> tuple[tuple[Eisenstein, ...], ...]:
    """Order-2 unitary reflection fixing {x : sum form_i x_i = 0}."""
    ell = [_eis(c) for c in form]
    n = [c.conj() for c in ell]
    s = sum((c.norm() for c in ell), start=mpq(0))
    scale = Eisenstein(mpq(2, s))
    rows = []
    for i in range(6):
        row = []
        for j in range(6):
            delta = _ONE if i == j else _ZERO
            row.append(delta - scale * n[i] * ell[j])
        rows.append(tuple(row))
    return tuple(rows)


def generator(name: str) -> GroupElement:
    if name not in GENERATOR_MIRRORS:
        raise ValueError(f"unknown generator {name!r}; expected one of {GENERATOR_NAMES}")
    return GroupElement(reflection_matrix(GENERATOR_MIRRORS[name]), name)


def generators() -> tuple[GroupElement, ...]:
    return tuple(generator(n) for n in GENERATOR_NAMES)


def matrix_mul(a, b) -> tuple[tuple[Eisenstein, ...], ...]:
    n = len(a)
    return tuple(
        tuple(sum((a[i][k] * b[k][j] for k in range(n)), start=Eisenstein(0)) for j in range(n))
        for i in range(n)
    )


def apply_matrix(m, x) -> tuple:
    """Image of a coordinate vector (entries rational or Eisenstein)."""
    n = len(m)
    out = []
    for i in range(n):
        acc = Eisenstein(0)
        for j in range(n):
            acc = acc + m[i][j] * _eis(x[j])
        out.append(acc)
    return tuple(out)


def act(g: GroupElement, f: Polynomial) -> Polynomial:
    """f composed with g: returns the polynomial x -> f(g x)."""
    if f.ring.name == QQ.name and not g.is_rational():
        f = f.to_ring(QW)
    if f.ring.name == QW.name:
        matrix = g.matrix
    else:
        matrix = tuple(tuple(mpq(c.re1) for c in row) for row in g.matrix)
    return f.linear_substitute(matrix)


def is_invariant(f: Polynomial, gens, symbolic_cap: int = 18, points: int = 20, seed: int = 0) -> bool:
    """True iff f∘g = f for every g; symbolic up to symbolic_cap, else sampled exactly.

    The sampled route evaluates both sides at `points` random integer
    points: any inequality is definitive, equality everywhere is a
    Schwartz-Zippel style check (exact arithmetic, no tolerance).
    """
    deg = f.degree()
    for g in gens:
        if deg != float("-inf") and deg <= symbolic_cap:
            if act(g, f) != f.to_ring(f.ring if g.is_rational() else QW):
                return False
        else:
            gi = GENERATOR_NAMES.index(g.label) if g.label in GENERATOR_NAMES else 6
            rng = random.Random(seed * 7919 + gi)
            fw = f.to_ring(QW)
            for _ in range(points):
                x = [rng.randint(-999, 999) for _ in range(len(f.vars))]
                gx = apply_matrix(g.matrix, x)
                if fw.evaluate(gx) != f.evaluate(x):
                    return False
    return True


def permutes_minimal_vectors(g: GroupElement) -> bool:
    """Does g map the 756-vector set onto itself?"""
    vectors = enumerate_minimal_vectors()
    vector_set = {v.coords for v in vectors}
    for v in vectors:
        if apply_matrix(g.matrix, v.coords) not in vector_set:
            return False
    return True


def reflection_rank(g: GroupElement) -> int:
    """Rank of g - I over Q(w) (1 for a reflection)."""
    rows = [list(row) for row in g.matrix]
    for i in range(6):
        rows[i][i] = rows[i][i] - _ONE
    rank = 0
    for col in range(6):
        piv = next((r for r in range(rank, 6) if not rows[r][col].is_zero()), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = _ONE / rows[rank][col]
        rows[rank] = [inv * c for c in rows[rank]]
        for r in range(6):
            if r != rank and not rows[r][col].is_zero():
                factor = rows[r][col]
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank
