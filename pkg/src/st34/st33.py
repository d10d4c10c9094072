"""Restriction x5 = x6 = y: invariants of the rank-5 group ST33.

Setting x5 = x6 = y in the ST34 invariants lands in polynomials of
x1..x4, y that are symmetric in x1..x4, hence polynomials in

    r3, r6, r9  (power sums of cubes of x1..x4),  r4 = x1 x2 x3 x4,  y.

J4 and J10 are the printed low-degree invariants; J_{6k} is the
restriction of m_k.  The shipped J6/J12/J18 tables are re-derived by the
same sample-and-solve technique used for the m-tables (weights r3:3,
r4:4, r6:6, r9:9, y:1); the degree-24/30/42 relations expressing
J24, J30, J42 in J4, J6, J10, J12, J18 are verified by exact and modular
multipoint testing, with a single-coefficient mutation control.
"""

from __future__ import annotations

from functools import lru_cache
from math import prod

from gmpy2 import mpq

from . import idcheck
from .exactnum import PrimeField
from .idcheck import DEFAULT_SEED, IdentityClaim, VerificationReport, check_auto
from .invariants import fit_weighted_basis, m_table, m_x_form
from .mpoly import QQ, Polynomial, pack_one
from .tables import table_entry

__all__ = [
    "R5_VARS",
    "RSYM_VARS",
    "RSYM_WEIGHTS",
    "restrict",
    "r_values",
    "restricted_p_values",
    "j_tables",
    "j_values",
    "derive_j_table",
    "j_table_reports",
    "j_relation_claims",
    "verify_j_relations",
    "mutation_control_claim",
]

R5_VARS = ("x1", "x2", "x3", "x4", "y")
RSYM_VARS = ("r3", "r4", "r6", "r9", "y")
RSYM_WEIGHTS = (3, 4, 6, 9, 1)
_J_NAMES = ("J4", "J6", "J10", "J12", "J18")
_J_DEGREES = {"J4": 4, "J6": 6, "J10": 10, "J12": 12, "J18": 18}
# which m-restriction each relation equates to, and its degree
RELATIONS = {"J24_rel": (4, 24), "J30_rel": (5, 30), "J42_rel": (7, 42)}


def restrict(f: Polynomial) -> Polynomial:
    """Substitute x5 -> y, x6 -> y (merging exponents) into an x1..x6 polynomial."""
    return f.rename_merge(R5_VARS, [0, 1, 2, 3, 4, 4])


def r_values(pt) -> tuple:
    """(r3, r4, r6, r9, y) at (x1..x4, y)."""
    xs, y = pt[:4], pt[4]
    cubes = [v * v * v for v in xs]
    r3 = sum(cubes)
    r6 = sum(c * c for c in cubes)
    r9 = sum(c * c * c for c in cubes)
    return (r3, prod(xs), r6, r9, y)


def restricted_p_values(pt) -> tuple:
    """(p3, p6, p9, p12, p15, s6) of (x1..x4, y, y): feeds the m-tables."""
    xs, y = pt[:4], pt[4]
    cubes = [v * v * v for v in xs]
    acc = list(cubes)
    y3 = y * y * y
    ya = y3
    vals = [sum(acc) + 2 * ya]
    for _ in range(4):
        acc = [a * c for a, c in zip(acc, cubes)]
        ya = ya * y3
        vals.append(sum(acc) + 2 * ya)
    vals.append(prod(xs) * y * y)
    return tuple(vals)


@lru_cache(maxsize=1)
def j_tables() -> dict[str, Polynomial]:
    return {name: table_entry("J", name) for name in _J_NAMES}


def j_values(pt) -> dict[str, object]:
    rv = r_values(pt)
    return {name: poly.evaluate(rv) for name, poly in j_tables().items()}


@lru_cache(maxsize=None)
def derive_j_table(k: int, seed: int = DEFAULT_SEED) -> Polynomial:
    """Rewrite restrict(m_k) in the r-symbols by exact sample-and-solve (k <= 3)."""
    restricted = restrict(m_x_form(k))

    fit = fit_weighted_basis(
        lambda pt: restricted.evaluate(pt),
        6 * k,
        symbols=RSYM_VARS,
        weights=RSYM_WEIGHTS,
        values_at=r_values,
        nvars=5,
        mode="exact",
        seed=seed,
    )
    return fit.expression


def j_table_reports(seed: int = DEFAULT_SEED) -> list[dict]:
    """Coefficient-exact comparison of derived J6/J12/J18 against the tables."""
    out = []
    for k, name in ((1, "J6"), (2, "J12"), (3, "J18")):
        derived = derive_j_table(k, seed)
        table = j_tables()[name]
        mismatches = []
        for key in sorted(set(derived.terms) | set(table.terms)):
            dv = derived.terms.get(key, mpq(0))
            tv = table.terms.get(key, mpq(0))
            if dv != tv:
                mismatches.append({"monomial": key, "table": str(tv), "derived": str(dv)})
        out.append({"name": name, "ok": not mismatches, "mismatches": mismatches})
    return out


def _relation_eval(rel_name: str):
    rel = table_entry("J_rel", rel_name)

    def ev(pt):
        jv = j_values(pt)
        return rel.evaluate([jv[n] for n in _J_NAMES])

    return ev


def _restricted_m_eval(k: int):
    table = m_table(k)

    def ev(pt):
        return table.evaluate(restricted_p_values(pt))

    return ev


def _mod_wrap(exact_eval):
    def ev(pt, gf: PrimeField):
        return gf.project(exact_eval(pt))

    return ev


def j_relation_claims() -> list[IdentityClaim]:
    claims = []
    for rel_name, (k, degree) in RELATIONS.items():
        claims.append(
            IdentityClaim(
                name=rel_name,
                nvars=5,
                degree_bound=degree,
                provenance=f"tables/J_rel.poly entry {rel_name}",
                eval_lhs=_restricted_m_eval(k),
                eval_rhs=_relation_eval(rel_name),
                mod_lhs=_mod_wrap(_restricted_m_eval(k)),
                mod_rhs=_mod_wrap(_relation_eval(rel_name)),
            )
        )
    return claims


def mutation_control_claim(rel_name: str = "J24_rel") -> IdentityClaim:
    """The relation with one coefficient bumped by +1; detection is required."""
    rel = table_entry("J_rel", rel_name)
    key = sorted(rel.terms)[0]
    mutated = rel + Polynomial._raw(QQ, rel.vars, {key: mpq(1)})
    k, degree = RELATIONS[rel_name]

    def rhs(pt):
        jv = j_values(pt)
        return mutated.evaluate([jv[n] for n in _J_NAMES])

    return IdentityClaim(
        name=f"{rel_name}_mutated_control",
        nvars=5,
        degree_bound=degree,
        provenance=f"tables/J_rel.poly entry {rel_name} (+1 on one coefficient)",
        eval_lhs=_restricted_m_eval(k),
        eval_rhs=rhs,
        expect_failure=True,
    )


def verify_j_relations(
    mode: str = "exact",
    points: int = idcheck.DEFAULT_POINTS_MODULAR,
    seed: int = DEFAULT_SEED,
    include_mutation_control: bool = True,
) -> list[VerificationReport]:
    claims = j_relation_claims()
    if include_mutation_control:
        claims.append(mutation_control_claim())
    reports = []
    for c in claims:
        use_mode = "randomized" if (mode == "exact" and c.sym_lhs is None) else mode
        reports.append(check_auto(c, mode=use_mode, points=points, seed=seed))
    return reports
