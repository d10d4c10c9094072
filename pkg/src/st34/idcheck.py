"""Polynomial identity testing with uniform reports.

Three verdict strengths:

  * proved-symbolic   -- canonical-form subtraction gave the zero polynomial
  * passed-randomized -- equal at N exact (or modular) sample points; the
                         report records the Schwartz-Zippel failure bound
                         (degree_bound / 2e6)^N instead of calling it proof
  * failed            -- with at least one exact witness point, re-checkable
                         in isolation

Sample points are drawn from [-10^6, 10^6] by a per-claim RNG derived from
(seed, claim name) via crc32, so reports are reproducible and independent
of evaluation order.
"""

from __future__ import annotations

import random
import time
import zlib
from dataclasses import dataclass, field

from gmpy2 import mpq

from .exactnum import BadPrimeError, Eisenstein, IDENTITY_PRIMES, PrimeField
from .mpoly import DegreeCapError, Polynomial

__all__ = [
    "DEFAULT_SEED",
    "DEFAULT_POINTS",
    "DEFAULT_POINTS_MODULAR",
    "DEFAULT_PRIME_COUNT",
    "SYMBOLIC_DEGREE_CAP",
    "OracleError",
    "IdentityClaim",
    "VerificationReport",
    "check_exact",
    "check_randomized",
    "check_modular",
    "check_auto",
    "report_lines",
]

# 'COXETER' spelled in ASCII; recorded in every report for reproducibility
DEFAULT_SEED = 0x434F5845544552
DEFAULT_POINTS = 20
DEFAULT_POINTS_MODULAR = 25
DEFAULT_PRIME_COUNT = 3
SYMBOLIC_DEGREE_CAP = 18
_SAMPLE_HALF_WIDTH = 10**6


class OracleError(RuntimeError):
    """Transient oracle failure at a sample point (e.g. division by zero); resample."""


@dataclass
class IdentityClaim:
    """LHS = RHS as polynomials, with enough structure to test it three ways.

    ``sym_*`` are optional Polynomials (symbolic route); ``eval_*`` are
    exact evaluators on integer points; ``mod_*`` are optional modular
    evaluators ``(point, PrimeField) -> residue`` (derived from ``eval_*``
    by projection when absent).
    """

    name: str
    nvars: int
    degree_bound: int
    provenance: str
    sym_lhs: Polynomial | None = None
    sym_rhs: Polynomial | None = None
    eval_lhs: object = None
    eval_rhs: object = None
    mod_lhs: object = None
    mod_rhs: object = None
    expect_failure: bool = False  # mutation controls: detection is success

    def modular_evaluator(self, side: str):
        explicit = self.mod_lhs if side == "lhs" else self.mod_rhs
        if explicit is not None:
            return explicit
        exact = self.eval_lhs if side == "lhs" else self.eval_rhs
        if exact is None:
            return None

        def projected(point, gf: PrimeField):
            return gf.project(exact(point))

        return projected


@dataclass
class VerificationReport:
    claim: str
    provenance: str
    mode: str
    verdict: str  # proved-symbolic | passed-randomized | failed
    points: int = 0
    primes: tuple[int, ...] = ()
    seed: int = DEFAULT_SEED
    error_bound: str = ""
    witnesses: list = field(default_factory=list)
    resampled: int = 0
    detail: str = ""
    expect_failure: bool = False
    wall_ms: float = 0.0  # excluded from canonical serialization (determinism)

    @property
    def ok(self) -> bool:
        if self.expect_failure:
            return self.verdict == "failed"
        return self.verdict in ("proved-symbolic", "proved-exact", "passed-randomized")


def _claim_rng(claim_name: str, seed: int, salt: int = 0) -> random.Random:
    tag = zlib.crc32(claim_name.encode())
    return random.Random((seed << 32) ^ (tag << 8) ^ salt)


def _sample_point(rng: random.Random, nvars: int) -> tuple[int, ...]:
    return tuple(rng.randint(-_SAMPLE_HALF_WIDTH, _SAMPLE_HALF_WIDTH) for _ in range(nvars))


def _witness_point(diff: Polynomial) -> dict:
    """Deterministic exact counterexample for a nonzero polynomial."""
    rng = random.Random(1)
    for width in (3, 10, 100, 10**6):
        for _ in range(200):
            pt = tuple(rng.randint(-width, width) for _ in range(len(diff.vars)))
            val = diff.evaluate(pt)
            if val != diff.ring.zero:
                return {"point": pt, "difference": str(val)}
    raise AssertionError("nonzero polynomial with no witness in 800 samples")


def check_exact(claim: IdentityClaim) -> VerificationReport:
    """Symbolic comparison by canonical-form subtraction."""
    t0 = time.perf_counter()
    if claim.sym_lhs is None or claim.sym_rhs is None:
        raise ValueError(f"claim {claim.name}: no symbolic forms; use randomized mode")
    if claim.degree_bound > max(SYMBOLIC_DEGREE_CAP, 18):
        raise DegreeCapError(
            f"claim {claim.name}: degree bound {claim.degree_bound} beyond symbolic cap; "
            "use randomized mode"
        )
    diff = claim.sym_lhs - claim.sym_rhs
    if diff.is_zero():
        verdict, witnesses = "proved-symbolic", []
    else:
        verdict, witnesses = "failed", [_witness_point(diff)]
    return VerificationReport(
        claim=claim.name,
        provenance=claim.provenance,
        mode="exact",
        verdict=verdict,
        witnesses=witnesses,
        expect_failure=claim.expect_failure,
        wall_ms=(time.perf_counter() - t0) * 1e3,
    )


def check_randomized(
    claim: IdentityClaim, points: int = DEFAULT_POINTS, seed: int = DEFAULT_SEED
) -> VerificationReport:
    """Exact evaluation at random integer points from [-10^6, 10^6]^n."""
    t0 = time.perf_counter()
    if claim.eval_lhs is None or claim.eval_rhs is None:
        raise ValueError(f"claim {claim.name}: no evaluation oracles")
    rng = _claim_rng(claim.name, seed)
    witnesses = []
    resampled = 0
    done = 0
    while done < points:
        pt = _sample_point(rng, claim.nvars)
        try:
            lv = claim.eval_lhs(pt)
            rv = claim.eval_rhs(pt)
        except OracleError:
            resampled += 1
            if resampled > 50 * points:
                raise
            continue
        if not _values_equal(lv, rv):
            witnesses.append({"point": pt, "lhs": str(lv), "rhs": str(rv)})
            if len(witnesses) >= 3:
                break
        done += 1
    verdict = "failed" if witnesses else "passed-randomized"
    bound = mpq(claim.degree_bound, 2 * _SAMPLE_HALF_WIDTH)
    return VerificationReport(
        claim=claim.name,
        provenance=claim.provenance,
        mode="randomized",
        verdict=verdict,
        points=points,
        seed=seed,
        error_bound="" if witnesses else f"({bound})^{points}",
        witnesses=witnesses,
        resampled=resampled,
        expect_failure=claim.expect_failure,
        wall_ms=(time.perf_counter() - t0) * 1e3,
    )


def check_modular(
    claim: IdentityClaim,
    points: int = DEFAULT_POINTS_MODULAR,
    prime_count: int = DEFAULT_PRIME_COUNT,
    seed: int = DEFAULT_SEED,
) -> VerificationReport:
    """Randomized testing over several independent prime fields."""
    t0 = time.perf_counter()
    lhs = claim.modular_evaluator("lhs")
    rhs = claim.modular_evaluator("rhs")
    if lhs is None or rhs is None:
        raise ValueError(f"claim {claim.name}: no modular or exact oracles")
    used: list[int] = []
    bad: list[str] = []
    witnesses = []
    verdicts = []
    resampled = 0
    for p in IDENTITY_PRIMES:
        if len(used) == prime_count:
            break
        gf = PrimeField(p)
        rng = _claim_rng(claim.name, seed, salt=p & 0xFFFF)
        prime_witnesses = []
        done = 0
        try:
            while done < points:
                pt = _sample_point(rng, claim.nvars)
                try:
                    lv = lhs(pt, gf)
                    rv = rhs(pt, gf)
                except OracleError:
                    resampled += 1
                    if resampled > 50 * points:
                        raise
                    continue
                if lv % p != rv % p:
                    prime_witnesses.append(
                        {"point": pt, "prime": p, "lhs": str(lv % p), "rhs": str(rv % p)}
                    )
                    if len(prime_witnesses) >= 3:
                        break
                done += 1
        except BadPrimeError as exc:
            bad.append(str(exc))
            continue
        used.append(p)
        verdicts.append("failed" if prime_witnesses else "passed")
        witnesses.extend(prime_witnesses)
    if len(used) < prime_count:
        raise BadPrimeError(
            f"claim {claim.name}: only {len(used)} usable primes; offenders: {bad}"
        )
    if len(set(verdicts)) > 1:
        # genuinely impossible for identities over Q unless a prime divides
        # a denominator, which BadPrimeError already routes around
        verdict = "failed"
    else:
        verdict = "failed" if verdicts[0] == "failed" else "passed-randomized"
    bound = mpq(claim.degree_bound, 2 * _SAMPLE_HALF_WIDTH)
    return VerificationReport(
        claim=claim.name,
        provenance=claim.provenance,
        mode="modular",
        verdict=verdict,
        points=points,
        primes=tuple(used),
        seed=seed,
        error_bound="" if verdict == "failed" else f"({bound})^{points} per prime",
        witnesses=witnesses,
        resampled=resampled,
        expect_failure=claim.expect_failure,
        wall_ms=(time.perf_counter() - t0) * 1e3,
    )


def check_auto(
    claim: IdentityClaim,
    mode: str = "exact",
    points: int = DEFAULT_POINTS,
    prime_count: int = DEFAULT_PRIME_COUNT,
    seed: int = DEFAULT_SEED,
) -> VerificationReport:
    """Route a claim to the strongest check its data and the mode allow."""
    if mode == "modular":
        return check_modular(claim, points=max(points, DEFAULT_POINTS_MODULAR), prime_count=prime_count, seed=seed)
    symbolic_ok = (
        claim.sym_lhs is not None
        and claim.sym_rhs is not None
        and claim.degree_bound <= SYMBOLIC_DEGREE_CAP
    )
    if mode == "exact" and symbolic_ok:
        return check_exact(claim)
    return check_randomized(claim, points=points, seed=seed)


def _values_equal(a, b) -> bool:
    if isinstance(a, Eisenstein) or isinstance(b, Eisenstein):
        return a == b if isinstance(a, Eisenstein) else b == a
    return mpq(a) == mpq(b)


def report_lines(report: VerificationReport) -> list[str]:
    """Canonical, timing-free serialization (byte-identical across runs)."""
    head = f"[{'PASS' if report.ok else 'FAIL'}] {report.claim}: {report.verdict}"
    if report.expect_failure:
        head += " (expected-failure control)"
    lines = [head]
    lines.append(f"    source: {report.provenance}")
    meta = [f"mode={report.mode}"]
    if report.points:
        meta.append(f"points={report.points}")
    if report.primes:
        meta.append("primes=" + ",".join(str(p) for p in report.primes))
    if report.mode != "exact":
        meta.append(f"seed={report.seed:#x}")
    if report.error_bound:
        meta.append(f"p_fail<={report.error_bound}")
    if report.resampled:
        meta.append(f"resampled={report.resampled}")
    lines.append("    " + " ".join(meta))
    for w in report.witnesses[:3]:
        lines.append(f"    witness: {w}")
    if report.detail:
        lines.append(f"    note: {report.detail}")
    return lines
