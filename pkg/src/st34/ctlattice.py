"""The 756 minimal vectors of the Coxeter-Todd lattice and the 126 mirrors of ST34.

Minimal vectors come in two families:

  * theta_pair:   +-(w^a * theta, -w^b * theta, 0, 0, 0, 0) with the two
                  nonzero entries in any of the 15 position pairs
                  (2 * 3^2 * 15 = 270 vectors)
  * omega_power:  +-(w^a1, ..., w^a6) with a1 + ... + a6 = 0 (mod 3)
                  (2 * 3^5 = 486 vectors)

All 756 have Hermitian norm 6 and the set is closed under the 6 units of
Z[w].  Each vector v determines the mirror {x : v1*x1 + ... + v6*x6 = 0};
scaling v by a unit fixes the mirror, giving a 6-to-1 map onto the 126
reflecting hyperplanes, whose census by type is (45, 30, 20, 30, 1).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product

from .exactnum import Eisenstein, OMEGA, THETA, UNITS, eis_str

__all__ = [
    "MinimalVector",
    "Hyperplane",
    "THETA_PAIR",
    "OMEGA_POWER",
    "HTYPES",
    "enumerate_minimal_vectors",
    "enumerate_hyperplanes",
    "vector_to_hyperplane",
    "hyperplane_fibers",
    "vector_line",
    "hyperplane_line",
]

THETA_PAIR = "theta_pair"
OMEGA_POWER = "omega_power"

# hyperplane types, keyed by the unit pattern of the canonical normal
PAIR_DIFF = "pair_diff"  # x_i - w^a x_j = 0
SPLIT_4_1_1 = "split_4_1_1"  # x1+x2+x3+x4 + w x5 + w^2 x6 = 0 (pattern)
SPLIT_3_3 = "split_3_3"  # x1+x2+x3 + w(x4+x5+x6) = 0 (pattern)
SPLIT_2_2_2 = "split_2_2_2"  # x1+x2 + w(x3+x4) + w^2(x5+x6) = 0 (pattern)
SUM_ALL = "sum_all"  # x1+...+x6 = 0

HTYPES = (PAIR_DIFF, SPLIT_4_1_1, SPLIT_3_3, SPLIT_2_2_2, SUM_ALL)
HTYPE_COUNTS = {PAIR_DIFF: 45, SPLIT_4_1_1: 30, SPLIT_3_3: 20, SPLIT_2_2_2: 30, SUM_ALL: 1}


@dataclass(frozen=True)
class MinimalVector:
    coords: tuple[Eisenstein, ...]
    family: str

    def scaled(self, unit: Eisenstein) -> "MinimalVector":
        return MinimalVector(tuple(unit * c for c in self.coords), self.family)

    def hermitian_norm(self):
        return sum((c.norm() for c in self.coords), start=0)


@dataclass(frozen=True)
class Hyperplane:
    normal: tuple[Eisenstein, ...]
    htype: str


@lru_cache(maxsize=1)
def enumerate_minimal_vectors() -> tuple[MinimalVector, ...]:
    """All 756 minimal vectors, deterministically ordered (family, then coords)."""
    zero = Eisenstein(0)
    vectors: list[MinimalVector] = []
    omega_pow = [OMEGA**a for a in range(3)]
    for i, j in combinations(range(6), 2):
        for a, b in product(range(3), repeat=2):
            base = [zero] * 6
            base[i] = omega_pow[a] * THETA
            base[j] = -(omega_pow[b] * THETA)
            v = tuple(base)
            vectors.append(MinimalVector(v, THETA_PAIR))
            vectors.append(MinimalVector(tuple(-c for c in v), THETA_PAIR))
    for exps in product(range(3), repeat=6):
        if sum(exps) % 3 != 0:
            continue
        v = tuple(omega_pow[a] for a in exps)
        vectors.append(MinimalVector(v, OMEGA_POWER))
        vectors.append(MinimalVector(tuple(-c for c in v), OMEGA_POWER))
    vectors.sort(key=lambda mv: (mv.family, vector_line(mv)))
    assert len(vectors) == 756 and len(set(vectors)) == 756
    return tuple(vectors)


def _canonical_normal(coords: tuple[Eisenstein, ...]) -> tuple[Eisenstein, ...]:
    """Scale so the first nonzero coordinate is 1 (units of Z[w] act freely)."""
    lead = next((c for c in coords if not c.is_zero()), None)
    if lead is None:
        raise ValueError("zero normal")
    return tuple(c / lead for c in coords)


def _classify(normal: tuple[Eisenstein, ...]) -> str:
    nonzero = [c for c in normal if not c.is_zero()]
    if len(nonzero) == 2:
        # second entry must be -w^a : the census has no x_i + w^a x_j mirrors
        assert any(nonzero[1] == -u for u in (OMEGA**a for a in range(3)))
        return PAIR_DIFF
    assert len(nonzero) == 6
    counts = {}
    for c in nonzero:
        counts[c] = counts.get(c, 0) + 1
    assert all(any(c == OMEGA**a for a in range(3)) for c in counts), normal
    shape = tuple(sorted(counts.values()))
    return {
        (6,): SUM_ALL,
        (1, 1, 4): SPLIT_4_1_1,
        (3, 3): SPLIT_3_3,
        (2, 2, 2): SPLIT_2_2_2,
    }[shape]


@lru_cache(maxsize=1)
def enumerate_hyperplanes() -> tuple[Hyperplane, ...]:
    """All 126 reflecting hyperplanes via permutations/w-twists of the 5 normal forms."""
    one = Eisenstein(1)
    w = OMEGA
    w2 = OMEGA**2
    raw: list[tuple[Eisenstein, ...]] = []
    for i, j in combinations(range(6), 2):
        for a in range(3):
            base = [Eisenstein(0)] * 6
            base[i] = one
            base[j] = -(w**a)
            raw.append(tuple(base))
    for i, j in product(range(6), repeat=2):
        if i != j:
            base = [one] * 6
            base[i] = w
            base[j] = w2
            raw.append(tuple(base))
    for s in combinations(range(6), 3):
        base = [one] * 6
        for i in s:
            base[i] = w
        raw.append(tuple(base))
    for s in combinations(range(6), 2):
        rest = [i for i in range(6) if i not in s]
        for t in combinations(rest, 2):
            base = [one] * 6
            for i in s:
                base[i] = w
            for i in t:
                base[i] = w2
            raw.append(tuple(base))
    raw.append(tuple([one] * 6))

    seen: dict[tuple[Eisenstein, ...], str] = {}
    for coords in raw:
        canon = _canonical_normal(coords)
        seen.setdefault(canon, _classify(canon))
    planes = tuple(
        sorted(
            (Hyperplane(n, t) for n, t in seen.items()),
            key=lambda h: (HTYPES.index(h.htype), hyperplane_line(h)),
        )
    )
    counts = {t: 0 for t in HTYPES}
    for h in planes:
        counts[h.htype] += 1
    assert counts == HTYPE_COUNTS, counts
    assert len(planes) == 126
    return planes


def vector_to_hyperplane(v: MinimalVector) -> Hyperplane:
    """Mirror cut out by the linear form v1*x1 + ... + v6*x6."""
    canon = _canonical_normal(v.coords)
    return Hyperplane(canon, _classify(canon))


def hyperplane_fibers() -> dict[Hyperplane, tuple[MinimalVector, ...]]:
    fibers: dict[Hyperplane, list[MinimalVector]] = {}
    for v in enumerate_minimal_vectors():
        fibers.setdefault(vector_to_hyperplane(v), []).append(v)
    return {h: tuple(vs) for h, vs in fibers.items()}


def vector_line(v: MinimalVector) -> str:
    return ", ".join(eis_str(c) for c in v.coords)


def hyperplane_line(h: Hyperplane) -> str:
    return ", ".join(eis_str(c) for c in h.normal)


def unit_orbit(v: MinimalVector) -> set[MinimalVector]:
    return {v.scaled(u) for u in UNITS}
