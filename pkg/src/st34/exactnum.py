"""Exact scalar arithmetic: rationals, the Eisenstein field Q(w), prime fields.

Everything downstream (lattice vectors, group matrices, polynomial
coefficients) lives in one of three coefficient domains:

  * Q          -- gmpy2.mpq, canonical reduced form with positive denominator
  * Q(w)       -- pairs a + b*w with w = exp(2*pi*i/3), so w^2 = -1 - w;
                  conjugation is (a, b) -> (a - b, -b) and the norm
                  a^2 - a*b + b^2 is a non-negative rational
  * GF(p)      -- residues mod a 62-bit prime p = 1 (mod 3), so that w has
                  an image (a primitive cube root of unity mod p)

No floating point anywhere.
"""

from __future__ import annotations

import re
from math import isqrt

from gmpy2 import gcd, mpq, mpz

__all__ = [
    "rational",
    "rat_str",
    "parse_rat",
    "Eisenstein",
    "eis_str",
    "parse_eis",
    "OMEGA",
    "THETA",
    "UNITS",
    "unit_pow",
    "PrimeField",
    "IDENTITY_PRIMES",
    "BadPrimeError",
    "mod_project",
    "crt_pair",
    "crt",
    "rational_reconstruct",
]


class BadPrimeError(ValueError):
    """A denominator is divisible by the chosen prime; retry with another."""


def rational(num, den=1) -> mpq:
    """Canonical reduced rational with positive denominator."""
    if den == 0:
        raise ZeroDivisionError("rational with zero denominator")
    return mpq(num, den)


def rat_str(x) -> str:
    """Serialize as ``num/den``, denominator omitted when it is 1."""
    return str(mpq(x))


_RAT_RE = re.compile(r"^([+-]?\d+)(?:/(\d+))?$")


def parse_rat(text: str) -> mpq:
    m = _RAT_RE.match(text.strip())
    if not m:
        raise ValueError(f"not a rational literal: {text!r}")
    return mpq(int(m.group(1)), int(m.group(2) or 1))


class Eisenstein:
    """Element a + b*w of Q(w), stored on the basis {1, w}.

    Instances are immutable values; arithmetic returns fresh objects.
    Components are exact rationals (plain ints accepted and kept as such
    where possible, which is what the lattice enumeration relies on).
    """

    __slots__ = ("re1", "rew")

    def __init__(self, re1=0, rew=0):
        object.__setattr__(self, "re1", re1 if isinstance(re1, (int, mpq)) else mpq(re1))
        object.__setattr__(self, "rew", rew if isinstance(rew, (int, mpq)) else mpq(rew))

    def __setattr__(self, *a):
        raise AttributeError("Eisenstein values are immutable")

    # -- ring operations -------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        return Eisenstein(self.re1 + other.re1, self.rew + other.rew)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        return Eisenstein(self.re1 - other.re1, self.rew - other.rew)

    def __rsub__(self, other):
        return _coerce(other).__sub__(self)

    def __neg__(self):
        return Eisenstein(-self.re1, -self.rew)

    def __mul__(self, other):
        # (a + b*w)(c + d*w) = ac - bd + (ad + bc - bd)*w   using w^2 = -1 - w
        other = _coerce(other)
        a, b = self.re1, self.rew
        c, d = other.re1, other.rew
        bd = b * d
        return Eisenstein(a * c - bd, a * d + b * c - bd)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        n = other.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(w)")
        num = self * other.conj()
        return Eisenstein(mpq(num.re1, n), mpq(num.rew, n))

    def __rtruediv__(self, other):
        return _coerce(other).__truediv__(self)

    def __pow__(self, k: int):
        if k < 0:
            return (Eisenstein(1) / self) ** (-k)
        out = Eisenstein(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- field structure --------------------------------------------------

    def conj(self) -> "Eisenstein":
        return Eisenstein(self.re1 - self.rew, -self.rew)

    def norm(self):
        a, b = self.re1, self.rew
        return a * a - a * b + b * b

    def is_zero(self) -> bool:
        return self.re1 == 0 and self.rew == 0

    def is_rational(self) -> bool:
        return self.rew == 0

    # -- value semantics --------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Eisenstein):
            return self.re1 == other.re1 and self.rew == other.rew
        if isinstance(other, (int, type(mpq()))):
            return self.rew == 0 and self.re1 == other
        return NotImplemented

    def __hash__(self):
        if self.rew == 0:
            return hash(self.re1)
        return hash((mpq(self.re1), mpq(self.rew)))

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"Eisenstein({self.re1!r}, {self.rew!r})"

    def __str__(self):
        return eis_str(self)


def _coerce(x) -> Eisenstein:
    if isinstance(x, Eisenstein):
        return x
    return Eisenstein(x)


OMEGA = Eisenstein(0, 1)
THETA = Eisenstein(1, 2)  # w - conj(w) = 1 + 2w, a square root of -3
UNITS = tuple(
    u for a in range(3) for u in (OMEGA**a, -(OMEGA**a))
)  # the 6 units of Z[w]: {+-w^a}


def unit_pow(k: int) -> Eisenstein:
    """k-th power of -w, a generator of the unit group; period 6."""
    return (-OMEGA) ** (k % 6)


def eis_str(x: Eisenstein) -> str:
    """Serialize ``a+b*w`` with rational parts, eliding zero components."""
    a, b = mpq(x.re1), mpq(x.rew)
    if b == 0:
        return str(a)
    if b == 1:
        wpart = "w"
    elif b == -1:
        wpart = "-w"
    else:
        wpart = f"{b}*w"
    if a == 0:
        return wpart
    return f"{a}{'+' if not wpart.startswith('-') else ''}{wpart}"


_EIS_W_RE = re.compile(r"^(?:([+-]?\d+(?:/\d+)?)\s*([+-]))?\s*([+-]?)(?:(\d+(?:/\d+)?)\s*\*\s*)?w$")


def parse_eis(text: str) -> Eisenstein:
    """Parse the ``a+b*w`` serialization (inverse of :func:`eis_str`)."""
    t = text.strip().replace(" ", "")
    if "w" not in t:
        return Eisenstein(parse_rat(t))
    m = _EIS_W_RE.match(t)
    if not m:
        raise ValueError(f"not an Eisenstein literal: {text!r}")
    a_txt, mid, sign, b_txt = m.groups()
    a = parse_rat(a_txt) if a_txt else mpq(0)
    b = parse_rat(b_txt) if b_txt else mpq(1)
    if mid == "-" or sign == "-":
        b = -b
    return Eisenstein(a, b)


# Ten fixed 62-bit primes, all = 1 (mod 3) so GF(p) contains cube roots of
# unity; hard-coded rather than searched at runtime for reproducibility.
IDENTITY_PRIMES = (
    2305843009213694017,
    2305843009213694149,
    2305843009213694173,
    2305843009213694257,
    2305843009213694317,
    2305843009213694323,
    2305843009213694443,
    2305843009213694491,
    2305843009213694497,
    2305843009213694569,
)


class PrimeField:
    """GF(p) with p = 1 (mod 3): residues are plain ints in [0, p).

    Carries the image of w (a primitive cube root of unity mod p) so that
    Eisenstein data projects into the field.
    """

    def __init__(self, p: int):
        if p % 3 != 1:
            raise ValueError("need p = 1 (mod 3) so that w projects into GF(p)")
        self.p = p
        self.omega = self._find_cube_root()

    def _find_cube_root(self) -> int:
        p = self.p
        for a in range(2, 1000):
            w = pow(a, (p - 1) // 3, p)
            if w != 1 and (w * w + w + 1) % p == 0:
                return w
        raise ValueError(f"no cube root of unity mod {self.p}; is it prime?")

    # residues are canonical ints; these helpers keep call sites terse
    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError(f"inverse of 0 mod {self.p}")
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def project(self, x) -> int:
        """Image of a rational; raises BadPrimeError if p divides its denominator."""
        x = mpq(x)
        num, den = int(x.numerator), int(x.denominator)
        if den % self.p == 0:
            raise BadPrimeError(f"denominator {den} divisible by prime {self.p}")
        return num * pow(den, self.p - 2, self.p) % self.p

    def project_eis(self, x: Eisenstein) -> int:
        return (self.project(x.re1) + self.project(x.rew) * self.omega) % self.p

    def __repr__(self):
        return f"PrimeField({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))


def mod_project(x, p: int) -> int:
    """Homomorphic image of a rational in GF(p)."""
    return PrimeField(p).project(x) if p % 3 == 1 else _project_plain(x, p)


def _project_plain(x, p: int) -> int:
    x = mpq(x)
    num, den = int(x.numerator), int(x.denominator)
    if den % p == 0:
        raise BadPrimeError(f"denominator {den} divisible by prime {p}")
    return num * pow(den, p - 2, p) % p


def crt_pair(r1: int, m1: int, r2: int, m2: int) -> tuple[int, int]:
    """Combine x = r1 (mod m1), x = r2 (mod m2) for coprime moduli."""
    g = gcd(mpz(m1), mpz(m2))
    if g != 1:
        raise ValueError("moduli not coprime")
    x = (r1 + (r2 - r1) * pow(m1, -1, m2) % m2 * m1) % (m1 * m2)
    return int(x), m1 * m2


def crt(residues, moduli) -> tuple[int, int]:
    r, m = residues[0] % moduli[0], moduli[0]
    for ri, mi in zip(residues[1:], moduli[1:]):
        r, m = crt_pair(r, m, ri, mi)
    return r, m


def rational_reconstruct(c: int, m: int) -> mpq:
    """Recover n/d from c = n * d^(-1) (mod m) with |n|, d <= sqrt(m/2).

    Standard half-extended Euclid; raises ValueError when no candidate
    satisfies the size bound (caller should add more primes).
    """
    c %= m
    bound = isqrt(m // 2)
    r0, r1 = m, c
    t0, t1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    if abs(t1) > bound or r1 == 0 and t1 == 0:
        raise ValueError("rational reconstruction failed; modulus too small")
    if gcd(mpz(r1), mpz(t1)) != 1:
        raise ValueError("rational reconstruction failed; nontrivial gcd")
    if t1 < 0:
        r1, t1 = -r1, -t1
    return mpq(r1, t1)
