"""Sparse multivariate polynomials over pluggable exact coefficient rings.

Terms live in a dict keyed by packed exponent vectors: variable i occupies
bits [8i, 8i+8), so a monomial product is a single integer addition.  The
8-bit field bounds each exponent by 255 (far above the degree-42 work done
here); constructors and products check the bound rather than wrap.

Three coefficient rings are supported: Q (gmpy2.mpq), Q(w) (Eisenstein),
and GF(p).  Hot loops use native ``+``/``*`` on coefficients and call
``ring.normalize`` once per result; GF(p) coefficients are therefore plain
ints reduced lazily.

Canonical text form: terms sorted graded-lex descending, coefficients as
``num/den`` (or a parenthesized ``(a+b*w)``), exponent 1 and coefficient 1
elided, e.g. ``-5*p3^2 + 6*p6 - 180*s6``.
"""

from __future__ import annotations

import re
from typing import Iterable, Mapping, Sequence

from gmpy2 import mpq

from .exactnum import Eisenstein, PrimeField, eis_str, parse_eis

__all__ = [
    "QQ",
    "QW",
    "GF",
    "Polynomial",
    "PolynomialError",
    "ParseError",
    "DegreeCapError",
    "POW_CAP",
    "parse_polynomial",
    "pack",
    "unpack",
    "pack_one",
]

POW_CAP = 42  # symbolic powers above this are refused; use evaluation instead
_EXP_BITS = 8
_EXP_MAX = (1 << _EXP_BITS) - 1


class PolynomialError(ValueError):
    pass


class DegreeCapError(PolynomialError):
    """Raised when a symbolic operation would exceed the degree cap."""


class ParseError(PolynomialError):
    def __init__(self, message, line, col):
        super().__init__(f"{message} (line {line}, column {col})")
        self.line = line
        self.col = col


# ---------------------------------------------------------------------------
# coefficient rings


class _RationalRing:
    name = "QQ"

    zero = mpq(0)
    one = mpq(1)

    @staticmethod
    def coerce(x):
        if isinstance(x, Eisenstein):
            if x.rew != 0:
                raise PolynomialError("cannot coerce a non-rational Eisenstein number to Q")
            return mpq(x.re1)
        return mpq(x)

    @staticmethod
    def is_zero(c):
        return c == 0

    @staticmethod
    def normalize(c):
        return c

    @staticmethod
    def neg(c):
        return -c

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def pow(c, k):
        return c**k

    @staticmethod
    def emit(c):
        return str(c)

    @staticmethod
    def parse(text):
        return mpq(text)


class _EisensteinRing:
    name = "QW"

    zero = Eisenstein(0)
    one = Eisenstein(1)

    @staticmethod
    def coerce(x):
        if isinstance(x, Eisenstein):
            return x
        return Eisenstein(mpq(x))

    @staticmethod
    def is_zero(c):
        return c.is_zero()

    @staticmethod
    def normalize(c):
        return c

    @staticmethod
    def neg(c):
        return -c

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def pow(c, k):
        return c**k

    @staticmethod
    def emit(c):
        return f"({eis_str(c)})" if c.rew != 0 else str(mpq(c.re1))

    @staticmethod
    def parse(text):
        return parse_eis(text)


class _PrimeFieldRing:
    def __init__(self, field: PrimeField):
        self.field = field
        self.p = field.p
        self.name = f"GF({field.p})"
        self.zero = 0
        self.one = 1

    def coerce(self, x):
        if isinstance(x, Eisenstein):
            return self.field.project_eis(x)
        if isinstance(x, int):
            return x % self.p
        return self.field.project(mpq(x))

    def is_zero(self, c):
        return c % self.p == 0

    def normalize(self, c):
        return c % self.p

    def neg(self, c):
        return -c % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def pow(self, c, k):
        return pow(c, k, self.p)

    def emit(self, c):
        return str(c % self.p)

    def parse(self, text):
        return int(text) % self.p

    def __eq__(self, other):
        return isinstance(other, _PrimeFieldRing) and other.p == self.p

    def __hash__(self):
        return hash(("GFRing", self.p))


QQ = _RationalRing()
QW = _EisensteinRing()

_GF_CACHE: dict[int, _PrimeFieldRing] = {}


def GF(p: int) -> _PrimeFieldRing:
    ring = _GF_CACHE.get(p)
    if ring is None:
        ring = _GF_CACHE[p] = _PrimeFieldRing(PrimeField(p))
    return ring


# ---------------------------------------------------------------------------
# exponent packing


def pack(exps: Sequence[int]) -> int:
    key = 0
    for i, e in enumerate(exps):
        if not 0 <= e <= _EXP_MAX:
            raise DegreeCapError(f"exponent {e} outside [0, {_EXP_MAX}]")
        key |= e << (_EXP_BITS * i)
    return key


def unpack(key: int, nvars: int) -> tuple[int, ...]:
    return tuple((key >> (_EXP_BITS * i)) & _EXP_MAX for i in range(nvars))


class Polynomial:
    """Immutable sparse polynomial; ``terms`` maps packed exponents to coefficients."""

    __slots__ = ("ring", "vars", "terms", "_maxdeg")

    def __init__(self, ring, variables: Sequence[str], terms: Mapping | Iterable = ()):
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "vars", tuple(variables))
        if len(self.vars) * _EXP_BITS > 64:
            raise PolynomialError("at most 8 variables supported")
        items = terms.items() if isinstance(terms, Mapping) else terms
        canon: dict[int, object] = {}
        for exps, c in items:
            key = exps if isinstance(exps, int) else pack(exps)
            c = ring.coerce(c)
            prev = canon.get(key)
            canon[key] = c if prev is None else ring.add(prev, c)
        canon = {k: ring.normalize(c) for k, c in canon.items()}
        object.__setattr__(self, "terms", {k: c for k, c in canon.items() if not ring.is_zero(c)})
        object.__setattr__(self, "_maxdeg", None)

    def __setattr__(self, *a):
        raise AttributeError("polynomials are immutable")

    @classmethod
    def _raw(cls, ring, variables, terms: dict) -> "Polynomial":
        """Internal constructor for already-canonical term dicts."""
        self = object.__new__(cls)
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "vars", variables)
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "_maxdeg", None)
        return self

    @classmethod
    def zero(cls, ring, variables) -> "Polynomial":
        return cls._raw(ring, tuple(variables), {})

    @classmethod
    def constant(cls, ring, variables, c) -> "Polynomial":
        c = ring.normalize(ring.coerce(c))
        return cls._raw(ring, tuple(variables), {} if ring.is_zero(c) else {0: c})

    @classmethod
    def variable(cls, ring, variables, name: str) -> "Polynomial":
        variables = tuple(variables)
        return cls._raw(ring, variables, {pack_one(variables.index(name)): ring.one})

    # -- inspection --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self):
        """Total degree; -inf for the zero polynomial."""
        if not self.terms:
            return float("-inf")
        return max(_total(k) for k in self.terms)

    def per_variable_max(self) -> tuple[int, ...]:
        cached = self._maxdeg
        if cached is None:
            n = len(self.vars)
            m = [0] * n
            for k in self.terms:
                for i in range(n):
                    e = (k >> (_EXP_BITS * i)) & _EXP_MAX
                    if e > m[i]:
                        m[i] = e
            cached = tuple(m)
            object.__setattr__(self, "_maxdeg", cached)
        return cached

    def coefficient(self, exps) -> object:
        key = exps if isinstance(exps, int) else pack(exps)
        return self.terms.get(key, self.ring.zero)

    def monomials(self):
        return [unpack(k, len(self.vars)) for k in self._sorted_keys()]

    def weighted_degrees(self, weights) -> set:
        out = set()
        n = len(self.vars)
        for k in self.terms:
            out.add(sum(weights[i] * ((k >> (_EXP_BITS * i)) & _EXP_MAX) for i in range(n)))
        return out

    # -- arithmetic ----------------------------------------------------------

    def _check_compatible(self, other: "Polynomial"):
        if self.vars != other.vars or self.ring.name != other.ring.name:
            raise PolynomialError(
                f"operand mismatch: {self.ring.name}{list(self.vars)} vs "
                f"{other.ring.name}{list(other.vars)}"
            )

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.ring, self.vars, other)
        self._check_compatible(other)
        ring = self.ring
        out = dict(self.terms)
        for k, c in other.terms.items():
            prev = out.get(k)
            out[k] = c if prev is None else prev + c
        out = {k: ring.normalize(c) for k, c in out.items()}
        return Polynomial._raw(ring, self.vars, {k: c for k, c in out.items() if not ring.is_zero(c)})

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.ring, self.vars, other)
        return self + (-other)

    def __neg__(self):
        ring = self.ring
        return Polynomial._raw(ring, self.vars, {k: ring.neg(c) for k, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        self._check_compatible(other)
        ring = self.ring
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        if not a or not b:
            return Polynomial.zero(ring, self.vars)
        ma, mb = self.per_variable_max(), other.per_variable_max()
        if any(x + y > _EXP_MAX for x, y in zip(ma, mb)):
            raise DegreeCapError("product exceeds per-variable exponent cap 255")
        out: dict = {}
        get = out.get
        for kb, cb in b.items():
            for ka, ca in a.items():
                k = ka + kb
                prev = get(k)
                out[k] = ca * cb if prev is None else prev + ca * cb
        out = {k: ring.normalize(c) for k, c in out.items()}
        return Polynomial._raw(ring, self.vars, {k: c for k, c in out.items() if not ring.is_zero(c)})

    __rmul__ = __mul__

    def scale(self, c) -> "Polynomial":
        ring = self.ring
        c = ring.coerce(c)
        if ring.is_zero(c):
            return Polynomial.zero(ring, self.vars)
        out = {k: ring.normalize(v * c) for k, v in self.terms.items()}
        return Polynomial._raw(ring, self.vars, {k: v for k, v in out.items() if not ring.is_zero(v)})

    def __pow__(self, k: int):
        return self.pow(k)

    def pow(self, k: int, cap: int = POW_CAP) -> "Polynomial":
        if k < 0:
            raise PolynomialError("negative power of a polynomial")
        deg = self.degree()
        if deg != float("-inf") and deg * k > cap:
            raise DegreeCapError(
                f"degree {deg}^{k} exceeds symbolic cap {cap}; use evaluation mode"
            )
        out = Polynomial.constant(self.ring, self.vars, self.ring.one)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            if not self.terms:
                return other == 0
            return len(self.terms) == 1 and 0 in self.terms and self.terms[0] == other
        return (
            self.ring.name == other.ring.name
            and self.vars == other.vars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.ring.name, self.vars, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    # -- calculus / substitution ---------------------------------------------

    def deriv(self, var: str) -> "Polynomial":
        try:
            i = self.vars.index(var)
        except ValueError:
            raise PolynomialError(f"unknown variable {var!r}") from None
        ring = self.ring
        shift = _EXP_BITS * i
        out: dict = {}
        for k, c in self.terms.items():
            e = (k >> shift) & _EXP_MAX
            if e:
                nc = ring.normalize(c * e)
                if not ring.is_zero(nc):
                    out[k - (1 << shift)] = nc
        return Polynomial._raw(ring, self.vars, out)

    def evaluate(self, point: Sequence):
        """Exact value at a point (one ring element per variable)."""
        ring = self.ring
        n = len(self.vars)
        if len(point) != n:
            raise PolynomialError(f"point has {len(point)} coordinates, need {n}")
        vals = [ring.coerce(x) for x in point]
        powcache: list[dict[int, object]] = [{0: ring.one, 1: v} for v in vals]
        acc = ring.zero
        for k, c in self.terms.items():
            term = c
            for i in range(n):
                e = (k >> (_EXP_BITS * i)) & _EXP_MAX
                if e:
                    cache = powcache[i]
                    pv = cache.get(e)
                    if pv is None:
                        pv = cache[e] = ring.pow(vals[i], e)
                    term = term * pv
            acc = acc + term
        return ring.normalize(acc)

    def linear_substitute(self, matrix: Sequence[Sequence]) -> "Polynomial":
        """Replace variable i by the linear form sum_j matrix[i][j] * x_j."""
        n = len(self.vars)
        if len(matrix) != n or any(len(row) != n for row in matrix):
            raise PolynomialError(f"matrix must be {n}x{n}")
        ring = self.ring
        forms = []
        for row in matrix:
            forms.append(
                Polynomial(ring, self.vars, {pack_one(j): ring.coerce(c) for j, c in enumerate(row) if not ring.is_zero(ring.coerce(c))})
            )
        # monomial matrices (permutations, w-twists) keep terms 1:1
        if all(len(f.terms) <= 1 for f in forms):
            return self._monomial_substitute(forms)
        return self._horner_substitute(self.terms, 0, forms)

    def _monomial_substitute(self, forms: list["Polynomial"]) -> "Polynomial":
        ring = self.ring
        n = len(self.vars)
        images = []
        for f in forms:
            if not f.terms:
                images.append(None)
            else:
                ((k, c),) = f.terms.items()
                images.append((k, c))
        out: dict = {}
        for k, c in self.terms.items():
            nk = 0
            nc = c
            dead = False
            for i in range(n):
                e = (k >> (_EXP_BITS * i)) & _EXP_MAX
                if not e:
                    continue
                if images[i] is None:
                    dead = True
                    break
                ik, ic = images[i]
                nk += ik * e
                if ic != ring.one:
                    nc = nc * ring.pow(ic, e)
            if dead:
                continue
            prev = out.get(nk)
            out[nk] = nc if prev is None else prev + nc
        out = {k: ring.normalize(c) for k, c in out.items()}
        return Polynomial._raw(ring, self.vars, {k: c for k, c in out.items() if not ring.is_zero(c)})

    def _horner_substitute(self, terms: dict, vi: int, forms: list["Polynomial"]) -> "Polynomial":
        ring = self.ring
        n = len(self.vars)
        if not terms:
            return Polynomial.zero(ring, self.vars)
        if vi == n:
            return Polynomial._raw(ring, self.vars, dict(terms))
        shift = _EXP_BITS * vi
        groups: dict[int, dict] = {}
        for k, c in terms.items():
            e = (k >> shift) & _EXP_MAX
            groups.setdefault(e, {})[k - (e << shift)] = c
        if len(groups) == 1 and 0 in groups:
            return self._horner_substitute(groups[0], vi + 1, forms)
        acc = Polynomial.zero(ring, self.vars)
        for e in range(max(groups), -1, -1):
            acc = acc * forms[vi]
            sub = groups.get(e)
            if sub:
                acc = acc + self._horner_substitute(sub, vi + 1, forms)
        return acc

    def compose(self, assignment: Mapping[str, "Polynomial"]) -> "Polynomial":
        """Substitute a polynomial for every variable (symbols -> new ring)."""
        missing = [v for v in self.vars if v not in assignment]
        if missing:
            raise PolynomialError(f"no assignment for symbols {missing}")
        images = [assignment[v] for v in self.vars]
        target = images[0]
        ring = target.ring
        for im in images:
            if im.vars != target.vars or im.ring.name != ring.name:
                raise PolynomialError("assignment polynomials disagree on ring/variables")
        n = len(self.vars)
        powcache: list[dict[int, Polynomial]] = [
            {0: Polynomial.constant(ring, target.vars, ring.one), 1: im} for im in images
        ]
        acc = Polynomial.zero(ring, target.vars)
        for k, c in self.terms.items():
            term = Polynomial.constant(ring, target.vars, ring.coerce(c))
            for i in range(n):
                e = (k >> (_EXP_BITS * i)) & _EXP_MAX
                if e:
                    cache = powcache[i]
                    pv = cache.get(e)
                    if pv is None:
                        base = cache[1]
                        pv = base.pow(e, cap=4096)
                        cache[e] = pv
                    term = term * pv
            acc = acc + term
        return acc

    def rename_merge(self, new_vars: Sequence[str], var_map: Sequence[int]) -> "Polynomial":
        """Map variable i to new variable var_map[i]; coinciding targets add exponents."""
        n = len(self.vars)
        new_vars = tuple(new_vars)
        out: dict = {}
        ring = self.ring
        for k, c in self.terms.items():
            exps = [0] * len(new_vars)
            for i in range(n):
                e = (k >> (_EXP_BITS * i)) & _EXP_MAX
                if e:
                    exps[var_map[i]] += e
            key = pack(exps)
            prev = out.get(key)
            out[key] = c if prev is None else prev + c
        out = {k: ring.normalize(c) for k, c in out.items()}
        return Polynomial._raw(ring, new_vars, {k: c for k, c in out.items() if not ring.is_zero(c)})

    def to_ring(self, ring) -> "Polynomial":
        if ring.name == self.ring.name:
            return self
        out = {k: ring.normalize(ring.coerce(c)) for k, c in self.terms.items()}
        return Polynomial._raw(ring, self.vars, {k: c for k, c in out.items() if not ring.is_zero(c)})

    # -- canonical text form ---------------------------------------------

    def _sorted_keys(self):
        n = len(self.vars)
        return sorted(self.terms, key=lambda k: (_total(k), unpack(k, n)), reverse=True)

    def emit(self) -> str:
        if not self.terms:
            return "0"
        ring = self.ring
        pieces = []
        for k in self._sorted_keys():
            c = self.terms[k]
            mono = "*".join(
                (v if e == 1 else f"{v}^{e}")
                for v, e in zip(self.vars, unpack(k, len(self.vars)))
                if e
            )
            ctext = ring.emit(c)
            if ctext.startswith("(") or not ctext.startswith("-"):
                sign, mag = "+", ctext
            else:
                sign, mag = "-", ctext[1:]
            if mono:
                body = mono if mag == "1" else f"{mag}*{mono}"
            else:
                body = mag
            pieces.append((sign, body))
        first_sign, first_body = pieces[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"<{self.ring.name}[{','.join(self.vars)}]: {self.emit()}>"


def pack_one(i: int, e: int = 1) -> int:
    return e << (_EXP_BITS * i)


def _total(key: int) -> int:
    t = 0
    while key:
        t += key & _EXP_MAX
        key >>= _EXP_BITS
    return t


# ---------------------------------------------------------------------------
# parser

_TOKEN_RE = re.compile(
    r"(?P<ws>\s+)"
    r"|(?P<paren>\([^()]*\))"
    r"|(?P<num>\d+(?:/\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*^])"
)


def _tokenize(text: str):
    pos = 0
    line, col = 1, 1
    out = []
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        tok = m.group()
        if kind != "ws":
            out.append((kind, tok, line, col))
        nl = tok.count("\n")
        if nl:
            line += nl
            col = len(tok) - tok.rfind("\n")
        else:
            col += len(tok)
        pos = m.end()
    return out


def parse_polynomial(text: str, ring, variables: Sequence[str]) -> Polynomial:
    """Parse the canonical format; raises ParseError with line/column."""
    variables = tuple(variables)
    index = {v: i for i, v in enumerate(variables)}
    toks = _tokenize(text)
    if not toks:
        raise ParseError("empty polynomial", 1, 1)
    terms: dict[int, object] = {}
    i = 0
    first = True
    while i < len(toks):
        sign = 1
        kind, tok, line, col = toks[i]
        if kind == "op" and tok in "+-":
            sign = -1 if tok == "-" else 1
            i += 1
        elif not first:
            raise ParseError(f"expected '+' or '-', got {tok!r}", line, col)
        first = False
        if i >= len(toks):
            raise ParseError("dangling sign", line, col)
        coeff = None
        exps = [0] * len(variables)
        saw_factor = False
        while True:
            kind, tok, line, col = toks[i]
            if kind == "paren":
                if coeff is not None or saw_factor:
                    raise ParseError("coefficient must come first in a term", line, col)
                try:
                    coeff = ring.parse(tok[1:-1])
                except Exception as exc:
                    raise ParseError(f"bad coefficient {tok!r}: {exc}", line, col) from None
            elif kind == "num":
                if coeff is not None or saw_factor:
                    raise ParseError("numeric coefficient must come first in a term", line, col)
                coeff = ring.parse(tok)
            elif kind == "name":
                if tok not in index:
                    raise ParseError(f"unknown variable {tok!r}", line, col)
                saw_factor = True
                e = 1
                if i + 2 < len(toks) and toks[i + 1][1] == "^":
                    ek, etok, eline, ecol = toks[i + 2]
                    if ek != "num" or "/" in etok:
                        raise ParseError("exponent must be a non-negative integer", eline, ecol)
                    e = int(etok)
                    i += 2
                if e > _EXP_MAX:
                    raise ParseError(f"exponent {e} exceeds cap {_EXP_MAX}", line, col)
                exps[index[tok]] += e
            else:
                raise ParseError(f"unexpected token {tok!r}", line, col)
            i += 1
            if i < len(toks) and toks[i][1] == "*":
                i += 1
                if i >= len(toks):
                    raise ParseError("dangling '*'", line, col)
                continue
            break
        if coeff is None:
            if not saw_factor:
                raise ParseError("empty term", line, col)
            coeff = ring.one
        if sign < 0:
            coeff = ring.neg(coeff)
        key = pack(exps)
        if key in terms:
            raise ParseError(f"duplicate monomial in input near line {line}", line, col)
        terms[key] = coeff
    return Polynomial(ring, variables, terms)
