"""Exact linear algebra: fraction-free elimination and modular solving.

Two routes to the same exact answer:

  * Bareiss fraction-free elimination over the integers (intermediate
    entries are minors, so divisions are exact) followed by rational back
    substitution -- the reference exact path.
  * Gaussian elimination mod several 62-bit primes, CRT-combined and
    rationally reconstructed -- much faster on large systems.  Full rank
    mod any single prime already certifies full rank over Q, so a
    reconstructed solution that satisfies a square nonsingular system *is*
    the unique exact solution once verified on the defining equations.
"""

from __future__ import annotations

from gmpy2 import mpq, mpz

from .exactnum import crt, rational_reconstruct

__all__ = [
    "SingularMatrixError",
    "bareiss_triangularize",
    "det_exact",
    "solve_bareiss",
    "solve_mod",
    "det_mod",
    "solve_crt_primes",
]


class SingularMatrixError(ValueError):
    pass


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _clear_denominators(rows):
    """Scale each row by the lcm of its denominators; keeps solutions intact."""
    out = []
    for row in rows:
        qs = [mpq(x) for x in row]
        scale = mpz(1)
        for q in qs:
            d = q.denominator
            scale = scale * d // _gcd(scale, d)
        out.append([mpz(q.numerator * (scale // q.denominator)) for q in qs])
    return out


def bareiss_triangularize(rows):
    """In-place fraction-free elimination; returns (matrix, row permutation sign).

    Input rows must be integers (mpz/int).  After return, the matrix is
    upper triangular and entry [k][k] is the k-th leading principal minor
    of the row-permuted matrix (Bareiss invariant).
    """
    m = len(rows)
    n = len(rows[0])
    sign = 1
    prev = mpz(1)
    r = 0
    for c in range(min(m, n)):
        piv = None
        for i in range(r, m):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            raise SingularMatrixError(f"no pivot in column {c}")
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
            sign = -sign
        pk = rows[r][c]
        for i in range(r + 1, m):
            ri = rows[i]
            rk = rows[r]
            mic = ri[c]
            for j in range(c + 1, n):
                ri[j] = (pk * ri[j] - mic * rk[j]) // prev
            ri[c] = mpz(0)
        prev = pk
        r += 1
        if r == m:
            break
    return rows, sign


def det_exact(matrix) -> mpq:
    """Exact determinant of a square matrix with rational entries."""
    n = len(matrix)
    if n == 0:
        return mpq(1)
    qs = [[mpq(x) for x in row] for row in matrix]
    scale = mpq(1)
    rows = []
    for row in qs:
        lcm = mpz(1)
        for q in row:
            d = q.denominator
            lcm = lcm * d // _gcd(lcm, d)
        scale = scale / lcm
        rows.append([mpz(q.numerator * (lcm // q.denominator)) for q in row])
    try:
        rows, sign = bareiss_triangularize(rows)
    except SingularMatrixError:
        return mpq(0)
    return scale * sign * rows[n - 1][n - 1]


def solve_bareiss(matrix, rhs) -> list[mpq]:
    """Solve a square nonsingular rational system exactly (Bareiss + back-subst)."""
    n = len(matrix)
    aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
    rows = _clear_denominators(aug)
    rows, _sign = bareiss_triangularize(rows)
    xs: list[mpq] = [mpq(0)] * n
    for i in range(n - 1, -1, -1):
        s = mpq(rows[i][n])
        for j in range(i + 1, n):
            s -= rows[i][j] * xs[j]
        if rows[i][i] == 0:
            raise SingularMatrixError("zero pivot in back substitution")
        xs[i] = s / rows[i][i]
    return xs


def solve_mod(matrix, rhs, p: int) -> list[int]:
    """Solve a square system mod p; raises SingularMatrixError if rank-deficient mod p."""
    n = len(matrix)
    rows = [[int(x) % p for x in row] + [int(b) % p] for row, b in zip(matrix, rhs)]
    for c in range(n):
        piv = None
        for i in range(c, n):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            raise SingularMatrixError(f"matrix singular mod {p} (column {c})")
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
        inv = pow(rows[c][c], p - 2, p)
        rc = rows[c]
        for j in range(c, n + 1):
            rc[j] = rc[j] * inv % p
        for i in range(n):
            if i != c and rows[i][c]:
                f = rows[i][c]
                ri = rows[i]
                for j in range(c, n + 1):
                    ri[j] = (ri[j] - f * rc[j]) % p
    return [rows[i][n] for i in range(n)]


def det_mod(matrix, p: int) -> int:
    n = len(matrix)
    rows = [[int(x) % p for x in row] for row in matrix]
    det = 1
    for c in range(n):
        piv = None
        for i in range(c, n):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            return 0
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            det = -det % p
        det = det * rows[c][c] % p
        inv = pow(rows[c][c], p - 2, p)
        rc = rows[c]
        for i in range(c + 1, n):
            if rows[i][c]:
                f = rows[i][c] * inv % p
                ri = rows[i]
                for j in range(c, n):
                    ri[j] = (ri[j] - f * rc[j]) % p
    return det % p


def solve_crt_primes(matrix, rhs, primes) -> list[mpq]:
    """Solve a square integer system via several primes + rational reconstruction.

    Raises SingularMatrixError if the system is singular mod every prime
    (which certifies singularity is plausible; callers resample), and
    ValueError when the prime set is too small to reconstruct.
    """
    sols = []
    used = []
    for p in primes:
        try:
            sols.append(solve_mod(matrix, rhs, p))
            used.append(p)
        except SingularMatrixError:
            continue
    if not sols:
        raise SingularMatrixError("system singular modulo all supplied primes")
    n = len(rhs)
    out = []
    for i in range(n):
        c, modulus = crt([s[i] for s in sols], used)
        out.append(rational_reconstruct(c, modulus))
    return out
