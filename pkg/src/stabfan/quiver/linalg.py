"""Small exact linear algebra over F_p (``p`` an int) or Q (``p is None``).

Matrices are tuples of row tuples; the column count is passed explicitly
wherever a matrix may have no rows.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product


def norm(x, p):
    if p is None:
        return Fraction(x)
    if isinstance(x, Fraction):
        if x.denominator % p == 0:
            raise ZeroDivisionError(f"{x} has no image in F_{p}")
        return x.numerator * pow(x.denominator, -1, p) % p
    return int(x) % p


def inv(x, p):
    return 1 / Fraction(x) if p is None else pow(x, -1, p)


def zero(rows: int, cols: int, p) -> tuple:
    z = Fraction(0) if p is None else 0
    return tuple((z,) * cols for _ in range(rows))


def identity(n: int, p) -> tuple:
    one, z = (Fraction(1), Fraction(0)) if p is None else (1, 0)
    return tuple(tuple(one if i == j else z for j in range(n)) for i in range(n))


def matmul(A, B, cols: int, p) -> tuple:
    out = []
    for row in A:
        acc = [0] * cols
        for a, brow in zip(row, B):
            if a:
                for j in range(cols):
                    acc[j] += a * brow[j]
        out.append(tuple(norm(x, p) for x in acc))
    return tuple(out)


def vecmul(u, B, cols: int, p) -> tuple:
    return matmul((u,), B, cols, p)[0]


def add(A, B, p) -> tuple:
    return tuple(tuple(norm(x + y, p) for x, y in zip(r, s)) for r, s in zip(A, B))


def scale(c, A, p) -> tuple:
    return tuple(tuple(norm(c * x, p) for x in r) for r in A)


def transpose(A, cols: int) -> tuple:
    return tuple(tuple(row[j] for row in A) for j in range(cols))


def rref(rows, cols: int, p):
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = [[norm(x, p) for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(cols):
        pr = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        iv = inv(m[r][c], p)
        m[r] = [norm(x * iv, p) for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [norm(x - f * y, p) for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return tuple(tuple(row) for row in m[:r]), tuple(pivots)


def rank(rows, cols: int, p) -> int:
    return len(rref(rows, cols, p)[1])


def nullspace(rows, cols: int, p) -> list[tuple]:
    """Basis of ``{x : A x = 0}`` for ``A`` given by its rows."""
    R, pivots = rref(rows, cols, p)
    one = Fraction(1) if p is None else 1
    basis = []
    for f in (c for c in range(cols) if c not in pivots):
        x = [Fraction(0) if p is None else 0] * cols
        x[f] = one
        for row, pc in zip(R, pivots):
            x[pc] = norm(-row[f], p)
        basis.append(tuple(x))
    return basis


def left_nullspace(A, rows: int, cols: int, p) -> list[tuple]:
    """Basis of ``{x : x A = 0}``."""
    return nullspace(transpose(A, cols), rows, p)


def coordinates(y, basis, cols: int, p) -> tuple:
    """The unique ``c`` with ``c . basis == y``; raises if ``y`` is outside the span."""
    k = len(basis)
    # solve basis^T c = y
    aug = [tuple(basis[i][j] for i in range(k)) + (y[j],) for j in range(cols)]
    R, pivots = rref(aug, k + 1, p)
    if k in pivots:
        raise ValueError("vector not in span")
    c = [Fraction(0) if p is None else 0] * k
    for row, pc in zip(R, pivots):
        c[pc] = row[k]
    return tuple(c)


def reduce_mod(y, R, pivots, p) -> tuple:
    """Reduce ``y`` modulo the row space given in RREF."""
    y = [norm(x, p) for x in y]
    for row, pc in zip(R, pivots):
        f = y[pc]
        if f:
            y = [norm(a - f * b, p) for a, b in zip(y, row)]
    return tuple(y)


@lru_cache(maxsize=None)
def subspaces(d: int, p: int) -> tuple:
    """Every subspace of F_p^d as (basis rows, frozenset of members), by dimension."""
    # each subspace has exactly one RREF basis
    out = []
    for k in range(d + 1):
        for basis in _rref_matrices(d, k, p):
            out.append((basis, frozenset(_span(basis, d, p))))
    return tuple(out)


def _span(basis, d: int, p: int):
    if not basis:
        return [(0,) * d]
    out = []
    for coeffs in product(range(p), repeat=len(basis)):
        out.append(tuple(sum(c * b[j] for c, b in zip(coeffs, basis)) % p for j in range(d)))
    return out


def _rref_matrices(d: int, k: int, p: int):
    """All k x d matrices in reduced row echelon form of rank k."""
    for pivots in combinations(range(d), k):
        free = [(i, j) for i in range(k) for j in range(d) if j > pivots[i] and j not in pivots]
        for values in product(range(p), repeat=len(free)):
            m = [[0] * d for _ in range(k)]
            for i, pc in enumerate(pivots):
                m[i][pc] = 1
            for (i, j), x in zip(free, values):
                m[i][j] = x
            yield tuple(tuple(r) for r in m)


def inverse(A, n: int, p) -> tuple:
    ident = identity(n, p)
    R, pivots = rref([tuple(r) + e for r, e in zip(A, ident)], 2 * n, p)
    if pivots[:n] != tuple(range(n)) or len(pivots) < n:
        raise ZeroDivisionError("matrix is singular")
    return tuple(tuple(row[n:]) for row in R)
