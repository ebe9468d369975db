"""Finite-dimensional representations and brute-force King stability.

A representation assigns a vector space ``k^{d_v}`` to each vertex and, to
each arrow ``a: s -> t``, a ``d_s x d_t`` matrix acting on row vectors:
``x in k^{d_s}`` goes to ``x @ M(a)``.  The path ``x1 ... xk`` (``xk``
first) therefore evaluates to ``M(xk) @ ... @ M(x1)``.

Stability follows King: ``M`` is theta-semistable if ``<theta, [M]> = 0``
and ``<theta, [N]> <= 0`` for every submodule ``N``; stable if moreover
``M != 0`` and the inequality is strict for proper nonzero ``N``.  Over a
field the pairing is ``sum_v theta(v) * d_v``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Mapping, Sequence

from ..errors import BudgetExceeded, FieldNotFinite, LengthMismatch, ShapeMismatch
from . import linalg as la
from .presentation import QuiverPresentation

FIELDS = {"Q": None, "F2": 2, "F3": 3}
DEFAULT_BUDGET = 2**24


@dataclass(frozen=True)
class Field:
    name: str

    def __post_init__(self):
        if self.name not in FIELDS:
            raise ValueError(f"unsupported field {self.name!r}; choose from {sorted(FIELDS)}")

    @property
    def p(self):
        return FIELDS[self.name]

    @property
    def finite(self) -> bool:
        return self.p is not None


@dataclass(frozen=True)
class ModuleRep:
    field: str
    dims: dict  # vertex -> dimension, in the presentation's vertex order
    arrows: dict  # arrow name -> matrix (tuple of row tuples)

    @property
    def p(self):
        return FIELDS[self.field]

    @property
    def dim_vector(self) -> tuple:
        return tuple(self.dims.values())

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    def is_zero(self) -> bool:
        return self.total_dim == 0


@dataclass(frozen=True)
class Submodule:
    dims: tuple
    basis: dict = field(compare=False)  # vertex -> basis rows of the subspace


@dataclass(frozen=True)
class StabilityVerdict:
    pairing: Fraction
    semistable: bool
    stable: bool
    witness: tuple | None = None


@dataclass(frozen=True)
class ModuleReport:
    valid: bool
    violated: tuple = ()


# -- construction -----------------------------------------------------------


def _shape_check(P: QuiverPresentation, M: ModuleRep) -> None:
    if list(M.dims) != list(P.vertices):
        raise ShapeMismatch(f"module vertices {list(M.dims)} != quiver vertices {list(P.vertices)}")
    if set(M.arrows) != set(P.arrow_names()):
        raise ShapeMismatch(f"module arrows {sorted(M.arrows)} != quiver arrows {sorted(P.arrow_names())}")
    for a in P.arrows:
        mat = M.arrows[a.name]
        rows, cols = M.dims[a.source], M.dims[a.target]
        if len(mat) != rows or any(len(r) != cols for r in mat):
            raise ShapeMismatch(f"arrow {a.name!r} needs a {rows}x{cols} matrix")


def make_module(P: QuiverPresentation, field_name: str, dims, arrows: Mapping) -> ModuleRep:
    """Build a representation, normalising entries into the field.

    ``dims`` is a mapping vertex -> dimension or a sequence in vertex order.
    """
    p = Field(field_name).p
    if not isinstance(dims, Mapping):
        dims = list(dims)
        if len(dims) != len(P.vertices):
            raise ShapeMismatch(f"expected {len(P.vertices)} dimensions, got {len(dims)}")
        dims = dict(zip(P.vertices, dims))
    dims = {str(k): int(v) for k, v in dims.items()}
    if set(dims) != set(P.vertices):
        raise ShapeMismatch(f"module vertices {sorted(dims)} != quiver vertices {sorted(P.vertices)}")
    dims = {v: dims[v] for v in P.vertices}
    mats = {}
    for a in P.arrows:
        rows, cols = dims[a.source], dims[a.target]
        raw = arrows.get(a.name)
        if raw is None:
            raise ShapeMismatch(f"no matrix for arrow {a.name!r}")
        if rows == 0:
            raw = ()
        mats[a.name] = tuple(tuple(la.norm(Fraction(x), p) for x in r) for r in raw)
        if len(mats[a.name]) != rows or any(len(r) != cols for r in mats[a.name]):
            raise ShapeMismatch(f"arrow {a.name!r} needs a {rows}x{cols} matrix")
    extra = set(arrows) - set(P.arrow_names())
    if extra:
        raise ShapeMismatch(f"matrices for unknown arrows {sorted(extra)}")
    return ModuleRep(field_name, dims, mats)


def zero_module(P: QuiverPresentation, field_name: str) -> ModuleRep:
    return make_module(P, field_name, [0] * len(P.vertices), {a.name: () for a in P.arrows})


def load_module(data: Mapping, P: QuiverPresentation) -> ModuleRep:
    """Read the JSON layout ``{"field": "F2", "dims": {...}, "arrows": {...}}``."""
    return make_module(P, data["field"], data["dims"], data.get("arrows", {}))


def _entry_json(x, p):
    if p is None:
        return f"{x.numerator}/{x.denominator}"
    return int(x)


def module_to_json(M: ModuleRep) -> dict:
    p = M.p
    return {
        "field": M.field,
        "dims": dict(M.dims),
        "arrows": {name: [[_entry_json(x, p) for x in row] for row in mat] for name, mat in M.arrows.items()},
    }


# -- relations ----------------------------------------------------------------


def evaluate_path(P: QuiverPresentation, M: ModuleRep, word: Sequence[str], start: str) -> tuple:
    """Matrix of the path ``word`` (last letter first), starting at ``start``."""
    p = M.p
    mat = la.identity(M.dims[start], p)
    for name in reversed(word):
        mat = la.matmul(mat, M.arrows[name], M.dims[P.arrow(name).target], p)
    return mat


def evaluate_relation(P: QuiverPresentation, M: ModuleRep, arrow: str) -> tuple:
    start, end = P.relation_endpoints(arrow)
    p = M.p
    total = la.zero(M.dims[start], M.dims[end], p)
    for word, coef in P.relations[arrow].items():
        total = la.add(total, la.scale(la.norm(coef, p), evaluate_path(P, M, word, start), p), p)
    return total


def _violated(P: QuiverPresentation, M: ModuleRep) -> list:
    out = []
    for name, poly in P.relations.items():
        if poly and any(any(row) for row in evaluate_relation(P, M, name)):
            out.append(name)
    return out


def check_module(P: QuiverPresentation, M: ModuleRep) -> ModuleReport:
    """Shape check (raises ShapeMismatch) plus the list of failing relations."""
    _shape_check(P, M)
    bad = _violated(P, M)
    return ModuleReport(not bad, tuple(bad))


# -- pairing and submodules -------------------------------------------------


def theta_pairing(theta, M: ModuleRep) -> Fraction:
    if isinstance(theta, Mapping):
        theta = [theta[v] for v in M.dims]
    theta = list(theta)
    if len(theta) != len(M.dims):
        raise LengthMismatch(f"theta has {len(theta)} entries, module has {len(M.dims)} vertices")
    return sum((Fraction(t) * d for t, d in zip(theta, M.dims.values())), Fraction(0))


def _pair_dims(theta: Sequence, dims: Sequence[int]) -> Fraction:
    return sum((Fraction(t) * d for t, d in zip(theta, dims)), Fraction(0))


def _need_finite(M: ModuleRep) -> int:
    if M.p is None:
        raise FieldNotFinite("exhaustive enumeration needs a finite field")
    return M.p


def submodules(P: QuiverPresentation, M: ModuleRep, budget: int = DEFAULT_BUDGET) -> list[Submodule]:
    """Every tuple of subspaces closed under all arrows, found by backtracking."""
    p = _need_finite(M)
    verts = list(P.vertices)
    spaces = [la.subspaces(M.dims[v], p) for v in verts]
    size = 1
    for s in spaces:
        size *= len(s)
    if size > budget:
        raise BudgetExceeded(size, budget)
    pos = {v: i for i, v in enumerate(verts)}
    # arrows checked once both endpoints have been assigned
    checks = [[] for _ in verts]
    for a in P.arrows:
        i, j = pos[a.source], pos[a.target]
        checks[max(i, j)].append((i, j, M.arrows[a.name], M.dims[a.target]))

    found = []
    choice = [None] * len(verts)

    def closed(k):
        for i, j, mat, cols in checks[k]:
            members = choice[j][1]
            for u in choice[i][0]:
                if la.vecmul(u, mat, cols, p) not in members:
                    return False
        return True

    def rec(k):
        if k == len(verts):
            found.append(
                Submodule(
                    tuple(len(c[0]) for c in choice),
                    {v: c[0] for v, c in zip(verts, choice)},
                )
            )
            return
        for s in spaces[k]:
            choice[k] = s
            if closed(k):
                rec(k + 1)

    rec(0)
    return found


def stability(theta, P: QuiverPresentation, M: ModuleRep, budget: int = DEFAULT_BUDGET) -> StabilityVerdict:
    pairing = theta_pairing(theta, M)
    if M.is_zero():
        return StabilityVerdict(pairing, True, False)
    if pairing != 0:
        return StabilityVerdict(pairing, False, False, M.dim_vector)
    theta = list(theta.values()) if isinstance(theta, Mapping) else list(theta)
    total = M.total_dim
    witness_zero = None
    for N in submodules(P, M, budget):
        n = sum(N.dims)
        if n == 0 or n == total:
            continue
        value = _pair_dims(theta, N.dims)
        if value > 0:
            return StabilityVerdict(pairing, False, False, N.dims)
        if value == 0 and witness_zero is None:
            witness_zero = N.dims
    if witness_zero is not None:
        return StabilityVerdict(pairing, True, False, witness_zero)
    return StabilityVerdict(pairing, True, True)


def is_semistable(theta, P, M, budget: int = DEFAULT_BUDGET) -> bool:
    return stability(theta, P, M, budget).semistable


def is_stable(theta, P, M, budget: int = DEFAULT_BUDGET) -> bool:
    return stability(theta, P, M, budget).stable


# -- enumeration --------------------------------------------------------------


def _all_matrices(rows: int, cols: int, p: int):
    for entries in product(range(p), repeat=rows * cols):
        yield tuple(tuple(entries[i * cols : (i + 1) * cols]) for i in range(rows))


def count_tuples(P: QuiverPresentation, dims: Sequence[int], p: int) -> int:
    d = dict(zip(P.vertices, dims))
    return p ** sum(d[a.source] * d[a.target] for a in P.arrows)


def enumerate_modules(P: QuiverPresentation, dims: Sequence[int], field_name: str, budget: int = DEFAULT_BUDGET):
    """Yield every representation of dimension ``dims`` satisfying the relations."""
    p = Field(field_name).p
    if p is None:
        raise FieldNotFinite("exhaustive enumeration needs a finite field")
    n = count_tuples(P, dims, p)
    if n > budget:
        raise BudgetExceeded(n, budget)
    d = dict(zip(P.vertices, dims))
    names = P.arrow_names()
    pools = [list(_all_matrices(d[a.source], d[a.target], p)) for a in P.arrows]
    for mats in product(*pools):
        M = ModuleRep(field_name, dict(d), dict(zip(names, mats)))
        if not _violated(P, M):
            yield M


def _dim_vectors(bound: Sequence[int]):
    return product(*(range(b + 1) for b in bound))


def enumerate_stables(
    P: QuiverPresentation,
    theta,
    bound: Sequence[int],
    field_name: str = "F2",
    budget: int = DEFAULT_BUDGET,
) -> list[ModuleRep]:
    """Theta-stable modules with dimension vector ``<= bound``, one per isomorphism class.

    Only dimension vectors pairing to zero with ``theta`` can carry stables,
    so the others are skipped.  The budget bounds the total number of matrix
    tuples examined.
    """
    p = Field(field_name).p
    if p is None:
        raise FieldNotFinite("exhaustive enumeration needs a finite field")
    theta = list(theta)
    if len(theta) != len(P.vertices) or len(bound) != len(P.vertices):
        raise LengthMismatch("theta and bound need one entry per vertex")
    candidates = [d for d in _dim_vectors(bound) if any(d) and _pair_dims(theta, d) == 0]
    total = sum(count_tuples(P, d, p) for d in candidates)
    if total > budget:
        raise BudgetExceeded(total, budget)
    reps: list[ModuleRep] = []
    for d in candidates:
        for M in enumerate_modules(P, d, field_name, budget):
            if not stability(theta, P, M, budget).stable:
                continue
            if not any(isomorphic(P, R, M, budget) for R in reps):
                reps.append(M)
    return reps


# -- homomorphisms ------------------------------------------------------------


def hom_basis(P: QuiverPresentation, M: ModuleRep, N: ModuleRep) -> list[dict]:
    """Basis of Hom(M, N); a map is a dict vertex -> ``d_v x e_v`` matrix."""
    p = M.p
    offsets, n = {}, 0
    for v in P.vertices:
        offsets[v] = n
        n += M.dims[v] * N.dims[v]

    def var(v, i, j):
        return offsets[v] + i * N.dims[v] + j

    rows = []
    for a in P.arrows:
        s, t = a.source, a.target
        A, B = M.arrows[a.name], N.arrows[a.name]
        for i in range(M.dims[s]):
            for j in range(N.dims[t]):
                row = [0] * n
                for k in range(M.dims[t]):
                    row[var(t, k, j)] += A[i][k]
                for l in range(N.dims[s]):
                    row[var(s, i, l)] -= B[l][j]
                rows.append(row)
    basis = la.nullspace(rows, n, p) if rows else [
        tuple(1 if k == m else 0 for k in range(n)) for m in range(n)
    ]
    return [_unflatten(P, M, N, vec, offsets) for vec in basis]


def _unflatten(P, M, N, vec, offsets) -> dict:
    out = {}
    for v in P.vertices:
        r, c = M.dims[v], N.dims[v]
        o = offsets[v]
        out[v] = tuple(tuple(la.norm(vec[o + i * c + j], M.p) for j in range(c)) for i in range(r))
    return out


def homomorphisms(P: QuiverPresentation, M: ModuleRep, N: ModuleRep, budget: int = DEFAULT_BUDGET) -> list[dict]:
    """Every homomorphism M -> N over a finite field."""
    p = _need_finite(M)
    basis = hom_basis(P, M, N)
    if p ** len(basis) > budget:
        raise BudgetExceeded(p ** len(basis), budget)
    out = []
    for coeffs in product(range(p), repeat=len(basis)):
        f = {}
        for v in P.vertices:
            mat = la.zero(M.dims[v], N.dims[v], p)
            for c, b in zip(coeffs, basis):
                if c:
                    mat = la.add(mat, la.scale(c, b[v], p), p)
            f[v] = mat
        out.append(f)
    return out


def is_homomorphism(P: QuiverPresentation, M: ModuleRep, N: ModuleRep, f: Mapping) -> bool:
    p = M.p
    for a in P.arrows:
        s, t = a.source, a.target
        left = la.matmul(M.arrows[a.name], f[t], N.dims[t], p)
        right = la.matmul(f[s], N.arrows[a.name], N.dims[t], p)
        if left != right:
            return False
    return True


def isomorphic(P: QuiverPresentation, M: ModuleRep, N: ModuleRep, budget: int = DEFAULT_BUDGET) -> bool:
    """Search Hom(M, N) exhaustively for an invertible map."""
    if M.dims != N.dims:
        return False
    p = _need_finite(M)
    for f in homomorphisms(P, M, N, budget):
        if all(la.rank(f[v], M.dims[v], p) == M.dims[v] for v in P.vertices):
            return True
    return False


def kernel(P: QuiverPresentation, M: ModuleRep, f: Mapping) -> ModuleRep:
    p = M.p
    basis = {}
    for v in P.vertices:
        cols = len(f[v][0]) if f[v] else 0
        basis[v] = la.left_nullspace(f[v], M.dims[v], cols, p) if M.dims[v] else []
    dims = {v: len(basis[v]) for v in P.vertices}
    mats = {}
    for a in P.arrows:
        s, t = a.source, a.target
        rows = []
        for b in basis[s]:
            image = la.vecmul(b, M.arrows[a.name], M.dims[t], p)
            rows.append(la.coordinates(image, basis[t], M.dims[t], p))
        mats[a.name] = tuple(rows)
    return ModuleRep(M.field, dims, mats)


def cokernel(P: QuiverPresentation, N: ModuleRep, f: Mapping) -> ModuleRep:
    p = N.p
    reduced, free = {}, {}
    for v in P.vertices:
        R, pivots = la.rref(f[v], N.dims[v], p)
        reduced[v] = (R, pivots)
        free[v] = [c for c in range(N.dims[v]) if c not in pivots]
    dims = {v: len(free[v]) for v in P.vertices}
    mats = {}
    for a in P.arrows:
        s, t = a.source, a.target
        R, pivots = reduced[t]
        rows = []
        for c in free[s]:
            image = N.arrows[a.name][c]
            rest = la.reduce_mod(image, R, pivots, p)
            rows.append(tuple(rest[j] for j in free[t]))
        mats[a.name] = tuple(rows)
    return ModuleRep(N.field, dims, mats)


def direct_sum(P: QuiverPresentation, M: ModuleRep, N: ModuleRep) -> ModuleRep:
    p = M.p
    z = 0 if p is not None else Fraction(0)
    dims = {v: M.dims[v] + N.dims[v] for v in P.vertices}
    mats = {}
    for a in P.arrows:
        s, t = a.source, a.target
        A, B = M.arrows[a.name], N.arrows[a.name]
        top = [tuple(r) + (z,) * N.dims[t] for r in A]
        bottom = [(z,) * M.dims[t] + tuple(r) for r in B]
        mats[a.name] = tuple(top + bottom)
    return ModuleRep(M.field, dims, mats)


def base_change(P: QuiverPresentation, M: ModuleRep, g: Mapping) -> ModuleRep:
    """The isomorphic module ``g_s^{-1} M(a) g_t`` for invertible ``g_v``."""
    p = M.p
    inverse = {v: la.inverse(g[v], M.dims[v], p) for v in P.vertices}
    mats = {}
    for a in P.arrows:
        s, t = a.source, a.target
        m = la.matmul(inverse[s], M.arrows[a.name], M.dims[t], p)
        mats[a.name] = la.matmul(m, g[t], M.dims[t], p)
    return ModuleRep(M.field, dict(M.dims), mats)


def simples(P: QuiverPresentation, field_name: str) -> list[ModuleRep]:
    out = []
    for v in P.vertices:
        dims = [1 if u == v else 0 for u in P.vertices]
        d = dict(zip(P.vertices, dims))
        mats = {a.name: tuple((0,) * d[a.target] for _ in range(d[a.source])) for a in P.arrows}
        out.append(make_module(P, field_name, dims, mats))
    return out


def dimension_vectors(modules: Iterable[ModuleRep]) -> list[tuple]:
    return sorted(M.dim_vector for M in modules)
