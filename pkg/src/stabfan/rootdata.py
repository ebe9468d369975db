"""Extended ADE Dynkin diagrams, their Cartan matrices and marks.

Vertex naming is fixed: ``"e"`` is the extended vertex and always sits at
index 0; the remaining vertices are ``"0"`` .. ``"n-1"`` in the order below.

* ``A1~``: ``e = 0`` joined by a double edge.
* ``An~`` (n >= 2): the cycle ``e - 0 - 1 - ... - (n-1) - e``.
* ``Dn~``: ``e`` and ``0`` are the two leaves at the near end of the chain,
  ``1`` and ``2`` the two leaves at the far end, and ``3 .. n-1`` is the
  chain read from the near end.  For ``D4~`` the chain is the single
  centre vertex ``3``.
* ``E6~``: ``e - 0 - 1``, with ``1`` the branch vertex carrying the arms
  ``1 - 2 - 3`` and ``1 - 4 - 5``.
* ``E7~``: the chain ``e - 0 - 1 - 2 - 3 - 4 - 5`` with ``6`` attached to ``2``.
* ``E8~``: the chain ``e - 0 - 1 - 2 - 3 - 4 - 5 - 6`` with ``7`` attached to ``4``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from math import gcd

import sympy

from .errors import EmptySubset, InternalError, UnknownVertex, UnsupportedType

EXTENDED = "e"

_DIAGRAM_RE = re.compile(r"^\s*([ADE])(\d+)(~?)\s*$")


@dataclass(frozen=True)
class DynkinDiagram:
    family: str
    rank: int
    vertices: tuple[str, ...]
    edges: tuple[tuple[int, int], ...]  # multiset of index pairs (i < j)

    @property
    def size(self) -> int:
        return len(self.vertices)

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}~"

    def index(self, vertex) -> int:
        """Position of a vertex given by name (or by an already valid index)."""
        if isinstance(vertex, int) and not isinstance(vertex, bool):
            if 0 <= vertex < self.size:
                return vertex
            raise UnknownVertex(f"vertex index {vertex} out of range for {self.name}")
        try:
            return self.vertices.index(str(vertex))
        except ValueError:
            raise UnknownVertex(f"{vertex!r} is not a vertex of {self.name}") from None

    def __repr__(self):
        return f"DynkinDiagram({self.name})"


def _edges_for(family: str, n: int) -> list[tuple[int, int]]:
    # indices: 0 is "e", index k+1 is vertex "k"
    if family == "A":
        if n == 1:
            return [(0, 1), (0, 1)]
        return [(i, i + 1) for i in range(n)] + [(0, n)]
    if family == "D":
        chain = list(range(4, n + 1))  # vertices "3" .. "n-1"
        edges = [(0, chain[0]), (1, chain[0]), (2, chain[-1]), (3, chain[-1])]
        edges += list(zip(chain, chain[1:]))
        return edges
    if n == 6:
        return [(0, 1), (1, 2), (2, 3), (3, 4), (2, 5), (5, 6)]
    if n == 7:
        return [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (3, 7)]
    return [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (5, 8)]


def build_diagram(family: str, rank: int, extended: bool = True) -> DynkinDiagram:
    family = str(family).upper()
    if not extended:
        raise UnsupportedType("only extended Dynkin diagrams are supported")
    ok = (
        (family == "A" and rank >= 1)
        or (family == "D" and rank >= 4)
        or (family == "E" and rank in (6, 7, 8))
    )
    if not ok:
        raise UnsupportedType(f"no extended diagram of type {family}{rank}")
    vertices = (EXTENDED,) + tuple(str(i) for i in range(rank))
    edges = tuple(sorted(tuple(sorted(e)) for e in _edges_for(family, rank)))
    return DynkinDiagram(family, rank, vertices, edges)


def parse_diagram(text: str) -> DynkinDiagram:
    """Parse ``"D4~"``-style names; the trailing ``~`` is mandatory."""
    m = _DIAGRAM_RE.match(text)
    if not m:
        raise UnsupportedType(f"cannot parse diagram {text!r}; expected e.g. 'D4~'")
    family, rank, tilde = m.groups()
    return build_diagram(family, int(rank), extended=bool(tilde))


@lru_cache(maxsize=None)
def cartan_matrix(diagram: DynkinDiagram) -> tuple[tuple[int, ...], ...]:
    n = diagram.size
    c = [[0] * n for _ in range(n)]
    for i in range(n):
        c[i][i] = 2
    for i, j in diagram.edges:
        c[i][j] -= 1
        c[j][i] -= 1
    return tuple(tuple(row) for row in c)


@lru_cache(maxsize=None)
def marks(diagram: DynkinDiagram) -> tuple[int, ...]:
    """Primitive positive generator of the kernel of the Cartan matrix."""
    kernel = sympy.Matrix(cartan_matrix(diagram)).nullspace()
    if len(kernel) != 1:
        raise InternalError(f"Cartan kernel of {diagram.name} has dimension {len(kernel)}")
    vec = kernel[0]
    denom = sympy.ilcm(*[sympy.fraction(x)[1] for x in vec])
    ints = [int(x * denom) for x in vec]
    g = 0
    for x in ints:
        g = gcd(g, x)
    ints = [x // g for x in ints]
    if ints[0] < 0:
        ints = [-x for x in ints]
    if min(ints) < 1:
        raise InternalError(f"kernel vector of {diagram.name} is not positive: {ints}")
    return tuple(ints)


def validate_subset(diagram: DynkinDiagram, J) -> tuple[str, ...]:
    """Return ``J`` as a tuple of vertex names in canonical order."""
    J = list(J)
    if not J:
        raise EmptySubset("vertex subset J must be nonempty")
    idx = sorted({diagram.index(v) for v in J})
    return tuple(diagram.vertices[i] for i in idx)
