"""The intersection arrangement of a pair (diagram, J) as a polyhedral fan.

Faces are the cones ``+-w.C_V`` of the Tits cone that lie inside the
coordinate subspace ``R^J`` (functions vanishing off ``J``).  A face of
codimension ``k`` inside ``R^J`` carries exactly ``k`` stable modules, so
classifying a stability vector amounts to locating its face.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Iterable, Sequence

import networkx as nx
import sympy

from .errors import (
    InternalError,
    LengthMismatch,
    MixedSignNormal,
    NotAChamber,
    NotAWall,
    VertexInV,
)
from .rootdata import DynkinDiagram, validate_subset
from .weyl import (
    FaceKey,
    _apply_idx,
    _columns,
    _descent_idx,
    _key_idx,
    delta_pairing,
    word_indices,
    word_names,
)

POSITIVE = "positive_cone"
NEGATIVE = "negative_cone"
H_INFINITY = "h_infinity"
ORIGIN = "origin"


@dataclass(frozen=True)
class FaceDescriptor:
    """A face ``sign * w.C_V`` of the arrangement.

    Equality and hashing go through ``key`` only; ``word`` is one witness of
    the coset (the descent word, which has minimal length).
    """

    key: FaceKey
    V: tuple = field(compare=False)
    word: tuple = field(compare=False)
    dim: int = field(compare=False)
    codim: int = field(compare=False)

    @property
    def sign(self) -> int:
        return self.key.sign

    @property
    def n_stables(self) -> int:
        return self.codim

    @property
    def length(self) -> int:
        return len(self.word)

    def sort_key(self):
        return (-self.sign, len(self.word), self.codim, self.key.point)

    def __neg__(self):
        return FaceDescriptor(-self.key, self.V, self.word, self.dim, self.codim)


@dataclass(frozen=True)
class Classification:
    region: str
    delta_pairing: Fraction
    face: FaceDescriptor | None = None

    @property
    def n_stables(self):
        return None if self.face is None else self.face.n_stables


@dataclass(frozen=True)
class FanSlice:
    J: tuple
    radius: int
    chambers: tuple
    faces: tuple
    adjacency: tuple  # (chamber key, crossed vertex, chamber key), directed
    frontier: frozenset  # wall keys whose far side lies beyond the radius
    depth: dict = field(compare=False, repr=False)  # chamber key -> wall crossings from the fundamental chamber

    def walls(self):
        return [f for f in self.faces if f.codim == 1]


def primitive(vec: Iterable) -> tuple[int, ...]:
    """Scale a rational vector to the primitive integer vector on its ray."""
    vec = [Fraction(x) for x in vec]
    den = 1
    for x in vec:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in vec]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


class Arrangement:
    """The fan ``X`` for a diagram and a vertex subset ``J``.

    Vectors "over J" are ordered like ``self.J`` (canonical vertex order).
    """

    def __init__(self, diagram: DynkinDiagram, J: Iterable):
        self.diagram = diagram
        self.J = validate_subset(diagram, J)
        self.j_idx = tuple(diagram.index(v) for v in self.J)
        self.off_j = tuple(i for i in range(diagram.size) if i not in self.j_idx)
        self._faces: dict = {}

    def __repr__(self):
        return f"Arrangement({self.diagram.name}, J={list(self.J)})"

    # -- coordinates --------------------------------------------------------

    def embed_theta(self, theta_J: Sequence) -> tuple:
        if len(theta_J) != len(self.J):
            raise LengthMismatch(f"expected {len(self.J)} coordinates over J, got {len(theta_J)}")
        theta = [Fraction(0)] * self.diagram.size
        for i, x in zip(self.j_idx, theta_J):
            theta[i] = Fraction(x)
        return tuple(theta)

    def restrict(self, theta: Sequence) -> tuple:
        return tuple(theta[i] for i in self.j_idx)

    def delta_pairing(self, theta_J: Sequence) -> Fraction:
        return delta_pairing(self.diagram, self.embed_theta(theta_J))

    def delta_restriction(self) -> tuple[int, ...]:
        """Normal of the hyperplane ``H_infinity`` inside ``R^J``."""
        from .rootdata import marks

        m = marks(self.diagram)
        return tuple(m[i] for i in self.j_idx)

    # -- faces --------------------------------------------------------------

    def _face_at(self, point: Sequence, sign: int) -> FaceDescriptor:
        """The face containing the positive-cone point ``point``, with ``sign``."""
        theta = [Fraction(x) for x in point]
        word = _descent_idx(self.diagram, theta)
        V = frozenset(i for i, t in enumerate(theta) if t == 0)
        return self._make_face(sign, tuple(word), V)

    def _make_face(self, sign: int, word: tuple, V: frozenset) -> FaceDescriptor:
        key = _key_idx(self.diagram, sign, word, V)
        if any(key.point[i] for i in self.off_j):
            raise InternalError(
                f"face {word_names(self.diagram, word)}.C_{sorted(V)} does not lie in R^J "
                f"for {self!r}; the arrangement claim failed here"
            )
        n = self.diagram.size
        return FaceDescriptor(
            key=key,
            V=tuple(self.diagram.vertices[i] for i in sorted(V)),
            word=word_names(self.diagram, word),
            dim=n - len(V),
            codim=len(V) - n + len(self.J),
        )

    def _V_idx(self, face: FaceDescriptor) -> frozenset:
        return frozenset(self.diagram.index(v) for v in face.V)

    def face_of_key(self, key: FaceKey) -> FaceDescriptor:
        """Canonical descriptor of the face with the given key."""
        face = self._faces.get(key)
        if face is None:
            face = self._face_at(key.point, key.sign)
            if face.key != key:
                raise InternalError(f"key {key} is not a canonical face point")
            self._faces[key] = face
        return face

    def classify(self, theta_J: Sequence) -> Classification:
        theta = self.embed_theta(theta_J)
        delta = delta_pairing(self.diagram, theta)
        if not any(theta):
            return Classification(ORIGIN, delta, self._face_at(theta, 1))
        if delta == 0:
            return Classification(H_INFINITY, delta)
        if delta < 0:
            return Classification(NEGATIVE, delta, self._face_at([-x for x in theta], -1))
        return Classification(POSITIVE, delta, self._face_at(theta, 1))

    def fundamental_chamber(self) -> FaceDescriptor:
        return self._make_face(1, (), frozenset(self.off_j))

    def face_rays_point(self, face: FaceDescriptor) -> list[tuple]:
        """Rays ``sign * w.1_v`` (``v`` not in ``V``) of a face, as full vectors."""
        V = self._V_idx(face)
        word = word_indices(self.diagram, face.word)
        cols = _columns(self.diagram)
        rays = []
        for v in range(self.diagram.size):
            if v in V:
                continue
            unit = [Fraction(0)] * self.diagram.size
            unit[v] = Fraction(1)
            rays.append(tuple(face.sign * x for x in _apply_idx(cols, word, unit)))
        return rays

    def face_rays(self, face: FaceDescriptor) -> list[tuple[int, ...]]:
        return [primitive(self.restrict(r)) for r in self.face_rays_point(face)]

    def closure(self, face: FaceDescriptor) -> list[FaceDescriptor]:
        """All faces in the closure of ``face`` (itself included)."""
        V = self._V_idx(face)
        free = [v for v in range(self.diagram.size) if v not in V]
        word = word_indices(self.diagram, face.word)
        out = []
        for k in range(len(free) + 1):
            for extra in combinations(free, k):
                key = _key_idx(self.diagram, face.sign, word, V | frozenset(extra))
                out.append(self.face_of_key(key))
        return out

    def wall_key(self, chamber: FaceDescriptor, v) -> FaceKey:
        V = self._V_idx(chamber) | {self.diagram.index(v)}
        return _key_idx(self.diagram, chamber.sign, word_indices(self.diagram, chamber.word), V)

    # -- chambers and walls -------------------------------------------------

    def wall_cross(self, chamber: FaceDescriptor, v) -> FaceDescriptor:
        """The other chamber whose closure contains the wall of ``chamber`` at ``v``.

        The wall is ``w.C_{V + v}``.  Its neighbour is located by running the
        descent on ``p + eps (p - q)`` for infinitesimal ``eps``, with ``p`` the
        wall point and ``q`` the chamber point.  Appending ``v`` to the word
        only works when ``J`` is everything.
        """
        if chamber.codim != 0:
            raise NotAChamber(f"face of codimension {chamber.codim} is not a chamber")
        vi = self.diagram.index(v)
        V = self._V_idx(chamber)
        if vi in V:
            raise VertexInV(f"vertex {self.diagram.vertices[vi]!r} lies in V")
        wall = self.wall_key(chamber, vi)
        if wall.is_origin:
            return -chamber
        p = list(wall.point)
        q = chamber.key.point
        perturb = [a - b for a, b in zip(p, q)]
        theta = list(p)
        word = _descent_idx(self.diagram, theta, perturb)
        V_new = frozenset(i for i in range(self.diagram.size) if theta[i] == 0 and perturb[i] == 0)
        key = _key_idx(self.diagram, chamber.sign, tuple(word), V_new)
        face = self.face_of_key(key)
        if face.codim != 0 or face.key == chamber.key:
            raise InternalError(f"wall crossing from {chamber.key} at {v!r} did not reach a new chamber")
        return face

    def chamber_rays(self, chamber: FaceDescriptor) -> list[tuple[int, ...]]:
        if chamber.codim != 0:
            raise NotAChamber(f"face of codimension {chamber.codim} is not a chamber")
        rays = []
        for r in self.face_rays_point(chamber):
            if any(r[i] for i in self.off_j):
                raise InternalError(f"ray {r} of chamber {chamber.key} leaves R^J")
            rays.append(primitive(self.restrict(r)))
        return rays

    def wall_normal(self, wall: FaceDescriptor) -> tuple[int, ...]:
        """Primitive nonnegative functional on ``R^J`` vanishing on the wall."""
        if wall.codim != 1:
            raise NotAWall(f"face of codimension {wall.codim} is not a wall")
        rays = self.face_rays(wall)
        if rays:
            kernel = sympy.Matrix(rays).nullspace()
        else:
            kernel = [sympy.Matrix([1])]
        if len(kernel) != 1:
            raise InternalError(f"wall {wall.key} does not span a hyperplane")
        normal = primitive(Fraction(int(sympy.fraction(x)[0]), int(sympy.fraction(x)[1])) for x in kernel[0])
        if all(x <= 0 for x in normal):
            normal = tuple(-x for x in normal)
        if any(x < 0 for x in normal):
            raise MixedSignNormal(f"wall {wall.key} has normal {normal} of mixed sign")
        return normal

    def generic_point(self, face: FaceDescriptor) -> tuple:
        """A point of the relative interior of ``face``, over ``J``."""
        rays = self.face_rays_point(face)
        point = [Fraction(0)] * self.diagram.size
        for k, r in enumerate(rays):
            point = [a + (k + 1) * b for a, b in zip(point, r)]
        return self.restrict(point)

    # -- enumeration --------------------------------------------------------

    def enumerate_faces(self, radius: int) -> FanSlice:
        """Chambers within ``radius`` wall crossings of the fundamental one, their faces, and negatives.

        When ``J`` is every vertex the crossing distance equals the length of
        the chamber's Weyl group element.  Walls whose far chamber lies beyond
        the radius go into ``frontier``.
        """
        if radius < 0:
            raise ValueError("radius must be nonnegative")
        start = self.fundamental_chamber()
        chambers = {start.key: start}
        depth = {start.key: 0}
        edges = set()
        frontier = set()
        queue = deque([start])
        while queue:
            ch = queue.popleft()
            d = depth[ch.key]
            V = self._V_idx(ch)
            for v in range(self.diagram.size):
                if v in V:
                    continue
                name = self.diagram.vertices[v]
                nb = self.wall_cross(ch, v)
                if nb.sign != ch.sign:
                    edges.add((ch.key, name, nb.key))
                    continue
                if nb.key not in chambers:
                    if d == radius:
                        frontier.add(self.wall_key(ch, v))
                        continue
                    chambers[nb.key] = nb
                    depth[nb.key] = d + 1
                    queue.append(nb)
                edges.add((ch.key, name, nb.key))

        faces = {}
        for ch in chambers.values():
            for f in self.closure(ch):
                faces[f.key] = f
        for f in list(faces.values()):
            faces[(-f).key] = -f
        for ch in list(chambers.values()):
            chambers[(-ch).key] = -ch
            depth[(-ch).key] = depth[ch.key]
        for a, v, b in list(edges):
            edges.add((-a, v, -b))
        frontier |= {-k for k in frontier}

        def order(f):
            return f.sort_key()

        return FanSlice(
            J=self.J,
            radius=radius,
            chambers=tuple(sorted(chambers.values(), key=order)),
            faces=tuple(sorted(faces.values(), key=order)),
            adjacency=tuple(sorted(edges)),
            frontier=frozenset(frontier),
            depth=depth,
        )

    def mutation_graph(self, radius: int) -> nx.Graph:
        """Chambers of the slice joined across shared walls; edges carry the wall normal."""
        fan = self.enumerate_faces(radius)
        g = nx.Graph()
        for ch in fan.chambers:
            g.add_node(ch.key, face=ch)
        for a, v, b in fan.adjacency:
            if g.has_edge(a, b):
                continue
            chamber = g.nodes[a]["face"]
            wall = self.face_of_key(self.wall_key(chamber, v))
            g.add_edge(a, b, wall=wall.key, normal=self.wall_normal(wall))
        return g

    def wall_lines(self, fan: FanSlice) -> set[tuple[int, ...]]:
        """Distinct lines spanned by the walls of a rank-2 slice.

        Each line is named by its primitive direction, normalised so the
        first nonzero entry is positive.
        """
        lines = set()
        for wall in fan.walls():
            for ray in self.face_rays(wall):
                lines.add(line_direction(ray))
        return lines


def line_direction(vec: Sequence) -> tuple[int, ...]:
    d = primitive(vec)
    for x in d:
        if x:
            return d if x > 0 else tuple(-y for y in d)
    return d
