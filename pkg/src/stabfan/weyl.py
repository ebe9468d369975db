"""Exact action of the affine Weyl group on functions on the vertices.

A stability vector is a tuple of :class:`~fractions.Fraction`, one entry per
vertex in canonical order.  The simple reflection at ``v`` acts by
``(s_v theta)(u) = theta(u) - C[u][v] * theta(v)``, so the fundamental cone
is ``{theta >= 0}`` and dominance is a sign check.

Words act on the left and are applied right-to-left:
``apply_word([v1, ..., vk], theta) = s_v1(s_v2(... s_vk(theta)))``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import IterationLimit, LengthMismatch, NotInTitsCone
from .rootdata import DynkinDiagram, cartan_matrix, marks

ITERATION_LIMIT = 10**6

Theta = tuple  # tuple[Fraction, ...] in canonical vertex order


@dataclass(frozen=True, order=True)
class FaceKey:
    """Canonical label of a face ``sign * w.C_V``: ``point`` is ``w.mu_V``.

    ``mu_V`` is 0 on ``V`` and 1 elsewhere.  The stabiliser of ``C_V`` fixes
    ``mu_V``, so the point depends only on the coset ``w W_V``.
    """

    sign: int
    point: tuple

    @property
    def is_origin(self) -> bool:
        return not any(self.point)

    def signed_point(self) -> tuple:
        return tuple(self.sign * x for x in self.point)

    def __neg__(self):
        if self.is_origin:
            return self
        return FaceKey(-self.sign, self.point)


def as_theta(diagram: DynkinDiagram, values: Iterable) -> Theta:
    theta = tuple(Fraction(x) for x in values)
    if len(theta) != diagram.size:
        raise LengthMismatch(f"expected {diagram.size} coordinates, got {len(theta)}")
    return theta


@lru_cache(maxsize=None)
def _columns(diagram: DynkinDiagram):
    # nonzero entries (u, C[u][v]) of each Cartan column
    c = cartan_matrix(diagram)
    n = diagram.size
    return tuple(tuple((u, c[u][v]) for u in range(n) if c[u][v]) for v in range(n))


def _reflect_idx(cols, theta: list, v: int) -> None:
    tv = theta[v]
    if tv:
        for u, c in cols[v]:
            theta[u] -= c * tv


def reflect(diagram: DynkinDiagram, theta: Sequence, v) -> Theta:
    theta = list(as_theta(diagram, theta))
    _reflect_idx(_columns(diagram), theta, diagram.index(v))
    return tuple(theta)


def word_indices(diagram: DynkinDiagram, word: Iterable) -> tuple[int, ...]:
    return tuple(diagram.index(v) for v in word)


def word_names(diagram: DynkinDiagram, word: Iterable[int]) -> tuple[str, ...]:
    return tuple(diagram.vertices[i] for i in word)


def _apply_idx(cols, word: Sequence[int], theta: list) -> list:
    for v in reversed(word):
        _reflect_idx(cols, theta, v)
    return theta


def apply_word(diagram: DynkinDiagram, word: Iterable, theta: Sequence) -> Theta:
    idx = word_indices(diagram, word)
    return tuple(_apply_idx(_columns(diagram), idx, list(as_theta(diagram, theta))))


def delta_pairing(diagram: DynkinDiagram, theta: Sequence) -> Fraction:
    """Pairing with the imaginary root: ``sum_v marks(v) * theta(v)``."""
    theta = as_theta(diagram, theta)
    return sum((Fraction(n) * t for n, t in zip(marks(diagram), theta)), Fraction(0))


def _descent_idx(diagram, theta: list, perturb: list | None = None, limit=ITERATION_LIMIT):
    """Greedy descent on ``theta + eps * perturb`` for infinitesimal ``eps > 0``.

    Both lists are modified in place.  Returns the word in application order.
    """
    cols = _columns(diagram)
    n = len(theta)
    word = []
    while True:
        for v in range(n):
            t = theta[v]
            if t < 0 or (t == 0 and perturb is not None and perturb[v] < 0):
                break
        else:
            return word
        if len(word) >= limit:
            raise IterationLimit(f"descent exceeded {limit} reflections")
        _reflect_idx(cols, theta, v)
        if perturb is not None:
            _reflect_idx(cols, perturb, v)
        word.append(v)


def descent(diagram: DynkinDiagram, theta: Sequence, limit: int = ITERATION_LIMIT):
    """Move ``theta`` into the fundamental cone.

    Returns ``(word, theta0)`` with ``theta0 >= 0`` and
    ``apply_word(word, theta0) == theta``.  At each step the smallest vertex
    (canonical order) with a negative coordinate is reflected.
    """
    theta = list(as_theta(diagram, theta))
    if any(theta) and delta_pairing(diagram, theta) <= 0:
        raise NotInTitsCone("theta is not in the positive Tits cone")
    word = _descent_idx(diagram, theta, limit=limit)
    return word_names(diagram, word), tuple(theta)


def mu(diagram: DynkinDiagram, V: Iterable[int]) -> list:
    V = set(V)
    return [Fraction(0) if v in V else Fraction(1) for v in range(diagram.size)]


def _key_idx(diagram, sign: int, word: Sequence[int], V: Iterable[int]) -> FaceKey:
    point = tuple(_apply_idx(_columns(diagram), word, mu(diagram, V)))
    if not any(point):
        sign = 1
    return FaceKey(sign, point)


def face_key(diagram: DynkinDiagram, sign, word: Iterable, V: Iterable) -> FaceKey:
    sign = _parse_sign(sign)
    return _key_idx(diagram, sign, word_indices(diagram, word), [diagram.index(v) for v in V])


def _parse_sign(sign) -> int:
    if sign in ("+", 1):
        return 1
    if sign in ("-", -1):
        return -1
    raise ValueError(f"sign must be '+' or '-', got {sign!r}")
