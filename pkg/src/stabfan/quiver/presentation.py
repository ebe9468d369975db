"""Quivers with potential and their Jacobi relations.

Paths are written in composition order: in the word ``x1 x2 ... xk`` the
arrow ``xk`` is traversed first and ``x1`` last, so consecutive letters
satisfy ``source(x_i) == target(x_{i+1})``.  A potential term is a cycle,
which additionally needs ``target(x1) == source(xk)``.

File format (one declaration per line, ``#`` starts a comment)::

    quiver
    vertex <id>
    arrow <name> <source-id> <target-id>
    potential <coef> <arrow> <arrow> ... [; <coef> <arrow> ...]*
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple

from ..errors import (
    DeletesEverything,
    DuplicateArrowName,
    NonCyclicPotentialTerm,
    QuiverSyntaxError,
    UnknownArrow,
    UnknownVertex,
)

Polynomial = dict  # dict[tuple[str, ...], Fraction], zero coefficients dropped


class Arrow(NamedTuple):
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class QuiverPresentation:
    vertices: tuple
    arrows: tuple  # of Arrow
    potential: dict = field(hash=False)
    relations: dict = field(hash=False)  # arrow name -> cyclic derivative

    def arrow(self, name: str) -> Arrow:
        for a in self.arrows:
            if a.name == name:
                return a
        raise UnknownArrow(f"no arrow named {name!r}")

    def arrow_names(self) -> tuple:
        return tuple(a.name for a in self.arrows)

    def cyclic_derivative(self, name: str) -> Polynomial:
        self.arrow(name)
        return cyclic_derivative(self.potential, name)

    def relation_endpoints(self, name: str) -> tuple[str, str]:
        """(start, end) of the paths in the relation of an arrow."""
        a = self.arrow(name)
        return a.target, a.source


def _add(poly: dict, word: tuple, coef: Fraction) -> None:
    value = poly.get(word, Fraction(0)) + coef
    if value:
        poly[word] = value
    else:
        poly.pop(word, None)


def cyclic_derivative(potential: Mapping, arrow: str) -> Polynomial:
    """Sum over terms ``c * x a y`` of ``c * y x``, one summand per occurrence of ``a``."""
    out: Polynomial = {}
    for word, coef in potential.items():
        for i, letter in enumerate(word):
            if letter == arrow:
                _add(out, word[i + 1 :] + word[:i], Fraction(coef))
    return out


def _check_cycle(word: tuple, arrows: Mapping[str, Arrow]) -> None:
    for x in word:
        if x not in arrows:
            raise UnknownArrow(f"potential uses undeclared arrow {x!r}")
    for x, y in zip(word, word[1:]):
        if arrows[x].source != arrows[y].target:
            raise NonCyclicPotentialTerm(f"{' '.join(word)}: {x} cannot follow {y}")
    if arrows[word[0]].target != arrows[word[-1]].source:
        raise NonCyclicPotentialTerm(f"{' '.join(word)} does not close up")


def make_presentation(vertices: Iterable, arrows: Iterable, potential: Mapping | Iterable = ()) -> QuiverPresentation:
    vertices = tuple(str(v) for v in vertices)
    if len(set(vertices)) != len(vertices):
        raise ValueError("duplicate vertex")
    by_name: dict[str, Arrow] = {}
    for a in arrows:
        a = Arrow(*(str(x) for x in a))
        if a.name in by_name:
            raise DuplicateArrowName(f"arrow {a.name!r} declared twice")
        for v in (a.source, a.target):
            if v not in vertices:
                raise UnknownVertex(f"arrow {a.name!r} uses undeclared vertex {v!r}")
        by_name[a.name] = a
    items = potential.items() if isinstance(potential, Mapping) else potential
    pot: dict = {}
    for word, coef in items:
        word = tuple(word)
        if not word:
            raise NonCyclicPotentialTerm("empty potential term")
        _check_cycle(word, by_name)
        _add(pot, word, Fraction(coef))
    relations = {name: cyclic_derivative(pot, name) for name in by_name}
    return QuiverPresentation(vertices, tuple(by_name.values()), pot, relations)


def _tokens(line: str):
    """(token, column) pairs, columns 1-based."""
    out, i = [], 0
    while i < len(line):
        if line[i].isspace() or line[i] == ";":
            if line[i] == ";":
                out.append((";", i + 1))
            i += 1
            continue
        j = i
        while j < len(line) and not line[j].isspace() and line[j] != ";":
            j += 1
        out.append((line[i:j], i + 1))
        i = j
    return out


def parse_quiver(text: str) -> QuiverPresentation:
    vertices: list[str] = []
    arrows: list[tuple] = []
    arrow_lines: dict[str, int] = {}
    terms: list[tuple[tuple, Fraction, int, int]] = []
    seen_header = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        toks = _tokens(line)
        if not toks:
            continue
        head, col = toks[0]
        if not seen_header:
            if head != "quiver" or len(toks) != 1:
                raise QuiverSyntaxError("file must start with 'quiver'", lineno, col)
            seen_header = True
            continue
        args = toks[1:]
        if head == "vertex":
            if len(args) != 1:
                raise QuiverSyntaxError("expected 'vertex <id>'", lineno, col)
            v, vcol = args[0]
            if v in vertices:
                raise QuiverSyntaxError(f"vertex {v!r} declared twice", lineno, vcol)
            vertices.append(v)
        elif head == "arrow":
            if len(args) != 3 or any(t == ";" for t, _ in args):
                raise QuiverSyntaxError("expected 'arrow <name> <source> <target>'", lineno, col)
            name = args[0][0]
            if name in arrow_lines:
                raise DuplicateArrowName(f"line {lineno}: arrow {name!r} already declared on line {arrow_lines[name]}")
            arrow_lines[name] = lineno
            arrows.append((name, args[1][0], args[2][0]))
        elif head == "potential":
            groups: list[list] = [[]]
            for tok in args:
                if tok[0] == ";":
                    groups.append([])
                else:
                    groups[-1].append(tok)
            for group in groups:
                if len(group) < 2:
                    where = group[0][1] if group else col
                    raise QuiverSyntaxError("expected '<coef> <arrow> ...'", lineno, where)
                (coef_text, ccol), *letters = group
                try:
                    coef = Fraction(coef_text)
                except (ValueError, ZeroDivisionError):
                    raise QuiverSyntaxError(f"bad coefficient {coef_text!r}", lineno, ccol) from None
                terms.append((tuple(t for t, _ in letters), coef, lineno, ccol))
        else:
            raise QuiverSyntaxError(f"unknown declaration {head!r}", lineno, col)
    if not seen_header:
        raise QuiverSyntaxError("empty quiver file", 1, 1)
    for name, src, tgt in arrows:
        for v in (src, tgt):
            if v not in vertices:
                raise UnknownVertex(f"line {arrow_lines[name]}: arrow {name!r} uses undeclared vertex {v!r}")
    return make_presentation(vertices, arrows, [(w, c) for w, c, _, _ in terms])


def delete_vertices(P: QuiverPresentation, S: Iterable) -> QuiverPresentation:
    """Remove ``S``, every incident arrow, and every potential term through ``S``."""
    S = {str(v) for v in S}
    for v in S:
        if v not in P.vertices:
            raise UnknownVertex(f"{v!r} is not a vertex")
    if S and S >= set(P.vertices):
        raise DeletesEverything("cannot delete every vertex")
    keep = [a for a in P.arrows if a.source not in S and a.target not in S]
    names = {a.name for a in keep}
    pot = {w: c for w, c in P.potential.items() if all(x in names for x in w)}
    return make_presentation([v for v in P.vertices if v not in S], keep, pot)


def _format_coef(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_polynomial(poly: Mapping) -> str:
    if not poly:
        return "0"
    parts = []
    for word, c in sorted(poly.items()):
        mono = " ".join(word) if word else "e"
        mag = abs(c)
        body = mono if mag == 1 else f"{_format_coef(mag)} {mono}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts)


def format_quiver(P: QuiverPresentation) -> str:
    lines = ["quiver"]
    lines += [f"vertex {v}" for v in P.vertices]
    lines += [f"arrow {a.name} {a.source} {a.target}" for a in P.arrows]
    if P.potential:
        terms = [f"{_format_coef(c)} {' '.join(w)}" for w, c in P.potential.items()]
        lines.append("potential " + " ; ".join(terms))
    return "\n".join(lines) + "\n"

