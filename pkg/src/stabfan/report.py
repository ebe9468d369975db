"""JSON reports and the fan-versus-oracle cross-check.

Rationals are always written as ``"p/q"`` strings (``q > 0``, reduced), and
keys are emitted in a fixed order, so equal inputs give equal bytes.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import networkx as nx

from .errors import BudgetExceeded, LengthMismatch
from .fan import H_INFINITY, Arrangement, Classification, FaceDescriptor, FanSlice
from .quiver.modules import DEFAULT_BUDGET, enumerate_stables, module_to_json
from .quiver.presentation import QuiverPresentation

MATCH = "match"
MISMATCH = "mismatch"
SKIPPED = "oracle-skipped"


def rational(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def rationals(xs) -> list[str]:
    return [rational(x) for x in xs]


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _sign(s: int) -> str:
    return "+" if s > 0 else "-"


def face_json(arr: Arrangement, face: FaceDescriptor) -> dict:
    out = {
        "sign": _sign(face.sign),
        "V": list(face.V),
        "word": list(face.word),
        "dim": face.dim,
        "codim": face.codim,
        "n_stables": face.n_stables,
        "face_key": rationals(face.key.signed_point()),
    }
    if face.codim == 0:
        out["chamber_rays"] = [list(r) for r in arr.chamber_rays(face)]
    elif face.codim == 1:
        out["wall_normal"] = list(arr.wall_normal(face))
    return out


def classification_json(arr: Arrangement, cls: Classification) -> dict:
    face = cls.face
    out = {
        "region": cls.region,
        "V": None if face is None else list(face.V),
        "word": None if face is None else list(face.word),
        "codim": None if face is None else face.codim,
        "n_stables": None if face is None else face.n_stables,
        "face_key": None if face is None else rationals(face.key.signed_point()),
        "delta_pairing": rational(cls.delta_pairing),
    }
    if face is not None and face.codim == 0:
        out["chamber_rays"] = [list(r) for r in arr.chamber_rays(face)]
    if cls.region == H_INFINITY:
        out["h_infinity_normal"] = list(arr.delta_restriction())
    return out


def slice_json(arr: Arrangement, fan: FanSlice) -> dict:
    def key(k):
        return rationals(k.signed_point())

    chambers = []
    for ch in fan.chambers:
        item = face_json(arr, ch)
        item["depth"] = fan.depth[ch.key]
        chambers.append(item)
    return {
        "diagram": arr.diagram.name,
        "J": list(arr.J),
        "radius": fan.radius,
        "n_chambers": len(fan.chambers),
        "n_faces": len(fan.faces),
        "chambers": chambers,
        "faces": [face_json(arr, f) for f in fan.faces],
        "adjacency": [{"from": key(a), "vertex": v, "to": key(b)} for a, v, b in fan.adjacency],
        "frontier": sorted((key(k) for k in fan.frontier), key=lambda k: [Fraction(x) for x in k]),
    }


def graph_json(arr: Arrangement, g: nx.Graph, radius: int) -> dict:
    nodes = sorted(g.nodes, key=lambda k: g.nodes[k]["face"].sort_key())
    index = {k: i for i, k in enumerate(nodes)}
    edges = sorted(
        (min(index[a], index[b]), max(index[a], index[b]), tuple(d["normal"])) for a, b, d in g.edges(data=True)
    )
    return {
        "diagram": arr.diagram.name,
        "J": list(arr.J),
        "radius": radius,
        "components": nx.number_connected_components(g),
        "nodes": [
            {
                "id": index[k],
                "sign": _sign(k.sign),
                "face_key": rationals(k.signed_point()),
                "chamber_rays": [list(r) for r in arr.chamber_rays(g.nodes[k]["face"])],
            }
            for k in nodes
        ],
        "edges": [{"source": a, "target": b, "normal": list(n)} for a, b, n in edges],
    }


# -- cross-check ---------------------------------------------------------------


@dataclass(frozen=True)
class CrossCheckReport:
    diagram: str
    J: tuple
    theta: tuple
    classification: Classification
    verdict: str
    oracle_count: int | None = None
    oracle_classes: tuple = ()
    reason: str = ""
    stables: tuple = ()


def proportional(u: Sequence, v: Sequence) -> bool:
    if not any(u) or not any(v):
        return False
    n = len(u)
    return len(v) == n and all(u[i] * v[j] == u[j] * v[i] for i in range(n) for j in range(n))


def crosscheck(
    arr: Arrangement,
    theta_J: Sequence,
    P: QuiverPresentation,
    bound: Sequence[int],
    field_name: str = "F2",
    budget: int = DEFAULT_BUDGET,
) -> CrossCheckReport:
    """Compare the fan's stable count at ``theta`` with exhaustive enumeration.

    The quiver's vertices are matched to ``J`` in order.
    """
    if len(P.vertices) != len(arr.J):
        raise LengthMismatch(f"quiver has {len(P.vertices)} vertices but |J| = {len(arr.J)}")
    theta = tuple(Fraction(x) for x in theta_J)
    cls = arr.classify(theta)
    base = dict(diagram=arr.diagram.name, J=arr.J, theta=theta, classification=cls)
    if cls.face is None:
        return CrossCheckReport(verdict=SKIPPED, reason="theta lies on h_infinity; the fan predicts nothing", **base)
    try:
        stables = enumerate_stables(P, theta, bound, field_name, budget)
    except BudgetExceeded as exc:
        return CrossCheckReport(verdict=SKIPPED, reason=str(exc), **base)
    classes = tuple(M.dim_vector for M in stables)
    ok = len(stables) == cls.face.n_stables
    reason = "" if ok else f"fan predicts {cls.face.n_stables} stables, oracle found {len(stables)}"
    if ok and cls.face.codim == 1:
        normal = arr.wall_normal(cls.face)
        bad = [c for c in classes if not proportional(c, normal)]
        if bad:
            ok = False
            reason = f"stable classes {bad} are not proportional to the wall normal {normal}"
    return CrossCheckReport(
        verdict=MATCH if ok else MISMATCH,
        oracle_count=len(stables),
        oracle_classes=classes,
        reason=reason,
        stables=tuple(stables),
        **base,
    )


def crosscheck_json(arr: Arrangement, report: CrossCheckReport) -> dict:
    return {
        "diagram": report.diagram,
        "J": list(report.J),
        "theta": rationals(report.theta),
        "prediction": classification_json(arr, report.classification),
        "oracle": None
        if report.oracle_count is None
        else {
            "count": report.oracle_count,
            "classes": [list(c) for c in report.oracle_classes],
            "modules": [module_to_json(M) for M in report.stables],
        },
        "verdict": report.verdict,
        "reason": report.reason,
    }
