from __future__ import annotations

from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stabfan.errors import BudgetExceeded, FieldNotFinite, ShapeMismatch
from stabfan.quiver import (
    check_module,
    cokernel,
    direct_sum,
    enumerate_modules,
    enumerate_stables,
    homomorphisms,
    isomorphic,
    kernel,
    load_module,
    make_presentation,
    module_to_json,
    stability,
    submodules,
    theta_pairing,
)
from stabfan.quiver import linalg as la
from stabfan.quiver.modules import base_change, make_module, simples


@pytest.mark.parametrize("p, counts", [(2, [1, 2, 5, 16, 67]), (3, [1, 2, 6, 28, 212])])
def test_subspace_counts(p, counts):
    assert [len(la.subspaces(d, p)) for d in range(5)] == counts


def test_rank_and_nullspace():
    A = ((1, 2), (2, 4))
    assert la.rank(A, 2, None) == 1
    assert la.rank(A, 2, 2) == 1
    (n,) = la.nullspace(A, 2, None)
    assert all(sum(Fraction(a) * b for a, b in zip(row, n)) == 0 for row in A)


def test_check_module(two_cycle):
    good = make_module(two_cycle, "F2", [1, 1], {"a": [[1]], "b": [[0]]})
    bad = make_module(two_cycle, "F2", [1, 1], {"a": [[1]], "b": [[1]]})
    assert check_module(two_cycle, good).valid
    report = check_module(two_cycle, bad)
    assert not report.valid and set(report.violated) == {"a", "b"}


def test_shape_mismatch(two_cycle):
    with pytest.raises(ShapeMismatch):
        make_module(two_cycle, "F2", [1, 2], {"a": [[1]], "b": [[0]]})
    with pytest.raises(ShapeMismatch):
        make_module(two_cycle, "F2", [1, 1], {"a": [[1]]})


def test_json_round_trip(two_cycle):
    M = make_module(two_cycle, "F3", [2, 1], {"a": [[1], [2]], "b": [[0, 0]]})
    assert load_module(module_to_json(M), two_cycle) == M


def test_relation_integrity(two_cycle):
    # 1x1 matrices: the relations reduce to ab = 0
    mods = list(enumerate_modules(two_cycle, (1, 1), "F2"))
    assert len(mods) == 3
    for M in enumerate_modules(two_cycle, (2, 1), "F2"):
        assert check_module(two_cycle, M).valid


def test_enumeration_needs_finite_field(two_cycle):
    with pytest.raises(FieldNotFinite):
        list(enumerate_modules(two_cycle, (1, 1), "Q"))


def test_budget(two_cycle):
    with pytest.raises(BudgetExceeded):
        enumerate_stables(two_cycle, (1, -1), (3, 3), "F2", budget=100)


def test_submodules_of_semisimple(two_cycle):
    M = make_module(two_cycle, "F2", [1, 1], {"a": [[0]], "b": [[0]]})
    assert sorted(N.dims for N in submodules(two_cycle, M)) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    N = make_module(two_cycle, "F2", [1, 1], {"a": [[1]], "b": [[0]]})
    assert sorted(S.dims for S in submodules(two_cycle, N)) == [(0, 0), (0, 1), (1, 1)]


@pytest.mark.parametrize(
    "theta, expected",
    [
        ((1, -1), [((1, 1), {"a": ((1,),), "b": ((0,),)})]),
        ((-1, 1), [((1, 1), {"a": ((0,),), "b": ((1,),)})]),
        ((1, 1), []),
        ((0, 0), [((0, 1), None), ((1, 0), None)]),
    ],
)
def test_two_cycle_stables(two_cycle, theta, expected):
    found = enumerate_stables(two_cycle, theta, (2, 2), "F2")
    assert sorted(M.dim_vector for M in found) == [d for d, _ in expected]
    for M, (_, arrows) in zip(sorted(found, key=lambda M: M.dim_vector), expected):
        if arrows is not None:
            assert M.arrows == arrows


def test_stability_witness(two_cycle):
    S = make_module(two_cycle, "F2", [1, 1], {"a": [[1]], "b": [[0]]})
    v = stability((-1, 1), two_cycle, S)
    assert v.semistable is False and v.witness == (0, 1)
    assert stability((1, -1), two_cycle, S).stable


# -- properties on a quiver without relations ---------------------------------

KRONECKER = make_presentation(["1", "2"], [("x", "1", "2"), ("y", "1", "2")])


@st.composite
def kronecker_modules(draw, p=3, max_dim=2):
    d1 = draw(st.integers(0, max_dim))
    d2 = draw(st.integers(0, max_dim))
    def mat():
        return [[draw(st.integers(0, p - 1)) for _ in range(d2)] for _ in range(d1)]
    return make_module(KRONECKER, f"F{p}", [d1, d2], {"x": mat(), "y": mat()})


@st.composite
def invertible(draw, n, p=3):
    while True:
        g = tuple(tuple(draw(st.integers(0, p - 1)) for _ in range(n)) for _ in range(n))
        if la.rank(g, n, p) == n:
            return g


@settings(max_examples=60, deadline=None)
@given(kronecker_modules(), kronecker_modules(), st.tuples(st.integers(-3, 3), st.integers(-3, 3)))
def test_pairing_additive(M, N, theta):
    S = direct_sum(KRONECKER, M, N)
    assert theta_pairing(theta, S) == theta_pairing(theta, M) + theta_pairing(theta, N)


@settings(max_examples=60, deadline=None)
@given(kronecker_modules(), st.data())
def test_stability_invariant_under_base_change(M, data):
    g = {v: data.draw(invertible(M.dims[v])) for v in KRONECKER.vertices}
    M2 = base_change(KRONECKER, M, g)
    theta = (M.dims["2"], -M.dims["1"])
    assert stability(theta, KRONECKER, M) == stability(theta, KRONECKER, M2)
    assert isomorphic(KRONECKER, M, M2)


@settings(max_examples=40, deadline=None)
@given(kronecker_modules(), kronecker_modules())
def test_kernel_cokernel_dimensions(M, N):
    for f in homomorphisms(KRONECKER, M, N)[:9]:
        K = kernel(KRONECKER, M, f)
        C = cokernel(KRONECKER, N, f)
        for v in KRONECKER.vertices:
            r = la.rank(f[v], N.dims[v], M.p) if M.dims[v] else 0
            assert K.dims[v] == M.dims[v] - r
            assert C.dims[v] == N.dims[v] - r
        assert check_module(KRONECKER, K).valid and check_module(KRONECKER, C).valid


def test_homomorphisms_are_exhaustive():
    S1, S2 = simples(KRONECKER, "F2")
    M = make_module(KRONECKER, "F2", [1, 1], {"x": [[1]], "y": [[0]]})
    assert len(homomorphisms(KRONECKER, M, S1)) == 2
    assert len(homomorphisms(KRONECKER, S1, M)) == 1
    assert len(homomorphisms(KRONECKER, S2, M)) == 2
    brute = 0
    for a, b in product(range(2), repeat=2):
        f = {"1": ((a,),), "2": ((b,),)}
        brute += all(
            la.matmul(M.arrows[n], f["2"], 1, 2) == la.matmul(f["1"], M.arrows[n], 1, 2) for n in "xy"
        )
    assert len(homomorphisms(KRONECKER, M, M)) == brute
