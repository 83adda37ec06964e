import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import properties as P
from conftest import a2, corpus_algebra
from homolog.algebra import loewy_length
from homolog.errors import UnknownVertex
from homolog.lattice import submodules
from homolog.modules import quotient, random_module, standard_module
from homolog.torsion import (algebra_layer_length, in_filtration_class, pd_of_set, t_layer_length,
                             torsion_radical, vertex_set)


def torsion_by_search(M, V):
    """Dimension vector of the least submodule whose quotient has factors only in ``V``."""
    best = None
    for subs in submodules(M):
        if in_filtration_class(quotient(M, subs)[0], V):
            dims = tuple(s.dim for s in subs)
            if best is None or sum(dims) < sum(best):
                best = dims
    return best


def test_a2_examples():
    A = a2()
    P1 = standard_module(A, "P", "1")
    V2 = vertex_set(A, ["2"])
    assert torsion_radical(P1, V2)[0].dims == (1, 1)
    assert torsion_radical(P1, vertex_set(A, ["1"]))[0].dims == (0, 1)
    assert torsion_radical(P1, vertex_set(A, ["1", "2"]))[0].dims == (0, 0)
    # t(A) = P(1), then rad P(1) = S(2) is already in the class
    assert algebra_layer_length(A, V2)[0] == 1
    assert algebra_layer_length(A, vertex_set(A, []))[0] == 2
    assert pd_of_set(A, V2) == 0
    assert pd_of_set(A, []) == -1


def test_unknown_vertex():
    with pytest.raises(UnknownVertex):
        vertex_set(a2(), ["7"])


def test_full_vertex_set_kills_everything():
    A = corpus_algebra("beilinson-2")
    ll, trace = algebra_layer_length(A, range(A.n_vertices))
    assert ll == 0
    assert trace.as_json()["value"] == 0


def test_empty_set_gives_loewy_length():
    for name in ("a5", "exterior-3", "t2-x4", "final-example"):
        A = corpus_algebra(name)
        assert algebra_layer_length(A, [])[0] == loewy_length(A)


@pytest.mark.parametrize("name", ["a2", "kronecker", "loop-x3", "monomial-3", "a5", "radsq-zero"])
def test_torsion_matches_search(name):
    A = corpus_algebra(name)
    rng = np.random.default_rng(5)
    subsets = [frozenset(c) for k in range(A.n_vertices + 1) for c in itertools.combinations(range(A.n_vertices), k)]
    for _ in range(6):
        M = random_module(A, rng, 5)
        for V in subsets:
            assert torsion_radical(M, V)[0].dims == torsion_by_search(M, V)


@st.composite
def cases(draw):
    name = draw(st.sampled_from(["a2", "kronecker", "loop-x4", "exterior-2", "monomial-3", "beilinson-2",
                                 "t2-x4", "a5"]))
    A = corpus_algebra(name)
    rng = np.random.default_rng(draw(st.integers(0, 2**31)))
    V = frozenset(draw(st.sets(st.integers(0, A.n_vertices - 1))))
    return A, rng, V


@settings(max_examples=60, deadline=None)
@given(cases())
def test_torsion_idempotent(case):
    A, rng, V = case
    assert P.torsion_is_idempotent(random_module(A, rng, 8), V)


@settings(max_examples=60, deadline=None)
@given(cases())
def test_torsion_quotient_in_class(case):
    A, rng, V = case
    assert P.torsion_quotient_filtered(random_module(A, rng, 8), V)


@settings(max_examples=60, deadline=None)
@given(cases())
def test_torsion_additive(case):
    A, rng, V = case
    assert P.torsion_is_additive(random_module(A, rng, 6), random_module(A, rng, 6), V)


@settings(max_examples=60, deadline=None)
@given(cases())
def test_layer_length_empty_set(case):
    A, rng, _ = case
    assert P.layer_length_matches_loewy(random_module(A, rng, 8))


@settings(max_examples=40, deadline=None)
@given(cases())
def test_layer_length_monotone_in_V(case):
    A, rng, V = case
    M = random_module(A, rng, 8)
    big = V | {int(rng.integers(0, A.n_vertices))}
    assert t_layer_length(M, big)[0] <= t_layer_length(M, V)[0]
