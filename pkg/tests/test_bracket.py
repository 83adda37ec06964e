import numpy as np
import pytest

from conftest import a2, corpus_algebra, loop
from homolog.bracket import (NO, UNKNOWN, YES, BracketSearch, FiltrationWitness, LatticeOracle,
                             bracket_membership, check_concatenation, check_cosyzygy_shift, extdim_bounds,
                             verify_syzygy_bracket)
from homolog.decompose import IsoRegistry
from homolog.errors import NotExact
from homolog.lattice import ModuleUniverse
from homolog.modules import Morphism, direct_sum_module, simple_at, standard_module


def _a2_sequence():
    A = a2()
    P1, S1, S2 = standard_module(A, "P", "1"), simple_at(A, 0), simple_at(A, 1)
    f = Morphism(S2, P1, [np.zeros((1, 0), dtype=np.int64), np.array([[1]])])
    g = Morphism(P1, S1, [np.array([[1]]), np.zeros((0, 1), dtype=np.int64)])
    return A, P1, S1, S2, f, g


def test_order_of_levels_matters():
    A, P1, S1, S2, _, _ = _a2_sequence()
    B = BracketSearch()
    assert B.membership(P1, [S2, S1]).answer == YES
    assert B.membership(P1, [S1, S2]).answer == NO


def test_power_levels():
    A, P1, S1, S2, _, _ = _a2_sequence()
    S = direct_sum_module([S1, S2])
    assert bracket_membership(P1, S, 1).answer == NO
    assert bracket_membership(P1, S, 2).answer == YES
    # no padding turns an indecomposable non-semisimple module into a semisimple one
    assert bracket_membership(P1, S, 1, mode="summand").answer == UNKNOWN


def test_uniserial_needs_all_layers():
    A = loop(3, 2)
    P, S = standard_module(A, "P", "1"), simple_at(A, 0)
    assert bracket_membership(P, S, 2).answer == NO
    res = bracket_membership(P, S, 3)
    assert res.answer == YES
    assert res.witness.layer_dims() == [(1,), (1,), (1,)]
    assert res.witness.validate()


def test_level_must_be_positive():
    A, P1, S1, _, _, _ = _a2_sequence()
    with pytest.raises(ValueError):
        bracket_membership(P1, S1, 0)


def test_tampered_witness_fails():
    A = loop(3, 2)
    P, S = standard_module(A, "P", "1"), simple_at(A, 0)
    w = bracket_membership(P, S, 3).witness
    bad = FiltrationWitness(w.ambient, w.chain[:2] + [w.chain[1]], w.generators, w.target)
    assert not bad.validate()
    wrong = FiltrationWitness(w.ambient, w.chain, [P, P, P], w.target)
    assert not wrong.validate()


def test_search_agrees_with_oracle_on_a_loop():
    A = loop(3, 2)
    reg = IsoRegistry()
    U = ModuleUniverse(A, 5, registry=reg)
    B, O = BracketSearch(reg), LatticeOracle(reg)
    S, P = simple_at(A, 0), standard_module(A, "P", "1")
    for M in U.all_modules():
        for levels in ([S], [S, S], [P], [S, P], [P, S]):
            assert (B.direct(M, levels) is not None) == O.member(M, levels)


def test_resolution_bracket_pullback():
    A, P1, S1, S2, f, g = _a2_sequence()
    res = verify_syzygy_bracket([f, g], "resolution")
    assert res.method == "pullback" and res.valid
    assert [T.dims for T in res.levels] == [(0, 1), (1, 1)]


def test_coresolution_bracket():
    A, P1, S1, S2, f, g = _a2_sequence()
    res = verify_syzygy_bracket([f, g], "coresolution")
    assert res.valid
    assert [T.dims for T in res.levels] == [(1, 1), (1, 0)]


def test_single_iso_is_a_direct_bracket():
    A, P1, *_ = _a2_sequence()
    res = verify_syzygy_bracket([Morphism.identity(P1)], "resolution")
    assert res.method == "direct" and res.valid


def test_non_exact_sequence_rejected():
    A, P1, S1, S2, f, g = _a2_sequence()
    with pytest.raises(NotExact):
        verify_syzygy_bracket([f, Morphism.zero(P1, S1)], "resolution")
    with pytest.raises(ValueError):
        verify_syzygy_bracket([f, g], "sideways")


def test_extdim_of_semisimple_and_a2():
    res = extdim_bounds(corpus_algebra("semisimple"))
    assert (res.lower, res.upper) == (0, 0) and res.rep_finite_within_caps
    res = extdim_bounds(a2())
    assert (res.lower, res.upper) == (0, 0)
    assert res.as_json()["within_caps"] is True


def test_spot_checks_on_a2():
    A, P1, S1, S2, _, _ = _a2_sequence()
    B = BracketSearch(dim_cap=16)
    assert check_concatenation(B, P1, S2, S1, 1, 1).holds
    res = check_cosyzygy_shift(B, S2, S2, 1, 1, [S1, S2, P1])
    assert res.premise and res.holds
