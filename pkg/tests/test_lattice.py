import numpy as np
import pytest

from conftest import a2, corpus_algebra, kronecker, loop
from homolog.errors import RationalFieldUnsupported
from homolog.field import PrimeField, Rationals
from homolog.lattice import (ModuleUniverse, all_subspaces, extension_modules, submodule_key,
                             submodule_lattice_oracle, submodules)
from homolog.modules import direct_sum_module, random_module, simple_at, standard_module


def gaussian_binomial(n, k, q):
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


@pytest.mark.parametrize("p, n", [(2, 0), (2, 1), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2)])
def test_subspace_counts(p, n):
    subs = all_subspaces(PrimeField(p), n)
    assert len(subs) == sum(gaussian_binomial(n, k, p) for k in range(n + 1))
    assert len({(s.rows, s.basis.tobytes()) for s in subs}) == len(subs)


def test_rationals_rejected():
    with pytest.raises(RationalFieldUnsupported):
        all_subspaces(Rationals(), 2)


def test_semisimple_submodules_are_subspaces():
    A = loop(2, 2)
    S = direct_sum_module([simple_at(A, 0)] * 3)
    assert sum(1 for _ in submodules(S)) == 1 + 7 + 7 + 1


def test_uniserial_chain():
    P = standard_module(loop(4), "P", "1")
    assert [sum(s.dim for s in X) for X in submodules(P)] == [0, 1, 2, 3, 4]


@pytest.mark.parametrize("name", ["a2", "kronecker", "loop-x3", "exterior-2", "monomial-3"])
def test_submodules_match_oracle(name):
    A = corpus_algebra(name)
    rng = np.random.default_rng(9)
    for _ in range(5):
        M = random_module(A, rng, 5)
        fast = {submodule_key(X) for X in submodules(M)}
        slow = {submodule_key(X) for X in submodule_lattice_oracle(M)}
        assert fast == slow


def test_extensions_of_simples_in_a2():
    A = a2()
    S1, S2 = simple_at(A, 0), simple_at(A, 1)
    ext = extension_modules(S1, S2)
    assert len(ext) == 1 and ext[0].dims == (1, 1)
    assert extension_modules(S2, S1) == []
    assert len(extension_modules(S2, S1, include_split=True)) == 1


@pytest.mark.parametrize("make, cap, counts", [
    (lambda: a2(), 3, [2, 1, 0]),
    (lambda: loop(3, 2), 4, [1, 1, 1, 0]),
    (lambda: kronecker(2), 3, [2, 3, 2]),
])
def test_universe_counts(make, cap, counts):
    U = ModuleUniverse(make(), cap)
    assert [U.count_of_dim(n) for n in range(1, cap + 1)] == counts


def test_universe_modules_of_a_loop_are_partitions():
    U = ModuleUniverse(loop(3, 2), 5)
    # partitions of n into parts of size at most three
    assert [sum(1 for M in U.all_modules() if M.dim == n) for n in range(1, 6)] == [1, 2, 3, 4, 5]
