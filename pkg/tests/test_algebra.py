import itertools
import math

import numpy as np
import pytest

from conftest import a2, corpus_algebra, kronecker, loop
from homolog.algebra import loewy_length, make_algebra, opposite_algebra
from homolog.corpus import corpus
from homolog.errors import (InputError, NonHomogeneousRelation, NonParallelRelation, NotAdmissible,
                            RelationDegreeTooLow, UnknownVertex)
from homolog.field import PrimeField, Rationals
from homolog.torsion import pd_of_set, vertex_set

CORPUS = [e.name for e in corpus()]


def _monomial_count(vertices, arrows, forbidden):
    """Paths avoiding every forbidden word, counted by brute force."""
    src = {n: s for n, s, _ in arrows}
    tgt = {n: t for n, _, t in arrows}
    total = len(vertices)
    layer = [(n,) for n, _, _ in arrows]
    while layer:
        ok = [w for w in layer if not any(".".join(w[i:i + len(f)]) == ".".join(f)
                                         for f in forbidden for i in range(len(w) - len(f) + 1))]
        total += len(ok)
        layer = [w + (n,) for w in ok for n, _, _ in arrows if src[n] == tgt[w[-1]]]
    return total


def test_small_examples():
    assert a2().dimension == 3 and loewy_length(a2()) == 2
    assert loop(4).dimension == 4 and loewy_length(loop(4)) == 4
    assert kronecker().dimension == 4


@pytest.mark.parametrize("n, p", [(2, 3), (3, 3), (2, 5), (3, 2)])
def test_exterior_dimension(n, p):
    names = "xyz"[:n]
    rels = [[(1, f"{v}.{v}")] for v in names]
    rels += [[(1, f"{u}.{v}"), (1, f"{v}.{u}")] for u, v in itertools.combinations(names, 2)]
    A = make_algebra(PrimeField(p), ["1"], [(v, "1", "1") for v in names], rels)
    assert A.dimension == 2 ** n
    assert loewy_length(A) == n + 1
    assert [A.radical_power_dimension(d) for d in range(n + 2)] == \
        [sum(math.comb(n, k) for k in range(d, n + 1)) for d in range(n + 2)]


def test_monomial_dimension_matches_path_count():
    arrows = [("a", "1", "2"), ("b", "2", "3"), ("c", "3", "1")]
    forb = [("a", "b", "c"), ("c", "a")]
    A = make_algebra(PrimeField(2), ["1", "2", "3"], arrows, [[(1, ".".join(f))] for f in forb])
    assert A.dimension == _monomial_count(["1", "2", "3"], arrows, forb)


def test_rational_field_algebra():
    A = make_algebra(Rationals(), ["1"], [("x", 1, 1), ("y", 1, 1)],
                     [[(1, "x.x")], [(1, "y.y")], [(1, "x.y"), (1, "y.x")]])
    assert A.dimension == 4


def test_relation_errors():
    F = PrimeField(2)
    with pytest.raises(RelationDegreeTooLow):
        make_algebra(F, ["1"], [("x", 1, 1)], [[(1, "x")]])
    with pytest.raises(NonParallelRelation):
        make_algebra(F, ["1", "2"], [("a", 1, 2), ("x", 1, 1), ("y", 2, 2)], [[(1, "x.x"), (1, "a.y")]])
    with pytest.raises(NonHomogeneousRelation):
        make_algebra(F, ["1"], [("x", 1, 1)], [[(1, "x.x"), (1, "x.x.x")]])
    with pytest.raises(NotAdmissible):
        make_algebra(F, ["1"], [("x", 1, 1)], max_length=6)
    with pytest.raises(UnknownVertex):
        make_algebra(F, ["1"], [("x", 1, 2)])
    with pytest.raises(InputError):
        make_algebra(F, ["1", "2"], [("a", 1, 2)], [[(1, "a.a")]])


def test_cancelled_relation_is_dropped():
    A = make_algebra(PrimeField(3), ["1"], [("x", 1, 1)], [[(1, "x.x"), (2, "x.x")], [(1, "x.x.x")]])
    assert A.dimension == 3


def test_multiplication_is_associative():
    rng = np.random.default_rng(0)
    for name in CORPUS:
        assert corpus_algebra(name).check_associativity(rng, trials=20), name


@pytest.mark.parametrize("name", CORPUS)
def test_opposite_is_an_involution(name):
    A = corpus_algebra(name)
    B = opposite_algebra(opposite_algebra(A))
    assert B.signature() == A.signature()
    assert A.opposite.dimension == A.dimension
    assert loewy_length(A.opposite) == loewy_length(A)


def test_reading_direction_matters():
    # the path-order convention is what gives the projective dimension one
    A = corpus_algebra("final-example")
    labels = [str(i) for i in range(3, 15)]
    assert pd_of_set(A, vertex_set(A, labels)) == 1
    assert pd_of_set(A.opposite, vertex_set(A.opposite, labels)) != 1
