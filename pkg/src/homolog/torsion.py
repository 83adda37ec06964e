"""Serre classes of modules with composition factors in a vertex set, their torsion radical and layer length."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .algebra import BoundQuiverAlgebra
from .errors import UnknownVertex
from .modules import (Representation, Subspace, closure, composition_factors, regular_module, span,
                      subrepresentation)
from .syzygy import DEFAULT_CUTOFF, dim_max, simple_proj_dimension


def vertex_set(A: BoundQuiverAlgebra, V: Iterable) -> frozenset[int]:
    """Vertex indices for ids (strings or ints naming vertices)."""
    out = set()
    for v in V:
        try:
            out.add(A.quiver.vertex(str(v)))
        except (KeyError, UnknownVertex):
            raise UnknownVertex(f"unknown vertex {v!r}") from None
    return frozenset(out)


def complement(A: BoundQuiverAlgebra, V: frozenset[int]) -> frozenset[int]:
    return frozenset(range(A.n_vertices)) - V


def in_filtration_class(M: Representation, V: frozenset[int]) -> bool:
    """All composition factors of ``M`` are simples at vertices of ``V``."""
    return all(c == 0 or w in V for w, c in enumerate(composition_factors(M)))


# the layer computations run on arrow-closed subspaces of one fixed ambient module


def _full(M: Representation) -> list[Subspace]:
    return [Subspace(M.field.eye(d), tuple(range(d))) for d in M.dims]


def _zero(M: Representation, w: int) -> Subspace:
    return Subspace(M.field.zeros(M.dims[w], 0), ())


def torsion_subspaces(M: Representation, X: Sequence[Subspace], V: frozenset[int]) -> list[Subspace]:
    """``t_V`` of the submodule ``X``: the part generated at vertices outside ``V``."""
    seed = [_zero(M, w) if w in V else X[w] for w in range(len(M.dims))]
    return closure(M, seed)


def radical_of(M: Representation, X: Sequence[Subspace]) -> list[Subspace]:
    F, Q = M.field, M.algebra.quiver
    out = []
    for w in range(len(M.dims)):
        imgs = [F.matmul(M.mats[a], X[Q.src[a]].basis) for a in range(len(Q.arrows))
                if Q.tgt[a] == w and X[Q.src[a]].dim]
        out.append(span(F, np.concatenate(imgs, axis=1)) if imgs and M.dims[w] else _zero(M, w))
    return out


def torsion_radical(M: Representation, V: Iterable[int]):
    """``(t_V(M), inclusion)``: the least submodule whose quotient lies in the class of ``V``."""
    V = frozenset(V)
    return subrepresentation(M, torsion_subspaces(M, _full(M), V))


@dataclass
class LayerTrace:
    dims: list[tuple[int, ...]] = field(default_factory=list)   # M, t(M), F(M), t(F(M)), ...
    value: int = 0

    def as_json(self) -> dict:
        return {"value": self.value, "dims": [list(d) for d in self.dims]}


def t_layer_length(M: Representation, V: Iterable[int]) -> tuple[int, LayerTrace]:
    """Least ``i`` with ``t_V(F^i M) = 0`` where ``F = rad . t_V``."""
    V = frozenset(V)
    trace = LayerTrace()
    X = _full(M)
    i = 0
    while True:
        trace.dims.append(tuple(s.dim for s in X))
        T = torsion_subspaces(M, X, V)
        trace.dims.append(tuple(s.dim for s in T))
        if sum(s.dim for s in T) == 0:
            break
        X = radical_of(M, T)
        i += 1
    trace.value = i
    return i, trace


def algebra_layer_length(A: BoundQuiverAlgebra, V: Iterable[int]) -> tuple[int, LayerTrace]:
    """Layer length of the regular module."""
    return t_layer_length(regular_module(A).rep, V)


def pd_of_set(A: BoundQuiverAlgebra, V: Iterable[int], cutoff: int = DEFAULT_CUTOFF):
    """Largest projective dimension of the simples in ``V``; ``-1`` for the empty set."""
    V = sorted(frozenset(V))
    if not V:
        return -1
    return dim_max(simple_proj_dimension(A, i, cutoff) for i in V)
