"""Finite enumerations over prime fields: subspaces, submodules and small module universes."""
from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from .algebra import BoundQuiverAlgebra
from .decompose import IsoRegistry, is_indecomposable
from .errors import CapExceeded, RationalFieldUnsupported
from .field import PrimeField
from .modules import (Morphism, Representation, Subspace, direct_sum, direct_sum_module, hom_basis, quotient,
                      simple_at, span, subrepresentation, submodule_generated, zero_module)
from .syzygy import syzygy_step

SubmoduleKey = tuple


# --------------------------------------------------------------------------
# subspaces


@lru_cache(maxsize=None)
def _subspaces(p: int, n: int) -> tuple[Subspace, ...]:
    F = PrimeField(p)
    out = [Subspace(F.zeros(n, 0), ())]
    for k in range(1, n + 1):
        for piv in itertools.combinations(range(n), k):
            pset = set(piv)
            free = [(r, c) for r in range(k) for c in range(piv[r] + 1, n) if c not in pset]
            for vals in itertools.product(range(p), repeat=len(free)):
                R = F.zeros(k, n)
                for r, c in enumerate(piv):
                    R[r, c] = 1
                for (r, c), v in zip(free, vals):
                    R[r, c] = v
                out.append(Subspace(np.ascontiguousarray(R.T), piv))
    return tuple(out)


def all_subspaces(F, n: int) -> tuple[Subspace, ...]:
    """Every subspace of ``F^n`` in canonical form."""
    if not F.is_prime:
        raise RationalFieldUnsupported("subspace enumeration needs a finite field")
    return _subspaces(F.p, n)


def _inside(F, sub: Subspace, vectors: np.ndarray) -> bool:
    if vectors.shape[1] == 0:
        return True
    if sub.dim == 0:
        return F.is_zero(vectors)
    return np.array_equal(F.matmul(sub.basis, sub.coords(vectors)), vectors)


def submodule_key(subs: Sequence[Subspace]) -> SubmoduleKey:
    return tuple((s.rows, s.basis.tobytes()) for s in subs)


def submodules(M: Representation) -> Iterator[list[Subspace]]:
    """Every submodule of ``M``: vertexwise subspace tuples closed under the arrows.

    Vertices are chosen one at a time and each arrow is checked as soon as both
    of its ends are fixed, which prunes most of the product.
    """
    F, Q = M.field, M.algebra.quiver
    nv = len(M.dims)
    checks: list[list[int]] = [[] for _ in range(nv)]
    for a in range(len(Q.arrows)):
        checks[max(Q.src[a], Q.tgt[a])].append(a)
    choice: list[Subspace | None] = [None] * nv

    def rec(v: int):
        if v == nv:
            yield list(choice)
            return
        for U in all_subspaces(F, M.dims[v]):
            choice[v] = U
            ok = True
            for a in checks[v]:
                s, t = Q.src[a], Q.tgt[a]
                if choice[s].dim and not _inside(F, choice[t], F.matmul(M.mats[a], choice[s].basis)):
                    ok = False
                    break
            if ok:
                yield from rec(v + 1)
        choice[v] = None

    yield from rec(0)


def submodule_lattice_oracle(M: Representation) -> list[list[Subspace]]:
    """All submodules, found as sums of cyclic submodules by breadth-first search."""
    F = M.field
    nv = len(M.dims)
    cyclic: dict[SubmoduleKey, list[Subspace]] = {}
    for v in range(nv):
        for vec in itertools.product(range(F.p), repeat=M.dims[v]):
            if not any(vec):
                continue
            cols = [F.zeros(M.dims[w], 0) for w in range(nv)]
            cols[v] = F.array([[x] for x in vec])
            sub = submodule_generated(M, cols)
            cyclic.setdefault(submodule_key(sub), sub)
    zero = [Subspace(F.zeros(d, 0), ()) for d in M.dims]
    seen = {submodule_key(zero): zero}
    frontier = [(submodule_key(zero), zero)]
    gens = [(submodule_key(C), C) for C in cyclic.values()]
    joins = _JOINS.setdefault(F.p, {})
    while frontier:
        nxt = []
        for xk, X in frontier:
            for ck, C in gens:
                Y, yk = [], []
                for xs, cs, xkey, ckey in zip(X, C, xk, ck):
                    jk = (xs.basis.shape[0], xkey, ckey)
                    hit = joins.get(jk)
                    if hit is None:
                        hit = span(F, np.concatenate([xs.basis, cs.basis], axis=1)) if (xs.dim or cs.dim) else xs
                        hit = (hit, (hit.rows, hit.basis.tobytes()))
                        joins[jk] = hit
                    Y.append(hit[0])
                    yk.append(hit[1])
                k = tuple(yk)
                if k not in seen:
                    seen[k] = Y
                    nxt.append((k, Y))
        frontier = nxt
    return list(seen.values())


# per-field memo of vertexwise subspace joins, keyed by canonical forms
_JOINS: dict[int, dict] = {}


def contains_sub(F, big: Sequence[Subspace], small: Sequence[Subspace]) -> bool:
    return all(_inside(F, b, s.basis) for b, s in zip(big, small))


def relative_quotient(M: Representation, big: Sequence[Subspace], small: Sequence[Subspace]) -> Representation:
    """``big / small`` for nested submodules of ``M``."""
    B, _ = subrepresentation(M, big)
    inner = [Subspace(b.coords(s.basis) if b.dim else s.basis[:0, :], ()) for b, s in zip(big, small)]
    inner = [span(M.field, x.basis) for x in inner]
    return quotient(B, inner)[0]


# --------------------------------------------------------------------------
# extensions and module universes


def extension_modules(N: Representation, S: Representation, include_split: bool = False
                      ) -> list[Representation]:
    """Middle terms ``E`` of ``0 -> S -> E -> N -> 0``, one per class up to scalars.

    ``E`` is the pushout of ``0 -> Omega N -> P -> N -> 0`` along a map
    ``Omega N -> S``; maps are taken from a complement of those that extend to ``P``.
    """
    F = N.field
    if N.dim == 0:
        return [S]
    K, inc, P, _ = syzygy_step(N)
    if K.dim == 0:
        return [direct_sum_module([S, N])] if include_split else []
    H = hom_basis(K, S)
    cob = [psi.after(inc) for psi in hom_basis(P.rep, S)]
    basis_vecs = F.zeros(K.dim * 0 + sum(a * b for a, b in zip(K.dims, S.dims)), 0)
    for c in cob:
        v = c.vector().reshape(-1, 1)
        basis_vecs = np.concatenate([basis_vecs, v], axis=1)
    comp = []
    r0 = F.rank(basis_vecs) if basis_vecs.shape[1] else 0
    for h in H:
        trial = np.concatenate([basis_vecs, h.vector().reshape(-1, 1)], axis=1)
        r = F.rank(trial)
        if r > r0:
            basis_vecs, r0 = trial, r
            comp.append(h)
    out = []
    if include_split:
        out.append(direct_sum_module([S, N]))
    SP, incs, _ = direct_sum([S, P.rep])
    for coeffs in itertools.product(range(F.p), repeat=len(comp)):
        nz = [c for c in coeffs if c]
        if not nz or nz[0] != 1:
            continue
        phi = None
        for c, h in zip(coeffs, comp):
            if c:
                term = h.scaled(c)
                phi = term if phi is None else phi + term
        emb = incs[0].after(phi) - incs[1].after(inc)
        sub = [span(F, m) for m in emb.maps]
        out.append(quotient(SP, sub)[0])
    return out


class ModuleUniverse:
    """All modules up to isomorphism with total dimension at most ``dim_cap``.

    Indecomposables of dimension ``n`` arise as extensions of a simple by a
    module of dimension ``n - 1``; general modules are sums of those.
    """

    def __init__(self, A: BoundQuiverAlgebra, dim_cap: int, seed: int = 0, registry: IsoRegistry | None = None,
                 max_modules: int = 20000):
        if not A.field.is_prime:
            raise RationalFieldUnsupported("module enumeration needs a finite field")
        self.algebra = A
        self.dim_cap = dim_cap
        self.registry = registry if registry is not None else IsoRegistry(seed)
        self.max_modules = max_modules
        self.indecomposables: list[int] = []           # class ids, by increasing dimension
        self._build()

    def _build(self):
        A, reg = self.algebra, self.registry
        simples = [simple_at(A, i) for i in range(A.n_vertices)]
        known: set[int] = set()
        for n in range(1, self.dim_cap + 1):
            new = []
            for N in self._all_of_dim(n - 1):
                for S in simples:
                    for E in extension_modules(N, S):
                        if not is_indecomposable(E, reg.seed, reg.budget):
                            continue
                        cid = reg.classify_indecomposable(E)
                        if cid not in known:
                            known.add(cid)
                            new.append(cid)
            new.sort(key=lambda c: (reg.reps[c].dims, c))
            self.indecomposables.extend(new)

    def _dim(self, cid: int) -> int:
        return self.registry.reps[cid].dim

    def multisets(self, n: int | None = None) -> Iterator[tuple[int, ...]]:
        """Multisets of indecomposable classes of total dimension ``n`` (or up to the cap)."""
        ids = list(self.indecomposables)
        lo, hi = (1, self.dim_cap) if n is None else (n, n)

        def rec(start: int, remaining: int, acc: list[int]):
            total = self.dim_cap - remaining
            if lo <= total <= hi:
                yield tuple(acc)
            for j in range(start, len(ids)):
                d = self._dim(ids[j])
                if d <= remaining and total + d <= hi:
                    acc.append(ids[j])
                    yield from rec(j, remaining - d, acc)
                    acc.pop()

        if n == 0:
            yield ()
            return
        yield from rec(0, self.dim_cap, [])

    def module(self, ms: Sequence[int]) -> Representation:
        if not ms:
            return zero_module(self.algebra)
        return direct_sum_module([self.registry.reps[c] for c in ms])

    def _all_of_dim(self, n: int) -> list[Representation]:
        if n == 0:
            return [zero_module(self.algebra)]
        out = [self.module(ms) for ms in self.multisets(n)]
        if len(out) > self.max_modules:
            raise CapExceeded(f"more than {self.max_modules} modules of dimension {n}")
        return out

    def all_modules(self) -> list[Representation]:
        """Every nonzero module up to the cap, one per isomorphism class."""
        out = [self.module(ms) for ms in self.multisets()]
        if len(out) > self.max_modules:
            raise CapExceeded(f"more than {self.max_modules} modules within the cap")
        return out

    def indecomposable_modules(self) -> list[Representation]:
        return [self.registry.reps[c] for c in self.indecomposables]

    def count_of_dim(self, n: int) -> int:
        return sum(1 for c in self.indecomposables if self._dim(c) == n)
