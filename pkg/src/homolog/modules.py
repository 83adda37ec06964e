"""Right modules as representations of the quiver, and the maps between them.

A module assigns a vector space ``M_v`` to every vertex and, to an arrow
``a: i -> j``, a matrix of shape ``dim M_j x dim M_i``.  A path acts by the
product of its arrow matrices taken right to left, so ``m . (a.b)`` equals
``M(b) M(a) m``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .algebra import BoundQuiverAlgebra
from .errors import AlgebraMismatch, InconsistentSystem, NotAMorphism, NotARepresentation, UnknownVertex
from .field import Field, block_diag


# --------------------------------------------------------------------------
# subspaces with an identity block: basis[rows] is the identity matrix, so the
# coordinates of a vector in the span are just its entries at ``rows``


@dataclass(frozen=True)
class Subspace:
    basis: np.ndarray
    rows: tuple[int, ...]

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def coords(self, vectors: np.ndarray) -> np.ndarray:
        return vectors[list(self.rows), :]


def span(F: Field, vectors: np.ndarray) -> Subspace:
    n = vectors.shape[0]
    if vectors.shape[1] == 0 or n == 0:
        return Subspace(F.zeros(n, 0), ())
    R, piv = F.rref(vectors.T)
    return Subspace(np.ascontiguousarray(R[: len(piv)].T), tuple(piv))


def kernel(F: Field, matrix: np.ndarray) -> Subspace:
    rows, cols = matrix.shape
    if rows == 0:
        return Subspace(F.eye(cols), tuple(range(cols)))
    if cols == 0:
        return Subspace(F.zeros(0, 0), ())
    R, piv = F.rref(matrix)
    pset = set(piv)
    free = [c for c in range(cols) if c not in pset]
    K = F.zeros(cols, len(free))
    for k, f in enumerate(free):
        K[f, k] = F.one
        for r, pc in enumerate(piv):
            K[pc, k] = -R[r, f]
    return Subspace(F.reduce(K), tuple(free))


def quotient_projection(F: Field, sub: Subspace, n: int) -> tuple[np.ndarray, list[int]]:
    """Projection ``F^n -> F^n / sub`` and the rows giving a section."""
    rows = set(sub.rows)
    keep = [i for i in range(n) if i not in rows]
    P = F.eye(n)
    if sub.dim:
        P = F.sub(P, F.matmul(sub.basis, P[list(sub.rows), :]))
    return np.ascontiguousarray(P[keep, :]), keep


# --------------------------------------------------------------------------


class Representation:
    """Finite dimensional module over a bound quiver algebra."""

    def __init__(self, algebra: BoundQuiverAlgebra, dims: Sequence[int], mats: Sequence[np.ndarray],
                 check: bool = True):
        self.algebra = algebra
        self.field: Field = algebra.field
        Q = algebra.quiver
        self.dims = tuple(int(d) for d in dims)
        if len(self.dims) != Q.n_vertices or any(d < 0 for d in self.dims):
            raise NotARepresentation("dimension vector does not match the quiver")
        if len(mats) != len(Q.arrows):
            raise NotARepresentation("one matrix per arrow is required")
        out = []
        for a, m in enumerate(mats):
            shape = (self.dims[Q.tgt[a]], self.dims[Q.src[a]])
            if m is None:
                m = self.field.zeros(*shape)
            if tuple(m.shape) != shape:
                raise NotARepresentation(f"arrow {Q.arrows[a][0]}: shape {m.shape} != {shape}")
            out.append(m)
        self.mats = tuple(out)
        self._paths: dict[int, np.ndarray] = {}
        if check:
            self.check_relations()

    # -- basic data ----------------------------------------------------
    @property
    def dim(self) -> int:
        return sum(self.dims)

    @property
    def offsets(self) -> list[int]:
        out, acc = [], 0
        for d in self.dims:
            out.append(acc)
            acc += d
        return out

    def is_zero(self) -> bool:
        return self.dim == 0

    def __repr__(self):
        return f"<Representation dims={self.dims}>"

    def same_as(self, other: "Representation") -> bool:
        return (self.algebra is other.algebra and self.dims == other.dims
                and all(np.array_equal(a, b) for a, b in zip(self.mats, other.mats)))

    def key(self) -> tuple:
        F = self.field
        return (self.dims,) + tuple(F.hashable(m) for m in self.mats)

    # -- path actions ---------------------------------------------------
    def word_matrix(self, source: int, arrows: Sequence[int]) -> np.ndarray:
        F = self.field
        m = F.eye(self.dims[source])
        for a in arrows:
            m = F.matmul(self.mats[a], m)
        return m

    def path_matrix(self, u: int) -> np.ndarray:
        """Action of the algebra basis path ``u`` as a matrix ``M_s -> M_t``."""
        hit = self._paths.get(u)
        if hit is not None:
            return hit
        A = self.algebra
        link = A.prefix[u]
        if link is None:
            hit = self.field.eye(self.dims[A.basis[u].source])
        else:
            pre, a = link
            hit = self.field.matmul(self.mats[a], self.path_matrix(pre))
        self._paths[u] = hit
        return hit

    def check_relations(self) -> None:
        F = self.field
        for r in self.algebra.relations:
            s, t = r.source, r.target
            if self.dims[s] == 0 or self.dims[t] == 0:
                continue
            acc = F.zeros(self.dims[t], self.dims[s])
            for c, p in r.terms:
                acc = F.add(acc, F.scale(self.word_matrix(s, p.arrows), F.scalar(c)))
            if not F.is_zero(acc):
                raise NotARepresentation("a relation does not vanish on the module")

    # -- vectors --------------------------------------------------------
    def flatten_maps(self, maps: Sequence[np.ndarray]) -> np.ndarray:
        parts = [m.reshape(-1) for m in maps]
        if not parts:
            return self.field.zeros(0, 1)[:, 0]
        return np.concatenate(parts)


class Morphism:
    """Module homomorphism given by one matrix per vertex."""

    def __init__(self, source: Representation, target: Representation, maps: Sequence[np.ndarray],
                 check: bool = True):
        if source.algebra is not target.algebra:
            raise AlgebraMismatch("morphism between modules over different algebras")
        self.source = source
        self.target = target
        self.field = source.field
        self.maps = tuple(maps)
        for v, m in enumerate(self.maps):
            if tuple(m.shape) != (target.dims[v], source.dims[v]):
                raise NotAMorphism(f"vertex {v}: bad shape {m.shape}")
        if check and not self.commutes():
            raise NotAMorphism("arrow squares do not commute")

    def commutes(self) -> bool:
        F = self.field
        Q = self.source.algebra.quiver
        for a in range(len(Q.arrows)):
            s, t = Q.src[a], Q.tgt[a]
            lhs = F.matmul(self.target.mats[a], self.maps[s])
            rhs = F.matmul(self.maps[t], self.source.mats[a])
            if not np.array_equal(lhs, rhs):
                return False
        return True

    @staticmethod
    def identity(M: Representation) -> "Morphism":
        return Morphism(M, M, [M.field.eye(d) for d in M.dims], check=False)

    @staticmethod
    def zero(M: Representation, N: Representation) -> "Morphism":
        return Morphism(M, N, [M.field.zeros(N.dims[v], M.dims[v]) for v in range(len(M.dims))],
                        check=False)

    def after(self, other: "Morphism") -> "Morphism":
        """Composite ``self o other``."""
        F = self.field
        return Morphism(other.source, self.target,
                        [F.matmul(f, g) for f, g in zip(self.maps, other.maps)], check=False)

    def __add__(self, other: "Morphism") -> "Morphism":
        F = self.field
        return Morphism(self.source, self.target,
                        [F.add(f, g) for f, g in zip(self.maps, other.maps)], check=False)

    def __sub__(self, other: "Morphism") -> "Morphism":
        F = self.field
        return Morphism(self.source, self.target,
                        [F.sub(f, g) for f, g in zip(self.maps, other.maps)], check=False)

    def scaled(self, c) -> "Morphism":
        F = self.field
        return Morphism(self.source, self.target, [F.scale(f, F.scalar(c)) for f in self.maps],
                        check=False)

    def is_zero(self) -> bool:
        return all(self.field.is_zero(m) for m in self.maps)

    def ranks(self) -> tuple[int, ...]:
        return tuple(self.field.rank(m) for m in self.maps)

    def is_injective(self) -> bool:
        return self.ranks() == self.source.dims

    def is_surjective(self) -> bool:
        return self.ranks() == self.target.dims

    def is_iso(self) -> bool:
        return self.source.dims == self.target.dims and self.is_injective()

    def vector(self) -> np.ndarray:
        return self.source.flatten_maps(self.maps)

    def __repr__(self):
        return f"<Morphism {self.source.dims} -> {self.target.dims}>"


# --------------------------------------------------------------------------
# projective modules


def projective_data(A: BoundQuiverAlgebra, i: int):
    """``(layout, mats)`` of the indecomposable projective at vertex ``i``.

    ``layout[w]`` lists the basis paths from ``i`` to ``w``; the arrow
    matrices are right multiplication followed by reduction to normal form.
    """
    cache = A.cache.setdefault("projective", {})
    hit = cache.get(i)
    if hit is not None:
        return hit
    F, Q = A.field, A.quiver
    nv = Q.n_vertices
    layout: list[list[int]] = [[] for _ in range(nv)]
    for u in A.basis_from(i):
        layout[A.basis[u].target].append(u)
    pos = [{u: k for k, u in enumerate(layout[w])} for w in range(nv)]
    mats = []
    for a in range(len(Q.arrows)):
        s, t = Q.src[a], Q.tgt[a]
        m = F.zeros(len(layout[t]), len(layout[s]))
        for col, u in enumerate(layout[s]):
            for w, c in A.right_arrow(u, a).items():
                m[pos[t][w], col] = c
        mats.append(m)
    hit = (layout, mats)
    cache[i] = hit
    return hit


class FreeModule:
    """Direct sum of indecomposable projectives, one per listed generator vertex.

    At every vertex the basis is ordered generator by generator, and within a
    generator by algebra basis index.
    """

    def __init__(self, A: BoundQuiverAlgebra, gens: Sequence[int]):
        self.algebra = A
        self.gens = tuple(int(g) for g in gens)
        F, Q = A.field, A.quiver
        nv = Q.n_vertices
        datas = [projective_data(A, g) for g in self.gens]
        self.layout: list[list[tuple[int, int]]] = [[] for _ in range(nv)]
        for k, (lay, _) in enumerate(datas):
            for w in range(nv):
                self.layout[w].extend((k, u) for u in lay[w])
        dims = [len(l) for l in self.layout]
        mats = [block_diag(F, [d[1][a] for d in datas]) if datas else F.zeros(dims[Q.tgt[a]], dims[Q.src[a]])
                for a in range(len(Q.arrows))]
        self.rep = Representation(A, dims, mats, check=False)

    @property
    def multiplicities(self) -> tuple[int, ...]:
        out = [0] * self.algebra.n_vertices
        for g in self.gens:
            out[g] += 1
        return tuple(out)

    def generator_vector(self, k: int) -> np.ndarray:
        """Column of the ``k``-th generator inside ``rep`` at its vertex."""
        v = self.gens[k]
        pos = self.layout[v].index((k, self.algebra.index[_trivial(self.algebra, v)]))
        e = self.algebra.field.zeros(self.rep.dims[v], 1)
        e[pos, 0] = self.algebra.field.one
        return e

    def map_to(self, M: Representation, images: Sequence[np.ndarray]) -> Morphism:
        """Homomorphism sending generator ``k`` to the column ``images[k]``."""
        F = self.algebra.field
        maps = []
        for w in range(self.algebra.n_vertices):
            cols = [F.matmul(M.path_matrix(u), images[k]) for k, u in self.layout[w]]
            if cols:
                maps.append(np.ascontiguousarray(np.concatenate(cols, axis=1)))
            else:
                maps.append(F.zeros(M.dims[w], 0))
        return Morphism(self.rep, M, maps, check=False)


def _trivial(A: BoundQuiverAlgebra, v: int):
    from .algebra import Path
    return Path(v, v)


def regular_module(A: BoundQuiverAlgebra) -> FreeModule:
    return FreeModule(A, range(A.n_vertices))


# --------------------------------------------------------------------------
# radical, top, socle


def radical_subspaces(M: Representation) -> list[Subspace]:
    F, Q = M.field, M.algebra.quiver
    out = []
    for w in range(len(M.dims)):
        imgs = [M.mats[a] for a in range(len(Q.arrows)) if Q.tgt[a] == w and M.mats[a].shape[1]]
        if imgs and M.dims[w]:
            out.append(span(F, np.concatenate(imgs, axis=1)))
        else:
            out.append(Subspace(F.zeros(M.dims[w], 0), ()))
    return out


def top_dims(M: Representation) -> tuple[int, ...]:
    return tuple(M.dims[w] - s.dim for w, s in enumerate(radical_subspaces(M)))


def top_generators(M: Representation) -> tuple[list[int], list[np.ndarray]]:
    """Vertices and vectors of a minimal generating set of ``M``."""
    F = M.field
    gens, vecs = [], []
    for w, rad in enumerate(radical_subspaces(M)):
        rows = set(rad.rows)
        for i in range(M.dims[w]):
            if i not in rows:
                e = F.zeros(M.dims[w], 1)
                e[i, 0] = F.one
                gens.append(w)
                vecs.append(e)
    return gens, vecs


def is_projective(M: Representation) -> bool:
    A = M.algebra
    t = top_dims(M)
    return M.dim == sum(t[v] * len(A.basis_from(v)) for v in range(A.n_vertices))


def projective_cover(M: Representation) -> tuple[FreeModule, Morphism]:
    gens, vecs = top_generators(M)
    P = FreeModule(M.algebra, gens)
    return P, P.map_to(M, vecs)


# --------------------------------------------------------------------------
# submodules, quotients, kernels, images


def subrepresentation(M: Representation, subs: Sequence[Subspace]) -> tuple[Representation, Morphism]:
    """Submodule spanned by arrow-closed subspaces, with its inclusion."""
    F, Q = M.field, M.algebra.quiver
    mats = []
    for a in range(len(Q.arrows)):
        s, t = Q.src[a], Q.tgt[a]
        img = F.matmul(M.mats[a], subs[s].basis)
        mats.append(np.ascontiguousarray(subs[t].coords(img)) if subs[t].dim else F.zeros(0, subs[s].dim))
    S = Representation(M.algebra, [s.dim for s in subs], mats, check=False)
    return S, Morphism(S, M, [s.basis for s in subs], check=False)


def quotient(M: Representation, subs: Sequence[Subspace]) -> tuple[Representation, Morphism]:
    """Quotient by arrow-closed subspaces, with the projection."""
    F, Q = M.field, M.algebra.quiver
    projs, keeps = [], []
    for w, s in enumerate(subs):
        p, k = quotient_projection(F, s, M.dims[w])
        projs.append(p)
        keeps.append(k)
    mats = []
    for a in range(len(Q.arrows)):
        s, t = Q.src[a], Q.tgt[a]
        mats.append(F.matmul(projs[t], np.ascontiguousarray(M.mats[a][:, keeps[s]])))
    Qm = Representation(M.algebra, [len(k) for k in keeps], mats, check=False)
    return Qm, Morphism(M, Qm, projs, check=False)


def in_subspace(F: Field, sub: Subspace, vectors: np.ndarray) -> bool:
    """Whether every column lies in ``sub`` (uses the identity block at ``sub.rows``)."""
    if vectors.shape[1] == 0:
        return True
    if sub.dim == 0:
        return F.is_zero(vectors)
    return np.array_equal(F.matmul(sub.basis, vectors[list(sub.rows), :]), vectors)


def closure(M: Representation, subs: Sequence[Subspace]) -> list[Subspace]:
    """Smallest arrow-closed subspaces containing the given ones."""
    F, Q = M.field, M.algebra.quiver
    out_arrows: list[list[int]] = [[] for _ in M.dims]
    for a in range(len(Q.arrows)):
        if M.dims[Q.tgt[a]]:
            out_arrows[Q.src[a]].append(a)
    cur = list(subs)
    todo = [w for w, s in enumerate(cur) if s.dim]
    while todo:
        s = todo.pop()
        for a in out_arrows[s]:
            t = Q.tgt[a]
            img = F.matmul(M.mats[a], cur[s].basis)
            if not in_subspace(F, cur[t], img):
                cur[t] = span(F, np.concatenate([cur[t].basis, img], axis=1))
                if t not in todo:
                    todo.append(t)
    return cur


def submodule_generated(M: Representation, vectors: Sequence[np.ndarray]) -> list[Subspace]:
    """Arrow closure of the given per-vertex column sets."""
    F = M.field
    return closure(M, [span(F, v) if v.shape[1] else Subspace(F.zeros(M.dims[w], 0), ())
                       for w, v in enumerate(vectors)])


def image_subspaces(f: Morphism) -> list[Subspace]:
    return [span(f.field, m) if m.shape[0] else Subspace(f.field.zeros(0, 0), ()) for m in f.maps]


def kernel_subspaces(f: Morphism) -> list[Subspace]:
    return [kernel(f.field, m) if m.shape[1] else Subspace(f.field.zeros(0, 0), ()) for m in f.maps]


@dataclass
class Factorization:
    kernel: Representation
    inclusion: Morphism
    image: Representation
    image_inclusion: Morphism
    cokernel: Representation
    projection: Morphism


def factor(f: Morphism) -> Factorization:
    K, inc = subrepresentation(f.source, kernel_subspaces(f))
    imsubs = image_subspaces(f)
    I, iinc = subrepresentation(f.target, imsubs)
    C, proj = quotient(f.target, imsubs)
    return Factorization(K, inc, I, iinc, C, proj)


def kernel_module(f: Morphism) -> tuple[Representation, Morphism]:
    return subrepresentation(f.source, kernel_subspaces(f))


def cokernel_module(f: Morphism) -> tuple[Representation, Morphism]:
    return quotient(f.target, image_subspaces(f))


def zero_module(A: BoundQuiverAlgebra) -> Representation:
    F, Q = A.field, A.quiver
    return Representation(A, [0] * Q.n_vertices, [F.zeros(0, 0) for _ in Q.arrows], check=False)


# --------------------------------------------------------------------------
# standard modules, sums and duals


def simple_at(A: BoundQuiverAlgebra, i: int) -> Representation:
    dims = [1 if w == i else 0 for w in range(A.n_vertices)]
    return Representation(A, dims, [None] * len(A.quiver.arrows), check=False)


def projective_at(A: BoundQuiverAlgebra, i: int) -> Representation:
    return FreeModule(A, [i]).rep


def injective_at(A: BoundQuiverAlgebra, i: int) -> Representation:
    return dual(projective_at(A.opposite, i))


def simple_module(A: BoundQuiverAlgebra, v) -> Representation:
    """Simple module at the vertex with id ``v``."""
    return simple_at(A, A.quiver.vertex(v))


def projective_module(A: BoundQuiverAlgebra, v) -> Representation:
    return projective_at(A, A.quiver.vertex(v))


def injective_module(A: BoundQuiverAlgebra, v) -> Representation:
    return injective_at(A, A.quiver.vertex(v))


def standard_module(A: BoundQuiverAlgebra, kind: str, v) -> Representation:
    kinds = {"simple": simple_module, "projective": projective_module, "injective": injective_module,
             "S": simple_module, "P": projective_module, "I": injective_module}
    if kind not in kinds:
        raise ValueError(f"unknown module kind {kind!r}")
    return kinds[kind](A, v)


def dual(M: Representation) -> Representation:
    """``Hom_k(M, k)`` as a module over the opposite algebra."""
    return Representation(M.algebra.opposite, M.dims, [np.ascontiguousarray(m.T) for m in M.mats],
                          check=False)


def dual_morphism(f: Morphism) -> Morphism:
    return Morphism(dual(f.target), dual(f.source), [np.ascontiguousarray(m.T) for m in f.maps],
                    check=False)


def direct_sum(mods: Sequence[Representation], algebra: BoundQuiverAlgebra | None = None
               ) -> tuple[Representation, list[Morphism], list[Morphism]]:
    """Sum with its injections and projections."""
    if not mods:
        if algebra is None:
            raise ValueError("empty direct sum needs the algebra")
        Z = zero_module(algebra)
        return Z, [], []
    A = mods[0].algebra
    F, Q = A.field, A.quiver
    dims = [sum(m.dims[w] for m in mods) for w in range(A.n_vertices)]
    mats = [block_diag(F, [m.mats[a] for m in mods]) for a in range(len(Q.arrows))]
    S = Representation(A, dims, mats, check=False)
    incs, projs = [], []
    off = [0] * A.n_vertices
    for m in mods:
        imaps, pmaps = [], []
        for w in range(A.n_vertices):
            E = F.zeros(dims[w], m.dims[w])
            for i in range(m.dims[w]):
                E[off[w] + i, i] = F.one
            imaps.append(E)
            pmaps.append(np.ascontiguousarray(E.T))
            off[w] += m.dims[w]
        incs.append(Morphism(m, S, imaps, check=False))
        projs.append(Morphism(S, m, pmaps, check=False))
    return S, incs, projs


def direct_sum_module(mods: Sequence[Representation], algebra: BoundQuiverAlgebra | None = None) -> Representation:
    return direct_sum(mods, algebra)[0]


def power(M: Representation, n: int) -> Representation:
    return direct_sum_module([M] * n, M.algebra)


def restrict_morphism(f: Morphism, source_incl: Morphism) -> Morphism:
    return f.after(source_incl)


# --------------------------------------------------------------------------
# hom spaces


def hom_basis(M: Representation, N: Representation) -> list[Morphism]:
    """Basis of ``Hom(M, N)`` computed from a projective presentation of ``M``."""
    if M.algebra is not N.algebra:
        raise AlgebraMismatch("modules over different algebras")
    F = M.field
    A = M.algebra
    if M.dim == 0 or N.dim == 0:
        return []
    P, pi = projective_cover(M)
    gens = P.gens
    col_off, U = [], 0
    for g in gens:
        col_off.append(U)
        U += N.dims[g]
    if U == 0:
        return []
    blocks = []
    for w in range(A.n_vertices):
        if N.dims[w] == 0 or P.rep.dims[w] == 0:
            continue
        K = kernel(F, pi.maps[w]).basis if M.dims[w] else F.eye(P.rep.dims[w])
        m = K.shape[1]
        if m == 0:
            continue
        C = F.zeros(m * N.dims[w], U).reshape(m, N.dims[w], U)
        for r, (k, u) in enumerate(P.layout[w]):
            coeff = K[r, :]
            nz = np.flatnonzero(coeff != 0)
            if nz.size == 0:
                continue
            Nu = N.path_matrix(u)
            g = gens[k]
            sl = slice(col_off[k], col_off[k] + N.dims[g])
            C[nz, :, sl] = F.reduce(C[nz, :, sl] + coeff[nz, None, None] * Nu[None, :, :])
        blocks.append(C.reshape(m * N.dims[w], U))
    if blocks:
        sol = kernel(F, np.ascontiguousarray(np.concatenate(blocks, axis=0))).basis
    else:
        sol = F.eye(U)
    if sol.shape[1] == 0:
        return []
    J = sol.shape[1]
    per_vertex = []
    for w in range(A.n_vertices):
        if M.dims[w] == 0 or N.dims[w] == 0:
            per_vertex.append(None)
            continue
        # column r of phi_w over all solutions: N(u) applied to generator k's image
        cols = []
        for k, u in P.layout[w]:
            g = gens[k]
            cols.append(F.matmul(N.path_matrix(u), sol[col_off[k]:col_off[k] + N.dims[g], :]))
        phi = np.stack(cols, axis=0)                       # (P_w, N_w, J)
        flat = np.ascontiguousarray(phi.transpose(2, 1, 0).reshape(J * N.dims[w], len(cols)))
        f = F.matmul(flat, F.right_inverse(pi.maps[w]))   # (J * N_w, M_w)
        per_vertex.append(f.reshape(J, N.dims[w], M.dims[w]))
    out = []
    for j in range(J):
        maps = [F.zeros(N.dims[w], M.dims[w]) if per_vertex[w] is None else np.ascontiguousarray(per_vertex[w][j])
                for w in range(A.n_vertices)]
        out.append(Morphism(M, N, maps, check=False))
    return out


def hom_basis_naive(M: Representation, N: Representation) -> list[Morphism]:
    """Basis of ``Hom(M, N)`` from the full commuting-square linear system."""
    if M.algebra is not N.algebra:
        raise AlgebraMismatch("modules over different algebras")
    F, Q = M.field, M.algebra.quiver
    nv = Q.n_vertices
    off, U = [], 0
    for w in range(nv):
        off.append(U)
        U += N.dims[w] * M.dims[w]
    if U == 0:
        return []
    rows = []
    for a in range(len(Q.arrows)):
        s, t = Q.src[a], Q.tgt[a]
        ns, ms, nt, mt = N.dims[s], M.dims[s], N.dims[t], M.dims[t]
        if nt == 0 or ms == 0:
            continue
        # row-major vec: vec(X Y) = (X kron I) vec(Y) and vec(Y Z) = (I kron Z^T) vec(Y)
        E = F.zeros(nt * ms, U)
        if ns:
            E[:, off[s]:off[s] + ns * ms] = np.kron(N.mats[a], F.eye(ms))
        if mt:
            E[:, off[t]:off[t] + nt * mt] = F.reduce(E[:, off[t]:off[t] + nt * mt]
                                                     - np.kron(F.eye(nt), M.mats[a].T))
        rows.append(F.reduce(E))
    sol = kernel(F, np.concatenate(rows, axis=0)).basis if rows else F.eye(U)
    out = []
    for j in range(sol.shape[1]):
        maps = [np.ascontiguousarray(sol[off[w]:off[w] + N.dims[w] * M.dims[w], j].reshape(N.dims[w], M.dims[w]))
                for w in range(nv)]
        out.append(Morphism(M, N, maps, check=False))
    return out


def hom_dimension(M: Representation, N: Representation) -> int:
    return len(hom_basis(M, N))


# --------------------------------------------------------------------------
# series


def radical_series(M: Representation) -> list[list[Subspace]]:
    """``[M, rad M, rad^2 M, ..., 0]`` as arrow-closed subspaces of ``M``."""
    F, Q = M.field, M.algebra.quiver
    nv = len(M.dims)
    cur = [Subspace(F.eye(d), tuple(range(d))) for d in M.dims]
    series = [cur]
    while sum(s.dim for s in cur):
        nxt = []
        for w in range(nv):
            imgs = [F.matmul(M.mats[a], cur[Q.src[a]].basis) for a in range(len(Q.arrows))
                    if Q.tgt[a] == w and cur[Q.src[a]].dim]
            if imgs and M.dims[w]:
                nxt.append(span(F, np.concatenate(imgs, axis=1)))
            else:
                nxt.append(Subspace(F.zeros(M.dims[w], 0), ()))
        cur = nxt
        series.append(cur)
    return series


def radical_layers(M: Representation) -> list[tuple[int, ...]]:
    """Dimension vectors of the semisimple layers ``rad^i M / rad^(i+1) M``."""
    ser = radical_series(M)
    return [tuple(a.dim - b.dim for a, b in zip(ser[i], ser[i + 1])) for i in range(len(ser) - 1)]


def module_loewy_length(M: Representation) -> int:
    return len(radical_series(M)) - 1


def radical(M: Representation) -> tuple[Representation, Morphism]:
    return subrepresentation(M, radical_subspaces(M))


def top(M: Representation) -> tuple[Representation, Morphism]:
    return quotient(M, radical_subspaces(M))


def socle_subspaces(M: Representation) -> list[Subspace]:
    F, Q = M.field, M.algebra.quiver
    out = []
    for w in range(len(M.dims)):
        outs = [M.mats[a] for a in range(len(Q.arrows)) if Q.src[a] == w and M.mats[a].shape[0]]
        if outs and M.dims[w]:
            out.append(kernel(F, np.concatenate(outs, axis=0)))
        else:
            out.append(Subspace(F.eye(M.dims[w]), tuple(range(M.dims[w]))))
    return out


def socle(M: Representation) -> tuple[Representation, Morphism]:
    return subrepresentation(M, socle_subspaces(M))


def composition_factors(M: Representation) -> tuple[int, ...]:
    """Multiplicity of each simple as a composition factor (the dimension vector)."""
    return tuple(sum(layer[w] for layer in radical_layers(M)) for w in range(len(M.dims)))


# --------------------------------------------------------------------------
# random modules


def random_module(A: BoundQuiverAlgebra, rng: np.random.Generator, max_dim: int = 8,
                  max_gens: int = 2, relations: int = 2) -> Representation:
    """Quotient of a random free module by a random submodule, truncated to ``max_dim``."""
    F = A.field
    nv = A.n_vertices
    r = int(rng.integers(1, max_gens + 1))
    gens = sorted(int(g) for g in rng.integers(0, nv, size=r))
    P = FreeModule(A, gens).rep
    vecs = []
    n_rel = int(rng.integers(0, relations + 1))
    picks = rng.integers(0, nv, size=n_rel)
    for w in range(nv):
        k = int(np.sum(picks == w))
        vecs.append(F.random_matrix(rng, P.dims[w], k) if P.dims[w] else F.zeros(0, 0))
    M, _ = quotient(P, submodule_generated(P, vecs))
    if M.dim > max_dim:
        ser = radical_series(M)
        for layer in reversed(ser):
            if M.dim - sum(s.dim for s in layer) <= max_dim:
                M, _ = quotient(M, layer)
                break
    return M


def module_from_matrices(A: BoundQuiverAlgebra, dims: Sequence[int], mats: dict[str, Sequence] | Sequence
                         ) -> Representation:
    """Convenience constructor taking plain nested lists keyed by arrow name."""
    F, Q = A.field, A.quiver
    out = []
    for a, (name, _, _) in enumerate(Q.arrows):
        data = mats.get(name) if isinstance(mats, dict) else mats[a]
        shape = (dims[Q.tgt[a]], dims[Q.src[a]])
        if data is None:
            out.append(F.zeros(*shape))
        else:
            arr = F.array(data)
            if arr.size == 0:
                arr = F.zeros(*shape)
            out.append(arr.reshape(shape))
    return Representation(A, dims, out)
