"""Projective resolutions, syzygies and the homological dimensions built on them."""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

import numpy as np

from .algebra import BoundQuiverAlgebra
from .decompose import IsoRegistry, is_isomorphic
from .errors import CapExceeded, NotExact, NotSplitSummand
from .modules import (FreeModule, Morphism, Representation, direct_sum, dual, injective_at,
                      is_projective, kernel_subspaces, projective_at, projective_cover, simple_at,
                      socle_subspaces, subrepresentation, top_dims)

DEFAULT_CUTOFF = 32
PERIODIC_DEPTH = 8     # syzygies searched for periodicity over selfinjective algebras
ISO_DIM_CAP = 96       # largest syzygy compared for periodicity


@dataclass(frozen=True)
class Beyond:
    """A dimension not shown to be finite within ``cutoff`` steps."""

    cutoff: int
    certificate: str | None = None  # "selfinjective", "periodic(a,b)" or None

    def __str__(self):
        return f">{self.cutoff}"

    @property
    def infinite(self) -> bool:
        return self.certificate is not None


Dimension = "int | Beyond"


def dim_value(x) -> int | str:
    """JSON form of a dimension."""
    return str(x) if isinstance(x, Beyond) else int(x)


def dim_max(values) -> "int | Beyond":
    values = list(values)
    beyond = [v for v in values if isinstance(v, Beyond)]
    if beyond:
        cert = next((b.certificate for b in beyond if b.certificate), None)
        return Beyond(beyond[0].cutoff, cert)
    return max(values) if values else -1


# --------------------------------------------------------------------------
# syzygies


def syzygy_step(M: Representation) -> tuple[Representation, Morphism, FreeModule, Morphism]:
    """``(Omega M, inclusion into P, P, cover P -> M)``."""
    P, pi = projective_cover(M)
    K, inc = subrepresentation(P.rep, kernel_subspaces(pi))
    return K, inc, P, pi


def syzygy(M: Representation, n: int = 1) -> Representation:
    if n < 0:
        raise ValueError("n must be nonnegative")
    for _ in range(n):
        if M.dim == 0:
            break
        M = syzygy_step(M)[0]
    return M


def cosyzygy(M: Representation, n: int = 1) -> Representation:
    """Cokernel of iterated injective envelopes, via duality over the opposite algebra."""
    return dual(syzygy(dual(M), n))


@dataclass
class MinimalResolution:
    module: Representation
    terms: list[FreeModule]
    differentials: list[Morphism]  # d_0: P_0 -> M, d_i: P_i -> P_{i-1}
    syzygies: list[Representation]
    truncated: bool
    cutoff: int

    @property
    def multiplicities(self) -> list[tuple[int, ...]]:
        return [t.multiplicities for t in self.terms]


def minimal_resolution(M: Representation, length: int) -> MinimalResolution:
    """Terms ``P_0 .. P_length`` (fewer when the resolution stops)."""
    terms, diffs, syz = [], [], [M]
    prev_inc = None
    X = M
    for i in range(length + 1):
        if X.dim == 0:
            break
        K, inc, P, pi = syzygy_step(X)
        terms.append(P)
        diffs.append(pi if prev_inc is None else prev_inc.after(pi))
        syz.append(K)
        prev_inc = inc
        X = K
    truncated = X.dim != 0
    return MinimalResolution(M, terms, diffs, syz, truncated, length)


# --------------------------------------------------------------------------
# dimensions


def is_selfinjective(A: BoundQuiverAlgebra) -> bool:
    """Every indecomposable projective is injective.

    ``P(i)`` is injective iff its socle is simple, say ``S(j)``, and ``P(i)``
    has the dimension vector of ``I(j)``: then the envelope of the socle embeds
    ``P(i)`` into ``I(j)`` bijectively.
    """
    hit = A.cache.get("selfinjective")
    if hit is not None:
        return hit
    ok = True
    for i in range(A.n_vertices):
        P = projective_at(A, i)
        soc = [s.dim for s in socle_subspaces(P)]
        if sum(soc) != 1:
            ok = False
            break
        j = soc.index(1)
        if injective_at(A, j).dims != P.dims:
            ok = False
            break
    A.cache["selfinjective"] = ok
    return ok


def proj_dimension(M: Representation, cutoff: int = DEFAULT_CUTOFF, *, periodic_depth: int = PERIODIC_DEPTH,
                   iso_cap: int = ISO_DIM_CAP) -> "int | Beyond":
    """Least ``n`` with ``Omega^n M`` projective, or :class:`Beyond` the cutoff.

    Periodicity of syzygies (``Omega^a M`` isomorphic to ``Omega^b M``) and
    selfinjectivity of the algebra certify infinite dimension.
    """
    if M.dim == 0:
        return -1
    A = M.algebra
    selfinj = is_selfinjective(A)
    if not selfinj and A.field.is_prime:
        return _pd_by_summands(M, cutoff)
    seen: list[Representation] = []
    X = M
    steps = cutoff if not selfinj else min(cutoff, periodic_depth)
    for n in range(steps + 1):
        if X.dim == 0:
            return n - 1
        if is_projective(X):
            return n
        if A.field.is_prime and X.dim <= iso_cap:
            for a, Y in enumerate(seen):
                if Y.dims == X.dims and is_isomorphic(Y, X):
                    return Beyond(cutoff, f"periodic({a},{n})")
        seen.append(X)
        if n < steps:
            X = syzygy(X)
    if selfinj:
        return Beyond(cutoff, "selfinjective")
    return Beyond(cutoff)


def _pd_by_summands(M: Representation, cutoff: int) -> "int | Beyond":
    # Omega commutes with sums, so only the set of non-projective summand
    # classes matters; it stays small where the syzygies themselves blow up
    reg = M.algebra.cache.setdefault("pd_registry", IsoRegistry())

    def nonprojective(X):
        return frozenset(c for c in reg.classes_of(X) if not reg.is_projective_class(c)) if X.dim else frozenset()

    current = nonprojective(M)
    if not current:
        return 0
    seen = [current]
    for n in range(1, cutoff + 1):
        nxt = frozenset().union(*(nonprojective(syzygy(reg.reps[c])) for c in sorted(current)))
        if not nxt:
            return n
        if nxt in seen:
            return Beyond(cutoff, f"periodic({seen.index(nxt)},{n})")
        seen.append(nxt)
        current = nxt
    return Beyond(cutoff)


def simple_proj_dimension(A: BoundQuiverAlgebra, i: int, cutoff: int = DEFAULT_CUTOFF) -> "int | Beyond":
    cache = A.cache.setdefault("pd_simple", {})
    key = (i, cutoff)
    if key not in cache:
        cache[key] = proj_dimension(simple_at(A, i), cutoff)
    return cache[key]


def global_dimension(A: BoundQuiverAlgebra, cutoff: int = DEFAULT_CUTOFF) -> "int | Beyond":
    return dim_max(simple_proj_dimension(A, i, cutoff) for i in range(A.n_vertices))


def inj_dimension(M: Representation, cutoff: int = DEFAULT_CUTOFF) -> "int | Beyond":
    return proj_dimension(dual(M), cutoff)


def injective_dimensions(A: BoundQuiverAlgebra, cutoff: int = DEFAULT_CUTOFF) -> tuple:
    """``(right, left)`` selfinjective dimensions of the algebra.

    The right regular module is the sum of the ``P(i)``; its injective dimension
    is a projective dimension over the opposite algebra after dualizing.  The
    left regular module has dual the sum of the ``I(i)``.
    """
    right = dim_max(inj_dimension(projective_at(A, i), cutoff) for i in range(A.n_vertices))
    left = dim_max(proj_dimension(injective_at(A, i), cutoff) for i in range(A.n_vertices))
    return right, left


def self_injectivity_and_gorenstein(A: BoundQuiverAlgebra, cutoff: int = DEFAULT_CUTOFF) -> dict:
    right, left = injective_dimensions(A, cutoff)
    return {"selfinjective": is_selfinjective(A), "right_id": right, "left_id": left}


# --------------------------------------------------------------------------
# lifting and exact sequences


def lift_projective(h: Morphism, e: Morphism) -> Morphism:
    """``s`` with ``e o s = h`` for projective ``h.source`` and epimorphism ``e``."""
    F = h.field
    P = h.source
    Pf, pi = projective_cover(P)
    if Pf.rep.dims != P.dims:
        raise NotSplitSummand("lifting source is not projective")
    images = []
    for k, v in enumerate(Pf.gens):
        y = F.matmul(h.maps[v], F.matmul(pi.maps[v], Pf.generator_vector(k)))
        images.append(F.solve(e.maps[v], y))
    s_free = Pf.map_to(e.source, images)
    inv = [F.inverse(m) if m.shape[0] else m for m in pi.maps]
    return Morphism(P, e.source, [F.matmul(a, b) for a, b in zip(s_free.maps, inv)], check=False)


def _restrict_codomain(f: Morphism, subs, sub_module: Representation) -> Morphism:
    """Corestrict ``f`` to a submodule given by identity-block subspaces."""
    return Morphism(f.source, sub_module, [s.coords(m) if s.dim else m[:0, :] for s, m in zip(subs, f.maps)],
                    check=False)


def check_short_exact(f: Morphism, g: Morphism) -> None:
    F = f.field
    if f.target is not g.source and not f.target.same_as(g.source):
        raise NotExact("maps are not composable")
    if not f.is_injective() or not g.is_surjective() or not g.after(f).is_zero():
        raise NotExact("sequence is not short exact")
    if any(a + c != b for a, b, c in zip(f.source.dims, f.target.dims, g.target.dims)):
        raise NotExact("sequence is not exact in the middle")


@dataclass
class HorseshoeResolution:
    terms: list[FreeModule]
    differentials: list[Morphism]  # d_0 into B, then d_i: Q_i -> Q_{i-1}
    left_terms: list[tuple[int, ...]]
    right_terms: list[tuple[int, ...]]

    @property
    def multiplicities(self) -> list[tuple[int, ...]]:
        return [t.multiplicities for t in self.terms]


def horseshoe(f: Morphism, g: Morphism, depth: int) -> HorseshoeResolution:
    """Resolution of the middle term of ``0 -> A -f-> B -g-> C -> 0``.

    Term ``i`` is the sum of the minimal resolution terms of ``A`` and ``C``.
    """
    check_short_exact(f, g)
    terms, diffs, lt, rt = [], [], [], []
    prev_inc = None
    for _ in range(depth + 1):
        A_, B, C = f.source, f.target, g.target
        if B.dim == 0:
            break
        PA, piA = projective_cover(A_)
        PC, piC = projective_cover(C)
        F = B.field
        lifts = []
        for k, v in enumerate(PC.gens):
            c = F.matmul(piC.maps[v], PC.generator_vector(k))
            lifts.append(F.solve(g.maps[v], c))
        imgsA = []
        for k, v in enumerate(PA.gens):
            a = F.matmul(piA.maps[v], PA.generator_vector(k))
            imgsA.append(F.matmul(f.maps[v], a))
        Q = FreeModule(B.algebra, PA.gens + PC.gens)
        eps = Q.map_to(B, imgsA + lifts)
        terms.append(Q)
        lt.append(PA.multiplicities)
        rt.append(PC.multiplicities)
        diffs.append(eps if prev_inc is None else prev_inc.after(eps))
        # next level: 0 -> ker piA -> ker eps -> ker piC -> 0
        ksubs = kernel_subspaces(eps)
        KB, incB = subrepresentation(Q.rep, ksubs)
        asubs = kernel_subspaces(piA)
        KA, incA = subrepresentation(PA.rep, asubs)
        csubs = kernel_subspaces(piC)
        KC, incC = subrepresentation(PC.rep, csubs)
        nA = PA.rep.dims
        into_Q = Morphism(KA, Q.rep, [np.concatenate([m, F.zeros(Q.rep.dims[w] - nA[w], m.shape[1])], axis=0)
                                      for w, m in enumerate(incA.maps)], check=False)
        f = _restrict_codomain(into_Q, ksubs, KB)
        to_PC = Morphism(KB, PC.rep, [np.ascontiguousarray(m[nA[w]:, :]) for w, m in enumerate(incB.maps)],
                         check=False)
        g = _restrict_codomain(to_PC, csubs, KC)
        prev_inc = incB
    return HorseshoeResolution(terms, diffs, lt, rt)


@dataclass
class ExactChain:
    """``0 -> M_n -> ... -> M_0 -> X -> 0`` as the augmentation and the maps ``d_i``."""

    augmentation: Morphism          # M_0 -> X
    maps: list[Morphism] = dc_field(default_factory=list)  # d_i: M_i -> M_{i-1}, i >= 1

    @property
    def terms(self) -> list[Representation]:
        return [self.augmentation.source] + [d.source for d in self.maps]

    @property
    def end(self) -> Representation:
        return self.augmentation.target

    def is_exact(self) -> bool:
        seq = [self.augmentation] + list(self.maps)
        if not self.augmentation.is_surjective():
            return False
        for i, d in enumerate(seq):
            nxt = seq[i + 1] if i + 1 < len(seq) else None
            ker = tuple(a - b for a, b in zip(d.source.dims, d.ranks()))
            img = nxt.ranks() if nxt is not None else tuple(0 for _ in ker)
            if ker != img:
                return False
            if nxt is not None and not d.after(nxt).is_zero():
                return False
        return True


def strip_projective(chain: ExactChain, split_inc_P: Morphism, split_proj_M: Morphism,
                     split_inc_M: Morphism | None = None, split_proj_P: Morphism | None = None,
                     cancel: bool = False) -> ExactChain:
    """Move a projective summand ``P`` of the end term ``M (+) P`` into degree one.

    With ``cancel`` the summand is instead split off ``M_0``: the new degree-zero
    term is the kernel of ``M_0 -> X -> P``.
    """
    if not chain.is_exact():
        raise NotExact("input chain is not exact")
    F = chain.augmentation.field
    X = chain.end
    P = split_inc_P.source
    M = split_proj_M.target
    if not split_proj_M.after(split_inc_P).is_zero():
        raise NotSplitSummand("splitting maps are inconsistent")
    if split_proj_P is not None and split_inc_M is not None:
        ident = split_inc_M.after(split_proj_M) + split_inc_P.after(split_proj_P)
        if not all(np.array_equal(m, F.eye(m.shape[0])) for m in ident.maps):
            raise NotSplitSummand("splitting maps do not recompose the identity")
    if P.dim == 0:
        return chain
    if not is_projective(P):
        raise NotSplitSummand("designated summand is not projective")
    d0 = chain.augmentation
    new_aug = split_proj_M.after(d0)
    if cancel:
        if split_proj_P is None:
            raise NotSplitSummand("cancellation needs the projection onto P")
        subs = kernel_subspaces(split_proj_P.after(d0))
        M0p, inc = subrepresentation(d0.source, subs)
        maps = list(chain.maps)
        if maps:
            maps[0] = _restrict_codomain(maps[0], subs, M0p)
        return ExactChain(new_aug.after(inc), maps)
    s = lift_projective(split_inc_P, d0)
    if chain.maps:
        d1 = chain.maps[0]
        S, incs, projs = direct_sum([d1.source, P])
        new_d1 = d1.after(projs[0]) + s.after(projs[1])
        if len(chain.maps) > 1:
            new_d2 = incs[0].after(chain.maps[1])
            rest = [new_d2] + list(chain.maps[2:])
        else:
            rest = []
        return ExactChain(new_aug, [new_d1] + rest)
    return ExactChain(new_aug, [s])


# --------------------------------------------------------------------------
# syzygy-finiteness scan


@dataclass
class SyzygyCatalog:
    depth: int
    catalogs: list[dict[int, int]]       # depth -> {class id: multiplicity}
    stable_depth: int | None
    registry: IsoRegistry
    cycle: tuple[int, int] | None = None  # (i, j) with catalog i equal to catalog j as sets

    def classes(self, k: int) -> list[int]:
        return sorted(self.catalogs[k])

    def tail(self, n: int) -> set[int]:
        """Classes met at depth ``n`` or later (exact once a cycle is found)."""
        out: set[int] = set()
        for c in self.catalogs[n:]:
            out |= set(c)
        return out

    def as_json(self) -> dict:
        return {
            "depth": self.depth,
            "stable_depth": self.stable_depth,
            "catalog_sizes": [len(c) for c in self.catalogs],
            "catalog_dims": [[list(self.registry.reps[c].dims) for c in sorted(cat)] for cat in self.catalogs],
            "verdict": ("stabilized (evidence, not proof)" if self.stable_depth is not None
                        else "no stabilization within depth"),
        }


def syzygy_scan(A: BoundQuiverAlgebra, seeds: Sequence[Representation] | None = None, depth: int = 8,
                dim_cap: int = 256, seed: int = 0, registry: IsoRegistry | None = None) -> SyzygyCatalog:
    """Catalog of indecomposable non-projective summands of ``Omega^k`` of the seeds.

    The catalog at depth ``k+1`` depends only on the set at depth ``k``, so once
    a set repeats the sequence is periodic and every tail union is known.  The
    stable depth is the least ``n`` whose tail union equals the next one, that
    is, the least ``n`` after which no class disappears for good.
    """
    reg = registry if registry is not None else IsoRegistry(seed)
    if seeds is None:
        seeds = [simple_at(A, i) for i in range(A.n_vertices)]
    cat: dict[int, int] = {}
    for X in seeds:
        if X.dim > dim_cap:
            raise CapExceeded(f"seed of dimension {X.dim} exceeds cap {dim_cap}")
        for cid, k in reg.classes_of(X).items():
            if not reg.is_projective_class(cid):
                cat[cid] = cat.get(cid, 0) + k
    catalogs = [cat]
    cycle = None
    for d in range(1, depth + 1):
        nxt: dict[int, int] = {}
        for cid in sorted(catalogs[-1]):
            Y = syzygy(reg.reps[cid])
            if Y.dim > dim_cap:
                raise CapExceeded(f"syzygy of dimension {Y.dim} exceeds cap {dim_cap}")
            for c2, k in reg.classes_of(Y).items():
                if not reg.is_projective_class(c2):
                    nxt[c2] = nxt.get(c2, 0) + k
        catalogs.append(nxt)
        hit = next((i for i in range(d) if set(catalogs[i]) == set(nxt)), None)
        if hit is not None:
            cycle = (hit, d)
            break
    stable = None
    if cycle is not None:
        result = SyzygyCatalog(depth, catalogs, None, reg, cycle)
        stable = next(n for n in range(cycle[1]) if result.tail(n) == result.tail(n + 1))
        result.stable_depth = stable
        return result
    return SyzygyCatalog(depth, catalogs, None, reg, None)
