"""Extension brackets: filtrations with layers in prescribed additive classes.

A module lies in ``[T_1] . [T_2] . ... . [T_k]`` when it is a direct summand
of a module with a chain of submodules ``0 = X_0 <= X_1 <= ... <= X_k`` whose
layers ``X_i / X_(i-1)`` lie in ``add T_i``.  The direct search only considers
chains inside the module itself; the summand search also tries ``M + C`` for
small padding modules ``C``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .algebra import BoundQuiverAlgebra
from .decompose import IsoRegistry
from .errors import CapExceeded, NotExact
from .lattice import (ModuleUniverse, contains_sub, relative_quotient, submodule_key, submodule_lattice_oracle,
                      submodules)
from .modules import (Morphism, Representation, Subspace, closure, cokernel_module, direct_sum, direct_sum_module,
                      dual, dual_morphism, image_subspaces, injective_at, kernel, kernel_subspaces, projective_at,
                      projective_cover, quotient, regular_module, simple_at, span, subrepresentation, zero_module)
from .syzygy import cosyzygy, syzygy

YES, NO, UNKNOWN = "yes", "no", "unknown"


# --------------------------------------------------------------------------
# witnesses


@dataclass
class FiltrationWitness:
    """A chain ``X_1 <= ... <= X_k = ambient`` with one generator per layer.

    ``ambient`` is the target itself, or the target plus ``padding``.
    """

    ambient: Representation
    chain: list[list[Subspace]]
    generators: list[Representation]
    target: Representation
    padding: Representation | None = None

    def layers(self) -> list[Representation]:
        F = self.ambient.field
        prev = [Subspace(F.zeros(d, 0), ()) for d in self.ambient.dims]
        out = []
        for X in self.chain:
            out.append(relative_quotient(self.ambient, X, prev))
            prev = X
        return out

    def sequences(self) -> list[tuple[Morphism, Morphism]]:
        """Short exact sequences ``0 -> X_(i-1) -> X_i -> X_i / X_(i-1) -> 0``, innermost first."""
        F = self.ambient.field
        out = []
        prev = [Subspace(F.zeros(d, 0), ()) for d in self.ambient.dims]
        for X in self.chain:
            big, _ = subrepresentation(self.ambient, X)
            inner = [span(F, b.coords(s.basis)) if b.dim else Subspace(F.zeros(0, 0), ()) for b, s in zip(X, prev)]
            small, inc = subrepresentation(big, inner)
            _, proj = quotient(big, inner)
            out.append((inc, proj))
            prev = X
        return out

    def layer_dims(self) -> list[tuple[int, ...]]:
        return [L.dims for L in self.layers()]

    def validate(self, registry: IsoRegistry | None = None) -> bool:
        """Re-check the witness from scratch: nesting, closure, layer classes and the summand relation."""
        reg = registry if registry is not None else IsoRegistry()
        M, F = self.ambient, self.ambient.field
        if len(self.chain) != len(self.generators) or not self.chain:
            return False
        prev = [Subspace(F.zeros(d, 0), ()) for d in M.dims]
        for X in self.chain:
            if [c.dim for c in closure(M, X)] != [x.dim for x in X]:
                return False
            if not contains_sub(F, X, prev):
                return False
            prev = X
        if [x.dim for x in self.chain[-1]] != list(M.dims):
            return False
        for L, T in zip(self.layers(), self.generators):
            if L.dim and not set(reg.classes_of(L)) <= (set(reg.classes_of(T)) if T.dim else set()):
                return False
        expected = self.target if self.padding is None else direct_sum_module([self.target, self.padding])
        if expected.dims != M.dims:
            return False
        return M.dim == 0 or reg.classes_of(expected) == reg.classes_of(M)

    def as_json(self) -> dict:
        return {"ambient_dims": list(self.ambient.dims),
                "padding_dims": list(self.padding.dims) if self.padding is not None else None,
                "layers": [list(d) for d in self.layer_dims()]}


@dataclass
class BracketResult:
    answer: str
    witness: FiltrationWitness | None = None
    padded: bool = False

    def as_json(self) -> dict:
        return {"answer": self.answer, "padded": self.padded,
                "witness": self.witness.as_json() if self.witness else None}


# --------------------------------------------------------------------------
# search


def _achievable(part_dims: Sequence[tuple[int, ...]], bound: tuple[int, ...]) -> set[tuple[int, ...]]:
    """Dimension vectors of sums of the given parts that fit under ``bound``."""
    zero = tuple(0 for _ in bound)
    seen = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for v in frontier:
            for d in part_dims:
                w = tuple(a + b for a, b in zip(v, d))
                if w not in seen and all(x <= y for x, y in zip(w, bound)):
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return seen


def _sumset(a: set, b: set, bound) -> set:
    return {tuple(x + y for x, y in zip(u, v)) for u in a for v in b
            if all(x + y <= z for x, y, z in zip(u, v, bound))}


class BracketSearch:
    """Membership tests for filtration classes, sharing one isomorphism registry."""

    def __init__(self, registry: IsoRegistry | None = None, dim_cap: int = 12):
        self.registry = registry if registry is not None else IsoRegistry()
        self.dim_cap = dim_cap
        self._class_cache: dict[tuple, frozenset] = {}
        self._failed: set[tuple] = set()

    # -- add classes ------------------------------------------------------
    def classes(self, M: Representation) -> frozenset[int]:
        if M.dim == 0:
            return frozenset()
        k = M.key()
        hit = self._class_cache.get(k)
        if hit is None:
            hit = frozenset(self.registry.classes_of(M))
            self._class_cache[k] = hit
        return hit

    def class_key(self, M: Representation) -> tuple:
        if M.dim == 0:
            return (M.dims,)
        return (M.dims, tuple(sorted(self.registry.classes_of(M).items())))

    def in_add(self, M: Representation, T: Representation) -> bool:
        return M.dim == 0 or self.classes(M) <= self.classes(T)

    def _part_dims(self, T: Representation) -> list[tuple[int, ...]]:
        return [self.registry.reps[c].dims for c in sorted(self.classes(T))]

    # -- direct filtrations -------------------------------------------------
    def direct(self, M: Representation, levels: Sequence[Representation]) -> list[list[Subspace]] | None:
        """A chain of submodules of ``M`` with layers in ``add levels[i]``, or ``None``."""
        if M.dim > self.dim_cap:
            raise CapExceeded(f"module of dimension {M.dim} exceeds the cap {self.dim_cap}")
        reach = [None] * len(levels)
        acc = {tuple(0 for _ in M.dims)}
        for i in range(len(levels) - 1, -1, -1):
            acc = _sumset(_achievable(self._part_dims(levels[i]), M.dims), acc, M.dims)
            reach[i] = acc
        return self._direct(M, list(levels), 0, reach)

    def _direct(self, M, levels, i, reach):
        F = M.field
        full = [Subspace(F.eye(d), tuple(range(d))) for d in M.dims]
        if M.dims not in reach[i]:
            return None
        if i == len(levels) - 1:
            return [full] if self.in_add(M, levels[i]) else None
        memo = (self.class_key(M), tuple(T.key() for T in levels[i:]))
        if memo in self._failed:
            return None
        here = _achievable(self._part_dims(levels[i]), M.dims)
        for U in submodules(M):
            ud = tuple(u.dim for u in U)
            if ud not in here:
                continue
            rest = tuple(m - u for m, u in zip(M.dims, ud))
            if rest not in reach[i + 1]:
                continue
            Ur, _ = subrepresentation(M, U)
            if not self.in_add(Ur, levels[i]):
                continue
            Q, _ = quotient(M, U)
            sub = self._direct(Q, levels, i + 1, reach)
            if sub is None:
                continue
            return [U] + [_preimage(F, M, U, Y) for Y in sub]
        self._failed.add(memo)
        return None

    # -- public membership ---------------------------------------------------
    def membership(self, M: Representation, levels: Sequence[Representation], mode: str = "direct",
                   paddings: Iterable[Representation] | None = None) -> BracketResult:
        """``M`` in the product of the classes ``add levels[0] . add levels[1] ...``."""
        if mode not in ("direct", "summand"):
            raise ValueError(f"unknown mode {mode!r}")
        levels = list(levels)
        chain = self.direct(M, levels)
        if chain is not None:
            return BracketResult(YES, FiltrationWitness(M, chain, levels, M))
        if mode == "direct":
            return BracketResult(NO)
        for C in (paddings if paddings is not None else self.default_paddings(M, levels)):
            X = direct_sum_module([M, C])
            if X.dim > self.dim_cap:
                continue
            chain = self.direct(X, levels)
            if chain is not None:
                return BracketResult(YES, FiltrationWitness(X, chain, levels, M, C), padded=True)
        return BracketResult(UNKNOWN)

    def power_membership(self, M: Representation, T: Representation, n: int, mode: str = "direct",
                         paddings=None) -> BracketResult:
        """``M`` in ``[T]_n``."""
        if n < 1:
            raise ValueError("level must be at least 1")
        return self.membership(M, [T] * n, mode, paddings)

    def default_paddings(self, M: Representation, levels: Sequence[Representation], max_copies: int = 2
                         ) -> list[Representation]:
        """Small sums of projectives, injectives, simples and generator summands, smallest first."""
        A = M.algebra
        pieces: dict[tuple, Representation] = {}
        cands = [projective_at(A, i) for i in range(A.n_vertices)] + \
                [injective_at(A, i) for i in range(A.n_vertices)] + \
                [simple_at(A, i) for i in range(A.n_vertices)]
        for T in levels:
            if T.dim:
                cands += [self.registry.reps[c] for c in sorted(self.classes(T))]
        for X in cands:
            if X.dim:
                pieces.setdefault(X.key(), X)
        uniq = list(pieces.values())
        room = self.dim_cap - M.dim
        out = []
        for r in range(1, max_copies + 1):
            for combo in itertools.combinations_with_replacement(range(len(uniq)), r):
                if sum(uniq[j].dim for j in combo) <= room:
                    out.append(direct_sum_module([uniq[j] for j in combo]))
        out.sort(key=lambda C: (C.dim, C.dims))
        return out


def _preimage(F, M: Representation, U: Sequence[Subspace], Y: Sequence[Subspace]) -> list[Subspace]:
    """Preimage in ``M`` of a submodule ``Y`` of ``M / U`` (as produced by ``quotient``)."""
    out = []
    for w, (u, y) in enumerate(zip(U, Y)):
        rows = set(u.rows)
        keep = [i for i in range(M.dims[w]) if i not in rows]
        lift = F.zeros(M.dims[w], y.dim)
        if y.dim:
            lift[keep, :] = y.basis
        out.append(span(F, np.concatenate([u.basis, lift], axis=1)) if (u.dim or y.dim)
                   else Subspace(F.zeros(M.dims[w], 0), ()))
    return out


def bracket_membership(M: Representation, T: Representation, n: int, mode: str = "direct",
                       dim_cap: int = 12, registry: IsoRegistry | None = None) -> BracketResult:
    return BracketSearch(registry, dim_cap).power_membership(M, T, n, mode)


# --------------------------------------------------------------------------
# lattice oracle


class LatticeOracle:
    """Membership by walking chains in the full submodule lattice (test oracle).

    Each lattice element is stored with the set of vectors it contains, as a
    bitmask, so containment between elements is a single integer test.
    """

    def __init__(self, registry: IsoRegistry | None = None):
        self.registry = registry if registry is not None else IsoRegistry()
        self._lattices: dict[tuple, tuple] = {}
        self._classes: dict[tuple, frozenset] = {}

    def lattice(self, M: Representation):
        k = M.key()
        if k not in self._lattices:
            L = submodule_lattice_oracle(M)
            L.sort(key=lambda X: sum(x.dim for x in X))
            self._lattices[k] = (L, [tuple(x.dim for x in X) for X in L], [_vector_mask(M, X) for X in L])
        return self._lattices[k]

    def _cls(self, X: Representation) -> frozenset:
        k = X.key()
        if k not in self._classes:
            self._classes[k] = frozenset(self.registry.classes_of(X)) if X.dim else frozenset()
        return self._classes[k]

    def member(self, M: Representation, levels: Sequence[Representation]) -> bool:
        F = M.field
        L, dims, masks = self.lattice(M)
        allowed = [self._cls(T) for T in levels]
        parts = [_achievable([self.registry.reps[c].dims for c in a], M.dims) for a in allowed]
        full_i = len(L) - 1
        k = len(levels)
        memo: dict[tuple, bool] = {}

        def layer_ok(y, x, i):
            d = tuple(a - b for a, b in zip(dims[y], dims[x]))
            if d not in parts[i]:
                return False
            Q = relative_quotient(M, L[y], L[x])
            return Q.dim == 0 or self._cls(Q) <= allowed[i]

        def walk(x, i):
            key = (x, i)
            if key in memo:
                return memo[key]
            if i == k - 1:
                res = layer_ok(full_i, x, i)
            else:
                res = False
                mx = masks[x]
                for y in range(len(L)):
                    if mx & ~masks[y] == 0 and layer_ok(y, x, i) and walk(y, i + 1):
                        res = True
                        break
            memo[key] = res
            return res

        return walk(0, 0)


def _vector_mask(M: Representation, X: Sequence[Subspace]) -> int:
    """Bitmask over all vectors of ``M`` (in base-p positional code) marking those in ``X``."""
    F = M.field
    p = F.p
    offs = M.offsets
    n = M.dim
    cols = []
    for w, x in enumerate(X):
        for j in range(x.dim):
            v = [0] * n
            for r in range(M.dims[w]):
                v[offs[w] + r] = int(x.basis[r, j])
            cols.append(v)
    weights = [p ** i for i in range(n)]
    mask = 0
    for coeffs in itertools.product(range(p), repeat=len(cols)):
        vec = [0] * n
        for c, col in zip(coeffs, cols):
            if c:
                vec = [(a + c * b) % p for a, b in zip(vec, col)]
        mask |= 1 << sum(a * w for a, w in zip(vec, weights))
    return mask


# --------------------------------------------------------------------------
# exact sequences and the syzygy brackets


def _check_exact_chain(maps: Sequence[Morphism], left_zero: bool, right_zero: bool):
    """Exactness of ``0 -> ... -> 0`` given by composable maps."""
    for f, g in zip(maps, maps[1:]):
        if f.target is not g.source and not f.target.same_as(g.source):
            raise NotExact("maps are not composable")
        if not g.after(f).is_zero():
            raise NotExact("consecutive maps do not compose to zero")
        if [s.dim for s in image_subspaces(f)] != [s.dim for s in kernel_subspaces(g)]:
            raise NotExact("image and kernel differ")
    if left_zero and not maps[0].is_injective():
        raise NotExact("first map is not injective")
    if right_zero and not maps[-1].is_surjective():
        raise NotExact("last map is not surjective")


def _pullback_witness(f0: Morphism, g: Morphism) -> FiltrationWitness:
    """For ``0 -> K -> X -> C -> 0`` (maps f0, g): ``K + P`` filtered by ``Omega C`` then ``X``.

    ``E = {(x, q) : g x = pi q}`` inside ``X + P`` for the projective cover
    ``pi : P -> C``; its projection to ``X`` is onto with kernel ``Omega C``
    and its projection to ``P`` is onto with kernel ``K``.
    """
    K, X, C = f0.source, f0.target, g.target
    F, A = X.field, X.algebra
    P, pi = projective_cover(C)
    S, incs, projs = direct_sum([X, P.rep], A)
    diff = g.after(projs[0]) - pi.after(projs[1])
    E_subs = kernel_subspaces(diff)
    E, e_inc = subrepresentation(S, E_subs)
    # omega C sits in E as the pairs (0, q) with pi q = 0
    to_X = projs[0].after(e_inc)
    omega = kernel_subspaces(to_X)
    return FiltrationWitness(E, [omega, [Subspace(F.eye(d), tuple(range(d))) for d in E.dims]],
                             [syzygy(C), X], K, P.rep)


def _dual_witness(w: FiltrationWitness, target: Representation) -> FiltrationWitness:
    """Dualize a witness: annihilators reverse the chain and the order of layers."""
    D = dual(w.ambient)
    F = D.field
    chain = []
    for X in reversed(w.chain[:-1]):
        chain.append([kernel(F, np.ascontiguousarray(x.basis.T)) if x.dim
                      else Subspace(F.eye(d), tuple(range(d))) for x, d in zip(X, D.dims)])
    chain.append([Subspace(F.eye(d), tuple(range(d))) for d in D.dims])
    gens = [dual(T) for T in reversed(w.generators)]
    return FiltrationWitness(D, chain, gens, target, dual(w.padding) if w.padding is not None else None)


@dataclass
class SyzygyBracket:
    """Outcome of checking a module against the bracket built from an exact sequence."""

    direction: str
    levels: list[Representation]
    witness: FiltrationWitness
    method: str                               # "pullback", "direct" or "padded-search"
    valid: bool = False

    def as_json(self) -> dict:
        return {"direction": self.direction, "method": self.method, "valid": self.valid,
                "levels": [list(T.dims) for T in self.levels], "witness": self.witness.as_json()}


def _resolution_bracket(maps: Sequence[Morphism], search: BracketSearch) -> SyzygyBracket:
    # maps: M -> X_0 -> X_-1 -> ... -> X_-n
    M = maps[0].source
    Xs = [f.target for f in maps]
    n = len(Xs) - 1
    levels = [syzygy(Xs[n - j], n - j) for j in range(n + 1)]   # Omega^n X_-n, ..., X_0
    if n == 0:
        w = FiltrationWitness(M, [[Subspace(M.field.eye(d), tuple(range(d))) for d in M.dims]], [Xs[0]], M)
        return SyzygyBracket("resolution", levels, w, "direct")
    if n == 1:
        return SyzygyBracket("resolution", levels, _pullback_witness(maps[0], maps[1]), "pullback")
    chain = search.direct(M, levels)
    if chain is not None:
        return SyzygyBracket("resolution", levels, FiltrationWitness(M, chain, levels, M), "direct")
    A = M.algebra
    projs = [projective_at(A, i) for i in range(A.n_vertices)]
    pads = []
    for r in range(1, 4):
        for combo in itertools.combinations_with_replacement(range(len(projs)), r):
            C = direct_sum_module([projs[j] for j in combo])
            if M.dim + C.dim <= search.dim_cap:
                pads.append(C)
    pads.sort(key=lambda C: (C.dim, C.dims))
    res = search.membership(M, levels, "summand", pads)
    if res.answer != YES:
        raise CapExceeded("no witness found within the padding caps")
    return SyzygyBracket("resolution", levels, res.witness, "padded-search")


def verify_syzygy_bracket(maps: Sequence[Morphism], direction: str, registry: IsoRegistry | None = None,
                          dim_cap: int = 24) -> SyzygyBracket:
    """Witness for a module against the bracket read off an exact sequence.

    ``resolution``: maps ``M -> X_0 -> X_-1 -> ... -> X_-n`` of an exact
    ``0 -> M -> X_0 -> ... -> X_-n -> 0``; the levels are
    ``Omega^n X_-n, ..., Omega X_-1, X_0``.

    ``coresolution``: maps ``X_n -> ... -> X_0 -> M`` of an exact
    ``0 -> X_n -> ... -> X_0 -> M -> 0``; the levels are
    ``X_0, Omega^-1 X_1, ..., Omega^-n X_n``.  Computed over the opposite
    algebra through duality.
    """
    maps = list(maps)
    if not maps:
        raise ValueError("at least one map is required")
    reg = registry if registry is not None else IsoRegistry()
    search = BracketSearch(reg, dim_cap)
    _check_exact_chain(maps, True, True)
    if direction == "resolution":
        out = _resolution_bracket(maps, search)
    elif direction == "coresolution":
        dmaps = [dual_morphism(f) for f in reversed(maps)]
        inner = _resolution_bracket(dmaps, search)
        M = maps[-1].target
        w = _dual_witness(inner.witness, M)
        Xs = [f.source for f in reversed(maps)]        # X_0, X_1, ..., X_n
        levels = [cosyzygy(X, j) for j, X in enumerate(Xs)]
        w.generators = levels
        out = SyzygyBracket("coresolution", levels, w, inner.method)
    else:
        raise ValueError(f"unknown direction {direction!r}")
    out.valid = out.witness.validate(reg)
    return out


# --------------------------------------------------------------------------
# extension dimension within caps


@dataclass
class ExtdimBounds:
    lower: int
    upper: int | None
    witness: Representation | None
    rep_finite_within_caps: bool
    dim_cap: int
    methods: dict[str, int] = field(default_factory=dict)

    def as_json(self) -> dict:
        return {"lower": self.lower, "upper": self.upper if self.upper is not None else "unknown",
                "witness_dims": list(self.witness.dims) if self.witness is not None else None,
                "within_caps": True, "dim_cap": self.dim_cap, "methods": self.methods}


def extdim_bounds(A: BoundQuiverAlgebra, dim_cap: int = 5, seed: int = 0,
                  universe: ModuleUniverse | None = None) -> ExtdimBounds:
    """Bounds on the extension dimension, checked over every module up to ``dim_cap``.

    The algebra counts as representation-finite within the caps when no
    indecomposable reaches the cap; then the sum of all indecomposables is a
    witness for ``0``.  Otherwise the generator
    ``A + DA + cosyzygies of simples + simples`` is tried at level 2, first via
    the sequence ``0 -> Omega M -> P -> M -> 0`` and then by direct search.
    """
    U = universe if universe is not None else ModuleUniverse(A, dim_cap, seed)
    reg = U.registry
    search = BracketSearch(reg, dim_cap=4 * dim_cap + 4 * A.dimension)
    indec = U.indecomposable_modules()
    finite = all(X.dim < dim_cap for X in indec)
    if finite:
        T = direct_sum_module(indec, A) if indec else zero_module(A)
        ok = all(search.in_add(M, T) for M in U.all_modules())
        return ExtdimBounds(0, 0 if ok else None, T, True, dim_cap, {"add": len(U.all_modules())})
    regular = regular_module(A).rep
    D = dual(regular_module(A.opposite).rep)
    simples = [simple_at(A, i) for i in range(A.n_vertices)]
    T = direct_sum_module([regular, D] + [cosyzygy(S) for S in simples] + simples)
    methods = {"sequence": 0, "direct": 0, "failed": 0}
    for M in U.all_modules():
        P, pi = projective_cover(M)
        K, inc = subrepresentation(P.rep, kernel_subspaces(pi))
        done = False
        if K.dim:
            # the sequence gives M in [P] . [cosyzygy(Omega M)], both inside add T
            levels = [P.rep, cosyzygy(K)]
            if search.in_add(levels[0], T) and search.in_add(levels[1], T):
                w = verify_syzygy_bracket([inc, pi], "coresolution", reg, dim_cap=search.dim_cap)
                if w.valid:
                    methods["sequence"] += 1
                    done = True
        if not done:
            if search.direct(M, [T, T]) is not None:
                methods["direct"] += 1
            else:
                methods["failed"] += 1
    upper = 1 if methods["failed"] == 0 else None
    return ExtdimBounds(1, upper, T, False, dim_cap, methods)


# --------------------------------------------------------------------------
# spot checks of the bracket identities on small instances


@dataclass
class SpotCheck:
    kind: str
    holds: bool
    premise: bool
    detail: dict = field(default_factory=dict)


def check_concatenation(search: BracketSearch, M: Representation, T1: Representation, T2: Representation,
                        m: int, n: int) -> SpotCheck:
    """``M`` in ``[T1]_m . [T2]_n`` implies ``M`` in ``[T1 + T2]_(m+n)``."""
    premise = search.direct(M, [T1] * m + [T2] * n) is not None
    if not premise:
        return SpotCheck("concatenation", True, False)
    both = direct_sum_module([T1, T2])
    holds = search.direct(M, [both] * (m + n)) is not None
    return SpotCheck("concatenation", holds, True, {"dims": list(M.dims), "m": m, "n": n})


def check_cosyzygy_shift(search: BracketSearch, X: Representation, Y: Representation, m: int, p: int,
                         targets: Sequence[Representation]) -> SpotCheck:
    """If every summand of ``X`` lies in ``[Y]_m``, each target in ``[cosyz^p X]_m`` lies in ``[cosyz^p Y]_m``.

    The conclusion is tried by direct filtration first and then with padding,
    since the class is closed under summands.
    """
    parts = search.registry.decompose(X).summands if X.dim else []
    premise = all(search.direct(S, [Y] * m) is not None for S in parts)
    if not premise:
        return SpotCheck("cosyzygy-shift", True, False)
    Xp, Yp = cosyzygy(X, p), cosyzygy(Y, p)
    checked = 0
    for M in targets:
        if search.direct(M, [Xp] * m) is None:
            continue
        checked += 1
        res = search.membership(M, [Yp] * m, mode="summand")
        if res.answer != YES:
            return SpotCheck("cosyzygy-shift", False, True, {"dims": list(M.dims), "answer": res.answer})
    return SpotCheck("cosyzygy-shift", True, True, {"targets": checked})
