"""Krull-Schmidt decomposition over prime fields, isomorphism tests and ``add``.

Splitting uses endomorphisms whose characteristic polynomial has two coprime
factors: for such ``t`` and an irreducible factor ``f``, ``M`` is the direct sum
of the kernel and the image of a high power of ``f(t)``.  A module is declared
indecomposable only with a certificate that its endomorphism ring is local.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Sequence

import flint
import numpy as np

from .errors import CapExceeded, RationalFieldUnsupported, Undecided
from .modules import (Morphism, Representation, Subspace, hom_basis, is_projective, kernel, span,
                      subrepresentation)

DEFAULT_DIM_CAP = 512
DEFAULT_BUDGET = 4096
RANDOM_TRIES = 24


def _require_prime(M: Representation):
    if not M.field.is_prime:
        raise RationalFieldUnsupported("decomposition needs a prime field")


# --------------------------------------------------------------------------
# polynomials of endomorphisms


def _charpoly_factors(theta: Morphism) -> list[tuple[int, ...]]:
    """Distinct monic irreducible factors of the characteristic polynomial."""
    p = theta.field.p
    found: dict[tuple[int, ...], None] = {}
    for m in theta.maps:
        if m.shape[0] == 0:
            continue
        cp = flint.nmod_mat(m.tolist(), p).charpoly()
        for f, _ in cp.factor()[1]:
            found[tuple(int(c) for c in f.coeffs())] = None
    return sorted(found)


def _evaluate(theta: Morphism, coeffs: Sequence[int]) -> Morphism:
    """``f(theta)`` for ``f`` given by coefficients, lowest degree first."""
    F = theta.field
    maps = []
    for m in theta.maps:
        n = m.shape[0]
        acc = F.zeros(n, n)
        for c in reversed(coeffs):
            acc = F.matmul(acc, m)
            if c:
                acc = F.add(acc, F.scale(F.eye(n), c))
        maps.append(acc)
    return Morphism(theta.source, theta.target, maps, check=False)


def _power(theta: Morphism, k: int) -> Morphism:
    F = theta.field
    return Morphism(theta.source, theta.target, [F.matpow(m, k) for m in theta.maps], check=False)


def _is_nilpotent(theta: Morphism) -> bool:
    F = theta.field
    return all(F.is_zero(F.matpow(m, m.shape[0])) for m in theta.maps if m.shape[0])


def fitting_split(theta: Morphism):
    """``(kernel subspaces, image subspaces)`` of ``theta^D``, or ``None`` if trivial."""
    M = theta.source
    D = max(M.dims) if M.dims else 0
    pw = _power(theta, max(D, 1))
    F = M.field
    ker = [kernel(F, m) if m.shape[1] else Subspace(F.zeros(0, 0), ()) for m in pw.maps]
    im = [span(F, m) for m in pw.maps]
    kd = sum(s.dim for s in ker)
    if kd == 0 or kd == M.dim:
        return None
    return ker, im


def _splitter(theta: Morphism):
    facs = _charpoly_factors(theta)
    if len(facs) < 2:
        return None, facs
    return fitting_split(_evaluate(theta, facs[0])), facs


# --------------------------------------------------------------------------
# endomorphism algebras


class EndAlgebra:
    """Endomorphism ring of a module with a canonical basis and coordinates."""

    def __init__(self, M: Representation, basis: Sequence[Morphism] | None = None):
        self.module = M
        F = M.field
        basis = hom_basis(M, M) if basis is None else list(basis)
        self.dim = len(basis)
        if basis:
            vecs = np.stack([b.vector() for b in basis], axis=1)
            sub = span(F, vecs)
            self.rows = list(sub.rows)
            self.basis = [self.from_vector(sub.basis[:, j]) for j in range(sub.dim)]
        else:
            self.rows = []
            self.basis = []

    def from_vector(self, vec: np.ndarray) -> Morphism:
        M = self.module
        maps, off = [], 0
        for d in M.dims:
            maps.append(np.ascontiguousarray(vec[off:off + d * d].reshape(d, d)))
            off += d * d
        return Morphism(M, M, maps, check=False)

    def coords(self, theta: Morphism) -> np.ndarray:
        return theta.vector()[self.rows]

    def element(self, coeffs: Sequence[int]) -> Morphism:
        F = self.module.field
        M = self.module
        maps = [F.zeros(d, d) for d in M.dims]
        for c, b in zip(coeffs, self.basis):
            if c:
                maps = [F.add(x, F.scale(y, int(c))) for x, y in zip(maps, b.maps)]
        return Morphism(M, M, maps, check=False)

    def ideal(self, gens: Sequence[Morphism]) -> list[Morphism]:
        """Basis of the two-sided ideal generated by ``gens``."""
        F = self.module.field
        e = self.dim
        span_vecs = F.zeros(e, 0)
        members: list[Morphism] = []
        queue = list(gens)
        while queue:
            x = queue.pop()
            c = self.coords(x).reshape(-1, 1)
            if F.is_zero(c) or F.contains(span_vecs, c):
                continue
            span_vecs = np.concatenate([span_vecs, c], axis=1)
            members.append(x)
            for b in self.basis:
                queue.append(b.after(x))
                queue.append(x.after(b))
        return members

    def products_span(self, left: Sequence[Morphism], right: Sequence[Morphism]) -> list[Morphism]:
        F = self.module.field
        span_vecs = F.zeros(self.dim, 0)
        out = []
        for x in left:
            for y in right:
                z = x.after(y)
                c = self.coords(z).reshape(-1, 1)
                if F.is_zero(c) or F.contains(span_vecs, c):
                    continue
                span_vecs = np.concatenate([span_vecs, c], axis=1)
                out.append(z)
        return out


def _ideal_is_nilpotent(E: EndAlgebra, N: Sequence[Morphism]) -> bool:
    power = list(N)
    prev = len(power) + 1
    while power and len(power) < prev:
        prev = len(power)
        power = E.products_span(power, N)
    return not power


@dataclass
class LocalityCertificate:
    kind: str  # "one-dimensional", "radical", "exhaustive"
    detail: dict = dc_field(default_factory=dict)


def certify_local(E: EndAlgebra, candidates: Sequence[Morphism]) -> LocalityCertificate | None:
    """Certificate that ``E`` is local, using candidates that did not split.

    Each candidate ``t`` has a single irreducible factor ``f``, so ``f(t)`` lies in
    the radical when ``E`` is local.  If the ideal they generate is nilpotent and
    its codimension equals some ``deg f``, the quotient is a field.
    """
    if E.dim == 1:
        return LocalityCertificate("one-dimensional")
    gens, degrees = [], set()
    for t in candidates:
        facs = _charpoly_factors(t)
        if len(facs) != 1:
            return None
        gens.append(_evaluate(t, facs[0]))
        degrees.add(len(facs[0]) - 1)
    N = E.ideal(gens)
    codim = E.dim - len(N)
    if codim in degrees and _ideal_is_nilpotent(E, N):
        return LocalityCertificate("radical", {"radical_dimension": len(N), "residue_degree": codim})
    return None


# --------------------------------------------------------------------------
# decomposition


@dataclass
class Part:
    module: Representation
    inclusion: Morphism  # into the decomposed module
    certificate: LocalityCertificate


@dataclass
class DecompositionResult:
    module: Representation
    parts: list[Part]
    classes: list[tuple[int, int]] = dc_field(default_factory=list)  # (class id, multiplicity)

    def witness(self) -> list[np.ndarray]:
        """Per-vertex matrix ``(+) parts -> M`` assembled from the inclusions."""
        M = self.module
        F = M.field
        out = []
        for w in range(len(M.dims)):
            cols = [p.inclusion.maps[w] for p in self.parts if p.module.dims[w]]
            out.append(np.concatenate(cols, axis=1) if cols else F.zeros(M.dims[w], 0))
        return out

    def witness_invertible(self) -> bool:
        F = self.module.field
        return all(m.shape[0] == m.shape[1] and F.rank(m) == m.shape[0] for m in self.witness())

    @property
    def summands(self) -> list[Representation]:
        return [p.module for p in self.parts]


def _find_split(M: Representation, E: EndAlgebra, rng: np.random.Generator, budget: int):
    """A splitting pair of subspace lists, or a locality certificate."""
    tried = []
    for t in E.basis:
        split, facs = _splitter(t)
        if split is not None:
            return split, None
        tried.append(t)
    cert = certify_local(E, tried)
    if cert is not None:
        return None, cert
    p = M.field.p
    for _ in range(RANDOM_TRIES):
        coeffs = rng.integers(0, p, size=E.dim)
        t = E.element(coeffs)
        split, facs = _splitter(t)
        if split is not None:
            return split, None
        tried.append(t)
    cert = certify_local(E, tried)
    if cert is not None:
        return None, cert
    if p ** E.dim <= budget:
        for coeffs in itertools.product(range(p), repeat=E.dim):
            split, _ = _splitter(E.element(coeffs))
            if split is not None:
                return split, None
        return None, LocalityCertificate("exhaustive", {"elements": p ** E.dim})
    raise Undecided(budget)


def decompose(M: Representation, seed: int = 0, budget: int = DEFAULT_BUDGET,
              dim_cap: int = DEFAULT_DIM_CAP, registry: "IsoRegistry | None" = None) -> DecompositionResult:
    """Split ``M`` into indecomposables with locality certificates."""
    _require_prime(M)
    if M.dim > dim_cap:
        raise CapExceeded(f"module of dimension {M.dim} exceeds the cap {dim_cap}")
    rng = np.random.default_rng(seed)
    parts: list[Part] = []
    stack = [(M, Morphism.identity(M))]
    while stack:
        X, inc = stack.pop()
        if X.dim == 0:
            continue
        E = EndAlgebra(X)
        split, cert = _find_split(X, E, rng, budget)
        if split is None:
            parts.append(Part(X, inc, cert))
            continue
        ker, im = split
        for subs in (im, ker):
            Y, j = subrepresentation(X, subs)
            stack.append((Y, inc.after(j)))
    parts.sort(key=lambda p: (p.module.dim, p.module.dims))
    res = DecompositionResult(M, parts)
    reg = registry if registry is not None else IsoRegistry(seed=seed)
    counts: dict[int, int] = {}
    for p in parts:
        cid = reg.classify_indecomposable(p.module)
        counts[cid] = counts.get(cid, 0) + 1
    res.classes = sorted(counts.items())
    return res


# --------------------------------------------------------------------------
# isomorphism


def indecomposables_isomorphic(X: Representation, Y: Representation) -> bool:
    """Isomorphism test for modules already known to be indecomposable.

    With a local endomorphism ring, ``X`` and ``Y`` are isomorphic exactly when
    some composite of basis maps ``X -> Y -> X`` is invertible.
    """
    if X.dims != Y.dims:
        return False
    if X.same_as(Y):
        return True
    H = hom_basis(X, Y)
    if not H:
        return False
    for f in H:
        if f.is_iso():
            return True
    G = hom_basis(Y, X)
    for f in H:
        for g in G:
            if g.after(f).is_iso():
                return True
    return False


class IsoRegistry:
    """Assigns stable integer ids to isomorphism classes of indecomposables."""

    def __init__(self, seed: int = 0, budget: int = DEFAULT_BUDGET):
        self.seed = seed
        self.budget = budget
        self.reps: list[Representation] = []
        self._by_dims: dict[tuple, list[int]] = {}
        self._projective: dict[int, bool] = {}

    def classify_indecomposable(self, X: Representation) -> int:
        found = self.find(X)
        if found is not None:
            return found
        cid = len(self.reps)
        self.reps.append(X)
        self._by_dims.setdefault((id(X.algebra), X.dims), []).append(cid)
        return cid

    def find(self, X: Representation) -> int | None:
        for cid in self._by_dims.get((id(X.algebra), X.dims), []):
            if indecomposables_isomorphic(self.reps[cid], X):
                return cid
        return None

    def decompose(self, M: Representation) -> DecompositionResult:
        return decompose(M, seed=self.seed, budget=self.budget, registry=self)

    def classes_of(self, M: Representation) -> dict[int, int]:
        return dict(self.decompose(M).classes)

    def is_projective_class(self, cid: int) -> bool:
        if cid not in self._projective:
            self._projective[cid] = is_projective(self.reps[cid])
        return self._projective[cid]


def is_isomorphic(M: Representation, N: Representation, seed: int = 0) -> bool:
    _require_prime(M)
    if M.algebra is not N.algebra or M.dims != N.dims:
        return False
    if M.same_as(N):
        return True
    reg = IsoRegistry(seed)
    return reg.classes_of(M) == reg.classes_of(N)


def is_indecomposable(M: Representation, seed: int = 0, budget: int = DEFAULT_BUDGET) -> bool:
    """One splitting attempt on ``End(M)``; no recursion into the pieces."""
    _require_prime(M)
    if M.dim == 0:
        return False
    split, _ = _find_split(M, EndAlgebra(M), np.random.default_rng(seed), budget)
    return split is None


def add_membership(M: Representation, T: Representation, seed: int = 0,
                   registry: IsoRegistry | None = None) -> bool:
    """Whether every indecomposable summand of ``M`` is a summand of ``T``."""
    _require_prime(M)
    if M.dim == 0:
        return True
    reg = registry if registry is not None else IsoRegistry(seed)
    allowed = set(reg.classes_of(T))
    return set(reg.classes_of(M)) <= allowed


def nonprojective_classes(M: Representation, registry: IsoRegistry) -> dict[int, int]:
    """Classes and multiplicities of the non-projective indecomposable summands."""
    return {cid: k for cid, k in registry.classes_of(M).items() if not registry.is_projective_class(cid)}
