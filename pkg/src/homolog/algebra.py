"""Quivers, path words and bound quiver algebras ``kQ/I``.

Paths compose left to right: ``p.q`` walks ``p`` first and then ``q``.  The
ideal is built one path length at a time and reduced by row echelon
elimination, with columns ordered so that the pivot of every row is its
largest path in length-lex order.  The non-pivot paths form the basis.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import (NonHomogeneousRelation, NonParallelRelation, NotAdmissible,
                     RelationDegreeTooLow, UnknownVertex, InputError)
from .field import Field


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    arrows: tuple[tuple[str, str, str], ...]  # (name, source, target)

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise InputError("duplicate vertex id")
        names = [a[0] for a in self.arrows]
        if len(set(names)) != len(names):
            raise InputError("duplicate arrow name")
        vs = set(self.vertices)
        for name, s, t in self.arrows:
            if s not in vs or t not in vs:
                raise UnknownVertex(f"arrow {name} has an endpoint outside the quiver")

    @cached_property
    def vertex_index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def arrow_index(self) -> dict[str, int]:
        return {a[0]: i for i, a in enumerate(self.arrows)}

    @cached_property
    def src(self) -> tuple[int, ...]:
        return tuple(self.vertex_index[a[1]] for a in self.arrows)

    @cached_property
    def tgt(self) -> tuple[int, ...]:
        return tuple(self.vertex_index[a[2]] for a in self.arrows)

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    def vertex(self, v) -> int:
        """Index of the vertex with id ``v`` (ids compare as strings)."""
        key = str(v)
        if key not in self.vertex_index:
            raise UnknownVertex(f"unknown vertex {v!r}")
        return self.vertex_index[key]

    def opposite(self) -> "Quiver":
        return Quiver(self.vertices, tuple((n, t, s) for n, s, t in self.arrows))


@dataclass(frozen=True, order=False)
class Path:
    """A path word; ``arrows`` holds arrow indices, empty for a trivial path."""

    source: int
    target: int
    arrows: tuple[int, ...] = ()

    def __len__(self):
        return len(self.arrows)

    @property
    def key(self):
        return (len(self.arrows), self.arrows) if self.arrows else (0, (self.source,))

    def __lt__(self, other: "Path"):
        return self.key < other.key

    def then(self, other: "Path") -> "Path | None":
        """Concatenation ``self.other``, or ``None`` when not composable."""
        if self.target != other.source:
            return None
        return Path(self.source, other.target, self.arrows + other.arrows)

    def reversed(self) -> "Path":
        return Path(self.target, self.source, self.arrows[::-1])

    def word(self, quiver: Quiver) -> str:
        if not self.arrows:
            return f"e_{quiver.vertices[self.source]}"
        return ".".join(quiver.arrows[a][0] for a in self.arrows)


def path_from_names(quiver: Quiver, names: Sequence[str]) -> Path | None:
    """Path of the given arrow names, ``None`` if two neighbours do not compose."""
    idx = [quiver.arrow_index[n] for n in names]
    for a, b in zip(idx, idx[1:]):
        if quiver.tgt[a] != quiver.src[b]:
            return None
    return Path(quiver.src[idx[0]], quiver.tgt[idx[-1]], tuple(idx))


@dataclass(frozen=True)
class Relation:
    terms: tuple[tuple[object, Path], ...]

    @property
    def source(self) -> int:
        return self.terms[0][1].source

    @property
    def target(self) -> int:
        return self.terms[0][1].target

    def reversed(self) -> "Relation":
        return Relation(tuple((c, p.reversed()) for c, p in self.terms))


def _normalize_relation(field: Field, rel: Relation) -> Relation | None:
    acc: dict[Path, object] = {}
    for c, p in rel.terms:
        if len(p) < 2:
            raise RelationDegreeTooLow(f"relation term of length {len(p)} (need at least 2)")
        acc[p] = field.scalar(acc.get(p, field.zero)) + field.scalar(c)
        if field.is_prime:
            acc[p] %= field.p
    terms = tuple((c, p) for p, c in sorted(acc.items(), key=lambda kv: kv[0].key) if c != 0)
    if not terms:
        return None
    s, t = terms[0][1].source, terms[0][1].target
    if any(p.source != s or p.target != t for _, p in terms):
        raise NonParallelRelation("relation terms do not share source and target")
    if len({len(p) for _, p in terms}) > 1:
        raise NonHomogeneousRelation("relation terms have different lengths")
    return Relation(terms)


Sparse = dict  # basis index -> nonzero field scalar


class BoundQuiverAlgebra:
    """Finite dimensional quotient of a path algebra by homogeneous relations.

    Elements are sparse vectors ``{basis index: coefficient}``.  ``basis`` lists
    the standard paths sorted by length, then lexicographically.
    """

    def __init__(self, quiver: Quiver, relations: Sequence[Relation], field: Field,
                 max_length: int = 64, name: str | None = None):
        if quiver.n_vertices == 0:
            raise InputError("quiver has no vertices")
        if max_length < 2:
            raise InputError("max_length must be at least 2")
        self.quiver = quiver
        self.field = field
        self.name = name
        self.max_length = max_length
        rels = [_normalize_relation(field, r) for r in relations]
        self.relations: tuple[Relation, ...] = tuple(r for r in rels if r is not None)
        self.cache: dict = {}  # derived data shared by modules over this algebra
        self._build()

    # ------------------------------------------------------------------
    def _build(self):
        Q, F = self.quiver, self.field
        nv = Q.n_vertices
        by_degree: dict[int, list[Relation]] = {}
        for r in self.relations:
            by_degree.setdefault(len(r.terms[0][1]), []).append(r)
        out_arrows = [[a for a in range(len(Q.arrows)) if Q.src[a] == v] for v in range(nv)]
        in_arrows = [[a for a in range(len(Q.arrows)) if Q.tgt[a] == v] for v in range(nv)]

        standard: list[Path] = [Path(v, v) for v in range(nv)]
        self._nf: dict[Path, Sparse] = {}
        # previous-degree ideal, per block: (paths list, echelon rows)
        prev_paths = {(v, v): [Path(v, v)] for v in range(nv)}
        prev_ideal: dict[tuple[int, int], list[dict[Path, object]]] = {}
        degree_standard: list[list[Path]] = [list(standard)]
        N = None
        d = 0
        while True:
            d += 1
            if d > self.max_length:
                raise NotAdmissible(self.max_length)
            paths: dict[tuple[int, int], list[Path]] = {}
            for (s, t), plist in prev_paths.items():
                for p in plist:
                    for a in out_arrows[t]:
                        paths.setdefault((s, Q.tgt[a]), []).append(Path(s, Q.tgt[a], p.arrows + (a,)))
            if not paths:
                N = d
                break
            ideal: dict[tuple[int, int], list[dict[Path, object]]] = {}
            std_d: list[Path] = []
            for blk in sorted(paths):
                s, t = blk
                cols = sorted(paths[blk], key=lambda p: p.arrows, reverse=True)
                col_of = {p: i for i, p in enumerate(cols)}
                gens: list[dict[Path, object]] = []
                for r in by_degree.get(d, []):
                    if (r.source, r.target) == blk:
                        gens.append({p: c for c, p in r.terms})
                for a in out_arrows[s]:
                    for row in prev_ideal.get((Q.tgt[a], t), []):
                        gens.append({Path(s, t, (a,) + p.arrows): c for p, c in row.items()})
                for a in in_arrows[t]:
                    for row in prev_ideal.get((s, Q.src[a]), []):
                        gens.append({Path(s, t, p.arrows + (a,)): c for p, c in row.items()})
                rows: list[dict[Path, object]] = []
                pivots: list[int] = []
                if gens:
                    M = F.zeros(len(gens), len(cols))
                    for i, g in enumerate(gens):
                        for p, c in g.items():
                            M[i, col_of[p]] = c
                    R, pivots = F.rref(M)
                    for i, pc in enumerate(pivots):
                        rows.append({cols[j]: R[i, j] for j in np.flatnonzero(R[i] != 0)})
                if rows:
                    ideal[blk] = rows
                piv_set = set(pivots)
                std_d.extend(cols[j] for j in range(len(cols)) if j not in piv_set)
                for i, pc in enumerate(pivots):
                    lead = cols[pc]
                    self._nf[lead] = {p: F.scalar(-c) if F.is_prime else -c
                                      for p, c in rows[i].items() if p != lead}
            if not std_d:
                N = d
                break
            std_d.sort()
            degree_standard.append(std_d)
            prev_paths = paths
            prev_ideal = ideal
        self.nilpotency_index = N
        self.basis: list[Path] = [p for layer in degree_standard for p in layer]
        self.index: dict[Path, int] = {p: i for i, p in enumerate(self.basis)}
        # rewrite stored normal forms in terms of basis indices
        self._nf_idx: dict[Path, Sparse] = {}
        for lead, comb in self._nf.items():
            vec = {}
            for p, c in comb.items():
                c = F.to_python(c) if F.is_prime else c
                if c != 0:
                    vec[self.index[p]] = c
            self._nf_idx[lead] = vec
        del self._nf
        self._right_cache: dict[tuple[int, int], Sparse] = {}

    # ------------------------------------------------------------------
    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def n_vertices(self) -> int:
        return self.quiver.n_vertices

    def __repr__(self):
        label = self.name or "algebra"
        return f"<BoundQuiverAlgebra {label} dim={self.dimension} over {self.field.name}>"

    def normal_form(self, path: Path) -> Sparse:
        """Coordinates of a path in the standard basis."""
        if len(path) >= self.nilpotency_index:
            return {}
        i = self.index.get(path)
        if i is not None:
            return {i: self.field.one}
        return dict(self._nf_idx.get(path, {}))

    @cached_property
    def prefix(self) -> list[tuple[int, int] | None]:
        """For each basis path ``p.a``: ``(index of p, a)``; ``None`` if trivial."""
        out: list[tuple[int, int] | None] = []
        for p in self.basis:
            if not p.arrows:
                out.append(None)
                continue
            a = p.arrows[-1]
            out.append((self.index[Path(p.source, self.quiver.src[a], p.arrows[:-1])], a))
        return out

    def basis_from(self, vertex: int) -> list[int]:
        return [i for i, p in enumerate(self.basis) if p.source == vertex]

    def basis_to(self, vertex: int) -> list[int]:
        return [i for i, p in enumerate(self.basis) if p.target == vertex]

    def right_arrow(self, u: int, a: int) -> Sparse:
        """Normal form of ``basis[u] . arrow a``."""
        key = (u, a)
        hit = self._right_cache.get(key)
        if hit is None:
            p = self.basis[u]
            q = p.then(Path(self.quiver.src[a], self.quiver.tgt[a], (a,)))
            hit = {} if q is None else self.normal_form(q)
            self._right_cache[key] = hit
        return hit

    def multiply_basis(self, u: int, v: int) -> Sparse:
        q = self.basis[u].then(self.basis[v])
        return {} if q is None else self.normal_form(q)

    def multiply(self, x: Sparse, y: Sparse) -> Sparse:
        F = self.field
        out: dict[int, object] = {}
        for u, cu in x.items():
            for v, cv in y.items():
                for w, cw in self.multiply_basis(u, v).items():
                    out[w] = out.get(w, F.zero) + cu * cv * cw
        if F.is_prime:
            out = {w: c % F.p for w, c in out.items()}
        return {w: c for w, c in out.items() if c != 0}

    def path_element(self, path: Path) -> Sparse:
        return self.normal_form(path)

    def idempotent(self, v: int) -> Sparse:
        return {self.index[Path(v, v)]: self.field.one}

    def relation_value(self, rel: Relation) -> Sparse:
        F = self.field
        out: dict[int, object] = {}
        for c, p in rel.terms:
            for w, cw in self.normal_form(p).items():
                out[w] = out.get(w, F.zero) + F.scalar(c) * cw
        if F.is_prime:
            out = {w: c % F.p for w, c in out.items()}
        return {w: c for w, c in out.items() if c != 0}

    def radical_power_dimension(self, d: int) -> int:
        return sum(1 for p in self.basis if len(p) >= d)

    def structure_constants(self) -> np.ndarray:
        """Dense table ``T[u, v, w]`` with ``b_u b_v = sum_w T[u,v,w] b_w``."""
        n = self.dimension
        T = np.zeros((n, n, n), dtype=object if not self.field.is_prime else np.int64)
        if not self.field.is_prime:
            T.fill(self.field.zero)
        for u in range(n):
            for v in range(n):
                for w, c in self.multiply_basis(u, v).items():
                    T[u, v, w] = c
        return T

    def check_associativity(self, rng: np.random.Generator, trials: int = 50) -> bool:
        n = self.dimension
        for _ in range(trials):
            u, v, w = (int(x) for x in rng.integers(0, n, size=3))
            x, y, z = ({u: self.field.one}, {v: self.field.one}, {w: self.field.one})
            if self.multiply(self.multiply(x, y), z) != self.multiply(x, self.multiply(y, z)):
                return False
        return True

    @cached_property
    def opposite(self) -> "BoundQuiverAlgebra":
        op = BoundQuiverAlgebra(self.quiver.opposite(), [r.reversed() for r in self.relations],
                                self.field, self.max_length,
                                name=None if self.name is None else f"{self.name}^op")
        op.__dict__["opposite"] = self
        return op

    def signature(self) -> tuple:
        """Hashable description used to compare algebras for equality."""
        return (self.field, self.quiver,
                tuple(tuple((self.field.to_python(c), p) for c, p in r.terms) for r in self.relations))


def build_algebra(quiver: Quiver, relations: Iterable[Relation], field: Field,
                  max_length: int = 64, name: str | None = None) -> BoundQuiverAlgebra:
    return BoundQuiverAlgebra(quiver, list(relations), field, max_length, name)


def loewy_length(algebra: BoundQuiverAlgebra) -> int:
    return algebra.nilpotency_index


def opposite_algebra(algebra: BoundQuiverAlgebra) -> BoundQuiverAlgebra:
    # a fresh build, so that double opposites compare basis-for-basis
    return BoundQuiverAlgebra(algebra.quiver.opposite(),
                              [r.reversed() for r in algebra.relations],
                              algebra.field, algebra.max_length)


def relation_from_words(quiver: Quiver, terms: Sequence[tuple[object, str]]) -> Relation:
    """Convenience constructor: ``[(1, "x.y"), (1, "y.x")]``."""
    out = []
    for c, w in terms:
        p = path_from_names(quiver, w.split("."))
        if p is None:
            raise InputError(f"path {w} is not composable")
        out.append((c, p))
    return Relation(tuple(out))


def make_algebra(field: Field, vertices: Sequence, arrows: Sequence[tuple[str, object, object]],
                 relations: Sequence[Sequence[tuple[object, str]]] = (),
                 max_length: int = 64, name: str | None = None) -> BoundQuiverAlgebra:
    """Build an algebra from plain Python data (mainly for tests)."""
    q = Quiver(tuple(str(v) for v in vertices), tuple((n, str(s), str(t)) for n, s, t in arrows))
    return build_algebra(q, [relation_from_words(q, r) for r in relations], field, max_length, name)
