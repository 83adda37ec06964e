"""Upper bounds for the derived dimension and the Igusa-Todorov dimension, and certificate checks."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Sequence

from .algebra import BoundQuiverAlgebra, loewy_length
from .decompose import IsoRegistry
from .errors import CapExceeded
from .modules import Representation, direct_sum, hom_basis, kernel_module
from .syzygy import DEFAULT_CUTOFF, Beyond, global_dimension, simple_proj_dimension, syzygy
from .torsion import algebra_layer_length, pd_of_set

ENTRY_ORDER = ("loewy", "gldim", "product", "sum", "maximum", "layers")

# name -> (printable formula, evaluator over the input dict)
FORMULAS: dict[str, tuple[str, Callable[[dict], int]]] = {
    "loewy": ("LL-1", lambda x: x["LL"] - 1),
    "gldim": ("gldim", lambda x: x["gldim"]),
    "product": ("(pdV+2)*(ll+1)-2", lambda x: (x["pdV"] + 2) * (x["ll"] + 1) - 2),
    "sum": ("2*(pdV+ll)+1", lambda x: 2 * (x["pdV"] + x["ll"]) + 1),
    "maximum": ("max(2*ll+pdV-1, pdV+3)", lambda x: max(2 * x["ll"] + x["pdV"] - 1, x["pdV"] + 3)),
    "layers": ("2*max(ll-2,0)+pdV+2", lambda x: 2 * max(x["ll"] - 2, 0) + x["pdV"] + 2),
}
_NEEDS = {"loewy": ("LL",), "gldim": ("gldim",), "product": ("pdV", "ll"), "sum": ("pdV", "ll"),
          "maximum": ("pdV", "ll"), "layers": ("pdV", "ll")}


@dataclass
class BoundEntry:
    name: str
    formula: str
    inputs: dict[str, Any]
    value: int | None
    reason: str | None = None

    def display(self) -> int | str:
        return self.value if self.value is not None else f"n/a({self.reason})"

    def recompute(self) -> int | None:
        if self.value is None:
            return None
        return FORMULAS[self.name][1](self.inputs)

    def as_json(self) -> dict:
        return {"formula": self.formula, "inputs": self.inputs, "value": self.display()}


@dataclass
class BoundReport:
    V: tuple[str, ...]
    inputs: dict[str, Any]
    entries: list[BoundEntry] = field(default_factory=list)

    @property
    def best(self) -> int | None:
        vals = [e.value for e in self.entries if e.value is not None]
        return min(vals) if vals else None

    def entry(self, name: str) -> BoundEntry:
        return next(e for e in self.entries if e.name == name)

    def as_json(self) -> dict:
        return {"V": list(self.V), "inputs": {k: (str(v) if isinstance(v, Beyond) else v)
                                              for k, v in self.inputs.items()},
                "entries": {e.name: e.as_json() for e in self.entries}, "best": self.best}


def evaluate_bounds(inputs: dict[str, Any], V: Sequence[str] = ()) -> BoundReport:
    """Evaluate every formula on given inputs; ``Beyond`` values give n/a entries."""
    rep = BoundReport(tuple(V), dict(inputs))
    for name in ENTRY_ORDER:
        formula, fn = FORMULAS[name]
        needed = {k: inputs[k] for k in _NEEDS[name]}
        bad = [k for k, v in needed.items() if isinstance(v, Beyond)]
        if bad:
            reason = "infinite gldim" if "gldim" in bad else "infinite pd"
            rep.entries.append(BoundEntry(name, formula, {k: str(v) for k, v in needed.items()}, None, reason))
        else:
            rep.entries.append(BoundEntry(name, formula, needed, fn(needed)))
    return rep


def derived_dim_bounds(A: BoundQuiverAlgebra, V: Iterable[int], cutoff: int = DEFAULT_CUTOFF) -> BoundReport:
    V = frozenset(V)
    ll, _ = algebra_layer_length(A, V)
    inputs = {"LL": loewy_length(A), "gldim": global_dimension(A, cutoff), "pdV": pd_of_set(A, V, cutoff), "ll": ll}
    return evaluate_bounds(inputs, [A.quiver.vertices[i] for i in sorted(V)])


def itdim_upper(A: BoundQuiverAlgebra, V: Iterable[int] = ()) -> int:
    ll, _ = algebra_layer_length(A, frozenset(V))
    return max(ll - 2, 0)


def mn_it_bound(m: int, n: int) -> int:
    if m < 0 or n < 0:
        raise ValueError("m and n must be nonnegative")
    return 2 * m + max(1, n)


def _preference_key(V: frozenset[int], n: int) -> tuple:
    # vertices are weighed in order and including one beats leaving it out
    return tuple(0 if i in V else 1 for i in range(n))


def best_V_search(A: BoundQuiverAlgebra, cutoff: int = DEFAULT_CUTOFF, exhaustive_limit: int = 2 ** 20
                  ) -> tuple[frozenset[int], BoundReport]:
    """The set of finite-pd simples minimizing the best bound.

    Exhaustive when the number of subsets is within ``exhaustive_limit``,
    otherwise greedy removal of single vertices starting from all of them.
    """
    n = A.n_vertices
    finite = [i for i in range(n) if not isinstance(simple_proj_dimension(A, i, cutoff), Beyond)]
    best: tuple | None = None

    def consider(V: frozenset[int]):
        nonlocal best
        rep = derived_dim_bounds(A, V, cutoff)
        score = rep.best if rep.best is not None else float("inf")
        key = (score, _preference_key(V, n))
        if best is None or key < best[0]:
            best = (key, V, rep)

    if 2 ** len(finite) <= exhaustive_limit:
        for r in range(len(finite) + 1):
            for combo in itertools.combinations(finite, r):
                consider(frozenset(combo))
    else:
        cur = frozenset(finite)
        consider(cur)
        improved = True
        while improved:
            improved = False
            for i in sorted(cur):
                before = best[0]
                consider(cur - {i})
                if best[0] < before:
                    cur, improved = best[1], True
                    break
    return best[1], best[2]


# --------------------------------------------------------------------------
# Igusa-Todorov certificates


@dataclass
class ITCertificate:
    m: int
    n: int
    module: Representation

    def __post_init__(self):
        if self.m < 0 or self.n < 0:
            raise ValueError("m and n must be nonnegative")


@dataclass
class CertificateVerdict:
    verdict: str                                   # verified-on-samples, refuted, undecided
    witnesses: list[dict] = field(default_factory=list)

    def as_json(self) -> dict:
        return {"verdict": self.verdict, "witnesses": self.witnesses}


def _approximation(X: Representation, summands: Sequence[Representation], cap: int):
    """The canonical map from a sum of copies of the summands onto ``X``, if it is onto."""
    pieces, maps = [], []
    for S in summands:
        H = hom_basis(S, X)
        if len(H) > cap:
            raise CapExceeded(f"hom space of dimension {len(H)} exceeds multiplicity cap {cap}")
        for h in H:
            pieces.append(S)
            maps.append(h)
    if not pieces:
        return None
    total, _, projs = direct_sum(pieces, X.algebra)
    f = maps[0].after(projs[0])
    for h, p in zip(maps[1:], projs[1:]):
        f = f + h.after(p)
    return f if f.is_surjective() else None


def check_it_certificate(A: BoundQuiverAlgebra, cert: ITCertificate, samples: Sequence[Representation],
                         cap: int = 8, registry: IsoRegistry | None = None) -> CertificateVerdict:
    """Look for ``0 -> V_m -> ... -> V_0 -> Omega^n M -> 0`` with terms in ``add V`` for each sample.

    Terms are built from canonical approximations, so success is a proof while
    failure beyond the first step is inconclusive.
    """
    reg = registry if registry is not None else IsoRegistry()
    summands = reg.decompose(cert.module).summands if cert.module.dim else []
    allowed = set(reg.classes_of(cert.module)) if cert.module.dim else set()

    def in_add(X):
        return X.dim == 0 or set(reg.classes_of(X)) <= allowed

    out = CertificateVerdict("verified-on-samples")
    for k, M in enumerate(samples):
        X = syzygy(M, cert.n)
        if cert.m == 0:
            ok = in_add(X)
            out.witnesses.append({"sample": k, "syzygy_dims": list(X.dims), "in_add": ok})
            if not ok:
                out.verdict = "refuted"
                return out
            continue
        try:
            terms = []
            cur = X
            status = None
            for step in range(cert.m + 1):
                if in_add(cur):
                    terms.append(list(cur.dims))
                    status = "ok"
                    break
                if step == cert.m:
                    status = "undecided"
                    break
                f = _approximation(cur, summands, cap)
                if f is None:
                    status = "refuted" if step == 0 else "undecided"
                    break
                terms.append(list(f.source.dims))
                cur = kernel_module(f)[0]
        except CapExceeded:
            status = "undecided"
        out.witnesses.append({"sample": k, "syzygy_dims": list(X.dims), "terms": terms, "status": status})
        if status == "refuted":
            out.verdict = "refuted"
            return out
        if status == "undecided":
            out.verdict = "undecided"
    return out
