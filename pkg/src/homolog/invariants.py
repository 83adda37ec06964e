"""One-stop computation of the invariant report for an algebra."""
from __future__ import annotations

import time
from typing import Iterable

from .algebra import BoundQuiverAlgebra, loewy_length
from .bounds import derived_dim_bounds, itdim_upper
from .decompose import IsoRegistry
from .errors import CapExceeded
from .io import Document, InvariantReport, field_label
from .syzygy import (DEFAULT_CUTOFF, global_dimension, injective_dimensions, is_selfinjective, syzygy_scan)
from .torsion import algebra_layer_length, pd_of_set, vertex_set

DEFAULT_DEPTH = 8
DEFAULT_SCAN_CAP = 32


def document_vertex_set(doc: Document, A: BoundQuiverAlgebra) -> frozenset[int]:
    """The vertex set named by the ``meta V`` line, empty when absent."""
    return vertex_set(A, doc.meta.get("V", []))


def compute_invariants(A: BoundQuiverAlgebra, V: Iterable[int] = (), cutoff: int = DEFAULT_CUTOFF,
                       depth: int = DEFAULT_DEPTH, seed: int = 0, scan: bool = True,
                       scan_dim_cap: int = DEFAULT_SCAN_CAP, timing: bool = False) -> InvariantReport:
    V = frozenset(V)
    clock: dict[str, int] = {}
    t0 = time.perf_counter()

    def tick(name):
        nonlocal t0
        now = time.perf_counter()
        clock[name] = int(round((now - t0) * 1000))
        t0 = now

    inv: dict = {"dimension": A.dimension, "loewy_length": loewy_length(A)}
    inv["gldim"] = global_dimension(A, cutoff)
    inv["selfinjective"] = is_selfinjective(A)
    right, left = injective_dimensions(A, cutoff)
    inv["right_injective_dimension"] = right
    inv["left_injective_dimension"] = left
    tick("dimensions")
    inv["V"] = [A.quiver.vertices[i] for i in sorted(V)]
    inv["pd_V"] = pd_of_set(A, V, cutoff)
    ll, trace = algebra_layer_length(A, V)
    inv["ll_tV"] = ll
    inv["ll_tV_trace"] = [list(d) for d in trace.dims]
    inv["itdim_upper"] = itdim_upper(A, V)
    tick("layers")
    bounds = derived_dim_bounds(A, V, cutoff).as_json()
    tick("bounds")
    if scan:
        try:
            inv["syzygy_scan"] = syzygy_scan(A, depth=depth, dim_cap=scan_dim_cap, seed=seed,
                                             registry=IsoRegistry(seed)).as_json()
        except CapExceeded as exc:
            inv["syzygy_scan"] = {"depth": depth, "stable_depth": None, "dim_cap": scan_dim_cap,
                                  "verdict": f"dimension cap exceeded: {exc}"}
        tick("syzygy_scan")
    return InvariantReport(A.name, A.dimension, field_label(A.field), inv, bounds, clock if timing else None)
