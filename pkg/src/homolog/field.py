"""Exact ground fields and the dense linear algebra built on them.

Matrices are numpy arrays: ``int64`` residues for a prime field and ``object``
arrays of :class:`fractions.Fraction` for the rationals.  No floating point
value is ever produced.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .errors import BadField, InconsistentSystem


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class Field:
    """Common interface; subclasses supply arithmetic and row reduction."""

    name: str
    is_prime: bool = False
    dtype: object

    # -- construction -------------------------------------------------
    def zeros(self, rows: int, cols: int) -> np.ndarray:
        raise NotImplementedError

    def eye(self, n: int) -> np.ndarray:
        m = self.zeros(n, n)
        for i in range(n):
            m[i, i] = self.one
        return m

    def array(self, data) -> np.ndarray:
        raise NotImplementedError

    def scalar(self, value):
        raise NotImplementedError

    # -- arithmetic ---------------------------------------------------
    def reduce(self, a: np.ndarray) -> np.ndarray:
        return a

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def add(self, a, b):
        return self.reduce(a + b)

    def sub(self, a, b):
        return self.reduce(a - b)

    def neg(self, a):
        return self.reduce(-a)

    def scale(self, a, c):
        return self.reduce(a * c)

    def inv_scalar(self, x):
        raise NotImplementedError

    def is_zero(self, a: np.ndarray) -> bool:
        return not np.any(a != 0)

    def matpow(self, a: np.ndarray, k: int) -> np.ndarray:
        result = self.eye(a.shape[0])
        base = a
        while k:
            if k & 1:
                result = self.matmul(result, base)
            k >>= 1
            if k:
                base = self.matmul(base, base)
        return result

    # -- row reduction ------------------------------------------------
    def rref(self, a: np.ndarray) -> tuple[np.ndarray, list[int]]:
        raise NotImplementedError

    def rank(self, a: np.ndarray) -> int:
        if a.size == 0:
            return 0
        return len(self.rref(a)[1])

    def nullspace(self, a: np.ndarray) -> np.ndarray:
        """Columns spanning ``{x : a x = 0}``."""
        rows, cols = a.shape
        if rows == 0:
            return self.eye(cols)
        R, piv = self.rref(a)
        free = [c for c in range(cols) if c not in set(piv)]
        N = self.zeros(cols, len(free))
        for k, f in enumerate(free):
            N[f, k] = self.one
            for r, pc in enumerate(piv):
                N[pc, k] = self.reduce(-R[r, f]) if self.is_prime else -R[r, f]
        return N

    def column_basis(self, a: np.ndarray) -> np.ndarray:
        """An independent subset of the columns of ``a`` spanning its image."""
        if a.shape[1] == 0 or a.shape[0] == 0:
            return self.zeros(a.shape[0], 0)
        _, piv = self.rref(a)
        return a[:, piv]

    def canonical_basis(self, a: np.ndarray) -> np.ndarray:
        """Canonical column basis of the column space (rref of the transpose)."""
        if a.shape[1] == 0:
            return self.zeros(a.shape[0], 0)
        R, piv = self.rref(a.T)
        return np.ascontiguousarray(R[: len(piv)].T)

    def solve(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Some ``x`` with ``a x = b``; raises :class:`InconsistentSystem`."""
        rows, cols = a.shape
        if b.ndim == 1:
            b = b.reshape(-1, 1)
        k = b.shape[1]
        if rows == 0:
            return self.zeros(cols, k)
        aug = np.concatenate([a, b], axis=1)
        R, piv = self.rref(aug)
        x = self.zeros(cols, k)
        for r, pc in enumerate(piv):
            if pc >= cols:
                raise InconsistentSystem("linear system has no solution")
            x[pc, :] = R[r, cols:]
        return x

    def inverse(self, a: np.ndarray) -> np.ndarray:
        n = a.shape[0]
        if a.shape != (n, n):
            raise ValueError("inverse of a non-square matrix")
        aug = np.concatenate([a, self.eye(n)], axis=1)
        R, piv = self.rref(aug)
        if piv[:n] != list(range(n)) or len(piv) < n:
            raise InconsistentSystem("matrix is singular")
        return np.ascontiguousarray(R[:, n:])

    def right_inverse(self, a: np.ndarray) -> np.ndarray:
        """``s`` with ``a s = 1`` for a surjective ``a``."""
        rows, cols = a.shape
        if rows == 0:
            return self.zeros(cols, 0)
        _, piv = self.rref(a)
        if len(piv) != rows:
            raise InconsistentSystem("matrix is not surjective")
        s = self.zeros(cols, rows)
        s[piv, :] = self.inverse(a[:, piv])
        return s

    def complement(self, basis: np.ndarray, n: int) -> np.ndarray:
        """Standard unit vectors completing the columns of ``basis`` to ``F^n``."""
        if basis.shape[1] == 0:
            return self.eye(n)
        _, piv = self.rref(basis.T)
        free = [c for c in range(n) if c not in set(piv)]
        C = self.zeros(n, len(free))
        for k, f in enumerate(free):
            C[f, k] = self.one
        return C

    def contains(self, basis: np.ndarray, vectors: np.ndarray) -> bool:
        """Whether every column of ``vectors`` lies in the span of ``basis``."""
        if vectors.shape[1] == 0:
            return True
        if basis.shape[1] == 0:
            return self.is_zero(vectors)
        r0 = self.rank(basis)
        return self.rank(np.concatenate([basis, vectors], axis=1)) == r0

    def elements(self) -> Iterable:
        raise BadField(f"{self.name} is infinite")

    def random_matrix(self, rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
        raise NotImplementedError

    def to_python(self, x):
        raise NotImplementedError

    def hashable(self, a: np.ndarray) -> tuple:
        return (a.shape, tuple(self.to_python(x) for x in a.flat))


class PrimeField(Field):
    """The field with ``p`` elements, ``2 <= p < 2**31``."""

    is_prime = True
    dtype = np.int64

    def __init__(self, p: int):
        p = int(p)
        if not (2 <= p < 2**31) or not _is_prime(p):
            raise BadField(f"F_{p}: characteristic must be a prime below 2**31")
        self.p = p
        self.name = f"F_{p}"
        self.one = 1
        self.zero = 0

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"

    def zeros(self, rows, cols):
        return np.zeros((rows, cols), dtype=np.int64)

    def eye(self, n):
        return np.eye(n, dtype=np.int64)

    def array(self, data):
        arr = np.array(data, dtype=object)
        if arr.size == 0:
            return np.zeros(arr.shape if arr.ndim == 2 else (0, 0), dtype=np.int64)
        return np.vectorize(self.scalar, otypes=[np.int64])(arr)

    def scalar(self, value):
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise BadField(f"denominator {value.denominator} vanishes in {self.name}")
            return (value.numerator * pow(value.denominator, -1, self.p)) % self.p
        return int(value) % self.p

    def reduce(self, a):
        return a % self.p

    def matmul(self, a, b):
        if a.shape[1] == 0 or a.shape[0] == 0 or b.shape[1] == 0:
            return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
        return kernels.matmul_mod(a, b, self.p)

    def inv_scalar(self, x):
        x = int(x) % self.p
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, self.p - 2, self.p)

    def rref(self, a):
        if a.shape[0] == 0 or a.shape[1] == 0:
            return np.array(a, dtype=np.int64, copy=True), []
        return kernels.rref_mod(a, self.p)

    def elements(self):
        return range(self.p)

    def random_matrix(self, rng, rows, cols):
        return rng.integers(0, self.p, size=(rows, cols), dtype=np.int64)

    def to_python(self, x):
        return int(x)

    def hashable(self, a):
        return (a.shape, np.ascontiguousarray(a, dtype=np.int64).tobytes())


class Rationals(Field):
    """The rational numbers with :class:`Fraction` entries."""

    name = "Q"
    dtype = object

    def __init__(self):
        self.one = Fraction(1)
        self.zero = Fraction(0)

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "Rationals()"

    def zeros(self, rows, cols):
        m = np.empty((rows, cols), dtype=object)
        m.fill(Fraction(0))
        return m

    def array(self, data):
        arr = np.array(data, dtype=object)
        if arr.size == 0:
            return self.zeros(*(arr.shape if arr.ndim == 2 else (0, 0)))
        out = np.empty(arr.shape, dtype=object)
        for idx, v in np.ndenumerate(arr):
            out[idx] = self.scalar(v)
        return out

    def scalar(self, value):
        return Fraction(value)

    def matmul(self, a, b):
        out = self.zeros(a.shape[0], b.shape[1])
        if a.shape[1] == 0:
            return out
        prod = a.dot(b)
        out[:, :] = prod
        return out

    def inv_scalar(self, x):
        return Fraction(1) / Fraction(x)

    def rref(self, a):
        R = self.array(a) if a.dtype != object else a.copy()
        rows, cols = R.shape
        piv: list[int] = []
        r = 0
        for c in range(cols):
            if r == rows:
                break
            k = next((i for i in range(r, rows) if R[i, c] != 0), None)
            if k is None:
                continue
            if k != r:
                R[[r, k]] = R[[k, r]]
            R[r] = R[r] / R[r, c]
            for i in range(rows):
                if i != r and R[i, c] != 0:
                    R[i] = R[i] - R[i, c] * R[r]
            piv.append(c)
            r += 1
        return R, piv

    def random_matrix(self, rng, rows, cols):
        vals = rng.integers(-3, 4, size=(rows, cols))
        return self.array(vals.tolist()) if rows and cols else self.zeros(rows, cols)

    def to_python(self, x):
        x = Fraction(x)
        return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def field_from_spec(kind: str, p: int | None = None) -> Field:
    """``field_from_spec("F", 3)`` or ``field_from_spec("Q")``."""
    if kind.upper() == "Q":
        return Rationals()
    if kind.upper() == "F":
        if p is None:
            raise BadField("prime field needs a characteristic")
        return PrimeField(p)
    raise BadField(f"unknown field kind {kind!r}")


def block_diag(field: Field, blocks: Sequence[np.ndarray]) -> np.ndarray:
    rows = sum(b.shape[0] for b in blocks)
    cols = sum(b.shape[1] for b in blocks)
    out = field.zeros(rows, cols)
    r = c = 0
    for b in blocks:
        out[r:r + b.shape[0], c:c + b.shape[1]] = b
        r += b.shape[0]
        c += b.shape[1]
    return out
