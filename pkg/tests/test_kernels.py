import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from homolog import _fpkernels_py as pure
from homolog import kernels

compiled = pytest.importorskip("homolog._fpkernels")

PRIMES = [2, 3, 5, 7, 65521, 2**31 - 1]


@st.composite
def matrices(draw, max_side=8):
    p = draw(st.sampled_from(PRIMES))
    n = draw(st.integers(0, max_side))
    m = draw(st.integers(0, max_side))
    q = draw(st.integers(0, max_side))
    seed = draw(st.integers(0, 2**32 - 1))
    rng = np.random.default_rng(seed)
    return p, rng.integers(0, p, size=(n, m)), rng.integers(0, p, size=(m, q))


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_matmul_backends_agree(data):
    p, A, B = data
    expect = np.array([[sum(int(a) * int(b) for a, b in zip(row, col)) % p for col in B.T] for row in A],
                      dtype=np.int64).reshape(A.shape[0], B.shape[1])
    assert np.array_equal(compiled.matmul_mod(A, B, p), expect)
    assert np.array_equal(pure.matmul_mod(A, B, p), expect)


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rref_backends_agree(data):
    p, A, _ = data
    R1, piv1 = compiled.rref_mod(A, p)
    R2, piv2 = pure.rref_mod(A, p)
    assert np.array_equal(R1, R2)
    assert list(piv1) == list(piv2)
    # pivots are leading ones with zeros elsewhere in their column
    for r, c in enumerate(piv1):
        assert R1[r, c] == 1
        assert np.count_nonzero(R1[:, c]) == 1


def test_rref_known_rank():
    A = np.array([[1, 2, 0], [2, 4, 0], [0, 0, 1]])
    _, piv = compiled.rref_mod(A, 5)
    assert list(piv) == [0, 2]
    _, piv = compiled.rref_mod(A, 2)
    assert list(piv) == [0, 2]


def test_backend_selected_at_import():
    assert kernels.BACKEND == "cython"
    env = dict(os.environ, HOMOLOG_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import homolog.kernels as k; print(k.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
