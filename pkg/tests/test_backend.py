import os
import subprocess
import sys

import numpy as np
import pytest

from dnls_lab import _kernels_py as py
from dnls_lab._backend import BACKEND

try:
    from dnls_lab import _kernels as cy
except ImportError:
    cy = None

needs_ext = pytest.mark.skipif(cy is None, reason="compiled extension not built")


def test_backend_name():
    assert BACKEND in ("cython", "python")


def test_env_forces_python():
    code = "from dnls_lab._backend import BACKEND; print(BACKEND)"
    env = dict(os.environ, DNLS_LAB_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert out.stdout.strip() == "python"


@needs_ext
@pytest.mark.parametrize("n", [1, 7, 1024])
def test_kernels_agree(n):
    rng = np.random.default_rng(n)
    u = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    ux = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    r = rng.standard_normal(n)
    assert cy.seq_sum(r) == py.seq_sum(r)
    assert np.array_equal(cy.exclusive_prefix(r), py.exclusive_prefix(r))
    assert np.allclose(cy.density_sums(u, ux), py.density_sums(u, ux), rtol=1e-14, atol=1e-14)
    assert np.allclose(cy.u_nonlinear(u, ux), py.u_nonlinear(u, ux), rtol=1e-14, atol=1e-14)
    assert np.allclose(cy.cubic(u), py.cubic(u), rtol=1e-15, atol=1e-15)


def test_python_u_nonlinear_matches_formula():
    rng = np.random.default_rng(0)
    u = rng.standard_normal(64) + 1j * rng.standard_normal(64)
    ux = rng.standard_normal(64) + 1j * rng.standard_normal(64)
    a = np.abs(u) ** 2
    expected = -0.5 * a * ux + 0.5 * u * u * np.conj(ux) + 0.1875j * a * a * u
    assert np.allclose(py.u_nonlinear(u, ux), expected, atol=1e-13)
