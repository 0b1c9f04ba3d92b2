# cython: language_level=3
"""Compiled inner loops: fixed-order reductions and pointwise nonlinearities.

Every reduction walks the samples in index order with a single accumulator,
so results are reproducible bit for bit and agree with the numpy fallback
in ``_kernels_py``.
"""

import numpy as np
cimport numpy as cnp

cnp.import_array()


def seq_sum(const double[::1] a):
    """Sum ``a`` left to right."""
    cdef Py_ssize_t i, n = a.shape[0]
    cdef double s = 0.0
    for i in range(n):
        s += a[i]
    return s


def exclusive_prefix(const double[::1] a):
    """``out[j] = a[0] + ... + a[j-1]`` with ``out[0] = 0``."""
    cdef Py_ssize_t i, n = a.shape[0]
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] o = out
    cdef double s = 0.0
    for i in range(n):
        o[i] = s
        s += a[i]
    return out


def density_sums(const double complex[::1] f, const double complex[::1] fx):
    """Sequential sums of |f|^2, |f_x|^2, |f|^4, |f|^6 and Im(conj(f) f_x)."""
    cdef Py_ssize_t i, n = f.shape[0]
    cdef double fr, fi, gr, gi, a, d
    cdef double s2 = 0.0, sd = 0.0, s4 = 0.0, s6 = 0.0, sim = 0.0
    for i in range(n):
        fr = f[i].real
        fi = f[i].imag
        gr = fx[i].real
        gi = fx[i].imag
        a = fr * fr + fi * fi
        d = gr * gr + gi * gi
        s2 += a
        sd += d
        s4 += a * a
        s6 += a * a * a
        sim += fr * gi - fi * gr
    return s2, sd, s4, s6, sim


def u_nonlinear(const double complex[::1] u, const double complex[::1] ux):
    """Pointwise -|u|^2 u_x/2 + u^2 conj(u_x)/2 + (3i/16)|u|^4 u."""
    cdef Py_ssize_t i, n = u.shape[0]
    out = np.empty(n, dtype=np.complex128)
    cdef double complex[::1] o = out
    cdef double ur, ui, gr, gi, a, sr, si
    for i in range(n):
        ur = u[i].real
        ui = u[i].imag
        gr = ux[i].real
        gi = ux[i].imag
        a = ur * ur + ui * ui
        # u^2
        sr = ur * ur - ui * ui
        si = 2.0 * ur * ui
        o[i].real = -0.5 * a * gr + 0.5 * (sr * gr + si * gi) - 0.1875 * a * a * ui
        o[i].imag = -0.5 * a * gi + 0.5 * (si * gr - sr * gi) + 0.1875 * a * a * ur
    return out


def cubic(const double complex[::1] v):
    """Pointwise |v|^2 v."""
    cdef Py_ssize_t i, n = v.shape[0]
    out = np.empty(n, dtype=np.complex128)
    cdef double complex[::1] o = out
    cdef double vr, vi, a
    for i in range(n):
        vr = v[i].real
        vi = v[i].imag
        a = vr * vr + vi * vi
        o[i].real = a * vr
        o[i].imag = a * vi
    return out
