"""Pure-numpy versions of the compiled kernels in ``_kernels.pyx``.

``np.cumsum`` accumulates strictly left to right, which keeps the reductions
in the same order as the compiled loops.
"""

import numpy as np


def seq_sum(a):
    a = np.ascontiguousarray(a, dtype=np.float64)
    if a.size == 0:
        return 0.0
    return float(np.cumsum(a)[-1])


def exclusive_prefix(a):
    a = np.ascontiguousarray(a, dtype=np.float64)
    out = np.empty_like(a)
    if a.size:
        out[0] = 0.0
        np.cumsum(a[:-1], out=out[1:])
    return out


def density_sums(f, fx):
    fr, fi = f.real, f.imag
    gr, gi = fx.real, fx.imag
    a = fr * fr + fi * fi
    d = gr * gr + gi * gi
    aa = a * a
    return (
        seq_sum(a),
        seq_sum(d),
        seq_sum(aa),
        seq_sum(aa * a),
        seq_sum(fr * gi - fi * gr),
    )


def u_nonlinear(u, ux):
    ur, ui = u.real, u.imag
    gr, gi = ux.real, ux.imag
    a = ur * ur + ui * ui
    sr = ur * ur - ui * ui
    si = 2.0 * ur * ui
    out = np.empty(u.shape, dtype=np.complex128)
    out.real = -0.5 * a * gr + 0.5 * (sr * gr + si * gi) - 0.1875 * a * a * ui
    out.imag = -0.5 * a * gi + 0.5 * (si * gr - sr * gi) + 0.1875 * a * a * ur
    return out


def cubic(v):
    vr, vi = v.real, v.imag
    a = vr * vr + vi * vi
    out = np.empty(v.shape, dtype=np.complex128)
    out.real = a * vr
    out.imag = a * vi
    return out
