# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: batched integrand evaluations used inside the
quadrature loops.  The pure-python twin lives in ``_kernels_py``."""

from libc.math cimport pow

BACKEND_NAME = "compiled"


def psi_integrand_batch(double[::1] w, double r, double z, int n, double[::1] out):
    cdef Py_ssize_t i, m = w.shape[0]
    cdef double k = (1.0 - r) / (1.0 + r)
    cdef double beta = (n - (n - 2) * r) / 2.0
    cdef double k2 = k * k
    cdef double e1 = n / 2.0 + 1.0
    cdef double e2 = n / 2.0 - 1.0
    cdef double wi, w2, num
    for i in range(m):
        wi = w[i]
        w2 = wi * wi
        num = (n - beta + n * z * wi - beta * w2) * pow(wi, n - 2)
        out[i] = num / (pow(1.0 + w2, e1) * pow(1.0 + k2 * w2, e2))
    return out.base if out.base is not None else out


def grad_dot_batch(double[::1] cphi, double[::1] sphi, double u, double r,
                   int n, double ct, double st, double[::1] out):
    cdef Py_ssize_t i, m = cphi.shape[0]
    cdef double r2 = r * r
    cdef double xv = r * ct
    cdef double coef = n * (1.0 - r2)
    cdef double en = n / 2.0
    cdef double rho2, xz_v
    for i in range(m):
        rho2 = 1.0 - 2.0 * r * cphi[i] + r2
        xz_v = xv - (cphi[i] * ct + sphi[i] * u * st)
        out[i] = -2.0 * xv / pow(rho2, en) - coef * xz_v / pow(rho2, en + 1.0)
    return out.base if out.base is not None else out
