# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; interface mirrors ``_pykernels``.

Reductions use Neumaier compensated summation in a fixed sequential order,
so results are deterministic and agree with the correctly rounded
fallback to within a few ulps.
"""
import numpy as np

from libc.math cimport sqrt, fabs, M_PI, sqrtl, fabsl, acosl

NAME = "compiled"


cdef inline void _acc(double x, double* s, double* c) noexcept nogil:
    cdef double t = s[0] + x
    if fabs(s[0]) >= fabs(x):
        c[0] += (s[0] - t) + x
    else:
        c[0] += (x - t) + s[0]
    s[0] = t


cdef inline double _moment(long n, double beta) noexcept nogil:
    cdef double m
    cdef long k
    if n % 2:
        return 0.0
    m = sqrt(M_PI / beta)
    k = 2
    while k <= n:
        m *= (k - 1) / (2.0 * beta)
        k += 2
    return m


def gaussian_moment(long n, double beta):
    return _moment(n, beta)


cdef double complex _sp(const double complex[:] a, const double complex[:] b,
                        const double[:] w, bint weighted) noexcept nogil:
    cdef Py_ssize_t l
    cdef double sr = 0.0, cr = 0.0, si = 0.0, ci = 0.0
    cdef double ar, ai, br, bi, pr, pi_
    for l in range(a.shape[0]):
        ar = a[l].real
        ai = -a[l].imag
        br = b[l].real
        bi = b[l].imag
        pr = ar * br - ai * bi
        pi_ = ar * bi + ai * br
        if weighted:
            pr = w[l] * pr
            pi_ = w[l] * pi_
        _acc(pr, &sr, &cr)
        _acc(pi_, &si, &ci)
    return (sr + cr) + 1j * (si + ci)


def sp_channel(const double complex[:] a, const double complex[:] b, const double[:] w=None):
    if a.shape[0] != b.shape[0]:
        raise ValueError("length mismatch")
    return _sp(a, b, w, w is not None)


def sp_pair(const double complex[:] a1, const double complex[:] b1,
            const double complex[:] a2, const double complex[:] b2):
    if a1.shape[0] != b1.shape[0] or a2.shape[0] != b2.shape[0]:
        raise ValueError("length mismatch")
    return _sp(a1, b1, None, False), _sp(a2, b2, None, False)


def gram_channel(rows, const double[:] w=None):
    cdef const double complex[:, :] r = np.ascontiguousarray(rows, dtype=np.complex128)
    cdef Py_ssize_t k = r.shape[0], i, j
    out = np.empty((k, k), dtype=np.complex128)
    cdef double complex[:, :] o = out
    cdef bint weighted = w is not None
    for i in range(k):
        for j in range(k):
            o[i, j] = _sp(r[i], r[j], w, weighted)
    return out


def mgs_channel(rows, const double[:] w=None, double rel_tol=1e-10):
    src = np.ascontiguousarray(rows, dtype=np.complex128)
    cdef Py_ssize_t k = src.shape[0], n = src.shape[1], i, j, p, l
    q = np.zeros((k, n), dtype=np.complex128)
    v_arr = np.empty(n, dtype=np.complex128)
    cdef double complex[:, :] qv = q
    cdef const double complex[:, :] s = src
    cdef double complex[:] v = v_arr
    cdef bint weighted = w is not None
    cdef double in_norm, nrm, t
    cdef double complex r
    for i in range(k):
        for l in range(n):
            v[l] = s[i, l]
        t = _sp(v, v, w, weighted).real
        in_norm = sqrt(t) if t > 0 else 0.0
        for p in range(2):
            for j in range(i):
                r = _sp(qv[j], v, w, weighted)
                for l in range(n):
                    v[l] = v[l] - r * qv[j, l]
        t = _sp(v, v, w, weighted).real
        nrm = sqrt(t) if t > 0 else 0.0
        if nrm <= rel_tol * in_norm:
            return q, int(i)
        for l in range(n):
            qv[i, l] = v[l] / nrm
    return q, -1


cdef inline void _accl(long double x, long double* s, long double* c) noexcept nogil:
    cdef long double t = s[0] + x
    if fabsl(s[0]) >= fabsl(x):
        c[0] += (s[0] - t) + x
    else:
        c[0] += (x - t) + s[0]
    s[0] = t


def gauss_channel(nu, au, cu, nv, av, cv):
    # Term pairs cancel heavily for high-order Hermite functions; the
    # products and moments are formed in extended precision.
    cdef const long[:] n1 = np.ascontiguousarray(nu, dtype=np.int_)
    cdef const double[:] a1 = np.ascontiguousarray(au, dtype=np.float64)
    cdef const double complex[:] c1 = np.ascontiguousarray(cu, dtype=np.complex128)
    cdef const long[:] n2 = np.ascontiguousarray(nv, dtype=np.int_)
    cdef const double[:] a2 = np.ascontiguousarray(av, dtype=np.float64)
    cdef const double complex[:] c2 = np.ascontiguousarray(cv, dtype=np.complex128)
    cdef Py_ssize_t i, j
    cdef long n, k
    cdef long double pi_l = acosl(-1.0)
    cdef long double sr = 0.0, cr = 0.0, si = 0.0, ci = 0.0
    cdef long double xr, xi, yr, yi, pr, pi_, m, beta
    for i in range(n1.shape[0]):
        xr = c1[i].real
        xi = -c1[i].imag
        if xr == 0.0 and xi == 0.0:
            continue
        for j in range(n2.shape[0]):
            yr = c2[j].real
            yi = c2[j].imag
            if yr == 0.0 and yi == 0.0:
                continue
            n = n1[i] + n2[j]
            if n % 2:
                continue
            beta = <double>(a1[i] + a2[j])
            m = sqrtl(pi_l / beta)
            k = 2
            while k <= n:
                m *= (k - 1) / (2.0 * beta)
                k += 2
            pr = (xr * yr - xi * yi) * m
            pi_ = (xr * yi + xi * yr) * m
            _accl(pr, &sr, &cr)
            _accl(pi_, &si, &ci)
    return <double>(sr + cr) + 1j * <double>(si + ci)
