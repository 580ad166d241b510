# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled grid-scan kernels.

Arithmetic ordering mirrors ``_fallback.py`` exactly (and the extension is
built with -ffp-contract=off), so both backends produce bit-identical
results.  See the fallback module for the grid and tie-breaking conventions.
"""

from libc.math cimport fabs, floor

import numpy as np

cimport numpy as cnp

cnp.import_array()


def grid_1d(double lo, double hi, double step):
    n = int(floor((hi - lo) / step)) + 1
    return lo + np.arange(n, dtype=np.float64) * step


def residual_grid_candidates(double a1, double m1p1, double m1p2, double g1,
                             double a2, double m2p1, double m2p2, double g2,
                             double lo, double hi, double step, double cutoff,
                             int cap=200000):
    """See ``_fallback.residual_grid_candidates``."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] axis = grid_1d(lo, hi, step)
    cdef Py_ssize_t n = axis.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] cp1 = np.empty(cap, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] cp2 = np.empty(cap, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] cv = np.empty(cap, dtype=np.float64)
    cdef double[:] ax = axis
    cdef double[:] op1 = cp1
    cdef double[:] op2 = cp2
    cdef double[:] ov = cv
    cdef Py_ssize_t i, j, found = 0
    cdef double p1, p2, m1, r1, m2, r2, v, va, vb
    cdef double best_val = np.inf
    cdef double best_p1 = np.nan, best_p2 = np.nan
    cdef bint overflow = False
    with nogil:
        for i in range(n):
            p1 = ax[i]
            for j in range(n):
                p2 = ax[j]
                m1 = (a1 + (m1p1 * p1)) + (m1p2 * p2)
                r1 = (p1 * m1) + g1
                m2 = (a2 + (m2p1 * p1)) + (m2p2 * p2)
                r2 = (p2 * m2) + g2
                va = fabs(r1)
                vb = fabs(r2)
                v = va if va > vb else vb
                if v < best_val:
                    best_val = v
                    best_p1 = p1
                    best_p2 = p2
                if v < cutoff:
                    if found >= cap:
                        overflow = True
                        break
                    op1[found] = p1
                    op2[found] = p2
                    ov[found] = v
                    found += 1
            if overflow:
                break
    if overflow:
        raise RuntimeError(f"residual grid scan found > {cap} candidate "
                           "points; cutoff too loose for this system")
    return (cp1[:found].copy(), cp2[:found].copy(), cv[:found].copy(),
            best_p1, best_p2, best_val)


def joint_grid_argmax(double c1, double c2, double q11, double q22, double q12,
                      double lo1, double hi1, double lo2, double hi2,
                      double step):
    """See ``_fallback.joint_grid_argmax``."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] axis1 = grid_1d(lo1, hi1, step)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] axis2 = grid_1d(lo2, hi2, step)
    cdef double[:] ax1 = axis1
    cdef double[:] ax2 = axis2
    cdef Py_ssize_t n1 = axis1.shape[0], n2 = axis2.shape[0]
    cdef Py_ssize_t i, j
    cdef double p1, p2, u
    cdef double best_val = -np.inf
    cdef double best_p1 = np.nan, best_p2 = np.nan
    with nogil:
        for i in range(n1):
            p1 = ax1[i]
            for j in range(n2):
                p2 = ax2[j]
                u = (((((c1 * p1) + (c2 * p2)) + ((q11 * p1) * p1))
                      + ((q22 * p2) * p2)) + ((q12 * p1) * p2))
                if u > best_val:
                    best_val = u
                    best_p1 = p1
                    best_p2 = p2
    return best_p1, best_p2, best_val
