"""Dense two-phase tableau simplex used as an independent reference solver.

The production estimator solves its linear programs with scipy's HiGHS
interface; this module provides a from-scratch solver implementing a
different algorithm so small instances can be cross-checked against an
independent code path.  It is written for clarity and reliability on small
dense problems, not speed: Bland's rule everywhere, so it cannot cycle.

Supported variable bounds are the four kinds the estimator emits:
free, nonnegative, nonpositive, and fixed-at-zero.
"""

from __future__ import annotations

import numpy as np

_TOL = 1e-9
_FEAS_TOL = 1e-7


def solve(c, a_ub=None, b_ub=None, a_eq=None, b_eq=None, bounds=None):
    """Minimize ``c @ x`` s.t. ``a_ub @ x <= b_ub``, ``a_eq @ x == b_eq``.

    ``bounds`` is a per-variable list of (lo, hi) out of (0, None),
    (None, None), (None, 0), (0, 0); None entries of the list mean (0, None).
    Returns ``(status, x, objective)`` with status one of "optimal",
    "infeasible", "unbounded".
    """
    c = np.asarray(c, dtype=float)
    nvar = c.size
    a_ub = np.empty((0, nvar)) if a_ub is None else np.asarray(a_ub, dtype=float)
    b_ub = np.empty(0) if b_ub is None else np.asarray(b_ub, dtype=float)
    a_eq = np.empty((0, nvar)) if a_eq is None else np.asarray(a_eq, dtype=float)
    b_eq = np.empty(0) if b_eq is None else np.asarray(b_eq, dtype=float)
    if bounds is None:
        bounds = [(0, None)] * nvar

    # Map original variables onto nonnegative standard-form columns.
    # pos_col[i]/neg_col[i] give the columns contributing +x_i and -x_i.
    pos_col = [-1] * nvar
    neg_col = [-1] * nvar
    ncols = 0
    for i, bnd in enumerate(bounds):
        lo, hi = (0, None) if bnd is None else bnd
        if (lo, hi) == (0, None):
            pos_col[i] = ncols
            ncols += 1
        elif (lo, hi) == (None, None):
            pos_col[i] = ncols
            neg_col[i] = ncols + 1
            ncols += 2
        elif (lo, hi) == (None, 0):
            neg_col[i] = ncols
            ncols += 1
        elif (lo, hi) == (0, 0):
            pass
        else:
            raise NotImplementedError(f"unsupported bound {bnd!r}")

    nslack = a_ub.shape[0]
    total = ncols + nslack
    nrows = nslack + a_eq.shape[0]
    A = np.zeros((nrows, total))
    b = np.concatenate([b_ub, b_eq])
    cs = np.zeros(total)

    def emit(rows_src, row_off):
        for r in range(rows_src.shape[0]):
            for i in range(nvar):
                v = rows_src[r, i]
                if v == 0.0:
                    continue
                if pos_col[i] >= 0:
                    A[row_off + r, pos_col[i]] += v
                if neg_col[i] >= 0:
                    A[row_off + r, neg_col[i]] -= v

    emit(a_ub, 0)
    emit(a_eq, nslack)
    for r in range(nslack):
        A[r, ncols + r] = 1.0
    for i in range(nvar):
        if pos_col[i] >= 0:
            cs[pos_col[i]] += c[i]
        if neg_col[i] >= 0:
            cs[neg_col[i]] -= c[i]

    neg_rows = b < 0
    A[neg_rows] *= -1.0
    b = np.where(neg_rows, -b, b)

    status, xs = _two_phase(A, b, cs)
    if status != "optimal":
        return status, None, None
    x = np.zeros(nvar)
    for i in range(nvar):
        if pos_col[i] >= 0:
            x[i] += xs[pos_col[i]]
        if neg_col[i] >= 0:
            x[i] -= xs[neg_col[i]]
    return "optimal", x, float(c @ x)


def _two_phase(A, b, c):
    m, n = A.shape
    # Phase 1: artificial basis, minimize sum of artificials.
    T = np.zeros((m + 1, n + m + 1))
    T[:m, :n] = A
    T[:m, n:n + m] = np.eye(m)
    T[:m, -1] = b
    basis = list(range(n, n + m))
    T[m, n:n + m] = 1.0
    for r in range(m):
        T[m] -= T[r]
    status = _iterate(T, basis, allowed=n + m)
    if status == "unbounded":  # cannot happen in phase 1
        return "infeasible", None
    if -T[m, -1] > _FEAS_TOL:
        return "infeasible", None
    # Pivot remaining artificials out of the basis where possible.
    for r in range(m):
        if basis[r] >= n:
            piv = next((j for j in range(n) if abs(T[r, j]) > _TOL), None)
            if piv is not None:
                _pivot(T, basis, r, piv)
    keep = [r for r in range(m) if basis[r] < n]
    drop_rows = [r for r in range(m) if basis[r] >= n]
    if drop_rows:
        # Rows still basic in an artificial are redundant (zero rows).
        T = np.delete(T, drop_rows, axis=0)
        basis = [basis[r] for r in keep]
        m = len(basis)
    # Phase 2: swap in the real objective.
    T = np.delete(T, np.s_[n:n + (T.shape[1] - 1 - n)], axis=1)
    T[-1, :] = 0.0
    T[-1, :n] = c
    for r in range(m):
        T[-1] -= c[basis[r]] * T[r]
    status = _iterate(T, basis, allowed=n)
    if status != "optimal":
        return status, None
    x = np.zeros(n)
    for r, j in enumerate(basis):
        x[j] = T[r, -1]
    return "optimal", x


def _iterate(T, basis, allowed):
    m = T.shape[0] - 1
    while True:
        # Bland's rule: first column with a negative reduced cost.
        enter = next((j for j in range(allowed) if T[m, j] < -_TOL), None)
        if enter is None:
            return "optimal"
        leave = -1
        best = np.inf
        for r in range(m):
            if T[r, enter] > _TOL:
                ratio = T[r, -1] / T[r, enter]
                if ratio < best - _TOL or (
                        abs(ratio - best) <= _TOL
                        and (leave < 0 or basis[r] < basis[leave])):
                    best = ratio
                    leave = r
        if leave < 0:
            return "unbounded"
        _pivot(T, basis, leave, enter)


def _pivot(T, basis, row, col):
    T[row] /= T[row, col]
    for r in range(T.shape[0]):
        if r != row and T[r, col] != 0.0:
            T[r] -= T[r, col] * T[row]
    basis[row] = col
