"""Pure-numpy implementations of the brute-force grid scans.

These are the hot loops of the verification suite (hundreds of millions of
grid evaluations per scan).  The compiled extension in ``_gridscan.pyx``
implements the same functions with identical arithmetic ordering, so both
backends return bit-identical results; this module is the fallback when the
extension is unavailable.

Grid convention: points are ``lo + k*step`` for ``k = 0..n-1`` with
``n = floor((hi-lo)/step) + 1``; scans run in row-major order (p1 outer,
p2 inner) and ties keep the first point encountered.
"""

from __future__ import annotations

import numpy as np

_CHUNK_ROWS = 256


def grid_1d(lo: float, hi: float, step: float) -> np.ndarray:
    n = int(np.floor((hi - lo) / step)) + 1
    return lo + np.arange(n, dtype=np.float64) * step


def residual_grid_candidates(a1, m1p1, m1p2, g1, a2, m2p1, m2p2, g2,
                             lo, hi, step, cutoff, cap=200000):
    """All grid points where the equilibrium-system residual is below cutoff.

    The system is ``r1 = p1*(a1 + m1p1*p1 + m1p2*p2) + g1`` and
    ``r2 = p2*(a2 + m2p1*p1 + m2p2*p2) + g2``; the scanned value is
    ``max(|r1|, |r2|)``.  Returns ``(p1s, p2s, vals)`` in scan order plus the
    global minimum as ``(best_p1, best_p2, best_val)``.
    """
    axis = grid_1d(lo, hi, step)
    out_p1, out_p2, out_v = [], [], []
    best_val = np.inf
    best_p1 = best_p2 = np.nan
    total = 0
    p2row = axis[np.newaxis, :]
    for start in range(0, axis.size, _CHUNK_ROWS):
        p1col = axis[start:start + _CHUNK_ROWS, np.newaxis]
        m1 = a1 + m1p1 * p1col + m1p2 * p2row
        r1 = p1col * m1 + g1
        m2 = a2 + m2p1 * p1col + m2p2 * p2row
        r2 = p2row * m2 + g2
        v = np.maximum(np.abs(r1), np.abs(r2))
        flat = np.argmin(v)
        fv = v.flat[flat]
        if fv < best_val:
            best_val = fv
            best_p1 = p1col[flat // v.shape[1], 0]
            best_p2 = axis[flat % v.shape[1]]
        ii, jj = np.nonzero(v < cutoff)
        total += ii.size
        if total > cap:
            raise RuntimeError(f"residual grid scan found > {cap} candidate "
                               "points; cutoff too loose for this system")
        if ii.size:
            out_p1.append(p1col[ii, 0])
            out_p2.append(axis[jj])
            out_v.append(v[ii, jj])
    cat = (np.concatenate(out_p1) if out_p1 else np.empty(0),
           np.concatenate(out_p2) if out_p2 else np.empty(0),
           np.concatenate(out_v) if out_v else np.empty(0))
    return cat[0], cat[1], cat[2], best_p1, best_p2, best_val


def joint_grid_argmax(c1, c2, q11, q22, q12, lo1, hi1, lo2, hi2, step):
    """Maximize ``c1*p1 + c2*p2 + q11*p1^2 + q22*p2^2 + q12*p1*p2`` on a grid.

    Returns ``(p1, p2, value)`` of the first maximizing grid point in scan
    order.
    """
    ax1 = grid_1d(lo1, hi1, step)
    ax2 = grid_1d(lo2, hi2, step)
    best_val = -np.inf
    best_p1 = best_p2 = np.nan
    p2row = ax2[np.newaxis, :]
    for start in range(0, ax1.size, _CHUNK_ROWS):
        p1col = ax1[start:start + _CHUNK_ROWS, np.newaxis]
        u = (c1 * p1col + c2 * p2row + q11 * p1col * p1col
             + q22 * p2row * p2row + q12 * p1col * p2row)
        flat = np.argmax(u)
        fv = u.flat[flat]
        if fv > best_val:
            best_val = fv
            best_p1 = p1col[flat // u.shape[1], 0]
            best_p2 = ax2[flat % u.shape[1]]
    return best_p1, best_p2, best_val
