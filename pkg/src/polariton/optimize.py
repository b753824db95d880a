"""Scalar minimization and threshold bisection."""

import math

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def golden_section(f, lo, hi, tol=1e-10, max_iter=200):
    """Minimize a unimodal ``f`` on ``[lo, hi]``.

    Returns ``(x_min, f_min, iterations)``.  ``tol`` is an absolute bracket
    width; it is floored at a few ulps of ``x`` so the loop terminates.
    """
    if hi < lo:
        lo, hi = hi, lo
    x1 = hi - INV_PHI * (hi - lo)
    x2 = lo + INV_PHI * (hi - lo)
    f1, f2 = f(x1), f(x2)
    it = 0
    while it < max_iter and (hi - lo) > max(tol, 4e-16 * abs(hi)):
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - INV_PHI * (hi - lo)
            f1 = f(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + INV_PHI * (hi - lo)
            f2 = f(x2)
        it += 1
    if f1 <= f2:
        return x1, f1, it
    return x2, f2, it


def bisect_threshold(predicate, lo, hi, tol=1e-9, max_iter=200):
    """Smallest ``x`` in ``[lo, hi]`` with ``predicate(x)`` true.

    ``predicate`` must be false at ``lo``, true at ``hi`` and monotone.
    """
    if predicate(lo):
        raise ValueError("predicate already true at lower bracket")
    if not predicate(hi):
        raise ValueError("predicate false at upper bracket")
    for _ in range(max_iter):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        if predicate(mid):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)
