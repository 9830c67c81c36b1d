r"""Transformed-L1 penalty and its proximal operator.

The TL1 penalty of a scalar is :math:`\rho_a(v) = (a+1)|v| / (a+|v|)`. It is
concave on each half-line, interpolates between the counting "norm"
(``a -> 0``) and the absolute value (``a -> inf``), and has a closed-form
proximal map built from the trigonometric root of a depressed cubic.
"""

import numpy as np

from ._validation import check_positive


def tl1_penalty(x, a):
    """Sum of ``(a+1)|x_i| / (a+|x_i|)`` over all entries of ``x``."""
    a = check_positive(a, "a")
    ax = np.abs(np.asarray(x, dtype=np.float64))
    return float(np.sum((a + 1.0) * ax / (a + ax)))


def _tl1_terms(v, a):
    av = np.abs(v)
    return (a + 1.0) * av / (a + av)


def prox_objective(v, x, lam, a):
    """Objective ``rho_a(v) + lam/2 * (v - x)**2`` minimised by :func:`prox_tl1_scalar`."""
    v = np.asarray(v, dtype=np.float64)
    return _tl1_terms(v, a) + 0.5 * lam * (v - x) ** 2


def tl1_threshold(lam, a):
    """Magnitude at or below which the TL1 prox returns exactly zero.

    With step ``beta = 1/lam`` the threshold is ``beta*(a+1)/a`` when
    ``beta <= a**2 / (2*(a+1))`` and ``sqrt(2*beta*(a+1)) - a/2`` otherwise.
    """
    beta = 1.0 / lam
    if beta <= a * a / (2.0 * (a + 1.0)):
        return beta * (a + 1.0) / a
    return np.sqrt(2.0 * beta * (a + 1.0)) - 0.5 * a


def prox_tl1_plane(z, lam, a):
    """Apply the TL1 proximal map entrywise to an array.

    Computes ``argmin_v rho_a(v) + lam/2 (v - z)**2`` for each entry of ``z``.

    Parameters
    ----------
    z : array_like
        Input values, any shape.
    lam : float
        Quadratic coupling weight; the prox step is ``1/lam``.
    a : float
        TL1 shape parameter.

    Returns
    -------
    ndarray
        Array of the same shape as ``z``. Entries with ``|z| <= t`` map to 0,
        where ``t`` is :func:`tl1_threshold`; ties at ``|z| == t`` go to 0.
    """
    lam = check_positive(lam, "lam")
    a = check_positive(a, "a")
    z = np.asarray(z, dtype=np.float64)
    beta = 1.0 / lam
    out = np.zeros_like(z)
    keep = np.abs(z) > tl1_threshold(lam, a)
    zk = z[keep]
    az = np.abs(zk)
    cos_arg = 1.0 - 27.0 * beta * a * (a + 1.0) / (2.0 * (a + az) ** 3)
    phi = np.arccos(np.clip(cos_arg, -1.0, 1.0))
    mag = (2.0 / 3.0) * (a + az) * np.cos(phi / 3.0) - (2.0 / 3.0) * a + az / 3.0
    # guard the magnitude into [0, |z|]; round-off can push it a few ulps out
    out[keep] = np.copysign(np.clip(mag, 0.0, az), zk)
    return out


def prox_tl1_scalar(x, lam, a):
    """Scalar TL1 proximal map; see :func:`prox_tl1_plane`."""
    return float(prox_tl1_plane(np.array([x], dtype=np.float64), lam, a)[0])


def soft_threshold(x, t):
    """``sign(x) * max(|x| - t, 0)``, the proximal map of ``t*|.|``.

    Works on scalars and arrays; returns the same kind it was given.
    """
    if t < 0:
        raise ValueError(f"threshold must be nonnegative, got {t}")
    x_arr = np.asarray(x, dtype=np.float64)
    out = np.copysign(np.maximum(np.abs(x_arr) - t, 0.0), x_arr)
    if out.ndim == 0:
        return float(out)
    return out


_INVPHI = (np.sqrt(5.0) - 1.0) / 2.0


def _golden_min(fun, lo, hi, tol):
    """Vectorised golden-section search of ``fun`` on ``[lo, hi]`` (arrays)."""
    lo = lo.copy()
    hi = hi.copy()
    while np.max(hi - lo) > tol:
        c = hi - _INVPHI * (hi - lo)
        d = lo + _INVPHI * (hi - lo)
        left = fun(c) < fun(d)
        hi = np.where(left, d, hi)
        lo = np.where(left, lo, c)
    return 0.5 * (lo + hi)


def prox_oracle(x, lam, a, n_grid=100_001, tol=1e-12, chunk=16):
    """Brute-force TL1 prox for validating the closed form.

    Scans the objective on a uniform grid of ``n_grid`` points over
    ``[0, |x|]`` (the minimiser shrinks towards 0 and keeps the sign of
    ``x``), then refines around the best grid point by golden-section search
    to ``tol``. Accepts scalars or 1-D arrays of equal length for ``x``,
    ``lam`` and ``a``. Slow by design; intended for tests.
    """
    x, lam, a = np.broadcast_arrays(*(np.atleast_1d(np.asarray(v, dtype=np.float64))
                                      for v in (x, lam, a)))
    scalar = np.ndim(x) == 1 and x.size == 1 and np.ndim(lam) == 1
    ax = np.abs(x)
    base = np.linspace(0.0, 1.0, n_grid)
    out = np.empty_like(ax)
    v = np.empty((chunk, n_grid))
    w = np.empty((chunk, n_grid))
    for s in range(0, ax.size, chunk):
        xs = ax[s:s + chunk, None]
        ls = lam[s:s + chunk, None]
        as_ = a[s:s + chunk, None]
        m = xs.shape[0]
        vv, ww = v[:m], w[:m]
        # objective on the grid, computed in place to bound memory traffic
        np.multiply(base, xs, out=vv)
        np.add(vv, as_, out=ww)
        np.divide(vv, ww, out=ww)
        ww *= as_ + 1.0
        vv -= xs
        np.square(vv, out=vv)
        vv *= 0.5 * ls
        vv += ww
        k = np.argmin(vv, axis=1)
        step = xs[:, 0] / (n_grid - 1)
        lo = np.maximum(k - 1, 0) * step
        hi = np.minimum(k + 1, n_grid - 1) * step
        xs1, ls1, as1 = xs[:, 0], ls[:, 0], as_[:, 0]

        def fun(t):
            return (as1 + 1.0) * t / (as1 + t) + 0.5 * ls1 * (t - xs1) ** 2

        ref = _golden_min(fun, lo, hi, tol)
        # endpoints are candidates too; keep whichever is lowest
        cands = np.stack([np.zeros_like(ref), ref, xs1])
        vals = np.stack([fun(cands[0]), fun(cands[1]), fun(cands[2])])
        out[s:s + chunk] = cands[np.argmin(vals, axis=0), np.arange(m)]
    out = np.copysign(out, x)
    out[ax == 0] = 0.0
    if scalar:
        return float(out[0])
    return out
