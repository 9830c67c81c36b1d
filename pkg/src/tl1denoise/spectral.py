"""Closed-form FFT solve of the image subproblem.

Under periodic boundaries ``mu*I + lambda*(Dx^T Dx + Dy^T Dy)`` is circulant,
so it is diagonal in the 2-D DFT basis with eigenvalues
``mu + lambda * (4 - 2cos(2*pi*p/N) - 2cos(2*pi*q/M))``.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ._validation import check_positive, check_same_shape
from .imagegrid import div_x, div_y, laplacian_kernel

@dataclass(frozen=True)
class LaplacianSpectrum:
    """Frequency-domain denominator ``mu + lambda * F[K]`` for one grid shape.

    ``denom`` is the full N x M spectrum; ``half`` is its first ``M//2 + 1``
    columns, which is all a real-input transform needs.
    """

    denom: np.ndarray
    mu: float
    lam: float

    @property
    def shape(self):
        return self.denom.shape

    @property
    def half(self):
        return self.denom[:, : self.denom.shape[1] // 2 + 1]


def precompute_spectrum(kernel, mu, lam):
    """Build the :class:`LaplacianSpectrum` for ``kernel`` and weights ``mu``, ``lam``.

    Parameters
    ----------
    kernel : ndarray of shape (N, M)
        Laplacian kernel as returned by :func:`~tl1denoise.imagegrid.laplacian_kernel`.
    mu, lam : float
        Fidelity weight and ADMM penalty parameter, both strictly positive.
    """
    mu = check_positive(mu, "mu")
    lam = check_positive(lam, "lam")
    fk = np.fft.fft2(np.asarray(kernel, dtype=np.float64))
    if np.max(np.abs(fk.imag)) > 1e-10:
        raise ValueError("kernel spectrum is not real; kernel is not symmetric")
    denom = mu + lam * fk.real
    denom.setflags(write=False)
    return LaplacianSpectrum(denom=denom, mu=mu, lam=lam)


@lru_cache(maxsize=32)
def cached_spectrum(height, width, mu, lam):
    """Memoised :func:`precompute_spectrum` keyed by ``(N, M, mu, lambda)``."""
    return precompute_spectrum(laplacian_kernel(height, width), mu, lam)


def rhs(f, dx_minus_bx, dy_minus_by, mu, lam):
    """Right-hand side ``mu*f + lam*Dx^T(dx - bx) + lam*Dy^T(dy - by)``."""
    out = div_x(dx_minus_bx)
    out += div_y(dy_minus_by)
    out *= lam
    out += mu * f
    return out


def solve_u(f, dx_minus_bx, dy_minus_by, spectrum):
    """Minimise the augmented Lagrangian over the image variable.

    Solves ``(mu I + lam Dx^T Dx + lam Dy^T Dy) u = r`` exactly via FFT.

    Raises
    ------
    ValueError
        On shape mismatch with each other or with ``spectrum``, or on
        non-finite input.
    """
    check_same_shape(f, dx_minus_bx, dy_minus_by, spectrum.denom,
                     names=("f", "dx_minus_bx", "dy_minus_by", "spectrum"))
    r = rhs(f, dx_minus_bx, dy_minus_by, spectrum.mu, spectrum.lam)
    if not np.all(np.isfinite(r)):
        raise ValueError("non-finite values in the u-subproblem right-hand side")
    # real-input transform: Hermitian symmetry is implied, so the result is real
    spec = np.fft.rfft2(r)
    spec /= spectrum.half
    return np.fft.irfft2(spec, s=r.shape, out=r)
