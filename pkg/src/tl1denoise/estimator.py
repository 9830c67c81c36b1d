"""scikit-learn compatible wrapper around :func:`tl1denoise.admm.denoise`."""

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .admm import SolverParams, denoise
from .metrics import psnr, ssim


class TL1Denoiser(TransformerMixin, BaseEstimator):
    """Gradient-sparsity image denoiser with a TL1 or L1 penalty.

    ``transform`` takes a single 2-D image or a 3-D stack ``(n_images, N, M)``
    and returns denoised images of the same shape. There is nothing to learn,
    so ``fit`` only validates the hyperparameters; it exists so the estimator
    drops into pipelines and ``clone``/``set_params`` based tuning.

    Parameters
    ----------
    mu : float, default=10.0
        Data-fidelity weight.
    lam : float, default=10.0
        ADMM penalty parameter; the prox step is ``1/lam``.
    a : float, default=1.0
        TL1 shape parameter (ignored when ``method="l1"``).
    method : {"tl1", "l1"}, default="tl1"
    tol : float, default=1e-4
    max_iters : int, default=200
    clamp : bool, default=False
        Clip the output to ``[0, 1]``. Iterates are never clipped.
    track : bool, default=False
        Keep residual and objective traces in ``reports_``.
    scoring : {"ssim", "psnr"}, default="ssim"
        Metric returned by :meth:`score`.

    Attributes
    ----------
    params_ : SolverParams
    reports_ : list of DenoiseReport
        One per image of the last ``transform`` call.
    """

    def __init__(self, mu=10.0, lam=10.0, a=1.0, method="tl1", tol=1e-4,
                 max_iters=200, clamp=False, track=False, scoring="ssim"):
        self.mu = mu
        self.lam = lam
        self.a = a
        self.method = method
        self.tol = tol
        self.max_iters = max_iters
        self.clamp = clamp
        self.track = track
        self.scoring = scoring

    def fit(self, X=None, y=None):
        self.params_ = SolverParams(mu=self.mu, lam=self.lam, a=self.a, tol=self.tol,
                                    max_iters=self.max_iters, method=self.method)
        if self.scoring not in ("ssim", "psnr"):
            raise ValueError(f"scoring must be 'ssim' or 'psnr', got {self.scoring!r}")
        self.reports_ = []
        return self

    def transform(self, X):
        check_is_fitted(self, "params_")
        X = np.asarray(X, dtype=np.float64)
        if X.ndim not in (2, 3):
            raise ValueError(f"expected a 2-D image or 3-D stack, got ndim={X.ndim}")
        stack = X[None] if X.ndim == 2 else X
        out = np.empty_like(stack)
        self.reports_ = []
        for i, img in enumerate(stack):
            u, report = denoise(img, self.params_, track=self.track)
            out[i] = np.clip(u, 0.0, 1.0) if self.clamp else u
            self.reports_.append(report)
        return out[0] if X.ndim == 2 else out

    def score(self, X, y):
        """Mean SSIM (or PSNR) of the denoised ``X`` against clean ``y``."""
        if not hasattr(self, "params_"):
            self.fit()
        metric = ssim if self.scoring == "ssim" else psnr
        U = self.transform(X)
        y = np.asarray(y, dtype=np.float64)
        if U.ndim == 2:
            return metric(U, y)
        return float(np.mean([metric(u, c) for u, c in zip(U, y)]))
