"""Image denoising with Transformed-L1 gradient regularisation solved by ADMM."""

from .admm import (DenoiseReport, Method, SolverNumericError, SolverParams, SolverState,
                   denoise, objective_value, step)
from .estimator import TL1Denoiser
from .imagegrid import (GradientField, div_x, div_y, grad_x, grad_y, laplacian,
                        laplacian_kernel)
from .imageio import (NoiseSpec, add_gaussian_noise, make_phantom, read_image,
                      write_image)
from .metrics import MetricResult, psnr, ssim
from .prox import (prox_oracle, prox_tl1_plane, prox_tl1_scalar, soft_threshold,
                   tl1_penalty)
from .spectral import LaplacianSpectrum, precompute_spectrum, solve_u

__version__ = "0.1.0"

__all__ = [
    "DenoiseReport", "GradientField", "LaplacianSpectrum", "Method", "MetricResult",
    "NoiseSpec", "SolverNumericError", "SolverParams", "SolverState", "TL1Denoiser",
    "add_gaussian_noise", "denoise", "div_x", "div_y", "grad_x", "grad_y", "laplacian",
    "laplacian_kernel", "make_phantom", "objective_value", "precompute_spectrum",
    "prox_oracle", "prox_tl1_plane", "prox_tl1_scalar", "psnr", "read_image",
    "soft_threshold", "solve_u", "ssim", "step", "tl1_penalty", "write_image",
]
