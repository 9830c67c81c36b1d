"""Periodic finite differences on 2-D images and the matching Laplacian kernel.

Images are float64 arrays indexed ``(row, column)``. ``grad_x`` differences
along columns and ``grad_y`` along rows, both with periodic wrap-around, so
the operators are circulant and ``div_x``/``div_y`` are their exact
transposes.
"""

from typing import NamedTuple

import numpy as np

from ._validation import check_image


class GradientField(NamedTuple):
    """A pair of same-shape planes: x-derivative and y-derivative."""

    dx: np.ndarray
    dy: np.ndarray

    @classmethod
    def zeros(cls, shape):
        return cls(np.zeros(shape), np.zeros(shape))


def grad_x(u):
    """Forward difference along columns, ``u[i, j+1] - u[i, j]`` (periodic)."""
    return np.roll(u, -1, axis=1) - u


def grad_y(u):
    """Forward difference along rows, ``u[i+1, j] - u[i, j]`` (periodic)."""
    return np.roll(u, -1, axis=0) - u


def div_x(p):
    """Transpose of :func:`grad_x`: ``p[i, j-1] - p[i, j]`` (periodic).

    Note the sign: this is the adjoint, i.e. minus the usual divergence.
    """
    return np.roll(p, 1, axis=1) - p


def div_y(p):
    """Transpose of :func:`grad_y`: ``p[i-1, j] - p[i, j]`` (periodic)."""
    return np.roll(p, 1, axis=0) - p


def gradient(u):
    """Return both forward differences of ``u`` as a :class:`GradientField`."""
    return GradientField(grad_x(u), grad_y(u))


def laplacian(u):
    """Apply ``Dx^T Dx + Dy^T Dy`` (the positive semi-definite 5-point Laplacian)."""
    return div_x(grad_x(u)) + div_y(grad_y(u))


def laplacian_kernel(height, width):
    """Circular-convolution kernel of ``Dx^T Dx + Dy^T Dy`` on an N x M grid.

    The kernel has 4 at the origin and -1 at the four periodic neighbours
    ``(0, 1)``, ``(1, 0)``, ``(N-1, 0)`` and ``(0, M-1)``.
    """
    if int(height) != height or int(width) != width:
        raise TypeError("height and width must be integers")
    height, width = int(height), int(width)
    if height < 2 or width < 2:
        raise ValueError(f"kernel needs at least a 2x2 grid, got {height}x{width}")
    k = np.zeros((height, width))
    k[0, 0] = 4.0
    # += so that the 2-wide case, where (1, 0) and (N-1, 0) coincide, stays exact
    k[0, 1] -= 1.0
    k[1, 0] -= 1.0
    k[height - 1, 0] -= 1.0
    k[0, width - 1] -= 1.0
    return k


def as_image(img, name="image"):
    """Validate and convert ``img`` to a float64 plane of at least 2x2."""
    return check_image(img, name=name, min_size=2)
