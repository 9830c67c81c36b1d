"""ADMM solver for gradient-regularised denoising with a TL1 or L1 penalty.

Minimises ``sum TL1_a(Dx u) + sum TL1_a(Dy u) + mu/2 ||u - f||^2`` by
splitting ``d = grad u``. One sweep performs, in order:

1. ``u``  <- FFT solve of ``(mu + lam*Laplacian) u = mu f + lam D^T(d - b)``
2. ``dx`` <- prox(``Dx u + bx``), ``dy`` <- prox(``Dy u + by``)
3. ``bx`` <- ``bx + Dx u - dx``, ``by`` <- ``by + Dy u - dy``

and stops once ``||u_new - u_old|| / max(1, ||u_old||) < tol``.
"""

import enum
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from ._validation import check_positive, check_same_shape
from .imagegrid import GradientField, as_image, grad_x, grad_y
from .prox import prox_tl1_plane, soft_threshold, tl1_penalty
from .spectral import cached_spectrum, solve_u


class Method(str, enum.Enum):
    TL1 = "tl1"
    L1 = "l1"


class SolverNumericError(ArithmeticError):
    """Raised when an iterate becomes non-finite."""

    def __init__(self, iteration, what):
        super().__init__(f"non-finite {what} at iteration {iteration}")
        self.iteration = iteration


@dataclass(frozen=True)
class SolverParams:
    """Hyperparameters of one ADMM run.

    ``a`` is ignored for ``method="l1"``.
    """

    mu: float
    lam: float
    a: float = 1.0
    tol: float = 1e-4
    max_iters: int = 200
    method: Method = Method.TL1

    def __post_init__(self):
        object.__setattr__(self, "method", Method(self.method))
        check_positive(self.mu, "mu")
        check_positive(self.lam, "lam")
        check_positive(self.a, "a")
        # tol = 0 is allowed: it forces exactly max_iters sweeps
        if not np.isfinite(self.tol) or self.tol < 0:
            raise ValueError(f"tol must be finite and nonnegative, got {self.tol}")
        if int(self.max_iters) != self.max_iters or self.max_iters < 1:
            raise ValueError(f"max_iters must be a positive integer, got {self.max_iters}")

    def to_dict(self):
        d = asdict(self)
        d["method"] = self.method.value
        return d


@dataclass(frozen=True)
class SolverState:
    u: np.ndarray
    d: GradientField
    b: GradientField
    iteration: int = 0

    @classmethod
    def initial(cls, f):
        return cls(u=f.copy(), d=GradientField.zeros(f.shape), b=GradientField.zeros(f.shape))


@dataclass
class DenoiseReport:
    """Diagnostics of a :func:`denoise` run; traces have one entry per sweep."""

    iterations_run: int = 0
    final_rel_change: float = float("nan")
    converged: bool = False
    rel_change_trace: list = field(default_factory=list)
    primal_residual_trace: list = field(default_factory=list)
    objective_trace: list = field(default_factory=list)
    elapsed: float = 0.0

    def to_dict(self):
        return asdict(self)


def objective_value(u, f, params):
    """Energy ``J(u) + mu/2 ||u - f||^2``; ``J`` is TL1 or L1 on both differences."""
    check_same_shape(u, f, names=("u", "f"))
    gx, gy = grad_x(u), grad_y(u)
    if params.method is Method.TL1:
        reg = tl1_penalty(gx, params.a) + tl1_penalty(gy, params.a)
    else:
        reg = float(np.abs(gx).sum() + np.abs(gy).sum())
    return reg + 0.5 * params.mu * float(np.sum((u - f) ** 2))


def _shrink(z, params):
    if params.method is Method.TL1:
        return prox_tl1_plane(z, params.lam, params.a)
    return soft_threshold(z, 1.0 / params.lam)


def step(state, f, params, spectrum):
    """One full ADMM sweep (u, then dx and dy, then bx and by)."""
    k = state.iteration + 1
    with np.errstate(invalid="ignore", over="ignore"):
        px = state.d.dx - state.b.dx
        py = state.d.dy - state.b.dy
    if not (np.all(np.isfinite(px)) and np.all(np.isfinite(py))):
        raise SolverNumericError(k, "u-subproblem input")
    u = solve_u(f, px, py, spectrum)
    gx, gy = grad_x(u), grad_y(u)
    dx = _shrink(gx + state.b.dx, params)
    dy = _shrink(gy + state.b.dy, params)
    bx = state.b.dx + (gx - dx)
    by = state.b.dy + (gy - dy)
    for name, arr in (("u", u), ("d", dx), ("d", dy), ("b", bx), ("b", by)):
        if not np.all(np.isfinite(arr)):
            raise SolverNumericError(k, name)
    return SolverState(u=u, d=GradientField(dx, dy), b=GradientField(bx, by), iteration=k)


def relative_change(u_new, u_old):
    return float(np.linalg.norm(u_new - u_old) / max(1.0, np.linalg.norm(u_old)))


def primal_residual(state):
    """``||grad u - d||_2`` over both components."""
    rx = grad_x(state.u) - state.d.dx
    ry = grad_y(state.u) - state.d.dy
    return float(np.sqrt(np.sum(rx * rx) + np.sum(ry * ry)))


def denoise(f, params, track=True, callback=None):
    """Denoise ``f`` by ADMM.

    Parameters
    ----------
    f : array_like, shape (N, M)
        Noisy image, at least 2x2. Values are not clamped.
    params : SolverParams
    track : bool, default True
        Record primal residual and objective each sweep. When False those
        traces stay empty; the relative-change trace is always kept.
    callback : callable, optional
        Called as ``callback(state)`` after every sweep.

    Returns
    -------
    u : ndarray
        Final iterate. Hitting ``max_iters`` is not an error; see
        ``report.converged``.
    report : DenoiseReport
    """
    f = as_image(f, "f")
    if not isinstance(params, SolverParams):
        raise TypeError("params must be a SolverParams instance")
    spectrum = cached_spectrum(f.shape[0], f.shape[1], params.mu, params.lam)
    report = DenoiseReport()
    state = SolverState.initial(f)
    t0 = time.perf_counter()
    for _ in range(params.max_iters):
        u_old = state.u
        state = step(state, f, params, spectrum)
        rel = relative_change(state.u, u_old)
        report.rel_change_trace.append(rel)
        if track:
            report.primal_residual_trace.append(primal_residual(state))
            report.objective_trace.append(objective_value(state.u, f, params))
        if callback is not None:
            callback(state)
        if rel < params.tol:
            report.converged = True
            break
    report.iterations_run = state.iteration
    report.final_rel_change = report.rel_change_trace[-1]
    report.elapsed = time.perf_counter() - t0
    return state.u, report

