"""Grid search over solver hyperparameters and Table-style benchmark rows."""

import csv
import io
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from sklearn.model_selection import ParameterGrid

from .estimator import TL1Denoiser
from .metrics import psnr, ssim

#: environment variable holding the worker-thread count for sweeps
THREADS_ENV = "TL1DENOISE_THREADS"

BENCH_HEADER = ["method", "image", "ssim", "psnr_db", "iterations", "seconds"]
SWEEP_HEADER = BENCH_HEADER + ["mu", "lambda", "a"]
CSV_SCHEMA_VERSION = 1

# Search ranges only; none of these is a recommended operating point.
DEFAULT_MU_GRID = (5.0, 10.0, 15.0, 20.0, 30.0)
DEFAULT_LAMBDA_GRID = (3.0, 10.0, 30.0)
DEFAULT_A_GRID = (0.1, 0.3, 1.0, 3.0)


@dataclass(frozen=True)
class SweepGrid:
    mu_values: tuple
    lambda_values: tuple
    a_values: tuple = (1.0,)
    objective: str = "ssim"

    def __post_init__(self):
        for name in ("mu_values", "lambda_values", "a_values"):
            vals = tuple(float(v) for v in getattr(self, name))
            if not vals:
                raise ValueError(f"{name} is empty")
            if any(not math.isfinite(v) or v <= 0 for v in vals):
                raise ValueError(f"{name} must contain finite positive values")
            object.__setattr__(self, name, tuple(sorted(vals)))
        if self.objective not in ("ssim", "psnr"):
            raise ValueError(f"objective must be 'ssim' or 'psnr', got {self.objective!r}")

    def points(self, method):
        # a is irrelevant for L1, so do not repeat identical runs
        a_values = self.a_values if method == "tl1" else self.a_values[:1]
        return list(ParameterGrid({"mu": list(self.mu_values),
                                   "lam": list(self.lambda_values),
                                   "a": list(a_values)}))


@dataclass
class BenchRow:
    method: str
    image: str
    ssim: float
    psnr_db: float
    iterations: int
    seconds: float = float("nan")
    params: dict = field(default_factory=dict)

    def csv_fields(self, with_params=False):
        row = [self.method, self.image, f"{self.ssim:.6f}", f"{self.psnr_db:.4f}",
               str(self.iterations),
               "nan" if math.isnan(self.seconds) else f"{self.seconds:.3f}"]
        if with_params:
            row += [repr(float(self.params[k])) for k in ("mu", "lam", "a")]
        return row


def n_threads():
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def evaluate_params(clean, noisy, method, params, image="image", tol=1e-4,
                    max_iters=200, timing=False):
    """Denoise once with ``params`` and score the result against ``clean``."""
    kw = dict(params)
    if method != "tl1":
        kw.pop("a", None)
    est = TL1Denoiser(method=method, tol=tol, max_iters=max_iters, **kw).fit()
    t0 = time.perf_counter()
    u = est.transform(noisy)
    elapsed = time.perf_counter() - t0
    return BenchRow(method=method, image=image, ssim=ssim(u, clean), psnr_db=psnr(u, clean),
                    iterations=est.reports_[0].iterations_run,
                    seconds=elapsed if timing else float("nan"),
                    params={"mu": params["mu"], "lam": params["lam"],
                            "a": params.get("a", 1.0) if method == "tl1" else float("nan")})


def run_sweep(clean, noisy, method, grid, image="image", tol=1e-4, max_iters=200,
              timing=False, n_jobs=None):
    """Evaluate every grid point; rows sorted best-first by ``grid.objective``.

    Ties keep grid order, and rows do not depend on thread scheduling.
    """
    points = grid.points(method)
    n_jobs = n_jobs or n_threads()

    def run(p):
        return evaluate_params(clean, noisy, method, p, image=image, tol=tol,
                               max_iters=max_iters, timing=timing)

    if n_jobs > 1:
        with ThreadPoolExecutor(max_workers=n_jobs) as pool:
            rows = list(pool.map(run, points))
    else:
        rows = [run(p) for p in points]
    key = "ssim" if grid.objective == "ssim" else "psnr_db"
    return sorted(rows, key=lambda r: -getattr(r, key))


def rows_to_csv(rows, with_params=False):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SWEEP_HEADER if with_params else BENCH_HEADER)
    for r in rows:
        writer.writerow(r.csv_fields(with_params))
    return buf.getvalue()


def rows_to_markdown(rows):
    """Methods as rows, one SSIM/PSNR column pair per image."""
    images = list(dict.fromkeys(r.image for r in rows))
    methods = list(dict.fromkeys(r.method for r in rows))
    cell = {(r.method, r.image): r for r in rows}
    head = "| Method | " + " | ".join(f"{im} SSIM | {im} PSNR" for im in images) + " |"
    sep = "|---|" + "---|---|" * len(images)
    lines = [head, sep]
    for m in methods:
        vals = []
        for im in images:
            r = cell.get((m, im))
            vals += [f"{r.ssim:.4f}", f"{r.psnr_db:.2f}"] if r else ["", ""]
        lines.append(f"| {m} | " + " | ".join(vals) + " |")
    return "\n".join(lines) + "\n"

