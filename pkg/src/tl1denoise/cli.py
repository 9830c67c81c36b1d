"""Command-line interface: ``tl1denoise {denoise,add-noise,evaluate,sweep,bench}``.

Exit codes: 0 success, 2 usage error, 3 I/O error, 4 numeric failure.
"""

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from .admm import SolverNumericError, SolverParams, denoise
from .imageio import (NOISE_ALGORITHM, ImageIOError, NoiseSpec, add_gaussian_noise,
                      make_phantom, read_image, write_image)
from .metrics import psnr, ssim
from .sweep import (DEFAULT_A_GRID, DEFAULT_LAMBDA_GRID,
                    DEFAULT_MU_GRID, SweepGrid, evaluate_params, rows_to_csv,
                    rows_to_markdown, run_sweep)

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_NUMERIC = 0, 2, 3, 4
REPORT_SCHEMA_VERSION = 1
IMAGE_SUFFIXES = (".pgm", ".pnm", ".png")


class UsageError(Exception):
    pass


def _err(msg):
    print(f"tl1denoise: error: {msg}", file=sys.stderr)


def _float_list(text):
    try:
        vals = [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}")
    return vals


def _positive(text):
    v = float(text)
    if not math.isfinite(v) or v <= 0:
        raise argparse.ArgumentTypeError(f"must be a positive number, got {text}")
    return v


def load_image(spec):
    """Read a file, or a built-in image named ``shapes`` or ``cameraman``."""
    if spec == "shapes":
        return make_phantom(512, 512)
    if spec == "cameraman":
        from skimage import data
        return data.camera().astype(np.float64) / 255.0
    return read_image(spec)


def _image_name(spec):
    return spec if spec in ("shapes", "cameraman") else Path(spec).stem


# ---------------------------------------------------------------- commands

def cmd_denoise(args):
    if args.method == "tl1" and args.a is None:
        raise UsageError("--a is required for --method tl1")
    params = SolverParams(mu=args.mu, lam=args.lam, a=args.a if args.a is not None else 1.0,
                          tol=args.tol, max_iters=args.max_iters, method=args.method)
    f = load_image(args.input)
    u, report = denoise(f, params, track=not args.fast)
    if args.clamp:
        u = np.clip(u, 0.0, 1.0)
    write_image(u, args.output, bit_depth=args.bit_depth)
    if args.report:
        payload = {"schema_version": REPORT_SCHEMA_VERSION, "params": params.to_dict(),
                   **report.to_dict()}
        Path(args.report).write_text(json.dumps(payload, indent=2) + "\n")
    print(f"iterations={report.iterations_run} converged={report.converged} "
          f"rel_change={report.final_rel_change:.3e}", file=sys.stderr)
    return EXIT_OK


def cmd_add_noise(args):
    img = load_image(args.input)
    noisy = add_gaussian_noise(img, NoiseSpec(args.sigma, args.seed))
    clipped = int(np.count_nonzero((noisy < 0) | (noisy > 1)))
    write_image(noisy, args.output, bit_depth=args.bit_depth)
    print(f"noise={NOISE_ALGORITHM} sigma={args.sigma} seed={args.seed} "
          f"clamped_on_write={clipped}", file=sys.stderr)
    return EXIT_OK


def cmd_evaluate(args):
    test = load_image(args.test)
    ref = load_image(args.reference)
    if test.shape != ref.shape:
        raise UsageError(f"shape mismatch: test {test.shape} vs reference {ref.shape}")
    p = psnr(test, ref, data_range=args.data_range)
    s = ssim(test, ref, data_range=args.data_range)
    p_txt = "inf" if math.isinf(p) else f"{p:.10g}"
    s_txt = f"{s:.10g}"
    if args.format == "json":
        print(json.dumps({"psnr_db": p_txt if math.isinf(p) else p, "ssim": s}))
    elif args.format == "csv":
        print("psnr_db,ssim")
        print(f"{p_txt},{s_txt}")
    else:
        print(f"psnr_db: {p_txt}\nssim: {s_txt}")
    return EXIT_OK


def _noisy_pair(args):
    clean = load_image(args.clean)
    if args.noisy:
        noisy = load_image(args.noisy)
        if noisy.shape != clean.shape:
            raise UsageError("--noisy and --clean differ in shape")
    else:
        noisy = add_gaussian_noise(clean, NoiseSpec(args.sigma, args.seed))
    return clean, noisy


def cmd_sweep(args):
    try:
        grid = SweepGrid(args.mu_grid, args.lambda_grid, args.a_grid, args.objective)
    except ValueError as exc:
        raise UsageError(str(exc))
    clean, noisy = _noisy_pair(args)
    rows = run_sweep(clean, noisy, args.method, grid, image=_image_name(args.clean),
                     tol=args.tol, max_iters=args.max_iters, timing=args.timing)
    text = rows_to_csv(rows, with_params=True)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    b = rows[0]
    print(f"best: mu={b.params['mu']:g} lambda={b.params['lam']:g} a={b.params['a']:g} "
          f"ssim={b.ssim:.4f} psnr={b.psnr_db:.2f}", file=sys.stderr)
    return EXIT_OK


def _collect_images(spec):
    items = []
    for part in spec.split(","):
        part = part.strip()
        if not part:
            continue
        p = Path(part)
        if part in ("shapes", "cameraman"):
            items.append(part)
        elif p.is_dir():
            items += sorted(str(q) for q in p.iterdir() if q.suffix.lower() in IMAGE_SUFFIXES)
        elif p.is_file():
            items.append(part)
        else:
            raise FileNotFoundError(f"image not found: {part}")
    if not items:
        raise FileNotFoundError(f"no images found in {spec!r}")
    return items


def _fixed_params(method, values):
    if values is None:
        return None
    if method == "tl1" and len(values) != 3:
        raise UsageError("--tl1-params expects mu,lambda,a")
    if method == "l1" and len(values) != 2:
        raise UsageError("--l1-params expects mu,lambda")
    return {"mu": values[0], "lam": values[1], "a": values[2] if method == "tl1" else 1.0}


def cmd_bench(args):
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    if not methods or any(m not in ("tl1", "l1") for m in methods):
        raise UsageError(f"--methods must list tl1 and/or l1, got {args.methods!r}")
    fixed = {"tl1": _fixed_params("tl1", args.tl1_params),
             "l1": _fixed_params("l1", args.l1_params)}
    for m in methods:
        if fixed[m] is None and not args.auto_sweep:
            raise UsageError(f"no parameters for {m}: pass --{m}-params or --auto-sweep")
    grid = SweepGrid(args.mu_grid, args.lambda_grid, args.a_grid, args.objective)
    rows = []
    for spec in _collect_images(args.images):
        clean = load_image(spec)
        noisy = add_gaussian_noise(clean, NoiseSpec(args.sigma, args.seed))
        name = _image_name(spec)
        for m in methods:
            if fixed[m] is not None:
                row = evaluate_params(clean, noisy, m, fixed[m], image=name, tol=args.tol,
                                      max_iters=args.max_iters, timing=args.timing)
            else:
                row = run_sweep(clean, noisy, m, grid, image=name, tol=args.tol,
                                max_iters=args.max_iters, timing=args.timing)[0]
            rows.append(row)
    csv_text = rows_to_csv(rows)
    md_text = rows_to_markdown(rows)
    if args.out_csv:
        Path(args.out_csv).write_text(csv_text)
    else:
        sys.stdout.write(csv_text)
    if args.out_md:
        Path(args.out_md).write_text(md_text)
    else:
        sys.stdout.write("\n" + md_text)
    return EXIT_OK


# ---------------------------------------------------------------- parser

def _add_solver_flags(p):
    p.add_argument("--method", choices=("tl1", "l1"), default="tl1")
    p.add_argument("--tol", type=float, default=1e-4, help="relative-change stopping tolerance")
    p.add_argument("--max-iters", type=int, default=200)


def _add_grid_flags(p):
    p.add_argument("--mu-grid", type=_float_list, default=list(DEFAULT_MU_GRID),
                   help="comma list (default %(default)s; a search range, not a recommendation)")
    p.add_argument("--lambda-grid", type=_float_list, default=list(DEFAULT_LAMBDA_GRID),
                   help="comma list (default %(default)s)")
    p.add_argument("--a-grid", type=_float_list, default=list(DEFAULT_A_GRID),
                   help="comma list, TL1 only (default %(default)s)")
    p.add_argument("--objective", choices=("ssim", "psnr"), default="ssim")
    p.add_argument("--timing", action="store_true",
                   help="record wall time in the seconds column (output is then not reproducible)")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="tl1denoise",
        description="TL1 / L1 gradient-regularised image denoising by ADMM. "
                    "Images may be PGM/PNG paths or the built-ins 'shapes' and 'cameraman'.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("denoise", help="denoise one image")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--mu", type=_positive, required=True, help="fidelity weight")
    p.add_argument("--lambda", dest="lam", type=_positive, required=True,
                   help="ADMM penalty parameter")
    p.add_argument("--a", type=_positive, default=None, help="TL1 shape parameter")
    _add_solver_flags(p)
    p.add_argument("--clamp", action="store_true", help="clip the output to [0, 1]")
    p.add_argument("--report", help="write a JSON run report here")
    p.add_argument("--fast", action="store_true", help="skip residual/objective traces")
    p.add_argument("--bit-depth", type=int, choices=(8, 16), default=8)
    p.set_defaults(func=cmd_denoise)

    p = sub.add_parser("add-noise", help="add seeded Gaussian noise")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--sigma", type=float, default=0.1)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--bit-depth", type=int, choices=(8, 16), default=16)
    p.set_defaults(func=cmd_add_noise)

    p = sub.add_parser("evaluate", help="PSNR and SSIM against a reference")
    p.add_argument("--test", required=True)
    p.add_argument("--reference", required=True)
    p.add_argument("--format", choices=("plain", "json", "csv"), default="plain")
    p.add_argument("--data-range", type=_positive, default=1.0,
                   help="dynamic range L; pixels are read normalised to [0, 1]")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("sweep", help="grid search over mu, lambda, a")
    p.add_argument("--clean", required=True)
    p.add_argument("--noisy", help="noisy image; synthesised from --sigma/--seed if omitted")
    p.add_argument("--sigma", type=float, default=0.1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="CSV output path (default stdout)")
    _add_solver_flags(p)
    _add_grid_flags(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("bench", help="SSIM/PSNR table over images and methods")
    p.add_argument("--images", required=True,
                   help="comma list of files, directories or built-in names")
    p.add_argument("--methods", default="tl1,l1")
    p.add_argument("--sigma", type=float, default=0.1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tl1-params", type=_float_list, help="mu,lambda,a")
    p.add_argument("--l1-params", type=_float_list, help="mu,lambda")
    p.add_argument("--auto-sweep", action="store_true",
                   help="grid-search parameters for methods without fixed ones")
    p.add_argument("--out-csv")
    p.add_argument("--out-md")
    p.add_argument("--tol", type=float, default=1e-4)
    p.add_argument("--max-iters", type=int, default=200)
    _add_grid_flags(p)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        _err(str(exc))
        return EXIT_USAGE
    except (OSError, ImageIOError) as exc:
        _err(str(exc))
        return EXIT_IO
    except (SolverNumericError, FloatingPointError) as exc:
        _err(str(exc))
        return EXIT_NUMERIC
    except ValueError as exc:
        _err(str(exc))
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
