"""Grayscale image files, normalisation, seeded noise and a synthetic phantom.

Supported formats are binary and ASCII PGM (``P5``/``P2``, maxval up to
65535) and 8/16-bit grayscale PNG. Pixels are mapped to ``[0, 1]`` on read
and quantised with round-half-away-from-zero on write.
"""

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ._validation import check_image

#: name/version of the noise generator; bump when the realisation changes
NOISE_ALGORITHM = "pcg64-boxmuller-v1"


class ImageIOError(Exception):
    """Base class for image file errors."""


class UnsupportedFormatError(ImageIOError):
    """File is not a PGM or grayscale PNG this module can handle."""


class EmptyImageError(ImageIOError):
    """File declares a zero width or height."""


class CorruptImageError(ImageIOError):
    """Header or payload is inconsistent."""


# ---------------------------------------------------------------- PGM

def _pgm_tokens(data, count, pos):
    """Read ``count`` whitespace-separated header tokens, skipping comments."""
    tokens = []
    n = len(data)
    while len(tokens) < count:
        while pos < n and data[pos:pos + 1].isspace():
            pos += 1
        if pos < n and data[pos:pos + 1] == b"#":
            while pos < n and data[pos:pos + 1] not in (b"\n", b"\r"):
                pos += 1
            continue
        start = pos
        while pos < n and not data[pos:pos + 1].isspace() and data[pos:pos + 1] != b"#":
            pos += 1
        if start == pos:
            raise CorruptImageError("truncated PGM header")
        tokens.append(data[start:pos])
    return tokens, pos


def _read_pgm(data):
    magic = data[:2]
    (w, h, maxval), pos = _pgm_tokens(data, 3, 2)
    try:
        width, height, maxval = int(w), int(h), int(maxval)
    except ValueError:
        raise CorruptImageError("non-integer PGM header field") from None
    if width == 0 or height == 0:
        raise EmptyImageError(f"PGM has zero dimension ({width}x{height})")
    if not 0 < maxval <= 65535:
        raise CorruptImageError(f"PGM maxval {maxval} outside 1..65535")
    if magic == b"P5":
        pos += 1  # single whitespace byte after maxval
        dtype = np.dtype(">u2") if maxval > 255 else np.dtype("u1")
        nbytes = width * height * dtype.itemsize
        payload = data[pos:pos + nbytes]
        if len(payload) != nbytes:
            raise CorruptImageError("PGM pixel data truncated")
        raw = np.frombuffer(payload, dtype=dtype)
    else:
        try:
            raw = np.array(data[pos:].split(), dtype=np.int64)
        except ValueError:
            raise CorruptImageError("non-integer P2 sample") from None
        if raw.size < width * height:
            raise CorruptImageError("PGM pixel data truncated")
        raw = raw[:width * height]
    if np.any(raw > maxval):
        raise CorruptImageError("PGM sample exceeds maxval")
    return raw.reshape(height, width).astype(np.float64) / maxval


def _write_pgm(path, q, maxval, ascii_):
    h, w = q.shape
    header = f"{'P2' if ascii_ else 'P5'}\n{w} {h}\n{maxval}\n".encode("ascii")
    if ascii_:
        body = "\n".join(" ".join(str(int(v)) for v in row) for row in q).encode("ascii") + b"\n"
    else:
        body = q.astype(">u2" if maxval > 255 else "u1").tobytes()
    with open(path, "wb") as fh:
        fh.write(header + body)


# ---------------------------------------------------------------- PNG

def _read_png(path):
    from PIL import Image as PILImage

    with PILImage.open(path) as im:
        im.load()
        if im.mode == "L":
            return np.asarray(im, dtype=np.float64) / 255.0
        if im.mode in ("I;16", "I;16B", "I"):
            arr = np.asarray(im).astype(np.int64)
            if arr.min(initial=0) < 0 or arr.max(initial=0) > 65535:
                raise UnsupportedFormatError(f"PNG samples outside 16-bit range (mode {im.mode})")
            return arr.astype(np.float64) / 65535.0
        raise UnsupportedFormatError(f"PNG mode {im.mode!r} is not 8/16-bit grayscale")


def _write_png(path, q, bit_depth):
    from PIL import Image as PILImage

    if bit_depth == 8:
        im = PILImage.fromarray(q.astype(np.uint8), mode="L")
    else:
        im = PILImage.fromarray(q.astype(np.uint16))
    im.save(path, format="PNG")


# ---------------------------------------------------------------- public API

def read_image(path):
    """Read a PGM or grayscale PNG and return float64 pixels in ``[0, 1]``.

    Raises
    ------
    FileNotFoundError, OSError
        The file cannot be opened.
    UnsupportedFormatError
        Not a PGM (P2/P5) or 8/16-bit grayscale PNG.
    EmptyImageError
        Width or height is zero.
    CorruptImageError
        Malformed header or truncated data.
    """
    path = Path(path)
    data = path.read_bytes()
    if data[:2] in (b"P2", b"P5"):
        return _read_pgm(data)
    if data[:8] == b"\x89PNG\r\n\x1a\n":
        try:
            img = _read_png(path)
        except ImageIOError:
            raise
        except Exception as exc:  # Pillow raises a zoo of types on bad input
            raise CorruptImageError(f"cannot decode PNG: {exc}") from exc
        if img.size == 0:
            raise EmptyImageError("PNG has zero dimension")
        return img
    raise UnsupportedFormatError(f"{path}: not a PGM (P2/P5) or PNG file")


def quantize(img, bit_depth=8):
    """Clamp to ``[0, 1]`` and round ``x * maxval`` half away from zero."""
    if bit_depth not in (8, 16):
        raise ValueError(f"bit_depth must be 8 or 16, got {bit_depth}")
    maxval = 255 if bit_depth == 8 else 65535
    clamped = np.clip(np.asarray(img, dtype=np.float64), 0.0, 1.0)
    # values are nonnegative, so floor(x + 0.5) is round-half-away-from-zero
    return np.floor(clamped * maxval + 0.5).astype(np.int64)


def write_image(img, path, bit_depth=8, fmt=None, ascii_pgm=False):
    """Write ``img`` as PGM or PNG.

    The format comes from ``fmt`` (``"pgm"`` or ``"png"``) or the file
    suffix. Pixels are clamped to ``[0, 1]`` and quantised by
    :func:`quantize`; the output bytes are a pure function of the input.
    """
    img = check_image(img, min_size=1)
    path = Path(path)
    fmt = (fmt or path.suffix.lstrip(".")).lower()
    q = quantize(img, bit_depth)
    if fmt in ("pgm", "pnm"):
        _write_pgm(path, q, 255 if bit_depth == 8 else 65535, ascii_pgm)
    elif fmt == "png":
        _write_png(path, q, bit_depth)
    else:
        raise UnsupportedFormatError(f"cannot infer output format from {path.name!r}")


@dataclass(frozen=True)
class NoiseSpec:
    """Additive white Gaussian noise level and seed."""

    sigma: float
    seed: int = 0

    def __post_init__(self):
        if not np.isfinite(self.sigma) or self.sigma < 0:
            raise ValueError(f"sigma must be finite and nonnegative, got {self.sigma}")
        if not 0 <= int(self.seed) < 2**64:
            raise ValueError("seed must fit in an unsigned 64-bit integer")


def gaussian_noise(shape, seed):
    """Standard normal samples, reproducible across platforms.

    Uniform doubles come from ``numpy.random.PCG64(seed)`` via
    ``Generator.random``; pairs ``(u1, u2)`` are mapped with the Box-Muller
    transform ``sqrt(-2 log(1 - u1)) * cos(2 pi u2)`` (one output per pair).
    """
    n = int(np.prod(shape))
    rng = np.random.Generator(np.random.PCG64(int(seed)))
    u = rng.random(2 * n).reshape(2, n)
    z = np.sqrt(-2.0 * np.log1p(-u[0])) * np.cos(2.0 * np.pi * u[1])
    return z.reshape(shape)


def add_gaussian_noise(img, spec):
    """Return ``img + sigma * n`` with ``n`` from :func:`gaussian_noise`. Not clamped."""
    img = check_image(img, min_size=1)
    if spec.sigma == 0:
        return img.copy()
    return img + spec.sigma * gaussian_noise(img.shape, spec.seed)


def make_phantom(height=256, width=256, kind="shapes"):
    """Deterministic piecewise-constant test image.

    Two rectangles, a disk and a triangle at distinct gray levels on a dark
    background; geometry scales with the image size.
    """
    if kind != "shapes":
        raise ValueError(f"unknown phantom kind {kind!r}")
    if height < 64 or width < 64:
        raise ValueError(f"phantom needs at least 64x64, got {height}x{width}")
    yy, xx = np.mgrid[0:height, 0:width]
    # normalised pixel-centre coordinates in [0, 1)
    y = (yy + 0.5) / height
    x = (xx + 0.5) / width
    img = np.full((height, width), 0.1)
    img[(y >= 0.10) & (y < 0.40) & (x >= 0.08) & (x < 0.45)] = 0.8
    img[(y >= 0.55) & (y < 0.70) & (x >= 0.60) & (x < 0.92)] = 0.35
    img[(y - 0.27) ** 2 + (x - 0.72) ** 2 < 0.16 ** 2] = 0.6
    # triangle with apex at the top, base along y = 0.90
    tri = (y < 0.90) & (y - 0.52 > 1.4 * np.abs(x - 0.30))
    img[tri] = 0.95
    return img
