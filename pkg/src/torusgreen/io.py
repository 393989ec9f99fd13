"""Serialization: binary PPM/PGM images, JSON reports and the a+bi number syntax."""
from __future__ import annotations

import json
import math
import re

import numpy as np

# code -> RGB; 0 is the Julia set / boundary, 1 and 2 are the white and gray of the region map
PALETTE = np.array(
    [
        (0, 0, 0),
        (255, 255, 255),
        (160, 160, 160),
        (90, 140, 220),
        (220, 120, 60),
        (80, 180, 100),
        (200, 200, 60),
        (170, 90, 200),
    ],
    dtype=np.uint8,
)
GRAY_LEVELS = np.array([0, 255, 160, 100, 200, 60, 220, 130], dtype=np.uint8)

_BARE_UNIT = re.compile(r"(^|[+-])([ij])$")


def parse_complex(text: str) -> complex:
    """Parse ``a+bi``, ``a-bi``, ``bi``, ``a`` (``j`` also accepted)."""
    t = text.strip().lower()
    if not t or " " in t:
        raise ValueError(f"not a complex number: {text!r}")
    t = _BARE_UNIT.sub(r"\g<1>1j", t).replace("i", "j")
    try:
        return complex(t)
    except ValueError:
        raise ValueError(f"not a complex number: {text!r}") from None


def format_complex(z: complex) -> str:
    z = complex(z)
    im = z.imag
    sign = "-" if math.copysign(1.0, im) < 0 else "+"
    return f"{z.real!r}{sign}{abs(im)!r}i"


def complex_to_json(z) -> dict:
    z = complex(z)
    return {"re": z.real, "im": z.imag}


def complex_from_json(d) -> complex:
    return complex(d["re"], d["im"])


def rgb_bytes(img, shade: bool = False) -> np.ndarray:
    codes = np.asarray(img.codes)
    if codes.max(initial=0) >= len(PALETTE):
        raise ValueError(f"code {int(codes.max())} has no palette entry")
    rgb = PALETTE[codes]
    if shade and img.meta.get("iterations") is not None:
        it = np.asarray(img.meta["iterations"], dtype=float)
        top = max(1.0, float(np.log1p(it).max()))
        factor = 1.0 - 0.75 * np.log1p(it) / top
        rgb = np.floor(rgb * factor[..., None]).astype(np.uint8)
    return rgb


def image_bytes(img, fmt: str = "ppm", shade: bool = False) -> bytes:
    """Binary P6 (RGB) or P5 (greyscale) encoding of a RasterImage."""
    fmt = fmt.lower()
    if fmt == "ppm":
        body = rgb_bytes(img, shade).tobytes()
        magic = b"P6"
    elif fmt == "pgm":
        codes = np.asarray(img.codes)
        if codes.max(initial=0) >= len(GRAY_LEVELS):
            raise ValueError(f"code {int(codes.max())} has no grey level")
        body = GRAY_LEVELS[codes].tobytes()
        magic = b"P5"
    else:
        raise ValueError(f"unsupported image format {fmt!r}")
    header = magic + b"\n" + f"{img.width} {img.height}\n255\n".encode("ascii")
    return header + body


def write_image(img, fmt: str, path, shade: bool = False) -> None:
    with open(path, "wb") as fh:
        fh.write(image_bytes(img, fmt, shade))


def read_pnm(path):
    """Minimal reader for the files written here: returns (magic, width, height, pixels)."""
    with open(path, "rb") as fh:
        data = fh.read()
    magic, dims, maxval, body = data.split(b"\n", 3)
    w, h = (int(v) for v in dims.split())
    assert maxval == b"255"
    ch = 3 if magic == b"P6" else 1
    pix = np.frombuffer(body, dtype=np.uint8).reshape(h, w, ch) if ch == 3 else \
        np.frombuffer(body, dtype=np.uint8).reshape(h, w)
    return magic.decode(), w, h, pix


def green_report(tau, coeffs, report, points, oracle_count=None) -> dict:
    return {
        "tau": complex_to_json(tau),
        "a": complex_to_json(coeffs.a),
        "b": float(coeffs.b.real),
        "criterion": {
            "m": list(report.values),
            "predicted": report.predicted_count,
            "boundary": report.on_boundary,
        },
        "points": [
            {"re": p.z.real, "im": p.z.imag, "multiplier": p.multiplier_modulus, "class": p.kind}
            for p in points
        ],
        "oracle_count": oracle_count,
    }


def criterion_report(report) -> dict:
    return {
        "tau": complex_to_json(report.tau),
        "m": list(report.values),
        "predicted_count": report.predicted_count,
        "on_boundary": report.on_boundary,
        "criterion2": list(report.criterion2),
    }


def dumps(obj) -> str:
    # repr-based float formatting in json keeps doubles exact
    return json.dumps(obj, indent=2)
