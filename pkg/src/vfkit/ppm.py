"""Binary PPM (P6, maxval 255) image I/O, plus optional PNG reading.

PPM is the bit-exact contract format: write followed by read returns an
identical array.  PNG reading needs Pillow and is only used when it is
installed.
"""

import os

import numpy as np

from .imagecore import as_image


class PpmError(ValueError):
    """Malformed or unsupported PPM data; carries the byte offset."""

    def __init__(self, message, offset):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


def _read_token(data, pos):
    """Next whitespace-delimited header token, skipping '#' comments."""
    n = len(data)
    while pos < n:
        c = data[pos:pos + 1]
        if c == b"#":
            while pos < n and data[pos:pos + 1] not in (b"\n", b"\r"):
                pos += 1
        elif c.isspace():
            pos += 1
        else:
            break
    start = pos
    while pos < n and not data[pos:pos + 1].isspace() and data[pos:pos + 1] != b"#":
        pos += 1
    if start == pos:
        raise PpmError("unexpected end of header", start)
    return data[start:pos], pos


def decode_ppm(data):
    """Decode P6 bytes into an (H, W, 3) uint8 array."""
    if data[:2] != b"P6":
        raise PpmError("not a binary PPM (missing P6 magic)", 0)
    pos = 2
    fields = []
    for _ in range(3):
        token, pos = _read_token(data, pos)
        try:
            fields.append(int(token))
        except ValueError:
            raise PpmError(f"non-numeric header field {token!r}", pos) from None
    width, height, maxval = fields
    if width < 1 or height < 1:
        raise PpmError(f"invalid dimensions {width}x{height}", pos)
    if maxval != 255:
        raise PpmError(f"unsupported maxval {maxval} (only 255)", pos)
    # exactly one whitespace byte separates the header from the payload
    if pos >= len(data) or not data[pos:pos + 1].isspace():
        raise PpmError("missing whitespace after maxval", pos)
    pos += 1
    expected = width * height * 3
    payload = data[pos:pos + expected]
    if len(payload) < expected:
        raise PpmError(
            f"truncated payload: expected {expected} bytes, found {len(payload)}",
            pos + len(payload))
    return np.frombuffer(payload, dtype=np.uint8).reshape(height, width, 3).copy()


def encode_ppm(img):
    """Encode an image as P6 bytes."""
    a = as_image(img)
    header = f"P6\n{a.shape[1]} {a.shape[0]}\n255\n".encode("ascii")
    return header + np.ascontiguousarray(a).tobytes()


def read_ppm(path):
    with open(path, "rb") as f:
        return decode_ppm(f.read())


def write_ppm(path, img):
    data = encode_ppm(img)
    with open(path, "wb") as f:
        f.write(data)


def _read_png(path):
    try:
        from PIL import Image
    except ImportError:
        raise ValueError(
            f"cannot read {path}: PNG support needs Pillow (pip install Pillow)"
        ) from None
    with Image.open(path) as im:
        return np.asarray(im.convert("RGB"), dtype=np.uint8)


def read_image(path):
    """Read a PPM (always) or PNG (when Pillow is available) image."""
    ext = os.path.splitext(path)[1].lower()
    if ext == ".png":
        return _read_png(path)
    return read_ppm(path)
