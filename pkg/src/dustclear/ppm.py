"""Binary PPM (P6, maxval 255) reader/writer, plus optional PNG via Pillow."""
from pathlib import Path

import numpy as np

from .imagecore import Raster8

try:
    from PIL import Image
except ImportError:  # the ``png`` extra is not installed
    Image = None

HAVE_PNG = Image is not None
_WHITESPACE = b" \t\n\r\x0b\x0c"


class PPMError(ValueError):
    def __init__(self, message, offset):
        super().__init__(f"{message} at byte {offset}")
        self.offset = offset


class UnsupportedMagicError(PPMError):
    pass


class MalformedHeaderError(PPMError):
    pass


class UnsupportedMaxvalError(PPMError):
    pass


class TruncatedPayloadError(PPMError):
    pass


def _next_token(buf, pos):
    """Return (token, start, end) skipping whitespace and ``#`` comments."""
    n = len(buf)
    while pos < n:
        c = buf[pos : pos + 1]
        if c in _WHITESPACE:
            pos += 1
        elif c == b"#":
            while pos < n and buf[pos : pos + 1] not in (b"\n", b"\r"):
                pos += 1
        else:
            break
    start = pos
    while pos < n and buf[pos : pos + 1] not in _WHITESPACE and buf[pos : pos + 1] != b"#":
        pos += 1
    return buf[start:pos], start, pos


def _header_int(buf, pos, what):
    tok, start, end = _next_token(buf, pos)
    if not tok:
        raise MalformedHeaderError(f"missing {what}", start)
    if not tok.isdigit():
        raise MalformedHeaderError(f"invalid {what} {tok[:16]!r}", start)
    return int(tok), start, end


def parse_ppm(buf):
    buf = bytes(buf)
    if buf[:2] != b"P6":
        raise UnsupportedMagicError(f"unsupported magic {buf[:2]!r}", 0)
    if len(buf) > 2 and buf[2:3] not in _WHITESPACE:
        raise UnsupportedMagicError(f"unsupported magic {buf[:3]!r}", 0)
    width, start, pos = _header_int(buf, 2, "width")
    if width < 1:
        raise MalformedHeaderError("width must be positive", start)
    height, start, pos = _header_int(buf, pos, "height")
    if height < 1:
        raise MalformedHeaderError("height must be positive", start)
    maxval, start, pos = _header_int(buf, pos, "maxval")
    if maxval != 255:
        raise UnsupportedMaxvalError(f"unsupported maxval {maxval}", start)
    if pos >= len(buf) or buf[pos : pos + 1] not in _WHITESPACE:
        raise MalformedHeaderError("expected single whitespace after maxval", pos)
    pos += 1
    need = width * height * 3
    if len(buf) - pos < need:
        raise TruncatedPayloadError(f"truncated payload: need {need} bytes, have {len(buf) - pos}", len(buf))
    return Raster8.from_bytes(width, height, buf[pos : pos + need])


def format_ppm(img):
    return b"P6\n%d %d\n255\n" % (img.width, img.height) + img.tobytes()


def read_ppm(path):
    return parse_ppm(Path(path).read_bytes())


def write_ppm(path, img):
    Path(path).write_bytes(format_ppm(img))


def _require_png():
    if not HAVE_PNG:
        raise RuntimeError("PNG support needs Pillow: pip install 'dustclear[png]'")


def read_image(path):
    path = Path(path)
    if path.suffix.lower() == ".png":
        _require_png()
        with Image.open(path) as im:
            if im.mode not in ("RGB", "RGBA", "L", "P"):
                raise ValueError(f"{path}: unsupported PNG mode {im.mode}")
            return Raster8(np.asarray(im.convert("RGB")))
    return read_ppm(path)


def write_image(path, img):
    path = Path(path)
    if path.suffix.lower() == ".png":
        _require_png()
        Image.fromarray(np.asarray(img.data)).save(path)
    else:
        write_ppm(path, img)


def supported_suffixes():
    return (".ppm", ".png") if HAVE_PNG else (".ppm",)
