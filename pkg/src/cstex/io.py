"""Image loading and bit-exact tensor export.

Self-contained codecs for the formats this package speaks:

* PNG, a deliberately small subset: non-interlaced 8/16-bit grayscale
  and RGB for reading, 8-bit grayscale and RGB for writing.
* Binary PGM (P5), 8 or 16 bit.
* NPY v1.0 for channel-stack export, written byte-for-byte to the format
  rules (little-endian float dtype, C order, shape (channels, height,
  width), data offset at a 64-byte multiple) so any array reader can
  consume it.  Channel labels go to a ``<path>.labels`` sidecar, one
  label per line.

Grayscale values are scaled to [0, 1]; RGB input is reduced to luma with
the BT.601 weights (0.299, 0.587, 0.114).
"""

from __future__ import annotations

import struct
import zlib
from pathlib import Path

import numpy as np

from .core import ChannelStack
from .errors import DecodeError, UnsupportedFormat

_PNG_SIGNATURE = b"\x89PNG\r\n\x1a\n"
_BT601 = np.array([0.299, 0.587, 0.114])

_NPY_DESCR = {"f32": "<f4", "f64": "<f8"}


# ---------------------------------------------------------------------
# loading
# ---------------------------------------------------------------------

def load_gray(path) -> np.ndarray:
    """Load an 8/16-bit PNG or binary PGM as a float64 field in [0, 1]."""
    data = Path(path).read_bytes()
    if data.startswith(_PNG_SIGNATURE):
        samples, maxval = _decode_png(data)
    elif data.startswith(b"P5"):
        samples, maxval = _decode_pgm(data)
    else:
        raise UnsupportedFormat(f"{path}: not a PNG or binary PGM file")

    arr = samples.astype(np.float64)
    if arr.ndim == 3:
        arr = arr @ _BT601
    return arr / maxval


# ---------------------------------------------------------------------
# PGM (P5)
# ---------------------------------------------------------------------

def _decode_pgm(data: bytes) -> tuple[np.ndarray, int]:
    pos = 2  # past "P5"
    fields = []
    while len(fields) < 3:
        while pos < len(data) and data[pos] in b" \t\r\n":
            pos += 1
        if pos < len(data) and data[pos:pos + 1] == b"#":
            while pos < len(data) and data[pos] not in b"\r\n":
                pos += 1
            continue
        start = pos
        while pos < len(data) and data[pos] not in b" \t\r\n":
            pos += 1
        if start == pos:
            raise DecodeError("PGM header truncated")
        fields.append(data[start:pos])
    pos += 1  # single whitespace after maxval
    try:
        width, height, maxval = (int(f) for f in fields)
    except ValueError as exc:
        raise DecodeError(f"bad PGM header: {exc}") from None
    if width < 1 or height < 1 or not 0 < maxval < 65536:
        raise DecodeError(f"bad PGM dimensions {width}x{height}, maxval {maxval}")

    dtype = np.dtype(">u2") if maxval > 255 else np.dtype("u1")
    count = width * height
    raster = data[pos:pos + count * dtype.itemsize]
    if len(raster) < count * dtype.itemsize:
        raise DecodeError("PGM raster truncated")
    samples = np.frombuffer(raster, dtype=dtype).reshape(height, width)
    return samples.astype(np.uint16 if maxval > 255 else np.uint8), maxval


def write_pgm(path, field: np.ndarray, maxval: int = 255) -> None:
    """Write a [0, 1] float field as a binary PGM (P5)."""
    if not 0 < maxval < 65536:
        raise ValueError(f"maxval must be in 1..65535, got {maxval}")
    arr = np.clip(np.asarray(field, dtype=np.float64), 0.0, 1.0)
    quant = np.round(arr * maxval).astype(">u2" if maxval > 255 else "u1")
    header = f"P5\n{arr.shape[1]} {arr.shape[0]}\n{maxval}\n".encode("ascii")
    Path(path).write_bytes(header + quant.tobytes())


# ---------------------------------------------------------------------
# PNG
# ---------------------------------------------------------------------

def _decode_png(data: bytes) -> tuple[np.ndarray, int]:
    pos = len(_PNG_SIGNATURE)
    header = None
    idat = bytearray()
    ended = False
    while pos + 8 <= len(data):
        length, ctype = struct.unpack(">I4s", data[pos:pos + 8])
        chunk = data[pos + 8:pos + 8 + length]
        crc = data[pos + 8 + length:pos + 12 + length]
        if len(chunk) < length or len(crc) < 4:
            raise DecodeError("PNG chunk truncated")
        if zlib.crc32(ctype + chunk) != struct.unpack(">I", crc)[0]:
            raise DecodeError(f"PNG chunk {ctype!r} fails CRC")
        if ctype == b"IHDR":
            header = struct.unpack(">IIBBBBB", chunk)
        elif ctype == b"IDAT":
            idat.extend(chunk)
        elif ctype == b"IEND":
            ended = True
            break
        pos += 12 + length
    if header is None or not ended or not idat:
        raise DecodeError("PNG missing IHDR, IDAT, or IEND")

    width, height, depth, color, compression, filt, interlace = header
    if compression != 0 or filt != 0:
        raise DecodeError("PNG uses nonstandard compression or filter method")
    if interlace != 0:
        raise UnsupportedFormat("interlaced PNG not supported")
    if depth not in (8, 16) or color not in (0, 2):
        raise UnsupportedFormat(
            f"only 8/16-bit grayscale or RGB PNG supported "
            f"(bit depth {depth}, color type {color})"
        )
    channels = 1 if color == 0 else 3
    sample_bytes = depth // 8
    row_bytes = width * channels * sample_bytes

    try:
        raw = zlib.decompress(bytes(idat))
    except zlib.error as exc:
        raise DecodeError(f"PNG deflate stream corrupt: {exc}") from None
    if len(raw) != height * (row_bytes + 1):
        raise DecodeError("PNG pixel data has the wrong length")

    recon = _unfilter(raw, height, row_bytes, channels * sample_bytes)
    if depth == 16:
        samples = np.frombuffer(recon, dtype=">u2").astype(np.uint16)
    else:
        samples = np.frombuffer(recon, dtype=np.uint8)
    samples = samples.reshape(height, width, channels)
    if channels == 1:
        samples = samples[:, :, 0]
    return samples, (1 << depth) - 1


def _unfilter(raw: bytes, height: int, row_bytes: int, bpp: int) -> bytes:
    """Undo per-row PNG filters (types 0..4)."""
    out = bytearray(height * row_bytes)
    prev = bytearray(row_bytes)
    for y in range(height):
        offset = y * (row_bytes + 1)
        ftype = raw[offset]
        row = bytearray(raw[offset + 1:offset + 1 + row_bytes])
        if ftype == 0:
            pass
        elif ftype == 1:  # Sub
            for i in range(bpp, row_bytes):
                row[i] = (row[i] + row[i - bpp]) & 0xFF
        elif ftype == 2:  # Up
            for i in range(row_bytes):
                row[i] = (row[i] + prev[i]) & 0xFF
        elif ftype == 3:  # Average
            for i in range(row_bytes):
                left = row[i - bpp] if i >= bpp else 0
                row[i] = (row[i] + ((left + prev[i]) >> 1)) & 0xFF
        elif ftype == 4:  # Paeth
            for i in range(row_bytes):
                a = row[i - bpp] if i >= bpp else 0
                b = prev[i]
                c = prev[i - bpp] if i >= bpp else 0
                pa = abs(b - c)
                pb = abs(a - c)
                pc = abs(a + b - 2 * c)
                if pa <= pb and pa <= pc:
                    pred = a
                elif pb <= pc:
                    pred = b
                else:
                    pred = c
                row[i] = (row[i] + pred) & 0xFF
        else:
            raise DecodeError(f"PNG row uses unknown filter type {ftype}")
        out[y * row_bytes:(y + 1) * row_bytes] = row
        prev = row
    return bytes(out)


def _png_chunk(ctype: bytes, payload: bytes) -> bytes:
    return (
        struct.pack(">I", len(payload))
        + ctype
        + payload
        + struct.pack(">I", zlib.crc32(ctype + payload))
    )


def write_png(path, image: np.ndarray) -> None:
    """Write an 8-bit PNG: (H, W) grayscale or (H, W, 3) RGB uint8."""
    arr = np.asarray(image)
    if arr.dtype != np.uint8:
        raise ValueError(f"write_png expects uint8, got {arr.dtype}")
    if arr.ndim == 2:
        color, channels = 0, 1
    elif arr.ndim == 3 and arr.shape[2] == 3:
        color, channels = 2, 3
    else:
        raise ValueError(f"write_png expects (H, W) or (H, W, 3), got {arr.shape}")

    height, width = arr.shape[:2]
    rows = arr.reshape(height, width * channels)
    scanlines = bytearray()
    for y in range(height):
        scanlines.append(0)  # filter type None
        scanlines.extend(rows[y].tobytes())

    ihdr = struct.pack(">IIBBBBB", width, height, 8, color, 0, 0, 0)
    Path(path).write_bytes(
        _PNG_SIGNATURE
        + _png_chunk(b"IHDR", ihdr)
        + _png_chunk(b"IDAT", zlib.compress(bytes(scanlines)))
        + _png_chunk(b"IEND", b"")
    )


# ---------------------------------------------------------------------
# NPY export
# ---------------------------------------------------------------------

def _npy_header(descr: str, shape: tuple[int, ...]) -> bytes:
    dict_str = (
        "{'descr': '%s', 'fortran_order': False, 'shape': %s, }"
        % (descr, "(" + ", ".join(str(s) for s in shape) + ")")
    )
    # magic(6) + version(2) + headerlen(2) + header must be a 64-byte multiple
    base = 6 + 2 + 2
    total = base + len(dict_str) + 1
    padding = (64 - total % 64) % 64
    header = dict_str + " " * padding + "\n"
    return (
        b"\x93NUMPY"
        + bytes([1, 0])
        + struct.pack("<H", len(header))
        + header.encode("latin1")
    )


def write_tensor(stack: ChannelStack, path, dtype: str = "f32") -> None:
    """Export a channel stack as NPY v1.0 plus a ``.labels`` sidecar.

    The array is written as (channels, height, width) in C order with
    dtype ``<f4`` or ``<f8``; the sidecar lists one channel label per
    line in channel order.
    """
    if dtype not in _NPY_DESCR:
        raise ValueError(f"dtype must be 'f32' or 'f64', got {dtype!r}")
    descr = _NPY_DESCR[dtype]
    data = np.ascontiguousarray(stack.data.astype(descr))
    path = Path(path)
    path.write_bytes(_npy_header(descr, data.shape) + data.tobytes())
    labels_path = path.with_name(path.name + ".labels")
    labels_path.write_text("".join(label + "\n" for label in stack.labels))
