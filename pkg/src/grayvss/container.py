"""File formats: PGM secrets, VSS3 share containers and PBM half-plane exports.

VSS3 layout (integers little-endian)::

    offset  size  field
    0       4     magic b"VSS3"
    4       1     version (1)
    5       1     scheme_id (1)
    6       1     share_index (1..3)
    7       1     dist_id (1 = uniform3, 2 = balanced2)
    8       4     width
    12      4     height
    16      ...   payload: per pixel, row-major, the A byte then the B byte

Each half byte holds its eight half-bits MSB-first, so the payload is the
bit stream "A bits 0..7, B bits 0..7" per pixel packed into bytes.
"""

from __future__ import annotations

import os
import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .bitplane import GrayImage
from .errors import (
    DepthError,
    ImageFormatError,
    MagicMismatchError,
    ShareFormatError,
    ShareIndexError,
    TruncatedPayloadError,
    UnknownDistributionError,
    UnsupportedSchemeError,
    UnsupportedVersionError,
)
from .scheme import SHARE_INDICES, Half, PairDistribution, Share

MAGIC = b"VSS3"
VERSION = 1
SCHEME_ID = 1
HEADER = struct.Struct("<4sBBBBII")
HEADER_SIZE = HEADER.size
BYTES_PER_PIXEL = 2

PathLike = str | os.PathLike


@dataclass(frozen=True)
class ShareFileHeader:
    share_index: int
    dist: PairDistribution
    width: int
    height: int
    version: int = VERSION
    scheme_id: int = SCHEME_ID

    @property
    def payload_size(self) -> int:
        return payload_size(self.width, self.height)


def payload_size(width: int, height: int) -> int:
    """Payload length in bytes: ceil(width * height * 16 / 8)."""
    return -(-width * height * 16 // 8)


# --- graymaps -----------------------------------------------------------

def _tokens(data: bytes, count: int, pos: int) -> tuple[list[bytes], int]:
    """Read ``count`` whitespace-separated header tokens, skipping ``#`` comments."""
    out = []
    n = len(data)
    while len(out) < count:
        while pos < n and data[pos:pos + 1].isspace():
            pos += 1
        if pos >= n:
            break
        if data[pos:pos + 1] == b"#":
            while pos < n and data[pos:pos + 1] not in (b"\n", b"\r"):
                pos += 1
            continue
        start = pos
        while pos < n and not data[pos:pos + 1].isspace() and data[pos:pos + 1] != b"#":
            pos += 1
        out.append(data[start:pos])
    return out, pos


def _header_int(token: bytes, name: str) -> int:
    try:
        value = int(token.decode("ascii"))
    except (UnicodeDecodeError, ValueError):
        raise ImageFormatError(f"{name}: not an integer: {token!r}") from None
    if value < 0:
        raise ImageFormatError(f"{name}: must be non-negative, got {value}")
    return value


def parse_gray_image(data: bytes) -> GrayImage:
    """Decode a P2 (plain) or P5 (binary) graymap with maximum value 255."""
    magic = data[:2]
    if magic not in (b"P2", b"P5"):
        raise ImageFormatError(f"magic: expected P2 or P5, got {magic!r}")
    fields, pos = _tokens(data, 3, 2)
    if len(fields) < 3:
        names = ("width", "height", "maxval")
        raise ImageFormatError(f"{names[len(fields)]}: header ends early")
    width = _header_int(fields[0], "width")
    height = _header_int(fields[1], "height")
    maxval = _header_int(fields[2], "maxval")
    if width == 0 or height == 0:
        raise ImageFormatError(f"width/height: dimensions must be positive, got {width}x{height}")
    if maxval != 255:
        raise DepthError(f"maxval: only 8-bit graymaps (maxval 255) are supported, got {maxval}")
    count = width * height

    if magic == b"P5":
        if pos >= len(data) or not data[pos:pos + 1].isspace():
            raise ImageFormatError("maxval: missing whitespace before raster")
        raster = data[pos + 1:pos + 1 + count]
        if len(raster) < count:
            raise ImageFormatError(f"raster: expected {count} bytes, got {len(raster)}")
        pixels = np.frombuffer(raster, dtype=np.uint8).reshape(height, width)
        return GrayImage(pixels)

    values, _ = _tokens(data, count, pos)
    if len(values) < count:
        raise ImageFormatError(f"raster: expected {count} samples, got {len(values)}")
    samples = [_header_int(v, "raster") for v in values]
    if max(samples) > maxval:
        raise ImageFormatError(f"raster: sample {max(samples)} exceeds maxval {maxval}")
    return GrayImage(np.array(samples, dtype=np.int64).reshape(height, width))


def read_gray_image(path: PathLike) -> GrayImage:
    return parse_gray_image(Path(path).read_bytes())


def format_gray_image(img: GrayImage, plain: bool = False) -> bytes:
    if plain:
        rows = "\n".join(" ".join(str(v) for v in row) for row in img.tolist())
        return f"P2\n{img.width} {img.height}\n255\n{rows}\n".encode("ascii")
    return f"P5\n{img.width} {img.height}\n255\n".encode("ascii") + img.pixels.tobytes()


def write_gray_image(img: GrayImage, path: PathLike, plain: bool = False) -> None:
    Path(path).write_bytes(format_gray_image(img, plain=plain))


# --- share containers ---------------------------------------------------

def share_to_bytes(share: Share, dist: PairDistribution | str | None = None) -> bytes:
    dist = PairDistribution.parse(dist if dist is not None else share.dist or PairDistribution.UNIFORM3)
    header = HEADER.pack(MAGIC, VERSION, SCHEME_ID, share.index, dist.value, share.width, share.height)
    payload = np.stack([share.a, share.b], axis=-1).tobytes()
    return header + payload


def parse_share_header(data: bytes) -> ShareFileHeader:
    if len(data) < HEADER_SIZE:
        if not MAGIC.startswith(data[:4]):
            raise MagicMismatchError(f"bad magic {data[:4]!r}, expected {MAGIC!r}")
        raise TruncatedPayloadError(f"file is {len(data)} bytes, shorter than the {HEADER_SIZE}-byte header")
    magic, version, scheme_id, index, dist_id, width, height = HEADER.unpack_from(data)
    if magic != MAGIC:
        raise MagicMismatchError(f"bad magic {magic!r}, expected {MAGIC!r}")
    if version != VERSION:
        raise UnsupportedVersionError(f"unsupported container version {version}")
    if scheme_id != SCHEME_ID:
        raise UnsupportedSchemeError(f"unsupported scheme id {scheme_id}")
    if index not in SHARE_INDICES:
        raise ShareIndexError(f"share index {index} outside 1..3")
    try:
        dist = PairDistribution(dist_id)
    except ValueError:
        raise UnknownDistributionError(f"unknown distribution id {dist_id}") from None
    if width == 0 or height == 0:
        raise ShareFormatError(f"share dimensions must be positive, got {width}x{height}")
    return ShareFileHeader(share_index=index, dist=dist, width=width, height=height)


def share_from_bytes(data: bytes) -> Share:
    header = parse_share_header(data)
    expected = header.payload_size
    payload = data[HEADER_SIZE:]
    if len(payload) < expected:
        raise TruncatedPayloadError(f"payload is {len(payload)} bytes, expected {expected}")
    if len(payload) > expected:
        raise ShareFormatError(f"{len(payload) - expected} unexpected trailing bytes after payload")
    planes = np.frombuffer(payload, dtype=np.uint8).reshape(header.height, header.width, 2)
    return Share(index=header.share_index, a=planes[..., 0].copy(), b=planes[..., 1].copy(), dist=header.dist)


def write_share(share: Share, path: PathLike, dist: PairDistribution | str | None = None) -> None:
    """Write ``share`` as a VSS3 file; ``dist`` defaults to the share's own."""
    Path(path).write_bytes(share_to_bytes(share, dist))


def read_share(path: PathLike) -> Share:
    return share_from_bytes(Path(path).read_bytes())


def read_share_header(path: PathLike) -> ShareFileHeader:
    with open(path, "rb") as f:
        return parse_share_header(f.read(HEADER_SIZE))


# --- bitmaps ------------------------------------------------------------

def half_bitmap_bytes(share: Share, half: Half | str) -> bytes:
    """P4 bitmap of one half plane, ``width * 8`` by ``height``; 1 bits are black."""
    # Rows are a whole number of bytes, so the half bytes are the P4 raster verbatim.
    plane = share.half(half)
    return f"P4\n{share.width * 8} {share.height}\n".encode("ascii") + plane.tobytes()


def export_half_bitmap(share: Share, half: Half | str, path: PathLike) -> None:
    Path(path).write_bytes(half_bitmap_bytes(share, half))


def parse_bitmap(data: bytes) -> np.ndarray:
    """Decode a P4 bitmap into a ``(height, width)`` array of 0/1 (1 = black)."""
    if data[:2] != b"P4":
        raise ImageFormatError(f"magic: expected P4, got {data[:2]!r}")
    fields, pos = _tokens(data, 2, 2)
    if len(fields) < 2:
        raise ImageFormatError("width/height: header ends early")
    width = _header_int(fields[0], "width")
    height = _header_int(fields[1], "height")
    row_bytes = -(-width // 8)
    raster = data[pos + 1:pos + 1 + row_bytes * height]
    if len(raster) < row_bytes * height:
        raise ImageFormatError(f"raster: expected {row_bytes * height} bytes, got {len(raster)}")
    rows = np.frombuffer(raster, dtype=np.uint8).reshape(height, row_bytes)
    return np.unpackbits(rows, axis=1)[:, :width]


def read_bitmap(path: PathLike) -> np.ndarray:
    return parse_bitmap(Path(path).read_bytes())
