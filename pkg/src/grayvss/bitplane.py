"""8-bit grayscale pixels and their MSB-first binary form."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DomainError

BITS_PER_PIXEL = 8

BitVector8 = tuple[int, int, int, int, int, int, int, int]


@dataclass(frozen=True, eq=False)
class GrayImage:
    """A secret image: a height x width grid of intensities in [0, 255].

    ``pixels`` is stored as a read-only ``uint8`` array indexed ``[row, col]``.
    """

    pixels: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.pixels)
        if arr.ndim != 2:
            raise DomainError(f"image must be 2-D, got shape {arr.shape}")
        if arr.shape[0] == 0 or arr.shape[1] == 0:
            raise DomainError(f"image dimensions must be positive, got {arr.shape[1]}x{arr.shape[0]}")
        if arr.dtype != np.uint8:
            if arr.dtype.kind not in "iub":
                raise DomainError(f"pixel values must be integers, got dtype {arr.dtype}")
            if arr.min() < 0 or arr.max() > 255:
                raise DomainError("pixel values must lie in [0, 255]")
            arr = arr.astype(np.uint8)
        else:
            arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "pixels", arr)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> GrayImage:
        return cls(np.array(rows, dtype=np.int64))

    @classmethod
    def from_flat(cls, width: int, height: int, values: Sequence[int]) -> GrayImage:
        """Build from a row-major sequence of ``width * height`` values."""
        if width <= 0 or height <= 0:
            raise DomainError(f"image dimensions must be positive, got {width}x{height}")
        if len(values) != width * height:
            raise DomainError(f"expected {width * height} pixel values, got {len(values)}")
        return cls(np.array(values, dtype=np.int64).reshape(height, width))

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    def tolist(self) -> list[list[int]]:
        return self.pixels.tolist()

    def __eq__(self, other):
        if not isinstance(other, GrayImage):
            return NotImplemented
        return np.array_equal(self.pixels, other.pixels)

    def __repr__(self):
        return f"GrayImage(width={self.width}, height={self.height})"


def _check_pixel(v) -> int:
    if isinstance(v, (bool, np.bool_)) or not isinstance(v, (int, np.integer)):
        raise DomainError(f"pixel value must be an integer, got {v!r}")
    if not 0 <= v <= 255:
        raise DomainError(f"pixel value {v} outside [0, 255]")
    return int(v)


def pixel_to_bits(v: int) -> BitVector8:
    """Return the 8 binary digits of ``v``, most significant first."""
    v = _check_pixel(v)
    return tuple((v >> (7 - k)) & 1 for k in range(BITS_PER_PIXEL))


def bits_to_pixel(bits: Sequence[int]) -> int:
    if len(bits) != BITS_PER_PIXEL:
        raise DomainError(f"expected 8 bits, got {len(bits)}")
    v = 0
    for b in bits:
        if b not in (0, 1):
            raise DomainError(f"bit values must be 0 or 1, got {b!r}")
        v = (v << 1) | int(b)
    return v


def image_to_bitblocks(img: GrayImage) -> np.ndarray:
    """Expand every pixel into its MSB-first bits.

    Returns a ``(height, width, 8)`` uint8 array; ``out[r, c]`` is
    ``pixel_to_bits(img.pixels[r, c])``.
    """
    return np.unpackbits(img.pixels[..., np.newaxis], axis=-1)


def bitblocks_to_image(blocks) -> GrayImage:
    blocks = np.asarray(blocks)
    if blocks.ndim != 3 or blocks.shape[-1] != BITS_PER_PIXEL:
        raise DomainError(f"expected a (height, width, 8) bit array, got shape {blocks.shape}")
    if not np.isin(blocks, (0, 1)).all():
        raise DomainError("bit values must be 0 or 1")
    return GrayImage(np.packbits(blocks.astype(np.uint8), axis=-1)[..., 0])
