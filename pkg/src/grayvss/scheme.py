"""The (2,3) grayscale sharing scheme: share generation and OR reconstruction.

Every secret bit is carried by three constrained pairs of half-bits,
``(A1, A2)``, ``(B1, A3)`` and ``(B2, B3)``, where ``Ai``/``Bi`` are the first
and second half of share ``i``. Each pair must OR to the secret bit, so any
two shares recover it by OR-ing the halves named in ``HALF_SELECTION``.

Randomness is consumed in a fixed order: pixels row-major, bit positions
MSB to LSB, then the three pairs in the order above. One draw is taken per
pair even when the secret bit is 0, which keeps the stream position a
function of the image size alone.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from . import bitplane
from .bitplane import BitVector8, GrayImage
from .errors import DomainError, DuplicateShareError, ShapeError
from .rng import RandomStream, as_stream

SHARE_INDICES = (1, 2, 3)


class PairDistribution(enum.Enum):
    """How a constrained pair is drawn when the secret bit is 1.

    The value doubles as the ``dist_id`` byte of the share container.
    """

    UNIFORM3 = 1
    BALANCED2 = 2

    @property
    def support(self) -> tuple[tuple[int, int], ...]:
        if self is PairDistribution.UNIFORM3:
            return ((0, 1), (1, 0), (1, 1))
        return ((0, 1), (1, 0))

    @classmethod
    def parse(cls, name: str | PairDistribution) -> PairDistribution:
        if isinstance(name, cls):
            return name
        try:
            return cls[str(name).upper()]
        except KeyError:
            raise DomainError(f"unknown pair distribution {name!r}; expected uniform3 or balanced2") from None


class Half(str, enum.Enum):
    A = "A"
    B = "B"


# Which half each share lends to a pair; keyed by the unordered index pair.
HALF_SELECTION: dict[frozenset[int], dict[int, Half]] = {
    frozenset({1, 2}): {1: Half.A, 2: Half.A},
    frozenset({1, 3}): {1: Half.B, 3: Half.A},
    frozenset({2, 3}): {2: Half.B, 3: Half.B},
}

# (share, half) slots of the three constrained pairs, in RNG consumption order.
CONSTRAINED_PAIRS = (
    ((1, Half.A), (2, Half.A)),
    ((1, Half.B), (3, Half.A)),
    ((2, Half.B), (3, Half.B)),
)

SLOTS = ("A1", "B1", "A2", "B2", "A3", "B3")


class ShareBitTriple(NamedTuple):
    """The six half-bits that encode one secret bit."""

    a1: int
    b1: int
    a2: int
    b2: int
    a3: int
    b3: int

    def halves(self, index: int) -> tuple[int, int]:
        """(A, B) bits held by share ``index``."""
        _check_index(index)
        return self[2 * (index - 1)], self[2 * (index - 1) + 1]


def _check_index(index) -> int:
    if index not in SHARE_INDICES:
        raise DomainError(f"share index must be 1, 2 or 3, got {index!r}")
    return index


def _check_bit(b) -> int:
    if b not in (0, 1):
        raise DomainError(f"secret bit must be 0 or 1, got {b!r}")
    return int(b)


def select_halves(i: int, j: int) -> tuple[Half, Half]:
    """Halves that shares ``i`` and ``j`` contribute when stacked, in argument order."""
    _check_index(i)
    _check_index(j)
    if i == j:
        raise DuplicateShareError(f"a pair needs two distinct shares, got {i} twice")
    table = HALF_SELECTION[frozenset({i, j})]
    return table[i], table[j]


def _pair_tables(dist: PairDistribution) -> tuple[np.ndarray, np.ndarray]:
    support = np.array(dist.support, dtype=np.uint8)
    return support[:, 0], support[:, 1]


def encode_bits(bits, dist: PairDistribution, rng: RandomStream) -> np.ndarray:
    """Vectorised bit encoder.

    ``bits`` is any array of 0/1 values. Returns an array of shape
    ``bits.shape + (6,)`` whose last axis is ordered as ``SLOTS``.
    """
    bits = np.asarray(bits, dtype=np.uint8)
    dist = PairDistribution.parse(dist)
    first, second = _pair_tables(dist)
    draws = rng.choices(len(dist.support), bits.shape + (3,))
    mask = bits[..., np.newaxis]
    x = first[draws] & mask
    y = second[draws] & mask
    # x/y hold the first/second member of each constrained pair.
    return np.stack([x[..., 0], x[..., 1], y[..., 0], x[..., 2], y[..., 1], y[..., 2]], axis=-1)


def sample_or_pair(b: int, dist: PairDistribution, rng: RandomStream) -> tuple[int, int]:
    """Draw a pair ``(x, y)`` with ``x | y == b``."""
    b = _check_bit(b)
    dist = PairDistribution.parse(dist)
    draw = int(rng.choices(len(dist.support)))
    if b == 0:
        return 0, 0
    return dist.support[draw]


def encode_bit(b: int, dist: PairDistribution, rng: RandomStream) -> ShareBitTriple:
    b = _check_bit(b)
    return ShareBitTriple(*(int(v) for v in encode_bits(b, dist, rng)))


def reconstruct_bit(pair: tuple[int, int], halves_i: tuple[int, int], halves_j: tuple[int, int]) -> int:
    """Stack two shares' ``(A, B)`` bits for one position; ``halves_i`` belongs to ``pair[0]``."""
    hi, hj = select_halves(*pair)
    x = halves_i[0] if hi is Half.A else halves_i[1]
    y = halves_j[0] if hj is Half.A else halves_j[1]
    return _check_bit(x) | _check_bit(y)


def encode_pixel(v: int, dist: PairDistribution, rng: RandomStream) -> tuple[tuple[BitVector8, BitVector8], ...]:
    """Split one pixel value; returns ``((A1, B1), (A2, B2), (A3, B3))``."""
    bits = bitplane.pixel_to_bits(v)
    slots = encode_bits(bits, dist, rng).T
    vec = [tuple(int(x) for x in row) for row in slots]
    return (vec[0], vec[1]), (vec[2], vec[3]), (vec[4], vec[5])


def reconstruct_pixel(pair: tuple[int, int], halves_i, halves_j) -> int:
    hi, hj = select_halves(*pair)
    x = halves_i[0] if hi is Half.A else halves_i[1]
    y = halves_j[0] if hj is Half.A else halves_j[1]
    if len(x) != 8 or len(y) != 8:
        raise DomainError("each half must hold 8 bits")
    return bitplane.bits_to_pixel([a | b for a, b in zip(x, y)])


@dataclass(eq=False)
class Share:
    """One shadow: per pixel an 8-bit first half ``a`` and second half ``b``.

    Halves are stored as ``(height, width)`` uint8 arrays whose bits, read
    MSB-first, are the half-bits for bit positions 0..7 of the secret pixel.
    """

    index: int
    a: np.ndarray
    b: np.ndarray
    dist: PairDistribution | None = field(default=None)

    def __post_init__(self):
        _check_index(self.index)
        self.a = np.asarray(self.a, dtype=np.uint8)
        self.b = np.asarray(self.b, dtype=np.uint8)
        if self.a.ndim != 2 or self.a.shape != self.b.shape:
            raise ShapeError(f"half planes must be 2-D and equal in shape, got {self.a.shape} and {self.b.shape}")
        if 0 in self.a.shape:
            raise DomainError("share dimensions must be positive")

    @property
    def width(self) -> int:
        return self.a.shape[1]

    @property
    def height(self) -> int:
        return self.a.shape[0]

    def half(self, which: Half | str) -> np.ndarray:
        return self.a if Half(which) is Half.A else self.b

    def half_bits(self, which: Half | str) -> np.ndarray:
        """``(height, width, 8)`` bit view of one half plane."""
        return np.unpackbits(self.half(which)[..., np.newaxis], axis=-1)

    def pixel_halves(self, row: int, col: int) -> tuple[BitVector8, BitVector8]:
        return (bitplane.pixel_to_bits(int(self.a[row, col])),
                bitplane.pixel_to_bits(int(self.b[row, col])))

    def __eq__(self, other):
        if not isinstance(other, Share):
            return NotImplemented
        return (self.index == other.index
                and np.array_equal(self.a, other.a)
                and np.array_equal(self.b, other.b))

    def __repr__(self):
        return f"Share(index={self.index}, width={self.width}, height={self.height})"


def encode_image(img: GrayImage, dist: PairDistribution | str = PairDistribution.UNIFORM3,
                 rng: RandomStream | int | None = None) -> tuple[Share, Share, Share]:
    """Split ``img`` into three shares; ``rng`` may be a stream, a seed, or None for fresh entropy."""
    if not isinstance(img, GrayImage):
        img = GrayImage(img)
    dist = PairDistribution.parse(dist)
    rng = as_stream(rng)
    slots = encode_bits(bitplane.image_to_bitblocks(img), dist, rng)
    planes = np.packbits(slots, axis=2)[:, :, 0, :]  # (H, W, 6), one byte per slot
    return tuple(
        Share(index=i, a=planes[:, :, 2 * (i - 1)], b=planes[:, :, 2 * (i - 1) + 1], dist=dist)
        for i in SHARE_INDICES
    )


def reconstruct_image(share_x: Share, share_y: Share) -> GrayImage:
    if share_x.index == share_y.index:
        raise DuplicateShareError(f"both shares have index {share_x.index}")
    if share_x.a.shape != share_y.a.shape:
        raise ShapeError(
            f"share dimensions differ: {share_x.width}x{share_x.height} vs {share_y.width}x{share_y.height}")
    hx, hy = select_halves(share_x.index, share_y.index)
    return GrayImage(share_x.half(hx) | share_y.half(hy))
