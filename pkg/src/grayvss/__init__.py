"""(2,3) visual secret sharing for 8-bit grayscale images.

Any two of the three shares rebuild the secret exactly by OR-ing one half
plane from each.
"""

from .bitplane import GrayImage, bits_to_pixel, image_to_bitblocks, pixel_to_bits
from .container import (
    export_half_bitmap,
    read_gray_image,
    read_share,
    write_gray_image,
    write_share,
)
from .errors import *  # noqa: F401,F403
from .rng import RandomStream
from .scheme import (
    Half,
    PairDistribution,
    Share,
    ShareBitTriple,
    encode_bit,
    encode_image,
    encode_pixel,
    reconstruct_bit,
    reconstruct_image,
    reconstruct_pixel,
    sample_or_pair,
    select_halves,
)

__version__ = "0.1.0"
