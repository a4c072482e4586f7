"""Measurements of the scheme: reconstruction exactness, pixel expansion and
single-share leakage."""

from __future__ import annotations

import itertools
import json
from dataclasses import asdict, dataclass

import numpy as np

from .bitplane import BITS_PER_PIXEL, GrayImage
from .errors import DomainError, ShapeError
from .rng import RandomStream, as_stream
from .scheme import (
    SHARE_INDICES,
    SLOTS,
    PairDistribution,
    Share,
    ShareBitTriple,
    encode_bits,
    reconstruct_image,
)

PAIRS = ((1, 2), (1, 3), (2, 3))
SHARE_BITS_PER_PIXEL = 2 * BITS_PER_PIXEL


def _pair_key(pair) -> str:
    return f"{pair[0]}+{pair[1]}"


@dataclass
class PairExactness:
    pair: tuple[int, int]
    mismatched_pixels: int
    max_abs_diff: int


@dataclass
class ExactnessReport:
    width: int
    height: int
    pairs: list[PairExactness]

    @property
    def exact(self) -> bool:
        return all(p.mismatched_pixels == 0 for p in self.pairs)

    def for_pair(self, i: int, j: int) -> PairExactness:
        key = tuple(sorted((i, j)))
        return next(p for p in self.pairs if p.pair == key)

    def to_dict(self) -> dict:
        return {
            "width": self.width,
            "height": self.height,
            "exact": self.exact,
            "pairs": {_pair_key(p.pair): {"mismatched_pixels": p.mismatched_pixels,
                                          "max_abs_diff": p.max_abs_diff} for p in self.pairs},
        }

    def to_text(self) -> str:
        lines = [f"exactness.width: {self.width}", f"exactness.height: {self.height}"]
        for p in self.pairs:
            k = _pair_key(p.pair)
            lines.append(f"exactness.pair[{k}].mismatched_pixels: {p.mismatched_pixels}")
            lines.append(f"exactness.pair[{k}].max_abs_diff: {p.max_abs_diff}")
        lines.append(f"exactness.exact: {str(self.exact).lower()}")
        return "\n".join(lines)


@dataclass
class ExpansionReport:
    width: int
    height: int
    secret_bits_per_pixel: int
    share_bits_per_pixel: int
    per_share_ratio: int
    aggregate_ratio: int
    secret_bits: int
    payload_bits_per_share: int
    payload_bytes_per_share: int
    total_share_bits: int

    def to_dict(self) -> dict:
        return asdict(self)

    def to_text(self) -> str:
        return "\n".join(f"expansion.{k}: {v}" for k, v in asdict(self).items())


@dataclass
class SlotLeakage:
    slot: str
    p1_given_b1: float
    p1_given_b0: float
    samples: int


@dataclass
class LeakageReport:
    dist: PairDistribution
    samples: int
    slots: list[SlotLeakage]
    share_advantage: dict[int, float]

    @property
    def advantage(self) -> float:
        """Largest single-share guessing advantage over the three shares."""
        return max(self.share_advantage.values())

    def slot(self, name: str) -> SlotLeakage:
        return next(s for s in self.slots if s.slot == name)

    def to_dict(self) -> dict:
        return {
            "dist": self.dist.name.lower(),
            "samples": self.samples,
            "slots": [asdict(s) for s in self.slots],
            "advantage": self.advantage,
            "share_advantage": {str(i): a for i, a in self.share_advantage.items()},
        }

    def to_text(self) -> str:
        lines = [f"leakage.dist: {self.dist.name.lower()}", f"leakage.samples: {self.samples}"]
        for s in self.slots:
            lines.append(f"leakage.slot[{s.slot}].p1_given_b1: {s.p1_given_b1:.6f}")
            lines.append(f"leakage.slot[{s.slot}].p1_given_b0: {s.p1_given_b0:.6f}")
            lines.append(f"leakage.slot[{s.slot}].samples: {s.samples}")
        for i, a in self.share_advantage.items():
            lines.append(f"leakage.share[{i}].advantage: {a:.6f}")
        lines.append(f"leakage.advantage: {self.advantage:.6f}")
        return "\n".join(lines)


def verify_exactness(secret: GrayImage, shares) -> ExactnessReport:
    by_index = {s.index: s for s in shares}
    if sorted(by_index) != list(SHARE_INDICES) or len(shares) != 3:
        raise DomainError(f"need shares 1, 2 and 3, got indices {[s.index for s in shares]}")
    for s in shares:
        if (s.width, s.height) != (secret.width, secret.height):
            raise ShapeError(
                f"share {s.index} is {s.width}x{s.height}, secret is {secret.width}x{secret.height}")
    original = secret.pixels.astype(np.int16)
    results = []
    for i, j in PAIRS:
        rebuilt = reconstruct_image(by_index[i], by_index[j]).pixels.astype(np.int16)
        diff = np.abs(rebuilt - original)
        results.append(PairExactness((i, j), int(np.count_nonzero(diff)), int(diff.max())))
    return ExactnessReport(secret.width, secret.height, results)


def measure_expansion(share: Share) -> ExpansionReport:
    pixels = share.width * share.height
    payload_bits = pixels * SHARE_BITS_PER_PIXEL
    return ExpansionReport(
        width=share.width,
        height=share.height,
        secret_bits_per_pixel=BITS_PER_PIXEL,
        share_bits_per_pixel=SHARE_BITS_PER_PIXEL,
        per_share_ratio=SHARE_BITS_PER_PIXEL // BITS_PER_PIXEL,
        aggregate_ratio=len(SHARE_INDICES) * SHARE_BITS_PER_PIXEL // BITS_PER_PIXEL,
        secret_bits=pixels * BITS_PER_PIXEL,
        payload_bits_per_share=payload_bits,
        payload_bytes_per_share=-(-payload_bits // 8),
        total_share_bits=len(SHARE_INDICES) * payload_bits,
    )


def _bayes_advantage(obs0: np.ndarray, obs1: np.ndarray) -> float:
    """Best accuracy minus 1/2 for guessing b from a 2-bit observation, balanced prior."""
    p0 = np.bincount(obs0, minlength=4) / len(obs0)
    p1 = np.bincount(obs1, minlength=4) / len(obs1)
    return float(0.5 * np.maximum(p0, p1).sum() - 0.5)


def measure_leakage(dist: PairDistribution | str, n_samples: int,
                    rng: RandomStream | int | None = None) -> LeakageReport:
    """Encode ``n_samples`` zero bits and ``n_samples`` one bits and tally what
    each half-bit, and each single share, reveals about the secret bit."""
    if n_samples < 1:
        raise DomainError(f"n_samples must be positive, got {n_samples}")
    dist = PairDistribution.parse(dist)
    rng = as_stream(rng)
    zeros = encode_bits(np.zeros(n_samples, dtype=np.uint8), dist, rng)
    ones = encode_bits(np.ones(n_samples, dtype=np.uint8), dist, rng)
    p0 = zeros.sum(axis=0) / n_samples
    p1 = ones.sum(axis=0) / n_samples
    slots = [SlotLeakage(name, float(p1[k]), float(p0[k]), n_samples) for k, name in enumerate(SLOTS)]
    advantage = {}
    for i in SHARE_INDICES:
        a, b = 2 * (i - 1), 2 * (i - 1) + 1
        advantage[i] = _bayes_advantage(zeros[:, a] * 2 + zeros[:, b], ones[:, a] * 2 + ones[:, b])
    return LeakageReport(dist, n_samples, slots, advantage)


def enumerate_valid_triples(b: int, dist: PairDistribution | str | None = None) -> set[ShareBitTriple]:
    """Brute-force every 6-bit assignment and keep those whose three constrained
    pairs OR to ``b``. With ``dist`` given, each pair must also lie in its support
    (only matters for ``b == 1``)."""
    if b not in (0, 1):
        raise DomainError(f"secret bit must be 0 or 1, got {b!r}")
    support = set(PairDistribution.parse(dist).support) if dist is not None else None
    found = set()
    for bits in itertools.product((0, 1), repeat=6):
        t = ShareBitTriple(*bits)
        pairs = ((t.a1, t.a2), (t.b1, t.a3), (t.b2, t.b3))
        if any(x | y != b for x, y in pairs):
            continue
        if b == 1 and support is not None and any(p not in support for p in pairs):
            continue
        found.add(t)
    return found


def reports_to_json(*reports) -> str:
    doc = {}
    for r in reports:
        key = {ExactnessReport: "exactness", ExpansionReport: "expansion", LeakageReport: "leakage"}[type(r)]
        doc[key] = r.to_dict()
    return json.dumps(doc, indent=2)
