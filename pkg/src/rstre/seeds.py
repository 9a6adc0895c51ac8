"""Deterministic child-seed derivation."""
import hashlib
import struct
from dataclasses import dataclass

MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class SeedStream:
    """Derives 64-bit child seeds from a master seed.

    Children are BLAKE2b digests of ``(master_seed, label, index)``, so the
    same triple always yields the same seed and distinct triples collide
    with probability about 2**-64.
    """

    master_seed: int

    def __post_init__(self):
        object.__setattr__(self, "master_seed", int(self.master_seed) & MASK64)

    def child(self, label, index=0):
        h = hashlib.blake2b(digest_size=8, person=b"rstre-seed")
        h.update(struct.pack("<Q", self.master_seed))
        h.update(label.encode("utf-8"))
        h.update(b"\x00")
        h.update(struct.pack("<q", int(index)))
        return int.from_bytes(h.digest(), "little")

    def spawn(self, label, index=0):
        return SeedStream(self.child(label, index))


def numpy_rng(seed):
    import numpy as np

    return np.random.default_rng(int(seed) & MASK64)
