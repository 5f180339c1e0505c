"""Seeded bit stream that counts every bit it hands out.

The stream is SHA-256 in counter mode: block ``i`` is
``sha256(seed || i.to_bytes(8, "big"))``, the blocks are concatenated and the
whole byte string is read as one little-endian integer.  ``draw_bits(k)``
returns the next ``k`` bits of that integer, so ``draw_bits(7)`` followed by
``draw_bits(9)`` yields the same bits as a single ``draw_bits(16)``.
"""

from __future__ import annotations

import hashlib

GENERATOR_ID = "sha256-ctr-le/v1"


class EntropySource:
    def __init__(self, seed: bytes | str = b"\x00"):
        if isinstance(seed, str):
            seed = parse_seed(seed)
        self.seed = bytes(seed)
        self.bits_consumed = 0
        self._block_index = 0
        self._buffer = 0
        self._buffered = 0

    @property
    def cursor(self) -> int:
        """Position in the expanded stream; equals ``bits_consumed``."""
        return self.bits_consumed

    def _refill(self):
        digest = hashlib.sha256(self.seed + self._block_index.to_bytes(8, "big")).digest()
        self._block_index += 1
        self._buffer |= int.from_bytes(digest, "little") << self._buffered
        self._buffered += 8 * len(digest)

    def draw_bits(self, k: int) -> int:
        if k < 0:
            raise ValueError(f"cannot draw {k} bits")
        while self._buffered < k:
            self._refill()
        out = self._buffer & ((1 << k) - 1)
        self._buffer >>= k
        self._buffered -= k
        self.bits_consumed += k
        return out

    def draw_mod(self, q: int) -> int:
        """Uniform residue in [0, q).

        Powers of two take exactly log2(q) bits and return the raw draw.  Other
        moduli use Lumbroso's fast dice roller: a bitwise rejection sampler
        that recycles the rejected range, ~log2(q) + 2 bits on average.
        """
        if q < 1:
            raise ValueError(f"modulus must be >= 1, got {q}")
        if q & (q - 1) == 0:
            return self.draw_bits(q.bit_length() - 1)
        v, c = 0, 1
        while True:
            v = 2 * v + self.draw_bits(1)
            c *= 2
            if c >= q:
                if v < q:
                    return v
                v -= q
                c -= q

    def __repr__(self):
        return f"EntropySource(seed={self.seed.hex()!r}, bits_consumed={self.bits_consumed})"


def parse_seed(text: str) -> bytes:
    """Hex seed as accepted on the command line; odd length gets a leading zero."""
    text = text.strip().lower()
    if text.startswith("0x"):
        text = text[2:]
    if len(text) % 2:
        text = "0" + text
    try:
        return bytes.fromhex(text)
    except ValueError:
        raise ValueError(f"seed {text!r} is not a hex string") from None
