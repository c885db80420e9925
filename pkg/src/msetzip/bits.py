"""Bit-level primitives: immutable bit strings plus MSB-first stream I/O.

Everything in this package that touches raw bits goes through the three
classes here.  Bit order is MSB-first throughout: bit i of a BitString
lives in byte i >> 3 at shift 7 - (i & 7), and a BitWriter fills each
output byte from its most significant bit down.
"""

from __future__ import annotations

from typing import Iterable, Iterator

from .errors import TruncationError


class BitString:
    """An immutable sequence of bits backed by (bytes, bit length).

    Trailing pad bits in the last byte are forced to zero on construction,
    so equal bit sequences are equal objects and hash alike.  Ordering is
    lexicographic with a proper prefix sorting before its extensions
    ("0" < "00" < "01" < "1").
    """

    __slots__ = ("data", "nbits")

    def __init__(self, data: bytes, nbits: int):
        nbytes = (nbits + 7) >> 3
        if nbits < 0 or len(data) < nbytes:
            raise ValueError("bit length does not fit the buffer")
        data = bytes(data[:nbytes])
        tail = nbits & 7
        if tail and data and data[-1] & (0xFF >> tail):
            # canonicalize: zero the pad bits so eq/hash see one representation
            data = data[:-1] + bytes([data[-1] & (0xFF << (8 - tail)) & 0xFF])
        object.__setattr__(self, "data", data)
        object.__setattr__(self, "nbits", nbits)

    def __setattr__(self, name, value):
        raise AttributeError("BitString is immutable")

    @classmethod
    def from_str(cls, s: str) -> "BitString":
        return cls.from_bits(1 if c == "1" else 0 for c in s if c in "01")

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> "BitString":
        buf = bytearray()
        acc = 0
        n = 0
        for b in bits:
            acc = (acc << 1) | (1 if b else 0)
            n += 1
            if not n & 7:
                buf.append(acc)
                acc = 0
        if n & 7:
            buf.append(acc << (8 - (n & 7)))
        return cls(bytes(buf), n)

    def bit(self, i: int) -> int:
        if not 0 <= i < self.nbits:
            raise IndexError("bit index out of range")
        return (self.data[i >> 3] >> (7 - (i & 7))) & 1

    def bits(self) -> Iterator[int]:
        data = self.data
        for i in range(self.nbits):
            yield (data[i >> 3] >> (7 - (i & 7))) & 1

    def to_str(self) -> str:
        return "".join("01"[b] for b in self.bits())

    def __len__(self) -> int:
        return self.nbits

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BitString)
            and self.nbits == other.nbits
            and self.data == other.data
        )

    def __hash__(self) -> int:
        return hash((self.nbits, self.data))

    def __lt__(self, other: "BitString") -> bool:
        if not isinstance(other, BitString):
            return NotImplemented
        return self.to_str() < other.to_str()

    def __le__(self, other: "BitString") -> bool:
        if not isinstance(other, BitString):
            return NotImplemented
        return self.to_str() <= other.to_str()

    def __repr__(self) -> str:
        if self.nbits <= 64:
            return f"BitString('{self.to_str()}')"
        return f"BitString(<{self.nbits} bits>)"


def as_bitstring(x) -> BitString:
    """Coerce a str of 0/1 characters or a BitString to a BitString."""
    if isinstance(x, BitString):
        return x
    if isinstance(x, str):
        return BitString.from_str(x)
    raise TypeError(f"cannot interpret {type(x).__name__} as a bit string")


class BitWriter:
    """Append-only MSB-first bit sink."""

    def __init__(self):
        self._buf = bytearray()
        self._acc = 0      # pending bits, right-aligned
        self._nacc = 0     # number of pending bits, always < 8

    @property
    def bit_length(self) -> int:
        return 8 * len(self._buf) + self._nacc

    def write_bit(self, b: int) -> None:
        self.write_bits(1 if b else 0, 1)

    def write_bits(self, value: int, n: int) -> None:
        """Write the n low bits of value, most significant first."""
        if n < 0 or value < 0 or value >> n:
            raise ValueError("value does not fit in n bits")
        acc = (self._acc << n) | value
        nacc = self._nacc + n
        while nacc >= 8:
            nacc -= 8
            self._buf.append((acc >> nacc) & 0xFF)
        self._acc = acc & ((1 << nacc) - 1)
        self._nacc = nacc

    def write_bytes(self, data: bytes) -> None:
        if self._nacc == 0:
            self._buf.extend(data)
        else:
            for byte in data:
                self.write_bits(byte, 8)

    def write_bitstring(self, bs: BitString) -> None:
        whole, tail = divmod(bs.nbits, 8)
        self.write_bytes(bs.data[:whole])
        if tail:
            self.write_bits(bs.data[whole] >> (8 - tail), tail)

    def getvalue(self) -> bytes:
        """Return all bits written so far, zero-padded to a whole byte."""
        out = bytes(self._buf)
        if self._nacc:
            out += bytes([(self._acc << (8 - self._nacc)) & 0xFF])
        return out


class BitReader:
    """MSB-first bit source over a bytes object.

    read_bit/read_bits raise TruncationError past the end; the padded
    byte reader used by the range decoder returns zero bytes instead,
    matching the encoder's right to drop trailing zeros.
    """

    def __init__(self, data: bytes, start_bit: int = 0):
        self._data = data
        self._nbits = 8 * len(data)
        if not 0 <= start_bit <= self._nbits:
            raise ValueError("start bit out of range")
        self._pos = start_bit

    @property
    def bit_position(self) -> int:
        return self._pos

    @property
    def bits_remaining(self) -> int:
        return self._nbits - self._pos

    def read_bit(self) -> int:
        pos = self._pos
        if pos >= self._nbits:
            raise TruncationError("bit stream exhausted")
        self._pos = pos + 1
        return (self._data[pos >> 3] >> (7 - (pos & 7))) & 1

    def read_bits(self, n: int) -> int:
        if n > self._nbits - self._pos:
            raise TruncationError("bit stream exhausted")
        v = 0
        for _ in range(n):
            v = (v << 1) | self.read_bit()
        return v

    def read_byte_padded(self) -> int:
        """Next 8 bits, treating everything past the end as zeros."""
        pos = self._pos
        self._pos = pos + 8
        i = pos >> 3
        off = pos & 7
        data = self._data
        b0 = data[i] if i < len(data) else 0
        if off == 0:
            return b0
        b1 = data[i + 1] if i + 1 < len(data) else 0
        return ((b0 << off) | (b1 >> (8 - off))) & 0xFF
