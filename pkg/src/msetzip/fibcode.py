"""Self-delimiting Fibonacci code for positive integers.

A codeword is the Zeckendorf representation of n written least
significant digit first (digit for F(2)=1 first, then F(3)=2, F(4)=3,
F(5)=5, ...) up to the largest Fibonacci number used, followed by a
single 1 as terminator.  Zeckendorf representations never use two
consecutive Fibonacci numbers, so "11" occurs exactly once, at the end,
which makes the code prefix-free:

    1 -> 11      4 -> 1011      7 -> 01011
    2 -> 011     5 -> 00011     8 -> 000011
    3 -> 0011    6 -> 10011    12 -> 101011
"""

from __future__ import annotations

from bisect import bisect_right

from .bits import BitReader
from .errors import CorruptStreamError, TruncationError

# _FIBS[i] = F(i + 2): 1, 2, 3, 5, 8, ... past 2**64
_FIBS = [1, 2]
while _FIBS[-1] < 1 << 64:
    _FIBS.append(_FIBS[-1] + _FIBS[-2])


def fib_encode(n: int) -> str:
    """Codeword for n >= 1 as a string of '0'/'1'."""
    if n < 1:
        raise ValueError("Fibonacci code is defined for n >= 1")
    top = bisect_right(_FIBS, n) - 1
    digits = ["0"] * (top + 1)
    rem = n
    for i in range(top, -1, -1):
        if _FIBS[i] <= rem:
            digits[i] = "1"
            rem -= _FIBS[i]
    return "".join(digits) + "1"


def fib_length(n: int) -> int:
    """Codeword length in bits, without building the codeword."""
    if n < 1:
        raise ValueError("Fibonacci code is defined for n >= 1")
    return bisect_right(_FIBS, n) + 1


def fib_decode(bits: str) -> tuple[int, int]:
    """Decode one codeword from the front of bits.

    Returns (n, bits consumed).  Raises TruncationError if the string
    ends before the 11 terminator.
    """
    acc = 0
    prev = 0
    for i, c in enumerate(bits):
        b = 1 if c == "1" else 0
        if b and prev:
            return acc, i + 1
        if b:
            if i >= len(_FIBS):
                raise CorruptStreamError("Fibonacci codeword exceeds the supported range")
            acc += _FIBS[i]
        prev = b
    raise TruncationError("no terminator in Fibonacci codeword")


def write_fib(writer, n: int) -> None:
    for c in fib_encode(n):
        writer.write_bit(c == "1")


def read_fib(reader: BitReader) -> int:
    """Consume one codeword from a BitReader."""
    acc = 0
    prev = 0
    i = 0
    while True:
        b = reader.read_bit()
        if b and prev:
            return acc
        if b:
            if i >= len(_FIBS):
                raise CorruptStreamError("Fibonacci codeword exceeds the supported range")
            acc += _FIBS[i]
        prev = b
        i += 1
