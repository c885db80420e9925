"""Container file format.

Layout (big-endian, MSB-first bit packing):

    magic   4 bytes  "MSZ1"
    version 1 byte   = 1
    regime  1 byte   0 fixed / 1 self-delimiting / 2 general
    family  1 byte   0 binomial / 1 beta-binomial
    regime params:
        fixed            u16 L
        self-delimiting  u8 detector id: 0 Fibonacci-terminator
                                         1 fixed-length (+ u16 L)
        general          u8 length-model id: 0 point    (+ u16 L)
                                             1 uniform  (+ u16 lo, u16 hi)
                                             2 geometric(+ u32/u32 p)
    family params:
        binomial         u32/u32 theta
        beta-binomial    u32/u32 alpha, u32/u32 beta
    bit stream:
        Fibonacci(N + 1)   (N + 1 so the empty multiset is encodable)
        range-coded payload (absent when N = 0)
    zero padding to a byte boundary.

Rationals are unsigned num/den pairs; a denominator of zero is
malformed.  Unknown ids are rejected, never guessed at.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .bits import BitReader, BitString, BitWriter
from .errors import CorruptStreamError, FormatError, TruncationError
from .fibcode import fib_length, read_fib, write_fib
from .models import (
    FibTerminatorDetector,
    FixedLengthDetector,
    GeometricLength,
    PointLength,
    UniformLength,
)
from .msettree import MultisetTree
from .rangecoder import RangeDecoder, RangeEncoder
from .treecodec import (
    BetaBinomialFamily,
    BinomialFamily,
    CodecParams,
    FixedRegime,
    GeneralRegime,
    SelfDelimitingRegime,
    decode_tree,
    encode_tree,
)

MAGIC = b"MSZ1"
VERSION = 1

# Hard member-count capacity, enforced symmetrically by compress and
# decompress.  Coding tables and the decoded tree both scale linearly
# with N, so a count far past any practical workload is either a bug or
# a hostile stream; refusing it up front keeps corrupt containers from
# demanding gigabytes.
MAX_MEMBERS = (1 << 18) - 1

_REGIME_FIXED = 0
_REGIME_SELFDELIM = 1
_REGIME_GENERAL = 2

_FAMILY_BINOMIAL = 0
_FAMILY_BETABIN = 1

_DETECTOR_FIB = 0
_DETECTOR_FIXED = 1

_LENGTH_POINT = 0
_LENGTH_UNIFORM = 1
_LENGTH_GEOMETRIC = 2


def _pack_rational(x: Fraction) -> bytes:
    num, den = x.numerator, x.denominator
    if not (0 <= num < 1 << 32 and 1 <= den < 1 << 32):
        raise ValueError(f"rational {x} does not fit in u32/u32")
    return struct.pack(">II", num, den)


class _Parser:
    def __init__(self, data: bytes) -> None:
        self.data = data
        self.pos = 0

    def take(self, fmt: str):
        size = struct.calcsize(fmt)
        if self.pos + size > len(self.data):
            raise FormatError("container header truncated")
        out = struct.unpack_from(fmt, self.data, self.pos)
        self.pos += size
        return out if len(out) > 1 else out[0]

    def take_rational(self) -> Fraction:
        num, den = self.take(">II")
        if den == 0:
            raise FormatError("rational with zero denominator")
        return Fraction(num, den)


def serialize_header(params: CodecParams) -> bytes:
    out = bytearray(MAGIC)
    out.append(VERSION)

    regime = params.regime
    if isinstance(regime, FixedRegime):
        rbyte, rparams = _REGIME_FIXED, struct.pack(">H", regime.length)
    elif isinstance(regime, SelfDelimitingRegime):
        det = regime.detector
        if isinstance(det, FibTerminatorDetector):
            rbyte, rparams = _REGIME_SELFDELIM, bytes([_DETECTOR_FIB])
        elif isinstance(det, FixedLengthDetector):
            rbyte, rparams = _REGIME_SELFDELIM, bytes([_DETECTOR_FIXED]) + struct.pack(
                ">H", det.length
            )
        else:
            raise ValueError(f"detector {det!r} has no container encoding")
    elif isinstance(regime, GeneralRegime):
        model = regime.length_model
        if isinstance(model, PointLength):
            mparams = bytes([_LENGTH_POINT]) + struct.pack(">H", model.length)
        elif isinstance(model, UniformLength):
            mparams = bytes([_LENGTH_UNIFORM]) + struct.pack(">HH", model.lo, model.hi)
        elif isinstance(model, GeometricLength):
            mparams = bytes([_LENGTH_GEOMETRIC]) + _pack_rational(model.p)
        else:
            raise ValueError(f"length model {model!r} has no container encoding")
        rbyte, rparams = _REGIME_GENERAL, mparams
    else:
        raise ValueError(f"regime {regime!r} has no container encoding")

    fam = params.family
    if isinstance(fam, BinomialFamily):
        fbyte, fparams = _FAMILY_BINOMIAL, _pack_rational(fam.theta)
    elif isinstance(fam, BetaBinomialFamily):
        fbyte, fparams = _FAMILY_BETABIN, _pack_rational(fam.alpha) + _pack_rational(fam.beta)
    else:
        raise ValueError(f"family {fam!r} has no container encoding")

    out.append(rbyte)
    out.append(fbyte)
    out += rparams
    out += fparams
    return bytes(out)


def parse_header(data: bytes) -> tuple[CodecParams, int]:
    """Returns (params, header length in bytes)."""
    p = _Parser(data)
    magic = bytes(p.take(">4s"))
    if magic != MAGIC:
        raise FormatError(f"bad magic {magic!r}")
    version = p.take(">B")
    if version != VERSION:
        raise FormatError(f"unsupported version {version}")
    rbyte = p.take(">B")
    fbyte = p.take(">B")

    if rbyte == _REGIME_FIXED:
        length = p.take(">H")
        if length < 1:
            raise FormatError("fixed-mode length must be >= 1")
        regime = FixedRegime(length)
    elif rbyte == _REGIME_SELFDELIM:
        det_id = p.take(">B")
        if det_id == _DETECTOR_FIB:
            regime = SelfDelimitingRegime(FibTerminatorDetector())
        elif det_id == _DETECTOR_FIXED:
            length = p.take(">H")
            if length < 1:
                raise FormatError("detector length must be >= 1")
            regime = SelfDelimitingRegime(FixedLengthDetector(length))
        else:
            raise FormatError(f"unknown detector id {det_id}")
    elif rbyte == _REGIME_GENERAL:
        model_id = p.take(">B")
        if model_id == _LENGTH_POINT:
            regime = GeneralRegime(PointLength(p.take(">H")))
        elif model_id == _LENGTH_UNIFORM:
            lo, hi = p.take(">HH")
            if lo > hi:
                raise FormatError("uniform length model needs lo <= hi")
            regime = GeneralRegime(UniformLength(lo, hi))
        elif model_id == _LENGTH_GEOMETRIC:
            prob = p.take_rational()
            if not 0 < prob <= 1:
                raise FormatError("geometric parameter must lie in (0, 1]")
            regime = GeneralRegime(GeometricLength(prob))
        else:
            raise FormatError(f"unknown length-model id {model_id}")
    else:
        raise FormatError(f"unknown regime id {rbyte}")

    if fbyte == _FAMILY_BINOMIAL:
        theta = p.take_rational()
        if theta > 1:
            raise FormatError("theta must lie in [0, 1]")
        family = BinomialFamily(theta)
    elif fbyte == _FAMILY_BETABIN:
        alpha = p.take_rational()
        beta = p.take_rational()
        if alpha == 0 or beta == 0:
            raise FormatError("alpha and beta must be positive")
        family = BetaBinomialFamily(alpha, beta)
    else:
        raise FormatError(f"unknown family id {fbyte}")

    return CodecParams(regime=regime, family=family), p.pos


@dataclass(frozen=True)
class CompressResult:
    data: bytes
    header_bits: int
    n_header_bits: int
    payload_bits: int
    coded_decisions: int

    @property
    def total_bits(self) -> int:
        """Exact bit count before byte padding."""
        return self.header_bits + self.n_header_bits + self.payload_bits


def compress_tree_detail(tree: MultisetTree, params: CodecParams) -> CompressResult:
    if len(tree) > MAX_MEMBERS:
        raise ValueError(f"multiset size {len(tree)} exceeds the capacity {MAX_MEMBERS}")
    header = serialize_header(params)
    enc = RangeEncoder()
    encode_tree(tree, params, enc)  # validates before emitting anything
    payload = enc.finish()
    w = BitWriter()
    w.write_bytes(header)
    write_fib(w, len(tree) + 1)
    if len(tree) > 0:
        w.write_bitstring(payload)
    return CompressResult(
        data=w.getvalue(),
        header_bits=8 * len(header),
        n_header_bits=fib_length(len(tree) + 1),
        payload_bits=payload.nbits if len(tree) > 0 else 0,
        coded_decisions=enc.symbols_coded,
    )


def compress_tree(tree: MultisetTree, params: CodecParams) -> bytes:
    return compress_tree_detail(tree, params).data


def compress(members: Iterable, params: CodecParams) -> bytes:
    return compress_tree(MultisetTree.build(members), params)


def decompress_tree(data: bytes) -> tuple[MultisetTree, CodecParams]:
    params, header_len = parse_header(data)
    reader = BitReader(data, start_bit=8 * header_len)
    try:
        n_plus_1 = read_fib(reader)
    except TruncationError as e:
        raise CorruptStreamError("container ends inside the N header") from e
    n = n_plus_1 - 1
    if n > MAX_MEMBERS:
        raise CorruptStreamError(f"member count {n} exceeds the capacity {MAX_MEMBERS}")
    if n == 0:
        return MultisetTree(), params
    dec = RangeDecoder.from_reader(reader)
    tree = decode_tree(params, n, dec)
    return tree, params


def decompress(data: bytes) -> list[BitString]:
    """Members of the compressed multiset, in lexicographic order."""
    tree, _ = decompress_tree(data)
    return tree.enumerate()
