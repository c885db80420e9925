"""Multiset codecs over count-annotated tries.

Three regimes share one traversal scheme (pre-order, child 0 before
child 1, parents always before children):

  * fixed(L): every member has length exactly L.  Each node above depth
    L encodes n1 given its count n; n0 = n - n1 is implied.  Depth-L
    nodes are leaves and encode nothing.
  * self-delimiting(detector): as fixed, except descent stops where the
    detector declares the prefix complete.  No termination counts are
    coded; the detector carries all length information.
  * general(length_model): at every node of depth d the termination
    count n_T is coded first (n_T ~ Binomial(n, theta_T(d)) with the
    hazard from the length model), then the remaining n - n_T members
    split as in fixed mode.

Families supply the per-node count distribution: Binomial(n, theta)
with known bias, or Beta-binomial(n, alpha, beta) when the bias is
unknown.  Beta-binomial state is fresh at every node (nothing adapts
across nodes).  Under the beta-binomial family the general regime's
termination count is also coded Beta-binomially -- the termination rate
is then treated as unknown too, and the length model is used only to
validate members, not to code.

The decoder mirrors the encoder exactly, recovering each node count
before descending, so both sides always agree on the next distribution.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

import numpy as np

from .distributions import betabin_log2pmf_table, binomial_log2pmf_table
from .errors import CorruptStreamError, ModelMismatchError
from .models import EndDetector, LengthModel, hazard
from .msettree import MultisetTree, TreeNode
from .quantize import QuantizedPmf, quantized_betabin, quantized_binomial
from .rangecoder import RangeDecoder, RangeEncoder

# Bound on decoder descent for the two unbounded regimes: a corrupted
# payload must not walk forever (a truncated stream reads as endless
# zero bytes, which keep every member alive almost for free).  64k-bit
# members sit far past this library's domain of short sequences, and
# hitting the cap costs well under a second.
DECODE_DEPTH_CAP = 1 << 16

_POP = object()


@dataclass(frozen=True)
class BinomialFamily:
    theta: Fraction = Fraction(1, 2)

    def __post_init__(self) -> None:
        if not 0 <= self.theta <= 1:
            raise ValueError("theta must lie in [0, 1]")

    def split_table(self, n: int) -> QuantizedPmf:
        return quantized_binomial(n, self.theta)

    def termination_table(self, n: int, theta_t: Fraction) -> QuantizedPmf:
        return quantized_binomial(n, theta_t)

    def split_log2pmf(self, n: int) -> np.ndarray:
        return binomial_log2pmf_table(n, self.theta)

    def termination_log2pmf(self, n: int, theta_t: Fraction) -> np.ndarray:
        return binomial_log2pmf_table(n, theta_t)


@dataclass(frozen=True)
class BetaBinomialFamily:
    alpha: Fraction = Fraction(1, 2)
    beta: Fraction = Fraction(1, 2)

    def __post_init__(self) -> None:
        if self.alpha <= 0 or self.beta <= 0:
            raise ValueError("alpha and beta must be positive")

    def split_table(self, n: int) -> QuantizedPmf:
        return quantized_betabin(n, self.alpha, self.beta)

    def termination_table(self, n: int, theta_t: Fraction) -> QuantizedPmf:
        # theta_t intentionally unused: the termination rate is coded as
        # unknown, same prior as the splits.
        return quantized_betabin(n, self.alpha, self.beta)

    def split_log2pmf(self, n: int) -> np.ndarray:
        return betabin_log2pmf_table(n, self.alpha, self.beta)

    def termination_log2pmf(self, n: int, theta_t: Fraction) -> np.ndarray:
        return betabin_log2pmf_table(n, self.alpha, self.beta)


Family = Union[BinomialFamily, BetaBinomialFamily]


@dataclass(frozen=True)
class FixedRegime:
    length: int

    def __post_init__(self) -> None:
        if self.length < 1:
            raise ValueError("fixed-mode length must be >= 1")


@dataclass(frozen=True)
class SelfDelimitingRegime:
    detector: EndDetector


@dataclass(frozen=True)
class GeneralRegime:
    length_model: LengthModel


Regime = Union[FixedRegime, SelfDelimitingRegime, GeneralRegime]


@dataclass(frozen=True)
class CodecParams:
    regime: Regime
    family: Family = BinomialFamily()


def _encode_outcome(enc: RangeEncoder, table: QuantizedPmf, k: int) -> None:
    if table.total == 1:
        # Point mass: zero information, nothing coded.  Anything else
        # is a symbol the model forbids.
        if k != table.symbol_of(0):
            raise ModelMismatchError(f"outcome {k} has zero probability under the model")
        return
    enc.encode_interval(table.interval_of(k))


def _decode_outcome(dec: RangeDecoder, table: QuantizedPmf) -> int:
    if table.total == 1:
        return table.symbol_of(0)
    target = dec.decode_target(table.total)
    k = table.symbol_of(target)
    dec.decode_commit(table.interval_of(k))
    return k


# ---------------------------------------------------------------------------
# Preconditions.  Checked in full before anything is emitted.


def _validate_fixed(tree: MultisetTree, length: int) -> None:
    stack = [(tree.root, 0)]
    while stack:
        node, d = stack.pop()
        if d == length:
            if node.child0 is not None or node.child1 is not None:
                raise ModelMismatchError(f"member longer than fixed length {length}")
            continue
        if node.slack:
            raise ModelMismatchError(f"member of length {d}, expected exactly {length}")
        if node.child1 is not None:
            stack.append((node.child1, d + 1))
        if node.child0 is not None:
            stack.append((node.child0, d + 1))


def _validate_selfdelim(tree: MultisetTree, detector: EndDetector) -> None:
    prefix: list[int] = []
    stack: list = [(tree.root, None)]
    while stack:
        item = stack.pop()
        if item is _POP:
            prefix.pop()
            continue
        node, bit = item
        if bit is not None:
            prefix.append(bit)
            stack.append(_POP)
        if detector.is_complete(prefix):
            if node.child0 is not None or node.child1 is not None:
                raise ModelMismatchError("member extends a complete prefix")
            continue
        if node.slack:
            raise ModelMismatchError("member ends at an incomplete prefix")
        if node.child1 is not None:
            stack.append((node.child1, 1))
        if node.child0 is not None:
            stack.append((node.child0, 0))


def _validate_general(tree: MultisetTree, model: LengthModel) -> None:
    stack = [(tree.root, 0)]
    while stack:
        node, d = stack.pop()
        if node.slack and model.pmf(d) == 0:
            raise ModelMismatchError(f"member length {d} has zero probability under the length model")
        if node.child1 is not None:
            stack.append((node.child1, d + 1))
        if node.child0 is not None:
            stack.append((node.child0, d + 1))


def validate_tree(tree: MultisetTree, params: CodecParams) -> None:
    regime = params.regime
    if isinstance(regime, FixedRegime):
        _validate_fixed(tree, regime.length)
    elif isinstance(regime, SelfDelimitingRegime):
        _validate_selfdelim(tree, regime.detector)
    elif isinstance(regime, GeneralRegime):
        _validate_general(tree, regime.length_model)
    else:
        raise TypeError(f"unknown regime {regime!r}")


# ---------------------------------------------------------------------------
# Encoding.


def encode_tree(tree: MultisetTree, params: CodecParams, enc: RangeEncoder) -> None:
    """Code the tree's counts.  N itself is the container's job."""
    validate_tree(tree, params)
    if len(tree) == 0:
        return
    regime, fam = params.regime, params.family
    if isinstance(regime, FixedRegime):
        _encode_fixed(tree, regime.length, fam, enc)
    elif isinstance(regime, SelfDelimitingRegime):
        _encode_selfdelim(tree, regime.detector, fam, enc)
    else:
        _encode_general(tree, regime.length_model, fam, enc)


def _encode_fixed(tree: MultisetTree, length: int, fam: Family, enc: RangeEncoder) -> None:
    stack = [(tree.root, 0)]
    while stack:
        node, d = stack.pop()
        if d == length:
            continue
        n1 = node.child1.count if node.child1 is not None else 0
        _encode_outcome(enc, fam.split_table(node.count), n1)
        if node.child1 is not None:
            stack.append((node.child1, d + 1))
        if node.child0 is not None:
            stack.append((node.child0, d + 1))


def _encode_selfdelim(
    tree: MultisetTree, detector: EndDetector, fam: Family, enc: RangeEncoder
) -> None:
    prefix: list[int] = []
    stack: list = [(tree.root, None)]
    while stack:
        item = stack.pop()
        if item is _POP:
            prefix.pop()
            continue
        node, bit = item
        if bit is not None:
            prefix.append(bit)
            stack.append(_POP)
        if detector.is_complete(prefix):
            continue
        n1 = node.child1.count if node.child1 is not None else 0
        _encode_outcome(enc, fam.split_table(node.count), n1)
        if node.child1 is not None:
            stack.append((node.child1, 1))
        if node.child0 is not None:
            stack.append((node.child0, 0))


def _encode_general(
    tree: MultisetTree, model: LengthModel, fam: Family, enc: RangeEncoder
) -> None:
    stack = [(tree.root, 0)]
    while stack:
        node, d = stack.pop()
        n = node.count
        th = hazard(model, d)
        _encode_outcome(enc, fam.termination_table(n, th), node.slack)
        rem = n - node.slack
        n1 = node.child1.count if node.child1 is not None else 0
        _encode_outcome(enc, fam.split_table(rem), n1)
        if node.child1 is not None:
            stack.append((node.child1, d + 1))
        if node.child0 is not None:
            stack.append((node.child0, d + 1))


# ---------------------------------------------------------------------------
# Decoding.  Mirrors the encoder's traversal decision for decision.


def decode_tree(params: CodecParams, n_members: int, dec: RangeDecoder) -> MultisetTree:
    tree = MultisetTree()
    if n_members == 0:
        return tree
    tree.root.count = n_members
    regime, fam = params.regime, params.family
    if isinstance(regime, FixedRegime):
        _decode_fixed(tree, regime.length, fam, dec)
    elif isinstance(regime, SelfDelimitingRegime):
        _decode_selfdelim(tree, regime.detector, fam, dec)
    elif isinstance(regime, GeneralRegime):
        _decode_general(tree, regime.length_model, fam, dec)
    else:
        raise TypeError(f"unknown regime {regime!r}")
    return tree


def _decode_fixed(tree: MultisetTree, length: int, fam: Family, dec: RangeDecoder) -> None:
    stack = [(tree.root, 0)]
    while stack:
        node, d = stack.pop()
        if d == length:
            continue
        n = node.count
        n1 = _decode_outcome(dec, fam.split_table(n))
        n0 = n - n1
        if n1:
            node.child1 = TreeNode(n1)
            stack.append((node.child1, d + 1))
        if n0:
            node.child0 = TreeNode(n0)
            stack.append((node.child0, d + 1))


def _decode_selfdelim(
    tree: MultisetTree, detector: EndDetector, fam: Family, dec: RangeDecoder
) -> None:
    prefix: list[int] = []
    stack: list = [(tree.root, None)]
    while stack:
        item = stack.pop()
        if item is _POP:
            prefix.pop()
            continue
        node, bit = item
        if bit is not None:
            prefix.append(bit)
            stack.append(_POP)
        if len(prefix) > DECODE_DEPTH_CAP:
            raise CorruptStreamError("decoder descended past the depth cap")
        if detector.is_complete(prefix):
            continue
        n = node.count
        n1 = _decode_outcome(dec, fam.split_table(n))
        n0 = n - n1
        if n1:
            node.child1 = TreeNode(n1)
            stack.append((node.child1, 1))
        if n0:
            node.child0 = TreeNode(n0)
            stack.append((node.child0, 0))


def _decode_general(
    tree: MultisetTree, model: LengthModel, fam: Family, dec: RangeDecoder
) -> None:
    cap = model.max_length()
    if cap is None:
        cap = DECODE_DEPTH_CAP
    stack = [(tree.root, 0)]
    while stack:
        node, d = stack.pop()
        if d > cap:
            raise CorruptStreamError("decoded member longer than the length model allows")
        n = node.count
        th = hazard(model, d)
        nt = _decode_outcome(dec, fam.termination_table(n, th))
        if nt and model.pmf(d) == 0:
            # reachable only with full-support termination tables on a
            # corrupt stream; no encoder output decodes to this state
            raise CorruptStreamError(f"decoded a member of impossible length {d}")
        rem = n - nt
        n1 = _decode_outcome(dec, fam.split_table(rem))
        n0 = rem - n1
        if n1:
            node.child1 = TreeNode(n1)
            stack.append((node.child1, d + 1))
        if n0:
            node.child0 = TreeNode(n0)
            stack.append((node.child0, d + 1))


# ---------------------------------------------------------------------------
# Ideal codelength: sum of -log2 pmf over the exact (unquantized)
# distributions, walking the same decisions the encoder codes.  Used as
# the optimality yardstick; in fixed mode with theta = 1/2 it equals
# N*L - log2(N!/prod m_j!).


def ideal_codelength(tree: MultisetTree, params: CodecParams) -> float:
    validate_tree(tree, params)
    if len(tree) == 0:
        return 0.0
    regime, fam = params.regime, params.family

    split_cache: dict[int, np.ndarray] = {}
    term_cache: dict[tuple[int, Fraction], np.ndarray] = {}

    def split_bits(n: int, k: int) -> float:
        tab = split_cache.get(n)
        if tab is None:
            tab = split_cache[n] = fam.split_log2pmf(n)
        return -float(tab[k])

    def term_bits(n: int, th: Fraction, k: int) -> float:
        key = (n, th)
        tab = term_cache.get(key)
        if tab is None:
            tab = term_cache[key] = fam.termination_log2pmf(n, th)
        return -float(tab[k])

    total = 0.0
    if isinstance(regime, FixedRegime):
        stack = [(tree.root, 0)]
        while stack:
            node, d = stack.pop()
            if d == regime.length:
                continue
            n1 = node.child1.count if node.child1 is not None else 0
            total += split_bits(node.count, n1)
            if node.child1 is not None:
                stack.append((node.child1, d + 1))
            if node.child0 is not None:
                stack.append((node.child0, d + 1))
    elif isinstance(regime, SelfDelimitingRegime):
        detector = regime.detector
        prefix: list[int] = []
        sstack: list = [(tree.root, None)]
        while sstack:
            item = sstack.pop()
            if item is _POP:
                prefix.pop()
                continue
            node, bit = item
            if bit is not None:
                prefix.append(bit)
                sstack.append(_POP)
            if detector.is_complete(prefix):
                continue
            n1 = node.child1.count if node.child1 is not None else 0
            total += split_bits(node.count, n1)
            if node.child1 is not None:
                sstack.append((node.child1, 1))
            if node.child0 is not None:
                sstack.append((node.child0, 0))
    else:
        model = regime.length_model
        stack = [(tree.root, 0)]
        while stack:
            node, d = stack.pop()
            n = node.count
            th = hazard(model, d)
            total += term_bits(n, th, node.slack)
            rem = n - node.slack
            n1 = node.child1.count if node.child1 is not None else 0
            total += split_bits(rem, n1)
            if node.child1 is not None:
                stack.append((node.child1, d + 1))
            if node.child0 is not None:
                stack.append((node.child0, d + 1))
    return total
