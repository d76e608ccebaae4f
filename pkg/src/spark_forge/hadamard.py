"""Sylvester Hadamard matrices and the row permutation that makes them
antisymmetric under XOR translation.

The order-2^m Sylvester matrix has entry (w, v) = (-1)^popcount(w AND v).
Permuting its rows by flip_upper_bits produces a matrix whose 0-row and
0-column are all ones and whose row i negates when the column index is
translated by i (j -> j XOR i), for every i != 0.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gf import FieldContext
from .report import CheckReport

MAX_ORDER_EXP = 16


@dataclass(frozen=True)
class SignMatrix:
    order: int
    entries: np.ndarray  # order x order, int8, values +-1


def _parity(v: np.ndarray) -> np.ndarray:
    # XOR-fold; words here have at most MAX_ORDER_EXP bits
    v = v ^ (v >> 8)
    v = v ^ (v >> 4)
    v = v ^ (v >> 2)
    v = v ^ (v >> 1)
    return v & 1


def sylvester(m: int) -> SignMatrix:
    """m-fold tensor power of [[1, 1], [1, -1]], as a dense int8 matrix."""
    if not 1 <= m <= MAX_ORDER_EXP:
        raise ValueError(f"m must be in 1..{MAX_ORDER_EXP}, got {m}")
    q = 1 << m
    idx = np.arange(q, dtype=np.int32)
    entries = np.empty((q, q), dtype=np.int8)
    step = max(1, (1 << 22) // q)  # bound the int32 intermediate
    for lo in range(0, q, step):
        hi = min(q, lo + step)
        entries[lo:hi] = (1 - 2 * _parity(idx[lo:hi, None] & idx[None, :])).astype(
            np.int8
        )
    return SignMatrix(q, entries)


def flip_upper_bits(word: int, m: int) -> int:
    """Bijection on m-bit words: flip every bit above the lowest set bit,
    keep the rest; 0 maps to 0."""
    lsb = word & -word
    mask = ((1 << m) - 1) & ~((lsb << 1) - 1)
    return word ^ mask


def flip_upper_bits_table(m: int) -> np.ndarray:
    if not 1 <= m <= MAX_ORDER_EXP:
        raise ValueError(f"m must be in 1..{MAX_ORDER_EXP}, got {m}")
    w = np.arange(1 << m, dtype=np.int32)
    lsb = w & -w
    mask = ((1 << m) - 1) & ~((lsb << 1) - 1)
    return w ^ mask


def permuted_hadamard(m: int) -> SignMatrix:
    """Sylvester matrix with row w replaced by row flip_upper_bits(w)."""
    h = sylvester(m)
    return SignMatrix(h.order, h.entries[flip_upper_bits_table(m)])


def verify_row_antisymmetry(sm: SignMatrix) -> CheckReport:
    """Row 0 and column 0 all ones; row i negates under column translation
    by i (field addition of bit words is XOR, so this is basis independent)."""
    rep = CheckReport("hadamard-antisymmetry")
    e = sm.entries
    q = sm.order
    rep.require(bool((e[0] == 1).all()), "row 0 is not all ones")
    rep.require(bool((e[:, 0] == 1).all()), "column 0 is not all ones")
    cols = np.arange(q)
    for i in range(1, q):
        ok = bool((e[i] == -e[i, cols ^ i]).all())
        if not ok:
            j = int(np.argwhere(e[i] != -e[i, cols ^ i])[0][0])
            rep.fail(f"row {i}: entry at column {j} does not negate at column {j ^ i}")
        rep.count(q)
    return rep


def verify_coset_antisymmetry(ext: FieldContext, sm: SignMatrix) -> CheckReport:
    """For the permuted matrix of extension order q^2: rows indexed by the
    embedded subfield are +1 on every lifted column, and any other row i
    pairs to zero between the lifts of b and of coset_preimage(i) + b."""
    rep = CheckReport("coset-antisymmetry")
    if ext.mode != "extension":
        raise ValueError("verify_coset_antisymmetry needs an extension context")
    if sm.order != ext.q:
        raise ValueError(f"matrix order {sm.order} does not match GF({ext.q})")
    e = sm.entries
    base_q = ext.base.q
    lifts = [ext.coset_lift(ext.base.element(b)).index for b in range(base_q)]
    sub = set(ext.subfield_indices())
    for i in range(ext.q):
        if i in sub:
            for b in range(base_q):
                rep.require(
                    int(e[i, lifts[b]]) == 1,
                    f"subfield row {i}: entry at lifted column {lifts[b]} is not 1",
                )
        else:
            star = ext.coset_preimage(i).index
            for b in range(base_q):
                s = int(e[i, lifts[b]]) + int(e[i, lifts[star ^ b]])
                rep.require(
                    s == 0,
                    f"row {i}: lifts of {b} and {star ^ b} sum to {s}, want 0",
                )
    return rep
