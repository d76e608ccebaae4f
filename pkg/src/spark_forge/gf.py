"""Exact arithmetic in GF(2^m) and in quadratic extensions GF(q) inside GF(q^2).

Field elements are m-bit words stored as integers: the word w1 w2 ... wm
(w1 most significant) is the element of index sum_i wi * 2^(m-i).  Addition
is bitwise XOR; multiplication is carry-less polynomial multiplication
reduced modulo a fixed irreducible polynomial, one per degree:

    m=1 : x                     m=5 : x^5 + x^2 + 1
    m=2 : x^2 + x + 1           m=6 : x^6 + x + 1
    m=3 : x^3 + x + 1           m=7 : x^7 + x + 1
    m=4 : x^4 + x + 1           m=8 : x^8 + x^4 + x^3 + x^2 + 1

A quadratic extension of GF(q) is realized as pairs (a, b) = a + b*y with
y^2 = y + c, where c is the smallest element of GF(q) making y^2 + y + c
irreducible.  The pair (a, b) is stored as the concatenated word
bits(a) | bits(b), a-part first, so the embedded copy of GF(q) consists
exactly of the words whose low m/2 bits are zero.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_IRREDUCIBLE = {
    1: 0b10,
    2: 0b111,
    3: 0b1011,
    4: 0b10011,
    5: 0b100101,
    6: 0b1000011,
    7: 0b10000011,
    8: 0b100011101,
}

MAX_DEGREE = 8


def clmul(a: int, b: int) -> int:
    """Carry-less product of two GF(2) polynomials given as bit words."""
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def clmod(a: int, p: int) -> int:
    """Remainder of the GF(2) polynomial a modulo p."""
    dp = p.bit_length()
    while a.bit_length() >= dp:
        a ^= p << (a.bit_length() - dp)
    return a


def is_irreducible(p: int) -> bool:
    """Trial division over GF(2); fine for the degrees handled here (<= 8)."""
    deg = p.bit_length() - 1
    if deg <= 0:
        return False
    for d in range(1, deg // 2 + 1):
        for divisor in range(1 << d, 1 << (d + 1)):
            if clmod(p, divisor) == 0:
                return False
    return True


@dataclass(frozen=True, slots=True)
class FieldElement:
    """An element of a FieldContext, identified by its bit-word index."""

    ctx: "FieldContext"
    index: int

    def __post_init__(self):
        if not 0 <= self.index < self.ctx.q:
            raise ValueError(f"index {self.index} out of range for GF({self.ctx.q})")

    def _check_ctx(self, other: "FieldElement"):
        if not isinstance(other, FieldElement):
            raise TypeError(f"cannot combine FieldElement with {type(other).__name__}")
        if self.ctx != other.ctx:
            raise ValueError("elements belong to different field contexts")

    def __add__(self, other: "FieldElement") -> "FieldElement":
        self._check_ctx(other)
        return FieldElement(self.ctx, self.index ^ other.index)

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        self._check_ctx(other)
        return FieldElement(self.ctx, self.ctx.mul_index(self.index, other.index))

    @property
    def bits(self) -> str:
        return format(self.index, f"0{self.ctx.m}b")

    def __repr__(self):
        return f"<{self.bits} in GF({self.ctx.q})>"


class FieldContext:
    """GF(2^m) for m <= 8, in plain ("base") or quadratic-extension mode.

    Base contexts reduce modulo the fixed irreducible polynomial for their
    degree.  Extension contexts are built with :meth:`extension` and carry
    the embedded-subfield and coset machinery on top of their base field.
    """

    def __init__(self, m: int, *, _base: "FieldContext | None" = None, _c: int = 0):
        if _base is None:
            if not 1 <= m <= MAX_DEGREE:
                raise ValueError(f"m must be in 1..{MAX_DEGREE}, got {m}")
            self.m = m
            self.q = 1 << m
            self.mode = "base"
            self.poly = _IRREDUCIBLE[m]
            self.base = None
            self.c = None
            if not is_irreducible(self.poly):
                raise ValueError(f"polynomial {self.poly:#b} is not irreducible")
        else:
            self.m = 2 * _base.m
            self.q = _base.q ** 2
            self.mode = "extension"
            self.poly = None
            self.base = _base
            self.c = _c
        self._table = None

    # -- identity ------------------------------------------------------

    def _key(self):
        if self.mode == "base":
            return ("base", self.m, self.poly)
        return ("ext", self.base._key(), self.c)

    def __eq__(self, other):
        return isinstance(other, FieldContext) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        if self.mode == "base":
            return f"FieldContext(GF({self.q}))"
        return f"FieldContext(GF({self.q}) over GF({self.base.q}))"

    # -- elements ------------------------------------------------------

    def element(self, index: int) -> FieldElement:
        return FieldElement(self, index)

    def elements(self) -> list[FieldElement]:
        return [FieldElement(self, i) for i in range(self.q)]

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    @property
    def one(self) -> FieldElement:
        if self.mode == "extension":
            return FieldElement(self, 1 << self.half)
        return FieldElement(self, 1)

    # -- arithmetic on raw indices --------------------------------------

    def add_index(self, i: int, j: int) -> int:
        return i ^ j

    def mul_index(self, i: int, j: int) -> int:
        if self._table is not None:
            return int(self._table[i, j])
        if self.mode == "base":
            return clmod(clmul(i, j), self.poly)
        h, mask = self.half, self.low_mask
        a1, b1 = i >> h, i & mask
        a2, b2 = j >> h, j & mask
        base = self.base
        # (a1 + b1 y)(a2 + b2 y) with y^2 = y + c
        bb = base.mul_index(b1, b2)
        hi = base.mul_index(a1, a2) ^ base.mul_index(self.c, bb)
        lo = base.mul_index(a1, b2) ^ base.mul_index(a2, b1) ^ bb
        return (hi << h) | lo

    def mul_table(self) -> np.ndarray:
        """The full q x q multiplication table, entry (i, j) = i*j."""
        if self._table is None:
            if self.mode == "base":
                t = np.zeros((self.q, self.q), dtype=np.int32)
                for i in range(self.q):
                    for j in range(i, self.q):
                        t[i, j] = t[j, i] = clmod(clmul(i, j), self.poly)
            else:
                bt = self.base.mul_table().astype(np.int64)
                h = self.half
                idx = np.arange(self.q)
                a, b = idx >> h, idx & self.low_mask
                a1, a2 = a[:, None], a[None, :]
                b1, b2 = b[:, None], b[None, :]
                bb = bt[b1, b2]
                hi = bt[a1, a2] ^ bt[self.c, bb]
                lo = bt[a1, b2] ^ bt[a2, b1] ^ bb
                t = ((hi << h) | lo).astype(np.int32)
            self._table = t
        return self._table

    def squares(self) -> np.ndarray:
        """index -> index of the squared element (the table diagonal)."""
        return np.diagonal(self.mul_table()).copy()

    # -- quadratic extension --------------------------------------------

    def extension(self) -> "FieldContext":
        """GF(q^2) realized as pairs over this field; requires m <= 4."""
        if self.mode != "base":
            raise ValueError("nested extensions are not supported")
        if self.m > MAX_DEGREE // 2:
            raise ValueError(f"extension base must have m <= {MAX_DEGREE // 2}")
        image = {clmod(clmul(t, t), self.poly) ^ t for t in range(self.q)}
        c = next((i for i in range(self.q) if i not in image), None)
        if c is None:  # unreachable: t^2 + t is 2-to-1 in characteristic 2
            raise ValueError(f"no irreducible y^2 + y + c over GF({self.q})")
        return FieldContext(2 * self.m, _base=self, _c=c)

    @property
    def half(self) -> int:
        return self.m // 2

    @property
    def low_mask(self) -> int:
        return (1 << self.half) - 1

    def _require_extension(self):
        if self.mode != "extension":
            raise ValueError("operation requires an extension context")

    def subfield_indices(self) -> list[int]:
        """Indices of the embedded copy of the base field, in base order."""
        self._require_extension()
        return [a << self.half for a in range(self.base.q)]

    def in_subfield(self, index: int) -> bool:
        self._require_extension()
        return (index & self.low_mask) == 0

    def embed(self, a: FieldElement) -> FieldElement:
        """The base element a as the extension pair (a, 0)."""
        self._require_extension()
        if a.ctx != self.base:
            raise ValueError("embed expects an element of the base field")
        return FieldElement(self, a.index << self.half)

    def coset_lift(self, b: FieldElement) -> FieldElement:
        """The pair (0, b): the representative of coset_image(b) with zero
        subfield part."""
        self._require_extension()
        if b.ctx != self.base:
            raise ValueError("coset_lift expects an element of the base field")
        return FieldElement(self, b.index)

    def coset_image(self, b: FieldElement) -> "Coset":
        """Image of a base element under the canonical vector-space
        isomorphism GF(q) -> GF(q^2)/GF(q), sending b to the coset of b*y."""
        return Coset(self.coset_lift(b))

    def coset_preimage(self, i: FieldElement | int) -> FieldElement:
        """The unique base element whose coset_image contains i; zero exactly
        when i lies in the embedded subfield."""
        self._require_extension()
        index = i.index if isinstance(i, FieldElement) else i
        return FieldElement(self.base, index & self.low_mask)

    def coset_of(self, i: FieldElement | int) -> "Coset":
        self._require_extension()
        index = i.index if isinstance(i, FieldElement) else i
        return Coset(FieldElement(self, index))


class Coset:
    """A coset i + GF(q) inside GF(q^2), determined by the low half bits."""

    __slots__ = ("representative",)

    def __init__(self, representative: FieldElement):
        representative.ctx._require_extension()
        self.representative = representative

    @property
    def ctx(self) -> FieldContext:
        return self.representative.ctx

    @property
    def key(self) -> int:
        return self.representative.index & self.ctx.low_mask

    def members(self) -> tuple[FieldElement, ...]:
        ctx = self.ctx
        h, key = ctx.half, self.key
        return tuple(FieldElement(ctx, (s << h) | key) for s in range(ctx.base.q))

    def __contains__(self, elt: FieldElement) -> bool:
        return elt.ctx == self.ctx and (elt.index & self.ctx.low_mask) == self.key

    def __eq__(self, other):
        return (
            isinstance(other, Coset)
            and self.ctx == other.ctx
            and self.key == other.key
        )

    def __hash__(self):
        return hash((self.ctx, self.key))

    def __repr__(self):
        return f"Coset[{self.representative.bits}]"
