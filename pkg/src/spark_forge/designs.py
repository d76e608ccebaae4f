"""Latin squares from field multiplication, their collision table, and the
incidence nets on q^2 points built from them.

The Latin square with label r has entry (i, j) equal to i*r + j in GF(q).
For r != 0 these squares are mutually orthogonal.  Stacking one standard
basis vector per block according to square r yields q incidence vectors per
label; together with the q "constant block" vectors for the extra label
they form a net: vectors of one family are disjoint, vectors of different
families meet in exactly one position.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .gf import FieldContext
from .report import CheckReport

# Block label sorting after all field elements; kept as a plain string so it
# survives JSON round trips.
INFINITY = "inf"

Label = int | str


@dataclass(frozen=True)
class LatinSquare:
    ctx: FieldContext
    r: int
    table: np.ndarray  # q x q element indices

    @property
    def order(self) -> int:
        return self.ctx.q


def latin_square(ctx: FieldContext, r: int) -> LatinSquare:
    """The square with entry (i, j) = i*r + j over GF(q)."""
    q = ctx.q
    if not 0 <= r < q:
        raise ValueError(f"label {r} out of range for GF({q})")
    col = ctx.mul_table()[:, r].astype(np.int32)
    table = col[:, None] ^ np.arange(q, dtype=np.int32)[None, :]
    return LatinSquare(ctx, r, table)


def verify_mols(squares: Sequence[LatinSquare]) -> CheckReport:
    """Check row injectivity of each square, the unique-meeting-row property
    of every pair, and pairwise orthogonality of the nonzero-label squares."""
    rep = CheckReport("latin-squares")
    if not squares:
        return rep
    q = squares[0].order
    identity = np.arange(q, dtype=np.int32)

    for sq in squares:
        if sq.order != q:
            raise ValueError("squares have mixed orders")
        ok = bool((np.sort(sq.table, axis=1) == identity[None, :]).all())
        rep.require(ok, f"square r={sq.r}: some row is not injective")
        if sq.r != 0:
            ok_cols = bool((np.sort(sq.table, axis=0) == identity[:, None]).all())
            rep.require(ok_cols, f"square r={sq.r}: some column is not a permutation")

    for a in range(len(squares)):
        for b in range(a + 1, len(squares)):
            sa, sb = squares[a], squares[b]
            # exactly one meeting row for every column pair
            meets = (sa.table[:, :, None] == sb.table[:, None, :]).sum(axis=0)
            ok = bool((meets == 1).all())
            if not ok:
                j1, j2 = np.argwhere(meets != 1)[0]
                rep.fail(
                    f"pair (r={sa.r}, r={sb.r}): columns ({j1}, {j2}) meet "
                    f"{int(meets[j1, j2])} times"
                )
            rep.count()
            if sa.r != 0 and sb.r != 0:
                pairs = sa.table.astype(np.int64) * q + sb.table
                ok = len(np.unique(pairs)) == q * q
                rep.require(ok, f"squares r={sa.r}, r={sb.r} are not orthogonal")
    return rep


@dataclass(frozen=True)
class CollisionTable:
    """q x q table t[i, j] = i*j + j^2 over GF(q).

    Row 0 is a permutation of the field, and within any other row i two
    distinct columns j1, j2 hold equal entries exactly when j1 + j2 = i.
    """

    ctx: FieldContext
    table: np.ndarray


def collision_table(ctx: FieldContext) -> CollisionTable:
    mt = ctx.mul_table()
    table = (mt ^ ctx.squares()[None, :]).astype(np.int32)
    return CollisionTable(ctx, table)


def verify_collision_table(ct: CollisionTable) -> CheckReport:
    rep = CheckReport("collision-table")
    q = ct.ctx.q
    t = ct.table
    rep.require(
        bool((np.sort(t[0]) == np.arange(q)).all()),
        "row 0 is not a permutation of the field",
    )
    for i in range(q):
        eq = t[i][:, None] == t[i][None, :]
        want = (np.arange(q)[:, None] ^ np.arange(q)[None, :]) == i
        np.fill_diagonal(want, True)  # j1 == j2 is always an equality
        if not (eq == want).all():
            j1, j2 = np.argwhere(eq != want)[0]
            rep.fail(
                f"row {i}: columns ({j1}, {j2}) "
                f"{'collide' if eq[j1, j2] else 'differ'} but j1+j2"
                f"{'!=' if eq[j1, j2] else '='}{i}"
            )
        rep.count(q * q)
    return rep


@dataclass(frozen=True)
class IncidenceNet:
    """(q+1) families of q incidence vectors on q^2 points.

    vectors[bi, j] is the 0/1 vector of family bi (bi == q encodes the
    infinity label) and index j.
    """

    ctx: FieldContext
    q: int
    vectors: np.ndarray  # (q+1, q, q^2) uint8

    @property
    def labels(self) -> tuple[Label, ...]:
        return tuple(range(self.q)) + (INFINITY,)

    def family_index(self, b: Label) -> int:
        if b == INFINITY:
            return self.q
        if isinstance(b, int) and 0 <= b < self.q:
            return b
        raise ValueError(f"unknown block label {b!r}")

    def vector(self, b: Label, j: int) -> np.ndarray:
        return self.vectors[self.family_index(b), j]


def build_net(ctx: FieldContext) -> IncidenceNet:
    """All q+1 vector families: family b < q places one 1 per block at the
    position given by Latin square b; the infinity family fills block j."""
    q = ctx.q
    vectors = np.zeros((q + 1, q, q * q), dtype=np.uint8)
    blocks = np.arange(q, dtype=np.int32) * q
    for b in range(q):
        lb = latin_square(ctx, b).table
        for j in range(q):
            vectors[b, j, blocks + lb[:, j]] = 1
    for j in range(q):
        vectors[q, j, j * q : (j + 1) * q] = 1
    return IncidenceNet(ctx, q, vectors)


def verify_net(net: IncidenceNet) -> CheckReport:
    """Exhaustive inner-product check of both net conditions: disjointness
    within a family, single meeting point across families."""
    rep = CheckReport("net-incidence")
    q = net.q
    flat = net.vectors.reshape((q + 1) * q, q * q).astype(np.int64)
    ones = flat.sum(axis=1)
    rep.count()
    if (ones != q).any():
        first = int(np.flatnonzero(ones != q)[0])
        rep.fail(f"vector {first} has {int(ones[first])} ones, want {q}")
    gram = flat @ flat.T
    labels = net.labels
    n = (q + 1) * q
    for a in range(n):
        ba, ja = divmod(a, q)
        for b in range(a + 1, n):
            bb, jb = divmod(b, q)
            got = int(gram[a, b])
            want = 0 if ba == bb else 1
            rep.require(
                got == want,
                f"<m[{labels[ba]},{ja}], m[{labels[bb]},{jb}]> = {got}, want {want}",
            )
    return rep
