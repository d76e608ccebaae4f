"""Mutually unbiased bases for R^(q^2) in exact scaled-integer form.

Each basis is stored as a q^2 x q^2 matrix M with entries in {-1, 0, +1};
the orthonormal basis it represents is M / sqrt(q).  Column (u, v) embeds
the v-th column of the permuted Hadamard matrix into the support of net
vector (b, u), so every column has exactly q nonzero entries and all
verification reduces to integer inner products: q * identity inside one
basis, plus or minus 1 across two bases.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .designs import IncidenceNet, Label
from .hadamard import SignMatrix
from .report import CheckReport


@dataclass(frozen=True)
class ScaledBasis:
    dimension: int
    label: Label
    matrix: np.ndarray  # dimension x dimension, int8
    scale_sq: int


def embed(signs: np.ndarray, net: IncidenceNet, b: Label, j: int) -> np.ndarray:
    """Spread the q sign values over the support of net vector (b, j).

    Position k of the support (ascending) receives signs[k]; with all-ones
    signs this reproduces the incidence vector itself.
    """
    q = net.q
    signs = np.asarray(signs)
    if signs.shape != (q,):
        raise ValueError(f"sign vector must have length {q}, got {signs.shape}")
    out = np.zeros(q * q, dtype=np.int8)
    out[np.flatnonzero(net.vector(b, j))] = signs
    return out


def build_basis(net: IncidenceNet, hs: SignMatrix, b: Label) -> ScaledBasis:
    """Scaled basis for label b: column u*q + v is column v of hs embedded
    along net vector (b, u)."""
    q = net.q
    if hs.order != q:
        raise ValueError(f"sign matrix order {hs.order} does not match net order {q}")
    d = q * q
    m = np.zeros((d, d), dtype=np.int8)
    for u in range(q):
        rows = np.flatnonzero(net.vector(b, u))
        m[np.ix_(rows, np.arange(u * q, (u + 1) * q))] = hs.entries
    return ScaledBasis(d, b, m, q)


def build_basis_family(net: IncidenceNet, hs: SignMatrix) -> list[ScaledBasis]:
    return [build_basis(net, hs, b) for b in net.labels]


def gram(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact integer Gram matrix a^T b (entries bounded by the dimension)."""
    return a.astype(np.int64).T @ b.astype(np.int64)


def verify_mub(bases: Sequence[ScaledBasis]) -> CheckReport:
    """Exhaustive integer check: within one basis the scaled Gram matrix is
    scale_sq * I; across two bases every entry is +1 or -1."""
    rep = CheckReport("mub-family")
    if not bases:
        return rep
    d, s = bases[0].dimension, bases[0].scale_sq
    for basis in bases:
        if basis.dimension != d or basis.scale_sq != s:
            raise ValueError("bases have mismatched dimension or scale")
    for i, bi in enumerate(bases):
        g = gram(bi.matrix, bi.matrix)
        ok = bool((g == s * np.eye(d, dtype=np.int64)).all())
        if not ok:
            r, c = np.argwhere(g != s * np.eye(d, dtype=np.int64))[0]
            rep.fail(
                f"basis {bi.label}: columns ({r}, {c}) have product {int(g[r, c])}"
            )
        rep.count(d * d)
        for bj in bases[i + 1 :]:
            g = gram(bi.matrix, bj.matrix)
            ok = bool((np.abs(g) == 1).all())
            if not ok:
                r, c = np.argwhere(np.abs(g) != 1)[0]
                rep.fail(
                    f"bases ({bi.label}, {bj.label}): columns ({r}, {c}) have "
                    f"product {int(g[r, c])}, want +-1"
                )
            rep.count(d * d)
    return rep
