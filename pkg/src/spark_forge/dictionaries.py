"""Dictionaries assembled from scaled mutually unbiased bases, their sparse
kernel vectors, exact mutual coherence, and spark certification.

Two families are provided, named by the ids used in exports and on the
command line:

* thm1: dimension q^2, q+1 blocks, scaled entries over sqrt(q); mutual
  coherence exactly 1/q and a (q+1)-sparse kernel vector.
* thm2: dimension q^4, q+1 blocks built over the quadratic extension
  GF(q^2), scaled entries over sqrt(q^2); mutual coherence exactly 1/q^2
  and a (q^2+q)-sparse kernel vector.

Everything is integer arithmetic: the matrix M with entries in {-1, 0, +1}
stands for D = M / sqrt(scale_sq), spark search uses fraction-free
(division-exact) Gaussian elimination, and coherence is a Fraction.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .designs import INFINITY, Label, build_net
from .gf import FieldContext
from .hadamard import permuted_hadamard
from .mub import ScaledBasis, build_basis, build_basis_family

DEFAULT_SUBSET_BUDGET = 10**8
BUDGET_ENV_VAR = "SPARK_FORGE_BUDGET"

FAMILY_Q = {"thm1": (2, 4, 8, 16), "thm2": (2, 4)}


@dataclass(frozen=True)
class ScaledDictionary:
    """Integer matrix M plus scale: the dictionary is M / sqrt(scale_sq)."""

    family: str
    q: int
    dimension: int
    scale_sq: int
    matrix: np.ndarray  # dimension x n_cols, int8
    block_labels: tuple[Label, ...]

    @property
    def n_cols(self) -> int:
        return self.matrix.shape[1]

    @property
    def n_blocks(self) -> int:
        return len(self.block_labels)

    def block(self, i: int) -> np.ndarray:
        d = self.dimension
        return self.matrix[:, i * d : (i + 1) * d]

    def blocks_as_bases(self) -> list[ScaledBasis]:
        return [
            ScaledBasis(self.dimension, label, self.block(i), self.scale_sq)
            for i, label in enumerate(self.block_labels)
        ]


@dataclass(frozen=True)
class SparseVector:
    """Signed support of a vector in the dictionary's coefficient space."""

    length: int
    support: tuple[tuple[int, int], ...]  # (index, value), ascending, values +-1
    family: str

    def dense(self) -> np.ndarray:
        out = np.zeros(self.length, dtype=np.int64)
        for idx, val in self.support:
            out[idx] = val
        return out


def _require_family_q(family: str, q: int):
    allowed = FAMILY_Q.get(family)
    if allowed is None:
        raise ValueError(f"unknown family {family!r}; expected thm1 or thm2")
    if q & (q - 1) or q < 2:
        raise ValueError("q must be a power of two")
    if q not in allowed:
        raise ValueError(f"family {family} supports q in {set(allowed)}, got {q}")


def build_dictionary_thm1(ctx: FieldContext) -> ScaledDictionary:
    """q+1 scaled bases of dimension q^2, blocks ordered 0..q-1 then inf."""
    if ctx.mode != "base":
        raise ValueError("family thm1 is built over a base field")
    _require_family_q("thm1", ctx.q)
    net = build_net(ctx)
    hs = permuted_hadamard(ctx.m)
    bases = build_basis_family(net, hs)
    matrix = np.hstack([b.matrix for b in bases])
    return ScaledDictionary("thm1", ctx.q, ctx.q**2, ctx.q, matrix, net.labels)


def build_null_vector_thm1(ctx: FieldContext) -> SparseVector:
    """The (q+1)-sparse kernel vector: +1 in block b at column (b^2, b),
    -1 in the infinity block at column (0, 0)."""
    q, d = ctx.q, ctx.q**2
    sq = ctx.squares()
    support = [(b * d + int(sq[b]) * q + b, 1) for b in range(q)]
    support.append((q * d, -1))
    return SparseVector(d * (q + 1), tuple(support), "thm1")


def build_dictionary_thm2(ctx: FieldContext) -> ScaledDictionary:
    """q+1 scaled bases of dimension q^4 built over GF(q^2), keeping only
    the blocks labeled by the embedded subfield plus infinity."""
    if ctx.mode != "base":
        raise ValueError("family thm2 is built over a base field")
    _require_family_q("thm2", ctx.q)
    ext = ctx.extension()
    net = build_net(ext)
    hs = permuted_hadamard(ext.m)
    kept = list(ext.subfield_indices()) + [INFINITY]
    matrix = np.hstack([build_basis(net, hs, c).matrix for c in kept])
    labels = tuple(range(ctx.q)) + (INFINITY,)
    return ScaledDictionary("thm2", ctx.q, ext.q**2, ext.q, matrix, labels)


def build_null_vector_thm2(ctx: FieldContext) -> SparseVector:
    """The (q^2+q)-sparse kernel vector: block b holds +1 at columns (j,
    lift(b)) for every j in the coset of lift(b^2); the infinity block holds
    -1 at columns (s, 0) for every embedded subfield element s."""
    _require_family_q("thm2", ctx.q)
    ext = ctx.extension()
    bq, eq = ctx.q, ext.q
    d = eq * eq
    sq = ctx.squares()
    support = []
    for b in range(bq):
        lift = ext.coset_lift(ctx.element(b)).index
        coset = ext.coset_image(ctx.element(int(sq[b])))
        for j in coset.members():
            support.append((b * d + j.index * eq + lift, 1))
    for s in ext.subfield_indices():
        support.append((bq * d + s * eq, -1))
    support.sort()
    return SparseVector(d * (bq + 1), tuple(support), "thm2")


def build_dictionary(family: str, q: int) -> ScaledDictionary:
    _require_family_q(family, q)
    ctx = FieldContext(q.bit_length() - 1)
    builder = build_dictionary_thm1 if family == "thm1" else build_dictionary_thm2
    return builder(ctx)


def build_null_vector(family: str, q: int) -> SparseVector:
    _require_family_q(family, q)
    ctx = FieldContext(q.bit_length() - 1)
    builder = build_null_vector_thm1 if family == "thm1" else build_null_vector_thm2
    return builder(ctx)


def apply(dictionary: ScaledDictionary, x: SparseVector | np.ndarray) -> np.ndarray:
    """Exact integer product (scaled matrix) @ x."""
    if isinstance(x, SparseVector):
        if x.length != dictionary.n_cols:
            raise ValueError(
                f"vector length {x.length} does not match {dictionary.n_cols} columns"
            )
        out = np.zeros(dictionary.dimension, dtype=np.int64)
        for idx, val in x.support:
            out += val * dictionary.matrix[:, idx].astype(np.int64)
        return out
    x = np.asarray(x)
    if x.shape != (dictionary.n_cols,):
        raise ValueError(
            f"vector shape {x.shape} does not match {dictionary.n_cols} columns"
        )
    return dictionary.matrix.astype(np.int64) @ x.astype(np.int64)


def coherence(dictionary: ScaledDictionary) -> Fraction:
    """Largest |<column_i, column_j>| / scale_sq over distinct columns,
    computed blockwise with exact integer products."""
    d = dictionary.dimension
    blocks = [dictionary.block(i).astype(np.int64) for i in range(dictionary.n_blocks)]
    largest = 0
    for i, bi in enumerate(blocks):
        g = bi.T @ bi
        np.fill_diagonal(g, 0)
        largest = max(largest, int(np.abs(g).max()))
        for bj in blocks[i + 1 :]:
            largest = max(largest, int(np.abs(bi.T @ bj).max()))
    return Fraction(largest, dictionary.scale_sq)


# ---------------------------------------------------------------------------
# Brute-force spark search
# ---------------------------------------------------------------------------
#
# Levels run in increasing subset size; at level k the search walks
# independent subsets in lexicographic order, keeping candidate columns
# reduced by fraction-free elimination, so a dependent extension shows up as
# an exactly-zero reduced column.  The first hit at the smallest level is the
# (size-major, lexicographically least) witness, independent of worker count.


@dataclass(frozen=True)
class BruteForceResult:
    k_max: int
    k_checked: int
    found_size: int | None
    witness: tuple[int, ...] | None
    planned_subsets: int
    budget: int


def _descend(reduced, ids, prev_piv, prefix, k):
    depth = len(prefix)
    if depth == k - 1:
        zero = np.flatnonzero(~reduced.any(axis=0))
        if zero.size:
            return prefix + (int(ids[zero[0]]),)
        return None
    limit = reduced.shape[1] - (k - depth - 1)
    for t in range(limit):
        v = reduced[:, t]
        nz = np.flatnonzero(v)
        if nz.size == 0:
            continue  # a smaller witness; found at an earlier level
        p, piv = int(nz[0]), int(v[nz[0]])
        rest = reduced[:, t + 1 :]
        # fraction-free update: entries stay (depth+1)-minors of the matrix
        nxt = (piv * rest - np.outer(v, rest[p])) // prev_piv
        res = _descend(nxt, ids[t + 1 :], piv, prefix + (int(ids[t]),), k)
        if res is not None:
            return res
    return None


def _search_level_range(m64, k, f_start, f_stop):
    """Lex-least dependent subset of exact size k with first column index in
    [f_start, f_stop); proper subsets are assumed independent."""
    n = m64.shape[1]
    for f in range(f_start, min(f_stop, n - k + 1)):
        v = m64[:, f]
        if k == 1:
            if not v.any():
                return (f,)
            continue
        nz = np.flatnonzero(v)
        if nz.size == 0:
            continue
        p, piv = int(nz[0]), int(v[nz[0]])
        rest = m64[:, f + 1 :]
        reduced = piv * rest - np.outer(v, rest[p])
        res = _descend(reduced, np.arange(f + 1, n), piv, (f,), k)
        if res is not None:
            return res
    return None


_WORKER_MATRIX = None


def _init_worker(matrix_int8):
    global _WORKER_MATRIX
    _WORKER_MATRIX = matrix_int8.astype(np.int64)


def _worker_range(k, f_start, f_stop):
    return _search_level_range(_WORKER_MATRIX, k, f_start, f_stop)


def _run_level(m64, k, workers, pool):
    n = m64.shape[1]
    last_first = n - k
    if last_first < 0:
        return None
    if pool is None or k == 1:
        return _search_level_range(m64, k, 0, last_first + 1)
    chunk = max(1, -(-(last_first + 1) // (workers * 4)))
    futures = [
        pool.submit(_worker_range, k, s, min(s + chunk, last_first + 1))
        for s in range(0, last_first + 1, chunk)
    ]
    result = None
    for fut in futures:  # ascending first-index order re-establishes lex order
        res = fut.result()
        if res is not None:
            result = res
            break
    for fut in futures:
        fut.cancel()
    return result


def resolve_budget(budget: int | None) -> int:
    if budget is not None:
        return budget
    env = os.environ.get(BUDGET_ENV_VAR)
    if env is not None:
        return int(env)
    return DEFAULT_SUBSET_BUDGET


def spark_bruteforce(
    dictionary: ScaledDictionary,
    k_max: int,
    workers: int = 1,
    budget: int | None = None,
) -> BruteForceResult:
    """Smallest dependent column subset of size <= k_max, if any.

    Returns the lexicographically least witness of the smallest size; the
    result does not depend on the worker count.  The budget caps the total
    number of subsets the search is allowed to plan for (a priori, by
    binomial counts), degrading k_max rather than aborting mid-run.
    """
    budget = resolve_budget(budget)
    n = dictionary.n_cols
    k_cap = min(k_max, n)
    planned = 0
    k_checked = 0
    for k in range(1, k_cap + 1):
        cost = math.comb(n, k)
        if planned + cost > budget:
            break
        planned += cost
        k_checked = k

    m64 = dictionary.matrix.astype(np.int64)
    found_size = None
    witness = None
    pool = None
    try:
        if workers > 1 and k_checked >= 2:
            pool = ProcessPoolExecutor(
                max_workers=workers,
                initializer=_init_worker,
                initargs=(dictionary.matrix,),
            )
        for k in range(1, k_checked + 1):
            res = _run_level(m64, k, workers, pool)
            if res is not None:
                found_size, witness = k, res
                break
    finally:
        if pool is not None:
            pool.shutdown()
    return BruteForceResult(k_max, k_checked, found_size, witness, planned, budget)


def exact_rank(matrix) -> int:
    """Rank over the rationals by fraction-free elimination on integers."""
    m = np.array(matrix, dtype=np.int64).copy()
    if m.ndim != 2:
        raise ValueError("exact_rank expects a 2-d matrix")
    rank = 0
    prev = 1
    rows, cols = m.shape
    for c in range(cols):
        pivots = np.flatnonzero(m[rank:, c])
        if pivots.size == 0:
            continue
        p = rank + int(pivots[0])
        if p != rank:
            m[[rank, p]] = m[[p, rank]]
        piv = int(m[rank, c])
        below = m[rank + 1 :]
        m[rank + 1 :] = (piv * below - np.outer(below[:, c], m[rank])) // prev
        prev = piv
        rank += 1
        if rank == rows:
            break
    return rank


# ---------------------------------------------------------------------------
# Certification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SparkCertificate:
    """Exact spark bounds for a dictionary with a known kernel vector.

    general_bound is 1 + 1/mu (valid for every dictionary); union_bound is
    (1 + 1/q)/mu (valid for unions of q+1 orthonormal bases).  The verdict
    is exact when the bounds meet the kernel-vector upper bound or when an
    exhaustive search has cleared everything below it.
    """

    family: str
    q: int
    coherence: Fraction
    general_bound: Fraction
    union_bound: Fraction
    upper_bound: int
    lower_bound: int
    spark: int | None
    certified_by: str | None
    brute_force: BruteForceResult | None
    eta_mu: Fraction | None
    general_bound_relation: str | None

    @property
    def interval(self) -> tuple[int, int]:
        return (self.lower_bound, self.upper_bound)

    def verdict(self) -> str:
        if self.spark is not None:
            return f"spark = {self.spark} (certified: {self.certified_by})"
        return (
            f"spark in [{self.lower_bound}, {self.upper_bound}] "
            f"(no dependent subset of size <= {self.lower_bound - 1} found)"
        )


def spark_certify(
    dictionary: ScaledDictionary,
    x: SparseVector,
    brute_force: BruteForceResult | None = None,
) -> SparkCertificate:
    """Certify the spark from the coherence bounds, the kernel vector x, and
    optionally a brute-force search result."""
    if not x.support:
        raise ValueError("kernel vector is zero")
    residual = apply(dictionary, x)
    if residual.any():
        raise ValueError("vector is not in the kernel of the dictionary")

    mu = coherence(dictionary)
    general = 1 + 1 / mu
    union = (1 + Fraction(1, dictionary.q)) / mu
    upper = len(x.support)
    lower = max(math.ceil(general), math.ceil(union))

    if brute_force is not None:
        if brute_force.found_size is not None:
            # sizes below found_size were searched clean, so this is exact
            upper = min(upper, brute_force.found_size)
            lower = max(lower, brute_force.found_size)
        else:
            lower = max(lower, brute_force.k_checked + 1)
    if lower > upper:
        raise ValueError(
            f"inconsistent certificate: lower bound {lower} exceeds upper {upper}"
        )

    spark = upper if lower == upper else None
    certified_by = None
    eta_mu = None
    relation = None
    if spark is not None:
        reasons = []
        if max(math.ceil(general), math.ceil(union)) == upper:
            reasons.append("coherence bound")
        if brute_force is not None:
            if brute_force.found_size == upper:
                reasons.append("brute force")
            elif brute_force.k_checked >= upper - 1:
                reasons.append("exhaustive search")
        reasons.append("kernel vector")
        certified_by = " + ".join(reasons)
        eta_mu = spark * mu
        relation = "==" if Fraction(spark) == general else ">"
    return SparkCertificate(
        dictionary.family,
        dictionary.q,
        mu,
        general,
        union,
        upper,
        lower,
        spark,
        certified_by,
        brute_force,
        eta_mu,
        relation,
    )


def uniqueness_threshold(certificate: SparkCertificate) -> int:
    """Largest t with t < spark/2: representations with at most t nonzeros
    are unique."""
    if certificate.spark is None:
        raise ValueError("certificate does not pin an exact spark")
    return (certificate.spark - 1) // 2
