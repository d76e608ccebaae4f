"""Command-line front end: construct, verify, spark, render, export.

File formats are exact-integer and byte-deterministic.  A dictionary CSV
starts with

    # spark-forge dictionary v1, family=<f>, q=<n>, scale_sq=<s>, layout=block-major

followed by the rows of the scaled matrix as comma-separated integers in
{-1, 0, 1}.  A sparse-vector CSV starts with

    # spark-forge vector v1, family=<f>, q=<n>, length=<L>, layout=block-major

followed by one `index,value` line per nonzero entry.  Run reports are
key-sorted JSON; two runs with the same inputs differ at most in the
"timing" object.

Exit codes: 0 success, 1 verification failure, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import dictionaries as dct
from .designs import (
    INFINITY,
    build_net,
    collision_table,
    latin_square,
    verify_collision_table,
    verify_mols,
    verify_net,
)
from .gf import FieldContext
from .hadamard import (
    permuted_hadamard,
    verify_coset_antisymmetry,
    verify_row_antisymmetry,
)
from .mub import verify_mub
from .report import CheckReport

DICT_MAGIC = "# spark-forge dictionary v1"
VECTOR_MAGIC = "# spark-forge vector v1"

CELL = 12
CELL_COLORS = {1: "#d62728", -1: "#1f77b4", 0: "#bbbbbb"}


class InputError(Exception):
    """Bad file, path, or parameter; maps to exit code 2."""


# ---------------------------------------------------------------------------
# File formats
# ---------------------------------------------------------------------------


def dictionary_csv(d: dct.ScaledDictionary) -> str:
    lines = [
        f"{DICT_MAGIC}, family={d.family}, q={d.q}, "
        f"scale_sq={d.scale_sq}, layout=block-major"
    ]
    for row in d.matrix:
        lines.append(",".join(str(int(v)) for v in row))
    return "\n".join(lines) + "\n"


def vector_csv(x: dct.SparseVector, q: int) -> str:
    lines = [
        f"{VECTOR_MAGIC}, family={x.family}, q={q}, "
        f"length={x.length}, layout=block-major"
    ]
    for idx, val in x.support:
        lines.append(f"{idx},{val}")
    return "\n".join(lines) + "\n"


def _parse_header(line: str, magic: str, fields: tuple[str, ...]) -> dict:
    if not line.startswith(magic):
        raise InputError(f"missing header {magic!r}")
    meta = {}
    for part in line[len(magic) :].split(","):
        part = part.strip()
        if not part or "=" not in part:
            continue
        key, value = part.split("=", 1)
        meta[key.strip()] = value.strip()
    for f in fields:
        if f not in meta:
            raise InputError(f"header lacks field {f!r}")
    return meta


def read_dictionary(path: str | Path) -> dct.ScaledDictionary:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise InputError(f"{path}: empty dictionary file")
    meta = _parse_header(lines[0], DICT_MAGIC, ("family", "q", "scale_sq", "layout"))
    family, q, scale_sq = meta["family"], int(meta["q"]), int(meta["scale_sq"])
    if meta["layout"] != "block-major":
        raise InputError(f"{path}: unsupported layout {meta['layout']!r}")
    try:
        rows = [[int(v) for v in ln.split(",")] for ln in lines[1:]]
        matrix = np.array(rows, dtype=np.int8)
    except ValueError as exc:
        raise InputError(f"{path}: malformed matrix row: {exc}") from exc
    if matrix.ndim != 2 or matrix.shape[0] == 0:
        raise InputError(f"{path}: no matrix rows")
    if not np.isin(matrix, (-1, 0, 1)).all():
        raise InputError(f"{path}: entries outside {{-1, 0, 1}}")
    d = matrix.shape[0]
    if matrix.shape[1] % d:
        raise InputError(f"{path}: column count is not a multiple of the dimension")
    n_blocks = matrix.shape[1] // d
    labels = tuple(range(n_blocks - 1)) + (INFINITY,)
    return dct.ScaledDictionary(family, q, d, scale_sq, matrix, labels)


def read_vector(path: str | Path) -> tuple[dct.SparseVector, int]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise InputError(f"{path}: empty vector file")
    meta = _parse_header(lines[0], VECTOR_MAGIC, ("family", "q", "length"))
    length = int(meta["length"])
    support = []
    for ln in lines[1:]:
        try:
            idx_s, val_s = ln.split(",")
            idx, val = int(idx_s), int(val_s)
        except ValueError as exc:
            raise InputError(f"{path}: malformed support line {ln!r}") from exc
        if not 0 <= idx < length or val not in (-1, 1):
            raise InputError(f"{path}: bad support entry {ln!r}")
        support.append((idx, val))
    support.sort()
    return dct.SparseVector(length, tuple(support), meta["family"]), int(meta["q"])


def dictionary_json(d: dct.ScaledDictionary, x: dct.SparseVector) -> str:
    payload = {
        "schema": "spark-forge dictionary v1",
        "family": d.family,
        "q": d.q,
        "scale_sq": d.scale_sq,
        "layout": "block-major",
        "block_labels": list(d.block_labels),
        "dimensions": {"rows": d.dimension, "cols": d.n_cols},
        "matrix": d.matrix.astype(int).tolist(),
        "null_vector": {
            "length": x.length,
            "support": [[i, v] for i, v in x.support],
        },
    }
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


# ---------------------------------------------------------------------------
# Structural checks
# ---------------------------------------------------------------------------


def _machinery_context(family: str, q: int) -> FieldContext:
    """Field over which nets, squares, and sign matrices live."""
    base = FieldContext(q.bit_length() - 1)
    return base if family == "thm1" else base.extension()


def collect_reports(
    family: str,
    q: int,
    dictionary: dct.ScaledDictionary,
    vector: dct.SparseVector | None,
    reference: dct.ScaledDictionary | None = None,
) -> list[CheckReport]:
    """Every named structural verifier, applied to the given artifacts."""
    ctx = _machinery_context(family, q)
    reports = []

    squares = [latin_square(ctx, r) for r in range(ctx.q)]
    reports.append(verify_mols(squares))
    reports.append(verify_collision_table(collision_table(ctx)))
    reports.append(verify_net(build_net(ctx)))
    hs = permuted_hadamard(ctx.m)
    reports.append(verify_row_antisymmetry(hs))
    if family == "thm2":
        reports.append(verify_coset_antisymmetry(ctx, hs))

    support_rep = CheckReport("column-support")
    counts = (dictionary.matrix != 0).sum(axis=0)
    bad = np.flatnonzero(counts != dictionary.scale_sq)
    support_rep.count(dictionary.n_cols)
    if bad.size:
        support_rep.fail(
            f"column {int(bad[0])} has {int(counts[bad[0]])} nonzeros, "
            f"want {dictionary.scale_sq}"
        )
    reports.append(support_rep)

    reports.append(verify_mub(dictionary.blocks_as_bases()))

    if vector is not None:
        kernel_rep = CheckReport("kernel-vector")
        residual = dct.apply(dictionary, vector)
        kernel_rep.require(
            not residual.any(),
            f"matrix @ vector has nonzero entry at row "
            f"{int(np.flatnonzero(residual)[0]) if residual.any() else -1}",
        )
        reports.append(kernel_rep)

    if reference is not None:
        recon = CheckReport("matches-construction")
        same = dictionary.matrix.shape == reference.matrix.shape and bool(
            (dictionary.matrix == reference.matrix).all()
        )
        recon.require(same, "matrix differs from the deterministic construction")
        reports.append(recon)
    return reports


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------


def _frac(f: Fraction | None) -> str | None:
    return None if f is None else str(f)


def run_report(
    command: str,
    dictionary: dct.ScaledDictionary,
    vector: dct.SparseVector | None,
    certificate: dct.SparkCertificate | None,
    checks: list[CheckReport],
    elapsed: float,
) -> dict:
    brute = certificate.brute_force if certificate else None
    report = {
        "schema": "spark-forge run report v1",
        "command": command,
        "family": dictionary.family,
        "q": dictionary.q,
        "scale_sq": dictionary.scale_sq,
        "layout": "block-major",
        "block_labels": list(dictionary.block_labels),
        "dimensions": {"rows": dictionary.dimension, "cols": dictionary.n_cols},
        "coherence": _frac(certificate.coherence) if certificate else None,
        "bounds": {
            "general": _frac(certificate.general_bound) if certificate else None,
            "union": _frac(certificate.union_bound) if certificate else None,
        },
        "spark": None
        if certificate is None
        else {
            "value": certificate.spark,
            "lower_bound": certificate.lower_bound,
            "upper_bound": certificate.upper_bound,
            "certified_by": certificate.certified_by,
            "eta_mu": _frac(certificate.eta_mu),
            "general_bound_relation": certificate.general_bound_relation,
        },
        "null_vector": None
        if vector is None
        else {"length": vector.length, "support": [[i, v] for i, v in vector.support]},
        "brute_force": None
        if brute is None
        else {
            "k_max": brute.k_max,
            "k_checked": brute.k_checked,
            "found_size": brute.found_size,
            "witness": list(brute.witness) if brute.witness else None,
            "planned_subsets": brute.planned_subsets,
            "budget": brute.budget,
        },
        "checks": [
            {
                "name": rep.name,
                "passed": rep.passed,
                "checks": rep.checks,
                "failures": list(rep.failures),
            }
            for rep in checks
        ],
        "timing": {"elapsed_seconds": round(elapsed, 6)},
    }
    return report


def report_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


# ---------------------------------------------------------------------------
# SVG rendering
# ---------------------------------------------------------------------------


def render_svg(matrix: np.ndarray, vector: np.ndarray | None = None) -> str:
    """Cell grid of the matrix, with the vector as a strip below; red +1,
    blue -1, gray 0."""
    rows, cols = matrix.shape
    height = rows * CELL + (2 * CELL if vector is not None else 0)
    width = cols * CELL
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" shape-rendering="crispEdges">'
    ]

    def emit(r, c, value):
        parts.append(
            f'<rect x="{c * CELL}" y="{r * CELL}" width="{CELL}" height="{CELL}" '
            f'fill="{CELL_COLORS[int(value)]}"/>'
        )

    for r in range(rows):
        for c in range(cols):
            emit(r, c, matrix[r, c])
    if vector is not None:
        strip_row = rows + 1
        for c in range(len(vector)):
            emit(strip_row, c, vector[c])
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def _artifact_paths(out_dir: Path, family: str, q: int) -> dict[str, Path]:
    stem = f"{family}_q{q}"
    return {
        "dictionary": out_dir / f"dictionary_{stem}.csv",
        "vector": out_dir / f"vector_{stem}.csv",
        "report": out_dir / f"report_{stem}.json",
        "figure": out_dir / f"figure_{stem}.svg",
        "json": out_dir / f"dictionary_{stem}.json",
    }


def _build_pair(family: str, q: int):
    dct._require_family_q(family, q)
    return dct.build_dictionary(family, q), dct.build_null_vector(family, q)


def _load_inputs(args) -> tuple[dct.ScaledDictionary, dct.SparseVector | None]:
    """Resolve (dictionary, vector) from positional paths or --family/--q."""
    paths = [Path(p) for p in getattr(args, "paths", []) or []]
    dictionary = None
    vector = None
    for p in paths:
        try:
            head = p.read_text().lstrip().splitlines()
        except OSError as exc:
            raise InputError(f"cannot read {p}: {exc}") from exc
        first = head[0] if head else ""
        if first.startswith(DICT_MAGIC):
            dictionary = read_dictionary(p)
        elif first.startswith(VECTOR_MAGIC):
            vector, _ = read_vector(p)
        else:
            raise InputError(f"{p}: not a spark-forge dictionary or vector file")
    if dictionary is None:
        if args.family is None or args.q is None:
            raise InputError("provide input paths or both --family and --q")
        dictionary, built_vector = _build_pair(args.family, args.q)
        if vector is None:
            vector = built_vector
    if args.family is not None and dictionary.family != args.family:
        raise InputError(
            f"--family {args.family} does not match file family {dictionary.family}"
        )
    if args.q is not None and dictionary.q != args.q:
        raise InputError(f"--q {args.q} does not match file q {dictionary.q}")
    if vector is not None and vector.length != dictionary.n_cols:
        raise InputError(
            f"vector length {vector.length} does not match dictionary "
            f"columns {dictionary.n_cols}"
        )
    return dictionary, vector


def _cmd_construct(args) -> int:
    started = time.perf_counter()
    dictionary, vector = _build_pair(args.family, args.q)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = _artifact_paths(out_dir, args.family, args.q)
    paths["dictionary"].write_text(dictionary_csv(dictionary))
    paths["vector"].write_text(vector_csv(vector, dictionary.q))
    checks = collect_reports(args.family, args.q, dictionary, vector)
    certificate = dct.spark_certify(dictionary, vector)
    report = run_report(
        "construct", dictionary, vector, certificate, checks,
        time.perf_counter() - started,
    )
    paths["report"].write_text(report_json(report))
    print(f"wrote {paths['dictionary']}")
    print(f"wrote {paths['vector']}")
    print(f"wrote {paths['report']}")
    failed = [rep for rep in checks if not rep.passed]
    return 1 if failed else 0


def _cmd_verify(args) -> int:
    started = time.perf_counter()
    dictionary, vector = _load_inputs(args)
    reference, _ = _build_pair(dictionary.family, dictionary.q)
    checks = collect_reports(
        dictionary.family, dictionary.q, dictionary, vector, reference
    )
    certificate = None
    if vector is not None:
        try:
            certificate = dct.spark_certify(dictionary, vector)
        except ValueError:
            pass  # kernel failure is already reported by the kernel check
    for rep in checks:
        print(rep.summary())
    if certificate is not None:
        print(f"coherence = {certificate.coherence}")
    report = run_report(
        "verify", dictionary, vector, certificate, checks,
        time.perf_counter() - started,
    )
    if args.out_dir is not None:
        out_dir = Path(args.out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        path = _artifact_paths(out_dir, dictionary.family, dictionary.q)["report"]
        path.write_text(report_json(report))
        print(f"wrote {path}")
    return 0 if all(rep.passed for rep in checks) else 1


def _cmd_spark(args) -> int:
    started = time.perf_counter()
    dictionary, vector = _load_inputs(args)
    if vector is None:
        raise InputError("spark certification needs the kernel vector")
    brute = None
    if args.brute_force:
        brute = dct.spark_bruteforce(
            dictionary, args.k_max, workers=args.workers, budget=args.budget
        )
    certificate = dct.spark_certify(dictionary, vector, brute_force=brute)
    print(
        f"family={dictionary.family} q={dictionary.q} "
        f"dims={dictionary.dimension}x{dictionary.n_cols} "
        f"coherence={certificate.coherence}"
    )
    print(certificate.verdict())
    if certificate.spark is not None:
        print(
            f"eta*mu = {certificate.eta_mu}, general bound "
            f"{certificate.general_bound} "
            f"({'met with equality' if certificate.general_bound_relation == '==' else 'strictly exceeded'})"
        )
        print(f"uniqueness threshold = {dct.uniqueness_threshold(certificate)}")
    if brute is not None:
        if brute.found_size is not None:
            print(
                f"brute force: dependent subset of size {brute.found_size} "
                f"at columns {list(brute.witness)}"
            )
        else:
            print(f"brute force: no dependent subset of size <= {brute.k_checked}")
        if brute.k_checked < brute.k_max:
            print(
                f"warning: budget {brute.budget} limited the search to "
                f"size <= {brute.k_checked}",
                file=sys.stderr,
            )
    if args.out_dir is not None:
        out_dir = Path(args.out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        report = run_report(
            "spark", dictionary, vector, certificate, [],
            time.perf_counter() - started,
        )
        path = _artifact_paths(out_dir, dictionary.family, dictionary.q)["report"]
        path.write_text(report_json(report))
        print(f"wrote {path}")
    return 0


def _cmd_render(args) -> int:
    dictionary, vector = _load_inputs(args)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = _artifact_paths(out_dir, dictionary.family, dictionary.q)["figure"]
    dense = vector.dense() if vector is not None else None
    path.write_text(render_svg(dictionary.matrix, dense))
    print(f"wrote {path}")
    return 0


def _cmd_export(args) -> int:
    dictionary, vector = _build_pair(args.family, args.q)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = _artifact_paths(out_dir, args.family, args.q)
    if args.format == "csv":
        paths["dictionary"].write_text(dictionary_csv(dictionary))
        paths["vector"].write_text(vector_csv(vector, dictionary.q))
        print(f"wrote {paths['dictionary']}")
        print(f"wrote {paths['vector']}")
    else:
        paths["json"].write_text(dictionary_json(dictionary, vector))
        print(f"wrote {paths['json']}")
    return 0


# ---------------------------------------------------------------------------
# Parser / entry point
# ---------------------------------------------------------------------------


def _add_family_q(parser, required=False):
    parser.add_argument("--family", choices=("thm1", "thm2"), required=required)
    parser.add_argument("--q", type=int, required=required)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spark-forge",
        description="Construct, verify, and certify spark-tight dictionaries.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build a dictionary and write artifacts")
    _add_family_q(p, required=True)
    p.add_argument("--out-dir", default=".")
    p.set_defaults(func=_cmd_construct)

    p = sub.add_parser("verify", help="run all structural verifiers")
    p.add_argument("paths", nargs="*", help="dictionary / vector CSV files")
    _add_family_q(p)
    p.add_argument("--out-dir", default=None)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("spark", help="certify the spark, optionally brute force")
    p.add_argument("paths", nargs="*", help="dictionary / vector CSV files")
    _add_family_q(p)
    p.add_argument("--k-max", type=int, default=8)
    p.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    p.add_argument("--brute-force", action="store_true")
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--out-dir", default=None)
    p.set_defaults(func=_cmd_spark)

    p = sub.add_parser("render", help="render the cell-grid SVG figure")
    p.add_argument("paths", nargs="*", help="dictionary / vector CSV files")
    _add_family_q(p)
    p.add_argument("--out-dir", default=".")
    p.set_defaults(func=_cmd_render)

    p = sub.add_parser("export", help="write the dictionary in csv or json form")
    _add_family_q(p, required=True)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out-dir", default=".")
    p.set_defaults(func=_cmd_export)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
