"""End-to-end command-line checks: golden artifacts, exit codes, round
trips, fault injection, rendering, and determinism."""

import json

import numpy as np
import pytest

from spark_forge.cli import main, read_dictionary, read_vector

GOLDEN_Q2_CSV = """\
# spark-forge dictionary v1, family=thm1, q=2, scale_sq=2, layout=block-major
1,1,0,0,1,1,0,0,1,1,0,0
0,0,1,1,0,0,1,1,1,-1,0,0
1,-1,0,0,0,0,1,-1,0,0,1,1
0,0,1,-1,1,-1,0,0,0,0,1,-1
"""

GOLDEN_Q2_VECTOR = """\
# spark-forge vector v1, family=thm1, q=2, length=12, layout=block-major
0,1
7,1
8,-1
"""


def _strip_timing(report: dict) -> dict:
    report = dict(report)
    report.pop("timing", None)
    return report


def test_construct_golden_artifacts(tmp_path):
    assert main(["construct", "--family", "thm1", "--q", "2",
                 "--out-dir", str(tmp_path)]) == 0
    assert (tmp_path / "dictionary_thm1_q2.csv").read_text() == GOLDEN_Q2_CSV
    assert (tmp_path / "vector_thm1_q2.csv").read_text() == GOLDEN_Q2_VECTOR
    report = json.loads((tmp_path / "report_thm1_q2.json").read_text())
    assert report["coherence"] == "1/2"
    assert report["spark"]["value"] == 3
    assert report["spark"]["eta_mu"] == "3/2"
    assert all(check["passed"] for check in report["checks"])


def test_construct_rejects_bad_q(tmp_path, capsys):
    assert main(["construct", "--family", "thm1", "--q", "3",
                 "--out-dir", str(tmp_path)]) == 2
    assert "q must be a power of two" in capsys.readouterr().err


@pytest.mark.parametrize(
    "family,q",
    [("thm1", 2), ("thm1", 4), ("thm1", 8), ("thm1", 16), ("thm2", 2), ("thm2", 4)],
)
def test_round_trip_verify(tmp_path, family, q):
    main(["construct", "--family", family, "--q", str(q), "--out-dir", str(tmp_path)])
    code = main(["verify",
                 str(tmp_path / f"dictionary_{family}_q{q}.csv"),
                 str(tmp_path / f"vector_{family}_q{q}.csv")])
    assert code == 0


def test_verify_from_family_flags(capsys):
    assert main(["verify", "--family", "thm1", "--q", "4"]) == 0
    out = capsys.readouterr().out
    assert "coherence = 1/4" in out
    assert "PASS mub-family" in out
    assert "PASS coset-antisymmetry" not in out  # extension check is thm2 only


def test_verify_runs_extension_checks_for_thm2(capsys):
    assert main(["verify", "--family", "thm2", "--q", "2"]) == 0
    assert "PASS coset-antisymmetry" in capsys.readouterr().out


def test_verify_flipped_sign_fails_mub_check(tmp_path, capsys):
    main(["construct", "--family", "thm1", "--q", "2", "--out-dir", str(tmp_path)])
    path = tmp_path / "dictionary_thm1_q2.csv"
    lines = path.read_text().splitlines()
    assert lines[1].startswith("1,")
    lines[1] = "-1" + lines[1][1:]
    path.write_text("\n".join(lines) + "\n")
    code = main(["verify", str(path), str(tmp_path / "vector_thm1_q2.csv")])
    assert code == 1
    out = capsys.readouterr().out
    assert "FAIL mub-family" in out or "FAIL column-support" in out
    assert "FAIL matches-construction" in out


def test_verify_empty_file_is_input_error(tmp_path, capsys):
    empty = tmp_path / "empty.csv"
    empty.write_text("")
    assert main(["verify", str(empty)]) == 2
    assert "error:" in capsys.readouterr().err


def test_verify_mismatched_flags(tmp_path, capsys):
    main(["construct", "--family", "thm1", "--q", "2", "--out-dir", str(tmp_path)])
    code = main(["verify", str(tmp_path / "dictionary_thm1_q2.csv"),
                 "--family", "thm1", "--q", "4"])
    assert code == 2


def test_spark_command_output(capsys):
    assert main(["spark", "--family", "thm1", "--q", "2",
                 "--brute-force", "--k-max", "3", "--workers", "1"]) == 0
    out = capsys.readouterr().out
    assert "spark = 3" in out
    assert "brute force: dependent subset of size 3 at columns [0, 4, 11]" in out
    assert "eta*mu = 3/2" in out


def test_spark_bound_only_at_scale(capsys):
    assert main(["spark", "--family", "thm2", "--q", "4"]) == 0
    out = capsys.readouterr().out
    assert "spark = 20 (certified: coherence bound + kernel vector)" in out
    assert "coherence=1/16" in out


def test_spark_exhaustive_clearance_message(capsys):
    assert main(["spark", "--family", "thm2", "--q", "2", "--brute-force",
                 "--k-max", "5", "--workers", "2"]) == 0
    out = capsys.readouterr().out
    assert "brute force: no dependent subset of size <= 5" in out
    assert "spark = 6" in out


def test_spark_budget_warning(capsys):
    assert main(["spark", "--family", "thm1", "--q", "2", "--brute-force",
                 "--k-max", "3", "--workers", "1", "--budget", "100"]) == 0
    captured = capsys.readouterr()
    assert "no dependent subset of size <= 2" in captured.out
    assert "budget 100 limited the search" in captured.err


def test_spark_needs_vector(tmp_path, capsys):
    main(["construct", "--family", "thm1", "--q", "2", "--out-dir", str(tmp_path)])
    code = main(["spark", str(tmp_path / "dictionary_thm1_q2.csv")])
    assert code == 2
    assert "kernel vector" in capsys.readouterr().err


def test_render_produces_cell_grid(tmp_path):
    assert main(["render", "--family", "thm1", "--q", "2",
                 "--out-dir", str(tmp_path)]) == 0
    svg = (tmp_path / "figure_thm1_q2.svg").read_text()
    # 4x12 grid plus the 12-cell strip
    assert svg.count("<rect") == 4 * 12 + 12
    assert svg.count("#d62728") == 18 + 2   # +1 cells in matrix and vector
    assert svg.count("#1f77b4") == 6 + 1    # -1 cells
    assert svg.count("#bbbbbb") == 24 + 9   # zeros


def test_render_all_zero_vector(tmp_path):
    main(["construct", "--family", "thm1", "--q", "2", "--out-dir", str(tmp_path)])
    vec = tmp_path / "vector_thm1_q2.csv"
    vec.write_text(
        "# spark-forge vector v1, family=thm1, q=2, length=12, layout=block-major\n"
    )
    assert main(["render", str(tmp_path / "dictionary_thm1_q2.csv"), str(vec),
                 "--out-dir", str(tmp_path)]) == 0
    svg = (tmp_path / "figure_thm1_q2.svg").read_text()
    assert svg.count("#bbbbbb") == 24 + 12  # strip is all gray


def test_export_csv_matches_construct(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    main(["construct", "--family", "thm1", "--q", "2", "--out-dir", str(a)])
    main(["export", "--family", "thm1", "--q", "2", "--format", "csv",
          "--out-dir", str(b)])
    assert (a / "dictionary_thm1_q2.csv").read_bytes() == (
        b / "dictionary_thm1_q2.csv"
    ).read_bytes()
    assert (a / "vector_thm1_q2.csv").read_bytes() == (
        b / "vector_thm1_q2.csv"
    ).read_bytes()


def test_export_json_carries_layout(tmp_path):
    assert main(["export", "--family", "thm2", "--q", "2", "--format", "json",
                 "--out-dir", str(tmp_path)]) == 0
    payload = json.loads((tmp_path / "dictionary_thm2_q2.json").read_text())
    assert payload["layout"] == "block-major"
    assert payload["block_labels"] == [0, 1, "inf"]
    assert payload["dimensions"] == {"cols": 48, "rows": 16}
    matrix = np.array(payload["matrix"])
    assert matrix.shape == (16, 48)
    support = payload["null_vector"]["support"]
    assert support == [[0, 1], [8, 1], [21, 1], [29, 1], [32, -1], [40, -1]]


def test_reader_round_trip(tmp_path):
    main(["construct", "--family", "thm1", "--q", "4", "--out-dir", str(tmp_path)])
    d = read_dictionary(tmp_path / "dictionary_thm1_q4.csv")
    x, q = read_vector(tmp_path / "vector_thm1_q4.csv")
    assert d.matrix.shape == (16, 80) and d.q == q == 4
    assert len(x.support) == 5


def test_reader_rejects_bad_entries(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text(
        "# spark-forge dictionary v1, family=thm1, q=2, scale_sq=2, "
        "layout=block-major\n1,2\n0,1\n"
    )
    with pytest.raises(Exception, match="entries outside"):
        read_dictionary(bad)


def test_construct_determinism(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for out in (a, b):
        main(["construct", "--family", "thm2", "--q", "2", "--out-dir", str(out)])
    for name in ("dictionary_thm2_q2.csv", "vector_thm2_q2.csv"):
        assert (a / name).read_bytes() == (b / name).read_bytes()
    ra = json.loads((a / "report_thm2_q2.json").read_text())
    rb = json.loads((b / "report_thm2_q2.json").read_text())
    assert _strip_timing(ra) == _strip_timing(rb)


def test_spark_determinism_across_workers(capsys):
    outputs = []
    for workers in ("1", "2"):
        assert main(["spark", "--family", "thm1", "--q", "2", "--brute-force",
                     "--k-max", "3", "--workers", workers]) == 0
        outputs.append(capsys.readouterr().out)
    assert outputs[0] == outputs[1]
