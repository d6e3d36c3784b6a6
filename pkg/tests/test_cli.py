"""End-to-end checks of the command line surface via cli.main.

Every test drives the real argument parser and asserts on captured
stdout/stderr and exit codes; goldens pin the exact output bytes so
reruns stay reproducible.
"""

import json

import pytest

from schubsmooth import cli
from schubsmooth.affine import from_window, from_word, identity
from schubsmooth.selftest import CRITERIA, TABLE_1
from schubsmooth.staircase import StaircaseDiagram, cycle_graph, to_json


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ----------------------------------------------------------------------
# smooth


def test_smooth_json_golden(capsys):
    code, out, err = run(capsys, "smooth", "--n", "4", "--window", "3,4,1,2")
    assert code == 0 and err == ""
    assert out == (
        '{"smooth": false, "rationally_smooth": false, "twisted_spiral": false, '
        '"length": 4, "window": [3, 4, 1, 2]}\n'
    )


def test_smooth_formats(capsys):
    code, out, _ = run(capsys, "--format", "tsv", "smooth", "--n", "2", "--word", "0,1,0")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "smooth\tfalse"
    assert "rationally_smooth\ttrue" in lines
    assert len(lines) == 5
    code, out, _ = run(capsys, "--format", "text", "smooth", "--n", "2", "--word", "0,1,0")
    assert code == 0
    assert out.splitlines()[0] == "smooth: false"


def test_window_and_word_give_identical_output(capsys):
    code_a, out_a, _ = run(capsys, "smooth", "--n", "4", "--window", "3,4,1,2")
    code_b, out_b, _ = run(capsys, "smooth", "--n", "4", "--word", "2,3,1,2")
    assert code_a == code_b == 0
    assert out_a == out_b


def test_element_file_sources(capsys, tmp_path):
    f = tmp_path / "el.json"
    f.write_text('{"n": 4, "window": [3, 4, 1, 2]}')
    code, out, _ = run(capsys, "smooth", "--element", str(f))
    _, direct, _ = run(capsys, "smooth", "--n", "4", "--window", "3,4,1,2")
    assert code == 0 and out == direct
    g = tmp_path / "word.json"
    g.write_text('{"n": 3, "word": [0, 1]}')
    code, out, _ = run(capsys, "smooth", "--element", str(g))
    assert code == 0 and json.loads(out)["length"] == 2


def test_element_argument_validation(capsys, tmp_path):
    code, _, err = run(capsys, "smooth", "--n", "4", "--window", "1,2,3,4", "--word", "0")
    assert code == 1 and "exactly one" in err
    code, _, err = run(capsys, "smooth", "--window", "1,2")
    assert code == 1 and "--n is required" in err
    code, _, err = run(capsys, "smooth", "--n", "4", "--window", "1,2")
    assert code == 1 and "must list 4 values" in err
    code, _, err = run(capsys, "smooth", "--n", "3", "--window", "1,1,4")
    assert code == 1 and err.startswith("error:")
    code, _, err = run(capsys, "smooth", "--n", "3", "--window", "1,x,4")
    assert code == 1 and "integer list" in err
    f = tmp_path / "el.json"
    f.write_text('{"n": 4, "window": [3, 4, 1, 2]}')
    code, _, err = run(capsys, "smooth", "--n", "5", "--element", str(f))
    assert code == 1 and "disagrees" in err
    h = tmp_path / "bare.json"
    h.write_text('{"n": 4}')
    code, _, err = run(capsys, "smooth", "--element", str(h))
    assert code == 1 and "window" in err
    code, _, err = run(capsys, "smooth", "--element", str(tmp_path / "missing.json"))
    assert code == 1 and err.startswith("error:")


# ----------------------------------------------------------------------
# decompose


def test_decompose_golden(capsys):
    code, out, _ = run(capsys, "decompose", "--n", "4", "--window", "4,3,1,2")
    assert code == 0
    doc = json.loads(out)
    assert doc["smooth"] is True and doc["window"] == [4, 3, 1, 2]
    assert doc["factors"] == [
        {
            "word": [2, 3],
            "K": [1, 2],
            "maximal": True,
            "grassmannian": {"nodes": [2, 3], "missing": 3},
        },
        {
            "word": [2, 1],
            "K": [2],
            "maximal": True,
            "grassmannian": {"nodes": [1, 2], "missing": 1},
        },
        {
            "word": [2],
            "K": [],
            "maximal": True,
            "grassmannian": {"nodes": [2], "missing": 2},
        },
    ]
    w = identity(4)
    for f in doc["factors"]:
        w = w * from_word(4, f["word"])
    assert w == from_window(4, (4, 3, 1, 2))


def test_decompose_relative_to_parabolic(capsys):
    # smooth overall, but not smooth relative to J = {0}
    code, out, _ = run(capsys, "decompose", "--n", "3", "--window", "2,4,0", "--J", "0")
    assert code == 0
    doc = json.loads(out)
    assert doc == {"factors": None, "smooth": False, "window": [2, 4, 0]}
    code, _, err = run(capsys, "decompose", "--n", "3", "--window", "2,4,0", "--J", "7")
    assert code == 1 and "outside" in err


def test_decompose_tsv_rows(capsys):
    code, out, _ = run(capsys, "--format", "tsv", "decompose", "--n", "4", "--window", "4,3,1,2")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "factor\t0\t2,3\tK=1,2\tmaximal=True"
    assert lines[-1] == "smooth\ttrue"


# ----------------------------------------------------------------------
# enumerate


def test_enumerate_count_only(capsys):
    code, out, _ = run(capsys, "enumerate", "--n", "3", "--count-only")
    assert code == 0 and out == "31\n"


def test_enumerate_listing_sorted(capsys):
    code, out, _ = run(capsys, "enumerate", "--n", "2")
    assert code == 0
    assert json.loads(out) == [
        {"length": 0, "window": [1, 2]},
        {"length": 1, "window": [0, 3]},
        {"length": 1, "window": [2, 1]},
        {"length": 2, "window": [-1, 4]},
        {"length": 2, "window": [3, 0]},
    ]
    code, out, _ = run(capsys, "--format", "tsv", "enumerate", "--n", "2")
    assert code == 0
    assert out == "0\t1,2\n1\t0,3\n1\t2,1\n2\t-1,4\n2\t3,0\n"


def test_enumerate_budget_errors(capsys):
    code, _, err = run(capsys, "enumerate", "--n", "3", "--max-length", "3")
    assert code == 1 and err.startswith("error:")
    code, _, err = run(capsys, "--budget-seconds", "1e-9", "enumerate", "--n", "3")
    assert code == 1 and err.startswith("error:")


# ----------------------------------------------------------------------
# series


def test_series_three_methods_agree(capsys):
    code, out, _ = run(capsys, "series", "--which", "A", "--order", "9", "--method", "all", "--diff")
    assert code == 0
    doc = json.loads(out)
    assert doc["methods"] == ["assembled", "closed", "enumerate"]
    assert doc["rows"] == [[n, c] for n, c in zip(range(1, 10), (0,) + TABLE_1)]
    assert doc["mismatches"] == []
    assert doc["outside_domain"] == [1]


def test_series_text_and_tsv(capsys):
    code, out, _ = run(capsys, "--format", "text", "series", "--which", "A", "--order", "3")
    assert code == 0
    assert out == "A[1] = 0  (outside domain)\nA[2] = 5\nA[3] = 31\n"
    code, out, _ = run(capsys, "--format", "tsv", "series", "--which", "A", "--order", "3")
    assert code == 0
    assert out == "1\t0\n2\t5\n3\t31\n"


def test_series_components(capsys):
    code, out, _ = run(capsys, "series", "--which", "AM", "--order", "5")
    doc = json.loads(out)
    assert code == 0 and doc["rows"] == [[1, 1], [2, 2], [3, 5], [4, 14], [5, 42]]
    assert "outside_domain" not in doc
    code, out, _ = run(capsys, "series", "--which", "AF", "--order", "6", "--method", "all", "--diff")
    doc = json.loads(out)
    assert code == 0 and doc["mismatches"] == []
    assert doc["rows"] == [[1, 1], [2, 3], [3, 11], [4, 43], [5, 173], [6, 707]]


def test_series_enumeration_cap(capsys):
    code, out, _ = run(
        capsys, "series", "--which", "AM", "--order", "9", "--method", "enumerate", "--enum-cap", "99"
    )
    assert code == 0
    doc = json.loads(out)
    # the hard cap keeps enumeration at n <= 8 even when asked for more
    assert doc["rows"] == [[n, c] for n, c in zip(range(1, 9), (1, 2, 5, 14, 42, 132, 429, 1430))]
    code, _, err = run(capsys, "series", "--which", "A", "--order", "0")
    assert code == 1 and "--order" in err


def test_series_diff_detects_mismatch(capsys, monkeypatch):
    monkeypatch.setattr(cli, "_series_enumerated", lambda which, n: 999)
    code, out, _ = run(capsys, "series", "--which", "AM", "--order", "3", "--method", "all", "--diff")
    assert code == 2
    doc = json.loads(out)
    assert doc["mismatches"] and doc["mismatches"][0]["n"] == 1
    # without --diff the mismatch is not checked and the exit stays 0
    code, _, _ = run(capsys, "series", "--which", "AM", "--order", "3", "--method", "all")
    assert code == 0


# ----------------------------------------------------------------------
# staircase


@pytest.fixture
def diagram_files(tmp_path):
    valid = tmp_path / "valid.json"
    valid.write_text(
        '{"graph": {"kind": "path", "n": 3}, "blocks": [[1, 2], [2, 3]], "covers": [[0, 1]]}'
    )
    invalid = tmp_path / "invalid.json"
    invalid.write_text(
        '{"graph": {"kind": "path", "n": 3}, "blocks": [[1, 2], [2]], "covers": [[0, 1]]}'
    )
    malformed = tmp_path / "malformed.json"
    malformed.write_text("{not json")
    wrap = tmp_path / "wrap.json"
    wrap.write_text(
        to_json(
            StaircaseDiagram(
                cycle_graph(10),
                [[0, 1, 2, 3], [7, 8, 9, 0, 1], [5, 6, 7], [3, 4, 5, 6]],
                [(0, 1), (1, 2), (2, 3)],
            )
        )
    )
    return {"valid": valid, "invalid": invalid, "malformed": malformed, "wrap": wrap}


def test_staircase_validate(capsys, diagram_files):
    code, out, _ = run(capsys, "staircase", "validate", "--file", str(diagram_files["valid"]))
    assert code == 0 and json.loads(out) == {"valid": True, "reason": ""}
    code, out, _ = run(capsys, "staircase", "validate", "--file", str(diagram_files["invalid"]))
    assert code == 0
    doc = json.loads(out)
    assert doc["valid"] is False and doc["reason"].startswith("axiom (4)")
    code, _, err = run(capsys, "staircase", "validate", "--file", str(diagram_files["malformed"]))
    assert code == 1 and err.startswith("error:")


def test_staircase_render(capsys, diagram_files):
    code, out, _ = run(capsys, "--format", "text", "staircase", "render", "--file", str(diagram_files["valid"]))
    assert code == 0
    assert out == "s1 s2 s3\n.. ## ##\n## ## ..\n"
    code, out, _ = run(capsys, "staircase", "render", "--file", str(diagram_files["valid"]))
    assert json.loads(out) == "s1 s2 s3\n.. ## ##\n## ## .."
    # invalid diagrams are refused for every action except validate
    code, _, err = run(capsys, "staircase", "render", "--file", str(diagram_files["invalid"]))
    assert code == 1 and "axiom (4)" in err


def test_staircase_dyck(capsys, diagram_files, tmp_path):
    code, out, _ = run(capsys, "staircase", "dyck", "--file", str(diagram_files["valid"]))
    assert code == 0
    assert json.loads(out) == {"semilength": 3, "pairs": [[2, 1], [1, 2]]}
    code, out, _ = run(capsys, "--format", "tsv", "staircase", "dyck", "--file", str(diagram_files["valid"]))
    assert out == "2\t1\n1\t2\n"
    down = tmp_path / "down.json"
    down.write_text('{"graph": {"kind": "path", "n": 2}, "blocks": [[1], [2]], "covers": [[1, 0]]}')
    code, _, err = run(capsys, "staircase", "dyck", "--file", str(down))
    assert code == 1 and "not increasing" in err


def test_staircase_decompose_cycle(capsys, diagram_files):
    code, out, _ = run(capsys, "staircase", "decompose", "--file", str(diagram_files["wrap"]))
    assert code == 0
    doc = json.loads(out)
    assert doc["kind"] == "cycle" and doc["mark"] == 6
    assert [p["n"] for p in doc["pieces"]] == [2, 8]
    assert [p["direction"] for p in doc["pieces"]] == ["increasing", "decreasing"]
    assert all(p["broken"] for p in doc["pieces"])


def test_staircase_decompose_path(capsys, tmp_path):
    f = tmp_path / "chain.json"
    f.write_text('{"graph": {"kind": "path", "n": 2}, "blocks": [[1], [2]], "covers": [[1, 0]]}')
    code, out, _ = run(capsys, "staircase", "decompose", "--file", str(f))
    assert code == 0
    doc = json.loads(out)
    assert doc["kind"] == "path"
    assert doc["pieces"] == [
        {"n": 1, "direction": "decreasing", "blocks": [[1]], "broken": False}
    ]
    assert doc["final"] == {"graph": {"kind": "path", "n": 1}, "blocks": [[1]], "covers": []}


# ----------------------------------------------------------------------
# selftest


def test_selftest_small_passes(capsys):
    code, out, _ = run(capsys, "selftest", "--scale", "small")
    assert code == 0
    doc = json.loads(out)
    assert [r["criterion"] for r in doc] == list(range(1, 12))
    assert all(r["ok"] for r in doc)
    assert [r["name"] for r in doc] == [name for _, name, _ in CRITERIA]


def test_selftest_worker_count_does_not_change_output(capsys):
    code_a, out_a, _ = run(capsys, "selftest", "--scale", "small")
    code_b, out_b, _ = run(capsys, "--workers", "2", "selftest", "--scale", "small")
    assert code_a == code_b == 0
    assert out_a == out_b


def test_selftest_text_lines(capsys):
    code, out, _ = run(capsys, "--format", "text", "selftest", "--scale", "small")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 11
    assert all(line.startswith("PASS criterion") for line in lines)


# ----------------------------------------------------------------------
# determinism and parser behavior


def test_reruns_are_byte_identical(capsys):
    for argv in (
        ("smooth", "--n", "4", "--window", "3,4,1,2"),
        ("enumerate", "--n", "2"),
        ("series", "--which", "A", "--order", "9", "--method", "all"),
        ("--format", "tsv", "series", "--which", "AB", "--order", "6"),
    ):
        _, first, _ = run(capsys, *argv)
        _, second, _ = run(capsys, *argv)
        assert first == second


def test_json_output_is_a_single_document(capsys):
    for argv in (
        ("smooth", "--n", "2", "--word", "0"),
        ("enumerate", "--n", "2"),
        ("series", "--which", "AM", "--order", "4"),
        ("selftest", "--scale", "small"),
    ):
        _, out, _ = run(capsys, *argv)
        json.loads(out)  # exactly one parseable document
        assert out.count("\n") == 1 and out.endswith("\n")


def test_rejected_flags_exit_via_argparse(capsys):
    with pytest.raises(SystemExit):
        cli.main(["series", "--which", "BOGUS", "--order", "3"])
    with pytest.raises(SystemExit):
        cli.main(["staircase", "explode", "--file", "x"])
    with pytest.raises(SystemExit):
        cli.main([])
