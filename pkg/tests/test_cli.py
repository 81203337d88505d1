import json
import subprocess
import sys

import pytest

from blbc.cli import main
from blbc.construction import DEFAULT_SEED, generate
from blbc.fileformat import PointFile, serialize_point_file

POINTS_6_GOLDEN = (
    "{\n"
    '  "format_version": 1,\n'
    '  "points": [\n'
    "    {\n"
    '      "x": "0",\n'
    '      "y": "0"\n'
    "    },\n"
    "    {\n"
    '      "x": "1",\n'
    '      "y": "0"\n'
    "    },\n"
    "    {\n"
    '      "x": "0",\n'
    '      "y": "1"\n'
    "    },\n"
    "    {\n"
    '      "x": "1/2",\n'
    '      "y": "0"\n'
    "    },\n"
    "    {\n"
    '      "x": "0",\n'
    '      "y": "1/2"\n'
    "    },\n"
    "    {\n"
    '      "x": "1/2",\n'
    '      "y": "1/2"\n'
    "    }\n"
    "  ],\n"
    '  "metadata": {\n'
    '    "generator": "blbc",\n'
    '    "count": 6,\n'
    '    "seed": [\n'
    "      {\n"
    '        "x": "0",\n'
    '        "y": "0"\n'
    "      },\n"
    "      {\n"
    '        "x": "1",\n'
    '        "y": "0"\n'
    "      },\n"
    "      {\n"
    '        "x": "0",\n'
    '        "y": "1"\n'
    "      }\n"
    "    ]\n"
    "  }\n"
    "}\n"
)


def write_points(path, points):
    path.write_text(serialize_point_file(PointFile(points=list(points))))
    return str(path)


def gen(tmp_path, count, trace=False):
    points = tmp_path / f"p{count}.json"
    argv = ["generate", "--count", str(count), "--out", str(points)]
    trace_path = None
    if trace:
        trace_path = tmp_path / f"t{count}.json"
        argv += ["--trace-out", str(trace_path)]
    assert main(argv) == 0
    return points, trace_path


# generate


def test_generate_golden_bytes(tmp_path):
    points, _ = gen(tmp_path, 6)
    assert points.read_text() == POINTS_6_GOLDEN


def test_generate_trace_matches_library(tmp_path):
    from blbc.fileformat import parse_trace_file

    _, trace = gen(tmp_path, 8, trace=True)
    assert parse_trace_file(trace.read_text()) == generate(DEFAULT_SEED, 8).trace


def test_generate_is_deterministic(tmp_path):
    first = tmp_path / "first.json"
    second = tmp_path / "second.json"
    assert main(["generate", "--count", "15", "--out", str(first)]) == 0
    assert main(["generate", "--count", "15", "--out", str(second)]) == 0
    assert first.read_bytes() == second.read_bytes()


def test_generate_subprocess_matches_in_process(tmp_path):
    out = tmp_path / "sub.json"
    proc = subprocess.run(
        [sys.executable, "-m", "blbc", "generate", "--count", "6", "--out", str(out)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr
    assert out.read_text() == POINTS_6_GOLDEN


def test_generate_count_validation(tmp_path):
    assert main(["generate", "--count", "2", "--out", str(tmp_path / "x.json")]) == 2


def test_generate_custom_seed(tmp_path):
    seed = write_points(tmp_path / "seed.json", [(0, 0), (2, 0), (1, 3)])
    out = tmp_path / "out.json"
    assert main(["generate", "--count", "9", "--out", str(out), "--seed-file", seed]) == 0
    doc = json.loads(out.read_text())
    assert len(doc["points"]) == 9
    assert doc["metadata"]["seed"][1] == {"x": "2", "y": "0"}


def test_generate_rejects_bad_seed_files(tmp_path):
    out = str(tmp_path / "out.json")
    two = write_points(tmp_path / "two.json", [(0, 0), (1, 0)])
    assert main(["generate", "--count", "5", "--out", out, "--seed-file", two]) == 2
    collinear = write_points(tmp_path / "col.json", [(0, 0), (1, 0), (2, 0)])
    assert main(["generate", "--count", "5", "--out", out, "--seed-file", collinear]) == 2


# verify


def test_generate_verify_pipeline(tmp_path, capsys):
    for count in (3, 4, 7, 12, 20):
        points, trace = gen(tmp_path, count, trace=True)
        code = main(["verify", "--points", str(points), "--trace", str(trace)])
        doc = json.loads(capsys.readouterr().out)
        assert code == 0
        assert doc["all_passed"] is True
        assert [c["check"] for c in doc["checks"]] == [
            "no4collinear",
            "uniquetriple",
            "visiblepairlemma",
            "trianglepending",
            "exclusionbound",
        ]


def test_verify_without_trace_runs_point_checks_only(tmp_path, capsys):
    points, _ = gen(tmp_path, 10)
    assert main(["verify", "--points", str(points)]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert [c["check"] for c in doc["checks"]] == [
        "no4collinear",
        "visiblepairlemma",
        "trianglepending",
    ]


def test_verify_ordinary_oracle_opt_in(tmp_path, capsys):
    points, trace = gen(tmp_path, 10, trace=True)
    code = main(
        ["verify", "--points", str(points), "--trace", str(trace),
         "--checks", "ordinaryoracle"]
    )
    doc = json.loads(capsys.readouterr().out)
    assert code == 0
    assert [c["check"] for c in doc["checks"]] == ["ordinaryoracle"]
    assert doc["checks"][0]["stats"] == {"steps": 7, "points": 10}


def test_verify_checks_subset_keeps_canonical_order(tmp_path, capsys):
    points, _ = gen(tmp_path, 6)
    code = main(
        ["verify", "--points", str(points), "--checks", "trianglepending,no4collinear"]
    )
    doc = json.loads(capsys.readouterr().out)
    assert code == 0
    assert [c["check"] for c in doc["checks"]] == ["no4collinear", "trianglepending"]


def test_verify_fails_on_four_collinear(tmp_path, capsys):
    bad = write_points(tmp_path / "bad.json", [(0, 0), (1, 0), (2, 0), (3, 0), (0, 1)])
    code = main(["verify", "--points", bad])
    doc = json.loads(capsys.readouterr().out)
    assert code == 1
    assert doc["all_passed"] is False
    by_name = {c["check"]: c for c in doc["checks"]}
    assert by_name["no4collinear"]["passed"] is False
    assert by_name["no4collinear"]["counterexample"]["indices"] == [1, 2, 3, 4]


def test_verify_rejects_unknown_check(tmp_path, capsys):
    points, _ = gen(tmp_path, 4)
    assert main(["verify", "--points", str(points), "--checks", "bogus"]) == 2
    assert "unknown check" in capsys.readouterr().err


def test_verify_trace_checks_require_trace(tmp_path, capsys):
    points, _ = gen(tmp_path, 4)
    assert main(["verify", "--points", str(points), "--checks", "uniquetriple"]) == 2
    assert "--trace" in capsys.readouterr().err


def test_verify_rejects_malformed_rational(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(
        '{"format_version": 1, "points": [{"x": "2/4", "y": "0"}]}'
    )
    assert main(["verify", "--points", str(bad)]) == 2
    err = capsys.readouterr().err
    assert "points[0].x" in err
    assert "lowest terms" in err


def test_verify_rejects_duplicate_points(tmp_path, capsys):
    dup = write_points(tmp_path / "dup.json", [(0, 0), (1, 0), (0, 0)])
    assert main(["verify", "--points", dup]) == 2
    assert "error:" in capsys.readouterr().err


def test_missing_file_is_io_error(tmp_path, capsys):
    assert main(["verify", "--points", str(tmp_path / "absent.json")]) == 3
    assert "error:" in capsys.readouterr().err


# analyze


def test_analyze_grid(tmp_path, capsys):
    grid = write_points(
        tmp_path / "grid.json", [(x, y) for y in range(3) for x in range(3)]
    )
    code = main(["analyze", "--points", grid, "--k", "4", "--l", "4"])
    doc = json.loads(capsys.readouterr().out)
    assert code == 0
    assert doc["outcome"] == "CliqueFound"
    assert doc["clique_witness"] == [1, 2, 4, 5]
    assert doc["collinear_size"] == 3


def test_analyze_collinear_line(tmp_path, capsys):
    pts = write_points(tmp_path / "line.json", [(0, 0), (1, 0), (2, 0), (3, 0), (0, 1)])
    code = main(["analyze", "--points", pts, "--k", "4", "--l", "4"])
    doc = json.loads(capsys.readouterr().out)
    assert code == 0
    assert doc["outcome"] == "CollinearFound"
    assert doc["collinear_witness"] == [1, 2, 3, 4]


def test_analyze_threshold_validation(tmp_path, capsys):
    pts = write_points(tmp_path / "p.json", [(0, 0), (1, 0), (0, 1)])
    assert main(["analyze", "--points", pts, "--k", "1", "--l", "4"]) == 2
    capsys.readouterr()


# render


def test_render_writes_svg(tmp_path):
    points, _ = gen(tmp_path, 6)
    out = tmp_path / "out.svg"
    assert main(["render", "--points", str(points), "--out", str(out),
                 "--edges", "collinear"]) == 0
    svg = out.read_text()
    assert svg.startswith('<?xml version="1.0"')
    assert svg.count("<circle") == 6


def test_render_to_missing_directory_is_io_error(tmp_path, capsys):
    points, _ = gen(tmp_path, 4)
    out = tmp_path / "no" / "such" / "dir" / "out.svg"
    assert main(["render", "--points", str(points), "--out", str(out)]) == 3
    capsys.readouterr()


def test_render_rejects_unknown_edge_mode(tmp_path, capsys):
    points, _ = gen(tmp_path, 4)
    out = tmp_path / "out.svg"
    assert main(["render", "--points", str(points), "--out", str(out),
                 "--edges", "wires"]) == 2
    capsys.readouterr()


# usage


def test_no_arguments_is_usage_error(capsys):
    assert main([]) == 2
    capsys.readouterr()


def test_unknown_subcommand_is_usage_error(capsys):
    assert main(["frobnicate"]) == 2
    capsys.readouterr()


def test_help_exits_zero(capsys):
    assert main(["--help"]) == 0
    assert "generate" in capsys.readouterr().out
