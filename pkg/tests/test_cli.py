import subprocess
import sys

import pytest

from cayleydih.cayley import read_graph, to_text
from cayleydih.cli import Command, main, parse_inputs, run
from cayleydih.errors import UsageError
from cayleydih.groups import FactorChoice


def call(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_build():
    cmd = parse_inputs(["build", "--group", "C6", "--set", "(1);(5)"])
    assert isinstance(cmd, Command) and cmd.verb == "build"
    assert [str(e) for e in cmd.options["set"]] == ["(1)", "(5)"]


def test_parse_counterexample():
    assert parse_inputs(["counterexample"]).verb == "counterexample"


def test_parse_thm3_factor_infers_k():
    cmd = parse_inputs(["thm3", "--group", "dih(C4)", "--set", "x(0);x(1)", "--factor", "0"])
    assert cmd.options["factor"] == FactorChoice(0, 2)
    cmd = parse_inputs(["thm3", "--group", "dih(C4)", "--set", "x(0);x(1)", "--factor", "none"])
    assert cmd.options["factor"] == "none"


def test_parse_set_is_whitespace_insensitive():
    cmd = parse_inputs(["build", "--group", "C9xC3", "--set", " ( 1 , 0 ) ; (8,0) "])
    assert [str(e) for e in cmd.options["set"]] == ["(1,0)", "(8,0)"]


@pytest.mark.parametrize(
    "argv, column",
    [
        (["build", "--group", "C6", "--set", "(1);(3"], 30),
        (["build", "--group", "Q8", "--set", "(1)"], 15),
        (["build", "--group", "C6", "--set", "(1,2)"], 28),
    ],
)
def test_usage_error_columns(argv, column):
    with pytest.raises(UsageError) as info:
        parse_inputs(argv)
    assert info.value.line == 1
    assert info.value.column == column


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["frobnicate"],
        ["build", "--group", "C6", "--set", "(1);(5)", "--bogus"],
        ["build", "--group", "C6"],
        ["build", "--set", "(1)"],
        ["thm2", "--group", "C4", "--set", "(1);(3)", "--factor", "none"],
        ["thm2", "--group", "C4", "--set", "(1);(3)", "--factor", "7"],
        ["thm2", "--group", "C4", "--set", "(1);(3)", "--factor", "a"],
        ["autgrp"],
        ["build", "--group", "C6", "--set", "(1);(5)", "--all-witnesses"],
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    code, out, err = call(argv, capsys)
    assert code == 2
    assert "usage error" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["build", "--group", "C6", "--set", "(0);(1);(5)"],
        ["build", "--group", "C6", "--set", "(1);(2);(4)"],
        ["corollary", "--group", "C9xC3", "--set", "(1,0);(8,0)"],
        ["thm2", "--group", "C6xC3", "--set", "(1,0);(5,0)", "--factor", "1"],
        ["thm3", "--group", "C8", "--set", "(1);(7)"],
    ],
)
def test_bad_input_after_parsing_exits_2(argv, capsys):
    code, _, err = call(argv, capsys)
    assert code == 2
    assert err.startswith("ERROR usage")


def test_missing_graph_file_exits_2(tmp_path, capsys):
    code, _, err = call(["autgrp", "--graph", str(tmp_path / "nope.txt")], capsys)
    assert code == 2


def test_malformed_graph_file_exits_2(tmp_path, capsys):
    f = tmp_path / "g.txt"
    f.write_text("3 1\n0 x\n")
    code, _, err = call(["regular", "--graph", str(f)], capsys)
    assert code == 2 and "2:1" in err


def test_resource_cap_exits_3(tmp_path, capsys):
    # K10: 10! automorphisms is past the listing cap
    f = tmp_path / "k10.txt"
    edges = [(u, v) for u in range(10) for v in range(u + 1, 10)]
    f.write_text(f"10 {len(edges)}\n" + "".join(f"{u} {v}\n" for u, v in edges))
    code, _, err = call(["autgrp", "--graph", str(f)], capsys)
    assert code == 3 and "cap" in err


def test_too_large_exits_3(tmp_path, capsys):
    f = tmp_path / "big.txt"
    f.write_text("65 0\n")
    code, _, _ = call(["autgrp", "--graph", str(f)], capsys)
    assert code == 3


def test_verification_failure_exits_1(monkeypatch, capsys):
    import cayleydih.cli as cli

    monkeypatch.setattr(cli, "COUNTEREXAMPLE_SET", "(1,0);(8,0)")
    code, out, _ = call(["counterexample"], capsys)
    assert code == 1
    assert "MISMATCH" in out


def test_verify_reports_missing_as_failure(monkeypatch, capsys):
    import cayleydih.cli as cli

    monkeypatch.setattr(cli, "enumerate_regular_subgroups", _empty_report)
    code, out, _ = call(["verify", "--group", "C4", "--set", "(1);(3)"], capsys)
    assert code == 1
    assert "MISSING 1" in out


def _empty_report(g):
    from cayleydih.autgrp import RegularSubgroupReport, automorphism_group

    return RegularSubgroupReport(automorphism_group(g), [])


def test_build_round_trip(tmp_path, capsys):
    f = tmp_path / "c6.txt"
    code, out, _ = call(["build", "--group", "C6", "--set", "(1);(5)", "--out", str(f)], capsys)
    assert code == 0
    first = f.read_bytes()
    g = read_graph(f)
    assert to_text(g).encode() == first
    code, out, _ = call(["build", "--group", "C6", "--set", "(1);(5)"], capsys)
    assert out.encode() == first


def test_counterexample(capsys):
    code, out, _ = call(["counterexample"], capsys)
    assert code == 0
    assert "REGULAR SUBGROUPS 1" in out.splitlines()
    assert "TYPE C9xC3" in out.splitlines()
    assert "VERTICES 27 EDGES 54" in out.splitlines()


def test_corollary_types(capsys):
    code, out, _ = call(["corollary", "--group", "C4xC2", "--set", "(1,0);(3,0);(0,1)"], capsys)
    assert code == 0
    types = [l for l in out.splitlines() if l.startswith("TYPE ")]
    assert sorted(types) == ["TYPE dih(C2xC2)", "TYPE dih(C4)"]


def test_thm3_no_witness(capsys):
    code, out, _ = call(["thm3", "--group", "dih(C4)", "--set", "x(0);x(1)", "--factor", "none"], capsys)
    assert code == 0
    assert "WITNESS none" in out.splitlines()


def test_thm3_with_witness(capsys):
    code, out, _ = call(["thm3", "--group", "dih(C4)", "--set", "x(0);x(1)", "--factor", "0"], capsys)
    assert code == 0
    lines = out.splitlines()
    assert "K 2" in lines and "WITNESS x(0)" in lines and "TYPE C8" in lines


def test_thm3_all_witnesses(capsys):
    argv = ["thm3", "--group", "dih(C4)", "--set", "x(0);x(1)", "--factor", "0", "--all-witnesses"]
    code, out, _ = call(argv, capsys)
    lines = out.splitlines()
    assert "WITNESSES 2" in lines and "USING x(0)" in lines


def test_thm2_default_factor(capsys):
    code, out, _ = call(["thm2", "--group", "C2xC3", "--set", "(1,1);(1,2)"], capsys)
    assert code == 0
    assert out.splitlines()[:2] == ["FACTOR 0 K 1", "TYPE dih(C3)"]
    assert "VERIFIED regular" in out


def test_autgrp_and_regular_from_file(tmp_path, capsys):
    f = tmp_path / "k33.txt"
    call(["build", "--group", "dih(C3)", "--set", "x(0);x(1);x(2)", "--out", str(f)], capsys)
    code, out, _ = call(["autgrp", "--graph", str(f)], capsys)
    assert code == 0 and "AUT ORDER 72" in out
    code, out, _ = call(["regular", "--graph", str(f)], capsys)
    assert code == 0 and "REGULAR SUBGROUPS 8" in out


def test_verify(capsys):
    code, out, _ = call(["verify", "--group", "C4xC2", "--set", "(1,0);(3,0);(0,1)"], capsys)
    assert code == 0
    assert "MISSING 0" in out
    code, out, _ = call(["verify", "--group", "dih(C4)", "--set", "x(0);x(1)"], capsys)
    assert code == 0
    assert "CHECK thm3 factor none no-witness" in out
    assert "CHECK thm3 factor 0 C8 found" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["counterexample"],
        ["regular", "--group", "C6", "--set", "(1);(5)"],
        ["corollary", "--group", "C8xC4xC2", "--set", "(1,0,0);(7,0,0);(0,1,0);(0,3,0)"],
    ],
)
def test_reports_are_deterministic(argv):
    a = run(parse_inputs(argv))
    b = run(parse_inputs(argv))
    assert a == b


def test_module_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "cayleydih", "build", "--group", "C4", "--set", "(1);(3)"],
        capture_output=True,
        text=True,
    )
    assert out.returncode == 0
    assert out.stdout.startswith("4 4\n")
