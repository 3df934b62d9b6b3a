import io
import subprocess
import sys

import pytest

from blockcheck import parse_dimacs, is_satisfiable, is_set_blocked, is_super_blocked
from blockcheck.cli import run

from conftest import clause, formula

BLOCKED_3 = "p cnf 3 3\n-1 3 0\n-2 -1 0\n1 2 0\n"
SETBLOCKED = "p cnf 2 2\n-1 2 0\n-2 1 0\n"
FULL_BLOCKING = "p cnf 3 4\n3 2 -1 0\n-2 -3 0\n-2 1 0\n1 2 0\n"
AT_INSTANCE = "p cnf 4 4\n-1 3 0\n-2 3 0\n-4 3 0\n1 2 0\n"

# Two inert squares over disjoint variable pairs plus a bridging clause:
# nothing is removable, and the bridge sees two external variables.
CAPPED = (
    "p cnf 4 9\n"
    "1 2 0\n-1 2 0\n1 -2 0\n-1 -2 0\n"
    "3 4 0\n-3 4 0\n3 -4 0\n-3 -4 0\n"
    "1 3 0\n"
)

# The square keeps (x, y) unblocked under every restriction, while the two
# tails give it external variables.
REFUTABLE = "p cnf 4 6\n1 2 0\n-1 2 0\n1 -2 0\n-1 -2 0\n-1 3 0\n-2 4 0\n"

# FULL_BLOCKING with one more environment clause over a fresh variable; the
# last clause stays super-blocked but now sees two external variables.
FULL_BLOCKING_WIDE = "p cnf 5 5\n3 2 -1 0\n-2 -3 0\n-2 1 0\n-2 -3 5 0\n1 2 0\n"

THREE_SQUARE = "p cnf 2 3\n1 2 0\n-1 2 0\n1 -2 0\n"


def put(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


class TestCheckVerdicts:
    def test_literal_blocked(self, tmp_path, capsys):
        path = put(tmp_path, "f.cnf", BLOCKED_3)
        assert run(["check", path, "--property", "bc", "--clause", "1 2 0"]) == 0
        assert capsys.readouterr().out == "BLOCKED witness-literal 2\n"

    def test_literal_not_blocked(self, tmp_path, capsys):
        path = put(tmp_path, "f.cnf", SETBLOCKED)
        assert run(["check", path, "--property", "bc", "--clause", "1 2 0"]) == 1
        assert capsys.readouterr().out == "NOT-BLOCKED\n"

    def test_set_blocked_witness(self, tmp_path, capsys):
        path = put(tmp_path, "f.cnf", SETBLOCKED)
        assert run(["check", path, "--property", "setbc", "--clause", "1 2 0"]) == 0
        assert capsys.readouterr().out == "BLOCKED witness-set 1 2\n"

    def test_set_blocked_refused(self, tmp_path, capsys):
        path = put(tmp_path, "f.cnf", AT_INSTANCE)
        assert run(["check", path, "--property", "setbc", "--clause", "1 2 4 0"]) == 1
        assert capsys.readouterr().out == "NOT-BLOCKED\n"

    def test_super_blocked_prints_the_restriction_table(self, tmp_path, capsys):
        path = put(tmp_path, "f.cnf", FULL_BLOCKING)
        assert run(["check", path, "--property", "supbc", "--clause", "1 2 0"]) == 0
        assert capsys.readouterr().out == (
            "BLOCKED witness-per-tau 2\n"
            "tau -3 0 set 1 2 0\n"
            "tau 3 0 set 1 0\n"
        )

    def test_super_blocked_reports_the_failing_restriction(self, tmp_path, capsys):
        path = put(tmp_path, "f.cnf", AT_INSTANCE)
        assert run(["check", path, "--property", "supbc", "--clause", "1 2 4 0"]) == 1
        assert capsys.readouterr().out == "NOT-BLOCKED failing-tau -3\n"

    def test_clause_index_selects_from_the_file(self, tmp_path, capsys):
        path = put(tmp_path, "f.cnf", FULL_BLOCKING)
        assert run(["check", path, "--property", "supbc", "--clause-index", "3"]) == 0
        assert capsys.readouterr().out.startswith("BLOCKED witness-per-tau 2\n")

    def test_cap_yields_unknown(self, tmp_path, capsys):
        path = put(tmp_path, "f.cnf", CAPPED)
        rc = run(["check", path, "--property", "supbc", "--clause", "1 3 0", "--ext-cap", "1"])
        assert rc == 2
        assert capsys.readouterr().out == "UNKNOWN cap-exceeded 2\n"

    def test_incomplete_sampling_cannot_refute_a_blocked_clause(self, tmp_path, capsys):
        path = put(tmp_path, "f.cnf", FULL_BLOCKING_WIDE)
        rc = run(["check", path, "--property", "supbc", "--clause", "1 2 0",
                  "--ext-cap", "1", "--incomplete", "3"])
        assert rc == 2
        assert capsys.readouterr().out == "UNKNOWN sampled 3\n"

    def test_incomplete_sampling_refutes_when_a_restriction_fails(self, tmp_path, capsys):
        path = put(tmp_path, "f.cnf", REFUTABLE)
        args = ["check", path, "--property", "supbc", "--clause", "1 2 0",
                "--ext-cap", "1", "--incomplete", "4", "--seed", "5"]
        assert run(args) == 1
        first = capsys.readouterr().out
        assert first.startswith("NOT-BLOCKED failing-tau ")
        assert run(args) == 1
        assert capsys.readouterr().out == first  # seeded, so reproducible

    def test_variable_elimination_check(self, tmp_path, capsys):
        path = put(tmp_path, "f.cnf", FULL_BLOCKING)
        assert run(["check", path, "--property", "varelim", "--clause", "1 2 0"]) == 0
        assert capsys.readouterr().out == "BLOCKED\n"
        path = put(tmp_path, "g.cnf", AT_INSTANCE)
        assert run(["check", path, "--property", "varelim", "--clause", "1 2 4 0"]) == 1
        assert capsys.readouterr().out == "NOT-BLOCKED\n"

    def test_semantic_oracle_check(self, tmp_path, capsys):
        path = put(tmp_path, "f.cnf", FULL_BLOCKING)
        assert run(["check", path, "--property", "sem-oracle", "--clause", "1 2 0"]) == 0
        assert capsys.readouterr().out == "BLOCKED\n"

    def test_redundancy_oracle_check(self, tmp_path, capsys):
        path = put(tmp_path, "f.cnf", AT_INSTANCE)
        assert run(["check", path, "--property", "redundant-oracle", "--clause", "1 2 4 0"]) == 0
        assert capsys.readouterr().out == "REDUNDANT\n"
        assert run(["check", path, "--property", "redundant-oracle", "--clause", "-3 0"]) == 1
        assert capsys.readouterr().out == "NOT-REDUNDANT\n"

    def test_redundancy_properties_report_lift_witnesses(self, tmp_path, capsys):
        path = put(tmp_path, "f.cnf", BLOCKED_3)
        assert run(["check", path, "--property", "rt", "--clause", "1 2 0"]) == 0
        assert capsys.readouterr().out == "REDUNDANT witness-literal 2\n"
        path = put(tmp_path, "g.cnf", AT_INSTANCE)
        assert run(["check", path, "--property", "at", "--clause", "1 2 4 0"]) == 0
        assert capsys.readouterr().out == "REDUNDANT\n"
        assert run(["check", path, "--property", "s", "--clause", "3 0"]) == 1
        assert capsys.readouterr().out == "NOT-REDUNDANT\n"

    def test_reads_stdin(self, tmp_path, capsys, monkeypatch):
        monkeypatch.setattr(sys, "stdin", io.StringIO(BLOCKED_3))
        assert run(["check", "-", "--property", "bc", "--clause", "1 2 0"]) == 0
        assert capsys.readouterr().out == "BLOCKED witness-literal 2\n"


class TestClassifyCommand:
    def test_matrix_to_stdout(self, tmp_path, capsys):
        path = put(tmp_path, "f.cnf", THREE_SQUARE)
        assert run(["classify", path, "--property", "bc,setbc", "--property", "supbc"]) == 0
        out = capsys.readouterr().out.splitlines()
        assert out[0] == "clause\tbc\tsetbc\tsupbc"
        assert out[1] == "1 2 0\tno\tyes\tyes"
        assert out[2] == "-1 2 0\tyes\tyes\tyes"
        assert out[3] == "1 -2 0\tyes\tyes\tyes"
        assert len(out) == 4

    def test_matrix_to_file_and_parallel_determinism(self, tmp_path, capsys):
        path = put(tmp_path, "f.cnf", FULL_BLOCKING)
        out1 = str(tmp_path / "m1.tsv")
        out2 = str(tmp_path / "m2.tsv")
        assert run(["classify", path, "--out", out1]) == 0
        assert run(["classify", path, "--jobs", "3", "--out", out2]) == 0
        text = (tmp_path / "m1.tsv").read_text()
        assert text == (tmp_path / "m2.tsv").read_text()
        assert text.splitlines()[0].startswith("clause\tt\ts\tbc\t")
        assert len(text.splitlines()) == 5

    def test_unknown_property_is_a_usage_error(self, tmp_path, capsys):
        path = put(tmp_path, "f.cnf", SETBLOCKED)
        assert run(["classify", path, "--property", "bc,qbf"]) == 64
        assert capsys.readouterr().err.startswith("error:")


class TestEliminateAndReconstruct:
    def test_round_trip_through_files(self, tmp_path, capsys):
        src = put(tmp_path, "f.cnf", BLOCKED_3)
        simp = str(tmp_path / "simp.cnf")
        tracef = str(tmp_path / "steps.trace")
        rc = run(["eliminate", src, "--property", "bc", "--out", simp, "--trace", tracef])
        assert rc == 0
        assert (tmp_path / "simp.cnf").read_text() == "p cnf 0 0\n"
        assert (tmp_path / "steps.trace").read_text() == (
            "t blockcheck 1\n"
            "d bc -1 3 0 w 3 0\n"
            "d bc -1 -2 0 w -1 0\n"
            "d bc 1 2 0 w 1 0\n"
        )
        model = put(tmp_path, "m.txt", "v 0\n")
        out = str(tmp_path / "repaired.txt")
        rc = run(["reconstruct", src, "--trace", tracef, "--model", model, "--out", out])
        assert rc == 0
        assert (tmp_path / "repaired.txt").read_text() == "v 1 -2 3 0\n"

    def test_eliminate_respects_order_and_rounds(self, tmp_path, capsys):
        src = put(tmp_path, "f.cnf", "p cnf 4 3\n1 2 0\n-1 3 0\n-2 4 0\n")
        rc = run(["eliminate", src, "--property", "bc", "--rounds", "1"])
        assert rc == 0
        assert capsys.readouterr().out == "p cnf 2 1\n1 2 0\n"
        rc = run(["eliminate", src, "--property", "bc"])
        assert rc == 0
        assert capsys.readouterr().out == "p cnf 0 0\n"

    def test_compact_trace_still_reconstructs(self, tmp_path, capsys):
        src = put(tmp_path, "f.cnf", FULL_BLOCKING)
        tracef = str(tmp_path / "steps.trace")
        rc = run(["eliminate", src, "--property", "supbc", "--compact",
                  "--out", str(tmp_path / "simp.cnf"), "--trace", tracef])
        assert rc == 0
        assert "wt " not in (tmp_path / "steps.trace").read_text()
        model = put(tmp_path, "m.txt", "v 0\n")
        rc = run(["reconstruct", src, "--trace", tracef, "--model", model])
        assert rc == 0
        lits = capsys.readouterr().out.split()
        assert lits[0] == "v" and lits[-1] == "0"
        a = {abs(int(t)): int(t) > 0 for t in lits[1:-1]}
        f = parse_dimacs(FULL_BLOCKING)
        assert all(any(a[abs(l)] == (l > 0) for l in c) for c in f)

    def test_reconstruct_mismatched_trace_fails(self, tmp_path, capsys):
        src = put(tmp_path, "f.cnf", BLOCKED_3)
        tracef = put(tmp_path, "bad.trace", "t blockcheck 1\nd bc 9 0 w 9 0\n")
        model = put(tmp_path, "m.txt", "v 0\n")
        assert run(["reconstruct", src, "--trace", tracef, "--model", model]) == 70
        assert capsys.readouterr().err.startswith("error:")

    def test_reconstruct_rejects_malformed_trace(self, tmp_path, capsys):
        src = put(tmp_path, "f.cnf", BLOCKED_3)
        tracef = put(tmp_path, "bad.trace", "not a trace\n")
        model = put(tmp_path, "m.txt", "v 0\n")
        assert run(["reconstruct", src, "--trace", tracef, "--model", model]) == 65


class TestOtherCommands:
    def test_encode_qbf_matches_library_output(self, tmp_path, capsys):
        path = put(tmp_path, "f.cnf", FULL_BLOCKING)
        assert run(["encode-qbf", path, "--clause", "1 2 0"]) == 0
        assert capsys.readouterr().out == (
            "p cnf 3 4\n"
            "a 3 0\n"
            "e 1 2 0\n"
            "-1 2 3 0\n"
            "1 -2 0\n"
            "1 2 0\n"
            "-2 -3 0\n"
        )

    def test_solve_brute(self, tmp_path, capsys):
        sat = put(tmp_path, "sat.cnf", "p cnf 2 1\n1 2 0\n")
        assert run(["solve-brute", sat]) == 0
        assert capsys.readouterr().out == "SAT\nv -1 2 0\n"
        unsat = put(tmp_path, "unsat.cnf", "p cnf 1 2\n1 0\n-1 0\n")
        assert run(["solve-brute", unsat]) == 1
        assert capsys.readouterr().out == "UNSAT\n"

    def test_solve_brute_cap(self, tmp_path, capsys):
        path = put(tmp_path, "f.cnf", "p cnf 4 1\n1 2 3 4 0\n")
        assert run(["solve-brute", path, "--cap", "2"]) == 70
        assert capsys.readouterr().err.startswith("error:")

    def test_gen_reduction_sat2setbc(self, tmp_path):
        src = put(tmp_path, "src.cnf", "p cnf 2 2\n1 0\n-1 2 0\n")
        out = str(tmp_path / "inst.cnf")
        assert run(["gen-reduction", "sat2setbc", src, "--out", out]) == 0
        text = (tmp_path / "inst.cnf").read_text()
        assert text.startswith("c reduction sat2setbc\nc map selectors ")
        assert "c map prime " in text
        f = parse_dimacs(text)
        c = parse_dimacs("p cnf 9 1\n" + (tmp_path / "inst.cnf.clause").read_text()).clauses[0]
        assert is_set_blocked(f, c) is not None  # the source was satisfiable

    def test_gen_reduction_unsat2ksupbc(self, tmp_path):
        src = put(tmp_path, "src.cnf", "p cnf 1 2\n1 0\n-1 0\n")
        out = str(tmp_path / "inst.cnf")
        side = str(tmp_path / "inst.clause")
        assert run(["gen-reduction", "unsat2ksupbc", src, "--out", out, "--clause-out", side]) == 0
        f = parse_dimacs((tmp_path / "inst.cnf").read_text())
        c_lits = [int(t) for t in (tmp_path / "inst.clause").read_text().split()[:-1]]
        assert is_super_blocked(f, c_lits, k=1) is not None

    def test_gen_reduction_qbf2supbc(self, tmp_path):
        src = put(tmp_path, "src.qdimacs", "p cnf 2 2\na 1 0\ne 2 0\n1 2 0\n-1 -2 0\n")
        out = str(tmp_path / "inst.cnf")
        assert run(["gen-reduction", "qbf2supbc", src, "--out", out]) == 0
        f = parse_dimacs((tmp_path / "inst.cnf").read_text())
        c_lits = [int(t) for t in (tmp_path / "inst.cnf.clause").read_text().split()[:-1]]
        assert is_super_blocked(f, c_lits) is not None  # the source QBF is true

    def test_gen_random_is_seeded(self, tmp_path):
        a = str(tmp_path / "a.cnf")
        b = str(tmp_path / "b.cnf")
        c = str(tmp_path / "c.cnf")
        assert run(["gen-random", "--seed", "7", "--out", a]) == 0
        assert run(["gen-random", "--seed", "7", "--out", b]) == 0
        assert run(["gen-random", "--seed", "8", "--out", c]) == 0
        ta = (tmp_path / "a.cnf").read_text()
        assert ta == (tmp_path / "b.cnf").read_text()
        assert ta != (tmp_path / "c.cnf").read_text()
        assert ta.splitlines()[0] == "c seed 7"
        f = parse_dimacs(ta)
        assert len(f) == 12 and max(f.variables()) <= 8

    def test_gen_random_sizes(self, tmp_path):
        out = str(tmp_path / "t.cnf")
        assert run(["gen-random", "--vars", "3", "--clauses", "5", "--width", "2",
                    "--seed", "1", "--out", out]) == 0
        f = parse_dimacs((tmp_path / "t.cnf").read_text())
        assert 1 <= len(f) <= 5  # duplicate draws collapse
        assert all(len(c) <= 2 for c in f)
        assert f.variables() <= {1, 2, 3}


class TestExitCodes:
    def test_usage_errors(self, tmp_path, capsys):
        path = put(tmp_path, "f.cnf", BLOCKED_3)
        cases = [
            ["check", path, "--property", "bc"],                                  # no clause
            ["check", path, "--property", "bc", "--clause", "1 0", "--clause-index", "0"],
            ["check", path, "--property", "bc", "--clause", "1 x 0"],
            ["check", path, "--property", "bc", "--clause", "1 0 2"],
            ["check", path, "--property", "bc", "--clause-index", "9"],
            ["check", path, "--property", "nosuch", "--clause", "1 0"],
            ["eliminate", path, "--property", "bc", "--rounds", "0"],
        ]
        for argv in cases:
            assert run(argv) == 64, argv
            assert capsys.readouterr().err.startswith("error:")

    def test_malformed_input_file(self, tmp_path, capsys):
        path = put(tmp_path, "f.cnf", "p cnf nonsense\n1 0\n")
        assert run(["check", path, "--property", "bc", "--clause", "1 0"]) == 65

    def test_strict_mode_enforces_the_header(self, tmp_path, capsys):
        path = put(tmp_path, "f.cnf", "p cnf 3 1\n-1 3 0\n-2 -1 0\n")
        with pytest.warns(UserWarning):
            assert run(["check", path, "--property", "bc", "--clause", "3 0"]) == 0
        capsys.readouterr()
        rc = run(["check", path, "--property", "bc", "--clause", "3 0", "--strict"])
        assert rc == 65

    def test_missing_file(self, capsys):
        assert run(["check", "/no/such/file.cnf", "--property", "bc", "--clause", "1 0"]) == 66
        assert capsys.readouterr().err.startswith("error:")

    def test_tautological_clause_argument(self, tmp_path, capsys):
        path = put(tmp_path, "f.cnf", BLOCKED_3)
        rc = run(["check", path, "--property", "varelim", "--clause", "1 -1 0"])
        assert rc == 64  # the elimination characterization rejects tautologies
        assert capsys.readouterr().err.startswith("error:")


def test_console_script_is_installed():
    proc = subprocess.run(
        ["blockcheck", "gen-random", "--seed", "3", "--vars", "4", "--clauses", "2"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0] == "c seed 3"
