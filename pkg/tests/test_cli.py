from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from clusterwp import cli
from clusterwp.surface import torus
from clusterwp.verify import Report

EX1 = json.dumps({"n": 3, "Z": [[0, 1, -1], [-1, 0, 1], [1, -1, 0]], "variables": ["f1", "f2", "f3"]})


def run(*argv):
    buf = io.StringIO()
    status = cli.run(list(argv), stdout=buf)
    return status, json.loads(buf.getvalue())


class TestMutate:
    def test_cyclic3(self):
        status, out = run("mutate", "--input", EX1, "--word", "0")
        assert status == 0
        assert out["display"][0] == "(f2 + f3)/f1"
        assert out["Z"] == [[0, -1, 1], [1, 0, 0], [-1, 0, 0]]
        assert out["history"] == [0]

    def test_roundtrip_through_file(self, tmp_path):
        _, out = run("mutate", "--input", EX1, "--word", "[0, 1]")
        path = tmp_path / "seed.json"
        path.write_text(json.dumps(out))
        status, back = run("mutate", "--input", str(path), "--word", "1,0")
        assert status == 0 and back["variables"] == ["f1", "f2", "f3"]

    def test_bare_matrix_input(self):
        status, out = run("mutate", "--input", "[[0, 2], [-2, 0]]", "--word", "0")
        assert status == 0 and out["display"][0] == "(f2^2 + 1)/f1"

    @pytest.mark.parametrize("argv", [
        ("mutate", "--input", EX1, "--word", "3"),
        ("mutate", "--input", EX1, "--word", "x"),
        ("mutate", "--input", "[[0, 1], [1, 0]]"),
        ("mutate", "--input", "/nonexistent/seed.json"),
        ("mutate",),
        ("mutate", "--input", EX1, "--trials", "0"),
    ])
    def test_bad_input(self, argv):
        status, out = run(*argv)
        assert status == 2 and "error" in out


class TestSurfaceCommands:
    def test_z_of(self):
        status, out = run("z-of", "--surface", "torus1")
        assert status == 0 and out["Z"][0][1] == -2 and out["edges"] == ["a", "b", "c"]

    def test_z_of_from_input(self):
        status, out = run("z-of", "--input", torus(1).to_json())
        assert status == 0 and out["Z"][0][1] == -2

    def test_flip_two_moves_torus2(self):
        status, out = run("flip", "--surface", "torus2", "--word", "d0,h0")
        assert status == 0
        assert out["labels"]["d0"] == "(h0^2 + v0*v1)/d0"
        assert len(out["matrices"]) == 3

    def test_flip_disallowed(self):
        status, out = run("flip", "--surface", "sphere3", "--word", "a")
        assert status == 2 and "not allowed" in out["error"]

    def test_flip_unknown_edge(self):
        status, _ = run("flip", "--surface", "torus1", "--word", "zz")
        assert status == 2

    def test_builders(self):
        status, out = run("builders")
        names = {b["name"] for b in out["builders"]}
        assert status == 0 and {"sphere3", "torus1", "genus2"} <= names
        status, out = run("builders", "torus1")
        assert status == 0 and out["pairing"] == [[0, 4], [1, 5], [3, 2]]
        status, _ = run("builders", "klein")
        assert status == 2


class TestForms:
    def test_form_basis(self):
        status, out = run("form-basis", "--input", "[[0,1,-1],[-1,0,1],[1,-1,0]]")
        assert status == 0 and out["r"] == 1 and out["nonzero_blocks"] == 1
        assert out["basis"][0][0] == ["0", "1", "-1"]

    def test_poisson_solve(self):
        status, out = run("poisson-solve", "--input", "[[0,1,-1],[-1,0,1],[1,-1,0]]")
        assert status == 0 and out["dimension"] == 0
        status, out = run("poisson-solve", "--input", "[[0,1],[-1,0]]")
        assert out["dimension"] == 1


class TestVerify:
    @pytest.mark.parametrize("battery", ["corank", "representative", "shear-tau", "thm34"])
    def test_batteries_pass(self, battery):
        status, out = run("verify", battery, "--surface", "torus1", "--random-words", "3", "--seed", "5")
        assert status == 0 and out["pass"] and out["checks"] >= 1

    def test_pullback_from_matrix(self):
        status, out = run("verify", "pullback", "--input", "[[0,1,-1],[-1,0,1],[1,-1,0]]",
                          "--random-words", "2", "--trials", "3")
        assert status == 0 and out["pass"]

    def test_all_full(self):
        status, out = run("verify", "all", "--surface", "sphere4", "--random-words", "2", "--full",
                          "--trials", "2")
        checks = {r["check"] for r in out["reports"]}
        assert status == 0 and checks == {"corank", "representative", "shear-tau", "thm34", "pullback"}
        assert all(set(r) == {"check", "surface", "word", "pass", "witness"} for r in out["reports"])

    def test_all_skips_shear_on_non_perfect(self):
        status, out = run("verify", "all", "--surface", "sphere3", "--full", "--trials", "2")
        assert status == 0 and "shear-tau" not in {r["check"] for r in out["reports"]}

    def test_shear_on_non_perfect_is_input_error(self):
        status, _ = run("verify", "shear-tau", "--surface", "sphere3")
        assert status == 2

    def test_deterministic(self):
        argv = ("verify", "thm34", "--surface", "genus2", "--random-words", "3", "--seed", "9", "--full")
        assert run(*argv) == run(*argv)

    def test_thm34_battery_torus1(self):
        buf = io.StringIO()
        argv = ["verify", "thm34", "--surface", "torus1", "--random-words", "50", "--max-len", "12", "--seed", "7"]
        assert cli.run(argv, stdout=buf) == 0
        again = io.StringIO()
        cli.run(argv, stdout=again)
        assert buf.getvalue() == again.getvalue()

    def test_failure_witness_has_matrix(self, monkeypatch):
        monkeypatch.setattr(cli, "corank_check",
                            lambda tri: Report("corank", tri.name, False))
        status, out = run("verify", "corank", "--surface", "torus1", "--word", "a")
        assert status == 1
        fail = out["failures"][0]
        assert fail["word"] == ["a"] and fail["witness"]["Z"] == [[0, 2, -2], [-2, 0, 2], [2, -2, 0]]

    def test_failure_exit_status(self, monkeypatch):
        monkeypatch.setattr(cli, "thm34_check",
                            lambda tri, word: Report("thm34", tri.name, False, list(word), {"step": 0}))
        status, out = run("verify", "thm34", "--surface", "torus1")
        assert status == 1 and not out["pass"] and out["failures"][0]["witness"] == {"step": 0}

    def test_missing_surface(self):
        status, _ = run("verify", "corank")
        assert status == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "clusterwp", "z-of", "--surface", "sphere3", "--json-indent", "2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["Z"] == [[0, 0, 0]] * 3


def test_usage_error_status():
    assert cli.run(["no-such-command"], stdout=io.StringIO()) == 2
