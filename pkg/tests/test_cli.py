import json
import subprocess
import sys

import pytest

from cy2stab import cli, pimod


def run_inproc(argv, capsys):
    code = cli.run(argv)
    out = capsys.readouterr().out
    return code, out


def run_subprocess(argv):
    proc = subprocess.run(
        [sys.executable, "-m", "cy2stab.cli", *argv],
        capture_output=True,
        text=True,
    )
    return proc.returncode, proc.stdout


class TestHomdim:
    def test_example(self, capsys):
        code, out = run_inproc(["homdim", "--s", "0", "--t", "2"], capsys)
        assert code == 0
        assert json.loads(out) == {"dims": {"0": 3, "1": 1, "2": 0}}

    def test_shifted(self, capsys):
        code, out = run_inproc(
            ["homdim", "--s", "-1", "--t", "0", "--shift-s", "1"], capsys
        )
        assert code == 0
        assert json.loads(out) == {"dims": {"1": 2}}

    def test_byte_identical(self):
        code1, out1 = run_subprocess(["homdim", "--s", "0", "--t", "2"])
        code2, out2 = run_subprocess(["homdim", "--s", "0", "--t", "2"])
        assert code1 == code2 == 0
        assert out1 == out2


class TestKclass:
    def test_euler(self, capsys):
        code, out = run_inproc(
            ["kclass", "--op", "euler", "--u", '{"a":1,"b":0}', "--v", '{"a":-1,"b":1}'],
            capsys,
        )
        assert code == 0 and json.loads(out) == {"euler": -2}

    def test_twist(self, capsys):
        code, out = run_inproc(
            ["kclass", "--op", "twist", "--u", '{"a":1,"b":0}', "--v", '{"a":1,"b":1}'],
            capsys,
        )
        assert code == 0 and json.loads(out) == {"class": {"a": -1, "b": 1}}

    def test_sign_p(self, capsys):
        code, out = run_inproc(
            ["kclass", "--op", "sign-p", "--u", '{"a":1,"b":0}', "--v", '{"a":-1,"b":1}'],
            capsys,
        )
        assert code == 0 and json.loads(out) == {"s": -1, "p": 1}

    def test_invalid_class(self, capsys):
        code, out = run_inproc(
            ["kclass", "--op", "twist", "--u", '{"a":2,"b":0}', "--v", '{"a":1,"b":1}'],
            capsys,
        )
        assert code == 2
        assert "error" in json.loads(out)


class TestTwist:
    def test_rule(self, capsys):
        code, out = run_inproc(["twist", "--t", "0", "--s", "1"], capsys)
        assert code == 0
        assert json.loads(out) == {"normal_form": {"v": -1, "comps": {"-1": [1, 0]}}}

    def test_unsupported_distance(self, capsys):
        code, out = run_inproc(["twist", "--t", "0", "--s", "5"], capsys)
        assert code == 2


class TestReduce:
    def test_standard(self, capsys):
        code, out = run_inproc(["reduce", "--E", "O(0)[1]", "--F", "O(1)[0]"], capsys)
        assert code == 0
        data = json.loads(out)
        assert data["final_pair"] == {"E": "O(0)[0]", "F": "O(-1)[1]"}

    def test_inadmissible(self, capsys):
        code, out = run_inproc(["reduce", "--E", "O(0)[0]", "--F", "O(0)[0]"], capsys)
        assert code == 2

    def test_parse_error(self, capsys):
        code, out = run_inproc(["reduce", "--E", "garbage", "--F", "O(0)"], capsys)
        assert code == 2


class TestInstances:
    def test_hn(self, capsys):
        instance = json.dumps(
            {
                "module": {
                    "d": [1, 1],
                    "A1": [[1]],
                    "A2": [[0]],
                    "B1": [[0]],
                    "B2": [[0]],
                    "p": 3,
                },
                "charge": {
                    "z_S0": [1, 1, 1, 1],
                    "z_S1": [-1, 1, 1, 1],
                },
            }
        )
        code, out = run_inproc(["hn", "--instance", instance], capsys)
        assert code == 0
        data = json.loads(out)
        assert not data["semistable"]
        assert [f["module"]["d"] for f in data["factors"]] == [[0, 1], [1, 0]]

    def test_jh(self, capsys):
        instance = json.dumps(
            {
                "module": {"d": [2, 0], "p": 3},
                "charge": {"z_S0": [1, 1, 1, 1], "z_S1": [-1, 1, 1, 1]},
            }
        )
        code, out = run_inproc(["jh", "--instance", instance], capsys)
        assert code == 0
        data = json.loads(out)
        assert len(data["blocks"]) == 1

    def test_spectral(self, capsys):
        instance = json.dumps(
            {
                "H0": {"d": [1, 0], "p": 3},
                "H1": {"d": [1, 0], "p": 3},
                "e": [[[1]], [[]]],
            }
        )
        code, out = run_inproc(["spectral", "--instance", instance], capsys)
        assert code == 0
        data = json.loads(out)
        assert data["spherical"] is True
        assert data["self_hom"]["1"] == 0 if "1" in data["self_hom"] else True

    def test_file_instance(self, tmp_path, capsys):
        path = tmp_path / "inst.json"
        path.write_text(
            json.dumps(
                {
                    "module": {"d": [1, 0], "p": 3},
                    "charge": {"z_S0": [1, 1, 1, 1], "z_S1": [-1, 1, 1, 1]},
                }
            )
        )
        code, out = run_inproc(["hn", "--instance", str(path)], capsys)
        assert code == 0


class TestRealize:
    def test_supported(self, capsys):
        code, out = run_inproc(["realize", "--t", "1"], capsys)
        assert code == 0
        data = json.loads(out)
        assert data["supported"] and data["module"]["d"] == [1, 2]

    def test_unsupported(self, capsys):
        code, out = run_inproc(["realize", "--t", "9", "--bound", "3"], capsys)
        assert code == 0
        assert not json.loads(out)["supported"]


class TestVerify:
    def test_mukai_suite_passes(self, capsys):
        code, out = run_inproc(["verify", "--suite", "mukai", "--seed", "7"], capsys)
        assert code == 0
        data = json.loads(out)
        assert data["violations"] == [] and data["seed"] == 7
        assert data["checked"] > 100

    def test_violation_maps_to_exit_3(self, capsys, monkeypatch):
        def fake_suite(seed, p, max_dim=2):
            return {"suite": "fake", "seed": seed, "checked": 1,
                    "violations": [{"instance": "x"}]}

        monkeypatch.setitem(cli._SUITES, "mukai", fake_suite)
        code, out = run_inproc(["verify", "--suite", "mukai"], capsys)
        assert code == 3


class TestUsage:
    def test_unknown_command(self):
        code, _ = run_subprocess(["frobnicate"])
        assert code == 64

    def test_version(self, capsys):
        with pytest.raises(SystemExit):
            cli._build_parser().parse_args(["--version"])
        out = capsys.readouterr().out
        assert "schema" in out

    def test_out_path(self, tmp_path, capsys):
        target = tmp_path / "out.json"
        code = cli.run(["homdim", "--s", "0", "--t", "0", "--out", str(target)])
        assert code == 0
        assert json.loads(target.read_text()) == {"dims": {"0": 1, "1": 0, "2": 1}}
