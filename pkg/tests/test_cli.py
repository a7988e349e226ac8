"""CLI behaviour: outputs, schemas, exit codes, determinism."""

import json
import subprocess
import sys

ROTATION_DATUM = {
    "schema": 1,
    "datum": {
        "n": 1,
        "even": {"free_rank": 1, "relations": []},
        "odd": {"free_rank": 1, "relations": []},
        "endos": [{"even": [[1]], "odd": [[1]]}],
    },
}

TORSION_DATUM = {
    "schema": 1,
    "datum": {
        "n": 1,
        "even": {"free_rank": 1, "relations": [[2]]},
        "odd": {"free_rank": 0, "relations": []},
        "endos": [{"even": [[1]], "odd": []}],
    },
}

TORUS2_DATUM = {
    "schema": 1,
    "datum": {
        "n": 2,
        "even": {"free_rank": 1, "relations": []},
        "odd": {"free_rank": 0, "relations": []},
        "endos": [
            {"even": [[1]], "odd": []},
            {"even": [[1]], "odd": []},
        ],
    },
}


def run_cli(args, stdin_obj=None):
    payload = json.dumps(stdin_obj).encode() if stdin_obj is not None else b""
    proc = subprocess.run(
        [sys.executable, "-m", "pvtower.cli", *args],
        input=payload,
        capture_output=True,
    )
    return proc.returncode, proc.stdout.decode(), proc.stderr.decode()


class TestRank1:
    def test_rotation_json(self):
        code, out, _ = run_cli(["rank1", "--format", "json"], ROTATION_DATUM)
        assert code == 0
        parsed = json.loads(out)
        assert parsed["K0"] == "Z^2"
        assert parsed["K1"] == "Z^2"
        assert parsed["ambiguous"] is False
        assert parsed["schema"] == 1

    def test_text_mode(self):
        code, out, _ = run_cli(["rank1"], ROTATION_DATUM)
        assert code == 0
        assert "K0 = Z^2" in out

    def test_strict_ambiguous_exit_code(self):
        code, out, _ = run_cli(["rank1", "--format", "json", "--strict"], TORSION_DATUM)
        assert code == 3
        assert json.loads(out)["ambiguous"] is True

    def test_ambiguous_without_strict_exits_zero(self):
        code, out, _ = run_cli(["rank1", "--format", "json"], TORSION_DATUM)
        assert code == 0
        assert json.loads(out)["ambiguous"] is True


class TestValidation:
    def test_malformed_json(self):
        proc = subprocess.run(
            [sys.executable, "-m", "pvtower.cli", "rank1"],
            input=b"not json",
            capture_output=True,
        )
        assert proc.returncode == 2
        assert "malformed JSON" in proc.stderr.decode()

    def test_unknown_field_named(self):
        bad = json.loads(json.dumps(ROTATION_DATUM))
        bad["datum"]["even"]["bogus"] = 1
        code, _, err = run_cli(["rank1"], bad)
        assert code == 2
        assert "bogus" in err

    def test_wrong_schema_version(self):
        bad = json.loads(json.dumps(ROTATION_DATUM))
        bad["schema"] = 2
        code, _, err = run_cli(["rank1"], bad)
        assert code == 2
        assert "schema" in err

    def test_non_commuting_datum_rejected(self):
        bad = {
            "schema": 1,
            "datum": {
                "n": 2,
                "even": {"free_rank": 2, "relations": []},
                "odd": {"free_rank": 0, "relations": []},
                "endos": [
                    {"even": [[1, 1], [0, 1]], "odd": []},
                    {"even": [[1, 0], [1, 1]], "odd": []},
                ],
            },
        }
        code, _, err = run_cli(["tower"], bad)
        assert code == 2
        assert "commute" in err

    def test_missing_field_named(self):
        bad = {"schema": 1, "datum": {"n": 1, "even": {"free_rank": 1, "relations": []}}}
        code, _, err = run_cli(["rank1"], bad)
        assert code == 2
        assert "odd" in err


class TestTowerCommand:
    def test_round_trip_schema(self):
        code, out, _ = run_cli(["tower", "--format", "json"], TORUS2_DATUM)
        assert code == 0
        parsed = json.loads(out)
        assert parsed["schema"] == 1
        assert parsed["final"] == {"even": "Z^2", "odd": "Z^2"}
        assert parsed["euler"] == 0
        assert parsed["levels"][0]["level"] == 1
        for entry in parsed["cohomology"]:
            assert set(entry) == {"spot", "even", "odd"}

    def test_determinism(self):
        runs = [run_cli(["tower", "--format", "json"], TORUS2_DATUM) for _ in range(2)]
        assert runs[0] == runs[1]


class TestOtherCommands:
    def test_homog_closed_form(self):
        code, out, _ = run_cli(
            ["homog", "--series", "A", "--n", "2", "--k", "1", "--format", "json"]
        )
        assert code == 0
        parsed = json.loads(out)
        assert parsed["even"] == "Z"
        assert parsed["odd"] == "Z"
        assert parsed["witnessed"] is True

    def test_homog_requires_flags(self):
        code, _, err = run_cli(["homog", "--series", "A", "--n", "2"])
        assert code == 2
        assert "--k" in err

    def test_homog_invalid_pair(self):
        code, _, err = run_cli(
            ["homog", "--series", "B", "--n", "3", "--k", "1"]
        )
        assert code == 2

    def test_oracle(self):
        code, out, _ = run_cli(["oracle", "--n", "3", "--format", "json"])
        assert code == 0
        assert json.loads(out)["match"] is True

    def test_koszul_symbolic_report(self):
        code, out, _ = run_cli(
            ["koszul", "--n", "3", "--format", "json", "--trials", "4", "--seed", "7"]
        )
        assert code == 0
        parsed = json.loads(out)
        assert parsed["augmentation_onto_Z"] is True
        assert all(s["consistent"] for s in parsed["spots"])

    def test_koszul_datum_cohomology(self):
        code, out, _ = run_cli(["koszul", "--format", "json"], TORUS2_DATUM)
        assert code == 0
        parsed = json.loads(out)
        assert parsed["cohomology"][0] == {"spot": 0, "even": "Z", "odd": "0"}
        assert parsed["cohomology"][1]["even"] == "Z^2"

    def test_shape_series_weyl(self):
        code, out, _ = run_cli(
            ["shape", "--series", "A", "--n", "2", "--format", "json"]
        )
        assert code == 0
        parsed = json.loads(out)
        assert parsed["w"] == 6
        mults = [
            o["multiplicity"]
            for o in parsed["objects"]
            if o["kind"] == "trivial-coefficient"
        ]
        assert mults == [6, 12, 6]

    def test_shape_dual_triangle(self):
        code, out, _ = run_cli(
            ["shape", "--n", "1", "--w", "2", "--dual", "--format", "json"]
        )
        assert code == 0
        parsed = json.loads(out)
        labels = [o["label"] for o in parsed["objects"]]
        assert labels == ["C^2 (x) t(A)", "S^1 C^2 (x) t(A)", "A >< Ghat"]


def test_color_env_never_is_plain():
    import os

    env = dict(os.environ, PV_COLOR="never")
    proc = subprocess.run(
        [sys.executable, "-m", "pvtower.cli", "rank1"],
        input=json.dumps(ROTATION_DATUM).encode(),
        capture_output=True,
        env=env,
    )
    assert b"\x1b[" not in proc.stdout
