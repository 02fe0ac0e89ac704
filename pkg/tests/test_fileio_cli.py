import json
from importlib.resources import files
from pathlib import Path

import pytest

from enritch import fileio
from enritch.cli import main
from enritch.diagonals import diagonal_quantaloid
from enritch.errors import SchemaError
from enritch.quantale import check_quantale_laws

DATA = Path(str(files("enritch") / "data"))


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestFileLoading:
    def test_quantale_round_trip(self, tmp_path):
        q = fileio.load_quantale(DATA / "lukasiewicz5.json")
        assert check_quantale_laws(q).passed
        out = tmp_path / "again.json"
        fileio.dump_quantale(q, out)
        assert json.loads(out.read_text()) == q.to_dict()

    def test_space_and_radius_round_trip(self, tmp_path):
        space = fileio.load_space(DATA / "two_point_partial.json")
        assert space.points == ("a", "b")
        out = tmp_path / "space.json"
        fileio.dump_space(space, out)
        assert fileio.load_space(out) == space

    def test_radius_function_alignment(self):
        space = fileio.load_space(DATA / "two_point_classical.json")
        mu = fileio.load_radius_function(DATA / "mu_13.json", space)
        assert [str(v) for v in mu.values] == ["1", "3"]

    def test_family_document(self):
        space = fileio.load_space(DATA / "two_point_classical.json")
        r, family = fileio.load_family(DATA / "family_no_witness.json", space)
        assert str(r) == "0"
        assert [(p, str(v)) for p, v in family] == [("a", "2"), ("b", "2")]

    def test_category_and_functor_documents(self, tmp_path, boolean):
        dq = diagonal_quantaloid(boolean)
        cat_doc = {
            "set": {"names": ["a", "b"], "types": ["1", "1"]},
            "hom": [["1", "1"], ["1", "1"]],
        }
        cat_path = tmp_path / "cat.json"
        cat_path.write_text(json.dumps(cat_doc))
        cat = fileio.load_category(cat_path, dq)
        assert cat.names == ("a", "b")

        fun_path = tmp_path / "fun.json"
        fun_path.write_text(json.dumps({"map": {"a": "b", "b": "a"}}))
        f = fileio.load_functor(fun_path, cat, cat)
        assert f.assignment == ("b", "a")

        pre_path = tmp_path / "pre.json"
        pre_path.write_text(json.dumps({"type": "1", "values": {"a": "0", "b": "0"}}))
        mu = fileio.load_presheaf(pre_path, cat)
        assert mu.values == (0, 0)

        rel_doc = {
            "source": {"names": ["x"], "types": ["1"]},
            "target": {"names": ["y"], "types": ["0"]},
            "entries": [["0"]],
        }
        rel_path = tmp_path / "rel.json"
        rel_path.write_text(json.dumps(rel_doc))
        rel = fileio.load_relation(rel_path, dq)
        assert rel.entries == ((0,),)

    def test_schema_errors(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{ not json")
        with pytest.raises(SchemaError) as err:
            fileio.read_json(bad)
        assert "line 1" in str(err.value)
        missing = tmp_path / "missing.json"
        missing.write_text(json.dumps({"points": ["a"]}))
        with pytest.raises(SchemaError):
            fileio.load_space(missing)
        with pytest.raises(SchemaError):
            fileio.read_json(tmp_path / "nope.json")

    def test_radius_function_name_mismatches(self, tmp_path):
        space = fileio.load_space(DATA / "two_point_classical.json")
        doc = tmp_path / "mu.json"
        doc.write_text(json.dumps({"r": "0", "values": {"a": "1"}}))
        with pytest.raises(SchemaError):
            fileio.load_radius_function(doc, space)
        doc.write_text(json.dumps({"r": "0", "values": {"a": "1", "b": "2", "zz": "3"}}))
        with pytest.raises(SchemaError):
            fileio.load_radius_function(doc, space)


class TestQuantaleCheckCommand:
    def test_bundled_instances_pass(self, capsys):
        for name in ("boolean", "lukasiewicz3", "lukasiewicz5", "nilmin5", "diamond"):
            code, out, err = run_cli(capsys, "quantale", "check", str(DATA / f"{name}.json"))
            assert code == 0, name
            report = json.loads(out)
            assert report["result"]["passed"] is True
            assert err.startswith("timing_ms=")

    def test_mutated_table_fails_with_witness(self, capsys):
        code, out, _ = run_cli(
            capsys, "quantale", "check", str(DATA / "mutated_lukasiewicz3.json")
        )
        assert code == 1
        report = json.loads(out)
        laws = {entry["law"]: entry for entry in report["result"]["laws"]}
        assert laws["tensor_associative"]["witness"] == "(0, 0, 1/2)"

    def test_schema_error_exit_code(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("[1, 2")
        code, out, _ = run_cli(capsys, "quantale", "check", str(bad))
        assert code == 2
        assert json.loads(out)["result"]["error"] == "schema"


class TestHullCommands:
    def test_member_pass_and_fail(self, capsys):
        space = str(DATA / "two_point_classical.json")
        code, out, _ = run_cli(capsys, "hull", "member", space, str(DATA / "mu_13.json"))
        assert code == 0
        assert json.loads(out)["result"] == {"tight": True, "failing_point": None}
        code, out, _ = run_cli(capsys, "hull", "member", space, str(DATA / "mu_23.json"))
        assert code == 1
        assert json.loads(out)["result"]["failing_point"] == "a"

    def test_tighten_writes_output(self, capsys, tmp_path):
        space = str(DATA / "two_point_classical.json")
        out_path = tmp_path / "tight.json"
        code, out, _ = run_cli(
            capsys, "hull", "tighten", space, str(DATA / "mu_33.json"),
            "--out", str(out_path),
        )
        assert code == 0
        written = json.loads(out_path.read_text())
        assert written == {"r": "0", "values": {"a": "1", "b": "3"}}
        # the written file must pass the member check
        code, _, _ = run_cli(capsys, "hull", "member", space, str(out_path))
        assert code == 0

    def test_tighten_precondition_exit(self, capsys, tmp_path):
        space = str(DATA / "two_point_classical.json")
        thin = tmp_path / "thin.json"
        thin.write_text(json.dumps({"r": "0", "values": {"a": "1", "b": "1"}}))
        code, out, _ = run_cli(capsys, "hull", "tighten", space, str(thin), "--out", str(tmp_path / "o.json"))
        assert code == 3
        assert json.loads(out)["result"]["error"] == "precondition"

    def test_sigma(self, capsys, tmp_path):
        space = str(DATA / "two_point_classical.json")
        other = tmp_path / "mu31.json"
        other.write_text(json.dumps({"r": "0", "values": {"a": "3", "b": "1"}}))
        code, out, _ = run_cli(
            capsys, "hull", "sigma", space, str(DATA / "mu_13.json"), str(other)
        )
        assert code == 0
        assert json.loads(out)["result"] == {"sigma": "2"}

    def test_sigma_non_tight_precondition(self, capsys):
        space = str(DATA / "two_point_classical.json")
        code, _, _ = run_cli(
            capsys, "hull", "sigma", space, str(DATA / "mu_33.json"), str(DATA / "mu_13.json")
        )
        assert code == 3

    def test_dense_fixtures(self, capsys):
        code, out, _ = run_cli(
            capsys, "hull", "dense",
            str(DATA / "two_point_classical.json"),
            str(DATA / "three_point_with_midpoint.json"),
            str(DATA / "map_into_midpoint.json"),
        )
        assert code == 0 and json.loads(out)["result"]["dense"] is True
        code, out, _ = run_cli(
            capsys, "hull", "dense",
            str(DATA / "one_point.json"),
            str(DATA / "discrete_pair.json"),
            str(DATA / "map_into_discrete.json"),
        )
        assert code == 1 and json.loads(out)["result"]["dense"] is False

    def test_hyperfamily_outcomes(self, capsys):
        space = str(DATA / "two_point_classical.json")
        code, out, _ = run_cli(
            capsys, "hull", "hyperfamily", space, str(DATA / "family_no_witness.json")
        )
        assert code == 1
        assert json.loads(out)["result"]["witness"] is None
        code, out, _ = run_cli(
            capsys, "hull", "hyperfamily", space, str(DATA / "family_inadmissible.json")
        )
        assert code == 3
        assert json.loads(out)["result"]["violation"] == ["pair", "a", "b"]
        code, out, _ = run_cli(
            capsys, "hull", "hyperfamily",
            str(DATA / "three_point_with_midpoint.json"),
            str(DATA / "family_no_witness.json"),
        )
        assert code == 0
        assert json.loads(out)["result"]["witness"] == "m"

    def test_hyperfamily_self_ball(self, capsys):
        code, out, _ = run_cli(
            capsys, "hull", "hyperfamily",
            str(DATA / "two_point_partial.json"),
            str(DATA / "family_self_ball.json"),
        )
        assert code == 0
        assert json.loads(out)["result"]["witness"] == "a"

    def test_hyperfamily_strict_flag(self, capsys):
        # lax reading finds a witness; the strict reading requires a point
        # whose self-distance equals the base radius 0, and none exists
        space = str(DATA / "two_point_partial.json")
        family = str(DATA / "family_wide.json")
        code, out, _ = run_cli(capsys, "hull", "hyperfamily", space, family)
        assert code == 0
        assert json.loads(out)["result"]["witness"] == "a"
        code, out, _ = run_cli(
            capsys, "hull", "hyperfamily", space, family, "--strict-typing"
        )
        assert code == 1
        assert json.loads(out)["result"]["witness"] is None


class TestVerifyCommands:
    def test_t36_boolean(self, capsys):
        code, out, _ = run_cli(
            capsys, "verify", "t36",
            "--quantale", str(DATA / "boolean.json"), "--bound", "3",
        )
        assert code == 0
        result = json.loads(out)["result"]
        assert result["categories"] == 23
        assert result["discrepancies"] == 0

    def test_l43_lukasiewicz_bound_2(self, capsys):
        code, out, _ = run_cli(
            capsys, "verify", "l43",
            "--quantale", str(DATA / "lukasiewicz3.json"), "--bound", "2",
        )
        assert code == 0
        assert json.loads(out)["result"]["result"] is True

    def test_t54_boolean_bound_2(self, capsys):
        code, out, _ = run_cli(
            capsys, "verify", "t54",
            "--quantale", str(DATA / "boolean.json"), "--bound", "2",
        )
        assert code == 0
        assert json.loads(out)["result"]["functors"] == 42

    def test_bound_refusal(self, capsys):
        code, out, _ = run_cli(
            capsys, "verify", "t36",
            "--quantale", str(DATA / "boolean.json"), "--bound", "4",
        )
        assert code == 4
        assert json.loads(out)["result"]["error"] == "bound"

    def test_lax_typing_breaks_the_chain(self, capsys):
        code, out, _ = run_cli(
            capsys, "verify", "t36",
            "--quantale", str(DATA / "boolean.json"), "--bound", "1", "--lax-typing",
        )
        assert code == 1
        report = json.loads(out)
        assert report["result"]["discrepancies"] > 0
        assert report["witnesses"] is not None

    def test_broken_quantale_refused(self, capsys):
        code, out, _ = run_cli(
            capsys, "verify", "t36",
            "--quantale", str(DATA / "mutated_lukasiewicz3.json"), "--bound", "1",
        )
        assert code == 3


class TestReportStability:
    def test_stdout_bytes_stable_across_runs(self, capsys):
        args = (
            "hull", "member",
            str(DATA / "two_point_classical.json"), str(DATA / "mu_13.json"),
        )
        _, first, _ = run_cli(capsys, *args)
        _, second, _ = run_cli(capsys, *args)
        assert first == second
        assert "timing" not in first

    def test_verify_report_independent_of_worker_count(self, capsys, monkeypatch):
        args = (
            "verify", "t44",
            "--quantale", str(DATA / "boolean.json"), "--bound", "2",
        )
        monkeypatch.setenv("ENRITCH_WORKERS", "1")
        _, one, _ = run_cli(capsys, *args)
        monkeypatch.setenv("ENRITCH_WORKERS", "3")
        _, three, _ = run_cli(capsys, *args)
        assert one == three

    def test_witnesses_reproduce(self, capsys, tmp_path):
        # a failing member check names a coordinate; re-checking the named
        # coordinate against the fixed point equation reproduces the failure
        space_path = DATA / "two_point_classical.json"
        code, out, _ = run_cli(
            capsys, "hull", "member", str(space_path), str(DATA / "mu_23.json")
        )
        assert code == 1
        name = json.loads(out)["result"]["failing_point"]
        space = fileio.load_space(space_path)
        mu = fileio.load_radius_function(DATA / "mu_23.json", space)
        from enritch.parmet import tight_violation

        assert tight_violation(space, mu) == name
