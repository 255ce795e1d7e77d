import json

import pytest

from adjoint3 import get, parse_profile, serialize_profile
from adjoint3.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


@pytest.fixture
def p3_file(tmp_path):
    path = tmp_path / "p3.json"
    path.write_text(serialize_profile(get("P3").profile), encoding="utf-8")
    return str(path)


@pytest.fixture
def corrupt_file(tmp_path):
    profile = get("P3").profile
    obj = json.loads(serialize_profile(profile))
    obj["chi_O"] = "2/1"  # breaks the canonical-c2 pairing
    path = tmp_path / "corrupt.json"
    path.write_text(json.dumps(obj), encoding="utf-8")
    return str(path)


class TestValidate:
    def test_clean_profile(self, capsys, p3_file):
        code, out = run(capsys, "validate", p3_file)
        report = json.loads(out)
        assert code == 0
        assert report["result"]["valid"] is True
        assert report["violations"] == []

    def test_corrupt_profile(self, capsys, corrupt_file):
        code, out = run(capsys, "validate", corrupt_file)
        report = json.loads(out)
        assert code == 1
        assert any("chiox" in v for v in report["violations"])

    def test_malformed_json(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json", encoding="utf-8")
        code, out = run(capsys, "validate", str(bad))
        assert code == 2
        assert json.loads(out)["error"]["type"] == "ProfileFormatError"


class TestChi:
    def test_hyperplane(self, capsys, p3_file):
        code, out = run(capsys, "chi", p3_file, "--divisor", "H")
        assert code == 0
        assert json.loads(out)["result"]["chi"] == "4/1"

    def test_expression_with_canonical(self, capsys, p3_file):
        code, out = run(capsys, "chi", p3_file, "--divisor", "K + 5H")
        assert code == 0
        assert json.loads(out)["result"]["chi"] == "4/1"

    def test_corrupt_profile_reports_violation(self, capsys, corrupt_file):
        code, out = run(capsys, "chi", corrupt_file, "--divisor", "H")
        report = json.loads(out)
        assert code == 1
        assert any("chiox" in v for v in report["violations"])

    def test_unknown_symbol_is_malformed_input(self, capsys, p3_file):
        code, out = run(capsys, "chi", p3_file, "--divisor", "Q")
        assert code == 2
        assert json.loads(out)["error"]["type"] == "UnknownSymbolError"


class TestBound:
    def test_nefbig_display(self, capsys, p3_file):
        code, out = run(capsys, "bound", p3_file, "--divisor", "5H", "--rule", "nefbig")
        assert code == 0
        assert json.loads(out)["result"]["display"] == "4/1 (ceil 4)"

    def test_bs_rule(self, capsys, p3_file):
        code, out = run(capsys, "bound", p3_file, "--divisor", "3H", "--rule", "bs")
        assert json.loads(out)["result"] == {
            "rational": "10/1",
            "ceiling": 10,
            "display": "10/1 (ceil 10)",
        }

    def test_miyaoka_rule(self, capsys, tmp_path):
        path = tmp_path / "q5.json"
        path.write_text(serialize_profile(get("Q5").profile), encoding="utf-8")
        code, out = run(
            capsys, "bound", str(path), "--divisor", "H", "--rule", "miyaoka"
        )
        result = json.loads(out)["result"]
        assert code == 0
        assert result == {
            "lhs": "50/1",
            "rhs": "-5/3",
            "holds": True,
            "hypotheses_met": True,
        }


class TestCertify:
    def test_adjoint_on_quintic(self, capsys, tmp_path):
        path = tmp_path / "q5.json"
        path.write_text(serialize_profile(get("Q5").profile), encoding="utf-8")
        code, out = run(
            capsys, "certify", str(path), "--divisor", "H", "--target", "adjoint"
        )
        report = json.loads(out)
        assert code == 0
        cert = report["certificate"]
        assert cert["conclusion"] == "NonVanishing"
        assert cert["route"] == "not-uniruled-c2-bound"
        assert cert["rational_bound"] == "25/36"
        assert cert["integer_bound"] == 1

    def test_missing_flag_is_operation_error(self, capsys, p3_file):
        code, out = run(
            capsys, "certify", p3_file, "--divisor", "H", "--target", "bs"
        )
        assert code == 1
        assert json.loads(out)["error"]["type"] == "MissingFlagError"


class TestIdentities:
    def test_six_passes_and_exit_zero(self, capsys):
        code, out = run(capsys, "identities")
        assert code == 0
        assert out.count('"status": "PASS"') == 6
        assert json.loads(out)["command"] == "identities"


class TestCatalog:
    def test_writes_profile_to_stdout(self, capsys):
        code, out = run(capsys, "catalog", "P3")
        assert code == 0
        assert parse_profile(out) == get("P3").profile

    def test_writes_profile_to_file(self, capsys, tmp_path):
        target = tmp_path / "q5.json"
        code, out = run(capsys, "catalog", "Q5", "-o", str(target))
        assert code == 0
        assert json.loads(out)["result"]["entry"] == "hypersurface(5)"
        assert parse_profile(target.read_text()) == get("Q5").profile

    def test_unknown_name(self, capsys):
        code, out = run(capsys, "catalog", "P4")
        assert code == 2
        assert json.loads(out)["error"]["type"] == "UnknownEntryError"


class TestBlowup:
    def test_point_blowup_roundtrips(self, capsys, p3_file, tmp_path):
        target = tmp_path / "blp3.json"
        code, _ = run(
            capsys, "blowup", p3_file, "--point", "--symbol", "E", "-o", str(target)
        )
        assert code == 0
        transformed = parse_profile(target.read_text())
        assert transformed.validate() == []
        k = transformed.canonical
        assert transformed.triple_eval(k, k, k) == -56

    def test_curve_blowup_to_stdout(self, capsys, p3_file):
        code, out = run(
            capsys, "blowup", p3_file, "--curve", "g=0,deg=H:1", "--symbol", "E"
        )
        assert code == 0
        transformed = parse_profile(out)
        k = transformed.canonical
        assert transformed.triple_eval(k, k, k) == -54

    def test_symbol_collision_is_operation_error(self, capsys, p3_file):
        code, out = run(capsys, "blowup", p3_file, "--point", "--symbol", "H")
        assert code == 1


class TestWitness:
    def test_pencil_scan(self, capsys, tmp_path):
        path = tmp_path / "pencil.json"
        path.write_text(serialize_profile(get("Pencil5").profile), encoding="utf-8")
        code, out = run(capsys, "witness-bad-anticanonical", str(path))
        result = json.loads(out)["result"]
        assert code == 0
        assert result["eps"] == "1/2"
        assert result["value"] == "4/1"


class TestDeterminismAndBatch:
    def test_identical_bytes_on_repeat(self, capsys, p3_file):
        _, first = run(capsys, "bound", p3_file, "--divisor", "5H", "--rule", "nefbig")
        _, second = run(capsys, "bound", p3_file, "--divisor", "5H", "--rule", "nefbig")
        assert first == second

    def test_batch_order_is_input_order(self, capsys, tmp_path):
        files = []
        for name in ("P3", "Q5", "BlLineP3"):
            path = tmp_path / f"{name}.json"
            path.write_text(serialize_profile(get(name).profile), encoding="utf-8")
            files.append(str(path))
        _, sequential = run(capsys, "chi", *files, "--divisor", "2H")
        _, parallel = run(capsys, "chi", *files, "--divisor", "2H", "--jobs", "3")
        assert sequential == parallel
        reports = json.loads(sequential)
        assert [r["inputs"]["file"] for r in reports] == files
        assert [r["result"]["chi"] for r in reports] == ["10/1", "15/1", "10/1"]

    def test_batch_exit_code_is_worst_case(self, capsys, p3_file, corrupt_file):
        code, out = run(capsys, "validate", p3_file, corrupt_file)
        assert code == 1
        reports = json.loads(out)
        assert reports[0]["result"]["valid"] is True
        assert reports[1]["result"]["valid"] is False


class TestRoundTrip:
    @pytest.mark.parametrize(
        "name", ("P3", "Q5", "BlP3", "BlLineP3", "Pencil5", "hypersurface(7)")
    )
    def test_serialize_parse_identity(self, name):
        profile = get(name).profile
        text = serialize_profile(profile)
        reparsed = parse_profile(text)
        assert reparsed == profile
        assert serialize_profile(reparsed) == text
