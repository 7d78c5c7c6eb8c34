import io
import json
import os
import subprocess
import sys

import pytest

from moddata import cli, cyclo
from moddata.cli import (
    build_analysis,
    datum_from_obj,
    load_datum,
    parse_datum,
    serialize_datum,
    serialize_datum_text,
)
from moddata.constructors import radford_datum, semion_datum
from moddata.errors import SchemaError

GOLDEN = os.path.join(os.path.dirname(__file__), "data", "semion.json")


def run_cli(argv):
    out = io.StringIO()
    code = cli.main(argv, out=out)
    return code, out.getvalue()


def test_golden_semion_file_round_trip():
    with open(GOLDEN, "r", encoding="utf-8") as handle:
        text = handle.read()
    assert serialize_datum_text(semion_datum()) == text
    parsed = parse_datum(text)
    sem = semion_datum()
    assert parsed.labels == sem.labels and parsed.star == sem.star
    for i in range(2):
        assert parsed.t_diag[i] == sem.t_diag[i]
        for j in range(2):
            assert parsed.s_matrix[i][j] == sem.s_matrix[i][j]


def test_parse_serialize_round_trip_radford():
    d = radford_datum(5)
    text = serialize_datum_text(d)
    parsed = parse_datum(text)
    assert parsed.labels == d.labels
    for i in range(5):
        assert parsed.t_diag[i] == d.t_diag[i]
        for j in range(5):
            assert parsed.s_matrix[i][j] == d.s_matrix[i][j]


def test_parse_rejects_non_involutive_star():
    obj = serialize_datum(semion_datum())
    obj["star"] = {"0": "1", "1": "0"}
    obj["unit"] = "0"
    # 0 -> 1 -> 0 is an involution; break it by a non-permutation map
    obj["star"] = {"0": "1", "1": "1"}
    with pytest.raises(SchemaError) as err:
        datum_from_obj(obj)
    assert "star" in str(err.value)


def test_parse_rejects_bad_shapes():
    obj = serialize_datum(semion_datum())
    obj["T"] = obj["T"][:1]
    with pytest.raises(SchemaError) as err:
        datum_from_obj(obj)
    assert err.value.path == "$.T"
    obj = serialize_datum(semion_datum())
    obj["S"][0][1]["coeffs"] = ["1", "2", "3"]
    with pytest.raises(SchemaError) as err:
        datum_from_obj(obj)
    assert err.value.path == "$.S[0][1]"


def test_schema_files_ship_with_package():
    root = os.path.dirname(cli.__file__)
    for name in ("datum.schema.json", "bundle.schema.json"):
        with open(os.path.join(root, "schemas", name), encoding="utf-8") as fh:
            schema = json.load(fh)
        assert "$id" in schema


def test_gen_pseudo_paths():
    assert load_datum("gen:semion").labels == ("0", "1")
    assert load_datum("gen:trivial").size == 1
    assert load_datum("gen:radford:5").size == 5
    with pytest.raises(SchemaError):
        load_datum("gen:unknown")


def test_cli_json_matches_library_bundle(monkeypatch):
    monkeypatch.delenv(cli.ENV_MAX_GROUP_ORDER, raising=False)
    monkeypatch.delenv(cli.ENV_CONDUCTOR_LIMIT, raising=False)
    code, text = run_cli(["analyze", "gen:semion", "--json"])
    assert code == 0
    direct = build_analysis(semion_datum())
    assert text == json.dumps(direct.to_json(), indent=2) + "\n"


def test_cli_json_with_extensions_matches_library(monkeypatch):
    monkeypatch.delenv(cli.ENV_MAX_GROUP_ORDER, raising=False)
    code, text = run_cli(["analyze", "gen:semion", "--extensions", "--json"])
    assert code == 0
    direct = build_analysis(semion_datum(), extensions=True)
    assert text == json.dumps(direct.to_json(), indent=2) + "\n"


def test_cli_validate_exit_codes(tmp_path):
    code, _ = run_cli(["validate", "gen:semion"])
    assert code == 0
    # corrupt the Dehn entries: order-8 twist fails the axioms
    obj = serialize_datum(semion_datum())
    obj["T"][1] = cyclo.to_json(cyclo.root_of_unity(8, 1))
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(obj))
    code, _ = run_cli(["validate", str(bad)])
    assert code == 1


def test_cli_usage_errors():
    code, _ = run_cli(["validate", "/nonexistent/file.json"])
    assert code == 2
    code, _ = run_cli(["validate", "gen:unknown"])
    assert code == 2


def test_cli_resource_bound_exit():
    code, _ = run_cli(
        ["congruence", "gen:semion", "--level", "24",
         "--max-group-order", "100"]
    )
    assert code == 3


def test_cli_congruence_semion_level_4():
    code, text = run_cli(["congruence", "gen:semion", "--level", "4", "--json"])
    assert code == 0
    payload = json.loads(text)
    assert payload["projective"]["factors"] is True
    assert payload["lift_search"]["surviving"] == 0


def test_cli_lift_search():
    code, text = run_cli(["lift-search", "gen:semion", "--level", "8", "--json"])
    assert code == 0
    payload = json.loads(text)
    assert payload["surviving"] == 4


def test_cli_extensions_listing():
    code, text = run_cli(["extensions", "gen:semion", "--json"])
    assert code == 0
    payload = json.loads(text)
    assert len(payload["extensions"]) == 12
    charges = sorted(
        e["additive_charge_mod_24"] for e in payload["extensions"]
    )
    assert charges == [1, 3, 5, 7, 9, 11, 13, 15, 17, 19, 21, 23]


def test_cli_fusion_table_text():
    code, text = run_cli(["fusion-table", "gen:semion"])
    assert code == 0
    assert "N[0, -, -]" in text


def test_cli_symbols():
    code, text = run_cli(["symbols", "gen:radford:3", "--json"])
    assert code == 0
    payload = json.loads(text)
    assert payload["modulus"] == 3
    assert payload["passed"] is True


def test_cli_gauss_sum():
    code, text = run_cli(["gauss-sum", "--n", "7", "--q", "3", "--json"])
    assert code == 0
    payload = json.loads(text)
    assert payload["jacobi_symbol"] == -1
    assert payload["twist_matches_jacobi"] is True


def test_cli_cocycle():
    code, text = run_cli(["cocycle", "--n", "3", "--check", "--json"])
    assert code == 0
    payload = json.loads(text)
    assert payload["cocycle_identity"] is True


def test_cli_gen_product(tmp_path):
    sem = tmp_path / "sem.json"
    code, text = run_cli(["gen", "semion"])
    assert code == 0
    sem.write_text(text)
    code, text = run_cli(["gen", "product", str(sem), "gen:trivial"])
    assert code == 0
    parsed = parse_datum(text)
    assert parsed.size == 2


def test_cli_gen_analyze_pipeline(tmp_path):
    code, text = run_cli(["gen", "radford", "--n", "3"])
    assert code == 0
    path = tmp_path / "r3.json"
    path.write_text(text)
    code, _ = run_cli(["analyze", str(path)])
    assert code == 0


def test_console_entry_point_runs():
    proc = subprocess.run(
        [sys.executable, "-c",
         "import sys; from moddata.cli import main; sys.exit(main(['validate', 'gen:trivial']))"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0


def test_conductor_limit_env_override():
    # a fresh process so the cyclotomic basis caches start empty
    env = dict(os.environ, MODDATA_CONDUCTOR_LIMIT="10")
    proc = subprocess.run(
        [sys.executable, "-c",
         "import sys; from moddata.cli import main; "
         "sys.exit(main(['gen', 'radford', '--n', '97']))"],
        capture_output=True,
        text=True,
        env=env,
    )
    assert proc.returncode == 3
    assert "exceeds" in proc.stderr


def test_max_group_order_env_override():
    env = dict(os.environ, MODDATA_MAX_GROUP_ORDER="10")
    proc = subprocess.run(
        [sys.executable, "-c",
         "import sys; from moddata.cli import main; "
         "sys.exit(main(['congruence', 'gen:semion', '--level', '4']))"],
        capture_output=True,
        text=True,
        env=env,
    )
    assert proc.returncode == 3


def test_cli_lift_search_default_level():
    code, text = run_cli(["lift-search", "gen:semion", "--json"])
    assert code == 0
    payload = json.loads(text)
    assert payload["level"] == 4 and payload["surviving"] == 0


def test_analyze_non_integral_datum_skips_galois_suite(tmp_path):
    # rescaling S by 1/2 keeps every axiom but destroys integrality
    import moddata.linalg as linalg
    from moddata.datum import ModularDatum

    sem = semion_datum()
    scaled = ModularDatum(
        sem.labels, sem.unit, sem.star,
        linalg.mat_scale(sem.s_matrix, cyclo.rational(1, 2)),
        sem.t_diag,
    )
    path = tmp_path / "half.json"
    path.write_text(json.dumps(serialize_datum(scaled)))
    code, text = run_cli(["analyze", str(path), "--json"])
    assert code == 0
    payload = json.loads(text)
    assert payload["report"]["integral"] is False
    assert "galois-suite" in payload["verdicts"]
    assert payload["verdicts"]["galois-suite"]["passed"] is True


def test_fusion_element_dimension_mismatch():
    from moddata.errors import DimensionMismatch
    from moddata.fusion import basis_element, fusion_coefficients, multiply

    table = fusion_coefficients(semion_datum())
    with pytest.raises(DimensionMismatch):
        multiply(basis_element(3, 0), basis_element(3, 1), table)
