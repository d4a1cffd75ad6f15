import json

import pytest

from finhyp.cli import main
from finhyp.cyclo import CycloNum


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_hq_rational_value(capsys):
    code, out = run_cli(
        capsys, "hq", "--alpha", "1/2,1/2", "--beta", "0,0",
        "--q", "13", "--t", "2", "--json",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["schema"] == "finhyp/1"
    value = payload["results"][0]["value"]
    assert value["rational"] == "6"
    assert CycloNum.from_json(value) == 6


def test_hq_json_round_trip(capsys):
    code, out = run_cli(
        capsys, "hq", "--alpha", "1/4,3/4", "--beta", "0,1/2",
        "--q", "5", "--all-t", "--json",
    )
    assert code == 0
    payload = json.loads(out)
    for entry in payload["results"]:
        v = CycloNum.from_json(entry["value"])
        assert CycloNum.from_json(v.to_json()) == v


def test_hq_split_agrees_with_classic(capsys):
    base = ["hq", "--alpha", "1/6", "--beta", "1/2", "--q", "7", "--all-t", "--json"]
    code1, out1 = run_cli(capsys, *base)
    code2, out2 = run_cli(capsys, *base, "--algebra", "split")
    assert code1 == code2 == 0
    assert json.loads(out1)["results"] == json.loads(out2)["results"]


def test_byte_identical_output(capsys):
    argv = ["gp", "--alpha", "1/2", "--beta", "0", "--p", "7",
            "--all-t", "--prec", "5", "--json"]
    _, out1 = run_cli(capsys, *argv)
    _, out2 = run_cli(capsys, *argv)
    assert out1 == out2


def test_gp_both_routes(capsys):
    code, out = run_cli(
        capsys, "gp", "--alpha", "1/5,2/5,3/5,4/5", "--beta", "0,0,0,0",
        "--p", "7", "--t", "3", "--prec", "6", "--route", "both", "--json",
    )
    assert code == 0
    payload = json.loads(out)
    entry = payload["results"][0]
    assert entry["agree"] is True
    assert entry["direct"]["digits"] == entry["algebra"]["digits"]


def test_gauss_command(capsys):
    code, out = run_cli(capsys, "gauss", "--p", "5", "--m", "2", "--prec", "6", "--json")
    assert code == 0
    payload = json.loads(out)
    g = CycloNum.from_json(payload["exact"])
    assert g * g.conj() == 5
    assert payload["gross_koblitz"]["pi_exponent"] == "2"


def test_delta_command(capsys):
    code, out = run_cli(
        capsys, "delta", "--alpha", "1/5,4/5", "--beta", "0,0", "--p", "11", "--json",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["common_denominator"] == 5
    assert payload["stabilizer"] == [1, 4]
    assert payload["defined_over_Q"] is False
    assert payload["delta"] == 0 and payload["Delta"] == 0
    assert payload["splits"] is True
    assert payload["lambda"][0] == 0
    assert [o["length"] for o in payload["alpha_orbits"]] == [1, 1]


def test_verify_subset(capsys):
    code, out = run_cli(
        capsys, "verify", "--check", "gauss_norm", "--max-q", "5",
        "--seed", "3", "--json",
    )
    assert code == 0
    lines = [json.loads(line) for line in out.splitlines()]
    assert lines and all(l["verdict"] == "pass" for l in lines)
    assert all({"check", "instance", "verdict", "millis"} <= set(l) for l in lines)


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["hq", "--alpha", "1/2", "--q", "5", "--t", "1"])  # missing --beta
    assert exc.value.code == 2


def test_semantic_error_exit_code(capsys):
    code = main(["hq", "--alpha", "1/5", "--beta", "0", "--q", "7", "--t", "1"])
    assert code == 2  # assumption fails at q = 7


def test_resource_bound_exit_code(capsys):
    code = main([
        "gp", "--alpha", "1/2", "--beta", "0", "--p", "13",
        "--t", "1", "--prec", "9", "--max-pn", "1000",
    ])
    assert code == 3


def test_missing_t_is_usage_error(capsys):
    code = main(["hq", "--alpha", "1/2", "--beta", "0", "--q", "5"])
    assert code == 2
