import json

from skewclean.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_analyze_text(capsys):
    code, out, err = run(capsys, "analyze", "--ring", "zmod:4")
    assert code == 0
    assert "ring zmod:4" in out
    assert "units U(R)        (2): {1, 3}" in out
    assert "radical J(R)      (2): {0, 2}" in out
    assert "1 = unit + unit:  no" in out


def test_analyze_formats_elements(capsys):
    code, out, _ = run(capsys, "analyze", "--ring", "dual:zmod:4")
    assert code == 0
    assert "(0,1)" in out  # radical members rendered as pairs


def test_analyze_bad_spec_exits_2(capsys):
    code, out, err = run(capsys, "analyze", "--ring", "wat:3")
    assert code == 2
    assert "SpecParseError" in err


def test_decompose_text(capsys):
    code, out, _ = run(
        capsys, "decompose", "--ring", "zmod:4", "--sigma", "id",
        "--n", "3", "--matrix", "[3,1,0;0,1;2]",
    )
    assert code == 0
    assert "case: 2" in out
    assert "E = [[0, 1, 1]; [0, 1, 0]; [0, 0, 1]]" in out
    assert "A = E + U: ok" in out
    assert "U invertible: ok" in out


def test_decompose_literal_error_exits_2(capsys):
    code, _, err = run(capsys, "decompose", "--ring", "zmod:4", "--matrix", "[7,0;1]")
    assert code == 2
    assert "MatrixError" in err


def test_verify_text_and_exit_zero(capsys):
    code, out, _ = run(capsys, "verify", "--ring", "zmod:4", "--suite", "2.6")
    assert code == 0
    assert "prop2.6" in out
    assert "summary: 1 hold, 0 fail, 0 skipped" in out


def test_verify_reports_skips(capsys):
    code, out, _ = run(capsys, "verify", "--ring", "zmod:5", "--suite", "corollaries")
    assert code == 0
    assert "skipped" in out
    assert "sum of two units" in out


def test_verify_structured_is_byte_stable(capsys):
    args = ("verify", "--ring", "zmod:4", "--suite", "2.1", "--format", "structured")
    code1, out1, _ = run(capsys, *args)
    code2, out2, _ = run(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2
    payload = json.loads(out1)
    assert payload["tool"]["name"] == "skewclean"
    assert [r["claim_id"] for r in payload["reports"]] == [
        "thm2.1-backward", "thm2.1-forward",
    ]
    assert all(r["elapsed_ms"] is None for r in payload["reports"])


def test_verify_structured_roundtrip_witnesses(capsys):
    # parsing the report back and re-checking statuses reproduces them
    from skewclean import rings
    from skewclean.theorems import recheck_witness

    code, out, _ = run(capsys, "verify", "--ring", "groupring:zmod:4;C2",
                       "--sigma", "aug", "--suite", "3.1",
                       "--sample", "200", "--format", "structured")
    assert code == 0
    payload = json.loads(out)
    ring = rings.get_ring("groupring:zmod:4;C2")
    sigma = rings.get_endomorphism(ring, "aug")
    for record in payload["reports"]:
        if record["status"] == "fails":
            assert recheck_witness(ring, sigma, record["witness"])
        else:
            assert record["witness"] is None


def test_sweep_text(capsys):
    code, out, _ = run(capsys, "sweep", "--ring", "zmod:8", "--n", "2")
    assert code == 0
    assert "exhaustive sweep of 512 matrices" in out
    assert "all strongly clean" in out


def test_sweep_sampled_seed_echo(capsys):
    code, out, _ = run(capsys, "sweep", "--ring", "groupring:zmod:4;C2",
                       "--sigma", "aug", "--n", "3", "--sample", "500")
    assert code == 0
    assert "sampled sweep of 500 matrices" in out
    assert "seed 0" in out


def test_sweep_budget_error_exits_2(capsys):
    code, _, err = run(capsys, "sweep", "--ring", "zmod:4", "--n", "3",
                       "--method", "brute", "--budget", "100")
    assert code == 2
    assert "BudgetExceededError" in err


def test_config_file_defaults(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"ring": "zmod:4", "suite": "2.6"}))
    code, out, _ = run(capsys, "--config", str(cfg), "verify")
    assert code == 0
    assert "prop2.6" in out
    # flags override the config file
    code, out, _ = run(capsys, "--config", str(cfg), "verify", "--ring", "zmod:2")
    assert code == 0
    assert "zmod:2" in out


def test_config_file_errors(tmp_path, capsys):
    missing = tmp_path / "none.json"
    code, _, err = run(capsys, "--config", str(missing), "analyze", "--ring", "zmod:4")
    assert code == 2
    assert "config" in err


def test_remote_server_unreachable_exits_2(capsys):
    code, _, err = run(capsys, "--server", "http://127.0.0.1:9",
                       "analyze", "--ring", "zmod:4")
    assert code == 2
    assert "failed" in err


def test_structured_analyze_envelope(capsys):
    code, out, _ = run(capsys, "analyze", "--ring", "zmod:4", "--format", "structured")
    assert code == 0
    payload = json.loads(out)
    assert payload["command"] == "analyze"
    assert payload["result"]["units"] == [1, 3]


def test_verify_suite_all_group_ring(capsys):
    # the documented one-liner: every claim holds or is skipped, exit 0
    code, out, _ = run(capsys, "verify", "--ring", "groupring:zmod:4;C2",
                       "--sigma", "aug", "--suite", "all", "--sample", "200")
    assert code == 0
    assert "fails" not in out
    assert "summary: 12 hold, 0 fail, 0 skipped" in out
