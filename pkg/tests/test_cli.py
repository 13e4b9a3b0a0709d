import json

import pytest

from wordmaps.cli import main, run, run_batch


def invoke(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_image_report(capsys):
    code, out = invoke(capsys, "image", "--word", "[x,y]", "--q", "5")
    rep = json.loads(out)
    assert code == 0
    assert rep["schema"] == 1 and rep["command"] == "image"
    assert rep["group"] == {"kind": "SL2", "q": 5, "order": 120}
    assert rep["image_size"] == 120 and rep["surjective"]
    assert rep["timing_ms"] is None and rep["workers"] == 1
    assert rep["provenance"]["exhaustive"]
    assert rep["config"]["word"] == "[x,y]"


def test_output_is_byte_identical(capsys):
    _, a = invoke(capsys, "image", "--word", "[x,y]", "--q", "5", "--workers", "1")
    _, b = invoke(capsys, "image", "--word", "[x,y]", "--q", "5", "--workers", "1")
    assert a == b


def test_sampled_report_is_lower_bound(capsys):
    code, out = invoke(capsys, "image", "--word", "[y,[y,x]]", "--q", "5", "--samples", "5000", "--seed", "1")
    rep = json.loads(out)
    assert code == 0 and rep["lower_bound"] and rep["provenance"]["mode"] == "sampled"


def test_sampling_needs_seed(capsys):
    code, _ = invoke(capsys, "image", "--word", "x", "--q", "5", "--samples", "10")
    assert code == 1


def test_primeset(capsys):
    code, out = invoke(capsys, "primeset", "--word", "[x,y]^2")
    assert code == 0 and json.loads(out)["S_w"] == [2]


def test_budget_exit_code(capsys):
    code, out = invoke(capsys, "image", "--word", "x y z", "--q", "9", "--budget", "1e6")
    assert code == 2 and json.loads(out)["error"]["type"] == "budget"


@pytest.mark.parametrize("argv", [
    ["image", "--word", "x^0", "--q", "5"],
    ["image", "--word", "x", "--q", "6"],
    ["image", "--q", "5"],
    ["image-const", "--word", "[x,#1]", "--q", "5"],
    ["image-const", "--word", "[x,#1]", "--q", "5", "--constants", "4,0;0,4"],
    ["fpf", "--type", "Q7"],
    ["image", "--group", "sp4", "--q", "5", "--word", "x"],
])
def test_input_errors(capsys, argv):
    assert main(argv) == 1


def test_constants_and_trace_image(capsys):
    code, out = invoke(capsys, "trace-image", "--word", "x #1 x^-1 y #1 y^-1", "--q", "5", "--constants", "1,1;0,1")
    rep = json.loads(out)
    assert code == 0 and rep["cardinality"] == len(rep["values"])


def test_trace_poly(capsys):
    code, out = invoke(capsys, "trace-poly", "--word", "[x1,x2]", "--constants", "1,1;0,1")
    assert json.loads(out)["psi"] == "2 + 1·y^2"


def test_root_commands(capsys):
    _, out = invoke(capsys, "coxeter", "--type", "E8")
    rep = json.loads(out)
    assert rep["order"] == 30 and rep["fixed_point_free"]
    _, out = invoke(capsys, "fpf", "--type", "D4", "--element", "dcycle")
    assert json.loads(out)["fixed_point_free"]
    _, out = invoke(capsys, "power-surj", "--type", "E8", "--isogeny", "adjoint", "--m", "7")
    assert json.loads(out)["surjective"]


def test_firm_csv(capsys):
    code, out = invoke(capsys, "firm", "--type", "B3", "--format", "csv")
    lines = out.strip().splitlines()
    assert lines[0] == "type,rank,param,result,witness"
    assert lines[1] == "B3,3,1,False,1 0 0"
    assert len(lines) == 4


def test_power_surj_sweep(capsys):
    _, out = invoke(capsys, "power-surj", "--type", "A1")
    rep = json.loads(out)
    assert [r["m"] for r in rep["results"]] == list(range(1, 61))


def test_group_commands(capsys):
    for cmd, key in [("width", "commutator_width"), ("covering", "covering"), ("thompson", "exists")]:
        code, out = invoke(capsys, cmd, "--group", "psl2", "--q", "5")
        assert code == 0 and key in json.loads(out)


def test_ng(capsys):
    _, out = invoke(capsys, "ng", "--weights", "5,3,1,-1,-3,-5", "--m", "3", "--g-order", "9")
    rep = json.loads(out)
    assert rep["singular"] and sorted(rep["kernel_weights"]) == [-3, 3]


def test_out_file(tmp_path, capsys):
    path = tmp_path / "r.json"
    assert main(["magnus", "--word", "[x,y]", "--out", str(path)]) == 0
    assert json.loads(path.read_text())["alpha"] == "1"


def test_run_api():
    rep, code = run({"command": "counts", "word": "[x,y]", "q": 3})
    assert code == 0 and rep["count_Ww"] == 168


def test_batch(tmp_path, capsys):
    path = tmp_path / "cfg.jsonl"
    path.write_text(
        '{"command": "image", "word": "[x,y]", "q": 3}\n'
        "\n"
        '{"command": "nope"}\n'
        "not json\n"
        '{"command": "image", "word": "x y z", "q": 9, "budget": 1000}\n'
    )
    reports = run_batch(str(path), workers=2)
    assert len(reports) == 4
    assert reports[0]["image_size"] == 8
    assert reports[1]["error"]["type"] == "input"
    assert reports[2]["error"]["type"] == "input"
    assert reports[3]["error"]["type"] == "budget"
    assert main(["batch", str(path)]) == 0
    assert len(capsys.readouterr().out.strip().splitlines()) == 4


def test_missing_batch_file(capsys):
    assert main(["batch", "/nonexistent/cfg.jsonl"]) == 1
