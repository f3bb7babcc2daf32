import io
import json

import numpy as np
import pytest

from agewise import cli
from agewise.cli import UsageError, parse_args, parse_model_spec, parse_transform


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.main(argv, stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_classify_to_stdout():
    code, out, err = run(["classify", "--model", "weibull:lambda=1,k=0.5"])
    assert code == 0, err
    doc = json.loads(out)
    assert doc["label"] == "DFR"


def test_classify_with_transform_and_files(tmp_path):
    code, _, err = run(["classify", "--model", "lomax:alpha=3,beta=1", "--transform", "dus",
                        "--out", str(tmp_path / "h.csv"), "--report", str(tmp_path / "r.json"),
                        "--svg", str(tmp_path / "h.svg"), "--grid-points", "64"])
    assert code == 0, err
    assert json.loads((tmp_path / "r.json").read_text())["label"] == "UBFR"
    rows = (tmp_path / "h.csv").read_text().splitlines()
    assert rows[0] == "t,hazard" and len(rows) > 60
    assert (tmp_path / "h.svg").read_text().startswith("<svg")


def test_missing_parameter_is_usage_error():
    code, out, err = run(["classify", "--model", "weibull:k=2"])
    assert code == 2 and out == ""
    doc = json.loads(err)
    assert doc["error"] == "usage" and "'lambda'" in doc["message"]


@pytest.mark.parametrize("argv", [[], ["frobnicate"], ["classify"], ["sample", "--model", "exponential:theta=1"],
                                  ["ttt"], ["catalog"], ["classify", "--model", "weibull:lambda=1,k=2", "--bogus"]])
def test_usage_errors(argv):
    assert run(argv)[0] == 2


def test_domain_error_exit_code():
    code, _, err = run(["classify", "--model", "weibull:lambda=-1,k=2"])
    assert code == 1
    assert json.loads(err)["error"] == "domain"


def test_fit_reports_bad_datum(tmp_path):
    data = tmp_path / "d.csv"
    data.write_text("x\n1.0\n2.0\n-1.0\n" + "1.5\n" * 10)
    code, _, err = run(["fit", "--family", "exponential", "--data", str(data)])
    assert code == 1
    assert json.loads(err)["index"] == 2


def test_sample_then_fit(tmp_path):
    draws = tmp_path / "x.csv"
    assert run(["sample", "--model", "exponential:theta=2", "--n", "300", "--seed", "4", "--out", str(draws)])[0] == 0
    x = np.loadtxt(draws, skiprows=1)
    code, out, _ = run(["fit", "--family", "exponential", "--data", str(draws)])
    assert code == 0
    assert json.loads(out)["params"]["theta"] == pytest.approx(x.size / x.sum(), rel=1e-6)


def test_ttt_model_and_data(tmp_path):
    code, out, _ = run(["ttt", "--model", "weibull:lambda=1,k=2"])
    assert code == 0
    assert json.loads(out)["tests"]["IFR"]["verdict"] == "holds"
    with pytest.raises(UsageError):
        parse_args(["ttt", "--model", "exponential:theta=1", "--data", "x.csv"])


def test_hazard_catalog_entry():
    code, out, _ = run(["hazard", "--model", "nadarajah-gl:alpha=2,lambda=1", "--grid-points", "32"])
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("# model=") and lines[1] == "t,hazard"
    assert len(lines) == 34


def test_catalog_verbs():
    code, out, _ = run(["catalog", "--list"])
    assert code == 0 and "dus-lomax" in out.split()
    code, out, _ = run(["catalog", "dus-lomax"])
    assert json.loads(out)["params"] == ["alpha", "beta"]
    assert run(["catalog", "no-such-entry"])[0] == 1


def test_preserve_single_cell():
    code, out, _ = run(["preserve", "--class", "IFR", "--operation", "convolution"])
    assert code == 0
    assert out.splitlines()[1].startswith("IFR,convolution,Preserve,confirmed-preserve")


def test_parse_helpers():
    spec = parse_model_spec("gdus-weibull:gdus_alpha=2,lambda=1,k=1.5")
    assert spec.params == {"gdus_alpha": 2.0, "lambda": 1.0, "k": 1.5}
    t = parse_transform("gdus:alpha=0.5")
    assert t.name == "gdus" and t.params == {"alpha": 0.5}
    with pytest.raises(UsageError):
        parse_transform("gdus")
    with pytest.raises(UsageError):
        parse_model_spec("weibull:lambda=abc,k=1")


def test_repeatable_output(tmp_path):
    argv = ["sample", "--model", "dus-ew:alpha=2,lambda=1", "--n", "50", "--seed", "8"]
    assert run(argv)[1] == run(argv)[1]
