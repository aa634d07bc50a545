import json

import pytest

from lissvar.cli import main, pretty_univariate, render_json
from lissvar.polynomials import PolynomialDense


def write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


@pytest.fixture
def c3_model(tmp_path):
    return write(tmp_path, "c3.json", {
        "graph": {"vertices": 3, "edges": [[1, 2], [2, 3], [3, 1]]},
        "b": "ones", "K": 1.0, "omega": [0.1, 0.2],
    })


@pytest.fixture
def circle_model(tmp_path):
    return write(tmp_path, "circle.json", {"A": [[1, 1]], "b": [0, 1], "omega": [0.6]})


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_analyze_c3(capsys, c3_model):
    code, out, _ = run(capsys, ["analyze", c3_model])
    assert code == 0
    doc = json.loads(out)
    assert doc["degree"] == 6
    assert doc["normalized_volume"] == 6
    assert doc["discriminant_degree_bound"] == 12
    assert doc["cl_count"] == 0
    assert doc["genericity"] == [True]


def test_analyze_circle(capsys, circle_model):
    code, out, _ = run(capsys, ["analyze", circle_model])
    doc = json.loads(out)
    assert code == 0
    assert doc["degree"] == 2
    assert doc["normalized_volume"] == 2


def test_analyze_c4_zero_shift(capsys, tmp_path):
    path = write(tmp_path, "c4.json", {
        "graph": {"vertices": 4, "edges": [[1, 2], [2, 3], [3, 4], [4, 1]]},
        "b": "zeros",
    })
    code, out, _ = run(capsys, ["analyze", path])
    doc = json.loads(out)
    assert code == 0
    assert doc["degree"] == 6  # cycle polynomial degree for n = 4


def test_analyze_membership_probe(capsys, tmp_path):
    path = write(tmp_path, "probe.json", {"A": [[1, 1]], "b": [0, 1], "x": [0.6, 0.8]})
    code, out, _ = run(capsys, ["analyze", path])
    doc = json.loads(out)
    assert code == 0
    assert doc["membership"]["is_member"] is True


def test_equation_c3(capsys, tmp_path):
    path = write(tmp_path, "c3cos.json", {
        "graph": {"vertices": 3, "edges": [[1, 2], [2, 3], [3, 1]]},
        "b": "zeros",
    })
    code, out, _ = run(capsys, ["equation", path])
    assert code == 0
    doc = json.loads(out)
    assert doc["fiber_degree"] == 2
    assert doc["root"]["terms"] == {
        "2,0,0": 1, "1,1,1": -2, "0,2,0": 1, "0,0,2": 1, "0,0,0": -1}


def test_equation_not_hypersurface_exit_3(capsys, tmp_path):
    path = write(tmp_path, "k4.json", {
        "graph": {"vertices": 4,
                  "edges": [[1, 2], [1, 3], [1, 4], [2, 3], [2, 4], [3, 4]]},
        "b": "ones",
    })
    code, _, err = run(capsys, ["equation", path])
    assert code == 3
    assert err


def test_equation_guard_exit_4(capsys, tmp_path):
    path = write(tmp_path, "c7.json", {
        "graph": {"vertices": 7,
                  "edges": [[1, 2], [2, 3], [3, 4], [4, 5], [5, 6], [6, 7], [7, 1]]},
        "b": "zeros",
    })
    code, _, err = run(capsys, ["equation", path])
    assert code == 4
    assert err


def test_equilibria_c3(capsys, c3_model):
    code, out, _ = run(capsys, ["equilibria", c3_model])
    assert code == 0
    doc = json.loads(out)
    assert doc["count"] == 6
    assert doc["ceiling"] == 6
    stable = [e for e in doc["equilibria"] if e["stable"]]
    assert len(stable) == 1
    assert all(e["residual"] < 1e-10 for e in doc["equilibria"])


def test_equilibria_requires_omega(capsys, tmp_path):
    path = write(tmp_path, "noomega.json", {"A": [[1, 1]], "b": [0, 1]})
    code, _, err = run(capsys, ["equilibria", path])
    assert code == 2
    assert err


def test_positive_circle(capsys, circle_model):
    code, out, _ = run(capsys, ["positive", circle_model])
    assert code == 0
    doc = json.loads(out)
    assert doc["status"] == "Optimal"
    assert abs(doc["theta_star"][0] + 0.34725) < 1e-4


def test_positive_outside(capsys, tmp_path):
    path = write(tmp_path, "c16.json", {"A": [[1, 1]], "b": [0, 1], "omega": [1.6]})
    code, out, _ = run(capsys, ["positive", path])
    assert code == 0
    assert json.loads(out)["status"] == "NotInOmegaPlus"


def test_discriminant_exact(capsys, tmp_path):
    path = write(tmp_path, "a12.json", {"A": [[1, 2]], "b": [1, 1]})
    code, out, _ = run(capsys, ["discriminant", path])
    assert code == 0
    doc = json.loads(out)
    assert doc["pretty"] == "256*w^4 - 2367*w^2 + 3375"
    assert doc["delta"]["terms"] == {"4": 256, "2": -2367, "0": 3375}


def test_discriminant_cloud_csv(capsys, c3_model):
    code, out, _ = run(capsys, ["discriminant", "--samples", "25", c3_model])
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "omega_1,omega_2,residual"
    assert len(lines) > 5
    for line in lines[1:]:
        fields = line.split(",")
        assert len(fields) == 3
        assert float(fields[2]) < 1e-8


def test_sample_curve_csv(capsys, circle_model):
    code, out, _ = run(capsys, ["sample-curve", "--grid", "9", circle_model])
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "t_1,x_1,x_2"
    assert len(lines) == 10


def test_deterministic_output(capsys, c3_model):
    _, out1, _ = run(capsys, ["--seed", "5", "equilibria", c3_model])
    _, out2, _ = run(capsys, ["--seed", "5", "equilibria", c3_model])
    assert out1 == out2
    _, disc1, _ = run(capsys, ["--seed", "5", "discriminant", c3_model])
    _, disc2, _ = run(capsys, ["--seed", "5", "discriminant", c3_model])
    assert disc1 == disc2


def test_bad_inputs_exit_2(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, ["analyze", str(bad)])[0] == 2

    both = write(tmp_path, "both.json", {
        "A": [[1, 1]], "graph": {"vertices": 3, "edges": []}, "b": [0, 1]})
    assert run(capsys, ["analyze", both])[0] == 2

    neither = write(tmp_path, "neither.json", {"b": [0, 1]})
    assert run(capsys, ["analyze", neither])[0] == 2

    rank = write(tmp_path, "rank.json", {"A": [[1, 1], [2, 2]], "b": [0, 1]})
    assert run(capsys, ["analyze", rank])[0] == 2

    missing = str(tmp_path / "nope.json")
    assert run(capsys, ["analyze", missing])[0] == 2


def test_float_formatting_17_digits():
    text = render_json({"x": 0.1})
    assert "0.10000000000000001" in text


def test_pretty_univariate():
    poly = PolynomialDense(1, {(3,): 16, (2,): -31, (1,): -84, (0,): 99})
    assert pretty_univariate(poly) == "16*w^3 - 31*w^2 - 84*w + 99"
    assert pretty_univariate(PolynomialDense(1, {(2,): 1, (0,): -2})) == "w^2 - 2"
