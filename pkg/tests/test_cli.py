import json

import numpy as np
import pytest

from symcr.cli import main
from symcr.jts import CartanI, element, element_to_json, parse_system, random_unitary
from symcr.suite import REGISTRY, SuiteConfig, check_rng, run_suite


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


@pytest.mark.parametrize("spec,expect", [
    ("I:3,2", {"rank": 2, "dim": 6, "tube": False, "shilov_crdim": 2, "shilov_codim": 4}),
    ("II:5", {"rank": 2, "dim": 10, "tube": False, "shilov_crdim": 4, "shilov_codim": 6}),
    ("I:2,2", {"rank": 2, "dim": 4, "tube": True, "shilov_crdim": 0, "shilov_codim": 4}),
])
def test_info(capsys, spec, expect):
    code, out = run(capsys, "info", spec)
    assert code == 0
    assert {k: out[k] for k in expect} == expect


def test_info_product_and_parse_error(capsys):
    code, out = run(capsys, "info", "I:2,2xI:2,1")
    assert code == 0 and out["tube"] == [True, False]
    assert main(["info", "I:2,"]) == 3
    assert "position 4" in capsys.readouterr().err


def test_compute_spectral(capsys, tmp_path):
    f = write(tmp_path, "z.json", element_to_json(element(CartanI(2, 2), np.diag([0.9, 0.3]))))
    code, out = run(capsys, "compute", "spectral", "I:2,2", f)
    assert code == 0 and np.allclose(out["result"]["lambdas"], [0.9, 0.3])


def test_compute_cayley_of_minus_e(capsys, tmp_path):
    f = write(tmp_path, "z.json", element_to_json(element(CartanI(2, 2), -np.eye(2))))
    code, out = run(capsys, "compute", "cayley", "I:2,2", f)
    assert code == 0
    assert np.allclose(out["result"]["t"]["re"], 0) and np.allclose(out["result"]["v"]["re"], 0)
    assert out["result"]["membership"] == "on_N"


def test_compute_hull_rational(capsys, tmp_path):
    s = parse_system("I:2,2xI:2,1")
    z = element(s, random_unitary(2, np.random.default_rng(0)), np.array([[0.3], [0.1]]))
    f = write(tmp_path, "z.json", element_to_json(z))
    code, out = run(capsys, "compute", "hull", "I:2,2xI:2,1", f, "--kind", "rational")
    assert code == 0 and out["result"]["member"] is True


def test_compute_norm_and_levi(capsys, tmp_path):
    f = write(tmp_path, "z.json", element_to_json(element(CartanI(2, 2), np.diag([2.0, 3.0]))))
    code, out = run(capsys, "compute", "norm", "I:2,2", f)
    assert code == 0 and np.allclose(out["result"]["norm"], [6, 0])
    e = np.vstack([np.eye(2), np.zeros((1, 2))])
    f = write(tmp_path, "e.json", element_to_json(element(CartanI(3, 2), e)))
    code, out = run(capsys, "compute", "levi", "I:3,2", f, "--samples", "200")
    assert code == 0 and out["result"]["contains_frame"] is True
    code, out = run(capsys, "compute", "tripotent", "I:3,2", f)
    assert code == 0 and out["result"]["rank_class"] == "maximal"
    code, out = run(capsys, "compute", "peirce", "I:3,2", f)
    assert code == 0 and out["result"]["peirce_dims"] == [4, 2, 0]


def test_compute_exit_codes(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "compute", "spectral", "I:2,2", str(bad))[0] == 3
    f = write(tmp_path, "z.json", element_to_json(element(CartanI(2, 2), np.diag([0.5, 0.2]))))
    assert run(capsys, "compute", "tripotent", "I:2,2", f)[0] == 2
    assert run(capsys, "compute", "norm", "I:3,2", f)[0] == 3   # shape mismatch
    f1 = write(tmp_path, "one.json", element_to_json(element(CartanI(2, 2), np.eye(2))))
    assert run(capsys, "compute", "cayley", "I:2,2", f1)[0] == 2
    assert run(capsys, "compute", "spectral", "I:2,2", str(tmp_path / "missing.json"))[0] == 4
    assert run(capsys, "compute", "frobnicate", "I:2,2", f)[0] == 3


def test_lie_build(capsys):
    code, out = run(capsys, "lie", "build", "vorh:4")
    assert code == 0 and out["kappa"] == 3 and not out["integrable"] and out["minimal"]
    code, out = run(capsys, "lie", "build", "tett:5,1")
    assert code == 0 and out["kappa"] == 4 and out["integrable"]
    code, out = run(capsys, "lie", "build", "su:2,1")
    assert code == 0 and out["integrable"]
    assert run(capsys, "lie", "build", "tett:3,2")[0] == 3
    assert run(capsys, "lie", "build", "nope:1")[0] == 3


@pytest.mark.parametrize("kind", ["sphere", "dual", "quadric", "heis3", "syin5"])
def test_model_sampling(capsys, kind):
    code, out = run(capsys, "model", kind, "--samples", "20")
    assert code == 0 and out["max_residual"] < 1e-9


def test_model_apply(capsys, tmp_path):
    f = write(tmp_path, "p.json", {"a": [[1, 0], [0, 0]], "z": [[0, 0], [1, 0]]})
    code, out = run(capsys, "model", "sphere", "--input", f)
    assert code == 0 and np.allclose(out["image"], [[0, 0], [-1, 0]])
    f = write(tmp_path, "p.json", {"point": [[0, 0]] * 5})
    code, out = run(capsys, "model", "syin5", "--input", f)
    assert code == 0 and out["member"] is True
    f = write(tmp_path, "p.json", {"a": [[0, 0], [0, 0], [0, 0]], "x": [[1, 0], [0, 1], [0, 1]]})
    code, out = run(capsys, "model", "heis3", "--input", f)
    assert code == 0 and np.allclose(out["product"], [[1, 0], [0, 1], [0, 1]])
    f = write(tmp_path, "p.json", {"wrong": 1})
    assert run(capsys, "model", "heis3", "--input", f)[0] == 3


def test_suite_filter_and_determinism(capsys, tmp_path):
    code, out = run(capsys, "suite", "--filter", "peirce", "--seed", "3")
    assert code == 0 and {c["module"] for c in out["checks"]} == {"peirce"}
    strip = lambda rep: [{k: v for k, v in c.items() if k != "elapsed"} for c in rep["checks"]]
    _, again = run(capsys, "suite", "--filter", "peirce", "--seed", "3")
    assert strip(out) == strip(again)
    assert run(capsys, "suite", "--filter", "nosuchmodule")[0] == 3


def test_suite_impossible_tolerance(capsys):
    code, out = run(capsys, "suite", "--filter", "spectral", "--tol", "1e-30")
    assert code == 1 and out["overall"] == "fail"
    assert all("residual" in c for c in out["checks"])


def test_suite_io_error(capsys):
    assert run(capsys, "suite", "--filter", "peirce", "--out", "/nonexistent/dir/r.json")[0] == 4


def test_suite_writes_out_file(capsys, tmp_path):
    p = tmp_path / "r.json"
    assert run(capsys, "suite", "--filter", "cr_models", "--out", str(p))[0] == 0
    assert json.loads(p.read_text())["overall"] == "pass"


def test_check_seeding_is_order_independent():
    assert check_rng(42, "a.b").random() == check_rng(42, "a.b").random()
    assert check_rng(42, "a.b").random() != check_rng(42, "a.c").random()
    names = {c.name for c in REGISTRY}
    assert len(names) == len(REGISTRY)
    one = run_suite(SuiteConfig(seed=5, filters=("cr_models",)))
    both = run_suite(SuiteConfig(seed=5, filters=("cr_models", "peirce")))
    pick = {c.name: c.residual for c in both.checks if c.module == "cr_models"}
    assert {c.name: c.residual for c in one.checks} == pick


def test_suite_config_validation():
    with pytest.raises(ValueError):
        SuiteConfig(samples=0)
    with pytest.raises(ValueError):
        SuiteConfig(tol=-1.0)
