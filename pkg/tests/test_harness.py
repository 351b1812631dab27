import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from lacsphere.errors import ConfigError
from lacsphere.harness import experiments
from lacsphere.harness.cli import build_parser, main
from lacsphere.harness.config import build_config
from lacsphere.harness.experiments import SweepConfig, run
from lacsphere.harness.fitting import fit_slope
from lacsphere.harness.fixtures import (
    FixtureDrift, FixtureMissing, FixtureStore, check_fixture, freeze_fixture,
)


def test_fit_examples():
    x = np.geomspace(1, 100, 10)
    assert abs(fit_slope(list(zip(x, x**2)))[0] - 2) < 1e-12
    assert abs(fit_slope(list(zip(x, np.full(10, 3.0))))[0]) < 1e-12
    assert abs(fit_slope(list(zip(x, x**-0.25)))[0] + 0.25) < 1e-9
    s, c, r = fit_slope(list(zip(x, 5 * x**1.5)))
    assert abs(c - np.log(5)) < 1e-12 and r < 1e-12


def test_fit_rejects_degenerate():
    with pytest.raises(ValueError):
        fit_slope([(1, 1), (2, 2)])
    with pytest.raises(ValueError):
        fit_slope([(1, 1), (2, -2), (3, 3)])
    with pytest.raises(ValueError):
        fit_slope([(2, 1), (2, 2), (2, 3)])


@given(st.floats(-3, 3), st.floats(0.1, 10))
def test_fit_recovers_power(p, c):
    x = np.geomspace(1, 1000, 7)
    assert abs(fit_slope(list(zip(x, c * x**p)))[0] - p) < 1e-9


def test_fixture_store(tmp_path):
    store = FixtureStore(tmp_path / "fx.json")
    value = 0.1 + 0.2
    assert freeze_fixture(store, "a", value) == value
    assert check_fixture(store, "a", value, 0.0)
    # second freeze keeps the first value
    assert freeze_fixture(store, "a", 1.0) == value
    with pytest.raises(FixtureDrift) as exc:
        check_fixture(store, "a", value + 1e-6, 1e-9)
    assert repr(value) in str(exc.value) and repr(value + 1e-6) in str(exc.value)
    with pytest.raises(FixtureMissing):
        check_fixture(store, "nope", 1.0, 1.0)


def test_fixture_roundtrip_bit_exact(tmp_path):
    store = FixtureStore(tmp_path / "fx.json")
    vals = {"f": np.nextafter(1.0, 2.0), "c": complex(1 / 3, -2 / 7), "i": 12345678901234,
            "l": [1 / 3, 2, complex(0, 1e-300)]}
    for k, v in vals.items():
        store.freeze(k, v)
    text = (tmp_path / "fx.json").read_text()
    again = FixtureStore(tmp_path / "fx.json")
    for k, v in vals.items():
        assert again.get(k) == v
        store.check(k, v, 0.0)
    again.freeze("f", 7.0, overwrite=True)
    again.freeze("f", vals["f"], overwrite=True)
    assert (tmp_path / "fx.json").read_text() == text


def test_committed_fixtures(store):
    assert "K_d4_lam1_q3_l0" in store.names()


def write(tmp_path, text):
    p = tmp_path / "cfg.ini"
    p.write_text(text)
    return p


def test_config_precedence(tmp_path):
    p = write(tmp_path, "[run]\nseed = 3\njobs = 1\n\n[count]\ndims = 4\nenum_max = 20\n")
    cfg = build_config("count", p, env={})
    assert cfg.seed == 3 and cfg.params == {"dims": (4,), "enum_max": 20}
    cfg = build_config("count", p, env={"LACSPHERE_SEED": "5", "LACSPHERE_ENUM_MAX": "30"})
    assert cfg.seed == 5 and cfg.params["enum_max"] == 30
    cfg = build_config("count", p, cli={"seed": 9, "enum_max": 40},
                       env={"LACSPHERE_SEED": "5"})
    assert cfg.seed == 9 and cfg.params["enum_max"] == 40


def test_config_diagnostics(tmp_path):
    p = write(tmp_path, "[run]\nseed = 1\n\n[count]\ndims = 4\nbogus = 2\n")
    with pytest.raises(ConfigError, match=r"cfg.ini:6 \[count\] bogus"):
        build_config("count", p, env={})
    p = write(tmp_path, "[count]\nenum_max = ten\n")
    with pytest.raises(ConfigError, match=r":2 \[count\] enum_max: bad value"):
        build_config("count", p, env={})
    p = write(tmp_path, "[nosuch]\na = 1\n")
    with pytest.raises(ConfigError, match="unknown section"):
        build_config("count", p, env={})
    p = write(tmp_path, "[run]\njobs = 0\n")
    with pytest.raises(ConfigError, match="jobs"):
        build_config("count", p, env={})
    p = write(tmp_path, "[count]\ndims = ,\n")
    with pytest.raises(ConfigError):
        build_config("count", p, env={})
    with pytest.raises(ConfigError, match="LACSPHERE_TOL"):
        build_config("count", None, env={"LACSPHERE_TOL": "x"})
    with pytest.raises(ConfigError, match="cannot read"):
        build_config("count", tmp_path / "missing.ini", env={})


def test_config_hash_stable():
    a = SweepConfig("exponents", {}, seed=1)
    b = SweepConfig("exponents", {"d_min": 4}, seed=1, jobs=4, out="elsewhere")
    c = SweepConfig("exponents", {}, seed=2)
    assert a.config_hash == b.config_hash != c.config_hash


def test_run_exponents():
    rep = run(SweepConfig("exponents", {"d_max": 8}))
    assert [r["d"] for r in rep.rows] == [4, 5, 6, 7, 8]
    assert rep.passed
    assert all(r["seed"] == 0 and r["config_hash"] == rep.provenance["config_hash"] for r in rep.rows)


def test_run_count_small():
    rep = run(SweepConfig("count", {"dims": (4,), "enum_max": 60, "jacobi_max": 300,
                                    "hl_max": 3000}))
    assert rep.passed
    assert {c["name"] for c in rep.checks} == {"convolution == enumeration d=4",
                                               "convolution == Jacobi r4 d=4"}


def test_resource_error_names_cell():
    from lacsphere.errors import ResourceError
    with pytest.raises(ResourceError, match="cell"):
        run(SweepConfig("count", {"dims": (4,), "enum_max": 60, "hl_max": 3000}, budget=10))


def test_cli_outputs_and_determinism(tmp_path, capsys):
    args = ["rho-sum", "--lam-max", "5000", "--points", "8", "--betas", "0", "--dims", "4", "--jobs", "1"]
    rc1 = main(args + ["--out", str(tmp_path / "a")])
    rc2 = main(args + ["--out", str(tmp_path / "b"), "--jobs", "2"])
    assert rc1 == rc2
    for name in ("rho-sum.csv", "rho-sum.json"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()
    lines = (tmp_path / "a" / "rho-sum.csv").read_text().splitlines()
    assert lines[0] == "beta,lam,measured,predicted_exponent,seed,config_hash"
    betas = [float(r.split(",")[0]) for r in lines[1:]]
    assert betas == sorted(betas, reverse=False) or len(set(betas)) == 2
    summary = json.loads((tmp_path / "a" / "rho-sum.json").read_text())
    assert summary["provenance"]["seed"] == 0 and len(summary["fits"]) == 2


def test_cli_exit_codes(tmp_path, capsys):
    assert main(["exponents", "--out", str(tmp_path), "--jobs", "1"]) == 0
    # an unreachable tolerance makes the exact checks fail
    assert main(["count", "--dims", "4", "--enum-max", "10", "--jacobi-max", "10",
                 "--hl-slack", "0.0001", "--out", str(tmp_path), "--jobs", "1"]) == 1
    assert main(["count", "--config", str(tmp_path / "missing.ini"), "--out", str(tmp_path)]) == 2
    out = capsys.readouterr().out
    assert "FAIL" in out and "PASS" in out


def test_cli_help_documents_columns(capsys):
    parser = build_parser()
    for name, exp in experiments.EXPERIMENTS.items():
        with pytest.raises(SystemExit):
            parser.parse_args([name, "--help"])
        text = capsys.readouterr().out
        for col in exp.columns:
            assert col in text
        assert "LACSPHERE_" in text and "--budget" in text


def test_cli_fixtures(tmp_path, capsys):
    store = str(tmp_path / "fx.json")
    assert main(["fixtures", "check", "--store", store, "--name", "K_d4_lam1_q3_l0"]) == 1
    assert main(["fixtures", "freeze", "--store", store, "--name", "K_d4_lam1_q3_l0"]) == 0
    assert main(["fixtures", "check", "--store", store, "--name", "K_d4_lam1_q3_l0"]) == 0
    data = json.loads((tmp_path / "fx.json").read_text())
    data["K_d4_lam1_q3_l0"]["float"] = (0.5).hex()
    (tmp_path / "fx.json").write_text(json.dumps(data))
    assert main(["fixtures", "check", "--store", store, "--name", "K_d4_lam1_q3_l0"]) == 1
    out = capsys.readouterr().out
    assert "stored=0.5" in out
    assert main(["fixtures", "list", "--store", store]) == 0
