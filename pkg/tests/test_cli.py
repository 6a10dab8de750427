import json

import numpy as np
import pytest

from elldqg.campaign import CampaignConfig, CheckResult, report, run
from elldqg.cli import SEED_ENV, build_config, build_parser, main
from elldqg.elliptic_core import ModulusParams, theta
from elldqg.sampling import CampaignAbort, Sampler, check_rng, is_generic


def test_check_rng_streams_are_independent_and_reproducible():
    a = check_rng(7, "theta").random(3)
    assert np.array_equal(a, check_rng(7, "theta").random(3))
    assert not np.array_equal(a, check_rng(7, "qdybe").random(3))
    assert not np.array_equal(a, check_rng(8, "theta").random(3))


def test_sampler_avoids_poles():
    P = ModulusParams(0.2, 0.5)
    s = Sampler(P, check_rng(0, "x"))
    for _ in range(20):
        lam, zs = s.point(3)
        assert 0.1 <= lam.real <= 0.9
        assert is_generic(P, lam, [zs[0] / zs[1]])
    # lambda = 0 is a pole locus: theta(q^0) = 0
    assert not is_generic(P, 0.0, [])


def test_sampler_unimodular_and_real():
    s = Sampler(ModulusParams(0.2, 0.5), check_rng(0, "y"))
    lam, (w, z) = s.point(2, real=True, unimodular=True)
    assert lam.imag == 0 and abs(abs(w) - 1) < 1e-15 and abs(abs(z) - 1) < 1e-15


def test_sampler_aborts_when_most_draws_are_rejected():
    s = Sampler(ModulusParams(0.2, 0.5), check_rng(0, "z"))
    s.draws, s.resampled = 40, 30
    with pytest.raises(CampaignAbort):
        s.check_budget()


def test_config_validation():
    for bad in (dict(p=1.5), dict(q=0.0), dict(samples=0), dict(seed=-1), dict(tolerances={"theta": 0}),
                dict(tolerances={"nope": 1e-3})):
        with pytest.raises(ValueError):
            CampaignConfig(**bad)


def test_report_schema():
    cfg = CampaignConfig(samples=3)
    results = run("singular", cfg)
    rep = report(cfg, results)
    assert set(rep) == {"config", "checks", "status"}
    assert rep["status"] == "pass"
    assert {"check", "anchor", "samples", "max_residual", "tolerance", "passed", "wall_time"} <= set(rep["checks"][0])


def test_status_is_and_of_checks():
    cfg = CampaignConfig()
    good = CheckResult("a", "x", 1, 0.0, 1.0, True, 0.0)
    bad = CheckResult("b", "y", 1, 2.0, 1.0, False, 0.0)
    assert report(cfg, [good, bad])["status"] == "fail"
    assert report(cfg, [good])["status"] == "pass"


def test_verify_theta_cli(capsys):
    assert main(["verify", "theta", "--p", "0.25", "--q", "0.5", "--samples", "200", "--seed", "7"]) == 0
    out = capsys.readouterr().out
    assert "status: pass" in out


def test_verify_matrix_pairing_small(tmp_path):
    out = tmp_path / "r.json"
    assert main(["verify", "matrix-pairing", "--max-mn", "1", "--json", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert rep["status"] == "pass" and rep["config"]["max_mn"] == 1


def test_config_errors_exit_two(tmp_path, capsys):
    assert main(["verify", "theta", "--p", "2"]) == 2
    assert main(["verify", "nonsense"]) == 2
    bad = tmp_path / "bad.cfg"
    bad.write_text("colour = blue\n")
    assert main(["verify", "theta", "--config", str(bad)]) == 2
    assert main(["verify", "theta", "--config", str(tmp_path / "missing.cfg")]) == 2


def test_failing_check_exits_one(tmp_path):
    cfg = tmp_path / "strict.cfg"
    cfg.write_text("tol.theta = 1e-30\nsamples = 5\n")
    assert main(["verify", "theta", "--config", str(cfg)]) == 1


def test_config_precedence(tmp_path, monkeypatch):
    cfg = tmp_path / "c.cfg"
    cfg.write_text("# campaign settings\np = 0.3\nseed = 5\nmax-mn = 2\nsamples.theta = 17\ntol.star = 1e-9\n")
    parser = build_parser()
    monkeypatch.delenv(SEED_ENV, raising=False)
    c = build_config(parser.parse_args(["verify", "theta", "--config", str(cfg)]))
    assert (c.p, c.q, c.seed, c.max_mn, c.n("theta"), c.tol("star")) == (0.3, 0.5, 5, 2, 17, 1e-9)
    monkeypatch.setenv(SEED_ENV, "11")
    c = build_config(parser.parse_args(["verify", "theta", "--config", str(cfg)]))
    assert c.seed == 11
    c = build_config(parser.parse_args(["verify", "theta", "--config", str(cfg), "--seed", "12", "--p", "0.4"]))
    assert (c.seed, c.p) == (12, 0.4)


def test_eval_theta(capsys):
    assert main(["eval", "theta", "--z", "0.5", "--p", "0.2"]) == 0
    value = complex(capsys.readouterr().out.strip())
    assert abs(value - theta(0.5, 0.2)) < 1e-15


def test_eval_other_quantities(capsys):
    assert main(["eval", "rmatrix", "--entry", "1", "1", "1", "1"]) == 0
    assert complex(capsys.readouterr().out.strip()) == 1
    assert main(["eval", "pairing", "--first", "1", "1", "1", "--second", "1", "1", "1"]) == 0
    assert capsys.readouterr().out.strip().endswith("T_-2")
    assert main(["eval", "vseries", "--params", "1", "0.5"]) == 0
    assert complex(capsys.readouterr().out.strip()) == pytest.approx(1.0)
    assert main(["eval", "vseries", "--params", "0.3", "0.5"]) == 1
