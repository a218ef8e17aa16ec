import math
from pathlib import Path

import pytest

import nlsob

CONFIGS = Path(__file__).resolve().parents[2] / "configs"


def hat_samples(n=1024, lo=-4.0, hi=4.0):
    h = (hi - lo) / n
    return [max(0.0, 1.0 - abs(lo + i * h)) for i in range(n + 1)], lo, h


def test_gamma_and_exponent():
    assert nlsob.gamma_s(1, 2.0, 0.25) == pytest.approx(2 ** 2.5)
    assert nlsob.critical_exponent(1, 2.0, 0.25) == pytest.approx(4.0)


def test_critical_curve_fit():
    t, phi = nlsob.critical_curve("type=fractional,s=0.25")
    e, c = nlsob.fit_power(t, phi)
    assert e == pytest.approx(4.0, abs=1e-3)
    assert c == pytest.approx(32.0, abs=0.1)


def test_nu_sharp():
    assert nlsob.nu_sharp("type=fractional,s=0.25", 2.0) == pytest.approx(4.0, rel=1e-6)


def test_indicator_norm():
    n = 1024
    lo, h = -4.0, 8.0 / n
    values = [1.0 if 0.0 <= lo + i * h < 2.0 else 0.0 for i in range(n + 1)]
    assert nlsob.luxemburg_norm(values, lo, h, "type=fractional,s=0.25") == pytest.approx(
        2 ** 1.5, rel=1e-6
    )


def test_gns_on_hat():
    values, lo, h = hat_samples()
    rep = nlsob.verify_gns(values, lo, h, "type=fractional,s=0.25", t=2.0)
    assert rep["pass"]
    assert rep["margin"] > 0
    assert nlsob.seminorm(values, lo, h, "type=fractional,s=0.25") > 0


def test_inverse_problem():
    rep = nlsob.verify_inverse_problem(4.0, 32.0)
    assert rep["pass"]
    assert rep["extra"]["exponent"] == pytest.approx(-1.5, abs=1e-4)
    refused = nlsob.verify_inverse_problem(2.0, 32.0)
    assert refused["indeterminate"]


def test_describe_and_errors():
    text = nlsob.describe("type=max-fractional,s1=0.125,s2=0.25")
    assert "growth condition fails" in text
    with pytest.raises(ValueError):
        nlsob.describe("type=wave")


def test_run_config(tmp_path):
    cfg = tmp_path / "small.cfg"
    cfg.write_text(
        "suite = gns\nresolution = 256\n[kernel]\nname = f\ntype = fractional\ns = 0.25\n"
        "[function]\nname = hat\ntype = hat\n"
    )
    ok, reports = nlsob.run_config(str(cfg), str(tmp_path / "out"))
    assert ok
    assert reports and all(r["pass"] for r in reports)
    assert (tmp_path / "out" / "reports.jsonl").exists()
    assert math.isfinite(reports[0]["lhs"])
