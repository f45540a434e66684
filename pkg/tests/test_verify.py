from __future__ import annotations

import json

import pytest

from krein_photon import verify


@pytest.mark.parametrize("suite", ["sl2c", "cone", "krein", "transversal"])
def test_fast_suites_pass_and_are_deterministic(suite):
    a = verify.run(suite, seed=3)
    b = verify.run(suite, seed=3)
    assert a.passed, a.failing()
    assert a.to_json() == b.to_json()


def test_report_schema():
    r = verify.run("sl2c", seed=0, samples=50)
    d = json.loads(r.to_json())
    assert d["schema"] == 1
    assert d["passed"] is True
    assert "wall_time" not in d
    assert set(d["environment"]) == {"precision", "quadrature", "threads"}
    for c in d["checks"]:
        assert set(c) >= {"name", "anchor", "max_residual", "tolerance", "passed"}
        assert c["anchor"]


def test_timing_is_opt_in():
    assert "wall_time" in verify.run("sl2c", samples=10, timing=True).to_dict()


def test_zero_samples_is_a_flagged_vacuous_pass():
    r = verify.run("sl2c", samples=0)
    assert r.passed and r.checks == []
    assert any("vacuous" in w for w in r.warnings)


def test_failing_check_fails_report():
    bad = verify.Check("x", "anchor", 1.0, 0.5)
    r = verify.Report("custom", 0, None, [bad], {})
    assert not r.passed and r.failing() == ["x"]


def test_unknown_suite():
    with pytest.raises(ValueError):
        verify.run("nope")


def test_reference_mass_oracle():
    # σ → 0 limit: ∫ G dμ ≈ (2π)^{3/2} σ³ / (2|c|)
    import math

    c, s = 3.0, 0.01
    assert verify.reference_mass((c, 0, 0), s) == pytest.approx((2 * math.pi) ** 1.5 * s ** 3 / (2 * c), rel=1e-4)
