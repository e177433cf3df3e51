import json

import pytest

from ptolemy.algebra import Field
from ptolemy.campaign import SUITES, CampaignConfig, run_suite, verify_campaign
from ptolemy.errors import ConfigError


@pytest.mark.parametrize("suite", SUITES)
def test_every_suite_passes_on_a_small_run(suite):
    summary = verify_campaign(CampaignConfig(suites=(suite,), n=3, samples=200, seed=1))
    assert summary.reports
    for r in summary.reports:
        assert r.violations == 0, (r.suite, r.field, r.checks)


def test_reports_are_identical_across_thread_counts():
    kw = dict(suite_name="ptolemy", field="H", n=3, samples=1300, seed=9)
    a = run_suite(threads=1, **kw).to_json()
    b = run_suite(threads=8, **kw).to_json()
    assert json.dumps(a) == json.dumps(b)


def test_fundamental_n2_is_in_the_equality_regime():
    r = run_suite("fundamental", "C", 2, 2000, 42)
    assert r.checks["r2_equality"]["max"] < 1e-8


def test_report_shape():
    r = run_suite("rcircle", "O", 2, 50, 3)
    doc = r.to_json()
    for key in ("suite", "field", "n", "samples", "seed", "violations",
                "max_abs_residual", "worst_input", "checks"):
        assert key in doc
    assert doc["worst_input"]["index"] in range(50)
    assert run_suite("algebra", "O", 2, 10, 0).n is None


def test_worst_input_is_reproducible():
    a = run_suite("isometry", "C", 2, 300, 5).worst_input
    b = run_suite("isometry", "C", 2, 300, 5).worst_input
    assert a == b


def test_tolerance_override_can_force_violations():
    r = run_suite("metric", "C", 2, 100, 0, tol=0.0)
    assert r.violations > 0


@pytest.mark.parametrize("kwargs", [
    dict(suites=("nope",)),
    dict(suites=()),
    dict(fields=("Q",)),
    dict(samples=0),
    dict(seed=-1),
    dict(threads=0),
    dict(tol=-1.0),
    dict(n=True),
])
def test_bad_configs(kwargs):
    with pytest.raises(ConfigError):
        CampaignConfig(**kwargs)


def test_n1_over_r_is_a_config_error():
    with pytest.raises(ConfigError):
        CampaignConfig(fields=(Field.R,), n=1).spaces()
