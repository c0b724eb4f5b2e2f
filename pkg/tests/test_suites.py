"""Suite plumbing: schema, determinism, and quick reduced-size runs."""

import pytest

from sphereconv.exceptions import GeometryError
from sphereconv.serialization import dumps, stamp_report
from sphereconv.suites import SUITES, RunConfig, run_suite

REQUIRED_KEYS = {"suite", "seed", "ambient_dim", "assertions", "passed"}


def small(name):
    """Cheap knobs per suite so the whole matrix stays fast in unit tests."""
    knobs = {
        "bridge": RunConfig(trials=10, samples=20),
        "madd": RunConfig(trials=6, samples=20),
        "covariance": RunConfig(trials=8, samples=128),
        "dichotomy": RunConfig(trials=10, samples=128),
        "metrics": RunConfig(trials=4, samples=512),
        "star": RunConfig(trials=10, samples=16),
        "polar": RunConfig(samples=32),
        "discontinuity": RunConfig(samples=64),
    }
    return knobs[name]


@pytest.mark.parametrize("name", sorted(SUITES))
def test_suite_schema_and_pass(name):
    rep = run_suite(name, small(name))
    assert REQUIRED_KEYS <= set(rep)
    assert rep["suite"] == name
    assert isinstance(rep["assertions"], list) and rep["assertions"]
    for a in rep["assertions"]:
        assert {"name", "identity", "observed", "tol", "passed"} <= set(a)
        assert isinstance(a["identity"], str) and a["identity"]
    assert rep["passed"] is True


@pytest.mark.parametrize("name", ["bridge", "star", "discontinuity"])
def test_suite_deterministic_bytes(name):
    a = run_suite(name, small(name))
    b = run_suite(name, small(name))
    assert dumps(a) == dumps(b)
    sa, sb = stamp_report(a), stamp_report(b)
    sa.pop("timestamp"), sb.pop("timestamp")
    assert dumps(sa) == dumps(sb)


def test_suite_seed_changes_observations():
    a = run_suite("bridge", RunConfig(seed=0, trials=10, samples=20))
    b = run_suite("bridge", RunConfig(seed=1, trials=10, samples=20))
    assert dumps(a) != dumps(b)


def test_unknown_suite_raises():
    with pytest.raises(GeometryError):
        run_suite("nope", RunConfig())


def test_dichotomy_reports_violation_magnitudes():
    rep = run_suite("dichotomy", RunConfig(trials=25, samples=128))
    names = {a["name"]: a for a in rep["assertions"]}
    falsified = [a for n, a in names.items() if "violation" in n or "falsif" in n]
    assert falsified, "dichotomy suite must carry falsification assertions"
    assert all(a["passed"] for a in falsified)
