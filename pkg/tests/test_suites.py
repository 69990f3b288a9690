import pytest

from pgl.errors import InvalidInput
from pgl.suites import SUITES, run_suite, suite_names


def test_suite_names_include_all():
    """Every registered suite is listed, followed by 'all'."""
    assert suite_names() == list(SUITES) + ["all"]


def test_unknown_suite():
    """The error names the available suites."""
    with pytest.raises(InvalidInput, match="order-formulas"):
        run_suite("nope")


@pytest.mark.parametrize("name", ["convolution", "abelian-extension-chain", "ideal-sandwich"])
def test_small_suites_pass(name):
    """Each case of the quick suites holds."""
    report = run_suite(name)
    assert report.checks
    assert all(check.suite == name for check in report.checks)
    assert report.passed, [c.detail for c in report.checks if not c.passed]


@pytest.mark.slow
@pytest.mark.parametrize("name", sorted(SUITES))
def test_every_suite_passes(name):
    """Acceptance-scale run of every suite."""
    report = run_suite(name)
    assert report.passed, [c.detail for c in report.checks if not c.passed]
