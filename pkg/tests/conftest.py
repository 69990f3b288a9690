import logging

import pytest

from pgl.ffalg import field_make
from pgl.groups import symmetric


@pytest.fixture(scope="session", autouse=True)
def configure_logging():
    """
    Configure logging for tests and the pgl package.
    This fixture runs automatically before any tests.
    """
    root_logger = logging.getLogger()
    root_logger.setLevel(logging.DEBUG)

    # Clear existing handlers to avoid duplicate logs
    if root_logger.handlers:
        for handler in list(root_logger.handlers):
            root_logger.removeHandler(handler)

    console_handler = logging.StreamHandler()
    console_handler.setLevel(logging.DEBUG)
    formatter = logging.Formatter(
        "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
    )
    console_handler.setFormatter(formatter)
    root_logger.addHandler(console_handler)

    package_logger = logging.getLogger("pgl")
    package_logger.setLevel(logging.DEBUG)

    root_logger.info("Logging has been configured for tests")
    package_logger.debug("pgl package logger initialized at DEBUG level")


@pytest.fixture
def f2():
    return field_make(2)


@pytest.fixture
def f3():
    return field_make(3)


@pytest.fixture
def s3():
    return symmetric(3)


def pytest_configure(config):
    """Register custom markers."""
    config.addinivalue_line("markers", "slow: mark test as running acceptance-scale cases")
