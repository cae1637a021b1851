"""
conftest.py - Shared fixtures for the ttfkit test suite.

Fixtures:
    - logger_setup: Configures a logger writing every test's steps to 'ttfkit_tests.log'.
    - settings: The runtime Settings (environment / .env driven).
    - corpus_dir: Path of the golden corpus shipped with the repository.
    - rng: A seeded random.Random for property tests.
    - klein_bottle_group, dihedral_group: The two standard extension data models.
"""
import logging
import random
from pathlib import Path

import pytest

from ttfkit.config import get_settings
from ttfkit.log import LOG_FORMAT
from ttfkit.virtab import infinite_dihedral, klein_bottle

CORPUS = Path(__file__).resolve().parent.parent / "corpus"


def pytest_configure(config):
    for marker, text in (("sanity", "fast smoke checks of the worked examples"),
                         ("regression", "exact reproduction of recorded values"),
                         ("functional", "end-to-end behaviour of one operation"),
                         ("slow", "exhaustive sweeps that take several seconds")):
        config.addinivalue_line("markers", f"{marker}: {text}")


@pytest.fixture
def logger_setup():
    """
    Fixture for setting up a logger to capture the steps of a test.

    The logger writes to 'ttfkit_tests.log' with timestamps, logger names,
    levels and messages, at DEBUG level.

    Returns:
        Logger: A configured logging.Logger instance.
    """
    logger = logging.getLogger("ttfkit.tests")
    if not logger.handlers:
        file_handler = logging.FileHandler("ttfkit_tests.log")
        file_handler.setFormatter(logging.Formatter(LOG_FORMAT))
        logger.addHandler(file_handler)
    logger.setLevel(logging.DEBUG)
    return logger


@pytest.fixture
def settings():
    return get_settings()


@pytest.fixture
def corpus_dir():
    return CORPUS


@pytest.fixture
def rng():
    return random.Random(20240601)


@pytest.fixture(scope="session")
def klein_bottle_group():
    return klein_bottle()


@pytest.fixture(scope="session")
def dihedral_group():
    return infinite_dihedral()
