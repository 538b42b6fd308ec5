"""Shared fixtures for the hypersect test suite"""
import logging
import os
import sys

import pytest
from dotenv import load_dotenv

# Add the project root to Python path
sys.path.append(os.path.dirname(os.path.abspath(__file__)))

load_dotenv()

logging.basicConfig(level=logging.INFO, format="%(asctime)s - %(levelname)s - %(message)s")

from core.poset import context_for  # noqa: E402
from core.utils import parse_root_label  # noqa: E402


@pytest.fixture(scope="session")
def g2_adjoint():
    return context_for("G", 2, "adjoint")


@pytest.fixture(scope="session")
def g2_qm():
    return context_for("G", 2, "quasi-minuscule")


@pytest.fixture(scope="session")
def a2_adjoint():
    return context_for("A", 2, "adjoint")


@pytest.fixture(scope="session")
def b3_adjoint():
    return context_for("B", 3, "adjoint")


@pytest.fixture(scope="session")
def c3_qm():
    return context_for("C", 3, "quasi-minuscule")


@pytest.fixture(scope="session")
def f4_adjoint():
    return context_for("F", 4, "adjoint")


@pytest.fixture(scope="session")
def f4_qm():
    return context_for("F", 4, "quasi-minuscule")


@pytest.fixture
def root():
    """root('3a1+a2', 2) -> (3, 1)"""
    return parse_root_label
