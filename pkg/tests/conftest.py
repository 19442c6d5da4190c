"""Shared fixtures for the choicenet test suite."""

import sys
from pathlib import Path

import numpy as np
import pytest

project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from choicenet.fields.label_field import LabelField, make_base
from choicenet.models.experiment_config import OUTPUT_DIR_ENV
from choicenet.numerics.base_approximator import certificate_cache


@pytest.fixture(autouse=True)
def isolated_environment(tmp_path, monkeypatch):
    """Keep reports out of the working tree and start every test with an empty cache."""
    monkeypatch.setenv(OUTPUT_DIR_ENV, str(tmp_path / "reports"))
    certificate_cache.clear()
    yield
    certificate_cache.clear()


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def identity_field():
    """x -> x on [0,1]."""
    return LabelField(make_base("identity", 1), {})


@pytest.fixture
def sin2_field():
    return LabelField(make_base("sin2pi", 1), {})
