from pathlib import Path

import pytest

from irscrb import load_scenario

SCENARIO_PATH = Path(__file__).resolve().parent.parent / "scenarios" / "default.yaml"


@pytest.fixture(scope="session")
def default_loaded():
    return load_scenario(SCENARIO_PATH)
