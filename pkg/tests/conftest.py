import logging

import pytest

from eop_report.app.config import settings
from eop_report.app.core.records import RunRecord
from eop_report.app.data.csv_files import write_runs
from eop_report.app.data.mdp_file import load_mdp


@pytest.fixture(autouse=True)
def _reset_package_logger():
    """The CLI installs its own handler; undo it so caplog keeps working."""
    yield
    package_logger = logging.getLogger("eop_report")
    for handler in list(package_logger.handlers):
        package_logger.removeHandler(handler)
    package_logger.propagate = True
    package_logger.setLevel(logging.NOTSET)


@pytest.fixture(scope="session")
def windy_mdp():
    return load_mdp(settings.DEFAULT_MDP_FILE)


@pytest.fixture(scope="session")
def calm_mdp():
    return load_mdp(settings.CALM_MDP_FILE)


@pytest.fixture
def hopper_runs(tmp_path):
    """Three BC assignments whose expected best returns are 1794, 2057, 2179."""
    records = [
        RunRecord("BC", "Hopper-v3-medium-1000", "bc-a", 0, 1159.5),
        RunRecord("BC", "Hopper-v3-medium-1000", "bc-b", 0, 1879.5),
        RunRecord("BC", "Hopper-v3-medium-1000", "bc-c", 0, 2343.0),
        RunRecord("CQL", "Hopper-v3-medium-1000", "cql-a", 0, 1500.0),
        RunRecord("CQL", "Hopper-v3-medium-1000", "cql-b", 0, 2500.0),
    ]
    return write_runs(records, tmp_path / "runs.csv")


@pytest.fixture
def rankings_dir():
    return settings.ASSETS_DIR / "rankings"
