import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from skewlab.catalog import all_instances, builtin_catalog, select_instance  # noqa: E402


@pytest.fixture(scope="session")
def catalog():
    return builtin_catalog()


@pytest.fixture(scope="session")
def instances(catalog):
    return all_instances(catalog)


@pytest.fixture(scope="session")
def inst(catalog):
    def pick(ring, sigma="id", module="regular"):
        return select_instance(catalog, ring, sigma, module)

    return pick


@pytest.fixture(scope="session")
def suite_reports(instances):
    """Full builtin suite at D = 2 over the whole catalog, computed once."""
    from skewlab.theorems import run_suite

    return {i.id: run_suite(i, 2) for i in instances}
