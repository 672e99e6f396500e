import pytest

from reebtop.verify import INSTANCE_BUILDERS, build_instance, verify_double_attachment


@pytest.fixture(scope="session")
def doubles_instances():
    return {name: build_instance(name) for name in INSTANCE_BUILDERS}


@pytest.fixture(scope="session")
def doubles_reports(doubles_instances):
    return {
        name: verify_double_attachment(inst)
        for name, inst in doubles_instances.items()
    }


def claim_by_suffix(report, suffix):
    for claim in report["claims"]:
        if claim["claim_id"].endswith(suffix):
            return claim
    raise AssertionError(f"no claim ending in {suffix!r}")
