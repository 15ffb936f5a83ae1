from __future__ import annotations

from pathlib import Path

import pytest

from olog import dsl, instances

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def load_olog(name: str):
    spec, diags = dsl.parse_olog((FIXTURES / name).read_text(encoding="utf-8"), name)
    errors = [d for d in diags if d.severity == dsl.ERROR]
    assert spec is not None and not errors, errors
    return spec


def load_data(dirname: str, spec):
    return instances.load_instances(FIXTURES / dirname, spec)


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def family_spec():
    return load_olog("family.olog")


@pytest.fixture(scope="session")
def employee_spec():
    return load_olog("employee.olog")


@pytest.fixture(scope="session")
def factorial_spec():
    return load_olog("factorial.olog")


@pytest.fixture(scope="session")
def metric_spec():
    return load_olog("metric.olog")


@pytest.fixture(scope="session")
def duck_spec():
    return load_olog("duck.olog")


@pytest.fixture(scope="session")
def family_data(family_spec):
    return load_data("data_family", family_spec)


@pytest.fixture(scope="session")
def employee_data(employee_spec):
    return load_data("data_employee", employee_spec)


@pytest.fixture(scope="session")
def factorial_data(factorial_spec):
    return load_data("data_factorial", factorial_spec)


@pytest.fixture(scope="session")
def metric_data(metric_spec):
    return load_data("data_metric", metric_spec)


@pytest.fixture(scope="session")
def duck_data(duck_spec):
    return load_data("data_duck", duck_spec)
