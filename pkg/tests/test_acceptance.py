"""Acceptance criteria, one test per criterion at its stated tolerance.

Each test prints a single [PASS]/[FAIL] line; the lines are repeated in the
pytest terminal summary. Run standalone with `python3 tests/test_acceptance.py`.
"""

import pytest

from pkostka import verify

RESULTS = []


def _run(check):
    line = check.line()
    RESULTS.append(line)
    print(line)
    assert check.passed, check.detail
    assert check.ok, f"over the time limit: {check.seconds:.2f}s > {check.limit}s"


def test_criterion_01_degree_126():
    _run(verify.degree_126())


def test_criterion_02_powers_of_two():
    _run(verify.powers_of_two())


def test_criterion_03_r_minus_two_one_one():
    _run(verify.r_minus_two_one_one())


@pytest.mark.slow
def test_criterion_04_multiply_by_p():
    _run(verify.multiply_by_p())


def test_criterion_05_adding_p_power():
    _run(verify.adding_p_power())


@pytest.mark.slow
def test_criterion_06_alpha_delta():
    _run(verify.alpha_delta())


@pytest.mark.slow
def test_criterion_07_engine_vs_oracle():
    _run(verify.engine_vs_oracle())


def test_criterion_08_vanishing():
    _run(verify.vanishing())


@pytest.mark.slow
def test_criterion_09_classification():
    _run(verify.classification())


def test_criterion_10_properties():
    checks = verify.properties()
    for c in checks[:-1]:
        print(c.line())
    _run(checks[-1])
    assert all(c.ok for c in checks)


if __name__ == "__main__":
    import sys
    checks = verify.run_suite("all")
    print(verify.format_table(checks))
    sys.exit(0 if all(c.ok for c in checks) else 1)
