"""The acceptance gate: one test per published claim, at the stated budget.

Each test runs the corresponding selftest case from scratch and asserts
both the verdict and the runtime ceiling (where one is stated).  Run with
``pytest tests/test_acceptance.py -v`` for one pass/fail line per criterion;
``monoidkit selftest`` prints the same cases as an expected-vs-computed
table.
"""

import pytest

from monoidkit import selftest

# (case function, runtime ceiling in seconds or None)
CRITERIA = [
    (selftest.case_01_class_group, 1.0),
    (selftest.case_02_coniveau_graded, 1.0),
    (selftest.case_03_factorial, 1.0),
    (selftest.case_04_pc_is_rooted_tree, 60.0),
    (selftest.case_05_gamma_pc_is_free, 60.0),
    (selftest.case_06_burnside, 30.0),
    (selftest.case_07_devissage, 30.0),
    (selftest.case_08_localization, 120.0),
    (selftest.case_09_quotient_laws, None),
    (selftest.case_10_filtered_and_condition_w, None),
    (selftest.case_11_key_diagram, 120.0),
    (selftest.case_12_quotient_is_localization, None),
    (selftest.case_13_dvm, None),
    (selftest.case_14_gersten, None),
]


@pytest.mark.parametrize("case_fn,budget", CRITERIA,
                         ids=[fn.__name__[5:] for fn, _ in CRITERIA])
def test_criterion(case_fn, budget):
  result = case_fn()
  assert result.passed, result.row()
  if budget is not None:
    assert result.seconds < budget, \
        f"{result.name} took {result.seconds:.1f}s (budget {budget:.0f}s)"


def test_every_criterion_has_a_case():
  assert [fn for fn, _ in CRITERIA] == list(selftest.ALL_CASES)
