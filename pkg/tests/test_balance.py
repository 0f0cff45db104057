from fractions import Fraction

import pytest

from c5frac.balance import (
    balanced_sizes,
    claim4_large_constant,
    descending_compositions,
    final_expression,
    induction_chain,
    verify_balance_bruteforce,
    verify_balance_small,
    verify_cstar_thresholds,
    verify_proposition_step,
)
from c5frac.blowup import partition_cycle_count
from c5frac.constants import DEFAULT


def test_balanced_sizes():
    assert balanced_sizes(12) == (3, 3, 2, 2, 2)
    assert sum(balanced_sizes(1003)) == 1003
    assert max(balanced_sizes(999)) - min(balanced_sizes(999)) <= 1


@pytest.mark.parametrize("n", [5, 9, 13, 20])
def test_compositions_are_complete(n):
    from itertools import product

    brute = {tuple(sorted(s, reverse=True)) for s in product(range(1, n), repeat=5) if sum(s) == n}
    assert set(descending_compositions(n)) == brute


def test_pruned_search_agrees_with_bruteforce(table):
    for n in range(5, 60):
        assert verify_balance_bruteforce(n, table)
    report = verify_balance_small(59, table)
    assert report.verdict and report.witness is None


def test_pruned_search_finds_planted_witness(table):
    # with a lowered target any composition beats it, so the search must return one
    from c5frac.balance import BalanceReport, _search_beating

    c = max(Fraction(table.count(m), m**5) for m in range(5, 41))
    report = BalanceReport(True, 40)
    hit = _search_beating(40, 0, balanced_sizes(40), table, c, report)
    assert hit is not None and sum(hit) == 40


def test_balance_to_1000(table):
    report = verify_balance_small(1000, table)
    assert report.verdict
    # the bound cuts most of the tree
    assert report.leaves < report.nodes


def test_large_n_constant_positive(table):
    value = claim4_large_constant(DEFAULT, table=table)
    assert value > 0
    assert value == DEFAULT.box_lo**3 - 8 * table.density(166) / 120 * DEFAULT.box_hi**3


def test_thresholds(table):
    report = verify_cstar_thresholds(table)
    assert report.verdict, report.failures
    assert report.small_min == min(table.cstar(n) for n in range(9, 100))
    assert report.large_min == min(table.cstar(n) for n in range(1000, 5001))
    assert report.c166 <= Fraction("0.04086")


def test_thresholds_need_table_range():
    from c5frac.blowup import cycle_table

    with pytest.raises(ValueError):
        verify_cstar_thresholds(cycle_table(100))


def test_chain_links(table):
    for n in (10, 57, 200):
        for i in range(5):
            value, exact, s1, s2, s3 = induction_chain(n, i, table)
            assert value == exact
            assert exact >= s1 >= s2 >= s3
            if i == 0:
                assert s2 == s3


def test_final_expression_nondecreasing_in_n():
    C = DEFAULT.cstar_large
    assert final_expression(1001, 0, C) == final_expression(1000, 0, C) > C
    for i in range(1, 5):
        assert final_expression(1001, i, C) > final_expression(1000, i, C) > C


def test_induction_step_slice(table):
    report = verify_proposition_step(1000, 1000, table)
    assert report.verdict, report.failures[:3]
    assert len(report.base_values) == 5


def test_partition_count_symmetric(table):
    assert partition_cycle_count((3, 2, 2, 2, 2), table) == partition_cycle_count((2, 2, 3, 2, 2), table)
