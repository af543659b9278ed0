import numpy as np
import pytest

from ybelab.checks import Check, Report, find_identity, group_table_checks
from ybelab.groups import cyclic_group


def _names(checks):
    return [c.name for c in checks]


def test_clean_table_passes_all_four():
    checks = group_table_checks(cyclic_group(5).table)
    assert _names(checks) == ["latin", "identity", "associativity", "inverses"]
    assert all(c.ok for c in checks)


def test_prefix_is_prepended():
    checks = group_table_checks(cyclic_group(2).table, prefix="dot.")
    assert _names(checks) == ["dot.latin", "dot.identity",
                              "dot.associativity", "dot.inverses"]


def test_out_of_range_entry_blocks_the_rest():
    table = np.array([[0, 1], [1, 9]])
    checks = group_table_checks(table)
    assert not checks[0].ok and "out of range" in checks[0].detail
    assert all(not c.ok and "not evaluated" in c.detail for c in checks[1:])


def test_repeated_row_value_is_located():
    checks = group_table_checks(np.array([[0, 1], [1, 1]]))
    latin = checks[0]
    assert not latin.ok and latin.witness == (1,) and "row" in latin.detail


def test_malformed_shape():
    checks = group_table_checks(np.zeros((2, 3), dtype=np.int32))
    assert not checks[0].ok and "not square" in checks[0].detail


def test_identity_misplacement_reports_the_index():
    # Subtraction mod 3 has only a right identity.
    table = np.array([[(i - j) % 3 for j in range(3)] for i in range(3)])
    checks = group_table_checks(table)
    named = {c.name: c for c in checks}
    assert not named["identity"].ok
    shifted = np.array([[(i + j + 1) % 3 for j in range(3)] for i in range(3)])
    named = {c.name: c for c in group_table_checks(shifted)}
    assert not named["identity"].ok and named["identity"].witness == (2,)


def test_nonassociative_loop_witness_matches_brute_force():
    table = np.array([
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 3, 4, 0, 1],
        [3, 4, 1, 2, 0],
        [4, 2, 0, 1, 3],
    ])
    first = None
    for a in range(5):
        for b in range(5):
            for c in range(5):
                if table[table[a, b], c] != table[a, table[b, c]]:
                    first = (a, b, c)
                    break
            if first:
                break
        if first:
            break
    named = {c.name: c for c in group_table_checks(table)}
    assert not named["associativity"].ok
    assert named["associativity"].witness == first


def test_associativity_can_be_skipped():
    checks = group_table_checks(cyclic_group(64).table, check_assoc=False)
    named = {c.name: c for c in checks}
    assert named["associativity"].ok and named["associativity"].detail == "skipped"


def test_find_identity():
    assert find_identity(cyclic_group(3).table) == 0
    shifted = [[(i + j + 1) % 3 for j in range(3)] for i in range(3)]
    assert find_identity(np.array(shifted)) == 2
    assert find_identity(np.array([[(i - j) % 3 for j in range(3)]
                                   for i in range(3)])) is None


def test_report_accessors():
    good = Check("a", True)
    bad = Check("b", False, (1, 2), "broken")
    report = Report((good, bad))
    assert not report.ok
    assert report.failures() == [bad]
    assert report.first_failure() is bad
    assert report["a"] is good
    with pytest.raises(KeyError):
        report["missing"]
    assert Report((good,)).first_failure() is None


def test_describe_lines():
    assert Check("law", True).describe() == "law PASS"
    text = Check("law", False, (3, 1), "left side").describe()
    assert text == "law FAIL at 3,1 left side"
