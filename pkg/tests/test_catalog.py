from __future__ import annotations

import dataclasses

import networkx as nx
import pytest

from commgenus.catalog import (
    NO_WITNESS,
    CatalogEntry,
    Expected,
    builtin_entries,
    check_theorems,
    get_entry,
    search_witnesses,
    verify_catalog,
    verify_entry,
)
from commgenus.cgraph import clique_decomposition, commuting_graph, genus_oracle
from commgenus.errors import BudgetExceeded, ConstructionFailed, HypothesisMismatch, NotAssociative
from commgenus.finring import row_ring
from commgenus.theorems import TheoremCase, infer_cases, predict

NAMES = [e.name for e in builtin_entries()]


def brute_decomposition(R):
    mul = R.mul.tolist()
    n = R.order
    central = {z for z in range(n) if all(mul[z][x] == mul[x][z] for x in range(n))}
    H = nx.Graph()
    H.add_nodes_from(x for x in range(n) if x not in central)
    H.add_edges_from((x, y) for x in H for y in H if x < y and mul[x][y] == mul[y][x])
    comps = [H.subgraph(c) for c in nx.connected_components(H)]
    assert all(c.number_of_edges() == c.number_of_nodes() * (c.number_of_nodes() - 1) // 2 for c in comps)
    sizes = sorted(c.number_of_nodes() for c in comps)
    return sorted((s, sizes.count(s)) for s in set(sizes)), len(central)


@pytest.mark.parametrize("name", NAMES)
def test_expected_values_match_brute_force(name):
    e = get_entry(name)
    counts, center_size = brute_decomposition(e.build())
    assert tuple(counts) == e.expected.decomposition
    assert center_size == e.expected.center_size


@pytest.mark.parametrize("name", ["M2(F2)", "T2(F2)xZ2", "M2(F2)xZ2", "Row(F2)", "Row(F3)", "Row2(F2)"])
def test_expected_genus_matches_oracle(name):
    e = get_entry(name)
    assert genus_oracle(commuting_graph(e.build())).value == e.expected.genus


def test_catalog_verifies():
    report = verify_catalog()
    assert report.ok, report.table()
    assert report.passed == len(NAMES) == 11
    doc = report.document()
    assert doc["summary"] == {"entries": 11, "passed": 11, "failed": 0}


def test_catalog_rows_are_sorted_and_deterministic():
    a, b = verify_catalog().table(), verify_catalog().table()
    assert a == b
    rows = [line.split()[0] for line in a.splitlines()[2:-1]]
    assert rows == sorted(NAMES)


def test_unknown_entry():
    with pytest.raises(KeyError):
        get_entry("nope")


def test_wrong_expectation_is_a_mismatch():
    e = get_entry("M2(F2)")
    wrong = dataclasses.replace(e, expected=Expected(2, ((2, 6),), 0))
    row = verify_entry(wrong)
    assert not row.expected_ok and not row.ok


def test_construction_failure_is_reported():
    def broken():
        raise NotAssociative("table is not associative")

    e = CatalogEntry("broken", "broken()", broken, None, Expected(1, (), 0))
    with pytest.raises(ConstructionFailed):
        verify_entry(e)
    report = verify_catalog([e])
    assert not report.ok and "ConstructionFailed" in report.rows[0].error


def test_hypothesis_mismatch():
    e = dataclasses.replace(get_entry("M2(F2)"), case=TheoremCase("T21b", 2))
    with pytest.raises(HypothesisMismatch):
        verify_entry(e)


# -- rings outside the predicted shapes ---------------------------------------------


def test_width_two_row_ring_over_f2_lies_outside_prediction():
    R = row_ring(2, width=2)
    d = clique_decomposition(commuting_graph(R))
    assert str(d) == "4K1 + K3"
    cases = infer_cases(R.order, len(R.center), R.unity is not None, False)
    assert [str(c) for c in cases] == ["T23a(p=2, q=2)"]
    assert predict(cases[0]).match(d) is None
    assert [str(o.decomposition) for o in predict(cases[0]).outcomes] == ["7K1"]
    assert not check_theorems(cases, d)[0].ok


def test_width_two_row_ring_over_f3_lies_outside_prediction():
    R = row_ring(3, width=2)
    d = clique_decomposition(commuting_graph(R))
    assert str(d) == "9K2 + K8"
    cases = infer_cases(R.order, len(R.center), R.unity is not None, False)
    assert cases and all(predict(c).match(d) is None for c in cases)
    assert {o.genus for c in cases for o in predict(c).outcomes} == {0, 4}


# -- witness search ----------------------------------------------------------------


def test_search_order_4_finds_row_ring_shapes():
    report = search_witnesses(4, 1)
    assert report.searched == [("Z2 x Z2", 256)]
    assert report.witnesses and report.note is None
    assert {str(w.decomposition) for w in report.witnesses} == {"3K1"}
    assert all(w.matched is None for w in report.witnesses)


def test_search_order_12_reports_no_witness():
    report = search_witnesses(12, 1)
    assert report.searched == [("Z2 x Z6", 20736)]
    assert report.witnesses == [] and report.note == NO_WITNESS
    assert report.ok
    assert NO_WITNESS in report.lines()[-2]


def test_search_order_16_center_4_matches_prediction():
    report = search_witnesses(16, 4, budget=10**6)
    assert report.witnesses
    assert all(w.matched for w in report.witnesses)
    assert report.ok


def test_search_skips_groups_over_budget():
    report = search_witnesses(8, 1)
    assert [g for g, _ in report.skipped] == ["Z2 x Z2 x Z2"]
    assert [g for g, _ in report.searched] == ["Z2 x Z4"]


def test_search_raises_when_everything_is_over_budget():
    with pytest.raises(BudgetExceeded):
        search_witnesses(8, 1, budget=10)
