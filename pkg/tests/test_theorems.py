from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from commgenus._arith import primes_upto
from commgenus.cgraph import CliqueDecomposition, genus_clique_union
from commgenus.errors import HypothesisViolated, NoSolutions
from commgenus.theorems import (
    CASE_IDS,
    CLAIMED_LOWER_BOUNDS,
    TheoremCase,
    cases_for_primes,
    enumerate_l,
    infer_cases,
    l_constraint,
    predict,
    prediction_document,
    stated_claim,
    t_candidates,
    toroidality_condition,
)

PRIMES = primes_upto(13)
WITH_Q = {"T23a", "T23b", "T24", "T25a", "T25b", "T25c"}


def all_cases(primes):
    for cid in CASE_IDS:
        for p in primes:
            for q in primes if cid in WITH_Q else [None]:
                yield from cases_for_primes(cid, p, q)


def brute_l(coeffs, rhs):
    bound = rhs + 1
    return sorted(
        ls for ls in itertools.product(range(1, bound), repeat=len(coeffs)) if sum(c * x for c, x in zip(coeffs, ls)) == rhs
    )


# -- multiplicity vectors ------------------------------------------------------------


@pytest.mark.parametrize(
    "case_id, p, q",
    [("T21a", 2, None), ("T21a", 3, None), ("T22a", 5, None), ("T23b", 2, 3), ("T23b", 3, 2), ("T25c", 3, 5), ("T25c", 2, 2)],
)
def test_enumerate_l_matches_brute_force(case_id, p, q):
    coeffs, rhs = l_constraint(case_id, p, q)
    assert enumerate_l(case_id, p, q) == brute_l(coeffs, rhs)


def test_l_solutions_for_smallest_matrix_case():
    assert set(enumerate_l("T21a", 2)) == {(4, 1), (1, 2)}


def test_vacuous_constraint_gives_empty_list():
    assert enumerate_l("T23b", 2, 2) == []
    with pytest.raises(NoSolutions):
        predict(TheoremCase("T23b", 2, 2))


def test_no_solutions_is_a_hypothesis_violation():
    assert issubclass(NoSolutions, HypothesisViolated)


def test_l_constraint_unknown_case():
    with pytest.raises(ValueError):
        l_constraint("T24", 2, 3)


@pytest.mark.parametrize("p, q, expected", [(2, 2, [2]), (2, 3, [2]), (3, 2, [2]), (5, 3, [3]), (3, 5, [3, 5]), (7, 2, [2])])
def test_t_candidates(p, q, expected):
    assert t_candidates(p, q) == expected


# -- hypotheses ------------------------------------------------------------------------


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(id="T21a", p=4),
        dict(id="T24", p=2),
        dict(id="T23a", p=2, q=3, t=7),
        dict(id="T25a", p=2, q=3),
        dict(id="T25b", p=3, q=2),
        dict(id="T21a", p=2, l=(1, 1)),
        dict(id="T21a", p=2, l=(4, 1, 1)),
        dict(id="T21a", p=2, l=(7, 0)),
        dict(id="T99", p=2),
    ],
)
def test_invalid_cases_raise(kwargs):
    with pytest.raises(HypothesisViolated):
        TheoremCase(**kwargs)


def test_case_invariants():
    c = TheoremCase("T24", 2, 3)
    assert (c.ring_order, c.center_size) == (24, 6)
    assert c.requires_unity and not c.requires_nonfield_center
    assert str(c) == "T24(p=2, q=3)"
    assert TheoremCase("T23a", 2, 3).center_size == 1
    assert TheoremCase("T22b", 3).requires_nonfield_center


# -- predictions ---------------------------------------------------------------


def test_smallest_matrix_case_outcomes():
    pred = predict(TheoremCase("T21a", 2))
    assert pred.genera == {0, 1, 2}
    by_form = {o.form: (str(o.decomposition), o.genus) for o in pred.outcomes}
    assert by_form == {"case1": ("7K2", 0), "l=(4, 1)": ("4K2 + K6", 1), "l=(1, 2)": ("K2 + 2K6", 2)}


def test_fixed_l_gives_single_outcome():
    pred = predict(TheoremCase("T21a", 2, l=(4, 1)))
    assert [o.genus for o in pred.outcomes] == [1]
    assert toroidality_condition(TheoremCase("T21a", 2, l=(4, 1)))
    with pytest.raises(ValueError):
        toroidality_condition(TheoremCase("T21a", 2))


def test_prediction_match():
    pred = predict(TheoremCase("T21b", 2))
    assert pred.match(CliqueDecomposition.from_counts({4: 3})).form == "single"
    assert pred.match(CliqueDecomposition.from_counts({4: 2})) is None
    assert pred.match(CliqueDecomposition((4, 4, 4), all_cliques=False)) is None


def test_prediction_document_is_plain_data():
    doc = prediction_document(predict(TheoremCase("T24", 2, 3)))
    assert doc["case"] == "T24"
    assert doc["outcomes"] == [
        {"form": "single", "decomposition": [[6, 3]], "terms": [[6, 3, 1]], "genus": 3, "classification": "genus_g"}
    ]


def test_predicted_shapes_cover_noncentral_elements():
    for case in all_cases(PRIMES):
        try:
            pred = predict(case)
        except NoSolutions:
            continue
        for o in pred.outcomes:
            if case.id == "T22a" and o.l is not None:
                continue
            assert o.decomposition.vertex_count == case.ring_order - case.center_size, (case, o.form)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_t22a_mixed_shapes_are_encoded_as_stated(p):
    # the mixed shapes are reproduced verbatim; they do not cover p^5 - p^2 vertices
    pred = predict(TheoremCase("T22a", p))
    for o in pred.outcomes:
        if o.l is not None:
            assert o.decomposition.counts() == sorted([(p**3 - p * p, o.l[0]), (p**3 - p, o.l[1])])
            assert o.decomposition.vertex_count != p**5 - p * p


def test_only_vacuous_case_up_to_13():
    vacuous = []
    for case in all_cases(PRIMES):
        try:
            predict(case)
        except NoSolutions:
            vacuous.append(str(case))
    assert vacuous == ["T23b(p=2, q=2)"]


# -- stated closed forms ---------------------------------------------------------


def test_stated_claims_hold_for_primes_up_to_13():
    checked = 0
    for case in all_cases(PRIMES):
        try:
            pred = predict(case)
        except NoSolutions:
            continue
        for o in pred.outcomes:
            claim = stated_claim(case, o)
            assert claim.admits(o.genus), (case, o.form, o.genus, claim)
            assert o.genus == genus_clique_union(o.decomposition).value
            checked += 1
    assert checked > 1000


def test_claimed_lower_bounds_hold():
    for case in all_cases(PRIMES):
        bounds = [b for b in CLAIMED_LOWER_BOUNDS if b.case_id == case.id]
        if not bounds:
            continue
        for o in predict(case).outcomes:
            for b in bounds:
                if b.applies(case, o):
                    assert o.genus >= b.bound, (case, o.form)


@pytest.mark.parametrize("case_id", ["T21a", "T21b", "T22a", "T22b", "T24", "T25a", "T25b", "T25c", "T23a", "T23b"])
def test_every_case_has_some_claim(case_id):
    for case in all_cases([2, 3, 5]):
        if case.id != case_id:
            continue
        try:
            pred = predict(case)
        except NoSolutions:
            continue
        for o in pred.outcomes:
            if case_id == "T23a":
                continue  # some t values carry no statement at all
            assert not stated_claim(case, o).empty


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(CASE_IDS), st.sampled_from(PRIMES), st.sampled_from(PRIMES))
def test_prediction_genus_is_sum_of_clique_terms(case_id, p, q):
    for case in cases_for_primes(case_id, p, q if case_id in WITH_Q else None):
        try:
            pred = predict(case)
        except NoSolutions:
            continue
        for o in pred.outcomes:
            r = genus_clique_union(o.decomposition)
            assert o.genus == sum(k * g for _, k, g in r.terms)
            assert o.classification == ("planar" if o.genus == 0 else "toroidal" if o.genus == 1 else "genus_g")


# -- inference -----------------------------------------------------------------


@pytest.mark.parametrize(
    "order, center, unity, field, expected",
    [
        (16, 2, True, True, ["T21a(p=2)"]),
        (16, 4, True, False, ["T21b(p=2)", "T24(p=2, q=2)", "T25a(p=2, q=2)", "T25b(p=2, q=2)", "T25c(p=2, q=2)"]),
        (32, 8, True, False, ["T22b(p=2)"]),
        (24, 6, True, False, ["T24(p=2, q=3)"]),
        (12, 1, False, False, ["T23a(p=2, q=3)", "T23b(p=2, q=3)"]),
        (8, 1, False, False, ["T23a(p=2, q=2)"]),
        (16, 4, False, False, ["T25a(p=2, q=2)", "T25b(p=2, q=2)", "T25c(p=2, q=2)"]),
        (10, 1, False, False, []),
    ],
)
def test_infer_cases(order, center, unity, field, expected):
    assert [str(c) for c in infer_cases(order, center, unity, field)] == expected
