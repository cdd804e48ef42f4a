"""Executable predictions for the genus of commuting graphs of finite rings.

Each :class:`TheoremCase` names a family of non-commutative rings (by order,
center size and a few divisibility conditions) together with the shapes its
commuting graph may take.  :func:`predict` lists those shapes as disjoint
unions of complete graphs and evaluates their genus.  :func:`stated_claim`
separately encodes the closed-form genus expressions and planarity claims made
for each family, so the two can be compared.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from commgenus._arith import ceil_div, factorize, is_prime
from commgenus.cgraph import Classification, CliqueDecomposition, classify, genus_clique_union
from commgenus.errors import HypothesisViolated, NoSolutions

CASE_IDS = ("T21a", "T21b", "T22a", "T22b", "T23a", "T23b", "T24", "T25a", "T25b", "T25c")
_WITH_Q = {"T23a", "T23b", "T24", "T25a", "T25b", "T25c"}
_WITH_L = {"T21a": 2, "T22a": 2, "T23b": 4, "T25c": 2}
# cases whose statement requires a multiplicative identity
_UNITAL = {"T21a", "T21b", "T22a", "T22b", "T24"}


def _g(a: int, b: int) -> int:
    return ceil_div(a * b, 12)


def l_constraint(case_id: str, p: int, q: int | None = None) -> tuple[tuple[int, ...], int]:
    """Coefficients and right-hand side of the linear constraint on the multiplicities."""
    if case_id in ("T21a", "T22a"):
        return (1, p + 1), p * p + p + 1
    if case_id == "T23b":
        return (p - 1, q - 1, p * p - 1, p * q - 1), p * p * q - 1
    if case_id == "T25c":
        return (p - 1, q - 1), p * q - 1
    raise ValueError(f"{case_id} has no multiplicity parameters")


def _positive_solutions(coeffs: tuple[int, ...], rhs: int) -> Iterator[tuple[int, ...]]:
    if len(coeffs) == 1:
        if rhs >= coeffs[0] and rhs % coeffs[0] == 0:
            yield (rhs // coeffs[0],)
        return
    reserve = sum(coeffs[1:])
    x = 1
    while coeffs[0] * x + reserve <= rhs:
        for rest in _positive_solutions(coeffs[1:], rhs - coeffs[0] * x):
            yield (x,) + rest
        x += 1


def enumerate_l(case_id: str, p: int, q: int | None = None) -> list[tuple[int, ...]]:
    """All positive solutions of the case's constraint, lexicographically.

    An empty list means the case is vacuous for these primes.
    """
    return list(_positive_solutions(*l_constraint(case_id, p, q)))


def t_candidates(p: int, q: int) -> list[int]:
    n = p * p * q - 1
    return sorted({t for t in (p, q, p * p, p * q) if n % (t - 1) == 0})


@dataclass(frozen=True)
class TheoremCase:
    id: str
    p: int
    q: int | None = None
    t: int | None = None
    l: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        if self.l is not None:
            object.__setattr__(self, "l", tuple(int(x) for x in self.l))
        cid, p, q = self.id, self.p, self.q
        if cid not in CASE_IDS:
            raise HypothesisViolated(f"unknown case {cid!r}; expected one of {', '.join(CASE_IDS)}")
        if not is_prime(p):
            raise HypothesisViolated(f"p = {p} is not prime")
        if cid in _WITH_Q:
            if q is None or not is_prime(q):
                raise HypothesisViolated(f"{cid} needs a prime q, got {q}")
        elif q is not None:
            raise HypothesisViolated(f"{cid} takes no q")
        if self.t is not None:
            if cid != "T23a":
                raise HypothesisViolated(f"{cid} takes no t")
            if self.t not in t_candidates(p, q):
                raise HypothesisViolated(
                    f"t = {self.t} is not one of p, q, p^2, pq with (t-1) | (p^2 q - 1) = {p * p * q - 1}"
                )
        if cid == "T25a" and (p * q - 1) % (q - 1):
            raise HypothesisViolated(f"(q-1) = {q - 1} does not divide pq-1 = {p * q - 1}")
        if cid == "T25b" and (p * q - 1) % (p - 1):
            raise HypothesisViolated(f"(p-1) = {p - 1} does not divide pq-1 = {p * q - 1}")
        if self.l is not None:
            if cid not in _WITH_L:
                raise HypothesisViolated(f"{cid} takes no multiplicity vector")
            coeffs, rhs = l_constraint(cid, p, q)
            if len(self.l) != len(coeffs):
                raise HypothesisViolated(f"{cid} needs {len(coeffs)} multiplicities, got {len(self.l)}")
            if min(self.l) < 1:
                raise HypothesisViolated("multiplicities must be positive")
            total = sum(a * x for a, x in zip(coeffs, self.l))
            if total != rhs:
                raise HypothesisViolated(f"multiplicities {self.l} give {total}, need {rhs}")

    @property
    def ring_order(self) -> int:
        p, q = self.p, self.q
        return {
            "T21": p**4,
            "T22": p**5,
            "T23": p * p * (q or 0),
            "T24": p**3 * (q or 0),
            "T25": p**3 * (q or 0),
        }[self.id[:3]]

    @property
    def center_size(self) -> int:
        p, q = self.p, self.q
        return {
            "T21a": p,
            "T21b": p * p,
            "T22a": p * p,
            "T22b": p**3,
            "T23a": 1,
            "T23b": 1,
            "T24": p * (q or 0),
        }.get(self.id, p * p)

    @property
    def requires_unity(self) -> bool:
        return self.id in _UNITAL

    @property
    def requires_nonfield_center(self) -> bool:
        return self.id.startswith("T22")

    def params(self) -> dict:
        out: dict = {"p": self.p}
        for key in ("q", "t", "l"):
            val = getattr(self, key)
            if val is not None:
                out[key] = list(val) if key == "l" else val
        return out

    def __str__(self) -> str:
        return f"{self.id}(" + ", ".join(f"{k}={v}" for k, v in self.params().items()) + ")"


@dataclass(frozen=True)
class Outcome:
    decomposition: CliqueDecomposition
    genus: int
    # which alternative produced it: "single", "case1", "t=...", or "l=(...)"
    form: str
    l: tuple[int, ...] | None = None
    t: int | None = None

    @property
    def classification(self) -> Classification:
        return classify(self.genus)


@dataclass(frozen=True)
class Prediction:
    case: TheoremCase
    outcomes: tuple[Outcome, ...] = field(default_factory=tuple)

    @property
    def genera(self) -> set[int]:
        return {o.genus for o in self.outcomes}

    def match(self, d: CliqueDecomposition) -> Outcome | None:
        if not d.all_cliques:
            return None
        return next((o for o in self.outcomes if o.decomposition.sizes == d.sizes), None)


def _templates(case: TheoremCase) -> list[tuple[str, list[tuple[int, int]], tuple | None, int | None]]:
    """``(form, [(clique size, count), ...], l, t)`` for every permitted shape."""
    cid, p, q = case.id, case.p, case.q
    out = []
    if cid in ("T21a", "T22a"):
        small = p * p - p if cid == "T21a" else p**3 - p * p
        if case.l is None:
            out.append(("case1", [(small, p * p + p + 1)], None, None))
        ls = [case.l] if case.l is not None else enumerate_l(cid, p)
        out += [(f"l={l}", [(small, l[0]), (p**3 - p, l[1])], l, None) for l in ls]
    elif cid == "T21b":
        out.append(("single", [(p**3 - p * p, p + 1)], None, None))
    elif cid == "T22b":
        out.append(("single", [(p**4 - p**3, p + 1)], None, None))
    elif cid == "T23a":
        ts = [case.t] if case.t is not None else t_candidates(p, q)
        out += [(f"t={t}", [(t - 1, (p * p * q - 1) // (t - 1))], None, t) for t in ts]
    elif cid == "T23b":
        ls = [case.l] if case.l is not None else enumerate_l(cid, p, q)
        sizes = (p - 1, q - 1, p * p - 1, p * q - 1)
        out += [(f"l={l}", list(zip(sizes, l)), l, None) for l in ls]
    elif cid == "T24":
        out.append(("single", [(p * p * q - p * q, p + 1)], None, None))
    elif cid == "T25a":
        out.append(("single", [(p * p * q - p * p, (p * q - 1) // (q - 1))], None, None))
    elif cid == "T25b":
        out.append(("single", [(p**3 - p * p, (p * q - 1) // (p - 1))], None, None))
    elif cid == "T25c":
        ls = [case.l] if case.l is not None else enumerate_l(cid, p, q)
        out += [(f"l={l}", [(p**3 - p * p, l[0]), (p * p * q - p * p, l[1])], l, None) for l in ls]
    return out


def predict(case: TheoremCase) -> Prediction:
    """Every commuting-graph shape the case permits, with its genus.

    Outcomes sharing a decomposition are merged, keeping the first.
    """
    outcomes: list[Outcome] = []
    seen = set()
    for form, parts, l, t in _templates(case):
        d = CliqueDecomposition.from_counts(parts)
        if d.sizes in seen:
            continue
        seen.add(d.sizes)
        outcomes.append(Outcome(d, genus_clique_union(d).value, form, l, t))
    if not outcomes:
        what = "t" if case.id == "T23a" else "multiplicity vector"
        raise NoSolutions(f"{case}: no admissible {what}; the case is vacuous")
    return Prediction(case, tuple(outcomes))


def toroidality_condition(case: TheoremCase) -> bool:
    pred = predict(case)
    if len(pred.outcomes) != 1:
        raise ValueError(f"{case} admits {len(pred.outcomes)} shapes; fix t or l first")
    return pred.outcomes[0].genus == 1


# -- stated values -------------------------------------------------------------


@dataclass(frozen=True)
class Claim:
    """What the statement asserts for one outcome.

    ``genus`` is the printed closed form (or explicit value), ``allowed`` a
    finite set of permitted values, ``at_least`` a lower bound.  Any field may
    be ``None`` when the statement says nothing of that kind.
    """

    genus: int | None = None
    allowed: frozenset[int] | None = None
    at_least: int | None = None

    @property
    def empty(self) -> bool:
        return self.genus is None and self.allowed is None and self.at_least is None

    def admits(self, value: int) -> bool:
        return (
            (self.genus is None or value == self.genus)
            and (self.allowed is None or value in self.allowed)
            and (self.at_least is None or value >= self.at_least)
        )


PLANAR = frozenset({0})
# "neither planar nor toroidal"
NONPLANAR_NONTOROIDAL = 2


def stated_claim(case: TheoremCase, outcome: Outcome) -> Claim:
    cid, p, q = case.id, case.p, case.q
    l, t = outcome.l, outcome.t
    NPT = NONPLANAR_NONTOROIDAL

    if cid in ("T21a", "T22a"):
        if p == 2:
            explicit = {"case1": 0, "l=(4, 1)": 1, "l=(1, 2)": 2}.get(outcome.form)
            return Claim(explicit, frozenset({0, 1, 2}))
        n1 = p * p - p if cid == "T21a" else p**3 - p * p
        g1 = _g(n1 - 3, n1 - 4)
        if l is None:
            return Claim((p * p + p + 1) * g1, at_least=NPT)
        return Claim(l[0] * g1 + l[1] * _g(p**3 - p - 3, p**3 - p - 4), at_least=NPT)

    if cid == "T21b":
        if p == 2:
            return Claim(0, PLANAR)
        return Claim((p + 1) * _g(p**3 - p * p - 3, p**3 - p * p - 4), at_least=NPT)

    if cid == "T22b":
        return Claim((p + 1) * _g(p**4 - p**3 - 3, p**4 - p**3 - 4), at_least=NPT)

    if cid == "T23a":
        planar = (
            (t == p == q == 2)
            or (t == p * p == 4 and q >= 3)
            or (t == p and p in (2, 3, 5) and q >= 3)
            or (t == q and q in (2, 3, 5) and p >= 3)
        )
        closed = (
            (t == p and p >= 7 and q >= 3)
            or (t == q and q >= 7 and p >= 3)
            or (p >= 3 and q >= 3 and t in (p * p, p * q))
        )
        genus = (p * p * q - 1) // (t - 1) * _g(t - 4, t - 5) if closed else None
        return Claim(genus, PLANAR if planar else None, NPT if closed else None)

    if cid == "T23b":
        l1, l2, l3, l4 = l
        if p == q == 2:
            return Claim(allowed=PLANAR)
        if (p, q) == (2, 3):
            return Claim(l4, at_least=1)
        if p == 2:
            g = l2 * _g(q - 4, q - 5) + l4 * _g(2 * q - 4, 2 * q - 5)
        elif q == 2 and p == 3:
            g = 2 * l3 + l4
        elif q == 2:
            g = l1 * _g(p - 4, p - 5) + l3 * _g(p * p - 4, p * p - 5) + l4 * _g(2 * p - 4, 2 * p - 5)
        elif p == q == 3:
            g = 2 * (l3 + l4)
        elif p == 3:
            g = l2 * _g(q - 4, q - 5) + 2 * l3 + l4 * _g(3 * q - 4, 3 * q - 5)
        elif q == 3:
            g = l1 * _g(p - 4, p - 5) + l3 * _g(p * p - 4, p * p - 5) + l4 * _g(3 * p - 4, 3 * p - 5)
        else:
            g = (
                l1 * _g(p - 4, p - 5)
                + l2 * _g(q - 4, q - 5)
                + l3 * _g(p * p - 4, p * p - 5)
                + l4 * _g(p * q - 4, p * q - 5)
            )
        return Claim(g, at_least=NPT)

    if cid == "T24":
        if p == q == 2:
            return Claim(0, PLANAR)
        if p == 2:
            return Claim(3 * _g(2 * q - 3, 2 * q - 4), at_least=NPT)
        if q == 2:
            n = 2 * p * p - 2 * p
            return Claim((p + 1) * _g(n - 3, n - 4), at_least=NPT)
        n = p * p * q - p * q
        return Claim((p + 1) * _g(n - 3, n - 4), at_least=NPT)

    if cid == "T25a":
        if p == q == 2:
            return Claim(allowed=PLANAR)
        if q == 2:
            return Claim((2 * p - 1) * _g(p * p - 3, p * p - 4), at_least=NPT)
        n = p * p * q - p * p
        return Claim((p * q - 1) // (q - 1) * _g(n - 3, n - 4), at_least=NPT)

    if cid == "T25b":
        if p == 2:
            return Claim(allowed=PLANAR)
        n = p**3 - p * p
        return Claim((p * q - 1) // (p - 1) * _g(n - 3, n - 4), at_least=NPT)

    if cid == "T25c":
        l1, l2 = l
        big = _g(p**3 - p * p - 3, p**3 - p * p - 4)
        if p == q == 2:
            return Claim(allowed=PLANAR)
        if p == 2:
            return Claim(l2 * _g(4 * q - 7, 4 * q - 8), at_least=NPT)
        if q == 2:
            return Claim(l1 * big + l2 * _g(p * p - 3, p * p - 4), at_least=NPT)
        n = p * p * q - p * p
        return Claim(l1 * big + l2 * _g(n - 3, n - 4), at_least=NPT)

    raise AssertionError(cid)


@dataclass(frozen=True)
class LowerBound:
    case_id: str
    description: str
    bound: int

    def applies(self, case: TheoremCase, outcome: Outcome) -> bool:
        p, q = case.p, case.q
        return {
            "T21a": p >= 3,
            "T21b": p >= 3,
            "T22a": p >= 3 and outcome.form == "case1",
            "T22b": True,
            "T24": p == 2 and q is not None and q >= 3,
            "T25c": q == 2 and p >= 3,
        }[self.case_id]


CLAIMED_LOWER_BOUNDS = (
    LowerBound("T21a", "p >= 3", 13),
    LowerBound("T21b", "p >= 3", 72),
    LowerBound("T22a", "p >= 3, single-size shape", 234),
    LowerBound("T22b", "all p", 6),
    LowerBound("T24", "p = 2, q >= 3", 3),
    LowerBound("T25c", "q = 2, p >= 3", 21),
)


def cases_for_primes(case_id: str, p: int, q: int | None) -> list[TheoremCase]:
    """Fully parameterized cases (every admissible t) for the given primes.

    Empty when the hypothesis cannot hold for these primes.
    """
    try:
        base = TheoremCase(case_id, p, q)
    except HypothesisViolated:
        return []
    if case_id == "T23a":
        return [TheoremCase(case_id, p, q, t=t) for t in t_candidates(p, q)]
    return [base]


def infer_cases(order: int, center_size: int, has_unity: bool, center_is_field: bool) -> list[TheoremCase]:
    """Cases whose hypotheses a ring with these invariants satisfies."""
    primes = list(factorize(order)) if order > 1 else []
    found = []
    for cid in CASE_IDS:
        for p in primes:
            for q in primes if cid in _WITH_Q else [None]:
                try:
                    case = TheoremCase(cid, p, q)
                except HypothesisViolated:
                    continue
                if case.ring_order != order or case.center_size != center_size:
                    continue
                if case.requires_unity and not has_unity:
                    continue
                if case.requires_nonfield_center and center_is_field:
                    continue
                if cid in _WITH_L and not enumerate_l(cid, p, q):
                    continue
                if cid == "T23a" and not t_candidates(p, q):
                    continue
                found.append(case)
    return found


def prediction_document(pred: Prediction) -> dict:
    return {
        "case": pred.case.id,
        "params": pred.case.params(),
        "ring_order": pred.case.ring_order,
        "center_size": pred.case.center_size,
        "outcomes": [
            {
                "form": o.form,
                "decomposition": [[s, k] for s, k in o.decomposition.counts()],
                "terms": [[s, k, g] for s, k, g in genus_clique_union(o.decomposition).terms],
                "genus": o.genus,
                "classification": o.classification,
            }
            for o in pred.outcomes
        ],
    }
