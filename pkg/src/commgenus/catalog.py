"""Concrete rings with known commuting graphs, and the verification harness."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable

from commgenus.cgraph import (
    DEFAULT_ORACLE_BUDGET,
    CliqueDecomposition,
    GenusResult,
    analyze_genus,
    clique_decomposition,
    commuting_graph,
    euler_lower_bound,
)
from commgenus.errors import BudgetExceeded, CommGenusError, ConstructionFailed, HypothesisMismatch
from commgenus.finring import (
    DEFAULT_ENUM_BUDGET,
    RingTable,
    abelian_groups,
    candidate_count,
    center_is_field,
    direct_product,
    enumerate_rings,
    integers_mod,
    matrix_ring,
    row_ring,
    upper_triangular_ring,
)
from commgenus.theorems import Prediction, TheoremCase, infer_cases, predict

NO_WITNESS = "no witness within budget"


@dataclass(frozen=True)
class Expected:
    center_size: int
    decomposition: tuple[tuple[int, int], ...]
    genus: int


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    recipe: str
    build: Callable[[], RingTable] = field(compare=False, repr=False)
    case: TheoremCase | None
    expected: Expected


def _product(*factors: Callable[[], RingTable]) -> Callable[[], RingTable]:
    def build() -> RingTable:
        ring = factors[0]()
        for f in factors[1:]:
            ring = direct_product(ring, f())
        return ring

    return build


def builtin_entries() -> list[CatalogEntry]:
    T2, M2, Z = upper_triangular_ring, matrix_ring, integers_mod
    return [
        CatalogEntry("M2(F2)", "matrix_ring(2)", lambda: M2(2), TheoremCase("T21a", 2), Expected(2, ((2, 7),), 0)),
        CatalogEntry("M2(F3)", "matrix_ring(3)", lambda: M2(3), TheoremCase("T21a", 3), Expected(3, ((6, 13),), 13)),
        CatalogEntry(
            "T2(F2)xZ2",
            "upper_triangular_ring(2) x integers_mod(2)",
            _product(lambda: T2(2), lambda: Z(2)),
            TheoremCase("T21b", 2),
            Expected(4, ((4, 3),), 0),
        ),
        CatalogEntry(
            "M2(F2)xZ2",
            "matrix_ring(2) x integers_mod(2)",
            _product(lambda: M2(2), lambda: Z(2)),
            TheoremCase("T22a", 2),
            Expected(4, ((4, 7),), 0),
        ),
        CatalogEntry(
            "T2(F2)xZ4",
            "upper_triangular_ring(2) x integers_mod(4)",
            _product(lambda: T2(2), lambda: Z(4)),
            TheoremCase("T22b", 2),
            Expected(8, ((8, 3),), 6),
        ),
        CatalogEntry(
            "T2(F2)xZ3",
            "upper_triangular_ring(2) x integers_mod(3)",
            _product(lambda: T2(2), lambda: Z(3)),
            TheoremCase("T24", 2, 3),
            Expected(6, ((6, 3),), 3),
        ),
        CatalogEntry(
            "T2(F3)xZ2",
            "upper_triangular_ring(3) x integers_mod(2)",
            _product(lambda: T2(3), lambda: Z(2)),
            TheoremCase("T24", 3, 2),
            Expected(6, ((12, 4),), 24),
        ),
        # trivial-center fixtures; not instances of any theorem case
        CatalogEntry("Row(F2)", "row_ring(2)", lambda: row_ring(2), None, Expected(1, ((1, 3),), 0)),
        CatalogEntry("Row(F3)", "row_ring(3)", lambda: row_ring(3), None, Expected(1, ((2, 4),), 0)),
        CatalogEntry("Row2(F2)", "row_ring(2, width=2)", lambda: row_ring(2, 2), None, Expected(1, ((1, 4), (3, 1)), 0)),
        CatalogEntry("Row2(F3)", "row_ring(3, width=2)", lambda: row_ring(3, 2), None, Expected(1, ((2, 9), (8, 1)), 2)),
    ]


def get_entry(name: str, entries: list[CatalogEntry] | None = None) -> CatalogEntry:
    for e in entries or builtin_entries():
        if e.name == name:
            return e
    raise KeyError(name)


@dataclass
class TheoremCheck:
    """Membership of a computed decomposition in one theorem's permitted shapes.

    ``variants`` lists every sub-case whose hypotheses hold; the theorem is
    satisfied when any of them permits the decomposition.
    """

    theorem: str
    variants: list[str]
    matched: str | None

    @property
    def ok(self) -> bool:
        return self.matched is not None


def check_theorems(cases: list[TheoremCase], d: CliqueDecomposition) -> list[TheoremCheck]:
    checks = []
    for theorem, group in itertools.groupby(cases, key=lambda c: c.id[:3]):
        group = list(group)
        matched = None
        for case in group:
            hit = predict(case).match(d)
            if hit is not None:
                matched = f"{case}: {hit.form}"
                break
        checks.append(TheoremCheck(theorem, [str(c) for c in group], matched))
    return checks


@dataclass
class VerificationRow:
    name: str
    case: str | None
    order: int
    center_size: int
    hypothesis_ok: bool
    decomposition: CliqueDecomposition
    genus: GenusResult
    euler_bound: int
    predicted: list[str]
    matched_outcome: str | None
    expected_ok: bool
    also: list[TheoremCheck] = field(default_factory=list)
    error: str | None = None

    @property
    def ok(self) -> bool:
        if self.error:
            return False
        in_prediction = self.case is None or self.matched_outcome is not None
        return (
            self.hypothesis_ok
            and self.expected_ok
            and in_prediction
            and self.decomposition.all_cliques
            and self.genus.value >= self.euler_bound
            and all(c.ok for c in self.also)
        )

    def document(self) -> dict:
        return {
            "name": self.name,
            "theorem_case": self.case,
            "order": self.order,
            "center_size": self.center_size,
            "hypothesis_check": self.hypothesis_ok,
            "decomposition": [[s, k] for s, k in self.decomposition.counts()],
            "all_cliques": self.decomposition.all_cliques,
            "genus": self.genus.value,
            "method": self.genus.method,
            "classification": self.genus.classification,
            "euler_lower_bound": self.euler_bound,
            "predicted_outcomes": self.predicted,
            "matched": self.matched_outcome,
            "expected_ok": self.expected_ok,
            "other_theorems": [{"theorem": c.theorem, "variants": c.variants, "matched": c.matched} for c in self.also],
            "ok": self.ok,
            "error": self.error,
        }


def _hypothesis_holds(R: RingTable, case: TheoremCase) -> bool:
    return (
        R.order == case.ring_order
        and len(R.center) == case.center_size
        and not R.is_commutative
        and (R.unity is not None or not case.requires_unity)
        and (not case.requires_nonfield_center or not center_is_field(R))
    )


def verify_entry(e: CatalogEntry, oracle_budget: int = DEFAULT_ORACLE_BUDGET) -> VerificationRow:
    """Build the ring from scratch and compare everything against predictions."""
    try:
        R = e.build()
    except CommGenusError as exc:
        raise ConstructionFailed(f"{e.name}: {type(exc).__name__}: {exc}") from exc
    if len(R.center) != e.expected.center_size:
        raise HypothesisMismatch(f"{e.name}: center has {len(R.center)} elements, expected {e.expected.center_size}")
    hyp_ok = True if e.case is None else _hypothesis_holds(R, e.case)
    if not hyp_ok:
        raise HypothesisMismatch(f"{e.name}: ring does not satisfy the hypotheses of {e.case}")

    G = commuting_graph(R)
    d = clique_decomposition(G)
    genus = analyze_genus(G, d, oracle_budget)
    expected_ok = d.counts() == list(e.expected.decomposition) and genus.value == e.expected.genus

    predicted, matched, also = [], None, []
    if e.case is not None:
        pred: Prediction = predict(e.case)
        predicted = [f"{o.decomposition} -> {o.genus}" for o in pred.outcomes]
        hit = pred.match(d)
        matched = None if hit is None or hit.genus != genus.value else hit.form
        others = [
            c
            for c in infer_cases(R.order, len(R.center), R.unity is not None, center_is_field(R))
            if c.id[:3] != e.case.id[:3]
        ]
        also = check_theorems(others, d)

    return VerificationRow(
        name=e.name,
        case=str(e.case) if e.case else None,
        order=R.order,
        center_size=len(R.center),
        hypothesis_ok=hyp_ok,
        decomposition=d,
        genus=genus,
        euler_bound=euler_lower_bound(G),
        predicted=predicted,
        matched_outcome=matched,
        expected_ok=expected_ok,
        also=also,
    )


@dataclass
class VerificationReport:
    rows: list[VerificationRow]

    @property
    def passed(self) -> int:
        return sum(r.ok for r in self.rows)

    @property
    def failed(self) -> int:
        return len(self.rows) - self.passed

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def document(self) -> dict:
        return {
            "rows": [r.document() for r in self.rows],
            "summary": {"entries": len(self.rows), "passed": self.passed, "failed": self.failed},
        }

    def table(self) -> str:
        head = f"{'entry':<11} {'case':<18} {'|R|':>4} {'|Z|':>4}  {'decomposition':<16} {'genus':>5}  result"
        lines = [head, "-" * len(head)]
        for r in self.rows:
            if r.error:
                lines.append(f"{r.name:<11} {r.case or '-':<18} ERROR {r.error}")
                continue
            verdict = "ok" if r.ok else "MISMATCH"
            if r.ok and r.matched_outcome:
                verdict += f" [{r.matched_outcome}]"
            lines.append(
                f"{r.name:<11} {r.case or '-':<18} {r.order:>4} {r.center_size:>4}  "
                f"{str(r.decomposition):<16} {r.genus.value:>5}  {verdict}"
            )
        lines.append(f"{self.passed}/{len(self.rows)} entries verified")
        return "\n".join(lines)


def verify_catalog(entries: list[CatalogEntry] | None = None) -> VerificationReport:
    rows = []
    for e in sorted(entries or builtin_entries(), key=lambda e: e.name):
        try:
            rows.append(verify_entry(e))
        except CommGenusError as exc:
            empty = CliqueDecomposition(())
            rows.append(
                VerificationRow(
                    e.name, str(e.case) if e.case else None, 0, 0, False, empty,
                    GenusResult(0, "lower_bound"), 0, [], None, False,
                    error=f"{type(exc).__name__}: {exc}",
                )
            )
    return VerificationReport(rows)


# -- witness search ------------------------------------------------------------


@dataclass
class Witness:
    ring: RingTable
    decomposition: CliqueDecomposition
    genus: GenusResult
    checks: list[TheoremCheck]

    @property
    def matched(self) -> bool | None:
        """``None`` when no theorem case applies to the ring."""
        return all(c.ok for c in self.checks) if self.checks else None


@dataclass
class SearchReport:
    order: int
    center_size: int
    budget: int
    searched: list[tuple[str, int]] = field(default_factory=list)
    skipped: list[tuple[str, int]] = field(default_factory=list)
    witnesses: list[Witness] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(w.matched is not False for w in self.witnesses)

    @property
    def note(self) -> str | None:
        return NO_WITNESS if not self.witnesses else None

    def lines(self) -> list[str]:
        out = [f"order {self.order}, center size {self.center_size}, budget {self.budget}"]
        out += [f"  searched {g}: {n} candidate tables" for g, n in self.searched]
        out += [f"  skipped {g}: {n} candidate tables exceed the budget" for g, n in self.skipped]
        for w in self.witnesses:
            verdict = {None: "no theorem case applies", True: "matches prediction", False: "OUTSIDE prediction"}[w.matched]
            out.append(f"  {w.ring.name}: {w.decomposition}, genus {w.genus.value} -- {verdict}")
            for c in w.checks:
                out.append(f"    {c.theorem}: {c.matched or 'no variant permits this shape'}")
        if self.note:
            out.append(f"  {self.note}")
        out.append(f"{len(self.witnesses)} witness(es)")
        return out


def search_witnesses(
    order: int,
    center_size: int,
    budget: int = DEFAULT_ENUM_BUDGET,
    oracle_budget: int = DEFAULT_ORACLE_BUDGET,
) -> SearchReport:
    """Enumerate non-commutative rings on every non-cyclic group of ``order``.

    Groups whose candidate count exceeds ``budget`` are skipped and listed;
    if every group is skipped the search raises :class:`BudgetExceeded`.
    """
    report = SearchReport(order, center_size, budget)
    groups = [g for g in abelian_groups(order) if not g.is_cyclic]
    for group in groups:
        count = candidate_count(group)
        if count > budget:
            report.skipped.append((str(group), count))
            continue
        report.searched.append((str(group), count))
        for R in enumerate_rings(group, noncommutative=True, center_size=center_size, budget=budget):
            G = commuting_graph(R)
            d = clique_decomposition(G)
            genus = analyze_genus(G, d, oracle_budget)
            cases = infer_cases(R.order, center_size, R.unity is not None, center_is_field(R))
            report.witnesses.append(Witness(R, d, genus, check_theorems(cases, d)))
    if groups and not report.searched:
        smallest = min(n for _, n in report.skipped)
        raise BudgetExceeded(smallest, budget, f"structure-constant tables (order {order})")
    return report
