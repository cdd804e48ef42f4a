"""Finite rings stored as explicit addition and multiplication tables.

Elements are integers ``0..N-1``.  When a ring comes from an additive group
``Z_{n_1} x ... x Z_{n_k}`` the index of an element is its mixed-radix
coordinate vector, coordinate 0 most significant, and generator ``i`` is the
unit vector in coordinate ``i``.  Multiplication is then determined by the
structure constants ``g_i * g_j`` and extended bilinearly.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterator, Sequence

import numpy as np

from commgenus._arith import factorize, is_prime, partitions
from commgenus.errors import (
    BudgetExceeded,
    InvalidElement,
    NotAbelianGroup,
    NotAssociative,
    NotDistributive,
    NotWellDefined,
    RingFileError,
    SizeLimitExceeded,
)

DEFAULT_MAX_ORDER = 256
DEFAULT_ENUM_BUDGET = 10**6

# elements per numpy block in the cubic axiom checks
_BLOCK = 1 << 22


@dataclass(frozen=True)
class AdditiveGroup:
    """Finite abelian group given by invariant factors ``n_1 | n_2 | ... | n_k``."""

    invariants: tuple[int, ...]

    def __post_init__(self) -> None:
        inv = tuple(int(n) for n in self.invariants)
        object.__setattr__(self, "invariants", inv)
        if not inv:
            raise ValueError("an additive group needs at least one invariant factor")
        if any(n < 2 for n in inv):
            raise ValueError(f"invariant factors must be >= 2, got {list(inv)}")
        for a, b in zip(inv, inv[1:]):
            if b % a:
                raise ValueError(f"invariant factors must divide each other: {a} does not divide {b}")

    @property
    def order(self) -> int:
        return math.prod(self.invariants)

    @property
    def rank(self) -> int:
        return len(self.invariants)

    @property
    def is_cyclic(self) -> bool:
        return self.rank == 1

    @cached_property
    def weights(self) -> tuple[int, ...]:
        w = [1] * self.rank
        for i in range(self.rank - 2, -1, -1):
            w[i] = w[i + 1] * self.invariants[i + 1]
        return tuple(w)

    def index(self, coords: Sequence[int]) -> int:
        if len(coords) != self.rank:
            raise ValueError(f"expected {self.rank} coordinates, got {len(coords)}")
        return sum((c % n) * w for c, n, w in zip(coords, self.invariants, self.weights))

    def coords(self, index: int) -> tuple[int, ...]:
        return tuple((index // w) % n for n, w in zip(self.invariants, self.weights))

    def all_coords(self) -> np.ndarray:
        """Coordinate vectors of all elements, row ``i`` belonging to index ``i``."""
        grid = itertools.product(*(range(n) for n in self.invariants))
        return np.array(list(grid), dtype=np.int64).reshape(self.order, self.rank)

    def __str__(self) -> str:
        return " x ".join(f"Z{n}" for n in self.invariants)


def abelian_groups(order: int) -> list[AdditiveGroup]:
    """All abelian groups of the given order, cyclic group first."""
    if order < 2:
        raise ValueError("order must be >= 2")
    per_prime = []
    for p, e in factorize(order).items():
        per_prime.append([[p**part for part in lam] for lam in partitions(e)])
    groups = []
    for choice in itertools.product(*per_prime):
        depth = max(len(parts) for parts in choice)
        # pad each prime's cyclic factors to equal length, largest first
        padded = [parts + [1] * (depth - len(parts)) for parts in choice]
        inv = [math.prod(col) for col in zip(*padded)]
        groups.append(AdditiveGroup(tuple(sorted(inv))))
    return groups


@dataclass(frozen=True)
class RingSpec:
    """Description of a ring, either by structure constants or full tables.

    ``mult_constants[i][j]`` is the coordinate vector of ``g_i * g_j``.
    """

    name: str
    additive: AdditiveGroup | None
    mult_constants: tuple[tuple[tuple[int, ...], ...], ...] | None = None
    full_tables: tuple[tuple[tuple[int, ...], ...], tuple[tuple[int, ...], ...]] | None = None

    def __post_init__(self) -> None:
        if (self.mult_constants is None) == (self.full_tables is None):
            raise ValueError("exactly one of mult_constants / full_tables must be given")
        if self.mult_constants is not None:
            if self.additive is None:
                raise ValueError("structure constants need an additive group")
            k = self.additive.rank
            c = np.asarray(self.mult_constants, dtype=np.int64)
            if c.shape != (k, k, k):
                raise ValueError(f"structure constants must have shape {(k, k, k)}, got {c.shape}")
            c = c % np.array(self.additive.invariants)
            object.__setattr__(self, "mult_constants", _freeze(c))
        else:
            add, mul = (np.asarray(t, dtype=np.int64) for t in self.full_tables)
            n = add.shape[0] if add.ndim == 2 else -1
            if add.shape != (n, n) or mul.shape != (n, n) or n < 1:
                raise ValueError("add and mul tables must be square and of equal size")
            if self.additive is not None and self.additive.order != n:
                raise ValueError(f"tables have {n} elements but the additive group has order {self.additive.order}")
            object.__setattr__(self, "full_tables", (_freeze(add), _freeze(mul)))


def _freeze(a: np.ndarray):
    return tuple(_freeze(x) for x in a) if a.ndim else int(a)


class RingTable:
    """A finite ring as two ``N x N`` tables of element indices.

    Instances are immutable.  The constructor does not check the ring axioms;
    use :func:`build_from_spec`, the named constructors, or :func:`validate`.
    """

    def __init__(
        self,
        add: np.ndarray,
        mul: np.ndarray,
        *,
        name: str = "",
        additive: AdditiveGroup | None = None,
        constants: np.ndarray | None = None,
    ) -> None:
        add = np.array(add, dtype=np.int32)
        mul = np.array(mul, dtype=np.int32)
        n = add.shape[0]
        if add.shape != (n, n) or mul.shape != (n, n):
            raise ValueError("add and mul must be square tables of the same size")
        add.flags.writeable = False
        mul.flags.writeable = False
        self.add = add
        self.mul = mul
        self.name = name
        self.additive = additive
        self.constants = constants
        self.zero = _find_identity(add)

    @property
    def order(self) -> int:
        return self.add.shape[0]

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"RingTable({self.name or '?'}, order={self.order})"

    @cached_property
    def unity(self) -> int | None:
        return _find_identity(self.mul)

    @cached_property
    def _commutes(self) -> np.ndarray:
        return self.mul == self.mul.T

    @cached_property
    def center(self) -> tuple[int, ...]:
        return tuple(int(z) for z in np.flatnonzero(self._commutes.all(axis=1)))

    @property
    def is_commutative(self) -> bool:
        return len(self.center) == self.order

    def commute(self, x: int, y: int) -> bool:
        return bool(self._commutes[x, y])

    def centralizer(self, x: int) -> tuple[int, ...]:
        self._check_element(x)
        return tuple(int(y) for y in np.flatnonzero(self._commutes[x]))

    def coords(self, x: int) -> tuple[int, ...]:
        if self.additive is None:
            raise ValueError(f"{self!r} has no coordinate system")
        self._check_element(x)
        return self.additive.coords(x)

    def element(self, coords: Sequence[int]) -> int:
        if self.additive is None:
            raise ValueError(f"{self!r} has no coordinate system")
        return self.additive.index(coords)

    def _check_element(self, x: int) -> None:
        if not (isinstance(x, (int, np.integer)) and 0 <= x < self.order):
            raise InvalidElement(f"{x!r} is not an element of a ring of order {self.order}")


def _find_identity(op: np.ndarray) -> int | None:
    idx = np.arange(op.shape[0])
    hits = np.flatnonzero((op == idx).all(axis=1) & (op.T == idx).all(axis=1))
    return int(hits[0]) if len(hits) else None


def center(R: RingTable) -> tuple[int, ...]:
    return R.center


def centralizer(R: RingTable, x: int) -> tuple[int, ...]:
    return R.centralizer(x)


def center_is_field(R: RingTable) -> bool:
    """Whether the center, as a commutative ring, is a field."""
    Z = list(R.center)
    if len(Z) < 2:
        return False
    sub = R.mul[np.ix_(Z, Z)]
    ones = [i for i in range(len(Z)) if (sub[i] == Z).all()]
    if not ones:
        return False
    nonzero = [i for i, z in enumerate(Z) if z != R.zero]
    return not (sub[np.ix_(nonzero, nonzero)] == R.zero).any()


# -- axiom checks ----------------------------------------------------------


def _blocks(n: int) -> Iterator[slice]:
    step = max(1, _BLOCK // (n * n))
    for start in range(0, n, step):
        yield slice(start, min(start + step, n))


def _assoc_violation(op: np.ndarray) -> tuple[int, int, int] | None:
    n = op.shape[0]
    for blk in _blocks(n):
        a = np.arange(blk.start, blk.stop)[:, None, None]
        lhs = op[op[blk]]  # [a, b, c] -> (ab)c
        rhs = op[a, op[None, :, :]]  # [a, b, c] -> a(bc)
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            i, j, k = bad[0]
            return int(blk.start + i), int(j), int(k)
    return None


def _left_distrib_violation(add: np.ndarray, mul: np.ndarray) -> tuple[int, int, int] | None:
    n = add.shape[0]
    for blk in _blocks(n):
        lhs = mul[blk][:, add]  # a(b+c)
        m = mul[blk]
        rhs = add[m[:, :, None], m[:, None, :]]  # ab + ac
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            i, j, k = bad[0]
            return int(blk.start + i), int(j), int(k)
    return None


def _abelian_group_failure(add: np.ndarray, zero: int | None) -> str | None:
    n = add.shape[0]
    if add.min() < 0 or add.max() >= n:
        return "addition table has entries out of range"
    if zero is None:
        return "no additive identity"
    if not (add == add.T).all():
        return "addition is not commutative"
    hit = _assoc_violation(add)
    if hit is not None:
        return f"addition is not associative at {hit}"
    if not (add == zero).any(axis=1).all():
        return "some element has no additive inverse"
    return None


@dataclass
class ValidationReport:
    order: int
    abelian_group: bool
    associative: bool
    left_distributive: bool
    right_distributive: bool
    unity: int | None
    center_size: int | None
    commutative: bool | None
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.abelian_group and self.associative and self.left_distributive and self.right_distributive

    def lines(self) -> list[str]:
        mark = {True: "pass", False: "FAIL"}
        out = [
            f"order: {self.order}",
            f"abelian additive group: {mark[self.abelian_group]}",
            f"associativity: {mark[self.associative]}",
            f"left distributivity: {mark[self.left_distributive]}",
            f"right distributivity: {mark[self.right_distributive]}",
            f"unity: {self.unity if self.unity is not None else 'none'}",
            f"center size: {self.center_size}",
            f"commutative: {self.commutative}",
        ]
        out += [f"  ! {msg}" for msg in self.failures]
        return out


def validate(R: RingTable) -> ValidationReport:
    """Check every ring axiom exhaustively; failures are reported, not raised."""
    failures = []
    n = R.order
    add, mul = R.add, R.mul
    msg = _abelian_group_failure(add, R.zero)
    if msg:
        failures.append(msg)
    if mul.min() < 0 or mul.max() >= n:
        failures.append("multiplication table has entries out of range")
    if add.min() < 0 or add.max() >= n or len(failures) > (msg is not None):
        return ValidationReport(n, msg is None, False, False, False, None, None, None, failures)

    assoc = _assoc_violation(mul)
    if assoc is not None:
        failures.append(f"multiplication is not associative at (a, b, c) = {assoc}")
    left = _left_distrib_violation(add, mul)
    if left is not None:
        failures.append(f"a(b+c) != ab+ac at (a, b, c) = {left}")
    right = _left_distrib_violation(add, mul.T)
    if right is not None:
        failures.append(f"(b+c)a != ba+ca at (a, b, c) = {right}")
    return ValidationReport(
        order=n,
        abelian_group=msg is None,
        associative=assoc is None,
        left_distributive=left is None,
        right_distributive=right is None,
        unity=R.unity,
        center_size=len(R.center),
        commutative=R.is_commutative,
        failures=failures,
    )


def check_ring(R: RingTable) -> RingTable:
    """Raise the first axiom failure found, else return ``R``."""
    report = validate(R)
    if not report.abelian_group:
        raise NotAbelianGroup(f"{R.name}: {report.failures[0]}")
    if not report.associative:
        raise NotAssociative(f"{R.name}: " + next(f for f in report.failures if "associative" in f))
    if not (report.left_distributive and report.right_distributive):
        raise NotDistributive(f"{R.name}: " + next(f for f in report.failures if "!=" in f))
    return R


# -- construction ------------------------------------------------------------


def _check_size(n: int, max_order: int) -> None:
    if n > max_order:
        raise SizeLimitExceeded(f"ring of order {n} exceeds the size limit {max_order}")


def _well_defined_violation(group: AdditiveGroup, C: np.ndarray) -> tuple[int, int] | None:
    n = np.array(group.invariants)
    for i, j in itertools.product(range(group.rank), repeat=2):
        c = C[i, j]
        if ((n[i] * c) % n).any() or ((n[j] * c) % n).any():
            return i, j
    return None


def _tables_from_constants(group: AdditiveGroup, C: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    coords = group.all_coords()
    n = np.array(group.invariants)
    w = np.array(group.weights)
    add = ((coords[:, None, :] + coords[None, :, :]) % n) @ w
    prod = np.einsum("ai,bj,ijm->abm", coords, coords, C) % n
    return add, prod @ w


def ring_from_spec(spec: RingSpec, *, max_order: int = DEFAULT_MAX_ORDER) -> RingTable:
    """Tabulate ``spec`` without checking the ring axioms."""
    if spec.mult_constants is not None:
        group = spec.additive
        C = np.array(spec.mult_constants, dtype=np.int64)
        bad = _well_defined_violation(group, C)
        if bad is not None:
            i, j = bad
            raise NotWellDefined(
                f"{spec.name}: g{i}*g{j} = {C[i, j].tolist()} is not killed by the orders of g{i} and g{j}"
            )
        _check_size(group.order, max_order)
        add, mul = _tables_from_constants(group, C)
        return RingTable(add, mul, name=spec.name, additive=group, constants=C)
    add, mul = spec.full_tables
    _check_size(len(add), max_order)
    return RingTable(np.array(add), np.array(mul), name=spec.name, additive=spec.additive)


def build_from_spec(spec: RingSpec, *, max_order: int = DEFAULT_MAX_ORDER) -> RingTable:
    return check_ring(ring_from_spec(spec, max_order=max_order))


def _require_prime(p: int) -> None:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")


def zero_ring(invariants: Sequence[int], name: str | None = None) -> RingTable:
    group = AdditiveGroup(tuple(invariants))
    k = group.rank
    spec = RingSpec(name or f"zero({group})", group, mult_constants=np.zeros((k, k, k), dtype=int))
    return build_from_spec(spec)


def integers_mod(n: int) -> RingTable:
    return build_from_spec(RingSpec(f"Z{n}", AdditiveGroup((n,)), mult_constants=[[[1]]]))


def matrix_ring(p: int, *, max_order: int = DEFAULT_MAX_ORDER) -> RingTable:
    """Full 2x2 matrix ring over F_p; coordinates ``(a, b, c, d)`` for ``[[a, b], [c, d]]``."""
    _require_prime(p)
    _check_size(p**4, max_order)
    C = np.zeros((4, 4, 4), dtype=int)
    # E_rs * E_tu = [s == t] E_ru, with E_rs stored at coordinate 2r + s
    for r, s, t, u in itertools.product(range(2), repeat=4):
        if s == t:
            C[2 * r + s, 2 * t + u, 2 * r + u] = 1
    return build_from_spec(RingSpec(f"M2(F{p})", AdditiveGroup((p,) * 4), mult_constants=C), max_order=max_order)


def upper_triangular_ring(p: int, *, max_order: int = DEFAULT_MAX_ORDER) -> RingTable:
    """Upper-triangular 2x2 matrices over F_p; coordinates ``(a, b, d)`` for ``[[a, b], [0, d]]``."""
    _require_prime(p)
    _check_size(p**3, max_order)
    E11, E12, E22 = range(3)
    C = np.zeros((3, 3, 3), dtype=int)
    C[E11, E11, E11] = 1
    C[E11, E12, E12] = 1
    C[E12, E22, E12] = 1
    C[E22, E22, E22] = 1
    return build_from_spec(RingSpec(f"T2(F{p})", AdditiveGroup((p,) * 3), mult_constants=C), max_order=max_order)


def row_ring(p: int, width: int = 1) -> RingTable:
    """Pairs ``(a, v)`` with ``a`` in F_p, ``v`` in F_p^width and ``(a, v)(c, w) = (ac, aw)``.

    The center is trivial and there is no unity.  ``width=1`` gives the
    order-p^2 ring ``(a, b)(c, d) = (ac, ad)``.
    """
    _require_prime(p)
    k = width + 1
    C = np.zeros((k, k, k), dtype=int)
    for j in range(k):
        C[0, j, j] = 1
    name = f"Row(F{p})" if width == 1 else f"Row{width}(F{p})"
    return build_from_spec(RingSpec(name, AdditiveGroup((p,) * k), mult_constants=C))


def direct_product(R: RingTable, S: RingTable, *, max_order: int = DEFAULT_MAX_ORDER) -> RingTable:
    """Componentwise product; element ``(r, s)`` has index ``r * |S| + s``."""
    nr, ns = R.order, S.order
    n = nr * ns
    _check_size(n, max_order)

    def combine(a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return (a[:, None, :, None] * ns + b[None, :, None, :]).reshape(n, n)

    return RingTable(combine(R.add, S.add), combine(R.mul, S.mul), name=f"{R.name}x{S.name}")


# -- enumeration ---------------------------------------------------------------


def candidate_count(group: AdditiveGroup) -> int:
    return group.order ** (group.rank**2)


def enumerate_rings(
    additive: AdditiveGroup,
    *,
    noncommutative: bool | None = None,
    center_size: int | None = None,
    has_unity: bool | None = None,
    budget: int = DEFAULT_ENUM_BUDGET,
    max_order: int = DEFAULT_MAX_ORDER,
) -> Iterator[RingTable]:
    """Every ring structure on ``additive`` passing the filters.

    Rings are emitted in lexicographic order of their structure constants.
    Isomorphic duplicates are not removed.  Raises :class:`BudgetExceeded`
    immediately when ``order ** (k*k)`` exceeds ``budget``.
    """
    count = candidate_count(additive)
    if count > budget:
        raise BudgetExceeded(count, budget, "structure-constant tables")
    _check_size(additive.order, max_order)
    return _enumerate(additive, noncommutative, center_size, has_unity)


def _enumerate(
    group: AdditiveGroup,
    noncommutative: bool | None,
    center_size: int | None,
    has_unity: bool | None,
) -> Iterator[RingTable]:
    n = group.invariants
    k = group.rank
    all_vecs = list(itertools.product(*(range(m) for m in n)))

    def killed(vec: tuple[int, ...], order: int) -> bool:
        return all((order * v) % m == 0 for v, m in zip(vec, n))

    # entries that fail well-definedness never extend to a ring; skip them up front
    choices = [
        [v for v in all_vecs if killed(v, n[i]) and killed(v, n[j])]
        for i, j in itertools.product(range(k), repeat=2)
    ]
    for flat in itertools.product(*choices):
        C = [flat[i * k : (i + 1) * k] for i in range(k)]
        commutative = all(C[i][j] == C[j][i] for i in range(k) for j in range(i))
        if noncommutative is not None and noncommutative == commutative:
            continue
        if not _associative_on_generators(C, n):
            continue
        arr = np.array(C, dtype=np.int64)
        add, mul = _tables_from_constants(group, arr)
        label = ";".join(",".join(map(str, v)) for v in flat)
        R = RingTable(add, mul, name=f"{group}[{label}]", additive=group, constants=arr)
        if center_size is not None and len(R.center) != center_size:
            continue
        if has_unity is not None and (R.unity is not None) != has_unity:
            continue
        yield R


def _associative_on_generators(C, n: Sequence[int]) -> bool:
    # trilinear maps agreeing on generator triples agree everywhere
    k = len(n)
    for i, j, l in itertools.product(range(k), repeat=3):
        cij, cjl = C[i][j], C[j][l]
        for r in range(k):
            left = sum(cij[m] * C[m][l][r] for m in range(k))
            right = sum(cjl[m] * C[i][m][r] for m in range(k))
            if (left - right) % n[r]:
                return False
    return True


# -- ring spec files -----------------------------------------------------------


def parse_ring_spec(doc: dict) -> RingSpec:
    try:
        name = str(doc.get("name", "ring"))
        additive = AdditiveGroup(tuple(doc["additive"])) if doc.get("additive") else None
        mult = doc["mult"]
        if "constants" in mult:
            return RingSpec(name, additive, mult_constants=mult["constants"])
        tables = mult["tables"]
        return RingSpec(name, additive, full_tables=(tables["add"], tables["mul"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise RingFileError(f"malformed ring spec: {exc}") from exc


def load_ring_spec(path: str | Path) -> RingSpec:
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise RingFileError(f"cannot read ring spec {path}: {exc}") from exc
    if not isinstance(doc, dict):
        raise RingFileError(f"{path}: top level must be an object")
    return parse_ring_spec(doc)


def ring_spec_document(spec: RingSpec) -> dict:
    doc: dict = {"name": spec.name}
    if spec.additive is not None:
        doc["additive"] = list(spec.additive.invariants)
    if spec.mult_constants is not None:
        doc["mult"] = {"constants": [[list(v) for v in row] for row in spec.mult_constants]}
    else:
        add, mul = spec.full_tables
        doc["mult"] = {"tables": {"add": [list(r) for r in add], "mul": [list(r) for r in mul]}}
    return doc


def spec_of(R: RingTable) -> RingSpec:
    """Spec reproducing ``R``: structure constants if known, else full tables."""
    if R.constants is not None and R.additive is not None:
        return RingSpec(R.name, R.additive, mult_constants=R.constants)
    return RingSpec(R.name, R.additive, full_tables=(R.add, R.mul))


def dump_ring_spec(spec: RingSpec, path: str | Path) -> None:
    Path(path).write_text(json.dumps(ring_spec_document(spec)) + "\n")
