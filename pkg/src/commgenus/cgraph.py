"""Commuting graphs, clique decompositions, and orientable genus.

Two independent routes to the genus are provided:

* :func:`genus_clique_union` applies the complete-graph formula
  ``ceil((n-3)(n-4)/12)`` and sums it over the components of a disjoint
  union of cliques;
* :func:`genus_oracle` searches rotation systems, tracing faces and applying
  Euler's formula ``V - E + F = 2 - 2g`` per component.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, Literal

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from commgenus._arith import ceil_div
from commgenus.errors import BudgetExceeded, CommutativeRing, GraphFileError, NotCliqueUnion
from commgenus.finring import RingTable

DEFAULT_ORACLE_BUDGET = 10**7

Classification = Literal["planar", "toroidal", "genus_g"]
Method = Literal["clique_formula", "oracle", "lower_bound"]


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph; edges are stored as ``(u, v)`` with ``u < v``."""

    vertices: tuple[int, ...]
    edges: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        vs = tuple(sorted(set(self.vertices)))
        es = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            es.add((min(u, v), max(u, v)))
        missing = {x for e in es for x in e} - set(vs)
        if missing:
            raise ValueError(f"edges use unknown vertices {sorted(missing)}")
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "edges", frozenset(es))

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[int, int]], vertices: Iterable[int] = ()) -> Graph:
        edges = list(edges)
        return cls(tuple(set(vertices) | {x for e in edges for x in e}), frozenset(edges))

    @classmethod
    def complete(cls, n: int) -> Graph:
        return cls(tuple(range(n)), frozenset(itertools.combinations(range(n), 2)))

    @classmethod
    def cycle(cls, n: int) -> Graph:
        return cls(tuple(range(n)), frozenset((i, (i + 1) % n) for i in range(n)))

    @classmethod
    def path(cls, n: int) -> Graph:
        return cls(tuple(range(n)), frozenset((i, i + 1) for i in range(n - 1)))

    @classmethod
    def disjoint_union(cls, *graphs: Graph) -> Graph:
        verts, edges, offset = [], [], 0
        for g in graphs:
            relabel = {v: offset + i for i, v in enumerate(g.vertices)}
            verts += relabel.values()
            edges += [(relabel[u], relabel[v]) for u, v in g.edges]
            offset += len(g.vertices)
        return cls(tuple(verts), frozenset(edges))

    def relabel(self, mapping: dict[int, int]) -> Graph:
        return Graph(tuple(mapping[v] for v in self.vertices), frozenset((mapping[u], mapping[v]) for u, v in self.edges))

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def neighbors(self) -> dict[int, tuple[int, ...]]:
        nb: dict[int, list[int]] = {v: [] for v in self.vertices}
        for u, v in self.edges:
            nb[u].append(v)
            nb[v].append(u)
        return {v: tuple(sorted(ns)) for v, ns in nb.items()}

    def degree(self, v: int) -> int:
        return len(self.neighbors[v])

    def subgraph(self, vertices: Iterable[int]) -> Graph:
        vs = set(vertices)
        return Graph(tuple(vs), frozenset(e for e in self.edges if e[0] in vs and e[1] in vs))


@dataclass(frozen=True)
class CommutingGraph(Graph):
    """Commuting graph of a non-commutative ring on its non-central elements."""

    ring: RingTable | None = field(default=None, compare=False, repr=False)


def commuting_graph(R: RingTable) -> CommutingGraph:
    central = set(R.center)
    verts = [x for x in range(R.order) if x not in central]
    if not verts:
        raise CommutativeRing(f"{R.name or 'ring'} is commutative; its commuting graph is empty")
    sub = R.mul[np.ix_(verts, verts)]
    comm = np.triu(sub == sub.T, k=1)
    edges = frozenset((verts[i], verts[j]) for i, j in zip(*np.nonzero(comm)))
    return CommutingGraph(tuple(verts), edges, ring=R)


def components(G: Graph) -> list[tuple[int, ...]]:
    """Connected components, each sorted, ordered by smallest vertex."""
    if not G.vertices:
        return []
    pos = {v: i for i, v in enumerate(G.vertices)}
    rows = [pos[u] for u, _ in G.edges]
    cols = [pos[v] for _, v in G.edges]
    adj = coo_matrix((np.ones(len(rows)), (rows, cols)), shape=(G.n, G.n))
    _, labels = connected_components(adj, directed=False)
    groups: dict[int, list[int]] = {}
    for v, lab in zip(G.vertices, labels):
        groups.setdefault(int(lab), []).append(v)
    return sorted((tuple(g) for g in groups.values()), key=lambda c: c[0])


@dataclass(frozen=True)
class CliqueDecomposition:
    """Component sizes of a graph (ascending) and whether each is complete."""

    sizes: tuple[int, ...]
    all_cliques: bool = True

    def __post_init__(self) -> None:
        object.__setattr__(self, "sizes", tuple(sorted(int(s) for s in self.sizes)))
        if any(s < 1 for s in self.sizes):
            raise ValueError("component sizes must be positive")

    @classmethod
    def from_counts(cls, counts: dict[int, int] | Iterable[tuple[int, int]], all_cliques: bool = True) -> CliqueDecomposition:
        items = counts.items() if isinstance(counts, dict) else counts
        return cls(tuple(s for s, k in items for _ in range(k)), all_cliques)

    @property
    def vertex_count(self) -> int:
        return sum(self.sizes)

    def counts(self) -> list[tuple[int, int]]:
        """``(size, multiplicity)`` pairs, ascending by size."""
        return sorted(Counter(self.sizes).items())

    def __str__(self) -> str:
        if not self.sizes:
            return "empty"
        body = " + ".join(f"{k}K{s}" if k > 1 else f"K{s}" for s, k in self.counts())
        return body if self.all_cliques else f"{body} (not all cliques)"


def clique_decomposition(G: Graph) -> CliqueDecomposition:
    comps = components(G)
    where = {v: i for i, comp in enumerate(comps) for v in comp}
    inner = Counter(where[u] for u, _ in G.edges)
    complete = all(inner[i] == len(c) * (len(c) - 1) // 2 for i, c in enumerate(comps))
    return CliqueDecomposition(tuple(len(c) for c in comps), complete)


def genus_complete(n: int) -> int:
    """Genus of ``K_n``; ``K_1`` and ``K_2`` are planar."""
    if n < 1:
        raise ValueError(f"K_{n} is not a graph")
    if n < 3:
        return 0
    return ceil_div((n - 3) * (n - 4), 12)


def classify(genus: int) -> Classification:
    if genus < 0:
        raise ValueError("genus is non-negative")
    return "planar" if genus == 0 else "toroidal" if genus == 1 else "genus_g"


@dataclass(frozen=True)
class GenusResult:
    value: int
    method: Method
    # (clique size, multiplicity, genus of one clique), set by the clique formula
    terms: tuple[tuple[int, int, int], ...] = ()
    embeddings: int | None = None

    @property
    def classification(self) -> Classification:
        return classify(self.value)

    @property
    def exact(self) -> bool:
        return self.method != "lower_bound"

    def describe(self) -> str:
        label = {"planar": "planar", "toroidal": "toroidal"}.get(self.classification, f"genus {self.value}")
        bound = "at least " if not self.exact else ""
        return f"{bound}{self.value} ({label}, via {self.method})"


def genus_clique_union(d: CliqueDecomposition) -> GenusResult:
    if not d.all_cliques:
        raise NotCliqueUnion("graph is not a disjoint union of complete graphs")
    terms = tuple((s, k, genus_complete(s)) for s, k in d.counts())
    return GenusResult(sum(k * g for _, k, g in terms), "clique_formula", terms)


def euler_lower_bound(G: Graph) -> int:
    total = 0
    for comp in components(G):
        n = len(comp)
        if n < 3:
            continue
        members = set(comp)
        m = sum(1 for u, _ in G.edges if u in members)
        total += max(0, ceil_div(m - 3 * n + 6, 6))
    return total


def embedding_count(G: Graph) -> int:
    """Rotation systems searched by the oracle: per component ``prod (deg-1)!``, summed."""
    total = 0
    for comp in components(G):
        total += math.prod(math.factorial(G.degree(v) - 1) for v in comp if G.degree(v) >= 1)
    return total


def genus_oracle(G: Graph, budget: int = DEFAULT_ORACLE_BUDGET) -> GenusResult:
    """Exact genus by exhaustive branch-and-bound over rotation systems."""
    count = embedding_count(G)
    if count > budget:
        raise BudgetExceeded(count, budget, "rotation systems")
    total = 0
    for comp in components(G):
        sub = G.subgraph(comp) if len(comp) < G.n else G
        total += _RotationSearch(sub).run()
    return GenusResult(total, "oracle", embeddings=count)


class _RotationSearch:
    """Minimum genus of one connected graph.

    Vertices receive rotations one at a time.  After each assignment the faces
    whose boundary walk only passes through assigned vertices are closed;
    every other face needs at least three darts, which bounds how many faces
    the completed embedding can have and prunes the search.
    """

    def __init__(self, G: Graph) -> None:
        self.G = G
        self.V, self.E = G.n, G.m
        self.D = 2 * self.E
        darts = [(u, v) for u, v in G.edges] + [(v, u) for u, v in G.edges]
        darts.sort()
        self.dart_id = {d: i for i, d in enumerate(darts)}
        self.head = [v for _, v in darts]
        self.order = self._vertex_order()

    def _vertex_order(self) -> list[int]:
        G = self.G
        start = max(G.vertices, key=lambda v: (G.degree(v), -v))
        seen, order = {start}, [start]
        for v in order:
            for w in G.neighbors[v]:
                if w not in seen:
                    seen.add(w)
                    order.append(w)
        return order

    def _rotations(self, v: int, first: bool) -> list[tuple[int, ...]]:
        nbrs = self.G.neighbors[v]
        rots = [(nbrs[0],) + rest for rest in itertools.permutations(nbrs[1:])]
        if first and len(nbrs) >= 3:
            # reversing every rotation mirrors the surface; keep one of each pair
            rots = [r for r in rots if r[1] < r[-1]]
        return rots

    def run(self) -> int:
        if self.V <= 2 or self.E <= self.V:
            return 0
        self.floor = max(0, ceil_div(self.E - 3 * self.V + 6, 6))
        self.best = (self.E - self.V + 1) // 2 + 1  # one above the largest possible genus
        self.nxt = [-1] * self.D
        self._search(0, 0, 0)
        return self.best

    def _assign(self, v: int, rot: tuple[int, ...]) -> list[int]:
        ids = []
        d = len(rot)
        for i, u in enumerate(rot):
            # face walk: dart (u, v) continues with (v, successor of u at v)
            a = self.dart_id[(u, v)]
            self.nxt[a] = self.dart_id[(v, rot[(i + 1) % d])]
            ids.append(a)
        return ids

    def _closed_by(self, entering: list[int]) -> tuple[int, int]:
        """Faces closed by the latest assignment, and the darts they use."""
        faces = darts = 0
        seen: set[int] = set()
        nxt = self.nxt
        for start in entering:
            if start in seen:
                continue
            walk = [start]
            cur = nxt[start]
            while cur != -1 and cur != start:
                walk.append(cur)
                cur = nxt[cur]
            seen.update(walk)
            if cur == start:
                faces += 1
                darts += len(walk)
        return faces, darts

    def _search(self, depth: int, faces: int, used: int) -> None:
        if depth == len(self.order):
            g = (self.E - self.V + 2 - faces) // 2
            self.best = min(self.best, g)
            return
        v = self.order[depth]
        children = []
        for rot in self._rotations(v, depth == 0):
            entering = self._assign(v, rot)
            f, k = self._closed_by(entering)
            children.append((-f, rot, f, k))
        for a in entering:
            self.nxt[a] = -1
        children.sort(key=lambda c: c[0])
        for _, rot, f, k in children:
            if self.best <= self.floor:
                return
            F, U = faces + f, used + k
            f_max = F + (self.D - U) // 3
            # the genus is integral, so only faces of matching parity count
            if (self.E - self.V + 2 - f_max) % 2:
                f_max -= 1
            if (self.E - self.V + 2 - f_max) // 2 >= self.best:
                continue
            entering = self._assign(v, rot)
            self._search(depth + 1, F, U)
            for a in entering:
                self.nxt[a] = -1


def analyze_genus(G: Graph, d: CliqueDecomposition | None = None, budget: int = DEFAULT_ORACLE_BUDGET) -> GenusResult:
    """Clique formula when possible, then the oracle, then the Euler bound."""
    d = d or clique_decomposition(G)
    if d.all_cliques:
        return genus_clique_union(d)
    try:
        return genus_oracle(G, budget)
    except BudgetExceeded:
        return GenusResult(euler_lower_bound(G), "lower_bound")


# -- file formats --------------------------------------------------------------


def to_dot(G: Graph, name: str = "G") -> str:
    ident = "".join(ch if ch.isalnum() else "_" for ch in name) or "G"
    lines = [f"graph {ident} {{"]
    lines += [f"  {v};" for v in G.vertices]
    lines += [f"  {u} -- {v};" for u, v in sorted(G.edges)]
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_adjacency_list(G: Graph) -> str:
    """Vertex count, then one ``u v`` line per edge over positions ``0..n-1``.

    Original vertex labels, when they differ from positions, go in a comment.
    """
    pos = {v: i for i, v in enumerate(G.vertices)}
    lines = []
    if list(G.vertices) != list(range(G.n)):
        lines.append("# labels: " + " ".join(map(str, G.vertices)))
    lines.append(str(G.n))
    lines += [f"{pos[u]} {pos[v]}" for u, v in sorted(G.edges)]
    return "\n".join(lines) + "\n"


def parse_adjacency_list(text: str) -> Graph:
    rows = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append(line.split())
    if not rows or len(rows[0]) != 1:
        raise GraphFileError("first line must be the vertex count")
    try:
        n = int(rows[0][0])
        edges = [(int(a), int(b)) for a, b in rows[1:]]
    except ValueError as exc:
        raise GraphFileError(f"malformed adjacency list: {exc}") from exc
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n) or u == v:
            raise GraphFileError(f"bad edge {u} {v} for {n} vertices")
    return Graph(tuple(range(n)), frozenset(edges))


def load_graph(path: str | Path) -> Graph:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise GraphFileError(f"cannot read {path}: {exc}") from exc
    return parse_adjacency_list(text)
