"""Core graph layer: statistics-graded, edge-colored graphs with heights and signs.

The central structure is a finite graph whose vertices carry a statistics bit
(boson or fermion), whose edges carry a color from 1..n_colors such that every
vertex meets exactly one edge of each color, and whose edges are bipartite with
respect to statistics.  On top of a valid topology live three decorations:

* a height assignment (integer per vertex, adjacent heights differing by 1),
  which induces an orientation of every edge from its lower to its higher end;
* an edge parity in Z_2 obeying the odd-square rule: around every two-colored
  closed walk of length four the parities sum to 1 mod 2;
* the derived orientation, used for source/target bookkeeping downstream.

Vertices are plain ints, edges are canonical triples (u, v, color) with u < v,
and all public containers are immutable so Adinkras can be dict keys.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

__all__ = [
    "BOSON",
    "FERMION",
    "AdinkraError",
    "Edge",
    "Step",
    "Topology",
    "Adinkra",
    "EngineerResult",
    "ParityResult",
    "validate_topology",
    "net_ascent",
    "engineerable",
    "normalize_heights",
    "solve_edge_parity",
    "orientation_from_heights",
]

BOSON = "boson"
FERMION = "fermion"

# (u, v, color) with u < v
Edge = tuple[int, int, int]
# a directed traversal step (from, to, color)
Step = tuple[int, int, int]


class AdinkraError(ValueError):
    """Raised when input data violates a documented precondition."""


def _canon_edge(u: int, v: int, color: int) -> Edge:
    return (u, v, color) if u < v else (v, u, color)


def validate_topology(
    n_colors: int,
    statistics: Mapping[int, str],
    edges: Iterable[Sequence[int]],
) -> list[str]:
    """Check raw graph data against the topology rules and report violations.

    Accepts arbitrary data; every violated condition is reported as a string
    naming the offending vertex or edge.  An empty report means the data forms
    a valid topology.  The empty graph (no vertices, no edges) is valid.

    Rules checked: n_colors is a positive int; vertex statistics are
    boson/fermion; edge endpoints exist, are distinct, and have opposite
    statistics; colors lie in 1..n_colors; no edge is repeated; and every
    vertex meets exactly one edge of each color.
    """
    report: list[str] = []
    if not isinstance(n_colors, int) or isinstance(n_colors, bool) or n_colors < 1:
        report.append(f"n_colors must be a positive integer, got {n_colors!r}")
        return report

    stats: dict[int, str] = {}
    for v, s in statistics.items():
        if not isinstance(v, int) or isinstance(v, bool):
            report.append(f"vertex id {v!r} is not an integer")
            continue
        if s not in (BOSON, FERMION):
            report.append(f"vertex {v} has unknown statistics {s!r}")
            continue
        stats[v] = s

    seen: set[Edge] = set()
    edge_list: list[Edge] = []
    for raw in edges:
        e = tuple(raw)
        if len(e) != 3 or not all(isinstance(x, int) and not isinstance(x, bool) for x in e):
            report.append(f"edge {raw!r} is not an (u, v, color) integer triple")
            continue
        u, v, color = e
        if u == v:
            report.append(f"edge {e} is a self-loop")
            continue
        if color < 1 or color > n_colors:
            report.append(f"edge {e} has color outside 1..{n_colors}")
            continue
        bad_end = False
        for w in (u, v):
            if w not in stats:
                report.append(f"edge {e} references unknown vertex {w}")
                bad_end = True
        if bad_end:
            continue
        ce = _canon_edge(u, v, color)
        if ce in seen:
            report.append(f"edge {ce} is repeated")
            continue
        seen.add(ce)
        edge_list.append(ce)
        if stats[ce[0]] == stats[ce[1]]:
            report.append(f"edge {ce} joins two {stats[ce[0]]}s; statistics must alternate")

    # one edge of each color at every vertex
    degree: dict[tuple[int, int], int] = {}
    for u, v, color in edge_list:
        degree[u, color] = degree.get((u, color), 0) + 1
        degree[v, color] = degree.get((v, color), 0) + 1
    for v in sorted(stats):
        for color in range(1, n_colors + 1):
            d = degree.get((v, color), 0)
            if d != 1:
                report.append(f"vertex {v} meets {d} edges of color {color}, expected exactly 1")
    return report


@dataclass(frozen=True)
class Topology:
    """A validated statistics-graded, edge-colored graph.

    Use :meth:`build` to construct from raw data; the bare constructor assumes
    already-canonical tuples and re-validates.
    """

    n_colors: int
    vertex_ids: tuple[int, ...]
    statistics: tuple[str, ...]
    edges: tuple[Edge, ...]
    _vindex: dict[int, int] = field(
        default_factory=dict, compare=False, repr=False, hash=False
    )
    _eindex: dict[Edge, int] = field(
        default_factory=dict, compare=False, repr=False, hash=False
    )
    _neighbor: dict[tuple[int, int], int] = field(
        default_factory=dict, compare=False, repr=False, hash=False
    )
    _dist_cache: dict[int, dict[int, int]] = field(
        default_factory=dict, compare=False, repr=False, hash=False
    )

    @classmethod
    def build(
        cls,
        n_colors: int,
        statistics: Mapping[int, str],
        edges: Iterable[Sequence[int]],
    ) -> "Topology":
        report = validate_topology(n_colors, statistics, edges)
        if report:
            raise AdinkraError("invalid topology: " + "; ".join(report))
        vids = tuple(sorted(statistics))
        stats = tuple(statistics[v] for v in vids)
        es = tuple(sorted(_canon_edge(*e) for e in edges))
        return cls(n_colors, vids, stats, es)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_vindex", {v: i for i, v in enumerate(self.vertex_ids)})
        object.__setattr__(self, "_eindex", {e: i for i, e in enumerate(self.edges)})
        nbr: dict[tuple[int, int], int] = {}
        for u, v, color in self.edges:
            nbr[u, color] = v
            nbr[v, color] = u
        object.__setattr__(self, "_neighbor", nbr)

    # -- basic queries ----------------------------------------------------

    def statistics_of(self, v: int) -> str:
        try:
            return self.statistics[self._vindex[v]]
        except KeyError:
            raise AdinkraError(f"unknown vertex {v}") from None

    def neighbor(self, v: int, color: int) -> int:
        """The unique vertex joined to v by the color-colored edge."""
        try:
            return self._neighbor[v, color]
        except KeyError:
            raise AdinkraError(f"vertex {v} has no edge of color {color}") from None

    def edge_index(self, u: int, v: int, color: int) -> int:
        try:
            return self._eindex[_canon_edge(u, v, color)]
        except KeyError:
            raise AdinkraError(f"no edge {(u, v, color)} in topology") from None

    def has_edge(self, u: int, v: int, color: int) -> bool:
        return _canon_edge(u, v, color) in self._eindex

    def neighbors(self, v: int) -> list[tuple[int, int]]:
        """All (neighbor, color) pairs at v, in color order."""
        out = []
        for color in range(1, self.n_colors + 1):
            w = self._neighbor.get((v, color))
            if w is not None:
                out.append((w, color))
        return out

    def components(self) -> tuple[tuple[int, ...], ...]:
        """Connected components as sorted vertex tuples, ordered by minimum id."""
        seen: set[int] = set()
        comps = []
        for root in self.vertex_ids:
            if root in seen:
                continue
            comp = []
            queue = deque([root])
            seen.add(root)
            while queue:
                v = queue.popleft()
                comp.append(v)
                for w, _ in self.neighbors(v):
                    if w not in seen:
                        seen.add(w)
                        queue.append(w)
            comps.append(tuple(sorted(comp)))
        return tuple(comps)

    def distances_from(self, v: int) -> dict[int, int]:
        """BFS distances from v to every vertex in its component (cached)."""
        cached = self._dist_cache.get(v)
        if cached is not None:
            return cached
        if v not in self._vindex:
            raise AdinkraError(f"unknown vertex {v}")
        dist = {v: 0}
        queue = deque([v])
        while queue:
            u = queue.popleft()
            for w, _ in self.neighbors(u):
                if w not in dist:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        self._dist_cache[v] = dist
        return dist

    def distance(self, u: int, v: int) -> int | None:
        """Graph distance, or None when u and v lie in different components."""
        return self.distances_from(u).get(v)

    def bichromatic_cycles(self, c1: int, c2: int) -> list[list[Edge]]:
        """Closed walks alternating colors c1, c2; each is a simple even cycle.

        Every vertex has exactly one edge of each color, so the {c1, c2}
        subgraph is a disjoint union of even cycles.  Returned in order of
        their minimum vertex, each starting at that vertex along c1.
        """
        cycles = []
        visited: set[int] = set()
        for start in self.vertex_ids:
            if start in visited:
                continue
            cyc: list[Edge] = []
            v = start
            color = c1
            while True:
                visited.add(v)
                w = self.neighbor(v, color)
                cyc.append(_canon_edge(v, w, color))
                v = w
                color = c2 if color == c1 else c1
                if v == start and color == c1:
                    break
            cycles.append(cyc)
        return cycles


def orientation_from_heights(
    topology: Topology, heights: Mapping[int, int]
) -> dict[Edge, tuple[int, int]]:
    """Arrow (tail, head) per edge, pointing from the lower to the higher end."""
    out: dict[Edge, tuple[int, int]] = {}
    for u, v, color in topology.edges:
        hu, hv = heights[u], heights[v]
        if abs(hu - hv) != 1:
            raise AdinkraError(f"edge {(u, v, color)} has height gap {hv - hu}, expected +-1")
        out[(u, v, color)] = (u, v) if hu < hv else (v, u)
    return out


@dataclass(frozen=True)
class Adinkra:
    """A topology with a height assignment and an odd-square edge parity.

    heights and parity are stored positionally (aligned with
    topology.vertex_ids and topology.edges) so instances hash cheaply; use
    the accessors for map-style reads.
    """

    topology: Topology
    heights: tuple[int, ...]
    parity: tuple[int, ...]

    def __post_init__(self) -> None:
        t = self.topology
        if len(self.heights) != len(t.vertex_ids):
            raise AdinkraError("heights length does not match vertex count")
        if len(self.parity) != len(t.edges):
            raise AdinkraError("parity length does not match edge count")
        for u, v, color in t.edges:
            gap = self.height_of(v) - self.height_of(u)
            if abs(gap) != 1:
                raise AdinkraError(f"edge {(u, v, color)} has height gap {gap}, expected +-1")
        for p, e in zip(self.parity, t.edges):
            if p not in (0, 1):
                raise AdinkraError(f"edge {e} has parity {p!r}, expected 0 or 1")
        bad = parity_violations(t, self.parity)
        if bad:
            raise AdinkraError("odd-square rule violated: " + "; ".join(bad))

    @classmethod
    def from_maps(
        cls,
        topology: Topology,
        heights: Mapping[int, int],
        parity: Mapping[Edge, int],
    ) -> "Adinkra":
        h = tuple(heights[v] for v in topology.vertex_ids)
        p = tuple(parity[e] for e in topology.edges)
        return cls(topology, h, p)

    def height_of(self, v: int) -> int:
        return self.heights[self.topology._vindex[v]]

    def parity_of(self, u: int, v: int, color: int) -> int:
        return self.parity[self.topology.edge_index(u, v, color)]

    def heights_by_vertex(self) -> dict[int, int]:
        return dict(zip(self.topology.vertex_ids, self.heights))

    def parity_by_edge(self) -> dict[Edge, int]:
        return dict(zip(self.topology.edges, self.parity))

    def orientation(self) -> dict[Edge, tuple[int, int]]:
        return orientation_from_heights(self.topology, self.heights_by_vertex())

    def normalized(self) -> "Adinkra":
        h = normalize_heights(self.topology, self.heights_by_vertex())
        return Adinkra(self.topology, tuple(h[v] for v in self.topology.vertex_ids), self.parity)


def parity_violations(topology: Topology, parity: Sequence[int]) -> list[str]:
    """Odd-square rule check; returns one entry per violating two-color square."""
    bad = []
    eindex = topology._eindex
    for c1 in range(1, topology.n_colors + 1):
        for c2 in range(c1 + 1, topology.n_colors + 1):
            for cyc in topology.bichromatic_cycles(c1, c2):
                if len(cyc) != 4:
                    continue
                total = sum(parity[eindex[e]] for e in cyc) % 2
                if total != 1:
                    verts = sorted({w for u, v, _ in cyc for w in (u, v)})
                    bad.append(f"square on vertices {verts} (colors {c1},{c2}) has even parity sum")
    return bad


def net_ascent(
    orientation: Mapping[Edge, tuple[int, int]], path: Sequence[Step]
) -> int:
    """Count steps taken along arrows minus steps taken against them.

    path is a chained sequence of directed steps (u, v, color); each step must
    traverse an edge present in the orientation and consecutive steps must
    chain (the first bad step is named in the error).  The empty path has net
    ascent 0.
    """
    total = 0
    prev_end: int | None = None
    for i, (u, v, color) in enumerate(path):
        e = _canon_edge(u, v, color)
        if e not in orientation:
            raise AdinkraError(f"step {i}: edge {(u, v, color)} not present")
        if prev_end is not None and u != prev_end:
            raise AdinkraError(f"step {i}: starts at {u}, previous step ended at {prev_end}")
        tail, head = orientation[e]
        if (u, v) == (tail, head):
            total += 1
        elif (v, u) == (tail, head):
            total -= 1
        else:
            raise AdinkraError(f"step {i}: orientation entry {orientation[e]!r} is not an endpoint pair")
        prev_end = v
    return total


@dataclass(frozen=True)
class EngineerResult:
    """Outcome of an engineerability test.

    Exactly one of heights / witness is set: heights realizes the orientation
    as arrows pointing upward, or witness is a closed path with nonzero net
    ascent proving no height function exists.
    """

    ok: bool
    heights: dict[int, int] | None = None
    witness: tuple[Step, ...] | None = None


def engineerable(
    topology: Topology, orientation: Mapping[Edge, tuple[int, int]]
) -> EngineerResult:
    """Decide whether an orientation comes from a height function.

    The orientation must cover every edge of the topology.  On success the
    returned heights are normalized (bosons even, fermions odd, component
    minima at 0 or 1).  On failure the witness is a closed path whose net
    ascent is nonzero (a cycle the arrows wind around).
    """
    for e in topology.edges:
        if e not in orientation:
            raise AdinkraError(f"orientation missing edge {e}")
        tail, head = orientation[e]
        if {tail, head} != {e[0], e[1]}:
            raise AdinkraError(f"orientation entry for {e} is {orientation[e]!r}, not its endpoints")

    heights: dict[int, int] = {}
    # parent pointers for witness reconstruction
    parent: dict[int, Step] = {}
    for comp in topology.components():
        root = comp[0]
        heights[root] = 0 if topology.statistics_of(root) == BOSON else 1
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w, color in topology.neighbors(u):
                e = _canon_edge(u, w, color)
                delta = 1 if orientation[e] == (u, w) else -1
                h = heights[u] + delta
                if w not in heights:
                    heights[w] = h
                    parent[w] = (u, w, color)
                    queue.append(w)
                elif heights[w] != h:
                    # conflict: walk root->u, cross to w, walk w->root backwards
                    up: list[Step] = []
                    x = u
                    while x != root:
                        pu, pv, pc = parent[x]
                        up.append((pu, pv, pc))
                        x = pu
                    up.reverse()
                    down: list[Step] = []
                    x = w
                    while x != root:
                        pu, pv, pc = parent[x]
                        down.append((pv, pu, pc))
                        x = pu
                    witness = tuple(up) + ((u, w, color),) + tuple(down)
                    return EngineerResult(ok=False, witness=witness)
    return EngineerResult(ok=True, heights=normalize_heights(topology, heights))


def normalize_heights(topology: Topology, heights: Mapping[int, int]) -> dict[int, int]:
    """Translate each component to the normal form; idempotent.

    Normal form: bosons on even heights, fermions on odd heights, and each
    component's minimum height is 0 (when a boson) or 1 (when a fermion).
    Requires the +-1 gap rule on every edge.  A component whose bosons and
    fermions share a height parity cannot be normalized and is rejected.
    """
    for u, v, color in topology.edges:
        gap = heights[v] - heights[u]
        if abs(gap) != 1:
            raise AdinkraError(f"edge {(u, v, color)} has height gap {gap}, expected +-1")
    out: dict[int, int] = {}
    for comp in topology.components():
        boson_par = {heights[v] % 2 for v in comp if topology.statistics_of(v) == BOSON}
        fermi_par = {heights[v] % 2 for v in comp if topology.statistics_of(v) == FERMION}
        if len(boson_par) > 1 or len(fermi_par) > 1 or boson_par & fermi_par:
            raise AdinkraError(
                f"component containing vertex {comp[0]} mixes boson and fermion height parities"
            )
        m = min(heights[v] for v in comp)
        # valid topologies have no isolated vertices, so both sets are nonempty
        bp = next(iter(boson_par), (m + 1) % 2)
        # unique translation putting the minimum at 0 or 1 with bosons even
        t = -m if (m + bp) % 2 == 0 else 1 - m
        for v in comp:
            out[v] = heights[v] + t
    return out


@dataclass(frozen=True)
class ParityResult:
    """Outcome of the odd-square sign solve.

    On success parity maps every edge to 0/1 satisfying the odd-square rule.
    On failure certificate lists a set of squares (each a 4-edge tuple) whose
    constraints sum to the contradiction 0 = 1 over GF(2).
    """

    ok: bool
    parity: dict[Edge, int] | None = None
    certificate: tuple[tuple[Edge, ...], ...] | None = None


def _spanning_forest(topology: Topology) -> set[Edge]:
    """Deterministic BFS forest: lowest id roots, neighbors in color order."""
    tree: set[Edge] = set()
    seen: set[int] = set()
    for root in topology.vertex_ids:
        if root in seen:
            continue
        seen.add(root)
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for w, color in topology.neighbors(v):
                if w not in seen:
                    seen.add(w)
                    tree.add(_canon_edge(v, w, color))
                    queue.append(w)
    return tree


def solve_edge_parity(topology: Topology) -> ParityResult:
    """Solve for an edge parity satisfying the odd-square rule over GF(2).

    One equation per two-colored square (sum of its four edge parities = 1);
    longer two-colored cycles are unconstrained.  Gauge fixing: edges of the
    lexicographic BFS spanning forest are set to 0, remaining free variables
    to 0, so the result is deterministic.  Unsatisfiable systems yield a
    certificate instead (the violating combination of squares).
    """
    edges = topology.edges
    ne = len(edges)
    eindex = topology._eindex

    squares: list[tuple[Edge, ...]] = []
    rows: list[int] = []  # bit i (i < ne) = edge coefficient, bit ne = RHS
    for c1 in range(1, topology.n_colors + 1):
        for c2 in range(c1 + 1, topology.n_colors + 1):
            for cyc in topology.bichromatic_cycles(c1, c2):
                if len(cyc) != 4:
                    continue
                row = 1 << ne
                for e in cyc:
                    row ^= 1 << eindex[e]
                squares.append(tuple(cyc))
                rows.append(row)
    n_squares = len(rows)
    for e in _spanning_forest(topology):
        rows.append(1 << eindex[e])  # gauge: tree edge = 0

    # Gaussian elimination, pivots in canonical edge order; provenance masks
    # track which original rows combine into each reduced row.
    prov = [1 << i for i in range(len(rows))]
    pivot_row_of: dict[int, int] = {}
    for r in range(len(rows)):
        row, pr = rows[r], prov[r]
        for col in range(ne):
            if not row >> col & 1:
                continue
            if col in pivot_row_of:
                s = pivot_row_of[col]
                row ^= rows[s]
                pr ^= prov[s]
            else:
                pivot_row_of[col] = r
                break
        rows[r], prov[r] = row, pr
        if row == 1 << ne:  # 0 = 1
            cert = tuple(squares[i] for i in range(n_squares) if pr >> i & 1)
            return ParityResult(ok=False, certificate=cert)

    # back-substitution with free variables at 0
    values = [0] * ne
    for col in sorted(pivot_row_of, reverse=True):
        row = rows[pivot_row_of[col]]
        acc = row >> ne & 1
        for c2 in range(col + 1, ne):
            if row >> c2 & 1:
                acc ^= values[c2]
        values[col] = acc
    parity = {e: values[i] for i, e in enumerate(edges)}
    return ParityResult(ok=True, parity=parity)
