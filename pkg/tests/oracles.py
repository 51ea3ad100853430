"""Independent oracles the tests compare the package against.

Everything here recomputes expected values by a different route than the
implementation under test: potentials over a spanning forest instead of the
BFS conflict search, direct height-pattern enumeration instead of move
closure, and a closed-form ladder count for the equivariant sequences.
"""

from __future__ import annotations

from itertools import product

from adinkra.core import BOSON, Edge, Topology


def all_orientations(topology: Topology):
    """Every assignment of a direction to every edge."""
    edges = topology.edges
    for bits in range(1 << len(edges)):
        yield {
            (u, v, c): ((u, v) if bits >> i & 1 else (v, u))
            for i, (u, v, c) in enumerate(edges)
        }


def cycle_space_engineerable(topology: Topology, orientation: dict[Edge, tuple[int, int]]) -> bool:
    """Zero net ascent around every cycle, decided through forest potentials.

    A spanning forest fixes a potential per vertex; the orientation is
    engineerable exactly when every non-forest edge agrees with the
    potentials, because the fundamental cycles span the cycle space.
    """
    pot: dict[int, int] = {}
    parent: dict[int, int] = {}

    def find(v: int) -> int:
        while parent.get(v, v) != v:
            parent[v] = parent.get(parent[v], parent[v])
            v = parent[v]
        return v

    rises: list[Edge] = []
    for e in topology.edges:
        u, v, _ = e
        pot.setdefault(u, None)
        pot.setdefault(v, None)
        if find(u) != find(v):
            parent[find(u)] = find(v)
            rises.append(e)

    # walk each tree once to assign potentials
    adj: dict[int, list[tuple[int, Edge]]] = {v: [] for v in topology.vertex_ids}
    for e in rises:
        u, v, _ = e
        adj[u].append((v, e))
        adj[v].append((u, e))
    for root in topology.vertex_ids:
        if pot.get(root) is not None:
            continue
        pot[root] = 0
        stack = [root]
        while stack:
            x = stack.pop()
            for y, e in adj[x]:
                if pot[y] is None:
                    _, hi = orientation[e]
                    pot[y] = pot[x] + (1 if hi == y else -1)
                    stack.append(y)

    for e in topology.edges:
        lo, hi = orientation[e]
        if pot[hi] - pot[lo] != 1:
            return False
    return True


def _normalize_pattern(topology: Topology, heights: dict[int, int]) -> tuple[int, ...]:
    out = dict(heights)
    for comp in topology.components():
        v0 = comp[0]
        # force boson heights even, then slide the minimum into {0, 1}
        if (out[v0] + (0 if topology.statistics_of(v0) == BOSON else 1)) % 2 == 1:
            for v in comp:
                out[v] += 1
        m = min(out[v] for v in comp)
        t = -m if (m % 2 == 0) else 1 - m
        for v in comp:
            out[v] += t
    return tuple(out[v] for v in topology.vertex_ids)


def all_height_patterns(topology: Topology) -> set[tuple[int, ...]]:
    """Every normalized height pattern, found by direct assignment.

    Assigns +-1 steps along a spanning tree and keeps the assignments whose
    non-tree edges also differ by one, so the result does not depend on the
    mutation moves at all.
    """
    comps = topology.components()
    tree_edges: list[Edge] = []
    order: list[int] = []
    seen: set[int] = set()
    for comp in comps:
        root = comp[0]
        seen.add(root)
        order.append(root)
        stack = [root]
        while stack:
            x = stack.pop()
            for y, c in topology.neighbors(x):
                if y not in seen:
                    seen.add(y)
                    order.append(y)
                    tree_edges.append((x, y, c))
                    stack.append(y)

    patterns: set[tuple[int, ...]] = set()
    roots = {comp[0] for comp in comps}
    for signs in product((-1, 1), repeat=len(tree_edges)):
        h: dict[int, int] = {}
        for v in order:
            if v in roots:
                h[v] = 0
        for (u, v, _), s in zip(tree_edges, signs):
            h[v] = h[u] + s
        if all(abs(h[u] - h[v]) == 1 for u, v, _ in topology.edges):
            patterns.add(_normalize_pattern(topology, h))
    return patterns


def equivariant_ladder_patterns(n: int) -> set[tuple[int, ...]]:
    """Height patterns of the n-cube constant on popcount orbits.

    Such a pattern is a walk h_0, ..., h_n with +-1 steps, lifted to the cube
    and normalized; there are exactly 2^n of them.
    """
    topology_vids = range(1 << n)
    patterns: set[tuple[int, ...]] = set()
    for signs in product((-1, 1), repeat=n):
        levels = [0]
        for s in signs:
            levels.append(levels[-1] + s)
        m = min(levels)
        t = -m if m % 2 == 0 else 1 - m
        levels = [x + t for x in levels]
        patterns.add(tuple(levels[bin(v).count("1")] for v in topology_vids))
    return patterns
