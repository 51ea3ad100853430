"""Vertex mutation: raising and lowering extreme vertices, and what it generates.

Lowering drops a target (a vertex all of whose arrows point in) by 2; raising
lifts a source by 2.  The moves are mutual inverses and generate the whole
family of height functions on a topology from the base Adinkra (bosons at 0,
fermions at 1).  Member identity is the normalized height vector, so the
family is finite and the move graph is well defined.  A sequence trace walks
the family by raisings only, recording every move including the ones that
land on an already-visited pattern.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .core import BOSON, Adinkra, AdinkraError, Topology, solve_edge_parity

__all__ = [
    "sources",
    "targets",
    "raise_vertex",
    "lower_vertex",
    "base_adinkra",
    "automorphic_dual",
    "lowering_sequence_to_one_hooked",
    "FamilyGraph",
    "enumerate_family",
    "kinship_distance",
    "isomorphic",
    "isomorphism_classes",
    "SequenceStep",
    "SequenceTrace",
    "main_sequence",
]

HeightKey = tuple[int, ...]


def sources(adinkra: Adinkra) -> tuple[int, ...]:
    """Vertices all of whose edges point away (strict local minima)."""
    t = adinkra.topology
    return tuple(
        v
        for v in t.vertex_ids
        if all(adinkra.height_of(w) > adinkra.height_of(v) for w, _ in t.neighbors(v))
    )


def targets(adinkra: Adinkra) -> tuple[int, ...]:
    """Vertices all of whose edges point in (strict local maxima)."""
    t = adinkra.topology
    return tuple(
        v
        for v in t.vertex_ids
        if all(adinkra.height_of(w) < adinkra.height_of(v) for w, _ in t.neighbors(v))
    )


def _shift(adinkra: Adinkra, vertex: int, delta: int) -> Adinkra:
    t = adinkra.topology
    i = t._vindex[vertex]
    heights = adinkra.heights[:i] + (adinkra.heights[i] + delta,) + adinkra.heights[i + 1 :]
    return Adinkra(t, heights, adinkra.parity)


def lower_vertex(adinkra: Adinkra, vertex: int) -> Adinkra:
    """Drop a target by 2; topology and parity are untouched."""
    t = adinkra.topology
    if vertex not in t._vindex:
        raise AdinkraError(f"unknown vertex {vertex}")
    hv = adinkra.height_of(vertex)
    for w, color in t.neighbors(vertex):
        if adinkra.height_of(w) > hv:
            raise AdinkraError(
                f"cannot lower {vertex}: edge {(vertex, w, color)} points into {w} above it"
            )
    return _shift(adinkra, vertex, -2)


def raise_vertex(adinkra: Adinkra, vertex: int) -> Adinkra:
    """Lift a source by 2; inverse of :func:`lower_vertex`."""
    t = adinkra.topology
    if vertex not in t._vindex:
        raise AdinkraError(f"unknown vertex {vertex}")
    hv = adinkra.height_of(vertex)
    for w, color in t.neighbors(vertex):
        if adinkra.height_of(w) < hv:
            raise AdinkraError(
                f"cannot raise {vertex}: edge {(vertex, w, color)} comes up from {w} below it"
            )
    return _shift(adinkra, vertex, 2)


def base_adinkra(topology: Topology, parity=None) -> Adinkra:
    """The valise: every boson at height 0, every fermion at height 1."""
    heights = {
        v: 0 if topology.statistics_of(v) == BOSON else 1 for v in topology.vertex_ids
    }
    if parity is None:
        solved = solve_edge_parity(topology)
        if not solved.ok:
            raise AdinkraError("no odd-square edge parity exists for this topology")
        parity = solved.parity
    return Adinkra.from_maps(topology, heights, parity)


def automorphic_dual(adinkra: Adinkra) -> Adinkra:
    """Flip the Adinkra upside down: negate heights, then normalize."""
    t = adinkra.topology
    flipped = Adinkra(t, tuple(-h for h in adinkra.heights), adinkra.parity)
    return flipped.normalized()


def lowering_sequence_to_one_hooked(adinkra: Adinkra, vertex: int) -> list[int]:
    """Lower everything else until vertex is the unique target.

    Repeatedly lowers all maximal-height targets other than vertex (ascending
    id), which terminates with vertex as the single hook; its own height never
    changes.  Returns the vertices lowered, in order; replaying them with
    :func:`lower_vertex` reproduces the descent.
    """
    t = adinkra.topology
    if vertex not in t._vindex:
        raise AdinkraError(f"unknown vertex {vertex}")
    if len(t.components()) != 1:
        raise AdinkraError("one-hooked descent needs a connected topology")
    # the landed pattern is forced, so the total move count is known up front
    dist = t.distances_from(vertex)
    hv = adinkra.height_of(vertex)
    total = sum((adinkra.height_of(w) - (hv - dist[w])) // 2 for w in t.vertex_ids)
    moves: list[int] = []
    current = adinkra
    while True:
        others = [v for v in targets(current) if v != vertex]
        if not others:
            break
        top = max(current.height_of(v) for v in others)
        for v in sorted(v for v in others if current.height_of(v) == top):
            current = lower_vertex(current, v)
            moves.append(v)
        if len(moves) > total:  # pragma: no cover
            raise AdinkraError("descent exceeded its move budget; data is inconsistent")
    assert current.height_of(vertex) == adinkra.height_of(vertex)
    return moves


@dataclass(frozen=True)
class FamilyGraph:
    """All height functions on one topology, joined by single raise/lower moves.

    members is keyed by the normalized height vector (aligned with
    topology.vertex_ids); moves are (from_key, kind, vertex, to_key) with kind
    "raise" or "lower", and come in inverse pairs.
    """

    topology: Topology
    members: Mapping[HeightKey, Adinkra]
    moves: tuple[tuple[HeightKey, str, int, HeightKey], ...]

    def __len__(self) -> int:
        return len(self.members)

    def neighbors(self, key: HeightKey) -> list[tuple[str, int, HeightKey]]:
        return [(kind, v, dst) for src, kind, v, dst in self.moves if src == key]


def member_key(adinkra: Adinkra) -> HeightKey:
    return adinkra.normalized().heights


def enumerate_family(topology: Topology, parity=None) -> FamilyGraph:
    """Breadth-first closure of the base Adinkra under raising and lowering."""
    start = base_adinkra(topology, parity).normalized()
    members: dict[HeightKey, Adinkra] = {start.heights: start}
    moves: set[tuple[HeightKey, str, int, HeightKey]] = set()
    queue = deque([start.heights])
    while queue:
        key = queue.popleft()
        member = members[key]
        steps = [("raise", v, raise_vertex) for v in sources(member)] + [
            ("lower", v, lower_vertex) for v in targets(member)
        ]
        for kind, v, op in steps:
            nxt = op(member, v).normalized()
            if nxt.heights not in members:
                members[nxt.heights] = nxt
                queue.append(nxt.heights)
            moves.add((key, kind, v, nxt.heights))
    return FamilyGraph(topology, members, tuple(sorted(moves)))


def kinship_distance(a: Adinkra, b: Adinkra) -> int:
    """Minimum number of single-vertex moves turning a into b (same topology)."""
    if a.topology != b.topology:
        raise AdinkraError("kinship distance needs both Adinkras on the same topology")
    start = member_key(a)
    goal = member_key(b)
    if start == goal:
        return 0
    dist = {start: 0}
    queue = deque([start])
    t = a.topology
    parity = a.parity
    while queue:
        key = queue.popleft()
        member = Adinkra(t, key, parity)
        for v in sources(member):
            nxt = member_key(raise_vertex(member, v))
            if nxt not in dist:
                dist[nxt] = dist[key] + 1
                if nxt == goal:
                    return dist[nxt]
                queue.append(nxt)
        for v in targets(member):
            nxt = member_key(lower_vertex(member, v))
            if nxt not in dist:
                dist[nxt] = dist[key] + 1
                if nxt == goal:
                    return dist[nxt]
                queue.append(nxt)
    raise AdinkraError("height patterns are not connected by moves; data is inconsistent")


def _color_map_extensions(ta: Topology, tb: Topology, va: int, vb: int):
    """Try to extend va -> vb to a color-respecting map on va's component."""
    mapping = {va: vb}
    queue = deque([va])
    while queue:
        x = queue.popleft()
        for w, color in ta.neighbors(x):
            y = tb.neighbor(mapping[x], color)
            if w in mapping:
                if mapping[w] != y:
                    return None
            else:
                mapping[w] = y
                queue.append(w)
    return mapping


def isomorphic(a: Adinkra, b: Adinkra, permute_colors: bool = False) -> bool:
    """Color- and statistics-preserving isomorphism of height patterns.

    A color-respecting vertex map is rigid once one vertex image per component
    is chosen, so candidates are enumerated by anchoring each component at
    every possible image.  Heights must agree up to a constant even shift per
    component; statistics must be preserved.  With permute_colors=True, color
    relabelings are tried on top (a strictly coarser equivalence, exposed
    separately).
    """
    ta, tb = a.topology, b.topology
    if ta.n_colors != tb.n_colors or len(ta.vertex_ids) != len(tb.vertex_ids):
        return False
    from itertools import permutations

    color_maps = (
        [dict(zip(range(1, ta.n_colors + 1), p)) for p in permutations(range(1, ta.n_colors + 1))]
        if permute_colors
        else [{c: c for c in range(1, ta.n_colors + 1)}]
    )
    for cmap in color_maps:
        relabeled = Topology.build(
            ta.n_colors,
            {v: ta.statistics_of(v) for v in ta.vertex_ids},
            [(u, v, cmap[c]) for u, v, c in ta.edges],
        )
        ra = Adinkra(
            relabeled,
            tuple(a.height_of(v) for v in relabeled.vertex_ids),
            tuple(a.parity_of(*e) for e in _unmapped_edges(ta, relabeled, cmap)),
        )
        if _match_components(ra, b):
            return True
    return False


def _unmapped_edges(ta: Topology, relabeled: Topology, cmap) -> list[tuple[int, int, int]]:
    inverse = {w: c for c, w in cmap.items()}
    return [(u, v, inverse[c]) for u, v, c in relabeled.edges]


def _match_components(a: Adinkra, b: Adinkra) -> bool:
    ta, tb = a.topology, b.topology
    comps_a = ta.components()
    comps_b = list(tb.components())
    if sorted(map(len, comps_a)) != sorted(map(len, comps_b)):
        return False

    def try_assign(i: int, used: set[int]) -> bool:
        if i == len(comps_a):
            return True
        ca = comps_a[i]
        va = ca[0]
        for j, cb in enumerate(comps_b):
            if j in used or len(cb) != len(ca):
                continue
            for vb in cb:
                mapping = _color_map_extensions(ta, tb, va, vb)
                if mapping is None:
                    continue
                if any(ta.statistics_of(x) != tb.statistics_of(y) for x, y in mapping.items()):
                    continue
                shifts = {b.height_of(y) - a.height_of(x) for x, y in mapping.items()}
                if len(shifts) != 1 or next(iter(shifts)) % 2 != 0:
                    continue
                if try_assign(i + 1, used | {j}):
                    return True
        return False

    return try_assign(0, set())


def isomorphism_classes(
    members: Iterable[Adinkra], permute_colors: bool = False
) -> list[list[Adinkra]]:
    """Partition Adinkras into isomorphism classes (greedy, deterministic)."""
    classes: list[list[Adinkra]] = []
    for m in members:
        for cls in classes:
            if isomorphic(cls[0], m, permute_colors=permute_colors):
                cls.append(m)
                break
        else:
            classes.append([m])
    return classes


@dataclass(frozen=True)
class SequenceStep:
    """One recorded move of a sequence trace.

    adinkra is the normalized pattern reached; move is the raised orbit (a
    vertex tuple; singleton for a plain vertex raise) or None for the start;
    counters gives cumulative raises per vertex along the discovery path
    (they label derivative dressing and never enter pattern identity);
    parent is the step this was raised from; repeat_of is the index of the
    first step with the same pattern when the move lands on a seen pattern.
    """

    adinkra: Adinkra
    move: tuple[int, ...] | None
    counters: tuple[tuple[int, int], ...]
    parent: int | None
    repeat_of: int | None


@dataclass(frozen=True)
class SequenceTrace:
    steps: tuple[SequenceStep, ...]
    cycle_closure: int | None

    def distinct_members(self) -> list[Adinkra]:
        return [s.adinkra for s in self.steps if s.repeat_of is None]


def _check_orbits(start: Adinkra, orbits: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    t = start.topology
    seen: set[int] = set()
    out: list[tuple[int, ...]] = []
    for orbit in orbits:
        ot = tuple(sorted(orbit))
        if not ot:
            raise AdinkraError("empty orbit in partition")
        for v in ot:
            if v not in t._vindex:
                raise AdinkraError(f"orbit refers to unknown vertex {v}")
            if v in seen:
                raise AdinkraError(f"vertex {v} appears in more than one orbit")
            seen.add(v)
        if len({t.statistics_of(v) for v in ot}) != 1:
            raise AdinkraError(f"orbit {ot} mixes statistics")
        if len({start.height_of(v) for v in ot}) != 1:
            raise AdinkraError(f"orbit {ot} is not height-homogeneous in the start Adinkra")
        out.append(ot)
    missing = set(t.vertex_ids) - seen
    if missing:
        raise AdinkraError(f"orbit partition misses vertices {sorted(missing)}")
    return sorted(out)


def main_sequence(
    start: Adinkra, orbits: Sequence[Sequence[int]] | None = None
) -> SequenceTrace:
    """Walk the family from start by raisings, recording every move.

    Moves raise one source vertex at a time, or one whole orbit when an orbit
    partition is supplied (an orbit is raisable only when all its vertices are
    sources; sources are never adjacent, so the joint raise is consistent).
    Exploration is breadth-first in ascending vertex/orbit order and continues
    until no unseen normalized pattern remains.  A move landing on a seen
    pattern is recorded as a repeat step and not explored further.
    cycle_closure is the index of the first step that repeats the start
    pattern, or None.
    """
    t = start.topology
    if orbits is None:
        orbit_list = [(v,) for v in t.vertex_ids]
    else:
        orbit_list = _check_orbits(start, orbits)

    start_n = start.normalized()
    zero = tuple((v, 0) for v in t.vertex_ids)
    steps: list[SequenceStep] = [SequenceStep(start_n, None, zero, None, None)]
    first_index: dict[HeightKey, int] = {start_n.heights: 0}
    cycle_closure: int | None = None
    queue = deque([0])
    while queue:
        idx = queue.popleft()
        member = steps[idx].adinkra
        counters = dict(steps[idx].counters)
        src = set(sources(member))
        for orbit in orbit_list:
            if not all(v in src for v in orbit):
                continue
            raised = member
            for v in orbit:
                raised = raise_vertex(raised, v)
            raised = raised.normalized()
            new_counters = dict(counters)
            for v in orbit:
                new_counters[v] += 1
            ct = tuple(sorted(new_counters.items()))
            seen_at = first_index.get(raised.heights)
            if seen_at is None:
                first_index[raised.heights] = len(steps)
                steps.append(SequenceStep(raised, orbit, ct, idx, None))
                queue.append(len(steps) - 1)
            else:
                steps.append(SequenceStep(raised, orbit, ct, idx, seen_at))
                if seen_at == 0 and cycle_closure is None:
                    cycle_closure = len(steps) - 1
    return SequenceTrace(tuple(steps), cycle_closure)
