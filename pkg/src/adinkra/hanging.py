"""Hanging gardens: reconstruct heights from a set of hooked extreme vertices.

A topology plus a set of hooks (chosen extreme vertices with prescribed
heights) determines the whole height function: in targets mode every vertex
hangs down from the hooks, hgt(v) = max over hooks s of h(s) - dist(v, s);
in sources mode it is propped up from below, hgt(v) = min of h(s) + dist(v, s).
The hook heights must respect statistics parity, every component needs at
least one hook, and two hooks must be farther apart than their height gap,
otherwise one of them would fail to be extreme.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .core import (
    BOSON,
    Adinkra,
    AdinkraError,
    Edge,
    Topology,
    solve_edge_parity,
)

__all__ = ["TARGETS", "SOURCES", "HookSet", "check_hooks", "hang", "hooks_of", "one_hooked"]

TARGETS = "targets"
SOURCES = "sources"


@dataclass(frozen=True)
class HookSet:
    """Prescribed extreme vertices: mode is targets (maxima) or sources (minima)."""

    mode: str
    hooks: tuple[tuple[int, int], ...]  # (vertex, height), ascending vertex

    @classmethod
    def from_map(cls, mode: str, hooks: Mapping[int, int]) -> "HookSet":
        if mode not in (TARGETS, SOURCES):
            raise AdinkraError(f"hook mode must be targets or sources, got {mode!r}")
        return cls(mode, tuple(sorted(hooks.items())))

    def as_map(self) -> dict[int, int]:
        return dict(self.hooks)


def check_hooks(topology: Topology, hookset: HookSet) -> list[str]:
    """Validate a hook set against a topology; violations are returned as data.

    Checked: at least one hook per connected component; hook heights match
    vertex statistics (bosons even, fermions odd); and for every pair of hooks
    in one component, dist(s, t) > |h(s) - h(t)| strictly.  Hooks naming
    unknown vertices are an error, not a violation.
    """
    if hookset.mode not in (TARGETS, SOURCES):
        raise AdinkraError(f"hook mode must be targets or sources, got {hookset.mode!r}")
    hooks = hookset.as_map()
    for v in hooks:
        if v not in topology._vindex:
            raise AdinkraError(f"hook references unknown vertex {v}")

    report: list[str] = []
    for comp in topology.components():
        if not any(v in hooks for v in comp):
            report.append(f"component containing vertex {comp[0]} has no hook")
    for v, h in sorted(hooks.items()):
        want = 0 if topology.statistics_of(v) == BOSON else 1
        if h % 2 != want:
            report.append(
                f"hook {v} has height {h}, but a {topology.statistics_of(v)} needs parity {want}"
            )
    items = sorted(hooks.items())
    for i, (s, hs) in enumerate(items):
        for t, ht in items[i + 1 :]:
            d = topology.distance(s, t)
            if d is None:
                continue
            if d <= abs(hs - ht):
                report.append(
                    f"hooks {s} and {t} are at distance {d} with height gap {abs(hs - ht)};"
                    " need distance > gap"
                )
    return report


def hang(
    topology: Topology,
    hookset: HookSet,
    parity: Mapping[Edge, int] | None = None,
) -> Adinkra:
    """Reconstruct the unique height function hanging from the hooks.

    Raises on hook violations.  Parity defaults to the deterministic
    odd-square solve; pass an explicit parity to keep, say, the standard cube
    signs through a pipeline.
    """
    report = check_hooks(topology, hookset)
    if report:
        raise AdinkraError("invalid hooks: " + "; ".join(report))
    hooks = hookset.as_map()
    heights: dict[int, int] = {}
    for comp in topology.components():
        local = [s for s in comp if s in hooks]
        tables = [(hooks[s], topology.distances_from(s)) for s in local]
        for v in comp:
            if hookset.mode == TARGETS:
                heights[v] = max(h - dist[v] for h, dist in tables)
            else:
                heights[v] = min(h + dist[v] for h, dist in tables)
    if parity is None:
        solved = solve_edge_parity(topology)
        if not solved.ok:
            raise AdinkraError("no odd-square edge parity exists for this topology")
        parity = solved.parity
    return Adinkra.from_maps(topology, heights, parity)


def hooks_of(adinkra: Adinkra) -> HookSet:
    """The target vertices of an Adinkra with their heights (targets mode).

    Inverse of :func:`hang`: hanging these hooks reproduces the heights
    bit-exactly.
    """
    hooks: dict[int, int] = {}
    t = adinkra.topology
    for v in t.vertex_ids:
        hv = adinkra.height_of(v)
        if all(adinkra.height_of(w) < hv for w, _ in t.neighbors(v)):
            hooks[v] = hv
    return HookSet.from_map(TARGETS, hooks)


def one_hooked(
    topology: Topology,
    vertex: int,
    height: int,
    parity: Mapping[Edge, int] | None = None,
) -> Adinkra:
    """Hang a connected topology from a single top vertex.

    Every height is height - dist(vertex, v).  The hook height must match the
    vertex statistics parity; disconnected topologies are rejected since the
    single hook cannot reach the other components.
    """
    if len(topology.components()) != 1:
        raise AdinkraError("one-hooked hanging needs a connected topology")
    if vertex not in topology._vindex:
        raise AdinkraError(f"hook references unknown vertex {vertex}")
    want = 0 if topology.statistics_of(vertex) == BOSON else 1
    if height % 2 != want:
        raise AdinkraError(
            f"hook height {height} does not match the statistics parity of vertex {vertex}"
        )
    return hang(topology, HookSet.from_map(TARGETS, {vertex: height}), parity)
