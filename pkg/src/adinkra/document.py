"""JSON document format and Graphviz export.

One envelope carries every object kind the tools exchange::

    {"format": "adinkra-document", "version": 1, "kind": "adinkra",
     "annotations": {...}, "payload": {...}}

Kinds: topology, adinkra, family, trace, constraints.  Serialization is
canonical: vertices ascend by id, edges ascend by (color, ends), family
members and moves are sorted, so equal objects produce identical text.
Deserialization validates shape and reports the offending path (for example
``payload.vertices[3].height``) before any graph-level validation runs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Mapping

from .core import BOSON, FERMION, Adinkra, AdinkraError, Topology
from .constraints import Constraint, ConstraintSystem, SourceSpec
from .cube import SCALAR, SPINOR
from .mutation import FamilyGraph, SequenceStep, SequenceTrace
from .superspace import Phase

__all__ = [
    "FORMAT_NAME",
    "FORMAT_VERSION",
    "Document",
    "DocumentError",
    "document_kind",
    "serialize",
    "deserialize",
    "export_dot",
]

FORMAT_NAME = "adinkra-document"
FORMAT_VERSION = 1

Payload = Topology | Adinkra | FamilyGraph | SequenceTrace | ConstraintSystem


class DocumentError(AdinkraError):
    """Malformed document text or schema violation."""


@dataclass(frozen=True)
class Document:
    kind: str
    payload: Payload
    annotations: Mapping[str, Any]


def document_kind(obj: Payload) -> str:
    if isinstance(obj, Adinkra):
        return "adinkra"
    if isinstance(obj, Topology):
        return "topology"
    if isinstance(obj, FamilyGraph):
        return "family"
    if isinstance(obj, SequenceTrace):
        return "trace"
    if isinstance(obj, ConstraintSystem):
        return "constraints"
    raise DocumentError(f"no document kind for {type(obj).__name__}")


# ---------------------------------------------------------------------------
# encoding


def _topology_data(t: Topology) -> dict:
    return {
        "n_colors": t.n_colors,
        "vertices": [
            {"id": v, "statistics": t.statistics_of(v)} for v in sorted(t.vertex_ids)
        ],
        "edges": [
            {"color": c, "ends": [u, v]}
            for c, u, v in sorted((c, u, v) for u, v, c in t.edges)
        ],
    }


def _adinkra_data(a: Adinkra) -> dict:
    t = a.topology
    heights = a.heights_by_vertex()
    parity = a.parity_by_edge()
    return {
        "n_colors": t.n_colors,
        "vertices": [
            {"id": v, "statistics": t.statistics_of(v), "height": heights[v]}
            for v in sorted(t.vertex_ids)
        ],
        "edges": [
            {"color": c, "ends": [u, v], "parity": parity[(u, v, c)]}
            for c, u, v in sorted((c, u, v) for u, v, c in t.edges)
        ],
    }


def _family_data(f: FamilyGraph) -> dict:
    some = next(iter(f.members.values()))
    return {
        "topology": _topology_data(f.topology),
        "parity": _parity_list(some),
        "members": sorted(list(k) for k in f.members),
        "moves": [
            {"from": list(src), "kind": kind, "vertex": v, "to": list(dst)}
            for src, kind, v, dst in sorted(f.moves)
        ],
    }


def _parity_list(a: Adinkra) -> list[int]:
    parity = a.parity_by_edge()
    return [
        parity[(u, v, c)]
        for c, u, v in sorted((c, u, v) for u, v, c in a.topology.edges)
    ]


def _trace_data(tr: SequenceTrace) -> dict:
    start = tr.steps[0].adinkra
    return {
        "topology": _topology_data(start.topology),
        "parity": _parity_list(start),
        "steps": [
            {
                "heights": list(s.adinkra.heights),
                "move": None if s.move is None else list(s.move),
                "counters": [list(p) for p in s.counters],
                "parent": s.parent,
                "repeat_of": s.repeat_of,
            }
            for s in tr.steps
        ],
        "cycle_closure": tr.cycle_closure,
    }


def _constraints_data(cs: ConstraintSystem) -> dict:
    return {
        "n_colors": cs.spec.n_colors,
        "kind": cs.kind,
        "entries": [{"subset": m, "shift": s} for m, s in cs.spec.entries],
        "equations": [
            {
                "component": e.component,
                "alpha": e.alpha,
                "beta": e.beta,
                "gap": e.gap,
                "phase": str(e.phase),
                "redundant": e.redundant,
            }
            for e in cs.equations
        ],
    }


_ENCODERS = {
    "topology": _topology_data,
    "adinkra": _adinkra_data,
    "family": _family_data,
    "trace": _trace_data,
    "constraints": _constraints_data,
}


def serialize(obj: Payload | Document, annotations: Mapping[str, Any] | None = None) -> str:
    """Canonical JSON text for a payload object or a prebuilt Document."""
    if isinstance(obj, Document):
        kind, payload = obj.kind, obj.payload
        annotations = dict(obj.annotations) if annotations is None else dict(annotations)
    else:
        kind, payload = document_kind(obj), obj
        annotations = {} if annotations is None else dict(annotations)
    data = {
        "format": FORMAT_NAME,
        "version": FORMAT_VERSION,
        "kind": kind,
        "annotations": annotations,
        "payload": _ENCODERS[kind](payload),
    }
    return json.dumps(data, indent=2) + "\n"


# ---------------------------------------------------------------------------
# decoding


def _fail(path: str, why: str) -> DocumentError:
    return DocumentError(f"{path}: {why}")


def _get(obj: dict, key: str, types, path: str):
    if key not in obj:
        raise _fail(path, f"missing key '{key}'")
    val = obj[key]
    if types is not None and not isinstance(val, types):
        raise _fail(f"{path}.{key}", f"expected {types if isinstance(types, str) else getattr(types, '__name__', types)}, got {type(val).__name__}")
    return val


def _int(obj: dict, key: str, path: str) -> int:
    val = _get(obj, key, None, path)
    if isinstance(val, bool) or not isinstance(val, int):
        raise _fail(f"{path}.{key}", f"expected int, got {type(val).__name__}")
    return val


def _list(obj: dict, key: str, path: str) -> list:
    return _get(obj, key, list, path)


def _decode_vertices(data: dict, path: str, with_heights: bool):
    stats: dict[int, str] = {}
    heights: dict[int, int] = {}
    for i, item in enumerate(_list(data, "vertices", path)):
        vp = f"{path}.vertices[{i}]"
        if not isinstance(item, dict):
            raise _fail(vp, f"expected object, got {type(item).__name__}")
        vid = _int(item, "id", vp)
        st = _get(item, "statistics", str, vp)
        if st not in (BOSON, FERMION):
            raise _fail(f"{vp}.statistics", f"expected '{BOSON}' or '{FERMION}', got {st!r}")
        if vid in stats:
            raise _fail(vp, f"duplicate vertex id {vid}")
        stats[vid] = st
        if with_heights:
            heights[vid] = _int(item, "height", vp)
    return stats, heights


def _decode_edges(data: dict, path: str, with_parity: bool):
    edges: list[tuple[int, int, int]] = []
    parity: dict[tuple[int, int, int], int] = {}
    for i, item in enumerate(_list(data, "edges", path)):
        ep = f"{path}.edges[{i}]"
        if not isinstance(item, dict):
            raise _fail(ep, f"expected object, got {type(item).__name__}")
        color = _int(item, "color", ep)
        ends = _list(item, "ends", ep)
        if len(ends) != 2 or not all(isinstance(e, int) and not isinstance(e, bool) for e in ends):
            raise _fail(f"{ep}.ends", "expected a pair of vertex ids")
        u, v = sorted(ends)
        edges.append((u, v, color))
        if with_parity:
            p = _int(item, "parity", ep)
            if p not in (0, 1):
                raise _fail(f"{ep}.parity", f"expected 0 or 1, got {p}")
            parity[(u, v, color)] = p
    return edges, parity


def _decode_topology(data: dict, path: str) -> Topology:
    n = _int(data, "n_colors", path)
    stats, _ = _decode_vertices(data, path, with_heights=False)
    edges, _ = _decode_edges(data, path, with_parity=False)
    return Topology.build(n, stats, edges)


def _decode_adinkra(data: dict, path: str) -> Adinkra:
    n = _int(data, "n_colors", path)
    stats, heights = _decode_vertices(data, path, with_heights=True)
    edges, parity = _decode_edges(data, path, with_parity=True)
    topo = Topology.build(n, stats, edges)
    return Adinkra.from_maps(topo, heights, parity)


def _heights_tuple(raw, topo: Topology, path: str) -> tuple[int, ...]:
    if not isinstance(raw, list) or len(raw) != len(topo.vertex_ids):
        raise _fail(path, f"expected {len(topo.vertex_ids)} heights")
    for i, h in enumerate(raw):
        if isinstance(h, bool) or not isinstance(h, int):
            raise _fail(f"{path}[{i}]", f"expected int, got {type(h).__name__}")
    return tuple(raw)


def _parity_map(data: dict, topo: Topology, path: str):
    raw = _list(data, "parity", path)
    order = sorted((c, u, v) for u, v, c in topo.edges)
    if len(raw) != len(order):
        raise _fail(f"{path}.parity", f"expected {len(order)} entries")
    out = {}
    for i, ((c, u, v), p) in enumerate(zip(order, raw)):
        if p not in (0, 1) or isinstance(p, bool):
            raise _fail(f"{path}.parity[{i}]", f"expected 0 or 1, got {p!r}")
        out[(u, v, c)] = p
    return out


def _decode_family(data: dict, path: str) -> FamilyGraph:
    topo = _decode_topology(_get(data, "topology", dict, path), f"{path}.topology")
    parity = _parity_map(data, topo, path)
    members = {}
    for i, raw in enumerate(_list(data, "members", path)):
        key = _heights_tuple(raw, topo, f"{path}.members[{i}]")
        members[key] = Adinkra(topo, key, tuple(parity[k] for k in sorted(parity)))
    moves = []
    for i, item in enumerate(_list(data, "moves", path)):
        mp = f"{path}.moves[{i}]"
        if not isinstance(item, dict):
            raise _fail(mp, f"expected object, got {type(item).__name__}")
        kind = _get(item, "kind", str, mp)
        if kind not in ("raise", "lower"):
            raise _fail(f"{mp}.kind", f"expected 'raise' or 'lower', got {kind!r}")
        src = _heights_tuple(_get(item, "from", list, mp), topo, f"{mp}.from")
        dst = _heights_tuple(_get(item, "to", list, mp), topo, f"{mp}.to")
        for key, kp in ((src, "from"), (dst, "to")):
            if key not in members:
                raise _fail(f"{mp}.{kp}", "heights are not a listed member")
        moves.append((src, kind, _int(item, "vertex", mp), dst))
    return FamilyGraph(topo, members, tuple(sorted(moves)))


def _decode_trace(data: dict, path: str) -> SequenceTrace:
    topo = _decode_topology(_get(data, "topology", dict, path), f"{path}.topology")
    parity_map = _parity_map(data, topo, path)
    parity = tuple(parity_map[k] for k in sorted(parity_map))
    steps = []
    raw_steps = _list(data, "steps", path)
    if not raw_steps:
        raise _fail(f"{path}.steps", "a trace needs at least the start step")
    for i, item in enumerate(raw_steps):
        sp = f"{path}.steps[{i}]"
        if not isinstance(item, dict):
            raise _fail(sp, f"expected object, got {type(item).__name__}")
        heights = _heights_tuple(_get(item, "heights", list, sp), topo, f"{sp}.heights")
        move_raw = _get(item, "move", None, sp)
        if move_raw is not None and not isinstance(move_raw, list):
            raise _fail(f"{sp}.move", f"expected null or list, got {type(move_raw).__name__}")
        move = None if move_raw is None else tuple(move_raw)
        counters = []
        for j, pair in enumerate(_get(item, "counters", list, sp)):
            if not isinstance(pair, list) or len(pair) != 2:
                raise _fail(f"{sp}.counters[{j}]", "expected a [vertex, count] pair")
            counters.append((pair[0], pair[1]))
        parent = item.get("parent")
        repeat_of = item.get("repeat_of")
        for key, val in (("parent", parent), ("repeat_of", repeat_of)):
            if val is not None and (isinstance(val, bool) or not isinstance(val, int)):
                raise _fail(f"{sp}.{key}", f"expected null or int, got {type(val).__name__}")
        steps.append(
            SequenceStep(Adinkra(topo, heights, parity), move, tuple(counters), parent, repeat_of)
        )
    closure = data.get("cycle_closure")
    return SequenceTrace(tuple(steps), closure)


_PHASES = {str(Phase(k)): Phase(k) for k in range(4)}


def _decode_constraints(data: dict, path: str) -> ConstraintSystem:
    n = _int(data, "n_colors", path)
    kind = _get(data, "kind", str, path)
    if kind not in (SCALAR, SPINOR):
        raise _fail(f"{path}.kind", f"expected '{SCALAR}' or '{SPINOR}', got {kind!r}")
    entries = []
    for i, item in enumerate(_list(data, "entries", path)):
        ep = f"{path}.entries[{i}]"
        if not isinstance(item, dict):
            raise _fail(ep, f"expected object, got {type(item).__name__}")
        entries.append((_int(item, "subset", ep), _int(item, "shift", ep)))
    spec = SourceSpec(n, tuple(entries))
    equations = []
    for i, item in enumerate(_list(data, "equations", path)):
        ep = f"{path}.equations[{i}]"
        if not isinstance(item, dict):
            raise _fail(ep, f"expected object, got {type(item).__name__}")
        phase_txt = _get(item, "phase", str, ep)
        if phase_txt not in _PHASES:
            raise _fail(f"{ep}.phase", f"expected one of {sorted(_PHASES)}, got {phase_txt!r}")
        equations.append(
            Constraint(
                component=_int(item, "component", ep),
                alpha=_int(item, "alpha", ep),
                beta=_int(item, "beta", ep),
                gap=_int(item, "gap", ep),
                phase=_PHASES[phase_txt],
                redundant=bool(_get(item, "redundant", bool, ep)),
            )
        )
    return ConstraintSystem(spec, kind, tuple(equations))


_DECODERS = {
    "topology": _decode_topology,
    "adinkra": _decode_adinkra,
    "family": _decode_family,
    "trace": _decode_trace,
    "constraints": _decode_constraints,
}


def deserialize(text: str) -> Document:
    """Parse document text back into a Document with a live payload."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise _fail("$", f"expected object, got {type(data).__name__}")
    fmt = _get(data, "format", str, "$")
    if fmt != FORMAT_NAME:
        raise _fail("$.format", f"expected {FORMAT_NAME!r}, got {fmt!r}")
    version = _int(data, "version", "$")
    if version != FORMAT_VERSION:
        raise _fail("$.version", f"unsupported version {version}")
    kind = _get(data, "kind", str, "$")
    if kind not in _DECODERS:
        raise _fail("$.kind", f"expected one of {sorted(_DECODERS)}, got {kind!r}")
    annotations = data.get("annotations", {})
    if not isinstance(annotations, dict):
        raise _fail("$.annotations", f"expected object, got {type(annotations).__name__}")
    payload = _DECODERS[kind](_get(data, "payload", dict, "$"), "$.payload")
    return Document(kind, payload, annotations)


# ---------------------------------------------------------------------------
# Graphviz export


_PALETTE = ("red", "blue", "green", "orange", "purple", "brown", "cyan", "magenta")


def export_dot(obj: Topology | Adinkra | Document, name: str = "adinkra") -> str:
    """Graphviz text: ranks by height, edge color by color, dashed on parity 1.

    Bosons are drawn as white circles, fermions as black ones.  Edges of a
    bare topology are undirected; an Adinkra's edges point from lower to
    higher vertex.
    """
    if isinstance(obj, Document):
        obj = obj.payload
    if isinstance(obj, Adinkra):
        topo, heights, parity = obj.topology, obj.heights_by_vertex(), obj.parity_by_edge()
    elif isinstance(obj, Topology):
        topo, heights, parity = obj, None, None
    else:
        raise DocumentError(f"cannot draw a {type(obj).__name__}")

    lines = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=circle];"]
    for v in sorted(topo.vertex_ids):
        fill = "white" if topo.statistics_of(v) == BOSON else "black"
        font = "black" if fill == "white" else "white"
        lines.append(
            f'  v{v} [label="{v}", style=filled, fillcolor={fill}, fontcolor={font}];'
        )
    if heights is not None:
        for level in sorted(set(heights.values())):
            same = " ".join(f"v{v}" for v in sorted(topo.vertex_ids) if heights[v] == level)
            lines.append(f"  {{ rank=same; {same} }}")
    for c, u, v in sorted((c, u, v) for u, v, c in topo.edges):
        color = _PALETTE[(c - 1) % len(_PALETTE)]
        attrs = [f"color={color}"]
        if parity is not None and parity[(u, v, c)] == 1:
            attrs.append("style=dashed")
        if heights is None:
            attrs.append("dir=none")
            lines.append(f"  v{u} -> v{v} [{', '.join(attrs)}];")
        else:
            lo, hi = (u, v) if heights[u] < heights[v] else (v, u)
            lines.append(f"  v{lo} -> v{hi} [{', '.join(attrs)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
