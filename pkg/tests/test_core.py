from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from adinkra.core import (
    BOSON,
    FERMION,
    Adinkra,
    AdinkraError,
    Topology,
    engineerable,
    net_ascent,
    normalize_heights,
    orientation_from_heights,
    parity_violations,
    solve_edge_parity,
    validate_topology,
)
from adinkra.cube import cube_topology, standard_parity

from oracles import all_orientations, cycle_space_engineerable


SQUARE_STATS = {0: BOSON, 1: FERMION, 2: FERMION, 3: BOSON}
SQUARE_EDGES = [(0, 1, 1), (2, 3, 1), (0, 2, 2), (1, 3, 2)]


def square() -> Topology:
    return Topology.build(2, SQUARE_STATS, SQUARE_EDGES)


# ---------------------------------------------------------------------------
# validation


def test_validate_accepts_square() -> None:
    assert validate_topology(2, SQUARE_STATS, SQUARE_EDGES) == []


def test_validate_rejects_bad_color() -> None:
    report = validate_topology(1, SQUARE_STATS, SQUARE_EDGES)
    assert any("color" in line for line in report)


def test_validate_rejects_self_loop() -> None:
    report = validate_topology(1, {0: BOSON}, [(0, 0, 1)])
    assert any("loop" in line for line in report)


def test_validate_rejects_duplicate_edge() -> None:
    report = validate_topology(
        1, {0: BOSON, 1: FERMION}, [(0, 1, 1), (1, 0, 1)]
    )
    assert any("repeated" in line for line in report)


def test_validate_rejects_same_statistics_edge() -> None:
    report = validate_topology(1, {0: BOSON, 1: BOSON}, [(0, 1, 1)])
    assert any("statistics" in line for line in report)


def test_validate_rejects_missing_color_at_vertex() -> None:
    stats = {0: BOSON, 1: FERMION, 2: FERMION, 3: BOSON}
    report = validate_topology(2, stats, [(0, 1, 1), (2, 3, 1), (0, 2, 2)])
    assert any("expected exactly 1" in line for line in report)


def test_validate_rejects_unknown_endpoint() -> None:
    report = validate_topology(1, {0: BOSON, 1: FERMION}, [(0, 7, 1)])
    assert any("unknown" in line for line in report)


def test_build_raises_on_invalid() -> None:
    with pytest.raises(AdinkraError):
        Topology.build(1, {0: BOSON, 1: BOSON}, [(0, 1, 1)])


def test_edges_are_canonical() -> None:
    t = Topology.build(2, SQUARE_STATS, [(3, 1, 2), (1, 0, 1), (2, 0, 2), (3, 2, 1)])
    assert t.edges == ((0, 1, 1), (0, 2, 2), (1, 3, 2), (2, 3, 1))
    assert t == square()


def test_components_and_distances() -> None:
    two = Topology.build(
        1,
        {0: BOSON, 1: FERMION, 10: BOSON, 11: FERMION},
        [(0, 1, 1), (10, 11, 1)],
    )
    assert two.components() == ((0, 1), (10, 11))
    assert two.distance(0, 1) == 1
    assert two.distance(0, 10) is None


def test_cube_distance_is_hamming() -> None:
    t = cube_topology(3)
    for u in t.vertex_ids:
        for v in t.vertex_ids:
            assert t.distance(u, v) == bin(u ^ v).count("1")


# ---------------------------------------------------------------------------
# heights and orientations


def test_adinkra_rejects_bad_height_gap() -> None:
    t = square()
    with pytest.raises(AdinkraError, match="height gap"):
        Adinkra.from_maps(
            t, {0: 0, 1: 3, 2: 1, 3: 2}, {e: p for e, p in zip(t.edges, (0, 0, 0, 1))}
        )


def test_adinkra_rejects_even_square() -> None:
    t = square()
    with pytest.raises(AdinkraError, match="odd-square"):
        Adinkra.from_maps(t, {0: 0, 1: 1, 2: 1, 3: 2}, {e: 0 for e in t.edges})


def test_parity_violations_names_the_square() -> None:
    t = square()
    bad = parity_violations(t, (0, 0, 0, 0))
    assert len(bad) == 1
    assert "colors 1,2" in bad[0]


def test_orientation_from_heights_points_up() -> None:
    t = square()
    a = Adinkra.from_maps(
        t, {0: 0, 1: 1, 2: 1, 3: 2}, {e: p for e, p in zip(t.edges, (0, 0, 0, 1))}
    )
    orient = a.orientation()
    assert orient[(0, 1, 1)] == (0, 1)
    assert orient[(1, 3, 2)] == (1, 3)


def test_net_ascent_requires_chained_path() -> None:
    t = square()
    a = Adinkra.from_maps(
        t, {0: 0, 1: 1, 2: 1, 3: 2}, {e: p for e, p in zip(t.edges, (0, 0, 0, 1))}
    )
    orient = a.orientation()
    assert net_ascent(orient, []) == 0
    assert net_ascent(orient, [(0, 1, 1), (1, 3, 2), (3, 2, 1), (2, 0, 2)]) == 0
    with pytest.raises(AdinkraError):
        net_ascent(orient, [(0, 1, 1), (3, 2, 1)])
    with pytest.raises(AdinkraError):
        net_ascent(orient, [(0, 3, 1)])


@pytest.mark.parametrize("n", [1, 2, 3])
def test_engineerable_matches_cycle_space_oracle(n: int) -> None:
    t = cube_topology(n)
    for orient in all_orientations(t):
        assert engineerable(t, orient).ok == cycle_space_engineerable(t, orient)


def test_engineerable_square_count_is_six() -> None:
    t = cube_topology(2)
    good = [o for o in all_orientations(t) if engineerable(t, o).ok]
    assert len(good) == 6


def test_engineerable_returns_normalized_heights() -> None:
    t = cube_topology(2)
    for orient in all_orientations(t):
        res = engineerable(t, orient)
        if res.ok:
            assert res.heights == normalize_heights(t, res.heights)
            assert orientation_from_heights(t, res.heights) == orient


def test_witness_is_a_closed_ascent() -> None:
    t = cube_topology(2)
    for orient in all_orientations(t):
        res = engineerable(t, orient)
        if res.ok:
            continue
        path = res.witness
        assert path[0][0] == path[-1][1]
        assert net_ascent(orient, list(path)) != 0


# ---------------------------------------------------------------------------
# normalization


def heights_via_random_moves(seed: int) -> tuple[Topology, dict[int, int]]:
    import random

    from adinkra.mutation import base_adinkra, raise_vertex, sources

    rng = random.Random(seed)
    t = cube_topology(2)
    a = base_adinkra(t)
    for _ in range(rng.randrange(6)):
        a = raise_vertex(a, rng.choice(sources(a)))
    return t, a.heights_by_vertex()


@given(st.integers(0, 10_000), st.integers(-5, 5))
@settings(max_examples=60, deadline=None)
def test_normalize_is_idempotent_and_shift_invariant(seed: int, k: int) -> None:
    t, h = heights_via_random_moves(seed)
    normal = normalize_heights(t, h)
    assert normalize_heights(t, normal) == normal
    shifted = {v: x + 2 * k for v, x in h.items()}
    assert normalize_heights(t, shifted) == normal


def test_normalize_rejects_bad_gap() -> None:
    t = square()
    with pytest.raises(AdinkraError, match="height gap"):
        normalize_heights(t, {0: 0, 1: 1, 2: 3, 3: 2})


def test_normalize_lands_min_in_zero_or_one() -> None:
    t = cube_topology(2)
    assert normalize_heights(t, {0: 4, 1: 5, 2: 5, 3: 6}) == {0: 0, 1: 1, 2: 1, 3: 2}
    assert normalize_heights(t, {0: 6, 1: 5, 2: 5, 3: 4}) == {0: 2, 1: 1, 2: 1, 3: 0}


def test_normalize_flips_odd_bosons_even() -> None:
    t = cube_topology(1)
    # a shifted pattern with the boson on an odd height slides by -1
    assert normalize_heights(t, {0: 3, 1: 2}) == {0: 2, 1: 1}


def test_normalize_per_component() -> None:
    two = Topology.build(
        1,
        {0: BOSON, 1: FERMION, 10: BOSON, 11: FERMION},
        [(0, 1, 1), (10, 11, 1)],
    )
    assert normalize_heights(two, {0: 8, 1: 9, 10: 3, 11: 2}) == {
        0: 0,
        1: 1,
        10: 2,
        11: 1,
    }


# ---------------------------------------------------------------------------
# edge parity solver


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_solved_parity_satisfies_odd_square_rule(n: int) -> None:
    t = cube_topology(n)
    res = solve_edge_parity(t)
    assert res.ok
    assert parity_violations(t, tuple(res.parity[e] for e in t.edges)) == []


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_standard_parity_satisfies_odd_square_rule(n: int) -> None:
    t = cube_topology(n)
    parity = standard_parity(t)
    assert parity_violations(t, tuple(parity[e] for e in t.edges)) == []
