from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from adinkra.core import BOSON, FERMION, AdinkraError, parity_violations
from adinkra.cube import (
    SCALAR,
    SPINOR,
    antipodal_quotient,
    cube_signature,
    cube_statistics,
    cube_topology,
    dist0,
    hgt0,
    standard_parity,
    subset_label,
)


def test_hgt0_counts_bits() -> None:
    assert [hgt0(v) for v in range(8)] == [0, 1, 1, 2, 1, 2, 2, 3]


@given(st.integers(0, 255), st.integers(0, 255))
def test_dist0_is_hamming(a: int, b: int) -> None:
    assert dist0(a, b) == bin(a ^ b).count("1")
    assert dist0(a, b) == dist0(b, a)
    assert (dist0(a, b) == 0) == (a == b)


def test_subset_label() -> None:
    assert subset_label(0) == "{}"
    assert subset_label(0b101) == "{1,3}"


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_cube_shape(n: int) -> None:
    t = cube_topology(n)
    assert t.vertex_ids == tuple(range(1 << n))
    assert len(t.edges) == n * (1 << (n - 1))
    assert len(t.components()) == 1


def test_cube_statistics_conventions() -> None:
    assert cube_statistics(0, SCALAR) == BOSON
    assert cube_statistics(0b11, SCALAR) == BOSON
    assert cube_statistics(0b1, SCALAR) == FERMION
    assert cube_statistics(0, SPINOR) == FERMION
    assert cube_statistics(0b1, SPINOR) == BOSON


def test_cube_edges_flip_one_bit() -> None:
    t = cube_topology(3)
    for u, v, c in t.edges:
        assert u ^ v == 1 << (c - 1)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
@pytest.mark.parametrize("kind", [SCALAR, SPINOR])
def test_standard_parity_is_odd_on_squares(n: int, kind: str) -> None:
    t = cube_topology(n, kind)
    parity = standard_parity(t)
    assert parity_violations(t, tuple(parity[e] for e in t.edges)) == []


def test_standard_parity_closed_form() -> None:
    t = cube_topology(3)
    parity = standard_parity(t)
    for u, v, c in t.edges:
        below = (1 << (c - 1)) - 1
        assert parity[(u, v, c)] == bin(u & below).count("1") % 2


def test_standard_parity_rejects_non_cube() -> None:
    q = antipodal_quotient()
    with pytest.raises(AdinkraError):
        standard_parity(q)


def test_cube_signature_recognizes_cubes() -> None:
    for n in (1, 2, 3, 4):
        for kind in (SCALAR, SPINOR):
            assert cube_signature(cube_topology(n, kind)) == (n, kind)


def test_cube_signature_rejects_quotient_and_relabelings() -> None:
    assert cube_signature(antipodal_quotient()) is None

    from adinkra.core import Topology

    hexagon = Topology.build(
        2,
        {i: (BOSON if i % 2 == 0 else FERMION) for i in range(6)},
        [(0, 1, 1), (2, 3, 1), (4, 5, 1), (1, 2, 2), (3, 4, 2), (5, 0, 2)],
    )
    assert cube_signature(hexagon) is None


def test_quotient_shape() -> None:
    q = antipodal_quotient()
    assert len(q.vertex_ids) == 8
    assert len(q.edges) == 16
    assert q.n_colors == 4
    assert len(q.components()) == 1
    # identified pairs keep the scalar statistics of their representatives
    for v in q.vertex_ids:
        assert q.statistics_of(v) == cube_statistics(v, SCALAR)
    # no two edges join the same vertex pair
    pairs = [(u, v) for u, v, _ in q.edges]
    assert len(pairs) == len(set(pairs))


def test_quotient_identifies_antipodes() -> None:
    q = antipodal_quotient()
    cube = cube_topology(4)
    for u, v, c in cube.edges:
        ru, rv = min(u, u ^ 15), min(v, v ^ 15)
        assert q.neighbor(ru, c) == rv


def test_standard_parity_does_not_descend_to_quotient() -> None:
    # each quotient edge has two preimages in the four-color cube; for some
    # edge they carry opposite standard parities, so no pushforward exists
    cube = cube_topology(4)
    parity = standard_parity(cube)
    mismatched = 0
    for u, v, c in cube.edges:
        mu, mv = u ^ 15, v ^ 15
        mate = (min(mu, mv), max(mu, mv), c)
        if parity[(u, v, c)] != parity[mate]:
            mismatched += 1
    assert mismatched > 0
