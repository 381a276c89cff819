"""System and generatrix construction, validation, and similarity recovery."""

import math

import numpy as np
import pytest

from fractspec import (
    build_generatrix,
    build_system,
    overlap_heuristic,
    system_from_generatrix,
    with_weights,
)

KOCH = [(0, 0), (1 / 3, 0), (0.5, math.sqrt(3) / 6), (2 / 3, 0), (1, 0)]


def test_build_system_defaults_to_uniform_weights():
    system = build_system([0.25, 0.25, 0.25, 0.25, 0.5])
    assert system.n == 5
    assert system.weights == (0.2,) * 5
    assert system.uniform_weights


def test_build_system_properties():
    system = build_system([1 / 7, 1 / 7, 1 / 7, 2 / 7, 4 / 7])
    assert system.a_min == 1 / 7
    assert system.a_max == 4 / 7
    assert system.total_length == pytest.approx(9 / 7, rel=1e-15)
    assert system.contractors[system.argmin()] == system.a_min
    assert system.contractors[system.argmax()] == system.a_max


def test_build_system_rejects_bad_inputs():
    with pytest.raises(ValueError):
        build_system([0.5])  # N < 2
    with pytest.raises(ValueError):
        build_system([0.5, 1.0])  # contractor not < 1
    with pytest.raises(ValueError):
        build_system([0.5, -0.2])
    with pytest.raises(ValueError):
        build_system([0.5, 0.5], [0.7, 0.2])  # weights do not sum to 1
    with pytest.raises(ValueError):
        build_system([0.5, 0.5], [0.5, 0.5, 0.0])  # length mismatch


def test_with_weights_replaces_weights():
    system = build_system([0.4, 0.3])
    reweighted = with_weights(system, [0.9, 0.1])
    assert reweighted.contractors == system.contractors
    assert reweighted.weights == (0.9, 0.1)


def test_build_generatrix_normalizes_endpoints():
    # Same chain rotated, scaled, and shifted must normalize identically.
    theta = 0.7
    rot = np.array([[math.cos(theta), -math.sin(theta)],
                    [math.sin(theta), math.cos(theta)]])
    moved = (3.0 * np.asarray(KOCH) @ rot.T) + np.array([2.0, -1.0])
    g1 = build_generatrix(KOCH)
    g2 = build_generatrix(moved)
    assert np.allclose(g1.vertices, g2.vertices, atol=1e-12)
    assert np.allclose(g1.vertices[0], [0.0, 0.0])
    assert np.allclose(g1.vertices[-1], [1.0, 0.0])


def test_generatrix_contractors_are_segment_lengths():
    g = build_generatrix(KOCH)
    system, maps = system_from_generatrix(g)
    assert np.allclose(system.contractors, [1 / 3] * 4, atol=1e-12)
    assert len(maps) == 4


def test_similarity_maps_reproduce_segments():
    g = build_generatrix([(0, 0), (0.25, 0), (0.25, 0.25), (0.5, 0.25), (0.5, 0), (1, 0)])
    _, maps = system_from_generatrix(g)
    for i, sim in enumerate(maps):
        m = sim.matrix()
        a = m @ np.array([0.0, 0.0]) + sim.translation
        b = m @ np.array([1.0, 0.0]) + sim.translation
        assert np.allclose(a, g.vertices[i], atol=1e-12)
        assert np.allclose(b, g.vertices[i + 1], atol=1e-12)


def test_reflected_similarity_flips_orientation():
    g = build_generatrix(KOCH, flips=[False, True, False, False])
    _, maps = system_from_generatrix(g)
    assert not maps[0].reflect and maps[1].reflect
    # A reflected map has determinant -scale^2.
    det = np.linalg.det(maps[1].matrix())
    assert det == pytest.approx(-maps[1].scale ** 2, rel=1e-12)


def test_overlap_heuristic_flags_crossing_generatrix():
    clean = build_generatrix(KOCH)
    assert overlap_heuristic(clean) == []
    crossing = build_generatrix([(0, 0), (0.8, 0.3), (0.2, 0.3), (1, 0)])
    assert overlap_heuristic(crossing)


def test_build_generatrix_rejects_degenerate_chain():
    with pytest.raises(ValueError):
        build_generatrix([(0, 0), (1, 0)])  # single segment, N < 2
    with pytest.raises(ValueError):
        build_generatrix([(0, 0), (0, 0), (1, 0)])  # zero-length segment
