"""Leray cosheaves: preimages, reconstruction, and sublevel recovery."""

import numpy as np
import pytest

import tda
from conftest import (
    admissible_random_cover,
    octagon_circle,
    random_mapped_complex,
)
from tda import cosheaf as C
from tda import fields
from tda import leray as L
from tda import persistence as P
from tda.complexes import IntervalCover
from tda.errors import CoverGranularityError


def octagon_mapped():
    K, values = octagon_circle()
    return L.MappedComplex(K, values)


OCTAGON_COVER = IntervalCover([(-1.5, -0.3), (-0.8, 0.8), (0.3, 1.5)])


def test_preimage_whole_complex():
    M = octagon_mapped()
    assert L.preimage_subcomplex(M, (-2.0, 2.0)) == M.complex


def test_preimage_below_min_is_empty():
    M = octagon_mapped()
    assert len(L.preimage_subcomplex(M, (-9.0, -5.0))) == 0


def test_preimage_lower_half_is_an_arc():
    M = octagon_mapped()
    arc = L.preimage_subcomplex(M, (-1.5, 0.1))
    assert tda.homology(arc, 0).dimension == 1
    assert tda.homology(arc, 1).dimension == 0
    assert len(arc.p_simplices(0)) == 5
    assert len(arc.p_simplices(1)) == 4


def test_granularity_violation_names_a_simplex():
    M = octagon_mapped()
    with pytest.raises(CoverGranularityError) as err:
        L.build_leray_cosheaf(M, IntervalCover([(-1.5, -0.5), (-0.45, 1.5)]), 0)
    assert "(" in str(err.value)  # message carries the offending simplex


def test_octagon_leray_cosheaf_stalks():
    M = octagon_mapped()
    built = L.build_leray_cosheaf(M, OCTAGON_COVER, 0)
    stalks = built.cosheaf.stalks
    assert [stalks[(i,)] for i in range(3)] == [1, 2, 1]
    assert [stalks[(0, 1)], stalks[(1, 2)]] == [2, 2]
    assert C.validate(built.cosheaf, 2) is None


def test_constant_map_single_interval():
    K = tda.build_complex([[0, 1], [1, 2], [0, 2]])  # hollow triangle
    M = L.MappedComplex(K, {v: 5.0 for v in K.vertices()})
    cover = IntervalCover([(4.0, 6.0)])
    built = L.build_leray_cosheaf(M, cover, 1)
    assert built.cosheaf.stalks == {(0,): 1}
    for i in (0, 1, 2):
        assert L.global_homology(M, cover, i) == tda.homology(K, i).dimension


def test_octagon_global_homology_is_a_circle():
    M = octagon_mapped()
    assert L.global_homology(M, OCTAGON_COVER, 0) == 1
    assert L.global_homology(M, OCTAGON_COVER, 1) == 1
    assert L.global_homology(M, OCTAGON_COVER, 2) == 0


def test_two_octagons_global_homology():
    K, values = octagon_circle()
    shifted = [[i + 10, (i + 1) % 8 + 10] for i in range(8)]
    K2 = tda.build_complex([list(s) for s in K.simplices] + shifted)
    values2 = dict(values)
    values2.update({i + 10: values[i] for i in range(8)})
    M = L.MappedComplex(K2, values2)
    assert L.global_homology(M, OCTAGON_COVER, 0) == 2
    assert L.global_homology(M, OCTAGON_COVER, 1) == 2


def test_cover_refinement_keeps_global_homology():
    M = octagon_mapped()
    refined = IntervalCover([(-1.5, -0.3), (-0.8, 0.25), (-0.25, 0.8), (0.3, 1.5)])
    for i in (0, 1):
        assert L.global_homology(M, refined, i) == L.global_homology(M, OCTAGON_COVER, i)


def test_reconstruction_on_random_mapped_complexes():
    rng = np.random.default_rng(34)
    for _ in range(10):
        M = random_mapped_complex(rng)
        cover = admissible_random_cover(rng, M)
        for i in (0, 1, 2):
            assert L.global_homology(M, cover, i) == tda.homology(M.complex, i).dimension


def test_leray_cosheaf_validates_on_random_inputs():
    rng = np.random.default_rng(35)
    for _ in range(5):
        M = random_mapped_complex(rng)
        cover = admissible_random_cover(rng, M)
        built = L.build_leray_cosheaf(M, cover, int(rng.integers(0, 2)))
        assert C.validate(built.cosheaf, 2) is None


def test_sublevel_constant_map_is_constant_module():
    K = tda.build_complex([[0, 1], [1, 2], [0, 2]])
    M = L.MappedComplex(K, {v: 5.0 for v in K.vertices()})
    cover = IntervalCover([(4.0, 6.0)])
    for degree in (0, 1):
        module = L.sublevel_module(M, cover, degree, [5.5, 6.5, 7.5])
        expected = tda.homology(K, degree).dimension
        assert module.dims == [expected] * 3
        for Mx in module.maps:
            assert np.array_equal(Mx, np.eye(expected, dtype=np.int64))


def test_sublevel_matches_direct_lower_star_on_octagon():
    M = octagon_mapped()
    thresholds = [-0.9, -0.2, 0.5, 1.2]
    fc = P.lower_star_filtration(M.complex, M.values)
    bc = P.compute_barcode(fc)
    for degree in (0, 1):
        module = L.sublevel_module(M, OCTAGON_COVER, degree, thresholds)
        assert module.dims == [bc.alive_at(t, degree) for t in thresholds]
        for j, Mx in enumerate(module.maps):
            assert fields.rank(Mx, 2) == bc.rank(thresholds[j], thresholds[j + 1], degree)


def test_sublevel_rejects_bad_thresholds():
    M = octagon_mapped()
    with pytest.raises(ValueError):
        L.sublevel_module(M, OCTAGON_COVER, 0, [0.5, 0.5])
    with pytest.raises(ValueError):
        L.sublevel_module(M, OCTAGON_COVER, 0, [])
