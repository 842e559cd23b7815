"""Boundary matrices, (co)homology, and induced maps."""

import numpy as np
import pytest

import tda
from conftest import hollow_triangle, interval_complex, random_complex, solid_triangle
from tda import fields
from tda.errors import NonSimplicialMapError
from tda.homology import boundary_matrix, chain_map, coboundary_matrix, induced_map


def test_interval_boundary_column():
    K = interval_complex()
    D = boundary_matrix(K, 1, 3)
    # rows ([0], [1]); the edge maps to [1] - [0]
    assert D.shape == (2, 1)
    assert D[:, 0].tolist() == [(-1) % 3, 1]


def test_boundary_p0_has_no_rows():
    K = solid_triangle()
    assert boundary_matrix(K, 0, 2).shape == (0, 3)


def test_boundary_squares_to_zero_random():
    rng = np.random.default_rng(1)
    for field in (2, 3, 5):
        for _ in range(10):
            K = random_complex(rng)
            for p in range(1, K.dimension + 1):
                prod = fields.matmul(
                    boundary_matrix(K, p, field), boundary_matrix(K, p + 1, field), field
                )
                assert not prod.any()


def test_triangle_boundary_columns_over_f2():
    K = hollow_triangle()
    D = boundary_matrix(K, 1, 2)
    assert D.shape == (3, 3)
    assert (D.sum(axis=0) == 2).all()  # each edge has exactly two ones


def test_coboundary_is_transpose():
    K = solid_triangle()
    for p in range(0, 2):
        assert np.array_equal(
            coboundary_matrix(K, p, 3), boundary_matrix(K, p + 1, 3).T
        )


def test_coboundary_squares_to_zero():
    rng = np.random.default_rng(2)
    for _ in range(5):
        K = random_complex(rng)
        for p in range(0, max(K.dimension, 1)):
            prod = fields.matmul(
                coboundary_matrix(K, p + 1, 3), coboundary_matrix(K, p, 3), 3
            )
            assert not prod.any()


def test_empty_complex_matrices_and_homology():
    K = tda.build_complex([])
    assert coboundary_matrix(K, 0, 2).shape == (0, 0)
    assert tda.homology(K, 0).dimension == 0
    assert tda.cohomology(K, 0).dimension == 0


def test_interval_homology():
    K = interval_complex()
    for field in (2, 3):
        assert tda.homology(K, 0, field).dimension == 1
        assert tda.homology(K, 1, field).dimension == 0
        assert tda.homology(K, 2, field).dimension == 0


def test_hollow_triangle_is_a_circle():
    K = hollow_triangle()
    assert tda.homology(K, 0).dimension == 1
    assert tda.homology(K, 1).dimension == 1
    assert tda.cohomology(K, 0).dimension == 1
    assert tda.cohomology(K, 1).dimension == 1


def test_sixty_isolated_vertices():
    K = tda.build_complex([[v] for v in range(60)])
    assert tda.homology(K, 0).dimension == 60


def test_cycle_basis_consists_of_cycles():
    K = hollow_triangle()
    res = tda.homology(K, 1, 5)
    D = boundary_matrix(K, 1, 5)
    for z in res.cycle_basis:
        assert not fields.matmul(D, z[:, None], 5).any()


def test_homology_equals_cohomology_dimension():
    rng = np.random.default_rng(3)
    for field in (2, 3, 5):
        for _ in range(8):
            K = random_complex(rng)
            for p in range(0, K.dimension + 2):
                assert tda.homology(K, p, field).dimension == tda.cohomology(K, p, field).dimension


def test_euler_characteristic_identity():
    rng = np.random.default_rng(4)
    for _ in range(10):
        K = random_complex(rng)
        chi_chain = sum((-1) ** p * len(K.p_simplices(p)) for p in range(K.dimension + 1))
        chi_hom = sum(
            (-1) ** p * tda.homology(K, p, 3).dimension for p in range(K.dimension + 1)
        )
        assert chi_chain == chi_hom


def test_identity_induces_identity():
    K = hollow_triangle()
    f = {v: v for v in K.vertices()}
    for p in (0, 1):
        M = induced_map(f, K, K, p, 5)
        assert np.array_equal(M, np.eye(M.shape[0], dtype=np.int64))


def test_inclusion_into_solid_triangle_kills_h1():
    hollow, solid = hollow_triangle(), solid_triangle()
    f = {0: 0, 1: 1, 2: 2}
    M = induced_map(f, hollow, solid, 1, 2)
    assert M.shape == (0, 1)  # H_1 = k maps to H_1 = 0


def test_rotation_of_hollow_triangle_is_identity_on_h1():
    K = hollow_triangle()
    rotation = {0: 1, 1: 2, 2: 0}
    for field in (2, 7):
        M = induced_map(rotation, K, K, 1, field)
        assert M.shape == (1, 1)
        assert fields.rank(M, field) == 1
        assert M[0, 0] == 1  # the fundamental cycle maps to itself


def test_non_simplicial_map_rejected():
    K = interval_complex()
    L = tda.build_complex([[0], [1]])
    with pytest.raises(NonSimplicialMapError):
        induced_map({0: 0, 1: 1}, K, L, 0, 2)


def test_degenerate_images_vanish_at_chain_level():
    K = interval_complex()
    L = tda.build_complex([[0]])
    M = chain_map({0: 0, 1: 0}, K, L, 1, 3)
    assert M.shape == (0, 1)


def test_chain_map_commutes_with_boundary():
    rng = np.random.default_rng(5)
    for _ in range(10):
        K = random_complex(rng, max_vertices=8)
        image = {v: int(rng.integers(0, 5)) for v in K.vertices()}
        L = tda.build_complex([sorted({image[v] for v in s}) for s in K.simplices] or [[0]])
        for p in range(1, K.dimension + 1):
            lhs = fields.matmul(
                chain_map(image, K, L, p - 1, 3), tda.boundary_matrix(K, p, 3), 3
            )
            rhs = fields.matmul(
                tda.boundary_matrix(L, p, 3), chain_map(image, K, L, p, 3), 3
            )
            assert np.array_equal(lhs, rhs)


def test_functoriality_of_induced_maps():
    rng = np.random.default_rng(6)
    for _ in range(8):
        K = random_complex(rng, max_vertices=7)
        f = {v: int(rng.integers(0, 5)) for v in K.vertices()}
        L = tda.build_complex([sorted({f[v] for v in s}) for s in K.simplices] or [[0]])
        g = {v: int(rng.integers(0, 4)) for v in L.vertices()}
        Mcx = tda.build_complex([sorted({g[v] for v in s}) for s in L.simplices] or [[0]])
        gf = {v: g[f[v]] for v in K.vertices()}
        for p in (0, 1):
            left = induced_map(gf, K, Mcx, p, 2)
            right = fields.matmul(
                induced_map(g, L, Mcx, p, 2), induced_map(f, K, L, p, 2), 2
            )
            assert np.array_equal(left, right)
