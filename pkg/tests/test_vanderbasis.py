import numpy as np
import pytest

from admesh.chebmesh import chebyshev_points, mesh_for
from admesh.errors import GeometryError, RankDeficiencyError
from admesh.factorkit import qr_householder
from admesh.geometry import GALLERY_NAMES, gallery
from admesh.vanderbasis import BasisSpec, basis_spec, orthonormalize, vandermonde


def test_basis_spec_examples():
    s = basis_spec([0, 2], 1)
    assert s.z_b == 1 and s.delta == 1
    s = basis_spec(np.exp(0.5j * np.pi * np.arange(4)), 3)
    assert abs(s.z_b) < 1e-16 and s.delta == pytest.approx(1, abs=1e-15)
    s = basis_spec([0, 1, 1j], 2)
    zb = (1 + 1j) / 3
    assert s.z_b == pytest.approx(zb, abs=1e-16)
    assert s.delta == pytest.approx(max(abs(zb), abs(1 - zb), abs(1j - zb)), abs=1e-16)


def test_basis_spec_degenerate():
    with pytest.raises(GeometryError):
        basis_spec([1 + 1j, 1 + 1j], 1)
    assert basis_spec([2.0], 0).delta == 1.0


def test_vandermonde_examples():
    spec = BasisSpec(0.5j, 2.0, 4)
    assert np.array_equal(vandermonde([0.5j], spec), [[1, 0, 0, 0, 0]])
    row = vandermonde([0.5j + 2 * np.exp(0.3j)], spec)
    assert np.allclose(np.abs(row), 1, atol=1e-15)
    V = vandermonde([-1, 0, 1], BasisSpec(0, 1, 2))
    assert np.array_equal(V, [[1, -1, 1], [1, 0, 0], [1, 1, 1]])


@pytest.mark.parametrize("method", ["arnoldi", "householder"])
def test_two_term_gram_schmidt(method):
    x = chebyshev_points(3)                         # n + 2 points for n = 1
    B = orthonormalize(x, 1, method=method)
    P = B.evaluate(x)
    assert np.allclose(P[:, 0], 1 / np.sqrt(3), atol=1e-15)
    d = x - x.mean()
    assert np.allclose(P[:, 1], d / np.linalg.norm(d), atol=1e-14)
    assert B.gram_error() <= 1e-14


@pytest.mark.parametrize("method", ["arnoldi", "householder"])
def test_cardioid_orthonormal(method):
    mesh = mesh_for(gallery("cardioid"), 30, 4)
    assert orthonormalize(mesh.points, 30, method=method).gram_error() <= 1e-10


def test_circle_monomials_already_orthogonal():
    M = 64
    z = np.exp(2j * np.pi * np.arange(M) / M)
    _, R = qr_householder(vandermonde(z, BasisSpec(0, 1, 10)))
    assert np.allclose(R, np.sqrt(M) * np.eye(11), atol=1e-12)


@pytest.mark.parametrize("name", GALLERY_NAMES)
def test_condition_control(name):
    b = gallery(name)
    for n in (10, 30, 50):
        mesh = mesh_for(b, n, 4)
        W = orthonormalize(mesh.points, n).evaluate(mesh.points)
        assert np.linalg.cond(W) <= 1e3
        assert np.abs(W.conj().T @ W - np.eye(n + 1)).max() <= 1e-10


def test_raw_monomials_diagnostic():
    # recorded, not a requirement: the raw basis degrades badly on the torpedo
    mesh = mesh_for(gallery("torpedo"), 40, 4)
    V = vandermonde(mesh.points, basis_spec(mesh.points, 40))
    assert np.linalg.cond(V) > 1e10


@pytest.mark.parametrize("name", ["m_polygon", "lune", "sun"])
def test_routes_agree_at_fresh_points(name, rng):
    b = gallery(name)
    n = 12
    mesh = mesh_for(b, n, 4)
    A = orthonormalize(mesh.points, n)
    H = orthonormalize(mesh.points, n, method="householder")
    fresh = mesh_for(b, n, 7).points
    assert np.abs(A.evaluate(fresh) - H.evaluate(fresh)).max() <= 1e-9
    # [pi] = [q] R^-1 for both representations
    V = vandermonde(fresh, A.spec)
    assert np.abs(V @ A.r_inv - A.evaluate(fresh)).max() <= 1e-9
    assert np.allclose(np.tril(A.r_inv, -1), 0)


def test_weighted_orthonormality(rng):
    z = mesh_for(gallery("sun"), 6, 3).points
    w = rng.uniform(0.1, 2.0, len(z))
    B = orthonormalize(z, 6, weights=w)
    assert B.gram_error() <= 1e-13


def test_rank_deficiency_names_degree():
    z = np.array([0, 1, 1j, 0, 1, 1j])
    with pytest.raises(RankDeficiencyError) as info:
        orthonormalize(z, 4)
    assert info.value.degree == 3
    with pytest.raises(RankDeficiencyError) as info:
        orthonormalize(z, 4, method="householder")
    assert info.value.degree == 3
    with pytest.raises(RankDeficiencyError):
        orthonormalize([0, 1], 2)
