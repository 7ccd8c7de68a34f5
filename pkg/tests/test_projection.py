import numpy as np
import pytest

from admesh.chebmesh import EXTREMA, MeshParams, arc_mesh, chebyshev_points, mesh_for, norming_constant
from admesh.errors import SingularMatrixError, UsageError
from admesh.extremal import approximate_fekete, discrete_leja, pseudo_leja
from admesh.geometry import gallery, segment
from admesh.projection import (
    INTERPOLATION, LEAST_SQUARES, certified_interval, lebesgue_constant, lebesgue_function,
    lebesgue_matrix_norm, make_interpolant, make_least_squares,
)


def test_interpolant_reproduces_quadratic():
    z = np.array([-1, 0.5j, 2])
    op = make_interpolant(z, z**2)
    w = np.array([0.3 + 0.1j, -2, 5j])
    assert np.allclose(op(w), w**2, atol=1e-12)
    assert op(0.25) == pytest.approx(0.0625, abs=1e-13)


def test_cardinal_functions(rng):
    z = rng.normal(size=7) + 1j * rng.normal(size=7)
    op = make_interpolant(z)
    assert np.allclose(op.cardinal(z), np.eye(7), atol=1e-10)
    w = rng.normal(size=20) + 1j * rng.normal(size=20)
    assert np.allclose(op.cardinal(w).sum(axis=1), 1, atol=1e-10)


def test_runge_afp_beats_equispaced(interval):
    f = lambda x: 1 / (1 + 25 * x**2)
    n = 20
    fine = np.linspace(-1, 1, 4001)
    afp = approximate_fekete(mesh_for(interval, n, 4))
    e_afp = np.abs(make_interpolant(afp, f(afp.nodes))(fine) - f(fine)).max()
    eq = np.linspace(-1, 1, n + 1).astype(complex)
    e_eq = np.abs(make_interpolant(eq, f(eq))(fine) - f(fine)).max()
    assert e_afp < 0.2 and e_eq > 10 * e_afp


def test_least_squares_square_case_is_interpolation(rng):
    z = np.exp(2j * np.pi * np.arange(6) / 6)
    f = rng.normal(size=6)
    ls = make_least_squares(z, f, n=5)
    ip = make_interpolant(z, f)
    w = 0.5 * rng.normal(size=10) + 0.5j * rng.normal(size=10)
    assert np.allclose(ls(w), ip(w), atol=1e-11)


def test_least_squares_projection_and_constants():
    mesh = mesh_for(gallery("cardioid"), 6, 4)
    z = mesh.points
    p = (z - 0.2) ** 6 - 3j * z**2 + 1
    assert np.allclose(make_least_squares(mesh, p)(z), p, atol=1e-10)
    assert np.allclose(make_least_squares(mesh, np.full(len(z), 2.5))(z), 2.5, atol=1e-12)


def test_least_squares_residual_orthogonal(rng):
    mesh = mesh_for(gallery("lune"), 5, 4)
    z = mesh.points
    f = np.exp(z) * np.cos(3 * z.imag)
    op = make_least_squares(mesh, f)
    r = f - op(z)
    P = op.basis_values(z)
    assert np.abs(P.conj().T @ r).max() < 1e-10
    # perturbing the coefficients never lowers the residual
    base = np.linalg.norm(r)
    for _ in range(5):
        d = 1e-3 * (rng.normal(size=op.n + 1) + 1j * rng.normal(size=op.n + 1))
        assert np.linalg.norm(f - P @ (op.coefficients + d)) >= base


def test_weighted_least_squares():
    z = np.linspace(-1, 1, 9).astype(complex)
    w = np.linspace(1, 3, 9)
    f = np.abs(z) ** 1.5
    op = make_least_squares(z, f, n=2, weights=w)
    V = np.vander(z, 3, increasing=True)
    c, *_ = np.linalg.lstsq(np.sqrt(w)[:, None] * V, np.sqrt(w) * f, rcond=None)
    assert np.allclose(op(z), V @ c, atol=1e-12)
    with pytest.raises(UsageError):
        make_least_squares(z, f, n=2, weights=-w)


def test_lebesgue_function_two_nodes():
    op = make_interpolant([-1, 1])
    assert lebesgue_function(op, 0.0) == pytest.approx(1.0, abs=1e-14)
    assert lebesgue_function(op, 3.0) == pytest.approx(3.0, abs=1e-13)
    assert lebesgue_function(op, 1j) == pytest.approx(np.sqrt(2), abs=1e-14)


def test_lebesgue_function_at_nodes(rng):
    z = rng.normal(size=6) + 1j * rng.normal(size=6)
    op = make_interpolant(z)
    assert np.all(lebesgue_function(op, z) >= 1 - 1e-10)


def test_single_node_constant(interval):
    mesh = mesh_for(interval, 3, 4)
    op = make_interpolant([0.1 + 0j])
    assert lebesgue_matrix_norm(op, mesh.points) == pytest.approx(1.0, abs=1e-14)


def test_certified_interval():
    lo, hi = certified_interval(2.0, 4)
    assert lo == 2.0 and hi == pytest.approx(2.0 / np.cos(np.pi / 8), rel=1e-15)
    assert certified_interval(1.0, 4)[1] - 1 == pytest.approx(0.0823922, abs=1e-7)
    with pytest.raises(ValueError):
        certified_interval(-1.0, 4)


def test_report_fields(interval):
    mesh = mesh_for(interval, 4, 4)
    rep = lebesgue_constant(make_interpolant(approximate_fekete(mesh)), mesh, "afp")
    assert rep.lower == rep.value and rep.upper == pytest.approx(rep.c * rep.value)
    assert rep.relative_budget == pytest.approx(norming_constant(4) - 1)
    assert rep.n == 4 and rep.kind == INTERPOLATION and rep.eval_points == len(mesh)
    assert rep.formula_gap < 1e-12


def test_label_mismatch(interval, unit_circle):
    op = make_interpolant(approximate_fekete(mesh_for(interval, 3, 4)))
    with pytest.raises(UsageError):
        lebesgue_constant(op, mesh_for(unit_circle, 3, 4))


def test_extrema_interpolation_against_fine_grid(interval):
    for n in (5, 10):
        nodes = chebyshev_points(n + 1, EXTREMA).astype(complex)
        op = make_interpolant(nodes)
        mesh = arc_mesh(segment(-1, 1), MeshParams(n, 4), label="segment")
        rep = lebesgue_constant(op, mesh)
        fine = np.max(lebesgue_function(op, np.linspace(-1, 1, 100_001)))
        assert rep.lower <= fine * (1 + 1e-12)
        assert fine <= rep.upper


@pytest.mark.parametrize("name", ["cardioid", "sun", "torpedo"])
def test_sandwich_with_finer_mesh(name):
    b = gallery(name)
    n = 10
    op = make_interpolant(approximate_fekete(mesh_for(b, n, 4)))
    coarse = lebesgue_constant(op, mesh_for(b, n, 4))
    fine = lebesgue_constant(op, mesh_for(b, n, 16))
    # both enclosures contain the true sup norm, so they must overlap
    assert coarse.lower <= fine.upper * (1 + 1e-12)
    assert fine.lower <= coarse.upper * (1 + 1e-12)


@pytest.mark.parametrize("family", ["afp", "leja", "pleja", "ls"])
def test_formula_equivalence(family):
    b = gallery("curvpolygon")
    n = 15
    mesh = mesh_for(b, n, 4)
    if family == "afp":
        op = make_interpolant(approximate_fekete(mesh))
    elif family == "leja":
        op = make_interpolant(discrete_leja(mesh))
    elif family == "pleja":
        op = make_interpolant(pseudo_leja(b, n))
    else:
        op = make_least_squares(mesh)
    rep = lebesgue_constant(op, mesh)
    assert rep.formula_gap < 1e-10


def test_least_squares_lebesgue_is_bounded():
    mesh = mesh_for(gallery("m_polygon"), 12, 4)
    rep = lebesgue_constant(make_least_squares(mesh), mesh)
    assert rep.kind == LEAST_SQUARES and 1 <= rep.value < 5


def test_non_unisolvent_nodes():
    with pytest.raises(SingularMatrixError):
        make_interpolant([0, 1, 1 + 1e-18])


def test_missing_samples():
    op = make_interpolant([0, 1])
    with pytest.raises(UsageError):
        op(0.5)
    with pytest.raises(UsageError):
        op.with_samples([1, 2, 3])
