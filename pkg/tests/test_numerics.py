import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from rrdps.attack import SpectralParams, ab_eigenbasis, rho_ab, spectrum_weights
from rrdps.errors import DimensionError, DomainError, SizeError, ValidationError
from rrdps.numerics import (
    Tolerances, binary_entropy, entropy_of_spectrum, eig_hermitian, kron, partial_trace, projector,
    trace_distance, trace_norm, validate_density, vn_entropy)
from rrdps.protocol import epr_state

from conftest import random_density, random_hermitian

seeds = st.integers(0, 2**32 - 1)


def test_kron_identities():
    assert np.allclose(kron(np.eye(2), np.eye(3)), np.eye(6))
    a = np.arange(4.0).reshape(2, 2)
    assert np.allclose(kron(a, [[2.5]]), 2.5 * a)
    p = kron(projector([1, 0]), projector([0, 1]))
    expected = np.zeros((4, 4))
    expected[1, 1] = 1
    assert np.allclose(p, expected)


def test_kron_index_convention(rng):
    a, b = random_hermitian(2, rng), random_hermitian(3, rng)
    k = kron(a, b)
    assert k[1 * 3 + 2, 0 * 3 + 1] == pytest.approx(a[1, 0] * b[2, 1])


def test_kron_size_cap():
    with pytest.raises(SizeError):
        kron(np.eye(300), np.eye(300))
    with pytest.raises(SizeError):
        kron(np.eye(4), np.eye(4), max_dim=8)


def test_partial_trace_examples(rng):
    rho, sigma = random_density(3, rng), random_density(2, rng)
    assert np.allclose(partial_trace(np.kron(rho, sigma), (3, 2), keep="A"), rho, atol=1e-12)
    assert np.allclose(partial_trace(np.kron(rho, sigma), (3, 2), keep="B"), sigma, atol=1e-12)
    epr = projector(epr_state(3))
    assert np.allclose(partial_trace(epr, (3, 3), keep="A"), np.eye(3) / 3)
    assert np.allclose(partial_trace(np.eye(6) / 6, (2, 3), keep="A"), np.eye(2) / 2)


def test_partial_trace_errors():
    with pytest.raises(DimensionError):
        partial_trace(np.eye(6), (4, 2))
    with pytest.raises(ValueError):
        partial_trace(np.eye(4), (2, 2), keep="C")


@given(seeds, st.integers(1, 4), st.integers(1, 4))
def test_partial_trace_of_product_is_exact(seed, da, db):
    rng = np.random.default_rng(seed)
    rho, sigma = random_density(da, rng), random_density(db, rng)
    out = partial_trace(kron(rho, sigma), (da, db), keep="A")
    assert np.abs(out - rho).max() <= 1e-12


@given(seeds, st.integers(1, 16))
def test_eig_reconstructs_matrix(seed, dim):
    rng = np.random.default_rng(seed)
    m = random_hermitian(dim, rng)
    vals, vecs = eig_hermitian(m)
    assert np.all(np.diff(vals) >= -1e-12)
    assert np.abs(vecs @ np.diag(vals) @ vecs.conj().T - m).max() <= 1e-10
    assert np.abs(vecs.conj().T @ vecs - np.eye(dim)).max() <= 1e-9


def test_eig_examples():
    assert np.allclose(eig_hermitian(np.eye(4)).eigenvalues, 1)
    assert np.allclose(eig_hermitian(np.diag([0.8, 0.2])).eigenvalues, [0.2, 0.8])
    with pytest.raises(ValidationError):
        eig_hermitian([[0, 1], [0, 0]])


def test_eig_deterministic_under_degeneracy():
    s = SpectralParams(4, 0.2, 0.01, 0.02)
    first = eig_hermitian(rho_ab(s))
    second = eig_hermitian(rho_ab(s).copy())
    assert np.array_equal(first.eigenvalues, second.eigenvalues)
    assert np.array_equal(first.eigenvectors, second.eigenvectors)


def test_eig_matches_closed_form_spectrum():
    # lam+ at the below-saturation corner
    d, beta = 3, 0.1
    s = SpectralParams(d, beta, 4 * beta / (d * (d - 2)), 0.0)
    vals = eig_hermitian(rho_ab(s)).eigenvalues
    assert np.abs(vals - np.sort(spectrum_weights(s))).max() <= 1e-10
    basis, _ = ab_eigenbasis(d)
    rho = rho_ab(s)
    lam = spectrum_weights(s)
    assert np.abs(rho @ basis - basis * lam[None, :]).max() <= 1e-10


def test_trace_norm_examples(rng):
    assert trace_norm(np.zeros((3, 3))) == 0
    assert trace_norm(random_density(5, rng)) == pytest.approx(1, abs=1e-12)
    assert trace_norm(np.diag([1.0, -2.0])) == pytest.approx(3)
    with pytest.raises(ValidationError):
        trace_norm([[0, 1], [0, 0]])


def test_trace_distance_examples(rng):
    rho = random_density(4, rng)
    assert trace_distance(rho, rho) == pytest.approx(0, abs=1e-14)
    assert trace_distance(projector([1, 0]), projector([0, 1])) == pytest.approx(1)
    with pytest.raises(DimensionError):
        trace_distance(np.eye(2) / 2, np.eye(3) / 3)


@given(seeds, st.integers(2, 6))
def test_trace_distance_metric(seed, dim):
    rng = np.random.default_rng(seed)
    a, b, c = (random_density(dim, rng) for _ in range(3))
    ab, bc, ac = trace_distance(a, b), trace_distance(b, c), trace_distance(a, c)
    assert ab == pytest.approx(trace_distance(b, a), abs=1e-12)
    assert ac <= ab + bc + 1e-12
    assert 0 <= ab <= 1 + 1e-12


def test_vn_entropy_examples():
    assert vn_entropy(projector([1, 1j]) / 2) == pytest.approx(0, abs=1e-12)
    for d in (2, 3, 7):
        assert vn_entropy(np.eye(d) / d) == pytest.approx(np.log2(d))


def test_vn_entropy_clamping():
    assert vn_entropy(np.diag([1 + 5e-10, -5e-10])) == pytest.approx(0, abs=1e-8)
    with pytest.raises(ValidationError):
        vn_entropy(np.diag([1.1, -0.1]))
    loose = Tolerances(eig=0.2)
    clamped = vn_entropy(np.diag([0.6, 0.5, -0.1]), tol=loose)
    assert clamped == pytest.approx(entropy_of_spectrum([0.6, 0.5]))


@given(seeds, st.integers(2, 6))
def test_vn_entropy_concave(seed, dim):
    rng = np.random.default_rng(seed)
    rho, sigma = random_density(dim, rng, rank=2), random_density(dim, rng, rank=1)
    mix = vn_entropy((rho + sigma) / 2)
    assert mix >= (vn_entropy(rho) + vn_entropy(sigma)) / 2 - 1e-10


def test_binary_entropy_values():
    assert binary_entropy(0.5) == 1.0
    assert binary_entropy(0) == 0.0 and binary_entropy(1) == 0.0
    # high-precision reference value
    assert binary_entropy(0.125) == pytest.approx(0.5435644431995964, abs=1e-15)
    arr = binary_entropy(np.array([0.0, 0.25, 0.75]))
    assert arr.shape == (3,) and arr[1] == pytest.approx(arr[2])


def test_binary_entropy_series_cross_check():
    # h(1/2 - x) = 1 - (1/ln 2) sum_k (2x)^{2k} / (2k(2k-1))
    x = 0.375
    k = np.arange(1, 400)
    series = 1 - ((2 * x) ** (2 * k) / (2 * k * (2 * k - 1))).sum() / np.log(2)
    assert binary_entropy(0.5 - x) == pytest.approx(series, abs=1e-12)


def test_binary_entropy_domain():
    for bad in (-0.1, 1.5, float("nan")):
        with pytest.raises(DomainError):
            binary_entropy(bad)


def test_validate_density(rng):
    rho = random_density(3, rng)
    assert validate_density(rho) is not None
    with pytest.raises(ValidationError):
        validate_density(2 * rho)
    with pytest.raises(ValidationError):
        validate_density(np.diag([1.5, -0.5]))
    with pytest.raises(DimensionError):
        validate_density(np.ones((2, 3)))
