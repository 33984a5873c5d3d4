import math

import numpy as np
import pytest

import ginlab as g


def two_atom(tau=2.0):
    return g.validate_spec(g.DeformationSpec(tau, [g.Atom(1, 0.5), g.Atom(-1, 0.5)], R0=4))


def test_version():
    assert g.__version__ == "0.1.0"


def test_bulk_parameters_two_atom():
    bp = g.bulk_parameters(two_atom(), 0j)
    assert bp.t0 == pytest.approx(1.0, abs=1e-14)
    assert bp.sigma_sq == pytest.approx(0.25, abs=1e-14)
    assert bp.predicted_density == pytest.approx(0.25 / math.pi, abs=1e-15)
    assert g.rescale_factor(bp, 64) == pytest.approx(4.0)


def test_classification_and_errors():
    s = g.validate_spec(g.DeformationSpec(1.0, [g.Atom(0, 1.0)], R0=8))
    assert g.classify_point(s, 0.5).tag == g.PointTag.Bulk
    assert g.classify_point(s, 1.0).tag == g.PointTag.Edge
    assert g.classify_point(s, 2.0).tag == g.PointTag.Exterior
    with pytest.raises(g.GinlabError):
        g.solve_t0(s, 2.0)
    with pytest.raises(g.GinlabError):
        g.validate_spec(g.DeformationSpec(1.0, [g.Atom(0, 0.6), g.Atom(1, 0.6)]))


def test_boundary_circle():
    s = g.validate_spec(g.DeformationSpec(4.0, [g.Atom(0, 1.0)], R0=8))
    curve = g.trace_boundary(s, (-4, 4, -4, 4), 0.04)
    assert len(curve.polylines) == 1
    radii = np.abs(np.array(curve.polylines[0].points))
    assert np.max(np.abs(radii - 2.0)) < 1e-6


def test_eigenvalues_and_sampling():
    sp = g.eigenvalues(np.diag([1, 2j, -3]).astype(complex))
    assert np.allclose(sp.eigenvalues, [-3, 2j, 1], atol=1e-14)
    s = two_atom()
    a = g.sample_spectrum(s, 0j, 64, 9, 2)
    b = g.sample_spectrum(s, 0j, 64, 9, 2)
    assert a.eigenvalues == b.eigenvalues
    X = g.sample_matrix(s, 0j, 64, 9, 2)
    assert X.shape == (64, 64)
    assert abs(np.trace(X) - sum(a.eigenvalues)) < 1e-8 * 64 * (1 + abs(np.trace(X)))
    U = g.haar_unitary(3, 4)
    assert np.max(np.abs(U.conj().T @ U - np.eye(3))) < 1e-12


def test_kernel():
    assert abs(g.ginibre_kernel(0, 1)) == pytest.approx(math.exp(-0.5) / math.pi, rel=1e-14)
    assert g.npoint_correlation([0.5 + 0.5j, 0.5 + 0.5j]) == 0.0
    assert g.predicted_pair_correlation(1.0) == pytest.approx(1 - math.exp(-1), rel=1e-15)


def test_local_statistics_pipeline():
    s = two_atom()
    bp = g.bulk_parameters(s, 0j)
    samples = g.run_campaign(s, 0j, 128, 12, 3, 1)
    stats = g.collect_local(samples, bp, 5.0)
    assert stats.n_trials == 12
    assert all(abs(z) <= 5.0 for trial in stats.rescaled_points for z in trial)
    d = g.density_estimate(stats)
    assert 0.2 < d < 0.45


def test_checks():
    s = g.validate_spec(g.DeformationSpec(1.0, [g.Atom(0, 1.0)], R0=8))
    assert g.check_lemma_maximum_y(s, 0.6).passed
    assert g.check_lemma_jn(s, 0.6).passed
    assert g.check_hciz(2, [0, 1], [0, 1], 0.0, 100, 1) < 1e-14
