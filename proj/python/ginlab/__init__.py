"""Deformed complex Ginibre ensemble: bulk geometry, sampling and local statistics."""

from ._core import (  # noqa: F401
    Atom,
    BoundaryCurve,
    BulkParameters,
    ComparisonReport,
    DeformationSpec,
    Ecdf,
    GinlabError,
    Histogram,
    LocalStatistics,
    MaxCheckResult,
    PointClass,
    PointTag,
    Polyline,
    SpectrumSample,
    ValidatedSpec,
    bulk_parameters,
    build_mean_matrix,
    check_hciz,
    check_lemma_jn,
    check_lemma_maximum_y,
    classify_point,
    collect_local,
    compare_with_theory,
    density_estimate,
    eigenvalues,
    extract_local,
    ginibre_kernel,
    haar_unitary,
    ks_distance,
    make_ecdf,
    nn_spacing_ecdf,
    npoint_correlation,
    p00,
    pair_correlation_estimate,
    predicted_pair_correlation,
    rescale_factor,
    run_campaign,
    sample_matrix,
    sample_spectrum,
    solve_t0,
    trace_boundary,
    validate_spec,
    __version__,
)
