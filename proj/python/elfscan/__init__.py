"""ELF magnetic-field survey analysis.

Thin python layer over the C++ core: RMS features, K-Medians clustering with
hazard labeling, and closed-form Biot-Savart field evaluation.
"""

from ._core import (
    ClusteringResult,
    ElfscanError,
    HazardLabel,
    __version__,
    brute_force_optimal,
    classify_point,
    label_clusters,
    limit_for,
    model_field,
    rms,
    run_kmeans,
    run_kmedians,
    segment_field,
)

__all__ = [
    "ClusteringResult",
    "ElfscanError",
    "HazardLabel",
    "__version__",
    "brute_force_optimal",
    "classify_point",
    "label_clusters",
    "limit_for",
    "model_field",
    "rms",
    "run_kmeans",
    "run_kmedians",
    "segment_field",
]
