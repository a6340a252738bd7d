"""Driving-style classification from GPS logs via a jerk-based feature."""

import json as _json

from ._core import (
    Dendrogram,
    DrivestyleError,
    FeatureRecord,
    GpsLog,
    MovementPattern,
    agglomerate,
    cut,
    feature_table,
    format_tdrive_line,
    generate_benchmark,
    haversine_m,
    jerk_stats,
    kinematics,
    omega,
    parse_tdrive_line,
    patterns_from_json,
    patterns_to_json,
    preprocess,
    select_k,
    silhouette,
    ward_pairwise,
    ward_standard,
    wcss,
    wcss_curve,
)
from ._core import cluster_report_json as _cluster_report_json


def cluster_report(ids, values, linkage="pairwise", theta=0.05, k_max=10, k=None):
    """Cluster scalar feature values; returns the clusters document as a dict."""
    return _json.loads(_cluster_report_json(list(ids), list(values), linkage, theta, k_max, k))


__all__ = [
    "Dendrogram",
    "DrivestyleError",
    "FeatureRecord",
    "GpsLog",
    "MovementPattern",
    "agglomerate",
    "cluster_report",
    "cut",
    "feature_table",
    "format_tdrive_line",
    "generate_benchmark",
    "haversine_m",
    "jerk_stats",
    "kinematics",
    "omega",
    "parse_tdrive_line",
    "patterns_from_json",
    "patterns_to_json",
    "preprocess",
    "select_k",
    "silhouette",
    "ward_pairwise",
    "ward_standard",
    "wcss",
    "wcss_curve",
]
