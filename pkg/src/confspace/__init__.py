"""Minimal sampling and performance prediction for configurable software.

Pipeline: load a measured table (:mod:`.dataset`), bisect it spectrally
(:mod:`.spectral`), pick rows to measure (:mod:`.sampling`), fit a
regression tree (:mod:`.cart`), score it (:mod:`.rig`, :mod:`.stats`),
search with it as a surrogate (:mod:`.optimize`) and inspect the space's
correlation dimension (:mod:`.intrinsic`).
"""

__version__ = "0.1.0"

from ._kernels import BACKEND
from .cart import CartParams, RegressionTree, fit, predict
from .dataset import ConfigDataset, DatasetError, MeasuredConfig, SplitPair, load_csv, shuffle_split
from .intrinsic import DimensionEstimate, correlation_sum, intrinsic_dimension
from .optimize import ClauseValidity, DeParams, OptimizationResult, de_optimize
from .rig import RigReport, run_rig
from .sampling import (
    Policy,
    SamplePlan,
    sample_progressive_2n,
    sample_random_k,
    sample_s1,
    sample_s2,
    sample_s3,
)
from .spectral import ClusterNode, ClusterTree, PoleLine, SpectralParams, distance, find_poles, project, where_cluster
from .stats import a12, bootstrap_significant, mre, scott_knott

__all__ = [
    "BACKEND",
    "CartParams",
    "ClauseValidity",
    "ClusterNode",
    "ClusterTree",
    "ConfigDataset",
    "DatasetError",
    "DeParams",
    "DimensionEstimate",
    "MeasuredConfig",
    "OptimizationResult",
    "PoleLine",
    "Policy",
    "RegressionTree",
    "RigReport",
    "SamplePlan",
    "SpectralParams",
    "SplitPair",
    "a12",
    "bootstrap_significant",
    "correlation_sum",
    "de_optimize",
    "distance",
    "find_poles",
    "fit",
    "intrinsic_dimension",
    "load_csv",
    "mre",
    "predict",
    "project",
    "run_rig",
    "sample_progressive_2n",
    "sample_random_k",
    "sample_s1",
    "sample_s2",
    "sample_s3",
    "scott_knott",
    "shuffle_split",
    "where_cluster",
]
