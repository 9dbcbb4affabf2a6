"""Ensemble visual-analytics engine: bundled parallel coordinates and friends."""

from .analytics import (
    ANGLE_MAX,
    VARIANCE_MAX,
    AngleStats,
    AngularStatistics,
    EmptySelectionError,
    NormalizedSlice,
    PatternClassifier,
    RepresentativeLine,
    SliceNormalizer,
    angle_stats,
    classify_pattern,
    normalize_slice,
    representative_line,
    segment_angle,
)
from .binning import BinRule, BrushSet, PairHistogram, bin_count, build_pair_histogram
from .bundling import (
    AdpLayout,
    BundledPath,
    CubicBezier,
    Rect,
    build_path,
    connect_through,
    layout_adp,
    pair_band,
    sample_path,
)
from .dataset import (
    BrickError,
    DatasetError,
    EnsembleDataset,
    GridDims,
    ManifestError,
    MemberMeta,
    TimeSliceView,
    VariableMeta,
    load_dataset,
    write_dataset,
)
from .pipeline import ApcpResult, adp_layouts, bundled_paths, compute_apcp
from .sections import CrossSection, colormap, extract_section
from .synthetic import SyntheticSpec, generate_synthetic

__version__ = "0.1.0"

__all__ = [
    "ANGLE_MAX",
    "VARIANCE_MAX",
    "AdpLayout",
    "AngleStats",
    "AngularStatistics",
    "ApcpResult",
    "BinRule",
    "BrickError",
    "BrushSet",
    "BundledPath",
    "CrossSection",
    "CubicBezier",
    "DatasetError",
    "EmptySelectionError",
    "EnsembleDataset",
    "GridDims",
    "ManifestError",
    "MemberMeta",
    "NormalizedSlice",
    "PairHistogram",
    "PatternClassifier",
    "Rect",
    "RepresentativeLine",
    "SliceNormalizer",
    "SyntheticSpec",
    "TimeSliceView",
    "VariableMeta",
    "adp_layouts",
    "angle_stats",
    "bin_count",
    "build_pair_histogram",
    "build_path",
    "bundled_paths",
    "classify_pattern",
    "colormap",
    "compute_apcp",
    "connect_through",
    "extract_section",
    "generate_synthetic",
    "layout_adp",
    "load_dataset",
    "normalize_slice",
    "pair_band",
    "representative_line",
    "sample_path",
    "segment_angle",
    "write_dataset",
]
