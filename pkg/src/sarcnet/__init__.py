"""Sarcasm detection for star-rated review text.

The pipeline: parse reviews and annotator votes, segregate by star
rating, extract a 15-component lexical/punctuation/orthographic feature
vector per review, train a small from-scratch feed-forward network with
curriculum stages, and report per-star precision/recall/F1.

Typical use:

    from sarcnet import FeaturePipeline, MlpConfig, TrainConfig, train

See the README for the command-line interface and file formats.
"""

from .corpus import (
    DatasetSplit,
    LabeledReview,
    ParseError,
    Review,
    SarcasmLabel,
    curriculum_subset,
    label_reviews,
    make_split,
    parse_review_stream,
    read_labels,
    read_reviews,
    resolve_labels,
    segregate_by_stars,
)
from .errors import DataError, SarcnetError, TrainingDivergence
from .features import (
    FeatureCategory,
    FeatureCounts,
    FeatureDescriptor,
    FeatureKind,
    FeaturePipeline,
    catalog,
    extract_counts,
    feature_names,
    normalize,
)
from .lexicons import Lexicons, default_lexicons, load_lexicons
from .network import (
    AdamState,
    ForwardTrace,
    Gradients,
    MlpConfig,
    MlpModel,
    adam_step,
    backward,
    cross_entropy,
    forward,
    init_adam_state,
    init_model,
    load_model,
    predict,
    relu,
    save_model,
    softmax,
)
from .text import PosTag, TaggedToken, Token, TokenKind, pos_tag, tokenize
from .training import (
    ClassMetrics,
    ConfusionMatrix,
    EvalResult,
    HistoryRecord,
    Main,
    NonSarcasticDominated,
    SarcasticOnly,
    StarReport,
    SweepResult,
    TrainConfig,
    derive_seed,
    evaluate,
    f1_score,
    lr_sweep,
    macro_average,
    prf1,
    render_metrics_table,
    render_sweep_table,
    report_to_dict,
    star_report,
    train,
    train_on_vectors,
    write_history,
    write_report,
)

__version__ = "0.1.0"

__all__ = [
    "AdamState",
    "ClassMetrics",
    "ConfusionMatrix",
    "DataError",
    "DatasetSplit",
    "EvalResult",
    "FeatureCategory",
    "FeatureCounts",
    "FeatureDescriptor",
    "FeatureKind",
    "FeaturePipeline",
    "ForwardTrace",
    "Gradients",
    "HistoryRecord",
    "LabeledReview",
    "Lexicons",
    "Main",
    "MlpConfig",
    "MlpModel",
    "NonSarcasticDominated",
    "ParseError",
    "PosTag",
    "Review",
    "SarcasmLabel",
    "SarcasticOnly",
    "SarcnetError",
    "StarReport",
    "SweepResult",
    "TaggedToken",
    "Token",
    "TokenKind",
    "TrainConfig",
    "TrainingDivergence",
    "adam_step",
    "backward",
    "catalog",
    "cross_entropy",
    "curriculum_subset",
    "default_lexicons",
    "derive_seed",
    "evaluate",
    "extract_counts",
    "f1_score",
    "feature_names",
    "forward",
    "init_adam_state",
    "init_model",
    "label_reviews",
    "load_lexicons",
    "load_model",
    "lr_sweep",
    "macro_average",
    "make_split",
    "normalize",
    "parse_review_stream",
    "pos_tag",
    "predict",
    "prf1",
    "read_labels",
    "read_reviews",
    "relu",
    "render_metrics_table",
    "render_sweep_table",
    "report_to_dict",
    "resolve_labels",
    "save_model",
    "segregate_by_stars",
    "softmax",
    "star_report",
    "tokenize",
    "train",
    "train_on_vectors",
    "write_history",
    "write_report",
]
