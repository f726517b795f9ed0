"""Tube geometry, grounding metrics, fusion, linking, and loss functions."""

from ._core import (
    AttentionRow,
    BBox,
    BoxLosses,
    ClipRange,
    ClipSpan,
    Comparison,
    ContrastiveLosses,
    ContrastiveNormalization,
    DatasetManifest,
    Detection,
    EvalOptions,
    GapPolicy,
    GroundingRecord,
    IoError,
    LinkParams,
    LinkedTube,
    LossWeights,
    ManifestReport,
    MetricReport,
    MissingPolicy,
    MomentMap,
    MomentScores,
    MomentSelection,
    PerVideoMetrics,
    Segment,
    SplitCheck,
    SynthDataset,
    SynthParams,
    TemporalDistributions,
    Tube,
    ValidationError,
    box_area,
    box_giou,
    box_iou,
    box_l1,
    box_losses,
    box_valid,
    candidate_count,
    candidate_index,
    contrastive_losses,
    crop_to_segment,
    decode_start_end,
    enclosing_box,
    enumerate_candidates,
    evaluate_dataset,
    fuse,
    fuse_reverse,
    guided_attention_loss,
    kl_temporal_loss,
    link_detections,
    logistic,
    make_target_distribution,
    maxpool_span,
    mmn_iou_loss,
    mmn_total,
    moment_iou_targets,
    oracle_tiou,
    oracle_viou,
    read_manifest,
    read_records,
    record_from_json_line,
    record_to_json_line,
    segment_frame_count,
    segment_valid,
    select_moment,
    span_to_segment,
    split_into_clips,
    synth_dataset,
    tiou,
    tube_ok,
    tube_score,
    tube_violations,
    tubedetr_total,
    validate_manifest,
    viou,
    viou_at_r,
    write_records,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
