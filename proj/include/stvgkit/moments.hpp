#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "stvgkit/tubes.hpp"

namespace stvg {

// Triangular map over candidate (start_clip, end_clip) spans with a
// predicted IoU and a contrastive score per candidate, stored in
// lexicographic candidate order: (0,0), (0,1), ..., (0,n-1), (1,1), ...
struct MomentMap {
  int n_clips = 0;
  std::vector<double> predicted_iou;
  std::vector<double> contrastive;
};

// How raw contrastive scores are mapped into (0, 1) before being multiplied
// with the predicted IoU. Raw skips the squashing for inputs that are
// already normalized.
enum class ContrastiveNormalization { Sigmoid, Raw };

const char* contrastive_normalization_name(ContrastiveNormalization n);
ContrastiveNormalization parse_contrastive_normalization(const std::string& name);

// Numerically stable logistic function 1 / (1 + exp(-x)).
double logistic(double x);

// Number of candidate spans over n clips: n * (n + 1) / 2.
std::size_t candidate_count(int n_clips);

// Position of candidate (start_clip, end_clip) in lexicographic order.
std::size_t candidate_index(int n_clips, int start_clip, int end_clip);

// All candidate spans in lexicographic order.
std::vector<ClipSpan> enumerate_candidates(int n_clips);

// Per-candidate training target: the temporal IoU, on inclusive clip
// indices, between each candidate span and gt_span. Aligned with
// enumerate_candidates order. gt_span must lie within [0, n_clips).
std::vector<double> moment_iou_targets(int n_clips, const ClipSpan& gt_span);

// Elementwise max of the per-clip feature vectors over span's clips. All
// feature vectors must have equal length; the span must lie within the
// clip list.
std::vector<double> maxpool_span(const std::vector<std::vector<double>>& clip_features,
                                 const ClipSpan& span);

struct MomentSelection {
  ClipSpan span;
  double combined_score = 0.0;

  bool operator==(const MomentSelection&) const = default;
};

// Candidate maximizing predicted_iou * normalized(contrastive). Ties go to
// the earlier start, then the shorter span. predicted_iou entries must lie
// in [0, 1] and both score lists must cover every candidate.
MomentSelection select_moment(const MomentMap& map,
                              ContrastiveNormalization norm = ContrastiveNormalization::Sigmoid);

// First frame of span's first clip through last frame of its last clip,
// against the ranges from split_into_clips. Throws std::invalid_argument
// when the span leaves the list or touches an empty clip.
Segment span_to_segment(const ClipSpan& span, const std::vector<ClipRange>& clip_ranges);

// Independent per-clip start and end probabilities over the same n clips.
struct TemporalDistributions {
  std::vector<double> p_start;
  std::vector<double> p_end;
};

// Both vectors nonempty, equal length, entries finite and nonnegative,
// each summing to 1 within 1e-9. Throws std::invalid_argument otherwise.
void require_valid_distributions(const TemporalDistributions& d);

// Joint argmax of p_start[s] * p_end[e] over feasible pairs s <= e, ties
// broken toward the earlier start then the shorter span. When every
// feasible product is zero (one-hot mass in infeasible order), falls back
// to the additive score p_start[s] + p_end[e] under the same constraint
// and tie rules.
ClipSpan decode_start_end(const TemporalDistributions& dists);

}  // namespace stvg
