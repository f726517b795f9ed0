#include "stvgkit/moments.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace stvg {

const char* contrastive_normalization_name(ContrastiveNormalization n) {
  return n == ContrastiveNormalization::Sigmoid ? "sigmoid" : "raw";
}

ContrastiveNormalization parse_contrastive_normalization(const std::string& name) {
  if (name == "sigmoid") return ContrastiveNormalization::Sigmoid;
  if (name == "raw") return ContrastiveNormalization::Raw;
  throw std::invalid_argument("unknown contrastive normalization '" + name +
                              "' (sigmoid|raw)");
}

double logistic(double x) {
  if (x >= 0.0) {
    return 1.0 / (1.0 + std::exp(-x));
  }
  const double e = std::exp(x);
  return e / (1.0 + e);
}

std::size_t candidate_count(int n_clips) {
  if (n_clips < 1) throw std::invalid_argument("n_clips must be at least 1");
  const auto n = static_cast<std::size_t>(n_clips);
  return n * (n + 1) / 2;
}

std::size_t candidate_index(int n_clips, int start_clip, int end_clip) {
  if (n_clips < 1) throw std::invalid_argument("n_clips must be at least 1");
  if (start_clip < 0 || end_clip < start_clip || end_clip >= n_clips) {
    throw std::invalid_argument("candidate (" + std::to_string(start_clip) + ", " +
                                std::to_string(end_clip) + ") lies outside " +
                                std::to_string(n_clips) + " clips");
  }
  const auto n = static_cast<std::size_t>(n_clips);
  const auto i = static_cast<std::size_t>(start_clip);
  const auto j = static_cast<std::size_t>(end_clip);
  return i * n - i * (i - 1) / 2 + (j - i);
}

std::vector<ClipSpan> enumerate_candidates(int n_clips) {
  const std::size_t count = candidate_count(n_clips);
  std::vector<ClipSpan> out;
  out.reserve(count);
  for (int i = 0; i < n_clips; ++i) {
    for (int j = i; j < n_clips; ++j) out.push_back(ClipSpan{i, j});
  }
  return out;
}

std::vector<double> moment_iou_targets(int n_clips, const ClipSpan& gt_span) {
  const std::size_t count = candidate_count(n_clips);
  if (gt_span.first_clip < 0 || gt_span.last_clip < gt_span.first_clip ||
      gt_span.last_clip >= n_clips) {
    throw std::invalid_argument("gt span lies outside the clip range");
  }
  const std::int64_t gt_len = gt_span.last_clip - gt_span.first_clip + 1;
  std::vector<double> out;
  out.reserve(count);
  for (int i = 0; i < n_clips; ++i) {
    for (int j = i; j < n_clips; ++j) {
      const std::int64_t lo = std::max(i, gt_span.first_clip);
      const std::int64_t hi = std::min(j, gt_span.last_clip);
      const std::int64_t inter = hi >= lo ? hi - lo + 1 : 0;
      const std::int64_t uni = (j - i + 1) + gt_len - inter;
      out.push_back(inter == 0 ? 0.0
                               : static_cast<double>(inter) / static_cast<double>(uni));
    }
  }
  return out;
}

std::vector<double> maxpool_span(const std::vector<std::vector<double>>& clip_features,
                                 const ClipSpan& span) {
  if (clip_features.empty()) throw std::invalid_argument("no clip features");
  const std::size_t dim = clip_features.front().size();
  for (const auto& f : clip_features) {
    if (f.size() != dim) {
      throw std::invalid_argument("clip feature vectors have mismatched lengths");
    }
  }
  if (span.first_clip < 0 || span.last_clip < span.first_clip ||
      static_cast<std::size_t>(span.last_clip) >= clip_features.size()) {
    throw std::invalid_argument("span lies outside the clip feature list");
  }
  std::vector<double> out = clip_features[static_cast<std::size_t>(span.first_clip)];
  for (int c = span.first_clip + 1; c <= span.last_clip; ++c) {
    const auto& f = clip_features[static_cast<std::size_t>(c)];
    for (std::size_t k = 0; k < dim; ++k) out[k] = std::max(out[k], f[k]);
  }
  return out;
}

MomentSelection select_moment(const MomentMap& map, ContrastiveNormalization norm) {
  const std::size_t count = candidate_count(map.n_clips);
  if (map.predicted_iou.size() != count || map.contrastive.size() != count) {
    throw std::invalid_argument("moment map must score all " + std::to_string(count) +
                                " candidates");
  }
  for (const double p : map.predicted_iou) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw std::invalid_argument("predicted IoU scores must lie in [0, 1]");
    }
  }
  for (const double c : map.contrastive) {
    if (!std::isfinite(c)) throw std::invalid_argument("contrastive scores must be finite");
  }

  // Raw contrastive scores may be negative, so the running best starts
  // below every finite product.
  MomentSelection best;
  best.combined_score = -std::numeric_limits<double>::infinity();
  std::size_t idx = 0;
  // Lexicographic scan plus strict improvement realizes the tie rules:
  // earlier start, then shorter span.
  for (int i = 0; i < map.n_clips; ++i) {
    for (int j = i; j < map.n_clips; ++j, ++idx) {
      const double c = norm == ContrastiveNormalization::Sigmoid
                           ? logistic(map.contrastive[idx])
                           : map.contrastive[idx];
      const double score = map.predicted_iou[idx] * c;
      if (score > best.combined_score) {
        best.span = ClipSpan{i, j};
        best.combined_score = score;
      }
    }
  }
  return best;
}

Segment span_to_segment(const ClipSpan& span, const std::vector<ClipRange>& clip_ranges) {
  if (clip_ranges.empty()) throw std::invalid_argument("no clip ranges");
  if (span.first_clip < 0 || span.last_clip < span.first_clip ||
      static_cast<std::size_t>(span.last_clip) >= clip_ranges.size()) {
    throw std::invalid_argument("span lies outside the clip range list");
  }
  const ClipRange& first = clip_ranges[static_cast<std::size_t>(span.first_clip)];
  const ClipRange& last = clip_ranges[static_cast<std::size_t>(span.last_clip)];
  if (first.empty() || last.empty()) {
    throw std::invalid_argument("span touches an empty clip");
  }
  return Segment{first.first_frame, last.last_frame};
}

void require_valid_distributions(const TemporalDistributions& d) {
  if (d.p_start.empty() || d.p_start.size() != d.p_end.size()) {
    throw std::invalid_argument(
        "start and end distributions must be nonempty and equally long");
  }
  for (const auto* v : {&d.p_start, &d.p_end}) {
    double sum = 0.0;
    for (const double p : *v) {
      if (!(std::isfinite(p) && p >= 0.0)) {
        throw std::invalid_argument("distribution entries must be finite and nonnegative");
      }
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
      throw std::invalid_argument("distribution entries must sum to 1 within 1e-9");
    }
  }
}

ClipSpan decode_start_end(const TemporalDistributions& dists) {
  require_valid_distributions(dists);
  const int n = static_cast<int>(dists.p_start.size());

  ClipSpan best{0, 0};
  double best_product = -1.0;
  for (int s = 0; s < n; ++s) {
    for (int e = s; e < n; ++e) {
      const double product = dists.p_start[static_cast<std::size_t>(s)] *
                             dists.p_end[static_cast<std::size_t>(e)];
      if (product > best_product) {
        best = ClipSpan{s, e};
        best_product = product;
      }
    }
  }
  if (best_product > 0.0) return best;

  // Every feasible product is zero (the joint mass sits at s > e); fall
  // back to the additive score under the same constraint and tie rules.
  double best_sum = -1.0;
  for (int s = 0; s < n; ++s) {
    for (int e = s; e < n; ++e) {
      const double sum = dists.p_start[static_cast<std::size_t>(s)] +
                         dists.p_end[static_cast<std::size_t>(e)];
      if (sum > best_sum) {
        best = ClipSpan{s, e};
        best_sum = sum;
      }
    }
  }
  return best;
}

}  // namespace stvg
