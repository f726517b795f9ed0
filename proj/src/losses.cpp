#include "stvgkit/losses.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace stvg {

namespace {

void require_unit_interval(const std::vector<double>& v, const char* name) {
  for (const double x : v) {
    if (!(x >= 0.0 && x <= 1.0)) {
      throw std::invalid_argument(std::string(name) + " entries must lie in [0, 1]");
    }
  }
}

// coef * log(arg) with the 0 * log(.) := 0 convention and the argument
// floored at kProbEps, so perfect confident predictions are exact zeros.
double weighted_log(double coef, double arg) {
  if (coef == 0.0) return 0.0;
  return coef * std::log(std::max(arg, kProbEps));
}

double log_sum_exp(const std::vector<double>& xs) {
  double m = xs.front();
  for (const double x : xs) m = std::max(m, x);
  double sum = 0.0;
  for (const double x : xs) sum += std::exp(x - m);
  return m + std::log(sum);
}

double kl_divergence(const std::vector<double>& p, const std::vector<double>& q,
                     const char* side) {
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    if (q[i] <= 0.0) {
      throw std::domain_error(std::string("KL support violation in ") + side +
                              " distribution at index " + std::to_string(i));
    }
    total += p[i] * std::log(p[i] / q[i]);
  }
  return total;
}

}  // namespace

double mmn_iou_loss(const std::vector<double>& predicted_iou,
                    const std::vector<double>& target_iou) {
  if (predicted_iou.empty()) throw std::invalid_argument("no candidates to score");
  if (predicted_iou.size() != target_iou.size()) {
    throw std::invalid_argument("prediction and target lists must have equal length");
  }
  require_unit_interval(predicted_iou, "predicted IoU");
  require_unit_interval(target_iou, "target IoU");
  double total = 0.0;
  for (std::size_t k = 0; k < predicted_iou.size(); ++k) {
    const double p = predicted_iou[k];
    const double y = target_iou[k];
    total += weighted_log(y, p) + weighted_log(1.0 - y, 1.0 - p);
  }
  return -total / static_cast<double>(predicted_iou.size());
}

ContrastiveLosses contrastive_losses(const SimilarityMatrix& s) {
  const std::size_t n = s.values.size();
  if (n == 0) throw std::invalid_argument("empty similarity matrix");
  for (const auto& row : s.values) {
    if (row.size() != n) throw std::invalid_argument("similarity matrix must be square");
    for (const double x : row) {
      if (!std::isfinite(x)) {
        throw std::invalid_argument("similarity scores must be finite");
      }
    }
  }

  ContrastiveLosses out;
  std::vector<double> column(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t r = 0; r < n; ++r) column[r] = s.values[r][i];
    out.video_loss += log_sum_exp(column) - s.values[i][i];
    out.sentence_loss += log_sum_exp(s.values[i]) - s.values[i][i];
  }
  return out;
}

double mmn_total(double iou_loss, double video_loss, double sentence_loss,
                 const LossWeights& w) {
  return iou_loss + w.lambda * (video_loss + sentence_loss);
}

BoxLosses box_losses(const std::vector<BBox>& pred, const std::vector<BBox>& gt) {
  if (pred.empty()) throw std::invalid_argument("no box pairs to score");
  if (pred.size() != gt.size()) {
    throw std::invalid_argument("prediction and groundtruth box lists must have equal length");
  }
  BoxLosses out;
  for (std::size_t k = 0; k < pred.size(); ++k) {
    out.l1_loss += box_l1(pred[k], gt[k]);
    out.giou_loss += 1.0 - box_giou(pred[k], gt[k]);
  }
  const auto n = static_cast<double>(pred.size());
  out.l1_loss /= n;
  out.giou_loss /= n;
  return out;
}

double kl_temporal_loss(const TemporalDistributions& pred,
                        const TemporalDistributions& target) {
  require_valid_distributions(pred);
  require_valid_distributions(target);
  if (pred.p_start.size() != target.p_start.size()) {
    throw std::invalid_argument("prediction and target distributions must have equal length");
  }
  return kl_divergence(pred.p_start, target.p_start, "start") +
         kl_divergence(pred.p_end, target.p_end, "end");
}

std::vector<double> make_target_distribution(int endpoint, int n, double smoothing) {
  if (n < 1) throw std::invalid_argument("target distribution needs at least one position");
  if (endpoint < 0 || endpoint >= n) {
    throw std::invalid_argument("endpoint " + std::to_string(endpoint) +
                                " lies outside " + std::to_string(n) + " positions");
  }
  if (!(smoothing >= 0.0 && smoothing <= 1.0)) {
    throw std::invalid_argument("smoothing must lie in [0, 1]");
  }
  if (n == 1) return {1.0};
  std::vector<double> out(static_cast<std::size_t>(n),
                          smoothing / static_cast<double>(n - 1));
  out[static_cast<std::size_t>(endpoint)] = 1.0 - smoothing;
  return out;
}

double guided_attention_loss(const AttentionRow& row) {
  if (row.attention.empty()) throw std::invalid_argument("empty attention row");
  if (row.seg_start > row.seg_end) {
    throw std::invalid_argument("attention span must satisfy seg_start <= seg_end");
  }
  require_unit_interval(row.attention, "attention");
  double total = 0.0;
  for (std::size_t k = 0; k < row.attention.size(); ++k) {
    const auto position = static_cast<std::int64_t>(k) + 1;  // positions are 1-indexed
    if (position >= row.seg_start && position <= row.seg_end) continue;
    total -= weighted_log(1.0, 1.0 - row.attention[k]);
  }
  return total;
}

double tubedetr_total(double box_loss, double giou_loss, double kl_loss,
                      double attention_loss, const LossWeights& w) {
  return w.alpha * box_loss + w.beta * giou_loss + w.gamma * kl_loss +
         w.theta * attention_loss;
}

}  // namespace stvg
