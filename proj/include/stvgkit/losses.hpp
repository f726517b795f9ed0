#pragma once

#include <cstdint>
#include <vector>

#include "stvgkit/geometry.hpp"
#include "stvgkit/moments.hpp"

namespace stvg {

// Probabilities and log arguments are floored at this value; terms with a
// zero coefficient contribute exactly zero instead of being evaluated.
inline constexpr double kProbEps = 1e-7;

struct LossWeights {
  // Weight of the two contrastive terms in the combined moment-map loss.
  double lambda = 0.1;
  // Weights of the box L1, generalized IoU, temporal KL, and guided
  // attention terms in the combined localization loss.
  double alpha = 1.0;
  double beta = 1.0;
  double gamma = 1.0;
  double theta = 1.0;
};

// Mean binary cross entropy, natural log, between per-candidate predicted
// IoU in [0, 1] and targets in [0, 1]. Lists must be nonempty and equal
// length.
double mmn_iou_loss(const std::vector<double>& predicted_iou,
                    const std::vector<double>& target_iou);

// Square matrix of similarity scores; values[i][j] pairs moment i with
// sentence j, matched pairs on the diagonal.
struct SimilarityMatrix {
  std::vector<std::vector<double>> values;
};

struct ContrastiveLosses {
  double video_loss = 0.0;
  double sentence_loss = 0.0;

  bool operator==(const ContrastiveLosses&) const = default;
};

// Cross-entropy of each diagonal entry against its column (video side:
// which moment matches this sentence) and against its row (sentence side:
// which sentence matches this moment), summed over the batch. Log-sum-exp
// is max-shifted, so large scores do not overflow.
ContrastiveLosses contrastive_losses(const SimilarityMatrix& s);

// iou_loss + lambda * (video_loss + sentence_loss).
double mmn_total(double iou_loss, double video_loss, double sentence_loss,
                 const LossWeights& w = {});

struct BoxLosses {
  double l1_loss = 0.0;
  double giou_loss = 0.0;

  bool operator==(const BoxLosses&) const = default;
};

// Means over aligned box pairs of the coordinate L1 distance and of
// 1 - GIoU. Lists must be nonempty and equal length; a pair of two
// degenerate boxes propagates the GIoU domain error.
BoxLosses box_losses(const std::vector<BBox>& pred, const std::vector<BBox>& gt);

// KL(pred.p_start || target.p_start) + KL(pred.p_end || target.p_end) with
// the 0 * log(0/q) := 0 convention. A target entry of zero where the
// prediction has mass is a support violation and throws std::domain_error.
double kl_temporal_loss(const TemporalDistributions& pred,
                        const TemporalDistributions& target);

// Label-smoothed one-hot target over n positions: 1 - smoothing at
// `endpoint`, smoothing / (n - 1) elsewhere. For n == 1 the only valid
// distribution is {1}. smoothing must lie in [0, 1].
std::vector<double> make_target_distribution(int endpoint, int n,
                                             double smoothing = 0.0);

// One attention row over n positions plus the span the query is grounded
// in. Positions are 1-indexed and span membership is inclusive, so
// position i is inside when seg_start <= i <= seg_end.
struct AttentionRow {
  std::vector<double> attention;
  std::int64_t seg_start = 1;
  std::int64_t seg_end = 1;
};

// -sum over out-of-span positions of log(1 - a_i), attention values in
// [0, 1], log arguments floored at kProbEps. In-span positions contribute
// nothing.
double guided_attention_loss(const AttentionRow& row);

// alpha * box + beta * giou + gamma * kl + theta * attention.
double tubedetr_total(double box_loss, double giou_loss, double kl_loss,
                      double attention_loss, const LossWeights& w = {});

}  // namespace stvg
