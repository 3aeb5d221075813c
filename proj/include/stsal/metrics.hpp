#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace stsal {

/// Borrowed scores with binary labels (nonzero = positive).
struct ScoredSamples {
    std::span<const double> scores;
    std::span<const std::uint8_t> labels;
};

struct RocPoint {
    double threshold;
    double tpr;
    double fpr;
};

/// Points ordered from the highest threshold to the lowest. The first point is
/// (threshold +inf, 0, 0); the last reaches (1, 1).
struct RocCurve {
    std::vector<RocPoint> points;
};

/// Rejects mismatched lengths, non-finite scores, and single-class labels.
void require_two_classes(const ScoredSamples& s, const char* what);

/// Threshold sweep over the distinct scores, descending. Tied scores form one step.
[[nodiscard]] RocCurve roc(const ScoredSamples& s);

/// Trapezoidal area under the curve over FPR.
[[nodiscard]] double auc(const RocCurve& curve);

/// AUC straight from the samples without materialising the curve. Equal to
/// auc(roc(s)): ties between a positive and a negative count one half.
[[nodiscard]] double auc(const ScoredSamples& s);

enum class FMeasureMode {
    PrecisionRecall,  ///< standard F1 over precision and recall
    TprFpr,           ///< harmonic mean of TPR and FPR
};

/// F value when predicting positive for score >= threshold. 0 when undefined.
[[nodiscard]] double f_measure(const ScoredSamples& s, double threshold,
                               FMeasureMode mode = FMeasureMode::PrecisionRecall);

struct BestF {
    double threshold;
    double value;
};
/// Maximum F over every sweep threshold.
[[nodiscard]] BestF best_f_measure(const ScoredSamples& s, FMeasureMode mode = FMeasureMode::PrecisionRecall);

/// Equal error rate: where FPR equals the miss rate 1 - TPR, interpolated
/// linearly between neighbouring sweep points.
[[nodiscard]] double eer(const RocCurve& curve);
[[nodiscard]] double eer(const ScoredSamples& s);

/// Parses `score,label` rows; an optional header line is skipped.
struct OwnedSamples {
    std::vector<double> scores;
    std::vector<std::uint8_t> labels;
    [[nodiscard]] ScoredSamples view() const noexcept { return {scores, labels}; }
};
[[nodiscard]] OwnedSamples read_scored_csv(std::istream& in);

/// Writes `threshold,tpr,fpr` rows with a header.
void write_roc_csv(std::ostream& out, const RocCurve& curve);

}  // namespace stsal
